//! Test-only package holding the acceptance suite (`cargo test -p hermlie-validation`).
