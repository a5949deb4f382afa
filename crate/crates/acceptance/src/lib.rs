//! Holds the `acceptance` test target for `whiplash`; no library code.
//!
//! Run with `cargo test -p whiplash-acceptance`.
