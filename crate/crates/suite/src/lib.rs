//! Host package for the acceptance suite in `tests/acceptance.rs`. It is
//! kept separate from the library so that it runs after every other test
//! target in a workspace run.
