//! Holds the workspace acceptance run (`tests/acceptance.rs`), which checks
//! the library and the sweep runner end to end and prints one line per criterion.
