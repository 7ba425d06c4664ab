//! Library surface of the `hhcert` command-line tool: wire formats, the
//! regression corpus, and the family scan, kept separate from `main` so
//! integration tests can drive them directly.

pub mod corpus;
pub mod scan;
pub mod spec;
