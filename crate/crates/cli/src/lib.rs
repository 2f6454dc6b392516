//! Library surface of the CLI crate: the output-record schema, shared with
//! the integration tests.

pub mod output;
