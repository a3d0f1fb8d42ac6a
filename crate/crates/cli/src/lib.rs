//! Library surface of the `asl` binary: the table-export document and
//! format renderers, exposed so integration tests can exercise the exact
//! serialization contract.

pub mod output;
