//! Library half of the `kscheck` binary: the scenario file schema and the
//! report types, exposed so integration tests can build files and parse
//! reports with the exact same code the binary runs.

pub mod report;
pub mod scenario_file;
