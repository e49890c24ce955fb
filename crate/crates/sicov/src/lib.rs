//! File formats, threaded execution and report types for the `sicov`
//! command-line tool. The statistics themselves live in `sicov-core`.

pub mod cli;
pub mod fixture;
pub mod io;
pub mod parallel;
pub mod report;

pub use fixture::{load_fixture, parse_fixture, Fixture, FixtureError};
pub use io::{load_csv, load_csv_infer, parse_csv, write_csv, LoadError};
pub use parallel::RayonExecutor;
