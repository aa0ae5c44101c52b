//! File formats, parallel drivers and configuration for the `ghw` command.

pub mod census_io;
pub mod config;
pub mod graph_io;
pub mod parallel;

pub use census_io::{read_census, write_census, CensusLine};
pub use config::Config;
pub use graph_io::{edge_list, write_dot, EdgeRecord};
pub use parallel::{build_graph_parallel, enumerate_parallel, RunError};
