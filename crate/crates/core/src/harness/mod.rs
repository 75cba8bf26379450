//! Presets, random instances, configuration and file formats used by the
//! command line and the experiment suites.

pub mod config;
pub mod generate;
pub mod io;
pub mod presets;

pub use config::{ConfigFile, MatrixSource, SimulationConfig, X0Source};
pub use generate::{
    generate_matrix, random_simplex, random_simplex_from, MatrixKind, RandomMatrixSpec,
};
pub use presets::{run_preset, run_preset_with, MatrixPreset, Preset, PRESETS};
