//! Constructive pipelines: spectra of prime-size tiles, the simplex pair,
//! points in general position, and prime-size tiles of the integers.

pub mod general_position;
pub mod line;
pub mod matrix;
pub mod simplex;
pub mod spectrum;

pub use general_position::{
    check_general_position, general_position_tiling, rank_mod_p, separating_functional, Functional,
    GeneralPositionResult, Route,
};
pub use line::{prime_size_tiles_z, LineDecision};
pub use matrix::{adjugate, rank, IntegerMatrix};
pub use simplex::{fourier_columns, simplex_tiling_pair, SimplexPair};
pub use spectrum::{prime_tile_spectrum, SpectrumConstruction};
