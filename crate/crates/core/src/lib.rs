//! Vector-valued harmonic analysis on compact groups.
//!
//! Functions `G -> A` on a compact group `G` (cyclic, dihedral, circle,
//! SU(2)) with values in a finite-dimensional normed space or matrix algebra
//! `A` are analysed through their Fourier coefficient blocks. On top of the
//! transform the crate provides the Assiamoua `S_p` norms, spectral Barron
//! and Sobolev norms, the spectral operators (Bessel potential,
//! pseudo-differential multipliers, convolution) and a harness that checks
//! the inequalities relating them on band-limited test functions.

pub mod error;
pub mod exec;
pub mod fourier;
pub mod group;
pub mod operators;
pub mod precision;
pub mod spectra;
pub mod value;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use fourier::{
    forward, inverse, synthesize, BandlimitedFunction, Convention, FourierCoefficients,
    GridFunction, Mode, PointEvaluator, SpectralGrid,
};
pub use group::{
    GroupDescriptor, GroupElement, Irrep, IrrepLabel, QuadratureRule, TruncatedDual, C64,
};
pub use operators::{
    bessel_potential, convolve_direct, convolve_spectral, pseudo_diff, SpectralSymbol, SymbolSpec,
};
pub use precision::PrecisionProfile;
pub use spectra::{
    barron_norm, lp_norm, s_inf_norm, sobolev_norm, sp_norm, sup_norm, Gamma, NormReport, Weight,
};
pub use value::{AValue, NormKind, ValueSpaceDescriptor};

/// Version stamped into every JSON document written by this crate.
pub const SCHEMA_VERSION: u32 = 1;
