//! Numerical toolkit for the three-body problem with zero-range forces.
//!
//! The crate covers four pieces that build on each other:
//!
//! * [`hyperangular`] solves the transcendental s-wave eigenvalue equation for
//!   the hyperangular eigenvalue `nu^2(rho)` and derives the universal
//!   constants `b` and `C` of the attractive `-C/rho^2` adiabatic potential.
//! * [`radial`] integrates the hyper-radial equation on a logarithmic grid,
//!   finds the regularized bound-state tower by node counting and probes the
//!   Thomas collapse when no regularization is present.
//! * [`meanfield`] evaluates homogeneous-matter energy densities of the
//!   Gross-Pitaevskii and Skyrme-Hartree-Fock functionals and classifies
//!   their saturation behaviour.
//! * [`cli`] drives everything from the `efimov-lab` binary and emits CSV or
//!   JSON.
//!
//! Internally `hbar = m = 1`; the hyper-radial equation is solved in the form
//! `-f'' + 2 V(rho) f = 2 E f` with `V = (nu^2 - 1/4) / (2 rho^2)`.

pub mod cli;
pub mod error;
pub mod grid;
pub mod hyperangular;
pub mod meanfield;
pub mod radial;
pub mod roots;
pub mod stats;
pub mod system;

pub use error::{Error, Result};
pub use grid::LogGrid;
pub use hyperangular::{
    effective_potential, efimov_constants, eigen_lhs, solve_branch0, solve_branches,
    tabulate_branch, AdiabaticBranch, EffectivePotential, EfimovConstants, NuSquared,
    Regularization,
};
pub use meanfield::{
    classify_stability, energy_density, kinetic_density_fermi, Classification, MatterModel,
    StabilityReport, Stabilizer, Statistics,
};
pub use radial::{
    collapse_probe, find_spectrum, integrate_radial, node_analysis, node_positions,
    BoundStateSpectrum, CollapseProbe, NodeAnalysis, RadialOptions, RadialSolution,
};
pub use system::{make_config, LengthUnit, SystemConfig};
