//! Physical conventions shared by every module.
//!
//! All internal arithmetic uses `hbar = m = 1`, so an energy is measured in
//! `hbar^2 / (m L^2)` where `L` is whatever length unit the caller used for
//! `a`, `R` and the grids. [`LengthUnit`] only controls how numbers are
//! reported: in units of the regularization scale `R` (the internal unit) or
//! of `|a|`.
//!
//! The scattering length is kept signed and never interpreted. The eigenvalue
//! equation only sees `x = rho / (sqrt(mu) a)`; whether positive or negative
//! `x` hosts the physical dimer depends on the sign convention of the
//! effective-range expansion (`k cot delta = +1/a` here), so callers pick the
//! sign they need.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced pair mass for three identical particles, in units of `m`.
pub const IDENTICAL_PARTICLE_MU: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthUnit {
    /// Lengths in units of the regularization scale `R`.
    R,
    /// Lengths in units of `|a|`; requires a finite scattering length.
    AbsA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemConfig {
    hbar: f64,
    mass_scale: f64,
    scattering_length: f64,
    reduced_mass: f64,
    length_unit: LengthUnit,
    /// Internal length of one report unit.
    reference_length: f64,
}

/// Validates and builds a [`SystemConfig`].
///
/// `a` may be `±inf` for the unitary limit; `1/a` is then exactly zero.
pub fn make_config(a: f64, mu: f64, length_unit: LengthUnit) -> Result<SystemConfig> {
    if a.is_nan() {
        return Err(Error::invalid("a", "NaN scattering length"));
    }
    if a == 0.0 {
        return Err(Error::ZeroScatteringLength);
    }
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::invalid(
            "mu",
            format!("reduced mass must be > 0, got {mu}"),
        ));
    }
    let reference_length = match length_unit {
        LengthUnit::R => 1.0,
        LengthUnit::AbsA if a.is_finite() => a.abs(),
        LengthUnit::AbsA => {
            return Err(Error::invalid(
                "length_unit",
                "|a| units are undefined at unitarity",
            ))
        }
    };
    Ok(SystemConfig {
        hbar: 1.0,
        mass_scale: 1.0,
        scattering_length: a,
        reduced_mass: mu,
        length_unit,
        reference_length,
    })
}

impl SystemConfig {
    /// Three identical particles at unitarity, reported in units of `R`.
    pub fn unitarity() -> Self {
        make_config(f64::INFINITY, IDENTICAL_PARTICLE_MU, LengthUnit::R)
            .expect("unitarity config is valid")
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass_scale(&self) -> f64 {
        self.mass_scale
    }

    pub fn scattering_length(&self) -> f64 {
        self.scattering_length
    }

    pub fn inverse_scattering_length(&self) -> f64 {
        1.0 / self.scattering_length
    }

    pub fn reduced_mass(&self) -> f64 {
        self.reduced_mass
    }

    pub fn length_unit(&self) -> LengthUnit {
        self.length_unit
    }

    pub fn is_unitary(&self) -> bool {
        self.scattering_length.is_infinite()
    }

    /// Right-hand side of the eigenvalue equation, `rho / (sqrt(mu) a)`.
    pub fn x_of_rho(&self, rho: f64) -> f64 {
        rho * self.inverse_scattering_length() / self.reduced_mass.sqrt()
    }

    /// Two-body binding scale `-1/(mu a^2)` in units of `2E`; zero at unitarity.
    pub fn dimer_two_e(&self) -> f64 {
        let inv = self.inverse_scattering_length();
        -inv * inv / self.reduced_mass
    }

    pub fn length_to_report(&self, length: f64) -> f64 {
        length / self.reference_length
    }

    pub fn length_from_report(&self, length: f64) -> f64 {
        length * self.reference_length
    }

    /// Energies are reported in `hbar^2 / (m L^2)` for the report length `L`.
    pub fn energy_to_report(&self, energy: f64) -> f64 {
        energy * self.reference_length * self.reference_length
    }

    pub fn energy_from_report(&self, energy: f64) -> f64 {
        energy / (self.reference_length * self.reference_length)
    }
}
