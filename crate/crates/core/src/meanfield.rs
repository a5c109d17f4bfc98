//! Homogeneous-matter energy densities for contact interactions.
//!
//! For a uniform system the Gross-Pitaevskii (bosons) and Skyrme-Hartree-Fock
//! (symmetric fermionic matter) functionals reduce to
//!
//! ```text
//!   Bose:   eps(n) = t0 n^2 / 2                + c3 t3 n^p
//!   Fermi:  eps(n) = tau_F(n) / 2 + 3 t0 n^2 / 8 + c3 t3 n^p
//! ```
//!
//! with `p = 3` for a three-body contact term and `p = alpha + 2` for a
//! density-dependent two-body term. Saturation is the minimum of the energy
//! per particle `eps(n)/n` at finite density.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::brent;

/// Attached to every report: a finite saturation point says nothing about the
/// three-body sector, which collapses for any zero-range Hamiltonian.
pub const CORRELATIONAL_COLLAPSE_CAVEAT: &str = "Mean-field saturation only: with zero-range \
forces the three-body subsystem still collapses (Thomas effect), and neither a three-body \
contact term nor a density-dependent contact term can prevent it. The result is meaningful \
only for Hartree-Fock product states that exclude three-body correlations.";

/// `(3/5) (3 pi^2 / 2)^(2/3)`, the Fermi kinetic coefficient for symmetric matter.
pub fn fermi_kinetic_coefficient() -> f64 {
    0.6 * (1.5 * std::f64::consts::PI * std::f64::consts::PI).powf(2.0 / 3.0)
}

/// Kinetic energy density `tau_F = (3/5)(3 pi^2/2)^(2/3) n^(5/3)` of symmetric
/// matter; the energy term is `tau_F / 2` with `hbar = m = 1`.
pub fn kinetic_density_fermi(n: f64) -> Result<f64> {
    check_density(n)?;
    Ok(fermi_kinetic_coefficient() * n.powf(5.0 / 3.0))
}

fn check_density(n: f64) -> Result<()> {
    if n.is_nan() || n < 0.0 {
        Err(Error::NegativeDensity(n))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistics {
    Bose,
    Fermi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Stabilizer {
    None,
    /// Three-body contact, energy term `c3 t3 n^3`.
    ThreeBody {
        t3: f64,
    },
    /// Density-dependent contact, energy term `c3 t3 n^(alpha + 2)`.
    DensityDependent {
        t3: f64,
        alpha: f64,
    },
}

impl Stabilizer {
    fn strength(&self) -> f64 {
        match *self {
            Stabilizer::None => 0.0,
            Stabilizer::ThreeBody { t3 } | Stabilizer::DensityDependent { t3, .. } => t3,
        }
    }

    fn exponent(&self) -> f64 {
        match *self {
            Stabilizer::None | Stabilizer::ThreeBody { .. } => 3.0,
            Stabilizer::DensityDependent { alpha, .. } => alpha + 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatterModel {
    pub statistics: Statistics,
    pub t0: f64,
    pub stabilizer: Stabilizer,
    pub c3: f64,
    /// True when `c3` came from [`MatterModel::default_c3`].
    pub c3_is_default: bool,
}

impl MatterModel {
    /// Builds a model; `c3 = None` picks the conventional prefactor.
    pub fn new(
        statistics: Statistics,
        t0: f64,
        stabilizer: Stabilizer,
        c3: Option<f64>,
    ) -> Result<Self> {
        if !t0.is_finite() {
            return Err(Error::invalid("t0", "must be finite"));
        }
        match stabilizer {
            Stabilizer::None => {}
            Stabilizer::ThreeBody { t3 } => check_t3(t3)?,
            Stabilizer::DensityDependent { t3, alpha } => {
                check_t3(t3)?;
                if !(alpha.is_finite() && alpha > 0.0) {
                    return Err(Error::invalid(
                        "alpha",
                        format!("density exponent must be > 0 to dominate n^2, got {alpha}"),
                    ));
                }
            }
        }
        let (c3, c3_is_default) = match c3 {
            Some(c) if c.is_finite() && c >= 0.0 => (c, false),
            Some(c) => return Err(Error::invalid("c3", format!("must be >= 0, got {c}"))),
            None => (Self::default_c3(statistics, &stabilizer), true),
        };
        Ok(Self {
            statistics,
            t0,
            stabilizer,
            c3,
            c3_is_default,
        })
    }

    /// Conventional stabilizer prefactors: triplet counting `1/6` and pair
    /// counting `1/2` for a condensate, the symmetric-matter `1/16` for fermions.
    pub fn default_c3(statistics: Statistics, stabilizer: &Stabilizer) -> f64 {
        match (statistics, stabilizer) {
            (_, Stabilizer::None) => 0.0,
            (Statistics::Bose, Stabilizer::ThreeBody { .. }) => 1.0 / 6.0,
            (Statistics::Bose, Stabilizer::DensityDependent { .. }) => 0.5,
            (Statistics::Fermi, _) => 1.0 / 16.0,
        }
    }

    /// `(coefficient, exponent)` of each term of `eps(n)`.
    fn terms(&self) -> [(f64, f64); 3] {
        let kinetic = match self.statistics {
            Statistics::Bose => 0.0,
            Statistics::Fermi => 0.5 * fermi_kinetic_coefficient(),
        };
        let pair = match self.statistics {
            Statistics::Bose => 0.5 * self.t0,
            Statistics::Fermi => 0.375 * self.t0,
        };
        let stab = self.c3 * self.stabilizer.strength();
        [
            (kinetic, 5.0 / 3.0),
            (pair, 2.0),
            (stab, self.stabilizer.exponent()),
        ]
    }

    fn per_particle(&self, n: f64) -> f64 {
        self.terms()
            .iter()
            .map(|&(c, p)| if c == 0.0 { 0.0 } else { c * n.powf(p - 1.0) })
            .sum()
    }

    fn per_particle_slope(&self, n: f64) -> f64 {
        self.terms()
            .iter()
            .map(|&(c, p)| {
                if c == 0.0 {
                    0.0
                } else {
                    c * (p - 1.0) * n.powf(p - 2.0)
                }
            })
            .sum()
    }
}

fn check_t3(t3: f64) -> Result<()> {
    if t3.is_finite() && t3 >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "t3",
            format!("stabilizer must be repulsive (t3 >= 0), got {t3}"),
        ))
    }
}

/// Energy density `eps(n)` in units with `hbar = m = 1`.
pub fn energy_density(model: &MatterModel, n: f64) -> Result<f64> {
    check_density(n)?;
    Ok(model
        .terms()
        .iter()
        .map(|&(c, p)| if c == 0.0 { 0.0 } else { c * n.powf(p) })
        .sum())
}

/// `eps(n) / n`; zero-density limit is zero.
pub fn energy_per_particle(model: &MatterModel, n: f64) -> Result<f64> {
    check_density(n)?;
    if n == 0.0 {
        return Ok(0.0);
    }
    Ok(model.per_particle(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// Attraction dominates at high density: `eps -> -inf`.
    CollapseUnboundedBelow,
    /// The energy per particle is smallest as `n -> 0`.
    TrivialMinimumAtZero,
    /// The energy per particle has a negative minimum at finite density.
    Saturating,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub classification: Classification,
    pub n_sat: Option<f64>,
    /// Energy density at saturation.
    pub e_min: Option<f64>,
    /// Energy per particle at saturation.
    pub energy_per_particle: Option<f64>,
    pub c3: f64,
    pub c3_is_default: bool,
    pub caveat: &'static str,
}

const SCAN_POINTS: usize = 4001;

/// Classifies the high-density behaviour and, when bounded, locates the
/// saturation density.
///
/// The leading large-`n` term decides collapse. Otherwise a logarithmic scan
/// of `eps/n` over the scales set by the term crossovers brackets the global
/// minimum, golden-section search narrows it, and a root of `d(eps/n)/dn`
/// polishes it to `1e-10` relative.
pub fn classify_stability(model: &MatterModel) -> Result<StabilityReport> {
    if let Stabilizer::DensityDependent { alpha, .. } = model.stabilizer {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(Error::invalid("alpha", "must be > 0"));
        }
    }
    let report = |classification, n_sat: Option<f64>| StabilityReport {
        classification,
        n_sat,
        e_min: n_sat.map(|n| energy_density(model, n).unwrap_or(f64::NAN)),
        energy_per_particle: n_sat.map(|n| model.per_particle(n)),
        c3: model.c3,
        c3_is_default: model.c3_is_default,
        caveat: CORRELATIONAL_COLLAPSE_CAVEAT,
    };

    let terms = model.terms();
    let leading = terms
        .iter()
        .filter(|(c, _)| *c != 0.0)
        .max_by(|a, b| a.1.total_cmp(&b.1));
    match leading {
        Some(&(c, _)) if c < 0.0 => {
            return Ok(report(Classification::CollapseUnboundedBelow, None))
        }
        None => return Ok(report(Classification::TrivialMinimumAtZero, None)),
        _ => {}
    }
    if terms.iter().all(|(c, _)| *c >= 0.0) {
        return Ok(report(Classification::TrivialMinimumAtZero, None));
    }

    // Bracket the global minimum of eps/n on a log scan around the crossovers.
    let scales: Vec<f64> = crossover_scales(&terms);
    let lo = scales.iter().copied().fold(f64::INFINITY, f64::min) * 1e-6;
    let hi = scales.iter().copied().fold(0.0, f64::max) * 1e6;
    let step = (hi / lo).ln() / (SCAN_POINTS - 1) as f64;
    let n_at = |i: usize| lo * (step * i as f64).exp();
    let (imin, emin) = (0..SCAN_POINTS)
        .map(|i| (i, model.per_particle(n_at(i))))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty scan");
    if emin >= 0.0 || imin == 0 || imin == SCAN_POINTS - 1 {
        return Ok(report(Classification::TrivialMinimumAtZero, None));
    }

    let (a, b) = golden_section(
        |n| model.per_particle(n),
        n_at(imin - 1),
        n_at(imin + 1),
        1e-7,
    );
    let slope = |n| model.per_particle_slope(n);
    let n_sat = if slope(a) < 0.0 && slope(b) > 0.0 {
        brent(slope, a, b, 1e-10 * a, 200)?
    } else {
        brent(slope, n_at(imin - 1), n_at(imin + 1), 1e-10 * a, 200)?
    };
    Ok(report(Classification::Saturating, Some(n_sat)))
}

fn crossover_scales(terms: &[(f64, f64); 3]) -> Vec<f64> {
    let mut scales = vec![1.0];
    for (i, &(ci, pi)) in terms.iter().enumerate() {
        for &(cj, pj) in &terms[i + 1..] {
            if ci != 0.0 && cj != 0.0 && pi != pj {
                scales.push((ci.abs() / cj.abs()).powf(1.0 / (pj - pi)));
            }
        }
    }
    scales
}

/// Golden-section search for a minimum on `[a, b]`; returns the final bracket.
fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, rel_tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= rel_tol * (a.abs() + b.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    (a, b)
}
