//! Hyperangular eigenvalues of three identical bosons with zero-range forces.
//!
//! For s-wave Faddeev components the angular problem reduces to the
//! transcendental equation
//!
//! ```text
//!   -nu cos(nu pi/2) + (8/sqrt 3) sin(nu pi/6)
//!   ------------------------------------------  =  x,      x = rho / (sqrt(mu) a)
//!                  sin(nu pi/2)
//! ```
//!
//! with `lambda = nu^2 - 4`. The left-hand side is even in `nu`, so every
//! quantity here is parametrized by the single real number `nu^2`: positive
//! values use the trigonometric form and negative values (`nu = i b`) the
//! hyperbolic one. The lowest branch starts at `nu^2 = -b^2` for `x = 0` and is
//! the only root below the first pole at `nu = 2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::LogGrid;
use crate::roots::brent;
use crate::system::SystemConfig;

/// Default residual tolerance for all root searches.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Bracket expansion factor and cap for the continuation search.
pub const BRACKET_GROWTH: f64 = 2.0;
pub const MAX_BRACKET_EXPANSIONS: usize = 60;

/// Roots closer than this (in `nu`) to a pole are reported, not returned.
pub const POLE_PROXIMITY: f64 = 1e-8;

/// `|sin(nu pi/2)|` below this is a pole unless the numerator also vanishes.
const POLE_EPS: f64 = 1e-13;

/// Below this `|nu^2|` the two-term series around `nu = 0` is exact to rounding.
const SERIES_RADIUS: f64 = 1e-8;

const PI: f64 = std::f64::consts::PI;

fn coupling() -> f64 {
    8.0 / 3f64.sqrt()
}

/// `nu -> 0` limit of the left-hand side, `(4 pi sqrt(3)/9 - 1) / (pi/2)`.
pub fn lhs_at_zero() -> f64 {
    (coupling() * PI / 6.0 - 1.0) / (PI / 2.0)
}

/// Left-hand side of the eigenvalue equation as a function of `nu^2`.
///
/// Fails with [`Error::Pole`] at the non-removable singularities `nu = 2, 6, 8, ...`.
/// The zero of `sin(nu pi/2)` at `nu = 4` is removable and evaluated through
/// its limit.
pub fn eigen_lhs(nu_squared: f64) -> Result<f64> {
    if !nu_squared.is_finite() {
        return Err(Error::invalid("nu_squared", "must be finite"));
    }
    if nu_squared.abs() < SERIES_RADIUS {
        let k = coupling();
        let a0 = k * PI / 6.0 - 1.0;
        let a1 = PI * PI / 8.0 - k * PI.powi(3) / 1296.0;
        return Ok((2.0 / PI) * (a0 + nu_squared * (a1 + a0 * PI * PI / 24.0)));
    }
    if nu_squared > 0.0 {
        eigen_lhs_real(nu_squared.sqrt())
    } else {
        Ok(eigen_lhs_imaginary((-nu_squared).sqrt()))
    }
}

/// Left-hand side at real, signed `nu`.
pub fn eigen_lhs_real(nu: f64) -> Result<f64> {
    if nu == 0.0 {
        return eigen_lhs(0.0);
    }
    let k = coupling();
    let m = (nu / 2.0).round();
    let delta = nu - 2.0 * m;
    if m.abs() == 2.0 && delta.abs() < 0.5 {
        // Near nu = ±4 numerator and denominator vanish together; expand around
        // the removable point so both are formed without cancellation.
        let s = m.signum();
        let d = s * delta;
        let num = 8.0 * (d * PI / 3.0).sin() * (d * PI / 6.0).sin()
            - d * (d * PI / 2.0).cos()
            - 0.5 * k * (d * PI / 6.0).sin();
        let den = (d * PI / 2.0).sin();
        if d == 0.0 {
            return Ok(-(1.0 + k * PI / 12.0) / (PI / 2.0));
        }
        return Ok((s * num) / (s * den));
    }
    let parity = if (m as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let den = parity * (delta * PI / 2.0).sin();
    let num = -nu * parity * (delta * PI / 2.0).cos() + k * (nu * PI / 6.0).sin();
    if den.abs() < POLE_EPS {
        return Err(Error::Pole {
            nu_squared: nu * nu,
        });
    }
    Ok(num / den)
}

/// Left-hand side at imaginary `nu = i b` (signed `b`), in real arithmetic:
/// `(-b cosh(b pi/2) + (8/sqrt 3) sinh(b pi/6)) / sinh(b pi/2)`.
pub fn eigen_lhs_imaginary(b: f64) -> f64 {
    if b == 0.0 {
        return lhs_at_zero();
    }
    // b coth(b pi/2) and sinh(b pi/6)/sinh(b pi/2) are both even in b.
    let b = b.abs();
    let u = b * PI;
    // Overflow-free forms of coth(u/2) and sinh(u/6)/sinh(u/2).
    let em = (-u).exp_m1();
    let coth = (2.0 + em) / (-em);
    let ratio = (-u / 3.0).exp() * (-(-u / 3.0).exp_m1()) / (-em);
    -b * coth + coupling() * ratio
}

/// One root of the eigenvalue equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NuSquared {
    pub value: f64,
    pub branch_index: usize,
    /// `|lhs(nu^2) - x|` at the returned root.
    pub residual: f64,
}

impl NuSquared {
    pub fn lambda(&self) -> f64 {
        self.value - 4.0
    }

    /// `b` when the root is imaginary.
    pub fn imaginary_part(&self) -> Option<f64> {
        (self.value < 0.0).then(|| (-self.value).sqrt())
    }
}

fn residual_bound(x: f64, tol: f64) -> f64 {
    tol * x.abs().max(1.0)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("tol", format!("must be > 0, got {tol}")))
    }
}

/// Starting guess for the lowest branch from its asymptotic forms.
fn branch0_guess(x: f64) -> f64 {
    if x <= -2.0 {
        -x * x
    } else if x >= 4.0 {
        let nu = (2.0 - 12.0 / (PI * x)).max(0.0);
        nu * nu
    } else {
        -1.0125 + 1.1 * x
    }
}

/// Lowest branch `nu^2(x)`, continuously connected to `-b^2` at `x = 0`.
pub fn solve_branch0(x: f64, tol: f64) -> Result<NuSquared> {
    solve_branch0_seeded(x, tol, branch0_guess(x))
}

/// [`solve_branch0`] with an explicit continuation seed.
///
/// The bracket grows around `seed` by [`BRACKET_GROWTH`] per expansion and
/// approaches the pole at `nu^2 = 4` by halving, never crossing it.
pub fn solve_branch0_seeded(x: f64, tol: f64, seed: f64) -> Result<NuSquared> {
    check_tol(tol)?;
    if !x.is_finite() {
        return Err(Error::invalid("x", "must be finite"));
    }
    let seed = if seed.is_finite() && seed < 4.0 {
        seed
    } else {
        branch0_guess(x)
    };
    let g = |v: f64| eigen_lhs(v).map(|l| l - x);
    let no_bracket = |expansions| Error::NoBracket { x, expansions };

    let mut width = 1e-3 * seed.abs().max(1.0);
    let mut lo = seed;
    let mut hi = seed;
    let mut glo = g(lo).map_err(|_| no_bracket(0))?;
    let mut ghi = glo;
    let mut expansions = 0;
    while !(glo <= 0.0 && ghi >= 0.0) {
        if expansions == MAX_BRACKET_EXPANSIONS {
            return Err(no_bracket(expansions));
        }
        expansions += 1;
        if glo > 0.0 {
            hi = lo;
            ghi = glo;
            lo = seed - width;
            glo = g(lo).map_err(|_| no_bracket(expansions))?;
        }
        if ghi < 0.0 {
            lo = hi;
            glo = ghi;
            hi = if seed + width < 4.0 {
                seed + width
            } else {
                0.5 * (hi + 4.0)
            };
            ghi = g(hi).map_err(|_| no_bracket(expansions))?;
        }
        width *= BRACKET_GROWTH;
    }
    let root = brent(|v| g(v).unwrap_or(f64::NAN), lo, hi, 0.0, 200)?;
    let residual = g(root)?.abs();
    if residual > residual_bound(x, tol) {
        return Err(Error::NotConverged(format!(
            "branch 0 at x = {x}: residual {residual:e} above {tol:e}"
        )));
    }
    Ok(NuSquared {
        value: root,
        branch_index: 0,
        residual,
    })
}

/// The universal constants of the unitary potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EfimovConstants {
    /// `nu_0 = i b` at `x = 0`.
    pub b: f64,
    /// Strength of `-C/rho^2`, equal to `b^2 + 1/4`.
    pub c: f64,
    pub residual: f64,
}

impl EfimovConstants {
    /// Energy ratio of consecutive tower levels, `exp(2 pi / b)`.
    pub fn energy_ratio(&self) -> f64 {
        (2.0 * PI / self.b).exp()
    }

    /// Ratio of consecutive node radii, `exp(pi / b)`.
    pub fn node_ratio(&self) -> f64 {
        (PI / self.b).exp()
    }

    /// Nodes gained per decade of `rho`, `b ln(10) / pi`.
    pub fn nodes_per_decade(&self) -> f64 {
        self.b * std::f64::consts::LN_10 / PI
    }
}

/// Solves `b cosh(b pi/2) = (8/sqrt 3) sinh(b pi/6)` on `b > 0`.
pub fn efimov_constants(tol: f64) -> Result<EfimovConstants> {
    check_tol(tol)?;
    let b = brent(eigen_lhs_imaginary, 0.5, 2.0, tol, 200)?;
    let residual = eigen_lhs_imaginary(b).abs();
    if residual > tol {
        return Err(Error::NotConverged(format!(
            "b residual {residual:e} above {tol:e}"
        )));
    }
    Ok(EfimovConstants {
        b,
        c: b * b + 0.25,
        residual,
    })
}

/// Non-removable poles `nu = 2, 6, 8, 10, ...` (the zero at `nu = 4` is removable).
fn poles() -> impl Iterator<Item = f64> {
    (1..).map(|m| 2.0 * m as f64).filter(|&p| p != 4.0)
}

const SCAN_PER_INTERVAL: usize = 512;

/// The `count` lowest roots at fixed `x`, ascending in `nu^2`.
pub fn solve_branches(x: f64, count: usize, tol: f64) -> Result<Vec<NuSquared>> {
    check_tol(tol)?;
    if count == 0 {
        return Err(Error::invalid("count", "need at least one branch"));
    }
    let mut out = vec![solve_branch0(x, tol)?];
    let mut pole_iter = poles();
    let mut left = pole_iter.next().expect("infinite pole sequence");
    let limit = 2.0 * count as f64 + 40.0;
    while out.len() < count {
        let right = pole_iter.next().expect("infinite pole sequence");
        if left > limit {
            return Err(Error::NotConverged(format!(
                "only {} branches found below nu = {limit}",
                out.len()
            )));
        }
        for nu in roots_between_poles(x, left, right, tol)? {
            if out.len() == count {
                break;
            }
            let value = nu * nu;
            let residual = (eigen_lhs_real(nu)? - x).abs();
            out.push(NuSquared {
                value,
                branch_index: out.len(),
                residual,
            });
        }
        left = right;
    }
    Ok(out)
}

fn roots_between_poles(x: f64, left: f64, right: f64, tol: f64) -> Result<Vec<f64>> {
    let g = |nu: f64| eigen_lhs_real(nu).map(|l| l - x);
    let margin = 1e-12 * right;
    let a = left + margin;
    let b = right - margin;
    let step = (b - a) / SCAN_PER_INTERVAL as f64;
    let mut roots = Vec::new();
    let mut prev_nu = a;
    let mut prev = g(a)?;
    for i in 1..=SCAN_PER_INTERVAL {
        let nu = if i == SCAN_PER_INTERVAL {
            b
        } else {
            a + step * i as f64
        };
        let cur = g(nu)?;
        if prev == 0.0 {
            roots.push(prev_nu);
        } else if prev.signum() != cur.signum() && cur != 0.0 {
            let root = brent(|v| g(v).unwrap_or(f64::NAN), prev_nu, nu, 0.0, 200)?;
            roots.push(root);
        }
        prev = cur;
        prev_nu = nu;
    }
    if prev == 0.0 {
        roots.push(prev_nu);
    }
    for &root in &roots {
        for pole in [left, right] {
            let distance = (root - pole).abs();
            if distance < POLE_PROXIMITY {
                return Err(Error::PoleMisclassification {
                    nu_squared: root * root,
                    pole,
                    distance,
                });
            }
        }
        let residual = g(root)?.abs();
        if residual > residual_bound(x, tol) {
            return Err(Error::NotConverged(format!(
                "root nu = {root} has residual {residual:e}"
            )));
        }
    }
    Ok(roots)
}

/// Where the `nu^2` values of a branch come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchSource {
    /// Roots of the eigenvalue equation for a physical system.
    Eigen { config: SystemConfig, tol: f64 },
    /// A fixed `nu^2`, for model potentials `(nu^2 - 1/4)/rho^2`.
    Constant { nu_squared: f64 },
}

/// `nu^2(rho)` on a log grid for one adiabatic branch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdiabaticBranch {
    pub grid: LogGrid,
    pub nu_squared: Vec<f64>,
    pub branch_index: usize,
    pub source: BranchSource,
}

/// Coarse continuation stride; the fine pass runs chunks of this length in parallel.
const COARSE_STRIDE: usize = 32;

/// Tabulates one branch on `grid` by continuation in `rho`.
///
/// A serial pass solves every `COARSE_STRIDE`-th point, each seeded by its
/// predecessor; the points in between are then filled chunk by chunk, each
/// chunk seeded from its coarse anchor. The chunking does not depend on the
/// thread count, so results are identical for any rayon pool size.
pub fn tabulate_branch(
    config: &SystemConfig,
    grid: &LogGrid,
    branch_index: usize,
) -> Result<AdiabaticBranch> {
    tabulate_branch_with_tol(config, grid, branch_index, DEFAULT_TOL)
}

pub fn tabulate_branch_with_tol(
    config: &SystemConfig,
    grid: &LogGrid,
    branch_index: usize,
    tol: f64,
) -> Result<AdiabaticBranch> {
    let rho = grid.values();
    let annotate = |rho: f64| {
        move |e: Error| Error::BranchTracking {
            rho,
            source: Box::new(e),
        }
    };
    let nu_squared = if branch_index == 0 {
        let anchors: Vec<usize> = (0..rho.len()).step_by(COARSE_STRIDE).collect();
        let mut anchor_values = Vec::with_capacity(anchors.len());
        let mut seed = branch0_guess(config.x_of_rho(rho[0]));
        for &i in &anchors {
            let r = solve_branch0_seeded(config.x_of_rho(rho[i]), tol, seed)
                .map_err(annotate(rho[i]))?;
            seed = r.value;
            anchor_values.push(r.value);
        }
        let chunks: Vec<Vec<f64>> = anchors
            .par_iter()
            .zip(anchor_values.par_iter())
            .map(|(&start, &anchor)| {
                let end = (start + COARSE_STRIDE).min(rho.len());
                let mut out = Vec::with_capacity(end - start);
                out.push(anchor);
                let mut seed = anchor;
                for &r in &rho[start + 1..end] {
                    let v = solve_branch0_seeded(config.x_of_rho(r), tol, seed)
                        .map_err(annotate(r))?
                        .value;
                    out.push(v);
                    seed = v;
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        chunks.concat()
    } else {
        rho.par_iter()
            .map(|&r| {
                solve_branches(config.x_of_rho(r), branch_index + 1, tol)
                    .map(|v| v[branch_index].value)
                    .map_err(annotate(r))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(AdiabaticBranch {
        grid: grid.clone(),
        nu_squared,
        branch_index,
        source: BranchSource::Eigen {
            config: *config,
            tol,
        },
    })
}

impl AdiabaticBranch {
    /// Model branch with `nu^2` fixed at `value` on every grid point.
    pub fn constant(grid: &LogGrid, value: f64) -> Self {
        Self {
            grid: grid.clone(),
            nu_squared: vec![value; grid.len()],
            branch_index: 0,
            source: BranchSource::Constant { nu_squared: value },
        }
    }

    pub fn lambda(&self) -> Vec<f64> {
        self.nu_squared.iter().map(|v| v - 4.0).collect()
    }

    /// Largest change of `nu^2` between neighbouring grid points.
    pub fn max_step_change(&self) -> f64 {
        self.nu_squared
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .fold(0.0, f64::max)
    }

    /// The same branch recomputed on another grid.
    pub fn resample(&self, grid: &LogGrid) -> Result<Self> {
        match self.source {
            BranchSource::Constant { nu_squared } => Ok(Self::constant(grid, nu_squared)),
            BranchSource::Eigen { config, tol } => {
                tabulate_branch_with_tol(&config, grid, self.branch_index, tol)
            }
        }
    }

    /// `nu^2` at an arbitrary `rho`.
    pub fn nu_squared_at(&self, rho: f64) -> Result<f64> {
        match self.source {
            BranchSource::Constant { nu_squared } => Ok(nu_squared),
            BranchSource::Eigen { config, tol } => {
                let x = config.x_of_rho(rho);
                if self.branch_index == 0 {
                    let seed = self.interpolate(rho).unwrap_or_else(|| branch0_guess(x));
                    Ok(solve_branch0_seeded(x, tol, seed)?.value)
                } else {
                    Ok(solve_branches(x, self.branch_index + 1, tol)?[self.branch_index].value)
                }
            }
        }
    }

    /// Linear interpolation in `ln(rho)`; `None` outside the grid.
    fn interpolate(&self, rho: f64) -> Option<f64> {
        let v = self.grid.values();
        if rho < v[0] || rho > v[v.len() - 1] {
            return None;
        }
        let t = (rho / v[0]).ln() / self.grid.log_step();
        let i = (t.floor() as usize).min(v.len() - 2);
        let w = t - i as f64;
        Some(self.nu_squared[i] * (1.0 - w) + self.nu_squared[i + 1] * w)
    }
}

/// Short-distance regularization of the adiabatic potential at scale `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum Regularization {
    /// No cutoff: the `-C/rho^2` attraction continues to `rho = 0`.
    None,
    /// Infinite wall, `f(R) = 0`.
    HardWall { r: f64 },
    /// Potential frozen at its value at `R` for `rho < R`.
    Cap { r: f64 },
}

impl Regularization {
    pub fn scale(&self) -> Option<f64> {
        match *self {
            Regularization::None => None,
            Regularization::HardWall { r } | Regularization::Cap { r } => Some(r),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Regularization::None => "none",
            Regularization::HardWall { .. } => "hard-wall",
            Regularization::Cap { .. } => "cap",
        }
    }
}

/// `V(rho) = (nu^2(rho) - 1/4) / (2 rho^2)` with a regularization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectivePotential {
    pub branch: AdiabaticBranch,
    pub regularization: Regularization,
}

pub fn effective_potential(
    branch: AdiabaticBranch,
    regularization: Regularization,
) -> Result<EffectivePotential> {
    if let Some(r) = regularization.scale() {
        let (lo, hi) = (branch.grid.rho_min(), branch.grid.rho_max());
        let slack = 1e-12 * r;
        if !(r.is_finite() && r > 0.0 && r >= lo - slack && r < hi) {
            return Err(Error::invalid(
                "R",
                format!("regularization scale {r} outside the grid range [{lo}, {hi})"),
            ));
        }
    }
    Ok(EffectivePotential {
        branch,
        regularization,
    })
}

impl EffectivePotential {
    /// Unitary `-C/(2 rho^2)` potential on `grid`, the model used throughout
    /// the tower and collapse analyses.
    pub fn unitary(grid: &LogGrid, regularization: Regularization) -> Result<Self> {
        let branch = tabulate_branch(&SystemConfig::unitarity(), grid, 0)?;
        effective_potential(branch, regularization)
    }

    pub fn inner_radius(&self) -> Option<f64> {
        self.regularization.scale()
    }

    /// Internal-unit potential at `rho`; `+inf` inside a hard wall.
    pub fn value(&self, rho: f64) -> Result<f64> {
        match self.regularization {
            Regularization::HardWall { r } if rho < r => Ok(f64::INFINITY),
            Regularization::Cap { r } if rho < r => self.unregularized(r),
            _ => self.unregularized(rho),
        }
    }

    fn unregularized(&self, rho: f64) -> Result<f64> {
        let nu2 = self.branch.nu_squared_at(rho)?;
        Ok((nu2 - 0.25) / (2.0 * rho * rho))
    }

    /// Values on the branch grid, with regularization applied.
    pub fn tabulate(&self) -> Vec<f64> {
        self.branch
            .grid
            .values()
            .iter()
            .zip(&self.branch.nu_squared)
            .map(|(&rho, &nu2)| match self.regularization {
                Regularization::HardWall { r } if rho < r => f64::INFINITY,
                Regularization::Cap { r } if rho < r => self.unregularized(r).unwrap_or(f64::NAN),
                _ => (nu2 - 0.25) / (2.0 * rho * rho),
            })
            .collect()
    }
}
