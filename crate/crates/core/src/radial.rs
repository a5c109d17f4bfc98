//! Hyper-radial equation on a regularized adiabatic potential.
//!
//! The equation `-f'' + (nu^2(rho) - 1/4)/rho^2 f = 2 E f` is integrated in
//! `t = ln(rho / rho_0)` with `f = sqrt(rho) g`, which turns it into
//!
//! ```text
//!   g''(t) = Q(t) g(t),      Q = nu^2(rho) - 2 E rho^2.
//! ```
//!
//! In the unitary region `Q = -b^2 - 2 E rho^2` and `g` oscillates with a
//! constant period in `t`, so a uniform Numerov grid resolves every level of
//! the geometric tower equally well.
//!
//! Bound states are located by counting nodes: for a solution started with
//! `f = 0` at the inner boundary, the number of nodes at energy `E` equals the
//! number of levels below `E` (Sturm oscillation). Bisection on that count
//! cannot skip a level.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::LogGrid;
use crate::hyperangular::{BranchSource, EffectivePotential, Regularization};
use crate::stats::{linear_fit, mean_std, LinearFit};

/// Default relative energy tolerance of the level search.
pub const DEFAULT_TOL_E: f64 = 1e-9;

/// Levels with `|E| < BOX_FACTOR / (2 rho_max^2)` feel the outer wall.
pub const BOX_FACTOR: f64 = 100.0;

/// Lower edge of the search window in units of `hbar^2/(2 m R^2)`.
pub const FLOOR_FACTOR: f64 = 10.0;

/// Node statistics use `rho < WINDOW_FRACTION * min(1/kappa, |a|)`.
pub const WINDOW_FRACTION: f64 = 0.1;

/// Largest `h^2 |Q|` accepted before the step is considered unresolved.
const STEP_LIMIT: f64 = 1.0;

const RENORM_THRESHOLD: f64 = 1e200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialOptions {
    /// Grid points per unit of `ln(rho)`.
    pub points_per_unit: f64,
}

impl Default for RadialOptions {
    fn default() -> Self {
        Self {
            points_per_unit: 200.0,
        }
    }
}

/// Raw output of one outward integration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialIntegration {
    pub energy: f64,
    /// `(rho, f(rho))`; empty unless samples were requested.
    pub samples: Vec<(f64, f64)>,
    pub node_count: usize,
    /// Node radii found while integrating (linear interpolation in `ln rho`).
    pub nodes: Vec<f64>,
    /// `sin` of the Pruefer angle of `g` at the last point; zero when the
    /// outer condition `f(rho_end) = 0` is met.
    pub outer_mismatch: f64,
    /// Where integration ended; below `rho_max` when the solution had
    /// entered its final classically forbidden growth.
    pub rho_end: f64,
    /// Natural log of the total renormalization applied to `g`.
    pub log_scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Start {
    /// `f = 0` at the first grid point.
    Wall,
    /// Constant potential `w / 2` below the first grid point, regular at zero.
    Cap { w: f64 },
}

/// Potential tabulated on the integration grid, reused across energies.
#[derive(Debug, Clone)]
struct RadialProblem {
    rho: Vec<f64>,
    nu2: Vec<f64>,
    h: f64,
    start: Start,
}

impl RadialProblem {
    fn new(
        potential: &EffectivePotential,
        inner: f64,
        rho_max: f64,
        options: &RadialOptions,
    ) -> Result<Self> {
        let grid = LogGrid::with_density(inner, rho_max, options.points_per_unit)?;
        let branch = potential.branch.resample(&grid)?;
        let start = match potential.regularization {
            Regularization::Cap { r } if (inner - r).abs() <= 1e-12 * r => Start::Cap {
                w: (branch.nu_squared[0] - 0.25) / (r * r),
            },
            _ => Start::Wall,
        };
        Ok(Self {
            rho: grid.values().to_vec(),
            nu2: branch.nu_squared,
            h: grid.log_step(),
            start,
        })
    }

    fn q(&self, i: usize, energy: f64) -> f64 {
        self.nu2[i] - 2.0 * energy * self.rho[i] * self.rho[i]
    }

    fn min_two_v(&self) -> f64 {
        self.rho
            .iter()
            .zip(&self.nu2)
            .map(|(r, v)| (v - 0.25) / (r * r))
            .fold(f64::INFINITY, f64::min)
    }

    fn integrate(&self, energy: f64, record: bool) -> Result<RadialIntegration> {
        let n = self.rho.len();
        let h = self.h;
        let h2 = h * h;
        let t0 = self.rho[0].ln();
        let t_at = |i: f64| t0 + h * i;

        let last_nonpositive = (0..n).rev().find(|&i| self.q(i, energy) <= 0.0);

        let check = |i: usize, q: f64| -> Result<()> {
            if h2 * q.abs() > STEP_LIMIT {
                Err(Error::StepControl {
                    rho: self.rho[i],
                    h2q: h2 * q.abs(),
                })
            } else {
                Ok(())
            }
        };

        // (g_{i-1}, c_{i-1}) and (g_i, c_i) with c = 1 - h^2 Q / 12.
        let mut node_count = 0usize;
        let (mut g_prev, mut c_prev, mut g_cur);
        let q0 = self.q(0, energy);
        check(0, q0)?;
        let mut c_cur = 1.0 - h2 * q0 / 12.0;
        let mut i = 0usize;
        match self.start {
            Start::Wall => {
                g_cur = 0.0;
                let q1 = self.q(1, energy);
                check(1, q1)?;
                g_prev = g_cur;
                c_prev = c_cur;
                g_cur = h;
                c_cur = 1.0 - h2 * q1 / 12.0;
                i = 1;
            }
            Start::Cap { w } => {
                let r0 = self.rho[0];
                let k2 = 2.0 * energy - w;
                let inside = |r: f64| -> f64 {
                    let f = if k2 > 0.0 {
                        (k2.sqrt() * r).sin()
                    } else if k2 < 0.0 {
                        ((-k2).sqrt() * r).sinh()
                    } else {
                        r
                    };
                    f / r.sqrt()
                };
                if k2 > 0.0 {
                    let phase = k2.sqrt() * r0 / std::f64::consts::PI;
                    node_count = (phase.ceil() as usize).saturating_sub(1);
                }
                let r_before = r0 * (-h).exp();
                let q_before = 0.25 + r_before * r_before * (w - 2.0 * energy);
                g_prev = inside(r_before);
                c_prev = 1.0 - h2 * q_before / 12.0;
                g_cur = inside(r0);
            }
        }

        let mut samples = Vec::new();
        if record {
            samples.reserve(n);
            if i == 1 {
                samples.push((self.rho[0], 0.0));
            }
            samples.push((self.rho[i], g_cur));
        }
        let mut nodes = Vec::new();
        let mut last_nonzero = if g_cur != 0.0 { Some((i, g_cur)) } else { None };
        let mut log_scale = 0.0;

        while i + 1 < n {
            let q_next = self.q(i + 1, energy);
            check(i + 1, q_next)?;
            let c_next = 1.0 - h2 * q_next / 12.0;
            let mut g_next = ((12.0 - 10.0 * c_cur) * g_cur - c_prev * g_prev) / c_next;

            if g_next != 0.0 {
                if let Some((j, gj)) = last_nonzero {
                    if gj.signum() != g_next.signum() {
                        node_count += 1;
                        let w = gj / (gj - g_next);
                        let tj = t_at(j as f64);
                        let t_node = tj + (t_at((i + 1) as f64) - tj) * w;
                        nodes.push(t_node.exp());
                    }
                }
            }

            if g_next.abs() > RENORM_THRESHOLD {
                let s = 1.0 / g_next.abs();
                g_next *= s;
                g_cur *= s;
                log_scale -= s.ln();
                if let Some((_, gj)) = last_nonzero.as_mut() {
                    *gj *= s;
                }
                for p in samples.iter_mut() {
                    p.1 *= s;
                }
            }
            if g_next != 0.0 {
                last_nonzero = Some((i + 1, g_next));
            }
            if record {
                samples.push((self.rho[i + 1], g_next));
            }

            g_prev = g_cur;
            c_prev = c_cur;
            g_cur = g_next;
            c_cur = c_next;
            i += 1;

            // Past the last turning point Q > 0 for good; once |g| grows it
            // cannot return to zero.
            let beyond_turning = last_nonpositive.is_none_or(|l| i > l);
            if beyond_turning && g_cur * (g_cur - g_prev) > 0.0 {
                break;
            }
        }

        let slope = (g_cur - g_prev) / h;
        let norm = g_cur.hypot(slope);
        let outer_mismatch = if norm > 0.0 { g_cur / norm } else { 0.0 };
        for p in samples.iter_mut() {
            p.1 *= p.0.sqrt();
        }
        Ok(RadialIntegration {
            energy,
            samples,
            node_count,
            nodes,
            outer_mismatch,
            rho_end: self.rho[i],
            log_scale,
        })
    }
}

fn inner_radius(potential: &EffectivePotential) -> f64 {
    potential
        .inner_radius()
        .unwrap_or_else(|| potential.branch.grid.rho_min())
}

fn check_rho_max(inner: f64, rho_max: f64) -> Result<()> {
    if rho_max.is_finite() && rho_max > inner {
        Ok(())
    } else {
        Err(Error::invalid(
            "rho_max",
            format!("must exceed the inner radius {inner}, got {rho_max}"),
        ))
    }
}

/// Integrates outward from the inner boundary at fixed `energy < 0`.
///
/// The inner boundary is the regularization radius (`f(R) = 0` for a hard
/// wall, the regular interior solution for a cap) or, without
/// regularization, the first point of the potential's grid.
pub fn integrate_radial(
    potential: &EffectivePotential,
    energy: f64,
    rho_max: f64,
    options: &RadialOptions,
) -> Result<RadialIntegration> {
    if !(energy.is_finite() && energy < 0.0) {
        return Err(Error::invalid(
            "E",
            format!("must be negative, got {energy}"),
        ));
    }
    let inner = inner_radius(potential);
    check_rho_max(inner, rho_max)?;
    RadialProblem::new(potential, inner, rho_max, options)?.integrate(energy, true)
}

/// One bound state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialSolution {
    pub energy: f64,
    /// `sqrt(-2 E)`.
    pub kappa: f64,
    pub node_count: usize,
    /// `(rho, f(rho))`, normalized to unit maximum and cut where the
    /// asymptotic decay ends.
    pub samples: Vec<(f64, f64)>,
    pub inner_radius: f64,
    /// Upper edge of the scale window used for node statistics.
    pub window_max: f64,
    pub box_contaminated: bool,
}

impl RadialSolution {
    /// Wraps externally generated samples, e.g. a closed-form wavefunction.
    pub fn from_samples(
        energy: f64,
        inner_radius: f64,
        samples: Vec<(f64, f64)>,
        window_max: f64,
    ) -> Self {
        let node_count = count_sign_changes(&samples);
        Self {
            energy,
            kappa: (-2.0 * energy).max(0.0).sqrt(),
            node_count,
            samples,
            inner_radius,
            window_max,
            box_contaminated: false,
        }
    }
}

fn count_sign_changes(samples: &[(f64, f64)]) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for &(_, f) in samples {
        if f != 0.0 {
            if last != 0.0 && last.signum() != f.signum() {
                count += 1;
            }
            last = f;
        }
    }
    count
}

/// Levels ordered from the most bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundStateSpectrum {
    pub states: Vec<RadialSolution>,
    pub regularization: Regularization,
    pub rho_max: f64,
    pub energy_floor: f64,
    pub energy_ceiling: f64,
}

impl BoundStateSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }

    /// Levels not affected by the outer wall.
    pub fn level_count(&self) -> usize {
        self.states.iter().filter(|s| !s.box_contaminated).count()
    }

    /// `E_n / E_{n+1}` for consecutive levels that are neither the ground
    /// state nor box-contaminated.
    pub fn interior_ratios(&self) -> Vec<f64> {
        let interior: Vec<&RadialSolution> = self
            .states
            .iter()
            .skip(1)
            .filter(|s| !s.box_contaminated)
            .collect();
        interior
            .windows(2)
            .map(|w| w[0].energy / w[1].energy)
            .collect()
    }

    /// Number of interior levels (excluding ground and box states).
    pub fn interior_count(&self) -> usize {
        self.states
            .iter()
            .skip(1)
            .filter(|s| !s.box_contaminated)
            .count()
    }
}

fn scattering_length_of(potential: &EffectivePotential) -> f64 {
    match potential.branch.source {
        BranchSource::Eigen { config, .. } => config.scattering_length().abs(),
        BranchSource::Constant { .. } => f64::INFINITY,
    }
}

/// Bound states of a regularized potential by node-counting bisection.
///
/// The search window is `[E_floor, E_ceiling)` with `E_floor` at
/// `-FLOOR_FACTOR / (2 R^2)` (or lower if the potential is deeper) and
/// `E_ceiling = min(0, V(rho_max))`. Level `n` is bracketed between energies
/// with at most `n` and at least `n + 1` nodes and bisected in `ln|E|` until
/// the bracket is within `tol_e` relative. Levels run in parallel; each one
/// bisects independently so the result does not depend on scheduling.
pub fn find_spectrum(
    potential: &EffectivePotential,
    rho_max: f64,
    max_levels: usize,
    tol_e: f64,
    options: &RadialOptions,
) -> Result<BoundStateSpectrum> {
    let r = potential.inner_radius().ok_or(Error::Unregularized)?;
    check_rho_max(r, rho_max)?;
    if !(tol_e.is_finite() && tol_e > 0.0) {
        return Err(Error::invalid("tol_E", "must be > 0"));
    }
    let problem = RadialProblem::new(potential, r, rho_max, options)?;

    let mut floor = -FLOOR_FACTOR / (2.0 * r * r);
    let deepest = 0.5 * problem.min_two_v();
    if deepest.is_finite() && 1.5 * deepest < floor {
        floor = 1.5 * deepest;
    }
    let below_floor = problem.integrate(floor, false)?.node_count;
    if below_floor != 0 {
        return Err(Error::FloorNotBelowSpectrum {
            floor,
            count: below_floor,
        });
    }
    let n_last = problem.rho.len() - 1;
    let v_outer = (problem.nu2[n_last] - 0.25) / (2.0 * rho_max * rho_max);
    let ceiling = v_outer.min(0.0);
    let total = problem.integrate(ceiling, false)?.node_count;
    let levels = total.min(max_levels);

    let box_limit = BOX_FACTOR / (2.0 * rho_max * rho_max);
    let a_abs = scattering_length_of(potential);

    let states = (0..levels)
        .into_par_iter()
        .map(|n| {
            let (lo, hi) = bisect_level(&problem, n, floor, ceiling, tol_e)?;
            let energy = 0.5 * (lo + hi);
            let run = problem.integrate(lo, true)?;
            if run.node_count != n {
                return Err(Error::NotConverged(format!(
                    "level {n}: wavefunction at E = {lo} has {} nodes",
                    run.node_count
                )));
            }
            let kappa = (-2.0 * energy).sqrt();
            let samples = trim_tail(run.samples);
            Ok(RadialSolution {
                energy,
                kappa,
                node_count: n,
                samples,
                inner_radius: r,
                window_max: WINDOW_FRACTION * (1.0 / kappa).min(a_abs),
                box_contaminated: energy.abs() < box_limit,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(BoundStateSpectrum {
        states,
        regularization: potential.regularization,
        rho_max,
        energy_floor: floor,
        energy_ceiling: ceiling,
    })
}

/// Bracket `[lo, hi]` with `count(lo) <= n < count(hi)` shrunk to `tol_e`.
fn bisect_level(
    problem: &RadialProblem,
    n: usize,
    floor: f64,
    ceiling: f64,
    tol_e: f64,
) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (floor, ceiling);
    for _ in 0..400 {
        if hi < 0.0 && (hi - lo) <= tol_e * hi.abs() {
            return Ok((lo, hi));
        }
        let mid = if hi < 0.0 {
            -(lo * hi).sqrt()
        } else {
            lo / 64.0
        };
        if mid <= lo || mid >= hi {
            return Ok((lo, hi));
        }
        if problem.integrate(mid, false)?.node_count > n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NotConverged(format!(
        "level {n} bracket [{lo}, {hi}] did not shrink to {tol_e:e}"
    )))
}

/// Drops the growing tail past the last minimum of `|g|` beyond the final node.
fn trim_tail(mut samples: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let g: Vec<f64> = samples.iter().map(|(r, f)| f / r.sqrt()).collect();
    let mut last_node = 0;
    for i in 1..g.len() {
        if g[i] != 0.0 && g[i - 1] != 0.0 && g[i].signum() != g[i - 1].signum() {
            last_node = i;
        }
    }
    let mut peak = last_node;
    for i in last_node..g.len() {
        if g[i].abs() >= g[peak].abs() {
            peak = i;
        } else {
            break;
        }
    }
    let mut cut = g.len();
    for i in peak + 1..g.len() {
        if g[i].abs() > g[i - 1].abs() {
            cut = i;
            break;
        }
    }
    samples.truncate(cut);
    let max = samples.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    if max > 0.0 {
        for p in samples.iter_mut() {
            p.1 /= max;
        }
    }
    samples
}

/// Node radii of a sampled solution, by sign change and linear
/// interpolation in `ln(rho)`.
pub fn node_positions(solution: &RadialSolution) -> Vec<f64> {
    let mut nodes = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for &(rho, f) in &solution.samples {
        if f == 0.0 {
            continue;
        }
        if let Some((r0, f0)) = last {
            if f0.signum() != f.signum() {
                let (t0, t1) = (r0.ln(), rho.ln());
                nodes.push((t0 + (t1 - t0) * f0 / (f0 - f)).exp());
            }
        }
        last = Some((rho, f));
    }
    nodes
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeAnalysis {
    /// All nodes of the solution.
    pub nodes: Vec<f64>,
    /// Nodes inside `(R, window_max)`.
    pub window_nodes: Vec<f64>,
    /// Consecutive ratios of the window nodes.
    pub ratios: Vec<f64>,
    pub mean_ratio: f64,
    pub std_ratio: f64,
}

/// Geometric statistics of the nodes inside the short-distance window
/// `R << rho << min(|a|, 1/kappa)`.
pub fn node_analysis(solution: &RadialSolution) -> Result<NodeAnalysis> {
    let nodes = node_positions(solution);
    let window_nodes: Vec<f64> = nodes
        .iter()
        .copied()
        .filter(|&r| r > solution.inner_radius && r < solution.window_max)
        .collect();
    if window_nodes.len() < 3 {
        return Err(Error::InsufficientNodes {
            found: window_nodes.len(),
            needed: 3,
        });
    }
    let ratios: Vec<f64> = window_nodes.windows(2).map(|w| w[1] / w[0]).collect();
    let (mean_ratio, std_ratio) = mean_std(&ratios).expect("at least two ratios");
    Ok(NodeAnalysis {
        nodes,
        window_nodes,
        ratios,
        mean_ratio,
        std_ratio,
    })
}

/// Node counts at fixed energy for hard inner cutoffs `R 10^-k`, `k = 0..=decades`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollapseProbe {
    pub energy: f64,
    pub cutoffs: Vec<f64>,
    pub node_counts: Vec<usize>,
    /// Least-squares fit of node count against `k`.
    pub fit: LinearFit,
}

impl CollapseProbe {
    pub fn nodes_per_decade(&self) -> f64 {
        self.fit.slope
    }
}

/// Thomas-collapse probe: at fixed `energy`, moves a hard inner cutoff
/// toward `rho = 0` one decade at a time and counts nodes out to `rho_max`.
///
/// For an unregularized `-C/rho^2` core each decade adds `b ln(10)/pi`
/// nodes regardless of the energy, so the count never saturates. The
/// potential must carry no regularization; its own scale `R` is given as
/// `reference`.
pub fn collapse_probe(
    potential: &EffectivePotential,
    energy: f64,
    reference: f64,
    decades: usize,
    rho_max: f64,
    options: &RadialOptions,
) -> Result<CollapseProbe> {
    if potential.regularization != Regularization::None {
        return Err(Error::invalid(
            "regularization",
            "the collapse probe needs an unregularized potential",
        ));
    }
    if !(energy.is_finite() && energy < 0.0) {
        return Err(Error::invalid(
            "E",
            format!("must be negative, got {energy}"),
        ));
    }
    if decades < 1 {
        return Err(Error::invalid("decades", "need at least one decade"));
    }
    check_rho_max(reference, rho_max)?;
    let cutoffs: Vec<f64> = (0..=decades)
        .map(|k| reference * 10f64.powi(-(k as i32)))
        .collect();
    let node_counts = cutoffs
        .par_iter()
        .map(|&rc| {
            RadialProblem::new(potential, rc, rho_max, options)?
                .integrate(energy, false)
                .map(|run| run.node_count)
        })
        .collect::<Result<Vec<_>>>()?;
    let ks: Vec<f64> = (0..=decades).map(|k| k as f64).collect();
    let ys: Vec<f64> = node_counts.iter().map(|&c| c as f64).collect();
    let fit = linear_fit(&ks, &ys).expect("at least two cutoffs");
    Ok(CollapseProbe {
        energy,
        cutoffs,
        node_counts,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperangular::{effective_potential, efimov_constants, AdiabaticBranch};

    fn constant_potential(nu2: f64, lo: f64, hi: f64, reg: Regularization) -> EffectivePotential {
        let grid = LogGrid::new(lo, hi, 16).unwrap();
        effective_potential(AdiabaticBranch::constant(&grid, nu2), reg).unwrap()
    }

    /// Fixed-step second-order (Stormer) integration of `f'' = (W - 2E) f` in
    /// `rho` itself, independent of the log-grid Numerov path.
    fn oracle_nodes(c: f64, r: f64, rho_max: f64, energy: f64, steps: usize) -> usize {
        let h = (rho_max - r) / steps as f64;
        let (mut f_prev, mut f) = (0.0, h);
        let mut count = 0;
        for i in 1..steps {
            let rho = r + h * i as f64;
            let acc = (-c / (rho * rho) - 2.0 * energy) * f;
            let f_next = 2.0 * f - f_prev + h * h * acc;
            if f_next.signum() != f.signum() && f_next != 0.0 {
                count += 1;
            }
            f_prev = f;
            f = f_next;
            if f.abs() > 1e150 {
                f *= 1e-150;
                f_prev *= 1e-150;
            }
        }
        count
    }

    #[test]
    fn repulsive_potential_has_no_nodes() {
        let pot = constant_potential(4.0, 1.0, 1e6, Regularization::HardWall { r: 1.0 });
        for e in [-1e-6, -1e-3, -1.0, -100.0] {
            let run = integrate_radial(&pot, e, 1e6, &RadialOptions::default()).unwrap();
            assert_eq!(run.node_count, 0);
            assert!(run.nodes.is_empty());
        }
    }

    #[test]
    fn node_count_matches_fixed_step_oracle() {
        let c = efimov_constants(1e-12).unwrap().c;
        let grid = LogGrid::new(1.0, 1e4, 40).unwrap();
        let pot = EffectivePotential::unitary(&grid, Regularization::HardWall { r: 1.0 }).unwrap();
        for &e in &[-0.5, -1e-4, -3e-6] {
            let run = integrate_radial(&pot, e, 1e3, &RadialOptions::default()).unwrap();
            let oracle = oracle_nodes(c, 1.0, run.rho_end.min(1e3), e, 4_000_000);
            assert_eq!(run.node_count, oracle, "E = {e}");
        }
    }

    #[test]
    fn small_rho_oscillation_is_log_periodic() {
        let consts = efimov_constants(1e-12).unwrap();
        let grid = LogGrid::new(1.0, 1e10, 40).unwrap();
        let pot = EffectivePotential::unitary(&grid, Regularization::HardWall { r: 1.0 }).unwrap();
        let run = integrate_radial(&pot, -1e-16, 1e10, &RadialOptions::default()).unwrap();
        // Far below 1/kappa the solution is sqrt(rho) sin(b ln rho): nodes at e^{k pi / b}.
        let inner: Vec<f64> = run.nodes.iter().copied().filter(|&r| r < 1e5).collect();
        assert!(inner.len() >= 3);
        for (k, r) in inner.iter().enumerate() {
            let expected = ((k + 1) as f64 * std::f64::consts::PI / consts.b).exp();
            assert!(
                (r / expected - 1.0).abs() < 1e-6,
                "node {k}: {r} vs {expected}"
            );
        }
        // With g'(0) = 1 the amplitude of g = f / sqrt(rho) is 1/b.
        let amp = run
            .samples
            .iter()
            .filter(|(r, _)| *r > 2.0 && *r < 1e5)
            .map(|(r, f)| (f / r.sqrt()).abs())
            .fold(0.0, f64::max);
        assert!((amp * consts.b - 1.0).abs() < 1e-3, "amplitude {amp}");
    }

    #[test]
    fn rejects_positive_energy_and_bad_range() {
        let pot = constant_potential(-1.0, 1.0, 10.0, Regularization::HardWall { r: 1.0 });
        assert!(integrate_radial(&pot, 0.1, 10.0, &RadialOptions::default()).is_err());
        assert!(integrate_radial(&pot, -0.1, 0.5, &RadialOptions::default()).is_err());
    }

    #[test]
    fn unregularized_spectrum_is_refused() {
        let pot = constant_potential(-1.0, 1.0, 10.0, Regularization::None);
        assert_eq!(
            find_spectrum(&pot, 10.0, 3, DEFAULT_TOL_E, &RadialOptions::default()),
            Err(Error::Unregularized)
        );
    }

    #[test]
    fn step_control_reports_unresolved_grid() {
        let pot = constant_potential(-1e6, 1.0, 10.0, Regularization::HardWall { r: 1.0 });
        let err = integrate_radial(&pot, -1.0, 10.0, &RadialOptions::default()).unwrap_err();
        assert!(matches!(err, Error::StepControl { .. }));
    }

    #[test]
    fn renormalization_keeps_growth_finite() {
        // A strong barrier (Q = 400) over 40 units of t, then an oscillatory
        // region: g grows by ~e^800 before it can turn over.
        let n = 16_001;
        let h = 80.0 / (n - 1) as f64;
        let rho: Vec<f64> = (0..n).map(|i| (h * i as f64).exp()).collect();
        let nu2: Vec<f64> = (0..n)
            .map(|i| {
                if i < n / 2 {
                    400.0
                } else {
                    -1.0 - 1e3 * rho[i].powi(-2)
                }
            })
            .collect();
        let problem = RadialProblem {
            rho,
            nu2,
            h,
            start: Start::Wall,
        };
        let run = problem.integrate(0.0, true).unwrap();
        // At least one rescale by the 1e200 threshold.
        assert!(run.log_scale > 400.0, "log scale {}", run.log_scale);
        assert!(run.samples.iter().all(|p| p.1.is_finite()));
        assert!(run.node_count > 5);
        assert_eq!(run.node_count, run.nodes.len());
    }

    #[test]
    fn hydrogen_like_square_well_via_cap() {
        // nu^2 = 1/4 gives V = 0 outside R and a constant interior: a plain
        // s-wave well of zero depth has no bound state.
        let pot = constant_potential(0.25, 1.0, 1e4, Regularization::Cap { r: 1.0 });
        let spec = find_spectrum(&pot, 1e4, 5, 1e-8, &RadialOptions::default()).unwrap();
        assert!(spec.states.is_empty());
    }

    #[test]
    fn analytic_log_periodic_nodes() {
        let b = efimov_constants(1e-12).unwrap().b;
        let samples: Vec<(f64, f64)> = (0..20_000)
            .map(|i| {
                let t = 0.1 + i as f64 * 1e-3;
                let rho = t.exp();
                (rho, rho.sqrt() * (b * t).sin())
            })
            .collect();
        let sol = RadialSolution::from_samples(0.0, 1.0, samples, f64::INFINITY);
        let analysis = node_analysis(&sol).unwrap();
        let expected = (std::f64::consts::PI / b).exp();
        for r in &analysis.ratios {
            assert!((r / expected - 1.0).abs() < 1e-6);
        }
        for (k, r) in analysis.nodes.iter().enumerate() {
            let exact = ((k + 1) as f64 * std::f64::consts::PI / b).exp();
            assert!((r / exact - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn insufficient_nodes_reported() {
        let pot = constant_potential(4.0, 1.0, 1e6, Regularization::HardWall { r: 1.0 });
        let run = integrate_radial(&pot, -1e-4, 1e6, &RadialOptions::default()).unwrap();
        let sol = RadialSolution::from_samples(-1e-4, 1.0, run.samples, f64::INFINITY);
        assert!(node_positions(&sol).is_empty());
        assert_eq!(
            node_analysis(&sol),
            Err(Error::InsufficientNodes {
                found: 0,
                needed: 3
            })
        );
    }

    #[test]
    fn collapse_probe_requires_unregularized_potential() {
        let pot = constant_potential(-1.0, 1.0, 10.0, Regularization::HardWall { r: 1.0 });
        assert!(collapse_probe(&pot, -1.0, 1.0, 3, 10.0, &RadialOptions::default()).is_err());
    }

    #[test]
    fn subcritical_core_saturates() {
        // C = 1/4 - 0.01 means nu^2 = 0.01: real exponents, no oscillation.
        let pot = constant_potential(0.01, 1e-3, 1e3, Regularization::None);
        let probe = collapse_probe(&pot, -1e-4, 1.0, 12, 1e3, &RadialOptions::default()).unwrap();
        assert!(probe.node_counts.iter().all(|&c| c == probe.node_counts[0]));
        assert_eq!(probe.fit.slope, 0.0);
    }
}
