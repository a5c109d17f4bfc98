#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::Rng;
use proptest::test_runner::{RngAlgorithm, TestRng};

/// Straight transcription of the eigenvalue equation, written independently
/// of the library: real `nu` for `nu^2 > 0`, `nu = i b` otherwise.
pub fn lhs(nu2: f64) -> f64 {
    let k = 8.0 / 3f64.sqrt();
    if nu2 > 0.0 {
        let nu = nu2.sqrt();
        (-nu * (nu * PI / 2.0).cos() + k * (nu * PI / 6.0).sin()) / (nu * PI / 2.0).sin()
    } else if nu2 < 0.0 {
        let b = (-nu2).sqrt();
        (-b * (b * PI / 2.0).cosh() + k * (b * PI / 6.0).sinh()) / (b * PI / 2.0).sinh()
    } else {
        (k * PI / 6.0 - 1.0) / (PI / 2.0)
    }
}

/// Branch-0 root by a dense scan of `lhs - x` over `samples` points on
/// `(lo, 4)` followed by plain bisection on the first sign change.
pub fn dense_scan_branch0(x: f64, samples: usize) -> f64 {
    let lo = -(x.abs() + 3.0).powi(2);
    let hi = 4.0 - 1e-12;
    let step = (hi - lo) / samples as f64;
    let g = |v: f64| lhs(v) - x;
    let mut a = lo;
    let mut ga = g(a);
    for i in 1..=samples {
        let b = lo + step * i as f64;
        let gb = g(b);
        if ga.signum() != gb.signum() {
            let (mut l, mut r) = (a, b);
            for _ in 0..200 {
                let m = 0.5 * (l + r);
                if m == l || m == r {
                    break;
                }
                if g(m).signum() == ga.signum() {
                    l = m;
                } else {
                    r = m;
                }
            }
            return 0.5 * (l + r);
        }
        a = b;
        ga = gb;
    }
    panic!("no sign change for x = {x}");
}

/// `count` reproducible uniform draws from `[lo, hi)`.
pub fn uniform_draws(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    (0..count)
        .map(|_| {
            let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
            lo + (hi - lo) * u
        })
        .collect()
}

/// `b` from bisection of the imaginary-branch equation at `x = 0`.
pub fn oracle_b() -> f64 {
    let (mut l, mut r) = (0.5, 2.0);
    for _ in 0..200 {
        let m = 0.5 * (l + r);
        if lhs(-l * l).signum() == lhs(-m * m).signum() {
            l = m;
        } else {
            r = m;
        }
    }
    0.5 * (l + r)
}
