//! Panel-adaptive Gauss–Legendre quadrature for complex-valued integrands.
//!
//! Each panel is estimated by a 12-point rule and refined by comparing
//! against its two half-panel evaluations; the worst panel splits until the
//! summed error estimate meets the tolerance or the evaluation budget runs
//! out. Callers seed initial breakpoints at the scale of the fastest
//! oscillation so the per-panel estimates see resolved integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

const RULE_N: usize = 12;

/// Legendre nodes/weights on [-1, 1], computed once by Newton iteration.
fn rule() -> &'static ([f64; RULE_N], [f64; RULE_N]) {
    static RULE: OnceLock<([f64; RULE_N], [f64; RULE_N])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = RULE_N;
        let mut nodes = [0.0f64; RULE_N];
        let mut weights = [0.0f64; RULE_N];
        for i in 0..n {
            // Initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Complex64 {
    let (nodes, weights) = rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..RULE_N {
        acc += weights[i] * f(mid + half * nodes[i]);
    }
    acc * half
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

fn make_panel<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64, evals: &mut usize) -> Panel {
    let coarse = gauss(f, a, b);
    let mid = 0.5 * (a + b);
    let fine = gauss(f, a, mid) + gauss(f, mid, b);
    *evals += 3 * RULE_N;
    Panel {
        a,
        b,
        value: fine,
        error: (fine - coarse).norm(),
    }
}

/// Integrates `f` over [a, b]. `breakpoints` lists interior seed points
/// (unsorted, duplicates fine); refinement proceeds until the total error
/// estimate drops below `abs_tol` or `max_evals` is exhausted. Exhaustion
/// with an error estimate more than 20× the tolerance is an error.
pub fn integrate<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    abs_tol: f64,
    max_evals: usize,
) -> Result<QuadResult> {
    if a >= b {
        return Err(Error::InvalidArgument(format!(
            "bad integration range [{a}, {b}]"
        )));
    }
    let mut edges: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > a && x < b)
        .chain([a, b])
        .collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut evals = 0usize;
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    for w in edges.windows(2) {
        heap.push(make_panel(&mut f, w[0], w[1], &mut evals));
    }

    loop {
        let total_error: f64 = heap.iter().map(|p| p.error).sum();
        if total_error <= abs_tol {
            break;
        }
        if evals >= max_evals {
            if total_error > 20.0 * abs_tol {
                return Err(Error::Quadrature(format!(
                    "error estimate {total_error:.3e} after {evals} evaluations, tolerance {abs_tol:.3e}"
                )));
            }
            break;
        }
        let worst = heap.pop().expect("at least one panel");
        if worst.b - worst.a < 1e-15 {
            // Cannot split further; accept its estimate.
            let mut spent = worst;
            spent.error = 0.0;
            heap.push(spent);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(make_panel(&mut f, worst.a, mid, &mut evals));
        heap.push(make_panel(&mut f, mid, worst.b, &mut evals));
    }

    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    // Drain in interval order for a reproducible summation order.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    for p in panels {
        value += p.value;
        error += p.error;
    }
    Ok(QuadResult {
        value,
        error_estimate: error,
        evaluations: evals,
    })
}

/// Seed breakpoints for integrands over [-1/2, 1/2] that peak at the origin
/// on the 1/N scale and oscillate with frequencies up to `max_freq`.
pub fn oscillatory_breakpoints(n_scale: u64, max_freq: f64) -> Vec<f64> {
    let mut pts = Vec::new();
    // Dyadic shells resolving the z-kernel peak near zero.
    let mut v = 1.0 / (8.0 * n_scale as f64);
    while v < 0.26 {
        pts.push(v);
        pts.push(-v);
        v *= 2.0;
    }
    // Uniform seeding at the oscillation scale.
    let step = (1.0 / (2.0 * max_freq + 16.0)).max(1e-6);
    let mut x = -0.5 + step;
    while x < 0.5 {
        pts.push(x);
        x += step;
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        // Degree up to 2n-1 = 23.
        let mut f = |x: f64| Complex64::new(x.powi(23) + 3.0 * x.powi(10) + 1.0, 0.0);
        let got = gauss(&mut f, -1.0, 1.0);
        // ∫ x^23 = 0, ∫ 3x^10 = 6/11, ∫ 1 = 2.
        let want = 6.0 / 11.0 + 2.0;
        assert!((got.re - want).abs() < 1e-13, "{got}");
    }

    #[test]
    fn adaptive_handles_oscillation() {
        // ∫_0^1 cos(100 x) dx = sin(100)/100.
        let r = integrate(
            |x| Complex64::new((100.0 * x).cos(), 0.0),
            0.0,
            1.0,
            &[],
            1e-12,
            100_000,
        )
        .unwrap();
        let want = 100.0f64.sin() / 100.0;
        assert!((r.value.re - want).abs() < 1e-11);
    }

    #[test]
    fn breakpoints_and_peak() {
        // Sharp Lorentzian peak at 0: ∫_{-1/2}^{1/2} ε/(x²+ε²) dx ≈ π - 2ε...
        // exact: 2 atan(1/(2ε)).
        let eps = 1e-4;
        let r = integrate(
            |x| Complex64::new(eps / (x * x + eps * eps), 0.0),
            -0.5,
            0.5,
            &oscillatory_breakpoints(10_000, 4.0),
            1e-9,
            200_000,
        )
        .unwrap();
        let want = 2.0 * (0.5 / eps).atan();
        assert!((r.value.re - want).abs() < 1e-7, "{} vs {want}", r.value.re);
    }

    #[test]
    fn budget_exhaustion_reports() {
        let r = integrate(
            |x| Complex64::new((1e7 * x).cos(), 0.0),
            0.0,
            1.0,
            &[],
            1e-14,
            2_000,
        );
        assert!(r.is_err());
    }
}
