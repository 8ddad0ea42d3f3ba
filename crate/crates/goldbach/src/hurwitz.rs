//! Hurwitz zeta by Euler–Maclaurin, the evaluation backbone for Dirichlet
//! L-functions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::summation::ComplexKahanSum;

/// B_{2k} for k = 1..=12.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// ζ(s, a) = Σ_{n ≥ 0} (n+a)^{-s}, continued to s ≠ 1, for 0 < a ≤ 1.
///
/// Direct terms up to N ~ |s| followed by the Euler–Maclaurin tail; the
/// truncation keeps the last correction term below 1e-15 of the result
/// for |Im s| up to 10^4.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_with(s, a, 0)
}

/// Same, with `extra` added to the direct-sum length. Used by the
/// self-consistency tests to re-evaluate at a higher working order.
pub fn hurwitz_zeta_with(s: Complex64, a: f64, extra: usize) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "hurwitz offset must lie in (0,1], got {a}"
        )));
    }
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-14 {
        return Err(Error::Pole);
    }

    let n = 16.max((0.6 * s.norm()) as usize + 8) + extra;

    let mut direct = ComplexKahanSum::new();
    for k in 0..n {
        direct.add((-s * (k as f64 + a).ln()).exp());
    }

    let w = n as f64 + a;
    let lnw = w.ln();
    let w_pow = |e: Complex64| (e * lnw).exp();

    // ∫_N^∞ + boundary term.
    let mut tail = w_pow(Complex64::new(1.0, 0.0) - s) / (s - 1.0);
    tail += 0.5 * w_pow(-s);

    // Σ_k B_{2k}/(2k)! (s)_{2k-1} w^{-s-2k+1}
    let winv2 = 1.0 / (w * w);
    let mut poch = s; // (s)_1
    let mut wpow = w_pow(-s - 1.0);
    let mut fact = 2.0f64; // (2k)!
    let mut prev_mag = f64::INFINITY;
    for (k, &b) in BERNOULLI.iter().enumerate() {
        let term = poch * wpow * (b / fact);
        let mag = term.norm();
        if mag > prev_mag {
            // The asymptotic series started diverging; everything converged
            // well before this point for the supported |Im s| range.
            break;
        }
        tail += term;
        if mag < 1e-17 * tail.norm() {
            break;
        }
        prev_mag = mag;
        let two_k = 2.0 * (k as f64 + 1.0);
        poch = poch * (s + (two_k - 1.0)) * (s + two_k);
        wpow *= winv2;
        fact *= (two_k + 1.0) * (two_k + 2.0);
    }

    Ok(direct.value() + tail)
}
