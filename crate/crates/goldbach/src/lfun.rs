//! Dirichlet L-functions: values, the completed function, root numbers, the
//! rotated real function on the critical line, and L'/L at s = 1.
//!
//! Everything is evaluated through the Hurwitz zeta decomposition
//! L(s,χ) = q^{-s} Σ_{r=1..q} χ(r) ζ(s, r/q).

use num_complex::Complex64;

use crate::characters::{gauss_sum, DirichletCharacter};
use crate::error::{Error, Result};
use crate::hurwitz::hurwitz_zeta;
use crate::special::lgamma;
use crate::summation::ComplexKahanSum;

/// L(s, χ). Errors with [`Error::Pole`] at s = 1 for principal characters;
/// at s = 1 for nonprincipal characters the digamma limit formula is used.
pub fn l_value(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    let q = chi.modulus();
    let at_one = (s - Complex64::new(1.0, 0.0)).norm() < 1e-14;
    if at_one {
        if chi.is_principal() {
            return Err(Error::Pole);
        }
        // L(1,χ) = -(1/q) Σ_r χ(r) ψ(r/q); the digamma pole terms cancel
        // because Σ χ(r) = 0.
        let mut acc = ComplexKahanSum::new();
        for r in 1..=q {
            let v = chi.eval(r);
            if v.re != 0.0 || v.im != 0.0 {
                acc.add(v * (-digamma(r as f64 / q as f64)));
            }
        }
        return Ok(acc.value() / q as f64);
    }
    let mut acc = ComplexKahanSum::new();
    for r in 1..=q {
        let v = chi.eval(r);
        if v.re != 0.0 || v.im != 0.0 {
            acc.add(v * hurwitz_zeta(s, r as f64 / q as f64)?);
        }
    }
    Ok((-s * (q as f64).ln()).exp() * acc.value())
}

/// Real digamma ψ(x) for x > 0.
pub fn digamma(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 8.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    // B_{2k}/(2k) coefficients of the asymptotic series.
    const C: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
    ];
    let inv2 = 1.0 / (x * x);
    let mut acc = x.ln() - 0.5 / x;
    let mut p = inv2;
    for &c in &C {
        acc -= c * p;
        p *= inv2;
    }
    acc + shift
}

/// The root number ε(χ) = τ(χ) / (i^a √q) of a primitive character.
/// |ε| = 1; ε = 1 for the modulus-1 character.
pub fn root_number(chi: &DirichletCharacter) -> Result<Complex64> {
    let tau = gauss_sum(chi)?;
    let q = chi.modulus() as f64;
    let ia = match chi.parity() {
        0 => Complex64::new(1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    Ok(tau / (ia * q.sqrt()))
}

/// log Λ(s,χ) for the completed function
/// Λ(s,χ) = (q/π)^{(s+a)/2} Γ((s+a)/2) L(s,χ),
/// with the extra entire factor s(s-1)/2 included for the modulus-1
/// character so the result has no poles. Imaginary part is defined modulo
/// 2π only.
pub fn log_completed(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::InvalidArgument(format!(
            "completed function needs a primitive character, got {}",
            chi.label()
        )));
    }
    let q = chi.modulus() as f64;
    let a = chi.parity() as f64;
    let half = (s + a) / 2.0;
    let lv = l_value(s, chi)?;
    if lv.norm() == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "log of vanishing L at s = {s}"
        )));
    }
    let mut acc = half * (q / std::f64::consts::PI).ln() + lgamma(half) + lv.ln();
    if chi.modulus() == 1 {
        acc += (s * (s - 1.0) / 2.0).ln();
    }
    Ok(acc)
}

/// Λ(s,χ) itself; fine for moderate |Im s| where it does not underflow.
pub fn completed(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    Ok(log_completed(s, chi)?.exp())
}

/// The rotated completed function on the critical line: a real-valued
/// function of t whose sign changes are exactly the zeros of L(1/2+it, χ).
///
/// Z(t) = Re[ e^{iθ(t)} L(1/2+it, χ) ] with
/// θ(t) = (t/2) log(q/π) + Im log Γ((1/2+a+it)/2) − arg(ε)/2.
pub fn hardy_z(t: f64, chi: &DirichletCharacter, eps_half_arg: f64) -> Result<f64> {
    let q = chi.modulus() as f64;
    let a = chi.parity() as f64;
    let s = Complex64::new(0.5, t);
    let theta =
        t / 2.0 * (q / std::f64::consts::PI).ln() + lgamma((s + a) / 2.0).im - eps_half_arg;
    let lv = l_value(s, chi)?;
    let rotated = Complex64::from_polar(1.0, theta) * lv;
    Ok(rotated.re)
}

/// Half the argument of the root number, precomputed once per character
/// for [`hardy_z`].
pub fn root_half_arg(chi: &DirichletCharacter) -> Result<f64> {
    Ok(root_number(chi)?.arg() / 2.0)
}

/// L'/L(1, χ) for nonprincipal χ by fourth-order central differencing of
/// log L along the real direction at s = 1, step h = 1e-3.
///
/// The differences are taken on L(1+kh)/L(1), which stays near 1, so the
/// principal log branch is safe regardless of where L(1) sits.
pub fn log_derivative_at_one(chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::InvalidArgument(
            "L'/L(1) requires a nonprincipal character".into(),
        ));
    }
    let h = 1e-3;
    let base = l_value(Complex64::new(1.0, 0.0), chi)?;
    let f = |k: f64| -> Result<Complex64> {
        let v = l_value(Complex64::new(1.0 + k * h, 0.0), chi)?;
        Ok((v / base).ln())
    };
    let d = (-f(2.0)? + 8.0 * f(1.0)? - 8.0 * f(-1.0)? + f(-2.0)?) / (12.0 * h);
    Ok(d)
}
