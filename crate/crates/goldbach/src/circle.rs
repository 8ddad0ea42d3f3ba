//! The circle-method side: exponentially damped generating sums, the
//! geometric detector T(y,α), and pointwise verification of the explicit
//! formulas connecting the generating sums to zero sums.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::fft::fft_in_place;
use crate::lfun::log_derivative_at_one;
use crate::mangoldt::MangoldtTable;
use crate::special::lgamma;
use crate::summation::ComplexKahanSum;
use crate::theorem::GroupZeros;

/// ln(1e18): the damped weight e^{-n/N} drops below double-precision
/// relevance past n = DAMPING_LOG · N.
pub const DAMPING_LOG: f64 = 41.44653167389282;

/// Number of damped-sum terms that matter for size parameter N.
pub fn damping_cutoff(n: u64) -> u64 {
    (DAMPING_LOG * n as f64).ceil() as u64
}

/// A point α on the unit circle with the damping scale N and the combined
/// argument z = 1/N − 2πiα, so that e^{-n/N} e(nα) = e^{-nz}.
#[derive(Debug, Clone, Copy)]
pub struct ThetaPoint {
    pub alpha: f64,
    pub n: u64,
    pub z: Complex64,
}

impl ThetaPoint {
    pub fn new(alpha: f64, n: u64) -> Result<Self> {
        if !(-0.5..=0.5).contains(&alpha) {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in [-1/2, 1/2], got {alpha}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "damping parameter must be at least 2, got {n}"
            )));
        }
        Ok(ThetaPoint {
            alpha,
            n,
            z: z_of(alpha, n),
        })
    }
}

pub(crate) fn z_of(alpha: f64, n: u64) -> Complex64 {
    Complex64::new(1.0 / n as f64, -TAU * alpha)
}

/// S̃(α,χ) = Σ χ(n) Λ(n) e^{-n/N} e(nα), truncated where the weight
/// underflows. `chi = None` is the untwisted sum (equivalently the
/// modulus-1 character). Errors when the Λ table cannot cover the range
/// that matters.
pub fn s_tilde(
    point: ThetaPoint,
    chi: Option<&DirichletCharacter>,
    table: &MangoldtTable,
) -> Result<Complex64> {
    let cutoff = damping_cutoff(point.n);
    if table.limit() < cutoff {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: cutoff,
        });
    }
    let alpha = point.alpha;
    let n_par = point.n as f64;
    let rot_step = Complex64::from_polar(1.0, TAU * alpha);
    let damp_step = (-1.0 / n_par).exp();
    let mut rot = rot_step; // e(1·α)
    let mut damp = damp_step;
    let mut acc = ComplexKahanSum::new();
    for n in 1..=cutoff {
        if n % 4096 == 0 {
            // Resynchronize the incremental phase and damping.
            rot = Complex64::from_polar(1.0, TAU * ((n as f64 * alpha) % 1.0));
            damp = (-(n as f64) / n_par).exp();
        }
        let lam = table.lambda(n);
        if lam != 0.0 {
            let weight = match chi {
                Some(c) => c.eval(n),
                None => Complex64::new(1.0, 0.0),
            };
            if weight.re != 0.0 || weight.im != 0.0 {
                acc.add(weight * rot * (lam * damp));
            }
        }
        rot *= rot_step;
        damp *= damp_step;
    }
    Ok(acc.value())
}

/// S̃ on the uniform grid α_j = j/M (j = 0..M, M a power of two), by
/// folding the damped coefficients mod M and one FFT. Exactly the values
/// of [`s_tilde`] up to transform rounding; the workhorse behind the
/// mean-square integrals.
pub fn s_tilde_grid(
    chi: Option<&DirichletCharacter>,
    table: &MangoldtTable,
    n: u64,
    m: usize,
) -> Result<Vec<Complex64>> {
    if !m.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "grid size must be a power of two, got {m}"
        )));
    }
    let cutoff = damping_cutoff(n);
    if table.limit() < cutoff {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: cutoff,
        });
    }
    let n_par = n as f64;
    let mut bins = vec![Complex64::new(0.0, 0.0); m];
    for k in 1..=cutoff {
        let lam = table.lambda(k);
        if lam != 0.0 {
            let weight = match chi {
                Some(c) => c.eval(k),
                None => Complex64::new(1.0, 0.0),
            };
            if weight.re != 0.0 || weight.im != 0.0 {
                bins[(k % m as u64) as usize] += weight * lam * (-(k as f64) / n_par).exp();
            }
        }
    }
    // Positive-exponent DFT via conjugation around the forward transform.
    for b in bins.iter_mut() {
        *b = b.conj();
    }
    fft_in_place(&mut bins, false);
    for b in bins.iter_mut() {
        *b = b.conj();
    }
    Ok(bins)
}

/// T(y, α) = Σ_{m ≤ y} e(mα), in the stable Dirichlet-kernel closed form.
pub fn t_sum(y: f64, alpha: f64) -> Complex64 {
    let m = y.floor();
    if m < 1.0 {
        return Complex64::new(0.0, 0.0);
    }
    let frac = alpha - alpha.round();
    if frac.abs() < 1e-15 {
        return Complex64::new(m, 0.0);
    }
    let num = (std::f64::consts::PI * m * alpha).sin();
    let den = (std::f64::consts::PI * alpha).sin();
    Complex64::from_polar(1.0, std::f64::consts::PI * (m + 1.0) * alpha) * (num / den)
}

/// One verified instance of the explicit formula for S̃(α,χ):
/// 1/z − Σ_ρ z^{-ρ} Γ(ρ) for the untwisted sum, and
/// −Σ_ρ z^{-ρ} Γ(ρ) + L'/L(1, conj χ) for primitive χ of modulus ≥ 2,
/// with the zero sum truncated at the zero set's height.
#[derive(Debug, Clone)]
pub struct ExplicitFormulaResidual {
    pub point: ThetaPoint,
    pub character: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: Complex64,
    /// |residual| / (√N log qN).
    pub normalized: f64,
}

pub fn verify_explicit_formula(
    point: ThetaPoint,
    char_index: usize,
    gz: &GroupZeros,
    table: &MangoldtTable,
) -> Result<ExplicitFormulaResidual> {
    let chi = gz.group().by_index(char_index);
    if !chi.is_primitive() {
        return Err(Error::InvalidArgument(format!(
            "explicit formula verification needs a primitive character, got {}",
            chi.label()
        )));
    }
    let q = chi.modulus();
    let lhs = s_tilde(point, Some(chi), table)?;
    let zero_sum = zero_power_sum(point.z, char_index, gz);
    let rhs = if q == 1 {
        1.0 / point.z - zero_sum
    } else {
        let conj_idx = gz.group().conjugate_index(char_index);
        -zero_sum + log_derivative_at_one(gz.group().by_index(conj_idx))?
    };
    let residual = lhs - rhs;
    let norm = (point.n as f64).sqrt() * ((q * point.n) as f64).ln();
    Ok(ExplicitFormulaResidual {
        point,
        character: chi.label(),
        lhs,
        rhs,
        residual,
        normalized: residual.norm() / norm,
    })
}

/// Σ_ρ z^{-ρ} Γ(ρ) over the stored zeros of χ (both ordinate signs, plus
/// real zeros), each term assembled in log space.
pub fn zero_power_sum(z: Complex64, char_index: usize, gz: &GroupZeros) -> Complex64 {
    let log_z = z.ln();
    let mut acc = ComplexKahanSum::new();
    gz.for_each_zero(char_index, |rho| {
        acc.add((lgamma(rho) - rho * log_z).exp());
    });
    acc.value()
}
