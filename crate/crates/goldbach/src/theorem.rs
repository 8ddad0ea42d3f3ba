//! Assembly of the mean-value expansion: the oscillating G-terms summed
//! over L-function zeros, the real-zero correction H, and the residual
//! report comparing the exact convolution sums against the expansion.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::characters::{build_group, conductor_and_primitive, CharacterGroup};
use crate::error::{Error, Result};
use crate::mangoldt::gcd;
use crate::representation::RepresentationTable;
use crate::special::{gamma, w_kernel};
use crate::summation::ComplexKahanSum;
use crate::zeros::{find_critical_zeros, Zero, ZeroSet};

/// Zero sets for every character of one modulus, resolved at the level of
/// the inducing primitive characters and shared between conjugates.
#[derive(Debug, Clone)]
pub struct GroupZeros {
    group: CharacterGroup,
    sets: Vec<Arc<ZeroSet>>,
    height: f64,
}

impl GroupZeros {
    /// Computes (or reuses across induced characters) certified zero sets
    /// up to the given height for every character mod q.
    pub fn compute(q: u64, height: f64) -> Result<Self> {
        let group = build_group(q)?;
        let mut cache: BTreeMap<(u64, usize), Arc<ZeroSet>> = BTreeMap::new();
        let mut sets = Vec::with_capacity(group.characters().len());
        for chi in group.characters() {
            let (qstar, star) = conductor_and_primitive(chi)?;
            let key = (qstar, star.index());
            let set = match cache.get(&key) {
                Some(s) => Arc::clone(s),
                None => {
                    let s = Arc::new(find_critical_zeros(&star, height)?);
                    cache.insert(key, Arc::clone(&s));
                    s
                }
            };
            sets.push(set);
        }
        Ok(GroupZeros {
            group,
            sets,
            height,
        })
    }

    /// Wraps externally supplied zero sets (ingested tables, test fixtures).
    /// One set per character, in group order.
    pub fn from_sets(group: CharacterGroup, sets: Vec<ZeroSet>, height: f64) -> Result<Self> {
        if sets.len() != group.characters().len() {
            return Err(Error::MissingZeroSet(format!(
                "expected {} zero sets for modulus {}, got {}",
                group.characters().len(),
                group.modulus(),
                sets.len()
            )));
        }
        Ok(GroupZeros {
            group,
            sets: sets.into_iter().map(Arc::new).collect(),
            height,
        })
    }

    pub fn group(&self) -> &CharacterGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn set(&self, index: usize) -> &ZeroSet {
        &self.sets[index]
    }

    /// Testing hook for the H-term algebra: grafts a synthetic real zero β
    /// onto one character's set. No claim about actual L-functions.
    pub fn inject_real_zero(&mut self, index: usize, beta: f64) {
        let set = Arc::make_mut(&mut self.sets[index]);
        set.real_zeros.push(Zero::real(beta, 0.0));
        set.real_zeros
            .sort_by(|a, b| a.real_position.total_cmp(&b.real_position));
    }

    /// Real zeros attached to character `index`.
    pub fn real_zeros(&self, index: usize) -> &[Zero] {
        &self.sets[index].real_zeros
    }

    pub fn has_real_zeros(&self) -> bool {
        self.sets.iter().any(|s| !s.real_zeros.is_empty())
    }

    /// Visits every nontrivial zero of L(s, χ_index) within the height
    /// bound: stored positive ordinates, their negative companions through
    /// the conjugate character, and real zeros.
    pub fn for_each_zero<F: FnMut(Complex64)>(&self, index: usize, mut f: F) {
        for z in &self.sets[index].zeros {
            f(Complex64::new(0.5, z.ordinate));
        }
        let conj = self.group.conjugate_index(index);
        for z in &self.sets[conj].zeros {
            f(Complex64::new(0.5, -z.ordinate));
        }
        for z in &self.sets[index].real_zeros {
            f(Complex64::new(z.real_position, 0.0));
        }
    }
}

/// Tail allowance of a truncated zero sum: the neglected |W| mass above the
/// height bound, from the γ^{-κ-1} kernel decay and the ~log(qt)/2π zero
/// density, counting both ordinate signs.
pub fn zero_sum_tail_bound(x: f64, kappa: f64, height: f64, q: u64) -> f64 {
    if height <= 0.0 {
        return f64::INFINITY;
    }
    let gk = gamma(Complex64::new(kappa, 0.0))
        .map(|g| g.norm())
        .unwrap_or(1.0);
    let log_term = ((q as f64) * height / std::f64::consts::TAU).ln().max(1.0);
    let t_pow = height.powf(kappa);
    2.0 * gk * x.powf(kappa + 0.5) / std::f64::consts::TAU
        * (log_term / (kappa * t_pow) + 1.0 / (kappa * kappa * t_pow))
}

/// G^κ(X, χ) = Σ_{ρ_χ} W(X, ρ_χ, κ) truncated at the set's height bound,
/// with the tail allowance reported alongside.
pub fn g_char(gz: &GroupZeros, index: usize, x: f64, kappa: f64) -> Result<(Complex64, f64)> {
    let mut acc = ComplexKahanSum::new();
    let mut err: Option<Error> = None;
    let kap = Complex64::new(kappa, 0.0);
    gz.for_each_zero(index, |rho| {
        if err.is_some() {
            return;
        }
        match w_kernel(x, rho, kap) {
            Ok(w) => acc.add(w),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let tail = zero_sum_tail_bound(x, kappa, gz.height(), gz.modulus());
    Ok((acc.value(), tail))
}

/// G^κ(X, q, a) = Σ_{χ (q)} conj(χ(a)) G^κ(X, χ). Conjugate characters
/// contribute mirrored zero sums, so the imaginary parts cancel to
/// accumulation noise and the value is real.
pub fn g_term(gz: &GroupZeros, a: u64, x: f64, kappa: f64) -> Result<(Complex64, f64)> {
    let q = gz.modulus();
    if q > 1 && gcd(a % q, q) != 1 {
        return Err(Error::InvalidResidue { q, a });
    }
    let mut acc = ComplexKahanSum::new();
    let mut tail_total = 0.0;
    for (idx, chi) in gz.group().characters().iter().enumerate() {
        let weight = chi.eval(a).conj();
        let (g, tail) = g_char(gz, idx, x, kappa)?;
        acc.add(weight * g);
        tail_total += tail;
    }
    Ok((acc.value(), tail_total))
}

/// H(X): the correction from real zeros,
/// Σ_{χ₁,χ₂} conj χ₁(a₁) conj χ₂(a₂) (Σ_{β₂} G^{β₂}(X,χ₁) +
/// Σ_{β₁} G^{β₁}(X,χ₂) − Σ_{β₁,β₂} W(X,β₁,β₂)).
/// Identically zero when no real zeros are attached, which is what every
/// scan in the supported envelope produces.
pub fn h_term(gz1: &GroupZeros, a1: u64, gz2: &GroupZeros, a2: u64, x: f64) -> Result<f64> {
    if !gz1.has_real_zeros() && !gz2.has_real_zeros() {
        return Ok(0.0);
    }
    let mut acc = ComplexKahanSum::new();
    for (i1, chi1) in gz1.group().characters().iter().enumerate() {
        for (i2, chi2) in gz2.group().characters().iter().enumerate() {
            let betas1: Vec<f64> = gz1.real_zeros(i1).iter().map(|z| z.real_position).collect();
            let betas2: Vec<f64> = gz2.real_zeros(i2).iter().map(|z| z.real_position).collect();
            if betas1.is_empty() && betas2.is_empty() {
                continue;
            }
            let mut inner = Complex64::new(0.0, 0.0);
            for &b2 in &betas2 {
                inner += g_char(gz1, i1, x, b2)?.0;
            }
            for &b1 in &betas1 {
                inner += g_char(gz2, i2, x, b1)?.0;
            }
            for &b1 in &betas1 {
                for &b2 in &betas2 {
                    inner -= w_kernel(x, Complex64::new(b1, 0.0), Complex64::new(b2, 0.0))?;
                }
            }
            acc.add(chi1.eval(a1).conj() * chi2.eval(a2).conj() * inner);
        }
    }
    let v = acc.value();
    debug_assert!(v.im.abs() <= 1e-6 * v.re.abs().max(1.0));
    Ok(v.re)
}

/// One row of the mean-value monitoring: the exact sum against the
/// assembled expansion.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub x: f64,
    pub q1: u64,
    pub a1: u64,
    pub q2: u64,
    pub a2: u64,
    /// Σ_{n ≤ X} R(n, q₁, a₁, q₂, a₂), exact.
    pub lhs: f64,
    /// X² / (2 φ(q₁) φ(q₂)).
    pub main_term: f64,
    /// G(X, q_i, a_i) / (φ(q₁) φ(q₂)), real parts after conjugate pairing.
    pub g_term_1: f64,
    pub g_term_2: f64,
    /// H(X) / (φ(q₁) φ(q₂)).
    pub h_term: f64,
    /// lhs − (main − g₁ − g₂ + h); the monitored error term.
    pub residual: f64,
    /// |residual| / (X log X log q₁X log q₂X).
    pub bound_ratio: f64,
    pub truncation_height: f64,
    /// Neglected zero-sum mass above the truncation height, φ-normalized.
    pub truncation_bound: f64,
}

/// Assembles the full expansion at height X from an exact representation
/// table and per-modulus zero sets.
pub fn theorem_report(
    rep: &RepresentationTable,
    gz1: &GroupZeros,
    gz2: &GroupZeros,
    x: f64,
) -> Result<TheoremReport> {
    let classes = rep.classes();
    let (q1, a1) = (classes.first.modulus(), classes.first.residue());
    let (q2, a2) = (classes.second.modulus(), classes.second.residue());
    if gz1.modulus() != q1 || gz2.modulus() != q2 {
        return Err(Error::InvalidArgument(format!(
            "zero sets are for moduli {} and {}, classes need {q1} and {q2}",
            gz1.modulus(),
            gz2.modulus()
        )));
    }
    if !(2.0 <= x && x <= rep.limit() as f64) {
        return Err(Error::OutOfRange {
            x,
            limit: rep.limit(),
        });
    }
    let phi12 = (crate::characters::euler_phi(q1) * crate::characters::euler_phi(q2)) as f64;
    let lhs = rep.prefix_at(x);
    let main_term = x * x / (2.0 * phi12);
    let (g1, tail1) = g_term(gz1, a1, x, 1.0)?;
    let (g2, tail2) = g_term(gz2, a2, x, 1.0)?;
    let h = h_term(gz1, a1, gz2, a2, x)? / phi12;
    let g_term_1 = g1.re / phi12;
    let g_term_2 = g2.re / phi12;
    let residual = lhs - (main_term - g_term_1 - g_term_2 + h);
    let norm = x * x.ln() * (q1 as f64 * x).ln() * (q2 as f64 * x).ln();
    Ok(TheoremReport {
        x,
        q1,
        a1,
        q2,
        a2,
        lhs,
        main_term,
        g_term_1,
        g_term_2,
        h_term: h,
        residual,
        bound_ratio: residual.abs() / norm,
        truncation_height: gz1.height().min(gz2.height()),
        truncation_bound: (tail1 + tail2) / phi12,
    })
}

/// Side-by-side residuals for the single-modulus mean value: the bare main
/// term, the real-zero-augmented expansion, and the full expansion with
/// oscillating terms.
#[derive(Debug, Clone)]
pub struct RuppelReport {
    pub x: f64,
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub lhs: f64,
    /// lhs − X²/(2φ²): oscillating terms left inside the error.
    pub bare_residual: f64,
    /// lhs minus the main term and the real-zero corrections only.
    pub real_zero_residual: f64,
    /// Residual of the full expansion.
    pub expansion_residual: f64,
    /// 1/2 unless real zeros exist for the modulus, then the largest one.
    pub delta: f64,
}

pub fn ruppel_comparison(
    rep: &RepresentationTable,
    gz: &GroupZeros,
    x: f64,
) -> Result<RuppelReport> {
    let classes = rep.classes();
    let (q, a) = (classes.first.modulus(), classes.first.residue());
    let (q2, b) = (classes.second.modulus(), classes.second.residue());
    if q != q2 {
        return Err(Error::InvalidArgument(format!(
            "comparison needs a single modulus, got {q} and {q2}"
        )));
    }
    let full = theorem_report(rep, gz, gz, x)?;
    let phi = crate::characters::euler_phi(q) as f64;
    let phi2 = phi * phi;
    let lhs = full.lhs;
    let bare = lhs - x * x / (2.0 * phi2);

    // Real-zero-augmented main term: single sums over β per character plus
    // the double sum, all empty without real zeros.
    let mut correction = Complex64::new(0.0, 0.0);
    let group = gz.group();
    for (i, chi) in group.characters().iter().enumerate() {
        let weight = chi.eval(a).conj() + chi.eval(b).conj();
        for z in gz.real_zeros(i) {
            let beta = z.real_position;
            correction -= weight * x.powf(beta + 1.0) / (beta * (beta + 1.0));
        }
    }
    for (i, chi) in group.characters().iter().enumerate() {
        for (j, psi) in group.characters().iter().enumerate() {
            let weight = chi.eval(a).conj() * psi.eval(b).conj();
            for z1 in gz.real_zeros(i) {
                for z2 in gz.real_zeros(j) {
                    correction += weight
                        * w_kernel(
                            x,
                            Complex64::new(z1.real_position, 0.0),
                            Complex64::new(z2.real_position, 0.0),
                        )?;
                }
            }
        }
    }
    let real_zero_rhs = x * x / (2.0 * phi2) + correction.re / phi2;

    let delta = group
        .characters()
        .iter()
        .enumerate()
        .flat_map(|(i, _)| gz.real_zeros(i))
        .map(|z| z.real_position)
        .fold(0.5, f64::max);

    Ok(RuppelReport {
        x,
        q,
        a,
        b,
        lhs,
        bare_residual: bare,
        real_zero_residual: lhs - real_zero_rhs,
        expansion_residual: full.residual,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mangoldt::sieve_mangoldt;
    use crate::representation::{representation_fft, ClassPair};
    use crate::special::power;
    use crate::zeros::{CharRef, ZeroSet};

    fn zeta_like_set(character: CharRef, ordinates: &[f64]) -> ZeroSet {
        ZeroSet {
            character,
            height_bound: ordinates.last().copied().unwrap_or(0.0),
            zeros: ordinates.iter().map(|&g| Zero::critical(g, 1e-9)).collect(),
            real_zeros: Vec::new(),
            count_certificate: ordinates.len() as u64,
            source: crate::zeros::ZeroSource::Ingested,
        }
    }

    fn fixture_q1() -> GroupZeros {
        let group = build_group(1).unwrap();
        let set = zeta_like_set(
            CharRef {
                modulus: 1,
                index: 0,
            },
            &[14.134725141734693, 21.022039638771554, 25.010857580145688],
        );
        GroupZeros::from_sets(group, vec![set], 26.0).unwrap()
    }

    #[test]
    fn g_term_kappa_one_matches_fujii_summand() {
        // Two algebraic routes: the W-kernel sum against the direct
        // X^{ρ+1}/(ρ(ρ+1)) evaluation over the same zeros.
        let gz = fixture_q1();
        let x = 1e4;
        let (g, tail) = g_term(&gz, 1, x, 1.0).unwrap();
        let mut direct = Complex64::new(0.0, 0.0);
        for &gamma_ord in &[14.134725141734693, 21.022039638771554, 25.010857580145688] {
            for sign in [1.0, -1.0] {
                let rho = Complex64::new(0.5, sign * gamma_ord);
                direct += power(x, rho + 1.0) / (rho * (rho + 1.0));
            }
        }
        assert!((g - direct).norm() < 1e-9 * direct.norm().max(1.0));
        assert!(g.im.abs() < 1e-9 * g.re.abs().max(1.0), "imag leak {}", g.im);
        assert!(tail > 0.0);
    }

    #[test]
    fn empty_zero_sets_give_zero_g() {
        let group = build_group(1).unwrap();
        let set = ZeroSet::empty(CharRef {
            modulus: 1,
            index: 0,
        });
        let gz = GroupZeros::from_sets(group, vec![set], 0.0).unwrap();
        let (g, _) = g_term(&gz, 1, 1e4, 1.0).unwrap();
        assert_eq!(g, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn h_term_vanishes_without_real_zeros() {
        let gz = fixture_q1();
        assert_eq!(h_term(&gz, 1, &gz, 1, 1e4).unwrap(), 0.0);
    }

    #[test]
    fn h_term_synthetic_zero_matches_hand_assembly() {
        // Inject β = 0.75 on the nonprincipal character mod 3 and rebuild
        // H(X) from raw kernels.
        let x = 500.0;
        let group = build_group(3).unwrap();
        let ordinates = [8.039737156, 11.24920621, 15.70461918];
        let sets: Vec<ZeroSet> = group
            .characters()
            .iter()
            .map(|chi| {
                zeta_like_set(
                    CharRef::of(chi),
                    if chi.is_principal() {
                        &[14.134725141734693, 21.022039638771554][..]
                    } else {
                        &ordinates[..]
                    },
                )
            })
            .collect();
        let mut gz = GroupZeros::from_sets(group.clone(), sets, 22.0).unwrap();
        let nonprincipal_idx = group
            .characters()
            .iter()
            .position(|c| !c.is_principal())
            .unwrap();
        let beta = 0.75;
        gz.inject_real_zero(nonprincipal_idx, beta);

        let h = h_term(&gz, 1, &gz, 2, x).unwrap();

        // Independent recomputation. Real zeros live only on χ (index k),
        // so H = Σ_{χ1} w(χ1,1)w(χ,2) G^β(X,χ1) + Σ_{χ2} w(χ,1)w(χ2,2) G^β(X,χ2)
        //       − w(χ,1)w(χ,2) W(X,β,β).
        let w = |idx: usize, a: u64| group.by_index(idx).eval(a).conj();
        let g_beta = |idx: usize| -> Complex64 {
            let mut s = Complex64::new(0.0, 0.0);
            gz.for_each_zero(idx, |rho| {
                s += w_kernel(x, rho, Complex64::new(beta, 0.0)).unwrap();
            });
            s
        };
        let mut expected = Complex64::new(0.0, 0.0);
        for i1 in 0..2 {
            expected += w(i1, 1) * w(nonprincipal_idx, 2) * g_beta(i1);
        }
        for i2 in 0..2 {
            expected += w(nonprincipal_idx, 1) * w(i2, 2) * g_beta(i2);
        }
        expected -= w(nonprincipal_idx, 1)
            * w(nonprincipal_idx, 2)
            * w_kernel(x, Complex64::new(beta, 0.0), Complex64::new(beta, 0.0)).unwrap();

        assert!(
            (h - expected.re).abs() < 1e-9 * expected.re.abs().max(1.0),
            "h={h} expected={}",
            expected.re
        );
    }

    #[test]
    fn h_term_symmetric_classes_symmetric_parts() {
        // With identical classes and symmetric synthetic zeros the first two
        // H parts coincide, so H equals twice the single sum minus the
        // double sum.
        let x = 300.0;
        let group = build_group(4).unwrap();
        let sets: Vec<ZeroSet> = group
            .characters()
            .iter()
            .map(|chi| zeta_like_set(CharRef::of(chi), &[6.0209489, 10.2437703]))
            .collect();
        let mut gz = GroupZeros::from_sets(group.clone(), sets, 11.0).unwrap();
        let idx = group
            .characters()
            .iter()
            .position(|c| !c.is_principal())
            .unwrap();
        gz.inject_real_zero(idx, 0.8);

        let h = h_term(&gz, 3, &gz, 3, x).unwrap();
        let mut single = Complex64::new(0.0, 0.0);
        for (i1, chi1) in group.characters().iter().enumerate() {
            let weight = chi1.eval(3).conj() * group.by_index(idx).eval(3).conj();
            let mut g = Complex64::new(0.0, 0.0);
            gz.for_each_zero(i1, |rho| {
                g += w_kernel(x, rho, Complex64::new(0.8, 0.0)).unwrap();
            });
            single += weight * g;
        }
        let double = group.by_index(idx).eval(3).conj().powi(2)
            * w_kernel(x, Complex64::new(0.8, 0.0), Complex64::new(0.8, 0.0)).unwrap();
        let expected = 2.0 * single.re - double.re;
        assert!((h - expected).abs() < 1e-9 * expected.abs().max(1.0));
    }

    #[test]
    fn report_identity_and_main_term() {
        let table = sieve_mangoldt(10_000).unwrap();
        let classes = ClassPair::new(3, 1, 4, 3).unwrap();
        let rep = representation_fft(&table, &classes, 10_000).unwrap();
        let gz3 = GroupZeros::from_sets(
            build_group(3).unwrap(),
            build_group(3)
                .unwrap()
                .characters()
                .iter()
                .map(|c| ZeroSet::empty(CharRef::of(c)))
                .collect(),
            0.0,
        )
        .unwrap();
        let gz4 = GroupZeros::from_sets(
            build_group(4).unwrap(),
            build_group(4)
                .unwrap()
                .characters()
                .iter()
                .map(|c| ZeroSet::empty(CharRef::of(c)))
                .collect(),
            0.0,
        )
        .unwrap();
        let r = theorem_report(&rep, &gz3, &gz4, 1e4).unwrap();
        assert_eq!(r.main_term, 1.25e7);
        // lhs = main - g1 - g2 + h + residual holds exactly by construction.
        let rebuilt = r.main_term - r.g_term_1 - r.g_term_2 + r.h_term + r.residual;
        assert_eq!(r.lhs, rebuilt);
        assert_eq!(r.h_term, 0.0);

        // Degenerate minimal X.
        let r2 = theorem_report(&rep, &gz3, &gz4, 2.0).unwrap();
        assert!(r2.lhs.abs() < 1.0);
        assert!(r2.residual.is_finite());
    }

    #[test]
    fn ruppel_report_delta_and_degeneracy() {
        let table = sieve_mangoldt(5000).unwrap();
        let classes = ClassPair::new(1, 1, 1, 1).unwrap();
        let rep = representation_fft(&table, &classes, 5000).unwrap();
        let gz = fixture_q1();
        let r = ruppel_comparison(&rep, &gz, 5000.0).unwrap();
        assert_eq!(r.delta, 0.5);
        // Without real zeros the real-zero-augmented residual equals the
        // bare one, and both differ from the expansion residual by the
        // (nonzero) oscillating sum.
        assert_eq!(r.bare_residual, r.real_zero_residual);
        assert!((r.bare_residual - r.expansion_residual).abs() > 1e-6);

        let mismatched = ClassPair::new(3, 1, 4, 1).unwrap();
        let rep2 = representation_fft(&table, &mismatched, 100).unwrap();
        assert!(ruppel_comparison(&rep2, &gz, 100.0).is_err());
    }
}
