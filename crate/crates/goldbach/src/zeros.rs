//! Nontrivial zeros of Dirichlet L-functions: location on the critical
//! line, certification by argument-principle counts, real-zero scans on
//! (0,1), Siegel-zero bookkeeping, and zero-table ingestion.
//!
//! Zero location works on the rotated completed function: Λ(1/2+it, χ)
//! times the inverse half-phase of the root number is real for primitive χ,
//! so complex root-finding reduces to 1-D sign-change bracketing plus
//! bisection. Completeness of every bracketed list is certified against the
//! winding number of log Λ around the rectangle [−0.1, 1.1] × [0, T]; the
//! two counts must agree exactly or the search fails loudly.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;

use crate::characters::{conductor_and_primitive, DirichletCharacter};
use crate::error::{Error, Result};
use crate::lfun::{hardy_z, l_value, log_completed, root_half_arg};
use crate::mangoldt::gcd;

/// Hard ceiling from the design envelope: no zeros above this height.
pub const MAX_HEIGHT: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroKind {
    CriticalLine,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    Computed,
    Ingested,
}

/// One nontrivial zero. Critical-line zeros are stored with positive
/// ordinate only; the negative companion belongs to the conjugate
/// character. Real zeros carry β ∈ [1/2, 1).
#[derive(Debug, Clone, Copy)]
pub struct Zero {
    pub kind: ZeroKind,
    /// γ for critical-line zeros, 0 for real zeros.
    pub ordinate: f64,
    /// β for real zeros, 1/2 for critical-line zeros.
    pub real_position: f64,
    /// Bound on |error| of the stored position; None for ingested values
    /// taken on trust.
    pub certified_accuracy: Option<f64>,
}

impl Zero {
    pub fn critical(gamma: f64, accuracy: f64) -> Self {
        Zero {
            kind: ZeroKind::CriticalLine,
            ordinate: gamma,
            real_position: 0.5,
            certified_accuracy: Some(accuracy),
        }
    }

    pub fn real(beta: f64, accuracy: f64) -> Self {
        Zero {
            kind: ZeroKind::Real,
            ordinate: 0.0,
            real_position: beta,
            certified_accuracy: Some(accuracy),
        }
    }

    /// The zero as a point ρ in the critical strip.
    pub fn rho(&self) -> Complex64 {
        match self.kind {
            ZeroKind::CriticalLine => Complex64::new(0.5, self.ordinate),
            ZeroKind::Real => Complex64::new(self.real_position, 0.0),
        }
    }
}

/// Identity of the character a zero set belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharRef {
    pub modulus: u64,
    pub index: usize,
}

impl CharRef {
    pub fn of(chi: &DirichletCharacter) -> Self {
        CharRef {
            modulus: chi.modulus(),
            index: chi.index(),
        }
    }
}

impl fmt::Display for CharRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.modulus, self.index)
    }
}

/// Certified list of zeros of one L(s,χ) up to a height bound.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub character: CharRef,
    pub height_bound: f64,
    /// Critical-line zeros, ordinates strictly increasing, γ > 0.
    pub zeros: Vec<Zero>,
    /// Real zeros with β ≥ 1/2, positions strictly increasing.
    pub real_zeros: Vec<Zero>,
    /// N(T,χ) from the argument principle (critical-line zeros with
    /// 0 < γ ≤ T). Equals zeros.len() for computed sets.
    pub count_certificate: u64,
    pub source: ZeroSource,
}

impl ZeroSet {
    pub fn empty(character: CharRef) -> Self {
        ZeroSet {
            character,
            height_bound: 0.0,
            zeros: Vec::new(),
            real_zeros: Vec::new(),
            count_certificate: 0,
            source: ZeroSource::Computed,
        }
    }

    /// Structural invariants: ascending ordinates, certificate match.
    pub fn validate(&self) -> Result<()> {
        for pair in self.zeros.windows(2) {
            if pair[0].ordinate >= pair[1].ordinate {
                return Err(Error::CertificationFailure {
                    character: self.character.to_string(),
                    detail: format!(
                        "ordinates not strictly increasing near {}",
                        pair[1].ordinate
                    ),
                });
            }
        }
        if self.zeros.len() as u64 != self.count_certificate {
            return Err(Error::CertificationFailure {
                character: self.character.to_string(),
                detail: format!(
                    "{} bracketed zeros vs certificate {}",
                    self.zeros.len(),
                    self.count_certificate
                ),
            });
        }
        Ok(())
    }
}

fn wrap_phase(x: f64) -> f64 {
    x - std::f64::consts::TAU * (x / std::f64::consts::TAU).round()
}

/// Winding number of Λ(s,χ) around [−0.1, 1.1] × [0, T], by adaptive phase
/// tracking. The edge grids use 97 subdivisions and midpoint refinement, so
/// no sample can land exactly on σ = 0 or σ = 1 where the bottom-edge
/// log decomposition degenerates.
fn argument_principle_count(chi: &DirichletCharacter, t_max: f64) -> Result<u64> {
    let q = chi.modulus() as f64;
    let phase = |s: Complex64| -> Result<f64> { Ok(log_completed(s, chi)?.im) };

    let density = ((q * (t_max + 3.0) / std::f64::consts::TAU).ln()) / std::f64::consts::TAU;
    let vertical = ((3.0 * t_max * density.max(0.2)) as usize).clamp(96, 40_000);

    // Corner order: counterclockwise from (-0.1, 0).
    let corners = [
        Complex64::new(-0.1, 0.0),
        Complex64::new(1.1, 0.0),
        Complex64::new(1.1, t_max),
        Complex64::new(-0.1, t_max),
        Complex64::new(-0.1, 0.0),
    ];
    let steps = [97usize, vertical, 97, vertical];

    let mut budget: usize = 2_000_000;
    let mut total = 0.0f64;
    for edge in 0..4 {
        let (a, b) = (corners[edge], corners[edge + 1]);
        let n = steps[edge];
        let mut prev_s = a;
        let mut prev_phi = phase(a)?;
        for k in 1..=n {
            let s = a + (b - a) * (k as f64 / n as f64);
            let phi = phase(s)?;
            total += tracked_increment(&phase, prev_s, prev_phi, s, phi, 0, &mut budget, chi)?;
            prev_s = s;
            prev_phi = phi;
        }
    }

    let winding = total / std::f64::consts::TAU;
    let rounded = winding.round();
    if (winding - rounded).abs() > 0.05 || rounded < 0.0 {
        return Err(Error::CertificationFailure {
            character: chi.label(),
            detail: format!("contour winding {winding} is not a clean integer"),
        });
    }
    Ok(rounded as u64)
}

#[allow(clippy::too_many_arguments)]
fn tracked_increment(
    phase: &dyn Fn(Complex64) -> Result<f64>,
    s0: Complex64,
    phi0: f64,
    s1: Complex64,
    phi1: f64,
    depth: usize,
    budget: &mut usize,
    chi: &DirichletCharacter,
) -> Result<f64> {
    let delta = wrap_phase(phi1 - phi0);
    if delta.abs() <= 0.7 {
        return Ok(delta);
    }
    if depth >= 48 || *budget == 0 {
        return Err(Error::CertificationFailure {
            character: chi.label(),
            detail: format!("phase tracking stalled near s = {s0}"),
        });
    }
    *budget -= 1;
    let sm = (s0 + s1) / 2.0;
    let phim = phase(sm)?;
    Ok(
        tracked_increment(phase, s0, phi0, sm, phim, depth + 1, budget, chi)?
            + tracked_increment(phase, sm, phim, s1, phi1, depth + 1, budget, chi)?,
    )
}

/// Locates all zeros of L(s,χ) with 0 < γ ≤ T for a primitive character,
/// bracketing sign changes of the rotated completed function and matching
/// the bracket count against the argument-principle certificate.
/// Imprimitive characters delegate to their inducing primitive character.
pub fn find_critical_zeros(chi: &DirichletCharacter, t_max: f64) -> Result<ZeroSet> {
    if !(t_max > 0.0 && t_max <= MAX_HEIGHT) {
        return Err(Error::InvalidArgument(format!(
            "zero search height must lie in (0, {MAX_HEIGHT}], got {t_max}"
        )));
    }
    if chi.modulus() > 1000 {
        return Err(Error::InvalidArgument(format!(
            "zero search supports moduli up to 1000, got {}",
            chi.modulus()
        )));
    }
    if !chi.is_primitive() {
        let (_, star) = conductor_and_primitive(chi)?;
        return find_critical_zeros(&star, t_max);
    }

    let expected = argument_principle_count(chi, t_max)?;
    let eps_half = root_half_arg(chi)?;
    let z = |t: f64| hardy_z(t, chi, eps_half);

    // Grid of (t, Z(t)) pairs, refined by midpoint insertion on mismatch.
    let q = chi.modulus() as f64;
    let density =
        ((q * (t_max + 3.0) / std::f64::consts::TAU).ln()).max(1.0) / std::f64::consts::TAU;
    let h0 = (0.4 / density).clamp(0.01, 0.25);
    let n0 = (t_max / h0).ceil() as usize;
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(n0 + 1);
    for k in 0..=n0 {
        let t = t_max * k as f64 / n0 as f64;
        pts.push((t, z(t)?));
    }

    let mut rounds = 0;
    let brackets = loop {
        let found: Vec<(f64, f64, f64, f64)> = pts
            .windows(2)
            .filter(|w| w[0].1 != 0.0 && w[0].1.signum() != w[1].1.signum())
            .map(|w| (w[0].0, w[0].1, w[1].0, w[1].1))
            .collect();
        if found.len() as u64 == expected {
            break found;
        }
        if found.len() as u64 > expected {
            return Err(Error::CertificationFailure {
                character: chi.label(),
                detail: format!(
                    "{} sign changes exceed argument-principle count {expected}",
                    found.len()
                ),
            });
        }
        if rounds >= 7 {
            return Err(Error::CertificationFailure {
                character: chi.label(),
                detail: format!(
                    "grid refinement exhausted with {} of {expected} zeros bracketed",
                    found.len()
                ),
            });
        }
        rounds += 1;
        let mut refined = Vec::with_capacity(pts.len() * 2);
        for w in pts.windows(2) {
            let tm = 0.5 * (w[0].0 + w[1].0);
            refined.push(w[0]);
            refined.push((tm, z(tm)?));
        }
        refined.push(*pts.last().unwrap());
        pts = refined;
    };

    let mut zeros = Vec::with_capacity(brackets.len());
    for (lo, zlo, hi, zhi) in brackets {
        let (a, b) = illinois_refine(&z, lo, zlo, hi, zhi, 2e-10)?;
        zeros.push(Zero::critical(0.5 * (a + b), 0.5 * (b - a)));
    }

    let real_zeros = if chi.is_real() {
        scan_real_zeros(chi, 2000)?
    } else {
        Vec::new()
    };

    let set = ZeroSet {
        character: CharRef::of(chi),
        height_bound: t_max,
        zeros,
        real_zeros,
        count_certificate: expected,
        source: ZeroSource::Computed,
    };
    set.validate()?;
    Ok(set)
}

/// Shrinks a sign-change bracket to the requested width with the Illinois
/// variant of regula falsi; keeps the bracket invariant at every step, so
/// the result is as certified as plain bisection at a fraction of the
/// evaluations.
fn illinois_refine<F: Fn(f64) -> Result<f64>>(
    f: &F,
    mut lo: f64,
    mut flo: f64,
    mut hi: f64,
    mut fhi: f64,
    width: f64,
) -> Result<(f64, f64)> {
    let mut side = 0i8;
    for iter in 0..200 {
        if hi - lo < width {
            break;
        }
        let mut mid = (lo * fhi - hi * flo) / (fhi - flo);
        // Keep strictly inside, fall back to bisection when the secant
        // step stalls near an endpoint.
        let span = hi - lo;
        if !(mid > lo + 1e-3 * span && mid < hi - 1e-3 * span) || iter % 8 == 7 {
            mid = 0.5 * (lo + hi);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok((mid - width / 2.0, mid + width / 2.0));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
            if side == -1 {
                fhi *= 0.5;
            }
            side = -1;
        } else {
            hi = mid;
            fhi = fm;
            if side == 1 {
                flo *= 0.5;
            }
            side = 1;
        }
    }
    Ok((lo, hi))
}

/// Sign-change scan of the real-valued L(σ,χ) over [1/2, 1) at the given
/// grid resolution, with bisection refinement. Only real-valued characters
/// are meaningful here. The companion scan over (0, 1/2) is informational:
/// the functional equation pairs those zeros with the primary range.
pub fn scan_real_zeros(chi: &DirichletCharacter, grid: u32) -> Result<Vec<Zero>> {
    Ok(scan_real_zeros_full(chi, grid)?.0)
}

/// As [`scan_real_zeros`], returning also any zeros found in (0, 1/2).
pub fn scan_real_zeros_full(chi: &DirichletCharacter, grid: u32) -> Result<(Vec<Zero>, Vec<f64>)> {
    let mut results = scan_real_characters(chi.modulus(), std::slice::from_ref(chi), grid)?;
    Ok(results.pop().expect("one result per character"))
}

/// One row of a group scan: (character index, zeros in [1/2,1),
/// informational zeros in (0,1/2)).
pub type GroupScanEntry = (usize, Vec<Zero>, Vec<f64>);

/// Scans every real character of a group in one pass, sharing the Hurwitz
/// zeta evaluations between characters of the same modulus.
pub fn scan_real_zeros_group(
    group: &crate::characters::CharacterGroup,
    grid: u32,
) -> Result<Vec<GroupScanEntry>> {
    let real_chars: Vec<DirichletCharacter> = group
        .characters()
        .iter()
        .filter(|c| c.is_real())
        .cloned()
        .collect();
    let indices: Vec<usize> = real_chars.iter().map(|c| c.index()).collect();
    let scans = scan_real_characters(group.modulus(), &real_chars, grid)?;
    Ok(indices
        .into_iter()
        .zip(scans)
        .map(|(i, (p, low))| (i, p, low))
        .collect())
}

fn scan_real_characters(
    q: u64,
    chars: &[DirichletCharacter],
    grid: u32,
) -> Result<Vec<(Vec<Zero>, Vec<f64>)>> {
    for chi in chars {
        if !chi.is_real() {
            return Err(Error::InvalidArgument(format!(
                "real-zero scan needs a real character, {} is complex",
                chi.label()
            )));
        }
        debug_assert_eq!(chi.modulus(), q);
    }
    if grid < 1000 {
        return Err(Error::InvalidArgument(format!(
            "real-zero scan grid must be at least 1000, got {grid}"
        )));
    }
    if chars.is_empty() {
        return Ok(Vec::new());
    }

    // Real values χ(a) on units, one row per character.
    let units: Vec<u64> = (1..=q).filter(|&a| q == 1 || gcd(a % q, q) == 1).collect();
    let weights: Vec<Vec<f64>> = chars
        .iter()
        .map(|chi| units.iter().map(|&a| chi.eval(a).re).collect())
        .collect();

    // L(σ,χ) for all characters from one Hurwitz row per grid point.
    let evaluate_all = |sigma: f64, out: &mut Vec<f64>| -> Result<()> {
        out.clear();
        let mut row = Vec::with_capacity(units.len());
        for &a in &units {
            row.push(crate::hurwitz::hurwitz_zeta(Complex64::new(sigma, 0.0), a as f64 / q as f64)?.re);
        }
        let scale = (q as f64).powf(-sigma);
        for w in &weights {
            let mut acc = 0.0;
            for (x, y) in w.iter().zip(&row) {
                acc += x * y;
            }
            out.push(scale * acc);
        }
        Ok(())
    };

    let steps = 2 * grid as usize;
    let mut results: Vec<(Vec<Zero>, Vec<f64>)> = vec![(Vec::new(), Vec::new()); chars.len()];
    let mut prev = Vec::new();
    let mut cur = Vec::new();
    let mut prev_sigma = 0.5 / steps as f64;
    evaluate_all(prev_sigma, &mut prev)?;
    for j in 1..steps {
        let sigma = j as f64 / steps as f64;
        // Stop short of the principal-character pole at sigma = 1.
        if sigma >= 1.0 - 0.25 / steps as f64 {
            break;
        }
        evaluate_all(sigma, &mut cur)?;
        for (k, chi) in chars.iter().enumerate() {
            // Values at rounding scale carry no sign information; even
            // characters vanish to high order at sigma = 0 and would
            // otherwise produce spurious crossings there.
            const NOISE_FLOOR: f64 = 1e-10;
            if prev[k].abs() > NOISE_FLOOR
                && cur[k].abs() > NOISE_FLOOR
                && prev[k].signum() != cur[k].signum()
            {
                let f = |s: f64| -> Result<f64> {
                    Ok(l_value(Complex64::new(s, 0.0), chi)?.re)
                };
                let (lo, hi) = illinois_refine(&f, prev_sigma, prev[k], sigma, cur[k], 1e-12)?;
                let beta = 0.5 * (lo + hi);
                if beta >= 0.5 {
                    results[k].0.push(Zero::real(beta, (hi - lo).max(1e-13)));
                } else {
                    results[k].1.push(beta);
                }
            }
        }
        std::mem::swap(&mut prev, &mut cur);
        prev_sigma = sigma;
    }
    Ok(results)
}

/// Outcome of a per-modulus Siegel-zero audit.
#[derive(Debug, Clone)]
pub struct SiegelReport {
    pub modulus: u64,
    pub landau_c1: f64,
    /// The at-most-one character with a zero beyond the Landau threshold.
    pub offender: Option<(String, f64)>,
    /// (character label, number of real zeros found) per real character.
    pub scans: Vec<(String, usize)>,
    /// Zeros found below 1/2, reported for information only.
    pub low_zeros: Vec<(String, f64)>,
}

/// Scans every real character mod q and flags Siegel zeros
/// (β > 1 − c1/log q). Two offending characters, or two Siegel zeros of a
/// single character, contradict an unconditional theorem and therefore
/// indicate a numerical bug: both fail hard.
pub fn siegel_audit(q: u64, c1: f64, grid: u32) -> Result<SiegelReport> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if c1 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "Landau constant must be positive, got {c1}"
        )));
    }
    let mut scans = Vec::new();
    let mut low_zeros = Vec::new();
    if q == 1 {
        return Ok(SiegelReport {
            modulus: 1,
            landau_c1: c1,
            offender: None,
            scans,
            low_zeros,
        });
    }
    let group = crate::characters::build_group(q)?;
    let mut raw: Vec<(String, Vec<f64>)> = Vec::new();
    for (idx, zeros, low) in scan_real_zeros_group(&group, grid)? {
        let label = group.by_index(idx).label();
        scans.push((label.clone(), zeros.len()));
        for beta in low {
            low_zeros.push((label.clone(), beta));
        }
        raw.push((label, zeros.iter().map(|z| z.real_position).collect()));
    }
    let offender = classify_siegel(q, c1, &raw)?;
    Ok(SiegelReport {
        modulus: q,
        landau_c1: c1,
        offender,
        scans,
        low_zeros,
    })
}

/// Classification core of [`siegel_audit`], separated so the
/// theorem-violation paths can be exercised with synthetic scan results.
pub(crate) fn classify_siegel(
    q: u64,
    c1: f64,
    scans: &[(String, Vec<f64>)],
) -> Result<Option<(String, f64)>> {
    let threshold = 1.0 - c1 / (q as f64).ln();
    let mut offender: Option<(String, f64)> = None;
    for (label, betas) in scans {
        let siegels: Vec<f64> = betas.iter().copied().filter(|&b| b > threshold).collect();
        if siegels.len() >= 2 {
            return Err(Error::TheoremViolation(format!(
                "character {label} shows {} Siegel zeros; at most one can exist",
                siegels.len()
            )));
        }
        if let Some(&beta) = siegels.first() {
            if let Some((other, _)) = &offender {
                return Err(Error::TheoremViolation(format!(
                    "characters {other} and {label} both show Siegel zeros mod {q}"
                )));
            }
            offender = Some((label.clone(), beta));
        }
    }
    Ok(offender)
}

/// Reads a plain-text table of ascending positive ordinates, one per line;
/// blank lines and `#` comments are skipped. With `recertify` set, each
/// ordinate must pass a local sign check of the rotated completed function
/// at ±1e-3.
pub fn ingest_zero_table(
    path: &Path,
    chi: &DirichletCharacter,
    recertify: bool,
) -> Result<ZeroSet> {
    let text = std::fs::read_to_string(path)?;
    parse_zero_table(&text, chi, recertify)
}

/// In-memory body of [`ingest_zero_table`].
pub fn parse_zero_table(text: &str, chi: &DirichletCharacter, recertify: bool) -> Result<ZeroSet> {
    let mut ordinates: Vec<(usize, f64)> = Vec::new();
    let mut prev = 0.0f64;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let value: f64 = trimmed.parse().map_err(|e| Error::Ingest {
            line,
            detail: format!("cannot parse {trimmed:?}: {e}"),
        })?;
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::Ingest {
                line,
                detail: format!("ordinate {value} is not positive"),
            });
        }
        if value <= prev {
            return Err(Error::Ingest {
                line,
                detail: format!("ordinate {value} not above predecessor {prev}"),
            });
        }
        prev = value;
        ordinates.push((line, value));
    }

    let mut accuracy = None;
    if recertify {
        let (_, star) = conductor_and_primitive(chi)?;
        let eps_half = root_half_arg(&star)?;
        let delta = 1e-3;
        for &(line, gamma) in &ordinates {
            let lo = hardy_z(gamma - delta, &star, eps_half)?;
            let hi = hardy_z(gamma + delta, &star, eps_half)?;
            if lo.signum() == hi.signum() {
                return Err(Error::Ingest {
                    line,
                    detail: format!(
                        "ordinate {gamma} fails the local sign check at ±{delta}"
                    ),
                });
            }
        }
        accuracy = Some(delta);
    }

    let height_bound = ordinates.last().map_or(0.0, |&(_, g)| g);
    let zeros: Vec<Zero> = ordinates
        .iter()
        .map(|&(_, g)| Zero {
            kind: ZeroKind::CriticalLine,
            ordinate: g,
            real_position: 0.5,
            certified_accuracy: accuracy,
        })
        .collect();
    Ok(ZeroSet {
        character: CharRef::of(chi),
        height_bound,
        count_certificate: zeros.len() as u64,
        zeros,
        real_zeros: Vec::new(),
        source: ZeroSource::Ingested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::build_group;

    #[test]
    fn first_zeta_zeros() {
        let g = build_group(1).unwrap();
        let set = find_critical_zeros(g.principal(), 15.0).unwrap();
        assert_eq!(set.count_certificate, 1);
        assert_eq!(set.zeros.len(), 1);
        assert!((set.zeros[0].ordinate - 14.134725).abs() < 1e-5);
        assert!(set.zeros[0].certified_accuracy.unwrap() <= 1e-9);

        let set = find_critical_zeros(g.principal(), 25.0).unwrap();
        assert_eq!(set.zeros.len(), 2);
        assert!((set.zeros[1].ordinate - 21.022040).abs() < 1e-5);
        assert!(set.real_zeros.is_empty());
    }

    #[test]
    fn first_zero_mod_3() {
        let g = build_group(3).unwrap();
        let chi = g.characters().iter().find(|c| !c.is_principal()).unwrap();
        let set = find_critical_zeros(chi, 10.0).unwrap();
        assert_eq!(set.count_certificate, 1);
        assert!((set.zeros[0].ordinate - 8.03974).abs() < 1e-4);
    }

    #[test]
    fn counts_match_brackets_small_envelope() {
        for q in [1u64, 3, 4, 5] {
            let g = build_group(q).unwrap();
            for chi in g.characters() {
                if !chi.is_primitive() {
                    continue;
                }
                let set = find_critical_zeros(chi, 60.0).unwrap();
                assert_eq!(set.zeros.len() as u64, set.count_certificate);
                assert!(set.validate().is_ok());
                // Zeros re-evaluate to near-vanishing L.
                for z in &set.zeros {
                    let v = l_value(z.rho(), chi).unwrap().norm();
                    assert!(v <= 1e-8, "q={q} chi={} γ={}: |L|={v}", chi.label(), z.ordinate);
                }
            }
        }
    }

    #[test]
    fn imprimitive_delegates_to_primitive() {
        // Principal mod 3 inherits the zeros of ζ.
        let g3 = build_group(3).unwrap();
        let set = find_critical_zeros(g3.principal(), 15.0).unwrap();
        assert_eq!(set.character.modulus, 1);
        assert_eq!(set.zeros.len(), 1);
        assert!((set.zeros[0].ordinate - 14.134725).abs() < 1e-5);
    }

    #[test]
    fn real_zero_scans_are_empty() {
        let g1 = build_group(1).unwrap();
        assert!(scan_real_zeros(g1.principal(), 1000).unwrap().is_empty());
        for q in [3u64, 4] {
            let g = build_group(q).unwrap();
            let chi = g.characters().iter().find(|c| !c.is_principal()).unwrap();
            let (primary, low) = scan_real_zeros_full(chi, 1000).unwrap();
            assert!(primary.is_empty(), "q={q}");
            assert!(low.is_empty(), "q={q}");
        }
    }

    #[test]
    fn complex_characters_are_rejected_by_real_scan() {
        let g = build_group(5).unwrap();
        let complex_chi = g.characters().iter().find(|c| !c.is_real()).unwrap();
        assert!(scan_real_zeros(complex_chi, 1000).is_err());
        assert!(scan_real_zeros(g.principal(), 10).is_err()); // grid too small
    }

    #[test]
    fn siegel_audit_small_moduli() {
        let r = siegel_audit(3, 0.1, 1000).unwrap();
        assert!(r.offender.is_none());
        assert_eq!(r.scans.len(), 2); // both characters mod 3 are real
        let r = siegel_audit(4, 0.1, 1000).unwrap();
        assert!(r.offender.is_none());
        let r = siegel_audit(1, 0.1, 1000).unwrap();
        assert!(r.offender.is_none());
        assert!(r.scans.is_empty());
    }

    #[test]
    fn classify_siegel_rejects_double_offenders() {
        // Synthetic scans: the classification must hold the line even if a
        // buggy scan were to produce impossible data.
        let ok = classify_siegel(
            12,
            0.5,
            &[("12.1".into(), vec![0.995]), ("12.2".into(), vec![0.6])],
        )
        .unwrap();
        assert_eq!(ok.unwrap().0, "12.1");

        let two_chars = classify_siegel(
            12,
            0.5,
            &[("12.1".into(), vec![0.995]), ("12.2".into(), vec![0.999])],
        );
        assert!(matches!(two_chars, Err(Error::TheoremViolation(_))));

        let two_zeros = classify_siegel(12, 0.5, &[("12.1".into(), vec![0.995, 0.999])]);
        assert!(matches!(two_zeros, Err(Error::TheoremViolation(_))));
    }

    #[test]
    fn ingest_parses_and_validates() {
        let g = build_group(1).unwrap();
        let chi = g.principal();
        let set = parse_zero_table("14.134725\n21.022040\n", chi, false).unwrap();
        assert_eq!(set.zeros.len(), 2);
        assert_eq!(set.count_certificate, 2);
        assert_eq!(set.source, ZeroSource::Ingested);
        assert_eq!(set.height_bound, 21.022040);

        let empty = parse_zero_table("# nothing here\n\n", chi, false).unwrap();
        assert!(empty.zeros.is_empty());
        assert_eq!(empty.height_bound, 0.0);

        let bad = parse_zero_table("14.1\nnot-a-number\n", chi, false);
        assert!(matches!(bad, Err(Error::Ingest { line: 2, .. })));

        let non_monotone = parse_zero_table("21.0\n14.1\n", chi, false);
        assert!(matches!(non_monotone, Err(Error::Ingest { line: 2, .. })));
    }

    #[test]
    fn recertification_rejects_perturbed_ordinate() {
        let g = build_group(1).unwrap();
        let chi = g.principal();
        // Genuine first two zeros pass.
        let good = parse_zero_table("14.134725\n21.022040\n", chi, true).unwrap();
        assert_eq!(good.zeros.len(), 2);
        assert_eq!(good.zeros[0].certified_accuracy, Some(1e-3));

        // 14.2 is no zero: the local sign check must name it.
        let bad = parse_zero_table("14.2\n21.022040\n", chi, true);
        match bad {
            Err(Error::Ingest { line, detail }) => {
                assert_eq!(line, 1);
                assert!(detail.contains("14.2"), "{detail}");
            }
            other => panic!("expected ingest failure, got {other:?}"),
        }
    }
}
