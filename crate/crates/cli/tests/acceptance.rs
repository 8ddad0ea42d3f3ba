//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with the measured quantities (run with `--nocapture` to see them
//! on success).

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;

use num_complex::Complex64;

use goldbach::characters::build_group;
use goldbach::circle::{verify_explicit_formula, ThetaPoint};
use goldbach::lemmas::{hankel_integral, mean_square, verify_cal_osc, verify_detect, verify_t_detect};
use goldbach::mangoldt::{gcd, sieve_mangoldt, MangoldtTable};
use goldbach::representation::{representation_direct, representation_fft, ClassPair, RepresentationTable};
use goldbach::special::w_kernel;
use goldbach::theorem::{h_term, theorem_report, GroupZeros};
use goldbach::zeros::{
    find_critical_zeros, parse_zero_table, scan_real_zeros_group, siegel_audit, CharRef, Zero,
    ZeroSet, ZeroSource,
};

struct Ctx {
    table: MangoldtTable,
    rep_fujii: RepresentationTable,
    rep_34: RepresentationTable,
    gz1: GroupZeros,
    gz3: GroupZeros,
    gz4: GroupZeros,
}

fn ctx() -> &'static Ctx {
    static CTX: OnceLock<Ctx> = OnceLock::new();
    CTX.get_or_init(|| {
        let table = sieve_mangoldt(1_000_000).expect("sieve to 1e6");
        let rep_fujii = representation_fft(
            &table,
            &ClassPair::new(1, 1, 1, 1).unwrap(),
            1_000_000,
        )
        .expect("fujii table");
        let rep_34 = representation_fft(
            &table,
            &ClassPair::new(3, 1, 4, 3).unwrap(),
            1_000_000,
        )
        .expect("(3,1,4,3) table");
        let gz1 = GroupZeros::compute(1, 2000.0).expect("zeta zeros to 2000");
        let gz3 = GroupZeros::compute(3, 2000.0).expect("mod-3 zeros to 2000");
        let gz4 = GroupZeros::compute(4, 2000.0).expect("mod-4 zeros to 2000");
        Ctx {
            table,
            rep_fujii,
            rep_34,
            gz1,
            gz3,
            gz4,
        }
    })
}

fn coprime_residues(q: u64) -> Vec<u64> {
    (1..=q).filter(|&a| q == 1 || gcd(a % q, q) == 1).collect()
}

#[test]
fn acceptance_01_fft_matches_direct_oracle() {
    let ctx = ctx();
    let started = std::time::Instant::now();
    let x = 5000u64;
    let mut classes = Vec::new();
    for &q in &[1u64, 3, 4, 5, 12] {
        for a in coprime_residues(q) {
            classes.push((q, a));
        }
    }
    let mut worst = 0.0f64;
    let mut cases = 0;
    for &(q1, a1) in &classes {
        for &(q2, a2) in &classes {
            let pair = ClassPair::new(q1, a1, q2, a2).unwrap();
            let direct = representation_direct(&ctx.table, &pair, x).unwrap();
            let fast = representation_fft(&ctx.table, &pair, x).unwrap();
            for n in 0..=x {
                worst = worst.max((direct.value(n) - fast.value(n)).abs());
            }
            cases += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(
        worst < 1e-9,
        "ACCEPTANCE 1 FAIL: max |direct - fft| = {worst:.3e} over {cases} class pairs"
    );
    assert!(
        elapsed.as_secs() < 60,
        "ACCEPTANCE 1 FAIL: runtime {elapsed:.2?} exceeds one minute"
    );
    println!(
        "ACCEPTANCE 1 PASS: convolution matches the direct oracle, max diff {worst:.3e} over {cases} class pairs in {elapsed:.2?}"
    );
}

#[test]
fn acceptance_02_character_decomposition() {
    let x = 500u64;
    let table = sieve_mangoldt(x).unwrap();
    // Twisted mean value per character pair, then orthogonality assembly.
    let mut worst_rel = 0.0f64;
    for q1 in 1..=6u64 {
        for q2 in 1..=6u64 {
            let g1 = build_group(q1).unwrap();
            let g2 = build_group(q2).unwrap();
            let mut means =
                vec![vec![Complex64::new(0.0, 0.0); g2.characters().len()]; g1.characters().len()];
            for (i, chi1) in g1.characters().iter().enumerate() {
                for (j, chi2) in g2.characters().iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k1 in 2..x {
                        let l1 = table.lambda(k1);
                        if l1 == 0.0 {
                            continue;
                        }
                        let w1 = chi1.eval(k1);
                        if w1.re == 0.0 && w1.im == 0.0 {
                            continue;
                        }
                        for k2 in 2..=(x - k1) {
                            let l2 = table.lambda(k2);
                            if l2 != 0.0 {
                                acc += w1 * chi2.eval(k2) * (l1 * l2);
                            }
                        }
                    }
                    means[i][j] = acc;
                }
            }
            let phi12 = (g1.phi() * g2.phi()) as f64;
            for a1 in coprime_residues(q1) {
                for a2 in coprime_residues(q2) {
                    let pair = ClassPair::new(q1, a1, q2, a2).unwrap();
                    let lhs = representation_direct(&table, &pair, x)
                        .unwrap()
                        .prefix_at(x as f64);
                    let mut rhs = Complex64::new(0.0, 0.0);
                    for (i, chi1) in g1.characters().iter().enumerate() {
                        for (j, chi2) in g2.characters().iter().enumerate() {
                            rhs += chi1.eval(a1).conj() * chi2.eval(a2).conj() * means[i][j];
                        }
                    }
                    rhs /= phi12;
                    let rel = (lhs - rhs.re).abs() / lhs.abs().max(1.0);
                    worst_rel = worst_rel.max(rel);
                }
            }
        }
    }
    assert!(
        worst_rel < 1e-8,
        "ACCEPTANCE 2 FAIL: worst relative disagreement {worst_rel:.3e}"
    );
    println!(
        "ACCEPTANCE 2 PASS: orthogonality decomposition agrees, worst relative error {worst_rel:.3e}"
    );
}

#[test]
fn acceptance_03_zero_certification() {
    let g = build_group(1).unwrap();
    let set = find_critical_zeros(g.principal(), 100.0).unwrap();
    assert_eq!(
        set.zeros.len(),
        29,
        "ACCEPTANCE 3 FAIL: expected 29 zeros below 100, found {}",
        set.zeros.len()
    );
    assert_eq!(
        set.count_certificate, 29,
        "ACCEPTANCE 3 FAIL: argument-principle count {} != 29",
        set.count_certificate
    );

    let reference_text = include_str!("data/zeta_zeros_100.txt");
    let reference = parse_zero_table(reference_text, g.principal(), false).unwrap();
    assert_eq!(reference.zeros.len(), 29);
    let g1 = set.zeros[0].ordinate;
    let r1 = reference.zeros[0].ordinate;
    assert!(
        (g1 - r1).abs() <= 1e-6,
        "ACCEPTANCE 3 FAIL: gamma_1 = {g1} vs reference {r1}"
    );
    // The whole table agrees at the reference's print precision.
    for (z, r) in set.zeros.iter().zip(&reference.zeros) {
        assert!(
            (z.ordinate - r.ordinate).abs() < 1e-5,
            "ACCEPTANCE 3 FAIL: {} vs reference {}",
            z.ordinate,
            r.ordinate
        );
    }
    println!(
        "ACCEPTANCE 3 PASS: 29 certified zeros below T=100, gamma_1 = {g1:.9} within 1e-6 of the ingested reference"
    );
}

fn geometric_samples(xmin: f64, xmax: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| xmin * (xmax / xmin).powf(k as f64 / (n - 1) as f64))
        .collect()
}

#[test]
fn acceptance_04_fujii_oscillation_capture() {
    let ctx = ctx();
    let samples = geometric_samples(1e3, 1e6, 50);
    let mut sum_e2 = 0.0;
    let mut sum_raw2 = 0.0;
    let mut sum_drift2 = 0.0;
    for &x in &samples {
        let r = theorem_report(&ctx.rep_fujii, &ctx.gz1, &ctx.gz1, x).unwrap();
        assert_eq!(r.h_term, 0.0, "H must vanish without real zeros");
        // E(X) = lhs - [X²/2 - 2 Σ_ρ X^{ρ+1}/(ρ(ρ+1))]; the report's residual
        // is exactly that for q = 1.
        let e = r.residual;
        let raw = r.lhs - r.main_term;
        sum_e2 += e * e;
        sum_raw2 += raw * raw;
        // Diagnostic: the classical secondary term -2 log(2π) X accounts for
        // almost all of E.
        let drift_corrected = e + 2.0 * (std::f64::consts::TAU).ln() * x;
        sum_drift2 += drift_corrected * drift_corrected;
    }
    let rms_e = (sum_e2 / samples.len() as f64).sqrt();
    let rms_raw = (sum_raw2 / samples.len() as f64).sqrt();
    let rms_drift = (sum_drift2 / samples.len() as f64).sqrt();
    let ratio = rms_e / rms_raw;
    let drift_ratio = rms_drift / rms_raw;
    println!(
        "ACCEPTANCE 4: RMS(E) = {rms_e:.4e}, RMS(raw) = {rms_raw:.4e}, ratio = {ratio:.4} \
         (target <= 0.2); diagnostic drift-corrected ratio = {drift_ratio:.4}"
    );
    assert!(
        ratio <= 0.2,
        "ACCEPTANCE 4 FAIL: RMS(E)/RMS(raw) = {ratio:.4} > 0.2. The zero sum does capture the \
         oscillation — E(X) is dominated by the secondary term -2 log(2pi) X (drift-corrected \
         ratio {drift_ratio:.4}) — but the criterion as stated counts that known linear term \
         inside E, and at xmax = 1e6 its RMS exceeds 0.2x the raw residual."
    );
    println!("ACCEPTANCE 4 PASS: oscillation capture ratio {ratio:.4} <= 0.2");
}

#[test]
fn acceptance_05_theorem_monitoring() {
    let ctx = ctx();
    let samples = geometric_samples(1e3, 1e6, 50);
    let mut ratios = Vec::with_capacity(samples.len());
    for &x in &samples {
        let r = theorem_report(&ctx.rep_34, &ctx.gz3, &ctx.gz4, x).unwrap();
        assert_eq!(r.h_term, 0.0, "H must vanish without real zeros");
        ratios.push((x, r.bound_ratio));
    }
    let max_ratio = ratios.iter().map(|&(_, r)| r).fold(0.0, f64::max);
    let first: Vec<f64> = ratios
        .iter()
        .filter(|&&(x, _)| x <= 1e4)
        .map(|&(_, r)| r)
        .collect();
    let last: Vec<f64> = ratios
        .iter()
        .filter(|&&(x, _)| x >= 1e5)
        .map(|&(_, r)| r)
        .collect();
    let first_mean = first.iter().sum::<f64>() / first.len() as f64;
    let last_mean = last.iter().sum::<f64>() / last.len() as f64;
    assert!(
        max_ratio < 2.0,
        "ACCEPTANCE 5 FAIL (red flag): bound_ratio reached {max_ratio:.4}, monitored target 2.0"
    );
    assert!(
        last_mean <= 1.5 * first_mean,
        "ACCEPTANCE 5 FAIL (red flag): systematic growth, last-decade mean {last_mean:.4} vs \
         first-decade mean {first_mean:.4}"
    );
    println!(
        "ACCEPTANCE 5 PASS: bound_ratio max {max_ratio:.4} < 2.0, decade means {first_mean:.4} -> {last_mean:.4} (no growth)"
    );
}

/// Zero sets cut down to a smaller height, for criteria that pin T.
fn truncate(gz: &GroupZeros, height: f64) -> GroupZeros {
    let group = gz.group().clone();
    let sets: Vec<ZeroSet> = (0..group.characters().len())
        .map(|i| {
            let s = gz.set(i);
            let zeros: Vec<Zero> = s
                .zeros
                .iter()
                .copied()
                .filter(|z| z.ordinate <= height)
                .collect();
            ZeroSet {
                character: s.character.clone(),
                height_bound: height,
                count_certificate: zeros.len() as u64,
                zeros,
                real_zeros: s.real_zeros.clone(),
                source: s.source,
            }
        })
        .collect();
    GroupZeros::from_sets(group, sets, height).unwrap()
}

#[test]
fn acceptance_06_explicit_formula_residuals() {
    let ctx = ctx();
    let alphas = [-0.37, -0.19, 0.0, 0.17, 0.42];
    let mut worst = 0.0f64;
    for &(q, n) in &[(1u64, 500u64), (3, 500), (4, 1000)] {
        let gz = match q {
            1 => truncate(&ctx.gz1, 1000.0),
            3 => truncate(&ctx.gz3, 1000.0),
            _ => truncate(&ctx.gz4, 1000.0),
        };
        let idx = gz
            .group()
            .characters()
            .iter()
            .position(|c| c.is_primitive())
            .unwrap();
        for &alpha in &alphas {
            let point = ThetaPoint::new(alpha, n).unwrap();
            let r = verify_explicit_formula(point, idx, &gz, &ctx.table).unwrap();
            worst = worst.max(r.normalized);
            assert!(
                r.normalized < 5.0,
                "ACCEPTANCE 6 FAIL: q={q} N={n} alpha={alpha}: normalized residual {}",
                r.normalized
            );
        }
    }
    println!("ACCEPTANCE 6 PASS: explicit-formula residuals, worst normalized {worst:.4} < 5");
}

#[test]
fn acceptance_07_mean_square_bound() {
    let ctx = ctx();
    let xis = [1.0 / 64.0, 1.0 / 8.0, 0.5];
    let mut worst = 0.0f64;
    for &q in &[1u64, 3, 4] {
        let gz = match q {
            1 => &ctx.gz1,
            3 => &ctx.gz3,
            _ => &ctx.gz4,
        };
        let idx = gz
            .group()
            .characters()
            .iter()
            .position(|c| c.is_primitive())
            .unwrap();
        let mut prev = -1.0;
        for &xi in &xis {
            let r = mean_square(idx, gz, 1000, xi, &ctx.table).unwrap();
            assert!(
                r.ratio < 10.0,
                "ACCEPTANCE 7 FAIL: q={q} xi={xi}: ratio {}",
                r.ratio
            );
            assert!(
                r.integral >= prev,
                "ACCEPTANCE 7 FAIL: q={q}: integral not monotone in xi"
            );
            prev = r.integral;
            worst = worst.max(r.ratio);
        }
    }
    println!("ACCEPTANCE 7 PASS: mean-square ratios < 10 (worst {worst:.4}), monotone in xi");
}

#[test]
fn acceptance_08_lemma_suite() {
    let ctx = ctx();
    // Kernel integral across the stated grid, within the stated envelopes.
    let mut cases = 0;
    for &n_param in &[100u64, 1000] {
        for &mu in &[0.5, 1.0, 1.5, 2.0] {
            for &nf in &[0i64, 1, -1, 20, -20, 50, -50] {
                if nf == 0 && mu > 1.0 {
                    continue;
                }
                let h = hankel_integral(nf, mu, n_param).unwrap();
                assert!(
                    h.residual <= h.budget,
                    "ACCEPTANCE 8 FAIL: hankel n={nf} mu={mu} N={n_param}: residual {} beyond \
                     envelope {}",
                    h.residual,
                    h.budget
                );
                cases += 1;
            }
        }
    }

    for &(y, mu, n) in &[(100.0, 1.0, 100u64), (5.0, 2.0, 100), (2.5, 1.0, 50)] {
        let c = verify_t_detect(y, mu, n).unwrap();
        assert!(
            c.ratio < 5.0,
            "ACCEPTANCE 8 FAIL: t_detect y={y} mu={mu} N={n}: ratio {}",
            c.ratio
        );
    }

    let g1 = build_group(1).unwrap();
    let g3 = build_group(3).unwrap();
    let chi3 = g3.characters().iter().find(|c| !c.is_principal()).unwrap();
    for &(y, mu, q, n) in &[(200.0, 1.0, 1u64, 200u64), (100.0, 0.5, 3, 200), (3.0, 1.0, 1, 50)] {
        let chi = if q == 1 { g1.principal() } else { chi3 };
        let c = verify_detect(y, mu, chi, n, &ctx.table).unwrap();
        assert!(
            c.ratio < 5.0,
            "ACCEPTANCE 8 FAIL: detect y={y} mu={mu} q={q} N={n}: ratio {}",
            c.ratio
        );
    }

    let idx4 = ctx
        .gz4
        .group()
        .characters()
        .iter()
        .position(|c| !c.is_principal())
        .unwrap();
    for &(m, mu, q) in &[(10_000u64, 1.0, 1u64), (1000, 0.75, 4), (2, 1.0, 1)] {
        let (gz, idx) = if q == 1 { (&ctx.gz1, 0) } else { (&ctx.gz4, idx4) };
        let c = verify_cal_osc(m, mu, idx, gz, &ctx.table).unwrap();
        assert!(
            c.ratio < 5.0,
            "ACCEPTANCE 8 FAIL: cal_osc M={m} mu={mu} q={q}: ratio {}",
            c.ratio
        );
    }
    println!("ACCEPTANCE 8 PASS: {cases} kernel-integral cases in envelope; detector and partial-sum lemmas under 5x allowance");
}

#[test]
fn acceptance_09_real_zero_and_siegel_audit() {
    // Every real character with q <= 100, grid 1e4: no real zeros at all,
    // hence no Siegel zeros and never two offenders.
    let mut scanned = 0usize;
    for q in 1..=100u64 {
        let report = siegel_audit(q, 0.1, 10_000).unwrap();
        assert!(
            report.offender.is_none(),
            "ACCEPTANCE 9 FAIL: offender reported for q={q}: {:?}",
            report.offender
        );
        for (label, count) in &report.scans {
            assert_eq!(
                *count, 0,
                "ACCEPTANCE 9 FAIL: real zeros found for character {label}"
            );
            scanned += 1;
        }
        assert!(
            report.low_zeros.is_empty(),
            "ACCEPTANCE 9 FAIL: zeros below 1/2 for q={q}"
        );
    }

    // H(X) vanishes identically in the non-synthetic reports.
    let ctx = ctx();
    for &x in &[1e3, 1e5, 1e6] {
        let r = theorem_report(&ctx.rep_34, &ctx.gz3, &ctx.gz4, x).unwrap();
        assert_eq!(r.h_term, 0.0);
    }

    // Synthetic-zero H-term agrees with an independent recomputation.
    let group = build_group(3).unwrap();
    let sets: Vec<ZeroSet> = group
        .characters()
        .iter()
        .map(|c| ZeroSet {
            character: CharRef::of(c),
            height_bound: 25.0,
            zeros: vec![
                Zero::critical(8.039737155, 1e-9),
                Zero::critical(11.249206211, 1e-9),
            ],
            real_zeros: Vec::new(),
            count_certificate: 2,
            source: ZeroSource::Ingested,
        })
        .collect();
    let mut gz = GroupZeros::from_sets(group.clone(), sets, 25.0).unwrap();
    let idx = group
        .characters()
        .iter()
        .position(|c| !c.is_principal())
        .unwrap();
    let beta = 0.75;
    gz.inject_real_zero(idx, beta);
    let x = 400.0;
    let h = h_term(&gz, 1, &gz, 2, x).unwrap();
    let w = |i: usize, a: u64| group.by_index(i).eval(a).conj();
    let g_beta = |i: usize| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        gz.for_each_zero(i, |rho| {
            s += w_kernel(x, rho, Complex64::new(beta, 0.0)).unwrap();
        });
        s
    };
    let mut expected = Complex64::new(0.0, 0.0);
    for i in 0..group.characters().len() {
        expected += w(i, 1) * w(idx, 2) * g_beta(i);
        expected += w(idx, 1) * w(i, 2) * g_beta(i);
    }
    expected -= w(idx, 1)
        * w(idx, 2)
        * w_kernel(x, Complex64::new(beta, 0.0), Complex64::new(beta, 0.0)).unwrap();
    assert!(
        (h - expected.re).abs() < 1e-9 * expected.re.abs().max(1.0),
        "ACCEPTANCE 9 FAIL: synthetic H {h} vs independent {}",
        expected.re
    );
    println!(
        "ACCEPTANCE 9 PASS: {scanned} real characters scanned clean to q=100; H = 0 in live reports; synthetic H matches independent recomputation"
    );
}

#[test]
fn acceptance_10_deterministic_csv() {
    let bin = env!("CARGO_BIN_EXE_goldbach");
    let dir = std::env::temp_dir().join(format!("goldbach-acceptance-{}", std::process::id()));
    let cache = dir.join("cache");
    std::fs::create_dir_all(&cache).unwrap();
    let out1 = dir.join("run1.csv");
    let out2 = dir.join("run2.csv");

    let run = |out: &Path| {
        let status = Command::new(bin)
            .args([
                "--cache-dir",
                cache.to_str().unwrap(),
                "theorem",
                "--q1",
                "3",
                "--a1",
                "1",
                "--q2",
                "4",
                "--a2",
                "3",
                "--xmax",
                "20000",
                "--samples",
                "8",
                "--height",
                "150",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .expect("spawn goldbach");
        assert!(status.success(), "ACCEPTANCE 10 FAIL: exit {status}");
    };
    // First run cold (computes and populates the cache), second warm.
    run(&out1);
    run(&out2);
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    assert!(
        b1 == b2,
        "ACCEPTANCE 10 FAIL: cold and warm runs differ ({} vs {} bytes)",
        b1.len(),
        b2.len()
    );
    assert!(!b1.is_empty());
    let _ = std::fs::remove_dir_all(&dir);
    println!(
        "ACCEPTANCE 10 PASS: consecutive runs byte-identical ({} bytes of CSV)",
        b1.len()
    );
}
