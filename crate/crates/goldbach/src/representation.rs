//! The representation function R(n, q₁, a₁, q₂, a₂) — the Λ-weighted count
//! of splittings n = m₁ + m₂ with each part in its arithmetic progression —
//! exactly, as a table over n ≤ X with prefix sums.
//!
//! Two routes: a direct double sum (the oracle, O(X²)) and the production
//! route convolving the two progression-restricted Λ sequences with an FFT
//! of length ≥ 2X. The structural zeros forced by the congruence
//! n ≡ a₁ + a₂ (mod gcd(q₁,q₂)) are exact in both.

use crate::error::{Error, Result};
use crate::fft::convolve_real;
use crate::mangoldt::{gcd, MangoldtTable};
use crate::summation::KahanSum;

/// A residue class a (mod q) with gcd(a, q) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueClass {
    q: u64,
    a: u64,
}

impl ResidueClass {
    pub fn new(q: u64, a: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let a_red = a % q;
        if q > 1 && gcd(a_red, q) != 1 {
            return Err(Error::InvalidResidue { q, a });
        }
        Ok(ResidueClass { q, a: a_red })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn residue(&self) -> u64 {
        self.a
    }

    pub fn contains(&self, n: u64) -> bool {
        n % self.q == self.a
    }
}

/// The two progressions addressed by a representation table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassPair {
    pub first: ResidueClass,
    pub second: ResidueClass,
}

impl ClassPair {
    pub fn new(q1: u64, a1: u64, q2: u64, a2: u64) -> Result<Self> {
        Ok(ClassPair {
            first: ResidueClass::new(q1, a1)?,
            second: ResidueClass::new(q2, a2)?,
        })
    }

    /// n can be m₁+m₂ with the right congruences only if
    /// n ≡ a₁ + a₂ (mod gcd(q₁, q₂)).
    pub fn admits(&self, n: u64) -> bool {
        let g = gcd(self.first.q, self.second.q);
        n % g == (self.first.a + self.second.a) % g
    }
}

/// Exact values R(n) for n ≤ X plus running prefix sums.
#[derive(Debug, Clone)]
pub struct RepresentationTable {
    limit: u64,
    classes: ClassPair,
    values: Vec<f64>,
    prefix: Vec<f64>,
}

impl RepresentationTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn classes(&self) -> &ClassPair {
        &self.classes
    }

    pub fn value(&self, n: u64) -> f64 {
        if n <= self.limit {
            self.values[n as usize]
        } else {
            0.0
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Σ_{n ≤ x} R(n); real x is floored.
    pub fn prefix_at(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let n = (x.floor() as u64).min(self.limit);
        self.prefix[n as usize]
    }

    fn from_values(limit: u64, classes: ClassPair, values: Vec<f64>) -> Self {
        let mut prefix = Vec::with_capacity(values.len());
        let mut acc = KahanSum::new();
        for &v in &values {
            acc.add(v);
            prefix.push(acc.value());
        }
        RepresentationTable {
            limit,
            classes,
            values,
            prefix,
        }
    }
}

fn check_inputs(table: &MangoldtTable, x: u64) -> Result<()> {
    if x < 2 {
        return Err(Error::InvalidArgument(format!(
            "representation limit must be at least 2, got {x}"
        )));
    }
    if x > table.limit() {
        return Err(Error::OutOfRange {
            x: x as f64,
            limit: table.limit(),
        });
    }
    Ok(())
}

/// The restricted Λ sequence of one progression, indices 0..=x.
fn progression_sequence(table: &MangoldtTable, class: &ResidueClass, x: u64) -> Vec<f64> {
    let mut seq = vec![0.0f64; (x + 1) as usize];
    let q = class.modulus();
    let mut m = if class.residue() == 0 {
        q
    } else {
        class.residue()
    };
    while m <= x {
        seq[m as usize] = table.lambda(m);
        m += q;
    }
    seq
}

/// Direct O(X²) evaluation of the full table — the oracle route.
pub fn representation_direct(
    table: &MangoldtTable,
    classes: &ClassPair,
    x: u64,
) -> Result<RepresentationTable> {
    check_inputs(table, x)?;
    let u = progression_sequence(table, &classes.first, x);
    let v = progression_sequence(table, &classes.second, x);
    let mut values = vec![0.0f64; (x + 1) as usize];
    for (m1, &l1) in u.iter().enumerate() {
        if l1 == 0.0 {
            continue;
        }
        for (m2, &l2) in v.iter().enumerate().take(x as usize + 1 - m1) {
            if l2 != 0.0 {
                values[m1 + m2] += l1 * l2;
            }
        }
    }
    Ok(RepresentationTable::from_values(x, *classes, values))
}

/// FFT convolution of the two progression-restricted Λ sequences,
/// numerically identical to the direct route within 1e-9 and O(X log X).
pub fn representation_fft(
    table: &MangoldtTable,
    classes: &ClassPair,
    x: u64,
) -> Result<RepresentationTable> {
    check_inputs(table, x)?;
    let u = progression_sequence(table, &classes.first, x);
    let v = progression_sequence(table, &classes.second, x);
    let conv = convolve_real(&u, &v);
    let mut values = vec![0.0f64; (x + 1) as usize];
    for n in 0..=x as usize {
        if classes.admits(n as u64) {
            // Λ products are at least (log 2)² when present; anything at
            // rounding scale is convolution noise.
            values[n] = if conv[n].abs() < 1e-9 { 0.0 } else { conv[n] };
        }
    }
    Ok(RepresentationTable::from_values(x, *classes, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mangoldt::sieve_mangoldt;

    const LN2: f64 = std::f64::consts::LN_2;

    fn ln(n: u64) -> f64 {
        (n as f64).ln()
    }

    #[test]
    fn residue_class_validation() {
        assert!(ResidueClass::new(0, 1).is_err());
        assert!(ResidueClass::new(4, 2).is_err());
        assert!(ResidueClass::new(4, 3).is_ok());
        assert!(ResidueClass::new(1, 0).is_ok());
        assert_eq!(ResidueClass::new(1, 5).unwrap().residue(), 0);
    }

    #[test]
    fn small_direct_values() {
        let t = sieve_mangoldt(64).unwrap();
        let classes = ClassPair::new(1, 1, 1, 1).unwrap();
        let r = representation_direct(&t, &classes, 16).unwrap();
        // R(4): only 2+2.
        assert!((r.value(4) - LN2 * LN2).abs() < 1e-12);
        assert!((r.value(4) - 0.480453).abs() < 1e-5);
        // R(8): (3,5), (5,3), (4,4).
        let expected = 2.0 * ln(3) * ln(5) + LN2 * LN2;
        assert!((r.value(8) - expected).abs() < 1e-12);
        assert!((r.value(8) - 4.016750).abs() < 1e-5);
    }

    #[test]
    fn congruence_obstruction_forces_zero() {
        let t = sieve_mangoldt(64).unwrap();
        let classes = ClassPair::new(3, 1, 3, 1).unwrap();
        let r = representation_direct(&t, &classes, 32).unwrap();
        // 10 ≢ 1+1 (mod 3)
        assert_eq!(r.value(10), 0.0);
        for n in 0..=32u64 {
            if n % 3 != 2 {
                assert_eq!(r.value(n), 0.0, "n={n}");
            }
        }
        let rf = representation_fft(&t, &classes, 32).unwrap();
        for n in 0..=32u64 {
            if n % 3 != 2 {
                assert_eq!(rf.value(n), 0.0, "fft n={n}");
            }
        }
    }

    #[test]
    fn fft_matches_direct_oracle() {
        let t = sieve_mangoldt(2000).unwrap();
        let classes = ClassPair::new(3, 1, 3, 2).unwrap();
        let direct = representation_direct(&t, &classes, 2000).unwrap();
        let fast = representation_fft(&t, &classes, 2000).unwrap();
        let mut max_diff = 0.0f64;
        for n in 0..=2000u64 {
            max_diff = max_diff.max((direct.value(n) - fast.value(n)).abs());
        }
        assert!(max_diff < 1e-9, "max diff {max_diff}");
    }

    #[test]
    fn fft_matches_direct_trivial_classes() {
        let t = sieve_mangoldt(3000).unwrap();
        let classes = ClassPair::new(1, 1, 1, 1).unwrap();
        let direct = representation_direct(&t, &classes, 3000).unwrap();
        let fast = representation_fft(&t, &classes, 3000).unwrap();
        let mut max_diff = 0.0f64;
        for n in 0..=3000u64 {
            max_diff = max_diff.max((direct.value(n) - fast.value(n)).abs());
        }
        assert!(max_diff < 1e-9, "max diff {max_diff}");
        assert!((direct.prefix_at(3000.0) - fast.prefix_at(3000.0)).abs() < 1e-7);
    }

    #[test]
    fn empty_progression_gives_zero_table() {
        let t = sieve_mangoldt(64).unwrap();
        // No prime power ≤ 10 is ≡ 96 (mod 97).
        let classes = ClassPair::new(97, 96, 1, 1).unwrap();
        let r = representation_fft(&t, &classes, 10).unwrap();
        assert!(r.values().iter().all(|&v| v == 0.0));
        assert_eq!(r.prefix_at(10.0), 0.0);
    }

    #[test]
    fn symmetry_in_the_two_classes() {
        let t = sieve_mangoldt(500).unwrap();
        let ab = ClassPair::new(3, 2, 4, 1).unwrap();
        let ba = ClassPair::new(4, 1, 3, 2).unwrap();
        let r1 = representation_direct(&t, &ab, 500).unwrap();
        let r2 = representation_direct(&t, &ba, 500).unwrap();
        for n in 0..=500u64 {
            assert!((r1.value(n) - r2.value(n)).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn values_nonnegative_and_prefix_monotone() {
        let t = sieve_mangoldt(1000).unwrap();
        let classes = ClassPair::new(4, 3, 3, 1).unwrap();
        let r = representation_fft(&t, &classes, 1000).unwrap();
        let mut prev = 0.0;
        for n in 0..=1000u64 {
            assert!(r.value(n) >= 0.0, "n={n}");
            let p = r.prefix_at(n as f64);
            assert!(p + 1e-12 >= prev);
            prev = p;
        }
        // prefix_at floors its argument
        assert_eq!(r.prefix_at(10.7), r.prefix_at(10.0));
    }

    #[test]
    fn range_errors() {
        let t = sieve_mangoldt(100).unwrap();
        let classes = ClassPair::new(1, 1, 1, 1).unwrap();
        assert!(representation_direct(&t, &classes, 101).is_err());
        assert!(representation_direct(&t, &classes, 1).is_err());
    }
}
