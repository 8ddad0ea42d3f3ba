//! The von Mangoldt table and the Chebyshev-type prime sums built on it.
//!
//! `MangoldtTable` holds Λ(n) for 1 ≤ n ≤ X as doubles (log p at prime
//! powers p^k, zero elsewhere). Construction runs a segmented sieve so the
//! marking phase never allocates more than one cache-sized block beyond the
//! output array itself. All prime sums — ψ(x), ψ(x,q,a), ψ(x,χ) and the
//! fractional-power ψ_μ(x,χ) — are exact partial sums over the table.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::summation::{ComplexKahanSum, KahanSum};

/// Sieve segment size. 2^18 bytes of marks sits comfortably in L2.
const SEGMENT: u64 = 1 << 18;

/// Λ(n) for 1 ≤ n ≤ limit, materialized as doubles.
#[derive(Debug, Clone)]
pub struct MangoldtTable {
    limit: u64,
    /// values[n] = Λ(n); index 0 and 1 are zero.
    values: Vec<f64>,
}

/// Builds the Λ table up to `limit` (inclusive).
///
/// Prime marking is segmented; prime powers are filled in afterwards from
/// the base primes, which are the only primes with powers below the limit.
pub fn sieve_mangoldt(limit: u64) -> Result<MangoldtTable> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "sieve limit must be at least 2, got {limit}"
        )));
    }
    let mut values = vec![0.0f64; (limit + 1) as usize];

    // Base primes up to sqrt(limit) by a plain sieve.
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut base_composite = vec![false; (root + 1) as usize];
    let mut base_primes: Vec<u64> = Vec::new();
    for p in 2..=root {
        if !base_composite[p as usize] {
            base_primes.push(p);
            let mut m = p * p;
            while m <= root {
                base_composite[m as usize] = true;
                m += p;
            }
        }
    }

    // Segmented marking: any unmarked n >= 2 in a segment is prime.
    let mut marks = vec![false; SEGMENT as usize];
    let mut lo = 2u64;
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        marks[..len].fill(false);
        for &p in &base_primes {
            if p * p > hi {
                break;
            }
            let mut start = p * p;
            if start < lo {
                start = lo.div_ceil(p) * p;
            }
            let mut m = start;
            while m <= hi {
                marks[(m - lo) as usize] = true;
                m += p;
            }
        }
        for (off, &composite) in marks[..len].iter().enumerate() {
            if !composite {
                let n = lo + off as u64;
                values[n as usize] = (n as f64).ln();
            }
        }
        lo = hi + 1;
    }

    // Proper prime powers p^k, k >= 2. Only base primes can have any.
    for &p in &base_primes {
        if p * p > limit {
            break;
        }
        let logp = (p as f64).ln();
        let mut pk = p * p;
        loop {
            values[pk as usize] = logp;
            match pk.checked_mul(p) {
                Some(next) if next <= limit => pk = next,
                _ => break,
            }
        }
    }

    Ok(MangoldtTable { limit, values })
}

impl MangoldtTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Λ(n); zero for n = 0, n = 1 and n beyond the table.
    #[inline]
    pub fn lambda(&self, n: u64) -> f64 {
        if n <= self.limit {
            self.values[n as usize]
        } else {
            0.0
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if x > self.limit as f64 {
            Err(Error::OutOfRange {
                x,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// ψ(x) = Σ_{n ≤ x} Λ(n). Closed at integer x.
    pub fn psi(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        if x < 2.0 {
            return Ok(0.0);
        }
        let top = x.floor() as u64;
        let mut acc = KahanSum::new();
        for n in 2..=top {
            acc.add(self.values[n as usize]);
        }
        Ok(acc.value())
    }

    /// ψ(x,q,a) = Σ_{n ≤ x, n ≡ a (q)} Λ(n).
    pub fn psi_progression(&self, x: f64, q: u64, a: u64) -> Result<f64> {
        self.check_range(x)?;
        if q == 0 {
            return Err(Error::InvalidArgument("modulus 0".into()));
        }
        if gcd(a % q.max(1), q) != 1 && q > 1 {
            return Err(Error::InvalidResidue { q, a });
        }
        if x < 2.0 {
            return Ok(0.0);
        }
        let top = x.floor() as u64;
        let a = a % q;
        let mut n = if a >= 2 {
            a
        } else {
            // First n >= 2 in the progression.
            a + q * (2u64.saturating_sub(a)).div_ceil(q)
        };
        let mut acc = KahanSum::new();
        while n <= top {
            acc.add(self.values[n as usize]);
            n += q;
        }
        Ok(acc.value())
    }

    /// ψ(x,χ) = Σ_{n ≤ x} χ(n) Λ(n).
    pub fn psi_twisted(&self, x: f64, chi: &DirichletCharacter) -> Result<Complex64> {
        self.check_range(x)?;
        if x < 2.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let top = x.floor() as u64;
        let mut acc = ComplexKahanSum::new();
        for n in 2..=top {
            let lam = self.values[n as usize];
            if lam != 0.0 {
                let c = chi.eval(n);
                if c.re != 0.0 || c.im != 0.0 {
                    acc.add(c * lam);
                }
            }
        }
        Ok(acc.value())
    }

    /// ψ_μ(x,χ) = Σ_{n < x} χ(n) Λ(n) (x−n)^{μ−1}.
    ///
    /// The cutoff is strict (n < x), unlike the closed ψ sums.
    pub fn psi_mu(&self, x: f64, mu: f64, chi: &DirichletCharacter) -> Result<Complex64> {
        if !(0.0 < mu && mu <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "mu must lie in (0,1], got {mu}"
            )));
        }
        self.check_range(x)?;
        if x <= 2.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut top = x.ceil() as u64 - 1;
        if (top as f64) >= x {
            top -= 1; // enforce n < x at integer x
        }
        let top = top.min(self.limit);
        let mut acc = ComplexKahanSum::new();
        for n in 2..=top {
            let lam = self.values[n as usize];
            if lam != 0.0 {
                let c = chi.eval(n);
                if c.re != 0.0 || c.im != 0.0 {
                    let w = if mu == 1.0 {
                        1.0
                    } else {
                        (x - n as f64).powf(mu - 1.0)
                    };
                    acc.add(c * (lam * w));
                }
            }
        }
        Ok(acc.value())
    }

    /// Serializes as an 8-byte little-endian limit header followed by the
    /// flat array of 8-byte little-endian values for indices 0..=limit.
    pub fn write_binary<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(&self.limit.to_le_bytes())?;
        for v in &self.values {
            out.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads the format produced by [`write_binary`](Self::write_binary).
    pub fn read_binary<R: Read>(mut input: R) -> Result<MangoldtTable> {
        let mut header = [0u8; 8];
        input.read_exact(&mut header)?;
        let limit = u64::from_le_bytes(header);
        if !(2..=(1 << 40)).contains(&limit) {
            return Err(Error::InvalidArgument(format!(
                "corrupt table header: limit {limit}"
            )));
        }
        let mut values = vec![0.0f64; (limit + 1) as usize];
        let mut buf = [0u8; 8];
        for v in values.iter_mut() {
            input.read_exact(&mut buf)?;
            *v = f64::from_le_bytes(buf);
        }
        Ok(MangoldtTable { limit, values })
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Incremental ψ evaluation: sweeps x upward and maintains the running
/// Chebyshev sum, so sampling ψ at many increasing points costs one table
/// pass total. The held value is nonnegative and nondecreasing in x.
#[derive(Debug, Clone)]
pub struct ChebyshevAccumulator<'a> {
    table: &'a MangoldtTable,
    x: f64,
    value: KahanSum,
    next: u64,
}

impl<'a> ChebyshevAccumulator<'a> {
    pub fn new(table: &'a MangoldtTable) -> Self {
        ChebyshevAccumulator {
            table,
            x: 0.0,
            value: KahanSum::new(),
            next: 2,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn value(&self) -> f64 {
        self.value.value()
    }

    /// Advances to x (which must not decrease) and returns ψ(x).
    pub fn advance_to(&mut self, x: f64) -> Result<f64> {
        if x < self.x {
            return Err(Error::InvalidArgument(format!(
                "accumulator cannot move backwards: {x} < {}",
                self.x
            )));
        }
        if x > self.table.limit as f64 {
            return Err(Error::OutOfRange {
                x,
                limit: self.table.limit,
            });
        }
        let top = x.floor() as u64;
        while self.next <= top {
            self.value.add(self.table.values[self.next as usize]);
            self.next += 1;
        }
        self.x = x;
        Ok(self.value.value())
    }
}
