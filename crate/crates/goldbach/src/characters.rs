//! Dirichlet character groups: construction, conductors, induced primitive
//! characters, Gauss sums.
//!
//! The unit group (Z/qZ)^* is decomposed into cyclic factors via CRT — odd
//! prime powers are cyclic on their smallest primitive root, the 2-power
//! part is ⟨−1⟩ × ⟨5⟩ — and a character is the exponent vector of its values
//! on those generators. Characters are ordered by the lexicographic rank of
//! that vector, so `q.0` is always the principal character and labels are
//! stable across runs. Character values are exact roots of unity: every
//! value is looked up in a table of e(j/L) with L the exponent of the group,
//! materialized to double precision once per group.
//!
//! Following the convention used throughout the crate, the constant
//! function 1 is the primitive character of modulus 1, and principal
//! characters of modulus q ≥ 2 are imprimitive with conductor 1.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mangoldt::gcd;
use crate::summation::ComplexKahanSum;

const NON_UNIT: u32 = u32::MAX;

/// Shared per-modulus data: generators, discrete logs, root-of-unity table.
#[derive(Debug)]
struct GroupCore {
    modulus: u64,
    /// Generator residues mod q, each ≡ 1 on every other cyclic component.
    /// 2-part generators first (−1 then 5), then odd primes ascending.
    generators: Vec<u64>,
    /// Orders d_i of the generators.
    orders: Vec<u64>,
    /// Row-major discrete logarithms: dlog[n * r + i] is the exponent of n
    /// on generator i, or NON_UNIT on the whole row when gcd(n, q) > 1.
    /// For the trivial group (r = 0) one column marks unit membership.
    dlog: Vec<u32>,
    /// lcm of the orders; angle arithmetic is done mod this.
    angle_denom: u64,
    /// roots[j] = e(j / angle_denom).
    roots: Vec<Complex64>,
}

impl GroupCore {
    fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Exact angle numerator of chi(n) as a multiple of 1/angle_denom,
    /// or None when n is not a unit.
    fn angle_num(&self, exponents: &[u64], n: u64) -> Option<u64> {
        let n = (n % self.modulus) as usize;
        let r = self.rank();
        if r == 0 {
            let row = self.dlog[n];
            return (row != NON_UNIT).then_some(0);
        }
        let row = &self.dlog[n * r..(n + 1) * r];
        if row[0] == NON_UNIT {
            return None;
        }
        let mut num: u64 = 0;
        for i in 0..r {
            let stride = self.angle_denom / self.orders[i];
            let term = exponents[i] * row[i] as u64 % self.angle_denom * stride % self.angle_denom;
            num = (num + term) % self.angle_denom;
        }
        Some(num)
    }
}

/// A Dirichlet character mod q, addressed as `q.index`.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    core: Arc<GroupCore>,
    exponents: Vec<u64>,
    index: usize,
    conductor: u64,
    parity: u8,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.core.modulus
    }

    /// Position in the canonical ordering of the group.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Stable name used in CLI output and cache files.
    pub fn label(&self) -> String {
        format!("{}.{}", self.core.modulus, self.index)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.core.modulus
    }

    /// 0 for even characters (χ(−1) = 1), 1 for odd.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    /// True when every value is real, i.e. the character equals its
    /// conjugate.
    pub fn is_real(&self) -> bool {
        self.exponents
            .iter()
            .zip(&self.core.orders)
            .all(|(&k, &d)| (2 * k) % d == 0)
    }

    /// χ(n): an exact root of unity on units, 0 elsewhere.
    #[inline]
    pub fn eval(&self, n: u64) -> Complex64 {
        match self.core.angle_num(&self.exponents, n) {
            Some(num) => self.core.roots[num as usize],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// The value table on 0..q, materialized on demand.
    pub fn values(&self) -> Vec<Complex64> {
        (0..self.core.modulus).map(|n| self.eval(n)).collect()
    }
}

/// All φ(q) characters of modulus q.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    core: Arc<GroupCore>,
    characters: Vec<DirichletCharacter>,
    phi: u64,
}

impl CharacterGroup {
    pub fn modulus(&self) -> u64 {
        self.core.modulus
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    pub fn by_index(&self, index: usize) -> &DirichletCharacter {
        &self.characters[index]
    }

    pub fn principal(&self) -> &DirichletCharacter {
        &self.characters[0]
    }

    /// Index of the conjugate character.
    pub fn conjugate_index(&self, index: usize) -> usize {
        let chi = &self.characters[index];
        let conj: Vec<u64> = chi
            .exponents
            .iter()
            .zip(&self.core.orders)
            .map(|(&k, &d)| (d - k) % d)
            .collect();
        rank_of(&conj, &self.core.orders)
    }
}

fn rank_of(exponents: &[u64], orders: &[u64]) -> usize {
    let mut idx: u64 = 0;
    for (&k, &d) in exponents.iter().zip(orders) {
        idx = idx * d + k;
    }
    idx as usize
}

/// E(χ): 1 for principal characters, 0 otherwise.
pub fn principal_indicator(chi: &DirichletCharacter) -> u8 {
    u8::from(chi.is_principal())
}

/// Euler's totient by trial factorization.
pub fn euler_phi(mut n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pe = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pe *= p;
            }
            phi *= pe - pe / p;
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Smallest primitive root mod p^e for odd prime p.
fn primitive_root(pe: u64, p: u64) -> u64 {
    let phi = pe - pe / p;
    let prime_factors: Vec<u64> = factorize(phi).into_iter().map(|(f, _)| f).collect();
    'candidates: for g in 2..pe {
        if gcd(g, pe) != 1 {
            continue;
        }
        for &f in &prime_factors {
            if mod_pow(g, phi / f, pe) == 1 {
                continue 'candidates;
            }
        }
        return g;
    }
    unreachable!("odd prime powers always have primitive roots");
}

/// One cyclic CRT component of (Z/qZ)^*.
struct Component {
    prime_power: u64,
    /// (generator residue mod prime_power, order)
    gens: Vec<(u64, u64)>,
}

fn build_components(q: u64) -> Vec<Component> {
    factorize(q)
        .into_iter()
        .map(|(p, e)| {
            let pe = p.pow(e);
            let gens = if p == 2 {
                match e {
                    1 => Vec::new(),
                    2 => vec![(3, 2)],
                    _ => vec![(pe - 1, 2), (5, 1u64 << (e - 2))],
                }
            } else {
                let g = primitive_root(pe, p);
                vec![(g, pe - pe / p)]
            };
            Component {
                prime_power: pe,
                gens,
            }
        })
        .collect()
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Constructs the full character group mod q.
pub fn build_group(q: u64) -> Result<CharacterGroup> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let components = build_components(q);

    // CRT-lift generators to residues mod q (≡ 1 on the other components).
    let mut generators: Vec<u64> = Vec::new();
    let mut orders: Vec<u64> = Vec::new();
    for c in &components {
        let other = q / c.prime_power;
        for &(g, d) in &c.gens {
            let lifted = if other == 1 {
                g
            } else {
                (1..q)
                    .find(|&x| x % c.prime_power == g && x % other == 1 % other)
                    .expect("CRT lift exists")
            };
            generators.push(lifted);
            orders.push(d);
        }
    }
    let r = orders.len();
    let phi: u64 = orders.iter().product();
    let angle_denom = orders.iter().fold(1u64, |acc, &d| lcm(acc, d));

    // Discrete logs of every unit mod q, by walking the full group once.
    let size = q as usize * r.max(1);
    let mut dlog = vec![NON_UNIT; size];
    if r == 0 {
        for n in 0..q {
            if q == 1 || gcd(n, q) == 1 {
                dlog[n as usize] = 0;
            }
        }
    } else {
        let mut exps = vec![0u32; r];
        let mut x = 1u64;
        // Enumerate mixed-radix tuples in odometer order, maintaining the
        // product x = prod generators[i]^exps[i] incrementally.
        loop {
            dlog[x as usize * r..(x as usize + 1) * r].copy_from_slice(&exps);
            // increment
            let mut i = r;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                exps[i] += 1;
                x = (x as u128 * generators[i] as u128 % q as u128) as u64;
                if (exps[i] as u64) < orders[i] {
                    break;
                }
                // roll over: exps[i] stepping from orders[i]-1 to 0 has
                // already multiplied x by g_i, completing the cycle g^d = 1.
                exps[i] = 0;
                if i == 0 {
                    return finish_group(q, generators, orders, dlog, angle_denom, phi);
                }
            }
        }
    }
    finish_group(q, generators, orders, dlog, angle_denom, phi)
}

fn finish_group(
    q: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    dlog: Vec<u32>,
    angle_denom: u64,
    phi: u64,
) -> Result<CharacterGroup> {
    let roots: Vec<Complex64> = (0..angle_denom)
        .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / angle_denom as f64))
        .collect();

    let core = Arc::new(GroupCore {
        modulus: q,
        generators,
        orders,
        dlog,
        angle_denom,
        roots,
    });

    let divisors: Vec<u64> = (1..=q).filter(|d| q.is_multiple_of(*d)).collect();
    let mut characters = Vec::with_capacity(phi as usize);
    for index in 0..phi {
        let exponents = unrank(index, &core.orders);
        let conductor = conductor_of(&core, &exponents, &divisors);
        let parity = parity_of(&core, &exponents, q);
        characters.push(DirichletCharacter {
            core: Arc::clone(&core),
            exponents,
            index: index as usize,
            conductor,
            parity,
        });
    }

    Ok(CharacterGroup {
        core,
        characters,
        phi,
    })
}

fn unrank(mut index: u64, orders: &[u64]) -> Vec<u64> {
    let mut exps = vec![0u64; orders.len()];
    for i in (0..orders.len()).rev() {
        exps[i] = index % orders[i];
        index /= orders[i];
    }
    exps
}

fn conductor_of(core: &GroupCore, exponents: &[u64], divisors: &[u64]) -> u64 {
    let q = core.modulus;
    'divisors: for &d in divisors {
        // chi is induced mod d iff chi(n) = 1 for every unit n ≡ 1 (mod d).
        let mut n = 1 + d;
        while n <= q {
            if let Some(num) = core.angle_num(exponents, n % q) {
                if num != 0 {
                    continue 'divisors;
                }
            }
            n += d;
        }
        return d;
    }
    q
}

fn parity_of(core: &GroupCore, exponents: &[u64], q: u64) -> u8 {
    if q <= 2 {
        return 0;
    }
    match core.angle_num(exponents, q - 1) {
        Some(0) => 0,
        Some(_) => 1,
        None => unreachable!("-1 is always a unit"),
    }
}

/// The conductor q* of chi together with the primitive character mod q*
/// that induces it. The two agree on every n coprime to q.
pub fn conductor_and_primitive(chi: &DirichletCharacter) -> Result<(u64, DirichletCharacter)> {
    let qstar = chi.conductor;
    if qstar == chi.modulus() {
        return Ok((qstar, chi.clone()));
    }
    let star_group = build_group(qstar)?;
    let q = chi.modulus();
    let l = chi.core.angle_denom;
    let mut exps = Vec::with_capacity(star_group.core.orders.len());
    for (i, &gstar) in star_group.core.generators.iter().enumerate() {
        // Lift the conductor-level generator to a unit mod q in the same
        // class mod qstar; chi* must take chi's value there.
        let mut n = gstar;
        while gcd(n % q, q) != 1 {
            n += qstar;
        }
        let num = chi
            .core
            .angle_num(&chi.exponents, n % q)
            .expect("lift is a unit");
        let d = star_group.core.orders[i];
        debug_assert_eq!(num * d % l, 0, "induced character value has exact order");
        exps.push(num * d / l % d);
    }
    let index = rank_of(&exps, &star_group.core.orders);
    Ok((qstar, star_group.characters[index].clone()))
}

/// τ(χ) = Σ_{n mod q} χ(n) e(n/q). Defined for primitive characters;
/// |τ(χ)| = √q when χ is nonprincipal primitive, and τ = 1 for modulus 1.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::InvalidArgument(format!(
            "gauss sum requires a primitive character, {} has conductor {}",
            chi.label(),
            chi.conductor()
        )));
    }
    let q = chi.modulus();
    if q == 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut acc = ComplexKahanSum::new();
    for n in 0..q {
        let v = chi.eval(n);
        if v.re != 0.0 || v.im != 0.0 {
            acc.add(v * Complex64::from_polar(1.0, TAU * n as f64 / q as f64));
        }
    }
    Ok(acc.value())
}
