//! Exact integer arithmetic: factorization, the divisor sum, CRT recombination
//! and root counts for the two quadratic congruences that govern stability.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs sorted by prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Prime powers `p^alpha` in ascending prime order.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, a)| p.pow(a))
    }

    pub fn value(&self) -> u64 {
        self.prime_powers().product()
    }
}

impl IntoIterator for Factorization {
    type Item = (u64, u32);
    type IntoIter = std::vec::IntoIter<(u64, u32)>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut pairs = Vec::new();
    let mut rest = m;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            pairs.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization(pairs))
}

/// Sum of the positive divisors of `m`, via `prod (p^(a+1) - 1) / (p - 1)`.
pub fn sigma(m: u64) -> Result<u64> {
    let f = factorize(m)?;
    Ok(f.pairs()
        .iter()
        .map(|&(p, a)| (p.pow(a + 1) - 1) / (p - 1))
        .product())
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `0..m`.
#[inline]
pub fn reduce(v: i64, m: u64) -> u64 {
    (v as i128).rem_euclid(m as i128) as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// CRT idempotents for the prime-power decomposition of `m`: for each `q = p^a`
/// the residue `e` with `e = 1 mod q` and `e = 0 mod m/q`.
pub fn crt_idempotents(m: u64) -> Result<Vec<(u64, u64)>> {
    let f = factorize(m)?;
    Ok(f.prime_powers()
        .map(|q| {
            let cof = m / q;
            // cof is a unit mod q since the prime powers are coprime
            let inv = inv_mod(cof % q, q).unwrap_or(0);
            (q, mul_mod(cof, inv, m))
        })
        .collect())
}

/// Recombines residues `r_k mod q_k` over pairwise-coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> Option<(u64, u64)> {
    let mut acc = (0u64, 1u64);
    for &(r, q) in residues {
        let (a, m) = acc;
        let inv = inv_mod(m % q, q)?;
        // x = a + m * t with t = (r - a) / m mod q
        let diff = reduce(r as i64 - (a % q) as i64, q);
        let t = mul_mod(diff, inv, q);
        let modulus = m.checked_mul(q)?;
        acc = ((a as u128 + m as u128 * t as u128) as u64 % modulus, modulus);
    }
    Some(acc)
}

/// The two quadratic congruences that decide stability under order-3 and
/// order-4 automorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CongruenceKind {
    /// `z^2 - z + 1`
    ZSqMinusZPlus1,
    /// `z^2 + 1`
    ZSqPlus1,
}

impl CongruenceKind {
    pub fn eval(self, z: u64, modulus: u64) -> u64 {
        let sq = mul_mod(z, z, modulus);
        match self {
            CongruenceKind::ZSqMinusZPlus1 => (sq + modulus - z % modulus + 1) % modulus,
            CongruenceKind::ZSqPlus1 => (sq + 1) % modulus,
        }
    }

    /// All residues `z` in `0..modulus` with `f(z) = 0 mod modulus`, by exhaustive scan.
    pub fn roots_by_scan(self, modulus: u64) -> Vec<u64> {
        (0..modulus).filter(|&z| self.eval(z, modulus) == 0).collect()
    }
}

/// Number of roots of the congruence in `Z/p^beta`. For `beta = 0` the ring is
/// trivial and its single residue counts as a root.
pub fn count_congruence_roots(kind: CongruenceKind, p: u64, beta: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if beta == 0 {
        return Ok(1);
    }
    Ok(match kind {
        CongruenceKind::ZSqMinusZPlus1 => match (p, p % 3) {
            (3, _) => u64::from(beta == 1),
            (_, 1) => 2,
            _ => 0,
        },
        // -1 is a square mod p^beta (p odd) iff it is a square mod p, i.e. p = 1 mod 4
        CongruenceKind::ZSqPlus1 => match (p, p % 4) {
            (2, _) => u64::from(beta == 1),
            (_, 1) => 2,
            _ => 0,
        },
    })
}
