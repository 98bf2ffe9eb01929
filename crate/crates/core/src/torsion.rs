//! The m-torsion group `E[m] = (Z/mZ)^2`, the integer matrices through which
//! origin-fixing automorphisms act on it, and order-m subgroups in the
//! canonical per-prime form `S_{x,i} = <(p^i, x), (0, p^(a-i))>`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{crt_idempotents, factorize, mul_mod, reduce};

/// Closure-oracle bound: `m^4` generator pairs are tried for each `m`.
pub const DEFAULT_ORACLE_BOUND: u64 = 12;

/// An element of `(Z/mZ)^2`.
pub type Elem = (u64, u64);

/// Order of an origin-fixing automorphism of an elliptic curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub enum Ell {
    Two,
    Three,
    Four,
    Six,
}

impl Ell {
    pub const ALL: [Ell; 4] = [Ell::Two, Ell::Three, Ell::Four, Ell::Six];

    pub fn order(self) -> u64 {
        match self {
            Ell::Two => 2,
            Ell::Three => 3,
            Ell::Four => 4,
            Ell::Six => 6,
        }
    }

    /// Integer matrix of the automorphism on a basis of the lattice.
    pub fn integer_matrix(self) -> Mat2 {
        match self {
            Ell::Two => Mat2::new(-1, 0, 0, -1),
            Ell::Three => Mat2::new(0, -1, 1, -1),
            Ell::Four => Mat2::new(0, -1, 1, 0),
            Ell::Six => Mat2::new(0, 1, -1, 1),
        }
    }
}

impl TryFrom<u64> for Ell {
    type Error = Error;

    fn try_from(v: u64) -> Result<Self> {
        match v {
            2 => Ok(Ell::Two),
            3 => Ok(Ell::Three),
            4 => Ok(Ell::Four),
            6 => Ok(Ell::Six),
            other => Err(Error::InvalidEll(other)),
        }
    }
}

impl From<Ell> for u64 {
    fn from(e: Ell) -> u64 {
        e.order()
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.order(), f)
    }
}

/// 2x2 integer matrix `[[a, b], [c, d]]` acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn scale(self, k: i64) -> Self {
        Mat2::new(k * self.a, k * self.b, k * self.c, k * self.d)
    }

    pub fn add(self, o: Mat2) -> Self {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }

    pub fn mul(self, o: Mat2) -> Self {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(Mat2::IDENTITY, |acc, _| acc.mul(self))
    }

    pub fn det(self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn reduce(self, m: u64) -> Mat2 {
        let r = |v: i64| reduce(v, m) as i64;
        Mat2::new(r(self.a), r(self.b), r(self.c), r(self.d))
    }
}

/// An order-`ell` automorphism of `E[m]`, as its matrix reduced mod `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AutAction {
    ell: Ell,
    modulus: u64,
    matrix: Mat2,
}

pub fn aut_action(ell: Ell, m: u64) -> Result<AutAction> {
    if m == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(AutAction { ell, modulus: m, matrix: ell.integer_matrix().reduce(m) })
}

impl AutAction {
    pub fn ell(&self) -> Ell {
        self.ell
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Entries in `0..m`.
    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }

    pub fn apply(&self, (u, v): Elem) -> Elem {
        let m = self.modulus;
        let Mat2 { a, b, c, d } = self.matrix;
        let (a, b, c, d) = (a as u64, b as u64, c as u64, d as u64);
        ((mul_mod(a, u, m) + mul_mod(b, v, m)) % m, (mul_mod(c, u, m) + mul_mod(d, v, m)) % m)
    }
}

/// All elements of the subgroup of `(Z/mZ)^2` generated by `gens`, sorted.
pub fn closure(m: u64, gens: &[Elem]) -> Vec<Elem> {
    let size = (m * m) as usize;
    let mut seen = vec![false; size];
    let idx = |(u, v): Elem| (u * m + v) as usize;
    let gens: Vec<Elem> = gens.iter().map(|&(u, v)| (u % m, v % m)).collect();
    let zero = (0, 0);
    seen[idx(zero)] = true;
    let mut queue = VecDeque::from([zero]);
    let mut out = vec![zero];
    while let Some((u, v)) = queue.pop_front() {
        for &(gu, gv) in &gens {
            let next = ((u + gu) % m, (v + gv) % m);
            if !seen[idx(next)] {
                seen[idx(next)] = true;
                out.push(next);
                queue.push_back(next);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Canonical coordinates `(i, x)` of the `p`-primary part, a subgroup of
/// `(Z/p^alpha)^2` of order `p^alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimeCoord {
    pub p: u64,
    pub alpha: u32,
    pub i: u32,
    pub x: u64,
}

impl PrimeCoord {
    pub fn prime_power(&self) -> u64 {
        self.p.pow(self.alpha)
    }

    /// `(p^i, x)` and `(0, p^(alpha-i))` in `Z/p^alpha`.
    pub fn generators(&self) -> [Elem; 2] {
        let q = self.prime_power();
        [(self.p.pow(self.i) % q, self.x), (0, self.p.pow(self.alpha - self.i) % q)]
    }

    fn contains(&self, (u, v): Elem) -> bool {
        let q = self.prime_power();
        let (u, v) = (u % q, v % q);
        let step = self.p.pow(self.i);
        if u % step != 0 {
            return false;
        }
        let tail = self.p.pow(self.alpha - self.i);
        let k = (u / step) % tail;
        mul_mod(k, self.x, tail) == v % tail
    }
}

/// An order-m subgroup of `(Z/mZ)^2`. Identity (equality, ordering, hashing)
/// is the sorted element list; generators and prime coordinates are bookkeeping.
#[derive(Debug, Clone)]
pub struct TorsionSubgroup {
    modulus: u64,
    coords: Vec<PrimeCoord>,
    generators: Vec<Elem>,
    elements: OnceLock<Vec<Elem>>,
}

impl TorsionSubgroup {
    /// Builds the subgroup whose `p`-part is `S_{x,i}` for each coordinate.
    pub(crate) fn from_coords(m: u64, coords: Vec<PrimeCoord>) -> Result<Self> {
        let generators = combine_generators(m, &coords)?;
        Ok(TorsionSubgroup { modulus: m, coords, generators: generators.to_vec(), elements: OnceLock::new() })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.coords.iter().map(PrimeCoord::prime_power).product()
    }

    pub fn prime_coords(&self) -> &[PrimeCoord] {
        &self.coords
    }

    /// The generating set this value was built from.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// The two CRT-combined canonical generators.
    pub fn canonical_generators(&self) -> [Elem; 2] {
        // coords were validated at construction
        combine_generators(self.modulus, &self.coords).expect("valid coordinates")
    }

    /// Sorted element fingerprint.
    pub fn elements(&self) -> &[Elem] {
        self.elements.get_or_init(|| closure(self.modulus, &self.generators))
    }

    pub fn contains(&self, v: Elem) -> bool {
        self.coords.iter().all(|c| c.contains(v))
    }
}

impl PartialEq for TorsionSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.elements() == other.elements()
    }
}

impl Eq for TorsionSubgroup {}

impl Hash for TorsionSubgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
        self.elements().hash(state);
    }
}

impl PartialOrd for TorsionSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TorsionSubgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus.cmp(&other.modulus).then_with(|| self.elements().cmp(other.elements()))
    }
}

fn combine_generators(m: u64, coords: &[PrimeCoord]) -> Result<[Elem; 2]> {
    let idem = crt_idempotents(m)?;
    let mut g = [(0u64, 0u64); 2];
    for c in coords {
        let q = c.prime_power();
        let e = idem
            .iter()
            .find(|&&(qq, _)| qq == q)
            .map(|&(_, e)| e)
            .ok_or(Error::Canonicalization { m, order: 0 })?;
        for (slot, (u, v)) in g.iter_mut().zip(c.generators()) {
            slot.0 = (slot.0 + mul_mod(e, u, m)) % m;
            slot.1 = (slot.1 + mul_mod(e, v, m)) % m;
        }
    }
    Ok(g)
}

/// Recovers per-prime `(i, x)` coordinates of an order-m element set.
fn canonicalize(m: u64, elements: &[Elem]) -> Result<Vec<PrimeCoord>> {
    let fail = || Error::Canonicalization { m, order: elements.len() as u64 };
    let mut coords = Vec::new();
    for (p, alpha) in factorize(m)? {
        let q = p.pow(alpha);
        let part: BTreeSet<Elem> = elements.iter().map(|&(u, v)| (u % q, v % q)).collect();
        if part.len() as u64 != q {
            return Err(fail());
        }
        let valuation = |u: u64| {
            if u == 0 {
                return alpha;
            }
            let (mut u, mut k) = (u, 0);
            while u % p == 0 {
                u /= p;
                k += 1;
            }
            k
        };
        let i = part.iter().map(|&(u, _)| valuation(u)).min().unwrap_or(alpha);
        let lead = p.pow(i) % q;
        let tail = p.pow(alpha - i);
        let x = part.iter().find(|&&(u, _)| u == lead).map(|&(_, v)| v % tail).ok_or_else(fail)?;
        let coord = PrimeCoord { p, alpha, i, x };
        if !part.iter().all(|&e| coord.contains(e)) {
            return Err(fail());
        }
        coords.push(coord);
    }
    Ok(coords)
}

/// The subgroup generated by `gens`; it must have order exactly `m`.
pub fn subgroup_from_generators(m: u64, gens: &[Elem]) -> Result<TorsionSubgroup> {
    if m == 0 {
        return Err(Error::ZeroArgument);
    }
    let elements = closure(m, gens);
    if elements.len() as u64 != m {
        return Err(Error::Canonicalization { m, order: elements.len() as u64 });
    }
    let coords = canonicalize(m, &elements)?;
    let generators = gens.iter().map(|&(u, v)| (u % m, v % m)).collect();
    Ok(TorsionSubgroup { modulus: m, coords, generators, elements: OnceLock::from(elements) })
}

/// Whether `A` maps every generator of `S` back into `S`.
pub fn is_stable(s: &TorsionSubgroup, a: &AutAction) -> Result<bool> {
    if s.modulus != a.modulus {
        return Err(Error::ModulusMismatch { subgroup: s.modulus, action: a.modulus });
    }
    Ok(s.generators.iter().all(|&g| s.contains(a.apply(g))))
}

pub fn closure_oracle_enumerate(m: u64) -> Result<Vec<TorsionSubgroup>> {
    closure_oracle_enumerate_with_bound(m, DEFAULT_ORACLE_BOUND)
}

/// Every order-m subgroup, found by closing all ordered generator pairs.
/// Sorted by fingerprint.
pub fn closure_oracle_enumerate_with_bound(m: u64, bound: u64) -> Result<Vec<TorsionSubgroup>> {
    if m == 0 {
        return Err(Error::ZeroArgument);
    }
    if m > bound {
        return Err(Error::BoundExceeded { what: "oracle", m, bound });
    }
    let all: Vec<Elem> = (0..m).flat_map(|u| (0..m).map(move |v| (u, v))).collect();
    let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut out = Vec::new();
    for &g1 in &all {
        for &g2 in &all {
            let elements = closure(m, &[g1, g2]);
            if elements.len() as u64 == m && !found.contains(&elements) {
                found.insert(elements);
                out.push(subgroup_from_generators(m, &[g1, g2])?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Per-prime candidate coordinates for the constructive enumerations.
pub(crate) fn combine_prime_choices(m: u64, per_prime: Vec<Vec<PrimeCoord>>) -> Result<Vec<TorsionSubgroup>> {
    let mut combos: Vec<Vec<PrimeCoord>> = vec![Vec::new()];
    for choices in per_prime {
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    combos.into_iter().map(|coords| TorsionSubgroup::from_coords(m, coords)).collect()
}

/// All order-m subgroups from the `S_{x,i}` parametrization, in
/// lexicographic `(prime, i, x)` order.
pub fn enumerate_order_m_subgroups(m: u64) -> Result<Vec<TorsionSubgroup>> {
    let per_prime = factorize(m)?
        .into_iter()
        .map(|(p, alpha)| {
            (0..=alpha)
                .flat_map(|i| (0..p.pow(alpha - i)).map(move |x| PrimeCoord { p, alpha, i, x }))
                .collect()
        })
        .collect();
    combine_prime_choices(m, per_prime)
}
