//! Short Weierstrass curves over small prime fields, used as executable
//! witnesses: the origin-fixing automorphisms, translation subgroups and the
//! affine groups `G_{H,xi,q} = <mu_{xi,q}, H>` acting on actual points.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::modarith::{factorize, is_prime, mul_mod, pow_mod};
use crate::stable_count::JClass;
use crate::torsion::Ell;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine(u64, u64),
}

/// `y^2 = x^3 + a x + b` over `F_p`, with the root of unity realizing its
/// extra automorphisms when `j` is 0 or 1728.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    p: u64,
    a: u64,
    b: u64,
    j: JClass,
    zeta: Option<u64>,
}

/// Key identifying an affine map `x -> xi^i x + c` of the curve: its linear
/// part `i` and its values at infinity and at a fixed probe point.
pub type MapKey = (u32, CurvePoint, CurvePoint);

impl CurveModel {
    pub fn new(p: u64, a: u64, b: u64) -> Result<Self> {
        if p < 5 || !is_prime(p) {
            return Err(Error::UnsupportedField(p));
        }
        let (a, b) = (a % p, b % p);
        let disc = (4 * mul_mod(a, mul_mod(a, a, p), p) + 27 * mul_mod(b, b, p)) % p;
        if disc == 0 {
            return Err(Error::SingularCurve(p));
        }
        let (j, zeta) = if a == 0 {
            if p % 3 != 1 {
                return Err(Error::AutomorphismNotRational { ell: 3, p, a, b });
            }
            (JClass::J0, Some(root_of_unity(p, 3)))
        } else if b == 0 {
            if p % 4 != 1 {
                return Err(Error::AutomorphismNotRational { ell: 4, p, a, b });
            }
            (JClass::J1728, Some(root_of_unity(p, 4)))
        } else {
            (JClass::Generic, None)
        };
        Ok(CurveModel { p, a, b, j, zeta })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn j(&self) -> JClass {
        self.j
    }

    pub fn zeta(&self) -> Option<u64> {
        self.zeta
    }

    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        (mul_mod(x, mul_mod(x, x, p), p) + mul_mod(self.a, x, p) + self.b) % p
    }

    pub fn is_on_curve(&self, pt: &CurvePoint) -> bool {
        match *pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => x < self.p && y < self.p && mul_mod(y, y, self.p) == self.rhs(x),
        }
    }

    pub fn point(&self, x: u64, y: u64) -> Result<CurvePoint> {
        let pt = CurvePoint::Affine(x % self.p, y % self.p);
        self.check(&pt)?;
        Ok(pt)
    }

    fn check(&self, pt: &CurvePoint) -> Result<()> {
        if self.is_on_curve(pt) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// Every rational point, infinity first.
    pub fn points(&self) -> Vec<CurvePoint> {
        let p = self.p;
        let mut roots: Vec<Vec<u64>> = vec![Vec::new(); p as usize];
        for y in 0..p {
            roots[mul_mod(y, y, p) as usize].push(y);
        }
        let mut out = vec![CurvePoint::Infinity];
        for x in 0..p {
            out.extend(roots[self.rhs(x) as usize].iter().map(|&y| CurvePoint::Affine(x, y)));
        }
        out
    }

    pub fn neg(&self, pt: &CurvePoint) -> CurvePoint {
        match *pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x, (self.p - y) % self.p),
        }
    }

    pub(crate) fn add(&self, lhs: &CurvePoint, rhs: &CurvePoint) -> CurvePoint {
        let p = self.p;
        let (x1, y1, x2, y2) = match (*lhs, *rhs) {
            (CurvePoint::Infinity, q) | (q, CurvePoint::Infinity) => return q,
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return CurvePoint::Infinity;
            }
            let num = (3 * mul_mod(x1, x1, p) + self.a) % p;
            mul_mod(num, self.inv(2 * y1 % p), p)
        } else {
            mul_mod((y2 + p - y1) % p, self.inv((x2 + p - x1) % p), p)
        };
        let x3 = (mul_mod(lambda, lambda, p) + 2 * p - x1 - x2) % p;
        let y3 = (mul_mod(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
        CurvePoint::Affine(x3, y3)
    }

    pub(crate) fn sub(&self, lhs: &CurvePoint, rhs: &CurvePoint) -> CurvePoint {
        self.add(lhs, &self.neg(rhs))
    }

    pub(crate) fn mul(&self, k: i64, pt: &CurvePoint) -> CurvePoint {
        let mut base = if k < 0 { self.neg(pt) } else { *pt };
        let mut k = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn inv(&self, v: u64) -> u64 {
        pow_mod(v, self.p - 2, self.p)
    }

    pub fn point_add(&self, lhs: &CurvePoint, rhs: &CurvePoint) -> Result<CurvePoint> {
        self.check(lhs)?;
        self.check(rhs)?;
        Ok(self.add(lhs, rhs))
    }

    /// `k * P` by double-and-add.
    pub fn scalar_mul(&self, k: i64, pt: &CurvePoint) -> Result<CurvePoint> {
        self.check(pt)?;
        Ok(self.mul(k, pt))
    }

    fn require(&self, ell: Ell) -> Result<()> {
        if self.j.admits(ell) {
            Ok(())
        } else {
            let class = match self.j {
                JClass::Generic => "generic",
                JClass::J0 => "j = 0",
                JClass::J1728 => "j = 1728",
            };
            Err(Error::InadmissibleEll { ell: ell.order(), class })
        }
    }

    fn aut(&self, ell: Ell, pt: &CurvePoint) -> CurvePoint {
        let p = self.p;
        let (x, y) = match *pt {
            CurvePoint::Infinity => return CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => (x, y),
        };
        let zeta = self.zeta.unwrap_or(1);
        let neg = |v: u64| (p - v) % p;
        match ell {
            Ell::Two => CurvePoint::Affine(x, neg(y)),
            Ell::Three => CurvePoint::Affine(mul_mod(zeta, x, p), y),
            Ell::Six => CurvePoint::Affine(mul_mod(zeta, x, p), neg(y)),
            Ell::Four => CurvePoint::Affine(neg(x), mul_mod(zeta, y, p)),
        }
    }

    /// The origin-fixing automorphism `xi` of order `ell`.
    pub fn apply_aut(&self, ell: Ell, pt: &CurvePoint) -> Result<CurvePoint> {
        self.require(ell)?;
        self.check(pt)?;
        Ok(self.aut(ell, pt))
    }

    fn mu_unchecked(&self, ell: Ell, q: &CurvePoint, pt: &CurvePoint) -> CurvePoint {
        self.add(&self.aut(ell, pt), q)
    }

    /// `mu_{xi,q}(P) = xi P + q`.
    pub fn mu(&self, ell: Ell, q: &CurvePoint, pt: &CurvePoint) -> Result<CurvePoint> {
        self.require(ell)?;
        self.check(q)?;
        self.check(pt)?;
        Ok(self.mu_unchecked(ell, q, pt))
    }

    fn epsilon(&self, ell: Ell, m: u64, q: &CurvePoint) -> CurvePoint {
        let m = m as i64;
        match ell {
            Ell::Two => self.mul(m, q),
            Ell::Three => {
                let inner = self.add(&self.mul(2, q), &self.aut(ell, q));
                self.mul(m, &inner)
            }
            Ell::Four => {
                let inner = self.add(q, &self.aut(ell, q));
                self.mul(2 * m, &inner)
            }
            Ell::Six => self.mul(6 * m, &self.aut(ell, q)),
        }
    }

    /// `epsilon_{xi,m}(q)`: `mq`, `m(2+xi)q`, `2m(1+xi)q` or `6m xi q`.
    pub fn epsilon_apply(&self, ell: Ell, m: u64, q: &CurvePoint) -> Result<CurvePoint> {
        self.require(ell)?;
        self.check(q)?;
        Ok(self.epsilon(ell, m, q))
    }

    /// Rational points of order dividing `m`.
    pub fn torsion_points(&self, m: u64) -> Vec<CurvePoint> {
        self.points().into_iter().filter(|pt| self.mul(m as i64, pt) == CurvePoint::Infinity).collect()
    }

    fn has_exact_order(&self, pt: &CurvePoint, m: u64) -> Result<bool> {
        if self.mul(m as i64, pt) != CurvePoint::Infinity {
            return Ok(false);
        }
        Ok(factorize(m)?.pairs().iter().all(|&(q, _)| self.mul((m / q) as i64, pt) != CurvePoint::Infinity))
    }

    /// A basis `(P1, P2)` of `E[m]`, which must be fully rational.
    pub fn torsion_basis(&self, m: u64) -> Result<(CurvePoint, CurvePoint)> {
        if m == 0 {
            return Err(Error::ZeroArgument);
        }
        let torsion = self.torsion_points(m);
        if torsion.len() as u64 != m * m {
            return Err(Error::TorsionNotRational { m, found: torsion.len() as u64 });
        }
        if m == 1 {
            return Ok((CurvePoint::Infinity, CurvePoint::Infinity));
        }
        for p1 in &torsion {
            if !self.has_exact_order(p1, m)? {
                continue;
            }
            for p2 in &torsion {
                let span: BTreeSet<CurvePoint> = (0..m as i64)
                    .flat_map(|i| (0..m as i64).map(move |k| (i, k)))
                    .map(|(i, k)| self.add(&self.mul(i, p1), &self.mul(k, p2)))
                    .collect();
                if span.len() as u64 == m * m {
                    return Ok((*p1, *p2));
                }
            }
        }
        Err(Error::TorsionNotRational { m, found: torsion.len() as u64 })
    }

    /// Subgroup generated by `gens`.
    pub fn span(&self, gens: &[CurvePoint]) -> BTreeSet<CurvePoint> {
        let mut out = BTreeSet::from([CurvePoint::Infinity]);
        let mut queue = VecDeque::from([CurvePoint::Infinity]);
        while let Some(pt) = queue.pop_front() {
            for g in gens {
                let next = self.add(&pt, g);
                if out.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        out
    }

    /// All order-m subgroups of the rational `E[m]`, via closures of point pairs.
    pub fn torsion_subgroups(&self, m: u64) -> Result<Vec<BTreeSet<CurvePoint>>> {
        let torsion = self.torsion_points(m);
        if torsion.len() as u64 != m * m {
            return Err(Error::TorsionNotRational { m, found: torsion.len() as u64 });
        }
        let mut found = BTreeSet::new();
        for p1 in &torsion {
            for p2 in &torsion {
                let s = self.span(&[*p1, *p2]);
                if s.len() as u64 == m {
                    found.insert(s);
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    pub fn is_stable(&self, ell: Ell, h: &BTreeSet<CurvePoint>) -> Result<bool> {
        self.require(ell)?;
        Ok(h.iter().all(|pt| h.contains(&self.aut(ell, pt))))
    }

    /// The `xi`-stable order-m subgroups of the rational `E[m]`.
    pub fn stable_torsion_subgroups(&self, ell: Ell, m: u64) -> Result<Vec<BTreeSet<CurvePoint>>> {
        self.require(ell)?;
        let mut out = Vec::new();
        for s in self.torsion_subgroups(m)? {
            if self.is_stable(ell, &s)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    fn check_translation_group(&self, ell: Ell, h: &BTreeSet<CurvePoint>) -> Result<()> {
        self.require(ell)?;
        if !h.iter().all(|pt| self.is_on_curve(pt)) {
            return Err(Error::NotOnCurve);
        }
        if !h.contains(&CurvePoint::Infinity) || !h.iter().all(|x| h.iter().all(|y| h.contains(&self.add(x, y)))) {
            return Err(Error::NotASubgroup);
        }
        if !self.is_stable(ell, h)? {
            return Err(Error::NotStable(ell.order()));
        }
        Ok(())
    }

    /// The maps `mu^i o t_h` for `0 <= i < ell`, `h` in `H`, each given with its
    /// tag `(i, h)` and its values at infinity and at `probe`.
    fn group_maps(&self, ell: Ell, h: &BTreeSet<CurvePoint>, q: &CurvePoint, probe: &CurvePoint) -> Vec<(MapKey, CurvePoint)> {
        let eval = |i: u32, t: &CurvePoint, x: &CurvePoint| {
            let mut v = self.add(x, t);
            for _ in 0..i {
                v = self.mu_unchecked(ell, q, &v);
            }
            v
        };
        let mut out = Vec::new();
        for i in 0..ell.order() as u32 {
            for t in h {
                let at_origin = eval(i, t, &CurvePoint::Infinity);
                out.push(((i, at_origin, eval(i, t, probe)), *t));
            }
        }
        out
    }

    /// `S(D_{H,xi,q})`: the sum of `g(0)` over `g` in `G_{H,xi,q}`.
    pub fn divisor_sum(&self, ell: Ell, h: &BTreeSet<CurvePoint>, q: &CurvePoint) -> Result<CurvePoint> {
        self.check_translation_group(ell, h)?;
        self.check(q)?;
        let maps = self.group_maps(ell, h, q, &CurvePoint::Infinity);
        if maps.len() as u64 != ell.order() * h.len() as u64 {
            return Err(Error::IdentityViolated("divisor degree differs from group order".into()));
        }
        Ok(maps.iter().fold(CurvePoint::Infinity, |acc, ((_, origin, _), _)| self.add(&acc, origin)))
    }

    /// Whether `S(D_{H,xi,q}) = epsilon_{xi,|H|}(q)`.
    pub fn divisor_sum_check(&self, ell: Ell, h: &BTreeSet<CurvePoint>, q: &CurvePoint) -> Result<bool> {
        let lhs = self.divisor_sum(ell, h, q)?;
        Ok(lhs == self.epsilon(ell, h.len() as u64, q))
    }

    fn probe(&self) -> CurvePoint {
        self.points().into_iter().nth(1).unwrap_or(CurvePoint::Infinity)
    }

    /// `G_{H,xi,q}` as a set of map keys.
    pub fn galois_group(&self, ell: Ell, h: &BTreeSet<CurvePoint>, q: &CurvePoint) -> Result<BTreeSet<MapKey>> {
        self.check_translation_group(ell, h)?;
        self.check(q)?;
        let maps = self.group_maps(ell, h, q, &self.probe());
        let keys: BTreeSet<MapKey> = maps.iter().map(|(k, _)| *k).collect();
        if keys.len() != maps.len() {
            return Err(Error::IdentityViolated("distinct tags (i, h) gave the same map".into()));
        }
        Ok(keys)
    }

    /// Whether `G_{H,xi,q} = G_{H,xi,q2}` as sets of maps. Fails if that
    /// disagrees with `q - q2` lying in `H`.
    pub fn group_equality_check(&self, ell: Ell, h: &BTreeSet<CurvePoint>, q: &CurvePoint, q2: &CurvePoint) -> Result<bool> {
        let same = self.galois_group(ell, h, q)? == self.galois_group(ell, h, q2)?;
        let in_h = h.contains(&self.sub(q, q2));
        if same != in_h {
            return Err(Error::IdentityViolated(format!(
                "group equality {same} but (q - q2 in H) is {in_h} for q = {q:?}, q2 = {q2:?}"
            )));
        }
        Ok(same)
    }
}

/// Element of exact order `k` in `F_p^*`, `k | p - 1`; smallest generator-derived choice.
fn root_of_unity(p: u64, k: u64) -> u64 {
    let e = (p - 1) / k;
    (2..p)
        .map(|g| pow_mod(g, e, p))
        .find(|&z| (1..k).filter(|d| k % d == 0).all(|d| pow_mod(z, d, p) != 1))
        .expect("k divides p - 1")
}

/// A curve together with the torsion orders `m` for which `E[m]` is rational.
#[derive(Debug, Clone)]
pub struct Witness {
    pub curve: CurveModel,
    pub full_torsion: Vec<u64>,
}

const WITNESS_TABLE: &[(u64, u64, u64, &[u64])] = &[
    (43, 0, 3, &[7]),
    (31, 0, 1, &[2, 3, 6]),
    (7, 0, 2, &[3]),
    (41, 6, 0, &[5]),
    (17, 1, 0, &[2, 4]),
    (29, 6, 16, &[2, 4]),
];

/// Desk-scale witness curves. Full rationality of each listed `E[m]` is
/// checked here, not assumed.
pub fn witness_curves() -> Result<Vec<Witness>> {
    WITNESS_TABLE
        .iter()
        .map(|&(p, a, b, ms)| {
            let curve = CurveModel::new(p, a, b)?;
            for &m in ms {
                curve.torsion_basis(m)?;
            }
            Ok(Witness { curve, full_torsion: ms.to_vec() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locus::deg_epsilon;
    use crate::stable_count::psi;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn j0() -> CurveModel {
        CurveModel::new(43, 0, 3).unwrap()
    }

    fn j1728() -> CurveModel {
        CurveModel::new(41, 6, 0).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(CurveModel::new(43, 0, 0), Err(Error::SingularCurve(43)));
        assert_eq!(CurveModel::new(9, 1, 1), Err(Error::UnsupportedField(9)));
        assert_eq!(CurveModel::new(3, 1, 1), Err(Error::UnsupportedField(3)));
        assert!(matches!(CurveModel::new(11, 0, 1), Err(Error::AutomorphismNotRational { ell: 3, .. })));
        assert!(matches!(CurveModel::new(7, 1, 0), Err(Error::AutomorphismNotRational { ell: 4, .. })));
        let e = j0();
        let z = e.zeta().unwrap();
        assert_eq!(pow_mod(z, 3, 43), 1);
        assert_ne!(z, 1);
        let e = j1728();
        let z = e.zeta().unwrap();
        assert_eq!(mul_mod(z, z, 41), 40);
        assert_eq!(CurveModel::new(29, 6, 16).unwrap().j(), JClass::Generic);
        assert_eq!(e.point(0, 1), Err(Error::NotOnCurve));
    }

    #[test]
    fn group_law_axioms() {
        let mut rng = StdRng::seed_from_u64(7);
        for e in [j0(), j1728(), CurveModel::new(29, 6, 16).unwrap(), CurveModel::new(101, 3, 7).unwrap()] {
            let pts = e.points();
            let order = pts.len() as i64;
            for _ in 0..200 {
                let (p, q, r) = (
                    *pts.choose(&mut rng).unwrap(),
                    *pts.choose(&mut rng).unwrap(),
                    *pts.choose(&mut rng).unwrap(),
                );
                assert_eq!(e.point_add(&p, &CurvePoint::Infinity).unwrap(), p);
                assert_eq!(e.add(&p, &e.neg(&p)), CurvePoint::Infinity);
                assert_eq!(e.add(&p, &q), e.add(&q, &p));
                assert_eq!(e.add(&e.add(&p, &q), &r), e.add(&p, &e.add(&q, &r)));
                assert!(e.is_on_curve(&e.add(&p, &q)));
                assert_eq!(e.scalar_mul(order, &p).unwrap(), CurvePoint::Infinity);
                assert_eq!(e.mul(-3, &p), e.neg(&e.mul(3, &p)));
            }
        }
    }

    #[test]
    fn automorphisms_have_order_ell_and_are_homomorphisms() {
        let mut rng = StdRng::seed_from_u64(11);
        for e in [j0(), j1728(), CurveModel::new(29, 6, 16).unwrap()] {
            let pts = e.points();
            for &ell in e.j().admissible() {
                for _ in 0..100 {
                    let p = *pts.choose(&mut rng).unwrap();
                    let q = *pts.choose(&mut rng).unwrap();
                    let mut v = p;
                    for _ in 0..ell.order() {
                        v = e.apply_aut(ell, &v).unwrap();
                    }
                    assert_eq!(v, p);
                    assert_eq!(e.aut(ell, &e.add(&p, &q)), e.add(&e.aut(ell, &p), &e.aut(ell, &q)));
                    // 1 + xi + ... + xi^(ell-1) = 0
                    let mut sum = CurvePoint::Infinity;
                    let mut w = p;
                    for _ in 0..ell.order() {
                        sum = e.add(&sum, &w);
                        w = e.aut(ell, &w);
                    }
                    assert_eq!(sum, CurvePoint::Infinity);
                }
                assert_eq!(e.apply_aut(ell, &CurvePoint::Infinity).unwrap(), CurvePoint::Infinity);
            }
        }
        assert!(matches!(
            j0().apply_aut(Ell::Four, &CurvePoint::Infinity),
            Err(Error::InadmissibleEll { ell: 4, .. })
        ));
    }

    #[test]
    fn mu_examples() {
        let mut rng = StdRng::seed_from_u64(3);
        let e = j0();
        let pts = e.points();
        let h_group = e.stable_torsion_subgroups(Ell::Three, 7).unwrap();
        for _ in 0..100 {
            let p = *pts.choose(&mut rng).unwrap();
            let q = *pts.choose(&mut rng).unwrap();
            assert_eq!(e.mu(Ell::Three, &CurvePoint::Infinity, &p).unwrap(), e.aut(Ell::Three, &p));
            let twice = e.mu(Ell::Two, &q, &e.mu(Ell::Two, &q, &p).unwrap()).unwrap();
            assert_eq!(twice, p);
            // mu o t_h = t_{xi h} o mu
            let h = *h_group[0].iter().collect::<Vec<_>>().choose(&mut rng).unwrap();
            let lhs = e.mu(Ell::Three, &q, &e.add(&p, h)).unwrap();
            let rhs = e.add(&e.mu(Ell::Three, &q, &p).unwrap(), &e.aut(Ell::Three, h));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn epsilon_examples() {
        let e = j0();
        assert_eq!(e.epsilon_apply(Ell::Two, 5, &CurvePoint::Infinity).unwrap(), CurvePoint::Infinity);
        for q in e.points() {
            let expect = e.add(&e.mul(2, &q), &e.aut(Ell::Three, &q));
            assert_eq!(e.epsilon_apply(Ell::Three, 1, &q).unwrap(), expect);
        }
    }

    #[test]
    fn epsilon_kernel_size_is_its_degree() {
        // (curve, ell, m) where ker epsilon_{xi,m} lies in a fully rational torsion group
        let cases = [
            (CurveModel::new(7, 0, 2).unwrap(), Ell::Three, 1),
            (CurveModel::new(31, 0, 1).unwrap(), Ell::Three, 1),
            (CurveModel::new(31, 0, 1).unwrap(), Ell::Three, 2),
            (CurveModel::new(31, 0, 1).unwrap(), Ell::Six, 1),
            (CurveModel::new(31, 0, 1).unwrap(), Ell::Two, 6),
            (CurveModel::new(43, 0, 3).unwrap(), Ell::Two, 7),
            (CurveModel::new(17, 1, 0).unwrap(), Ell::Four, 1),
            (CurveModel::new(17, 1, 0).unwrap(), Ell::Two, 4),
        ];
        for (e, ell, m) in cases {
            let kernel = e.points().iter().filter(|q| e.epsilon(ell, m, q) == CurvePoint::Infinity).count() as u64;
            assert_eq!(kernel, deg_epsilon(ell, m).unwrap(), "p {} ell {ell} m {m}", e.p());
        }
    }

    #[test]
    fn torsion_basis_examples() {
        let e = CurveModel::new(17, 1, 0).unwrap();
        assert_eq!(e.torsion_basis(1).unwrap(), (CurvePoint::Infinity, CurvePoint::Infinity));
        let (p1, p2) = e.torsion_basis(2).unwrap();
        assert_ne!(p1, p2);
        assert!(matches!(p1, CurvePoint::Affine(_, 0)) && matches!(p2, CurvePoint::Affine(_, 0)));
        let (p1, p2) = j0().torsion_basis(7).unwrap();
        assert_eq!(e.torsion_points(4).len(), 16);
        assert_eq!(j0().span(&[p1, p2]).len(), 49);

        let thin = CurveModel::new(7, 0, 1).unwrap();
        assert_eq!(thin.torsion_points(3).len(), 3);
        assert_eq!(thin.torsion_basis(3), Err(Error::TorsionNotRational { m: 3, found: 3 }));
    }

    #[test]
    fn rational_stable_subgroups_are_counted_by_psi() {
        for w in witness_curves().unwrap() {
            for &m in &w.full_torsion {
                for &ell in w.curve.j().admissible() {
                    let n = w.curve.stable_torsion_subgroups(ell, m).unwrap().len() as u64;
                    assert_eq!(n, psi(ell, w.curve.j(), m).unwrap(), "p {} ell {ell} m {m}", w.curve.p());
                }
            }
        }
    }

    #[test]
    fn divisor_sum_examples() {
        let e = j0();
        let trivial = BTreeSet::from([CurvePoint::Infinity]);
        for q in e.points().into_iter().take(10) {
            assert_eq!(e.divisor_sum(Ell::Two, &trivial, &q).unwrap(), q);
            assert!(e.divisor_sum_check(Ell::Two, &trivial, &q).unwrap());
        }
        let h = e.stable_torsion_subgroups(Ell::Three, 7).unwrap().remove(0);
        let mut perturbed_differs = 0;
        for q in e.points() {
            assert!(e.divisor_sum_check(Ell::Three, &h, &q).unwrap());
            let lhs = e.divisor_sum(Ell::Three, &h, &q).unwrap();
            if lhs != e.epsilon(Ell::Three, h.len() as u64 + 1, &q) {
                perturbed_differs += 1;
            }
        }
        assert!(perturbed_differs > 0);

        let not_stable = e
            .torsion_subgroups(7)
            .unwrap()
            .into_iter()
            .find(|s| !e.is_stable(Ell::Three, s).unwrap())
            .unwrap();
        assert_eq!(e.divisor_sum(Ell::Three, &not_stable, &CurvePoint::Infinity), Err(Error::NotStable(3)));
        let not_group = BTreeSet::from([CurvePoint::Infinity, e.points()[1]]);
        assert_eq!(e.divisor_sum(Ell::Two, &not_group, &CurvePoint::Infinity), Err(Error::NotASubgroup));
    }

    #[test]
    fn group_equality_examples() {
        let e = CurveModel::new(17, 1, 0).unwrap();
        let h = e.stable_torsion_subgroups(Ell::Four, 2).unwrap().remove(0);
        let pts = e.points();
        let q = pts[3];
        assert!(e.group_equality_check(Ell::Four, &h, &q, &q).unwrap());
        for t in &h {
            assert!(e.group_equality_check(Ell::Four, &h, &q, &e.add(&q, t)).unwrap());
        }
        let outside = e.torsion_points(2).into_iter().find(|t| !h.contains(t)).unwrap();
        assert!(!e.group_equality_check(Ell::Four, &h, &q, &e.add(&q, &outside)).unwrap());
        let g = e.galois_group(Ell::Four, &h, &q).unwrap();
        assert_eq!(g.len(), 4 * h.len());
    }
}
