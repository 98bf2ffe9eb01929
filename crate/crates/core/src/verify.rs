//! The verification sweep behind `ellgal verify`: every closed form checked
//! against its independent route.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::ecmodel::{witness_curves, CurvePoint};
use crate::error::Result;
use crate::locus::{component_census, deg_epsilon, groups_per_translation_subgroup};
use crate::modarith::{count_congruence_roots, is_prime, sigma, CongruenceKind};
use crate::stable_count::{count_stable_constructive, enumerate_stable_subgroups, psi, JClass};
use crate::torsion::{aut_action, closure_oracle_enumerate_with_bound, is_stable, Ell};

/// Component counts by dimension `0..N`, transcribed from the published
/// low-dimension table, with the total.
pub const TABLE_ONE: &[(u64, JClass, &[u64], u64)] = &[
    (2, JClass::Generic, &[0, 1], 1),
    (2, JClass::J0, &[3, 1], 4),
    (2, JClass::J1728, &[0, 1], 1),
    (3, JClass::Generic, &[6, 0, 1], 7),
    (3, JClass::J0, &[6, 1, 1], 8),
    (3, JClass::J1728, &[14, 0, 1], 15),
    (4, JClass::Generic, &[0, 3, 0, 1], 4),
    (4, JClass::J0, &[0, 3, 1, 1], 5),
    (4, JClass::J1728, &[0, 4, 0, 1], 5),
    (5, JClass::Generic, &[12, 0, 3, 0, 1], 16),
    (5, JClass::J0, &[48, 0, 3, 1, 1], 53),
    (5, JClass::J1728, &[12, 0, 4, 0, 1], 17),
];

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Bound for the closure oracle.
    pub max_m: u64,
    /// Bound for constructive enumeration.
    pub constructive_max: u64,
    pub with_curves: bool,
    /// Replacement closed-form values `psi_ell(m)` (a deliberately corrupted table).
    pub psi_overrides: BTreeMap<(Ell, u64), u64>,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_m: crate::torsion::DEFAULT_ORACLE_BOUND,
            constructive_max: crate::stable_count::DEFAULT_CONSTRUCTIVE_BOUND,
            with_curves: false,
            psi_overrides: BTreeMap::new(),
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

type Check = std::result::Result<String, String>;

struct Sweep<'a> {
    config: &'a VerifyConfig,
}

impl Sweep<'_> {
    fn closed(&self, ell: Ell, m: u64) -> Result<u64> {
        match self.config.psi_overrides.get(&(ell, m)) {
            Some(&v) => Ok(v),
            None => psi(ell, JClass::admitting(ell), m),
        }
    }

    fn oracle_equivalence(&self) -> Result<Check> {
        for m in 1..=self.config.max_m {
            let all = closure_oracle_enumerate_with_bound(m, self.config.max_m)?;
            for ell in Ell::ALL {
                let action = aut_action(ell, m)?;
                let mut oracle = Vec::new();
                for s in &all {
                    if is_stable(s, &action)? {
                        oracle.push(s.clone());
                    }
                }
                let mut constructive = enumerate_stable_subgroups(ell, m)?;
                constructive.sort();
                let closed = self.closed(ell, m)?;
                if oracle.len() as u64 != closed || constructive.len() != oracle.len() {
                    return Ok(Err(format!(
                        "ell={ell} m={m}: oracle {} constructive {} closed form {closed}",
                        oracle.len(),
                        constructive.len()
                    )));
                }
                if constructive != oracle {
                    return Ok(Err(format!("ell={ell} m={m}: fingerprint sets differ")));
                }
            }
        }
        Ok(Ok(format!("ell in {{2,3,4,6}}, m <= {}", self.config.max_m)))
    }

    fn constructive_agreement(&self) -> Result<Check> {
        for m in 1..=self.config.constructive_max {
            for ell in Ell::ALL {
                let c = count_stable_constructive(ell, m)?;
                let closed = self.closed(ell, m)?;
                if c != closed {
                    return Ok(Err(format!("ell={ell} m={m}: constructive {c} closed form {closed}")));
                }
            }
        }
        Ok(Ok(format!("m <= {}", self.config.constructive_max)))
    }

    fn sigma_and_order_six(&self) -> Result<Check> {
        for m in 1..=10_000 {
            let (p2, s) = (self.closed(Ell::Two, m)?, sigma(m)?);
            if p2 != s {
                return Ok(Err(format!("psi_2({m}) = {p2} but sigma = {s}")));
            }
            let (p3, p6) = (self.closed(Ell::Three, m)?, self.closed(Ell::Six, m)?);
            if p3 != p6 {
                return Ok(Err(format!("psi_3({m}) = {p3} but psi_6 = {p6}")));
            }
        }
        Ok(Ok("m <= 10000".into()))
    }

    fn multiplicativity(&self, rng: &mut StdRng) -> Result<Check> {
        let mut tried = 0;
        while tried < 1000 {
            let a = rng.gen_range(1..=10_000u64);
            let b = rng.gen_range(1..=10_000 / a);
            if gcd(a, b) != 1 {
                continue;
            }
            tried += 1;
            for ell in Ell::ALL {
                let (ab, pa, pb) = (self.closed(ell, a * b)?, self.closed(ell, a)?, self.closed(ell, b)?);
                if ab != pa * pb {
                    return Ok(Err(format!("ell={ell}: psi({}) = {ab} != psi({a}) psi({b}) = {}", a * b, pa * pb)));
                }
            }
        }
        Ok(Ok("1000 coprime pairs, ab <= 10000".into()))
    }

    fn table_one(&self) -> Result<Check> {
        for &(big_n, j, counts, total) in TABLE_ONE {
            let r = component_census(j, big_n + 1)?;
            let got: Vec<u64> = (0..big_n).map(|d| r.count_in_dimension(d)).collect();
            if got != counts || r.total_components != total {
                return Ok(Err(format!("N={big_n} j={j}: got {got:?} total {}", r.total_components)));
            }
        }
        Ok(Ok(format!("{} columns", TABLE_ONE.len())))
    }

    fn coefficients(&self) -> Result<Check> {
        for n in 1..=200u64 {
            let m2 = n * n;
            for (ell, k) in [(Ell::Two, 1), (Ell::Three, 3), (Ell::Four, 8), (Ell::Six, 36)] {
                let d = deg_epsilon(ell, n)?;
                if d != k * m2 {
                    return Ok(Err(format!("deg epsilon ell={ell} m={n} = {d}")));
                }
            }
            for (ell, coeff) in [(Ell::Two, n / 2), (Ell::Three, n), (Ell::Four, 2 * n), (Ell::Six, 6 * n)] {
                if n % ell.order() != 0 {
                    continue;
                }
                let g = groups_per_translation_subgroup(ell, n / ell.order())?;
                if g != coeff {
                    return Ok(Err(format!("groups per H for ell={ell} n={n}: {g} != {coeff}")));
                }
            }
        }
        Ok(Ok("n <= 200".into()))
    }

    fn congruence_roots(&self) -> Result<Check> {
        for p in (2..=10_000u64).filter(|&p| is_prime(p)) {
            let (mut q, mut beta) = (p, 1);
            while q <= 10_000 {
                for kind in [CongruenceKind::ZSqMinusZPlus1, CongruenceKind::ZSqPlus1] {
                    let scanned = kind.roots_by_scan(q).len() as u64;
                    let closed = count_congruence_roots(kind, p, beta)?;
                    if scanned != closed {
                        return Ok(Err(format!("{kind:?} mod {p}^{beta}: {closed} vs scan {scanned}")));
                    }
                }
                q *= p;
                beta += 1;
            }
        }
        Ok(Ok("p^beta <= 10000".into()))
    }

    fn intro_formulas(&self) -> Result<Check> {
        for big_n in 2..=99u64 {
            let r = component_census(JClass::Generic, big_n + 1)?;
            let expect0 =
                if big_n % 2 == 1 { big_n.div_ceil(2) * sigma(big_n.div_ceil(2))? } else { 0 };
            if r.count_in_dimension(0) != expect0 {
                return Ok(Err(format!("N={big_n}: {} points, expected {expect0}", r.count_in_dimension(0))));
            }
            for s in 2..=big_n {
                let expect = if s % 2 == 0 { sigma(s / 2)? } else { 0 };
                let got = r.count_in_dimension(big_n + 1 - s);
                if got != expect {
                    return Ok(Err(format!("N={big_n} s={s}: {got} components, expected {expect}")));
                }
            }
        }
        Ok(Ok("N <= 99".into()))
    }

    fn curves(&self, rng: &mut StdRng) -> Result<Check> {
        let mut configs = 0;
        for w in witness_curves()? {
            let e = &w.curve;
            let points = e.points();
            for &ell in e.j().admissible() {
                let mut candidates = vec![BTreeSet::from([CurvePoint::Infinity])];
                for &m in &w.full_torsion {
                    let stable = e.stable_torsion_subgroups(ell, m)?;
                    let closed = self.closed(ell, m)?;
                    if stable.len() as u64 != closed {
                        return Ok(Err(format!(
                            "p={} ell={ell} m={m}: {} rational stable subgroups, psi = {closed}",
                            e.p(),
                            stable.len()
                        )));
                    }
                    candidates.extend(stable);
                }
                for _ in 0..100 {
                    let h = candidates.choose(rng).expect("non-empty");
                    let q = *points.choose(rng).expect("non-empty");
                    if !e.divisor_sum_check(ell, h, &q)? {
                        return Ok(Err(format!("p={} ell={ell}: divisor sum differs from epsilon(q)", e.p())));
                    }
                    let shift = if rng.gen_bool(0.5) {
                        **h.iter().collect::<Vec<_>>().choose(rng).expect("non-empty")
                    } else {
                        *points.choose(rng).expect("non-empty")
                    };
                    // Err here means the biconditional failed
                    if let Err(err) = e.group_equality_check(ell, h, &q, &e.point_add(&q, &shift)?) {
                        return Ok(Err(format!("p={} ell={ell}: {err}", e.p())));
                    }
                    configs += 1;
                }
            }
        }
        Ok(Ok(format!("{configs} random (H, q) configurations")))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let sweep = Sweep { config };
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut report = VerifyReport::default();
    let mut record = |name: &'static str, f: &mut dyn FnMut() -> Result<Check>| {
        let start = Instant::now();
        let (passed, detail) = match f() {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        report.checks.push(CheckOutcome { name, passed, detail, millis: start.elapsed().as_millis() });
    };
    record("oracle-equivalence", &mut || sweep.oracle_equivalence());
    record("constructive-closed-form", &mut || sweep.constructive_agreement());
    record("psi2-sigma-psi3-psi6", &mut || sweep.sigma_and_order_six());
    let mut mult_rng = StdRng::seed_from_u64(rng.gen());
    record("multiplicativity", &mut || sweep.multiplicativity(&mut mult_rng));
    record("table-one", &mut || sweep.table_one());
    record("coefficient-identity", &mut || sweep.coefficients());
    record("congruence-roots", &mut || sweep.congruence_roots());
    record("generic-formulas", &mut || sweep.intro_formulas());
    if config.with_curves {
        let mut curve_rng = StdRng::seed_from_u64(rng.gen());
        record("finite-field-witness", &mut || sweep.curves(&mut curve_rng));
    }
    report
}
