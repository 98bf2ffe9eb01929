//! Component census of the locus of Galois subspaces for an elliptic curve
//! embedded in `P^(n-1)` by a complete linear system of degree `n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stable_count::{psi, psi_ratio, JClass};
use crate::torsion::{Ell, Mat2};

/// Integer matrix of the endomorphism `epsilon_{xi,m}` in the lattice basis
/// on which `xi` acts by [`Ell::integer_matrix`].
pub fn epsilon_matrix(ell: Ell, m: u64) -> Mat2 {
    let xi = ell.integer_matrix();
    let m = m as i64;
    match ell {
        Ell::Two => Mat2::IDENTITY.scale(m),
        Ell::Three => Mat2::IDENTITY.scale(2).add(xi).scale(m),
        Ell::Four => Mat2::IDENTITY.add(xi).scale(2 * m),
        Ell::Six => xi.scale(6 * m),
    }
}

/// Degree of `epsilon_{xi,m}`, as the determinant of its lattice matrix.
pub fn deg_epsilon(ell: Ell, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(epsilon_matrix(ell, m).det() as u64)
}

/// Number of distinct disjoint Galois groups sharing a fixed translation
/// subgroup of order `m`.
pub fn groups_per_translation_subgroup(ell: Ell, m: u64) -> Result<u64> {
    let deg = deg_epsilon(ell, m)?;
    debug_assert_eq!(deg % m, 0);
    Ok(deg / m)
}

fn check_degree(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    Ok(())
}

/// One row of the disjoint inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointGroupClass {
    pub ell: Ell,
    pub h_order: u64,
    pub psi: u64,
    pub groups_per_h: u64,
}

impl DisjointGroupClass {
    pub fn total(&self) -> u64 {
        self.psi * self.groups_per_h
    }
}

/// Per-`ell` breakdown of the disjoint Galois subspaces. Rows with no stable
/// translation subgroup are omitted.
pub fn disjoint_group_inventory(j: JClass, n: u64) -> Result<Vec<DisjointGroupClass>> {
    check_degree(n)?;
    let mut rows = Vec::new();
    for &ell in j.admissible() {
        let l = ell.order();
        if n % l != 0 {
            continue;
        }
        let h_order = n / l;
        let psi = psi(ell, j, h_order)?;
        if psi == 0 {
            continue;
        }
        rows.push(DisjointGroupClass { ell, h_order, psi, groups_per_h: groups_per_translation_subgroup(ell, h_order)? });
    }
    Ok(rows)
}

/// `(n/2) psi_2(n/2) + n psi_3(n/3) + 2n psi_4(n/4) + 6n psi_6(n/6)`.
pub fn disjoint_count(j: JClass, n: u64) -> Result<u64> {
    check_degree(n)?;
    let coefficient = |ell: Ell| match ell {
        Ell::Two => n / 2,
        Ell::Three => n,
        Ell::Four => 2 * n,
        Ell::Six => 6 * n,
    };
    Ell::ALL
        .iter()
        .map(|&ell| Ok(coefficient(ell) * psi_ratio(ell, j, n, ell.order())?))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituent {
    pub ell: Ell,
    pub h_order: u64,
    pub psi: u64,
}

/// A family of components sharing a Galois group order `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentRecord {
    pub dimension: u64,
    pub count: u64,
    pub group_order: u64,
    pub constituents: Vec<Constituent>,
    /// Fiber dimension of the projective bundle; `None` for points.
    pub fiber_dim: Option<u64>,
    /// Base of the bundle, `E/H` with `|H|` the constituent's `h_order`.
    pub base: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: u64,
    pub j: JClass,
    /// Sorted by descending dimension, one per dimension.
    pub records: Vec<ComponentRecord>,
    pub total_components: u64,
}

impl CensusReport {
    /// Ambient projective dimension `N = n - 1`.
    pub fn ambient_dim(&self) -> u64 {
        self.n - 1
    }

    pub fn count_in_dimension(&self, dim: u64) -> u64 {
        self.records.iter().find(|r| r.dimension == dim).map_or(0, |r| r.count)
    }
}

fn constituents(j: JClass, s: u64) -> Result<Vec<Constituent>> {
    let mut out = Vec::new();
    for &ell in j.admissible() {
        if s % ell.order() != 0 {
            continue;
        }
        let h_order = s / ell.order();
        let psi = psi(ell, j, h_order)?;
        if psi > 0 {
            out.push(Constituent { ell, h_order, psi });
        }
    }
    Ok(out)
}

pub fn component_census(j: JClass, n: u64) -> Result<CensusReport> {
    check_degree(n)?;
    let mut records = Vec::new();
    for s in 2..n {
        let parts = constituents(j, s)?;
        let count: u64 = parts.iter().map(|c| c.psi).sum();
        if count == 0 {
            continue;
        }
        records.push(ComponentRecord {
            dimension: n - s,
            count,
            group_order: s,
            constituents: parts,
            fiber_dim: Some(n - s - 1),
            base: Some("E/H".to_string()),
        });
    }
    let disjoint = disjoint_count(j, n)?;
    if disjoint > 0 {
        records.push(ComponentRecord {
            dimension: 0,
            count: disjoint,
            group_order: n,
            constituents: constituents(j, n)?,
            fiber_dim: None,
            base: None,
        });
    }
    let total_components = records.iter().map(|r| r.count).sum();
    Ok(CensusReport { n, j, records, total_components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::sigma;

    fn dims(report: &CensusReport) -> Vec<(u64, u64, u64)> {
        report.records.iter().map(|r| (r.dimension, r.count, r.group_order)).collect()
    }

    #[test]
    fn deg_epsilon_examples() {
        assert_eq!(deg_epsilon(Ell::Two, 7).unwrap(), 49);
        assert_eq!(deg_epsilon(Ell::Three, 1).unwrap(), 3);
        assert_eq!(epsilon_matrix(Ell::Three, 1), Mat2::new(2, -1, 1, 1));
        assert_eq!(deg_epsilon(Ell::Four, 2).unwrap(), 32);
        assert_eq!(epsilon_matrix(Ell::Four, 2), Mat2::new(1, -1, 1, 1).scale(4));
        assert_eq!(deg_epsilon(Ell::Six, 1).unwrap(), 36);
        assert_eq!(deg_epsilon(Ell::Six, 0), Err(Error::ZeroArgument));
    }

    #[test]
    fn deg_epsilon_closed_forms() {
        for m in 1..=300u64 {
            let m2 = m * m;
            assert_eq!(deg_epsilon(Ell::Two, m).unwrap(), m2);
            assert_eq!(deg_epsilon(Ell::Three, m).unwrap(), 3 * m2);
            assert_eq!(deg_epsilon(Ell::Four, m).unwrap(), 8 * m2);
            assert_eq!(deg_epsilon(Ell::Six, m).unwrap(), 36 * m2);
        }
    }

    #[test]
    fn groups_per_h_examples() {
        assert_eq!(groups_per_translation_subgroup(Ell::Two, 3).unwrap(), 3);
        assert_eq!(groups_per_translation_subgroup(Ell::Three, 2).unwrap(), 6);
        assert_eq!(groups_per_translation_subgroup(Ell::Six, 1).unwrap(), 36);
    }

    #[test]
    fn disjoint_count_examples() {
        assert_eq!(disjoint_count(JClass::Generic, 4).unwrap(), 6);
        assert_eq!(disjoint_count(JClass::J1728, 4).unwrap(), 14);
        assert_eq!(disjoint_count(JClass::J0, 6).unwrap(), 48);
        assert_eq!(disjoint_count(JClass::Generic, 5).unwrap(), 0);
        assert_eq!(disjoint_count(JClass::Generic, 2), Err(Error::DegreeTooSmall(2)));
    }

    #[test]
    fn inventory_examples() {
        let inv = disjoint_group_inventory(JClass::Generic, 6).unwrap();
        assert_eq!(inv, vec![DisjointGroupClass { ell: Ell::Two, h_order: 3, psi: 4, groups_per_h: 3 }]);

        let inv = disjoint_group_inventory(JClass::J0, 3).unwrap();
        assert_eq!(inv, vec![DisjointGroupClass { ell: Ell::Three, h_order: 1, psi: 1, groups_per_h: 3 }]);

        let inv = disjoint_group_inventory(JClass::J1728, 4).unwrap();
        assert_eq!(
            inv,
            vec![
                DisjointGroupClass { ell: Ell::Two, h_order: 2, psi: 3, groups_per_h: 2 },
                DisjointGroupClass { ell: Ell::Four, h_order: 1, psi: 1, groups_per_h: 8 },
            ]
        );
        assert_eq!(inv.iter().map(DisjointGroupClass::total).sum::<u64>(), 14);
    }

    #[test]
    fn census_examples() {
        let r = component_census(JClass::Generic, 6).unwrap();
        assert_eq!(dims(&r), vec![(4, 1, 2), (2, 3, 4), (0, 12, 6)]);
        assert_eq!(r.total_components, 16);

        let r = component_census(JClass::J0, 4).unwrap();
        assert_eq!(dims(&r), vec![(2, 1, 2), (1, 1, 3), (0, 6, 4)]);
        assert_eq!(r.total_components, 8);

        let r = component_census(JClass::J1728, 5).unwrap();
        assert_eq!(dims(&r), vec![(3, 1, 2), (1, 4, 4)]);
        assert_eq!(r.total_components, 5);
        assert_eq!(
            r.records[1].constituents,
            vec![Constituent { ell: Ell::Two, h_order: 2, psi: 3 }, Constituent { ell: Ell::Four, h_order: 1, psi: 1 }]
        );

        let r = component_census(JClass::Generic, 3).unwrap();
        assert_eq!(dims(&r), vec![(1, 1, 2)]);
        assert_eq!(r.total_components, 1);

        assert_eq!(component_census(JClass::J0, 1), Err(Error::DegreeTooSmall(1)));
    }

    #[test]
    fn census_record_invariants() {
        for j in JClass::ALL {
            for n in 3..=200 {
                let r = component_census(j, n).unwrap();
                assert_eq!(r.total_components, r.records.iter().map(|c| c.count).sum::<u64>());
                assert!(r.records.windows(2).all(|w| w[0].dimension > w[1].dimension));
                for rec in &r.records {
                    assert_eq!(rec.dimension, n - rec.group_order);
                    assert!(rec.constituents.iter().all(|c| c.ell.order() * c.h_order == rec.group_order));
                    if rec.dimension > 0 {
                        assert_eq!(rec.count, rec.constituents.iter().map(|c| c.psi).sum::<u64>());
                        assert_eq!(rec.fiber_dim, Some(rec.dimension - 1));
                        assert_eq!(rec.fiber_dim, Some(n - rec.group_order - 1));
                    } else {
                        assert_eq!(rec.fiber_dim, None);
                    }
                }
                let inv: u64 = disjoint_group_inventory(j, n).unwrap().iter().map(DisjointGroupClass::total).sum();
                assert_eq!(r.count_in_dimension(0), disjoint_count(j, n).unwrap());
                assert_eq!(inv, disjoint_count(j, n).unwrap());
            }
        }
    }

    #[test]
    fn generic_census_skips_odd_group_orders() {
        for n in 3..=200 {
            let r = component_census(JClass::Generic, n).unwrap();
            assert!(r.records.iter().filter(|c| c.dimension > 0).all(|c| c.group_order % 2 == 0));
            for c in r.records.iter().filter(|c| c.dimension > 0) {
                assert_eq!(c.count, sigma(c.group_order / 2).unwrap());
            }
        }
    }
}
