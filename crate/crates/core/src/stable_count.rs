//! `psi_ell(E, m)`: the number of order-m subgroups of `E[m]` stable under an
//! origin-fixing automorphism of order `ell`. Computed by closed form, by
//! constructive enumeration of the stable `S_{x,i}`, and by the closure oracle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{factorize, is_prime, sigma, CongruenceKind};
use crate::torsion::{
    aut_action, closure_oracle_enumerate_with_bound, combine_prime_choices, is_stable, Ell, PrimeCoord,
    TorsionSubgroup, DEFAULT_ORACLE_BOUND,
};

pub const DEFAULT_CONSTRUCTIVE_BOUND: u64 = 500;

/// Automorphism class of the curve: which origin-fixing automorphisms exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum JClass {
    #[serde(rename = "generic")]
    Generic,
    #[serde(rename = "0")]
    J0,
    #[serde(rename = "1728")]
    J1728,
}

impl JClass {
    pub const ALL: [JClass; 3] = [JClass::Generic, JClass::J0, JClass::J1728];

    pub fn admissible(self) -> &'static [Ell] {
        match self {
            JClass::Generic => &[Ell::Two],
            JClass::J0 => &[Ell::Two, Ell::Three, Ell::Six],
            JClass::J1728 => &[Ell::Two, Ell::Four],
        }
    }

    pub fn admits(self, ell: Ell) -> bool {
        self.admissible().contains(&ell)
    }

    /// Some class that has an automorphism of order `ell`.
    pub fn admitting(ell: Ell) -> JClass {
        match ell {
            Ell::Two => JClass::Generic,
            Ell::Three | Ell::Six => JClass::J0,
            Ell::Four => JClass::J1728,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            JClass::Generic => "generic",
            JClass::J0 => "0",
            JClass::J1728 => "1728",
        }
    }
}

impl fmt::Display for JClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown j class {0:?}; expected generic, 0 or 1728")]
pub struct ParseJClassError(pub String);

impl FromStr for JClass {
    type Err = ParseJClassError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "generic" => Ok(JClass::Generic),
            "0" => Ok(JClass::J0),
            "1728" => Ok(JClass::J1728),
            other => Err(ParseJClassError(other.to_string())),
        }
    }
}

fn congruence_for(ell: Ell) -> Option<CongruenceKind> {
    match ell {
        Ell::Two => None,
        // S is stable under -M iff under M, since every subgroup is stable under -1
        Ell::Three | Ell::Six => Some(CongruenceKind::ZSqMinusZPlus1),
        Ell::Four => Some(CongruenceKind::ZSqPlus1),
    }
}

/// Closed form for `psi_ell(p^alpha)`.
pub fn psi_prime_power(ell: Ell, p: u64, alpha: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha == 0 {
        return Ok(1);
    }
    let even = u64::from(alpha % 2 == 0);
    Ok(match ell {
        Ell::Two => sigma(p.pow(alpha))?,
        Ell::Three | Ell::Six => match (p, p % 3) {
            (3, _) => 1,
            (_, 1) => u64::from(alpha) + 1,
            _ => even,
        },
        Ell::Four => match (p, p % 4) {
            (2, _) => 1,
            (_, 1) => u64::from(alpha) + 1,
            // only i = alpha/2 survives: z^2 + 1 has no roots mod p^beta for beta >= 1
            _ => even,
        },
    })
}

/// `psi_ell(E, m)` for a curve of class `j`; zero when `j` lacks an
/// automorphism of order `ell`.
pub fn psi(ell: Ell, j: JClass, m: u64) -> Result<u64> {
    let f = factorize(m)?;
    if !j.admits(ell) {
        return Ok(0);
    }
    f.pairs().iter().map(|&(p, a)| psi_prime_power(ell, p, a)).product()
}

/// `psi_ell(E, r)` for a rational argument `num / den`: zero off the integers.
pub fn psi_ratio(ell: Ell, j: JClass, num: u64, den: u64) -> Result<u64> {
    if den == 0 || num == 0 || num % den != 0 {
        return Ok(0);
    }
    psi(ell, j, num / den)
}

/// Stable coordinates in `(Z/p^alpha)^2` for one prime power.
pub fn stable_prime_coords(ell: Ell, p: u64, alpha: u32) -> Vec<PrimeCoord> {
    match congruence_for(ell) {
        None => (0..=alpha)
            .flat_map(|i| (0..p.pow(alpha - i)).map(move |x| PrimeCoord { p, alpha, i, x }))
            .collect(),
        Some(kind) => (0..=alpha / 2)
            .flat_map(|i| {
                let beta_mod = p.pow(alpha - 2 * i);
                // beta = 0: the trivial ring, single root y = 0
                kind.roots_by_scan(beta_mod)
                    .into_iter()
                    .map(move |y| PrimeCoord { p, alpha, i, x: p.pow(i) * y })
            })
            .collect(),
    }
}

pub fn enumerate_stable_subgroups(ell: Ell, m: u64) -> Result<Vec<TorsionSubgroup>> {
    enumerate_stable_subgroups_with_bound(ell, m, DEFAULT_CONSTRUCTIVE_BOUND)
}

/// The stable subgroups built from the per-prime stability criterion, in
/// lexicographic `(prime, i, x)` order.
pub fn enumerate_stable_subgroups_with_bound(ell: Ell, m: u64, bound: u64) -> Result<Vec<TorsionSubgroup>> {
    if m > bound {
        return Err(Error::BoundExceeded { what: "constructive", m, bound });
    }
    let per_prime = factorize(m)?
        .into_iter()
        .map(|(p, alpha)| stable_prime_coords(ell, p, alpha))
        .collect();
    combine_prime_choices(m, per_prime)
}

/// Count of stable subgroups without materializing them.
pub fn count_stable_constructive(ell: Ell, m: u64) -> Result<u64> {
    Ok(factorize(m)?
        .into_iter()
        .map(|(p, alpha)| stable_prime_coords(ell, p, alpha).len() as u64)
        .product())
}

pub fn stable_count_oracle(ell: Ell, m: u64) -> Result<u64> {
    stable_count_oracle_with_bound(ell, m, DEFAULT_ORACLE_BOUND)
}

pub fn stable_count_oracle_with_bound(ell: Ell, m: u64, bound: u64) -> Result<u64> {
    let action = aut_action(ell, m)?;
    let mut count = 0;
    for s in closure_oracle_enumerate_with_bound(m, bound)? {
        if is_stable(&s, &action)? {
            count += 1;
        }
    }
    Ok(count)
}
