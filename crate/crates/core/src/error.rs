use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be a positive integer, got 0")]
    ZeroArgument,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("automorphism order must be one of 2, 3, 4, 6; got {0}")]
    InvalidEll(u64),

    #[error("degree n must be at least 3, got {0}")]
    DegreeTooSmall(u64),

    #[error("m = {m} exceeds the {what} bound {bound}")]
    BoundExceeded {
        what: &'static str,
        m: u64,
        bound: u64,
    },

    #[error("moduli differ: subgroup mod {subgroup}, action mod {action}")]
    ModulusMismatch { subgroup: u64, action: u64 },

    #[error("generated subgroup of (Z/{m}Z)^2 has order {order}, expected {m}")]
    Canonicalization { m: u64, order: u64 },

    #[error("singular curve: 4a^3 + 27b^2 = 0 mod {0}")]
    SingularCurve(u64),

    #[error("field characteristic must be a prime >= 5, got {0}")]
    UnsupportedField(u64),

    #[error("the order-{ell} automorphism of y^2 = x^3 + {a}x + {b} is not defined over F_{p}")]
    AutomorphismNotRational { ell: u64, p: u64, a: u64, b: u64 },

    #[error("automorphism of order {ell} is not available for a {class} curve")]
    InadmissibleEll { ell: u64, class: &'static str },

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("E[{m}] is not fully rational: found {found} points of order dividing {m}, need {}", m * m)]
    TorsionNotRational { m: u64, found: u64 },

    #[error("point set is not a subgroup")]
    NotASubgroup,

    #[error("subgroup is not stable under the order-{0} automorphism")]
    NotStable(u64),

    #[error("identity violated: {0}")]
    IdentityViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
