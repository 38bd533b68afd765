//! Computational tools for numerical semigroup rings and monomial ideals in
//! two variables.
//!
//! * [`numsgp`]: numerical semigroups, conductors, Frobenius numbers, Apéry sets.
//! * [`valideal`]: monomial ideals of `k[[H]]` as value sets, with products,
//!   colons, powers of the maximal ideal and reduction exponents.
//! * [`truncmono`]: staircase monomial ideals of `k[x,y]/(x^a ± y^b)` and of
//!   truncated rings `k[x,y]/(x^a, y^m)`.
//! * [`extcalc`]: the engine reducing a primary staircase to `(x, y)` through
//!   annihilator steps, producing a certificate.
//! * [`certify`]: certificate serialization and an independent verifier.

pub mod certify;
pub mod extcalc;
pub mod numsgp;
pub mod truncmono;
pub mod valideal;

pub use certify::{verify, CertificateError, ReductionCertificate, VerificationReport};
pub use extcalc::{annihilator_step, reduce_to_maximal, AnnihilatorStep, QuotientRing, ReductionError};
pub use numsgp::{conductor_arithmetic, NumericalSemigroup, SemigroupError};
pub use truncmono::{
    staircase_of_conductor, Axis, Pair, RelationRing, Sign, StaircaseError, StaircaseIdeal, TruncatedRingParams,
};
pub use valideal::{
    conductor_ideal, max_ideal_power, reduction_exponent, stable_power_threshold, IdealError, SemigroupIdeal,
};
