//! Exact arithmetic behind prosaic abelian varieties with one bad odd prime.
//!
//! The crate is organised by subject:
//!
//! * [`algebra`]: Gaussian integers, polynomials over ℤ and ℤ\[i\], resultants,
//!   discriminants and Igusa–Clebsch invariants.
//! * [`primes`]: primality, Cornacchia representations and the P1/P3/P1* labels.
//! * [`classgroup`]: reduced forms of discriminant −4p, composition and h₂.
//! * [`modules`]: F₂-modules with two involutions and a multiplicative part.
//! * [`genus2`]: the explicit genus-2 families, Richelot partners and mild reduction.
//! * [`tables`]: golden tables and their verification.

pub mod algebra;
pub mod classgroup;
pub mod error;
pub mod genus2;
pub mod modules;
pub mod primes;
pub mod tables;

pub use algebra::{
    conj_product, discriminant, igusa_clebsch, resultant, same_curve_over_closure, GaussInt,
    GaussPoly, IgusaClebsch, IntPoly, Poly,
};
pub use classgroup::{FormClassGroup, H2Cache, QuadForm};
pub use error::{Error, Result};
pub use genus2::{FamilyInstance, FamilyKind, Genus2Model, MildVerdict, RichelotPair};
pub use modules::{AdmissibleModule, BitMatrix, LambdaModule, PhiBlocModule, Subspace};
pub use num_bigint::BigInt;
pub use primes::{Label, PrimeProfile};

/// Version tag carried by every JSON document this crate emits.
pub const SCHEMA_VERSION: &str = "prosaic/1";
