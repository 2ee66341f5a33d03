//! Exact arithmetic over ℤ, ℤ\[i\] and ℚ.

mod gauss;
mod igusa;
mod poly;
mod resultant;
mod ring;

pub use gauss::GaussInt;
pub use igusa::{
    igusa_clebsch, same_curve_over_closure, substitute_mobius, transvectant, BinaryForm,
    IgusaClebsch,
};
pub use poly::{gauss_from_parts, GaussPoly, IntPoly, Poly, RatPoly};
pub use resultant::{conj_product, det_bareiss, discriminant, resultant};
pub use ring::Ring;

pub(crate) mod json {
    //! Serde adapters for integers carried as decimal strings.
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            match n {
                Some(n) => s.serialize_some(&n.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
            let s: Option<String> = Option::deserialize(d)?;
            s.map(|s| {
                s.parse()
                    .map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
            })
            .transpose()
        }
    }
}
