//! Genus-2 curves `y² + Q y = P` with `F = Q² + 4P = f·h·h̄`.

mod families;
mod mild;
mod richelot;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{conj_product, discriminant, json, resultant, GaussInt, GaussPoly, IntPoly};
use crate::error::{Error, Result};

pub use families::{
    curve_1797, delta_1797_partner, delta_of_stated_partner, family, family_ab1, family_ex2,
    family_mild, is_setzer_neumann, partner_1797, search_prime_pairs, stated_partner,
    FamilyInstance, FamilyKind, PartnerDelta, DELTA_1797_PARTNER,
};
pub use mild::{mild_reduction_check, MildReport, MildVerdict, Reduction};
pub use richelot::{richelot, richelot_model, RichelotPair};

/// The factorization `F = f · h · h̄`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factors {
    pub f: IntPoly,
    pub h: GaussPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Genus2Model {
    pub q: IntPoly,
    pub p: IntPoly,
    /// `Q² + 4P`.
    #[serde(rename = "F")]
    pub f: IntPoly,
    pub factors: Factors,
    #[serde(with = "json")]
    pub delta_f: BigInt,
    #[serde(with = "json")]
    pub delta_c: BigInt,
}

/// `c₀²Δ_F/2¹²` in degree 5, `Δ_F/2¹²` in degree 6.
pub fn model_discriminant(f: &IntPoly) -> Result<(BigInt, BigInt)> {
    let deg = f.degree().unwrap_or(0);
    if deg != 5 && deg != 6 {
        return Err(Error::domain(format!(
            "F has degree {deg}, expected 5 or 6"
        )));
    }
    let delta_f = discriminant(f)?;
    let num = if deg == 5 {
        &delta_f * f.lc() * f.lc()
    } else {
        delta_f.clone()
    };
    let (q, r) = num.div_rem(&BigInt::from(4096));
    if !r.is_zero() {
        return Err(Error::internal(format!("Δ_C is not integral for F = {f}")));
    }
    Ok((delta_f, q))
}

/// Builds the model from `f`, `h` and `Q`, requiring `f·h·h̄ ≡ Q² mod 4`.
pub fn assemble_model(f: &IntPoly, h: &GaussPoly, q: &IntPoly) -> Result<Genus2Model> {
    match (f.degree(), h.degree()) {
        (Some(1 | 2), Some(2)) => {}
        _ => return Err(Error::domain("need deg f in {1, 2} and deg h = 2")),
    }
    if q.degree().is_some_and(|d| d > 3) {
        return Err(Error::domain("deg Q exceeds 3"));
    }
    let g = conj_product(h);
    let big_f = f * &g;
    let diff = &big_f - &(q * q);
    let four = BigInt::from(4);
    if let Some(index) = diff.first_not_divisible(&four) {
        return Err(Error::Congruence {
            index,
            value: diff.coeff(index).to_string(),
        });
    }
    let p = diff.div_exact_scalar(&four).expect("checked divisibility");
    let (delta_f, delta_c) = model_discriminant(&big_f)?;
    if delta_f.is_zero() {
        return Err(Error::domain("F is not squarefree"));
    }

    // Δ_F = Δ_f Δ_h Δ_h̄ res(h,h̄)² res(f,G)²
    let hb = h.conj();
    let sq = |z: GaussInt| &z * &z;
    let rhs = GaussInt::real(discriminant(f)?)
        * discriminant(h)?
        * discriminant(&hb)?
        * sq(resultant(h, &hb)?)
        * GaussInt::real(resultant(f, &g)?.pow(2));
    if rhs != GaussInt::real(delta_f.clone()) {
        return Err(Error::mismatch(
            "discriminant product formula",
            &delta_f,
            rhs,
        ));
    }
    Ok(Genus2Model {
        q: q.clone(),
        p,
        f: big_f,
        factors: Factors {
            f: f.clone(),
            h: h.clone(),
        },
        delta_f,
        delta_c,
    })
}
