//! Richelot isogenies from a factorization `F = G₁G₂G₃` into quadratics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Genus2Model;
use crate::algebra::{det_bareiss, discriminant, GaussInt, GaussPoly, IntPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RichelotPair {
    pub source: IntPoly,
    /// `d · L₁L₂L₃/δ` up to a rational square factor.
    pub target_f: IntPoly,
    pub kernel: [GaussPoly; 3],
    pub delta: GaussInt,
    pub twist: i64,
}

fn bracket(g: &GaussPoly, h: &GaussPoly) -> GaussPoly {
    &(&g.derivative() * h) - &(g * &h.derivative())
}

/// Divides out square factors of the content found by trial division.
fn strip_square_content(f: &IntPoly) -> IntPoly {
    let mut c = f.content();
    let mut sq = <BigInt as One>::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while p <= limit && &p * &p <= c {
        let p2 = &p * &p;
        while c.is_multiple_of(&p2) {
            c /= &p2;
            sq *= &p2;
        }
        p += 1;
    }
    f.div_exact_scalar(&sq).expect("square divides the content")
}

/// Richelot partner of `y² = G₁G₂G₃` twisted by `twist`.
///
/// `G₁` is real; `G₂`, `G₃` are either both real or complex conjugates.
pub fn richelot(g1: &IntPoly, g2: &GaussPoly, g3: &GaussPoly, twist: i64) -> Result<RichelotPair> {
    if [g1.degree(), g2.degree(), g3.degree()]
        .iter()
        .any(|d| d.map_or(true, |d| d > 2))
    {
        return Err(Error::domain(
            "Richelot factors must be nonzero of degree at most 2",
        ));
    }
    let conjugate = g3 == &g2.conj();
    if !conjugate && (g2.to_int().is_none() || g3.to_int().is_none()) {
        return Err(Error::domain("G2, G3 must be real or a conjugate pair"));
    }
    if twist == 0 {
        return Err(Error::domain("twist must be nonzero"));
    }
    let g1 = g1.to_gauss();
    let source = (&(&g1 * g2) * g3)
        .to_int()
        .ok_or_else(|| Error::domain("G1 G2 G3 is not real"))?;
    if !matches!(source.degree(), Some(5 | 6)) || Zero::is_zero(&discriminant(&source)?) {
        return Err(Error::domain("F must be squarefree of degree 5 or 6"));
    }
    let rows = [&g1, g2, g3]
        .iter()
        .map(|g| (0..3).map(|j| g.coeff(j)).collect())
        .collect();
    let delta = det_bareiss(rows);
    if Zero::is_zero(&delta.norm()) {
        return Err(Error::DegenerateKernel);
    }
    let l1 = bracket(g2, g3);
    let l2 = bracket(g3, &g1);
    let l3 = bracket(&g1, g2);
    let prod = &(&l1 * &l2) * &l3;
    let (kp, r_prod) = match (prod.to_int(), prod.div_i_to_int()) {
        (Some(r), _) => (0u32, r),
        (None, Some(r)) => (1u32, r),
        _ => {
            return Err(Error::internal(
                "L1 L2 L3 is not on a coordinate axis of Z[i]",
            ))
        }
    };
    let (kd, r_delta) = delta
        .axis_form()
        .ok_or_else(|| Error::internal(format!("δ = {delta} is not on a coordinate axis")))?;
    if (kp + 4 - kd % 4) % 2 == 1 {
        return Err(Error::internal("L1 L2 L3 / δ is not rational"));
    }
    // i^{kp−kd} ∈ {±1}
    let sign = if (kp + 4 - kd % 4) % 4 == 0 { 1 } else { -1 };
    let target = r_prod.scale(&(r_delta * BigInt::from(sign * twist)));
    let kernel = [g1, g2.clone(), g3.clone()];
    Ok(RichelotPair {
        source,
        target_f: strip_square_content(&target),
        kernel,
        delta,
        twist,
    })
}

/// The partner for the conjugate factorization `f · h · h̄` of a model, twisted by −1.
pub fn richelot_model(model: &Genus2Model) -> Result<RichelotPair> {
    let h = &model.factors.h;
    let (g1, twist) = match model.factors.f.degree() {
        Some(1 | 2) => (&model.factors.f, -1),
        _ => return Err(Error::domain("f must have degree 1 or 2")),
    };
    let pair = richelot(g1, h, &h.conj(), twist)?;
    if pair.source != model.f {
        return Err(Error::internal("factors do not multiply to F"));
    }
    debug_assert!(pair.target_f.content().is_positive());
    Ok(pair)
}
