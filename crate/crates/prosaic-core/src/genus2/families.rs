//! The three parametric families, their stated Richelot partners, and the
//! sporadic curve of conductor 17·97.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{assemble_model, model_discriminant, Genus2Model};
use crate::algebra::{gauss_from_parts, json, GaussPoly, IntPoly, Poly};
use crate::error::{Error, Result};
use crate::primes::{core, is_prime_big};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FamilyKind {
    Ab1,
    Ex2,
    Mild,
}

impl FamilyKind {
    pub fn param_names(self) -> [&'static str; 2] {
        match self {
            FamilyKind::Ab1 => ["a", "b"],
            FamilyKind::Ex2 => ["b", "c"],
            FamilyKind::Mild => ["u", "c"],
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Ab1 => "AB1",
            FamilyKind::Ex2 => "EX2",
            FamilyKind::Mild => "MILD",
        })
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ab1" => Ok(FamilyKind::Ab1),
            "ex2" => Ok(FamilyKind::Ex2),
            "mild" => Ok(FamilyKind::Mild),
            _ => Err(Error::domain(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub family: FamilyKind,
    pub params: [i64; 2],
    /// Absent for EX2, whose first bad prime is 17.
    #[serde(with = "json::opt")]
    pub m: Option<BigInt>,
    #[serde(with = "json")]
    pub n: BigInt,
    pub model: Genus2Model,
    /// Squarefree kernel of the bad primes, when the hypotheses hold.
    #[serde(with = "json::opt")]
    pub conductor: Option<BigInt>,
    /// Conductors come from the closed formulas, not a conductor algorithm.
    pub conductor_provenance: String,
    pub gcd_ok: bool,
    pub prime_pair: bool,
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn poly(cs: &[BigInt]) -> IntPoly {
    Poly::new(cs.to_vec())
}

fn ip(cs: &[i64]) -> IntPoly {
    IntPoly::from_i64s(cs)
}

fn check_closed_form(what: &str, expected: &BigInt, actual: &BigInt) -> Result<()> {
    if expected != actual {
        return Err(Error::mismatch(what, expected, actual));
    }
    Ok(())
}

fn ab1_mn(a: i64, b: i64) -> (BigInt, BigInt) {
    let (a, b) = (big(a), big(b));
    let m = (&b * 4i64 - 1i64).pow(2) + 64i64;
    let w = (&a * 4i64 - 1i64).pow(2) + &b * 16i64 - 4i64;
    (m, w.pow(2) + 1024i64)
}

fn ex2_n(b: i64, c: i64) -> BigInt {
    let (b, c) = (big(b), big(c));
    (&c * &c - &b * &c * 4i64 - 16i64).pow(2) + &c * &c * 64i64
}

fn mild_mn(u: i64, c: i64) -> (BigInt, BigInt) {
    let (u, c) = (big(u), big(c));
    let m = &u * &u * 64i64 + 1i64;
    let n = (&c * &u - 16i64).pow(4) + &c * &c * 64i64;
    (m, n)
}

fn provenance() -> String {
    "closed-form".to_string()
}

/// `Q = x²+x+b`, `h = Q − 2i`, `f = 4x+4a+1`.
pub fn family_ab1(a: i64, b: i64) -> Result<FamilyInstance> {
    let q = ip(&[b, 1, 1]);
    let h = gauss_from_parts(&q, &ip(&[-2]));
    let f = poly(&[big(a) * 4 + 1, big(4)]);
    let model = assemble_model(&f, &h, &q)?;
    let (m, n) = ab1_mn(a, b);
    check_closed_form("AB1 Δ_F = 2^8 m n^2", &(&m * &n * &n * 256), &model.delta_f)?;
    check_closed_form("AB1 Δ_C = m n^2", &(&m * &n * &n), &model.delta_c)?;
    let gcd_ok = m.gcd(&n).is_one();
    let conductor = if gcd_ok {
        Some(core(&(&m * &n))?)
    } else {
        None
    };
    let prime_pair = gcd_ok && is_prime_big(&m) && is_prime_big(&n);
    Ok(FamilyInstance {
        family: FamilyKind::Ab1,
        params: [a, b],
        m: Some(m),
        n,
        model,
        conductor,
        conductor_provenance: provenance(),
        gcd_ok,
        prime_pair,
    })
}

fn ex2_hypotheses(b: i64, c: i64) -> Result<BigInt> {
    if b != 1 && b != -1 {
        return Err(Error::Hypothesis(format!("b = {b} is not ±1")));
    }
    if c.rem_euclid(4) != 1 {
        return Err(Error::Hypothesis(format!("c = {c} is not 1 mod 4")));
    }
    let n = ex2_n(b, c);
    if (&n % 17u32).is_zero() {
        return Err(Error::Hypothesis(format!("17 divides n = {n}")));
    }
    Ok(n)
}

/// `Q = x²+bx−1`, `h = Q − 2ix`, `f = 4x+c`.
pub fn family_ex2(b: i64, c: i64) -> Result<FamilyInstance> {
    let n = ex2_hypotheses(b, c)?;
    let q = ip(&[-1, b, 1]);
    let h = gauss_from_parts(&q, &ip(&[0, -2]));
    let model = assemble_model(&ip(&[c, 4]), &h, &q)?;
    check_closed_form("EX2 Δ_C = 17 n^2", &(&n * &n * 17), &model.delta_c)?;
    let conductor = core(&(&n * 17))?;
    let prime_pair = is_prime_big(&n);
    Ok(FamilyInstance {
        family: FamilyKind::Ex2,
        params: [b, c],
        m: None,
        n,
        model,
        conductor: Some(conductor),
        conductor_provenance: provenance(),
        gcd_ok: true,
        prime_pair,
    })
}

fn mild_hypotheses(u: i64, c: i64) -> Result<(BigInt, BigInt)> {
    if u.rem_euclid(2) != 1 {
        return Err(Error::Hypothesis(format!("u = {u} is even")));
    }
    if c.rem_euclid(4) != 1 {
        return Err(Error::Hypothesis(format!("c = {c} is not 1 mod 4")));
    }
    let (m, n) = mild_mn(u, c);
    if !(&m * big(u)).gcd(&n).is_one() {
        return Err(Error::Hypothesis(format!(
            "gcd(u m, n) > 1 at (u, c) = ({u}, {c})"
        )));
    }
    Ok((m, n))
}

/// `s = x(x−1)`, `h = u(x+1)² − s i`, `Q = 2u(ux−x−u)s`, `f = 4ux(cux−8x+8)`.
pub fn family_mild(u: i64, c: i64) -> Result<FamilyInstance> {
    let (m, n) = mild_hypotheses(u, c)?;
    let (bu, bc) = (big(u), big(c));
    let s = ip(&[0, -1, 1]);
    let h = gauss_from_parts(&ip(&[u, 2 * u, u]), &(-&s));
    let q = &poly(&[-&bu * &bu * 2, (&bu * &bu - &bu) * 2]) * &s;
    let f = poly(&[BigInt::zero(), &bu * 32, &bu * 4 * (&bc * &bu - 8)]);
    let model = assemble_model(&f, &h, &q)?;
    let expected = (&bu * 2i64).pow(22) * &m * &n * &n;
    check_closed_form("MILD Δ_C = (2u)^22 m n^2", &expected, &model.delta_c)?;
    let conductor = core(&(&m * &n))?;
    let prime_pair = is_prime_big(&m) && is_prime_big(&n);
    Ok(FamilyInstance {
        family: FamilyKind::Mild,
        params: [u, c],
        m: Some(m),
        n,
        model,
        conductor: Some(conductor),
        conductor_provenance: provenance(),
        gcd_ok: true,
        prime_pair,
    })
}

pub fn family(kind: FamilyKind, p1: i64, p2: i64) -> Result<FamilyInstance> {
    match kind {
        FamilyKind::Ab1 => family_ab1(p1, p2),
        FamilyKind::Ex2 => family_ex2(p1, p2),
        FamilyKind::Mild => family_mild(p1, p2),
    }
}

/// The model of the isogenous curve as written down for each family.
///
/// For MILD the partner polynomial carries a factor `x` so that it satisfies
/// the congruence with `Q'` and matches the Richelot image.
pub fn stated_partner(inst: &FamilyInstance) -> Result<Genus2Model> {
    let [p1, p2] = inst.params;
    match inst.family {
        FamilyKind::Ab1 => {
            let (a, b) = (p1, p2);
            let h = gauss_from_parts(&ip(&[1 - 4 * b, 1 - 4 * a, 1]), &ip(&[-8]));
            assemble_model(&ip(&[0, 4]), &h, &IntPoly::zero())
        }
        FamilyKind::Ex2 => {
            let (b, c) = (p1, p2);
            let h = gauss_from_parts(&ip(&[b * c + 4, c, 1]), &ip(&[2 * c]));
            assemble_model(&ip(&[4 * c, 0, c]), &h, &ip(&[0, b, 1, 1]))
        }
        FamilyKind::Mild => {
            let (u, c) = (big(p1), big(p2));
            let h = gauss_from_parts(
                &poly(&[BigInt::zero(), 16 - &c * &u, c.clone()]),
                &ip(&[-2]),
            );
            let f = poly(&[BigInt::zero(), &c * 16, &c * &c]);
            let q = poly(&[BigInt::zero(), BigInt::zero(), &c * &c * &u, &c * &c]);
            assemble_model(&f, &h, &q)
        }
    }
}

/// Discriminants of the stated partner; `minimal` is set where the closed
/// form refers to the model after the mild substitution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartnerDelta {
    #[serde(with = "json")]
    pub model: BigInt,
    #[serde(with = "json::opt")]
    pub minimal: Option<BigInt>,
}

/// Checks the partner discriminant against its closed form.
///
/// AB1: `2²⁴m²n`. EX2: `−17²c²²n`. MILD: the model has `c¹⁰(2c)¹²m²n`, and
/// `x = X/c` gives an integral model with `(2c)¹²m²n`.
pub fn delta_of_stated_partner(inst: &FamilyInstance) -> Result<PartnerDelta> {
    let partner = stated_partner(inst)?;
    let d = partner.delta_c.clone();
    let n = &inst.n;
    match inst.family {
        FamilyKind::Ab1 => {
            let m = inst.m.as_ref().expect("AB1 has m");
            check_closed_form(
                "AB1 Δ_C' = 2^24 m^2 n",
                &(BigInt::from(2).pow(24) * m * m * n),
                &d,
            )?;
            Ok(PartnerDelta {
                model: d,
                minimal: None,
            })
        }
        FamilyKind::Ex2 => {
            let c = big(inst.params[1]);
            check_closed_form("EX2 Δ_C' = -17^2 c^22 n", &(-(c.pow(22)) * 289 * n), &d)?;
            Ok(PartnerDelta {
                model: d,
                minimal: None,
            })
        }
        FamilyKind::Mild => {
            let m = inst.m.as_ref().expect("MILD has m");
            let c = big(inst.params[1]);
            let minimal = (&c * 2i64).pow(12) * m * m * n;
            check_closed_form(
                "MILD Δ_C' = c^10 (2c)^12 m^2 n",
                &(c.pow(10) * &minimal),
                &d,
            )?;
            let sub = scale_down(&partner, &c)?;
            check_closed_form("MILD minimal Δ_C' = (2c)^12 m^2 n", &minimal, &sub)?;
            Ok(PartnerDelta {
                model: d,
                minimal: Some(sub),
            })
        }
    }
}

/// `Δ_C` of `c·Q(X/c)`, `c²·F(X/c)` (forms of degree 3 and 6), requiring integrality.
fn scale_down(model: &Genus2Model, c: &BigInt) -> Result<BigInt> {
    let sub = |p: &IntPoly, deg: u32, k: u32| -> Result<IntPoly> {
        let scaled = Poly::new(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(j, a)| a * c.pow(deg - j as u32))
                .collect(),
        );
        scaled
            .div_exact_scalar(&c.pow(k))
            .ok_or_else(|| Error::Hypothesis(format!("x = X/{c} does not give an integral model")))
    };
    let q = sub(&model.q, 3, 2)?;
    let f = sub(&model.f, 6, 4)?;
    let four = BigInt::from(4);
    if (&f - &(&q * &q)).first_not_divisible(&four).is_some() {
        return Err(Error::internal("substituted model breaks F ≡ Q² mod 4"));
    }
    Ok(model_discriminant(&f)?.1)
}

pub const DELTA_1797_PARTNER: &str = "-6^22*17^2*97";

/// `Q = (x+1)(x²+x+1)`, `F = (x²+2x+5)(x²+x−1+2ix)(x²+x−1−2ix)`.
pub fn curve_1797() -> Result<Genus2Model> {
    let q = &ip(&[1, 1]) * &ip(&[1, 1, 1]);
    let h = gauss_from_parts(&ip(&[-1, 1, 1]), &ip(&[0, 2]));
    assemble_model(&ip(&[5, 2, 1]), &h, &q)
}

/// `y² = 3(x²−2x+2)h'h̄'`, `h' = (x²−5x−1) + 2(x²+x−1)i`.
pub fn partner_1797() -> Result<Genus2Model> {
    let h: GaussPoly = gauss_from_parts(&ip(&[-1, -5, 1]), &ip(&[-2, 2, 2]));
    assemble_model(&ip(&[24, -24, 12]), &h, &IntPoly::zero())
}

pub fn delta_1797_partner() -> Result<BigInt> {
    let d = partner_1797()?.delta_c;
    let expected = -(BigInt::from(6).pow(22) * 289i64 * 97i64);
    check_closed_form("1797 Δ_C' = -6^22 17^2 97", &expected, &d)?;
    Ok(d)
}

/// Whether `n = v² + 64` for some integer `v`.
pub fn is_setzer_neumann(n: &BigInt) -> bool {
    let t: BigInt = n - 64i64;
    !t.is_negative() && {
        let r = t.sqrt();
        &r * &r == t
    }
}

fn candidate(kind: FamilyKind, p1: i64, p2: i64) -> bool {
    match kind {
        FamilyKind::Ab1 => {
            let (m, n) = ab1_mn(p1, p2);
            m != n && is_prime_big(&m) && is_prime_big(&n)
        }
        FamilyKind::Ex2 => ex2_hypotheses(p1, p2).is_ok_and(|n| is_prime_big(&n)),
        FamilyKind::Mild => {
            mild_hypotheses(p1, p2).is_ok_and(|(m, n)| is_prime_big(&m) && is_prime_big(&n))
        }
    }
}

/// Every instance in the grid with both bad-prime parameters prime, ordered
/// by conductor and then parameters.
pub fn search_prime_pairs(
    kind: FamilyKind,
    r1: RangeInclusive<i64>,
    r2: RangeInclusive<i64>,
) -> Result<Vec<FamilyInstance>> {
    let grid: Vec<(i64, i64)> = r1.flat_map(|a| r2.clone().map(move |b| (a, b))).collect();
    let mut out = grid
        .into_par_iter()
        .filter(|&(a, b)| candidate(kind, a, b))
        .map(|(a, b)| family(kind, a, b))
        .collect::<Result<Vec<_>>>()?;
    out.retain(|i| i.prime_pair);
    out.sort_by(|x, y| (&x.conductor, x.params).cmp(&(&y.conductor, y.params)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ab1_rows() {
        for (a, b, m, n) in [(0, 1, 73, 1193), (2, -3, 233, 1033), (4, -14, 3313, 1033)] {
            let i = family_ab1(a, b).unwrap();
            assert_eq!(i.m, Some(big(m)));
            assert_eq!(i.n, big(n));
            assert!(i.prime_pair);
            assert_eq!(i.conductor, Some(big(m * n)));
        }
    }

    #[test]
    fn ex2_rows() {
        for (b, c, n) in [(1, -3, 601), (-1, 5, 2441), (1, 13, 21017)] {
            let i = family_ex2(b, c).unwrap();
            assert_eq!(i.n, big(n));
            assert_eq!(i.conductor, Some(big(17 * n)));
        }
        assert_eq!(family_ex2(2, 1).unwrap_err().code(), "HYPOTHESIS_VIOLATION");
        assert!(family_ex2(1, 3).is_err());
    }

    #[test]
    fn mild_rows() {
        for (u, c, m, n) in [
            (-5, -3, 1601, 577),
            (-3, -7, 577, 3761),
            (3, 13, 577, 290657),
        ] {
            let i = family_mild(u, c).unwrap();
            assert_eq!((i.m.clone().unwrap(), i.n.clone()), (big(m), big(n)));
        }
        assert!(family_mild(2, 1).is_err());
    }

    #[test]
    fn partner_discriminants() {
        let i = family_ab1(0, 1).unwrap();
        let d = delta_of_stated_partner(&i).unwrap();
        assert_eq!(d.model, BigInt::from(2).pow(24) * 73 * 73 * 1193);
        let i = family_ex2(1, -3).unwrap();
        let d = delta_of_stated_partner(&i).unwrap();
        assert_eq!(d.model, -(BigInt::from(3).pow(22)) * 289 * 601);
        let i = family_mild(-5, -3).unwrap();
        let d = delta_of_stated_partner(&i).unwrap();
        assert_eq!(
            d.minimal.unwrap(),
            BigInt::from(6).pow(12) * 1601 * 1601 * 577
        );
        assert_eq!(
            delta_1797_partner().unwrap(),
            -(BigInt::from(6).pow(22) * 289i64 * 97i64)
        );
    }

    #[test]
    fn search_small() {
        let r = search_prime_pairs(FamilyKind::Ex2, -1..=1, -7..=17).unwrap();
        assert_eq!(r.len(), 8);
        for w in r.windows(2) {
            assert!(w[0].conductor <= w[1].conductor);
        }
    }
}
