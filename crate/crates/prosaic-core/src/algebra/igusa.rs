use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Binary form `Σ c_k x^k z^{n−k}` over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    pub degree: usize,
    pub coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl BinaryForm {
    /// Homogenizes `f` to the given degree; zero top coefficients become roots at infinity.
    pub fn from_poly(f: &IntPoly, degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: (0..=degree)
                .map(|k| BigRational::from_integer(f.coeff(k)))
                .collect(),
        }
    }

    fn zero(degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    fn dx(&self) -> Self {
        if self.degree == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm {
            degree: self.degree - 1,
            coeffs: (1..=self.degree)
                .map(|k| &self.coeffs[k] * q(k as i64))
                .collect(),
        }
    }

    fn dz(&self) -> Self {
        if self.degree == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm {
            degree: self.degree - 1,
            coeffs: (0..self.degree)
                .map(|k| &self.coeffs[k] * q((self.degree - k) as i64))
                .collect(),
        }
    }

    fn partial(&self, nx: usize, nz: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..nx {
            f = f.dx();
        }
        for _ in 0..nz {
            f = f.dz();
        }
        f
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = BinaryForm::zero(self.degree + o.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    fn scalar(&self) -> BigRational {
        assert_eq!(self.degree, 0, "not an invariant");
        self.coeffs[0].clone()
    }
}

/// The `k`-th transvectant `(f, g)_k`, normalized by `(m−k)!(n−k)!/(m!n!)`.
pub fn transvectant(f: &BinaryForm, g: &BinaryForm, k: usize) -> BinaryForm {
    let (m, n) = (f.degree, g.degree);
    assert!(k <= m && k <= n, "transvectant order exceeds a degree");
    let mut acc = BinaryForm::zero(m + n - 2 * k);
    for i in 0..=k {
        let term = f.partial(k - i, i).mul(&g.partial(i, k - i));
        let c = BigRational::from_integer(binomial(k, i));
        for (a, t) in acc.coeffs.iter_mut().zip(&term.coeffs) {
            if i % 2 == 0 {
                *a += &c * t;
            } else {
                *a -= &c * t;
            }
        }
    }
    let norm = BigRational::new(
        factorial(m - k) * factorial(n - k),
        factorial(m) * factorial(n),
    );
    for a in acc.coeffs.iter_mut() {
        *a *= &norm;
    }
    acc
}

/// Igusa–Clebsch invariants of a sextic (or quintic) model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IgusaClebsch {
    #[serde(with = "rat_str")]
    pub i2: BigRational,
    #[serde(with = "rat_str")]
    pub i4: BigRational,
    #[serde(with = "rat_str")]
    pub i6: BigRational,
    #[serde(with = "rat_str")]
    pub i10: BigRational,
    /// Set when `I10 = 0`, i.e. the form has a repeated root.
    pub singular: bool,
}

const WEIGHTS: [u32; 4] = [1, 2, 3, 5];

impl IgusaClebsch {
    pub fn as_array(&self) -> [&BigRational; 4] {
        [&self.i2, &self.i4, &self.i6, &self.i10]
    }

    /// `(I2⁵/I10, I2³I4/I10, I2²I6/I10)`, undefined for singular forms.
    pub fn absolute(&self) -> Option<[BigRational; 3]> {
        if self.singular {
            return None;
        }
        let i2 = &self.i2;
        Some([
            i2.pow(5) / &self.i10,
            i2.pow(3) * &self.i4 / &self.i10,
            i2.pow(2) * &self.i6 / &self.i10,
        ])
    }

    /// Equality as points of weighted projective space with weights (1, 2, 3, 5).
    pub fn weighted_eq(&self, o: &IgusaClebsch) -> bool {
        let a = self.as_array();
        let b = o.as_array();
        for i in 0..4 {
            for j in i + 1..4 {
                let g = WEIGHTS[i].gcd(&WEIGHTS[j]);
                let (ei, ej) = (WEIGHTS[j] / g, WEIGHTS[i] / g);
                let lhs = a[i].pow(ei as i32) * b[j].pow(ej as i32);
                let rhs = b[i].pow(ei as i32) * a[j].pow(ej as i32);
                if lhs != rhs {
                    return false;
                }
            }
        }
        // the all-zero tuple is not a projective point
        a.iter().any(|x| !x.is_zero()) && b.iter().any(|x| !x.is_zero())
    }
}

/// Igusa–Clebsch invariants of `F`, homogenized to degree 6.
///
/// Computed from the Clebsch invariants `A, B, C, D` obtained by transvectants.
/// A repeated root is reported through `singular` rather than as an error.
pub fn igusa_clebsch(f: &IntPoly) -> Result<IgusaClebsch> {
    match f.degree() {
        Some(5) | Some(6) => {}
        d => {
            return Err(Error::domain(format!(
                "Igusa-Clebsch invariants need degree 5 or 6, got {d:?}"
            )))
        }
    }
    let f = BinaryForm::from_poly(f, 6);
    let i = transvectant(&f, &f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(&f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    let a = transvectant(&f, &f, 6).scalar();
    let b = transvectant(&i, &i, 4).scalar();
    let c = transvectant(&i, &delta, 4).scalar();
    let d = transvectant(&y3, &y1, 2).scalar();

    let i2 = q(-120) * &a;
    let i4 = q(-720) * a.pow(2) + q(6750) * &b;
    let i6 = q(8640) * a.pow(3) - q(108000) * &a * &b + q(202500) * &c;
    let i10 = q(-62208) * a.pow(5) + q(972000) * a.pow(3) * &b + q(1620000) * a.pow(2) * &c
        - q(3037500) * &a * b.pow(2)
        - q(6075000) * &b * &c
        - q(4556250) * &d;
    let singular = i10.is_zero();
    Ok(IgusaClebsch {
        i2,
        i4,
        i6,
        i10,
        singular,
    })
}

/// Whether `y² = F1` and `y² = F2` are isomorphic over an algebraic closure.
pub fn same_curve_over_closure(f1: &IntPoly, f2: &IntPoly) -> Result<bool> {
    let a = igusa_clebsch(f1)?;
    let b = igusa_clebsch(f2)?;
    if a.singular || b.singular {
        return Err(Error::domain("closure comparison of a singular model"));
    }
    Ok(a.weighted_eq(&b))
}

/// `(c x + d)^6 F((a x + b)/(c x + d))`, treating `F` as a sextic.
pub fn substitute_mobius(f: &IntPoly, m: [i64; 4]) -> IntPoly {
    let [a, b, c, d] = m;
    let num = IntPoly::from_i64s(&[b, a]);
    let den = IntPoly::from_i64s(&[d, c]);
    (0..=6).fold(IntPoly::zero(), |acc, k| {
        let term = &num.pow(k as u32) * &den.pow(6 - k as u32);
        &acc + &term.scale(&f.coeff(k))
    })
}

mod rat_str {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::algebra::Ring;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.render())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        BigRational::from_json(&v).ok_or_else(|| D::Error::custom("bad rational"))
    }
}
