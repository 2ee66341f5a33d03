use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::gauss::GaussInt;
use super::ring::Ring;

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients
/// and every other polynomial has a nonzero leading coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
}

pub type IntPoly = Poly<BigInt>;
pub type GaussPoly = Poly<GaussInt>;
pub type RatPoly = Poly<BigRational>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![R::zero(), R::one()])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| R::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&R::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(R::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * g) + &Poly::constant(c.clone())
        })
    }

    /// Quotient by a constant, `None` unless every coefficient is divisible.
    pub fn div_exact_scalar(&self, c: &R) -> Option<Self> {
        self.coeffs
            .iter()
            .map(|a| a.div_exact(c))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| f(&self.coeff(k), &o.coeff(k))).collect())
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        self.zip_with(o, |a, b| a.add(b))
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        self.zip_with(o, |a, b| a.sub(b))
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.map(|c| c.neg())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = c.render();
            let c = if c.contains(['+', 'i']) || c[1..].contains('-') {
                format!("({c})")
            } else {
                c
            };
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> Serialize for Poly<R> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Value::Array(self.coeffs.iter().map(Ring::to_json).collect()).serialize(s)
    }
}

impl<'de, R: Ring> Deserialize<'de> for Poly<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let arr = v
            .as_array()
            .ok_or_else(|| D::Error::custom("polynomial must be a JSON array"))?;
        arr.iter()
            .map(R::from_json)
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
            .ok_or_else(|| D::Error::custom("bad polynomial coefficient"))
    }
}

impl IntPoly {
    pub fn to_gauss(&self) -> GaussPoly {
        self.map(|c| GaussInt::real(c.clone()))
    }

    pub fn to_rational(&self) -> RatPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(<BigInt as Zero>::zero(), |g, c| g.gcd(c))
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == BigInt::from(1)
    }

    /// Coefficient index of the first entry not divisible by `m`.
    pub fn first_not_divisible(&self, m: &BigInt) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| !Zero::is_zero(&c.mod_floor(m)))
    }

    pub fn sign_of_lc(&self) -> i32 {
        match self.coeffs.last() {
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }
}

impl GaussPoly {
    pub fn conj(&self) -> GaussPoly {
        self.map(GaussInt::conj)
    }

    /// The real polynomial, if every imaginary part vanishes.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs()
            .iter()
            .all(GaussInt::is_real)
            .then(|| self.map(|c| c.re.clone()))
    }

    /// The polynomial `R` with `self = i·R`, if every real part vanishes.
    pub fn div_i_to_int(&self) -> Option<IntPoly> {
        self.coeffs()
            .iter()
            .all(GaussInt::is_imaginary)
            .then(|| self.map(|c| c.im.clone()))
    }

    pub fn mul_i_pow(&self, k: u32) -> GaussPoly {
        self.map(|c| c.mul_i_pow(k))
    }
}

/// Builds `a + b·i` coefficientwise from two real polynomials.
pub fn gauss_from_parts(re: &IntPoly, im: &IntPoly) -> GaussPoly {
    let n = re.coeffs().len().max(im.coeffs().len());
    Poly::new(
        (0..n)
            .map(|k| GaussInt::new(re.coeff(k), im.coeff(k)))
            .collect(),
    )
}
