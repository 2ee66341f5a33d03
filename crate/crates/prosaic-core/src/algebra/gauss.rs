use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::ring::{self, parse_int};

/// An element `re + im·i` of ℤ\[i\].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<BigInt>) -> Self {
        GaussInt::new(re, 0)
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    /// Multiplication by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => GaussInt::new(-&self.im, self.re.clone()),
            2 => GaussInt::new(-&self.re, -&self.im),
            _ => GaussInt::new(self.im.clone(), -&self.re),
        }
    }

    /// Writes a nonzero element lying on an axis as `i^k · r` with `r` real and positive.
    pub fn axis_form(&self) -> Option<(u32, BigInt)> {
        if self.im.is_zero() && !self.re.is_zero() {
            Some(if self.re.is_positive() {
                (0, self.re.clone())
            } else {
                (2, -&self.re)
            })
        } else if self.re.is_zero() && !self.im.is_zero() {
            Some(if self.im.is_positive() {
                (1, self.im.clone())
            } else {
                (3, -&self.im)
            })
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussInt::real(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

impl<'a> Add<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn add(self, o: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn sub(self, o: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn mul(self, o: &GaussInt) -> GaussInt {
        GaussInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-&self.re, -&self.im)
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        &self + &o
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        &self - &o
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        &self * &o
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        -&self
    }
}

impl ring::Ring for GaussInt {
    fn zero() -> Self {
        GaussInt::default()
    }
    fn one() -> Self {
        GaussInt::new(<BigInt as One>::one(), <BigInt as Zero>::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: &BigInt) -> Self {
        GaussInt::real(n.clone())
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        let n = other.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let t = self * &other.conj();
        let (qr, rr) = t.re.div_rem(&n);
        let (qi, ri) = t.im.div_rem(&n);
        (Zero::is_zero(&rr) && Zero::is_zero(&ri)).then(|| GaussInt::new(qr, qi))
    }
    fn to_json(&self) -> Value {
        Value::Array(vec![
            Value::String(self.re.to_string()),
            Value::String(self.im.to_string()),
        ])
    }
    fn from_json(v: &Value) -> Option<Self> {
        match v.as_array()?.as_slice() {
            [re, im] => Some(GaussInt::new(parse_int(re)?, parse_int(im)?)),
            _ => None,
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ring::Ring::to_json(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        <GaussInt as ring::Ring>::from_json(&v)
            .ok_or_else(|| D::Error::custom("expected [\"re\",\"im\"]"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    #[test]
    fn norm_is_multiplicative() {
        let z = GaussInt::new(3, -2);
        let w = GaussInt::new(-5, 7);
        assert_eq!((&z * &w).norm(), z.norm() * w.norm());
        assert!((&z * &z.conj()).is_real());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn exact_division() {
        let z = GaussInt::new(3, -2);
        let w = GaussInt::new(1, 4);
        let p = &z * &w;
        assert_eq!(p.div_exact(&w), Some(z.clone()));
        assert_eq!(GaussInt::new(1, 0).div_exact(&GaussInt::new(1, 1)), None);
    }

    #[test]
    fn axis_form_and_powers_of_i() {
        assert_eq!(
            GaussInt::new(0, -16).axis_form(),
            Some((3, BigInt::from(16)))
        );
        assert_eq!(GaussInt::new(-4, 0).axis_form(), Some((2, BigInt::from(4))));
        assert_eq!(GaussInt::new(1, 1).axis_form(), None);
        let z = GaussInt::new(2, 5);
        assert_eq!(z.mul_i_pow(1), &z * &GaussInt::i());
        assert_eq!(z.mul_i_pow(6), -&z);
    }

    #[test]
    fn json_shape() {
        let z = GaussInt::new(-3, 8);
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"["-3","8"]"#);
        assert_eq!(serde_json::from_str::<GaussInt>(&s).unwrap(), z);
        assert_eq!(z.to_string(), "-3+8i");
        assert_eq!(GaussInt::new(1, -2).to_string(), "1-2i");
    }
}
