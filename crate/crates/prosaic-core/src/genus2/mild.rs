//! Naive reductions after the substitution `x = r + mX`, `y = m²Y` at an odd prime.
//!
//! Completing the square, `y² + Qy = P` becomes `W² = F` with `W = 2y + Q`, and
//! the substitution turns this into `W'² = F(r + mX)/m⁴`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{discriminant, IntPoly};
use crate::error::{Error, Result};
use crate::primes::{is_prime, pow_mod, sqrt_mod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reduction {
    Elliptic,
    Node,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MildVerdict {
    Mild,
    NodePlusElliptic,
    NotMild,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MildReport {
    pub p: u64,
    /// Whether the roots of `s` lie in `ℤ_p` rather than its unramified quadratic extension.
    pub split: bool,
    pub reductions: [Reduction; 2],
    pub verdict: MildVerdict,
}

/// `a + b t` with `t² = d`, coefficients mod `q`.
#[derive(Clone, Debug)]
struct Quad {
    a: BigInt,
    b: BigInt,
}

struct QuadRing {
    q: BigInt,
    d: BigInt,
}

impl QuadRing {
    fn norm(&self, a: BigInt, b: BigInt) -> Quad {
        Quad {
            a: a.mod_floor(&self.q),
            b: b.mod_floor(&self.q),
        }
    }
    fn add(&self, x: &Quad, y: &Quad) -> Quad {
        self.norm(&x.a + &y.a, &x.b + &y.b)
    }
    fn mul(&self, x: &Quad, y: &Quad) -> Quad {
        self.norm(
            &x.a * &y.a + &x.b * &y.b * &self.d,
            &x.a * &y.b + &x.b * &y.a,
        )
    }
}

/// Arithmetic in `F_p` or `F_p(√d)`; split elements keep `b = 0`.
#[derive(Clone, Copy)]
struct Fq {
    p: u64,
    d: u64,
}

type E = (u64, u64);

impl Fq {
    fn sub(&self, x: E, y: E) -> E {
        ((x.0 + self.p - y.0) % self.p, (x.1 + self.p - y.1) % self.p)
    }
    fn mul(&self, x: E, y: E) -> E {
        let p = self.p as u128;
        let (a, b, c, e) = (x.0 as u128, x.1 as u128, y.0 as u128, y.1 as u128);
        (
            ((a * c + b * e % p * self.d as u128) % p) as u64,
            ((a * e + b * c) % p) as u64,
        )
    }
    fn inv(&self, x: E) -> E {
        let p = self.p as u128;
        let n = (x.0 as u128 * x.0 as u128 % p + p
            - x.1 as u128 * x.1 as u128 % p * self.d as u128 % p)
            % p;
        let ni = pow_mod(n as u64, self.p - 2, self.p);
        self.mul((x.0, (self.p - x.1) % self.p), (ni, 0))
    }
    fn scalar(&self, k: u64, x: E) -> E {
        self.mul((k % self.p, 0), x)
    }
}

fn trim(mut v: Vec<E>) -> Vec<E> {
    while v.last() == Some(&(0, 0)) {
        v.pop();
    }
    v
}

fn poly_rem(k: &Fq, a: &[E], b: &[E]) -> Vec<E> {
    let mut r = a.to_vec();
    let lb = *b.last().expect("nonzero divisor");
    let li = k.inv(lb);
    while r.len() >= b.len() {
        let c = k.mul(*r.last().unwrap(), li);
        let shift = r.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = k.sub(r[shift + i], k.mul(c, bi));
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd_degree(k: &Fq, a: &[E], b: &[E]) -> usize {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(k, &a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Reduction type of `W² = G(X)` viewed as a binary quartic.
fn classify(k: &Fq, g: &[E]) -> Reduction {
    let g = trim(g.to_vec());
    if g.is_empty() || g.len() > 5 {
        return Reduction::Other;
    }
    let deg = g.len() - 1;
    let deriv: Vec<E> = (1..g.len()).map(|j| k.scalar(j as u64, g[j])).collect();
    let sq = if trim(deriv.clone()).is_empty() {
        deg
    } else {
        gcd_degree(k, &g, &deriv)
    };
    match 4 - deg {
        0 | 1 => match sq {
            0 => Reduction::Elliptic,
            1 => Reduction::Node,
            _ => Reduction::Other,
        },
        2 if sq == 0 => Reduction::Node,
        _ => Reduction::Other,
    }
}

fn hensel_sqrt(d: &BigInt, p: u64, q: &BigInt) -> Option<BigInt> {
    let dp = d.mod_floor(&BigInt::from(p)).to_u64()?;
    let mut w = BigInt::from(sqrt_mod(dp, p)?);
    for _ in 0..64 {
        let f = (&w * &w - d).mod_floor(q);
        if f.is_zero() {
            return Some(w);
        }
        let inv = (&w * 2u32).extended_gcd(q).x;
        w = (&w - f * inv).mod_floor(q);
    }
    ((&w * &w - d).mod_floor(q).is_zero()).then_some(w)
}

/// Classifies both reductions at the roots of the monic quadratic `s` for the
/// curve `W² = f`, with `p | m`.
pub fn mild_reduction_check(f: &IntPoly, s: &IntPoly, m: &BigInt, p: u64) -> Result<MildReport> {
    if p == 2 || !is_prime(p) || p >= 1 << 32 {
        return Err(Error::domain(format!(
            "p = {p} must be an odd prime below 2^32"
        )));
    }
    if s.degree() != Some(2) || !s.is_monic() {
        return Err(Error::domain("s must be a monic quadratic"));
    }
    let bp = BigInt::from(p);
    let d = discriminant(s)?;
    if d.is_multiple_of(&bp) {
        return Err(Error::domain(format!("s is inseparable mod {p}")));
    }
    if m.is_zero() || !m.is_multiple_of(&bp) {
        return Err(Error::domain(format!("{p} does not divide m = {m}")));
    }
    let mut v = 0u32;
    let mut mm = m.clone();
    while mm.is_multiple_of(&bp) {
        mm /= &bp;
        v += 1;
    }
    let q = bp.pow(4 * v + 1);
    let ring = QuadRing {
        q: q.clone(),
        d: d.clone(),
    };
    let half = (&q + 1u32) / 2u32;
    let b = s.coeff(1);
    let (split, roots) = match hensel_sqrt(&d, p, &q) {
        Some(w) => {
            let base = -&b * &half;
            (
                true,
                [
                    ring.norm(&base + &w * &half, BigInt::zero()),
                    ring.norm(&base - &w * &half, BigInt::zero()),
                ],
            )
        }
        None => {
            let base = -&b * &half;
            (
                false,
                [
                    ring.norm(base.clone(), half.clone()),
                    ring.norm(base, -&half),
                ],
            )
        }
    };
    let field = Fq {
        p,
        d: d.mod_floor(&bp).to_u64().expect("below p"),
    };
    let scale = bp.pow(4 * v);
    let mut reductions = [Reduction::Other; 2];
    for (slot, r) in reductions.iter_mut().zip(roots.iter()) {
        // Horner in the variable X for F(r + mX)
        let lin = [r.clone(), ring.norm(m.clone(), BigInt::zero())];
        let mut acc: Vec<Quad> = Vec::new();
        for c in f.coeffs().iter().rev() {
            let mut next = vec![ring.norm(BigInt::zero(), BigInt::zero()); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] = ring.add(&next[i], &ring.mul(a, &lin[0]));
                next[i + 1] = ring.add(&next[i + 1], &ring.mul(a, &lin[1]));
            }
            next[0] = ring.add(&next[0], &ring.norm(c.clone(), BigInt::zero()));
            acc = next;
        }
        let mut g = Vec::with_capacity(acc.len());
        for (j, c) in acc.iter().enumerate() {
            if !c.a.is_multiple_of(&scale) || !c.b.is_multiple_of(&scale) {
                return Err(Error::Hypothesis(format!(
                    "coefficient of X^{j} in F(r + mX) is not divisible by {p}^{}",
                    4 * v
                )));
            }
            let red = |z: &BigInt| (z / &scale).mod_floor(&bp).to_u64().expect("below p");
            g.push((red(&c.a), red(&c.b)));
        }
        *slot = classify(&field, &g);
    }
    let elliptic = reductions
        .iter()
        .filter(|r| **r == Reduction::Elliptic)
        .count();
    let nodes = reductions.iter().filter(|r| **r == Reduction::Node).count();
    let verdict = match (elliptic, nodes) {
        (2, _) => MildVerdict::Mild,
        (1, 1) => MildVerdict::NodePlusElliptic,
        _ => MildVerdict::NotMild,
    };
    Ok(MildReport {
        p,
        split,
        reductions,
        verdict,
    })
}
