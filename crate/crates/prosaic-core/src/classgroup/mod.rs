//! Binary quadratic forms of negative discriminant and the 2-part of the class group.

mod cache;

use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{self, Label};

pub use cache::{H2Cache, H2Entry};

/// The form `a x² + b x y + c y²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// The principal form of discriminant `d`.
    pub fn principal(d: i64) -> Self {
        let b = d.rem_euclid(2);
        QuadForm::new(1, b, (b * b - d) / 4)
    }

    pub fn inverse(&self) -> Self {
        QuadForm::new(self.a, -self.b, self.c).reduce()
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// The reduced form equivalent to a positive definite `self`.
    pub fn reduce(&self) -> Self {
        let d = self.discriminant() as i128;
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            if !(-a < b && b <= a) {
                // shift b into (-a, a]
                let two_a = 2 * a;
                let mut nb = b.rem_euclid(two_a);
                if nb > a {
                    nb -= two_a;
                }
                b = nb;
                c = (b * b - d) / (4 * a);
            }
            if a > c {
                (a, b, c) = (c, -b, a);
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        QuadForm::new(a as i64, b as i64, c as i64)
    }
}

/// All reduced primitive forms of discriminant `d < 0`, sorted.
pub fn enumerate_reduced(d: i64) -> Result<Vec<QuadForm>> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::domain(format!(
            "discriminant {d} must be negative and ≡ 0 or 1 mod 4"
        )));
    }
    let amax = (-d / 3).sqrt();
    let mut out = Vec::new();
    for a in 1..=amax {
        let mut b = -a + 1;
        if (b - d).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let f = QuadForm::new(a, b, c);
                if c >= a && !(b < 0 && a == c) && f.is_primitive() {
                    out.push(f);
                }
            }
            b += 2;
        }
    }
    out.sort();
    Ok(out)
}

/// Gauss composition followed by reduction.
pub fn compose(f: &QuadForm, g: &QuadForm) -> Result<QuadForm> {
    let d = f.discriminant();
    if d != g.discriminant() {
        return Err(Error::domain(format!(
            "composition of discriminants {d} and {}",
            g.discriminant()
        )));
    }
    let (a1, b1) = (f.a as i128, f.b as i128);
    let (a2, b2) = (g.a as i128, g.b as i128);
    let dd = d as i128;
    let s = (b1 + b2) / 2;
    let (g1, u, v) = xgcd(a1, a2);
    let (e, w, z) = xgcd(g1, s);
    let (x, y) = (w * u, w * v);
    let a = a1 * a2 / (e * e);
    let num = x * a1 * b2 + y * a2 * b1 + z * (b1 * b2 + dd) / 2;
    if num % e != 0 {
        return Err(Error::internal("composition numerator not divisible by e"));
    }
    let b = (num / e).rem_euclid(2 * a);
    let c4 = b * b - dd;
    if c4 % (4 * a) != 0 {
        return Err(Error::internal("composed form has the wrong discriminant"));
    }
    let c = c4 / (4 * a);
    Ok(QuadForm::new(a as i64, b as i64, c as i64).reduce())
}

pub fn pow(f: &QuadForm, mut n: u64) -> Result<QuadForm> {
    let mut acc = QuadForm::principal(f.discriminant());
    let mut base = *f;
    while n > 0 {
        if n & 1 == 1 {
            acc = compose(&acc, &base)?;
        }
        base = compose(&base, &base)?;
        n >>= 1;
    }
    Ok(acc)
}

/// Order of a class whose order is known to be a power of two.
fn two_power_order(f: &QuadForm) -> Result<u64> {
    let one = QuadForm::principal(f.discriminant());
    let mut g = *f;
    let mut ord = 1;
    while g != one {
        g = compose(&g, &g)?;
        ord *= 2;
        if ord > 1 << 40 {
            return Err(Error::internal("class of non-2-power order"));
        }
    }
    Ok(ord)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormClassGroup {
    pub d: i64,
    pub forms: Vec<QuadForm>,
    pub h: u64,
    pub h2: u64,
    pub two_sylow_generator: QuadForm,
    /// Whether the generator attains order `h2`.
    pub cyclic: bool,
}

impl FormClassGroup {
    pub fn new(d: i64) -> Result<Self> {
        let forms = enumerate_reduced(d)?;
        let h = forms.len() as u64;
        let h2 = 1u64 << h.trailing_zeros();
        let odd = h / h2;
        let mut best = (0u64, QuadForm::principal(d));
        for f in &forms {
            let g = pow(f, odd)?;
            let ord = two_power_order(&g)?;
            if ord > best.0 {
                best = (ord, g);
                if ord == h2 {
                    break;
                }
            }
        }
        Ok(FormClassGroup {
            d,
            forms,
            h,
            h2,
            two_sylow_generator: best.1,
            cyclic: best.0 == h2,
        })
    }

    pub fn principal(&self) -> QuadForm {
        QuadForm::principal(self.d)
    }
}

fn check_one_mod_eight(p: u64) -> Result<()> {
    if !primes::is_prime(p) || p % 8 != 1 {
        return Err(Error::domain(format!("{p} is not a prime ≡ 1 mod 8")));
    }
    if p > 1 << 40 {
        return Err(Error::Capacity(format!(
            "{p} too large for form enumeration"
        )));
    }
    Ok(())
}

/// Class group of discriminant `−4p` for a prime `p ≡ 1 mod 8`.
pub fn class_group_of_prime(p: u64) -> Result<FormClassGroup> {
    check_one_mod_eight(p)?;
    FormClassGroup::new(-4 * p as i64)
}

/// Order of the 2-Sylow subgroup for discriminant `−4p`, uncached.
pub fn h2(p: u64) -> Result<u64> {
    Ok(class_group_of_prime(p)?.h2)
}

/// The class of the form above 2, `(2, 2, (p+1)/2)` reduced.
pub fn ramified_form_above_two(p: u64) -> Result<QuadForm> {
    check_one_mod_eight(p)?;
    Ok(QuadForm::new(2, 2, (p as i64 + 1) / 2).reduce())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub p: u64,
    pub g: u32,
    pub h2: u64,
    pub bound_ok: bool,
    pub p1star_required: bool,
    pub p1star_ok: bool,
    pub feasible: bool,
}

/// `2(g+1) ≤ h₂`, with P1* required once `2(g+2) ≤ h₂`.
pub fn rm_feasibility(p: u64, g: u32, cache: Option<&H2Cache>) -> Result<Feasibility> {
    if g == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    let h2 = match cache {
        Some(c) => c.get_or_compute(p)?.h2,
        None => h2(p)?,
    };
    let bound_ok = 2 * (g as u64 + 1) <= h2;
    let p1star_required = 2 * (g as u64 + 2) <= h2;
    let p1star_ok = primes::in_p1_star(p)?;
    Ok(Feasibility {
        p,
        g,
        h2,
        bound_ok,
        p1star_required,
        p1star_ok,
        feasible: bound_ok && (!p1star_required || p1star_ok),
    })
}

/// Largest `g` with `2(g+1) ≤ h₂`, zero when none.
pub fn max_dimension(h2: u64) -> u64 {
    (h2 / 2).saturating_sub(1)
}

/// `h₂ = 4 ⟺ P3` and `8 | h₂ ⟺ P1`.
pub fn genus_theory_consistent(label: Label, h2: u64) -> bool {
    (h2 == 4) == (label == Label::P3) && (h2 % 8 == 0) == (label == Label::P1)
}
