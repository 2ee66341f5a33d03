//! Primality, Cornacchia representations and the P1 / P3 / P1* labels.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const RHO_STEPS: u64 = 1 << 26;
const TRIAL_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin on big integers: exact below 2⁶⁴, probabilistic with fixed bases above.
pub fn is_prime_big(n: &BigInt) -> bool {
    if let Some(m) = n.to_u64() {
        return is_prime(m);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [
        2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes up to and including `limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

fn small_primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

/// Primes `p ≡ 1 mod 8` in `[lo, hi]`.
pub fn primes_one_mod_eight(lo: u64, hi: u64) -> Vec<u64> {
    primes_up_to(hi)
        .into_iter()
        .filter(|&p| p >= lo && p % 8 == 1)
        .collect()
}

pub fn isqrt(n: u64) -> u64 {
    n.sqrt()
}

pub fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// A square root of `a` modulo an odd prime `p` (Tonelli–Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let qd = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, qd, p);
    let mut t = pow_mod(a, qd, p);
    let mut r = pow_mod(a, qd.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Positive `(a, b)` with `p = a² + d·b²`, by Cornacchia's descent.
///
/// Returns `Ok(None)` when no representation exists.
pub fn cornacchia(p: u64, d: u64) -> Result<Option<(u64, u64)>> {
    if !is_prime(p) {
        return Err(Error::domain(format!("cornacchia: {p} is not prime")));
    }
    if d == 0 {
        return Err(Error::domain("cornacchia: d must be positive"));
    }
    if d >= p || p == 2 {
        return Ok(None);
    }
    let Some(mut r0) = sqrt_mod(p - d % p, p) else {
        return Ok(None);
    };
    if r0 > p / 2 {
        r0 = p - r0;
    }
    let bound = isqrt(p);
    let (mut a, mut b) = (p, r0);
    while b > bound {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = p - b * b;
    if rest % d != 0 || !is_square(rest / d) {
        return Ok(None);
    }
    let s = isqrt(rest / d);
    Ok((s > 0 && b > 0).then_some((b, s)))
}

/// Exhaustive search for `p = a² + d·b²`, the test oracle for [`cornacchia`].
pub fn cornacchia_exhaustive(p: u64, d: u64) -> Option<(u64, u64)> {
    (1..)
        .take_while(|&b| d * b * b < p)
        .find_map(|b| {
            let rest = p - d * b * b;
            is_square(rest).then(|| (isqrt(rest), b))
        })
        .filter(|&(a, _)| a > 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    P1,
    P3,
    #[serde(rename = "NOT_1_MOD_8")]
    NotOneModEight,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Label::P1 => "P1",
            Label::P3 => "P3",
            Label::NotOneModEight => "NOT_1_MOD_8",
        })
    }
}

/// P1 when `a + 4b ≡ ±1 mod 8`, P3 when `a + 4b ≡ ±3 mod 8`.
pub fn label_of(a: i64, b: i64) -> Label {
    match (a + 4 * b).rem_euclid(8) {
        1 | 7 => Label::P1,
        3 | 5 => Label::P3,
        _ => Label::NotOneModEight,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeProfile {
    pub p: u64,
    pub a16: Option<u64>,
    pub b16: Option<u64>,
    pub a64: Option<u64>,
    pub c64: Option<u64>,
    pub label: Label,
    pub in_p1_star: bool,
}

pub fn classify(p: u64) -> Result<PrimeProfile> {
    if !is_prime(p) {
        return Err(Error::domain(format!("classify: {p} is not prime")));
    }
    let mut prof = PrimeProfile {
        p,
        a16: None,
        b16: None,
        a64: None,
        c64: None,
        label: Label::NotOneModEight,
        in_p1_star: false,
    };
    if p % 8 != 1 {
        return Ok(prof);
    }
    let (a, b) = cornacchia(p, 16)?
        .ok_or_else(|| Error::internal(format!("{p} ≡ 1 mod 8 has no form a²+16b²")))?;
    prof.a16 = Some(a);
    prof.b16 = Some(b);
    prof.label = label_of(a as i64, b as i64);
    if let Some((a, c)) = cornacchia(p, 64)? {
        prof.a64 = Some(a);
        prof.c64 = Some(c);
    }
    prof.in_p1_star = in_p1_star(p)?;
    Ok(prof)
}

/// `p = a² + 64c²` with `a ≡ ±1 mod 8`.
pub fn p1_star_by_form(p: u64) -> Result<bool> {
    Ok(matches!(cornacchia(p, 64)?, Some((a, _)) if a % 8 == 1 || a % 8 == 7))
}

/// `p` in P1 and `p ≡ 1 mod 16`.
pub fn p1_star_by_congruence(p: u64) -> Result<bool> {
    if p % 16 != 1 {
        return Ok(false);
    }
    let (a, b) = cornacchia(p, 16)?
        .ok_or_else(|| Error::internal(format!("{p} ≡ 1 mod 8 has no form a²+16b²")))?;
    Ok(label_of(a as i64, b as i64) == Label::P1)
}

/// Membership in P1*, with both characterizations cross-checked.
pub fn in_p1_star(p: u64) -> Result<bool> {
    let by_form = p1_star_by_form(p)?;
    let by_congruence = p1_star_by_congruence(p)?;
    if by_form != by_congruence {
        return Err(Error::internal(format!(
            "P1* characterizations disagree at {p}: form {by_form}, congruence {by_congruence}"
        )));
    }
    Ok(by_form)
}

/// Nontrivial factor of a composite `n` coprime to the trial primes.
fn pollard_brent(n: &BigInt) -> Result<BigInt> {
    let r = n.sqrt();
    if &r * &r == *n {
        return Ok(r);
    }
    let one = <BigInt as One>::one();
    for c in 1u32..=32 {
        let f = |x: &BigInt| (x * x + c) % n;
        let (mut y, mut g, mut len) = (BigInt::from(2), one.clone(), 1u64);
        let mut x;
        let mut steps = 0u64;
        while g.is_one() && steps < RHO_STEPS {
            x = y.clone();
            for _ in 0..len {
                y = f(&y);
            }
            let mut k = 0;
            while k < len && g.is_one() {
                let ys = y.clone();
                let mut q = one.clone();
                for _ in 0..len.min(128).min(len - k) {
                    y = f(&y);
                    q = q * (&x - &y).abs() % n;
                }
                g = q.gcd(n);
                if g == *n {
                    // Step back one at a time from the saved point.
                    y = ys;
                    loop {
                        y = f(&y);
                        g = (&x - &y).abs().gcd(n);
                        if !g.is_one() {
                            break;
                        }
                    }
                }
                k += 128;
            }
            steps += len;
            len *= 2;
        }
        if !g.is_one() && g != *n {
            return Ok(g);
        }
    }
    Err(Error::Capacity(format!(
        "no factor of {n} found within the rho step budget"
    )))
}

/// Prime factorization of `|n|`: trial division to 10⁶, then Pollard–Brent rho.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::domain("factor of zero"));
    }
    let mut n = n.abs();
    let mut out = Vec::new();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if n.is_one() {
        return Ok(out);
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_big(&m) {
            match out.iter_mut().find(|(q, _)| *q == m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let d = pollard_brent(&m)?;
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    Ok(out)
}

/// Product of the distinct primes dividing `n`.
pub fn core(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::domain("core(0) is undefined"));
    }
    Ok(factor(n)?.into_iter().map(|(p, _)| p).product())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaReport {
    pub pass: bool,
    pub omega: u32,
    pub omega2: u32,
}

/// `2g ≤ Ω(N) + Ω₂(N)`, with `Ω₂` counting prime factors `≡ ±1 mod 8`.
pub fn omega_bound_check(n: &BigInt, g: u32) -> Result<OmegaReport> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::domain("omega bound needs an odd positive conductor"));
    }
    if g == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    let eight = BigInt::from(8);
    let (mut omega, mut omega2) = (0, 0);
    for (p, e) in factor(n)? {
        omega += e;
        let r = p.mod_floor(&eight);
        if r == BigInt::one() || r == BigInt::from(7) {
            omega2 += e;
        }
    }
    Ok(OmegaReport {
        pass: 2 * g <= omega + omega2,
        omega,
        omega2,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub bound: u64,
    pub p1: usize,
    pub p1_star: usize,
    pub fraction: f64,
}

/// How many P1 primes below `bound` lie in P1*.
pub fn p1_star_density(bound: u64) -> Result<DensityReport> {
    let (mut p1, mut star) = (0usize, 0usize);
    for p in primes_one_mod_eight(2, bound.saturating_sub(1)) {
        let prof = classify(p)?;
        if prof.label == Label::P1 {
            p1 += 1;
            if prof.in_p1_star {
                star += 1;
            }
        }
    }
    Ok(DensityReport {
        bound,
        p1,
        p1_star: star,
        fraction: if p1 == 0 {
            0.0
        } else {
            star as f64 / p1 as f64
        },
    })
}
