use super::poly::{GaussPoly, IntPoly, Poly};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate division is exact in an integral domain, so the
/// computation never leaves the coefficient ring.
pub fn det_bareiss<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t
                    .div_exact(&prev)
                    .expect("Bareiss step is exact in an integral domain");
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

fn sylvester<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Vec<Vec<R>> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, deg, shifts) in [(f, m, n), (g, n, m)] {
        for s in 0..shifts {
            let mut row = vec![R::zero(); size];
            for k in 0..=deg {
                row[s + k] = p.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    rows
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn resultant<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Result<R> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::domain("resultant of the zero polynomial"));
    }
    Ok(det_bareiss(sylvester(f, g)))
}

/// `(−1)^{d(d−1)/2} · res(f, f′) / lc(f)`.
pub fn discriminant<R: Ring>(f: &Poly<R>) -> Result<R> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::domain("discriminant needs degree at least 1")),
    };
    let r = resultant(f, &f.derivative())?;
    let q = r
        .div_exact(&f.lc())
        .ok_or_else(|| Error::internal("res(f, f') not divisible by lc(f)"))?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 {
        q.neg()
    } else {
        q
    })
}

/// `h · h̄`, which has real coefficients.
pub fn conj_product(h: &GaussPoly) -> IntPoly {
    (h * &h.conj())
        .to_int()
        .expect("h times its conjugate is real")
}
