//! Splitting a balanced module into Φ-blocs.
//!
//! On a balanced module `S_v − 1` maps `V^m` isomorphically onto a complement,
//! so the module is determined by the nilpotent `N = (S_λ−1)(S_v−1)` on `V^m`.
//! A Jordan chain of `N` of length `d` spans, together with its image under
//! `S_v − 1`, a copy of `Φ_d`.

use serde::Serialize;

use super::f2::{BitMatrix, CoordBasis};
use super::phi::{standard_bloc, PhiBlocModule};
use super::AdmissibleModule;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub blocs: Vec<PhiBlocModule>,
    /// Column `c` holds the coordinates of the `c`-th adapted basis vector.
    #[serde(serialize_with = "rows")]
    pub basis: BitMatrix,
    /// Bloc sizes `d`, largest first.
    pub sizes: Vec<usize>,
}

fn rows<S: serde::Serializer>(m: &BitMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.rows())
}

fn height(n: &BitMatrix, mut x: u64) -> usize {
    let mut h = 0;
    while x != 0 {
        x = n.apply(x);
        h += 1;
    }
    h
}

/// Generators and heights of a Jordan basis of the nilpotent `n` on `F₂^r`.
fn jordan(n: &BitMatrix) -> Result<Vec<(u64, usize)>> {
    let r = n.dim();
    if r == 0 {
        return Ok(Vec::new());
    }
    let (x, a) = (0..r)
        .map(|i| (1u64 << i, height(n, 1u64 << i)))
        .max_by_key(|&(v, h)| (h, std::cmp::Reverse(v)))
        .expect("r > 0");
    let mut vectors = Vec::with_capacity(r);
    let mut y = x;
    for _ in 0..a {
        vectors.push(y);
        y = n.apply(y);
    }
    let mut span = super::f2::Subspace::span(r, vectors.iter().copied());
    for j in 0..r {
        if span.insert(1u64 << j) {
            vectors.push(1u64 << j);
        }
    }
    let basis =
        CoordBasis::new(r, &vectors).ok_or_else(|| Error::internal("Jordan chain dependent"))?;
    let coords = |v: u64| basis.coords(v).expect("full basis");
    let rest = r - a;
    let quotient = BitMatrix::from_cols(
        rest,
        (0..rest)
            .map(|j| coords(n.apply(vectors[a + j])) >> a)
            .collect(),
    )?;
    let mut out = vec![(x, a)];
    for (q, b) in jordan(&quotient)? {
        let lift = basis.combine(q << a);
        let c = coords(n.pow(b as u64).apply(lift));
        if c >> a != 0 || c & ((1u64 << b) - 1) != 0 {
            return Err(Error::internal("correction step left the chain"));
        }
        // N^b(lift) = Σ_{i≥b} β_i N^i x; subtract Σ β_i N^{i−b} x
        let mut fixed = lift;
        for i in b..a {
            if c >> i & 1 == 1 {
                fixed ^= vectors[i - b];
            }
        }
        out.push((fixed, b));
    }
    Ok(out)
}

/// `None` when `v` is not balanced.
pub fn decompose_phi_blocs(v: &AdmissibleModule) -> Result<Option<Decomposition>> {
    if !v.is_balanced() {
        return Ok(None);
    }
    let n = v.dim();
    let r = v.dim_vm();
    let nv = v.sv().minus_identity();
    let nl = v.sl().minus_identity();
    let vm = CoordBasis::new(n, v.vm().basis()).expect("echelon basis");
    let nm = BitMatrix::from_cols(
        r,
        vm.vectors()
            .iter()
            .map(|&m| {
                vm.coords(nl.apply(nv.apply(m)))
                    .ok_or_else(|| Error::internal("N does not preserve Vm"))
            })
            .collect::<Result<_>>()?,
    )?;
    if !nm.pow(r as u64).is_zero() {
        return Err(Error::internal("N is not nilpotent on Vm"));
    }
    let mut gens = jordan(&nm)?;
    gens.sort_by_key(|g| std::cmp::Reverse(g.1));

    let mut cols = Vec::with_capacity(n);
    let mut blocs = Vec::with_capacity(gens.len());
    for &(g, d) in &gens {
        // y_{2d} = g, y_{2i−1} = (S_v−1) y_{2i}, y_{2i−2} = (S_λ−1) y_{2i−1}
        let mut chain = vec![0u64; 2 * d];
        chain[2 * d - 1] = vm.combine(g);
        for j in (0..2 * d - 1).rev() {
            let up = chain[j + 1];
            chain[j] = if (2 * d - 1 - j) % 2 == 1 {
                nv.apply(up)
            } else {
                nl.apply(up)
            };
        }
        cols.extend(chain);
        blocs.push(standard_bloc(d)?);
    }
    let basis = BitMatrix::from_cols(n, cols)?;
    let inv = basis
        .inverse()
        .ok_or_else(|| Error::internal("adapted vectors are dependent"))?;
    let parts: Vec<&AdmissibleModule> = blocs.iter().map(|b| &b.module).collect();
    let model = AdmissibleModule::direct_sum(&parts)?;
    if inv.mul(v.sv()).mul(&basis) != *model.sv()
        || inv.mul(v.sl()).mul(&basis) != *model.sl()
        || v.vm().image(&inv) != *model.vm()
    {
        return Err(Error::internal(
            "change of basis does not reconstruct the module",
        ));
    }
    let sizes = gens.iter().map(|&(_, d)| d).collect();
    Ok(Some(Decomposition {
        blocs,
        basis,
        sizes,
    }))
}
