//! Dense linear algebra over F₂ in dimension at most 64.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Square matrix over F₂ stored by columns: `cols[j]` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    cols: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        write!(f, "{}", self.grid())
    }
}

impl BitMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension above {MAX_DIM}");
        BitMatrix {
            n,
            cols: vec![0; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension above {MAX_DIM}");
        BitMatrix {
            n,
            cols: (0..n).map(|j| 1u64 << j).collect(),
        }
    }

    pub fn from_cols(n: usize, cols: Vec<u64>) -> Result<Self> {
        if n > MAX_DIM || cols.len() != n || cols.iter().any(|&c| c & !mask(n) != 0) {
            return Err(Error::domain(format!("bad {n}x{n} column data")));
        }
        Ok(BitMatrix { n, cols })
    }

    /// Builds from row bitmasks: bit `j` of `rows[i]` is the entry `(i, j)`.
    pub fn from_rows(n: usize, rows: &[u64]) -> Result<Self> {
        if n > MAX_DIM || rows.len() != n || rows.iter().any(|&r| r & !mask(n) != 0) {
            return Err(Error::domain(format!("bad {n}x{n} row data")));
        }
        let mut cols = vec![0u64; n];
        for (i, &r) in rows.iter().enumerate() {
            for (j, c) in cols.iter_mut().enumerate() {
                if r >> j & 1 == 1 {
                    *c |= 1 << i;
                }
            }
        }
        Ok(BitMatrix { n, cols })
    }

    pub fn rows(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| {
                self.cols
                    .iter()
                    .enumerate()
                    .fold(0u64, |r, (j, &c)| r | ((c >> i & 1) << j))
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn col(&self, j: usize) -> u64 {
        self.cols[j]
    }

    pub fn cols(&self) -> &[u64] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cols[j] >> i & 1 == 1
    }

    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut v = v;
        while v != 0 {
            let j = v.trailing_zeros() as usize;
            out ^= self.cols[j];
            v &= v - 1;
        }
        out
    }

    /// `self ∘ o`.
    pub fn mul(&self, o: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        BitMatrix {
            n: self.n,
            cols: o.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, o: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        BitMatrix {
            n: self.n,
            cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a ^ b).collect(),
        }
    }

    /// `self − I`, which is also `self + I` over F₂.
    pub fn minus_identity(&self) -> BitMatrix {
        self.add(&BitMatrix::identity(self.n))
    }

    pub fn pow(&self, mut e: u64) -> BitMatrix {
        let mut acc = BitMatrix::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|&c| c == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == BitMatrix::identity(self.n)
    }

    pub fn rank(&self) -> usize {
        Subspace::span(self.n, self.cols.iter().copied()).dim()
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        let basis = CoordBasis::new(self.n, &self.cols)?;
        Some(BitMatrix {
            n: self.n,
            cols: (0..self.n)
                .map(|j| basis.coords(1 << j).expect("full rank"))
                .collect(),
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[&BitMatrix]) -> Result<BitMatrix> {
        let n: usize = parts.iter().map(|m| m.n).sum();
        if n > MAX_DIM {
            return Err(Error::domain(format!("direct sum of dimension {n}")));
        }
        let mut cols = Vec::with_capacity(n);
        let mut shift = 0;
        for m in parts {
            cols.extend(m.cols.iter().map(|&c| c << shift));
            shift += m.n;
        }
        Ok(BitMatrix { n, cols })
    }

    /// Smallest `2^s` with `self^(2^s) = I`, for a unipotent matrix.
    pub fn two_power_order(&self) -> Option<u64> {
        let mut m = self.clone();
        let mut ord = 1u64;
        for _ in 0..=7 {
            if m.is_identity() {
                return Some(ord);
            }
            m = m.mul(&m);
            ord *= 2;
        }
        None
    }

    /// Rendering as rows of `0`/`1`.
    pub fn grid(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if self.get(i, j) { '1' } else { '0' });
                if j + 1 < self.n {
                    s.push(' ');
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Subspace of F₂ⁿ, basis kept in reduced echelon form keyed by highest set bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: Vec<u64>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace::span(n, (0..n).map(|j| 1u64 << j))
    }

    pub fn span(n: usize, vecs: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Subspace::zero(n);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        Subspace::span(n, idx.into_iter().map(|j| 1u64 << j))
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    /// Remainder of `v` after elimination against the basis.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &b in &self.basis {
            let lead = 63 - b.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v & mask(self.n));
        if r == 0 {
            return false;
        }
        let lead = 63 - r.leading_zeros();
        for b in self.basis.iter_mut() {
            if *b >> lead & 1 == 1 {
                *b ^= r;
            }
        }
        self.basis.push(r);
        self.basis.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.basis.iter().all(|&v| o.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut s = self.clone();
        for &v in &o.basis {
            s.insert(v);
        }
        s
    }

    pub fn image(&self, m: &BitMatrix) -> Subspace {
        Subspace::span(self.n, self.basis.iter().map(|&v| m.apply(v)))
    }

    pub fn kernel(m: &BitMatrix) -> Subspace {
        let n = m.dim();
        // eliminate pairs (M e_j, e_j) on the first component
        let mut rows: Vec<(u64, u64)> = (0..n).map(|j| (m.col(j), 1u64 << j)).collect();
        let mut kernel = Subspace::zero(n);
        let mut pivots: Vec<(u64, u64)> = Vec::new();
        for (mut img, mut src) in rows.drain(..) {
            for &(pi, ps) in &pivots {
                let lead = 63 - pi.leading_zeros();
                if img >> lead & 1 == 1 {
                    img ^= pi;
                    src ^= ps;
                }
            }
            if img == 0 {
                kernel.insert(src);
            } else {
                pivots.push((img, src));
                pivots.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
            }
        }
        kernel
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        // Zassenhaus: rows (u, u) and (w, 0) in F₂^{2n}
        let n = self.n;
        let mut rows: Vec<u128> = self
            .basis
            .iter()
            .map(|&u| (u as u128) << 64 | u as u128)
            .chain(o.basis.iter().map(|&w| (w as u128) << 64))
            .collect();
        let mut pivots: Vec<u128> = Vec::new();
        for mut r in rows.drain(..) {
            for &p in &pivots {
                let lead = 127 - p.leading_zeros();
                if r >> lead & 1 == 1 {
                    r ^= p;
                }
            }
            if r != 0 {
                pivots.push(r);
                pivots.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        Subspace::span(
            n,
            pivots
                .into_iter()
                .filter(|&r| r >> 64 == 0)
                .map(|r| r as u64),
        )
    }
}

/// Coordinates with respect to a fixed list of independent vectors.
#[derive(Clone, Debug)]
pub struct CoordBasis {
    vectors: Vec<u64>,
    // echelon rows paired with the combination of `vectors` producing them
    pivots: Vec<(u64, u64)>,
}

impl CoordBasis {
    /// `None` when the vectors are dependent.
    pub fn new(_n: usize, vectors: &[u64]) -> Option<Self> {
        let mut pivots: Vec<(u64, u64)> = Vec::new();
        for (k, &v) in vectors.iter().enumerate() {
            let (mut r, mut c) = (v, 1u64 << k);
            for &(p, pc) in &pivots {
                let lead = 63 - p.leading_zeros();
                if r >> lead & 1 == 1 {
                    r ^= p;
                    c ^= pc;
                }
            }
            if r == 0 {
                return None;
            }
            pivots.push((r, c));
            pivots.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
        }
        Some(CoordBasis {
            vectors: vectors.to_vec(),
            pivots,
        })
    }

    pub fn vectors(&self) -> &[u64] {
        &self.vectors
    }

    /// Bit `k` of the result is the coefficient of `vectors[k]`; `None` outside the span.
    pub fn coords(&self, v: u64) -> Option<u64> {
        let (mut r, mut c) = (v, 0u64);
        for &(p, pc) in &self.pivots {
            let lead = 63 - p.leading_zeros();
            if r >> lead & 1 == 1 {
                r ^= p;
                c ^= pc;
            }
        }
        (r == 0).then_some(c)
    }

    /// `Σ_k bit_k(c) · vectors[k]`.
    pub fn combine(&self, c: u64) -> u64 {
        self.vectors
            .iter()
            .enumerate()
            .filter(|(k, _)| c >> k & 1 == 1)
            .fold(0, |acc, (_, &v)| acc ^ v)
    }
}
