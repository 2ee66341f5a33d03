//! The chain modules Λ_k of the dihedral group of order 2^{e+2}.

use serde::Serialize;

use super::f2::{BitMatrix, Subspace, MAX_DIM};
use super::AdmissibleModule;
use crate::error::{Error, Result};

/// Which of σ_v, σ_λ plays the role of `g₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Role {
    /// `g₁ = σ_v`, `g₂ = σ_λ`; `V^m` is spanned by the `v_j` with `j ≡ k mod 2`.
    G1SigmaV,
    /// `g₁ = σ_λ`, `g₂ = σ_v`; `V^m` is spanned by the `v_j` with `j ≢ k mod 2`.
    G1SigmaL,
}

/// Basis `v_1..v_k` sits at bits `0..k-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaModule {
    pub k: usize,
    pub e: u32,
    pub s1: BitMatrix,
    pub s2: BitMatrix,
    pub faithful: bool,
}

fn bit(j: usize) -> u64 {
    1u64 << (j - 1)
}

/// `Λ_k` for the group of exponent parameter `e`; `None` when `k > 2^{e+1}`.
pub fn build_lambda(k: usize, e: u32) -> Result<Option<LambdaModule>> {
    if k == 0 || e == 0 {
        return Err(Error::domain("k and e must be at least 1"));
    }
    let bound = 1u128.checked_shl(e + 1).unwrap_or(u128::MAX);
    if k as u128 > bound {
        return Ok(None);
    }
    if k > MAX_DIM {
        return Err(Error::Capacity(format!(
            "Λ_{k} exceeds dimension {MAX_DIM}"
        )));
    }
    let mut c1 = Vec::with_capacity(k);
    let mut c2 = Vec::with_capacity(k);
    for j in 1..=k {
        let down = if j > 1 { bit(j - 1) } else { 0 };
        if (k - j) % 2 == 0 {
            c1.push(bit(j) | down);
            c2.push(bit(j));
        } else {
            c1.push(bit(j));
            c2.push(bit(j) | down);
        }
    }
    Ok(Some(LambdaModule {
        k,
        e,
        s1: BitMatrix::from_cols(k, c1)?,
        s2: BitMatrix::from_cols(k, c2)?,
        faithful: k as u128 > bound / 2,
    }))
}

impl LambdaModule {
    /// `t = S₂·S₁`.
    pub fn t(&self) -> BitMatrix {
        self.s2.mul(&self.s1)
    }

    pub fn t_order(&self) -> u64 {
        self.t().two_power_order().expect("t is unipotent")
    }

    /// Smallest `i` with `(t − 1)^i = 0`.
    pub fn nilpotency_index(&self) -> usize {
        let n = self.t().minus_identity();
        let mut m = BitMatrix::identity(self.k);
        for i in 0..=self.k {
            if m.is_zero() {
                return i;
            }
            m = m.mul(&n);
        }
        unreachable!("t - 1 is nilpotent")
    }

    pub fn multiplicative_part(&self, role: Role) -> Subspace {
        let k = self.k;
        let same = |j: usize| (k - j) % 2 == 0;
        Subspace::coordinate(
            k,
            (1..=k)
                .filter(|&j| match role {
                    Role::G1SigmaV => same(j),
                    Role::G1SigmaL => !same(j),
                })
                .map(|j| j - 1),
        )
    }

    pub fn view(&self, role: Role) -> Result<AdmissibleModule> {
        let (sv, sl) = match role {
            Role::G1SigmaV => (self.s1.clone(), self.s2.clone()),
            Role::G1SigmaL => (self.s2.clone(), self.s1.clone()),
        };
        AdmissibleModule::new(sv, sl, self.multiplicative_part(role))
    }
}

/// `t^{2^m}(v_j)` by the recursion `t^{2^m} v_j = v_j + t^{2^{m−1}} v_{j−2^m}`,
/// with `v_i = 0` for `i < 1`.
pub fn t_power_recursive(l: &LambdaModule, m: u32, j: i64) -> u64 {
    let k = l.k as i64;
    if j < 1 || j > k {
        return 0;
    }
    let v = |i: i64| {
        if (1..=k).contains(&i) {
            bit(i as usize)
        } else {
            0
        }
    };
    if m == 0 {
        let mut out = v(j) ^ v(j - 1);
        if (k - j) % 2 == 0 {
            out ^= v(j - 2);
        }
        return out;
    }
    v(j) ^ t_power_recursive(l, m - 1, j - (1i64 << m))
}

/// `t^{2^m}(v_j)` by matrix power, cross-checked against the recursion.
pub fn t_power(m: u32, l: &LambdaModule, j: usize) -> Result<u64> {
    if j < 1 || j > l.k {
        return Err(Error::domain(format!("index {j} outside 1..={}", l.k)));
    }
    if m >= 64 || (1u64 << m) > l.k as u64 {
        return Err(Error::domain(format!("2^{m} exceeds k = {}", l.k)));
    }
    let direct = l.t().pow(1u64 << m).apply(bit(j));
    let rec = t_power_recursive(l, m, j as i64);
    if direct != rec {
        return Err(Error::internal(format!(
            "t^(2^{m}) v_{j}: matrix {direct:#b}, recursion {rec:#b}"
        )));
    }
    Ok(direct)
}
