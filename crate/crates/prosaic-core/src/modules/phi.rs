//! Ξ, the module Φ and the blocs Φ_d.

use serde::{Deserialize, Serialize};

use super::f2::{BitMatrix, Subspace, MAX_DIM};
use super::lambda::{build_lambda, Role};
use super::AdmissibleModule;
use crate::error::{Error, Result};

/// Returns `n` for `h2 = 2^{n+1}`, `n ≥ 1`.
fn check_h2(h2: u64) -> Result<u32> {
    if h2 < 4 || !h2.is_power_of_two() {
        return Err(Error::domain(format!(
            "h2 = {h2} is not a power of 2 at least 4"
        )));
    }
    Ok(h2.trailing_zeros() - 1)
}

/// A cyclic module of dimension `2d` in its standard basis `y_1..y_{2d}`
/// (bits `0..2d-1`), generated by `y_{2d}`, with `V^m` spanned by the even `y_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiBlocModule {
    pub d: usize,
    pub generator: usize,
    pub module: AdmissibleModule,
}

impl PhiBlocModule {
    pub fn new(d: usize, module: AdmissibleModule) -> Result<Self> {
        if d == 0 || module.dim() != 2 * d {
            return Err(Error::domain(format!(
                "bloc of dimension {} for d = {d}",
                module.dim()
            )));
        }
        let even = Subspace::coordinate(2 * d, (1..2 * d).step_by(2));
        if *module.vm() != even {
            return Err(Error::domain("Vm is not spanned by the even basis vectors"));
        }
        let generator = 2 * d - 1;
        if module.cyclic_span(1 << generator).dim() != 2 * d {
            return Err(Error::domain(
                "module is not generated by its last basis vector",
            ));
        }
        Ok(PhiBlocModule {
            d,
            generator,
            module,
        })
    }

    /// Exponent `e` with Galois group of order `2^{e+1}` acting on the bloc.
    pub fn dihedral_exponent(&self) -> u32 {
        (self.d as u64).next_power_of_two().trailing_zeros()
    }
}

/// `Λ_{h2}` with `g₁ = σ_λ`, `g₂ = σ_v` and `V^m` spanned by the odd `v_j`.
pub fn build_xi(h2: u64) -> Result<AdmissibleModule> {
    let n = check_h2(h2)?;
    if h2 as usize > MAX_DIM {
        return Err(Error::Capacity(format!(
            "h2 = {h2} exceeds dimension {MAX_DIM}"
        )));
    }
    build_lambda(h2 as usize, n)?
        .expect("h2 = 2^(n+1) always exists")
        .view(Role::G1SigmaL)
}

/// The module Φ: `S_v = [[1,1],[0,1]]`, `S_λ = I`, `V^m` the second line.
pub fn phi_model() -> AdmissibleModule {
    let sv = BitMatrix::from_rows(2, &[0b11, 0b10]).expect("2x2");
    AdmissibleModule::new(sv, BitMatrix::identity(2), Subspace::coordinate(2, [1])).expect("Φ")
}

/// `Λ_{2d}` with `g₁ = σ_v`, which is the standard form of `Φ_d`.
pub fn standard_bloc(d: usize) -> Result<PhiBlocModule> {
    if d == 0 || 2 * d > MAX_DIM {
        return Err(Error::domain(format!("no standard bloc for d = {d}")));
    }
    let e = (2 * d as u64)
        .next_power_of_two()
        .trailing_zeros()
        .saturating_sub(1)
        .max(1);
    let l = build_lambda(2 * d, e)?.expect("2d <= 2^(e+1)");
    PhiBlocModule::new(d, l.view(Role::G1SigmaV)?)
}

/// `⟨v_1..v_{2d+1}⟩ / ⟨v_1⟩` inside Ξ, with `y_j = v_{j+1}`.
pub fn build_phi_d(d: usize, h2: u64) -> Result<Option<PhiBlocModule>> {
    check_h2(h2)?;
    if d == 0 {
        return Err(Error::domain("d must be at least 1"));
    }
    if 2 * d as u64 + 2 > h2 {
        return Ok(None);
    }
    let xi = build_xi(h2)?;
    let top = 2 * d + 1;
    let sub = Subspace::coordinate(xi.dim(), 0..top);
    let project = |m: &BitMatrix| -> Result<BitMatrix> {
        let cols = (1..top)
            .map(|i| {
                let w = m.apply(1u64 << i);
                debug_assert!(sub.contains(w));
                (w >> 1) & ((1u64 << (2 * d)) - 1)
            })
            .collect();
        BitMatrix::from_cols(2 * d, cols)
    };
    let vm_sub = xi.vm().intersection(&sub);
    let vm = Subspace::span(2 * d, vm_sub.basis().iter().map(|&v| v >> 1));
    let m = AdmissibleModule::new(project(xi.sv())?, project(xi.sl())?, vm)?;
    PhiBlocModule::new(d, m).map(Some)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Obstruction {
    Pass,
    Fail,
}

/// Whether `t^{h2/2}` on `Λ_{2d}` (with `g₁ = σ_v`) preserves `V^m`.
pub fn phi_bloc_obstruction(d: usize, h2: u64) -> Result<Obstruction> {
    check_h2(h2)?;
    let bloc = standard_bloc(d)?;
    let m = &bloc.module;
    let phi = m.sl().mul(m.sv()).pow(h2 / 2);
    Ok(if m.vm().image(&phi).is_subspace_of(m.vm()) {
        Obstruction::Pass
    } else {
        Obstruction::Fail
    })
}
