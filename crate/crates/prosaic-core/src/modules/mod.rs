//! Finite F₂ modules with two involutions and a multiplicative subspace.
//!
//! A module is the triple `(S_v, S_λ, V^m)`: the actions of an inertia
//! generator σ_v and of a Frobenius-type involution σ_λ on `V = F₂ⁿ`, plus the
//! multiplicative part `V^m`. The étale part is `V/V^m`.

mod decompose;
pub mod f2;
mod lambda;
mod phi;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use decompose::{decompose_phi_blocs, Decomposition};
pub use f2::{BitMatrix, CoordBasis, Subspace};
pub use lambda::{build_lambda, t_power, t_power_recursive, LambdaModule, Role};
pub use phi::{
    build_phi_d, build_xi, phi_bloc_obstruction, phi_model, standard_bloc, Obstruction,
    PhiBlocModule,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModuleJson", into = "ModuleJson")]
pub struct AdmissibleModule {
    sv: BitMatrix,
    sl: BitMatrix,
    vm: Subspace,
}

/// Wire form: row bitmasks for the matrices, basis bitmasks for `V^m`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dim: usize,
    pub sv: Vec<u64>,
    pub sl: Vec<u64>,
    pub vm: Vec<u64>,
}

impl TryFrom<ModuleJson> for AdmissibleModule {
    type Error = Error;

    fn try_from(j: ModuleJson) -> Result<Self> {
        if j.dim > f2::MAX_DIM {
            return Err(Error::domain(format!(
                "dimension {} above {}",
                j.dim,
                f2::MAX_DIM
            )));
        }
        let sv = BitMatrix::from_rows(j.dim, &j.sv)?;
        let sl = BitMatrix::from_rows(j.dim, &j.sl)?;
        let lim = if j.dim == 64 {
            u64::MAX
        } else {
            (1u64 << j.dim) - 1
        };
        if j.vm.iter().any(|&v| v & !lim != 0) {
            return Err(Error::domain("Vm vector outside the ambient space"));
        }
        AdmissibleModule::new(sv, sl, Subspace::span(j.dim, j.vm))
    }
}

impl From<AdmissibleModule> for ModuleJson {
    fn from(m: AdmissibleModule) -> Self {
        ModuleJson {
            dim: m.dim(),
            sv: m.sv.rows(),
            sl: m.sl.rows(),
            vm: m.vm.basis().to_vec(),
        }
    }
}

impl AdmissibleModule {
    /// Checks `S_v² = S_λ² = I`, `(S_λ−1)V ⊆ V^m ⊆ ker(S_λ−1)`, and that
    /// `t = S_λ S_v` is unipotent.
    pub fn new(sv: BitMatrix, sl: BitMatrix, vm: Subspace) -> Result<Self> {
        let n = sv.dim();
        if sl.dim() != n || vm.ambient() != n {
            return Err(Error::domain("dimension mismatch between Sv, Sl and Vm"));
        }
        if !sv.mul(&sv).is_identity() {
            return Err(Error::domain("Sv is not an involution"));
        }
        if !sl.mul(&sl).is_identity() {
            return Err(Error::domain("Sl is not an involution"));
        }
        let nl = sl.minus_identity();
        if !Subspace::full(n).image(&nl).is_subspace_of(&vm) {
            return Err(Error::domain("(Sl - 1)V is not contained in Vm"));
        }
        if !vm.is_subspace_of(&Subspace::kernel(&nl)) {
            return Err(Error::domain("Vm is not fixed by Sl"));
        }
        let t = sl.mul(&sv).minus_identity();
        if !t.pow(n as u64).is_zero() {
            return Err(Error::domain("Sl*Sv is not unipotent"));
        }
        Ok(AdmissibleModule { sv, sl, vm })
    }

    pub fn dim(&self) -> usize {
        self.sv.dim()
    }

    pub fn sv(&self) -> &BitMatrix {
        &self.sv
    }

    pub fn sl(&self) -> &BitMatrix {
        &self.sl
    }

    pub fn vm(&self) -> &Subspace {
        &self.vm
    }

    pub fn dim_vm(&self) -> usize {
        self.vm.dim()
    }

    /// A fixed line inside `V^m`, or `None`.
    pub fn mu2_witness(&self) -> Option<u64> {
        Subspace::kernel(&self.sv.minus_identity())
            .intersection(&self.vm)
            .basis()
            .first()
            .copied()
    }

    pub fn has_mu2_sub(&self) -> bool {
        self.mu2_witness().is_some()
    }

    pub fn is_balanced(&self) -> bool {
        !self.has_mu2_sub() && 2 * self.dim_vm() == self.dim()
    }

    /// Span of all words in `S_v`, `S_λ` applied to `x`.
    pub fn cyclic_span(&self, x: u64) -> Subspace {
        let mut s = Subspace::zero(self.dim());
        let mut queue = vec![x];
        while let Some(v) = queue.pop() {
            if s.insert(v) {
                queue.push(self.sv.apply(v));
                queue.push(self.sl.apply(v));
            }
        }
        s
    }

    pub fn direct_sum(parts: &[&AdmissibleModule]) -> Result<AdmissibleModule> {
        let sv = BitMatrix::direct_sum(&parts.iter().map(|m| &m.sv).collect::<Vec<_>>())?;
        let sl = BitMatrix::direct_sum(&parts.iter().map(|m| &m.sl).collect::<Vec<_>>())?;
        let mut vm = Vec::new();
        let mut shift = 0;
        for m in parts {
            vm.extend(m.vm.basis().iter().map(|&v| v << shift));
            shift += m.dim();
        }
        AdmissibleModule::new(sv, sl, Subspace::span(shift, vm))
    }

    /// The module transported along `p`: matrices `p M p⁻¹`, subspace `p(V^m)`.
    pub fn conjugate(&self, p: &BitMatrix) -> Result<AdmissibleModule> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::domain("change of basis is singular"))?;
        AdmissibleModule::new(
            p.mul(&self.sv).mul(&inv),
            p.mul(&self.sl).mul(&inv),
            self.vm.image(p),
        )
    }

    pub fn pretty(&self) -> String {
        let mut s = format!(
            "dim {}\nSv:\n{}Sl:\n{}Vm basis:\n",
            self.dim(),
            self.sv.grid(),
            self.sl.grid()
        );
        for &v in self.vm.basis() {
            let bits: Vec<String> = (0..self.dim())
                .map(|i| ((v >> i) & 1).to_string())
                .collect();
            s.push_str(&format!("  [{}]\n", bits.join(" ")));
        }
        s
    }
}
