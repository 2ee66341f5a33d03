//! Fixtures shared by the benchmarks.

use prosaic_core::modules::standard_bloc;
use prosaic_core::{AdmissibleModule, BitMatrix, Result};

/// Sum of standard blocs of the given sizes, conjugated by a fixed unitriangular matrix.
pub fn scrambled_blocs(sizes: &[usize]) -> Result<AdmissibleModule> {
    let blocs = sizes
        .iter()
        .map(|&d| standard_bloc(d))
        .collect::<Result<Vec<_>>>()?;
    let parts: Vec<&AdmissibleModule> = blocs.iter().map(|b| &b.module).collect();
    let m = AdmissibleModule::direct_sum(&parts)?;
    let n = m.dim();
    // Column j picks up e_j plus a spread of lower basis vectors.
    let cols = (0..n)
        .map(|j| {
            let below = if j == 0 { 0 } else { (1u64 << j) - 1 };
            (1u64 << j) | (below & 0x5555_5555_5555_5555u64.rotate_left(j as u32))
        })
        .collect();
    m.conjugate(&BitMatrix::from_cols(n, cols)?)
}
