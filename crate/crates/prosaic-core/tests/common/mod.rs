#![allow(dead_code)]

use prosaic_core::modules::{
    build_xi, phi_model, standard_bloc, AdmissibleModule, BitMatrix, Subspace,
};
use rand::Rng;

pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> BitMatrix {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    loop {
        let cols = (0..n).map(|_| rng.gen::<u64>() & mask).collect();
        let m = BitMatrix::from_cols(n, cols).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

/// Bloc sizes with `2 Σ d ≤ max_dim`, largest first.
pub fn random_sizes<R: Rng>(max_dim: usize, rng: &mut R) -> Vec<usize> {
    let mut left = max_dim / 2;
    let mut sizes = Vec::new();
    while left > 0 && (sizes.is_empty() || rng.gen_bool(0.6)) {
        let d = rng.gen_range(1..=left);
        sizes.push(d);
        left -= d;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

pub fn bloc_sum(sizes: &[usize]) -> AdmissibleModule {
    let parts: Vec<AdmissibleModule> = sizes
        .iter()
        .map(|&d| standard_bloc(d).unwrap().module)
        .collect();
    AdmissibleModule::direct_sum(&parts.iter().collect::<Vec<_>>()).unwrap()
}

pub fn scramble<R: Rng>(m: &AdmissibleModule, rng: &mut R) -> AdmissibleModule {
    m.conjugate(&random_invertible(m.dim(), rng)).unwrap()
}

/// A bloc sum of dimension at most `max_dim` in a random basis, with its sizes.
pub fn planted<R: Rng>(max_dim: usize, rng: &mut R) -> (AdmissibleModule, Vec<usize>) {
    let sizes = random_sizes(max_dim, rng);
    (scramble(&bloc_sum(&sizes), rng), sizes)
}

pub fn mu2() -> AdmissibleModule {
    AdmissibleModule::new(
        BitMatrix::identity(1),
        BitMatrix::identity(1),
        Subspace::full(1),
    )
    .unwrap()
}

pub fn z2() -> AdmissibleModule {
    AdmissibleModule::new(
        BitMatrix::identity(1),
        BitMatrix::identity(1),
        Subspace::zero(1),
    )
    .unwrap()
}

/// Φ with the fixed line declared multiplicative.
pub fn phi_flipped() -> AdmissibleModule {
    let m = phi_model();
    AdmissibleModule::new(m.sv().clone(), m.sl().clone(), Subspace::coordinate(2, [0])).unwrap()
}

/// An admissible module of dimension at most `max_dim` that is not balanced.
pub fn unbalanced<R: Rng>(max_dim: usize, rng: &mut R) -> AdmissibleModule {
    let base = |room: usize, rng: &mut R| bloc_sum(&random_sizes(room, rng));
    let m = match rng.gen_range(0..6) {
        0 => AdmissibleModule::direct_sum(&[&base(max_dim - 1, rng), &mu2()]).unwrap(),
        1 => AdmissibleModule::direct_sum(&[&base(max_dim - 1, rng), &z2()]).unwrap(),
        2 => AdmissibleModule::direct_sum(&[&base(max_dim - 2, rng), &mu2(), &z2()]).unwrap(),
        3 => build_xi(if max_dim >= 8 && rng.gen_bool(0.5) {
            8
        } else {
            4
        })
        .unwrap(),
        4 => AdmissibleModule::direct_sum(&[&base(max_dim - 2, rng), &phi_flipped()]).unwrap(),
        _ => {
            let sizes = random_sizes(max_dim - 2, rng);
            let mut parts: Vec<AdmissibleModule> = sizes
                .iter()
                .map(|&d| standard_bloc(d).unwrap().module)
                .collect();
            parts.push(mu2());
            parts.push(mu2());
            AdmissibleModule::direct_sum(&parts.iter().collect::<Vec<_>>()).unwrap()
        }
    };
    scramble(&m, rng)
}
