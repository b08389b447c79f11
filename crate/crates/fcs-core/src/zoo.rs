//! Bundled example systems and seeded random generators.

use ndarray::array;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::mat::{dagger, identity, CMat, C64, ONE, ZERO};
use crate::popescu::PopescuSystem;

/// Pauli matrices σ_x, σ_y, σ_z (a = 0, 1, 2).
pub fn pauli(a: usize) -> CMat {
    match a {
        0 => array![[ZERO, ONE], [ONE, ZERO]],
        1 => array![
            [ZERO, C64::new(0.0, -1.0)],
            [C64::new(0.0, 1.0), ZERO]
        ],
        2 => array![[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("pauli index out of range"),
    }
}

/// AKLT bond system: v_a = σ_a/√3, d = 3, k = 2.
pub fn aklt_system() -> PopescuSystem {
    let s = 1.0 / 3.0_f64.sqrt();
    let kraus = (0..3).map(|a| pauli(a).mapv(|z| z * s)).collect();
    PopescuSystem::new_unchecked(kraus)
}

/// Product system on a 1-dimensional bond space: v_0 = 1, v_1 = 0.
pub fn product_system() -> PopescuSystem {
    let kraus = vec![
        CMat::from_elem((1, 1), ONE),
        CMat::from_elem((1, 1), ZERO),
    ];
    PopescuSystem::new_unchecked(kraus)
}

/// Classical period-2 flip: v_0 = e_{01}, v_1 = e_{10}.
pub fn flip_system() -> PopescuSystem {
    let kraus = vec![
        crate::mat::mat_unit(2, 0, 1),
        crate::mat::mat_unit(2, 1, 0),
    ];
    PopescuSystem::new_unchecked(kraus)
}

/// Deterministic classical chain for a permutation σ of {0..n-1}:
/// v_j = e_{j, σ(j)}. Single cycles give ergodic period-n states.
pub fn permutation_system(sigma: &[usize]) -> PopescuSystem {
    let n = sigma.len();
    let kraus = (0..n).map(|j| crate::mat::mat_unit(n, j, sigma[j])).collect();
    PopescuSystem::new_unchecked(kraus)
}

/// Random single-cycle permutation on n points.
pub fn random_cycle(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    // random cyclic order visiting all points
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut sigma = vec![0usize; n];
    for i in 0..n {
        sigma[order[i]] = order[(i + 1) % n];
    }
    sigma
}

pub fn random_complex_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> CMat {
    CMat::from_shape_fn((m, n), |_| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    })
}

/// Random normalized system: the rows of a Haar-ish isometry K → C^d ⊗ K
/// give d Kraus blocks with Σ v_k v_k* = 1 exactly (up to roundoff).
pub fn random_system(rng: &mut ChaCha8Rng, d: usize, k: usize) -> PopescuSystem {
    // Gram-Schmidt the columns of a random (d k) × k matrix.
    let a = random_complex_matrix(rng, d * k, k);
    let mut q: Vec<ndarray::Array1<C64>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut col = a.column(j).to_owned();
        for prev in &q {
            let ip: C64 = prev.iter().zip(col.iter()).map(|(p, c)| p.conj() * c).sum();
            col = &col - &prev.mapv(|z| z * ip);
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        q.push(col.mapv(|z| z / norm));
    }
    // v_j* = j-th block row of the isometry, so v_j = block^†
    let mut kraus = Vec::with_capacity(d);
    for j in 0..d {
        let mut block = CMat::zeros((k, k));
        for r in 0..k {
            for c in 0..k {
                block[(r, c)] = q[c][j * k + r];
            }
        }
        kraus.push(dagger(&block));
    }
    PopescuSystem::new_unchecked(kraus)
}

/// Random system biased toward primitivity (generic random systems are
/// primitive; callers should still verify with the transfer spectrum).
pub fn random_primitive_system(rng: &mut ChaCha8Rng, d: usize, k: usize) -> PopescuSystem {
    random_system(rng, d, k)
}

/// Seeded generator entry point used by the acceptance suite.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
