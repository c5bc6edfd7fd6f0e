#![allow(dead_code)]

pub mod lemma;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use ureg_core::{
    FFMatrix, InvariantSetPair, InvariantSubspacePair, PrimeField, Subspace, Transformation,
};

pub fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, k: PrimeField, rows: usize, cols: usize) -> FFMatrix {
    let data = (0..rows * cols)
        .map(|_| rng.gen_range(0..k.modulus()))
        .collect();
    FFMatrix::new(k, rows, cols, data).unwrap()
}

pub fn random_invertible(rng: &mut ChaCha8Rng, k: PrimeField, n: usize) -> FFMatrix {
    loop {
        let m = random_matrix(rng, k, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A uniformly random subspace of the given dimension: the span of the first
/// `dim` rows of a random invertible matrix.
pub fn random_subspace(rng: &mut ChaCha8Rng, k: PrimeField, n: usize, dim: usize) -> Subspace {
    let p = random_invertible(rng, k, n);
    Subspace::span(k, n, &p.row_vecs()[..dim]).unwrap()
}

/// A random `f` with `Wf ⊆ W` where `dim W` is uniform in `[0, n]`.
///
/// With `P` invertible and `W` spanned by its first `k` rows, `f = P⁻¹MP` for
/// `M` whose top-right `k × (n - k)` block is zero.
pub fn random_invariant_pair(
    rng: &mut ChaCha8Rng,
    k: PrimeField,
    n: usize,
) -> InvariantSubspacePair {
    let dim = rng.gen_range(0..=n);
    let p = random_invertible(rng, k, n);
    let mut m = random_matrix(rng, k, n, n).data().to_vec();
    for i in 0..dim {
        for j in dim..n {
            m[i * n + j] = 0;
        }
    }
    // bias toward singular maps, where the conditions are interesting
    let zero_rows = rng.gen_range(0..=n / 2);
    for _ in 0..zero_rows {
        let i = rng.gen_range(0..n);
        for j in 0..n {
            m[i * n + j] = 0;
        }
    }
    let m = FFMatrix::new(k, n, n, m).unwrap();
    let f = p.inverse().unwrap().mul(&m).unwrap().mul(&p).unwrap();
    let w = Subspace::span(k, n, &p.row_vecs()[..dim]).unwrap();
    InvariantSubspacePair::new(w, f).unwrap()
}

/// Every subspace `W` of `GF(p)^n` paired with every `f` with `Wf ⊆ W`.
pub fn all_linear_pairs(p: u32, n: usize) -> Vec<InvariantSubspacePair> {
    let k = gf(p);
    Subspace::all(k, n)
        .into_iter()
        .flat_map(|w| {
            FFMatrix::enumerate(k, n, n)
                .filter_map(move |f| InvariantSubspacePair::new(w.clone(), f).ok())
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Every nonempty `Y ⊆ [0, n)` paired with every `f` with `Yf ⊆ Y`.
pub fn all_transform_pairs(n: usize) -> Vec<InvariantSetPair> {
    ureg_core::txy::nonempty_subsets(n)
        .into_iter()
        .flat_map(|y| {
            ureg_core::txy::invariant_maps(n, &y)
                .unwrap()
                .collect::<Vec<_>>()
        })
        .collect()
}

/// The `|Y| × |Y|` restriction of `g` to an invariant `Y`, relabelled to
/// `[0, |Y|)`; `None` if `Yg ⊄ Y`.
pub fn restrict_to(g: &Transformation, y: &[usize]) -> Option<Transformation> {
    let images = y
        .iter()
        .map(|&x| y.iter().position(|&t| t == g.apply(x)))
        .collect::<Option<Vec<_>>>()?;
    Transformation::new(images).ok()
}
