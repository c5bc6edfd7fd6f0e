//! Drivers for the lemma-level properties: each runs a fixed number of seeded
//! random instances at `p ∈ {2, 3}`, `n ≤ 4`, then the exhaustive `p = 2`,
//! `n ≤ 2` grid, and returns a description of every failing instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ureg_core::ffla::{
    self, basis_union_check, preimage, restricted_nullspace, restricted_range, transversal_subspace,
};
use ureg_core::{FFMatrix, InvariantSubspacePair, Subspace};

use super::{
    all_linear_pairs, gf, random_invariant_pair, random_invertible, random_matrix, random_subspace,
};

pub const INSTANCES: usize = 1000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_shape(rng: &mut ChaCha8Rng) -> (u32, usize) {
    ([2, 3][rng.gen_range(0..2)], rng.gen_range(1..=4))
}

fn grid() -> Vec<InvariantSubspacePair> {
    (1..=2).flat_map(|n| all_linear_pairs(2, n)).collect()
}

fn invertible(n: usize) -> impl Iterator<Item = FFMatrix> {
    FFMatrix::enumerate(gf(2), n, n).filter(FFMatrix::is_invertible)
}

/// `N(gf)` is `N(f)` pulled back along `g`, so it has the same dimension.
fn nullity_preserved(g: &FFMatrix, f: &FFMatrix) -> bool {
    let gf = g.mul(f).unwrap().nullspace();
    gf.dim() == f.nullspace().dim() && gf == f.nullspace().image(&g.inverse().unwrap()).unwrap()
}

pub fn nullity_under_invertible_precomposition(seed: u64) -> Vec<String> {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for _ in 0..INSTANCES {
        let (p, n) = random_shape(&mut rng);
        let k = gf(p);
        let g = random_invertible(&mut rng, k, n);
        let f = random_matrix(&mut rng, k, n, n);
        if !nullity_preserved(&g, &f) {
            failures.push(format!("g = {g}, f = {f}"));
        }
    }
    for n in 1..=2 {
        for g in invertible(n) {
            for f in FFMatrix::enumerate(gf(2), n, n) {
                if !nullity_preserved(&g, &f) {
                    failures.push(format!("g = {g}, f = {f}"));
                }
            }
        }
    }
    failures
}

/// `U' ⊆ U` and an isomorphism `g`: `U / U'` and `Ug / U'g` have equal
/// dimension.
fn codim_preserved(u: &Subspace, u_sub: &Subspace, g: &FFMatrix) -> bool {
    let v = u.image(g).unwrap();
    let v_sub = u_sub.image(g).unwrap();
    v.contains(&v_sub).unwrap() && u.dim() - u_sub.dim() == v.dim() - v_sub.dim()
}

pub fn codimension_under_isomorphism(seed: u64) -> Vec<String> {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for _ in 0..INSTANCES {
        let (p, n) = random_shape(&mut rng);
        let k = gf(p);
        let dim = rng.gen_range(0..=n);
        let u = random_subspace(&mut rng, k, n, dim);
        let count = rng.gen_range(0..=dim);
        let sub_rows: Vec<Vec<u32>> = (0..count)
            .map(|_| {
                let coords: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
                u.combine(&coords)
            })
            .collect();
        let u_sub = Subspace::span(k, n, &sub_rows).unwrap();
        let g = random_invertible(&mut rng, k, n);
        if !codim_preserved(&u, &u_sub, &g) {
            failures.push(format!("U = {u}, U' = {u_sub}, g = {g}"));
        }
    }
    for n in 1..=2 {
        let all = Subspace::all(gf(2), n);
        for u in &all {
            for u_sub in all.iter().filter(|s| u.contains(s).unwrap()) {
                for g in invertible(n) {
                    if !codim_preserved(u, u_sub, &g) {
                        failures.push(format!("U = {u}, U' = {u_sub}, g = {g}"));
                    }
                }
            }
        }
    }
    failures
}

/// Every postcondition of [`transversal_subspace`] that fails on `pair`.
pub fn transversal_violations(pair: &InvariantSubspacePair) -> Vec<&'static str> {
    let f = pair.map();
    let w = pair.subspace();
    let (u, uw) = transversal_subspace(pair);
    let null = f.nullspace();
    let checks = [
        (u.dim() == f.rank(), "dim U ≠ rank f"),
        (u.intersect(&null).unwrap().is_zero(), "U ∩ N(f) ≠ 0"),
        (
            uw.dim() == restricted_range(pair).dim(),
            "dim UW ≠ rank f↾W",
        ),
        (
            uw.intersect(&restricted_nullspace(pair)).unwrap().is_zero(),
            "UW ∩ N(f↾W) ≠ 0",
        ),
        (uw == u.intersect(w).unwrap(), "UW ≠ U ∩ W"),
        (u.image(f).unwrap() == ffla::range(f), "Uf ≠ R(f)"),
        (
            uw.image(f).unwrap() == restricted_range(pair),
            "UWf ≠ R(f↾W)",
        ),
    ];
    checks
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, what)| what)
        .collect()
}

pub fn transversal_postconditions(seed: u64) -> Vec<String> {
    let mut rng = rng(seed);
    let randomized = (0..INSTANCES).map(|_| {
        let (p, n) = random_shape(&mut rng);
        random_invariant_pair(&mut rng, gf(p), n)
    });
    randomized
        .collect::<Vec<_>>()
        .into_iter()
        .chain(grid())
        .filter_map(|pair| {
            let bad = transversal_violations(&pair);
            (!bad.is_empty()).then(|| format!("{} on {}: {bad:?}", pair.map(), pair.subspace()))
        })
        .collect()
}

/// A transversal subspace of `ker(f)` other than the canonical one: each
/// canonical preimage of a basis vector of `R(f)` shifted by a random vector
/// of `N(f)`.
pub fn random_transversal(rng: &mut ChaCha8Rng, f: &FFMatrix) -> Subspace {
    let k = f.field();
    let null = f.nullspace();
    let vectors: Vec<Vec<u32>> = ffla::range(f)
        .basis_rows()
        .iter()
        .map(|b| {
            let x = preimage(f, b, None).unwrap();
            let coords: Vec<u32> = (0..null.dim())
                .map(|_| rng.gen_range(0..k.modulus()))
                .collect();
            let shift = null.combine(&coords);
            x.iter().zip(&shift).map(|(&a, &s)| k.add(a, s)).collect()
        })
        .collect();
    Subspace::span(k, f.rows(), &vectors).unwrap()
}

pub fn basis_union(seed: u64) -> Vec<String> {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    let mut check = |f: &FFMatrix, u: &Subspace| {
        if basis_union_check(f, u) != Ok(true) {
            failures.push(format!("f = {f}, U = {u}"));
        }
    };
    for _ in 0..INSTANCES {
        let (p, n) = random_shape(&mut rng);
        let pair = random_invariant_pair(&mut rng, gf(p), n);
        let f = pair.map();
        check(f, &transversal_subspace(&pair).0);
        let other = random_transversal(&mut rng, f);
        check(f, &other);
    }
    // every f against every transversal subspace of its kernel
    for n in 1..=2 {
        let all = Subspace::all(gf(2), n);
        for f in FFMatrix::enumerate(gf(2), n, n) {
            let null = f.nullspace();
            for u in all
                .iter()
                .filter(|u| u.dim() == f.rank() && u.intersect(&null).unwrap().is_zero())
            {
                check(&f, u);
            }
        }
    }
    failures
}
