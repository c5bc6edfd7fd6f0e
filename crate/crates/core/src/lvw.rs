//! Unit-regular elements of `L̄(V, W) = { f ∈ L(V) : Wf ⊆ W }` for
//! `V = GF(p)^n`.
//!
//! [`check`] evaluates
//!
//! 1. `R(f↾W) = W ∩ R(f)`;
//! 2. `nullity(f↾W) = corank(f↾W)`;
//! 3. `codim(W + T_f) = codim(W + R(f))` for the transversal subspace `T_f`
//!    from [`transversal_subspace`];
//!
//! and, when all hold, assembles a witness `ḡ` as the linear extension of a
//! bijection between two adapted bases of `V`. [`oracle`] scans the unit
//! group `{ g invertible : Wg = W }` instead.

use crate::error::{Error, Result};
use crate::ffla::{
    extend_basis, preimage, range, restricted_nullspace, restricted_range, restriction_matrix,
    transversal_subspace, FFMatrix, InvariantSubspacePair, PrimeField, Subspace,
};

/// Default cap on `p^(n²)`, the number of matrices a unit scan may touch.
/// Admits `p ∈ {2, 3}` with `n ≤ 3`.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 19_683;

/// Dimensions behind the three conditions of [`check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LvwDiagnostics {
    pub dim_w: usize,
    pub rank: usize,
    /// `dim R(f↾W)`
    pub restricted_rank: usize,
    /// `dim (W ∩ R(f))`
    pub dim_w_cap_range: usize,
    /// `dim N(f↾W)`
    pub restricted_nullity: usize,
    /// `dim W / R(f↾W)`
    pub restricted_corank: usize,
    pub dim_w_plus_transversal: usize,
    pub dim_w_plus_range: usize,
    pub codim_w_plus_transversal: usize,
    pub codim_w_plus_range: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LvwDecision {
    pub unit_regular: bool,
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub diagnostics: LvwDiagnostics,
    /// `T_f`
    pub transversal: Subspace,
    /// `W ∩ T_f`
    pub restricted_transversal: Subspace,
    pub witness: Option<FFMatrix>,
}

pub fn check(pair: &InvariantSubspacePair) -> LvwDecision {
    let w = pair.subspace();
    let f = pair.map();

    let r = range(f);
    let wf = restricted_range(pair);
    let w_cap_r = w.intersect(&r).expect("same ambient");
    let cond_i = wf == w_cap_r;

    let restricted = restriction_matrix(pair).expect("pair is invariant");
    let restricted_nullity = restricted.nullspace().dim();
    let restricted_corank = w.dim() - restricted.row_space().dim();
    let cond_ii = restricted_nullity == restricted_corank;

    let (t, tw) = transversal_subspace(pair);
    let w_plus_t = w.sum(&t).expect("same ambient");
    let w_plus_r = w.sum(&r).expect("same ambient");
    let cond_iii = w_plus_t.codim() == w_plus_r.codim();

    let diagnostics = LvwDiagnostics {
        dim_w: w.dim(),
        rank: r.dim(),
        restricted_rank: wf.dim(),
        dim_w_cap_range: w_cap_r.dim(),
        restricted_nullity,
        restricted_corank,
        dim_w_plus_transversal: w_plus_t.dim(),
        dim_w_plus_range: w_plus_r.dim(),
        codim_w_plus_transversal: w_plus_t.codim(),
        codim_w_plus_range: w_plus_r.codim(),
    };
    let unit_regular = cond_i && cond_ii && cond_iii;
    let witness = if unit_regular {
        build_witness(pair, &t)
    } else {
        None
    };
    LvwDecision {
        unit_regular,
        cond_i,
        cond_ii,
        cond_iii,
        diagnostics,
        transversal: t,
        restricted_transversal: tw,
        witness,
    }
}

/// Witness unit `ḡ` with `fḡf = f`, or [`Error::NotUnitRegular`].
pub fn witness(pair: &InvariantSubspacePair) -> Result<FFMatrix> {
    check(pair).witness.ok_or(Error::NotUnitRegular)
}

/// Bases `B = B₁ ∪ B₂ ∪ B₃ ∪ B₄` and `C = C₁ ∪ C₂ ∪ C₃ ∪ C₄` of `V`:
///
/// * `B₁` spans `W ∩ R(f)`, `B₁ ∪ B₂` spans `R(f)`, `B₁ ∪ B₃` spans `W`,
///   `B₄` completes `W + R(f)` to `V`;
/// * `C₁ ∪ C₂` are the preimages of `B₁ ∪ B₂` inside `T_f`, `C₃` spans
///   `N(f↾W)`, `C₄` completes `W + T_f` to `V`.
///
/// `ḡ` sends `B` to `C` position by position, so as matrices `B·ḡ = C`.
/// Returns `None` if the sizes of `B₃, C₃` or `B₄, C₄` disagree.
fn build_witness(pair: &InvariantSubspacePair, t: &Subspace) -> Option<FFMatrix> {
    let k = pair.field();
    let n = pair.dim();
    let w = pair.subspace();
    let f = pair.map();
    let full = Subspace::full(k, n);

    let r = range(f);
    let w_cap_r = w.intersect(&r).ok()?;
    let b1 = w_cap_r.basis_rows();
    let b2 = extend_basis(&w_cap_r, &r).ok()?;
    let b3 = extend_basis(&w_cap_r, w).ok()?;
    let b4 = extend_basis(&w.sum(&r).ok()?, &full).ok()?;

    // g0 = inverse of f on T_f
    let c1: Vec<Vec<u32>> = b1
        .iter()
        .map(|b| preimage(f, b, Some(t)))
        .collect::<Result<_>>()
        .ok()?;
    let c2: Vec<Vec<u32>> = b2
        .iter()
        .map(|b| preimage(f, b, Some(t)))
        .collect::<Result<_>>()
        .ok()?;
    let c3 = restricted_nullspace(pair).basis_rows();
    let c123: Vec<Vec<u32>> = c1.iter().chain(&c2).chain(&c3).cloned().collect();
    let c4 = extend_basis(&Subspace::span(k, n, &c123).ok()?, &full).ok()?;

    if b3.len() != c3.len() || b4.len() != c4.len() {
        return None;
    }
    let b: Vec<Vec<u32>> = b1.into_iter().chain(b2).chain(b3).chain(b4).collect();
    let c: Vec<Vec<u32>> = c123.into_iter().chain(c4).collect();
    let b = FFMatrix::from_rows(k, n, &b).ok()?;
    let c = FFMatrix::from_rows(k, n, &c).ok()?;
    b.inverse()?.mul(&c).ok()
}

/// True iff `g` is invertible, `Wg = W` and `fgf = f`.
pub fn verify_witness(pair: &InvariantSubspacePair, g: &FFMatrix) -> bool {
    if g.field() != pair.field() || g.rows() != pair.dim() || !g.is_invertible() {
        return false;
    }
    let w = pair.subspace();
    if w.image(g).ok().as_ref() != Some(w) {
        return false;
    }
    let f = pair.map();
    f.mul(g).and_then(|fg| fg.mul(f)).ok().as_ref() == Some(f)
}

fn enumeration_size(field: PrimeField, n: usize, bound: u128) -> Result<()> {
    let size = (field.modulus() as u128)
        .checked_pow((n * n) as u32)
        .unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::BoundExceeded { size, bound });
    }
    Ok(())
}

/// Units of `L̄(V, W)`: invertible `g` with `Wg = W`, in lexicographic order
/// of row-major entries.
pub fn units(
    field: PrimeField,
    n: usize,
    w: &Subspace,
    bound: u128,
) -> Result<impl Iterator<Item = FFMatrix> + '_> {
    enumeration_size(field, n, bound)?;
    if w.field() != field || w.ambient() != n {
        return Err(Error::SizeMismatch {
            left: w.ambient(),
            right: n,
        });
    }
    Ok(FFMatrix::enumerate(field, n, n)
        .filter(move |g| g.is_invertible() && w.image(g).expect("same shape") == *w))
}

/// Every `f` with `Wf ⊆ W`, in lexicographic order of row-major entries.
pub fn invariant_maps(
    field: PrimeField,
    n: usize,
    w: &Subspace,
    bound: u128,
) -> Result<impl Iterator<Item = InvariantSubspacePair> + '_> {
    enumeration_size(field, n, bound)?;
    Ok(FFMatrix::enumerate(field, n, n)
        .filter_map(move |f| InvariantSubspacePair::new(w.clone(), f).ok()))
}

/// First unit `g` in canonical order with `fgf = f`.
pub fn oracle(pair: &InvariantSubspacePair, bound: u128) -> Result<Option<FFMatrix>> {
    let f = pair.map();
    Ok(units(pair.field(), pair.dim(), pair.subspace(), bound)?
        .find(|g| f.mul(g).and_then(|fg| fg.mul(f)).ok().as_ref() == Some(f)))
}

/// [`oracle`] over a precomputed unit list, for sweeps that reuse it.
pub fn oracle_among<'a>(
    pair: &InvariantSubspacePair,
    units: &'a [FFMatrix],
) -> Option<&'a FFMatrix> {
    let f = pair.map();
    units
        .iter()
        .find(|g| f.mul(g).and_then(|fg| fg.mul(f)).ok().as_ref() == Some(f))
}

/// `nullity(f) = corank(f)`: the unit-regularity criterion in `L(V)`.
pub fn check_lv(f: &FFMatrix) -> bool {
    f.is_square() && f.nullspace().dim() == range(f).codim()
}

/// `L̄(V, W)` with finite-dimensional `V` is unit-regular iff `W` is `{0}`
/// or `V`.
pub fn semigroup_unit_regular(w: &Subspace) -> bool {
    w.is_trivial()
}

/// For nontrivial `W`: fix `w` the first basis vector of `W` and `u` the
/// first vector completing it to `V`; the map `u ↦ w`, every other basis
/// vector `↦ 0` lies in `L̄(V, W)` and has `R(f↾W) = {0} ≠ ⟨w⟩ = W ∩ R(f)`.
pub fn range_gap_example(w: &Subspace) -> Option<InvariantSubspacePair> {
    if w.is_trivial() {
        return None;
    }
    let k = w.field();
    let n = w.ambient();
    let b = w.basis_rows();
    let c = extend_basis(w, &Subspace::full(k, n)).expect("W ⊆ V");
    let mut images = vec![vec![0; n]; n];
    images[b.len()] = b[0].clone();
    let basis: Vec<Vec<u32>> = b.into_iter().chain(c).collect();
    let p = FFMatrix::from_rows(k, n, &basis).ok()?;
    let m = FFMatrix::from_rows(k, n, &images).ok()?;
    let f = p.inverse()?.mul(&m).ok()?;
    InvariantSubspacePair::new(w.clone(), f).ok()
}
