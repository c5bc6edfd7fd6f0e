//! Exact linear algebra over prime fields.
//!
//! Vectors are rows and matrices act on the right, so `R(f)` is the row space
//! of `f` and `N(f)` its left nullspace. Besides the usual RREF, rank and
//! lattice operations this module provides the constructions the
//! unit-regularity criterion for `L̄(V, W)` is built from: restriction to an
//! invariant subspace, canonical preimages, and a transversal subspace `U` of
//! `ker(f)` whose trace `U ∩ W` is a transversal of `ker(f↾W)`.

mod field;
mod matrix;
mod subspace;

pub use field::{is_prime, FFScalar, PrimeField};
pub use matrix::FFMatrix;
pub use subspace::Subspace;

use crate::error::{Error, Result};

/// A square matrix `f` together with a subspace `W` satisfying `Wf ⊆ W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantSubspacePair {
    w: Subspace,
    f: FFMatrix,
}

impl InvariantSubspacePair {
    pub fn new(w: Subspace, f: FFMatrix) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::NotSquare {
                rows: f.rows(),
                cols: f.cols(),
            });
        }
        if w.field() != f.field() {
            return Err(Error::FieldMismatch {
                left: w.field().modulus(),
                right: f.field().modulus(),
            });
        }
        if w.ambient() != f.rows() {
            return Err(Error::SizeMismatch {
                left: w.ambient(),
                right: f.rows(),
            });
        }
        for (i, row) in w.basis_rows().iter().enumerate() {
            if !w.contains_vector(&f.vec_mul(row)?) {
                return Err(Error::InvarianceViolated(format!(
                    "basis vector {i} of W is mapped outside W"
                )));
            }
        }
        Ok(Self { w, f })
    }

    pub fn field(&self) -> PrimeField {
        self.f.field()
    }

    pub fn dim(&self) -> usize {
        self.f.rows()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.w
    }

    pub fn map(&self) -> &FFMatrix {
        &self.f
    }
}

pub fn rref(m: &FFMatrix) -> (FFMatrix, Vec<usize>) {
    m.rref()
}

pub fn rank(m: &FFMatrix) -> usize {
    m.rank()
}

/// `N(m) = { v : v·m = 0 }`.
pub fn nullspace(m: &FFMatrix) -> Subspace {
    m.nullspace()
}

/// `R(m) = { v·m }`.
pub fn range(m: &FFMatrix) -> Subspace {
    m.row_space()
}

/// `R(f↾W) = Wf`, in ambient coordinates.
pub fn restricted_range(pair: &InvariantSubspacePair) -> Subspace {
    pair.w.image(&pair.f).expect("shapes validated by the pair")
}

/// `N(f↾W) = N(f) ∩ W`, in ambient coordinates, computed from the
/// restriction matrix.
pub fn restricted_nullspace(pair: &InvariantSubspacePair) -> Subspace {
    let r = restriction_matrix(pair).expect("pair is invariant");
    let coords = r.nullspace();
    let vectors: Vec<Vec<u32>> = coords
        .basis_rows()
        .iter()
        .map(|c| pair.w.combine(c))
        .collect();
    Subspace::span(pair.field(), pair.dim(), &vectors).expect("ambient vectors")
}

/// Canonical solution of `x·m = b`, optionally constrained to `x ∈ within`.
///
/// Free variables are set to zero in pivot order. With `within`, the system
/// is solved in the coordinates of `within`'s RREF basis and mapped back.
pub fn preimage(m: &FFMatrix, b: &[u32], within: Option<&Subspace>) -> Result<Vec<u32>> {
    match within {
        None => m.solve_left(b),
        Some(s) => {
            let coords = s.basis().mul(m)?.solve_left(b)?;
            Ok(s.combine(&coords))
        }
    }
}

/// Vectors from `outer`'s RREF basis, chosen greedily in order, that extend a
/// basis of `inner` to a basis of `outer`.
pub fn extend_basis(inner: &Subspace, outer: &Subspace) -> Result<Vec<Vec<u32>>> {
    if !outer.contains(inner)? {
        return Err(Error::ContainmentViolated);
    }
    let mut current = inner.clone();
    let mut added = Vec::new();
    for v in outer.basis_rows() {
        if current.dim() == outer.dim() {
            break;
        }
        if !current.contains_vector(&v) {
            current = current.sum(&Subspace::span(
                inner.field(),
                inner.ambient(),
                std::slice::from_ref(&v),
            )?)?;
            added.push(v);
        }
    }
    Ok(added)
}

/// Matrix of `f↾W` in the RREF basis `w_1, …, w_k` of `W`: row `i` holds the
/// coordinates of `w_i·f`.
pub fn restriction_matrix(pair: &InvariantSubspacePair) -> Result<FFMatrix> {
    let w = &pair.w;
    let mut rows = Vec::with_capacity(w.dim());
    for (i, wi) in w.basis_rows().iter().enumerate() {
        let image = pair.f.vec_mul(wi)?;
        let coords = w.coordinates(&image).ok_or_else(|| {
            Error::InvarianceViolated(format!("basis vector {i} of W is mapped outside W"))
        })?;
        rows.push(coords);
    }
    FFMatrix::from_rows(pair.field(), w.dim(), &rows)
}

/// A transversal subspace `U` of `ker(f)` with `U ∩ W` a transversal of
/// `ker(f↾W)`. Returns `(U, U ∩ W)`.
///
/// `B₁` is the RREF basis of `R(f↾W)` and `C₁` its canonical preimages inside
/// `W`; `B₂` extends `B₁` to a basis of `R(f)` and `C₂` holds canonical
/// preimages of `B₂` in `V`. Then `U = ⟨C₁ ∪ C₂⟩` and `U ∩ W = ⟨C₁⟩`.
pub fn transversal_subspace(pair: &InvariantSubspacePair) -> (Subspace, Subspace) {
    let k = pair.field();
    let n = pair.dim();
    let f = &pair.f;
    let restricted = restricted_range(pair);
    let full = range(f);

    let c1: Vec<Vec<u32>> = restricted
        .basis_rows()
        .iter()
        .map(|b| preimage(f, b, Some(&pair.w)).expect("b lies in Wf"))
        .collect();
    let b2 = extend_basis(&restricted, &full).expect("Wf ⊆ R(f)");
    let c2: Vec<Vec<u32>> = b2
        .iter()
        .map(|b| preimage(f, b, None).expect("b lies in R(f)"))
        .collect();

    let uw = Subspace::span(k, n, &c1).expect("ambient vectors");
    let all: Vec<Vec<u32>> = c1.into_iter().chain(c2).collect();
    let u = Subspace::span(k, n, &all).expect("ambient vectors");
    (u, uw)
}

/// For a transversal subspace `U` of `ker(f)` and `B` the RREF basis of
/// `R(f)`, reports whether `basis(N(f)) ∪ (U ∩ Bf⁻¹)` is a basis of `V`.
///
/// Fails with [`Error::PreconditionViolated`] unless `U ∩ N(f) = {0}` and
/// `dim U = rank f`.
pub fn basis_union_check(f: &FFMatrix, u: &Subspace) -> Result<bool> {
    if !f.is_square() {
        return Err(Error::NotSquare {
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    let null = f.nullspace();
    let r = range(f);
    if u.ambient() != f.rows() || u.field() != f.field() {
        return Err(Error::PreconditionViolated(
            "U does not live in the domain of f".into(),
        ));
    }
    if u.dim() != r.dim() || !u.intersect(&null)?.is_zero() {
        return Err(Error::PreconditionViolated(
            "U is not a transversal subspace of ker(f)".into(),
        ));
    }
    let mut vectors = null.basis_rows();
    for b in r.basis_rows() {
        vectors.push(preimage(f, &b, Some(u))?);
    }
    let n = f.rows();
    Ok(vectors.len() == n && Subspace::span(f.field(), n, &vectors)?.dim() == n)
}
