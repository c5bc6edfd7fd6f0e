use std::fmt;

use super::field::PrimeField;
use super::matrix::FFMatrix;
use crate::error::{Error, Result};

/// A subspace of `GF(p)^n`, stored as the RREF of a spanning set with zero
/// rows dropped. The representation is canonical, so `==` is subspace
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FFMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            basis: FFMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self {
            basis: FFMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of `vectors`, each of length `ambient`.
    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let m = FFMatrix::from_rows(field, ambient, vectors)?;
        Ok(Self::from_rows_of(&m))
    }

    /// The row space of `m`.
    pub fn from_rows_of(m: &FFMatrix) -> Self {
        let (r, pivots) = m.rref();
        let keep: Vec<Vec<u32>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self {
            basis: FFMatrix::from_rows(m.field(), m.cols(), &keep).expect("rows keep their width"),
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// `dim(V / self)` with `V` the ambient space.
    pub fn codim(&self) -> usize {
        self.ambient() - self.dim()
    }

    /// Basis rows in RREF, as a `dim × ambient` matrix.
    pub fn basis(&self) -> &FFMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// `{0}` or the whole space.
    pub fn is_trivial(&self) -> bool {
        self.is_zero() || self.is_full()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v ∉ self`.
    ///
    /// In RREF the coordinate on basis row `i` must equal `v` at pivot `i`;
    /// membership is then a single recombination check.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if v.len() != self.ambient() {
            return None;
        }
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        (self.combine(&coords) == v).then_some(coords)
    }

    /// `Σ coords[i] · basis[i]`.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        self.basis
            .vec_mul(coords)
            .expect("one coordinate per basis row")
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field().modulus(),
                right: other.field().modulus(),
            });
        }
        if self.ambient() != other.ambient() {
            return Err(Error::SizeMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        Ok(())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        Ok(Self::from_rows_of(&self.basis.stack(&other.basis)?))
    }

    /// `self ∩ other`, from the left nullspace of the stacked system
    /// `[A; -B]`: every `(x, y)` with `xA = yB` contributes `xA`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let k = self.field();
        let neg_b: Vec<u32> = other.basis.data().iter().map(|&v| k.neg(v)).collect();
        let neg_b = FFMatrix::new(k, other.dim(), other.ambient(), neg_b)?;
        let system = self.basis.stack(&neg_b)?;
        let null = system.nullspace();
        let vectors: Vec<Vec<u32>> = null
            .basis_rows()
            .iter()
            .map(|xy| self.combine(&xy[..self.dim()]))
            .collect();
        Subspace::span(k, self.ambient(), &vectors)
    }

    /// The image `self · f` under a square matrix acting on the right.
    pub fn image(&self, f: &FFMatrix) -> Result<Subspace> {
        Ok(Self::from_rows_of(&self.basis.mul(f)?))
    }

    /// Every subspace of `GF(p)^n`, each exactly once: dimension ascending,
    /// then pivot sets in lexicographic order, then free entries in
    /// lexicographic order.
    pub fn all(field: PrimeField, n: usize) -> Vec<Subspace> {
        let p = field.modulus();
        let mut out = Vec::new();
        for k in 0..=n {
            for pivots in combinations(n, k) {
                // free slots: row i, column j > pivot_i that is not a pivot
                let free: Vec<(usize, usize)> = (0..k)
                    .flat_map(|i| {
                        let piv = &pivots;
                        (pivots[i] + 1..n)
                            .filter(move |j| !piv.contains(j))
                            .map(move |j| (i, j))
                    })
                    .collect();
                let combos = (p as usize).pow(free.len() as u32);
                for mut idx in 0..combos {
                    let mut data = vec![0u32; k * n];
                    for (i, &c) in pivots.iter().enumerate() {
                        data[i * n + c] = 1;
                    }
                    // last free slot varies fastest
                    for &(i, j) in free.iter().rev() {
                        data[i * n + j] = (idx % p as usize) as u32;
                        idx /= p as usize;
                    }
                    out.push(Subspace {
                        basis: FFMatrix::new(field, k, n, data).expect("entries reduced"),
                        pivots: pivots.clone(),
                    });
                }
            }
        }
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{}", self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn span(p: u32, n: usize, vs: &[&[u32]]) -> Subspace {
        let vs: Vec<Vec<u32>> = vs.iter().map(|v| v.to_vec()).collect();
        Subspace::span(gf(p), n, &vs).unwrap()
    }

    /// All vectors of the subspace, by brute-force enumeration of GF(p)^n.
    fn members(s: &Subspace) -> Vec<Vec<u32>> {
        FFMatrix::enumerate(s.field(), 1, s.ambient())
            .map(|v| v.row(0).to_vec())
            .filter(|v| s.contains_vector(v))
            .collect()
    }

    #[test]
    fn lattice_examples() {
        let k = gf(2);
        let u = span(2, 2, &[&[1, 1]]);
        let zero = Subspace::zero(k, 2);
        assert_eq!(u.sum(&zero).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);
        let a = span(2, 2, &[&[1, 0]]);
        let b = span(2, 2, &[&[0, 1]]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(k, 2));
        assert_eq!(a.intersect(&b).unwrap(), zero);
        assert!(Subspace::full(k, 2).contains(&a).unwrap());
        assert!(!a.contains(&b).unwrap());
        assert_eq!(a.codim(), 1);
        assert!(a.sum(&Subspace::zero(k, 3)).is_err());
        assert!(a.sum(&Subspace::zero(gf(3), 2)).is_err());
    }

    #[test]
    fn span_is_canonical() {
        assert_eq!(
            span(3, 3, &[&[1, 2, 0], &[2, 1, 1]]),
            span(3, 3, &[&[0, 0, 1], &[2, 1, 0], &[1, 2, 1]])
        );
    }

    #[test]
    fn coordinates_recombine() {
        let s = span(5, 3, &[&[1, 2, 3], &[0, 1, 4]]);
        let v = vec![2, 3, 1];
        let w = s.combine(&[2, 4]);
        assert!(s.contains_vector(&w));
        let c = s.coordinates(&w).unwrap();
        assert_eq!(s.combine(&c), w);
        assert_eq!(s.contains_vector(&v), members(&s).contains(&v));
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        // number of subspaces of GF(2)^3 is 1 + 7 + 7 + 1, of GF(3)^2 is 1 + 4 + 1
        assert_eq!(Subspace::all(gf(2), 3).len(), 16);
        assert_eq!(Subspace::all(gf(3), 2).len(), 6);
        assert_eq!(Subspace::all(gf(2), 4).len(), 1 + 15 + 35 + 15 + 1);
        assert_eq!(Subspace::all(gf(5), 1).len(), 2);
    }

    #[test]
    fn enumerated_subspaces_are_distinct_and_closed() {
        for (p, n) in [(2, 3), (3, 2), (2, 2)] {
            let all = Subspace::all(gf(p), n);
            for (i, s) in all.iter().enumerate() {
                assert_eq!(&Subspace::from_rows_of(s.basis()), s, "not canonical");
                for t in &all[..i] {
                    assert_ne!(s, t);
                }
                assert_eq!(members(s).len(), (p as usize).pow(s.dim() as u32));
            }
        }
    }

    #[test]
    fn lattice_ops_against_brute_force() {
        for (p, n) in [(2, 3), (3, 2)] {
            let all = Subspace::all(gf(p), n);
            for a in &all {
                let ma = members(a);
                for b in &all {
                    let mb = members(b);
                    let meet = a.intersect(b).unwrap();
                    let expected: Vec<Vec<u32>> =
                        ma.iter().filter(|v| mb.contains(v)).cloned().collect();
                    assert_eq!(members(&meet), expected);

                    let join = a.sum(b).unwrap();
                    assert!(join.contains(a).unwrap() && join.contains(b).unwrap());
                    assert_eq!(join.dim() + meet.dim(), a.dim() + b.dim());
                    assert_eq!(a.contains(b).unwrap(), mb.iter().all(|v| ma.contains(v)));
                }
            }
        }
    }
}
