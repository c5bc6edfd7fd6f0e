//! Collapse, defect and semi-balancedness.
//!
//! For a transformation these are counted directly from the kernel. A linear
//! map `f` of `GF(p)^n` is also a self-map of a finite set with `p^n`
//! points; its kernel classes are the cosets of `N(f)`, so both the collapse
//! and the defect equal `p^n - p^rank(f)`. [`materialized_balance`] expands
//! the map point by point as an independent check of that formula.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffla::{FFMatrix, Subspace};
use crate::lvw;
use crate::scan::Bounds;
use crate::settrans::{kernel_data, InvariantSetPair, Transformation};
use crate::txy;

/// Largest `p^n` that [`materialized_balance`] expands by default.
pub const DEFAULT_MATERIALIZE_BOUND: u128 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalanceReport {
    pub collapse: u128,
    pub defect: u128,
    pub semi_balanced: bool,
}

impl BalanceReport {
    fn new(collapse: u128, defect: u128) -> Self {
        Self {
            collapse,
            defect,
            semi_balanced: collapse == defect,
        }
    }
}

pub fn balance_transform(f: &Transformation) -> BalanceReport {
    let kd = kernel_data(f);
    BalanceReport::new(kd.collapse as u128, kd.defect as u128)
}

pub fn balance_linear(f: &FFMatrix) -> Result<BalanceReport> {
    if !f.is_square() {
        return Err(Error::NotSquare {
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    let p = f.field().modulus() as u128;
    let points = p.checked_pow(f.rows() as u32).ok_or(Error::Overflow)?;
    let rank = f.rank();
    // |T_f| = number of cosets of N(f) = p^rank; |R(f)| = p^rank
    let transversal = p.pow(rank as u32);
    let range = p.pow(rank as u32);
    Ok(BalanceReport::new(points - transversal, points - range))
}

/// `f` as a transformation of the `p^n` vectors, vector `(v₀, …, v_{n-1})`
/// having index `Σ vᵢ·pⁱ`.
pub fn materialize(f: &FFMatrix, bound: u128) -> Result<Transformation> {
    if !f.is_square() {
        return Err(Error::NotSquare {
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    let n = f.rows();
    let p = f.field().modulus() as u128;
    let size = p.checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::BoundExceeded { size, bound });
    }
    let p = p as usize;
    let images = (0..size as usize)
        .map(|idx| {
            let v = vector_at(idx, p, n);
            let image = f.vec_mul(&v).expect("square");
            vector_index(&image, p)
        })
        .collect();
    Transformation::new(images)
}

fn vector_at(mut idx: usize, p: usize, n: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    for slot in v.iter_mut() {
        *slot = (idx % p) as u32;
        idx /= p;
    }
    v
}

fn vector_index(v: &[u32], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * p + x as usize)
}

pub fn materialized_balance(f: &FFMatrix, bound: u128) -> Result<BalanceReport> {
    Ok(balance_transform(&materialize(f, bound)?))
}

/// A whole monoid to be scanned element by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Universe {
    /// `T̄(X, Y)` with `X = [0, n)`.
    Transform { n: usize, y: Vec<usize> },
    /// `L̄(V, W)` with `V` the ambient space of `W`.
    Linear { w: Subspace },
}

/// Element counts over a [`Universe`], with unit-regularity decided by the
/// exhaustive oracle and semi-balancedness by the set-level counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UniverseCensus {
    pub total: usize,
    pub unit_regular: usize,
    pub semi_balanced: usize,
    /// Unit-regular elements that are not semi-balanced.
    pub ureg_outside_balanced: usize,
}

impl UniverseCensus {
    pub fn ureg_subset_balanced(&self) -> bool {
        self.ureg_outside_balanced == 0
    }

    pub fn ureg_equals_balanced(&self) -> bool {
        self.ureg_subset_balanced() && self.unit_regular == self.semi_balanced
    }

    pub fn strict_inclusion(&self) -> bool {
        self.ureg_subset_balanced() && self.unit_regular < self.semi_balanced
    }
}

pub fn census(universe: &Universe, bounds: &Bounds) -> Result<UniverseCensus> {
    let tally = |rows: Vec<(bool, bool)>| {
        let mut c = UniverseCensus::default();
        for (ureg, balanced) in rows {
            c.total += 1;
            c.unit_regular += ureg as usize;
            c.semi_balanced += balanced as usize;
            c.ureg_outside_balanced += (ureg && !balanced) as usize;
        }
        c
    };
    match universe {
        Universe::Transform { n, y } => {
            txy::check_degree(*n, bounds.transform_degree)?;
            let pairs: Vec<InvariantSetPair> = txy::invariant_maps(*n, y)?.collect();
            let rows = pairs
                .par_iter()
                .map(|pair| {
                    let ureg = txy::oracle(pair, bounds.transform_degree)?.is_some();
                    Ok((ureg, balance_transform(pair.map()).semi_balanced))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(tally(rows))
        }
        Universe::Linear { w } => {
            let (k, n) = (w.field(), w.ambient());
            let units: Vec<FFMatrix> = lvw::units(k, n, w, bounds.linear_matrices)?.collect();
            let pairs: Vec<_> = lvw::invariant_maps(k, n, w, bounds.linear_matrices)?.collect();
            let rows = pairs
                .par_iter()
                .map(|pair| {
                    let ureg = lvw::oracle_among(pair, &units).is_some();
                    let bal = materialized_balance(pair.map(), bounds.materialize_points)?;
                    Ok((ureg, bal.semi_balanced))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(tally(rows))
        }
    }
}

/// Whether every oracle-certified unit-regular element of the universe is
/// semi-balanced.
pub fn ureg_subset_balanced(universe: &Universe, bounds: &Bounds) -> Result<bool> {
    Ok(census(universe, bounds)?.ureg_subset_balanced())
}
