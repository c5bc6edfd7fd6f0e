//! Exhaustive sweeps that cross-validate the criteria against the oracles.
//!
//! Universes are processed in parallel; results are collected in the
//! canonical enumeration order, so summaries do not depend on scheduling.

use rayon::prelude::*;

use crate::balance::{self, BalanceReport, Universe, DEFAULT_MATERIALIZE_BOUND};
use crate::error::Result;
use crate::ffla::{FFMatrix, InvariantSubspacePair, PrimeField, Subspace};
use crate::lvw::{self, LvwDecision, DEFAULT_ENUMERATION_BOUND};
use crate::settrans::{InvariantSetPair, Transformation};
use crate::txy::{self, TxyDecision, DEFAULT_ORACLE_BOUND};

/// Size limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest degree `n` for which the transformation oracle runs.
    pub transform_degree: usize,
    /// Largest `p^(n²)` for which `n × n` matrices are enumerated.
    pub linear_matrices: u128,
    /// Largest `p^n` for which a linear map is expanded point by point.
    pub materialize_points: u128,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            transform_degree: DEFAULT_ORACLE_BOUND,
            linear_matrices: DEFAULT_ENUMERATION_BOUND,
            materialize_points: DEFAULT_MATERIALIZE_BOUND,
        }
    }
}

impl Bounds {
    /// The same bound applied to every kind of enumeration.
    pub fn uniform(bound: u128) -> Self {
        Self {
            transform_degree: usize::try_from(bound).unwrap_or(usize::MAX),
            linear_matrices: bound,
            materialize_points: bound,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TransformRecord {
    pub pair: InvariantSetPair,
    pub decision: TxyDecision,
    pub oracle: Option<Transformation>,
    /// Whether the constructed witness verifies; `None` on a negative decision.
    pub witness_ok: Option<bool>,
    pub balance: BalanceReport,
}

impl TransformRecord {
    pub fn agrees(&self) -> bool {
        self.decision.unit_regular == self.oracle.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct LinearRecord {
    pub pair: InvariantSubspacePair,
    pub decision: LvwDecision,
    pub oracle: Option<FFMatrix>,
    pub witness_ok: Option<bool>,
    pub balance: BalanceReport,
    /// Point-by-point balance, when `p^n` is within the materialization bound.
    pub materialized: Option<BalanceReport>,
    /// `nullity(f) = corank(f)`.
    pub nullity_eq_corank: bool,
}

impl LinearRecord {
    pub fn agrees(&self) -> bool {
        self.decision.unit_regular == self.oracle.is_some()
    }
}

/// Every element of `T̄([0, n), Y)` in lexicographic order, each decided by
/// both the criterion and the oracle.
pub fn transform_universe(n: usize, y: &[usize], bounds: &Bounds) -> Result<Vec<TransformRecord>> {
    txy::check_degree(n, bounds.transform_degree)?;
    let pairs: Vec<InvariantSetPair> = txy::invariant_maps(n, y)?.collect();
    pairs
        .into_par_iter()
        .map(|pair| {
            let decision = txy::check(&pair);
            let oracle = txy::oracle(&pair, bounds.transform_degree)?;
            let witness_ok = decision
                .witness
                .as_ref()
                .map(|g| txy::verify_witness(&pair, g));
            let balance = balance::balance_transform(pair.map());
            Ok(TransformRecord {
                pair,
                decision,
                oracle,
                witness_ok,
                balance,
            })
        })
        .collect()
}

/// Every element of `L̄(GF(p)^n, W)` in lexicographic order, each decided by
/// both the criterion and the oracle.
pub fn linear_universe(w: &Subspace, bounds: &Bounds) -> Result<Vec<LinearRecord>> {
    let (k, n) = (w.field(), w.ambient());
    let units: Vec<FFMatrix> = lvw::units(k, n, w, bounds.linear_matrices)?.collect();
    let pairs: Vec<InvariantSubspacePair> =
        lvw::invariant_maps(k, n, w, bounds.linear_matrices)?.collect();
    let materialize = (k.modulus() as u128)
        .checked_pow(n as u32)
        .is_some_and(|size| size <= bounds.materialize_points);
    pairs
        .into_par_iter()
        .map(|pair| {
            let decision = lvw::check(&pair);
            let oracle = lvw::oracle_among(&pair, &units).cloned();
            let witness_ok = decision
                .witness
                .as_ref()
                .map(|g| lvw::verify_witness(&pair, g));
            let balance = balance::balance_linear(pair.map())?;
            let materialized = if materialize {
                Some(balance::materialized_balance(
                    pair.map(),
                    bounds.materialize_points,
                )?)
            } else {
                None
            };
            let nullity_eq_corank = lvw::check_lv(pair.map());
            Ok(LinearRecord {
                pair,
                decision,
                oracle,
                witness_ok,
                balance,
                materialized,
                nullity_eq_corank,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Transform,
    Linear,
}

/// Counts over one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniverseSummary {
    /// `None` for transformations.
    pub p: Option<u32>,
    pub n: usize,
    /// `Y` as a sorted list, or the RREF basis rows of `W`.
    pub subset: Vec<Vec<u32>>,
    /// `|Y|` or `dim W`.
    pub subset_size: usize,
    pub total: usize,
    /// Positive criterion decisions.
    pub unit_regular: usize,
    /// Positive oracle decisions.
    pub oracle_unit_regular: usize,
    pub semi_balanced: usize,
    /// Criterion and oracle differ.
    pub disagreements: usize,
    /// Positive decisions whose witness failed to verify.
    pub witness_failures: usize,
    /// Oracle-positive elements that are not semi-balanced.
    pub ureg_outside_balanced: usize,
    /// Linear only: formula and point-by-point balance differ, or
    /// `nullity ≠ corank`.
    pub balance_mismatches: usize,
    /// The closed-form semigroup predicate.
    pub semigroup_predicate: bool,
    /// Whether the oracle found every element unit-regular.
    pub semigroup_exhaustive: bool,
}

impl UniverseSummary {
    pub fn semigroup_agrees(&self) -> bool {
        self.semigroup_predicate == self.semigroup_exhaustive
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements == 0
            && self.witness_failures == 0
            && self.ureg_outside_balanced == 0
            && self.balance_mismatches == 0
            && self.semigroup_agrees()
    }

    /// The universe these counts describe.
    pub fn universe(&self) -> Universe {
        match self.p {
            None => Universe::Transform {
                n: self.n,
                y: self.subset.iter().map(|v| v[0] as usize).collect(),
            },
            Some(p) => {
                let k = PrimeField::new(p).expect("summaries carry a prime");
                Universe::Linear {
                    w: Subspace::span(k, self.n, &self.subset).expect("rows from a subspace"),
                }
            }
        }
    }
}

fn summarize_transform(n: usize, y: &[usize], records: &[TransformRecord]) -> UniverseSummary {
    let count =
        |pred: &dyn Fn(&TransformRecord) -> bool| records.iter().filter(|r| pred(r)).count();
    let oracle_unit_regular = count(&|r| r.oracle.is_some());
    UniverseSummary {
        p: None,
        n,
        subset: y.iter().map(|&x| vec![x as u32]).collect(),
        subset_size: y.len(),
        total: records.len(),
        unit_regular: count(&|r| r.decision.unit_regular),
        oracle_unit_regular,
        semi_balanced: count(&|r| r.balance.semi_balanced),
        disagreements: count(&|r| !r.agrees()),
        witness_failures: count(&|r| r.witness_ok == Some(false)),
        ureg_outside_balanced: count(&|r| r.oracle.is_some() && !r.balance.semi_balanced),
        balance_mismatches: 0,
        semigroup_predicate: txy::semigroup_unit_regular(n, y).expect("validated subset"),
        semigroup_exhaustive: oracle_unit_regular == records.len(),
    }
}

fn summarize_linear(w: &Subspace, records: &[LinearRecord]) -> UniverseSummary {
    let count = |pred: &dyn Fn(&LinearRecord) -> bool| records.iter().filter(|r| pred(r)).count();
    let oracle_unit_regular = count(&|r| r.oracle.is_some());
    UniverseSummary {
        p: Some(w.field().modulus()),
        n: w.ambient(),
        subset: w.basis_rows(),
        subset_size: w.dim(),
        total: records.len(),
        unit_regular: count(&|r| r.decision.unit_regular),
        oracle_unit_regular,
        semi_balanced: count(&|r| r.balance.semi_balanced),
        disagreements: count(&|r| !r.agrees()),
        witness_failures: count(&|r| r.witness_ok == Some(false)),
        ureg_outside_balanced: count(&|r| r.oracle.is_some() && !r.balance.semi_balanced),
        balance_mismatches: count(&|r| {
            !r.nullity_eq_corank || r.materialized.is_some_and(|m| m != r.balance)
        }),
        semigroup_predicate: lvw::semigroup_unit_regular(w),
        semigroup_exhaustive: oracle_unit_regular == records.len(),
    }
}

/// Aggregate of a sweep over several universes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub kind: Kind,
    pub p: Option<u32>,
    pub max_n: usize,
    pub universes: Vec<UniverseSummary>,
}

impl ScanSummary {
    fn sum(&self, field: impl Fn(&UniverseSummary) -> usize) -> usize {
        self.universes.iter().map(field).sum()
    }

    pub fn total(&self) -> usize {
        self.sum(|u| u.total)
    }

    pub fn unit_regular(&self) -> usize {
        self.sum(|u| u.unit_regular)
    }

    pub fn semi_balanced(&self) -> usize {
        self.sum(|u| u.semi_balanced)
    }

    pub fn disagreements(&self) -> usize {
        self.sum(|u| u.disagreements)
    }

    pub fn witness_failures(&self) -> usize {
        self.sum(|u| u.witness_failures)
    }

    pub fn ureg_outside_balanced(&self) -> usize {
        self.sum(|u| u.ureg_outside_balanced)
    }

    pub fn balance_mismatches(&self) -> usize {
        self.sum(|u| u.balance_mismatches)
    }

    pub fn semigroup_mismatches(&self) -> usize {
        self.sum(|u| !u.semigroup_agrees() as usize)
    }

    pub fn is_clean(&self) -> bool {
        self.universes.iter().all(UniverseSummary::is_clean)
    }
}

/// Every `T̄([0, n), Y)` with `1 ≤ n ≤ max_n` and `Y` nonempty, ordered by
/// `n` and then by subset bitmask.
pub fn scan_transforms(max_n: usize, bounds: &Bounds) -> Result<ScanSummary> {
    let jobs: Vec<(usize, Vec<usize>)> = (1..=max_n)
        .flat_map(|n| txy::nonempty_subsets(n).into_iter().map(move |y| (n, y)))
        .collect();
    let universes = jobs
        .par_iter()
        .map(|(n, y)| {
            let records = transform_universe(*n, y, bounds)?;
            Ok(summarize_transform(*n, y, &records))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanSummary {
        kind: Kind::Transform,
        p: None,
        max_n,
        universes,
    })
}

/// Every `L̄(GF(p)^n, W)` with `1 ≤ n ≤ max_n` and every subspace `W`,
/// ordered by `n` and then by [`Subspace::all`].
pub fn scan_linear(field: PrimeField, max_n: usize, bounds: &Bounds) -> Result<ScanSummary> {
    let jobs: Vec<Subspace> = (1..=max_n).flat_map(|n| Subspace::all(field, n)).collect();
    let universes = jobs
        .par_iter()
        .map(|w| {
            let records = linear_universe(w, bounds)?;
            Ok(summarize_linear(w, &records))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanSummary {
        kind: Kind::Linear,
        p: Some(field.modulus()),
        max_n,
        universes,
    })
}
