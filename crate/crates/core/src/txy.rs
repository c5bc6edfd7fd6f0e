//! Unit-regular elements of `T̄(X, Y) = { f ∈ T(X) : Yf ⊆ Y }` for finite `X`.
//!
//! [`check`] evaluates the three-condition criterion:
//!
//! 1. `f↾Y` is unit-regular in `T(Y)` (tested as `c(f↾Y) = d(f↾Y)`);
//! 2. `R(f↾Y) = Y ∩ R(f)`;
//! 3. `|C(f) ∖ C(f↾Y)| = |D(f) ∖ D(f↾Y)|`, where `C(f) = X ∖ T_f`,
//!    `C(f↾Y) = Y ∖ T_{f↾Y}` for the canonical constrained transversal and
//!    `D(·)` is the complement of the range.
//!
//! When all three hold, the decision carries a witness unit built piecewise
//! from the inverse of `f` on `T_f` and order-preserving bijections between
//! the defect and collapse sets. [`oracle`] answers the same question by
//! scanning every unit of the monoid.

use crate::error::{Error, Result};
use crate::settrans::{
    compose, constrained_transversal, indices_of, kernel_data, restrict, subset_mask,
    InvariantSetPair, Transformation,
};

/// Largest `n` the exhaustive [`oracle`] accepts unless told otherwise.
pub const DEFAULT_ORACLE_BOUND: usize = 8;

/// Outcome of [`check`]. All point sets are sorted and use the labels of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TxyDecision {
    pub unit_regular: bool,
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    /// `T_f`
    pub transversal: Vec<usize>,
    /// `T_{f↾Y} = Y ∩ T_f`
    pub restricted_transversal: Vec<usize>,
    /// `C(f) = X ∖ T_f`
    pub collapse_set: Vec<usize>,
    /// `C(f↾Y) = Y ∖ T_{f↾Y}`
    pub restricted_collapse_set: Vec<usize>,
    /// `D(f) = X ∖ R(f)`
    pub defect_set: Vec<usize>,
    /// `D(f↾Y) = Y ∖ R(f↾Y)`
    pub restricted_defect_set: Vec<usize>,
    pub witness: Option<Transformation>,
}

pub fn check(pair: &InvariantSetPair) -> TxyDecision {
    let n = pair.degree();
    let f = pair.map();
    let y = pair.subset();

    let restricted = kernel_data(&restrict(pair));
    let cond_i = restricted.collapse == restricted.defect;

    let range = f.range();
    let restricted_range = f.image_of(y);
    let y_cap_range: Vec<usize> = range
        .iter()
        .copied()
        .filter(|&x| pair.in_subset(x))
        .collect();
    let cond_ii = restricted_range == y_cap_range;

    let (transversal, restricted_transversal) = constrained_transversal(pair);
    let all: Vec<usize> = (0..n).collect();
    let collapse_set = complement(n, &all, &transversal);
    let restricted_collapse_set = complement(n, y, &restricted_transversal);
    let defect_set = complement(n, &all, &range);
    let restricted_defect_set = complement(n, y, &restricted_range);

    let cond_iii = difference(&collapse_set, &restricted_collapse_set).len()
        == difference(&defect_set, &restricted_defect_set).len();

    let mut decision = TxyDecision {
        unit_regular: cond_i && cond_ii && cond_iii,
        cond_i,
        cond_ii,
        cond_iii,
        transversal,
        restricted_transversal,
        collapse_set,
        restricted_collapse_set,
        defect_set,
        restricted_defect_set,
        witness: None,
    };
    if decision.unit_regular {
        decision.witness = Some(build_witness(pair, &decision));
    }
    decision
}

/// Witness unit `g` with `fgf = f`, or [`Error::NotUnitRegular`].
pub fn witness(pair: &InvariantSetPair) -> Result<Transformation> {
    check(pair).witness.ok_or(Error::NotUnitRegular)
}

fn build_witness(pair: &InvariantSetPair, d: &TxyDecision) -> Transformation {
    let n = pair.degree();
    let f = pair.map();
    let mut g = vec![usize::MAX; n];

    // g0: R(f) → T_f, inverse of f on the transversal
    for &t in &d.transversal {
        g[f.apply(t)] = t;
    }
    // g1: D(f↾Y) → C(f↾Y)
    for (&from, &to) in d
        .restricted_defect_set
        .iter()
        .zip(&d.restricted_collapse_set)
    {
        g[from] = to;
    }
    // g2: D(f) ∖ D(f↾Y) → C(f) ∖ C(f↾Y)
    let outer_defect = difference(&d.defect_set, &d.restricted_defect_set);
    let outer_collapse = difference(&d.collapse_set, &d.restricted_collapse_set);
    for (&from, &to) in outer_defect.iter().zip(&outer_collapse) {
        g[from] = to;
    }
    Transformation::new(g).expect("criterion guarantees the pieces cover X")
}

/// True iff `g` is a unit of `T̄(X, Y)` (a permutation with `Yg = Y`) and
/// `fgf = f`.
pub fn verify_witness(pair: &InvariantSetPair, g: &Transformation) -> bool {
    if g.degree() != pair.degree() || !g.is_unit() {
        return false;
    }
    if pair.subset().iter().any(|&y| !pair.in_subset(g.apply(y))) {
        return false;
    }
    let f = pair.map();
    compose(f, g).and_then(|fg| compose(&fg, f)).ok().as_ref() == Some(f)
}

/// Fails with [`Error::BoundExceeded`] if the oracle would not run at degree
/// `n`.
pub fn check_degree(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded {
            size: n as u128,
            bound: bound as u128,
        });
    }
    Ok(())
}

/// First unit `g` (in lexicographic order of image sequences) with
/// `fgf = f`, or `None` if there is none.
pub fn oracle(pair: &InvariantSetPair, bound: usize) -> Result<Option<Transformation>> {
    let n = pair.degree();
    check_degree(n, bound)?;
    let f = pair.map().images();
    let found = units(n, pair.subset())?.find(|g| {
        let g = g.images();
        // x·fgf = x·f for every x
        f.iter().all(|&fx| f[g[fx]] == fx)
    });
    Ok(found)
}

/// The semigroup `T̄(X, Y)` with finite `X` is unit-regular iff `|Y| = 1` or
/// `Y = X`.
pub fn semigroup_unit_regular(n: usize, y: &[usize]) -> Result<bool> {
    let mask = subset_mask(n, y.iter().copied())?;
    let size = mask.iter().filter(|&&b| b).count();
    Ok(size == 1 || size == n)
}

/// For `|Y| ≥ 2`, `Y ≠ X`: the map sending `Y` to `a = min Y` and everything
/// else to `b`, the next element of `Y`. It lies in `T̄(X, Y)` and has
/// `R(f↾Y) = {a} ≠ {a, b} = Y ∩ R(f)`. `None` when no such map exists.
pub fn range_gap_example(n: usize, y: &[usize]) -> Result<Option<InvariantSetPair>> {
    let mask = subset_mask(n, y.iter().copied())?;
    let y = indices_of(&mask);
    if y.len() < 2 || y.len() == n {
        return Ok(None);
    }
    let (a, b) = (y[0], y[1]);
    let images = mask
        .iter()
        .map(|&inside| if inside { a } else { b })
        .collect();
    InvariantSetPair::new(Transformation::new(images)?, y).map(Some)
}

/// Units of `T̄(X, Y)`: permutations `g` of `[0, n)` with `Yg = Y`, in
/// lexicographic order of their image sequences. There are
/// `|Y|! · (n - |Y|)!` of them.
pub fn units(n: usize, y: &[usize]) -> Result<StabilizerUnits> {
    let in_y = subset_mask(n, y.iter().copied())?;
    Ok(StabilizerUnits {
        in_y,
        current: None,
        done: false,
    })
}

/// Iterator returned by [`units`].
#[derive(Debug, Clone)]
pub struct StabilizerUnits {
    in_y: Vec<bool>,
    current: Option<Vec<usize>>,
    done: bool,
}

impl StabilizerUnits {
    /// Lexicographic successor among permutations preserving the two classes
    /// `Y` and `X ∖ Y`. Returns false when `perm` is the last one.
    fn advance(&self, perm: &mut [usize]) -> bool {
        let n = perm.len();
        for i in (0..n).rev() {
            let class = self.in_y[i];
            let next = perm[i + 1..]
                .iter()
                .copied()
                .filter(|&v| self.in_y[v] == class && v > perm[i])
                .min();
            if let Some(v) = next {
                let mut pool: Vec<usize> = perm[i..].iter().copied().filter(|&u| u != v).collect();
                pool.sort_unstable();
                perm[i] = v;
                for (j, slot) in perm.iter_mut().enumerate().skip(i + 1) {
                    let k = pool
                        .iter()
                        .position(|&u| self.in_y[u] == self.in_y[j])
                        .expect("class sizes match");
                    *slot = pool.remove(k);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for StabilizerUnits {
    type Item = Transformation;

    fn next(&mut self) -> Option<Transformation> {
        if self.done {
            return None;
        }
        match self.current.as_mut() {
            None => self.current = Some((0..self.in_y.len()).collect()),
            Some(perm) => {
                let mut perm = std::mem::take(perm);
                if !self.advance(&mut perm) {
                    self.done = true;
                    return None;
                }
                self.current = Some(perm);
            }
        }
        self.current
            .clone()
            .map(|images| Transformation::new(images).expect("permutation"))
    }
}

/// Every `f` with `Yf ⊆ Y`, in lexicographic order of image sequences.
pub fn invariant_maps(n: usize, y: &[usize]) -> Result<impl Iterator<Item = InvariantSetPair>> {
    let in_y = subset_mask(n, y.iter().copied())?;
    let y = indices_of(&in_y);
    // digit i ranges over Y when i ∈ Y, over X otherwise
    let choices: Vec<Vec<usize>> = (0..n)
        .map(|i| if in_y[i] { y.clone() } else { (0..n).collect() })
        .collect();
    let total: usize = choices.iter().map(Vec::len).product();
    Ok((0..total).map(move |mut k| {
        let mut images = vec![0; n];
        for i in (0..n).rev() {
            let c = &choices[i];
            images[i] = c[k % c.len()];
            k /= c.len();
        }
        let f = Transformation::new(images).expect("digits are in range");
        InvariantSetPair::new(f, y.iter().copied()).expect("Y is invariant by construction")
    }))
}

/// Every nonempty subset of `[0, n)`, ordered by bitmask value.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u64..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

fn complement(n: usize, universe: &[usize], remove: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; n];
    for &x in remove {
        mask[x] = true;
    }
    universe.iter().copied().filter(|&x| !mask[x]).collect()
}

fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_err())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(images: &[usize], y: &[usize]) -> InvariantSetPair {
        InvariantSetPair::new(
            Transformation::new(images.to_vec()).unwrap(),
            y.iter().copied(),
        )
        .unwrap()
    }

    fn factorial(k: usize) -> usize {
        (1..=k).product()
    }

    #[test]
    fn unit_counts() {
        let u: Vec<_> = units(2, &[0]).unwrap().collect();
        assert_eq!(u, vec![Transformation::identity(2)]);
        assert_eq!(units(3, &[0, 1]).unwrap().count(), 2);
        assert_eq!(units(3, &[0, 1, 2]).unwrap().count(), 6);
        for n in 1..=6 {
            for y in nonempty_subsets(n) {
                let all: Vec<_> = units(n, &y).unwrap().collect();
                assert_eq!(all.len(), factorial(y.len()) * factorial(n - y.len()));
                assert!(all.windows(2).all(|w| w[0] < w[1]), "not lexicographic");
                for g in &all {
                    assert!(g.is_unit());
                    assert_eq!(g.image_of(&y), y);
                }
            }
        }
    }

    #[test]
    fn units_match_filtered_symmetric_group() {
        // brute force: filter all n^n maps
        let n = 5;
        for y in nonempty_subsets(n) {
            let expected: Vec<Transformation> = invariant_maps(n, &(0..n).collect::<Vec<_>>())
                .unwrap()
                .map(|p| p.map().clone())
                .filter(|g| g.is_unit() && g.image_of(&y) == y)
                .collect();
            let got: Vec<_> = units(n, &y).unwrap().collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn check_positive_example() {
        let p = pair(&[0, 0, 2, 2], &[0, 1]);
        let d = check(&p);
        assert!(d.unit_regular);
        assert!(d.cond_i && d.cond_ii && d.cond_iii);
        assert_eq!(d.transversal, vec![0, 2]);
        assert_eq!(d.collapse_set, vec![1, 3]);
        assert_eq!(d.restricted_collapse_set, vec![1]);
        assert_eq!(d.defect_set, vec![1, 3]);
        assert_eq!(d.restricted_defect_set, vec![1]);
        let g = d.witness.unwrap();
        assert_eq!(g.apply(0), 0);
        assert_eq!(g.apply(2), 2);
        assert_eq!(g.apply(1), 1);
        assert_eq!(g.apply(3), 3);
        assert!(verify_witness(&p, &g));
    }

    #[test]
    fn check_negative_example() {
        let p = pair(&[0, 0, 1, 3], &[0, 1]);
        let d = check(&p);
        assert!(!d.unit_regular);
        assert!(!d.cond_ii);
        assert!(d.witness.is_none());
        assert_eq!(witness(&p), Err(Error::NotUnitRegular));
        assert_eq!(oracle(&p, DEFAULT_ORACLE_BOUND).unwrap(), None);
    }

    #[test]
    fn identity_is_its_own_witness() {
        for n in 1..=5 {
            for y in nonempty_subsets(n) {
                let p = InvariantSetPair::new(Transformation::identity(n), y).unwrap();
                assert_eq!(witness(&p).unwrap(), Transformation::identity(n));
                assert_eq!(
                    oracle(&p, DEFAULT_ORACLE_BOUND).unwrap(),
                    Some(Transformation::identity(n))
                );
            }
        }
    }

    #[test]
    fn constant_on_singleton() {
        let p = pair(&[0, 0, 0], &[0]);
        let g = witness(&p).unwrap();
        assert!(verify_witness(&p, &g));
    }

    #[test]
    fn oracle_finds_witness() {
        let p = pair(&[0, 0, 2, 2], &[0, 1]);
        let g = oracle(&p, DEFAULT_ORACLE_BOUND).unwrap().unwrap();
        assert!(verify_witness(&p, &g));
    }

    #[test]
    fn oracle_bound() {
        let p = InvariantSetPair::new(Transformation::identity(9), [0]).unwrap();
        assert_eq!(
            oracle(&p, DEFAULT_ORACLE_BOUND),
            Err(Error::BoundExceeded { size: 9, bound: 8 })
        );
        assert!(oracle(&p, 9).unwrap().is_some());
    }

    #[test]
    fn semigroup_predicate() {
        assert!(semigroup_unit_regular(4, &[2]).unwrap());
        assert!(semigroup_unit_regular(4, &[0, 1, 2, 3]).unwrap());
        assert!(!semigroup_unit_regular(4, &[0, 1]).unwrap());
        assert_eq!(semigroup_unit_regular(4, &[]), Err(Error::EmptySubset));
    }

    #[test]
    fn range_gap_example_breaks_condition_ii() {
        assert!(range_gap_example(4, &[1]).unwrap().is_none());
        assert!(range_gap_example(3, &[0, 1, 2]).unwrap().is_none());
        let p = range_gap_example(4, &[1, 3]).unwrap().unwrap();
        assert_eq!(p.map().images(), &[3, 1, 3, 1]);
        let d = check(&p);
        assert!(!d.cond_ii && !d.unit_regular);
    }

    #[test]
    fn invariant_map_count() {
        for n in 1..=4 {
            for y in nonempty_subsets(n) {
                let k = y.len();
                let expected = k.pow(k as u32) * n.pow((n - k) as u32);
                assert_eq!(invariant_maps(n, &y).unwrap().count(), expected);
            }
        }
    }
}
