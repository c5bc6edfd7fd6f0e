//! Finite transformations of `{0, …, n-1}`.
//!
//! A [`Transformation`] is stored as its image sequence: entry `i` is `i·f`.
//! Kernel classes, transversals, collapse and defect are exposed through
//! [`kernel_data`]; the variants that respect an invariant subset `Y` live on
//! [`InvariantSetPair`].

use std::fmt;

use crate::error::{Error, Result};

/// A total self-map of `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        if let Some((point, &image)) = images.iter().enumerate().find(|(_, &x)| x >= n) {
            return Err(Error::ImageOutOfRange { point, image, n });
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity needs at least one point");
        Self {
            images: (0..n).collect(),
        }
    }

    /// Number of points `n`.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` followed by `g`.
    pub fn compose(&self, g: &Transformation) -> Result<Transformation> {
        compose(self, g)
    }

    /// The range `Xf`, sorted ascending.
    pub fn range(&self) -> Vec<usize> {
        let mut hit = vec![false; self.degree()];
        for &x in &self.images {
            hit[x] = true;
        }
        indices_of(&hit)
    }

    /// The image `Af` of a set of points, sorted ascending.
    pub fn image_of(&self, points: &[usize]) -> Vec<usize> {
        let mut hit = vec![false; self.degree()];
        for &x in points {
            hit[self.images[x]] = true;
        }
        indices_of(&hit)
    }

    pub fn is_unit(&self) -> bool {
        is_unit(self)
    }

    pub fn inverse(&self) -> Option<Transformation> {
        if !self.is_unit() {
            return None;
        }
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self { images: inv })
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Kernel partition and the counts derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelData {
    /// Classes of `ker(f)`, each sorted, ordered by their minimum element.
    pub blocks: Vec<Vec<usize>>,
    /// Minimum element of each block, in block order.
    pub transversal: Vec<usize>,
    /// `Xf`, sorted.
    pub range: Vec<usize>,
    /// `n - |transversal|`.
    pub collapse: usize,
    /// `n - |range|`.
    pub defect: usize,
}

pub fn kernel_data(f: &Transformation) -> KernelData {
    let n = f.degree();
    let blocks = kernel_blocks(f);
    let transversal: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let range = f.range();
    KernelData {
        collapse: n - transversal.len(),
        defect: n - range.len(),
        blocks,
        transversal,
        range,
    }
}

/// Classes of `ker(f)` ordered by minimum element.
pub fn kernel_blocks(f: &Transformation) -> Vec<Vec<usize>> {
    let n = f.degree();
    // block index keyed by image value
    let mut slot = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (x, &y) in f.images.iter().enumerate() {
        if slot[y] == usize::MAX {
            slot[y] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[y]].push(x);
    }
    blocks
}

/// Returns `f` followed by `g`.
pub fn compose(f: &Transformation, g: &Transformation) -> Result<Transformation> {
    if f.degree() != g.degree() {
        return Err(Error::SizeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    Ok(Transformation {
        images: f.images.iter().map(|&x| g.images[x]).collect(),
    })
}

/// Units of `T(X)` are exactly the bijections.
pub fn is_unit(f: &Transformation) -> bool {
    let mut seen = vec![false; f.degree()];
    for &x in &f.images {
        if seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// A transformation together with a nonempty subset `Y` it leaves invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantSetPair {
    f: Transformation,
    y: Vec<usize>,
    in_y: Vec<bool>,
}

impl InvariantSetPair {
    /// Fails unless `Y` is a nonempty subset of `[0, n)` with `Yf ⊆ Y`.
    /// `Y` may be given in any order and with repeats.
    pub fn new(f: Transformation, y: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = f.degree();
        let in_y = subset_mask(n, y)?;
        let y = indices_of(&in_y);
        if let Some(&bad) = y.iter().find(|&&x| !in_y[f.apply(x)]) {
            return Err(Error::InvarianceViolated(format!(
                "{bad} lies in Y but its image {} does not",
                f.apply(bad)
            )));
        }
        Ok(Self { f, y, in_y })
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn map(&self) -> &Transformation {
        &self.f
    }

    /// `Y`, sorted ascending. Index `i` of this slice is the relabeled point
    /// `i` of [`restrict`]'s output, so it doubles as the embedding.
    pub fn subset(&self) -> &[usize] {
        &self.y
    }

    #[inline]
    pub fn in_subset(&self, x: usize) -> bool {
        self.in_y[x]
    }

    pub fn is_full(&self) -> bool {
        self.y.len() == self.degree()
    }
}

/// Validates a subset of `[0, n)` and returns its membership mask.
pub fn subset_mask(n: usize, points: impl IntoIterator<Item = usize>) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    let mut any = false;
    for x in points {
        if x >= n {
            return Err(Error::PointOutOfRange { point: x, n });
        }
        mask[x] = true;
        any = true;
    }
    if !any {
        return Err(Error::EmptySubset);
    }
    Ok(mask)
}

pub(crate) fn indices_of(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// A transversal `T_f` of `ker(f)` whose trace `Y ∩ T_f` is a transversal of
/// `ker(f↾Y)`.
///
/// Each block takes `min(P ∩ Y)` when it meets `Y` and `min(P)` otherwise.
/// Returns `(T_f, Y ∩ T_f)`, both sorted.
pub fn constrained_transversal(pair: &InvariantSetPair) -> (Vec<usize>, Vec<usize>) {
    let mut t = Vec::new();
    let mut ty = Vec::new();
    for block in kernel_blocks(pair.map()) {
        match block.iter().copied().find(|&x| pair.in_subset(x)) {
            Some(rep) => {
                t.push(rep);
                ty.push(rep);
            }
            None => t.push(block[0]),
        }
    }
    t.sort_unstable();
    ty.sort_unstable();
    (t, ty)
}

/// `f↾Y` relabeled onto `[0, |Y|)` through the order-preserving bijection
/// `Y → [0, |Y|)`.
pub fn restrict(pair: &InvariantSetPair) -> Transformation {
    let n = pair.degree();
    let mut label = vec![usize::MAX; n];
    for (i, &y) in pair.subset().iter().enumerate() {
        label[y] = i;
    }
    let images = pair
        .subset()
        .iter()
        .map(|&y| label[pair.map().apply(y)])
        .collect();
    Transformation { images }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(images: &[usize]) -> Transformation {
        Transformation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_images() {
        assert_eq!(Transformation::new(vec![]), Err(Error::EmptyDomain));
        assert_eq!(
            Transformation::new(vec![0, 3, 1]),
            Err(Error::ImageOutOfRange {
                point: 1,
                image: 3,
                n: 3
            })
        );
    }

    #[test]
    fn kernel_data_identity() {
        let kd = kernel_data(&Transformation::identity(3));
        assert_eq!(kd.blocks, vec![vec![0], vec![1], vec![2]]);
        assert_eq!((kd.collapse, kd.defect), (0, 0));
    }

    #[test]
    fn kernel_data_two_blocks() {
        let kd = kernel_data(&t(&[0, 0, 2, 2]));
        assert_eq!(kd.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(kd.transversal, vec![0, 2]);
        assert_eq!(kd.range, vec![0, 2]);
        assert_eq!((kd.collapse, kd.defect), (2, 2));
    }

    #[test]
    fn kernel_data_constant() {
        let kd = kernel_data(&t(&[1, 1, 1]));
        assert_eq!(kd.blocks, vec![vec![0, 1, 2]]);
        assert_eq!(kd.transversal, vec![0]);
        assert_eq!((kd.collapse, kd.defect), (2, 2));
    }

    #[test]
    fn blocks_ordered_by_minimum() {
        let kd = kernel_data(&t(&[2, 0, 2, 0, 1]));
        assert_eq!(kd.blocks, vec![vec![0, 2], vec![1, 3], vec![4]]);
    }

    #[test]
    fn constrained_transversal_examples() {
        let pair = InvariantSetPair::new(t(&[0, 0, 2, 2]), [0, 1]).unwrap();
        assert_eq!(constrained_transversal(&pair), (vec![0, 2], vec![0]));

        let pair = InvariantSetPair::new(Transformation::identity(3), [0, 1, 2]).unwrap();
        assert_eq!(
            constrained_transversal(&pair),
            (vec![0, 1, 2], vec![0, 1, 2])
        );

        let pair = InvariantSetPair::new(t(&[1, 1, 1, 1]), [0, 1]).unwrap();
        assert_eq!(constrained_transversal(&pair), (vec![0], vec![0]));
    }

    #[test]
    fn constrained_transversal_prefers_y() {
        // block {0, 2} meets Y = {2, 3} only at 2
        let pair = InvariantSetPair::new(t(&[3, 1, 3, 2]), [2, 3]).unwrap();
        assert_eq!(constrained_transversal(&pair), (vec![1, 2, 3], vec![2, 3]));
    }

    #[test]
    fn restrict_examples() {
        let pair = InvariantSetPair::new(t(&[0, 0, 2, 2]), [0, 1]).unwrap();
        assert_eq!(restrict(&pair), t(&[0, 0]));

        let pair = InvariantSetPair::new(t(&[0, 3, 2, 1]), [1, 3]).unwrap();
        assert_eq!(restrict(&pair), t(&[1, 0]));

        let f = t(&[2, 0, 0, 1]);
        let pair = InvariantSetPair::new(f.clone(), 0..4).unwrap();
        assert_eq!(restrict(&pair), f);
    }

    #[test]
    fn pair_validation() {
        assert_eq!(
            InvariantSetPair::new(t(&[0, 0]), []).unwrap_err(),
            Error::EmptySubset
        );
        assert!(matches!(
            InvariantSetPair::new(t(&[0, 0]), [2]),
            Err(Error::PointOutOfRange { point: 2, n: 2 })
        ));
        assert!(matches!(
            InvariantSetPair::new(t(&[2, 0, 2]), [0, 1]),
            Err(Error::InvarianceViolated(_))
        ));
    }

    #[test]
    fn compose_examples() {
        let g = t(&[2, 0, 1]);
        assert_eq!(compose(&Transformation::identity(3), &g).unwrap(), g);
        assert_eq!(
            compose(&t(&[1, 0]), &t(&[1, 0])).unwrap(),
            Transformation::identity(2)
        );
        assert_eq!(
            compose(&t(&[0, 0, 2, 2]), &t(&[1, 0, 3, 2])).unwrap(),
            t(&[1, 1, 3, 3])
        );
        assert_eq!(
            compose(&t(&[0]), &t(&[0, 1])),
            Err(Error::SizeMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn units() {
        assert!(is_unit(&Transformation::identity(4)));
        assert!(!is_unit(&t(&[0, 0])));
        assert!(is_unit(&t(&[2, 0, 1])));
        assert_eq!(t(&[2, 0, 1]).inverse(), Some(t(&[1, 2, 0])));
        assert_eq!(t(&[0, 0]).inverse(), None);
    }

    /// Every transformation of `n` points, in lexicographic order.
    fn all_maps(n: usize) -> impl Iterator<Item = Transformation> {
        let total = n.pow(n as u32);
        (0..total).map(move |mut k| {
            let mut images = vec![0; n];
            for slot in images.iter_mut().rev() {
                *slot = k % n;
                k /= n;
            }
            Transformation::new(images).unwrap()
        })
    }

    #[test]
    fn finite_maps_are_semi_balanced() {
        for n in 1..=6 {
            for f in all_maps(n) {
                let kd = kernel_data(&f);
                assert_eq!(kd.collapse, kd.defect, "{f}");
                assert_eq!(kd.blocks.len(), kd.range.len());
            }
        }
    }

    fn arb_map() -> impl Strategy<Value = Transformation> {
        (1usize..=9).prop_flat_map(|n| {
            proptest::collection::vec(0..n, n).prop_map(|v| Transformation::new(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn collapse_independent_of_transversal(f in arb_map(), picks in proptest::collection::vec(any::<usize>(), 9)) {
            let kd = kernel_data(&f);
            let alt: Vec<usize> = kd.blocks.iter().zip(&picks).map(|(b, &k)| b[k % b.len()]).collect();
            // alt is a transversal: one point per class, distinct images
            let mut imgs: Vec<usize> = alt.iter().map(|&x| f.apply(x)).collect();
            imgs.sort_unstable();
            imgs.dedup();
            prop_assert_eq!(imgs.len(), kd.blocks.len());
            prop_assert_eq!(f.degree() - alt.len(), kd.collapse);
        }

        #[test]
        fn constrained_transversal_is_valid(f in arb_map(), seed in any::<u64>()) {
            // take Y to be the forward orbit closure of a seed point
            let n = f.degree();
            let mut in_y = vec![false; n];
            let mut x = (seed as usize) % n;
            while !in_y[x] {
                in_y[x] = true;
                x = f.apply(x);
            }
            let pair = InvariantSetPair::new(f.clone(), indices_of(&in_y)).unwrap();
            let (tf, tfy) = constrained_transversal(&pair);
            let kd = kernel_data(&f);
            // one representative per block of ker(f)
            prop_assert_eq!(tf.len(), kd.blocks.len());
            prop_assert_eq!(f.image_of(&tf).len(), tf.len());
            // Y ∩ T_f
            let trace: Vec<usize> = tf.iter().copied().filter(|&x| in_y[x]).collect();
            prop_assert_eq!(&trace, &tfy);
            // one representative per block of ker(f↾Y)
            let restricted = kernel_data(&restrict(&pair));
            prop_assert_eq!(tfy.len(), restricted.blocks.len());
            prop_assert_eq!(f.image_of(&tfy).len(), tfy.len());
        }

        #[test]
        fn compose_is_associative(a in arb_map(), seed in proptest::collection::vec(any::<usize>(), 18)) {
            let n = a.degree();
            let b = Transformation::new(seed[..n].iter().map(|x| x % n).collect()).unwrap();
            let c = Transformation::new(seed[9..9 + n].iter().map(|x| x % n).collect()).unwrap();
            let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
            let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
