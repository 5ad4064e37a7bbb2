//! Interval orders, i.e. (2+2)-free posets, in down-set-chain normal form.
//!
//! A poset is (2+2)-free exactly when the strict down-sets of its elements
//! can be ordered linearly by inclusion. Such a poset is stored as that
//! chain `D_0 = {} ⊂ D_1 ⊂ ... ⊂ D_k` together with the level lists
//! `L_0, ..., L_k` (elements sharing down-set `D_i` sit at level `i`).
//! Elements are labeled `1..=n`.
//!
//! The module implements the three element-addition rules on this normal
//! form, the step-by-step bijection from ascent sequences built on them,
//! the statistics `levels`, `srank`, `minmax`, `maxindist` and `rep`, and
//! an isomorphism-class key checked against brute-force isomorphism.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::ascent::AscentSequence;
use crate::error::{Error, Result};

/// A labeled interval order on `1..=n` in chain-plus-levels normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalOrder {
    n: usize,
    down_chain: Vec<BTreeSet<usize>>,
    levels: Vec<Vec<usize>>,
    level_of: Vec<usize>,
}

/// Statistics of a nonempty interval order. `srank` and `minmax` are
/// computed independently; their equality is a tested invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PosetStats {
    /// Index of the highest level.
    pub levels: usize,
    /// Rank of a maximal element whose strict down-set is smallest.
    pub srank: usize,
    /// Minimum rank over maximal elements.
    pub minmax: usize,
    /// Size of the largest class of indistinguishable elements.
    pub maxindist: usize,
    /// Elements that must be removed to make all classes singletons.
    pub rep: usize,
}

/// Isomorphism-class key: the sorted multiset of
/// `(level of the down-set, position of the up-set in its inclusion chain)`
/// pairs over all elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<(usize, usize)>);

impl CanonicalForm {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }
}

impl IntervalOrder {
    /// The one-element poset.
    pub fn singleton() -> Self {
        IntervalOrder {
            n: 1,
            down_chain: vec![BTreeSet::new()],
            levels: vec![vec![1]],
            level_of: vec![0],
        }
    }

    /// Builds a poset from the strict down-set of each element
    /// (`down_sets[i]` belongs to element `i + 1`). Errors unless the
    /// distinct sets form an inclusion chain, which is exactly the
    /// (2+2)-free condition.
    pub fn from_down_sets(down_sets: &[BTreeSet<usize>]) -> Result<Self> {
        let n = down_sets.len();
        if n == 0 {
            return Err(Error::EmptyInput("from_down_sets"));
        }
        for (i, d) in down_sets.iter().enumerate() {
            if d.contains(&(i + 1)) {
                return Err(Error::InvalidDownSets("element inside its own down-set"));
            }
            if d.iter().any(|&x| x == 0 || x > n) {
                return Err(Error::InvalidDownSets("member outside 1..=n"));
            }
        }
        let mut chain: Vec<&BTreeSet<usize>> = down_sets.iter().unique().collect();
        chain.sort_by_key(|d| d.len());
        for w in chain.windows(2) {
            if w[0].len() == w[1].len() || !w[0].is_subset(w[1]) {
                return Err(Error::NotDownSetChain);
            }
        }
        if !chain[0].is_empty() {
            return Err(Error::InvalidDownSets("smallest down-set is not empty"));
        }
        let rank: BTreeMap<&BTreeSet<usize>, usize> =
            chain.iter().enumerate().map(|(i, d)| (*d, i)).collect();
        let level_of: Vec<usize> = down_sets.iter().map(|d| rank[d]).collect();
        let mut levels = vec![Vec::new(); chain.len()];
        for (i, &l) in level_of.iter().enumerate() {
            levels[l].push(i + 1);
        }
        Ok(IntervalOrder {
            n,
            down_chain: chain.into_iter().cloned().collect(),
            levels,
            level_of,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The statistic `levels(P)`: index of the highest level.
    pub fn level_count(&self) -> usize {
        self.down_chain.len() - 1
    }

    pub fn down_chain(&self) -> &[BTreeSet<usize>] {
        &self.down_chain
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Rank of element `x` (1-based label).
    pub fn level_of(&self, x: usize) -> usize {
        self.level_of[x - 1]
    }

    /// Strict down-set of element `x`.
    pub fn down_set(&self, x: usize) -> &BTreeSet<usize> {
        &self.down_chain[self.level_of(x)]
    }

    /// True iff `x` lies strictly below `y`.
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.down_set(y).contains(&x)
    }

    /// Strict up-set `U(x) = { y : x ≺ y }`.
    pub fn up_set(&self, x: usize) -> BTreeSet<usize> {
        (1..=self.n).filter(|&y| self.precedes(x, y)).collect()
    }

    /// Up-sets of all elements. Asserts the structural guarantee that the
    /// distinct up-sets form a chain under inclusion.
    pub fn up_sets(&self) -> BTreeMap<usize, BTreeSet<usize>> {
        let map: BTreeMap<usize, BTreeSet<usize>> =
            (1..=self.n).map(|x| (x, self.up_set(x))).collect();
        let mut distinct: Vec<&BTreeSet<usize>> = map.values().unique().collect();
        distinct.sort_by_key(|u| u.len());
        for w in distinct.windows(2) {
            assert!(
                w[0].is_subset(w[1]),
                "up-sets of an interval order must form an inclusion chain"
            );
        }
        map
    }

    /// Elements with no element above them: the complement of the top
    /// down-set.
    pub fn maximal_elements(&self) -> Vec<usize> {
        let top = self.down_chain.last().unwrap();
        (1..=self.n).filter(|x| !top.contains(x)).collect()
    }

    /// Minimum rank over maximal elements.
    pub fn minmax(&self) -> usize {
        self.maximal_elements()
            .iter()
            .map(|&x| self.level_of(x))
            .min()
            .expect("poset is nonempty")
    }

    /// Rank of a maximal element whose strict down-set is smallest under
    /// inclusion, found by direct set comparison.
    pub fn srank(&self) -> usize {
        let maximal = self.maximal_elements();
        let mut best = maximal[0];
        for &x in &maximal[1..] {
            if self.down_set(x).is_subset(self.down_set(best)) {
                best = x;
            }
        }
        self.level_of(best)
    }

    /// Classes of indistinguishable elements: equal down-sets and equal
    /// up-sets.
    pub fn indist_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<(usize, BTreeSet<usize>), Vec<usize>> = BTreeMap::new();
        for x in 1..=self.n {
            classes
                .entry((self.level_of(x), self.up_set(x)))
                .or_default()
                .push(x);
        }
        classes.into_values().collect()
    }

    pub fn stats(&self) -> PosetStats {
        let classes = self.indist_classes();
        PosetStats {
            levels: self.level_count(),
            srank: self.srank(),
            minmax: self.minmax(),
            maxindist: classes.iter().map(Vec::len).max().unwrap(),
            rep: self.n - classes.len(),
        }
    }

    /// Adds a new element (labeled `n + 1`) at level `i`, `0 <= i <=
    /// 1 + levels(P)`. The rule is selected by where `i` falls:
    ///
    /// * `i <= minmax(P)`: join level `i`, down-sets unchanged;
    /// * `i == 1 + levels(P)`: new top level above everything;
    /// * otherwise: a fresh level is spliced in at `i` and the maximal
    ///   elements below it are inserted into every higher down-set.
    pub fn add_element(&self, i: usize) -> Result<Self> {
        let k = self.level_count();
        if i > k + 1 {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: k + 1,
            });
        }
        let new = self.n + 1;
        let mut down_chain = self.down_chain.clone();
        let mut levels = self.levels.clone();
        let mut level_of = self.level_of.clone();
        if i <= self.minmax() {
            levels[i].push(new);
        } else if i == k + 1 {
            down_chain.push((1..=self.n).collect());
            levels.push(vec![new]);
        } else {
            let top = self.down_chain.last().unwrap();
            let covered: BTreeSet<usize> = self.levels[..i]
                .iter()
                .flatten()
                .copied()
                .filter(|x| !top.contains(x))
                .collect();
            let mut chain = Vec::with_capacity(k + 2);
            chain.extend_from_slice(&down_chain[..=i]);
            for d in &down_chain[i..] {
                chain.push(d.union(&covered).copied().collect());
            }
            down_chain = chain;
            levels.insert(i, vec![new]);
            for l in level_of.iter_mut() {
                if *l >= i {
                    *l += 1;
                }
            }
        }
        level_of.push(i);
        Ok(IntervalOrder {
            n: new,
            down_chain,
            levels,
            level_of,
        })
    }

    /// The induced strict-order relation.
    pub fn to_relation(&self) -> StrictOrder {
        let pairs: Vec<(usize, usize)> = (1..=self.n)
            .cartesian_product(1..=self.n)
            .filter(|&(x, y)| self.precedes(x, y))
            .collect();
        StrictOrder::new(self.n, &pairs).expect("induced relation is a strict order")
    }

    /// Isomorphism-class key; agreement with brute-force isomorphism is a
    /// tested invariant.
    pub fn canonical_form(&self) -> CanonicalForm {
        let up_sets = self.up_sets();
        let mut distinct: Vec<&BTreeSet<usize>> = up_sets.values().unique().collect();
        distinct.sort_by_key(|u| u.len());
        let position: BTreeMap<&BTreeSet<usize>, usize> =
            distinct.iter().enumerate().map(|(i, u)| (*u, i)).collect();
        let mut pairs: Vec<(usize, usize)> = (1..=self.n)
            .map(|x| (self.level_of(x), position[&up_sets[&x]]))
            .collect();
        pairs.sort_unstable();
        CanonicalForm(pairs)
    }
}

/// Builds the interval order of an ascent sequence: start from a single
/// element and add one element per remaining letter.
pub fn build(x: &AscentSequence) -> Result<IntervalOrder> {
    if x.is_empty() {
        return Err(Error::EmptyInput("build"));
    }
    let mut p = IntervalOrder::singleton();
    for &letter in &x.entries()[1..] {
        p = p.add_element(letter)?;
    }
    Ok(p)
}

/// Brute-force isomorphism test: searches all label bijections.
pub fn is_isomorphic(p: &IntervalOrder, q: &IntervalOrder) -> bool {
    if p.n() != q.n() {
        return false;
    }
    let n = p.n();
    let rp = p.to_relation();
    let rq = q.to_relation();
    (1..=n).permutations(n).any(|img| {
        (1..=n)
            .cartesian_product(1..=n)
            .all(|(x, y)| rp.precedes(x, y) == rq.precedes(img[x - 1], img[y - 1]))
    })
}

/// A strict (irreflexive, transitive) order on labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictOrder {
    n: usize,
    rel: Vec<bool>,
}

impl StrictOrder {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rel = vec![false; n * n];
        for &(x, y) in pairs {
            if x == 0 || y == 0 || x > n || y > n {
                return Err(Error::NotStrictOrder("label outside 1..=n"));
            }
            if x == y {
                return Err(Error::NotStrictOrder("reflexive pair"));
            }
            rel[(x - 1) * n + (y - 1)] = true;
        }
        let order = StrictOrder { n, rel };
        for x in 1..=n {
            for y in 1..=n {
                for z in 1..=n {
                    if order.precedes(x, y) && order.precedes(y, z) && !order.precedes(x, z) {
                        return Err(Error::NotStrictOrder("relation is not transitive"));
                    }
                }
            }
        }
        for x in 1..=n {
            for y in 1..=n {
                if order.precedes(x, y) && order.precedes(y, x) {
                    return Err(Error::NotStrictOrder("relation contains a 2-cycle"));
                }
            }
        }
        Ok(order)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.rel[(x - 1) * self.n + (y - 1)]
    }

    /// True iff no four elements induce two disjoint 2-chains with no
    /// relation across them.
    pub fn is_two_plus_two_free(&self) -> bool {
        let n = self.n;
        for a in 1..=n {
            for b in 1..=n {
                if !self.precedes(a, b) {
                    continue;
                }
                for c in 1..=n {
                    if c == a || c == b {
                        continue;
                    }
                    for d in 1..=n {
                        if d == a || d == b || d == c || !self.precedes(c, d) {
                            continue;
                        }
                        let unrelated = |x, y| !self.precedes(x, y) && !self.precedes(y, x);
                        if unrelated(a, c) && unrelated(a, d) && unrelated(b, c) && unrelated(b, d)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ascent::{enumerate, AscentSequence};
    use std::collections::BTreeSet;

    fn seq(entries: &[usize]) -> AscentSequence {
        AscentSequence::new(entries.to_vec()).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    /// The eight-element order used across several point checks, entered by
    /// its down-set table (elements a..h are labeled 1..8).
    fn eight_element_example() -> IntervalOrder {
        IntervalOrder::from_down_sets(&[
            set(&[]),
            set(&[]),
            set(&[1]),
            set(&[1]),
            set(&[1]),
            set(&[1, 2]),
            set(&[1, 2, 3, 4]),
            set(&[1, 2, 3, 4, 5, 7]),
        ])
        .unwrap()
    }

    #[test]
    fn add_element_rules_on_singleton() {
        let p = IntervalOrder::singleton();
        let chain = p.add_element(1).unwrap();
        assert_eq!(chain.level_count(), 1);
        assert!(chain.precedes(1, 2));

        let antichain = p.add_element(0).unwrap();
        assert_eq!(antichain.level_count(), 0);
        assert!(!antichain.precedes(1, 2) && !antichain.precedes(2, 1));

        assert!(p.add_element(2).is_err());
    }

    #[test]
    fn added_element_realizes_requested_srank() {
        for n in 1..=5 {
            for x in enumerate(n, None) {
                let p = build(&x).unwrap();
                for i in 0..=p.level_count() + 1 {
                    let q = p.add_element(i).unwrap();
                    assert_eq!(q.srank(), i);
                    assert_eq!(q.minmax(), i);
                    let grew = usize::from(i > p.minmax());
                    assert_eq!(q.level_count(), p.level_count() + grew);
                }
            }
        }
    }

    #[test]
    fn builds_seven_element_example_step_by_step() {
        // x = (0,1,1,0,2,0,1); levels grow exactly on the later rules.
        let x = seq(&[0, 1, 1, 0, 2, 0, 1]);
        let mut p = IntervalOrder::singleton();
        let expected_levels = [1, 1, 1, 2, 2, 3];
        for (step, (&letter, &lv)) in x.entries()[1..].iter().zip(&expected_levels).enumerate() {
            p = p.add_element(letter).unwrap();
            assert_eq!(p.level_count(), lv, "after step {}", step + 2);
        }
        assert_eq!(
            p.down_chain(),
            &[set(&[]), set(&[1]), set(&[1, 6]), set(&[1, 2, 3, 4, 6]),]
        );
        assert_eq!(p.levels(), &[vec![1, 4, 6], vec![7], vec![2, 3], vec![5]]);
        // Elements 2 and 3 are indistinguishable; nothing else is merged.
        let classes = p.indist_classes();
        assert!(classes.contains(&vec![2, 3]));
        let s = p.stats();
        assert_eq!(s.maxindist, 2);
        assert_eq!(s.rep, 1);
        assert_eq!(s.levels, 3);
        assert_eq!(s.minmax, 1);

        assert_eq!(build(&x).unwrap(), p);
    }

    #[test]
    fn build_requires_a_nonempty_sequence() {
        assert!(build(&AscentSequence::empty()).is_err());
        let p = build(&seq(&[0])).unwrap();
        assert_eq!(p.n(), 1);
        assert_eq!(p.level_count(), 0);
    }

    #[test]
    fn stats_of_eight_element_example() {
        let p = eight_element_example();
        let s = p.stats();
        assert_eq!(s.levels, 4);
        assert_eq!(s.srank, 2);
        assert_eq!(s.minmax, 2);
        assert_eq!(s.maxindist, 2);
        assert_eq!(s.rep, 1);
        // the merged pair is {c, d} = {3, 4}
        assert!(p.indist_classes().contains(&vec![3, 4]));
    }

    #[test]
    fn stats_of_chain_and_antichain() {
        let antichain = IntervalOrder::from_down_sets(&vec![BTreeSet::new(); 5]).unwrap();
        let s = antichain.stats();
        assert_eq!((s.levels, s.maxindist, s.rep), (0, 5, 4));

        let chain_sets: Vec<BTreeSet<usize>> = (0..5).map(|i| (1..=i).collect()).collect();
        let chain = IntervalOrder::from_down_sets(&chain_sets).unwrap();
        let s = chain.stats();
        assert_eq!((s.levels, s.maxindist, s.rep), (4, 1, 0));
    }

    #[test]
    fn up_sets_of_eight_element_example() {
        let p = eight_element_example();
        let u = p.up_sets();
        assert_eq!(u[&1], set(&[3, 4, 5, 6, 7, 8]));
        assert_eq!(u[&5], set(&[8]));
        assert_eq!(u[&6], set(&[]));
        assert_eq!(u[&2], set(&[6, 7, 8]));
    }

    #[test]
    fn up_sets_of_small_posets() {
        let antichain = IntervalOrder::from_down_sets(&vec![BTreeSet::new(); 3]).unwrap();
        assert!(antichain.up_sets().values().all(BTreeSet::is_empty));

        let two_chain = IntervalOrder::singleton().add_element(1).unwrap();
        assert_eq!(two_chain.up_set(1), set(&[2]));
        assert_eq!(two_chain.up_set(2), set(&[]));
    }

    #[test]
    fn two_plus_two_detection() {
        let two_plus_two = StrictOrder::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(!two_plus_two.is_two_plus_two_free());

        let chain = StrictOrder::new(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(chain.is_two_plus_two_free());

        assert!(eight_element_example().to_relation().is_two_plus_two_free());

        assert!(StrictOrder::new(3, &[(1, 2), (2, 3)]).is_err());
        assert!(StrictOrder::new(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn from_down_sets_rejects_non_chains() {
        // two disjoint 2-chains have incomparable down-sets
        let err = IntervalOrder::from_down_sets(&[set(&[]), set(&[1]), set(&[]), set(&[3])]);
        assert_eq!(err, Err(Error::NotDownSetChain));
    }

    #[test]
    fn canonical_forms_separate_and_merge_correctly() {
        let a = IntervalOrder::from_down_sets(&vec![BTreeSet::new(); 4]).unwrap();
        let b = IntervalOrder::from_down_sets(&vec![BTreeSet::new(); 4]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());

        let p = build(&seq(&[0, 0, 1])).unwrap();
        let q = build(&seq(&[0, 1, 0])).unwrap();
        assert_ne!(p.canonical_form(), q.canonical_form());
        assert!(!is_isomorphic(&p, &q));
    }

    #[test]
    fn canonical_form_matches_brute_force_isomorphism() {
        for n in 1..=6 {
            let posets: Vec<(IntervalOrder, CanonicalForm)> = enumerate(n, None)
                .map(|x| build(&x).unwrap())
                .map(|p| {
                    let form = p.canonical_form();
                    (p, form)
                })
                .collect();
            for (i, (p, pf)) in posets.iter().enumerate() {
                for (q, qf) in &posets[i..] {
                    assert_eq!(
                        pf == qf,
                        is_isomorphic(p, q),
                        "canonical form must be a complete isomorphism invariant"
                    );
                }
            }
        }
    }

    #[test]
    fn images_are_two_plus_two_free_and_distinct() {
        for n in 1..=7 {
            let mut forms = BTreeSet::new();
            let mut count = 0;
            for x in enumerate(n, None) {
                let p = build(&x).unwrap();
                assert!(p.to_relation().is_two_plus_two_free());
                assert_eq!(p.srank(), p.minmax());
                forms.insert(p.canonical_form());
                count += 1;
            }
            assert_eq!(forms.len(), count, "images must be pairwise non-isomorphic");
        }
    }

    #[test]
    fn image_count_at_n6_is_the_fishburn_number() {
        let forms: BTreeSet<CanonicalForm> = enumerate(6, None)
            .map(|x| build(&x).unwrap().canonical_form())
            .collect();
        assert_eq!(forms.len(), 217);
    }

    #[test]
    fn indistinguishability_matches_runs_exhaustively() {
        for n in 1..=7 {
            for x in enumerate(n, None) {
                let p = build(&x).unwrap();
                let up_sets = p.up_sets();
                let e = x.entries();
                for i in 1..=n {
                    for j in i + 1..=n {
                        let same_class =
                            p.level_of(i) == p.level_of(j) && up_sets[&i] == up_sets[&j];
                        let same_run = e[i - 1..j].windows(2).all(|w| w[0] == w[1]);
                        assert_eq!(same_class, same_run);
                    }
                }
                let s = p.stats();
                let xs = x.stats();
                assert_eq!(s.maxindist, xs.max_run);
                assert_eq!(s.rep, xs.zeros);
                assert_eq!(s.levels, xs.asc);
                assert_eq!(s.minmax, xs.last.unwrap());
                assert_eq!(s.srank, s.minmax);
            }
        }
    }
}
