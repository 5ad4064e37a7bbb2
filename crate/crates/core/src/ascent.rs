//! Ascent sequences: integer sequences starting at 0 in which every entry
//! is bounded by one plus the number of ascents of the preceding prefix.
//!
//! The module provides validation, exhaustive lexicographic enumeration
//! (optionally with a bound on run lengths), the statistics carried by the
//! other four families, and the maximal-run decomposition into a primitive
//! skeleton with multiplicities.

use crate::error::{Error, Result};

/// Number of ascents of an arbitrary word: positions `j` with `w[j] < w[j+1]`.
pub fn ascents(word: &[usize]) -> usize {
    word.windows(2).filter(|w| w[0] < w[1]).count()
}

/// True iff `entries` satisfies the ascent-sequence conditions: empty, or
/// starting with 0 and with each entry at most `1 + ascents(prefix)`.
pub fn validate(entries: &[usize]) -> bool {
    if entries.is_empty() {
        return true;
    }
    if entries[0] != 0 {
        return false;
    }
    let mut asc = 0;
    for i in 1..entries.len() {
        if entries[i] > asc + 1 {
            return false;
        }
        if entries[i] > entries[i - 1] {
            asc += 1;
        }
    }
    true
}

/// A validated ascent sequence. The empty sequence is the unique element of
/// length 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AscentSequence(Vec<usize>);

/// Statistics of a sequence. `last` is `None` exactly on the empty sequence;
/// on the empty sequence `asc = zeros = max_run = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceStats {
    /// Number of strict ascents.
    pub asc: usize,
    /// Final entry.
    pub last: Option<usize>,
    /// Number of equal adjacent pairs.
    pub zeros: usize,
    /// Length of the longest run of equal consecutive entries.
    pub max_run: usize,
    /// No run longer than 1, equivalently `zeros == 0` on nonempty input.
    pub is_primitive: bool,
}

/// Maximal-run factorization: `skeleton[i]` repeated `multiplicities[i]`
/// times reproduces the original sequence, and the skeleton is primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecomposition {
    pub skeleton: AscentSequence,
    pub multiplicities: Vec<usize>,
}

impl RunDecomposition {
    /// Expands the skeleton by the multiplicities.
    pub fn expand(&self) -> Vec<usize> {
        self.skeleton
            .entries()
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&b, &m)| std::iter::repeat_n(b, m))
            .collect()
    }
}

impl AscentSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if validate(&entries) {
            Ok(AscentSequence(entries))
        } else {
            Err(Error::InvalidAscentSequence)
        }
    }

    pub fn empty() -> Self {
        AscentSequence(Vec::new())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Final entry; errors on the empty sequence.
    pub fn last(&self) -> Result<usize> {
        self.0.last().copied().ok_or(Error::EmptyInput("last"))
    }

    pub fn stats(&self) -> SequenceStats {
        let asc = ascents(&self.0);
        let zeros = self.0.windows(2).filter(|w| w[0] == w[1]).count();
        let mut max_run = 0;
        let mut run = 0;
        for i in 0..self.0.len() {
            if i > 0 && self.0[i] == self.0[i - 1] {
                run += 1;
            } else {
                run = 1;
            }
            max_run = max_run.max(run);
        }
        SequenceStats {
            asc,
            last: self.0.last().copied(),
            zeros,
            max_run,
            is_primitive: zeros == 0,
        }
    }

    /// Unique factorization into maximal runs; errors on the empty sequence.
    pub fn run_decomposition(&self) -> Result<RunDecomposition> {
        if self.0.is_empty() {
            return Err(Error::EmptyInput("run_decomposition"));
        }
        let mut skeleton = Vec::new();
        let mut multiplicities = Vec::new();
        for &x in &self.0 {
            if skeleton.last() == Some(&x) {
                *multiplicities.last_mut().unwrap() += 1;
            } else {
                skeleton.push(x);
                multiplicities.push(1);
            }
        }
        // The skeleton of a valid sequence is itself valid: dropping repeats
        // changes no prefix ascent count.
        let skeleton = AscentSequence::new(skeleton)?;
        Ok(RunDecomposition {
            skeleton,
            multiplicities,
        })
    }
}

impl std::fmt::Display for AscentSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for x in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::str::FromStr for AscentSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(AscentSequence::empty());
        }
        let entries = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidAscentSequence)
            })
            .collect::<Result<Vec<_>>>()?;
        AscentSequence::new(entries)
    }
}

/// Enumerates all ascent sequences of length `n` in lexicographic order,
/// keeping only those whose runs are bounded by `max_run` when given.
pub fn enumerate(n: usize, max_run: Option<usize>) -> Enumerate {
    let mut stack = Vec::new();
    if n > 0 && max_run != Some(0) {
        stack.push(Partial {
            entries: vec![0],
            asc: 0,
            run: 1,
        });
    }
    Enumerate {
        n,
        max_run,
        stack,
        emitted_empty: false,
    }
}

/// Depth-first lexicographic stream over ascent sequences of a fixed length.
pub struct Enumerate {
    n: usize,
    max_run: Option<usize>,
    stack: Vec<Partial>,
    emitted_empty: bool,
}

struct Partial {
    entries: Vec<usize>,
    asc: usize,
    run: usize,
}

impl Iterator for Enumerate {
    type Item = AscentSequence;

    fn next(&mut self) -> Option<AscentSequence> {
        if self.n == 0 {
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            return Some(AscentSequence::empty());
        }
        while let Some(p) = self.stack.pop() {
            if p.entries.len() == self.n {
                return Some(AscentSequence(p.entries));
            }
            let last = *p.entries.last().unwrap();
            // Children pushed in reverse so pops come out lexicographically.
            for letter in (0..=p.asc + 1).rev() {
                let run = if letter == last { p.run + 1 } else { 1 };
                if self.max_run.is_some_and(|k| run > k) {
                    continue;
                }
                let mut entries = p.entries.clone();
                entries.push(letter);
                self.stack.push(Partial {
                    entries,
                    asc: p.asc + usize::from(letter > last),
                    run,
                });
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(entries: &[usize]) -> AscentSequence {
        AscentSequence::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn validates_examples() {
        assert!(validate(&[0, 1, 0, 2, 3, 1, 0, 0, 2]));
        assert!(validate(&[]));
        assert!(validate(&[0]));
        assert!(!validate(&[1, 0]));
        assert!(!validate(&[0, 2]));
    }

    #[test]
    fn enumerates_length_two() {
        let all: Vec<_> = enumerate(2, None).collect();
        assert_eq!(all, vec![seq(&[0, 0]), seq(&[0, 1])]);
    }

    #[test]
    fn enumerates_length_three_in_lex_order() {
        let all: Vec<_> = enumerate(3, None).collect();
        let expected: Vec<AscentSequence> = [[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1], [0, 1, 2]]
            .iter()
            .map(|e| seq(e))
            .collect();
        assert_eq!(all, expected);
    }

    // Independent oracle: filter every word over 0..n through `validate`.
    fn oracle_count(n: usize, max_run: Option<usize>) -> usize {
        fn rec(n: usize, prefix: &mut Vec<usize>, max_run: Option<usize>, found: &mut usize) {
            if prefix.len() == n {
                *found += 1;
                return;
            }
            for letter in 0..n {
                prefix.push(letter);
                let run_ok = max_run.is_none_or(|k| {
                    let run = prefix
                        .iter()
                        .rev()
                        .take_while(|&&x| x == *prefix.last().unwrap())
                        .count();
                    run <= k
                });
                if validate(prefix) && run_ok {
                    rec(n, prefix, max_run, found);
                }
                prefix.pop();
            }
        }
        if n == 0 {
            return 1;
        }
        let mut found = 0;
        rec(n, &mut Vec::new(), max_run, &mut found);
        found
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        assert_eq!(enumerate(5, None).count(), 53);
        assert_eq!(oracle_count(5, None), 53);
        assert_eq!(enumerate(4, Some(1)).count(), 5);
        assert_eq!(oracle_count(4, Some(1)), 5);
        for n in 0..=6 {
            assert_eq!(enumerate(n, None).count(), oracle_count(n, None));
            for k in 1..=3 {
                assert_eq!(enumerate(n, Some(k)).count(), oracle_count(n, Some(k)));
            }
        }
    }

    #[test]
    fn enumeration_yields_valid_sequences_once() {
        for n in 0..=7 {
            let all: Vec<_> = enumerate(n, None).collect();
            assert!(all.iter().all(|a| validate(a.entries())));
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
            assert_eq!(sorted, all, "stream must already be in lex order");
        }
    }

    #[test]
    fn stats_examples() {
        assert_eq!(seq(&[0, 0, 0, 0, 0, 1, 1, 2, 1, 1]).stats().zeros, 6);

        let s = seq(&[0, 1, 1, 0, 2, 0, 1]).stats();
        assert_eq!(s.asc, 3);
        assert_eq!(s.last, Some(1));
        assert_eq!(s.zeros, 1);
        assert_eq!(s.max_run, 2);
        assert!(!s.is_primitive);

        let s = seq(&[0]).stats();
        assert_eq!(s.asc, 0);
        assert_eq!(s.last, Some(0));
        assert_eq!(s.zeros, 0);
        assert!(s.is_primitive);
    }

    #[test]
    fn stats_on_empty() {
        let s = AscentSequence::empty().stats();
        assert_eq!((s.asc, s.zeros, s.max_run, s.last), (0, 0, 0, None));
        assert_eq!(
            AscentSequence::empty().last(),
            Err(Error::EmptyInput("last"))
        );
    }

    #[test]
    fn run_decomposition_examples() {
        let d = seq(&[0, 0, 1, 1, 1, 0, 2, 2, 3, 1, 1, 0, 4])
            .run_decomposition()
            .unwrap();
        assert_eq!(d.skeleton, seq(&[0, 1, 0, 2, 3, 1, 0, 4]));
        assert_eq!(d.multiplicities, vec![2, 3, 1, 2, 1, 2, 1, 1]);

        let d = seq(&[0]).run_decomposition().unwrap();
        assert_eq!(d.skeleton, seq(&[0]));
        assert_eq!(d.multiplicities, vec![1]);

        let d = seq(&[0, 0, 0]).run_decomposition().unwrap();
        assert_eq!(d.skeleton, seq(&[0]));
        assert_eq!(d.multiplicities, vec![3]);

        assert!(AscentSequence::empty().run_decomposition().is_err());
    }

    #[test]
    fn run_decomposition_round_trips_exhaustively() {
        for n in 1..=7 {
            for a in enumerate(n, None) {
                let d = a.run_decomposition().unwrap();
                assert_eq!(d.expand(), a.entries());
                assert!(d.skeleton.stats().is_primitive);
                assert_eq!(d.multiplicities.iter().sum::<usize>(), n);
                // zeros = n - number of maximal runs
                assert_eq!(a.stats().zeros, n - d.multiplicities.len());
            }
        }
    }

    #[test]
    fn max_run_filter_agrees_with_stats() {
        for n in 0..=6 {
            for k in 1..=3 {
                let filtered: Vec<_> = enumerate(n, Some(k)).collect();
                let by_stats: Vec<_> = enumerate(n, None)
                    .filter(|a| a.stats().max_run <= k)
                    .collect();
                assert_eq!(filtered, by_stats);
            }
        }
    }

    #[test]
    fn parses_and_displays() {
        let a: AscentSequence = "0,1,1,0,2,0,1".parse().unwrap();
        assert_eq!(a, seq(&[0, 1, 1, 0, 2, 0, 1]));
        assert_eq!(a.to_string(), "0,1,1,0,2,0,1");
        assert_eq!(
            "".parse::<AscentSequence>().unwrap(),
            AscentSequence::empty()
        );
        assert!("1,0".parse::<AscentSequence>().is_err());
    }

    prop_compose! {
        // Valid-by-construction sequences: each raw choice is reduced into
        // the currently legal letter range.
        fn arb_ascent_sequence()(raw in prop::collection::vec(0..64usize, 1..12)) -> AscentSequence {
            let mut entries: Vec<usize> = Vec::with_capacity(raw.len());
            let mut asc = 0;
            for (i, r) in raw.into_iter().enumerate() {
                if i == 0 {
                    entries.push(0);
                    continue;
                }
                let letter = r % (asc + 2);
                if letter > entries[i - 1] {
                    asc += 1;
                }
                entries.push(letter);
            }
            AscentSequence::new(entries).unwrap()
        }
    }

    proptest! {
        #[test]
        fn random_sequences_validate_and_round_trip(a in arb_ascent_sequence()) {
            prop_assert!(validate(a.entries()));
            let d = a.run_decomposition().unwrap();
            prop_assert_eq!(d.expand(), a.entries());
            prop_assert!(d.skeleton.stats().is_primitive);
            let s = a.stats();
            prop_assert_eq!(s.zeros, a.len() - d.multiplicities.len());
            prop_assert_eq!(s.max_run, d.multiplicities.iter().copied().max().unwrap());
        }
    }
}
