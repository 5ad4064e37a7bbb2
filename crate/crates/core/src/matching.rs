//! Stoimenow matchings: perfect matchings of `1..=2n` with no nested arc
//! pair whose openers, or closers, are adjacent integers.
//!
//! Two arcs `(i, j)` and `(i + 1, j + 1)` are *similar*. The statistic
//! `echords` is the minimum number of arcs to remove so that, after
//! relabeling the surviving points order-isomorphically onto an initial
//! segment, no similar pair remains; the relabeling step is what makes the
//! statistic agree with the equal-pair count of ascent sequences. `cruns`
//! and `larcs` count runs of closers lying left of distinguished arcs.

use itertools::Itertools;

use crate::error::{Error, Result};

/// A perfect matching of `1..=2n` as a list of `opener < closer` arcs,
/// sorted by opener.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    arcs: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchingStats {
    /// Runs of closers left of the opener of the arc with closer `2n`.
    pub cruns: usize,
    /// Runs of closers left of the opener of the arc whose closer is the
    /// least closer beyond that opener.
    pub larcs: usize,
    /// Minimum arc removals (with relabeling) destroying all similarity.
    pub echords: usize,
}

impl Matching {
    pub fn new(mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        let n = arcs.len();
        let mut seen = vec![false; 2 * n];
        for &(a, b) in &arcs {
            if a >= b || b > 2 * n || a == 0 {
                return Err(Error::InvalidMatching);
            }
            for p in [a, b] {
                if seen[p - 1] {
                    return Err(Error::InvalidMatching);
                }
                seen[p - 1] = true;
            }
        }
        arcs.sort_unstable();
        Ok(Matching { arcs })
    }

    pub fn empty() -> Self {
        Matching { arcs: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// True iff no arc pair `{a,b}, {c,d}` satisfies `a == c + 1 && b < d`
    /// or `a < c && b == d + 1`.
    pub fn is_stoimenow(&self) -> bool {
        for &(a, b) in &self.arcs {
            for &(c, d) in &self.arcs {
                if (a, b) == (c, d) {
                    continue;
                }
                if a == c + 1 && b < d {
                    return false;
                }
                if a < c && b == d + 1 {
                    return false;
                }
            }
        }
        true
    }

    fn has_similar_pair(arcs: &[(usize, usize)]) -> bool {
        arcs.iter()
            .any(|&(i, j)| arcs.binary_search(&(i + 1, j + 1)).is_ok())
    }

    fn standardize(arcs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let points: Vec<usize> = arcs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .sorted_unstable()
            .collect();
        let mut out: Vec<(usize, usize)> = arcs
            .iter()
            .map(|&(a, b)| {
                (
                    points.binary_search(&a).unwrap() + 1,
                    points.binary_search(&b).unwrap() + 1,
                )
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Minimum size of an arc set whose removal, followed by relabeling the
    /// surviving points onto an initial segment, leaves no similar pair.
    /// Brute-force search over subsets by increasing size.
    pub fn echords(&self) -> usize {
        let n = self.arcs.len();
        for size in 0..=n {
            for keep in (0..n).combinations(n - size) {
                let survivors: Vec<(usize, usize)> = keep.iter().map(|&i| self.arcs[i]).collect();
                if !Self::has_similar_pair(&Self::standardize(&survivors)) {
                    return size;
                }
            }
        }
        unreachable!("the empty matching has no similar pair")
    }

    /// Longest chain of unit-shifted arcs `(i, j), (i+1, j+1), ...` in the
    /// matching.
    pub fn max_chain_len(&self) -> usize {
        let mut best = 0;
        for &(i, j) in &self.arcs {
            if i > 0 && self.arcs.binary_search(&(i - 1, j - 1)).is_ok() {
                continue; // not a chain start
            }
            let mut len = 1;
            while self.arcs.binary_search(&(i + len, j + len)).is_ok() {
                len += 1;
            }
            best = best.max(len);
        }
        best
    }

    /// Counts maximal blocks of consecutive integers that are all closers
    /// and lie strictly left of `bound`.
    fn closer_runs_below(&self, bound: usize) -> usize {
        let closers: Vec<usize> = self
            .arcs
            .iter()
            .map(|&(_, b)| b)
            .sorted_unstable()
            .collect();
        closers
            .iter()
            .filter(|&&c| c < bound && closers.binary_search(&(c.wrapping_sub(1))).is_err())
            .count()
    }

    pub fn stats(&self) -> Result<MatchingStats> {
        if self.arcs.is_empty() {
            return Err(Error::EmptyInput("matching statistics"));
        }
        let two_n = 2 * self.n();
        let last_arc = *self
            .arcs
            .iter()
            .find(|&&(_, b)| b == two_n)
            .expect("2n is a closer");
        let cruns = self.closer_runs_below(last_arc.0);
        // least closer beyond the opener of the last arc; this is the last
        // arc's own closer exactly when no other closer intervenes
        let next_closer = self
            .arcs
            .iter()
            .map(|&(_, b)| b)
            .filter(|&b| b > last_arc.0)
            .min()
            .expect("2n qualifies");
        let reference = *self.arcs.iter().find(|&&(_, b)| b == next_closer).unwrap();
        let larcs = self.closer_runs_below(reference.0);
        Ok(MatchingStats {
            cruns,
            larcs,
            echords: self.echords(),
        })
    }
}

impl std::fmt::Display for Matching {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

/// All Stoimenow matchings of `1..=2n`, built by pairing the smallest free
/// point with every larger free point and pruning violations as arcs are
/// added. With `max_chain = k`, matchings containing `k + 1` unit-shifted
/// arcs are excluded.
pub fn enumerate_stoimenow(n: usize, max_chain: Option<usize>) -> Vec<Matching> {
    let mut out = Vec::new();
    let mut used = vec![false; 2 * n];
    let mut arcs = Vec::with_capacity(n);
    extend(&mut used, &mut arcs, max_chain, &mut out);
    out
}

fn extend(
    used: &mut Vec<bool>,
    arcs: &mut Vec<(usize, usize)>,
    max_chain: Option<usize>,
    out: &mut Vec<Matching>,
) {
    let Some(first) = used.iter().position(|&u| !u) else {
        out.push(Matching { arcs: arcs.clone() });
        return;
    };
    let a = first + 1;
    let two_n = used.len();
    'candidates: for b in a + 1..=two_n {
        if used[b - 1] {
            continue;
        }
        for &(c, d) in arcs.iter() {
            if (a == c + 1 && b < d) || (c == a + 1 && d < b) {
                continue 'candidates;
            }
            if (a < c && b == d + 1) || (c < a && d == b + 1) {
                continue 'candidates;
            }
        }
        if let Some(k) = max_chain {
            // openers arrive in increasing order, so the chain ending at
            // (a, b) is already complete on the left
            let mut len = 1;
            while len <= k && arcs.binary_search(&(a - len, b - len)).is_ok() {
                len += 1;
            }
            if len > k {
                continue;
            }
        }
        used[a - 1] = true;
        used[b - 1] = true;
        arcs.push((a, b));
        extend(used, arcs, max_chain, out);
        arcs.pop();
        used[a - 1] = false;
        used[b - 1] = false;
    }
}
