//! Permutations avoiding the restricted 231 occurrence, their statistics,
//! and the insertion bijection from ascent sequences.
//!
//! A permutation belongs to the restricted class when every occurrence of
//! the pattern 231 either has its first two letters nonadjacent in
//! position, or its "2" and "1" nonadjacent in value. Inserting the new
//! maximum into a member can only stay inside the class at certain gaps,
//! the *active sites*, which are labeled 0, 1, 2, ... from the left. The
//! bijection reads an ascent sequence as the stream of site labels at
//! which to insert each new maximum; its inverse deletes maxima while
//! recording the labels they occupied.

use itertools::Itertools;

use crate::ascent::AscentSequence;
use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        let n = letters.len();
        let mut seen = vec![false; n];
        for &x in &letters {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation);
            }
            seen[x - 1] = true;
        }
        Ok(Permutation(letters))
    }

    /// Order-isomorphic relabeling of a word of distinct integers onto
    /// `1..=n`.
    pub fn standardize(word: &[usize]) -> Result<Self> {
        let mut sorted: Vec<usize> = word.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLetters);
        }
        let letters = word
            .iter()
            .map(|x| sorted.binary_search(x).unwrap() + 1)
            .collect();
        Ok(Permutation(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (pos, &x) in self.0.iter().enumerate() {
            inv[x - 1] = pos + 1;
        }
        Permutation(inv)
    }

    /// Membership in the restricted class: no triple `i < j < k` forming a
    /// 231 pattern with `j == i + 1` and `w[i] == w[k] + 1`. Direct triple
    /// scan.
    pub fn in_r(&self) -> bool {
        let w = &self.0;
        let n = w.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if w[k] < w[i] && w[i] < w[j] && j == i + 1 && w[i] == w[k] + 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True iff no `k + 1` consecutive letters descend by exactly one each
    /// step.
    pub fn in_r_k(&self, k: usize) -> bool {
        let w = &self.0;
        let mut run = 1;
        for i in 1..w.len() {
            if w[i] + 1 == w[i - 1] {
                run += 1;
            } else {
                run = 1;
            }
            if run > k {
                return false;
            }
        }
        true
    }

    /// Combined membership: restricted class with no descent of adjacent
    /// values.
    pub fn in_t(&self) -> bool {
        self.in_r() && self.in_r_k(1)
    }

    /// Number of descents whose letters differ by one in value.
    pub fn adjdes(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] == w[1] + 1).count()
    }

    fn insert_max_at(&self, gap: usize) -> Permutation {
        let mut letters = self.0.clone();
        letters.insert(gap, self.0.len() + 1);
        Permutation(letters)
    }

    /// Gaps `0..=n` where inserting `n + 1` keeps the permutation in the
    /// restricted class, in left-to-right order; the label of a site is
    /// its position in the returned list. Errors when the permutation is
    /// not itself in the class.
    pub fn active_sites(&self) -> Result<Vec<usize>> {
        if !self.in_r() {
            return Err(Error::NotInRestrictedClass);
        }
        Ok((0..=self.len())
            .filter(|&gap| self.insert_max_at(gap).in_r())
            .collect())
    }

    /// Label of the active site directly left of the maximum letter.
    pub fn b_label(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyInput("b_label"));
        }
        let sites = self.active_sites()?;
        let gap = self.0.iter().position(|&x| x == self.len()).unwrap();
        sites
            .iter()
            .position(|&g| g == gap)
            .ok_or(Error::InactiveSite)
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.len() <= 9 {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
        } else {
            let mut first = true;
            for x in &self.0 {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Permutation::new(Vec::new());
        }
        let letters: Vec<usize> = if s.contains([' ', ',']) {
            s.split([' ', ','])
                .filter(|p| !p.is_empty())
                .map(|p| p.parse().map_err(|_| Error::InvalidPermutation))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or(Error::InvalidPermutation)
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(letters)
    }
}

/// Builds the class member of an ascent sequence: start from the one-letter
/// permutation and insert each new maximum at the active site labeled by
/// the next letter. A letter pointing past the available sites cannot
/// occur for a valid sequence and reports a dedicated error.
pub fn upsilon(x: &AscentSequence) -> Result<Permutation> {
    if x.is_empty() {
        return Err(Error::EmptyInput("upsilon"));
    }
    let mut p = Permutation(vec![1]);
    for &letter in &x.entries()[1..] {
        let sites = p.active_sites()?;
        let gap = *sites.get(letter).ok_or(Error::LabelExceedsSites {
            letter,
            sites: sites.len(),
        })?;
        p = p.insert_max_at(gap);
    }
    Ok(p)
}

/// Inverse of [`upsilon`]: repeatedly delete the maximum and record the
/// label of the active site it occupied in the shortened permutation.
pub fn lambda(p: &Permutation) -> Result<AscentSequence> {
    if !p.in_r() {
        return Err(Error::NotInRestrictedClass);
    }
    if p.is_empty() {
        return Ok(AscentSequence::empty());
    }
    let mut letters = Vec::with_capacity(p.len());
    let mut cur = p.clone();
    while cur.len() > 1 {
        let gap = cur.0.iter().position(|&x| x == cur.len()).unwrap();
        let mut shorter = cur.0.clone();
        shorter.remove(gap);
        let q = Permutation(shorter);
        let sites = q.active_sites()?;
        let label = sites
            .iter()
            .position(|&g| g == gap)
            .ok_or(Error::InactiveSite)?;
        letters.push(label);
        cur = q;
    }
    letters.push(0);
    letters.reverse();
    AscentSequence::new(letters)
}

/// All members of the restricted class on `n` letters (optionally with the
/// unit-descent run bound `k`), by filtering the symmetric group.
pub fn enumerate_restricted(n: usize, run_bound: Option<usize>) -> Vec<Permutation> {
    if n == 0 {
        return vec![Permutation(Vec::new())];
    }
    (1..=n)
        .permutations(n)
        .map(Permutation)
        .filter(|p| p.in_r() && run_bound.is_none_or(|k| p.in_r_k(k)))
        .collect()
}
