//! Joint statistic distributions used by the cross-family equality checks.
//!
//! Each family carries a triple of statistics that the bijections
//! transport onto one another; a distribution is the multiset of triples
//! over all objects of a given size. The series route extracts the same
//! data from a coefficient slice of the full generating function.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::ascent::{ascents, enumerate};
use crate::matching::enumerate_stoimenow;
use crate::matrix::enumerate_matrices;
use crate::perm::enumerate_restricted;
use crate::poset::build;
use crate::series::{Monomial, TruncatedSeries};

/// Multiset of statistic triples, keyed `(u-statistic, v-statistic,
/// y-statistic)`.
pub type TripleCounts = BTreeMap<(usize, usize, usize), u64>;

/// `(asc, last, zeros)` over all ascent sequences of length `n >= 1`.
pub fn ascent_triples(n: usize) -> TripleCounts {
    let mut out = TripleCounts::new();
    for x in enumerate(n, None) {
        let s = x.stats();
        *out.entry((s.asc, s.last.unwrap(), s.zeros)).or_insert(0) += 1;
    }
    out
}

/// `(levels, minmax, rep)` over the poset images of all ascent sequences of
/// length `n >= 1`.
pub fn poset_triples(n: usize) -> TripleCounts {
    let mut out = TripleCounts::new();
    for x in enumerate(n, None) {
        let s = build(&x).expect("nonempty valid sequence").stats();
        *out.entry((s.levels, s.minmax, s.rep)).or_insert(0) += 1;
    }
    out
}

/// `(dim − 1, index − 1, zeros)` over the independently enumerated matrices
/// of entry sum `n >= 1`.
pub fn matrix_triples(n: usize) -> TripleCounts {
    let mut out = TripleCounts::new();
    for a in enumerate_matrices(n, None) {
        let s = a.stats().expect("nonempty matrix");
        *out.entry((s.dim - 1, s.index - 1, s.zeros)).or_insert(0) += 1;
    }
    out
}

/// `(ascents of the inverse, site label left of the maximum, adjacent
/// descents)` over the restricted permutations of `n >= 1` letters.
pub fn perm_triples(n: usize) -> TripleCounts {
    let mut out = TripleCounts::new();
    for p in enumerate_restricted(n, None) {
        let triple = (
            ascents(p.inverse().letters()),
            p.b_label().expect("class member with n >= 1"),
            p.adjdes(),
        );
        *out.entry(triple).or_insert(0) += 1;
    }
    out
}

/// `(cruns, larcs, echords)` over the Stoimenow matchings on `2n` points,
/// `n >= 1`.
pub fn matching_triples(n: usize) -> TripleCounts {
    let mut out = TripleCounts::new();
    for m in enumerate_stoimenow(n, None) {
        let s = m.stats().expect("nonempty matching");
        *out.entry((s.cruns, s.larcs, s.echords)).or_insert(0) += 1;
    }
    out
}

/// The `t^n` slice of a series as a triple distribution. Returns `None`
/// when some coefficient in the slice is not a nonnegative integer.
pub fn series_triples(series: &TruncatedSeries, n: usize) -> Option<TripleCounts> {
    let mut out = TripleCounts::new();
    for (m, c) in series.iter() {
        if m.t as usize != n {
            continue;
        }
        if !c.is_integer() || c.is_negative() {
            return None;
        }
        let count = u64::try_from(c.to_integer()).ok()?;
        out.insert((m.u as usize, m.v as usize, m.y as usize), count);
    }
    Some(out)
}

/// Convenience wrapper for the coefficient of `t^n` in a univariate series,
/// when that coefficient is a nonnegative integer.
pub fn count_coefficient(series: &TruncatedSeries, n: usize) -> Option<u64> {
    let c = series.coefficient(Monomial::new(n, 0, 0, 0)).ok()?;
    if !c.is_integer() || c.is_negative() {
        return None;
    }
    let i: BigInt = c.to_integer();
    u64::try_from(i).ok()
}
