//! Human-diffable object encodings shared by the `map` and `list`
//! subcommands: ascent sequences as comma-separated integers, matrices as
//! row-major JSON arrays, permutations as one-line words, matchings as
//! sorted arc pairs, posets as `{n, downChainSizes, levels, canonicalForm}`.

use num_rational::BigRational;
use serde_json::{json, Value};

use fishburn_core::ascent::{ascents, AscentSequence};
use fishburn_core::matching::Matching;
use fishburn_core::matrix::StaircaseMatrix;
use fishburn_core::perm::Permutation;
use fishburn_core::poset::IntervalOrder;

/// Renders an exact rational as `numerator/denominator`, bit-exact.
pub fn fraction(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn ascent_stats(x: &AscentSequence) -> Value {
    let s = x.stats();
    json!({
        "n": x.len(),
        "asc": s.asc,
        "last": s.last,
        "zeros": s.zeros,
        "maxRun": s.max_run,
        "isPrimitive": s.is_primitive,
    })
}

pub fn matrix_value(a: &StaircaseMatrix) -> Value {
    json!(a.rows())
}

pub fn matrix_stats(a: &StaircaseMatrix) -> Value {
    match a.stats() {
        Ok(s) => json!({
            "sum": s.sum,
            "nz": s.nonzero,
            "zeros": s.zeros,
            "index": s.index,
            "dim": s.dim,
        }),
        Err(_) => json!({ "sum": 0, "nz": 0, "zeros": 0, "dim": 0 }),
    }
}

pub fn parse_matrix(s: &str) -> Result<StaircaseMatrix, String> {
    let rows: Vec<Vec<usize>> = serde_json::from_str(s)
        .map_err(|e| format!("matrix must be a JSON row-major array: {e}"))?;
    StaircaseMatrix::from_rows(rows).map_err(|e| e.to_string())
}

pub fn poset_value(p: &IntervalOrder) -> Value {
    json!({
        "n": p.n(),
        "downChainSizes": p.down_chain().iter().map(|d| d.len()).collect::<Vec<_>>(),
        "levels": p.levels(),
        "canonicalForm": p.canonical_form().pairs(),
    })
}

pub fn poset_stats(p: &IntervalOrder) -> Value {
    let s = p.stats();
    json!({
        "levels": s.levels,
        "srank": s.srank,
        "minmax": s.minmax,
        "maxindist": s.maxindist,
        "rep": s.rep,
    })
}

/// Reads the isomorphism key out of an encoded poset: the element count and
/// the canonical-form pairs.
pub fn parse_poset_key(s: &str) -> Result<(usize, Vec<(usize, usize)>), String> {
    let v: Value = serde_json::from_str(s).map_err(|e| format!("poset must be JSON: {e}"))?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or("poset object needs an integer field \"n\"")? as usize;
    let pairs = v
        .get("canonicalForm")
        .and_then(Value::as_array)
        .ok_or("poset object needs a \"canonicalForm\" array")?
        .iter()
        .map(|pair| {
            let xs = pair.as_array().filter(|xs| xs.len() == 2)?;
            Some((xs[0].as_u64()? as usize, xs[1].as_u64()? as usize))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or("canonicalForm must be an array of [downLevel, upLevel] pairs")?;
    Ok((n, pairs))
}

pub fn perm_stats(p: &Permutation) -> Value {
    json!({
        "n": p.len(),
        "adjdes": p.adjdes(),
        "b": p.b_label().ok(),
        "ascInverse": ascents(p.inverse().letters()),
        "inR": p.in_r(),
    })
}

pub fn matching_value(m: &Matching) -> Value {
    json!(m.arcs())
}

pub fn matching_stats(m: &Matching) -> Value {
    match m.stats() {
        Ok(s) => json!({
            "n": m.n(),
            "cruns": s.cruns,
            "larcs": s.larcs,
            "echords": s.echords,
        }),
        Err(_) => json!({ "n": 0 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_is_always_slash_separated() {
        assert_eq!(fraction(&BigRational::from_integer(7.into())), "7/1");
        assert_eq!(fraction(&BigRational::new((-3).into(), 6.into())), "-1/2");
    }

    #[test]
    fn matrix_round_trips_through_json() {
        let a = StaircaseMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let text = matrix_value(&a).to_string();
        assert_eq!(parse_matrix(&text).unwrap(), a);
        assert!(parse_matrix("[[0,1],[0,1]]").is_err());
    }

    #[test]
    fn poset_key_round_trips() {
        let x: AscentSequence = "0,1,1,0,2,0,1".parse().unwrap();
        let p = fishburn_core::poset::build(&x).unwrap();
        let text = poset_value(&p).to_string();
        let (n, pairs) = parse_poset_key(&text).unwrap();
        assert_eq!(n, 7);
        assert_eq!(pairs, p.canonical_form().pairs());
    }
}
