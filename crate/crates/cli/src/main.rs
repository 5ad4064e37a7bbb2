//! `fishburn`: count, list and map five equinumerous combinatorial
//! families, expand their exact generating functions, and run the
//! verification suite.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fishburn_cli::config::{self, Limits};
use fishburn_cli::encode;
use fishburn_cli::verify::{self, VerifySettings};

use fishburn_core::ascent::{enumerate, AscentSequence};
use fishburn_core::matching::enumerate_stoimenow;
use fishburn_core::matrix::{enumerate_matrices, gamma, zeta};
use fishburn_core::perm::{enumerate_restricted, lambda, upsilon, Permutation};
use fishburn_core::poset::{build, CanonicalForm};
use fishburn_core::series::{
    bk_series, g_full, g_primitive, g_u1yt, k_series, p_series, Monomial, TruncatedSeries,
};

#[derive(Parser)]
#[command(
    name = "fishburn",
    version,
    about = "Exact workbench for ascent sequences, interval orders, staircase matrices, \
             restricted permutations and Stoimenow matchings"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// JSON limits file (also read from FISHBURN_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Ascent,
    Poset,
    Matrix,
    Perm,
    Matching,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Ascent => "ascent",
            Family::Poset => "poset",
            Family::Matrix => "matrix",
            Family::Perm => "perm",
            Family::Matching => "matching",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    #[value(name = "P")]
    P,
    #[value(name = "K")]
    K,
    #[value(name = "Bk")]
    Bk,
    #[value(name = "G")]
    G,
    #[value(name = "G_u1yt")]
    GU1yt,
    #[value(name = "G_primitive")]
    GPrimitive,
}

#[derive(Subcommand)]
enum Command {
    /// Count the objects of one family at size n
    Count {
        family: Family,
        n: usize,
        /// Bound on the run/entry/descent/chain statistic
        #[arg(long)]
        k: Option<usize>,
    },
    /// Print every object of one family at size n
    List {
        family: Family,
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Expand a generating function to a truncation order
    Expand {
        series: SeriesName,
        order: usize,
        /// Required for Bk
        #[arg(long)]
        k: Option<usize>,
        /// Keep only monomials matching a pattern such as "u^2" or "t^3 y^1"
        #[arg(long)]
        filter: Option<String>,
    },
    /// Map an object through a bijection and print both sides with statistics
    Map {
        from: Family,
        to: Family,
        object: String,
    },
    /// Run the acceptance checks and print a report
    Verify {
        #[arg(long)]
        n_ascent: Option<usize>,
        #[arg(long)]
        n_poset: Option<usize>,
        #[arg(long)]
        n_matrix: Option<usize>,
        #[arg(long)]
        n_perm: Option<usize>,
        #[arg(long)]
        n_matching: Option<usize>,
        /// Series truncation cap
        #[arg(long)]
        order: Option<usize>,
        /// Run independent checks on multiple cores
        #[arg(long)]
        parallel: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match config::load(cli.config.as_deref()) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match dispatch(cli.command, cli.format, &limits) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn family_limit(family: Family, limits: &Limits) -> usize {
    match family {
        Family::Ascent => limits.max_ascent,
        Family::Poset => limits.max_poset,
        Family::Matrix => limits.max_matrix,
        Family::Perm => limits.max_perm,
        Family::Matching => limits.max_matching,
    }
}

fn check_limit(family: Family, n: usize, limits: &Limits) -> Result<(), String> {
    let cap = family_limit(family, limits);
    if n > cap {
        return Err(format!(
            "n = {n} exceeds the {} limit {cap} (raise it via --config or {})",
            family.name(),
            config::CONFIG_ENV_VAR
        ));
    }
    Ok(())
}

fn dispatch(command: Command, format: Format, limits: &Limits) -> Result<ExitCode, String> {
    match command {
        Command::Count { family, n, k } => {
            check_limit(family, n, limits)?;
            let count = count_family(family, n, k);
            match format {
                Format::Text => println!("{count}"),
                Format::Json => println!(
                    "{}",
                    json!({ "family": family.name(), "n": n, "k": k, "count": count })
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::List { family, n, k } => {
            check_limit(family, n, limits)?;
            let objects = list_family(family, n, k);
            match format {
                Format::Text => {
                    for (object, _) in &objects {
                        println!("{object}");
                    }
                }
                Format::Json => {
                    let rows: Vec<Value> = objects
                        .iter()
                        .map(|(object, stats)| json!({ "object": object, "stats": stats }))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Expand {
            series,
            order,
            k,
            filter,
        } => {
            if order > limits.max_order {
                return Err(format!(
                    "order {order} exceeds the series limit {} (raise it via --config or {})",
                    limits.max_order,
                    config::CONFIG_ENV_VAR
                ));
            }
            let filter = filter.map(|f| parse_filter(&f)).transpose()?;
            let expanded = expand_series(series, order, k)?;
            print_series(&expanded, format, filter);
            Ok(ExitCode::SUCCESS)
        }
        Command::Map { from, to, object } => {
            let (from_side, to_side) = map_object(from, to, &object, limits)?;
            match format {
                Format::Text => {
                    println!("{}: {}", from.name(), render_side(&from_side));
                    println!("{}: {}", to.name(), render_side(&to_side));
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "from": { "family": from.name(), "object": from_side.0, "stats": from_side.1 },
                        "to": { "family": to.name(), "object": to_side.0, "stats": to_side.1 },
                    }))
                    .unwrap()
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            n_ascent,
            n_poset,
            n_matrix,
            n_perm,
            n_matching,
            order,
            parallel,
        } => {
            let report = verify::run(&VerifySettings {
                n_ascent,
                n_poset,
                n_matrix,
                n_perm,
                n_matching,
                order,
                parallel,
            });
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(if report.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn count_family(family: Family, n: usize, k: Option<usize>) -> u64 {
    match family {
        Family::Ascent => enumerate(n, k).count() as u64,
        Family::Poset => {
            if n == 0 {
                1
            } else {
                let forms: BTreeSet<CanonicalForm> = enumerate(n, None)
                    .map(|x| build(&x).expect("valid sequence"))
                    .filter(|p| k.is_none_or(|k| p.stats().maxindist <= k))
                    .map(|p| p.canonical_form())
                    .collect();
                forms.len() as u64
            }
        }
        Family::Matrix => enumerate_matrices(n, k).len() as u64,
        Family::Perm => enumerate_restricted(n, k).len() as u64,
        Family::Matching => enumerate_stoimenow(n, k).len() as u64,
    }
}

/// Objects of a family with their statistics, in a deterministic order.
fn list_family(family: Family, n: usize, k: Option<usize>) -> Vec<(String, Value)> {
    match family {
        Family::Ascent => enumerate(n, k)
            .map(|x| (x.to_string(), encode::ascent_stats(&x)))
            .collect(),
        Family::Poset => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            if n == 0 {
                return out;
            }
            for x in enumerate(n, None) {
                let p = build(&x).expect("valid sequence");
                if k.is_some_and(|k| p.stats().maxindist > k) {
                    continue;
                }
                if seen.insert(p.canonical_form()) {
                    out.push((encode::poset_value(&p).to_string(), encode::poset_stats(&p)));
                }
            }
            out
        }
        Family::Matrix => enumerate_matrices(n, k)
            .iter()
            .map(|a| (encode::matrix_value(a).to_string(), encode::matrix_stats(a)))
            .collect(),
        Family::Perm => enumerate_restricted(n, k)
            .iter()
            .map(|p| (p.to_string(), encode::perm_stats(p)))
            .collect(),
        Family::Matching => enumerate_stoimenow(n, k)
            .iter()
            .map(|m| {
                (
                    encode::matching_value(m).to_string(),
                    encode::matching_stats(m),
                )
            })
            .collect(),
    }
}

fn expand_series(
    series: SeriesName,
    order: usize,
    k: Option<usize>,
) -> Result<TruncatedSeries, String> {
    match series {
        SeriesName::P => Ok(p_series(order)),
        SeriesName::K => Ok(k_series(order)),
        SeriesName::Bk => {
            let k = k.ok_or("Bk needs --k")?;
            if k == 0 {
                return Err("Bk needs k >= 1".to_string());
            }
            Ok(bk_series(order, k))
        }
        SeriesName::G => Ok(g_full(order)),
        SeriesName::GU1yt => Ok(g_u1yt(order)),
        SeriesName::GPrimitive => Ok(g_primitive(order)),
    }
}

/// Pattern like "u^2" or "t^3 y^0": each mentioned variable pins its
/// exponent, unmentioned variables stay free.
fn parse_filter(pattern: &str) -> Result<[Option<usize>; 4], String> {
    let mut out = [None; 4];
    for token in pattern.split_whitespace() {
        let (name, exp) = match token.split_once('^') {
            Some((name, exp)) => (
                name,
                exp.parse::<usize>()
                    .map_err(|_| format!("bad exponent in filter token {token:?}"))?,
            ),
            None => (token, 1),
        };
        let slot = match name {
            "t" => 0,
            "u" => 1,
            "v" => 2,
            "y" => 3,
            _ => return Err(format!("unknown variable in filter token {token:?}")),
        };
        out[slot] = Some(exp);
    }
    Ok(out)
}

fn matches_filter(m: &Monomial, filter: &Option<[Option<usize>; 4]>) -> bool {
    let Some(f) = filter else { return true };
    let exps = [m.t as usize, m.u as usize, m.v as usize, m.y as usize];
    f.iter()
        .zip(exps)
        .all(|(want, have)| want.is_none_or(|w| w == have))
}

fn print_series(series: &TruncatedSeries, format: Format, filter: Option<[Option<usize>; 4]>) {
    match format {
        Format::Text => {
            for (m, c) in series.iter() {
                if !matches_filter(m, &filter) {
                    continue;
                }
                let coeff = if c.is_integer() {
                    c.numer().to_string()
                } else {
                    encode::fraction(c)
                };
                println!("{m}: {coeff}");
            }
        }
        Format::Json => {
            let rows: Vec<Value> = series
                .iter()
                .filter(|(m, _)| matches_filter(m, &filter))
                .map(|(m, c)| {
                    json!({
                        "monomial": [m.t, m.u, m.v, m.y],
                        "coefficient": encode::fraction(c),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "order": series.order(),
                    "coefficients": rows,
                }))
                .unwrap()
            );
        }
    }
}

type Side = (String, Value);

fn render_side(side: &Side) -> String {
    format!("{}  stats {}", side.0, side.1)
}

fn map_object(
    from: Family,
    to: Family,
    object: &str,
    limits: &Limits,
) -> Result<(Side, Side), String> {
    use Family::*;
    if from == Matching || to == Matching {
        return Err(
            "no constructive map touches matchings here; their agreement with the other \
             families is verified at distribution level only (see `fishburn verify`)"
                .to_string(),
        );
    }
    let ascent_side = |x: &AscentSequence| (x.to_string(), encode::ascent_stats(x));
    match (from, to) {
        (Ascent, Poset) => {
            let x: AscentSequence = object.parse().map_err(|e| format!("{e}"))?;
            let p = build(&x).map_err(|e| e.to_string())?;
            Ok((
                ascent_side(&x),
                (encode::poset_value(&p).to_string(), encode::poset_stats(&p)),
            ))
        }
        (Poset, Ascent) => {
            let (n, pairs) = encode::parse_poset_key(object)?;
            // inverse by exhaustive search over sequences of length n
            check_limit(Poset, n, limits)?;
            if n == 0 {
                return Err("the empty poset has no preimage to search".to_string());
            }
            for x in enumerate(n, None) {
                let p = build(&x).expect("valid sequence");
                if p.canonical_form().pairs() == pairs {
                    return Ok((
                        (encode::poset_value(&p).to_string(), encode::poset_stats(&p)),
                        ascent_side(&x),
                    ));
                }
            }
            Err("no sequence maps onto this canonical form".to_string())
        }
        (Ascent, Matrix) => {
            let x: AscentSequence = object.parse().map_err(|e| format!("{e}"))?;
            let a = zeta(&x);
            Ok((
                ascent_side(&x),
                (
                    encode::matrix_value(&a).to_string(),
                    encode::matrix_stats(&a),
                ),
            ))
        }
        (Matrix, Ascent) => {
            let a = encode::parse_matrix(object)?;
            let x = gamma(&a).map_err(|e| e.to_string())?;
            Ok((
                (
                    encode::matrix_value(&a).to_string(),
                    encode::matrix_stats(&a),
                ),
                ascent_side(&x),
            ))
        }
        (Ascent, Perm) => {
            let x: AscentSequence = object.parse().map_err(|e| format!("{e}"))?;
            let p = upsilon(&x).map_err(|e| e.to_string())?;
            Ok((ascent_side(&x), (p.to_string(), encode::perm_stats(&p))))
        }
        (Perm, Ascent) => {
            let p: Permutation = object.parse().map_err(|e| format!("{e}"))?;
            let x = lambda(&p).map_err(|e| e.to_string())?;
            Ok(((p.to_string(), encode::perm_stats(&p)), ascent_side(&x)))
        }
        (a, b) if a == b => Err("map needs two different families".to_string()),
        _ => Err(
            "unsupported direction: supported maps are ascent<->poset, ascent<->matrix, \
             ascent<->perm"
                .to_string(),
        ),
    }
}
