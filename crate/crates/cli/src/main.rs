//! Command-line surface for the oshyper library: enumeration, reduction
//! to the rectified basis, twisted Betti numbers, symbolic forms,
//! characters, and the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 argument parse error
//! (clap), 3 validation error, 4 size-guard refusal.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oshyper::characters::{classes_of, mystery_identity_sides, ClassFunction};
use oshyper::forest::{all_forests, all_rectified_forests, all_rectified_trees, all_trees, Forest};
use oshyper::forms::{beta_bar_form, beta_form};
use oshyper::group::ClassLabel;
use oshyper::induction::{
    verify_cyclic_induction, verify_diagonal_cyclic_induction, verify_graded_induction,
    verify_isotypic_induction, verify_wreath_induction,
};
use oshyper::local_system::{
    betti_numbers, is_resonant, module_generators, ResonanceWitness, WeightVector,
};
use oshyper::os_algebra::{graded_dimension, os_character, OsReducer};
use oshyper::rational::{format_rational, parse_rational, rat_int, Rational};
use oshyper::tree_module::Rectifier;
use oshyper::verification::{criteria, criterion_by_name};
use oshyper::Error;

#[derive(Parser)]
#[command(name = "oshyper", version, about = "Exact Orlik-Solomon and twisted cohomology computations")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Disable the default enumeration size guards
    #[arg(long, global = true)]
    no_guard: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Cmd {
    /// List (or count) the labelled trees on n vertices with edge labels in mu_r
    Trees {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: usize,
        /// Only trees whose edges all point from smaller to larger vertex
        #[arg(long)]
        rectified: bool,
        /// Print the count instead of the list
        #[arg(long)]
        count: bool,
    },
    /// List (or count) decorated forests, optionally filtered by (k, l)
    Forests {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rectified: bool,
        /// Number of edges k
        #[arg(long)]
        k: Option<usize>,
        /// Number of closed roots l
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        count: bool,
    },
    /// Expand a tree in the basis of rectified trees of the tree module
    Rectify {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: usize,
        /// Tree encoding, e.g. "1->3;2->3[1];3"
        #[arg(long)]
        tree: String,
    },
    /// Reduce a decorated forest to the rectified basis of the graded algebra
    OsReduce {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: usize,
        /// Forest encoding, e.g. "1->2;2*;3"
        #[arg(long)]
        forest: String,
        /// Drop deletion terms (work in a fixed (k,l) grade)
        #[arg(long)]
        graded: bool,
    },
    /// Dimensions of the graded pieces A^{k,l}
    Dims {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Twisted Betti numbers for a weight vector
    Betti {
        /// Number of points; must match the number of weights
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated exact fractions, e.g. -1/2,-1/2,-1/2,-1/2
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Cover degree r with r*a_i integral (default: minimal)
        #[arg(long)]
        r: Option<u64>,
    },
    /// The twisted-cohomology representative attached to an admissible forest
    Form {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        r: Option<u64>,
        /// Forest encoding over n vertices (no edge labels), e.g. "1->2;2->3;3->4*"
        #[arg(long)]
        forest: String,
        /// Emit the form on the cover (the pulled-back representative)
        #[arg(long)]
        cover: bool,
    },
    /// Generators of twisted cohomology over the untwisted cohomology ring
    Generators {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        r: Option<u64>,
    },
    /// Check a twisting one-form for resonance
    Resonant {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Pair weights a_{i,j} as "1,2=1/2;2,3=-1" (1-indexed, default 0)
        #[arg(long, allow_hyphen_values = true)]
        pairs: Option<String>,
    },
    /// Character of a graded piece (of the algebra, or of a weight isotypic piece)
    Character {
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Constant weight vector: report the S_n character of the isotypic piece
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
    /// Run a named verification case (or "all"); exits 1 on failure
    Verify {
        /// Criterion name (see `verify list`), "all", or a parameterized case:
        /// graded-induction, isotypic-induction, wreath-induction,
        /// cyclic-induction, diagonal-cyclic-induction, divisor-sum-identity
        case: String,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i64>,
    },
}

enum Failure {
    Core(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn validation(msg: impl Into<String>) -> Failure {
    Failure::Core(Error::Validation(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::SizeGuard(_) => ExitCode::from(4),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn parse_weights(
    weights: &str,
    n: Option<usize>,
    r: Option<u64>,
) -> Result<WeightVector, Failure> {
    let a: Result<Vec<Rational>, Error> =
        weights.split(',').map(|t| parse_rational(t.trim())).collect();
    let a = a?;
    if let Some(n) = n {
        if n != a.len() {
            return Err(validation(format!(
                "--n {n} does not match the {} given weights",
                a.len()
            )));
        }
    }
    Ok(match r {
        Some(r) => WeightVector::new(a, r)?,
        None => WeightVector::with_minimal_r(a)?,
    })
}

fn enumeration_guard(no_guard: bool, n: usize, items: usize) -> Result<(), Failure> {
    if no_guard {
        return Ok(());
    }
    if n > 6 {
        return Err(Failure::Core(Error::SizeGuard(format!(
            "enumeration limited to n <= 6, got {n} (use --no-guard to override)"
        ))));
    }
    if items > 100_000 {
        return Err(Failure::Core(Error::SizeGuard(format!(
            "refusing to list {items} items (use --count or --no-guard)"
        ))));
    }
    Ok(())
}

fn emit_list(format: Format, items: &[Forest]) -> Result<(), Failure> {
    match format {
        Format::Text => {
            for f in items {
                println!("{f}");
            }
        }
        Format::Json => {
            let v: Vec<Value> = items.iter().map(|f| json!(f.encode())).collect();
            println!("{}", json!({ "count": items.len(), "items": v }));
        }
        Format::Latex => return Err(validation("latex output is only available for `form`")),
    }
    Ok(())
}

fn label_string(label: &ClassLabel) -> String {
    let parts: Vec<String> = label
        .iter()
        .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("[{}]", parts.join("|"))
}

fn emit_character(format: Format, chi: &ClassFunction) -> Result<(), Failure> {
    let classes = classes_of(chi.group);
    match format {
        Format::Text => {
            for (label, size, _) in &classes {
                println!("{}\tsize {}\t{}", label_string(label), size, chi.value(label));
            }
            println!("dim\t{}", format_rational(&chi.dim()));
        }
        Format::Json => {
            let vals: Vec<Value> = classes
                .iter()
                .map(|(label, size, _)| {
                    json!({
                        "class": label_string(label),
                        "size": size.to_string(),
                        "value": chi.value(label).to_string(),
                    })
                })
                .collect();
            println!(
                "{}",
                json!({ "classes": vals, "dim": format_rational(&chi.dim()) })
            );
        }
        Format::Latex => return Err(validation("latex output is only available for `form`")),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Trees { r, n, rectified, count } => {
            let items = if rectified { all_rectified_trees(r, n) } else { all_trees(r, n) };
            if count {
                match cli.format {
                    Format::Json => println!("{}", json!({ "count": items.len() })),
                    _ => println!("{}", items.len()),
                }
                return Ok(());
            }
            enumeration_guard(cli.no_guard, n, items.len())?;
            emit_list(cli.format, &items)
        }
        Cmd::Forests { r, n, rectified, k, l, count } => {
            let mut items =
                if rectified { all_rectified_forests(r, n) } else { all_forests(r, n) };
            if let Some(k) = k {
                items.retain(|f| f.num_edges() == k);
            }
            if let Some(l) = l {
                items.retain(|f| f.num_closed() == l);
            }
            if count {
                match cli.format {
                    Format::Json => println!("{}", json!({ "count": items.len() })),
                    _ => println!("{}", items.len()),
                }
                return Ok(());
            }
            enumeration_guard(cli.no_guard, n, items.len())?;
            emit_list(cli.format, &items)
        }
        Cmd::Rectify { r, n, tree } => {
            let t = Forest::parse(r, n, &tree)?;
            if !t.is_tree() {
                return Err(validation("rectify expects a tree (one component)"));
            }
            let v = Rectifier::new().rectify(&t);
            match cli.format {
                Format::Text => {
                    for (f, c) in &v.terms {
                        println!("{}\t{}", format_rational(c), f);
                    }
                }
                Format::Json => {
                    let terms: Vec<Value> = v
                        .terms
                        .iter()
                        .map(|(f, c)| json!({ "coeff": format_rational(c), "tree": f.encode() }))
                        .collect();
                    println!("{}", json!({ "terms": terms }));
                }
                Format::Latex => {
                    return Err(validation("latex output is only available for `form`"))
                }
            }
            Ok(())
        }
        Cmd::OsReduce { r, n, forest, graded } => {
            let f = Forest::parse(r, n, &forest)?;
            let mut red = OsReducer::new();
            let v = if graded { red.reduce_graded(&f) } else { red.reduce_full(&f) };
            match cli.format {
                Format::Text => {
                    for (g, c) in &v.terms {
                        println!("{c}\t{g}");
                    }
                }
                Format::Json => {
                    let terms: Vec<Value> = v
                        .terms
                        .iter()
                        .map(|(g, c)| json!({ "coeff": c.to_string(), "forest": g.encode() }))
                        .collect();
                    println!("{}", json!({ "terms": terms }));
                }
                Format::Latex => {
                    return Err(validation("latex output is only available for `form`"))
                }
            }
            Ok(())
        }
        Cmd::Dims { r, n, k, l } => {
            let pairs: Vec<(usize, usize)> = match (k, l) {
                (Some(k), Some(l)) => vec![(k, l)],
                (Some(k), None) => (0..=n.saturating_sub(k)).map(|l| (k, l)).collect(),
                (None, Some(l)) => (0..=n.saturating_sub(l)).map(|k| (k, l)).collect(),
                (None, None) => (0..=n)
                    .flat_map(|k| (0..=n - k).map(move |l| (k, l)))
                    .collect(),
            };
            let mut rows = vec![];
            for (k, l) in pairs {
                let d = graded_dimension(r, n, k, l);
                if d > 0 {
                    rows.push((k, l, d));
                }
            }
            match cli.format {
                Format::Text => {
                    println!("k\tl\tdim");
                    for (k, l, d) in rows {
                        println!("{k}\t{l}\t{d}");
                    }
                }
                Format::Json => {
                    let v: Vec<Value> = rows
                        .iter()
                        .map(|(k, l, d)| match u64::try_from(*d) {
                            Ok(x) => json!({ "k": k, "l": l, "dim": x }),
                            Err(_) => json!({ "k": k, "l": l, "dim": d.to_string() }),
                        })
                        .collect();
                    println!("{}", json!({ "dims": v }));
                }
                Format::Latex => {
                    return Err(validation("latex output is only available for `form`"))
                }
            }
            Ok(())
        }
        Cmd::Betti { n, weights, r } => {
            let a = parse_weights(&weights, n, r)?;
            let b = betti_numbers(&a);
            let mut map = serde_json::Map::new();
            for (p, d) in &b {
                let val = match u64::try_from(*d) {
                    Ok(x) => json!(x),
                    Err(_) => json!(d.to_string()),
                };
                map.insert(p.to_string(), val);
            }
            match cli.format {
                Format::Text => {
                    // text and json agree here: the table is the answer
                    println!("{}", Value::Object(map));
                }
                Format::Json => println!("{}", Value::Object(map)),
                Format::Latex => {
                    return Err(validation("latex output is only available for `form`"))
                }
            }
            Ok(())
        }
        Cmd::Form { n, weights, r, forest, cover } => {
            let a = parse_weights(&weights, n, r)?;
            let f = Forest::parse(1, a.n(), &forest)?;
            let form =
                if cover { beta_form(&a, &f)? } else { beta_bar_form(&a, &f)? };
            match cli.format {
                Format::Text => println!("{form}"),
                Format::Latex => println!("{}", form.to_latex()),
                Format::Json => println!(
                    "{}",
                    json!({ "text": form.to_string(), "latex": form.to_latex() })
                ),
            }
            Ok(())
        }
        Cmd::Generators { n, weights, r } => {
            let a = parse_weights(&weights, n, r)?;
            emit_list(cli.format, &module_generators(&a))
        }
        Cmd::Resonant { n, weights, pairs } => {
            let a: Result<Vec<Rational>, Error> =
                weights.split(',').map(|t| parse_rational(t.trim())).collect();
            let a = a?;
            if let Some(n) = n {
                if n != a.len() {
                    return Err(validation(format!(
                        "--n {n} does not match the {} given weights",
                        a.len()
                    )));
                }
            }
            let nn = a.len();
            let mut pair_matrix: Vec<Vec<Rational>> = vec![];
            if let Some(spec) = pairs {
                pair_matrix = vec![vec![rat_int(0); nn]; nn];
                for entry in spec.split(';').filter(|s| !s.trim().is_empty()) {
                    let (idx, val) = entry
                        .split_once('=')
                        .ok_or_else(|| validation(format!("bad pair entry '{entry}'")))?;
                    let (i, j) = idx
                        .split_once(',')
                        .ok_or_else(|| validation(format!("bad pair index '{idx}'")))?;
                    let i: usize = i.trim().parse().map_err(|_| validation("bad pair index"))?;
                    let j: usize = j.trim().parse().map_err(|_| validation("bad pair index"))?;
                    if i == 0 || j == 0 || i > nn || j > nn || i == j {
                        return Err(validation(format!("pair index ({i},{j}) out of range")));
                    }
                    let q = parse_rational(val.trim())?;
                    pair_matrix[i.min(j) - 1][i.max(j) - 1] = q;
                }
            }
            let witness = is_resonant(&a, &pair_matrix)?;
            let (kind, detail) = match &witness {
                None => ("nonresonant".to_string(), Value::Null),
                Some(ResonanceWitness::TotalSum(q)) => (
                    "resonant: nonzero integer total sum".to_string(),
                    json!({ "sum": format_rational(q) }),
                ),
                Some(ResonanceWitness::PairSubset(s, q)) => (
                    "resonant: pair-weight subset with positive integer sum".to_string(),
                    json!({
                        "subset": s.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "sum": format_rational(q),
                    }),
                ),
                Some(ResonanceWitness::MixedSubset(s, q)) => (
                    "resonant: proper subset with positive integer sum".to_string(),
                    json!({
                        "subset": s.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "sum": format_rational(q),
                    }),
                ),
            };
            match cli.format {
                Format::Text => match &detail {
                    Value::Null => println!("{kind}"),
                    d => println!("{kind}: {d}"),
                },
                Format::Json => println!(
                    "{}",
                    json!({ "resonant": witness.is_some(), "kind": kind, "detail": detail })
                ),
                Format::Latex => {
                    return Err(validation("latex output is only available for `form`"))
                }
            }
            Ok(())
        }
        Cmd::Character { r, n, k, l, weights } => {
            let chi = match weights {
                Some(w) => {
                    let a = parse_weights(&w, n, r)?;
                    oshyper::local_system::isotypic_character(&a, k, l)?
                }
                None => {
                    let r = r.ok_or_else(|| validation("--r is required without --weights"))?;
                    let n = n.ok_or_else(|| validation("--n is required without --weights"))?;
                    os_character(r, n, k, l)?
                }
            };
            emit_character(cli.format, &chi)
        }
        Cmd::Verify { case, r, n, m, k, l, s } => run_verify(&case, r, n, m, k, l, s),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, case: &str) -> Result<T, Failure> {
    v.ok_or_else(|| validation(format!("`verify {case}` requires --{flag}")))
}

fn report(case: &str, ok: bool) -> Result<(), Failure> {
    if ok {
        println!("PASS  {case}");
        Ok(())
    } else {
        println!("FAIL  {case}");
        Err(Failure::Verify(case.to_string()))
    }
}

fn run_verify(
    case: &str,
    r: Option<u64>,
    n: Option<usize>,
    m: Option<u64>,
    k: Option<usize>,
    l: Option<usize>,
    s: Option<i64>,
) -> Result<(), Failure> {
    match case {
        "list" => {
            for c in criteria() {
                println!("{:<22}  {}", c.name, c.summary);
            }
            Ok(())
        }
        "all" => {
            let mut failed = vec![];
            for c in criteria() {
                match (c.run)() {
                    Ok(()) => println!("PASS  {}", c.name),
                    Err(msg) => {
                        println!("FAIL  {}  {msg}", c.name);
                        failed.push(c.name);
                    }
                }
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verify(failed.join(", ")))
            }
        }
        "graded-induction" => {
            let (r, n) = (need(r, "r", case)?, need(n, "n", case)?);
            let (k, l) = (need(k, "k", case)?, need(l, "l", case)?);
            report(case, verify_graded_induction(r, n, k, l)?)
        }
        "isotypic-induction" => {
            let (r, n, s) = (need(r, "r", case)?, need(n, "n", case)?, need(s, "s", case)?);
            let (k, l) = (need(k, "k", case)?, need(l, "l", case)?);
            report(case, verify_isotypic_induction(r, n, s, k, l)?)
        }
        "wreath-induction" => {
            let (r, n, s) = (need(r, "r", case)?, need(n, "n", case)?, need(s, "s", case)?);
            let (k, l) = (need(k, "k", case)?, need(l, "l", case)?);
            report(case, verify_wreath_induction(r, n, s, k, l)?)
        }
        "cyclic-induction" => report(case, verify_cyclic_induction(need(n, "n", case)?)?),
        "diagonal-cyclic-induction" => {
            let (r, n) = (need(r, "r", case)?, need(n, "n", case)?);
            report(case, verify_diagonal_cyclic_induction(r, n)?)
        }
        "divisor-sum-identity" => {
            let (r, m) = (need(r, "r", case)?, need(m, "m", case)?);
            let mut ok = true;
            for d in 1..=r * m {
                if (r * m) % d != 0 {
                    continue;
                }
                let (lhs, rhs, direct) = mystery_identity_sides(r, m, d);
                let eq = lhs == rhs && rhs == direct;
                println!(
                    "d={d}: lhs={} rhs={} direct={}",
                    format_rational(&lhs),
                    format_rational(&rhs),
                    format_rational(&direct)
                );
                ok &= eq;
            }
            report(case, ok)
        }
        name => match criterion_by_name(name) {
            Some(c) => match (c.run)() {
                Ok(()) => report(name, true),
                Err(msg) => {
                    println!("FAIL  {name}  {msg}");
                    Err(Failure::Verify(msg))
                }
            },
            None => Err(validation(format!(
                "unknown verify case '{name}' (try `verify list`)"
            ))),
        },
    }
}
