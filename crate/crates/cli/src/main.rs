//! `op7`: permutation and orthomorphism polynomials of degree 7.

mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use op7_core::perm::DEFAULT_BUDGET;
use op7_core::verify::{self, Check};
use op7_core::{
    canonicalize, census, count_ops, enumerate_ops, family_table, field_for_order, parse_poly, preset,
    search_pairs_direct, search_pairs_table_based, CensusQuery, Classifier, Error, Fe, Field, FieldSpec, Method, Pair,
    PairSearchResult, Property,
};
use report::{Format, Report};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "op7", version, about = "Degree-7 permutation and orthomorphism polynomials over finite fields")]
struct Cli {
    #[command(flatten)]
    field: FieldArgs,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,

    /// Census candidate budget.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct FieldArgs {
    /// Field order, using the preset field for that order.
    #[arg(long, global = true, conflicts_with_all = ["p", "r", "modulus"])]
    q: Option<usize>,
    /// Characteristic.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Extension degree.
    #[arg(long, global = true, requires = "p")]
    r: Option<u32>,
    /// Monic modulus, ascending coefficients, e.g. `2,4,1`.
    #[arg(long, global = true, requires = "p", value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test a polynomial for a property.
    Test {
        poly: String,
        #[arg(long, default_value = "pp")]
        property: Property,
    },
    /// Canonical form and family of a degree-7 polynomial.
    Classify { poly: String },
    /// (alpha, beta) pairs per family.
    Pairs {
        /// Family ordinal; all families when omitted.
        #[arg(long, conflicts_with = "all")]
        family: Option<usize>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "direct", value_parser = ["direct", "table", "both"])]
        method: String,
    },
    /// Count or emit every degree-7 OP.
    Enumerate {
        #[arg(long, conflicts_with = "emit")]
        count_only: bool,
        /// Write all OPs, one ascending coefficient vector per line.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, default_value = "direct", value_parser = ["direct", "table"])]
        method: String,
    },
    /// Exhaustive count over the coefficient space.
    Census {
        #[arg(long, default_value_t = 7)]
        degree: usize,
        /// Only zero-constant candidates.
        #[arg(long)]
        canonical: bool,
        #[arg(long, default_value = "op")]
        property: Property,
    },
    /// Rerun the reference checks.
    Verify {
        #[arg(long, default_value = "reference", value_parser = ["reference"])]
        suite: String,
        /// Restrict to one field order.
        #[arg(long)]
        field: Option<usize>,
        /// Add the census tiers for q = 8, 11, 13.
        #[arg(long)]
        deep: bool,
        /// Also the q = 17 census.
        #[arg(long)]
        deeper: bool,
    },
}

/// A failed comparison, as opposed to an error.
struct Mismatch;

fn build_field(args: &FieldArgs) -> anyhow::Result<Field> {
    if let Some(q) = args.q {
        return Ok(field_for_order(q)?);
    }
    let Some(p) = args.p else { bail!("a field is required: --q, or --p with optional --r/--modulus") };
    match (&args.modulus, args.r) {
        (Some(m), r) => {
            let spec = FieldSpec::extension(p, m.clone());
            if r.is_some_and(|r| r != spec.r) {
                bail!("--r {} does not match the modulus degree {}", r.unwrap(), spec.r);
            }
            Ok(Field::new(spec)?)
        }
        (None, None | Some(1)) => Ok(Field::prime(p)?),
        (None, Some(r)) => {
            let q = FieldSpec { p, r, modulus: vec![] }.order().context("order overflows")?;
            Ok(preset(q).context("no preset modulus for this order; pass --modulus")?)
        }
    }
}

fn fmt_pair(f: &Field, p: &Pair) -> String {
    format!("({},{})", f.format(p.alpha), f.format(p.beta))
}

fn coeffs_str(f: &Field, c: &[Fe]) -> String {
    op7_core::parse::format_coeffs(f, c)
}

fn cmd_test(field: &Field, poly: &str, property: Property) -> anyhow::Result<Report> {
    let h = parse_poly(field, poly)?;
    let mut r = Report::new(Some(field.order()), "test");
    let verdict = property.holds(&h);
    let mut row = json!({"poly": h.to_string(), "property": property.to_string(), "verdict": verdict});
    if property == Property::Pp && h.degree() == Some(7) {
        match Classifier::new(field) {
            Ok(c) => {
                let e = c.is_pp_by_table(&h)?;
                row["family"] = e.map(|e| e.ordinal).into();
                row["tuple"] = e.map(|e| e.format_tuple(field)).into();
                row["exceptional"] = e.map(|e| e.exceptional).into();
            }
            Err(Error::UnsupportedOrder(_)) => row["family"] = "no table".into(),
            Err(e) => return Err(e.into()),
        }
    }
    r.results.push(row);
    Ok(r)
}

fn cmd_classify(field: &Field, poly: &str) -> anyhow::Result<Report> {
    let h = parse_poly(field, poly)?;
    let mut r = Report::new(Some(field.order()), "classify");
    let canonical = match canonicalize(&h) {
        Ok((cf, _)) => Value::from(format!("({})", cf.tuple().map(|c| field.format(c)).join(", "))),
        Err(Error::CharacteristicSeven) => Value::Null,
        Err(Error::NoCanonicalImage(_)) => Value::from("none"),
        Err(e) => return Err(e.into()),
    };
    let mut row = json!({"poly": h.to_string(), "canonical": canonical});
    let c = Classifier::new(field)?;
    match c.classify(&h)? {
        Some(m) => {
            row["family"] = m.entry.ordinal.into();
            row["tuple"] = m.entry.format_tuple(field).into();
            row["exceptional"] = m.entry.exceptional.into();
            row["transform"] = m.transform.display(field).to_string().into();
        }
        None => row["family"] = "not a PP".into(),
    }
    r.results.push(row);
    Ok(r)
}

fn family_row(f: &Field, res: &PairSearchResult) -> Value {
    json!({
        "family": res.family.ordinal,
        "tuple": res.family.format_tuple(f),
        "exceptional": res.family.exceptional,
        "method": res.method.to_string(),
        "pair_count": res.pairs.len(),
        "pairs": res.pairs.iter().map(|p| fmt_pair(f, p)).collect::<Vec<_>>(),
    })
}

fn pair_rows(f: &Field, res: &PairSearchResult) -> Vec<Value> {
    res.pairs
        .iter()
        .zip(&res.signatures)
        .map(|(p, s)| {
            json!({
                "family": res.family.ordinal,
                "method": res.method.to_string(),
                "alpha": f.format(p.alpha),
                "beta": f.format(p.beta),
                "coefficients": coeffs_str(f, s),
            })
        })
        .collect()
}

fn cmd_pairs(field: &Field, family: Option<usize>, method: &str) -> anyhow::Result<(Report, bool)> {
    let c = Classifier::new(field)?;
    let entries: Vec<_> = match family {
        Some(o) => vec![c.table().entry(o).with_context(|| format!("no family {} for q = {}", o, field.order()))?],
        None => c.table().entries.iter().collect(),
    };
    let mut r = Report::new(Some(field.order()), "pairs");
    let mut agree = true;
    let start = Instant::now();
    let mut total = 0;
    for e in entries {
        let mut runs = Vec::new();
        if method != "table" {
            runs.push(search_pairs_direct(field, e));
        }
        if method != "direct" {
            runs.push(search_pairs_table_based(&c, e)?);
        }
        if runs.len() == 2 {
            let same = runs[0].pairs == runs[1].pairs;
            agree &= same;
            let mut row = family_row(field, &runs[0]);
            row["method"] = "both".into();
            row["agree"] = same.into();
            r.results.push(row);
        } else {
            r.results.push(family_row(field, &runs[0]));
        }
        total += runs[0].pairs.len();
        r.rows.extend(runs.iter().flat_map(|x| pair_rows(field, x)));
    }
    r.total("pair_total", total);
    if method == "both" {
        r.total("methods_agree", agree);
    }
    r.timing("search", start.elapsed().as_secs_f64());
    Ok((r, agree))
}

fn cmd_enumerate(field: &Field, emit: Option<&PathBuf>, method: &str) -> anyhow::Result<Report> {
    let method: Method = method.parse()?;
    let start = Instant::now();
    let report = count_ops(field, method)?;
    let mut r = Report::new(Some(field.order()), "enumerate");
    r.timing("search", start.elapsed().as_secs_f64());
    for res in &report.per_family {
        let mut row = family_row(field, res);
        row.as_object_mut().unwrap().remove("pairs");
        r.results.push(row);
    }
    r.total("pair_total", report.pair_total);
    r.total("op_total", report.op_total as u64);
    r.total("exceptional_pairs", report.exceptional_pairs);
    r.total("exceptional_op_total", report.exceptional_op_total as u64);
    if let Some(path) = emit {
        let start = Instant::now();
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(file);
        let mut n: u64 = 0;
        for g in enumerate_ops(field, &report) {
            writeln!(w, "{}", coeffs_str(field, g.coeffs()))?;
            n += 1;
        }
        w.flush()?;
        r.total("emitted", n);
        r.timing("emit", start.elapsed().as_secs_f64());
    }
    Ok(r)
}

fn cmd_census(field: &Field, degree: usize, canonical: bool, property: Property, budget: u128) -> anyhow::Result<Report> {
    let query = CensusQuery { field, degree, canonical_only: canonical, property };
    let start = Instant::now();
    let count = census(&query, budget)?;
    let mut r = Report::new(Some(field.order()), "census");
    r.results.push(json!({
        "degree": degree,
        "canonical": canonical,
        "property": property.to_string(),
        "candidates": query.candidates() as u64,
        "count": count,
    }));
    r.total("count", count);
    r.timing("census", start.elapsed().as_secs_f64());
    Ok(r)
}

fn cmd_verify(field: Option<usize>, deep: bool, deeper: bool) -> anyhow::Result<(Report, bool)> {
    if let Some(q) = field {
        if field_for_order(q).is_err() || (family_table(q).is_err() && !verify::audit_orders().contains(&q)) {
            return Err(Error::UnsupportedOrder(q).into());
        }
    }
    let mut r = Report::new(field, "verify");
    let mut suites: Vec<(u8, Box<dyn Fn() -> Vec<Check>>)> = vec![
        (1, Box::new(verify::criterion_1)),
        (2, Box::new(verify::criterion_2)),
        (3, Box::new(verify::criterion_3)),
        (4, Box::new(verify::criterion_4)),
        (5, Box::new(verify::criterion_5)),
        (6, Box::new(verify::criterion_6)),
        (8, Box::new(|| verify::criterion_8(100_000))),
        (9, Box::new(verify::criterion_9)),
    ];
    if deep || deeper {
        suites.push((7, Box::new(move || verify::criterion_7(deeper))));
    }
    suites.sort_by_key(|s| s.0);
    let prefix = field.map(|q| format!("q={} ", q));
    let mut all = true;
    let mut count = 0;
    for (n, run) in suites {
        let start = Instant::now();
        let checks: Vec<Check> =
            run().into_iter().filter(|c| prefix.as_ref().is_none_or(|p| c.name.starts_with(p.as_str()))).collect();
        r.timing(&format!("criterion_{}", n), start.elapsed().as_secs_f64());
        for c in checks {
            all &= c.passed;
            count += 1;
            r.results.push(json!({
                "criterion": c.criterion,
                "check": c.name,
                "status": if c.passed { "PASS" } else { "FAIL" },
                "detail": c.detail,
            }));
        }
    }
    r.total("checks", count);
    r.total("failed", r.results.iter().filter(|v| v["status"] == "FAIL").count());
    r.total("passed", all);
    Ok((r, all))
}

fn run(cli: &Cli) -> anyhow::Result<Result<Report, (Report, Mismatch)>> {
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global()?;
    }
    let ok = |r| Ok(Ok(r));
    let checked = |(r, pass): (Report, bool)| Ok(if pass { Ok(r) } else { Err((r, Mismatch)) });
    match &cli.command {
        Command::Verify { field, deep, deeper, .. } => checked(cmd_verify(field.or(cli.field.q), *deep, *deeper)?),
        cmd => {
            let field = build_field(&cli.field)?;
            match cmd {
                Command::Test { poly, property } => ok(cmd_test(&field, poly, *property)?),
                Command::Classify { poly } => ok(cmd_classify(&field, poly)?),
                Command::Pairs { family, all: _, method } => checked(cmd_pairs(&field, *family, method)?),
                Command::Enumerate { emit, method, .. } => ok(cmd_enumerate(&field, emit.as_ref(), method)?),
                Command::Census { degree, canonical, property } => {
                    ok(cmd_census(&field, *degree, *canonical, *property, cli.budget)?)
                }
                Command::Verify { .. } => unreachable!(),
            }
        }
    }
}

fn write_out(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let text = report.render(cli.format);
    match &cli.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{}", text),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|res| match res {
        Ok(r) => write_out(&cli, &r).map(|_| ExitCode::SUCCESS),
        Err((r, Mismatch)) => write_out(&cli, &r).map(|_| ExitCode::from(1)),
    });
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {:#}", e);
        ExitCode::from(2)
    })
}
