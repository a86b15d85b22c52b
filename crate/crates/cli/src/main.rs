use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wmds_core::characters::{character_gt, cs_euler_identity, euler_product_n1, verify_hamel_king};
use wmds_core::pattern::{count_patterns, enumerate_patterns, verify_k_sum};
use wmds_core::stable::verify_stable_formula;
use wmds_core::tableau::{tableau_from_pattern, tableau_stats, verify_tableau_stats};
use wmds_core::{gauss_eval, h_table, ArithContext, Error, GTPattern, LambdaTwist};

#[derive(Parser)]
#[command(name = "wmds", version, about = "Prime-power coefficients of type C multiple Dirichlet series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the patterns with top row λ+ρ.
    Patterns {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        count_only: bool,
    },
    /// Shifted tableaux of the strict patterns, with their statistics.
    Tableaux {
        #[command(flatten)]
        common: Common,
    },
    /// The coefficient table H(p^k; p^l).
    Hcoeff {
        #[command(flatten)]
        common: Common,
    },
    /// The symplectic character sp_λ with λ = L − ρ.
    Character {
        #[command(flatten)]
        common: Common,
    },
    /// Run one of the verification harnesses.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        common: Common,
    },
    /// Coefficients H(c; m) at n = 1 for c in [1, bound]^r.
    Euler {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        m: Vec<i64>,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    rank: Option<usize>,
    /// Twist exponents l_1,…,l_r.
    #[arg(long, value_delimiter = ',')]
    l: Option<Vec<u32>>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add a floating-point evaluation at q = p.
    #[arg(long)]
    numeric: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Stable,
    HamelKing,
    #[value(name = "lemma3")]
    KSum,
    #[value(name = "lemma4")]
    TableauStats,
    Gauss,
    Cs,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

impl Common {
    fn twist(&self) -> Result<LambdaTwist, Failure> {
        let l = match (&self.l, self.rank) {
            (Some(l), Some(r)) if l.len() != r => {
                return Err(Failure::Usage(format!("--l has {} entries but --rank is {r}", l.len())))
            }
            (Some(l), _) => l.clone(),
            (None, Some(r)) => vec![0; r],
            (None, None) => return Err(Failure::Usage("one of --rank or --l is required".into())),
        };
        Ok(LambdaTwist::new(l)?)
    }

    fn degree(&self) -> Result<u32, Failure> {
        self.n.ok_or_else(|| Failure::Usage("--n is required".into()))
    }

    /// The arithmetic context, when `--p` is given or `--numeric` demands it.
    fn context(&self, n: u32) -> Result<Option<ArithContext>, Failure> {
        match self.p {
            Some(p) => Ok(Some(ArithContext::new(n, p)?)),
            None if self.numeric => Err(Failure::Usage("--numeric requires --p".into())),
            None => Ok(None),
        }
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn header(prefix: &str, r: usize) -> String {
    join(&(1..=r).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>(), ",")
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn rows_text(p: &GTPattern) -> String {
    p.a_rows()
        .iter()
        .zip(p.b_rows())
        .map(|(a, b)| format!("{}|{}", join(a, " "), join(b, " ")))
        .collect::<Vec<_>>()
        .join("|")
}

fn patterns(common: &Common, count_only: bool) -> Outcome {
    let twist = common.twist()?;
    let top = twist.top_row();
    if count_only {
        let count = count_patterns(&top)?;
        return Ok(match common.format {
            Format::Json | Format::Text => format!("{count}\n"),
            Format::Csv => format!("count\n{count}\n"),
        });
    }
    let all = enumerate_patterns(&top)?;
    let r = twist.rank();
    Ok(match common.format {
        Format::Json => render_json(&serde_json::to_value(&all).expect("serializable")),
        Format::Text => all.iter().map(|p| format!("{p}\n")).collect(),
        Format::Csv => {
            let mut out = format!("index,strict,{},{},rows\n", header("wgt_", r), header("k_", r));
            for (idx, p) in all.iter().enumerate() {
                let k = p.k()?;
                writeln!(out, "{idx},{},{},{},{}", p.is_strict(), join(&p.weight(), ","), join(&k, ","), rows_text(p))
                    .expect("string write");
            }
            out
        }
    })
}

fn tableaux(common: &Common) -> Outcome {
    let twist = common.twist()?;
    let r = twist.rank();
    let mut items = Vec::new();
    for p in enumerate_patterns(&twist.top_row())? {
        if p.is_strict() {
            let t = tableau_from_pattern(&p)?;
            let stats = tableau_stats(&t);
            items.push((t, stats));
        }
    }
    Ok(match common.format {
        Format::Json => {
            let list: Vec<Value> = items
                .iter()
                .map(|(t, s)| json!({"tableau": t, "stats": s}))
                .collect();
            render_json(&Value::Array(list))
        }
        Format::Text => items
            .iter()
            .map(|(t, s)| format!("{}str={} height={} barred={}\n\n", t.render(), s.str, s.height, s.barred))
            .collect(),
        Format::Csv => {
            let mut out = format!("index,{},str,height,barred,rows\n", header("wgt_", r));
            for (idx, (t, s)) in items.iter().enumerate() {
                let rows: Vec<String> = t.rows().iter().map(|row| join(row, " ")).collect();
                writeln!(out, "{idx},{},{},{},{},{}", join(&s.wgt, ","), s.str, s.height, s.barred, rows.join("|"))
                    .expect("string write");
            }
            out
        }
    })
}

fn hcoeff(common: &Common) -> Outcome {
    let twist = common.twist()?;
    let n = common.degree()?;
    let ctx = common.context(n)?;
    let ctx = if common.numeric { ctx } else { None };
    let table = h_table(&twist, n)?;
    let r = twist.rank();
    let numeric = |v| ctx.as_ref().map(|c| c.numeric_eval(v)).transpose();
    Ok(match common.format {
        Format::Json => {
            let mut value = serde_json::to_value(&table).expect("serializable");
            if let Some(ctx) = &ctx {
                let entries = value["entries"].as_array_mut().expect("entries array");
                for (entry, v) in entries.iter_mut().zip(table.entries.values()) {
                    let z = ctx.numeric_eval(v)?;
                    entry["numeric"] = json!([z.re, z.im]);
                }
            }
            render_json(&value)
        }
        Format::Text => {
            let mut out = String::new();
            for (k, v) in &table.entries {
                write!(out, "k = ({}): {v}", join(k, ",")).expect("string write");
                if let Some(z) = numeric(v)? {
                    write!(out, "  ~ {:.6} {:+.6}i", z.re, z.im).expect("string write");
                }
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut out = format!("{},value", header("k_", r));
            out.push_str(if ctx.is_some() { ",re,im\n" } else { "\n" });
            for (k, v) in &table.entries {
                write!(out, "{},\"{v}\"", join(k, ",")).expect("string write");
                if let Some(z) = numeric(v)? {
                    write!(out, ",{},{}", z.re, z.im).expect("string write");
                }
                out.push('\n');
            }
            out
        }
    })
}

fn character(common: &Common) -> Outcome {
    let twist = common.twist()?;
    let r = twist.rank();
    let ch = character_gt(&twist.lambda_partition())?;
    Ok(match common.format {
        Format::Json => render_json(&serde_json::to_value(&ch).expect("serializable")),
        Format::Text => format!("{ch}\n"),
        Format::Csv => {
            let mut out = format!("{},e_t,e_q,coeff\n", header("e_", r));
            for (exp, c) in ch.terms() {
                writeln!(out, "{},{c}", join(exp, ",")).expect("string write");
            }
            out
        }
    })
}

/// A verification summary: how much was checked and what failed.
struct Report {
    check: &'static str,
    checked: usize,
    mismatches: Vec<Value>,
}

fn verify(check: Check, common: &Common) -> Outcome {
    let report = match check {
        Check::Stable => {
            let twist = common.twist()?;
            let n = common.degree()?;
            let ctx = common.context(n)?;
            let rep = verify_stable_formula(&twist, n, ctx.as_ref())?;
            Report {
                check: "stable",
                checked: rep.checked,
                mismatches: rep.mismatches.iter().map(|m| serde_json::to_value(m).expect("serializable")).collect(),
            }
        }
        Check::HamelKing => {
            let res = verify_hamel_king(&common.twist()?)?;
            Report {
                check: "hamel-king",
                checked: 1,
                mismatches: if res.holds { vec![] } else { vec![json!({"residual": res.residual})] },
            }
        }
        Check::Cs => {
            let rep = cs_euler_identity(&common.twist()?)?;
            let mut mismatches = Vec::new();
            if !rep.part_a {
                mismatches.push(json!({"part": "a", "residual": rep.residual_a}));
            }
            if !rep.part_b {
                mismatches.push(json!({"part": "b", "residual": rep.residual_b}));
            }
            Report { check: "cs", checked: 2, mismatches }
        }
        Check::KSum | Check::TableauStats => {
            let twist = common.twist()?;
            let mut checked = 0;
            let mut mismatches = Vec::new();
            for p in enumerate_patterns(&twist.top_row())? {
                let ok = match check {
                    Check::KSum => verify_k_sum(&p),
                    _ if p.is_strict() => verify_tableau_stats(&p),
                    _ => continue,
                };
                checked += 1;
                if !ok {
                    mismatches.push(serde_json::to_value(&p).expect("serializable"));
                }
            }
            let check = if check == Check::KSum { "lemma3" } else { "lemma4" };
            Report { check, checked, mismatches }
        }
        Check::Gauss => {
            let n = common.degree()?;
            let p = common.p.ok_or_else(|| Failure::Usage("--p is required".into()))?;
            let ctx = ArithContext::new(n, p)?;
            let mut checked = 0;
            let mut mismatches = Vec::new();
            for t in 1..=2 {
                for c in 0..=5u32 {
                    for v in 0..=4u32 {
                        let exact = ctx.numeric_eval(&gauss_eval(t, i64::from(c), v, n))?;
                        let brute = ctx.gauss_brute(t, c, v)?;
                        checked += 1;
                        if (exact - brute).norm() > 1e-9 * (p as f64).powi(v as i32) {
                            mismatches.push(json!({"t": t, "c": c, "v": v, "exact": [exact.re, exact.im], "brute": [brute.re, brute.im]}));
                        }
                    }
                }
            }
            Report { check: "gauss", checked, mismatches }
        }
    };
    let passed = report.mismatches.is_empty();
    let body = match common.format {
        Format::Json => render_json(&json!({"checked": report.checked, "mismatches": report.mismatches})),
        Format::Csv => format!("check,checked,mismatches\n{},{},{}\n", report.check, report.checked, report.mismatches.len()),
        Format::Text => {
            let status = if passed { "PASS" } else { "FAIL" };
            format!("{} {status}: {} checked, {} mismatches\n", report.check, report.checked, report.mismatches.len())
        }
    };
    if passed {
        Ok(body)
    } else {
        Err(Failure::Verification(body))
    }
}

fn euler(m: &[i64], bound: u64, format: Format) -> Outcome {
    let table = euler_product_n1(m, bound)?;
    let r = m.len();
    Ok(match format {
        Format::Json => {
            let list: Vec<Value> = table
                .iter()
                .map(|(c, v)| json!({"c": c, "value": v.to_string()}))
                .collect();
            render_json(&json!({"m": m, "bound": bound, "coefficients": list}))
        }
        Format::Text => table
            .iter()
            .map(|(c, v)| format!("H({}) = {v}\n", join(c, ",")))
            .collect(),
        Format::Csv => {
            let mut out = format!("{},value\n", header("c_", r));
            for (c, v) in &table {
                writeln!(out, "{},{v}", join(c, ",")).expect("string write");
            }
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Patterns { common, count_only } => patterns(common, *count_only),
        Command::Tableaux { common } => tableaux(common),
        Command::Hcoeff { common } => hcoeff(common),
        Command::Character { common } => character(common),
        Command::Verify { check, common } => verify(*check, common),
        Command::Euler { m, bound, format } => euler(m, *bound, *format),
    };
    match outcome {
        Ok(body) => {
            print!("{body}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(body)) => {
            print!("{body}");
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
