use clap::{Parser, Subcommand, ValueEnum};
use ifl::classgroup::{general_class_group, quad_class_group, ClassGroupOptions, Policy};
use ifl::criteria::cache::Cache;
use ifl::criteria::report::CriterionReport;
use ifl::criteria::{analyze, repro, AnalyzeOptions};
use ifl::cubic::enumerate_cubic_fields;
use ifl::field::NumberField;
use ifl::lambda::{lambda_with, stickelberger_series, Twist, START};
use ifl::units::{e_of_f, fundamental_unit};
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ifl", version, about = "Non-freeness criteria over cyclotomic Z_3-extensions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Minkowski,
    Heuristic,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Minkowski => Policy::Minkowski,
            PolicyArg::Heuristic => Policy::Heuristic,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Full pipeline and criterion verdicts for Q(sqrt D).
    Analyze {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        levels: u32,
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
        #[arg(long, conflicts_with_all = ["table", "csv"])]
        json: bool,
        #[arg(long, conflicts_with = "csv")]
        table: bool,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        no_cache: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Cubic fields of discriminant D.
    CubicFields {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Lambda-invariant of Q(sqrt D).
    Lambda {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long)]
        prec: Option<u32>,
        #[arg(long, default_value = "auto")]
        twist: String,
    },
    /// Class group of a number field (or of Q(sqrt D) by reduced forms).
    ClassGroup {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "disc")]
        poly: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<i64>,
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Fundamental unit of a field of unit rank one.
    Unit {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// e(F) for every cubic field F of discriminant D.
    #[command(name = "eF")]
    Ef {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Restricted ramification checks over a real quadratic field.
    RealQuad {
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Reference computations.
    Repro {
        #[arg(value_parser = ["paper-examples"])]
        what: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print(v: &serde_json::Value) {
    out(&format!("{}\n", serde_json::to_string_pretty(v).expect("json")));
}

// A closed pipe (`| head`) is not an error.
fn out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn run(cmd: Cmd) -> ifl::Result<ExitCode> {
    match cmd {
        Cmd::Analyze { disc, p, levels, policy, json: _, table, csv, no_cache, seed } => {
            let opts = AnalyzeOptions { p, levels, policy: policy.map(Into::into), seed, ..Default::default() };
            let cache = Cache::from_env();
            let req = opts.request(disc);
            let cached = if no_cache { None } else { cache.get(&req)? };
            let report = match cached {
                Some(r) => r,
                None => {
                    let r = analyze(disc, &opts)?;
                    if !no_cache {
                        cache.put(&r)?;
                    }
                    r
                }
            };
            if table {
                out(&report.table());
            } else if csv {
                let mut s = format!("{}\n", CriterionReport::csv_header());
                for row in report.csv_rows() {
                    s += &format!("{row}\n");
                }
                out(&s);
            } else {
                out(&format!("{}\n", report.to_pretty_json()?));
            }
        }
        Cmd::CubicFields { disc } => {
            let fs = enumerate_cubic_fields(disc)?;
            let list: Vec<_> = fs
                .iter()
                .map(|c| {
                    json!({
                        "poly": c.field.poly().to_string(),
                        "form": [c.form.a, c.form.b, c.form.c, c.form.d],
                        "disc": c.field.discriminant().to_string(),
                        "index": c.field.index().to_string(),
                    })
                })
                .collect();
            print(&json!({ "disc": disc, "count": fs.len(), "fields": list }));
        }
        Cmd::Lambda { disc, p, level, prec, twist } => {
            let tw: Twist = twist.parse()?;
            let v = match (level, prec) {
                (None, None) => {
                    let r = lambda_with(disc, p, tw, START)?;
                    json!({
                        "disc": r.disc, "p": p, "lambda": r.lambda, "twist": r.twist,
                        "steps": r.steps, "valuations": r.valuations,
                    })
                }
                (n, nn) => {
                    let n = n.unwrap_or(START.0);
                    let nn = nn.unwrap_or(START.1 + 2 * n.saturating_sub(START.0));
                    let s = stickelberger_series(disc, p, n, nn, tw)?;
                    json!({
                        "disc": s.disc, "p": p, "lambda_reading": s.lambda_reading(),
                        "twist": s.twist, "level": n, "precision": nn,
                        "valuations": s.valuations(12),
                    })
                }
            };
            print(&v);
        }
        Cmd::ClassGroup { poly, disc, policy, seed } => {
            if let Some(d) = disc {
                let g = quad_class_group(d)?;
                print(&json!({
                    "disc": d, "invariants": g.invariants_u64(), "order": g.order().to_string(),
                    "sylow3": g.sylow_p(3).invariants_u64(), "certification": "exact",
                    "witnesses": g.witnesses,
                }));
            } else {
                let k = NumberField::parse(poly.as_deref().unwrap_or_default())?;
                let opts = ClassGroupOptions { policy: policy.map(Into::into), seed, ..Default::default() };
                let g = general_class_group(&k, &opts)?;
                print(&json!({
                    "poly": k.poly().to_string(),
                    "disc": k.discriminant().to_string(),
                    "invariants": g.group.invariants_u64(),
                    "order": g.order().to_string(),
                    "sylow3": g.group.sylow_p(3).invariants_u64(),
                    "certification": g.certification,
                    "policy": g.policy,
                    "factor_base": g.factor_base.len(),
                    "relations": g.relations.len(),
                    "trials": g.trials,
                    "seed": g.seed,
                    "seconds": g.seconds,
                }));
            }
        }
        Cmd::Unit { poly } => {
            let k = NumberField::parse(&poly)?;
            let u = fundamental_unit(&k)?;
            print(&json!({
                "poly": k.poly().to_string(),
                "unit": k.format_element(&u.element),
                "regulator": u.regulator,
                "regulator_error": u.regulator_error,
                "regulator_lower_bound": u.regulator_lower_bound,
                "certification": u.certification,
                "method": u.method,
            }));
        }
        Cmd::Ef { disc } => {
            let mut out = Vec::new();
            for c in enumerate_cubic_fields(disc)? {
                let k = &c.field;
                out.push(match e_of_f(k) {
                    Ok(e) => json!({
                        "poly": k.poly().to_string(), "e": e.e, "precision": e.precision,
                        "unit": k.format_element(&e.unit),
                    }),
                    Err(err) => json!({ "poly": k.poly().to_string(), "error": err.to_string() }),
                });
            }
            print(&json!({ "disc": disc, "fields": out }));
        }
        Cmd::RealQuad { d, p, primes } => {
            let k = ifl::units::real_quadratic(d)?;
            if primes.len() >= 3 {
                let r = ifl::ray::check_thm16(&k, &primes, p)?;
                print(&serde_json::to_value(&r)?);
                eprintln!("{:<6}{:<7}{:<13}{:<17}{}", "q", "inert", "q=-1 mod p", "q^2!=1 mod p^2", "X_q trivial");
                for f in &r.primes {
                    eprintln!(
                        "{:<6}{:<7}{:<13}{:<17}{}",
                        f.q,
                        f.inert,
                        f.minus_one_mod_p,
                        f.square_not_one_mod_p2,
                        f.x_q_trivial.map(|b| b.to_string()).unwrap_or_else(|| "-".into())
                    );
                }
                eprintln!("verdict: {}", if r.fires { "fires" } else { "does not fire" });
            } else {
                let g = ifl::ray::xs_finite_level(&k, &primes, p)?;
                let data = ifl::ray::ray_data_for(&k, &primes, p)?;
                print(&json!({
                    "field": k.poly().to_string(), "primes": primes, "p": p,
                    "xs_invariants": g.invariants_u64(), "local": data.local,
                    "note": "check_thm16 needs at least 3 primes",
                }));
            }
        }
        Cmd::Repro { what: _ } => {
            let res = repro::paper_examples()?;
            let mut s = format!("{:<8}{:<14}{:<16}{:<16}\n", "D", "item", "expected", "actual");
            for c in &res.checks {
                s += &format!(
                    "{:<8}{:<14}{:<16}{:<16}{}\n",
                    c.disc,
                    c.item,
                    c.expected,
                    c.actual,
                    if c.ok { "ok" } else { "MISMATCH" }
                );
            }
            out(&s);
            return Ok(if res.all_ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}
