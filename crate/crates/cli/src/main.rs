mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use glq_stab::branching::{count_zigzag, decompose_perm_module, restrict_step, Decomposition};
use glq_stab::degrees::{degree_at, gl_order, sum_degree_squares_check};
use glq_stab::json::big_number;
use glq_stab::label::enumerate_labels;
use glq_stab::stability::{check_h_bijection, empirical_stability_degree, support_bounds_check};
use glq_stab::verify::{degrees_suite, CriterionResult, Outcome, Scope, Status, Suite};
use glq_stab::{oracle, Error, LabelFunction};
use num_bigint::BigUint;
use serde_json::{json, Value};

use render::{Format, Report};

#[derive(Parser)]
#[command(name = "glq-stab", version, about = "Multiplicities of GL_n(F_q) permutation modules and their stability")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Refuse inputs outside the range where results are guaranteed.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, env = "GLQ_STAB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose k[G_n/G_{n−m}] into irreducibles.
    Decompose {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u64,
        /// Defaults to 3m.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Decompositions for n in [m, n_max] and the observed stability onset.
    Stability {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n_max: u32,
    },
    /// Run the acceptance checks.
    Verify {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
        /// Run only these criteria (1 to 10).
        #[arg(long)]
        criterion: Vec<u8>,
        /// `degrees`: only the Σ deg² census.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        q: Vec<u64>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Count zigzag paths from one label to another.
    Zigzag {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        q: u64,
        /// Defaults to the difference of norms.
        #[arg(long)]
        m: Option<u32>,
    },
    /// One-step restriction of an irreducible to G_{n−1}.
    Restrict {
        #[arg(long)]
        label: String,
        #[arg(long)]
        q: u64,
    },
    /// Irreducibles of GL_n(F_q): shapes, class sizes and degrees.
    Census {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
    },
    /// Compare multiplicities of a stable label at ℓ and ℓ + 1.
    Hcheck {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "")]
        label: String,
    },
    /// Brute-force counts over explicit finite fields (q ≤ 9).
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    DoubleCosets {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u64,
    },
    Weakstab {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r_max: u32,
        #[arg(long)]
        q: u64,
    },
    Classes {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
    },
    VicCount {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("{}", json!({"error": "threads", "message": e.to_string()}));
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cli.output {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            report.write(cli.format, &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write(cli.format, &mut lock).and_then(|_| lock.flush())
        }
    };
    if let Err(e) = written {
        eprintln!("{}", json!({"error": "io", "message": e.to_string()}));
        return ExitCode::from(2);
    }
    if report.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: &Cli) -> glq_stab::Result<Report> {
    match &cli.command {
        Command::Decompose { m, q, n } => decompose(*m, *q, n.unwrap_or(3 * m)),
        Command::Stability { m, q, n_max } => stability(*m, *q, *n_max),
        Command::Verify {
            full,
            criterion,
            suite,
            q,
            n_max,
            ..
        } => verify(*full, criterion, suite.as_deref(), q, *n_max),
        Command::Zigzag { from, to, q, m } => {
            let nu = LabelFunction::parse(from)?;
            let mu = LabelFunction::parse(to)?;
            let m = match m {
                Some(m) => *m,
                None => u32::try_from(mu.norm().checked_sub(nu.norm()).ok_or_else(|| {
                    Error::SizeMismatch(format!("‖{to}‖ < ‖{from}‖"))
                })?)
                .map_err(|_| Error::BadParameters("norm difference too large".into()))?,
            };
            Ok(Report::value(big_number(&count_zigzag(&nu, &mu, m, *q)?)))
        }
        Command::Restrict { label, q } => restrict(label, *q),
        Command::Census { n, q } => census(*n, *q),
        Command::Hcheck { m, l, q, label } => {
            let lambda = LabelFunction::parse(label)?;
            let h = check_h_bijection(*m, *l, *q, &lambda, cli.strict)?;
            let mut r = Report::new(
                json!({
                    "m": m, "l": l, "q": q, "label": lambda.to_string(),
                    "at_l": big_number(&h.at_l), "at_l_plus_1": big_number(&h.at_l1),
                    "holds": h.holds, "below_threshold": h.below_threshold,
                }),
                &["at_l", "at_l_plus_1", "holds", "below_threshold"],
            );
            r.rows.push(vec![
                h.at_l.to_string(),
                h.at_l1.to_string(),
                h.holds.to_string(),
                h.below_threshold.to_string(),
            ]);
            if h.below_threshold {
                r.notes.push(format!("warning: ℓ = {l} < 3m = {}; equality is not guaranteed", 3 * m));
            }
            r.failed = !h.holds && !h.below_threshold;
            Ok(r)
        }
        Command::Oracle { command } => oracle_cmd(command),
    }
}

fn decomposition_rows(d: &Decomposition) -> Vec<Vec<String>> {
    d.entries
        .iter()
        .map(|e| {
            vec![
                e.shape.to_string(),
                e.multiplicity.to_string(),
                e.class_size.to_string(),
                e.degree.to_string(),
            ]
        })
        .collect()
}

fn decompose(m: u32, q: u64, n: u32) -> glq_stab::Result<Report> {
    let d = decompose_perm_module(n, m, q)?;
    let dim_ok = d.dim() == gl_order(n, q) / gl_order(n - m, q);
    let support_ok = n < 3 * m || support_bounds_check(&d);
    let (oracle_status, oracle_value) = match oracle::double_cosets_gl(n, m, q) {
        Ok(c) => (if d.sum_sq() == c.into() { "PASS" } else { "FAIL" }, Some(c)),
        Err(Error::GuardExceeded(_)) | Err(Error::BadParameters(_)) => ("SKIPPED", None),
        Err(e) => return Err(e),
    };
    let mut json = d.to_json();
    json["verification"] = json!({
        "dim_identity": if dim_ok { "PASS" } else { "FAIL" },
        "oracle_sum_sq": oracle_status,
        "oracle_double_cosets": oracle_value,
        "support_bounds": if support_ok { "PASS" } else { "FAIL" },
    });
    let mut r = Report::new(json, &["shape", "mult", "class_size", "degree"]);
    r.rows = decomposition_rows(&d);
    r.notes.push(format!("n = {n}, m = {m}, q = {q}"));
    r.notes.push(format!("Σ c²·class = {}   oracle: {oracle_status}", d.sum_sq()));
    r.notes.push(format!(
        "Σ c·deg·class = {}   |G_n|/|G_(n−m)|: {}",
        d.dim(),
        if dim_ok { "PASS" } else { "FAIL" }
    ));
    r.failed = !dim_ok || !support_ok || oracle_status == "FAIL";
    Ok(r)
}

fn stability(m: u32, q: u64, n_max: u32) -> glq_stab::Result<Report> {
    let rep = empirical_stability_degree(m, q, n_max)?;
    let ns: Vec<String> = rep.per_n.iter().map(|d| format!("n={}", d.n)).collect();
    let mut header = vec!["shape".to_string()];
    header.extend(ns);
    let mut r = Report::new(rep.to_json(), &[]);
    r.header = header;
    r.rows = rep
        .matrix()
        .into_iter()
        .map(|(s, row)| {
            let mut cells = vec![s.to_string()];
            cells.extend(row.iter().map(|c| c.to_string()));
            cells
        })
        .collect();
    r.notes.push(format!(
        "observed stability degree {} (bound 3m = {}): {}",
        rep.observed_stability_degree,
        3 * m,
        if rep.bound_satisfied { "PASS" } else { "FAIL" }
    ));
    r.failed = !rep.bound_satisfied;
    Ok(r)
}

fn verify(full: bool, criteria: &[u8], suite: Option<&str>, qs: &[u64], n_max: Option<u32>) -> glq_stab::Result<Report> {
    let results: Vec<CriterionResult> = match suite {
        Some("degrees") => {
            let qs = if qs.is_empty() { vec![2, 3] } else { qs.to_vec() };
            vec![degrees_suite(&qs, n_max.unwrap_or(4))]
        }
        Some(other) => return Err(Error::BadParameters(format!("unknown suite {other:?}; known: degrees"))),
        None => {
            let s = Suite::new(if full { Scope::Full } else { Scope::Quick });
            if criteria.is_empty() {
                s.run_all()
            } else {
                criteria.iter().map(|&id| s.run(id)).collect::<glq_stab::Result<_>>()?
            }
        }
    };
    let mut lines = Vec::new();
    let mut r = Report::new(Value::Null, &["criterion", "status", "check", "detail"]);
    for c in &results {
        for check in &c.checks {
            let (status, detail) = match &check.outcome {
                Outcome::Pass => ("PASS", ""),
                Outcome::Fail(d) => ("FAIL", d.as_str()),
                Outcome::Skipped(d) => ("SKIPPED", d.as_str()),
            };
            lines.push(json!({"criterion": c.id, "check": check.what, "status": status, "detail": detail}));
            r.rows.push(vec![c.id.to_string(), status.into(), check.what.clone(), detail.into()]);
        }
        lines.push(json!({
            "criterion": c.id, "title": c.title, "status": c.status().to_string(),
            "elapsed_ms": c.elapsed.as_millis() as u64,
        }));
        r.notes.push(c.summary_line());
    }
    r.failed = results.iter().any(|c| c.status() == Status::Fail);
    r.json = Value::Array(results.iter().map(CriterionResult::to_json).collect());
    r.json_lines = Some(lines);
    Ok(r)
}

fn restrict(label: &str, q: u64) -> glq_stab::Result<Report> {
    let mu = LabelFunction::parse(label)?;
    let entries = restrict_step(&mu, q)?;
    let json = Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "label": e.label.to_string(),
                    "shape": e.shape.to_json(),
                    "mult": big_number(&e.multiplicity),
                    "class_size": big_number(&e.class_size),
                })
            })
            .collect(),
    );
    let mut r = Report::new(json, &["label", "mult", "class_size"]);
    r.rows = entries
        .iter()
        .map(|e| vec![e.label.to_string(), e.multiplicity.to_string(), e.class_size.to_string()])
        .collect();
    Ok(r)
}

fn census(n: u32, q: u64) -> glq_stab::Result<Report> {
    let labels = enumerate_labels(n, q)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (shape, class) in &labels {
        let d = degree_at(shape, q)?;
        rows.push(vec![shape.to_string(), class.to_string(), d.to_string()]);
        entries.push(json!({"shape": shape.to_json(), "class_size": big_number(class), "degree": d.to_string()}));
    }
    let check = match sum_degree_squares_check(n, q) {
        Ok(ok) => Some(ok),
        Err(Error::GuardExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    let classes: BigUint = labels.iter().map(|(_, c)| c.clone()).sum();
    let mut r = Report::new(
        json!({
            "n": n, "q": q, "entries": entries,
            "irreducibles": big_number(&classes),
            "sum_deg_sq_check": check.map_or("SKIPPED", |ok| if ok { "PASS" } else { "FAIL" }),
        }),
        &["shape", "class_size", "degree"],
    );
    r.rows = rows;
    r.notes.push(format!("{} shapes, {classes} irreducibles", labels.len()));
    r.failed = check == Some(false);
    Ok(r)
}

fn oracle_cmd(c: &OracleCommand) -> glq_stab::Result<Report> {
    match *c {
        OracleCommand::DoubleCosets { n, m, q } => Ok(Report::value(oracle::double_cosets_gl(n, m, q)?.into())),
        OracleCommand::Classes { n, q } => Ok(Report::value(oracle::conjugacy_class_count(n, q)?.into())),
        OracleCommand::VicCount { m, n, q } => Ok(Report::value(oracle::vic_count(m, n, q)?.into())),
        OracleCommand::Weakstab { l, m, r_max, q } => {
            let r_min = m.saturating_sub(l);
            if r_max < r_min {
                return Err(Error::BadParameters(format!("r_max = {r_max} < m − ℓ = {r_min}")));
            }
            let threshold = m + m.min(l);
            let mut values = Vec::new();
            let mut rep = Report::new(Value::Null, &["r", "value", "threshold_met"]);
            for r in r_min..=r_max {
                let v = oracle::weakstab_cosets(l, m, r, q)?;
                values.push(json!({"r": r, "value": v, "threshold_met": r >= threshold}));
                rep.rows.push(vec![r.to_string(), v.to_string(), (r >= threshold).to_string()]);
            }
            rep.json = json!({"l": l, "m": m, "q": q, "threshold": threshold, "values": values});
            Ok(rep)
        }
    }
}
