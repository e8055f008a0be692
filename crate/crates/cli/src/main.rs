//! `latclass`: command-line access to the lattice classification toolkit.
//!
//! Output goes to stdout (or `--out`), diagnostics to stderr. Exit code 0 on
//! success, 1 on domain errors or failed checks, 2 on usage errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use latclass::checks::Suite;
use latclass::classify::{classify_rank1, classify_rank2, family_name, Family};
use latclass::embeddings::{genus_match, GenusTag};
use latclass::expr::parse_lattice;
use latclass::finite_form::{fmt_q, DEFAULT_GROUP_BOUND};
use latclass::involutions::DiscriminantAction;
use latclass::mukai::{degree_two_example, moduli_invariants, mukai_pairing, polarized_example};
use latclass::walls::{count_chambers, wall_pairs, walls_in_t};
use latclass::{Error, Lattice};

#[derive(Parser)]
#[command(name = "latclass", version, about = "Even lattices, involutions and wall divisors for K3^[n]-type lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Enumeration bound for finite groups.
    #[arg(long, global = true, env = "LATCLASS_BOUND")]
    bound: Option<u64>,
    /// Seed for the randomized parts of the check suite.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Example {
    /// Polarization of square 2(n-1) twisted by a class from a second copy of U.
    Polarized,
    /// Degree-two surface with v_B^2 = 8.
    DegreeTwo,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant form of a lattice expression.
    Discr { expr: String },
    /// Classify invariant/co-invariant pairs.
    Classify {
        #[arg(long)]
        n: i64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        rank: Option<u8>,
    },
    /// Numerical wall pairs (square, divisibility).
    Walls {
        #[arg(long)]
        n: i64,
    },
    /// Walls, chambers and orbits for a family such as `U(2),rho_2`.
    Chambers {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        family: String,
    },
    /// Moduli of twisted sheaves on the worked examples.
    Twisted {
        #[arg(long, value_enum)]
        example: Example,
        #[arg(long)]
        n: Option<i64>,
    },
    /// Run the acceptance suite.
    Check {
        #[arg(long, required_unless_present = "criterion")]
        all: bool,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
        criterion: Option<u8>,
    },
}

struct Report {
    command: &'static str,
    params: Value,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    exhaustive: Option<bool>,
    separation: Option<bool>,
    ok: bool,
}

impl Report {
    fn new(command: &'static str, params: Value, columns: Vec<&'static str>) -> Self {
        Report { command, params, columns, rows: Vec::new(), exhaustive: None, separation: None, ok: true }
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect::<Map<_, _>>()))
            .collect();
        let v = json!({
            "command": self.command,
            "params": self.params,
            "rows": rows,
            "flags": { "exhaustive": self.exhaustive, "separation": self.separation },
        });
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }

    fn tsv(&self) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        };
        let mut out = self.columns.join("\t") + "\n";
        for r in &self.rows {
            out += &r.iter().map(cell).collect::<Vec<_>>().join("\t");
            out.push('\n');
        }
        out
    }
}

fn bound(cli: &Cli) -> u64 {
    cli.bound.unwrap_or(DEFAULT_GROUP_BOUND)
}

fn discr(expr: &str, bound: u64) -> Result<Report, Error> {
    let l = parse_lattice(expr)?.lattice()?;
    let f = l.discriminant_group();
    let sig = l.signature();
    let mut r = Report::new(
        "discr",
        json!({ "expr": expr, "rank": l.rank(), "signature": [sig.positive, sig.negative], "determinant": l.determinant().to_string() }),
        vec!["generator", "order", "q_row"],
    );
    for i in 0..f.ngens() {
        let row: Vec<String> = f.gram().row(i).iter().map(fmt_q).collect();
        r.rows.push(vec![json!(i), json!(f.orders()[i]), json!(row.join(","))]);
    }
    // the form must be readable off a consistent group
    f.elements(bound)?;
    Ok(r)
}

fn family_row(f: &Family) -> Vec<Value> {
    vec![
        json!(f.rank),
        json!(f.action.to_string()),
        json!(f.label),
        json!(family_name(f)),
        json!(f.t_name),
        json!(f.s_name),
        json!(f.verified),
        json!(f.representative.is_some()),
        json!(21 - f.rank),
    ]
}

fn families(n: i64, rank: Option<u8>, bound: u64) -> Result<Vec<Family>, Error> {
    let mut out = Vec::new();
    if rank != Some(2) {
        out.extend(classify_rank1(n, bound)?.into_iter().filter_map(|r| r.family));
    }
    if rank != Some(1) {
        for action in [DiscriminantAction::Plus, DiscriminantAction::Minus] {
            out.extend(classify_rank2(n, action, bound)?);
        }
    }
    Ok(out)
}

fn classify(n: i64, rank: Option<u8>, bound: u64) -> Result<Report, Error> {
    let mut r = Report::new(
        "classify",
        json!({ "n": n, "rank": rank }),
        vec!["rank", "action", "label", "family", "T", "S", "verified", "representative", "dimension"],
    );
    let fams = families(n, rank, bound)?;
    r.exhaustive = Some(fams.iter().all(|f| f.verified));
    r.rows = fams.iter().map(family_row).collect();
    Ok(r)
}

fn walls(n: i64) -> Result<Report, Error> {
    let mut r = Report::new("walls", json!({ "n": n }), vec!["square", "divisibility"]);
    r.rows = wall_pairs(n)?.into_iter().map(|p| vec![json!(p.square), json!(p.divisibility)]).collect();
    r.exhaustive = Some(true);
    Ok(r)
}

fn chambers(n: i64, name: &str, bound: u64) -> Result<Report, Error> {
    let fams = families(n, None, bound)?;
    let Some(f) = fams.iter().find(|f| family_name(f) == name) else {
        let mut names: Vec<String> = fams.iter().map(family_name).collect();
        names.dedup();
        return Err(Error::InvalidParameter(format!("no family {name:?} for n = {n}; available: {}", names.join(" | "))));
    };
    let rep = f.representative.as_ref().ok_or_else(|| Error::Internal(format!("{name} has no explicit representative")))?;
    let search = walls_in_t(&rep.t, &wall_pairs(n)?, None)?;
    let report = count_chambers(&rep.t, &search)?;
    let mut r = Report::new(
        "chambers",
        json!({ "n": n, "family": name }),
        vec!["family", "gram", "walls", "chambers", "orbits"],
    );
    let walls: Vec<String> = report.walls.iter().map(|w| w.pair.to_string()).collect();
    r.rows.push(vec![
        json!(name),
        json!(format!("{:?}", report.gram)),
        json!(walls.join(" ")),
        json!(report.chambers),
        json!(report.orbits.to_string()),
    ]);
    r.exhaustive = Some(report.exhaustive);
    r.separation = Some(report.separation);
    Ok(r)
}

fn twisted(example: Example, n: Option<i64>, bound: u64) -> Result<Report, Error> {
    let (data, vb, expected) = match example {
        Example::Polarized => {
            let n = n.ok_or_else(|| Error::InvalidParameter("--n is required for the polarized example".into()))?;
            let (data, vb) = polarized_example(n)?;
            (data, vb, format!("U + U(2) + 2*E8 + <{}>", -2 * (n - 1)))
        }
        Example::DegreeTwo => {
            if n.is_some_and(|n| n != 5) {
                return Err(Error::InvalidParameter("the degree-two example has n = 5".into()));
            }
            let (data, vb) = degree_two_example()?;
            (data, vb, "2*U + 2*E8 + <-8>".into())
        }
    };
    let inv = moduli_invariants(&data, &vb)?;
    let expected_lat = parse_lattice(&expected)?.lattice()?;
    let trans = if genus_match(&inv.transcendental, &GenusTag::of(&expected_lat), bound)? {
        expected
    } else {
        let t = GenusTag::of(&inv.transcendental);
        format!("genus {} {}", t.signature, t.form)
    };
    let name = match example {
        Example::Polarized => "polarized",
        Example::DegreeTwo => "degree-two",
    };
    let mut r = Report::new(
        "twisted",
        json!({ "example": name, "n": inv.n }),
        vec!["n", "v_B", "v_B_square", "picard", "picard_is_U(2)", "transcendental", "kernel_index"],
    );
    let u2 = genus_match(&inv.picard, &GenusTag::of(&Lattice::scaled_u(2)), bound)?;
    r.rows.push(vec![
        json!(inv.n),
        json!(vb.to_string()),
        json!(mukai_pairing(&vb, &vb).to_string()),
        json!(inv.picard.gram_string()),
        json!(u2),
        json!(trans),
        json!(inv.kernel_index),
    ]);
    Ok(r)
}

fn check(criterion: Option<u8>, bound: u64, seed: u64) -> Result<Report, Error> {
    let mut suite = Suite::new(bound, seed);
    let outcomes = match criterion {
        Some(id) => vec![suite.run(id)?],
        None => suite.run_all(),
    };
    let mut r = Report::new("check", json!({ "criterion": criterion, "bound": bound, "seed": seed }), vec!["criterion", "status", "name", "detail"]);
    for o in &outcomes {
        r.rows.push(vec![
            json!(o.id),
            json!(if o.passed { "PASS" } else { "FAIL" }),
            json!(o.name),
            json!(o.detail.join("; ")),
        ]);
    }
    r.ok = outcomes.iter().all(|o| o.passed);
    Ok(r)
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let b = bound(cli);
    match &cli.command {
        Command::Discr { expr } => discr(expr, b),
        Command::Classify { n, rank } => classify(*n, *rank, b),
        Command::Walls { n } => walls(*n),
        Command::Chambers { n, family } => chambers(*n, family, b),
        Command::Twisted { example, n } => twisted(*example, *n, b),
        Command::Check { criterion, .. } => check(*criterion, b, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match cli.format {
        Format::Json => report.json(),
        Format::Tsv => report.tsv(),
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
