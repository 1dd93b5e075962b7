//! `intertwine`: construct, transform and verify matroids given as cyclic-flat documents.
//!
//! Documents and reports go to stdout, diagnostics to stderr. Exit status is
//! 0 for success or a true verdict, 1 for a false verdict, 2 for bad input.

mod input;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use intertwine_core::constructions::{self, dual, direct_sum, free_coextension, free_extension, lift, truncate};
use intertwine_core::document::{parse_documents, serialize, serialize_bases, serialize_report};
use intertwine_core::fixtures;
use intertwine_core::intertwine::{construct_ch_variant, construct_intertwine, derive_params, ChFamily, Mode};
use intertwine_core::iso::is_isomorphic;
use intertwine_core::verification::intertwine::labelled_witness_holds;
use intertwine_core::verification::{
    connectivity, has_minor, is_transversal_mi, obtainability_closure, verify_intertwine, VerificationReport,
};
use intertwine_core::{Matroid, RankTable};

use input::{is_axiom_failure, labels_to_set, load, load_matroid, read_source};

/// Sources are file paths, `-` for stdin, or `fixture:<id>` such as `fixture:uniform(2,4)`.
#[derive(Debug, Parser)]
#[command(name = "intertwine", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Labelled,
    Unlabelled,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the intertwine of two matroids.
    Construct(ConstructArgs),
    /// Decide whether M is an intertwine of M1 and M2.
    Verify {
        m: String,
        m1: String,
        m2: String,
        /// Require minors with the same labels.
        #[arg(long)]
        labelled: bool,
    },
    /// Search for a minor, or replay a given witness.
    Minor {
        host: String,
        target: String,
        #[arg(long)]
        labelled: bool,
        /// Witness to replay: deleted labels.
        #[arg(long, value_delimiter = ',')]
        delete: Option<Vec<String>>,
        /// Witness to replay: contracted labels.
        #[arg(long, value_delimiter = ',')]
        contract: Option<Vec<String>>,
    },
    /// Check a property of one matroid.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        m: String,
        /// For `connectivity`: the Tutte connectivity required.
        #[arg(long, default_value_t = 2)]
        at_least: usize,
    },
    /// Apply a construction and print the result.
    Op {
        #[command(subcommand)]
        op: OpKind,
    },
    /// Test two matroids for isomorphism.
    Iso { a: String, b: String },
    /// Print the fixture catalog.
    Catalog {
        /// Emit bases documents where the ground set allows.
        #[arg(long)]
        bases: bool,
    },
    /// Matroids reachable from a seed by single-element moves within a size cap.
    Closure {
        seed: String,
        #[arg(long)]
        cap: usize,
        /// Report whether this matroid is reachable (up to isomorphism).
        #[arg(long)]
        contains: Option<String>,
        /// Print every member.
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Debug, Args)]
struct ConstructArgs {
    m1: String,
    m2: String,
    /// Labels of S1', comma separated.
    #[arg(long, value_delimiter = ',')]
    s1: Vec<String>,
    /// Labels of S2', comma separated.
    #[arg(long, value_delimiter = ',')]
    s2: Vec<String>,
    /// Rank of the result; defaults to the least admissible value.
    #[arg(short, long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "labelled")]
    mode: ModeArg,
    /// Install this many circuit-hyperplanes on T1 ∪ T2.
    #[arg(long)]
    ch: Option<usize>,
    #[arg(long)]
    name: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Axioms,
    Transversal,
    Connectivity,
    CircuitHyperplanes,
    FiSets,
}

#[derive(Debug, Subcommand)]
enum OpKind {
    Dual { m: String },
    Sum { a: String, b: String },
    /// Free extension by new labels.
    Extend {
        m: String,
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
    },
    /// Free coextension by new labels.
    Coextend {
        m: String,
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
    },
    Truncate { m: String, i: usize },
    Lift { m: String, i: usize },
    /// `M \ delete / contract`.
    Minor {
        m: String,
        #[arg(long, value_delimiter = ',')]
        delete: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        contract: Vec<String>,
    },
}

fn verdict(v: bool) -> ExitCode {
    ExitCode::from(if v { 0 } else { 1 })
}

fn print_doc(m: &Matroid, name: Option<&str>) {
    print!("{}", serialize(m, name));
}

fn set_text(m: &Matroid, s: intertwine_core::ElementSet) -> String {
    m.labels_of(s).join(" ")
}

fn construct(args: ConstructArgs) -> Result<ExitCode> {
    let ConstructArgs { m1, m2, s1, s2, k, mode, ch, name } = args;
    let (a, b) = (load_matroid(&m1)?, load_matroid(&m2)?);
    let s1p = labels_to_set(&a, &s1, "--s1")?;
    let s2p = labels_to_set(&b, &s2, "--s2")?;
    let k = k.unwrap_or_else(|| intertwine_core::intertwine::min_k(&a, s1p, &b, s2p));
    let mode = match mode {
        ModeArg::Labelled => Mode::Labelled,
        ModeArg::Unlabelled => Mode::Unlabelled,
    };
    let p = derive_params(&a, s1p, &b, s2p, k, mode)?;
    let mut m = construct_intertwine(&p)?;
    if let Some(count) = ch {
        let family = ChFamily::greedy(p.t1_set().union(p.t2_set()), k, count)?;
        m = construct_ch_variant(&m, &p, &family)?;
    }
    let h = p.hypotheses;
    println!("# k {k}, |T1| {}, |T2| {}", p.t1.len(), p.t2.len());
    println!(
        "# labelled hypotheses {}, unlabelled structural hypotheses {}",
        h.labelled_theorem(),
        h.unlabelled_theorem()
    );
    print_doc(&m, name.as_deref());
    Ok(ExitCode::SUCCESS)
}

fn minor_cmd(host: &str, target: &str, labelled: bool, del: Option<Vec<String>>, con: Option<Vec<String>>) -> Result<ExitCode> {
    let (h, t) = (load_matroid(host)?, load_matroid(target)?);
    let start = Instant::now();
    let mut r = VerificationReport::default();
    if del.is_some() || con.is_some() {
        let d = labels_to_set(&h, &del.unwrap_or_default(), "--delete")?;
        let c = labels_to_set(&h, &con.unwrap_or_default(), "--contract")?;
        let ok = if labelled {
            labelled_witness_holds(&h, &t, d, c)?
        } else {
            is_isomorphic(&constructions::minor(&h, d, c)?, &t).is_some()
        };
        let evidence = format!("delete {{{}}} contract {{{}}}", set_text(&h, d), set_text(&h, c));
        r.push("witness replays", ok, evidence, None);
        r.verdict = ok;
    } else {
        let w = has_minor(&h, &t, labelled)?;
        let evidence = match &w {
            Some(w) => format!("delete {{{}}} contract {{{}}}", w.deleted_labels(&h).join(","), w.contracted_labels(&h).join(",")),
            None => "search exhausted".to_string(),
        };
        r.verdict = w.is_some();
        r.push("has minor", w.is_some(), evidence, w);
    }
    r.elapsed = start.elapsed();
    print!("{}", serialize_report("minor", Some(&h), &r));
    Ok(verdict(r.verdict))
}

fn check(what: CheckKind, src: &str, at_least: usize) -> Result<ExitCode> {
    let start = Instant::now();
    let mut r = VerificationReport::default();
    let name = match what {
        CheckKind::Axioms => "axioms",
        CheckKind::Transversal => "transversal",
        CheckKind::Connectivity => "connectivity",
        CheckKind::CircuitHyperplanes => "circuit-hyperplanes",
        CheckKind::FiSets => "fi-sets",
    };
    if let CheckKind::Axioms = what {
        let result = if src.starts_with("fixture:") {
            load(src).map(|d| vec![d])
        } else {
            let text = read_source(src)?;
            match parse_documents(&text) {
                Ok(docs) => Ok(docs),
                Err(e) if is_axiom_failure(&e) => {
                    r.push("presentation", false, e.to_string(), None);
                    r.verdict = false;
                    r.elapsed = start.elapsed();
                    print!("{}", serialize_report(name, None, &r));
                    return Ok(verdict(false));
                }
                Err(e) => Err(anyhow::Error::from(e).context(format!("in `{src}`"))),
            }
        };
        let docs = result?;
        if docs.is_empty() {
            bail!("`{src}` holds no documents");
        }
        r.verdict = true;
        for d in &docs {
            let m = &d.matroid;
            let label = d.name.clone().unwrap_or_else(|| "unnamed".into());
            r.push(format!("{label} presentation"), true, format!("{} cyclic flats on {} elements", m.flats().len(), m.ground_size()), None);
            if m.ground_size() <= 20 {
                let ok = RankTable::from_oracle(m).and_then(|t| t.check_matroid()).is_ok();
                r.verdict &= ok;
                r.push(format!("{label} rank function"), ok, format!("scanned all 2^{} subsets", m.ground_size()), None);
            }
        }
        r.elapsed = start.elapsed();
        print!("{}", serialize_report(name, None, &r));
        return Ok(verdict(r.verdict));
    }

    let m = load_matroid(src)?;
    match what {
        CheckKind::Axioms => unreachable!(),
        CheckKind::Transversal => {
            let v = is_transversal_mi(&m)?;
            let evidence = match &v.violation {
                None => "every antichain of cyclic flats satisfies the inequality".to_string(),
                Some(x) => {
                    let sets: Vec<String> = x.antichain.iter().map(|f| format!("{{{}}}", set_text(&m, *f))).collect();
                    format!("antichain {} deficit {}", sets.join(" "), x.deficit())
                }
            };
            r.push("mason-ingleton", v.transversal(), evidence, None);
            r.add_counter("antichains", v.antichains_checked);
            r.verdict = v.transversal();
        }
        CheckKind::Connectivity => {
            let c = connectivity(&m)?;
            let lambda = c.lambda.map_or("none".to_string(), |l| l.to_string());
            let ok = c.lambda.is_none_or(|l| l >= at_least);
            let mut ev = format!("lambda {lambda}");
            if let Some(s) = c.lambda_side {
                write!(ev, " side {{{}}}", set_text(&m, s)).unwrap();
            }
            r.push(format!("{at_least}-connected"), ok, ev, None);
            r.push("vertical connectivity", true, format!("kappa {}", c.kappa), None);
            let ev = match c.flat_cover {
                Some((a, b)) => format!("covered by {{{}}} and {{{}}}", set_text(&m, a), set_text(&m, b)),
                None => "no two proper flats cover E".into(),
            };
            r.push("rounded", c.rounded, ev, None);
            r.verdict = ok;
        }
        CheckKind::CircuitHyperplanes => {
            let chs = m.circuit_hyperplanes();
            for h in &chs {
                r.push("circuit-hyperplane", true, format!("{{{}}}", set_text(&m, *h)), None);
            }
            r.add_counter("circuit_hyperplanes", chs.len() as u64);
            r.verdict = true;
        }
        CheckKind::FiSets => {
            r.push("FI", true, format!("{{{}}}", set_text(&m, m.fi_set())), None);
            r.push("FI*", true, format!("{{{}}}", set_text(&m, m.fi_dual_set())), None);
            r.verdict = true;
        }
    }
    r.elapsed = start.elapsed();
    print!("{}", serialize_report(name, None, &r));
    Ok(verdict(r.verdict))
}

fn op(kind: OpKind) -> Result<ExitCode> {
    let out = match kind {
        OpKind::Dual { m } => dual(&load_matroid(&m)?),
        OpKind::Sum { a, b } => direct_sum(&load_matroid(&a)?, &load_matroid(&b)?)?,
        OpKind::Extend { m, labels } => free_extension(&load_matroid(&m)?, &labels)?,
        OpKind::Coextend { m, labels } => free_coextension(&load_matroid(&m)?, &labels)?,
        OpKind::Truncate { m, i } => truncate(&load_matroid(&m)?, i)?,
        OpKind::Lift { m, i } => lift(&load_matroid(&m)?, i)?,
        OpKind::Minor { m, delete, contract } => {
            let m = load_matroid(&m)?;
            let d = labels_to_set(&m, &delete, "--delete")?;
            let c = labels_to_set(&m, &contract, "--contract")?;
            constructions::minor(&m, d, c)?
        }
    };
    print_doc(&out, None);
    Ok(ExitCode::SUCCESS)
}

fn iso(a: &str, b: &str) -> Result<ExitCode> {
    let (x, y) = (load_matroid(a)?, load_matroid(b)?);
    let start = Instant::now();
    let mut r = VerificationReport::default();
    match is_isomorphic(&x, &y) {
        Some(map) => {
            let pairs: Vec<String> = map.iter().enumerate().map(|(i, &j)| format!("{}={}", x.label(i), y.label(j))).collect();
            r.push("isomorphic", true, pairs.join(" "), None);
            r.verdict = true;
        }
        None => r.push("isomorphic", false, "no bijection preserves the ranked cyclic flats", None),
    }
    r.elapsed = start.elapsed();
    print!("{}", serialize_report("iso", None, &r));
    Ok(verdict(r.verdict))
}

fn closure(seed: &str, cap: usize, contains: Option<&str>, emit: bool) -> Result<ExitCode> {
    let m = load_matroid(seed)?;
    let start = Instant::now();
    let c = obtainability_closure(&m, cap)?;
    let mut r = VerificationReport::default();
    r.add_counter("members", c.len() as u64);
    r.verdict = true;
    if let Some(t) = contains {
        let t = load_matroid(t)?;
        let hit = c.contains(&t)?;
        let ev = format!("{} members with at most {cap} elements", c.len());
        r.push("reachable", hit, ev, None);
        r.verdict = hit;
    }
    r.elapsed = start.elapsed();
    print!("{}", serialize_report("closure", None, &r));
    if emit {
        for (i, m) in c.members().into_iter().enumerate() {
            print_doc(m, Some(&format!("member{i}")));
        }
    }
    Ok(verdict(r.verdict))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify { m, m1, m2, labelled } => {
            let (h, a, b) = (load_matroid(&m)?, load_matroid(&m1)?, load_matroid(&m2)?);
            let r = verify_intertwine(&h, &a, &b, labelled).context("verifying")?;
            print!("{}", serialize_report(if labelled { "verify-labelled" } else { "verify" }, Some(&h), &r));
            Ok(verdict(r.verdict))
        }
        Command::Minor { host, target, labelled, delete, contract } => minor_cmd(&host, &target, labelled, delete, contract),
        Command::Check { what, m, at_least } => check(what, &m, at_least),
        Command::Op { op: kind } => op(kind),
        Command::Iso { a, b } => iso(&a, &b),
        Command::Catalog { bases } => {
            for (name, m) in fixtures::catalog() {
                if bases && m.ground_size() <= intertwine_core::document::BASES_LIMIT {
                    print!("{}", serialize_bases(&m, Some(&name))?);
                } else {
                    print_doc(&m, Some(&name));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Closure { seed, cap, contains, emit } => closure(&seed, cap, contains.as_deref(), emit),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
