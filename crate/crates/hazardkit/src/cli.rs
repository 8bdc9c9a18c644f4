//! The `hazardkit` command line.
//!
//! Exit codes: 0 analyzed and hazard-free (or nothing to report), 3 hazard
//! or counterexample found, 1 usage error, 2 bad input, 4 a size bound was
//! exceeded.

use std::ffi::OsString;
use std::io::{Read as _, Write as _};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hazardkit_core::detect::{
    cnf_detect_0hazard, cnf_eliminate_1hazards, dnf_detect_1hazard, dnf_eliminate_0hazards,
};
use hazardkit_core::reduction::{
    reduce_dnffalse_to_hazard, verify_reduction, zero_hazard_gadget, BetaBijection,
};
use hazardkit_core::synthesis::{
    acm_formula_hazard_free, acm_formula_with_hazards, cm_minterms_direct, huffman_from_minterms,
    inject_into, AcmSpec, CmSpec,
};
use hazardkit_core::{
    BooleanFunction, Circuit, CnfFormula, Connective, DnfFormula, HazardKind, HazardReport,
    ImplicantKind, Literal, Term, TruthTable,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::{Config, ConfigError};
use crate::document::{CircuitDocument, DocumentError};
use crate::parallel;
use crate::report::AnalysisReport;
use crate::text::{
    parse_cnf, parse_dnf, parse_formula, parse_partial_assignment, to_text, ParseError,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_HAZARD: u8 = 3;
pub const EXIT_BOUND: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "hazardkit",
    version,
    about = "Logic hazard analysis under three-valued semantics"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// TOML file with max_vars, brute_max_vars and jobs.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Variable bound for minterm/maxterm enumeration [default: 14].
    #[arg(long, global = true, value_name = "N")]
    pub max_vars: Option<usize>,
    /// Variable bound for 3^n scans [default: 13, env: HAZARDKIT_MAX_VARS].
    #[arg(long, global = true, value_name = "N")]
    pub brute_max_vars: Option<usize>,
    /// Worker threads for exhaustive scans.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Output for formula-valued results; analysis reports are always JSON.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Any formula over & | ! and parentheses.
    #[arg(long, value_name = "TEXT")]
    pub formula: Option<String>,
    /// An OR of ANDs of literals.
    #[arg(long, value_name = "TEXT")]
    pub dnf: Option<String>,
    /// An AND of ORs of literals.
    #[arg(long, value_name = "TEXT")]
    pub cnf: Option<String>,
    /// JSON circuit document, or - for standard input.
    #[arg(long, value_name = "FILE")]
    pub circuit: Option<PathBuf>,
    /// Output column over rows 0..2^n, row bits big-endian in x1..xn.
    #[arg(long, value_name = "BITS")]
    pub truth_table: Option<String>,
}

#[derive(Debug, Args)]
pub struct Input {
    #[command(flatten)]
    pub source: Source,
    /// Number of variables; defaults to the highest one mentioned.
    #[arg(long, value_name = "N")]
    pub vars: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "1")]
    One,
    #[value(name = "0")]
    Zero,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ternary value at a partial assignment.
    Eval {
        #[command(flatten)]
        input: Input,
        /// String over 0, 1, u.
        #[arg(long, value_name = "ASSIGNMENT")]
        at: String,
    },
    /// Function value on every resolution of a partial assignment.
    Resolutions {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "ASSIGNMENT")]
        at: String,
    },
    /// Minimal 1-implicants.
    Minterms {
        #[command(flatten)]
        input: Input,
    },
    /// Minimal 0-implicants.
    Maxterms {
        #[command(flatten)]
        input: Input,
    },
    /// Picks a detector from the input shape.
    Detect {
        #[command(flatten)]
        input: Input,
    },
    /// Exhaustive 3^n scan; the first hazard in canonical order.
    DetectBrute {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Evaluate at every minterm and maxterm.
    DetectEichelberger {
        #[command(flatten)]
        input: Input,
    },
    /// Polynomial-time 1-hazard check for a DNF.
    DetectDnf1 {
        #[command(flatten)]
        input: Input,
    },
    /// Polynomial-time 0-hazard check for a CNF.
    DetectCnf0 {
        #[command(flatten)]
        input: Input,
    },
    /// Drop contradictory terms of a DNF.
    EliminateDnf0 {
        #[command(flatten)]
        input: Input,
    },
    /// Drop tautological clauses of a CNF.
    EliminateCnf1 {
        #[command(flatten)]
        input: Input,
    },
    /// Hazard-free DNF: the OR of all minterms.
    Huffman {
        #[command(flatten)]
        input: Input,
    },
    /// Huffman DNF with 1-hazards at the selected minterms.
    Inject {
        #[command(flatten)]
        input: Input,
        /// A minterm as a string over 0, 1, u; repeatable.
        #[arg(long, value_name = "ASSIGNMENT", required = true)]
        select: Vec<String>,
    },
    /// Huffman DNF of the CM function on s variables.
    GenCm {
        #[arg(long)]
        s: usize,
    },
    /// Depth-3 formula for the AND of CM functions over disjoint blocks.
    GenAcm {
        #[arg(long)]
        groups: usize,
        #[arg(long)]
        s: usize,
        /// Block that receives the hazards.
        #[arg(long, default_value_t = 0)]
        group: usize,
        /// CM minterm (block-local, over 0, 1, u) to put a hazard at; repeatable.
        #[arg(long, value_name = "ASSIGNMENT")]
        select: Vec<String>,
    },
    /// Depth-4 formula with a hazard iff the DNF is falsifiable.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
    },
    /// DNF with a 0-hazard iff the input DNF is falsifiable.
    #[command(name = "gadget-0hazard")]
    Gadget0Hazard {
        #[command(flatten)]
        input: Input,
    },
    /// Reduce and check the result exhaustively.
    VerifyReduce {
        #[arg(long)]
        r: usize,
        #[arg(
            long,
            value_name = "TEXT",
            conflicts_with = "random",
            required_unless_present = "random"
        )]
        dnf: Option<String>,
        /// Check this many random DNFs instead.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Variables of the random DNFs, or the width of --dnf.
        #[arg(long)]
        vars: Option<usize>,
        /// Maximum terms of the random DNFs.
        #[arg(long, default_value_t = 4)]
        terms: usize,
    },
    /// Every hazard, in canonical order.
    ListHazards {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<hazardkit_core::Error> for CliError {
    fn from(e: hazardkit_core::Error) -> Self {
        let code = match e {
            hazardkit_core::Error::BoundExceeded { .. } => EXIT_BOUND,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Invalid(e) => e.into(),
            e => CliError::input(e.to_string()),
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Invalid(e) => e.into(),
            e => CliError::input(e.to_string()),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::input(e.to_string())
    }
}

type CliResult = Result<u8, CliError>;

pub enum Loaded {
    Dnf(DnfFormula),
    Cnf(CnfFormula),
    Circuit(Circuit),
    Table(TruthTable),
}

impl Loaded {
    pub fn num_vars(&self) -> usize {
        self.function().num_vars()
    }

    pub fn function(&self) -> &dyn BooleanFunction {
        match self {
            Loaded::Dnf(f) => f,
            Loaded::Cnf(f) => f,
            Loaded::Circuit(c) => c,
            Loaded::Table(t) => t,
        }
    }

    fn circuit(&self, command: &str) -> Result<Circuit, CliError> {
        match self {
            Loaded::Dnf(f) => Ok(f.to_circuit()),
            Loaded::Cnf(f) => Ok(f.to_circuit()),
            Loaded::Circuit(c) => Ok(c.clone()),
            Loaded::Table(_) => Err(CliError::usage(format!(
                "{command} needs a circuit or formula, not a truth table"
            ))),
        }
    }

    fn dnf(&self, command: &str) -> Result<DnfFormula, CliError> {
        match self {
            Loaded::Dnf(f) => Ok(f.clone()),
            Loaded::Circuit(c) => {
                DnfFormula::from_circuit(c).ok_or_else(|| CliError::input("input is not a DNF"))
            }
            Loaded::Cnf(_) => Err(CliError::input("input is not a DNF")),
            Loaded::Table(_) => Err(CliError::usage(format!(
                "{command} needs a DNF, not a truth table"
            ))),
        }
    }

    fn cnf(&self, command: &str) -> Result<CnfFormula, CliError> {
        match self {
            Loaded::Cnf(f) => Ok(f.clone()),
            Loaded::Circuit(c) => {
                CnfFormula::from_circuit(c).ok_or_else(|| CliError::input("input is not a CNF"))
            }
            Loaded::Dnf(_) => Err(CliError::input("input is not a CNF")),
            Loaded::Table(_) => Err(CliError::usage(format!(
                "{command} needs a CNF, not a truth table"
            ))),
        }
    }
}

impl Input {
    pub fn load(&self) -> Result<Loaded, CliError> {
        let s = &self.source;
        if let Some(t) = &s.formula {
            return Ok(Loaded::Circuit(parse_formula(t, self.vars)?));
        }
        if let Some(t) = &s.dnf {
            return Ok(Loaded::Dnf(parse_dnf(t, self.vars)?));
        }
        if let Some(t) = &s.cnf {
            return Ok(Loaded::Cnf(parse_cnf(t, self.vars)?));
        }
        if let Some(path) = &s.circuit {
            let text = read_file_or_stdin(path)?;
            let c = CircuitDocument::from_json(&text)?.to_circuit()?;
            return match self.vars {
                Some(n) if n != c.num_vars() => Ok(Loaded::Circuit(c.widen(n)?)),
                _ => Ok(Loaded::Circuit(c)),
            };
        }
        let bits = s.truth_table.as_deref().unwrap_or_default();
        let t: TruthTable = bits.trim().parse()?;
        if let Some(n) = self.vars {
            if n != t.num_vars() {
                return Err(CliError::input(format!(
                    "truth table has {} rows, expected 2^{n}",
                    t.rows().len()
                )));
            }
        }
        Ok(Loaded::Table(t))
    }
}

fn read_file_or_stdin(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Hex SHA-256 of the β table, one minterm per line.
pub fn beta_digest(beta: &BetaBijection) -> String {
    let mut h = Sha256::new();
    for t in beta.table() {
        h.update(t.to_string().as_bytes());
        h.update(b"\n");
    }
    format!("{:x}", h.finalize())
}

struct Ctx {
    config: Config,
    format: Option<Format>,
}

impl Ctx {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit_circuit(&self, c: &Circuit, text: String, default: Format, meta: Value) {
        match self.format_or(default) {
            Format::Text => println!("{text}"),
            Format::Json => {
                let mut doc = CircuitDocument::from_circuit(c);
                if let Value::Object(m) = meta {
                    doc.meta = m;
                }
                println!("{}", doc.to_json());
            }
        }
    }

    fn emit_dnf(&self, f: &DnfFormula, meta: Value) {
        self.emit_circuit(&f.to_circuit(), f.to_string(), Format::Text, meta);
    }

    fn emit_cnf(&self, f: &CnfFormula, meta: Value) {
        self.emit_circuit(&f.to_circuit(), f.to_string(), Format::Text, meta);
    }
}

fn emit_report(rep: &AnalysisReport) -> u8 {
    println!("{}", rep.to_json());
    eprintln!("{}", rep.summary());
    match rep.result {
        crate::report::Outcome::Hazard => EXIT_HAZARD,
        crate::report::Outcome::HazardFree => EXIT_OK,
        crate::report::Outcome::Unknown => EXIT_BOUND,
    }
}

fn analysis(rep: &HazardReport, n: usize, start: Instant, input: &str) -> AnalysisReport {
    AnalysisReport::from_hazard_report(rep, n, start.elapsed()).note("input", input)
}

fn input_kind(l: &Loaded) -> &'static str {
    match l {
        Loaded::Dnf(_) => "dnf",
        Loaded::Cnf(_) => "cnf",
        Loaded::Circuit(_) => "circuit",
        Loaded::Table(_) => "truth-table",
    }
}

fn parse_selection(items: &[String], n: usize) -> Result<Vec<Term>, CliError> {
    items
        .iter()
        .map(|s| Ok(parse_partial_assignment(s, n)?.to_term(Connective::Conjunction)))
        .collect()
}

fn random_dnf(rng: &mut ChaCha8Rng, n: usize, max_terms: usize) -> DnfFormula {
    let m = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<Vec<Literal>> = (0..m)
        .map(|_| {
            let len = rng.gen_range(1..=n.min(3));
            sample(rng, n, len)
                .into_iter()
                .map(|v| Literal::new(v, rng.gen()))
                .collect()
        })
        .collect();
    DnfFormula::from_literals(n, terms).expect("literals in range")
}

/// Detect on a DNF: the pair check for 1-hazards, then 0-hazards, which
/// only contradictory terms can cause.
fn detect_dnf(ctx: &Ctx, f: &DnfFormula, start: Instant) -> CliResult {
    let n = f.num_vars();
    let one = dnf_detect_1hazard(f)?;
    if one.found() || !f.has_contradictory_terms() {
        let note = if one.found() {
            "1-hazard found by the pair check"
        } else {
            "no contradictory terms, so no 0-hazards"
        };
        return Ok(emit_report(
            &analysis(&one, n, start, "dnf").note("note", note),
        ));
    }
    let hint = "contradictory terms may cause 0-hazards; eliminate-dnf0 removes them";
    if n > ctx.config.brute_max_vars {
        let rep = AnalysisReport::unknown("dnf-pair", n, start.elapsed())
            .note("input", "dnf")
            .note(
                "note",
                format!(
                    "{hint}; 0-hazard scan skipped above {} variables",
                    ctx.config.brute_max_vars
                ),
            );
        return Ok(emit_report(&rep));
    }
    let zero = parallel::brute_force_hazard(
        &f.to_circuit(),
        Some(HazardKind::Zero),
        ctx.config.brute_max_vars,
    )?;
    Ok(emit_report(
        &analysis(&zero, n, start, "dnf").note("note", hint),
    ))
}

fn detect_cnf(ctx: &Ctx, f: &CnfFormula, start: Instant) -> CliResult {
    let n = f.num_vars();
    let zero = cnf_detect_0hazard(f)?;
    if zero.found() || !f.has_tautological_clauses() {
        let note = if zero.found() {
            "0-hazard found by the dual pair check"
        } else {
            "no tautological clauses, so no 1-hazards"
        };
        return Ok(emit_report(
            &analysis(&zero, n, start, "cnf").note("note", note),
        ));
    }
    let hint = "tautological clauses may cause 1-hazards; eliminate-cnf1 removes them";
    if n > ctx.config.brute_max_vars {
        let rep = AnalysisReport::unknown("cnf-dual", n, start.elapsed())
            .note("input", "cnf")
            .note(
                "note",
                format!(
                    "{hint}; 1-hazard scan skipped above {} variables",
                    ctx.config.brute_max_vars
                ),
            );
        return Ok(emit_report(&rep));
    }
    let one = parallel::brute_force_hazard(
        &f.to_circuit(),
        Some(HazardKind::One),
        ctx.config.brute_max_vars,
    )?;
    Ok(emit_report(
        &analysis(&one, n, start, "cnf").note("note", hint),
    ))
}

fn run_command(ctx: &Ctx, command: &Command) -> CliResult {
    let start = Instant::now();
    let cfg = &ctx.config;
    match command {
        Command::Eval { input, at } => {
            let l = input.load()?;
            let c = l.circuit("eval")?;
            let a = parse_partial_assignment(at, c.num_vars())?;
            let v = c.eval_ternary(&a)?;
            match ctx.format_or(Format::Text) {
                Format::Text => println!("{v}"),
                Format::Json => println!(
                    "{}",
                    json!({"assignment": a.to_string(), "value": v.to_string()})
                ),
            }
            Ok(EXIT_OK)
        }
        Command::Resolutions { input, at } => {
            let l = input.load()?;
            let f = l.function();
            let a = parse_partial_assignment(at, f.num_vars())?;
            if a.u_count() > cfg.max_vars {
                return Err(hazardkit_core::Error::BoundExceeded {
                    what: "resolution listing",
                    n: a.u_count(),
                    bound: cfg.max_vars,
                }
                .into());
            }
            let rows: Vec<(String, bool)> = a
                .resolutions()
                .map(|b| (b.to_string(), f.eval(&b.to_bools().expect("stable"))))
                .collect();
            match ctx.format_or(Format::Text) {
                Format::Text => {
                    let mut out = std::io::stdout().lock();
                    for (b, v) in &rows {
                        let _ = writeln!(out, "{b} {}", u8::from(*v));
                    }
                }
                Format::Json => {
                    let items: Vec<Value> = rows
                        .iter()
                        .map(|(b, v)| json!({"input": b, "value": v}))
                        .collect();
                    let constant = rows.iter().all(|r| r.1 == rows[0].1);
                    println!(
                        "{}",
                        json!({"assignment": a.to_string(), "resolutions": items, "constant": constant})
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Minterms { input } | Command::Maxterms { input } => {
            let kind = if matches!(command, Command::Minterms { .. }) {
                ImplicantKind::One
            } else {
                ImplicantKind::Zero
            };
            let l = input.load()?;
            let set = parallel::enumerate(l.function(), kind, cfg.max_vars)?;
            match ctx.format_or(Format::Text) {
                Format::Text => {
                    let mut out = std::io::stdout().lock();
                    for t in set.items() {
                        let _ = writeln!(out, "{t}");
                    }
                }
                Format::Json => {
                    let items: Vec<String> = set.items().iter().map(ToString::to_string).collect();
                    let at: Vec<String> =
                        set.assignments().iter().map(ToString::to_string).collect();
                    let name = if kind == ImplicantKind::One {
                        "minterms"
                    } else {
                        "maxterms"
                    };
                    println!(
                        "{}",
                        json!({"num_vars": set.num_vars(), "kind": name, "count": set.len(), "items": items, "assignments": at})
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Detect { input } => match input.load()? {
            Loaded::Dnf(f) => detect_dnf(ctx, &f, start),
            Loaded::Cnf(f) => detect_cnf(ctx, &f, start),
            Loaded::Circuit(c) => {
                let rep = parallel::eichelberger(&c, cfg.max_vars)?;
                Ok(emit_report(&analysis(&rep, c.num_vars(), start, "circuit")))
            }
            Loaded::Table(_) => Err(CliError::usage(
                "detect needs a circuit or formula, not a truth table",
            )),
        },
        Command::DetectBrute { input, kind } => {
            let l = input.load()?;
            let c = l.circuit("detect-brute")?;
            let kind = kind.map(|k| match k {
                KindArg::One => HazardKind::One,
                KindArg::Zero => HazardKind::Zero,
            });
            let rep = parallel::brute_force_hazard(&c, kind, cfg.brute_max_vars)?;
            Ok(emit_report(&analysis(
                &rep,
                c.num_vars(),
                start,
                input_kind(&l),
            )))
        }
        Command::DetectEichelberger { input } => {
            let l = input.load()?;
            let c = l.circuit("detect-eichelberger")?;
            let rep = parallel::eichelberger(&c, cfg.max_vars)?;
            Ok(emit_report(&analysis(
                &rep,
                c.num_vars(),
                start,
                input_kind(&l),
            )))
        }
        Command::DetectDnf1 { input } => {
            let f = input.load()?.dnf("detect-dnf1")?;
            let rep = dnf_detect_1hazard(&f)?;
            Ok(emit_report(&analysis(&rep, f.num_vars(), start, "dnf")))
        }
        Command::DetectCnf0 { input } => {
            let f = input.load()?.cnf("detect-cnf0")?;
            let rep = cnf_detect_0hazard(&f)?;
            Ok(emit_report(&analysis(&rep, f.num_vars(), start, "cnf")))
        }
        Command::EliminateDnf0 { input } => {
            let f = input.load()?.dnf("eliminate-dnf0")?;
            ctx.emit_dnf(
                &dnf_eliminate_0hazards(&f),
                json!({"generator": "eliminate-dnf0"}),
            );
            Ok(EXIT_OK)
        }
        Command::EliminateCnf1 { input } => {
            let f = input.load()?.cnf("eliminate-cnf1")?;
            ctx.emit_cnf(
                &cnf_eliminate_1hazards(&f),
                json!({"generator": "eliminate-cnf1"}),
            );
            Ok(EXIT_OK)
        }
        Command::Huffman { input } => {
            let l = input.load()?;
            let mins = parallel::enumerate(l.function(), ImplicantKind::One, cfg.max_vars)?;
            ctx.emit_dnf(
                &huffman_from_minterms(&mins),
                json!({"generator": "huffman"}),
            );
            Ok(EXIT_OK)
        }
        Command::Inject { input, select } => {
            let l = input.load()?;
            let mins = parallel::enumerate(l.function(), ImplicantKind::One, cfg.max_vars)?;
            let chosen = parse_selection(select, l.num_vars())?;
            let f = inject_into(&mins, &chosen)?;
            ctx.emit_dnf(&f, json!({"generator": "inject", "selected": select}));
            Ok(EXIT_OK)
        }
        Command::GenCm { s } => {
            let spec = CmSpec::new(*s)?;
            check_size("CM generation", *s, cfg.max_vars)?;
            let f = huffman_from_minterms(&cm_minterms_direct(spec));
            ctx.emit_dnf(&f, json!({"generator": "cm", "s": s}));
            Ok(EXIT_OK)
        }
        Command::GenAcm {
            groups,
            s,
            group,
            select,
        } => {
            let spec = AcmSpec::new(*groups, *s)?;
            check_size("CM generation", *s, cfg.max_vars)?;
            let c = if select.is_empty() {
                acm_formula_hazard_free(spec)?
            } else {
                let chosen = parse_selection(select, *s)?;
                acm_formula_with_hazards(spec, *group, &chosen)?
            };
            let meta = json!({"generator": "acm", "groups": groups, "s": s, "group": group, "selected": select});
            ctx.emit_circuit(&c, to_text(&c), Format::Text, meta);
            Ok(EXIT_OK)
        }
        Command::Reduce { input, r } => {
            let f = input.load()?.dnf("reduce")?;
            check_size("reduction parameter r", *r, cfg.max_vars)?;
            let red = reduce_dnffalse_to_hazard(&f, *r)?;
            let p = &red.params;
            let meta = json!({
                "generator": "reduce",
                "r": p.r(),
                "s": p.s(),
                "n": p.n(),
                "source_vars": p.original_vars(),
                "beta_digest": beta_digest(p.beta()),
            });
            ctx.emit_circuit(&red.formula, to_text(&red.formula), Format::Json, meta);
            eprintln!(
                "r={} s={} n={}: {} variables, depth {}, size {}",
                p.r(),
                p.s(),
                p.n(),
                red.formula.num_vars(),
                red.formula.depth(),
                red.formula.size()
            );
            Ok(EXIT_OK)
        }
        Command::Gadget0Hazard { input } => {
            let f = input.load()?.dnf("gadget-0hazard")?;
            ctx.emit_dnf(
                &zero_hazard_gadget(&f),
                json!({"generator": "gadget-0hazard"}),
            );
            Ok(EXIT_OK)
        }
        Command::VerifyReduce {
            r,
            dnf,
            random,
            seed,
            vars,
            terms,
        } => {
            let sources: Vec<DnfFormula> = match (dnf, random) {
                (Some(t), _) => vec![parse_dnf(t, *vars)?],
                (None, Some(count)) => {
                    let n = vars.unwrap_or(2);
                    if n == 0 {
                        return Err(CliError::usage(
                            "--vars must be at least 1 for random sources",
                        ));
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    (0..*count)
                        .map(|_| random_dnf(&mut rng, n, *terms))
                        .collect()
                }
                (None, None) => return Err(CliError::usage("give --dnf or --random")),
            };
            let mut failures = Vec::new();
            let mut falsifiable = 0usize;
            for f in &sources {
                let check = verify_reduction(f, *r, cfg.brute_max_vars)?;
                falsifiable += usize::from(check.falsifiable);
                if !check.passed() {
                    let cex: Vec<String> = check
                        .counterexamples
                        .iter()
                        .map(|c| format!("{c:?}"))
                        .collect();
                    failures.push(json!({"formula": f.to_string(), "counterexamples": cex}));
                }
            }
            let passed = failures.is_empty();
            let out = json!({
                "result": if passed { "pass" } else { "fail" },
                "r": r,
                "instances": sources.len(),
                "falsifiable": falsifiable,
                "failures": failures,
                "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
                "seed": seed,
            });
            println!("{out}");
            eprintln!(
                "{} of {} reductions verified",
                sources.len() - failures.len(),
                sources.len()
            );
            Ok(if passed { EXIT_OK } else { EXIT_HAZARD })
        }
        Command::ListHazards { input } => {
            let l = input.load()?;
            let c = l.circuit("list-hazards")?;
            let reps = parallel::list_all_hazards(&c, cfg.brute_max_vars)?;
            let items: Vec<Value> = reps
                .iter()
                .map(|h| {
                    json!({
                        "witness": h.witness().map(ToString::to_string),
                        "kind": h.kind().map(|k| k.as_str()),
                    })
                })
                .collect();
            println!(
                "{}",
                json!({"num_vars": c.num_vars(), "count": reps.len(), "hazards": items, "method": "brute", "elapsed_ms": start.elapsed().as_secs_f64() * 1e3})
            );
            eprintln!("{} hazards", reps.len());
            Ok(if reps.is_empty() {
                EXIT_OK
            } else {
                EXIT_HAZARD
            })
        }
    }
}

fn check_size(what: &'static str, n: usize, bound: usize) -> Result<(), CliError> {
    if n > bound {
        return Err(hazardkit_core::Error::BoundExceeded { what, n, bound }.into());
    }
    Ok(())
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = Config::load(cli.global.config.as_deref())
        .map_err(CliError::from)
        .and_then(|mut config| {
            if let Some(v) = cli.global.max_vars {
                config.max_vars = v;
            }
            if let Some(v) = cli.global.brute_max_vars {
                config.brute_max_vars = v;
            }
            config.jobs = cli.global.jobs.or(config.jobs);
            let ctx = Ctx {
                config,
                format: cli.global.format,
            };
            parallel::with_jobs(ctx.config.jobs, || run_command(&ctx, &cli.command))
        });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
