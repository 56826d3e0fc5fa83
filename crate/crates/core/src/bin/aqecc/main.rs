//! Command-line front end: build codes, derive asymmetric quantum codes,
//! emit family tables and run the verification suites.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use aqecc::css::{self, CssPair, Derivation};
use aqecc::families::{self, Abch1Item};
use aqecc::galois::{make_field_of_order, prime_tower, BasisKind, FieldBasis, Tower};
use aqecc::lincode::LinearCode;
use aqecc::symplectic::{expansion_stabilizer, puncture_stabilizer, AdditiveCode};
use aqecc::table::{self, Caps, Family};
use aqecc::verify::{self, Suite, VerifyOptions};
use aqecc::{Budget, Error};

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "aqecc",
    version,
    about = "Asymmetric quantum codes from classical codes over finite fields"
)]
struct Cli {
    /// Largest number of codewords a single enumeration may visit.
    #[arg(long, global = true, default_value_t = aqecc::budget::DEFAULT_MAX_CODEWORDS)]
    budget: u128,
    /// Largest field order any constructor may build.
    #[arg(long, global = true, default_value_t = aqecc::budget::DEFAULT_MAX_FIELD)]
    max_field: u64,
    /// Worker threads for the enumeration oracles (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write a run manifest to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
enum Command {
    /// Build a classical code and report its oracle distance.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Derive an asymmetric quantum code and grade the construction's claim.
    #[command(subcommand)]
    Aqecc(AqeccCmd),
    /// Emit one row per in-range instance of a code family.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Re-run the command recorded in a manifest and compare its output.
    Replay { path: PathBuf },
}

#[derive(Debug, Subcommand, Serialize)]
enum CodeCmd {
    /// Generalized Reed-Muller code R_q(alpha, m).
    Grm {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        alpha: usize,
    },
    /// BCH code with zeros alpha^b, ..., alpha^(b+delta-2).
    Bch {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 1)]
        b: usize,
    },
    /// The four quadratic residue codes of length p.
    Qr {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Character code C_q(r, m).
    Character {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Basis {
    Polynomial,
    DualOfPolynomial,
    Normal,
}

impl From<Basis> for BasisKind {
    fn from(b: Basis) -> Self {
        match b {
            Basis::Polynomial => BasisKind::Polynomial,
            Basis::DualOfPolynomial => BasisKind::DualOfPolynomial,
            Basis::Normal => BasisKind::Normal,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
enum AqeccCmd {
    /// CSS parameters of the pair (C1, C2), C2 ⊂ C1, given as code JSON.
    Css {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
    },
    /// Expand a pair over a subfield.
    Expand {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, value_enum, default_value = "polynomial")]
        basis: Basis,
        /// Order of the subfield to expand over (default: the prime field).
        #[arg(long)]
        over: Option<u32>,
    },
    DirectSum {
        #[arg(long)]
        pair_a: PathBuf,
        #[arg(long)]
        pair_b: PathBuf,
    },
    Puncture {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        index: usize,
    },
    Extend {
        #[arg(long)]
        pair: PathBuf,
    },
    /// The pair (u|u+v) of two pairs of equal length.
    Uuv {
        #[arg(long)]
        pair_a: PathBuf,
        #[arg(long)]
        pair_b: PathBuf,
    },
    /// Generalized Reed-Muller pair (R(alpha2), R(alpha1)).
    Grm {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        alpha1: usize,
        #[arg(long)]
        alpha2: usize,
        #[arg(long, value_enum, default_value = "polynomial")]
        basis: Basis,
    },
    /// Character code pair (C(r2, m), C(r1, m)).
    Character {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r1: usize,
        #[arg(long)]
        r2: usize,
        #[arg(long, value_enum, default_value = "polynomial")]
        basis: Basis,
    },
    /// Nested narrow-sense BCH pair with designed distances delta1 < delta2.
    Bch {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta1: usize,
        #[arg(long)]
        delta2: usize,
        #[arg(long, value_enum, default_value = "polynomial")]
        basis: Basis,
    },
    /// One shape of the primitive BCH family, given as JSON, e.g.
    /// '{"item":"third","c":2,"l":0}'.
    BchPrimitive {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value = "polynomial")]
        basis: Basis,
    },
    /// Quadratic residue pair, optionally expanded to the prime field.
    Qr {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        expanded: bool,
        #[arg(long, value_enum, default_value = "polynomial")]
        basis: Basis,
    },
    /// Expand a self-orthogonal additive code to the prime field.
    StabilizerExpand {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum, default_value = "polynomial")]
        basis: Basis,
    },
    /// Puncture a pure self-orthogonal additive code.
    StabilizerPuncture {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        index: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
struct TableArgs {
    /// grm, character, bch-salah, abch1, qr or expanded-qr.
    #[arg(long)]
    family: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, default_value_t = 13)]
    max_p: u32,
    #[arg(long, default_value_t = 4)]
    max_q: u32,
    #[arg(long, default_value_t = 3)]
    max_m: u32,
    /// Restrict to one field order.
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, value_enum, default_value = "polynomial")]
    basis: Basis,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    /// field-axioms, dual-expansion, combinators, css-symplectic-agreement,
    /// symplectic, grm, character, bch, qr, theorems or all.
    suite: String,
    /// Largest field order for the field-axiom suite.
    #[arg(long, default_value_t = 64)]
    max_q: u32,
}

/// A record of one invocation: replaying `command` must reproduce
/// `outputs` byte for byte.
#[derive(Debug, Serialize, Deserialize)]
struct RunManifest {
    command: Vec<String>,
    inputs: Value,
    seed: u64,
    budget: Budget,
    threads: Option<usize>,
    outputs: Value,
    exit_code: i32,
    wall_clock_ms: u64,
}

/// What a command prints and how it exits.
struct Outcome {
    stdout: String,
    exit: i32,
}

impl Outcome {
    fn json(value: &impl Serialize, exit: i32) -> Outcome {
        Outcome {
            stdout: serde_json::to_string_pretty(value).expect("serializable output") + "\n",
            exit,
        }
    }
}

/// Input files read during the run, recorded in the manifest.
#[derive(Default)]
struct Inputs {
    files: BTreeMap<String, Value>,
}

impl Inputs {
    fn load(&mut self, path: &Path) -> anyhow::Result<Value> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        self.files.insert(path.display().to_string(), value.clone());
        Ok(value)
    }

    fn code(&mut self, path: &Path) -> anyhow::Result<LinearCode> {
        let v = self.load(path)?;
        serde_json::from_value(v)
            .with_context(|| format!("{} is not a linear code", path.display()))
    }

    fn pair(&mut self, path: &Path) -> anyhow::Result<CssPair> {
        let v = self.load(path)?;
        serde_json::from_value(v)
            .with_context(|| format!("{} is not a nested pair", path.display()))
    }

    fn additive(&mut self, path: &Path) -> anyhow::Result<AdditiveCode> {
        let v = self.load(path)?;
        serde_json::from_value(v)
            .with_context(|| format!("{} is not an additive code", path.display()))
    }
}

/// Exit code for a library error: hypothesis and parameter failures are 3,
/// everything else 1.
fn error_exit(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::InvalidParameter(_)
            | Error::HypothesisFailed(_)
            | Error::NotNested
            | Error::NotStrictlyNested
            | Error::NotSelfOrthogonal
            | Error::NotPrime(_),
        ) => 3,
        _ => 1,
    }
}

fn distance_report(code: &LinearCode, budget: &Budget) -> (Value, i32) {
    match code.min_distance(budget) {
        Ok(r) => (json!(r), 0),
        Err(Error::BudgetExceeded { required, budget }) => (
            json!({ "status": "budget-exceeded", "required": required, "budget": budget }),
            2,
        ),
        Err(e) => (json!({ "status": "undefined", "reason": e.to_string() }), 0),
    }
}

fn code_entry(name: &str, code: &LinearCode, budget: &Budget) -> (Value, i32) {
    let (distance, exit) = distance_report(code, budget);
    let params = match distance.get("value") {
        Some(d) => format!("[{},{},{d}]_{}", code.n(), code.k(), code.q()),
        None => code.to_string(),
    };
    (
        json!({ "name": name, "params": params, "code": code, "distance": distance }),
        exit,
    )
}

fn cmd_code(cmd: &CodeCmd, budget: &Budget) -> anyhow::Result<Outcome> {
    let (out, exit) = match *cmd {
        CodeCmd::Grm { q, m, alpha } => {
            let (code, info) = families::grm(q, m, alpha, budget)?;
            let (entry, exit) = code_entry("grm", &code, budget);
            (
                json!({ "family": "grm", "predicted": info, "codes": [entry] }),
                exit,
            )
        }
        CodeCmd::Bch { q, n, delta, b } => {
            let (code, info) = families::bch(q, n, b, delta, budget)?;
            let (entry, exit) = code_entry("bch", &code, budget);
            (
                json!({ "family": "bch", "predicted": info, "codes": [entry] }),
                exit,
            )
        }
        CodeCmd::Qr { p, q } => {
            let s = families::qr(p, q, budget)?;
            let mut exit = 0;
            let mut codes = Vec::new();
            for (name, c) in [
                ("Q", &s.q_code),
                ("Q-even", &s.q_even),
                ("N", &s.c_code),
                ("N-even", &s.c_even),
            ] {
                let (entry, e) = code_entry(name, c, budget);
                exit = exit.max(e);
                codes.push(entry);
            }
            let predicted = json!({
                "p": p,
                "q": q,
                "residues": s.residues,
                "non_residues": s.non_residues,
                "distance_bound": families::qr_distance_bound(p),
            });
            (
                json!({ "family": "qr", "predicted": predicted, "codes": codes }),
                exit,
            )
        }
        CodeCmd::Character { q, r, m } => {
            let code = families::character_code(q, r, m, budget)?;
            let predicted = json!({
                "n": 1usize << m,
                "k": families::sum_binomials(m, r),
                "d": 1usize << (m as usize - r),
            });
            let (entry, exit) = code_entry("character", &code, budget);
            (
                json!({ "family": "character", "predicted": predicted, "codes": [entry] }),
                exit,
            )
        }
    };
    Ok(Outcome::json(&out, exit))
}

fn derivation(d: Derivation) -> Outcome {
    let exit = d.claim.status.exit_code();
    Outcome::json(
        &json!({ "params": d.params(), "claim": d.claim, "pair": d.pair }),
        exit,
    )
}

fn cmd_aqecc(cmd: &AqeccCmd, inputs: &mut Inputs, budget: &Budget) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        AqeccCmd::Css { c1, c2 } => {
            let pair = CssPair::new(inputs.code(c1)?, inputs.code(c2)?)?;
            let params = css::derive(&pair, budget)?;
            let exit = if params.dz.exact && params.dx.exact {
                0
            } else {
                2
            };
            Outcome::json(&json!({ "params": params }), exit)
        }
        AqeccCmd::Expand { pair, basis, over } => {
            let pair = inputs.pair(pair)?;
            let tower = match over {
                None => prime_tower(pair.field()),
                Some(q) => {
                    let bottom = make_field_of_order(*q, budget.max_field)?;
                    std::sync::Arc::new(Tower::new(pair.field().clone(), bottom)?)
                }
            };
            let basis = FieldBasis::of_kind(tower, (*basis).into());
            derivation(css::expand_aqecc(&pair, &basis, budget)?)
        }
        AqeccCmd::DirectSum { pair_a, pair_b } => derivation(css::direct_sum_aqecc(
            &inputs.pair(pair_a)?,
            &inputs.pair(pair_b)?,
            budget,
        )?),
        AqeccCmd::Puncture { pair, index } => {
            derivation(css::puncture_aqecc(&inputs.pair(pair)?, *index, budget)?)
        }
        AqeccCmd::Extend { pair } => derivation(css::extend_aqecc(&inputs.pair(pair)?, budget)?),
        AqeccCmd::Uuv { pair_a, pair_b } => derivation(css::uuv_aqecc(
            &inputs.pair(pair_a)?,
            &inputs.pair(pair_b)?,
            budget,
        )?),
        AqeccCmd::Grm {
            q,
            m,
            alpha1,
            alpha2,
            basis,
        } => derivation(families::grm_aqecc(
            *q,
            *m,
            *alpha1,
            *alpha2,
            (*basis).into(),
            budget,
        )?),
        AqeccCmd::Character {
            q,
            m,
            r1,
            r2,
            basis,
        } => derivation(families::character_aqecc(
            *q,
            *m,
            *r1,
            *r2,
            (*basis).into(),
            budget,
        )?),
        AqeccCmd::Bch {
            q,
            n,
            delta1,
            delta2,
            basis,
        } => derivation(families::salah_aqecc(
            *q,
            *n,
            *delta1,
            *delta2,
            (*basis).into(),
            budget,
        )?),
        AqeccCmd::BchPrimitive { q, m, shape, basis } => {
            let item: Abch1Item = serde_json::from_str(shape).context("parsing --shape")?;
            derivation(families::abch1_aqecc(
                *q,
                *m,
                item,
                (*basis).into(),
                budget,
            )?)
        }
        AqeccCmd::Qr {
            p,
            q,
            expanded,
            basis,
        } => derivation(families::qr_aqecc(
            *p,
            *q,
            *expanded,
            (*basis).into(),
            budget,
        )?),
        AqeccCmd::StabilizerExpand { code, basis } => {
            let code = inputs.additive(code)?;
            let basis = FieldBasis::of_kind(prime_tower(code.field()), (*basis).into());
            let d = expansion_stabilizer(&code, &basis, budget)?;
            let exit = d.claim.status.exit_code();
            Outcome::json(&json!({ "claim": d.claim, "code": d.code }), exit)
        }
        AqeccCmd::StabilizerPuncture { code, index } => {
            let d = puncture_stabilizer(&inputs.additive(code)?, *index, budget)?;
            let exit = d.claim.status.exit_code();
            Outcome::json(&json!({ "claim": d.claim, "code": d.code }), exit)
        }
    })
}

fn cmd_table(args: &TableArgs, budget: &Budget) -> anyhow::Result<Outcome> {
    let family: Family = args.family.parse()?;
    let caps = Caps {
        max_p: args.max_p,
        max_q: args.max_q,
        max_m: args.max_m,
        q: args.q,
    };
    let rows = table::rows(family, &caps, args.basis.into(), budget)?;
    let stdout = match args.format {
        Format::Csv => table::to_csv(&rows),
        Format::Json => table::to_json(&rows) + "\n",
    };
    Ok(Outcome { stdout, exit: 0 })
}

fn cmd_verify(args: &VerifyArgs, seed: u64, budget: &Budget) -> anyhow::Result<Outcome> {
    let suite: Suite = args.suite.parse()?;
    let opts = VerifyOptions {
        seed,
        max_q: args.max_q,
        budget: *budget,
    };
    let reports = verify::run(suite, &opts);
    for r in &reports {
        eprintln!(
            "{}: {} ({} checks, {} skipped, {} claims)",
            r.suite,
            if r.passed { "PASS" } else { "FAIL" },
            r.checks,
            r.skipped,
            r.claims.len()
        );
        for f in &r.failures {
            eprintln!("  {f}");
        }
    }
    let exit = if reports.iter().all(|r| r.passed) {
        0
    } else {
        1
    };
    Ok(Outcome::json(&reports, exit))
}

fn cmd_replay(path: &Path) -> anyhow::Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let manifest: RunManifest = serde_json::from_str(&text).context("parsing the manifest")?;
    let cli = Cli::try_parse_from(
        std::iter::once("aqecc".to_string()).chain(manifest.command.iter().cloned()),
    )?;
    if matches!(cli.command, Command::Replay { .. }) {
        bail!("a manifest may not record a replay");
    }
    let (outcome, _) = execute(&cli);
    let outputs = outputs_value(&outcome.stdout);
    let identical = outputs == manifest.outputs && outcome.exit == manifest.exit_code;
    Ok(Outcome::json(
        &json!({ "identical": identical, "exit_code": outcome.exit }),
        if identical { 0 } else { 1 },
    ))
}

/// JSON output as a value; anything else (CSV) as a string.
fn outputs_value(stdout: &str) -> Value {
    serde_json::from_str(stdout).unwrap_or_else(|_| Value::String(stdout.to_string()))
}

fn execute(cli: &Cli) -> (Outcome, Inputs) {
    let budget = Budget {
        max_codewords: cli.budget,
        max_field: cli.max_field,
    };
    let mut inputs = Inputs::default();
    let result = match &cli.command {
        Command::Code(cmd) => cmd_code(cmd, &budget),
        Command::Aqecc(cmd) => cmd_aqecc(cmd, &mut inputs, &budget),
        Command::Table(args) => cmd_table(args, &budget),
        Command::Verify(args) => cmd_verify(args, cli.seed, &budget),
        Command::Replay { path } => cmd_replay(path),
    };
    let outcome = result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        Outcome {
            stdout: String::new(),
            exit: error_exit(&e),
        }
    });
    (outcome, inputs)
}

/// Arguments without the program name and any `--manifest` flag.
fn recorded_args() -> Vec<String> {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--manifest" {
            args.next();
        } else if !a.starts_with("--manifest=") {
            out.push(a);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let (outcome, inputs) = execute(&cli);
    print!("{}", outcome.stdout);
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            command: recorded_args(),
            inputs: json!({ "args": &cli.command, "files": inputs.files }),
            seed: cli.seed,
            budget: Budget {
                max_codewords: cli.budget,
                max_field: cli.max_field,
            },
            threads: cli.threads,
            outputs: outputs_value(&outcome.stdout),
            exit_code: outcome.exit,
            wall_clock_ms: start.elapsed().as_millis() as u64,
        };
        let text = serde_json::to_string_pretty(&manifest).expect("serializable manifest");
        if let Err(e) = fs::write(path, text + "\n") {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(outcome.exit as u8)
}
