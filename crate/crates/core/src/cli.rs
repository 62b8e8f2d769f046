//! The `su11` command line.
//!
//! Every subcommand prints one JSON document (to stdout, or atomically to
//! `--out`). Exit codes: 0 success, 1 failed check or numerical failure,
//! 2 unreadable or malformed input, 3 capacity exceeded.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dsl::{self, ParseError, ParsedCircuit};
use crate::error::Error;
use crate::fock::{make_space, FockSpace, StateVector};
use crate::network::{classify, simulate, NetworkSpec};
use crate::su11::{decompose, Branch, PseudoBoson};
use crate::suite::{run_suite, SuiteOverrides};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

const DEFAULT_CUTOFF: u32 = 6;
const DEFAULT_SAFE_BOUND: u32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "su11",
    version,
    about = "Simulate and verify squeezer/beamsplitter networks on truncated Fock spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Per-mode cutoff d (occupations 0..d-1). Default 6; `verify` uses each
    /// check's own setting unless given.
    #[arg(long, global = true)]
    pub cutoff: Option<u32>,

    /// Optional cap on the total photon number of the simulated space.
    #[arg(long, global = true)]
    pub photon_cap: Option<u32>,

    /// Total-photon bound of the block on which identities are compared.
    #[arg(long, global = true)]
    pub safe_bound: Option<u32>,

    /// Input state: `vacuum` or a comma-separated occupation list (a modes first).
    #[arg(long, global = true, default_value = "vacuum")]
    pub input: String,

    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Tolerance override: `VALUE` for every check, or `NAME=VALUE` for a
    /// check or suite prefix. Repeatable.
    #[arg(long, global = true)]
    pub tol: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a circuit to the input state.
    Simulate { circuit: PathBuf },
    /// Project a circuit's output (or a saved state) onto the weight basis.
    Decompose { file: PathBuf },
    /// Report the pseudo-two-mode squeezer a circuit reduces to.
    Reduce { circuit: PathBuf },
    /// Run a verification suite (`all` by default).
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Parse a circuit, print its canonical form and any warnings.
    Parse { circuit: PathBuf },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Structured detail, printed as the JSON document when present.
    pub document: Option<Value>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_PARSE, message: message.into(), document: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity(_) => EXIT_CAPACITY,
            Error::InvalidArgument(_) | Error::BadMode { .. } | Error::SpaceMismatch => EXIT_PARSE,
            Error::Numerical(_) => EXIT_CHECK_FAILED,
        };
        Failure { code, message: e.to_string(), document: None }
    }
}

#[derive(Debug, Serialize)]
struct RunConfig<'a> {
    cutoff: Option<u32>,
    photon_cap: Option<u32>,
    safe_bound: Option<u32>,
    input: &'a str,
    out: Option<String>,
    tol: &'a [String],
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn span_json(span: dsl::SourceSpan) -> Value {
    json!({ "line": span.line, "start": span.start, "end": span.end })
}

fn errors_json(errors: &[ParseError]) -> Value {
    Value::Array(
        errors
            .iter()
            .map(|e| json!({ "kind": format!("{:?}", e.kind), "message": e.message, "span": span_json(e.span) }))
            .collect(),
    )
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<ParsedCircuit, Failure> {
    dsl::parse_bytes(&read(path)?).map_err(|errors| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {} parse error(s)", path.display(), errors.len()),
        document: Some(json!({ "ok": false, "errors": errors_json(&errors) })),
    })
}

impl Cli {
    fn cutoff(&self) -> u32 {
        self.cutoff.unwrap_or(DEFAULT_CUTOFF)
    }

    fn check_config(&self) -> Result<(), Failure> {
        let cutoff = self.cutoff();
        if cutoff < 2 {
            return Err(Failure::input("--cutoff must be at least 2"));
        }
        let bound = self.safe_bound.unwrap_or(DEFAULT_SAFE_BOUND.min(cutoff - 2));
        if bound > cutoff - 2 {
            return Err(Failure::input(format!("--safe-bound {bound} exceeds cutoff - 2 = {}", cutoff - 2)));
        }
        Ok(())
    }

    fn config(&self) -> RunConfig<'_> {
        RunConfig {
            cutoff: self.cutoff,
            photon_cap: self.photon_cap,
            safe_bound: self.safe_bound,
            input: &self.input,
            out: self.out.as_ref().map(|p| p.display().to_string()),
            tol: &self.tol,
        }
    }

    fn space_for(&self, spec: &NetworkSpec) -> Result<Arc<FockSpace>, Failure> {
        Ok(make_space(spec.num_modes(), self.cutoff(), self.photon_cap)?)
    }

    fn input_state(&self, space: &Arc<FockSpace>) -> Result<StateVector, Failure> {
        if self.input.trim() == "vacuum" {
            return Ok(StateVector::vacuum(space));
        }
        let occ: Vec<u32> =
            self.input.split(',').map(|t| t.trim().parse::<u32>()).collect::<Result<_, _>>().map_err(|_| {
                Failure::input(format!("--input `{}` is neither `vacuum` nor a list of occupations", self.input))
            })?;
        if occ.len() != space.num_modes() {
            return Err(Failure::input(format!(
                "--input has {} occupations for {} modes",
                occ.len(),
                space.num_modes()
            )));
        }
        Ok(StateVector::basis(space, &occ)?)
    }

    fn overrides(&self) -> Result<SuiteOverrides, Failure> {
        let mut o = SuiteOverrides { cutoff: self.cutoff, safe_bound: self.safe_bound, ..Default::default() };
        for t in &self.tol {
            let bad = || Failure::input(format!("--tol `{t}` is not VALUE or NAME=VALUE"));
            match t.split_once('=') {
                Some((name, v)) => o.named_tolerances.push((name.to_string(), v.parse().map_err(|_| bad())?)),
                None => o.tolerance = Some(t.parse().map_err(|_| bad())?),
            }
        }
        Ok(o)
    }

    fn envelope(&self, command: &str, body: Value) -> Value {
        let mut doc = json!({
            "tool": "su11",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "config": self.config(),
        });
        if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
            doc.extend(body);
        }
        doc
    }
}

/// Probability on basis states at the edge of the truncation: some mode at
/// `d − 1`, or the total at the photon cap.
fn norm_leakage(psi: &StateVector) -> f64 {
    let space = psi.space();
    let top = space.cutoff() - 1;
    psi.amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            space.occupation(*i).contains(&top)
                || space.total_photon_cap().is_some_and(|c| space.total_photons(*i) == c)
        })
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

fn state_body(spec: &NetworkSpec, psi: &StateVector) -> Value {
    let space = psi.space();
    let (basis, amplitudes): (Vec<_>, Vec<_>) = psi
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != Complex64::new(0.0, 0.0))
        .map(|(i, a)| (space.occupation(i).to_vec(), pair(*a)))
        .unzip();
    json!({
        "num_a_modes": spec.num_a_modes(),
        "num_b_modes": spec.num_b_modes(),
        "cutoff": space.cutoff(),
        "photon_cap": space.total_photon_cap(),
        "basis": basis,
        "amplitudes": amplitudes,
        "norm": psi.norm(),
        "norm_leakage": norm_leakage(psi),
    })
}

fn cmd_simulate(cli: &Cli, circuit: &Path) -> Result<(Value, i32), Failure> {
    cli.check_config()?;
    let parsed = load_circuit(circuit)?;
    let space = cli.space_for(&parsed.spec)?;
    let psi = simulate(&parsed.spec, &cli.input_state(&space)?)?;
    Ok((cli.envelope("simulate", state_body(&parsed.spec, &psi)), EXIT_OK))
}

#[derive(serde::Deserialize)]
struct SavedState {
    num_a_modes: usize,
    num_b_modes: usize,
    cutoff: u32,
    photon_cap: Option<u32>,
    basis: Vec<Vec<u32>>,
    amplitudes: Vec<[f64; 2]>,
}

fn load_state(bytes: &[u8]) -> Result<(usize, usize, StateVector), Failure> {
    let saved: SavedState =
        serde_json::from_slice(bytes).map_err(|e| Failure::input(format!("state file is not valid: {e}")))?;
    if saved.basis.len() != saved.amplitudes.len() {
        return Err(Failure::input("state file has different numbers of basis entries and amplitudes"));
    }
    let space = make_space(saved.num_a_modes + saved.num_b_modes, saved.cutoff, saved.photon_cap)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); space.dimension()];
    for (occ, [re, im]) in saved.basis.iter().zip(&saved.amplitudes) {
        let idx = space
            .index_of(occ)
            .ok_or_else(|| Failure::input(format!("basis state {occ:?} is not in the declared space")))?;
        amps[idx] += Complex64::new(*re, *im);
    }
    Ok((saved.num_a_modes, saved.num_b_modes, StateVector::from_amplitudes(&space, amps)?))
}

fn cmd_decompose(cli: &Cli, file: &Path) -> Result<(Value, i32), Failure> {
    cli.check_config()?;
    let bytes = read(file)?;
    let is_json = bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{');
    let (psi, pseudo_a, pseudo_b, source) = if is_json {
        let (r, s, psi) = load_state(&bytes)?;
        let pa = PseudoBoson::default_for((0..r).collect())?;
        let pb = PseudoBoson::default_for((r..r + s).collect())?;
        (psi, pa, pb, "chain")
    } else {
        let parsed = load_circuit(file)?;
        let spec = &parsed.spec;
        let space = cli.space_for(spec)?;
        let psi = simulate(spec, &cli.input_state(&space)?)?;
        match classify(spec) {
            Ok(form) => (psi, form.pseudo_a, form.pseudo_b, "reduction"),
            Err(_) => {
                let pa = PseudoBoson::default_for(spec.a_fock_modes())?;
                let pb = PseudoBoson::default_for(spec.b_fock_modes())?;
                (psi, pa, pb, "chain")
            }
        }
    };
    let d = decompose(&psi, &pseudo_a, &pseudo_b)?;
    let terms: Vec<Value> = d
        .terms
        .iter()
        .map(|t| {
            let branch = match t.label.branch() {
                Branch::APlus => "A",
                Branch::BPlus => "B",
            };
            json!({ "two_k": t.label.two_k(), "two_mu": t.label.two_mu(), "branch": branch, "amplitude": pair(t.amplitude) })
        })
        .collect();
    let coeffs = |p: &PseudoBoson| p.coefficients().iter().map(|c| pair(*c)).collect::<Vec<_>>();
    let body = json!({
        "pseudo_source": source,
        "pseudo_a": coeffs(&pseudo_a),
        "pseudo_b": coeffs(&pseudo_b),
        "terms": terms,
        "residual_norm": d.residual_norm,
    });
    Ok((cli.envelope("decompose", body), EXIT_OK))
}

fn cmd_reduce(cli: &Cli, circuit: &Path) -> Result<(Value, i32), Failure> {
    let parsed = load_circuit(circuit)?;
    let body = match classify(&parsed.spec) {
        Ok(form) => {
            let coeffs = |p: &PseudoBoson| p.coefficients().iter().map(|c| pair(*c)).collect::<Vec<_>>();
            json!({
                "reducible": true,
                "pseudo_a": coeffs(&form.pseudo_a),
                "pseudo_b": coeffs(&form.pseudo_b),
                "eta": pair(form.eta),
                "trailing_passive": dsl::render(&form.trailing_passive),
            })
        }
        Err(obstruction) => {
            let span = obstruction.element.map_or(parsed.modes_span, |k| parsed.element_spans[k]);
            json!({ "reducible": false, "obstruction_span": span_json(span), "reason": obstruction.to_string() })
        }
    };
    Ok((cli.envelope("reduce", body), EXIT_OK))
}

fn cmd_verify(cli: &Cli, suite: &str) -> Result<(Value, i32), Failure> {
    if let (Some(d), Some(b)) = (cli.cutoff, cli.safe_bound) {
        if d < 2 || b > d - 2 {
            return Err(Failure::input(format!("--safe-bound {b} exceeds cutoff - 2")));
        }
    }
    let checks = run_suite(suite, &cli.overrides()?)?;
    let all_pass = checks.iter().all(|c| c.pass);
    let body = json!({ "suite": suite, "pass": all_pass, "checks": checks });
    Ok((cli.envelope("verify", body), if all_pass { EXIT_OK } else { EXIT_CHECK_FAILED }))
}

fn cmd_parse(cli: &Cli, circuit: &Path) -> Result<(Value, i32), Failure> {
    let parsed = load_circuit(circuit)?;
    let warnings: Vec<Value> = dsl::validate(&parsed)
        .into_iter()
        .map(|w| json!({ "message": w.message, "span": span_json(w.span) }))
        .collect();
    let body = json!({
        "ok": true,
        "num_a_modes": parsed.spec.num_a_modes(),
        "num_b_modes": parsed.spec.num_b_modes(),
        "elements": parsed.spec.elements().len(),
        "canonical": dsl::render(&parsed.spec),
        "warnings": warnings,
    });
    Ok((cli.envelope("parse", body), EXIT_OK))
}

/// Writes `text` next to `path` and renames it into place.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn emit(cli: &Cli, doc: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("JSON values serialize") + "\n";
    match &cli.out {
        Some(path) => write_atomically(path, &text).map_err(|e| Failure {
            code: EXIT_PARSE,
            message: format!("cannot write {}: {e}", path.display()),
            document: None,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Simulate { circuit } => cmd_simulate(cli, circuit),
        Command::Decompose { file } => cmd_decompose(cli, file),
        Command::Reduce { circuit } => cmd_reduce(cli, circuit),
        Command::Verify { suite } => cmd_verify(cli, suite),
        Command::Parse { circuit } => cmd_parse(cli, circuit),
    };
    match result {
        Ok((doc, code)) => match emit(cli, &doc) {
            Ok(()) => code,
            Err(f) => {
                eprintln!("su11: {}", f.message);
                f.code
            }
        },
        Err(f) => {
            if let Some(detail) = f.document {
                let command = match &cli.command {
                    Command::Simulate { .. } => "simulate",
                    Command::Decompose { .. } => "decompose",
                    Command::Reduce { .. } => "reduce",
                    Command::Verify { .. } => "verify",
                    Command::Parse { .. } => "parse",
                };
                let _ = emit(cli, &cli.envelope(command, detail));
            }
            eprintln!("su11: {}", f.message);
            f.code
        }
    }
}
