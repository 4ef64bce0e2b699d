//! `inccalc`: validate, certify and export posets, simplicial complexes and
//! Greechie diagrams.
//!
//! Exit codes: 0 success, 1 axiom failure, 2 invalid input, 3 I/O or parse
//! failure, 4 element cap exceeded, 64 usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use incidence_calculus::export::{
    face_poset_json, hasse_dot, omega_json, operator_json, poset_json, proper_poset_json,
};
use incidence_calculus::text::{parse_complex, parse_greechie, parse_poset, parse_vertex_order};
use incidence_calculus::{
    Error, FacePoset, GreechieLogic, IntOperator, IntStructure, Poset, ProperPoset,
    DEFAULT_ELEMENT_CAP,
};

#[derive(Parser)]
#[command(name = "inccalc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the input is well formed (pasting conditions, downward closure).
    Validate(Common),
    /// Build the border and Cartan differential and verify the axioms.
    Check(Common),
    /// Emit the Hasse diagram or JSON renderings of the structures.
    Export(ExportArgs),
}

#[derive(Args)]
struct Common {
    input: PathBuf,
    /// Input kind; inferred from the extension (.poset, .cx, .gdl) by default.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Largest admissible number of poset elements.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: usize,
    /// File listing the vertices (atoms) in the order that fixes border signs.
    #[arg(long)]
    vertex_order: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["dot", "json"])))]
struct ExportArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    dot: Option<DotTarget>,
    #[arg(long, value_enum)]
    json: Option<JsonTarget>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Poset,
    Complex,
    Greechie,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotTarget {
    Hasse,
}

#[derive(Clone, Copy, ValueEnum)]
enum JsonTarget {
    Poset,
    Border,
    Omega,
}

const EXIT_AXIOM: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_USAGE: u8 = 64;

/// A terminal condition: exit code plus the diagnostic to report.
struct Failure {
    code: u8,
    message: String,
    detail: Value,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        let message = message.into();
        Self {
            code: EXIT_USAGE,
            detail: json!({ "kind": "usage", "message": message }),
            message,
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        let message = format!("{}: {err}", path.display());
        Self {
            code: EXIT_IO,
            detail: json!({ "kind": "io", "message": message }),
            message,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let message = err.to_string();
        let (code, detail) = match &err {
            Error::Parse { line, message } => (
                EXIT_IO,
                json!({ "kind": "parse", "line": line, "message": message }),
            ),
            Error::TooLarge { size, cap } => {
                (EXIT_CAP, json!({ "kind": "cap", "size": size, "cap": cap }))
            }
            Error::PastingViolation {
                first,
                second,
                shared,
            } => (
                EXIT_INVALID,
                json!({ "kind": "pasting", "blocks": [first, second], "shared_atoms": shared }),
            ),
            Error::DuplicateBlock { first, second } => (
                EXIT_INVALID,
                json!({ "kind": "duplicate_block", "blocks": [first, second] }),
            ),
            Error::MissingFace(face) => (
                EXIT_INVALID,
                json!({ "kind": "missing_face", "face": face }),
            ),
            _ => (EXIT_INVALID, json!({ "kind": "invalid" })),
        };
        let mut detail = detail;
        detail["message"] = Value::String(message.clone());
        Self {
            code,
            message,
            detail,
        }
    }
}

enum Loaded {
    Poset(Poset),
    Complex(FacePoset),
    Greechie(ProperPoset),
}

impl Loaded {
    fn poset(&self) -> &Poset {
        match self {
            Loaded::Poset(p) => p,
            Loaded::Complex(fp) => fp.poset(),
            Loaded::Greechie(pp) => pp.poset(),
        }
    }

    fn border(&self) -> Result<IntOperator, Failure> {
        match self {
            Loaded::Poset(_) => Err(Failure::usage(
                "a plain poset has no border operator; borders are constructed only for simplicial complexes (.cx) and Greechie diagrams (.gdl)",
            )),
            Loaded::Complex(fp) => Ok(fp.border()),
            Loaded::Greechie(pp) => Ok(pp.border()),
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Loaded::Poset(_) => "poset",
            Loaded::Complex(_) => "complex",
            Loaded::Greechie(_) => "greechie",
        }
    }

    fn warnings(&self) -> &[String] {
        match self {
            Loaded::Greechie(pp) => pp.logic().warnings(),
            _ => &[],
        }
    }
}

fn infer_kind(args: &Common) -> Result<Kind, Failure> {
    if let Some(k) = args.kind {
        return Ok(k);
    }
    match args.input.extension().and_then(|e| e.to_str()) {
        Some("poset") => Ok(Kind::Poset),
        Some("cx") => Ok(Kind::Complex),
        Some("gdl") => Ok(Kind::Greechie),
        _ => Err(Failure::usage(format!(
            "cannot infer the kind of {}; pass --kind",
            args.input.display()
        ))),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn load(args: &Common) -> Result<Loaded, Failure> {
    let kind = infer_kind(args)?;
    let text = read(&args.input)?;
    let order = match &args.vertex_order {
        Some(path) if kind == Kind::Poset => {
            return Err(Failure::usage(format!(
                "--vertex-order {} applies only to complexes and Greechie diagrams",
                path.display()
            )))
        }
        Some(path) => Some(parse_vertex_order(&read(path)?)),
        None => None,
    };
    Ok(match kind {
        Kind::Poset => Loaded::Poset(parse_poset(&text, args.cap)?),
        Kind::Complex => {
            let mut complex = parse_complex(&text)?;
            if let Some(order) = order {
                complex = complex.with_vertex_order(order)?;
            }
            Loaded::Complex(complex.face_poset_capped(args.cap)?)
        }
        Kind::Greechie => {
            let mut logic = GreechieLogic::validate_logic(parse_greechie(&text)?)?;
            if let Some(order) = order {
                logic = logic.with_vertex_order(order)?;
            }
            Loaded::Greechie(logic.proper_poset_capped(args.cap)?)
        }
    })
}

fn emit(args: &Common, body: &str) -> Result<(), Failure> {
    match &args.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::io(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::io(Path::new("<stdout>"), e))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn summary(loaded: &Loaded) -> Value {
    let poset = loaded.poset();
    let mut v = json!({
        "valid": true,
        "kind": loaded.kind_name(),
        "elements": poset.len(),
        "covers": poset.cover_pairs().count(),
        "jordan_holder": poset.is_jordan_holder(),
        "warnings": loaded.warnings(),
    });
    match loaded {
        Loaded::Poset(p) => {
            if let Some((lo, hi)) = p.jordan_holder_violation() {
                v["jordan_holder_violation"] = json!([lo, hi]);
            }
        }
        Loaded::Complex(fp) => {
            v["vertices"] = json!(fp.complex().vertices());
        }
        Loaded::Greechie(pp) => {
            v["blocks"] = json!(pp.logic().blocks().len());
            v["atoms"] = json!(pp.logic().atoms());
        }
    }
    v
}

fn summary_text(v: &Value) -> String {
    let mut out = format!(
        "valid {}: {} elements, {} covers, Jordan-Hölder: {}\n",
        v["kind"].as_str().unwrap_or(""),
        v["elements"],
        v["covers"],
        if v["jordan_holder"] == json!(true) {
            "yes"
        } else {
            "no"
        },
    );
    if let Some(pair) = v.get("jordan_holder_violation") {
        out.push_str(&format!(
            "  unequal maximal chains between {} and {}\n",
            pair[0].as_str().unwrap_or(""),
            pair[1].as_str().unwrap_or("")
        ));
    }
    if let Some(blocks) = v.get("blocks") {
        out.push_str(&format!("  blocks: {blocks}\n"));
    }
    for w in v["warnings"].as_array().into_iter().flatten() {
        out.push_str(&format!("warning: {}\n", w.as_str().unwrap_or("")));
    }
    out
}

fn cmd_validate(args: &Common) -> Result<u8, Failure> {
    let loaded = match load(args) {
        Ok(l) => l,
        Err(f) if f.code == EXIT_INVALID => {
            let body = match args.format {
                Format::Json => pretty(&json!({ "valid": false, "error": f.detail })),
                Format::Text => format!("invalid: {}\n", f.message),
            };
            emit(args, &body)?;
            return Ok(EXIT_INVALID);
        }
        Err(f) => return Err(f),
    };
    let v = summary(&loaded);
    let body = match args.format {
        Format::Json => pretty(&v),
        Format::Text => summary_text(&v),
    };
    emit(args, &body)?;
    Ok(0)
}

fn warn(loaded: &Loaded) {
    for w in loaded.warnings() {
        eprintln!("inccalc: warning: {w}");
    }
}

fn cmd_check(args: &Common) -> Result<u8, Failure> {
    let loaded = load(args)?;
    warn(&loaded);
    let border = loaded.border()?;
    let structure = IntStructure::new(loaded.poset(), border)?;
    let report = structure.verify();
    let body = match args.format {
        Format::Json => pretty(&report.to_json()),
        Format::Text => report.to_text(),
    };
    emit(args, &body)?;
    Ok(if report.all_pass() { 0 } else { EXIT_AXIOM })
}

fn cmd_export(args: &ExportArgs) -> Result<u8, Failure> {
    let loaded = load(&args.common)?;
    warn(&loaded);
    let poset = loaded.poset();
    let body = match (args.dot, args.json) {
        (Some(DotTarget::Hasse), _) => hasse_dot(poset, "hasse"),
        (None, Some(JsonTarget::Poset)) => pretty(&match &loaded {
            Loaded::Poset(p) => poset_json(p),
            Loaded::Complex(fp) => face_poset_json(fp),
            Loaded::Greechie(pp) => proper_poset_json(pp),
        }),
        (None, Some(JsonTarget::Border)) => pretty(&operator_json(poset, &loaded.border()?)),
        (None, Some(JsonTarget::Omega)) => pretty(&omega_json(poset)),
        (None, None) => return Err(Failure::usage("export needs --dot or --json")),
    };
    emit(&args.common, &body)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match &cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Check(args) => cmd_check(args),
        Command::Export(args) => cmd_export(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("inccalc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
