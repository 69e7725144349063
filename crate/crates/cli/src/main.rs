mod fuzz;
mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use colour_loop::colouralg::{discolour, recolour, ColourAlgebra};
use colour_loop::gmodule::{closure_dimension, find_isomorphism, is_graded_irreducible, GradedModule, Verdict};
use colour_loop::linalg::Matrix;
use colour_loop::loopfunctor::{iterate_lift, loop_module};
use colour_loop::workbench::{block_shape, classify_sl2c, make_bd_model, BlockShape, BD_ASSUMPTION};
use serde_json::{json, Value};

use input::{load_algebra, load_any, load_module, load_sigma, parse_orders, parse_subgroup, Loaded};

#[derive(Parser)]
#[command(name = "colour", version, about = "Exact computations with Lie colour algebras and their loop modules")]
struct Cli {
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = colour_loop::gmodule::DEFAULT_SEED)]
    seed: u64,
    /// Print one JSON object on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra or module file and run seeded spot checks.
    Verify { file: PathBuf },
    /// Twist the bracket of an algebra by a multiplier.
    Discolour {
        algebra: PathBuf,
        /// A multiplier file, or `paper-sl2` for sigma(a,b) = (-1)^(a2 b1).
        #[arg(long)]
        sigma: String,
        /// Also write the discoloured algebra here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Loop module of a graded module by a subgroup of its grading subgroup.
    Loop {
        module: PathBuf,
        /// Generators of the finer subgroup, e.g. `11` or `0:1,1:0`; empty for the trivial subgroup.
        #[arg(long, allow_hyphen_values = true)]
        refine_by: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide graded irreducibility (exit 0 irreducible, 1 reducible).
    Irreducible { module: PathBuf },
    /// Decide graded isomorphism (exit 0 isomorphic, 1 not).
    Isomorphic { a: PathBuf, b: PathBuf },
    /// Lift a graded-irreducible module along a composition series of its group.
    Lift {
        module: PathBuf,
        /// Expected cyclic factor orders of the grading group, e.g. `2,2`.
        #[arg(long)]
        group: Option<String>,
    },
    /// Classify the graded and ungraded irreducible modules of colour sl2.
    ClassifySl2 {
        #[arg(long)]
        max_lambda: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Z2 x Z2 supersymmetry model and check its block pattern.
    BdModel {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Mismatch(String),
}

impl From<colour_loop::Error> for Failure {
    fn from(e: colour_loop::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Mismatch(e.to_string())
        }
    }
}

/// What a command reports: a verdict, text for people and JSON for machines.
struct Report {
    ok: bool,
    text: String,
    json: Value,
}

fn write_json(path: &Path, v: &impl serde::Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Input(e.to_string()))?;
    fs::write(path, s + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.row_vectors())
}

fn matrix_text(m: &Matrix) -> String {
    m.row_vectors()
        .iter()
        .map(|r| format!("  [{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn group_name(orders: &[u32]) -> String {
    if orders.is_empty() {
        return "the trivial group".into();
    }
    orders.iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join(" x ")
}

fn describe_algebra(a: &ColourAlgebra) -> String {
    let mut lines = vec![format!(
        "algebra of dim {} graded by {}, epsilon exponents {:?} (m = {}), {}",
        a.dim(),
        group_name(a.group().orders()),
        a.epsilon().exponents(),
        a.epsilon().root_order(),
        if a.is_superalgebra() { "a Lie superalgebra" } else { "not super" }
    )];
    for b in a.brackets() {
        let terms: Vec<String> = b.coeffs.iter().map(|(k, c)| format!("({c}) {}", a.basis()[*k].name)).collect();
        lines.push(format!("  [{}, {}] = {}", a.basis()[b.i].name, a.basis()[b.j].name, terms.join(" + ")));
    }
    lines.join("\n")
}

fn describe_module(m: &GradedModule) -> String {
    format!(
        "module of dim {} graded by G/{}, sector dims {:?} over reps {:?}",
        m.dim(),
        m.subgroup(),
        m.sector_dims(),
        m.quotient().reps().iter().map(|r| r.to_string()).collect::<Vec<_>>()
    )
}

fn verify(file: &Path, seed: u64) -> Result<Report, Failure> {
    let (kind, text, dim, bad) = match load_any(file)? {
        Loaded::Algebra(a) => ("algebra", describe_algebra(&a), a.dim(), fuzz::algebra(&a, seed)?),
        Loaded::Module(m) => ("module", describe_module(&m), m.dim(), fuzz::module(&m, seed)?),
    };
    let ok = bad == 0;
    Ok(Report {
        ok,
        text: format!(
            "{text}\nvalid {kind}; {} random homogeneous spot checks, {bad} failures",
            fuzz::ROUNDS
        ),
        json: json!({"kind": kind, "valid": ok, "dim": dim, "spot_checks": fuzz::ROUNDS, "spot_failures": bad, "seed": seed}),
    })
}

fn discolour_cmd(path: &Path, sigma: &str, out: Option<&Path>) -> Result<Report, Failure> {
    let a = load_algebra(path)?;
    let s = load_sigma(sigma)?;
    let d = discolour(&a, &s)?;
    let round_trip = recolour(&d, &s)? == a;
    if let Some(o) = out {
        write_json(o, &d)?;
    }
    Ok(Report {
        ok: round_trip,
        text: format!("{}\nrecolouring returns the input: {round_trip}", describe_algebra(&d)),
        json: json!({"algebra": d, "superalgebra": d.is_superalgebra(), "round_trip": round_trip}),
    })
}

fn loop_cmd(path: &Path, refine_by: &str, out: Option<&Path>) -> Result<Report, Failure> {
    let m = load_module(path)?;
    let k = parse_subgroup(m.group(), refine_by)?;
    let lm = loop_module(&m, &k)?;
    let irreducible = is_graded_irreducible(&lm.module)?.is_irreducible();
    if let Some(o) = out {
        write_json(o, &lm.module)?;
    }
    Ok(Report {
        ok: true,
        text: format!("loop {}\ngraded-irreducible: {irreducible}", describe_module(&lm.module)),
        json: json!({"module": lm.module, "dim": lm.module.dim(), "sector_dims": lm.module.sector_dims(), "irreducible": irreducible}),
    })
}

fn irreducible_cmd(path: &Path) -> Result<Report, Failure> {
    let m = load_module(path)?;
    let closure = closure_dimension(&m)?;
    Ok(match is_graded_irreducible(&m)? {
        Verdict::Irreducible { .. } => Report {
            ok: true,
            text: format!("{}\ngraded-irreducible (closure dimension {closure} = {}^2)", describe_module(&m), m.dim()),
            json: json!({"irreducible": true, "dim": m.dim(), "closure_dimension": closure}),
        },
        Verdict::Reducible { witness } => Report {
            ok: false,
            text: format!(
                "{}\nreducible: proper graded submodule of dim {} (closure dimension {closure})",
                describe_module(&m),
                witness.dim()
            ),
            json: json!({"irreducible": false, "dim": m.dim(), "closure_dimension": closure,
                "witness": {"basis": witness.basis(), "degrees": witness.degrees()}}),
        },
    })
}

fn isomorphic_cmd(a: &Path, b: &Path, seed: u64) -> Result<Report, Failure> {
    let v = load_module(a)?;
    let w = load_module(b)?;
    if **v.algebra() != **w.algebra() {
        return Err(Failure::Input("the two modules are over different algebras".into()));
    }
    Ok(match find_isomorphism(&v, &w, seed)? {
        Some(t) => Report {
            ok: true,
            text: format!("isomorphic; intertwiner:\n{}", matrix_text(&t)),
            json: json!({"isomorphic": true, "intertwiner": matrix_json(&t)}),
        },
        None => Report {
            ok: false,
            text: "not isomorphic".into(),
            json: json!({"isomorphic": false}),
        },
    })
}

fn lift_cmd(path: &Path, group: Option<&str>) -> Result<Report, Failure> {
    let m = load_module(path)?;
    if let Some(g) = group {
        let orders = parse_orders(g)?;
        if orders != m.group().orders() {
            return Err(Failure::Input(format!(
                "--group {orders:?} does not match the module's group {:?}",
                m.group().orders()
            )));
        }
    }
    let r = iterate_lift(&m)?;
    let mut lines = vec![format!("chain: {}", r.chain.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" > "))];
    for s in &r.steps {
        lines.push(format!("  step -> {:?}: {:?}, dim {}", s.to.iter().map(|e| e.to_string()).collect::<Vec<_>>(), s.outcome, s.dim));
    }
    for c in r.class_summaries() {
        lines.push(format!("  class: dim {}, sector dims {:?}", c.dim, c.sector_dims));
    }
    Ok(Report {
        ok: true,
        text: lines.join("\n"),
        json: serde_json::to_value(&r).map_err(|e| Failure::Input(e.to_string()))?,
    })
}

fn classify_cmd(max_lambda: u32, out: Option<&Path>) -> Result<Report, Failure> {
    let r = classify_sl2c(max_lambda)?;
    if let Some(o) = out {
        write_json(o, &r)?;
    }
    let mut lines = Vec::new();
    for l in &r.lambdas {
        lines.push(format!(
            "lambda {}: {} graded classes dims {:?} ({}), {} shift classes, {} ungraded dims {:?}, twist orbit {}: {}",
            l.lambda,
            l.graded_classes,
            l.graded_dims,
            l.matched.join(", "),
            l.equivalence_classes,
            l.ungraded_classes,
            l.ungraded_dims,
            l.twist_orbit,
            if l.pass { "pass".to_string() } else { format!("FAIL: {}", l.mismatches.join("; ")) }
        ));
    }
    lines.push(format!("{} mismatches in total", r.mismatches));
    Ok(Report {
        ok: r.pass,
        text: lines.join("\n"),
        json: serde_json::to_value(&r).map_err(|e| Failure::Input(e.to_string()))?,
    })
}

fn bd_cmd(out: &Path) -> Result<Report, Failure> {
    let bd = make_bd_model()?;
    fs::create_dir_all(out).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    let l = &bd.loop_module.module;
    let names: Vec<String> = bd.algebra.basis().iter().map(|b| b.name.clone()).collect();
    let shapes: Vec<BlockShape> = l.action().iter().map(block_shape).collect();
    let want = [BlockShape::BlockDiagonal, BlockShape::BlockDiagonal, BlockShape::BlockAntiDiagonal, BlockShape::BlockAntiDiagonal];
    let sectors: Vec<String> = l.degrees().iter().map(|d| d.to_string()).collect();
    let ok = shapes == want && sectors == ["00", "01", "11", "10"];
    let report = json!({
        "assumption": BD_ASSUMPTION,
        "sector_order": sectors,
        "blocks": names.iter().zip(&shapes).map(|(n, s)| json!({"element": n, "shape": s})).collect::<Vec<_>>(),
        "loop": l.action().iter().map(matrix_json).collect::<Vec<_>>(),
        "pass": ok,
    });
    write_json(&out.join("algebra.json"), &*bd.algebra)?;
    write_json(&out.join("seed.json"), &bd.seed)?;
    write_json(&out.join("loop.json"), l)?;
    write_json(&out.join("report.json"), &report)?;
    let mut lines = vec![format!("assumption: {BD_ASSUMPTION}"), format!("sectors: {}", sectors.join(", "))];
    for ((n, s), m) in names.iter().zip(&shapes).zip(l.action()) {
        lines.push(format!("{n}: {s:?}\n{}", matrix_text(m)));
    }
    lines.push(format!("wrote algebra.json, seed.json, loop.json, report.json to {}", out.display()));
    Ok(Report {
        ok,
        text: lines.join("\n"),
        json: report,
    })
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Verify { file } => verify(file, cli.seed),
        Command::Discolour { algebra, sigma, out } => discolour_cmd(algebra, sigma, out.as_deref()),
        Command::Loop { module, refine_by, out } => loop_cmd(module, refine_by, out.as_deref()),
        Command::Irreducible { module } => irreducible_cmd(module),
        Command::Isomorphic { a, b } => isomorphic_cmd(a, b, cli.seed),
        Command::Lift { module, group } => lift_cmd(module, group.as_deref()),
        Command::ClassifySl2 { max_lambda, out } => classify_cmd(*max_lambda, out.as_deref()),
        Command::BdModel { out } => bd_cmd(out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.json);
            } else {
                println!("{}", r.text);
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Input(m) => (2, "invalid-input", m),
                Failure::Mismatch(m) => (1, "mismatch", m),
            };
            if cli.json {
                println!("{}", json!({"ok": false, "error": kind, "message": msg}));
            }
            eprintln!("colour: {msg}");
            ExitCode::from(code)
        }
    }
}
