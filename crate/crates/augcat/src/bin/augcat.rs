//! augcat: build and verify truncated shape categories, compute with finite
//! presheaves over them, and run the Kan/hypergroupoid/adjunction checkers.
//!
//! Exit codes: 0 = pass/success, 1 = property violation (witness in the
//! report), 2 = usage, structural or guard errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use augcat::cat::{check_category_axioms, check_ez, check_generalized_reedy, ReedyStructure};
use augcat::constructions;
use augcat::error::Error;
use augcat::homotopy;
use augcat::io;
use augcat::presheaf::{self, Presheaf, PresheafMap};
use augcat::report::RunReport;
use augcat::shapes::{self, ShapeKind};

#[derive(Parser)]
#[command(name = "augcat", version, about)]
struct Cli {
    /// Seed for randomized suites (recorded in the report).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// State guard for enumerative searches.
    #[arg(long, global = true, default_value_t = presheaf::DEFAULT_MAX_STATES)]
    max_states: u64,
    /// Default degree cap for checks (defaults to the shape truncation).
    #[arg(long, global = true)]
    cap: Option<u32>,
    /// Include wall-clock timing in the report (breaks byte-stability).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or verify shape categories.
    Shape {
        #[command(subcommand)]
        cmd: ShapeCmd,
    },
    /// Presheaf constructions over a shape.
    Presheaf {
        #[command(subcommand)]
        cmd: PresheafCmd,
    },
    /// Kan, hypergroupoid and related checks.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Augmented homotopy classes π_a(X, x₀).
    Pi {
        file: PathBuf,
        /// Object name, e.g. "[1]".
        #[arg(long)]
        object: String,
        /// Basepoint element name at the degree-0 simplex level.
        #[arg(long)]
        basepoint: String,
    },
    /// Nerve of a finite category/groupoid from a multiplication table.
    Nerve {
        /// Group/groupoid/monoid spec (JSON).
        #[arg(long)]
        group: PathBuf,
        /// Build the cyclic nerve over ΔC (requires a groupoid).
        #[arg(long)]
        cyclic: bool,
        /// Truncation degree.
        #[arg(long, default_value_t = 3)]
        cap: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The adjoints i_! and i^* along the simplex embedding.
    Adjoint {
        #[command(subcommand)]
        cmd: AdjointCmd,
    },
    /// Amalgamation pushout ΔC ⊔_Δ Ω at a shared truncation.
    Amalgamate {
        #[arg(long, default_value_t = 3)]
        max: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// DOT export of a category file, presheaf file, or tree encoding.
    Export {
        /// Category or presheaf JSON file (omit when using --tree).
        file: Option<PathBuf>,
        /// Render a tree from its nested-list encoding, e.g. "(**)".
        #[arg(long)]
        tree: Option<String>,
    },
}

#[derive(Subcommand)]
enum ShapeCmd {
    Build {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        max: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Verify {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum PresheafCmd {
    Boundary {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        object: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Horn {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        object: String,
        /// Canonical name of a codimension-1 face into the object.
        #[arg(long)]
        face: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Sk {
        file: PathBuf,
        #[arg(long)]
        level: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Cosk {
        file: PathBuf,
        #[arg(long)]
        level: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Normality of the object (0 → X is a normal mono).
    NormalCheck {
        file: PathBuf,
    },
    HomCount {
        source: PathBuf,
        target: PathBuf,
    },
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long)]
    kind: String,
    #[arg(long)]
    max: u32,
}

#[derive(Subcommand)]
enum CheckCmd {
    Kan {
        file: PathBuf,
    },
    Hypergroupoid {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    TrivialRel {
        map_file: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    CoskIdentity {
        map_file: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    PushoutProduct {
        map_f: PathBuf,
        map_g: PathBuf,
    },
}

#[derive(Subcommand)]
enum AdjointCmd {
    /// i_! of a presheaf over the simplex into a cyclic or tree shape.
    Shriek {
        file: PathBuf,
        #[arg(long)]
        shape: String,
        /// Target truncation (defaults to the source truncation).
        #[arg(long)]
        max: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// i^* of a presheaf over a cyclic/tree shape back to the simplex.
    Star {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = RunReport::new(std::env::args().collect(), cli.seed);
    let outcome = run(&cli, &mut report);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    match outcome {
        Ok(pass) => {
            if report.verdict.is_empty() {
                report.verdict = if pass { "pass".into() } else { "fail".into() };
            }
            println!("{}", report.to_json());
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            report.verdict = "error".into();
            report.details.push(format!("{e}"));
            eprintln!("{}", report.to_json());
            ExitCode::from(2)
        }
    }
}

fn read_inputs(report: &mut RunReport, paths: &[&PathBuf]) -> augcat::Result<Vec<Vec<u8>>> {
    let mut data = Vec::new();
    for p in paths {
        data.push(std::fs::read(p)?);
    }
    report.digest_inputs(&data);
    Ok(data)
}

fn write_output(path: &Option<PathBuf>, text: &str) -> augcat::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn load_presheaf(path: &PathBuf) -> augcat::Result<Presheaf> {
    let data = std::fs::read_to_string(path)?;
    let j: io::PresheafJson = serde_json::from_str(&data)?;
    io::presheaf_from_json(&j, None)
}

fn load_map(path: &PathBuf) -> augcat::Result<PresheafMap> {
    let data = std::fs::read_to_string(path)?;
    let j: io::PresheafMapJson = serde_json::from_str(&data)?;
    io::presheaf_map_from_json(&j)
}

fn parse_kind(s: &str) -> augcat::Result<ShapeKind> {
    ShapeKind::from_str(s).ok_or_else(|| {
        Error::Argument(format!(
            "unknown shape kind `{s}` (expected simplex|cyclic|planar-tree|tree|amalgam)"
        ))
    })
}

fn run(cli: &Cli, report: &mut RunReport) -> augcat::Result<bool> {
    let ms = cli.max_states;
    match &cli.command {
        Command::Shape { cmd } => match cmd {
            ShapeCmd::Build { kind, max, output } => {
                let shape = shapes::build_shape(parse_kind(kind)?, *max)?;
                let json = io::category_to_json(&shape.cat, Some(kind), Some(*max));
                write_output(output, &serde_json::to_string_pretty(&json)?)?;
                report.verdict = "built".into();
                report.details.push(format!(
                    "{} objects, {} morphisms",
                    shape.cat.object_count(),
                    shape.cat.morphism_count()
                ));
                Ok(true)
            }
            ShapeCmd::Verify { file } => {
                read_inputs(report, &[file])?;
                let data = std::fs::read_to_string(file)?;
                let j: io::CategoryJson = serde_json::from_str(&data)?;
                let cat = io::category_from_json(&j)?;
                let reedy = ReedyStructure::from_mono_epi(&cat);
                let mut pass = true;
                for (name, r) in [
                    ("category", check_category_axioms(&cat)),
                    ("generalized-reedy", check_generalized_reedy(&cat, &reedy)),
                    ("ez", check_ez(&cat, &reedy)),
                ] {
                    if r.ok() {
                        report.details.push(format!("{name}: ok"));
                    } else {
                        pass = false;
                        for v in r.violations.iter().take(5) {
                            report.witnesses.push(serde_json::json!({
                                "check": name, "axiom": v.axiom, "witness": v.witness,
                            }));
                        }
                    }
                }
                // For kind-tagged files, cross-check against a fresh build.
                if let (Some(kind), Some(max)) = (&j.kind, j.truncation) {
                    let rebuilt = shapes::build_shape(parse_kind(kind)?, max)?;
                    if rebuilt.cat.structural_eq(&cat) {
                        report.details.push("matches-builtin: ok".into());
                        for (name, r) in rebuilt.verify_all() {
                            if !r.ok() {
                                pass = false;
                                report.witnesses.push(serde_json::json!({
                                    "check": name, "witness": r.violations[0].witness,
                                }));
                            }
                        }
                    } else {
                        pass = false;
                        report.witnesses.push(serde_json::json!({
                            "check": "matches-builtin",
                            "witness": "file differs from the built shape",
                        }));
                    }
                }
                Ok(pass)
            }
        },
        Command::Presheaf { cmd } => match cmd {
            PresheafCmd::Boundary {
                shape,
                object,
                output,
            } => {
                let sh: shapes::Shape =
                    Arc::new(shapes::build_shape(parse_kind(&shape.kind)?, shape.max)?);
                let a = sh
                    .cat
                    .find_object(object)
                    .ok_or_else(|| Error::Argument(format!("unknown object `{object}`")))?;
                let (p, _) = presheaf::boundary(&sh, a).to_presheaf();
                write_output(
                    output,
                    &serde_json::to_string_pretty(&io::presheaf_to_json(&p))?,
                )?;
                report.verdict = "built".into();
                levels_summary(report, &p);
                Ok(true)
            }
            PresheafCmd::Horn {
                shape,
                object,
                face,
                output,
            } => {
                let sh: shapes::Shape =
                    Arc::new(shapes::build_shape(parse_kind(&shape.kind)?, shape.max)?);
                let a = sh
                    .cat
                    .find_object(object)
                    .ok_or_else(|| Error::Argument(format!("unknown object `{object}`")))?;
                let f = sh
                    .cat
                    .codim1_faces_into(a)
                    .into_iter()
                    .find(|&m| sh.cat.morphism(m).name == *face)
                    .ok_or_else(|| {
                        Error::Argument(format!(
                            "`{face}` is not a codimension-1 face of {object}"
                        ))
                    })?;
                let (p, _) = presheaf::horn(&sh, a, f)?.to_presheaf();
                write_output(
                    output,
                    &serde_json::to_string_pretty(&io::presheaf_to_json(&p))?,
                )?;
                report.verdict = "built".into();
                levels_summary(report, &p);
                Ok(true)
            }
            PresheafCmd::Sk {
                file,
                level,
                output,
            } => {
                read_inputs(report, &[file])?;
                let p = load_presheaf(file)?;
                let (sk, _) = presheaf::skeleton(&p, *level).to_presheaf();
                write_output(
                    output,
                    &serde_json::to_string_pretty(&io::presheaf_to_json(&sk))?,
                )?;
                report.verdict = "built".into();
                levels_summary(report, &sk);
                Ok(true)
            }
            PresheafCmd::Cosk {
                file,
                level,
                output,
            } => {
                read_inputs(report, &[file])?;
                let p = load_presheaf(file)?;
                let ck = presheaf::coskeleton(&p, *level)?;
                write_output(
                    output,
                    &serde_json::to_string_pretty(&io::presheaf_to_json(&ck))?,
                )?;
                report.verdict = "built".into();
                levels_summary(report, &ck);
                Ok(true)
            }
            PresheafCmd::NormalCheck { file } => {
                read_inputs(report, &[file])?;
                let p = load_presheaf(file)?;
                let normal = presheaf::is_normal_object(&p);
                report.verdict = if normal {
                    "normal".into()
                } else {
                    "not-normal".into()
                };
                Ok(normal)
            }
            PresheafCmd::HomCount { source, target } => {
                read_inputs(report, &[source, target])?;
                let x = load_presheaf(source)?;
                let y = load_presheaf(target)?;
                let n = presheaf::hom_enumerate(&x, &y, ms)?.len();
                report.verdict = "counted".into();
                report.details.push(format!("hom-count: {n}"));
                Ok(true)
            }
            PresheafCmd::Product {
                left,
                right,
                output,
            } => {
                read_inputs(report, &[left, right])?;
                let x = load_presheaf(left)?;
                let y = load_presheaf(right)?;
                let (p, _, _) = presheaf::product(&x, &y)?;
                write_output(
                    output,
                    &serde_json::to_string_pretty(&io::presheaf_to_json(&p))?,
                )?;
                report.verdict = "built".into();
                levels_summary(report, &p);
                Ok(true)
            }
        },
        Command::Check { cmd } => match cmd {
            CheckCmd::Kan { file } => {
                read_inputs(report, &[file])?;
                let p = load_presheaf(file)?;
                let cap = cli.cap.unwrap_or(p.shape().max_degree());
                let r = homotopy::is_kan(&p, cap, ms)?;
                for w in r.failures.iter().take(5) {
                    report.witnesses.push(serde_json::json!({
                        "object": w.object, "face": w.face,
                        "horn": w.assignment, "detail": w.detail,
                    }));
                }
                report
                    .details
                    .push(format!("horns checked: {}", r.horns_checked));
                Ok(r.ok())
            }
            CheckCmd::Hypergroupoid { file, degree } => {
                read_inputs(report, &[file])?;
                let p = load_presheaf(file)?;
                let cap = cli.cap.unwrap_or(p.shape().max_degree());
                let r =
                    homotopy::is_hypergroupoid(&p, *degree, cap, &homotopy::SetSurjective, ms)?;
                for w in r.failures.iter().take(5) {
                    report.witnesses.push(serde_json::json!({
                        "object": w.object, "face": w.face, "detail": w.detail,
                    }));
                }
                Ok(r.ok())
            }
            CheckCmd::TrivialRel { map_file, degree } => {
                read_inputs(report, &[map_file])?;
                let f = load_map(map_file)?;
                let cap = cli.cap.unwrap_or(f.source.shape().max_degree());
                let r = homotopy::is_trivial_relative_hypergroupoid(&f, *degree, cap, ms)?;
                for w in r.failures.iter().take(5) {
                    report.witnesses.push(serde_json::json!({
                        "object": w.object, "detail": w.detail,
                    }));
                }
                Ok(r.ok())
            }
            CheckCmd::CoskIdentity { map_file, degree } => {
                read_inputs(report, &[map_file])?;
                let f = load_map(map_file)?;
                Ok(homotopy::check_cosk_identity(&f, *degree, ms)?)
            }
            CheckCmd::PushoutProduct { map_f, map_g } => {
                read_inputs(report, &[map_f, map_g])?;
                let f = load_map(map_f)?;
                let g = load_map(map_g)?;
                let r = presheaf::pushout_product_check(&f, &g, 10_000)?;
                report.details.push(format!(
                    "f linear: {:?}; g linear: {:?}",
                    r.f_linear, r.g_linear
                ));
                Ok(r.normal)
            }
        },
        Command::Pi {
            file,
            object,
            basepoint,
        } => {
            read_inputs(report, &[file])?;
            let p = load_presheaf(file)?;
            let shape = p.shape().clone();
            let a = shape
                .cat
                .find_object(object)
                .ok_or_else(|| Error::Argument(format!("unknown object `{object}`")))?;
            let o0 = shape.simplex_object(0)?;
            let bp = p
                .level(o0)
                .iter()
                .position(|n| n == basepoint)
                .ok_or_else(|| Error::Argument(format!("unknown basepoint `{basepoint}`")))?;
            let classes = homotopy::pi_a(&p, bp as u32, a, ms)?;
            report.verdict = "computed".into();
            report
                .details
                .push(format!("|π_{}| = {}", object, classes.classes.len()));
            report.witnesses.push(serde_json::json!({
                "representatives": classes.representatives,
                "classes": classes.classes,
                "closure_added": classes.closure_added,
            }));
            Ok(true)
        }
        Command::Nerve {
            group,
            cyclic,
            cap,
            output,
        } => {
            read_inputs(report, &[group])?;
            let data = std::fs::read_to_string(group)?;
            let spec: io::AlgebraJson = serde_json::from_str(&data)?;
            let p = if *cyclic {
                let g = io::groupoid_from_json(&spec)?;
                let shape: shapes::Shape = Arc::new(shapes::build_cyclic(*cap)?);
                constructions::cyclic_nerve(&g, &shape)?
            } else {
                let c = io::algebra_from_json(&spec)?;
                let shape: shapes::Shape = Arc::new(shapes::build_simplex(*cap)?);
                constructions::nerve(&c, &shape)?
            };
            write_output(
                output,
                &serde_json::to_string_pretty(&io::presheaf_to_json(&p))?,
            )?;
            report.verdict = "built".into();
            levels_summary(report, &p);
            Ok(true)
        }
        Command::Adjoint { cmd } => match cmd {
            AdjointCmd::Shriek {
                file,
                shape,
                max,
                output,
            } => {
                read_inputs(report, &[file])?;
                let x = load_presheaf(file)?;
                let max = max.unwrap_or(x.shape().truncation);
                let kind = parse_kind(shape)?;
                let target: shapes::Shape = Arc::new(shapes::build_shape(kind, max)?);
                let p = match kind {
                    ShapeKind::Cyclic => constructions::i_shriek_crossed(&x, &target)?,
                    ShapeKind::PlanarTree | ShapeKind::Tree | ShapeKind::Amalgam => {
                        constructions::i_shriek_dendroidal(&x, &target)?
                    }
                    ShapeKind::Simplex => x.clone(),
                };
                write_output(
                    output,
                    &serde_json::to_string_pretty(&io::presheaf_to_json(&p))?,
                )?;
                report.verdict = "built".into();
                levels_summary(report, &p);
                Ok(true)
            }
            AdjointCmd::Star { file, output } => {
                read_inputs(report, &[file])?;
                let y = load_presheaf(file)?;
                let delta: shapes::Shape =
                    Arc::new(shapes::build_simplex(y.shape().delta.truncation)?);
                let p = constructions::i_star(&y, &delta)?;
                write_output(
                    output,
                    &serde_json::to_string_pretty(&io::presheaf_to_json(&p))?,
                )?;
                report.verdict = "built".into();
                levels_summary(report, &p);
                Ok(true)
            }
        },
        Command::Amalgamate { max, output } => {
            let cyc = shapes::build_cyclic(*max)?;
            let trees = shapes::build_trees(*max)?;
            let am = shapes::amalgamate_shapes(&cyc, &trees)?;
            let mut pass = true;
            for (name, r) in am.shape.verify_all() {
                if r.ok() {
                    report.details.push(format!("{name}: ok"));
                } else {
                    pass = false;
                    report.witnesses.push(serde_json::json!({
                        "check": name, "witness": r.violations[0].witness,
                    }));
                }
            }
            let json = io::category_to_json(&am.shape.cat, Some("amalgam"), Some(*max));
            write_output(output, &serde_json::to_string_pretty(&json)?)?;
            Ok(pass)
        }
        Command::Export { file, tree } => {
            if let Some(encoding) = tree {
                let t = parse_tree(encoding)?;
                write_output(&None, &augcat::dot::tree_dot(&t))?;
                report.verdict = "exported".into();
                return Ok(true);
            }
            let file = file
                .as_ref()
                .ok_or_else(|| Error::Argument("export needs a file or --tree".into()))?;
            read_inputs(report, &[file])?;
            let data = std::fs::read_to_string(file)?;
            // Category file or presheaf file, decided by the JSON fields.
            if let Ok(j) = serde_json::from_str::<io::CategoryJson>(&data) {
                let cat = io::category_from_json(&j)?;
                let gens = cat.generators();
                write_output(&None, &augcat::dot::category_dot(&cat, &gens))?;
            } else {
                let j: io::PresheafJson = serde_json::from_str(&data)?;
                let p = io::presheaf_from_json(&j, None)?;
                write_output(&None, &augcat::dot::presheaf_dot(&p))?;
            }
            report.verdict = "exported".into();
            Ok(true)
        }
    }
}

fn levels_summary(report: &mut RunReport, p: &Presheaf) {
    let cat = &p.shape().cat;
    let mut parts = Vec::new();
    for o in cat.objects() {
        if cat.degree(o) <= p.truncation() {
            parts.push(format!("{}:{}", cat.object(o).name, p.size(o)));
        }
    }
    report.details.push(format!("levels {}", parts.join(" ")));
}

fn parse_tree(s: &str) -> augcat::Result<shapes::PTree> {
    fn rec(chars: &mut std::iter::Peekable<std::str::Chars>) -> augcat::Result<shapes::PTree> {
        match chars.next() {
            Some('*') => Ok(shapes::PTree::Leaf),
            Some('(') => {
                let mut children = Vec::new();
                loop {
                    match chars.peek() {
                        Some(')') => {
                            chars.next();
                            return Ok(shapes::PTree::Vertex(children));
                        }
                        Some(_) => children.push(rec(chars)?),
                        None => return Err(Error::Argument("unbalanced tree encoding".into())),
                    }
                }
            }
            other => Err(Error::Argument(format!(
                "bad tree encoding near {other:?} (use '*' and parentheses)"
            ))),
        }
    }
    let mut chars = s.chars().peekable();
    let t = rec(&mut chars)?;
    if chars.next().is_some() {
        return Err(Error::Argument(
            "trailing characters in tree encoding".into(),
        ));
    }
    Ok(t)
}
