//! Command-line front end.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{
    audit, component_lagrangian, spinor_repack, Coupling, LagrangianReference, PotentialChoice,
};
use crate::calculus::{verify_structure_constants, Operator};
use crate::dmodule::{compare_matrices, matrices, verify_matrix_relations};
use crate::error::{Error, Result};
use crate::graded::latex::expr_latex;
use crate::graded::{Expr, Space};
use crate::potential::{
    check_potential_constraint, closed_form, matches_closed_form, potential_components, Potential,
    DEFAULT_TRUNCATION,
};
use crate::sim::{self, Boundary, Model, Profile, SimConfig, Target};
use crate::superfield::{closure_check, compare_tables, Stage};
use crate::variational::{
    auxiliary_solutions_generic, check_conservation, compare_current, euler_lagrange, noether_current,
    reference_current,
};

#[derive(Parser, Debug)]
#[command(name = "z22susy", version, about = "Z2xZ2-graded supersymmetry verification suite")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Directory for artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Latex => "tex",
            Format::Text => "txt",
            Format::Csv => "csv",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure constants, graded Jacobi identity and closure of the component variations.
    VerifyAlgebra,
    /// Induced transformation tables against the displayed ones.
    VerifyTables,
    /// Component Lagrangian from the superspace action.
    DeriveLagrangian(LagrangianArgs),
    /// Noether currents, conservation and comparison with the displayed currents.
    CheckCurrents(CurrentArgs),
    /// Matrix generators and their brackets.
    VerifyDmodule,
    /// Constraint equations of the component potentials.
    CheckPotential(PotentialArgs),
    /// Bosonic field evolution.
    Simulate(Box<SimArgs>),
    /// Every check, with a manifest.
    ReportAll,
}

#[derive(Args, Debug, Clone)]
pub struct LagrangianArgs {
    /// `poly:c0,c1,...`, `cos`, `sin` or `abstract`.
    #[arg(long, default_value = "abstract")]
    pub potential: String,
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    pub truncation: u32,
    #[arg(long)]
    pub eliminate_aux: bool,
    /// Abstract potential regardless of `--potential`.
    #[arg(long)]
    pub generic: bool,
    #[arg(long, value_enum, default_value_t = CouplingArg::Printed)]
    pub coupling: CouplingArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CouplingArg {
    Printed,
    Action,
}

#[derive(Args, Debug, Clone)]
pub struct CurrentArgs {
    /// One of H, Z, Q10, Q01, L11; all when omitted.
    #[arg(long)]
    pub symmetry: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PotentialArgs {
    #[arg(long, default_value = "cos")]
    pub potential: String,
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    pub truncation: u32,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SimArgs {
    /// TOML file with the `SimConfig` keys; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub dx: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long, value_parser = kebab::<Boundary>)]
    pub boundary: Option<Boundary>,
    #[arg(long, value_parser = kebab::<Model>)]
    pub model: Option<Model>,
    /// zero, kink, two-field-kink, gaussian or standing-wave.
    #[arg(long)]
    pub initial: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub velocity: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub amplitude: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub mode: Option<u32>,
    #[arg(long, value_parser = kebab::<Target>)]
    pub field: Option<Target>,
    #[arg(long)]
    pub output_stride: Option<usize>,
    /// Writes every recorded state to `snapshot_NNNNN.csv` under `--out`.
    #[arg(long)]
    pub snapshots: bool,
    /// Final profile as whitespace-separated columns `x phi00 phi11`.
    #[arg(long)]
    pub profile: Option<PathBuf>,
}

fn kebab<T: DeserializeOwned>(s: &str) -> std::result::Result<T, String> {
    serde_json::from_value(Value::String(s.to_string())).map_err(|e| e.to_string())
}

/// Result of one subcommand in every output format.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub name: String,
    pub passed: bool,
    pub json: Value,
    pub text: String,
    pub latex: String,
    /// Header and rows.
    pub csv: Vec<Vec<String>>,
}

impl Artifact {
    fn new(name: &str) -> Self {
        Artifact {
            name: name.into(),
            passed: true,
            json: Value::Null,
            text: String::new(),
            latex: String::new(),
            csv: vec![vec!["check".into(), "status".into()]],
        }
    }

    fn check(&mut self, label: &str, ok: bool) {
        self.passed &= ok;
        self.csv.push(vec![label.into(), status(ok).into()]);
        let _ = writeln!(self.text, "{:<48} {}", label, status(ok));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json") + "\n",
            Format::Text => self.text.clone(),
            Format::Latex => self.latex.clone(),
            Format::Csv => self.csv.iter().map(|r| csv_row(r) + "\n").collect(),
        }
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "fail"
    }
}

fn csv_row(r: &[String]) -> String {
    r.iter()
        .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
        .collect::<Vec<_>>()
        .join(",")
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn verify_algebra() -> Result<Artifact> {
    let mut a = Artifact::new("verify-algebra");
    let relations = verify_structure_constants();
    let mut closures = Vec::new();
    for (k, x) in Operator::SYMMETRIES.iter().enumerate() {
        for y in &Operator::SYMMETRIES[k..] {
            closures.push(closure_check(*x, *y)?);
        }
    }
    a.latex.push_str("\\begin{tabular}{ll}\n");
    for r in &relations {
        a.check(&r.relation, r.ok());
        let _ = writeln!(a.latex, "${}$ & {} \\\\", r.relation, r.status);
    }
    for c in &closures {
        let label = format!("closure [d_{}, d_{}]", c.first.name(), c.second.name());
        a.check(&label, c.ok);
        let _ = writeln!(a.latex, "$[\\delta_{{{}}}, \\delta_{{{}}}]$ & {} \\\\", c.first.name(), c.second.name(), status(c.ok));
    }
    a.latex.push_str("\\end{tabular}\n");
    a.json = json!({ "relations": relations, "closure": closures, "passed": a.passed });
    Ok(a)
}

pub fn verify_tables() -> Result<Artifact> {
    let mut a = Artifact::new("verify-tables");
    let entries = compare_tables()?;
    a.latex.push_str("\\begin{align*}\n");
    for e in &entries {
        let stage = match e.stage {
            Stage::Pre => "pre",
            Stage::Post => "post",
        };
        a.check(&format!("{} {} {}", stage, e.symmetry, e.field), e.matches);
        let _ = writeln!(a.latex, "\\delta_{{{}}} {} &= {} \\\\", e.symmetry, e.field, expr_latex(&e.derived));
    }
    a.latex.push_str("\\end{align*}\n");
    a.json = json!({ "entries": entries, "passed": a.passed });
    Ok(a)
}

fn potential_choice(spec: &str, generic: bool) -> Result<PotentialChoice> {
    let v = Potential::parse(spec)?;
    Ok(if generic || v == Potential::Abstract { PotentialChoice::Generic } else { PotentialChoice::Concrete(v) })
}

/// Displayed form corresponding to a derivation, if one is displayed.
pub fn displayed_form(choice: &PotentialChoice, eliminated: bool) -> Option<LagrangianReference> {
    match (choice, eliminated) {
        (PotentialChoice::Generic, false) => Some(LagrangianReference::WithAuxiliaries),
        (PotentialChoice::Generic, true) => Some(LagrangianReference::Eliminated),
        (PotentialChoice::Concrete(Potential::Cos), true) => Some(LagrangianReference::Cosine),
        (PotentialChoice::Concrete(v), true) if *v == Potential::massive() => Some(LagrangianReference::Massive),
        _ => None,
    }
}

pub fn derive_lagrangian(args: &LagrangianArgs) -> Result<Artifact> {
    let choice = potential_choice(&args.potential, args.generic)?;
    let coupling = match args.coupling {
        CouplingArg::Printed => Coupling::Printed,
        CouplingArg::Action => Coupling::Action,
    };
    let l = component_lagrangian(&choice, args.eliminate_aux, args.truncation, coupling)?;
    let mut a = Artifact::new("derive-lagrangian");
    let au = audit(&l);
    a.check("degree (0,0)", au.degree_00);
    a.check("star-real", au.star_real);
    let mut extra = serde_json::Map::new();
    if choice == PotentialChoice::Generic {
        let s = spinor_repack(&l, args.eliminate_aux);
        a.check("clifford relations", s.clifford);
        a.check("spinor form", s.matches);
        extra.insert("spinor".into(), to_json(&s));
    }
    if let Some(r) = displayed_form(&choice, args.eliminate_aux) {
        let diff = crate::action::lagrangian_difference(&l, r);
        a.check(&format!("displayed form {r:?}"), diff.is_zero());
        extra.insert("displayed".into(), json!({ "form": r, "difference": expr_to_value(&diff) }));
    }
    let total = l.total();
    let _ = writeln!(a.text, "L = {total}");
    a.latex = format!("\\mathcal{{L}} = {}\n", expr_latex(&total));
    a.json = json!({
        "potential": args.potential,
        "generic": choice == PotentialChoice::Generic,
        "eliminate_aux": args.eliminate_aux,
        "truncation": args.truncation,
        "coupling": coupling,
        "kinetic": expr_to_value(&l.kinetic),
        "interaction": expr_to_value(&l.interaction),
        "total": expr_to_value(&total),
        "latex": expr_latex(&total),
        "audit": au,
        "checks": extra,
        "passed": a.passed,
    });
    Ok(a)
}

fn expr_to_value(e: &Expr) -> Value {
    crate::graded::json::expr_to_json(e)
}

fn parse_operator(s: &str) -> Result<Operator> {
    Operator::from_name(s)
        .filter(|o| Operator::SYMMETRIES.contains(o))
        .ok_or_else(|| Error::Operator(s.to_string()))
}

pub fn check_currents(args: &CurrentArgs) -> Result<Artifact> {
    let ops = match &args.symmetry {
        Some(s) => vec![parse_operator(s)?],
        None => Operator::SYMMETRIES.to_vec(),
    };
    let (l, aux) = auxiliary_solutions_generic()?;
    let eom = euler_lagrange(&l)?;
    let mut a = Artifact::new("check-currents");
    let mut out = Vec::new();
    a.latex.push_str("\\begin{align*}\n");
    for op in ops {
        let c = noether_current(&l, op, &aux)?;
        let cons = check_conservation(&c, &eom);
        a.check(&format!("{} conserved", op.name()), cons.conserved);
        let mut entry = json!({
            "symmetry": c.symmetry,
            "j0": expr_to_value(&c.j0),
            "j1": expr_to_value(&c.j1),
            "conserved": cons.conserved,
            "residual": expr_to_value(&cons.residual),
            "latex": { "j0": expr_latex(&c.j0), "j1": expr_latex(&c.j1) },
        });
        if let Some((r0, r1)) = reference_current(op) {
            let m = compare_current(&c, &r0, &r1);
            a.check(&format!("{} matches displayed current", op.name()), m.ok());
            entry["match"] = to_json(&m);
        }
        let _ = writeln!(a.latex, "j^0_{{{0}}} &= {1} \\\\\nj^1_{{{0}}} &= {2} \\\\", op.name(), expr_latex(&c.j0), expr_latex(&c.j1));
        out.push(entry);
    }
    a.latex.push_str("\\end{align*}\n");
    a.json = json!({ "currents": out, "passed": a.passed });
    Ok(a)
}

pub fn verify_dmodule() -> Result<Artifact> {
    let mut a = Artifact::new("verify-dmodule");
    let printed = matrices(false)?;
    let derived = matrices(true)?;
    let rel_printed = verify_matrix_relations(&printed);
    let rel_derived = verify_matrix_relations(&derived);
    let comparison = compare_matrices()?;
    for r in &rel_printed {
        a.check(&format!("displayed {}", r.relation), r.holds);
    }
    for c in &comparison {
        a.check(&format!("derived {} equals displayed", c.generator), c.matches);
    }
    for r in &rel_derived {
        a.check(&format!("derived {}", r.relation), r.holds);
    }
    a.text.push('\n');
    for m in printed.values() {
        let _ = writeln!(a.text, "{} =\n{}", m.name, m.to_text());
        let _ = writeln!(a.latex, "\\hat{{{}}} = {}\n", m.name, m.to_latex());
    }
    a.json = json!({
        "displayed": printed.values().collect::<Vec<_>>(),
        "derived": derived.values().collect::<Vec<_>>(),
        "displayed_relations": rel_printed,
        "derived_relations": rel_derived,
        "comparison": comparison,
        "passed": a.passed,
    });
    Ok(a)
}

pub fn check_potential(args: &PotentialArgs) -> Result<Artifact> {
    let v = Potential::parse(&args.potential)?;
    let mut a = Artifact::new("check-potential");
    let pre = check_potential_constraint(&potential_components(&v, Stage::Pre, args.truncation));
    let series = potential_components(&v, Stage::Post, args.truncation);
    let post = check_potential_constraint(&series);
    let closed = closed_form(&v, Space::X);
    let exact = check_potential_constraint(&closed);
    // the abstract pair is symbolic, with nothing to expand
    let agrees = (v != Potential::Abstract).then(|| matches_closed_form(&series, &closed));
    a.check("constraint before redefinition", pre.ok());
    a.check("constraint after redefinition", post.ok());
    a.check("constraint on closed form", exact.ok());
    if let Some(ok) = agrees {
        a.check("series agrees with closed form", ok);
    }
    let _ = writeln!(a.text, "V00 = {}\nV11 = {}", closed.v00, closed.v11);
    a.latex = format!(
        "\\begin{{align*}}\nV_{{00}} &= {} \\\\\nV_{{11}} &= {}\n\\end{{align*}}\n",
        expr_latex(&closed.v00),
        expr_latex(&closed.v11)
    );
    a.json = json!({
        "potential": v.label(),
        "truncation": args.truncation,
        "v00": expr_to_value(&closed.v00),
        "v11": expr_to_value(&closed.v11),
        "pre": pre,
        "post": post,
        "closed_form": exact,
        "series_matches_closed_form": agrees,
        "passed": a.passed,
    });
    Ok(a)
}

/// Configuration from an optional file and flag overrides.
pub fn sim_config(args: &SimArgs) -> Result<SimConfig> {
    let mut cfg = match &args.config {
        Some(p) => SimConfig::from_toml(&std::fs::read_to_string(p)?)?,
        None => SimConfig::new(1.0, 0.05),
    };
    if let Some(v) = args.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = args.dx {
        cfg.dx = v;
        if args.dt.is_none() && args.config.is_none() {
            cfg.dt = 0.4 * v;
        }
    }
    if let Some(v) = args.dt {
        cfg.dt = v;
    }
    if let Some(v) = args.x_min {
        cfg.x_min = v;
    }
    if let Some(v) = args.x_max {
        cfg.x_max = v;
    }
    if let Some(v) = args.t_end {
        cfg.t_end = v;
    }
    if let Some(v) = args.boundary {
        cfg.boundary = v;
    }
    if let Some(v) = args.model {
        cfg.model = v;
    }
    if let Some(v) = args.output_stride {
        cfg.output_stride = v;
    }
    let profile_flags = args.x0.is_some()
        || args.velocity.is_some()
        || args.amplitude.is_some()
        || args.width.is_some()
        || args.mode.is_some()
        || args.field.is_some();
    if args.initial.is_some() || profile_flags {
        cfg.initial = profile(args, &cfg.initial)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn profile(args: &SimArgs, current: &Profile) -> Result<Profile> {
    let kind = match &args.initial {
        Some(k) => k.clone(),
        None => serde_json::to_value(current)?["profile"].as_str().unwrap_or("zero").to_string(),
    };
    let mut v = match &args.initial {
        Some(_) => json!({ "profile": kind }),
        None => serde_json::to_value(current)?,
    };
    let mut set = |key: &str, val: Value| {
        v[key] = val;
    };
    if let Some(x) = args.x0 {
        set("x0", json!(x));
    }
    if let Some(x) = args.velocity {
        set("v", json!(x));
    }
    if let Some(x) = args.amplitude {
        set("amplitude", json!(x));
    }
    if let Some(x) = args.width {
        set("width", json!(x));
    }
    if let Some(x) = args.mode {
        set("mode", json!(x));
    }
    if let Some(x) = args.field {
        set("field", to_json(&x));
    }
    serde_json::from_value(v).map_err(|e| Error::Config(format!("initial profile '{kind}': {e}")))
}

fn write_profile(path: &Path, st: &sim::FieldState, cfg: &SimConfig) -> Result<()> {
    let mut s = String::from("# x phi00 phi11\n");
    for (i, x) in cfg.grid().iter().enumerate() {
        let _ = writeln!(s, "{x} {} {}", st.phi00[i], st.phi11[i]);
    }
    std::fs::write(path, s)?;
    Ok(())
}

pub fn simulate(args: &SimArgs, out: Option<&Path>) -> Result<Artifact> {
    let cfg = sim_config(args)?;
    let traj = sim::run(&cfg)?;
    let mut a = Artifact::new("simulate");
    a.csv = vec![vec!["time".into(), "energy".into()]];
    for (t, e) in traj.times.iter().zip(&traj.energies) {
        a.csv.push(vec![t.to_string(), e.to_string()]);
    }
    let drift = traj.relative_energy_drift();
    let mut files = Vec::new();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        let p = dir.join("energy.csv");
        sim::write_energy_csv(&p, &traj)?;
        files.push(p);
        if args.snapshots {
            for (k, st) in traj.snapshots.iter().enumerate() {
                let p = dir.join(format!("snapshot_{k:05}.csv"));
                sim::write_snapshot_csv(&p, st, &cfg)?;
                files.push(p);
            }
        }
    }
    if let Some(p) = &args.profile {
        write_profile(p, &traj.final_state, &cfg)?;
        files.push(p.clone());
    }
    let _ = writeln!(
        a.text,
        "steps {}\ninitial energy {}\nfinal energy {}\nrelative energy drift {:e}",
        cfg.steps(),
        traj.energies[0],
        traj.energies[traj.energies.len() - 1],
        drift
    );
    a.latex = format!(
        "\\begin{{tabular}}{{ll}}\nsteps & {} \\\\\n$E(0)$ & {} \\\\\n$\\max|E(t)-E(0)|/|E(0)|$ & {:e}\n\\end{{tabular}}\n",
        cfg.steps(),
        traj.energies[0],
        drift
    );
    a.json = json!({
        "config": cfg,
        "steps": cfg.steps(),
        "times": traj.times,
        "energies": traj.energies,
        "relative_energy_drift": drift,
        "files": files,
        "passed": true,
    });
    Ok(a)
}

/// One manifest row.
#[derive(Clone, Debug, Serialize)]
pub struct ManifestEntry {
    pub check: String,
    pub status: String,
    pub artifact: PathBuf,
}

type Job = (&'static str, Box<dyn Fn() -> Result<Artifact> + Send + Sync>);

fn lag(potential: &str, eliminate_aux: bool) -> LagrangianArgs {
    LagrangianArgs {
        potential: potential.into(),
        truncation: DEFAULT_TRUNCATION,
        eliminate_aux,
        generic: false,
        coupling: CouplingArg::Printed,
    }
}

fn pot(potential: &str) -> PotentialArgs {
    PotentialArgs { potential: potential.into(), truncation: DEFAULT_TRUNCATION }
}

/// Runs the whole suite concurrently and writes one JSON artifact per check plus the manifest.
pub fn report_all(dir: &Path) -> Result<Vec<ManifestEntry>> {
    std::fs::create_dir_all(dir)?;
    let sim_dir = dir.join("simulate");
    let jobs: Vec<Job> = vec![
        ("verify-algebra", Box::new(verify_algebra)),
        ("verify-tables", Box::new(verify_tables)),
        ("derive-lagrangian-generic", Box::new(|| derive_lagrangian(&lag("abstract", false)))),
        ("derive-lagrangian-generic-eliminated", Box::new(|| derive_lagrangian(&lag("abstract", true)))),
        (
            "derive-lagrangian-action-coupling",
            Box::new(|| derive_lagrangian(&LagrangianArgs { coupling: CouplingArg::Action, ..lag("abstract", false) })),
        ),
        ("derive-lagrangian-massive", Box::new(|| derive_lagrangian(&lag("poly:0,0,1/2", true)))),
        ("derive-lagrangian-cos", Box::new(|| derive_lagrangian(&lag("cos", true)))),
        ("check-potential-abstract", Box::new(|| check_potential(&pot("abstract")))),
        ("check-potential-cos", Box::new(|| check_potential(&pot("cos")))),
        ("check-potential-sin", Box::new(|| check_potential(&pot("sin")))),
        ("check-potential-massive", Box::new(|| check_potential(&pot("poly:0,0,1/2")))),
        ("check-currents", Box::new(|| check_currents(&CurrentArgs { symmetry: None }))),
        ("verify-dmodule", Box::new(verify_dmodule)),
        ("simulate", Box::new(move || simulate(&SimArgs::default(), Some(&sim_dir)))),
    ];
    let results: Vec<Result<Artifact>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|(_, f)| s.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().expect("check thread")).collect()
    });
    let mut manifest = Vec::new();
    for ((name, _), r) in jobs.iter().zip(results) {
        let path = dir.join(format!("{name}.json"));
        let status = match r {
            Ok(a) => {
                std::fs::write(&path, a.render(Format::Json))?;
                status(a.passed).to_string()
            }
            Err(e) => {
                std::fs::write(&path, serde_json::to_string_pretty(&json!({ "error": e.to_string() }))? + "\n")?;
                "error".to_string()
            }
        };
        manifest.push(ManifestEntry { check: name.to_string(), status, artifact: path });
    }
    std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    let mut txt = String::new();
    for m in &manifest {
        let _ = writeln!(txt, "{}\t{}\t{}", m.check, m.status, m.artifact.display());
    }
    std::fs::write(dir.join("manifest.txt"), txt)?;
    Ok(manifest)
}

fn manifest_artifact(manifest: &[ManifestEntry]) -> Artifact {
    let mut a = Artifact::new("report-all");
    a.csv = vec![vec!["check".into(), "status".into(), "artifact".into()]];
    a.latex.push_str("\\begin{tabular}{lll}\n");
    for m in manifest {
        a.passed &= m.status == "ok";
        let path = m.artifact.display().to_string();
        a.csv.push(vec![m.check.clone(), m.status.clone(), path.clone()]);
        let _ = writeln!(a.text, "{:<40} {:<6} {}", m.check, m.status, path);
        let _ = writeln!(a.latex, "{} & {} & \\texttt{{{}}} \\\\", m.check, m.status, path);
    }
    a.latex.push_str("\\end{tabular}\n");
    a.json = json!({ "manifest": manifest, "passed": a.passed });
    a
}

fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Config(_) | Error::Potential(_) | Error::Parse(_) | Error::Operator(_) | Error::Toml(_))
}

/// Executes a parsed command; the return value is the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let out = cli.out.as_deref();
    let result = match &cli.command {
        Command::VerifyAlgebra => verify_algebra(),
        Command::VerifyTables => verify_tables(),
        Command::DeriveLagrangian(a) => derive_lagrangian(a),
        Command::CheckCurrents(a) => check_currents(a),
        Command::VerifyDmodule => verify_dmodule(),
        Command::CheckPotential(a) => check_potential(a),
        Command::Simulate(a) => simulate(a, out),
        Command::ReportAll => report_all(out.unwrap_or(Path::new("report"))).map(|m| manifest_artifact(&m)),
    };
    let artifact = match result {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return if is_usage(&e) { 2 } else { 1 };
        }
    };
    let rendered = artifact.render(cli.format);
    print!("{rendered}");
    if let (Some(dir), false) = (out, matches!(cli.command, Command::Simulate(_) | Command::ReportAll)) {
        let path = dir.join(format!("{}.{}", artifact.name, cli.format.extension()));
        if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, &rendered)) {
            eprintln!("error: {e}");
            return 1;
        }
    }
    if !artifact.passed {
        eprintln!("{}: one or more checks failed", artifact.name);
        return 1;
    }
    0
}

/// Parses arguments and executes; clap usage errors exit with 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
