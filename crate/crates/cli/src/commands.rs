//! Command-line entry points and the report envelope.
//!
//! Every command resolves its input, runs one library operation and yields a
//! payload plus an exit code. With `--json` the payload is wrapped in a
//! [`Report`] and printed canonically: keys sorted, no insignificant
//! whitespace, no timing data, so identical inputs give identical bytes.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand};
use finitopos::classify::{
    classify_topos, counterexample_point, sweep_theorems, CilcStatus, Origin, SweepConfig, ToposReport,
};
use finitopos::geom::{
    bc_holds, etale_square, is_cc_inverse_image, is_locally_connected, is_locally_connected_bounded,
    restriction_square, BCSquare, TriState, Verdict, Witness,
};
use finitopos::{FinCategory, FinFunctor, GeomMorphism};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::resolve::{resolve, Model, NamedCategory, NamedSpace};
use crate::syntax::{parse, DslError, Ident, GRAMMAR_VERSION};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "finitopos", version, about = "Checks geometric morphisms between presheaf toposes on finite sites")]
pub struct Cli {
    /// Print a canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the composition tables of the categories in a file.
    CheckCategory { file: PathBuf, name: Option<String> },
    /// Validate a topology and classify its points.
    CheckSpace { file: PathBuf, name: Option<String> },
    /// Decide whether a functor induces a locally connected morphism.
    CheckMorphism {
        file: PathBuf,
        name: Option<String>,
        /// Also run the brute-force oracle on presheaves of this size.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Classify the presheaf topos of a category or the sheaf topos of a space.
    Classify {
        file: PathBuf,
        name: Option<String>,
        /// Reject non-T0 spaces instead of passing to the T0 quotient.
        #[arg(long)]
        no_t0_quotient: bool,
    },
    /// Produce a certified failure of local connectedness at a point.
    Witness { file: PathBuf, name: Option<String> },
    /// Check the theorems on every small category and functor.
    Sweep {
        #[arg(long, default_value_t = 2)]
        max_objects: usize,
        #[arg(long, default_value_t = 4)]
        max_arrows: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of functors to decide.
        #[arg(long, default_value_t = 500)]
        budget: usize,
        /// Carrier bound for the square checks.
        #[arg(long, default_value_t = 1)]
        bound: usize,
        #[arg(long, default_value_t = 8)]
        bc_functors: usize,
        /// Give up after this many seconds.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Check the Beck-Chevalley condition for a square up to a carrier bound.
    ///
    /// Name four functors Q G F P with F∘Q = P∘G, or one functor F together
    /// with --etale or --restrict.
    BcSquare {
        file: PathBuf,
        functors: Vec<String>,
        /// Pull F back along the étale morphism of this presheaf on its target.
        #[arg(long)]
        etale: Option<String>,
        /// Restrict F to the full subcategory of its target on these objects.
        #[arg(long, value_delimiter = ',')]
        restrict: Vec<String>,
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckCategory { .. } => "check-category",
            Command::CheckSpace { .. } => "check-space",
            Command::CheckMorphism { .. } => "check-morphism",
            Command::Classify { .. } => "classify",
            Command::Witness { .. } => "witness",
            Command::Sweep { .. } => "sweep",
            Command::BcSquare { .. } => "bc-square",
        }
    }
}

/// The JSON envelope around every command's result.
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub grammar_version: u32,
    pub command: String,
    /// `sha256:` of the input file, or of the canonical configuration for
    /// commands without one.
    pub input_digest: String,
    pub exit_status: i32,
    pub result: Value,
}

impl Report {
    /// Sorted keys, compact, newline-terminated.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string(&value).expect("values serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug)]
enum Failure {
    Io { path: PathBuf, message: String },
    Dsl(DslError),
    Usage(String),
}

impl Failure {
    fn payload(&self) -> Value {
        match self {
            Failure::Io { path, message } => {
                json!({"error": {"kind": "io_error", "message": message, "path": path.display().to_string()}})
            }
            Failure::Dsl(e) => json!({"error": {
                "kind": e.kind(),
                "message": e.to_string(),
                "line": e.pos().line,
                "col": e.pos().col,
                "token": e.token(),
            }}),
            Failure::Usage(m) => json!({"error": {"kind": "usage_error", "message": m}}),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io { path, message } => format!("{}: {message}", path.display()),
            Failure::Dsl(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        }
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        Failure::Dsl(e)
    }
}

/// What a command produced.
struct Done {
    code: i32,
    payload: Value,
    text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

/// Parses arguments (the first is the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_HOLDS };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), rendered) } else { (rendered, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let (input_digest, result) = match &cli.command {
        Command::Sweep { max_objects, max_arrows, seed, budget, bound, bc_functors, time_limit } => {
            let config = SweepConfig {
                max_objects: *max_objects,
                max_arrows: *max_arrows,
                budget: *budget,
                seed: *seed,
                bc_bound: *bound,
                bc_functors: *bc_functors,
                time_limit: time_limit.map(Duration::from_secs_f64),
            };
            let canonical = serde_json::to_value(&config).expect("configs serialize").to_string();
            (digest(canonical.as_bytes()), sweep(config, *time_limit))
        }
        other => {
            let file = match other {
                Command::CheckCategory { file, .. }
                | Command::CheckSpace { file, .. }
                | Command::CheckMorphism { file, .. }
                | Command::Classify { file, .. }
                | Command::Witness { file, .. }
                | Command::BcSquare { file, .. } => file,
                Command::Sweep { .. } => unreachable!(),
            };
            match std::fs::read(file) {
                Ok(bytes) => (digest(&bytes), on_file(other, &bytes)),
                Err(e) => (digest(&[]), Err(Failure::Io { path: file.clone(), message: e.to_string() })),
            }
        }
    };
    let (code, payload, text, err) = match result {
        Ok(d) => (d.code, d.payload, d.text, None),
        Err(f) => (EXIT_INPUT, f.payload(), String::new(), Some(f.message())),
    };
    let stdout = if cli.json {
        Report {
            tool: "finitopos",
            version: env!("CARGO_PKG_VERSION"),
            grammar_version: GRAMMAR_VERSION,
            command: cli.command.name().to_string(),
            input_digest,
            exit_status: code,
            result: payload,
        }
        .to_canonical_json()
    } else {
        text
    };
    let stderr = err.map(|m| format!("error: {m}\n")).unwrap_or_default();
    Outcome { code, stdout, stderr }
}

fn on_file(cmd: &Command, bytes: &[u8]) -> Result<Done, Failure> {
    let text = std::str::from_utf8(bytes).map_err(|e| Failure::Usage(format!("input is not UTF-8: {e}")))?;
    let model = resolve(&parse(text)?)?;
    match cmd {
        Command::CheckCategory { name, .. } => check_category(&model, name.as_deref()),
        Command::CheckSpace { name, .. } => check_space(&model, name.as_deref()),
        Command::CheckMorphism { name, bound, .. } => check_morphism(&model, name.as_deref(), *bound),
        Command::Classify { name, no_t0_quotient, .. } => classify(&model, name.as_deref(), !no_t0_quotient),
        Command::Witness { name, .. } => witness(&model, name.as_deref()),
        Command::BcSquare { functors, etale, restrict, bound, .. } => {
            bc_square(&model, functors, etale.as_deref(), restrict, *bound)
        }
        Command::Sweep { .. } => unreachable!("sweep reads no file"),
    }
}

/// The declaration called `name`, or the only one of its kind.
fn pick<'a, T>(items: &'a [T], ident: impl Fn(&T) -> &Ident, name: Option<&str>, kind: &str) -> Result<&'a T, Failure> {
    match name {
        Some(n) => items
            .iter()
            .find(|t| ident(t).name == n)
            .ok_or_else(|| Failure::Usage(format!("no {kind} named `{n}` in the input"))),
        None if items.len() == 1 => Ok(&items[0]),
        None => Err(Failure::Usage(format!("the input declares {} {kind} declarations; name one", items.len()))),
    }
}

fn lawful_category(c: &NamedCategory) -> Result<&Arc<FinCategory>, Failure> {
    match c.violations.first() {
        Some(v) => Err(DslError::invalid(&c.name, format!("category is not valid: {v}")).into()),
        None => Ok(&c.category),
    }
}

fn lawful_space(s: &NamedSpace) -> Result<&finitopos::FinSpace, Failure> {
    match s.violations.first() {
        Some(v) => Err(DslError::invalid(&s.name, format!("not a topology: {v}")).into()),
        None => Ok(&s.space),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_category(model: &Model, name: Option<&str>) -> Result<Done, Failure> {
    let chosen: Vec<&NamedCategory> = match name {
        Some(_) => vec![pick(&model.categories, |c| &c.name, name, "category")?],
        None => model.categories.iter().collect(),
    };
    if chosen.is_empty() {
        return Err(Failure::Usage("the input declares no categories".into()));
    }
    let mut text = String::new();
    let mut entries = Vec::new();
    for nc in &chosen {
        let c = &nc.category;
        let violations: Vec<String> = nc.violations.iter().map(|v| v.to_string()).collect();
        let mut entry = json!({
            "name": nc.name.name,
            "objects": c.object_names(),
            "arrows": c.arrows().map(|a| c.arrow_name(a)).collect::<Vec<_>>(),
            "valid": violations.is_empty(),
            "violations": violations,
        });
        writeln!(text, "category {}: {} objects, {} arrows", nc.name.name, c.num_objects(), c.num_arrows()).unwrap();
        if violations.is_empty() {
            let terminal = c.terminal_object().map(|t| c.object_name(t).to_string());
            let right_inv = c.right_inv_implies_iso();
            entry["properties"] = json!({
                "groupoid": c.is_groupoid(),
                "terminal_object": terminal,
                "strict_terminal": c.has_strict_terminal(),
                "right_inverses_invertible": right_inv.is_ok(),
            });
            writeln!(text, "  valid").unwrap();
            writeln!(text, "  groupoid: {}", yes(c.is_groupoid())).unwrap();
            match &terminal {
                Some(t) => writeln!(text, "  terminal object: {t} (strict: {})", yes(c.has_strict_terminal())).unwrap(),
                None => writeln!(text, "  terminal object: none").unwrap(),
            }
            match right_inv {
                Ok(()) => writeln!(text, "  every right-invertible arrow is invertible").unwrap(),
                Err((r, s)) => writeln!(
                    text,
                    "  {}.{} is an identity but {} is not invertible",
                    c.arrow_name(r),
                    c.arrow_name(s),
                    c.arrow_name(r)
                )
                .unwrap(),
            }
        } else {
            for v in &violations {
                writeln!(text, "  violation: {v}").unwrap();
            }
        }
        entries.push(entry);
    }
    let code = if chosen.iter().all(|c| c.violations.is_empty()) { EXIT_HOLDS } else { EXIT_FAILS };
    Ok(Done { code, payload: json!({ "categories": entries }), text })
}

fn check_space(model: &Model, name: Option<&str>) -> Result<Done, Failure> {
    let ns = pick(&model.spaces, |s| &s.name, name, "space")?;
    let s = &ns.space;
    let violations: Vec<String> = ns.violations.iter().map(|v| v.to_string()).collect();
    let mut text = format!("space {}: {} points, {} opens\n", ns.name.name, s.num_points(), s.opens().len());
    let mut payload = json!({
        "name": ns.name.name,
        "points": s.points(),
        "valid": violations.is_empty(),
        "violations": violations,
    });
    if !violations.is_empty() {
        for v in &violations {
            writeln!(text, "  violation: {v}").unwrap();
        }
        return Ok(Done { code: EXIT_FAILS, payload, text });
    }
    let pc = s.classify_points();
    let closed = s.subset_names(pc.closed);
    let lc = s.subset_names(pc.locally_closed);
    let jacobson = s.is_jacobson().is_ok();
    let wj = s.is_weakly_jacobson().is_ok();
    let t0 = s.t0_failure().map(|(a, b)| vec![s.point_name(a).to_string(), s.point_name(b).to_string()]);
    payload["closed_points"] = json!(closed);
    payload["locally_closed_points"] = json!(lc);
    payload["jacobson"] = json!(jacobson);
    payload["weakly_jacobson"] = json!(wj);
    payload["t0"] = json!(t0.is_none());
    payload["t0_failure"] = json!(t0);
    writeln!(text, "  closed points: {{{}}}", closed.join(", ")).unwrap();
    writeln!(text, "  locally closed points: {{{}}}", lc.join(", ")).unwrap();
    writeln!(text, "  T0: {}", yes(t0.is_none())).unwrap();
    writeln!(text, "  Jacobson: {}", yes(jacobson)).unwrap();
    writeln!(text, "  weakly Jacobson: {}", yes(wj)).unwrap();
    Ok(Done { code: EXIT_HOLDS, payload, text })
}

fn verdict_json(v: &Verdict) -> Value {
    json!({"holds": v.holds, "instances": v.instances, "witness": v.witness})
}

fn witness_text(w: &Witness) -> String {
    let inputs: Vec<String> = w.inputs.iter().map(|i| format!("{} = {}", i.role, i.label)).collect();
    format!(
        "{}; evaluated at {}: {} -> {} elements ({}injective, {}surjective)",
        inputs.join(", "),
        w.evaluation_object,
        w.source_size,
        w.target_size,
        if w.injective { "" } else { "not " },
        if w.surjective { "" } else { "not " },
    )
}

fn check_morphism(model: &Model, name: Option<&str>, bound: Option<usize>) -> Result<Done, Failure> {
    let (id, f) = pick(&model.functors, |f| &f.0, name, "functor")?;
    let g = GeomMorphism::new(f.clone());
    let cc = is_cc_inverse_image(&g);
    let lc = is_locally_connected(&g);
    let bounded = bound.map(|b| is_locally_connected_bounded(&g, b));
    let mut text = format!("functor {}: {}\n", id.name, f.describe());
    writeln!(text, "  f^* preserves exponentials: {} ({} instances)", yes(cc.holds), cc.instances).unwrap();
    writeln!(text, "  locally connected: {} ({} instances)", yes(lc.holds), lc.instances).unwrap();
    if let Some(w) = &lc.witness {
        writeln!(text, "  witness: {}", witness_text(w)).unwrap();
    }
    if let Some(t) = &bounded {
        match t {
            TriState::Fails(w) => writeln!(text, "  bounded oracle: fails; {}", witness_text(w)).unwrap(),
            TriState::HoldsAtBound(b) => writeln!(text, "  bounded oracle: holds up to carrier size {b}").unwrap(),
            TriState::Holds => writeln!(text, "  bounded oracle: holds").unwrap(),
        }
    }
    let code = if lc.holds && !bounded.as_ref().is_some_and(|t| t.fails()) { EXIT_HOLDS } else { EXIT_FAILS };
    let payload = json!({
        "functor": id.name,
        "description": f.describe(),
        "cc_inverse_image": verdict_json(&cc),
        "locally_connected": verdict_json(&lc),
        "bounded": bounded,
        "witness": lc.witness,
    });
    Ok(Done { code, payload, text })
}

fn classify(model: &Model, name: Option<&str>, t0_quotient: bool) -> Result<Done, Failure> {
    let in_cats = |n: &str| model.categories.iter().find(|c| c.name.name == n);
    let in_spaces = |n: &str| model.spaces.iter().find(|s| s.name.name == n);
    let (label, origin) = match name {
        Some(n) => match (in_cats(n), in_spaces(n)) {
            (Some(c), _) => (&c.name, Origin::Category((**lawful_category(c)?).clone())),
            (None, Some(s)) => (&s.name, Origin::Space { space: lawful_space(s)?.clone(), t0_quotient }),
            (None, None) => return Err(Failure::Usage(format!("no category or space named `{n}` in the input"))),
        },
        None => match (&model.categories[..], &model.spaces[..]) {
            ([c], []) => (&c.name, Origin::Category((**lawful_category(c)?).clone())),
            ([], [s]) => (&s.name, Origin::Space { space: lawful_space(s)?.clone(), t0_quotient }),
            _ => return Err(Failure::Usage("the input declares several categories or spaces; name one".into())),
        },
    };
    let report = classify_topos(&origin).map_err(|e| Failure::Dsl(DslError::invalid(label, e.to_string())))?;
    let text = classify_text(&label.name, &report);
    let mut payload = serde_json::to_value(&report).expect("reports serialize");
    payload["name"] = json!(label.name);
    Ok(Done { code: EXIT_HOLDS, payload, text })
}

fn classify_text(name: &str, r: &ToposReport) -> String {
    let mut t =
        format!("{} {name}: site with {} objects, {} arrows\n", r.origin, r.site.objects.len(), r.site.arrows.len());
    if let Some(s) = &r.space {
        writeln!(t, "  closed points: {{{}}}", s.closed_points.join(", ")).unwrap();
        writeln!(t, "  Jacobson space: {}, weakly Jacobson space: {}", yes(s.jacobson), yes(s.weakly_jacobson))
            .unwrap();
        if let Some(q) = &s.quotient_points {
            writeln!(t, "  site built from the T0 quotient on {{{}}}", q.join(", ")).unwrap();
        }
    }
    writeln!(t, "  groupoid site: {}", yes(r.is_groupoid_site)).unwrap();
    writeln!(t, "  every local homeomorphism over it is locally connected: {}", yes(r.eilc)).unwrap();
    if let Some(w) = &r.eilc_witness {
        writeln!(t, "    witness: {}", witness_text(w)).unwrap();
    }
    let wj = match &r.weakly_jacobson.status {
        TriState::Holds => "holds".to_string(),
        TriState::HoldsAtBound(b) => format!("holds up to {b}"),
        TriState::Fails(n) => format!("fails ({} subcategories searched)", n.subcategories_searched),
    };
    writeln!(t, "  weakly Jacobson: {wj}").unwrap();
    if let Some(rep) = &r.weakly_jacobson.representative {
        writeln!(t, "    representative on {{{}}} with {} arrows", rep.objects.join(", "), rep.arrows).unwrap();
    }
    let cilc = match r.cilc_status {
        CilcStatus::ImpliedByEilc => "implied, the site is a groupoid",
        CilcStatus::ImpliedByWjOverSets => "implied by weak Jacobsonness",
        CilcStatus::Unknown => "unknown",
    };
    writeln!(t, "  cartesian closed inverse images are locally connected: {cilc}").unwrap();
    writeln!(t, "  Boolean: {}", yes(r.boolean_topos)).unwrap();
    writeln!(t, "  local: {}, closed center: {}", yes(r.local_center.is_local), yes(r.local_center.center_closed))
        .unwrap();
    t
}

fn witness(model: &Model, name: Option<&str>) -> Result<Done, Failure> {
    let nc = pick(&model.categories, |c| &c.name, name, "category")?;
    let c = lawful_category(nc)?;
    match counterexample_point(c) {
        Some((point, w)) => {
            let verified = w.verify();
            let text = format!(
                "category {}: the point {} is not locally connected\n  witness: {}\n  recomputed: {}\n",
                nc.name.name,
                point.functor().describe(),
                witness_text(&w),
                if verified { "confirmed" } else { "NOT confirmed" }
            );
            let payload = json!({
                "category": nc.name.name,
                "groupoid": false,
                "point": point.functor().describe(),
                "witness": w,
                "verified": verified,
            });
            Ok(Done { code: EXIT_FAILS, payload, text })
        }
        None => {
            let text =
                format!("category {}: every arrow is invertible; every point is locally connected\n", nc.name.name);
            let payload = json!({"category": nc.name.name, "groupoid": true, "witness": null});
            Ok(Done { code: EXIT_HOLDS, payload, text })
        }
    }
}

fn sweep(config: SweepConfig, time_limit: Option<f64>) -> Result<Done, Failure> {
    if config.max_objects > 4 {
        return Err(Failure::Usage("--max-objects above 4 is out of reach".into()));
    }
    match sweep_theorems(&config) {
        Ok(r) => {
            let c = &r.census;
            let mut text = format!(
                "{} categories ({} groupoids, {} weakly Jacobson), {} of {} functors decided{}\n",
                c.categories.total,
                c.groupoids,
                c.weakly_jacobson,
                c.functors_checked,
                c.functors_total,
                if c.sampled { " (sampled)" } else { "" }
            );
            writeln!(
                text,
                "{} preserve exponentials, {} locally connected; {} squares, {} pasting premises, {} stability pairs",
                c.cc_inverse_image, c.locally_connected, c.squares_checked, c.pasting_premises, c.stability_pairs
            )
            .unwrap();
            for ce in &r.counterexamples {
                writeln!(text, "counterexample [{}]: {}", ce.rule, ce.detail).unwrap();
            }
            if r.counterexamples.is_empty() {
                writeln!(text, "no counterexamples").unwrap();
            }
            let code = if r.counterexamples.is_empty() { EXIT_HOLDS } else { EXIT_FAILS };
            Ok(Done { code, payload: serde_json::to_value(&r).expect("results serialize"), text })
        }
        Err(e) => {
            let text = format!("inconclusive: {e}\n");
            let payload = json!({
                "budget_exceeded": {"time_limit_seconds": time_limit, "partial": e.partial},
            });
            Ok(Done { code: EXIT_INCONCLUSIVE, payload, text })
        }
    }
}

fn bc_square(
    model: &Model,
    functors: &[String],
    etale: Option<&str>,
    restrict: &[String],
    bound: usize,
) -> Result<Done, Failure> {
    let functor =
        |n: &str| -> Result<&FinFunctor, Failure> { pick(&model.functors, |f| &f.0, Some(n), "functor").map(|f| &f.1) };
    let (kind, sq) = match (functors, etale, restrict.is_empty()) {
        ([q, g, f, p], None, true) => {
            let sq = BCSquare::new(functor(q)?.clone(), functor(g)?.clone(), functor(f)?.clone(), functor(p)?.clone())
                .map_err(|e| Failure::Usage(format!("not a square: {e}")))?;
            ("given", sq)
        }
        ([f], Some(e), true) => {
            let f = functor(f)?;
            let (_, e) = pick(&model.presheaves, |p| &p.0, Some(e), "presheaf")?;
            if **e.site_arc() != *f.target() {
                return Err(Failure::Usage("the presheaf must live on the target of the functor".into()));
            }
            ("etale", etale_square(&GeomMorphism::new(f.clone()), e))
        }
        ([f], None, false) => {
            let f = functor(f)?;
            let mut keep = Vec::new();
            for n in restrict {
                let x = f
                    .target()
                    .find_object(n)
                    .ok_or_else(|| Failure::Usage(format!("no object `{n}` in the target")))?;
                if !keep.contains(&x) {
                    keep.push(x);
                }
            }
            ("restriction", restriction_square(f, &keep))
        }
        _ => {
            return Err(Failure::Usage("name four functors Q G F P, or one functor with --etale or --restrict".into()))
        }
    };
    let status = bc_holds(&sq, bound);
    let mut text = format!("{kind} square {}\n", sq.describe());
    let code = match &status {
        TriState::Fails(w) => {
            writeln!(text, "  Beck-Chevalley fails: {}", witness_text(w)).unwrap();
            EXIT_FAILS
        }
        TriState::HoldsAtBound(b) => {
            writeln!(text, "  Beck-Chevalley holds on presheaves with carriers of size at most {b}; inconclusive")
                .unwrap();
            EXIT_INCONCLUSIVE
        }
        TriState::Holds => {
            writeln!(text, "  Beck-Chevalley holds").unwrap();
            EXIT_HOLDS
        }
    };
    let payload = json!({"square": kind, "description": sq.describe(), "bound": bound, "status": status});
    Ok(Done { code, payload, text })
}
