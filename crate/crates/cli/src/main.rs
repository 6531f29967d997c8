use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use fingroupoid::actions::{actor_to_action, canonical_actions, is_principal_action, ActionLaw};
use fingroupoid::anchor::{analyze_anchor, classify};
use fingroupoid::butterfly::{conjugate_principal_actor, square_groupoid, transversality};
use fingroupoid::diptych::check_axioms;
use fingroupoid::fractions::{
    cech_presentation, compose, cotransversality, fractions_equivalent, hat_presentation, holograph,
    make_irreducible, morita_equivalent, EquivalenceOptions,
};
use fingroupoid::io::dot::{butterfly_dot, groupoid_dot, orbit_dot};
use fingroupoid::io::{groupoid_to_json, read_functor, read_groupoid, serialize_groupoid};
use fingroupoid::morphisms::{bilateral_quotient, pullback_groupoid_labels};
use fingroupoid::subgroupoid::kernel;
use fingroupoid::trivialize::trivialize;
use fingroupoid::{classify_morphism, Functor, Groupoid, GroupoidDocument, Meromorphism};

mod report;

use report::Report;

#[derive(Parser)]
#[command(name = "fingroupoid", version, about = "Finite groupoids, their morphisms and fractions")]
struct Cli {
    /// Report and document format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the produced groupoid or DOT graph here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum View {
    Groupoid,
    Orbits,
    Butterfly,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groupoid axioms.
    Validate { groupoid: PathBuf },
    /// Degeneracy labels.
    Classify { groupoid: PathBuf },
    /// Orbits and isotropy orders.
    Orbits { groupoid: PathBuf },
    /// Trivialize a transitive groupoid at a base object.
    Trivialize {
        groupoid: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Square-criterion flags of a functor.
    FunctorClassify { functor: PathBuf },
    /// Pull a groupoid back along `label=object` points.
    Pullback {
        groupoid: PathBuf,
        #[arg(long = "point", value_parser = parse_pair, required = true)]
        points: Vec<(String, String)>,
    },
    /// Kernel of a functor.
    Kernel { functor: PathBuf },
    /// Quotient of the source of a functor by its kernel.
    Quotient { functor: PathBuf },
    /// The four translation actions of a groupoid, or the action of an actor.
    Action { file: PathBuf },
    /// Conjugate a principal s-actor into a butterfly.
    Butterfly { functor: PathBuf },
    /// The square groupoid and its canonical butterfly.
    Squares { groupoid: PathBuf },
    /// Compose the holographs of `second ∘ first`.
    FractionCompose { second: PathBuf, first: PathBuf },
    /// Holograph of a functor.
    Holograph { functor: PathBuf },
    /// Decide Morita equivalence.
    Morita { left: PathBuf, right: PathBuf },
    /// Čech presentation over a `label=object` cover.
    Cech {
        groupoid: PathBuf,
        #[arg(long = "cover", value_parser = parse_pair, required = true)]
        cover: Vec<(String, String)>,
    },
    /// Run the finite-set diptych axioms.
    DiptychCheck {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// DOT graph of a groupoid, its orbits, or a butterfly.
    Dot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = View::Groupoid)]
        view: View,
    },
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    s.split_once('=').map(|(a, b)| (a.to_string(), b.to_string())).ok_or_else(|| format!("expected LABEL=OBJECT, got {s}"))
}

enum Fail {
    Usage(anyhow::Error),
    Invalid(anyhow::Error),
}

impl From<fingroupoid::Error> for Fail {
    fn from(e: fingroupoid::Error) -> Self {
        Fail::Invalid(e.into())
    }
}

enum Artifact {
    Groupoid(Arc<Groupoid>),
    Text(String),
}

struct Outcome {
    report: Option<Report>,
    artifact: Option<Artifact>,
    ok: bool,
}

impl Outcome {
    fn report(report: Report) -> Self {
        Outcome { report: Some(report), artifact: None, ok: true }
    }

    fn with(report: Report, g: Arc<Groupoid>) -> Self {
        Outcome { report: Some(report), artifact: Some(Artifact::Groupoid(g)), ok: true }
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(Fail::Usage)
}

fn load_document(path: &Path) -> Result<GroupoidDocument, Fail> {
    let text = read(path)?;
    read_groupoid(&text).map_err(|e| Fail::Invalid(anyhow!("{}: {e}", path.display())))
}

fn load_groupoid(path: &Path) -> Result<Arc<Groupoid>, Fail> {
    let doc = load_document(path)?;
    Groupoid::validate(&doc).map(Arc::new).map_err(|e| Fail::Invalid(anyhow!("{}: {e}", path.display())))
}

/// Groupoid paths inside a functor file are relative to that file.
fn load_functor(path: &Path) -> Result<Functor, Fail> {
    let text = read(path)?;
    let doc = read_functor(&text).map_err(|e| Fail::Invalid(anyhow!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let mut usage = None;
    let resolved = doc.resolve(|p| {
        let full = dir.join(p);
        match fs::read_to_string(&full) {
            Ok(t) => read_groupoid(&t),
            Err(e) => {
                usage = Some(anyhow!("cannot read {}: {e}", full.display()));
                Err(fingroupoid::Error::Precondition(format!("cannot read {}", full.display())))
            }
        }
    });
    match (resolved, usage) {
        (_, Some(e)) => Err(Fail::Usage(e)),
        (Ok(f), None) => Ok(f),
        (Err(e), None) => Err(Fail::Invalid(anyhow!("{}: {e}", path.display()))),
    }
}

fn is_functor_file(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "fnct")
}

fn sizes(r: &mut Report, prefix: &str, g: &Groupoid) {
    r.put(format!("{prefix}objects"), g.object_count());
    r.put(format!("{prefix}arrows"), g.arrow_count());
}

fn object_of(g: &Groupoid, label: &str) -> Result<fingroupoid::ObjectId, Fail> {
    g.object(label).ok_or_else(|| Fail::Usage(anyhow!("unknown object {label}")))
}

fn validate(path: &Path) -> Result<Outcome, Fail> {
    let text = read(path)?;
    let mut r = Report::new();
    let doc = match read_groupoid(&text) {
        Ok(d) => d,
        Err(e) => {
            r.put("valid", false).put("error", e.to_string());
            return Ok(Outcome { report: Some(r), artifact: None, ok: false });
        }
    };
    match Groupoid::validate(&doc) {
        Ok(g) => {
            r.put("valid", true);
            sizes(&mut r, "", &g);
            Ok(Outcome::report(r))
        }
        Err(e) => {
            r.put("valid", false).put("violations", e.violations.len());
            for v in &e.violations {
                r.put("violation", format!("{}: {v}", v.axiom()));
            }
            Ok(Outcome { report: Some(r), artifact: None, ok: false })
        }
    }
}

fn classify_cmd(path: &Path) -> Result<Outcome, Fail> {
    let g = load_groupoid(path)?;
    let d = classify(&g);
    let mut r = Report::new();
    sizes(&mut r, "", &g);
    r.list("labels", d.labels());
    for (k, v) in [
        ("transitive", d.transitive),
        ("principal", d.principal),
        ("banal", d.banal),
        ("plurigroup", d.plurigroup),
        ("null", d.null),
    ] {
        r.put(k, v);
    }
    Ok(Outcome::report(r))
}

fn orbits_cmd(path: &Path) -> Result<Outcome, Fail> {
    let g = load_groupoid(path)?;
    let a = analyze_anchor(&g);
    let mut r = Report::new();
    r.put("orbits", a.orbit_count());
    for o in &a.orbits {
        r.list("orbit", o.iter().map(|&b| g.object_label(b).to_string()));
    }
    r.list("isotropy", a.orbits.iter().map(|o| a.isotropy[o[0].index()].len()));
    Ok(Outcome::report(r))
}

fn trivialize_cmd(path: &Path, base: Option<&str>) -> Result<Outcome, Fail> {
    let g = load_groupoid(path)?;
    let e = match base {
        Some(l) => object_of(&g, l)?,
        None => g.object_ids().next().ok_or_else(|| Fail::Usage(anyhow!("empty groupoid")))?,
    };
    let t = trivialize(&g, e, None)?;
    let mut r = Report::new();
    r.put("base_point", g.object_label(e));
    r.put("isotropy", t.fiber.iter().filter(|&&a| g.tgt(a) == e).count());
    r.put("fiber", t.fiber.len());
    r.list("section", t.section.iter().map(|&a| g.arrow_label(a).to_string()));
    sizes(&mut r, "trivial_", &t.trivial);
    let round = t.inverse.after(&t.iso).map(|c| c == Functor::identity(g.clone())).unwrap_or(false);
    r.put("isomorphism", round);
    Ok(Outcome::with(r, t.trivial))
}

fn functor_classify(path: &Path) -> Result<Outcome, Fail> {
    let f = load_functor(path)?;
    let c = classify_morphism(&f);
    let mut r = Report::new();
    sizes(&mut r, "source_", f.source());
    sizes(&mut r, "target_", f.target());
    r.list("labels", c.flags().iter().filter(|(_, on)| *on).map(|(k, _)| *k));
    for (k, v) in c.flags() {
        r.put(k, v);
    }
    r.list("broken_implications", c.broken_implications());
    Ok(Outcome::report(r))
}

fn pullback_cmd(path: &Path, points: &[(String, String)]) -> Result<Outcome, Fail> {
    let g = load_groupoid(path)?;
    let (k, proj) = pullback_groupoid_labels(&g, points)?;
    let c = classify_morphism(&proj);
    let mut r = Report::new();
    sizes(&mut r, "", &k);
    r.put("projection_s_equivalence", c.s_equivalence);
    r.put("projection_equivalence", c.equivalence);
    Ok(Outcome::with(r, k))
}

fn kernel_cmd(path: &Path) -> Result<Outcome, Fail> {
    let f = load_functor(path)?;
    let k = kernel(&f);
    let (g, _) = k.to_groupoid(f.source());
    let mut r = Report::new();
    sizes(&mut r, "", &g);
    r.list("arrows_in_kernel", k.arrows().map(|a| f.source().arrow_label(a).to_string()));
    r.put("banal", classify(&g).banal);
    Ok(Outcome::with(r, g))
}

fn quotient_cmd(path: &Path) -> Result<Outcome, Fail> {
    let f = load_functor(path)?;
    let (q, proj) = bilateral_quotient(f.source(), &kernel(&f))?;
    let c = classify_morphism(&proj);
    let mut r = Report::new();
    sizes(&mut r, "", &q);
    r.put("projection_s_extensor", c.s_extensor);
    Ok(Outcome::with(r, q))
}

fn action_table(r: &mut Report, law: &ActionLaw) {
    let g = law.groupoid();
    for (a, x, y) in law.triples() {
        r.put("act", format!("{} · {} = {}", g.arrow_label(a), law.space()[x], law.space()[y]));
    }
    r.put("principal", is_principal_action(law));
}

fn action_cmd(path: &Path) -> Result<Outcome, Fail> {
    let mut r = Report::new();
    if is_functor_file(path) {
        let f = load_functor(path)?;
        let law = actor_to_action(&f)?;
        r.put("space", law.space().len());
        action_table(&mut r, &law);
        return Ok(Outcome::report(r));
    }
    let g = load_groupoid(path)?;
    for row in canonical_actions(&g)? {
        r.put(
            "row",
            format!(
                "{} = {} | {} | {}",
                row.kind.actor_name(),
                row.kind.actor_formula(),
                row.kind.action_formula(),
                if row.kind.is_right() { "right" } else { "left" }
            ),
        );
        r.put("matches_formula", row.matches_formula(&g));
        r.put("principal", is_principal_action(&row.action));
    }
    Ok(Outcome::report(r))
}

fn butterfly_cmd(path: &Path) -> Result<Outcome, Fail> {
    let f = load_functor(path)?;
    let c = conjugate_principal_actor(&f)?;
    let b = &c.butterfly;
    let t = transversality(b.core(), b.wing(), b.co_wing())?;
    let conj = classify_morphism(&c.conjugate());
    let mut r = Report::new();
    sizes(&mut r, "core_", b.core());
    r.put("wing_arrows", b.wing().len());
    r.put("co_wing_arrows", b.co_wing().len());
    r.put("wings", t.kind.label());
    sizes(&mut r, "conjugate_target_", &c.conjugate_target);
    r.put("conjugate_actor", conj.actor);
    r.put("conjugate_s_functor", conj.s_functor);
    Ok(Outcome::with(r, c.conjugate_target.clone()))
}

fn squares_cmd(path: &Path) -> Result<Outcome, Fail> {
    let g = load_groupoid(path)?;
    let sq = square_groupoid(&g);
    let b = sq.canonical_butterfly()?;
    let t = transversality(b.core(), b.wing(), b.co_wing())?;
    let mut r = Report::new();
    sizes(&mut r, "", &sq.groupoid);
    r.put("squares", sq.squares.len());
    r.put("wing_arrows", b.wing().len());
    r.put("co_wing_arrows", b.co_wing().len());
    r.put("wings", t.kind.label());
    Ok(Outcome::with(r, sq.groupoid.clone()))
}

fn fraction_report(r: &mut Report, m: &Meromorphism) -> Result<(), Fail> {
    let f = m.fraction();
    sizes(r, "core_", f.source());
    r.put("cotransversality", cotransversality(f).kind.label());
    r.put("irreducible", m.is_irreducible());
    r.put("morita_equivalence", m.is_morita_equivalence());
    let red = make_irreducible(m)?;
    r.put("irreducible_core_arrows", red.fraction.source().arrow_count());
    Ok(())
}

fn holo(f: &Functor) -> Result<Meromorphism, Fail> {
    Ok(Meromorphism::new(holograph(f)?.fraction)?)
}

fn fraction_compose_cmd(second: &Path, first: &Path) -> Result<Outcome, Fail> {
    let (g, f) = (load_functor(second)?, load_functor(first)?);
    let m = compose(&holo(&g)?, &holo(&f)?)?;
    let mut r = Report::new();
    fraction_report(&mut r, &m)?;
    let direct = holo(&g.after(&f)?)?;
    let same = fractions_equivalent(m.fraction(), direct.fraction(), EquivalenceOptions::default())?;
    r.put("equivalent_to_holograph_of_composite", same.is_some());
    Ok(Outcome::with(r, m.fraction().source().clone()))
}

fn holograph_cmd(path: &Path) -> Result<Outcome, Fail> {
    let f = load_functor(path)?;
    let m = holo(&f)?;
    let mut r = Report::new();
    fraction_report(&mut r, &m)?;
    Ok(Outcome::with(r, m.fraction().source().clone()))
}

fn morita_cmd(left: &Path, right: &Path) -> Result<Outcome, Fail> {
    let (g, h) = (load_groupoid(left)?, load_groupoid(right)?);
    let d = morita_equivalent(&g, &h)?;
    let mut r = Report::new();
    r.put("equivalent", d.equivalent);
    if let Some(m) = &d.matching {
        r.list("matching", m.iter().map(|&(a, b)| format!("{} ~ {}", g.object_label(a), h.object_label(b))));
    }
    let Some(w) = d.witness else {
        return Ok(Outcome::report(r));
    };
    r.list(
        "equivalence",
        w.equivalence.object_label_map().into_iter().map(|(a, b)| format!("{a} -> {b}")),
    );
    sizes(&mut r, "span_core_", &w.span.core);
    sizes(&mut r, "butterfly_core_", w.butterfly.core());
    let hat = hat_presentation(&w.linking, None)?;
    r.put("hat_arrows", hat.hat.arrow_count());
    r.list("hat_parts", hat.parts);
    Ok(Outcome::with(r, hat.hat))
}

fn cech_cmd(path: &Path, cover: &[(String, String)]) -> Result<Outcome, Fail> {
    let g = load_groupoid(path)?;
    let labels: Vec<&str> = cover.iter().map(|(u, _)| u.as_str()).collect();
    let r_map = cover.iter().map(|(_, b)| object_of(&g, b)).collect::<Result<Vec<_>, _>>()?;
    let c = cech_presentation(&g, &labels, &r_map)?;
    let mut r = Report::new();
    sizes(&mut r, "", &c.h);
    r.put("relation", c.relation.len());
    sizes(&mut r, "k_", &c.k);
    let legs = c.legs.iter().all(|l| classify_morphism(l).s_equivalence);
    r.put("legs_s_equivalences", legs);
    r.put("projection_s_equivalence", classify_morphism(&c.projection).s_equivalence);
    Ok(Outcome::with(r, c.h.clone()))
}

fn diptych_cmd(max_size: usize) -> Result<Outcome, Fail> {
    let rep = check_axioms(max_size);
    let mut r = Report::new();
    r.put("max_size", rep.max_size);
    for c in &rep.checks {
        r.put("check", format!("{} | {} checked | {} failures", c.name, c.checked, c.failures));
    }
    r.put("failures", rep.failures());
    let ok = rep.failures() == 0;
    Ok(Outcome { report: Some(r), artifact: None, ok })
}

fn dot_cmd(path: &Path, view: View) -> Result<Outcome, Fail> {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let text = match view {
        View::Groupoid => groupoid_dot(&*load_groupoid(path)?, &name),
        View::Orbits => orbit_dot(&*load_groupoid(path)?, &name),
        View::Butterfly if is_functor_file(path) => {
            butterfly_dot(&conjugate_principal_actor(&load_functor(path)?)?.butterfly, &name)
        }
        View::Butterfly => butterfly_dot(&square_groupoid(&load_groupoid(path)?).canonical_butterfly()?, &name),
    };
    Ok(Outcome { report: None, artifact: Some(Artifact::Text(text)), ok: true })
}

fn dispatch(cmd: &Command) -> Result<Outcome, Fail> {
    match cmd {
        Command::Validate { groupoid } => validate(groupoid),
        Command::Classify { groupoid } => classify_cmd(groupoid),
        Command::Orbits { groupoid } => orbits_cmd(groupoid),
        Command::Trivialize { groupoid, base } => trivialize_cmd(groupoid, base.as_deref()),
        Command::FunctorClassify { functor } => functor_classify(functor),
        Command::Pullback { groupoid, points } => pullback_cmd(groupoid, points),
        Command::Kernel { functor } => kernel_cmd(functor),
        Command::Quotient { functor } => quotient_cmd(functor),
        Command::Action { file } => action_cmd(file),
        Command::Butterfly { functor } => butterfly_cmd(functor),
        Command::Squares { groupoid } => squares_cmd(groupoid),
        Command::FractionCompose { second, first } => fraction_compose_cmd(second, first),
        Command::Holograph { functor } => holograph_cmd(functor),
        Command::Morita { left, right } => morita_cmd(left, right),
        Command::Cech { groupoid, cover } => cech_cmd(groupoid, cover),
        Command::DiptychCheck { max_size } => diptych_cmd(*max_size),
        Command::Dot { file, view } => dot_cmd(file, *view),
    }
}

fn render(a: &Artifact, format: Format) -> String {
    match a {
        Artifact::Text(t) => t.clone(),
        Artifact::Groupoid(g) => {
            let doc = GroupoidDocument::from_groupoid(g);
            match format {
                Format::Text => serialize_groupoid(&doc),
                Format::Json => groupoid_to_json(&doc),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(Fail::Usage(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
        Err(Fail::Invalid(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Some(r) = &outcome.report {
        print!("{}", if cli.format == Format::Json { r.json() } else { r.text() });
    }
    if let Some(a) = &outcome.artifact {
        let body = render(a, cli.format);
        match &cli.out {
            Some(p) => {
                if let Err(e) = fs::write(p, body) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            None if outcome.report.is_none() => print!("{body}"),
            None => {}
        }
    }
    ExitCode::from(if outcome.ok { 0 } else { 1 })
}
