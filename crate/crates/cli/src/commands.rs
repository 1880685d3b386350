//! The subcommands. Each reads its inputs once, digests the raw bytes, and
//! returns a report; only malformed input or usage errors escape as `Err`.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use hypercx_core::complexes::{self, hyperplane_label, GatedFamily, HyperplaneComplexKind};
use hypercx_core::graph_products::{cic_fragment, qm_ball, verify_ball, GPPresentation, SupportFamily};
use hypercx_core::homology::homology;
use hypercx_core::qm::Relation;
use hypercx_core::{Graph, HomologyError, QMGraph, SimplicialComplex};
use hypercx_harness::{expand, run_corpus, verify_graph, CorpusSpec, EntryOutcome, FamilyChoice, Invariant, TheoremReport};

use crate::formats::{self, emit_complex, emit_complex_dot, emit_graph, write_file};
use crate::report::{ExitStatus, Report};
use crate::CliError;

/// Complexes with more maximal faces are summarised without a face list.
pub const FACE_LIST_LIMIT: usize = 200;

struct Input {
    name: String,
    text: String,
}

fn load(path: &Path) -> Result<Input, CliError> {
    let text = formats::read_file(path)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string());
    Ok(Input { name, text })
}

fn load_graph(report: &mut Report, path: &Path) -> Result<(String, Graph), CliError> {
    let input = load(path)?;
    report.input(&input.name, input.text.as_bytes());
    let g = formats::parse_graph_str(&input.text).map_err(|e| at_file(&input.name, e))?;
    Ok((input.name, g))
}

fn at_file(name: &str, e: CliError) -> CliError {
    match e {
        CliError::Parse { line, message } => CliError::Parse { line, message: format!("{name}: {message}") },
        other => other,
    }
}

fn is_guard_skip(witness: &str) -> bool {
    witness.contains("exceeded the guard")
}

/// Summary of a complex; homology errors are reported in place, and a face
/// guard marks the report as incomplete.
fn complex_lines(report: &mut Report, k: &SimplicialComplex, with_homology: bool) -> Vec<String> {
    let faces = k.maximal_faces();
    let mut lines = vec![
        format!("vertices {}", k.vertex_count()),
        format!("maximal_faces {}", faces.len()),
        match k.dimension() {
            Some(d) => format!("dimension {d}"),
            None => "dimension empty".into(),
        },
        format!("components {}", k.component_count()),
    ];
    if with_homology {
        match homology(k, true) {
            Ok(h) if h.groups.is_empty() => lines.push("reduced homology of the empty complex".into()),
            Ok(h) => lines.extend(h.to_string().lines().map(str::to_string)),
            Err(e) => {
                if matches!(e, HomologyError::FaceGuard { .. }) {
                    report.escalate(ExitStatus::GuardExceeded);
                }
                lines.push(format!("homology unavailable :: {e}"));
            }
        }
    }
    if faces.len() <= FACE_LIST_LIMIT {
        lines.extend(faces.iter().map(|f| format!("face {}", f.join(" | "))));
    } else {
        lines.push(format!("face list omitted above {FACE_LIST_LIMIT} maximal faces"));
    }
    lines
}

pub fn raag_compare(g1: &Path, g2: &Path, invariant: Invariant) -> Result<Report, CliError> {
    let mut report = Report::new("raag-compare");
    let (n1, a) = load_graph(&mut report, g1)?;
    let (n2, b) = load_graph(&mut report, g2)?;
    report.param("invariant", invariant.name());
    let v = hypercx_harness::raag_verdict(&a, &b, invariant)?;
    for (name, sig) in [(n1, &v.signatures[0]), (n2, &v.signatures[1])] {
        let mut lines: Vec<String> = sig.to_string().lines().map(str::to_string).collect();
        lines.push(format!("betti {:?}", sig.betti()));
        report.section(format!("signature {name}"), lines);
    }
    let mut lines = vec![format!("verdict {}", v.statement())];
    if let hypercx_core::homology::Verdict::Distinguished { degree } = v.verdict {
        lines.push(format!("first differing degree {degree}"));
    }
    report.section("verdict", lines);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexChoice {
    Contact,
    Crossing,
    Contiguity,
    SmallCrossing,
    CrossingModel,
    /// The remaining three use the canonical star covering.
    RelativeContact,
    RelativeContactModel,
    Skewering,
}

impl ComplexChoice {
    pub const ALL: [ComplexChoice; 8] = [
        ComplexChoice::Contact,
        ComplexChoice::Crossing,
        ComplexChoice::Contiguity,
        ComplexChoice::SmallCrossing,
        ComplexChoice::CrossingModel,
        ComplexChoice::RelativeContact,
        ComplexChoice::RelativeContactModel,
        ComplexChoice::Skewering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ComplexChoice::Contact => "contact",
            ComplexChoice::Crossing => "crossing",
            ComplexChoice::Contiguity => "contiguity",
            ComplexChoice::SmallCrossing => "small-crossing",
            ComplexChoice::CrossingModel => "crossing-model",
            ComplexChoice::RelativeContact => "relative-contact",
            ComplexChoice::RelativeContactModel => "relative-contact-model",
            ComplexChoice::Skewering => "skewering",
        }
    }

    pub fn build(self, x: &QMGraph) -> Result<SimplicialComplex, CliError> {
        let star = || GatedFamily::canonical_star(x);
        Ok(match self {
            ComplexChoice::Contact => complexes::hyperplane_complex(x, HyperplaneComplexKind::Contact)?,
            ComplexChoice::Crossing => complexes::hyperplane_complex(x, HyperplaneComplexKind::Crossing)?,
            ComplexChoice::Contiguity => complexes::hyperplane_complex(x, HyperplaneComplexKind::Contiguity)?,
            ComplexChoice::SmallCrossing => complexes::hyperplane_complex(x, HyperplaneComplexKind::SmallCrossing)?,
            ComplexChoice::CrossingModel => complexes::crossing_model(x)?,
            ComplexChoice::RelativeContact => complexes::relative_contact_complex(x, &star()?),
            ComplexChoice::RelativeContactModel => complexes::relative_contact_model(x, &star()?)?,
            ComplexChoice::Skewering => complexes::skewering_complex(x, &star()?, false),
        })
    }
}

impl FromStr for ComplexChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ComplexChoice::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = ComplexChoice::ALL.iter().map(|c| c.name()).collect();
            format!("unknown complex `{s}`; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub complexes: Vec<ComplexChoice>,
    /// List every hyperplane pair, not only the counts.
    pub pairs: bool,
    /// Writes `<complex>.complex` and `<complex>.dot` here.
    pub emit_dir: Option<PathBuf>,
}

pub fn qm_analyze(path: &Path, opts: &AnalyzeOptions) -> Result<Report, CliError> {
    let mut report = Report::new("qm-analyze");
    let (_, g) = load_graph(&mut report, path)?;
    for c in &opts.complexes {
        report.param("complex", c.name());
    }
    let x = QMGraph::new(g)?;
    let graph = x.graph();
    let mut lines = vec![format!("vertices {}", x.len()), format!("edges {}", graph.edge_count())];
    let v = x.validation();
    if !v.passed() {
        lines.push("quasi-median fail".into());
        lines.extend(v.violations.iter().map(|w| format!("violation {w}")));
        report.section("validation", lines);
        report.escalate(ExitStatus::ChecksFailed);
        return Ok(report);
    }
    lines.push("quasi-median pass".into());
    report.section("validation", lines);

    let mut lines = vec![format!("count {}", x.hyperplane_count())];
    for h in x.hyperplanes() {
        lines.push(format!(
            "{} edges {} carrier {} sectors {} fibres {}",
            hyperplane_label(h.id),
            h.edges.len(),
            h.carrier.len(),
            h.sectors.len(),
            h.fibres.len()
        ));
    }
    report.section("hyperplanes", lines);

    let ids: Vec<_> = x.hyperplane_ids().collect();
    let (mut transverse, mut tangent, mut remote, mut contiguous) = (0, 0, 0, 0);
    let mut listed = Vec::new();
    for (i, &j) in ids.iter().enumerate() {
        for &k in &ids[i + 1..] {
            let c = x.classify_pair(j, k)?;
            let rel = match c.relation {
                Relation::Transverse => {
                    transverse += 1;
                    "transverse"
                }
                Relation::Tangent => {
                    tangent += 1;
                    "tangent"
                }
                Relation::Remote => {
                    remote += 1;
                    "remote"
                }
            };
            contiguous += usize::from(c.contiguous);
            if opts.pairs {
                let extra = if c.contiguous { " contiguous" } else { "" };
                listed.push(format!("{} {} {rel}{extra}", hyperplane_label(j), hyperplane_label(k)));
            }
        }
    }
    let mut lines = vec![
        format!("transverse {transverse}"),
        format!("tangent {tangent}"),
        format!("remote {remote}"),
        format!("contiguous {contiguous}"),
    ];
    lines.extend(listed);
    report.section("pair-classes", lines);

    let prisms = x.maximal_prisms()?;
    let mut lines = vec![format!("maximal {}", prisms.len())];
    for p in prisms {
        let hs: Vec<String> = p.hyperplanes.iter().map(|&h| hyperplane_label(h)).collect();
        lines.push(format!(
            "dim {} vertices {} base {} hyperplanes {}",
            p.dimension(),
            p.vertices.len(),
            graph.label(p.base),
            hs.join(" ")
        ));
    }
    report.section("prisms", lines);

    if let Some(dir) = &opts.emit_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    }
    for &c in &opts.complexes {
        let lines = match c.build(&x) {
            Ok(k) => {
                if let Some(dir) = &opts.emit_dir {
                    write_file(&dir.join(format!("{}.complex", c.name())), &emit_complex(&k))?;
                    write_file(&dir.join(format!("{}.dot", c.name())), &emit_complex_dot(&k))?;
                }
                complex_lines(&mut report, &k, true)
            }
            Err(e) if e.is_guard() => {
                report.escalate(ExitStatus::GuardExceeded);
                vec![format!("unavailable :: {e}")]
            }
            Err(e) => vec![format!("unavailable :: {e}")],
        };
        report.section(format!("complex {}", c.name()), lines);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    CanonicalStar,
    Prisms,
    Whole,
    /// Members listed one per line.
    File(PathBuf),
}

impl FromStr for FamilyArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "canonical-star" => FamilyArg::CanonicalStar,
            "prisms" => FamilyArg::Prisms,
            "whole" => FamilyArg::Whole,
            "" => return Err("empty family".into()),
            path => FamilyArg::File(PathBuf::from(path)),
        })
    }
}

pub fn qm_verify(path: &Path, families: &[FamilyArg]) -> Result<Report, CliError> {
    let mut report = Report::new("qm-verify");
    let (name, g) = load_graph(&mut report, path)?;
    let default = [FamilyArg::CanonicalStar, FamilyArg::Whole, FamilyArg::Prisms];
    let families = if families.is_empty() { &default[..] } else { families };
    let mut choices = Vec::new();
    for f in families {
        choices.push(match f {
            FamilyArg::CanonicalStar => FamilyChoice::CanonicalStar,
            FamilyArg::Prisms => FamilyChoice::MaximalPrisms,
            FamilyArg::Whole => FamilyChoice::Whole,
            FamilyArg::File(p) => {
                let input = load(p)?;
                report.input(&input.name, input.text.as_bytes());
                let members = formats::parse_family_str(&g, &input.text).map_err(|e| at_file(&input.name, e))?;
                let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "file".into());
                FamilyChoice::Custom { name: format!("file-{stem}"), members }
            }
        });
    }
    for c in &choices {
        report.param("family", c.name());
    }
    let x = QMGraph::new(g)?;
    let r = verify_graph(&name, &x, &choices);
    report.section(
        "scope",
        vec!["complex equivalences are checked as homology-consistent: equal homology in every degree and equal component counts".into()],
    );
    add_theorem_report(&mut report, &r);
    Ok(report)
}

fn add_theorem_report(report: &mut Report, r: &TheoremReport) {
    use hypercx_harness::Status;
    let lines: Vec<String> = r.render().lines().skip(1).map(|l| l.trim_start().to_string()).collect();
    report.section(format!("checks {}", r.subject), lines);
    if !r.passed() {
        report.escalate(ExitStatus::ChecksFailed);
    }
    if r.checks.iter().any(|c| c.status == Status::Skipped && is_guard_skip(&c.witness)) {
        report.escalate(ExitStatus::GuardExceeded);
    }
}

pub fn parse_support_family(s: &str) -> Result<SupportFamily, String> {
    match s {
        "maximal-joins" => Ok(SupportFamily::MaximalJoins),
        "maximal-cliques" => Ok(SupportFamily::MaximalCliques),
        other => Err(format!("unknown support family `{other}`; expected maximal-joins or maximal-cliques")),
    }
}

fn support_family_name(f: &SupportFamily) -> &'static str {
    match f {
        SupportFamily::MaximalJoins => "maximal-joins",
        SupportFamily::MaximalCliques => "maximal-cliques",
        SupportFamily::Explicit(_) => "explicit",
    }
}

#[derive(Clone, Debug)]
pub struct CicOptions {
    pub family: SupportFamily,
    pub radius: usize,
    pub max_dim: usize,
    /// Bound on infinite-order exponents in representatives.
    pub max_exp: i64,
    /// Also build and check the Cayley-graph ball of this radius.
    pub ball: Option<usize>,
    pub emit: Option<PathBuf>,
}

pub fn gp_cic(path: &Path, opts: &CicOptions) -> Result<Report, CliError> {
    let mut report = Report::new("gp-cic");
    let input = load(path)?;
    report.input(&input.name, input.text.as_bytes());
    let pres: GPPresentation = formats::parse_presentation_str(&input.text).map_err(|e| at_file(&input.name, e))?;
    report.param("family", support_family_name(&opts.family));
    report.param("radius", opts.radius);
    report.param("max-dim", opts.max_dim);
    report.param("max-exp", opts.max_exp);
    if let Some(r) = opts.ball {
        report.param("ball", r);
    }
    let g = pres.graph();
    let mut lines: Vec<String> = g.vertices().map(|v| format!("vertex {} order {}", g.label(v), pres.order(v))).collect();
    lines.extend(g.edges().into_iter().map(|(u, v)| format!("edge {} {}", g.label(u), g.label(v))));
    report.section("presentation", lines);

    let frag = cic_fragment(&pres, &opts.family, opts.radius, opts.max_dim, opts.max_exp)?;
    let k = frag.complex(&pres);
    if let Some(p) = &opts.emit {
        write_file(p, &emit_complex(&k))?;
    }
    let mut lines = vec![format!("cosets {}", frag.vertices.len())];
    lines.extend(complex_lines(&mut report, &k, false).into_iter().skip(1));
    report.section("fragment", lines);

    if let Some(r) = opts.ball {
        let ball = qm_ball(&pres, r)?;
        let b = verify_ball(&pres, &ball)?;
        let mut lines = vec![
            format!("radius {}", ball.radius),
            format!("trust_radius {}", ball.trust_radius),
            format!("vertices {}", ball.graph.len()),
            format!("edges {}", ball.graph.edge_count()),
        ];
        let groups = [
            ("clique", &b.clique_failures),
            ("carrier", &b.carrier_failures),
            ("label", &b.label_failures),
            ("cut-vertex", &b.cut_vertices_in_trust),
        ];
        for (kind, fails) in groups {
            lines.push(format!("{kind}_failures {}", fails.len()));
            lines.extend(fails.iter().map(|f| format!("{kind} {f}")));
        }
        lines.push(format!("status {}", if b.passed() { "pass" } else { "fail" }));
        if !b.passed() {
            report.escalate(ExitStatus::ChecksFailed);
        }
        report.section("ball", lines);
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct CorpusOptions {
    pub seed: u64,
    pub count: usize,
    pub max_vertices: usize,
    /// Prepend the fixed list of named graphs.
    pub with_fixed: bool,
    /// Writes `<name>.g` per graph.
    pub out_dir: Option<PathBuf>,
    /// Run the theorem checks on every graph.
    pub verify: bool,
}

pub fn gen_corpus(opts: &CorpusOptions) -> Result<Report, CliError> {
    let mut report = Report::new("gen-corpus");
    report.param("seed", opts.seed);
    report.param("count", opts.count);
    report.param("max-vertices", opts.max_vertices);
    report.param("with-fixed", opts.with_fixed);
    let spec = CorpusSpec {
        seed: opts.seed,
        random_count: opts.count,
        max_vertices: opts.max_vertices,
        include_fixed: opts.with_fixed,
        ..CorpusSpec::default()
    };
    if let Some(dir) = &opts.out_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    }
    let mut lines = Vec::new();
    for e in expand(&spec) {
        match e {
            Ok(entry) => {
                let text = emit_graph(entry.graph.graph());
                if let Some(dir) = &opts.out_dir {
                    write_file(&dir.join(format!("{}.g", entry.name)), &text)?;
                }
                lines.push(format!(
                    "{} vertices {} edges {} sha256 {}",
                    entry.name,
                    entry.graph.len(),
                    entry.graph.graph().edge_count(),
                    crate::report::sha256_hex(text.as_bytes())
                ));
            }
            Err((name, reason)) => lines.push(format!("{name} skipped :: {reason}")),
        }
    }
    report.section("graphs", lines);
    if opts.verify {
        let corpus = run_corpus(&spec);
        for e in &corpus.entries {
            if let EntryOutcome::Verified(r) = e {
                add_theorem_report(&mut report, r);
            }
        }
        report.section(
            "summary",
            vec![
                format!("verified {}", corpus.reports().count()),
                format!("failures {}", corpus.failure_count()),
            ],
        );
    }
    Ok(report)
}
