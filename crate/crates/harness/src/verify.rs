//! The per-graph check battery.
//!
//! Check ids are grouped by letter: `a` contact complex, `b` crossing
//! complex against its block model, `c` relative contact complexes of
//! star-covering families, `d` skewering complexes of parallelism-free
//! families, `e` hyperplane and prism axioms, `f` connectivity of the contact
//! and crossing graphs. Homotopy equivalences are checked as equality of
//! integral homology in every degree plus equal component counts.

use std::collections::BTreeSet;
use std::time::Instant;

use hypercx_core::complexes::{
    self, family_predicates, local_complex, FamilyPredicates, GatedFamily, HyperplaneComplexKind, LocalKind,
};
use hypercx_core::homology::{homology, HomologyError};
use hypercx_core::{ComplexError, HyperplaneId, QMGraph, SimplicialComplex, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{CheckResult, Status, TheoremReport};

/// Helly triples to sample.
pub const HELLY_TRIPLES: usize = 200;
/// Largest graph on which maximal prisms are compared with brute force.
pub const BRUTE_FORCE_PRISM_LIMIT: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyChoice {
    CanonicalStar,
    MaximalPrisms,
    Whole,
    Custom { name: String, members: Vec<VertexSet> },
}

impl FamilyChoice {
    pub fn name(&self) -> &str {
        match self {
            FamilyChoice::CanonicalStar => "canonical-star",
            FamilyChoice::MaximalPrisms => "prisms",
            FamilyChoice::Whole => "whole",
            FamilyChoice::Custom { name, .. } => name,
        }
    }

    pub fn resolve(&self, x: &QMGraph) -> Result<GatedFamily, ComplexError> {
        match self {
            FamilyChoice::CanonicalStar => GatedFamily::canonical_star(x),
            FamilyChoice::MaximalPrisms => GatedFamily::maximal_prisms(x),
            FamilyChoice::Whole => Ok(GatedFamily::whole(x)),
            FamilyChoice::Custom { members, .. } => GatedFamily::new(x, members.clone()),
        }
    }
}

/// `None` when both complexes have the same homology and component count,
/// else a description of the difference.
pub fn homology_mismatch(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<Option<String>, HomologyError> {
    let ha = homology(a, false)?.trimmed();
    let hb = homology(b, false)?.trimmed();
    if ha == hb && a.component_count() == b.component_count() {
        return Ok(None);
    }
    Ok(Some(format!(
        "left {} [{} components] vs right {} [{} components]",
        ha.to_string().trim_end(),
        a.component_count(),
        hb.to_string().trim_end(),
        b.component_count()
    )))
}

fn compare(id: String, a: Result<SimplicialComplex, ComplexError>, b: Result<SimplicialComplex, ComplexError>) -> CheckResult {
    let (a, b) = match (a, b) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return CheckResult::fail(id, format!("construction failed: {e}")),
    };
    match homology_mismatch(&a, &b) {
        Ok(w) => CheckResult::from_witness(id, w),
        Err(e @ HomologyError::FaceGuard { .. }) => CheckResult::skipped(id, e.to_string()),
        Err(e) => CheckResult::fail(id, e.to_string()),
    }
}

fn fmt_set(x: &QMGraph, s: &VertexSet) -> String {
    format!("{{{}}}", x.graph().set_labels(s).join(","))
}

/// Runs every check on a validated graph. Failures become report entries.
pub fn verify_graph(subject: &str, x: &QMGraph, families: &[FamilyChoice]) -> TheoremReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    if let Err(e) = x.require_valid() {
        checks.push(CheckResult::fail("validation", e.to_string()));
        return TheoremReport { subject: subject.into(), checks, wall_time: start.elapsed() };
    }
    checks.push(check_contact(x));
    checks.push(compare(
        "b.crossing-model".into(),
        complexes::hyperplane_complex(x, HyperplaneComplexKind::Crossing),
        complexes::crossing_model(x),
    ));
    let cut = x.graph().cut_vertices().map(|c| c.first().copied()).unwrap_or(None);
    for fam in families {
        checks.extend(check_family(x, fam, cut));
    }
    checks.extend(axiom_battery(x));
    checks.extend(check_graphs(x, cut.is_some()));
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    TheoremReport { subject: subject.into(), checks, wall_time: start.elapsed() }
}

fn check_contact(x: &QMGraph) -> CheckResult {
    let id = "a.contact-acyclic";
    let k = match complexes::hyperplane_complex(x, HyperplaneComplexKind::Contact) {
        Ok(k) => k,
        Err(e) => return CheckResult::fail(id, e.to_string()),
    };
    if !k.is_connected() {
        return CheckResult::fail(id, format!("{} components", k.component_count()));
    }
    match homology(&k, true) {
        Ok(h) if h.is_trivial() => CheckResult::pass(id),
        Ok(h) => CheckResult::fail(id, h.to_string()),
        Err(e) => CheckResult::skipped(id, e.to_string()),
    }
}

fn check_family(x: &QMGraph, fam: &FamilyChoice, cut: Option<usize>) -> Vec<CheckResult> {
    let name = fam.name();
    let ids = [
        format!("c.{name}.relcont-model"),
        format!("c.{name}.local-homology"),
        format!("c.{name}.local-connected"),
        format!("d.{name}.skewering"),
    ];
    let family = match fam.resolve(x) {
        Ok(f) => f,
        Err(e) => return ids.into_iter().map(|id| CheckResult::fail(id, format!("family: {e}"))).collect(),
    };
    let preds = match family_predicates(x, &family) {
        Ok(p) => p,
        Err(e) => return ids.into_iter().map(|id| CheckResult::fail(id, format!("predicates: {e}"))).collect(),
    };
    let [relcont_id, local_id, conn_id, skew_id] = ids;
    let mut out = Vec::new();
    let skip_c = match (cut, &preds.star_witness) {
        (Some(c), _) => Some(format!("cut vertex {}", x.graph().label(c))),
        (None, Some(cl)) => Some(format!("not star-covering at clique {}", fmt_set(x, cl))),
        _ => None,
    };
    if let Some(reason) = skip_c {
        out.extend([relcont_id, local_id, conn_id].into_iter().map(|id| CheckResult::skipped(id, reason.clone())));
    } else {
        out.push(compare(
            relcont_id,
            Ok(complexes::relative_contact_complex(x, &family)),
            complexes::relative_contact_model(x, &family),
        ));
        out.extend(check_local(x, &family, local_id, conn_id));
    }
    out.push(check_skewering(x, &family, &preds, skew_id));
    out
}

fn check_local(x: &QMGraph, family: &GatedFamily, local_id: String, conn_id: String) -> [CheckResult; 2] {
    let mut homology_witness = None;
    let mut guard_skip = None;
    let mut connected_witness = None;
    for v in x.graph().vertices() {
        let l = local_complex(x, v, LocalKind::L, Some(family));
        let sl = local_complex(x, v, LocalKind::SL, Some(family));
        if let Ok(l) = &l {
            if connected_witness.is_none() && !l.is_connected() {
                connected_witness = Some(format!("L({}) has {} components", x.graph().label(v), l.component_count()));
            }
        }
        if homology_witness.is_none() {
            let r = compare(String::new(), l, sl);
            let w = || format!("vertex {}: {}", x.graph().label(v), r.witness);
            match r.status {
                Status::Pass => {}
                Status::Fail => homology_witness = Some(w()),
                Status::Skipped => guard_skip = guard_skip.or_else(|| Some(w())),
            }
        }
    }
    // a failure anywhere outranks vertices the guard left unchecked
    let local = match (homology_witness, guard_skip) {
        (None, Some(reason)) => CheckResult::skipped(local_id, reason),
        (w, _) => CheckResult::from_witness(local_id, w),
    };
    [local, CheckResult::from_witness(conn_id, connected_witness)]
}

fn check_skewering(x: &QMGraph, family: &GatedFamily, preds: &FamilyPredicates, id: String) -> CheckResult {
    if let Some((i, j)) = preds.parallel_witness {
        return CheckResult::skipped(id, format!("members {i} and {j} are parallel"));
    }
    if let Some(i) = family.members().iter().position(|m| x.crossing(m).is_empty()) {
        return CheckResult::skipped(id, format!("member {i} is crossed by no hyperplane"));
    }
    compare(
        id,
        Ok(complexes::skewering_complex(x, family, false)),
        Ok(complexes::relative_contact_complex(x, family)),
    )
}

fn check_graphs(x: &QMGraph, has_cut: bool) -> [CheckResult; 2] {
    let contact = x.contact_graph();
    let crossing = x.transversality_graph();
    let contact_check = CheckResult::from_witness(
        "f.contact-graph-connected",
        (!contact.is_connected()).then(|| format!("{} components", contact.components().len())),
    );
    let crossing_check = CheckResult::from_witness(
        "f.crossing-graph-iff-2-connected",
        (crossing.is_connected() == has_cut).then(|| {
            format!("crossing graph connected = {}, cut vertex present = {has_cut}", crossing.is_connected())
        }),
    );
    [contact_check, crossing_check]
}

/// Small dense bitset over vertex indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize, s: &VertexSet) -> Self {
        let mut w = vec![0u64; n.div_ceil(64)];
        for &v in s {
            w[v / 64] |= 1 << (v % 64);
        }
        Bits(w)
    }

    fn meets(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).any(|(a, b)| a & b != 0)
    }

    fn meets3(&self, o: &Bits, p: &Bits) -> bool {
        self.0.iter().zip(&o.0).zip(&p.0).any(|((a, b), c)| a & b & c != 0)
    }
}

fn axiom_battery(x: &QMGraph) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let hs = x.hyperplanes();

    out.push(CheckResult::from_witness(
        "e.separation",
        hs.iter().find(|h| h.sectors.len() < 2).map(|h| format!("{} has one sector", h.id)),
    ));

    let n = x.len();
    let mut dist_witness = None;
    'pairs: for u in 0..n {
        for v in u + 1..n {
            let s = x.hyperplane_ids().filter(|&j| x.separates(j, u, v)).count();
            if s != x.dist(u, v) {
                dist_witness = Some(format!("d({u},{v}) = {} but {s} hyperplanes separate", x.dist(u, v)));
                break 'pairs;
            }
        }
    }
    out.push(CheckResult::from_witness("e.distance-count", dist_witness));

    let gated_witness = |sets: Vec<(HyperplaneId, &VertexSet)>| {
        sets.into_iter().find_map(|(j, s)| x.is_gated(s).witness.map(|w| format!("{j} {}: {w}", fmt_set(x, s))))
    };
    out.push(CheckResult::from_witness(
        "e.gated-carriers",
        gated_witness(hs.iter().map(|h| (h.id, &h.carrier)).collect()),
    ));
    out.push(CheckResult::from_witness(
        "e.gated-sectors",
        gated_witness(hs.iter().flat_map(|h| h.sectors.iter().map(move |s| (h.id, s))).collect()),
    ));
    out.push(CheckResult::from_witness(
        "e.gated-fibres",
        gated_witness(hs.iter().flat_map(|h| h.fibres.iter().map(move |s| (h.id, s))).collect()),
    ));

    out.push(check_projections(x));
    out.push(check_helly(x));

    match x.maximal_prisms() {
        Err(e) => {
            for id in ["e.prism-bijection", "e.prism-brute-force", "e.carrier-decomposition", "e.prism-absorption", "e.good-prism"] {
                out.push(CheckResult::fail(id, e.to_string()));
            }
        }
        Ok(prisms) => {
            out.push(check_prism_bijection(x, prisms));
            out.push(if n <= BRUTE_FORCE_PRISM_LIMIT {
                match x.brute_force_maximal_prisms(32) {
                    Ok(bf) => {
                        let ours: BTreeSet<VertexSet> = prisms.iter().map(|p| p.vertices.clone()).collect();
                        let theirs: BTreeSet<VertexSet> = bf.into_iter().collect();
                        CheckResult::from_witness(
                            "e.prism-brute-force",
                            (ours != theirs).then(|| format!("{} maximal prisms vs {} by brute force", ours.len(), theirs.len())),
                        )
                    }
                    Err(e) => CheckResult::fail("e.prism-brute-force", e.to_string()),
                }
            } else {
                CheckResult::skipped("e.prism-brute-force", format!("{n} > {BRUTE_FORCE_PRISM_LIMIT} vertices"))
            });
            out.push(check_decompositions(x, prisms));
            out.extend(check_absorption(x));
        }
    }
    out
}

fn check_projections(x: &QMGraph) -> CheckResult {
    let id = "e.projections";
    let sets: Vec<&VertexSet> = x.hyperplanes().iter().take(12).flat_map(|h| [&h.carrier, &h.sectors[0]]).collect();
    for (i, y) in sets.iter().enumerate() {
        for z in sets.iter().skip(i + 1).take(6) {
            let image = match x.gate_image(y, z) {
                Ok(im) => im,
                Err(e) => return CheckResult::fail(id, e.to_string()),
            };
            let cy: BTreeSet<HyperplaneId> = x.crossing(y).into_iter().collect();
            let cz: BTreeSet<HyperplaneId> = x.crossing(z).into_iter().collect();
            let both: BTreeSet<HyperplaneId> = cy.intersection(&cz).copied().collect();
            let ci: BTreeSet<HyperplaneId> = x.crossing(&image).into_iter().collect();
            if ci != both {
                return CheckResult::fail(id, format!("image of {} on {} crossed by {ci:?}, expected {both:?}", fmt_set(x, y), fmt_set(x, z)));
            }
        }
        for &(a, b) in x.edges() {
            let (pa, pb) = (x.nearest_point(a, y), x.nearest_point(b, y));
            if x.dist(pa, pb) > 1 {
                return CheckResult::fail(id, format!("gates of edge ({a},{b}) on {} at distance {}", fmt_set(x, y), x.dist(pa, pb)));
            }
        }
    }
    CheckResult::pass(id)
}

fn check_helly(x: &QMGraph) -> CheckResult {
    let id = "e.helly";
    let mut pool: BTreeSet<VertexSet> = BTreeSet::new();
    for h in x.hyperplanes() {
        pool.insert(h.carrier.clone());
        pool.extend(h.sectors.iter().cloned());
        pool.extend(h.fibres.iter().cloned());
    }
    if let Ok(ps) = x.maximal_prisms() {
        pool.extend(ps.iter().map(|p| p.vertices.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(x.len() as u64 ^ 0x5eed);
    for _ in 0..20 {
        let seed: VertexSet = [rng.gen_range(0..x.len()), rng.gen_range(0..x.len())].into();
        if let Ok(h) = x.gated_hull(&seed) {
            pool.insert(h);
        }
    }
    let pool: Vec<VertexSet> = pool.into_iter().collect();
    let bits: Vec<Bits> = pool.iter().map(|s| Bits::new(x.len(), s)).collect();
    let m = bits.len();
    let check = |i: usize, j: usize, k: usize| -> Option<String> {
        (!bits[i].meets3(&bits[j], &bits[k])).then(|| {
            format!("{} {} {} pairwise meet with empty triple intersection", fmt_set(x, &pool[i]), fmt_set(x, &pool[j]), fmt_set(x, &pool[k]))
        })
    };
    let pairwise = |i: usize, j: usize, k: usize| bits[i].meets(&bits[j]) && bits[j].meets(&bits[k]) && bits[i].meets(&bits[k]);
    let mut checked = 0;
    if m * m * m <= 6 * 20_000 {
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    if pairwise(i, j, k) {
                        checked += 1;
                        if let Some(w) = check(i, j, k) {
                            return CheckResult::fail(id, w);
                        }
                    }
                }
            }
        }
    } else {
        for _ in 0..200_000 {
            if checked >= HELLY_TRIPLES {
                break;
            }
            let (i, j, k) = (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m));
            if i == j || j == k || i == k || !pairwise(i, j, k) {
                continue;
            }
            checked += 1;
            if let Some(w) = check(i, j, k) {
                return CheckResult::fail(id, w);
            }
        }
    }
    let _ = checked;
    CheckResult::pass(id)
}

fn check_prism_bijection(x: &QMGraph, prisms: &[hypercx_core::qm::Prism]) -> CheckResult {
    let id = "e.prism-bijection";
    let t = x.transversality_graph();
    let families: BTreeSet<Vec<usize>> = t.maximal_cliques().into_iter().map(|c| c.into_iter().collect()).collect();
    let from_prisms: BTreeSet<Vec<usize>> = prisms.iter().map(|p| p.hyperplanes.iter().map(|j| j.0).collect()).collect();
    if from_prisms.len() != prisms.len() {
        return CheckResult::fail(id, "two maximal prisms share a hyperplane family");
    }
    if families != from_prisms {
        return CheckResult::fail(id, format!("{} maximal transverse families vs {} prisms", families.len(), prisms.len()));
    }
    match prisms.iter().find(|p| !x.verify_prism(p)) {
        Some(p) => CheckResult::fail(id, format!("prism {} is not a product of its factors", fmt_set(x, &p.vertices))),
        None => CheckResult::pass(id),
    }
}

fn check_decompositions(x: &QMGraph, prisms: &[hypercx_core::qm::Prism]) -> CheckResult {
    let id = "e.carrier-decomposition";
    for p in prisms {
        if let Err(e) = x.carrier_intersection_decomposition(&p.hyperplanes, p.base) {
            return CheckResult::fail(id, format!("{:?} at {}: {e}", p.hyperplanes, p.base));
        }
    }
    for h in x.hyperplanes() {
        let o = *h.carrier.first().expect("non-empty carrier");
        if let Err(e) = x.carrier_intersection_decomposition(&[h.id], o) {
            return CheckResult::fail(id, format!("{} at {o}: {e}", h.id));
        }
    }
    CheckResult::pass(id)
}

fn check_absorption(x: &QMGraph) -> [CheckResult; 2] {
    let prisms = match x.all_prisms() {
        Ok(p) => p,
        Err(e) => return [CheckResult::fail("e.prism-absorption", e.to_string()), CheckResult::fail("e.good-prism", e.to_string())],
    };
    let mut absorb = None;
    let mut good = None;
    for p in prisms {
        let crossing: BTreeSet<HyperplaneId> = x.crossing(&p.vertices).into_iter().collect();
        for h in x.hyperplanes() {
            let inside = p.vertices.is_subset(&h.carrier);
            if crossing.contains(&h.id) && !inside && absorb.is_none() {
                absorb = Some(format!("{} crosses prism {} outside its carrier", h.id, fmt_set(x, &p.vertices)));
            }
            if inside && good.is_none() && !has_good_prism(x, p, h.id, prisms) {
                good = Some(format!("no prism between {} and N({}) crossed by {}", fmt_set(x, &p.vertices), h.id, h.id));
            }
        }
    }
    [CheckResult::from_witness("e.prism-absorption", absorb), CheckResult::from_witness("e.good-prism", good)]
}

/// A prism `Q` with `P ⊆ Q ⊆ N(J)` crossed by `J`.
fn has_good_prism(x: &QMGraph, p: &hypercx_core::qm::Prism, j: HyperplaneId, prisms: &[hypercx_core::qm::Prism]) -> bool {
    let carrier = &x.hyperplanes()[j.0].carrier;
    let ok = |q: &hypercx_core::qm::Prism| {
        q.hyperplanes.contains(&j) && p.vertices.is_subset(&q.vertices) && q.vertices.is_subset(carrier)
    };
    if p.hyperplanes.contains(&j) {
        return true;
    }
    let mut hs = p.hyperplanes.clone();
    hs.push(j);
    if let Ok(q) = x.prism_spanned(p.base, &hs) {
        if ok(&q) && x.verify_prism(&q) {
            return true;
        }
    }
    prisms.iter().any(ok)
}
