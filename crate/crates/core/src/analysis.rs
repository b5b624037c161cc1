//! End-to-end cone pipelines: observed outer cones, line tightness
//! verification, hidden-variable marginalization and the post-selected
//! marginal cones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::arith::{int_vec, is_zero_vec, make_primitive, Int, IntVec};
use crate::causal_model::{
    build_line_structure, build_post_selected_line, observed_independence_pairs, CausalStructure,
};
use crate::distributions::{entropy_vector, split_p3_witness, witness_line, SplitMode};
use crate::entropy_space::{
    all_nodes_index, classical_ci_triples, elemental_closure, elemental_shannon_system,
    reduced_line_system, BlockReduction, CoordinateIndex, LinearForm, Relation, Subset,
};
use crate::error::{invalid, Error, Result};
use crate::polyhedra::io::plain_vector;
use crate::polyhedra::{
    enumerate_rays, facets_from_rays, fm_eliminate, project_vrep, reduce_modulo,
    remove_redundancies_with_rays, HRep, VRep,
};

pub mod reference;

use reference::{doubled3_families, roman_label, DOUBLED3_RAYS, DOUBLED3_SYMMETRIES, LINE4_RAYS};

/// Projection strategy for hidden-coordinate elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Fm,
    #[default]
    Dd,
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fm" => Ok(Engine::Fm),
            "dd" => Ok(Engine::Dd),
            other => invalid(format!("unknown engine `{other}` (expected fm or dd)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Tight,
    OuterOnly,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Tight => "tight",
            Verdict::OuterOnly => "outer-only",
        }
    }
}

/// Default guard on the total node count for full marginalization.
pub const DEFAULT_MAX_NODES: usize = 6;

/// Default tolerance for entropy comparisons, in bits.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub engine: Engine,
    pub max_nodes: usize,
    pub tolerance: f64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            engine: Engine::Dd,
            max_nodes: DEFAULT_MAX_NODES,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

/// A distribution achieving a ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRecord {
    pub name: String,
    pub vector: IntVec,
    /// Index of the single facet the witness does not saturate, if any.
    pub positive_facet: Option<usize>,
}

/// Facet counts and family matches for a post-selected marginal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginalSummary {
    pub equalities: usize,
    pub inequalities: usize,
    pub shannon_facets: usize,
    /// Non-Shannon facets plus equalities.
    pub non_shannon: usize,
    pub families: Vec<FamilyCheck>,
    /// Whether the family orbits cover every non-Shannon (in)equality.
    pub families_cover: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCheck {
    pub text: String,
    pub present: bool,
    pub orbit_size: usize,
}

/// Result of a cone pipeline.
#[derive(Clone, Debug)]
pub struct ConeReport {
    pub structure: String,
    pub index: CoordinateIndex,
    pub equalities: Vec<IntVec>,
    pub facets: Vec<IntVec>,
    pub rays: Vec<IntVec>,
    pub ray_labels: Vec<String>,
    pub witnesses: Vec<Option<WitnessRecord>>,
    pub verdict: Option<Verdict>,
    pub marginal: Option<MarginalSummary>,
    pub elapsed: Duration,
}

impl ConeReport {
    fn new(structure: &str, index: CoordinateIndex, h: HRep, rays: Vec<IntVec>, start: Instant) -> Self {
        let (rays, ray_labels) = order_rays(rays);
        let witnesses = vec![None; rays.len()];
        ConeReport {
            structure: structure.to_string(),
            index,
            equalities: h.equalities,
            facets: h.inequalities,
            rays,
            ray_labels,
            witnesses,
            verdict: None,
            marginal: None,
            elapsed: start.elapsed(),
        }
    }

    pub fn hrep(&self) -> HRep {
        HRep {
            dim: self.index.len(),
            equalities: self.equalities.clone(),
            inequalities: self.facets.clone(),
        }
    }

    pub fn vrep(&self) -> VRep {
        VRep {
            dim: self.index.len(),
            rays: self.rays.clone(),
            lineality: Vec::new(),
        }
    }

    pub fn render_equality(&self, row: &[Int]) -> String {
        LinearForm::from_row(row, &self.index, Relation::Zero).render(&self.index)
    }

    pub fn render_facet(&self, row: &[Int]) -> String {
        LinearForm::from_row(row, &self.index, Relation::NonNegative).render(&self.index)
    }

    pub fn to_json(&self) -> String {
        let rows = |rows: &[IntVec], eq: bool| -> Vec<serde_json::Value> {
            rows.iter()
                .map(|r| {
                    let text = if eq { self.render_equality(r) } else { self.render_facet(r) };
                    json!({ "text": text, "row": r })
                })
                .collect()
        };
        let rays: Vec<serde_json::Value> = self
            .rays
            .iter()
            .zip(&self.ray_labels)
            .zip(&self.witnesses)
            .map(|((r, l), w)| {
                let mut v = json!({ "label": l, "ray": r });
                if let Some(w) = w {
                    v["witness"] = json!({
                        "name": w.name,
                        "vector": w.vector,
                        "positive_facet": w.positive_facet,
                    });
                }
                v
            })
            .collect();
        let mut out = json!({
            "structure": self.structure,
            "coordinates": self.index.labels(),
            "equalities": rows(&self.equalities, true),
            "facets": rows(&self.facets, false),
            "rays": rays,
        });
        if let Some(v) = self.verdict {
            out["verdict"] = json!(v.as_str());
            if v == Verdict::Tight {
                out["statement"] = json!(TIGHT_STATEMENT);
            }
        }
        if let Some(m) = &self.marginal {
            out["summary"] = json!({
                "equalities": m.equalities,
                "inequalities": m.inequalities,
                "shannon_facets": m.shannon_facets,
                "non_shannon": m.non_shannon,
                "families": m.families.iter().map(|f| json!({
                    "form": f.text,
                    "present": f.present,
                    "orbit_size": f.orbit_size,
                })).collect::<Vec<_>>(),
                "families_cover": m.families_cover,
            });
        }
        serde_json::to_string_pretty(&out).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "structure: {}", self.structure);
        let _ = writeln!(s, "coordinates ({}):", self.index.len());
        let _ = writeln!(s, "  ({})", self.index.labels().join(", "));
        let _ = writeln!(s, "equalities ({}):", self.equalities.len());
        for e in &self.equalities {
            let _ = writeln!(s, "  {}", self.render_equality(e));
        }
        let _ = writeln!(s, "facets ({}):", self.facets.len());
        for f in &self.facets {
            let _ = writeln!(s, "  {}", self.render_facet(f));
        }
        let _ = writeln!(s, "extremal rays ({}):", self.rays.len());
        let width = self.ray_labels.iter().map(|l| l.len()).max().unwrap_or(0);
        for ((r, l), w) in self.rays.iter().zip(&self.ray_labels).zip(&self.witnesses) {
            let _ = write!(s, "  {l:<width$}  {}", plain_vector(r));
            if let Some(w) = w {
                let _ = write!(s, "   <- {}", w.name);
            }
            let _ = writeln!(s);
        }
        if let Some(m) = &self.marginal {
            let _ = writeln!(s, "summary:");
            let _ = writeln!(s, "  equalities: {}", m.equalities);
            let _ = writeln!(s, "  inequalities: {}", m.inequalities);
            let _ = writeln!(s, "  shannon facets: {}", m.shannon_facets);
            let _ = writeln!(s, "  non-shannon (in)equalities: {}", m.non_shannon);
            for f in &m.families {
                let mark = if f.present { "present" } else { "MISSING" };
                let _ = writeln!(s, "  family {} [{mark}, orbit {}]", f.text, f.orbit_size);
            }
            if let Some(c) = m.families_cover {
                let _ = writeln!(s, "  family orbits cover all non-shannon: {c}");
            }
        }
        if let Some(v) = self.verdict {
            let _ = writeln!(s, "verdict: {}", v.as_str());
            if v == Verdict::Tight {
                let _ = writeln!(s, "{TIGHT_STATEMENT}");
            }
        }
        s
    }
}

const TIGHT_STATEMENT: &str =
    "every extremal ray is classically achievable: classical closure = quantum closure = outer cone";

/// Rays in reference-table order when they match a published table,
/// otherwise in decreasing lexicographic order; labelled `(i)`, `(ii)`, ...
fn order_rays(mut rays: Vec<IntVec>) -> (Vec<IntVec>, Vec<String>) {
    let matches = |table: Vec<IntVec>| -> Option<Vec<IntVec>> {
        let a: BTreeSet<&IntVec> = rays.iter().collect();
        let b: BTreeSet<&IntVec> = table.iter().collect();
        (a == b && a.len() == rays.len()).then_some(table.clone())
    };
    let ordered = if rays.first().map(|r| r.len()) == Some(15) {
        matches(LINE4_RAYS.iter().map(|r| int_vec(r)).collect())
    } else if rays.first().map(|r| r.len()) == Some(17) {
        matches(DOUBLED3_RAYS.iter().map(|r| int_vec(r)).collect())
    } else {
        None
    };
    let rays = match ordered {
        Some(t) => t,
        None => {
            rays.sort_by(|a, b| b.cmp(a));
            rays
        }
    };
    let labels = (1..=rays.len()).map(roman_label).collect();
    (rays, labels)
}

fn observed_system_rows(g: &CausalStructure) -> Result<(CoordinateIndex, HRep, Vec<IntVec>)> {
    let sys = {
        let mut sys = elemental_shannon_system(&g.observed_names())?;
        for f in crate::causal_model::observed_independence_constraints(g) {
            sys.push(f);
        }
        sys
    };
    let h = sys.to_hrep()?;
    // implied equalities, which let the ray enumeration start low-dimensional
    let mut closure = Vec::new();
    for (s, t) in observed_independence_pairs(g) {
        for f in elemental_closure(s, t, 0) {
            closure.push(f.to_row(&sys.index)?);
        }
    }
    Ok((sys.index, h, closure))
}

/// Shannon cone on the observed nodes cut by the observed independences.
pub fn observed_outer_cone(g: &CausalStructure) -> Result<ConeReport> {
    let start = Instant::now();
    let (index, h, closure) = observed_system_rows(g)?;
    let mut eqs = h.equalities.clone();
    eqs.extend(closure);
    let v = enumerate_rays(&HRep::new(h.dim, eqs, h.inequalities.clone())?);
    let irredundant = remove_redundancies_with_rays(&h, &v);
    Ok(ConeReport::new(g.name(), index, irredundant, v.rays, start))
}

/// Outer cone of `P_n` from the reduced system, with a witness attached to
/// every ray; tight when all rays are achieved by distinct witnesses.
pub fn verify_line_cone(n: usize, tolerance: f64) -> Result<ConeReport> {
    let start = Instant::now();
    let g = build_line_structure(n)?;
    let sys = reduced_line_system(n)?;
    let red = BlockReduction::contiguous(n)?;
    let reduced_h = red.reduce_system(&sys)?;
    let v = enumerate_rays(&reduced_h);
    let rays: Vec<IntVec> = v.rays.iter().map(|r| red.expand(r)).collect();

    let index = sys.index.clone();
    let facets: Vec<IntVec> = sys
        .inequalities
        .iter()
        .map(|f| f.to_row(&index))
        .collect::<Result<_>>()?;
    // H(S) = sum of its contiguous blocks, for every non-block S
    let equalities: Vec<IntVec> = red
        .decomposition
        .iter()
        .enumerate()
        .filter(|(_, parts)| parts.len() > 1)
        .map(|(i, parts)| {
            let mut row = vec![Int::ZERO; index.len()];
            row[i] = Int::ONE;
            for &k in parts {
                let pos = index.position(red.reduced.subsets()[k]).expect("block is a coordinate");
                row[pos] = &row[pos] - &Int::ONE;
            }
            row
        })
        .collect();
    let outer = HRep::new(index.len(), equalities, facets)?;

    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    let checked: Vec<Result<Option<(WitnessRecord, bool)>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let ev = entropy_vector(&witness_line(i, j, n)?.observed_joint());
            let name = format!("D({i},{j})");
            let Some(vector) = ev.snap(tolerance) else {
                return Ok(None);
            };
            let values: Vec<f64> = outer
                .inequalities
                .iter()
                .map(|row| crate::polyhedra::float_value(row, &ev.values))
                .collect();
            let positive: Vec<usize> = (0..values.len()).filter(|&k| values[k] > tolerance).collect();
            let single = positive.len() == 1 && values.iter().all(|&x| x > -tolerance);
            let inside = outer.contains(&vector);
            Ok(Some((
                WitnessRecord {
                    name,
                    vector,
                    positive_facet: single.then(|| positive[0]),
                },
                inside && single,
            )))
        })
        .collect();

    let mut report = ConeReport::new(g.name(), index, outer, rays, start);
    let mut all_ok = true;
    for item in checked {
        // a witness that does not snap to integers achieves no ray
        let Some((w, ok)) = item? else {
            all_ok = false;
            continue;
        };
        all_ok &= ok;
        let mut dir = w.vector.clone();
        make_primitive(&mut dir);
        match report.rays.iter().position(|r| *r == dir) {
            Some(k) if report.witnesses[k].is_none() => report.witnesses[k] = Some(w),
            _ => all_ok = false,
        }
    }
    all_ok &= report.witnesses.iter().all(Option::is_some);
    report.verdict = Some(if all_ok { Verdict::Tight } else { Verdict::OuterOnly });
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Full Shannon + causal constraints over every node, with hidden
/// coordinates projected out.
pub fn full_marginal_outer_cone(g: &CausalStructure, opts: &PipelineOptions) -> Result<ConeReport> {
    let start = Instant::now();
    if g.len() > opts.max_nodes {
        return Err(Error::GuardExceeded {
            what: format!("structure `{}`", g.name()),
            count: g.len(),
            limit: opts.max_nodes,
        });
    }
    if g.observed().is_empty() {
        return invalid("structure has no observed nodes");
    }
    let index = all_nodes_index(g);
    let shannon = elemental_shannon_system(&g.node_names())?;
    let mut equalities = Vec::new();
    for (v, t, pa) in classical_ci_triples(g) {
        equalities.push(LinearForm::mutual_information(v, t, pa).to_row(&index)?);
        for f in elemental_closure(v, t, pa) {
            equalities.push(f.to_row(&index)?);
        }
    }
    let inequalities = shannon
        .inequalities
        .iter()
        .map(|f| f.to_row(&index))
        .collect::<Result<Vec<_>>>()?;
    let h = HRep::new(index.len(), equalities, inequalities)?;

    let hidden: Subset = g.unobserved().iter().fold(0, |m, &v| m | (1 << v));
    let keep: Vec<usize> = (0..index.len()).filter(|&i| index.subsets()[i] & hidden == 0).collect();
    let observed_index = CoordinateIndex::full(g.observed_names());
    let (hp, vp) = project(&h, &keep, opts.engine)?;
    debug_assert_eq!(keep.len(), observed_index.len());
    Ok(ConeReport::new(g.name(), observed_index, hp, vp.rays, start))
}

fn project(h: &HRep, keep: &[usize], engine: Engine) -> Result<(HRep, VRep)> {
    match engine {
        Engine::Dd => {
            crate::polyhedra::check_keep(h.dim, keep)?;
            let v = enumerate_rays(h);
            Ok(project_vrep(&v, keep))
        }
        Engine::Fm => {
            let kept: BTreeSet<usize> = keep.iter().copied().collect();
            let eliminate: Vec<usize> = (0..h.dim).filter(|i| !kept.contains(i)).collect();
            let hp = fm_eliminate(h, &eliminate)?;
            let vp = enumerate_rays(&hp);
            Ok((facets_from_rays(&vp), vp))
        }
    }
}

/// Marginal coordinates of the doubled line: sets holding at most one
/// copy of each doubled outer variable.
pub fn doubled_marginal_index(k: usize) -> Result<CoordinateIndex> {
    let g = build_post_selected_line(k)?;
    let pairs = doubled_pairs(&g);
    CoordinateIndex::restricted(g.observed_names(), |s| pairs.iter().all(|&p| s & p != p))
}

fn doubled_pairs(g: &CausalStructure) -> [Subset; 2] {
    let n = g.observed().len();
    [0b11, 0b11 << (n - 2)]
}

/// Maximal marginal sets: one copy of each doubled variable plus the
/// interior nodes.
fn maximal_marginal_sets(n: usize) -> Vec<Subset> {
    let interior: Subset = ((1u64 << n) - 1) & !0b11 & !(0b11 << (n - 2));
    let mut out = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            out.push(interior | (1 << a) | (1 << (n - 2 + b)));
        }
    }
    out
}

/// Post-selected marginal cone of the doubled `k`-node line.
pub fn bc_marginal_cone(k: usize, engine: Engine) -> Result<ConeReport> {
    let start = Instant::now();
    if k != 3 && k != 4 {
        return invalid(format!("doubled line supports k = 3 or 4, got {k}"));
    }
    if engine == Engine::Fm && k != 3 {
        return invalid("the fm engine is only offered as a cross-check at k = 3");
    }
    let g = build_post_selected_line(k)?;
    let marginal = doubled_marginal_index(k)?;
    let full = CoordinateIndex::full(g.observed_names());
    let keep: Vec<usize> = marginal
        .subsets()
        .iter()
        .map(|&s| full.position(s).expect("marginal set is a coordinate"))
        .collect();

    let (hp, vp) = match engine {
        Engine::Dd => {
            let red = BlockReduction::from_structure(&g);
            let sys = elemental_shannon_system(&g.observed_names())?;
            let reduced = red.reduce_system(&sys)?;
            let v = enumerate_rays(&reduced);
            let rays: Vec<IntVec> = v.rays.iter().map(|r| red.expand(r)).collect();
            project_vrep(&VRep::new(full.len(), rays, Vec::new())?, &keep)
        }
        Engine::Fm => {
            let (_, h, closure) = observed_system_rows(&g)?;
            let mut eqs = h.equalities.clone();
            eqs.extend(closure);
            project(&HRep::new(h.dim, eqs, h.inequalities)?, &keep, Engine::Fm)?
        }
    };

    let summary = summarize_marginal(&g, &marginal, &hp, k == 3)?;
    let mut report = ConeReport::new(&format!("ptilde:{k}"), marginal, hp, vp.rays, start);
    report.marginal = Some(summary);
    report.elapsed = start.elapsed();
    Ok(report)
}

fn summarize_marginal(g: &CausalStructure, marginal: &CoordinateIndex, h: &HRep, families: bool) -> Result<MarginalSummary> {
    let n = g.observed().len();
    let names = g.observed_names();
    let mut shannon: BTreeSet<IntVec> = BTreeSet::new();
    for set in maximal_marginal_sets(n) {
        let vars: Vec<String> = (0..n).filter(|i| set & (1 << i) != 0).map(|i| names[i].clone()).collect();
        let local = elemental_shannon_system(&vars)?;
        let positions: Vec<usize> = (0..n).filter(|i| set & (1 << i) != 0).collect();
        for f in &local.inequalities {
            let mut lifted = LinearForm::zero();
            for (s, c) in f.terms() {
                let global = crate::causal_model::bits(*s).fold(0, |m, b| m | (1 << positions[b]));
                lifted.add_term(global, c.clone());
            }
            shannon.insert(reduce_modulo(&lifted.to_row(marginal)?, &h.equalities));
        }
    }
    let shannon_facets = h.inequalities.iter().filter(|f| shannon.contains(*f)).count();
    let non_shannon_facets: BTreeSet<IntVec> = h
        .inequalities
        .iter()
        .filter(|f| !shannon.contains(*f))
        .cloned()
        .collect();
    let mut summary = MarginalSummary {
        equalities: h.equalities.len(),
        inequalities: h.inequalities.len(),
        shannon_facets,
        non_shannon: non_shannon_facets.len() + h.equalities.len(),
        families: Vec::new(),
        families_cover: None,
    };
    if families {
        let facets: BTreeSet<&IntVec> = h.inequalities.iter().collect();
        let mut covered: BTreeSet<IntVec> = BTreeSet::new();
        let mut covered_eq: BTreeSet<IntVec> = BTreeSet::new();
        for fam in doubled3_families() {
            let row = fam.to_row(marginal)?;
            let text = fam.render(marginal);
            if fam.relation == Relation::Zero {
                let orbit = symmetry_orbit(&row, marginal, None);
                let present = orbit.iter().all(|r| is_zero_vec(&reduce_modulo(r, &h.equalities)));
                covered_eq.extend(orbit.iter().cloned());
                summary.families.push(FamilyCheck {
                    text,
                    present,
                    orbit_size: orbit.len(),
                });
            } else {
                let orbit = symmetry_orbit(&row, marginal, Some(&h.equalities));
                let present = facets.contains(&reduce_modulo(&row, &h.equalities));
                let all_facets = orbit.iter().all(|r| facets.contains(r));
                covered.extend(orbit.iter().cloned());
                summary.families.push(FamilyCheck {
                    text,
                    present: present && all_facets,
                    orbit_size: orbit.len(),
                });
            }
        }
        let eq_rank = crate::arith::rank(&covered_eq.iter().cloned().collect::<Vec<_>>());
        summary.families_cover = Some(covered == non_shannon_facets && eq_rank == h.equalities.len());
    }
    Ok(summary)
}

/// Images of `row` under the symmetry group of the doubled line, as
/// canonical rows (reduced modulo `eqs` when given, else made primitive
/// with a positive leading entry).
fn symmetry_orbit(row: &[Int], index: &CoordinateIndex, eqs: Option<&[IntVec]>) -> BTreeSet<IntVec> {
    let canon = |r: &IntVec| -> IntVec {
        match eqs {
            Some(e) => reduce_modulo(r, e),
            None => {
                let mut r = r.clone();
                crate::arith::make_canonical_line(&mut r);
                r
            }
        }
    };
    let permute = |r: &IntVec, perm: &[usize; 5]| -> IntVec {
        let mut out = vec![Int::ZERO; r.len()];
        for (i, &s) in index.subsets().iter().enumerate() {
            let image = crate::causal_model::bits(s).fold(0u64, |m, b| m | (1 << perm[b]));
            out[index.position(image).expect("symmetry preserves the marginal scenario")] = r[i].clone();
        }
        out
    };
    let mut orbit: BTreeSet<IntVec> = BTreeSet::new();
    let mut frontier = vec![row.to_vec()];
    let mut seen_raw: BTreeSet<IntVec> = BTreeSet::new();
    while let Some(r) = frontier.pop() {
        if !seen_raw.insert(r.clone()) {
            continue;
        }
        orbit.insert(canon(&r));
        for perm in &DOUBLED3_SYMMETRIES {
            frontier.push(permute(&r, perm));
        }
    }
    orbit
}

/// Entropy vectors of the split three-node line witnesses on the marginal
/// scenario, and their extremal subset.
pub fn split_witness_rays(tolerance: f64) -> Result<(Vec<IntVec>, VRep)> {
    let marginal = doubled_marginal_index(3)?;
    let mut vectors: BTreeMap<IntVec, ()> = BTreeMap::new();
    for i in 1..=3 {
        for j in i..=3 {
            let model = witness_line(i, j, 3)?;
            for xm in SplitMode::ALL {
                for zm in SplitMode::ALL {
                    let p = split_p3_witness(&model, xm, zm)?;
                    let ev = entropy_vector(&p);
                    let snapped = ev
                        .snap(tolerance)
                        .ok_or_else(|| Error::InvalidModel("split witness entropies are not integral".into()))?;
                    let restricted: IntVec = marginal
                        .subsets()
                        .iter()
                        .map(|&s| snapped[ev.index.position(s).expect("full index")].clone())
                        .collect();
                    if !is_zero_vec(&restricted) {
                        vectors.insert(restricted, ());
                    }
                }
            }
        }
    }
    let all: Vec<IntVec> = vectors.into_keys().collect();
    let cone = VRep::new(marginal.len(), all.clone(), Vec::new())?;
    let extremal = crate::polyhedra::extremal_subset(&cone);
    Ok((all, extremal))
}
