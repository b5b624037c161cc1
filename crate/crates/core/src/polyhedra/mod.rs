//! Exact polyhedral cone engine.
//!
//! Cones are `{x : E x = 0, A x >= 0}` (H-representation) or
//! `cone(R) + span(L)` (V-representation). All rows and rays are primitive
//! integer vectors; rational input is scaled on the way in.

mod bits;
mod dd;
mod fm;
pub mod io;
mod lp;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{
    canonical_row_space, dot, is_zero_vec, make_canonical_line, make_primitive, rank,
    rational_row_to_int, to_rational_row, Int, IntVec,
};
use crate::error::{invalid, Result};

pub use fm::fm_eliminate;

/// H-representation: `equalities . x = 0` and `inequalities . x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRep {
    pub dim: usize,
    pub equalities: Vec<IntVec>,
    pub inequalities: Vec<IntVec>,
}

/// V-representation: conic hull of `rays` plus the linear span of `lineality`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VRep {
    pub dim: usize,
    pub rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
}

/// Either description; membership and equality accept both.
#[derive(Clone, Debug)]
pub enum Cone {
    H(HRep),
    V(VRep),
}

impl From<HRep> for Cone {
    fn from(h: HRep) -> Self {
        Cone::H(h)
    }
}

impl From<VRep> for Cone {
    fn from(v: VRep) -> Self {
        Cone::V(v)
    }
}

fn normalize_rows(rows: Vec<IntVec>, dim: usize, what: &str) -> Result<Vec<IntVec>> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, mut r) in rows.into_iter().enumerate() {
        if r.len() != dim {
            return invalid(format!(
                "{what} row {i} has length {}, expected {dim}",
                r.len()
            ));
        }
        if is_zero_vec(&r) {
            continue;
        }
        make_primitive(&mut r);
        out.push(r);
    }
    Ok(out)
}

impl HRep {
    /// Builds an H-rep, dropping zero rows and making rows primitive.
    pub fn new(dim: usize, equalities: Vec<IntVec>, inequalities: Vec<IntVec>) -> Result<Self> {
        if dim == 0 {
            return invalid("cone dimension must be positive");
        }
        let mut equalities = normalize_rows(equalities, dim, "equality")?;
        for e in equalities.iter_mut() {
            make_canonical_line(e);
        }
        Ok(HRep {
            dim,
            equalities,
            inequalities: normalize_rows(inequalities, dim, "inequality")?,
        })
    }

    pub fn from_i64(dim: usize, equalities: &[Vec<i64>], inequalities: &[Vec<i64>]) -> Result<Self> {
        let conv = |rows: &[Vec<i64>]| -> Vec<IntVec> {
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect()
        };
        HRep::new(dim, conv(equalities), conv(inequalities))
    }

    pub fn from_rational(
        dim: usize,
        equalities: &[Vec<BigRational>],
        inequalities: &[Vec<BigRational>],
    ) -> Result<Self> {
        let conv = |rows: &[Vec<BigRational>]| -> Vec<IntVec> {
            rows.iter().map(|r| rational_row_to_int(r)).collect()
        };
        HRep::new(dim, conv(equalities), conv(inequalities))
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.equalities.iter().all(|e| dot(e, v).is_zero())
            && self.inequalities.iter().all(|a| !dot(a, v).is_negative())
    }

    /// Membership of the whole line `span(v)`.
    pub fn contains_line(&self, v: &[Int]) -> bool {
        self.equalities
            .iter()
            .chain(&self.inequalities)
            .all(|a| dot(a, v).is_zero())
    }
}

impl VRep {
    pub fn new(dim: usize, rays: Vec<IntVec>, lineality: Vec<IntVec>) -> Result<Self> {
        if dim == 0 {
            return invalid("cone dimension must be positive");
        }
        let rays = normalize_rows(rays, dim, "ray")?;
        let lineality = normalize_rows(lineality, dim, "lineality")?;
        Ok(canonical_vrep(dim, rays, &lineality))
    }

    pub fn from_i64(dim: usize, rays: &[Vec<i64>]) -> Result<Self> {
        VRep::new(
            dim,
            rays.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
            Vec::new(),
        )
    }

    /// Dimension of the linear hull of the cone.
    pub fn cone_dimension(&self) -> usize {
        let all: Vec<IntVec> = self.rays.iter().chain(&self.lineality).cloned().collect();
        rank(&all)
    }
}

/// Extreme rays and lineality of an H-represented cone.
pub fn enumerate_rays(h: &HRep) -> VRep {
    let out = dd::double_description(h.dim, &h.equalities, &h.inequalities);
    canonical_vrep(h.dim, out.rays, &out.lineality)
}

/// Lineality as a reduced echelon basis and every ray reduced modulo it,
/// sorted and deduplicated; rays inside the lineality space are dropped.
fn canonical_vrep(dim: usize, rays: Vec<IntVec>, lineality: &[IntVec]) -> VRep {
    let lineality = canonical_row_space(lineality);
    let mut rays: Vec<IntVec> = rays
        .iter()
        .map(|r| reduce_modulo(r, &lineality))
        .filter(|r| !is_zero_vec(r))
        .collect();
    rays.sort();
    rays.dedup();
    VRep {
        dim,
        rays,
        lineality,
    }
}

/// Reduces `row` modulo a reduced echelon equality basis: zero in every
/// pivot column, then primitive. Gives a canonical facet normal.
pub fn reduce_modulo(row: &[Int], basis: &[IntVec]) -> IntVec {
    let mut r = row.to_vec();
    for b in basis {
        let p = b.iter().position(|x| !x.is_zero()).unwrap();
        if !r[p].is_zero() {
            let coef = r[p].clone();
            let lead = b[p].clone();
            // lead > 0, so the direction of r is preserved
            r = crate::arith::combine(&lead, &r, &coef, b);
        }
    }
    make_primitive(&mut r);
    r
}

/// Minimal H-representation of `cone(rays) + span(lineality)`.
///
/// Equalities come out as a reduced echelon basis and every facet normal is
/// reduced modulo that basis, so equal cones give identical output.
pub fn facets_from_rays(v: &VRep) -> HRep {
    let dual = dd::double_description(v.dim, &v.lineality, &v.rays);
    let equalities = canonical_row_space(&dual.lineality);
    let mut facets: Vec<IntVec> = dual
        .rays
        .iter()
        .map(|f| reduce_modulo(f, &equalities))
        .filter(|f| !is_zero_vec(f))
        .collect();
    facets.sort();
    facets.dedup();
    HRep {
        dim: v.dim,
        equalities,
        inequalities: facets,
    }
}

/// A dropped inequality written as a combination of kept rows:
/// `row = sum(weights[i] * kept[i]) + sum(eq_weights[j] * equalities[j])`
/// with all `weights >= 0`.
#[derive(Clone, Debug)]
pub struct RedundancyCertificate {
    pub row: IntVec,
    pub weights: Vec<(usize, BigRational)>,
    pub eq_weights: Vec<(usize, BigRational)>,
}

/// Irredundant H-rep of the same cone, keeping original rows where possible.
///
/// Inequalities that vanish on the whole cone become equalities; among
/// facet-defining rows with the same incidence only the first is kept.
pub fn remove_redundancies(h: &HRep) -> HRep {
    irredundant(h, &enumerate_rays(h)).0
}

/// As [`remove_redundancies`], with the rays of the cone already known.
pub fn remove_redundancies_with_rays(h: &HRep, v: &VRep) -> HRep {
    irredundant(h, v).0
}

/// As [`remove_redundancies`], also returning an exact certificate for every
/// dropped inequality.
pub fn remove_redundancies_verbose(h: &HRep) -> (HRep, Vec<RedundancyCertificate>) {
    let (out, dropped) = irredundant(h, &enumerate_rays(h));
    let kept_cols: Vec<Vec<BigRational>> =
        out.inequalities.iter().map(|r| to_rational_row(r)).collect();
    let eq_cols: Vec<Vec<BigRational>> = out.equalities.iter().map(|r| to_rational_row(r)).collect();
    let mut certs = Vec::new();
    for row in dropped {
        // free equality multipliers are split as mu+ - mu-
        let mut cols = kept_cols.clone();
        for e in &eq_cols {
            cols.push(e.clone());
            cols.push(e.iter().map(|x| -x).collect());
        }
        let target = to_rational_row(&row);
        let sol = lp::nonnegative_solution(&cols, &target)
            .expect("dropped row must be implied by the kept rows");
        let k = kept_cols.len();
        let weights = (0..k)
            .filter(|&i| !sol[i].is_zero())
            .map(|i| (i, sol[i].clone()))
            .collect();
        let eq_weights = (0..eq_cols.len())
            .map(|j| (j, &sol[k + 2 * j] - &sol[k + 2 * j + 1]))
            .filter(|(_, w)| !w.is_zero())
            .collect();
        certs.push(RedundancyCertificate {
            row,
            weights,
            eq_weights,
        });
    }
    (out, certs)
}

fn irredundant(h: &HRep, v: &VRep) -> (HRep, Vec<IntVec>) {
    let cone_dim = v.cone_dimension();

    let mut eq_rows: Vec<IntVec> = Vec::new();
    let mut eq_rank = 0;
    for e in &h.equalities {
        eq_rows.push(e.clone());
        let r = rank(&eq_rows);
        if r > eq_rank {
            eq_rank = r;
        } else {
            eq_rows.pop();
        }
    }

    let mut kept: Vec<IntVec> = Vec::new();
    let mut kept_incidence: Vec<Vec<usize>> = Vec::new();
    let mut dropped = Vec::new();
    for row in &h.inequalities {
        let tight: Vec<usize> = (0..v.rays.len())
            .filter(|&i| dot(row, &v.rays[i]).is_zero())
            .collect();
        if tight.len() == v.rays.len() {
            // implicit equality
            eq_rows.push(row.clone());
            let r = rank(&eq_rows);
            if r > eq_rank {
                eq_rank = r;
                let last = eq_rows.last_mut().unwrap();
                make_canonical_line(last);
            } else {
                eq_rows.pop();
            }
            continue;
        }
        let face: Vec<IntVec> = tight
            .iter()
            .map(|&i| v.rays[i].clone())
            .chain(v.lineality.iter().cloned())
            .collect();
        let is_facet = rank(&face) + 1 == cone_dim;
        if is_facet && !kept_incidence.contains(&tight) {
            kept.push(row.clone());
            kept_incidence.push(tight);
        } else {
            dropped.push(row.clone());
        }
    }
    (
        HRep {
            dim: h.dim,
            equalities: eq_rows,
            inequalities: kept,
        },
        dropped,
    )
}

pub fn membership(cone: &Cone, v: &[Int]) -> Result<bool> {
    match cone {
        Cone::H(h) => {
            if v.len() != h.dim {
                return invalid(format!("vector length {} vs cone dimension {}", v.len(), h.dim));
            }
            Ok(h.contains(v))
        }
        Cone::V(vr) => {
            if v.len() != vr.dim {
                return invalid(format!("vector length {} vs cone dimension {}", v.len(), vr.dim));
            }
            Ok(facets_from_rays(vr).contains(v))
        }
    }
}

fn as_h(c: &Cone) -> HRep {
    match c {
        Cone::H(h) => h.clone(),
        Cone::V(v) => facets_from_rays(v),
    }
}

fn as_v(c: &Cone) -> VRep {
    match c {
        Cone::H(h) => enumerate_rays(h),
        Cone::V(v) => v.clone(),
    }
}

fn dim_of(c: &Cone) -> usize {
    match c {
        Cone::H(h) => h.dim,
        Cone::V(v) => v.dim,
    }
}

/// `a ⊆ b`, exactly.
pub fn cone_contains(b: &Cone, a: &Cone) -> Result<bool> {
    if dim_of(a) != dim_of(b) {
        return invalid(format!(
            "dimension mismatch: {} vs {}",
            dim_of(a),
            dim_of(b)
        ));
    }
    let va = as_v(a);
    let hb = as_h(b);
    Ok(va.rays.iter().all(|r| hb.contains(r)) && va.lineality.iter().all(|l| hb.contains_line(l)))
}

pub fn cones_equal(a: &Cone, b: &Cone) -> Result<bool> {
    Ok(cone_contains(b, a)? && cone_contains(a, b)?)
}

/// Projection onto the coordinates in `keep` (in that order) by ray
/// enumeration: rays of the full cone are projected and the extremal
/// subset recomputed.
pub fn dd_project(h: &HRep, keep: &[usize]) -> Result<(HRep, VRep)> {
    check_keep(h.dim, keep)?;
    let v = enumerate_rays(h);
    Ok(project_vrep(&v, keep))
}

pub(crate) fn check_keep(dim: usize, keep: &[usize]) -> Result<()> {
    if keep.is_empty() {
        return invalid("cannot eliminate every coordinate");
    }
    let mut seen = vec![false; dim];
    for &k in keep {
        if k >= dim {
            return invalid(format!("coordinate {k} out of range for dimension {dim}"));
        }
        if seen[k] {
            return invalid(format!("coordinate {k} listed twice"));
        }
        seen[k] = true;
    }
    Ok(())
}

/// Image of a V-rep under a coordinate projection, with both the minimal
/// H-rep and the extremal rays of the image.
pub fn project_vrep(v: &VRep, keep: &[usize]) -> (HRep, VRep) {
    let pick = |x: &IntVec| -> IntVec { keep.iter().map(|&k| x[k].clone()).collect() };
    let rays: Vec<IntVec> = v
        .rays
        .iter()
        .map(pick)
        .filter(|r| !is_zero_vec(r))
        .map(|mut r| {
            make_primitive(&mut r);
            r
        })
        .collect();
    let lineality: Vec<IntVec> = v.lineality.iter().map(pick).filter(|r| !is_zero_vec(r)).collect();
    let image = VRep {
        dim: keep.len(),
        rays,
        lineality: canonical_row_space(&lineality),
    };
    let h = facets_from_rays(&image);
    let extremal = enumerate_rays(&h);
    (h, extremal)
}

/// Rays of `v` that are extreme in `cone(v.rays) + span(v.lineality)`.
pub fn extremal_subset(v: &VRep) -> VRep {
    let h = facets_from_rays(v);
    enumerate_rays(&h)
}

/// Sign of `row . v` for a float vector, with tolerance.
pub fn float_value(row: &[Int], v: &[f64]) -> f64 {
    row.iter().zip(v).map(|(a, x)| a.to_f64() * x).sum()
}

/// True when `a` is a positive multiple of `b` modulo the span of `eqs`.
pub fn same_direction_modulo(a: &[Int], b: &[Int], eqs: &[IntVec]) -> bool {
    let basis = canonical_row_space(eqs);
    let ra = reduce_modulo(a, &basis);
    let rb = reduce_modulo(b, &basis);
    !is_zero_vec(&ra) && ra == rb
}
