//! Finite-alphabet causal models, joint distributions, entropy vectors and
//! the explicit witness constructions.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::causal_model::{
    build_line_structure, resolve_structure, CausalStructure, Node, StructureFile,
};
use crate::entropy_space::{CoordinateIndex, EntropyVector, Subset};
use crate::error::{invalid, Error, Result};

/// Normalization tolerance for probability tables.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Joint distribution over named finite variables, row-major with the last
/// variable varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    names: Vec<String>,
    sizes: Vec<usize>,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(names: Vec<String>, sizes: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if names.len() != sizes.len() {
            return invalid("one alphabet size per variable required");
        }
        if sizes.iter().any(|&s| s == 0) {
            return invalid("alphabet sizes must be positive");
        }
        let total: usize = sizes.iter().product();
        if probs.len() != total {
            return invalid(format!(
                "table has {} entries, expected {total}",
                probs.len()
            ));
        }
        if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidModel("negative or non-finite probability".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidModel(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(JointDistribution { names, sizes, probs })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Decodes a flat index into one outcome per variable.
    pub fn outcome(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for (k, &s) in self.sizes.iter().enumerate().rev() {
            out[k] = flat % s;
            flat /= s;
        }
        out
    }

    pub fn flat_index(&self, outcome: &[usize]) -> usize {
        outcome
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&x, &s)| acc * s + x)
    }

    /// Probability of a full outcome tuple.
    pub fn prob(&self, outcome: &[usize]) -> f64 {
        self.probs[self.flat_index(outcome)]
    }

    /// Marginal over the variables at `positions`, in that order.
    pub fn marginal_positions(&self, positions: &[usize]) -> JointDistribution {
        let sizes: Vec<usize> = positions.iter().map(|&p| self.sizes[p]).collect();
        let mut probs = vec![0.0; sizes.iter().product()];
        for (flat, &p) in self.probs.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let o = self.outcome(flat);
            let idx = positions
                .iter()
                .zip(&sizes)
                .fold(0, |acc, (&pos, &s)| acc * s + o[pos]);
            probs[idx] += p;
        }
        JointDistribution {
            names: positions.iter().map(|&p| self.names[p].clone()).collect(),
            sizes,
            probs,
        }
    }

    pub fn marginal(&self, names: &[&str]) -> Result<JointDistribution> {
        let positions = names
            .iter()
            .map(|n| {
                self.position(n)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown variable `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.marginal_positions(&positions))
    }

    /// Shannon entropy in bits, with `0 log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        shannon_entropy(&self.probs)
    }

    /// Entropy of the variables in `mask` (bit `k` = variable `k`).
    pub fn subset_entropy(&self, mask: Subset) -> f64 {
        let positions: Vec<usize> = (0..self.names.len()).filter(|k| mask & (1 << k) != 0).collect();
        self.marginal_positions(&positions).entropy()
    }
}

pub fn shannon_entropy(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Entropies of every nonempty subset of the variables, in canonical
/// coordinate order.
pub fn entropy_vector(p: &JointDistribution) -> EntropyVector {
    let index = CoordinateIndex::full(p.names.clone());
    let values = index.subsets().iter().map(|&s| p.subset_entropy(s)).collect();
    EntropyVector { index, values }
}

/// Conditional distribution of one node given its parents: one row per
/// parent outcome tuple (row-major over parents in node order), each row a
/// distribution over the node's own alphabet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cpt {
    pub rows: Vec<Vec<f64>>,
}

/// Structural model: a structure, an alphabet size and a CPT per node.
#[derive(Clone, Debug)]
pub struct CausalModel {
    structure: CausalStructure,
    sizes: Vec<usize>,
    cpts: Vec<Cpt>,
}

impl CausalModel {
    pub fn new(structure: CausalStructure, sizes: Vec<usize>, cpts: Vec<Cpt>) -> Result<Self> {
        let n = structure.len();
        if sizes.len() != n || cpts.len() != n {
            return Err(Error::InvalidModel(format!(
                "{n} nodes but {} alphabet sizes and {} tables",
                sizes.len(),
                cpts.len()
            )));
        }
        for v in 0..n {
            let id = &structure.nodes()[v].id;
            if sizes[v] == 0 {
                return Err(Error::InvalidModel(format!("node `{id}` has an empty alphabet")));
            }
            let expected_rows: usize = structure.parents(v).iter().map(|&p| sizes[p]).product();
            let cpt = &cpts[v];
            if cpt.rows.len() != expected_rows {
                return Err(Error::InvalidModel(format!(
                    "table of `{id}` has {} rows, parent outcomes require {expected_rows}",
                    cpt.rows.len()
                )));
            }
            for (r, row) in cpt.rows.iter().enumerate() {
                if row.len() != sizes[v] {
                    return Err(Error::InvalidModel(format!(
                        "table of `{id}` row {r} has {} entries, alphabet size is {}",
                        row.len(),
                        sizes[v]
                    )));
                }
                if row.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                    return Err(Error::InvalidModel(format!(
                        "table of `{id}` row {r} has a negative entry"
                    )));
                }
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > NORMALIZATION_TOL {
                    return Err(Error::InvalidModel(format!(
                        "table of `{id}` row {r} sums to {sum}"
                    )));
                }
            }
        }
        Ok(CausalModel {
            structure,
            sizes,
            cpts,
        })
    }

    /// Builds a model from a per-node rule mapping parent values (in node
    /// order of the parents) to a distribution over the node's outcomes.
    pub fn from_rule(
        structure: CausalStructure,
        sizes: Vec<usize>,
        rule: impl Fn(usize, &[usize]) -> Vec<f64>,
    ) -> Result<Self> {
        let mut cpts = Vec::with_capacity(structure.len());
        for v in 0..structure.len() {
            let parent_sizes: Vec<usize> = structure.parents(v).iter().map(|&p| sizes[p]).collect();
            let rows_n: usize = parent_sizes.iter().product();
            let mut rows = Vec::with_capacity(rows_n);
            for r in 0..rows_n {
                let mut vals = vec![0; parent_sizes.len()];
                let mut rem = r;
                for k in (0..parent_sizes.len()).rev() {
                    vals[k] = rem % parent_sizes[k];
                    rem /= parent_sizes[k];
                }
                rows.push(rule(v, &vals));
            }
            cpts.push(Cpt { rows });
        }
        CausalModel::new(structure, sizes, cpts)
    }

    /// Roots uniform, every other node a deterministic function of its
    /// parents.
    pub fn deterministic(
        structure: CausalStructure,
        sizes: Vec<usize>,
        f: impl Fn(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let sizes_c = sizes.clone();
        let roots: Vec<bool> = (0..structure.len())
            .map(|v| structure.parents(v).is_empty())
            .collect();
        CausalModel::from_rule(structure, sizes, |v, pv| {
            let d = sizes_c[v];
            if roots[v] {
                return vec![1.0 / d as f64; d];
            }
            let mut row = vec![0.0; d];
            row[f(v, pv) % d] = 1.0;
            row
        })
    }

    pub fn structure(&self) -> &CausalStructure {
        &self.structure
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn cpt(&self, node: usize) -> &Cpt {
        &self.cpts[node]
    }

    /// `P(node = value | parents = parent_values)`.
    pub fn cond_prob(&self, node: usize, parent_values: &[usize], value: usize) -> f64 {
        let parents = self.structure.parents(node);
        let row = parents
            .iter()
            .zip(parent_values)
            .fold(0, |acc, (&p, &x)| acc * self.sizes[p] + x);
        self.cpts[node].rows[row][value]
    }

    /// Product of the CPTs, over all nodes in node order.
    pub fn compile(&self) -> JointDistribution {
        let names = self.structure.node_names();
        let total: usize = self.sizes.iter().product();
        let mut probs = vec![0.0; total];
        let shape = JointDistribution {
            names: names.clone(),
            sizes: self.sizes.clone(),
            probs: Vec::new(),
        };
        for (flat, slot) in probs.iter_mut().enumerate() {
            let o = shape.outcome(flat);
            let mut p = 1.0;
            for v in 0..self.structure.len() {
                let pv: Vec<usize> = self.structure.parents(v).iter().map(|&q| o[q]).collect();
                p *= self.cond_prob(v, &pv, o[v]);
                if p == 0.0 {
                    break;
                }
            }
            *slot = p;
        }
        JointDistribution {
            names,
            sizes: self.sizes.clone(),
            probs,
        }
    }

    /// Marginal of the compiled joint on the observed nodes.
    pub fn observed_joint(&self) -> JointDistribution {
        self.compile().marginal_positions(&self.structure.observed())
    }
}

/// Sampling-free compile-and-marginalise, as a free function.
pub fn compile(model: &CausalModel) -> JointDistribution {
    model.compile()
}

pub fn marginal(joint: &JointDistribution, names: &[&str]) -> Result<JointDistribution> {
    joint.marginal(names)
}

/// Line witness `D(i, j)` on `P_n` (1-based, `i <= j`): hidden nodes are
/// uniform bits, `Xi = Ci`, interior `Xk = C(k-1) xor Ck`, `Xj = C(j-1)`,
/// every other observed node the constant 1. `D(i, i)` sets `Xi = Ci`
/// (`C(n-1)` for `i = n`). On `P_1` the single node is a uniform bit.
pub fn witness_line(i: usize, j: usize, n: usize) -> Result<CausalModel> {
    if n == 0 || i == 0 || i > j || j > n {
        return invalid(format!("witness indices need 1 <= i <= j <= n, got ({i}, {j}, {n})"));
    }
    let g = build_line_structure(n)?;
    let sizes = vec![2; g.len()];
    // observed Xk is node k-1; hidden Ck is node n+k-1
    CausalModel::from_rule(g, sizes, move |v, pv| {
        let bit = |b: usize| if b == 1 { vec![0.0, 1.0] } else { vec![1.0, 0.0] };
        if v >= n || n == 1 {
            return vec![0.5, 0.5];
        }
        let k = v + 1;
        // parents of Xk in node order: C(k-1) (if k > 1), then Ck (if k < n)
        let left = if k > 1 { Some(pv[0]) } else { None };
        let right = if k < n { Some(pv[pv.len() - 1]) } else { None };
        let value = if i == j {
            if k != i {
                1
            } else if i < n {
                right.unwrap()
            } else {
                left.unwrap()
            }
        } else if k < i || k > j {
            1
        } else if k == i {
            right.unwrap()
        } else if k == j {
            left.unwrap()
        } else {
            left.unwrap() ^ right.unwrap()
        };
        bit(value)
    })
}

/// The five-observed-node line `A - X - Y - Z - B` whose outer hidden nodes
/// are identified with the observed settings `A` and `B`.
pub fn build_setting_line() -> CausalStructure {
    CausalStructure::new(
        "setting-line:5",
        vec![
            Node::observed("A"),
            Node::observed("X"),
            Node::observed("Y"),
            Node::observed("Z"),
            Node::observed("B"),
            Node::unobserved("C2"),
            Node::unobserved("C3"),
        ],
        &[
            ("A", "X"),
            ("C2", "X"),
            ("C2", "Y"),
            ("C3", "Y"),
            ("C3", "Z"),
            ("B", "Z"),
        ],
    )
    .expect("setting line is a DAG")
}

fn require_setting_line(model: &CausalModel) -> Result<[usize; 7]> {
    let g = model.structure();
    let reference = build_setting_line();
    let ids = ["A", "X", "Y", "Z", "B", "C2", "C3"];
    let mut idx = [0usize; 7];
    for (k, id) in ids.iter().enumerate() {
        idx[k] = g
            .index_of(id)
            .ok_or_else(|| Error::InvalidParameter(format!("model lacks node `{id}`")))?;
    }
    let mut have: Vec<(String, String)> = g.edges().map(|(a, b)| (a.into(), b.into())).collect();
    let mut want: Vec<(String, String)> =
        reference.edges().map(|(a, b)| (a.into(), b.into())).collect();
    have.sort();
    want.sort();
    if have != want || g.len() != 7 {
        return invalid("post-selection needs the A-X-Y-Z-B line with hidden C2, C3");
    }
    Ok(idx)
}

/// Joint over `(X0, X1, Y, Z0, Z1)` whose `(Xa, Y, Zb)` marginal equals
/// `P(X, Y, Z | A = a, B = b)`: each outcome variable is evaluated under
/// both settings against the same hidden values.
pub fn post_select_joint(model: &CausalModel) -> Result<JointDistribution> {
    let [a, x, y, z, b, c2, c3] = require_setting_line(model)?;
    let sizes = model.sizes();
    if sizes[a] != 2 || sizes[b] != 2 {
        return invalid("settings A and B must be binary");
    }
    let g = model.structure();
    // parents of X are {A, C2} and of Z are {C3, B}, ordered by node index
    let x_prob = |setting: usize, c: usize, val: usize| {
        let pv: Vec<usize> = g.parents(x).iter().map(|&p| if p == a { setting } else { c }).collect();
        model.cond_prob(x, &pv, val)
    };
    let z_prob = |setting: usize, c: usize, val: usize| {
        let pv: Vec<usize> = g.parents(z).iter().map(|&p| if p == b { setting } else { c }).collect();
        model.cond_prob(z, &pv, val)
    };
    let y_prob = |v2: usize, v3: usize, val: usize| {
        let pv: Vec<usize> = g.parents(y).iter().map(|&p| if p == c2 { v2 } else { v3 }).collect();
        model.cond_prob(y, &pv, val)
    };
    let (dx, dy, dz) = (sizes[x], sizes[y], sizes[z]);
    let names: Vec<String> = ["X0", "X1", "Y", "Z0", "Z1"].iter().map(|s| s.to_string()).collect();
    let out_sizes = vec![dx, dx, dy, dz, dz];
    let mut probs = vec![0.0; dx * dx * dy * dz * dz];
    for v2 in 0..sizes[c2] {
        let p2 = model.cond_prob(c2, &[], v2);
        if p2 == 0.0 {
            continue;
        }
        for v3 in 0..sizes[c3] {
            let p3 = model.cond_prob(c3, &[], v3);
            if p3 == 0.0 {
                continue;
            }
            for x0 in 0..dx {
                let px0 = x_prob(0, v2, x0);
                for x1 in 0..dx {
                    let px1 = x_prob(1, v2, x1);
                    for yv in 0..dy {
                        let py = y_prob(v2, v3, yv);
                        for z0 in 0..dz {
                            let pz0 = z_prob(0, v3, z0);
                            for z1 in 0..dz {
                                let pz1 = z_prob(1, v3, z1);
                                let flat = (((x0 * dx + x1) * dy + yv) * dz + z0) * dz + z1;
                                probs[flat] += p2 * p3 * px0 * px1 * py * pz0 * pz1;
                            }
                        }
                    }
                }
            }
        }
    }
    JointDistribution::new(names, out_sizes, probs)
}

/// `P(X, Y, Z | A = a, B = b)` on the setting line.
pub fn setting_conditional(model: &CausalModel, a_val: usize, b_val: usize) -> Result<JointDistribution> {
    let [a, x, y, z, b, _, _] = require_setting_line(model)?;
    let joint = model.compile();
    conditional_on(&joint, &[(a, a_val), (b, b_val)], &[x, y, z])
}

/// Conditional distribution of `targets` given fixed values of other
/// variables. Zero-probability conditions are an error.
pub fn conditional_on(
    joint: &JointDistribution,
    fixed: &[(usize, usize)],
    targets: &[usize],
) -> Result<JointDistribution> {
    let sizes: Vec<usize> = targets.iter().map(|&t| joint.sizes[t]).collect();
    let mut probs = vec![0.0; sizes.iter().product()];
    let mut mass = 0.0;
    for (flat, &p) in joint.probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let o = joint.outcome(flat);
        if fixed.iter().any(|&(v, val)| o[v] != val) {
            continue;
        }
        mass += p;
        let idx = targets.iter().zip(&sizes).fold(0, |acc, (&t, &s)| acc * s + o[t]);
        probs[idx] += p;
    }
    if mass <= 0.0 {
        let cond: Vec<String> = fixed
            .iter()
            .map(|&(v, val)| format!("{}={val}", joint.names[v]))
            .collect();
        return invalid(format!("conditioning event {} has probability zero", cond.join(",")));
    }
    for p in probs.iter_mut() {
        *p /= mass;
    }
    Ok(JointDistribution {
        names: targets.iter().map(|&t| joint.names[t].clone()).collect(),
        sizes,
        probs,
    })
}

/// How an outer variable is split into its two setting copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitMode {
    /// first copy is the variable, second the constant 1
    Keep0,
    /// first copy is the constant 1, second the variable
    Keep1,
    /// both copies equal the variable
    Copy,
}

impl SplitMode {
    pub const ALL: [SplitMode; 3] = [SplitMode::Keep0, SplitMode::Keep1, SplitMode::Copy];

    fn split(self, v: usize) -> (usize, usize) {
        match self {
            SplitMode::Keep0 => (v, 1),
            SplitMode::Keep1 => (1, v),
            SplitMode::Copy => (v, v),
        }
    }
}

impl std::str::FromStr for SplitMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "keep0" => Ok(SplitMode::Keep0),
            "keep1" => Ok(SplitMode::Keep1),
            "copy" => Ok(SplitMode::Copy),
            other => invalid(format!("unknown split mode `{other}`")),
        }
    }
}

/// Splits the outer variables of a `P_3` model into setting copies, giving
/// a joint over `(X0, X1, Y, Z0, Z1)`. Outer alphabets must be binary.
pub fn split_p3_witness(model: &CausalModel, x_mode: SplitMode, z_mode: SplitMode) -> Result<JointDistribution> {
    let g = model.structure();
    let obs = g.observed();
    if obs.len() != 3 {
        return invalid("splitting needs a model on a line of three observed nodes");
    }
    let p = model.observed_joint();
    let (dx, dy, dz) = (p.sizes[0], p.sizes[1], p.sizes[2]);
    if dx != 2 || dz != 2 {
        return invalid("outer variables must be binary to split");
    }
    let names: Vec<String> = ["X0", "X1", "Y", "Z0", "Z1"].iter().map(|s| s.to_string()).collect();
    let mut probs = vec![0.0; 2 * 2 * dy * 2 * 2];
    for (flat, &q) in p.probs.iter().enumerate() {
        let o = p.outcome(flat);
        let (x0, x1) = x_mode.split(o[0]);
        let (z0, z1) = z_mode.split(o[2]);
        let idx = (((x0 * 2 + x1) * dy + o[1]) * 2 + z0) * 2 + z1;
        probs[idx] += q;
    }
    JointDistribution::new(names, vec![2, 2, dy, 2, 2], probs)
}

/// Four conditional tables `P(X, Y | A = a, B = b)`, keyed `ab`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BcTables {
    pub x_size: usize,
    pub y_size: usize,
    /// row-major `[x * y_size + y]`, keyed "00", "01", "10", "11"
    pub tables: BTreeMap<String, Vec<f64>>,
}

impl BcTables {
    pub fn from_array(x_size: usize, y_size: usize, tables: [Vec<f64>; 4]) -> Self {
        let keys = ["00", "01", "10", "11"];
        BcTables {
            x_size,
            y_size,
            tables: keys.iter().map(|k| k.to_string()).zip(tables).collect(),
        }
    }

    fn table(&self, a: usize, b: usize) -> Result<JointDistribution> {
        let key = format!("{a}{b}");
        let t = self
            .tables
            .get(&key)
            .ok_or_else(|| Error::Format {
                field: format!("tables.{key}"),
                message: "missing table".into(),
            })?;
        if t.len() != self.x_size * self.y_size {
            return invalid(format!(
                "table {key} has {} entries but alphabets are {}x{}",
                t.len(),
                self.x_size,
                self.y_size
            ));
        }
        JointDistribution::new(
            vec!["X".into(), "Y".into()],
            vec![self.x_size, self.y_size],
            t.clone(),
        )
        .map_err(|e| Error::InvalidParameter(format!("table {key}: {e}")))
    }

    /// Tables `P(X, Y | A, B)` of a compiled model on the Bell structure.
    pub fn from_bell_model(model: &CausalModel) -> Result<Self> {
        let g = model.structure();
        let find = |id: &str| {
            g.index_of(id)
                .ok_or_else(|| Error::InvalidParameter(format!("model lacks node `{id}`")))
        };
        let (a, x, y, b) = (find("A")?, find("X")?, find("Y")?, find("B")?);
        if model.sizes()[a] != 2 || model.sizes()[b] != 2 {
            return invalid("settings A and B must be binary");
        }
        let joint = model.compile();
        let mut tables = BTreeMap::new();
        for av in 0..2 {
            for bv in 0..2 {
                let c = conditional_on(&joint, &[(a, av), (b, bv)], &[x, y])?;
                tables.insert(format!("{av}{bv}"), c.probs);
            }
        }
        Ok(BcTables {
            x_size: model.sizes()[x],
            y_size: model.sizes()[y],
            tables,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format {
            field: format!("tables file (line {} column {})", e.line(), e.column()),
            message: e.to_string(),
        })
    }
}

fn cond_entropy_x_given_y(t: &JointDistribution) -> f64 {
    t.entropy() - t.subset_entropy(0b10)
}

fn cond_entropy_y_given_x(t: &JointDistribution) -> f64 {
    t.entropy() - t.subset_entropy(0b01)
}

/// `H(Y|X)_11 + H(X|Y)_10 + H(X|Y)_01 - H(X|Y)_00`, in bits.
pub fn bc_functional(tables: &BcTables) -> Result<f64> {
    bc_functional_variant(tables, false, false, false)
}

/// Relabelled forms of the same inequality: `flip_a`/`flip_b` exchange the
/// two settings of a party, `swap` exchanges the roles of `X` and `Y`.
pub fn bc_functional_variant(tables: &BcTables, flip_a: bool, flip_b: bool, swap: bool) -> Result<f64> {
    let get = |a: usize, b: usize| tables.table(a ^ flip_a as usize, b ^ flip_b as usize);
    let (t00, t01, t10, t11) = (get(0, 0)?, get(0, 1)?, get(1, 0)?, get(1, 1)?);
    let (fwd, back): (fn(&JointDistribution) -> f64, fn(&JointDistribution) -> f64) = if swap {
        (cond_entropy_y_given_x, cond_entropy_x_given_y)
    } else {
        (cond_entropy_x_given_y, cond_entropy_y_given_x)
    };
    Ok(back(&t11) + fwd(&t10) + fwd(&t01) - fwd(&t00))
}

/// On-disk model: a structure (selector string or inline), alphabet sizes
/// and CPT rows per node.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub structure: StructureRef,
    pub alphabets: BTreeMap<String, usize>,
    pub cpts: BTreeMap<String, Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructureRef {
    Named(String),
    Inline(StructureFile),
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format {
            field: format!("model file (line {} column {})", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn build(&self) -> Result<CausalModel> {
        let g = match &self.structure {
            StructureRef::Named(s) => resolve_structure(s)?,
            StructureRef::Inline(f) => CausalStructure::from_file(f.clone())?,
        };
        let mut sizes = Vec::with_capacity(g.len());
        let mut cpts = Vec::with_capacity(g.len());
        for node in g.nodes() {
            let size = *self.alphabets.get(&node.id).ok_or_else(|| Error::Format {
                field: format!("alphabets.{}", node.id),
                message: "missing alphabet size".into(),
            })?;
            let rows = self.cpts.get(&node.id).ok_or_else(|| Error::Format {
                field: format!("cpts.{}", node.id),
                message: "missing table".into(),
            })?;
            sizes.push(size);
            cpts.push(Cpt { rows: rows.clone() });
        }
        CausalModel::new(g, sizes, cpts)
    }

    pub fn from_model(model: &CausalModel, structure: StructureRef) -> Self {
        let g = model.structure();
        ModelFile {
            structure,
            alphabets: g
                .nodes()
                .iter()
                .zip(model.sizes())
                .map(|(n, &s)| (n.id.clone(), s))
                .collect(),
            cpts: g
                .nodes()
                .iter()
                .enumerate()
                .map(|(v, n)| (n.id.clone(), model.cpt(v).rows.clone()))
                .collect(),
        }
    }
}

pub fn load_model(path: &Path) -> Result<CausalModel> {
    ModelFile::parse(&std::fs::read_to_string(path)?)?.build()
}

#[cfg(test)]
mod tests;
