//! Entropy coordinates, linear forms over them, and the standard
//! constraint systems (elemental Shannon, classical CI, reduced line).

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::arith::{Int, IntVec};
use crate::causal_model::{bits, CausalStructure};
use crate::error::{invalid, Result};
use crate::polyhedra::HRep;

/// A set of variables, as a bitmask over positions in a ground set.
pub type Subset = u64;

pub(crate) fn positions(s: Subset) -> Vec<usize> {
    bits(s).collect()
}

fn full_mask(n: usize) -> Subset {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Cardinality first, then lexicographic by member position.
fn subset_order(a: &Subset, b: &Subset) -> std::cmp::Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| positions(*a).cmp(&positions(*b)))
}

/// The coordinates of an entropy vector: a ground set of variables and an
/// ordered list of nonempty subsets of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateIndex {
    ground: Vec<String>,
    subsets: Vec<Subset>,
    lookup: HashMap<Subset, usize>,
}

impl CoordinateIndex {
    /// All `2^n - 1` nonempty subsets.
    pub fn full(ground: Vec<String>) -> Self {
        Self::restricted(ground, |_| true).expect("ground set of 1..=20 variables")
    }

    /// Nonempty subsets accepted by `keep`, in canonical order.
    pub fn restricted(ground: Vec<String>, keep: impl Fn(Subset) -> bool) -> Result<Self> {
        let n = ground.len();
        if n == 0 {
            return invalid("empty variable list");
        }
        if n > 20 {
            return invalid(format!("{n} variables is beyond the supported range"));
        }
        let mut subsets: Vec<Subset> = (1..=full_mask(n)).filter(|&s| keep(s)).collect();
        subsets.sort_by(subset_order);
        let lookup = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok(CoordinateIndex {
            ground,
            subsets,
            lookup,
        })
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn position(&self, s: Subset) -> Option<usize> {
        self.lookup.get(&s).copied()
    }

    pub fn mask(&self, names: &[&str]) -> Result<Subset> {
        let mut m = 0;
        for name in names {
            match self.ground.iter().position(|g| g == name) {
                Some(i) => m |= 1 << i,
                None => return invalid(format!("unknown variable `{name}`")),
            }
        }
        Ok(m)
    }

    pub fn set_name(&self, s: Subset) -> String {
        bits(s).map(|i| self.ground[i].as_str()).collect()
    }

    pub fn label(&self, s: Subset) -> String {
        format!("H({})", self.set_name(s))
    }

    pub fn labels(&self) -> Vec<String> {
        self.subsets.iter().map(|&s| self.label(s)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = ">=0")]
    NonNegative,
    #[serde(rename = "=0")]
    Zero,
}

/// Integer combination of subset entropies with a relation to zero.
/// `H(empty)` terms vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    terms: Vec<(Subset, Int)>,
    pub relation: Relation,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm {
            terms: Vec::new(),
            relation: Relation::NonNegative,
        }
    }

    pub fn entropy(s: Subset) -> Self {
        let mut f = Self::zero();
        f.add_term(s, Int::ONE);
        f
    }

    /// `H(s | given) = H(s ∪ given) - H(given)`.
    pub fn conditional_entropy(s: Subset, given: Subset) -> Self {
        let mut f = Self::zero();
        f.add_term(s | given, Int::ONE);
        f.add_term(given, -Int::ONE);
        f
    }

    /// `I(x : y | z) = H(xz) + H(yz) - H(xyz) - H(z)`.
    pub fn mutual_information(x: Subset, y: Subset, z: Subset) -> Self {
        let mut f = Self::zero();
        f.add_term(x | z, Int::ONE);
        f.add_term(y | z, Int::ONE);
        f.add_term(x | y | z, -Int::ONE);
        f.add_term(z, -Int::ONE);
        f
    }

    pub fn add_term(&mut self, s: Subset, c: Int) {
        if s == 0 || c.is_zero() {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|(t, _)| *t == s) {
            let sum = &self.terms[pos].1 + &c;
            if sum.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].1 = sum;
            }
        } else {
            self.terms.push((s, c));
        }
    }

    pub fn plus(mut self, other: &LinearForm) -> Self {
        for (s, c) in &other.terms {
            self.add_term(*s, c.clone());
        }
        self
    }

    pub fn minus(mut self, other: &LinearForm) -> Self {
        for (s, c) in &other.terms {
            self.add_term(*s, -c);
        }
        self
    }

    pub fn equality(mut self) -> Self {
        self.relation = Relation::Zero;
        self
    }

    pub fn terms(&self) -> &[(Subset, Int)] {
        &self.terms
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Subset {
        self.terms.iter().fold(0, |m, (s, _)| m | s)
    }

    pub fn to_row(&self, index: &CoordinateIndex) -> Result<IntVec> {
        let mut row = vec![Int::ZERO; index.len()];
        for (s, c) in &self.terms {
            match index.position(*s) {
                Some(i) => row[i] = &row[i] + c,
                None => {
                    return invalid(format!(
                        "form refers to {} which is not a coordinate",
                        index.label(*s)
                    ))
                }
            }
        }
        Ok(row)
    }

    pub fn from_row(row: &[Int], index: &CoordinateIndex, relation: Relation) -> Self {
        let mut f = LinearForm::zero();
        // positive terms first, each group in coordinate order
        for positive in [true, false] {
            for (i, c) in row.iter().enumerate() {
                if c.is_positive() == positive {
                    f.add_term(index.subsets()[i], c.clone());
                }
            }
        }
        f.relation = relation;
        f
    }

    pub fn evaluate(&self, v: &EntropyVector) -> Result<f64> {
        let mut total = 0.0;
        for (s, c) in &self.terms {
            let Some(i) = v.index.position(*s) else {
                return invalid(format!("{} missing from entropy vector", v.index.label(*s)));
            };
            total += c.to_f64() * v.values[i];
        }
        Ok(total)
    }

    /// Renders as e.g. `H(AX)+H(AY)-H(AXY)-H(A) >= 0`.
    pub fn render(&self, index: &CoordinateIndex) -> String {
        let mut s = String::new();
        for (k, (set, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            if mag != Int::ONE {
                s.push_str(&mag.to_string());
            }
            s.push_str(&index.label(*set));
        }
        if s.is_empty() {
            s.push('0');
        }
        match self.relation {
            Relation::NonNegative => s.push_str(" >= 0"),
            Relation::Zero => s.push_str(" = 0"),
        }
        s
    }
}

/// Real-valued entropy vector in the order of its coordinate index.
#[derive(Clone, Debug)]
pub struct EntropyVector {
    pub index: CoordinateIndex,
    pub values: Vec<f64>,
}

impl EntropyVector {
    pub fn get(&self, s: Subset) -> Option<f64> {
        self.index.position(s).map(|i| self.values[i])
    }

    /// Integer vector if every component is within `tol` of an integer.
    pub fn snap(&self, tol: f64) -> Option<IntVec> {
        self.values
            .iter()
            .map(|&x| {
                let r = x.round();
                ((x - r).abs() <= tol).then(|| Int::from(r as i64))
            })
            .collect()
    }
}

/// Index plus equality and inequality forms over it.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub index: CoordinateIndex,
    pub equalities: Vec<LinearForm>,
    pub inequalities: Vec<LinearForm>,
}

#[derive(Serialize)]
struct FormJson {
    text: String,
    row: IntVec,
}

#[derive(Serialize)]
struct SystemJson {
    coordinates: Vec<String>,
    equalities: Vec<FormJson>,
    inequalities: Vec<FormJson>,
}

impl ConstraintSystem {
    pub fn new(index: CoordinateIndex) -> Self {
        ConstraintSystem {
            index,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn push(&mut self, form: LinearForm) {
        match form.relation {
            Relation::Zero => self.equalities.push(form),
            Relation::NonNegative => self.inequalities.push(form),
        }
    }

    pub fn to_hrep(&self) -> Result<HRep> {
        let rows = |forms: &[LinearForm]| -> Result<Vec<IntVec>> {
            forms.iter().map(|f| f.to_row(&self.index)).collect()
        };
        HRep::new(self.index.len(), rows(&self.equalities)?, rows(&self.inequalities)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in self.equalities.iter().chain(&self.inequalities) {
            out.push_str(&f.render(&self.index));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let conv = |forms: &[LinearForm]| -> Result<Vec<FormJson>> {
            forms
                .iter()
                .map(|f| {
                    Ok(FormJson {
                        text: f.render(&self.index),
                        row: f.to_row(&self.index)?,
                    })
                })
                .collect()
        };
        let js = SystemJson {
            coordinates: self.index.labels(),
            equalities: conv(&self.equalities)?,
            inequalities: conv(&self.inequalities)?,
        };
        Ok(serde_json::to_string_pretty(&js)?)
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Number of elemental inequalities on `n` variables: `n + n(n-1)2^(n-3)`.
pub fn elemental_count(n: usize) -> usize {
    match n {
        0 => 0,
        1 => 1,
        _ => n + n * (n - 1) * (1usize << (n - 2)) / 2,
    }
}

/// The minimal generating set of Shannon inequalities: one monotonicity
/// `H(all | all - i) >= 0` per variable and `I(i : j | S) >= 0` for every
/// `i < j` and `S` not containing either.
pub fn elemental_shannon_system(vars: &[String]) -> Result<ConstraintSystem> {
    if vars.is_empty() {
        return invalid("empty variable list");
    }
    let index = CoordinateIndex::full(vars.to_vec());
    let mut sys = ConstraintSystem::new(index);
    let n = vars.len();
    let all = full_mask(n);
    if n == 1 {
        sys.push(LinearForm::entropy(1));
        return Ok(sys);
    }
    for i in 0..n {
        sys.push(LinearForm::conditional_entropy(1 << i, all & !(1 << i)));
    }
    for i in 0..n {
        for j in i + 1..n {
            let rest = all & !(1 << i) & !(1 << j);
            let mut conds: Vec<Subset> = subsets_of(rest).collect();
            conds.sort_by(subset_order);
            for s in conds {
                sys.push(LinearForm::mutual_information(1 << i, 1 << j, s));
            }
        }
    }
    Ok(sys)
}

/// All subsets of `mask`, including the empty set.
pub fn subsets_of(mask: Subset) -> impl Iterator<Item = Subset> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

/// `(v, nondescendants(v) - parents(v), parents(v))` for every node whose
/// set of such non-descendants is nonempty, as node masks.
pub fn classical_ci_triples(g: &CausalStructure) -> Vec<(Subset, Subset, Subset)> {
    let all = full_mask(g.len());
    let mut out = Vec::new();
    for v in 0..g.len() {
        let pa = g.parents(v).iter().fold(0u64, |m, &p| m | (1 << p));
        let nondesc = all & !g.descendants(1 << v) & !pa;
        if nondesc != 0 {
            out.push((1 << v, nondesc, pa));
        }
    }
    out
}

/// `I(v : nondescendants(v) - parents(v) | parents(v)) = 0` for every node
/// whose set of such non-descendants is nonempty. Coordinates range over
/// all nodes in node order.
pub fn classical_ci_system(g: &CausalStructure) -> Vec<LinearForm> {
    classical_ci_triples(g)
        .into_iter()
        .map(|(v, t, pa)| LinearForm::mutual_information(v, t, pa).equality())
        .collect()
}

/// Index over all nodes of `g` (observed and unobserved), in node order.
pub fn all_nodes_index(g: &CausalStructure) -> CoordinateIndex {
    CoordinateIndex::full(g.node_names())
}

pub fn line_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

/// Mask of the nodes strictly between positions `i < j` on a line.
pub fn between(i: usize, j: usize) -> Subset {
    (i + 1..j).fold(0, |m, k| m | (1 << k))
}

/// The `n(n+1)/2` inequalities that remain on `P_n` once the causal
/// constraints are accounted for: `n` monotonicities and
/// `I(Xi : Xj | X(i+1) .. X(j-1)) >= 0` for `i < j`.
pub fn reduced_line_system(n: usize) -> Result<ConstraintSystem> {
    if n == 0 {
        return invalid("reduced line system needs n >= 1");
    }
    let index = CoordinateIndex::full(line_names(n));
    let mut sys = ConstraintSystem::new(index);
    let all = full_mask(n);
    if n == 1 {
        sys.push(LinearForm::entropy(1));
        return Ok(sys);
    }
    for i in 0..n {
        sys.push(LinearForm::conditional_entropy(1 << i, all & !(1 << i)));
    }
    for i in 0..n {
        for j in i + 1..n {
            sys.push(LinearForm::mutual_information(1 << i, 1 << j, between(i, j)));
        }
    }
    Ok(sys)
}

/// Elemental closure of a conditional independence: if `I(S : T | U) = 0`
/// holds on a Shannon cone, so does every `I(s : t | U S' T')` with
/// `s ∈ S`, `t ∈ T`, `S' ⊆ S - s`, `T' ⊆ T - t`.
pub fn elemental_closure(s: Subset, t: Subset, u: Subset) -> Vec<LinearForm> {
    let mut out = Vec::new();
    for a in bits(s) {
        for b in bits(t) {
            for s2 in subsets_of(s & !(1 << a)) {
                for t2 in subsets_of(t & !(1 << b)) {
                    out.push(LinearForm::mutual_information(1 << a, 1 << b, u | s2 | t2).equality());
                }
            }
        }
    }
    out
}

/// Substitution `H(S) = Σ H(K)` over the blocks `K` of `S`, where blocks
/// are the connected components of a "shares an ancestor" relation.
///
/// On a line the blocks of a set are its maximal contiguous runs, giving
/// the `n(n+1)/2` contiguous-sequence coordinates.
#[derive(Clone, Debug)]
pub struct BlockReduction {
    pub full: CoordinateIndex,
    pub reduced: CoordinateIndex,
    /// For each full coordinate, the reduced coordinates summing to it.
    pub decomposition: Vec<Vec<usize>>,
}

impl BlockReduction {
    /// Blocks of observed variables that share an ancestor in `g`.
    pub fn from_structure(g: &CausalStructure) -> Self {
        let anc: Vec<Subset> = g.observed().iter().map(|&v| g.ancestors(1 << v)).collect();
        let linked = move |i: usize, j: usize| anc[i] & anc[j] != 0;
        Self::from_relation(g.observed_names(), linked)
            .expect("structure has 1..=20 observed nodes")
    }

    /// Contiguous runs on a line of `n` variables.
    pub fn contiguous(n: usize) -> Result<Self> {
        Self::from_relation(line_names(n), |i, j| i.abs_diff(j) == 1)
    }

    fn from_relation(ground: Vec<String>, linked: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let components = |s: Subset| -> Vec<Subset> {
            let mut left = s;
            let mut comps = Vec::new();
            while left != 0 {
                let start = left.trailing_zeros() as usize;
                let mut comp: Subset = 1 << start;
                let mut frontier = vec![start];
                while let Some(v) = frontier.pop() {
                    for w in bits(left & !comp) {
                        if linked(v, w) {
                            comp |= 1 << w;
                            frontier.push(w);
                        }
                    }
                }
                left &= !comp;
                comps.push(comp);
            }
            comps
        };
        let full = CoordinateIndex::full(ground.clone());
        let reduced = CoordinateIndex::restricted(ground, |s| components(s).len() == 1)?;
        let decomposition = full
            .subsets()
            .iter()
            .map(|&s| {
                components(s)
                    .into_iter()
                    .map(|c| reduced.position(c).expect("component is a block"))
                    .collect()
            })
            .collect();
        Ok(BlockReduction {
            full,
            reduced,
            decomposition,
        })
    }

    /// A row over the full coordinates, rewritten over the blocks.
    pub fn reduce_row(&self, row: &[Int]) -> IntVec {
        let mut out = vec![Int::ZERO; self.reduced.len()];
        for (i, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &k in &self.decomposition[i] {
                out[k] = &out[k] + c;
            }
        }
        out
    }

    /// A block-coordinate vector, expanded to all coordinates.
    pub fn expand(&self, v: &[Int]) -> IntVec {
        self.decomposition
            .iter()
            .map(|parts| parts.iter().fold(Int::ZERO, |acc, &k| &acc + &v[k]))
            .collect()
    }

    /// Substitutes every form of `sys` (which must use the full index).
    pub fn reduce_system(&self, sys: &ConstraintSystem) -> Result<HRep> {
        let reduce = |forms: &[LinearForm]| -> Result<Vec<IntVec>> {
            forms
                .iter()
                .map(|f| Ok(self.reduce_row(&f.to_row(&self.full)?)))
                .collect()
        };
        HRep::new(
            self.reduced.len(),
            reduce(&sys.equalities)?,
            reduce(&sys.inequalities)?,
        )
    }
}

#[cfg(test)]
mod tests;
