//! Causal structures: DAGs over observed and unobserved nodes.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::entropy_space::{CoordinateIndex, LinearForm, Subset};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Observed,
    Unobserved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

impl Node {
    pub fn observed(id: impl Into<String>) -> Self {
        Node {
            id: id.into(),
            kind: NodeKind::Observed,
        }
    }

    pub fn unobserved(id: impl Into<String>) -> Self {
        Node {
            id: id.into(),
            kind: NodeKind::Unobserved,
        }
    }
}

/// JSON shape of a structure file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub nodes: Vec<Node>,
    pub edges: Vec<(String, String)>,
}

/// An acyclic causal structure. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CausalStructure {
    name: String,
    nodes: Vec<Node>,
    edges: Vec<(usize, usize)>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

impl CausalStructure {
    pub fn new(name: impl Into<String>, nodes: Vec<Node>, edges: &[(&str, &str)]) -> Result<Self> {
        let owned: Vec<(String, String)> = edges
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Self::from_owned(name.into(), nodes, &owned)
    }

    fn from_owned(name: String, nodes: Vec<Node>, edges: &[(String, String)]) -> Result<Self> {
        if nodes.len() > 64 {
            return Err(Error::InvalidStructure(format!(
                "{} nodes; at most 64 are supported",
                nodes.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for n in &nodes {
            if n.id.is_empty() {
                return Err(Error::InvalidStructure("empty node id".into()));
            }
            if !seen.insert(n.id.clone()) {
                return Err(Error::InvalidStructure(format!("duplicate node id `{}`", n.id)));
            }
        }
        let find = |id: &str| -> Result<usize> {
            nodes
                .iter()
                .position(|n| n.id == id)
                .ok_or_else(|| Error::InvalidStructure(format!("edge endpoint `{id}` is not a node")))
        };
        let mut idx_edges = Vec::with_capacity(edges.len());
        let mut parents = vec![Vec::new(); nodes.len()];
        let mut children = vec![Vec::new(); nodes.len()];
        for (a, b) in edges {
            let (pa, ch) = (find(a)?, find(b)?);
            if pa == ch {
                return Err(Error::InvalidStructure(format!("self-loop on `{a}`")));
            }
            if idx_edges.contains(&(pa, ch)) {
                continue;
            }
            idx_edges.push((pa, ch));
            parents[ch].push(pa);
            children[pa].push(ch);
        }
        for p in parents.iter_mut().chain(children.iter_mut()) {
            p.sort_unstable();
        }
        let g = CausalStructure {
            name,
            nodes,
            edges: idx_edges,
            parents,
            children,
        };
        if g.topological_order().is_none() {
            return Err(Error::InvalidStructure("edge relation has a cycle".into()));
        }
        Ok(g)
    }

    pub fn from_file(file: StructureFile) -> Result<Self> {
        Self::from_owned(
            file.name.unwrap_or_else(|| "custom".into()),
            file.nodes,
            &file.edges,
        )
    }

    pub fn to_file(&self) -> StructureFile {
        StructureFile {
            name: Some(self.name.clone()),
            nodes: self.nodes.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (self.nodes[a].id.clone(), self.nodes[b].id.clone()))
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(a, b)| (self.nodes[a].id.as_str(), self.nodes[b].id.as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Indices of observed nodes, in node order.
    pub fn observed(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.nodes[i].kind == NodeKind::Observed)
            .collect()
    }

    pub fn unobserved(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.nodes[i].kind == NodeKind::Unobserved)
            .collect()
    }

    pub fn observed_names(&self) -> Vec<String> {
        self.observed().iter().map(|&i| self.nodes[i].id.clone()).collect()
    }

    pub fn node_names(&self) -> Vec<String> {
        self.nodes.iter().map(|n| n.id.clone()).collect()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..self.len()).filter(|&i| indeg[i] == 0).rev().collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(v) = ready.pop() {
            order.push(v);
            for &c in self.children[v].iter().rev() {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.push(c);
                }
            }
        }
        (order.len() == self.len()).then_some(order)
    }

    /// Bitmask of the ancestors of `set`, including `set` itself.
    pub fn ancestors(&self, set: Subset) -> Subset {
        let mut mask = set;
        let mut stack: Vec<usize> = bits(set).collect();
        while let Some(v) = stack.pop() {
            for &p in &self.parents[v] {
                if mask & (1 << p) == 0 {
                    mask |= 1 << p;
                    stack.push(p);
                }
            }
        }
        mask
    }

    /// Bitmask of the descendants of `set`, including `set` itself.
    pub fn descendants(&self, set: Subset) -> Subset {
        let mut mask = set;
        let mut stack: Vec<usize> = bits(set).collect();
        while let Some(v) = stack.pop() {
            for &c in &self.children[v] {
                if mask & (1 << c) == 0 {
                    mask |= 1 << c;
                    stack.push(c);
                }
            }
        }
        mask
    }

    fn mask_of(&self, ids: &[&str]) -> Result<Subset> {
        let mut m: Subset = 0;
        for id in ids {
            let i = self
                .index_of(id)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown node `{id}`")))?;
            m |= 1 << i;
        }
        Ok(m)
    }

    /// d-separation of `x` and `y` given `z`, by node id.
    pub fn d_separated(&self, x: &[&str], y: &[&str], z: &[&str]) -> Result<bool> {
        let (xm, ym, zm) = (self.mask_of(x)?, self.mask_of(y)?, self.mask_of(z)?);
        self.d_separated_mask(xm, ym, zm)
    }

    /// d-separation on node bitmasks.
    ///
    /// Reachability ("Bayes ball"): a trail may pass a non-collider only if it
    /// is outside `z`, and a collider only if it or one of its descendants is
    /// in `z`.
    pub fn d_separated_mask(&self, x: Subset, y: Subset, z: Subset) -> Result<bool> {
        let full = if self.len() == 64 { !0 } else { (1u64 << self.len()) - 1 };
        if (x | y | z) & !full != 0 {
            return invalid("node set refers to a node outside the structure");
        }
        if x & y != 0 || x & z != 0 || y & z != 0 {
            return invalid("node sets must be pairwise disjoint");
        }
        let opens_collider = self.ancestors(z);
        // visited[v][0]: arrived from a child (moving up); [1]: from a parent (moving down)
        let mut visited = vec![[false; 2]; self.len()];
        let mut stack: Vec<(usize, usize)> = bits(x).map(|v| (v, 0)).collect();
        while let Some((v, dir)) = stack.pop() {
            if visited[v][dir] {
                continue;
            }
            visited[v][dir] = true;
            let in_z = z & (1 << v) != 0;
            if !in_z && y & (1 << v) != 0 {
                return Ok(false);
            }
            if dir == 0 {
                if !in_z {
                    stack.extend(self.parents[v].iter().map(|&p| (p, 0)));
                    stack.extend(self.children[v].iter().map(|&c| (c, 1)));
                }
            } else {
                if !in_z {
                    stack.extend(self.children[v].iter().map(|&c| (c, 1)));
                }
                if opens_collider & (1 << v) != 0 {
                    stack.extend(self.parents[v].iter().map(|&p| (p, 0)));
                }
            }
        }
        Ok(true)
    }

    /// Observed-subset pairs with disjoint ancestries, maximal under
    /// inclusion. Each pair `(s, t)` has the lowest observed node in `s`.
    pub fn ancestor_disjoint_pairs(&self) -> Vec<(Subset, Subset)> {
        let obs = self.observed();
        let n = obs.len();
        let anc: Vec<Subset> = obs.iter().map(|&v| self.ancestors(1 << v)).collect();
        // enumerate (s, t) over observed positions via a base-3 labelling
        let mut pairs: Vec<(u64, u64)> = Vec::new();
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let (mut s, mut t, mut c) = (0u64, 0u64, code);
            for i in 0..n {
                match c % 3 {
                    1 => s |= 1 << i,
                    2 => t |= 1 << i,
                    _ => {}
                }
                c /= 3;
            }
            if s == 0 || t == 0 || s.trailing_zeros() > t.trailing_zeros() {
                continue;
            }
            let an_s = bits(s).fold(0, |m, i| m | anc[i]);
            let an_t = bits(t).fold(0, |m, i| m | anc[i]);
            if an_s & an_t == 0 {
                pairs.push((s, t));
            }
        }
        let maximal: Vec<(u64, u64)> = pairs
            .iter()
            .copied()
            .filter(|&(s, t)| {
                !pairs.iter().any(|&(s2, t2)| {
                    (s2, t2) != (s, t) && s & s2 == s && t & t2 == t
                })
            })
            .collect();
        // back to node-index masks
        let lift = |m: u64| -> Subset { bits(m).fold(0, |acc, i| acc | (1 << obs[i])) };
        let mut out: Vec<(Subset, Subset)> = maximal.into_iter().map(|(s, t)| (lift(s), lift(t))).collect();
        out.sort_by_key(|&(s, t)| (s.count_ones(), crate::entropy_space::positions(s), t.count_ones(), crate::entropy_space::positions(t)));
        out
    }

    /// Position of each node inside the observed list, for node masks.
    pub(crate) fn observed_mask_to_coordinates(&self, mask: Subset) -> Subset {
        let obs = self.observed();
        obs.iter()
            .enumerate()
            .filter(|(_, &v)| mask & (1 << v) != 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }
}

/// Iterate the set bits of a mask.
pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask & (1u64 << i) != 0)
}

/// The line `P_n`: observed `X1..Xn`, unobserved `C1..C(n-1)`, `Ci -> Xi, X(i+1)`.
pub fn build_line_structure(n: usize) -> Result<CausalStructure> {
    if n == 0 {
        return invalid("line structure needs n >= 1");
    }
    let mut nodes: Vec<Node> = (1..=n).map(|i| Node::observed(format!("X{i}"))).collect();
    nodes.extend((1..n).map(|i| Node::unobserved(format!("C{i}"))));
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((format!("C{i}"), format!("X{i}")));
        edges.push((format!("C{i}"), format!("X{}", i + 1)));
    }
    CausalStructure::from_owned(format!("pn:{n}"), nodes, &edges)
}

/// Bipartite Bell structure with settings as roots: `A -> X <- C -> Y <- B`.
pub fn build_bell_structure() -> CausalStructure {
    CausalStructure::new(
        "bell",
        vec![
            Node::observed("A"),
            Node::observed("X"),
            Node::observed("Y"),
            Node::observed("B"),
            Node::unobserved("C"),
        ],
        &[("A", "X"), ("C", "X"), ("C", "Y"), ("B", "Y")],
    )
    .expect("bell structure is a DAG")
}

/// Line of `k` observed nodes whose two outer nodes are each doubled into a
/// pair of outcome variables sharing the same hidden parent.
///
/// `k = 3` gives observed `X0 X1 Y Z0 Z1` with hidden `C` (on `X0 X1 Y`) and
/// `D` (on `Y Z0 Z1`); `k = 4` gives `X0 X1 Y Z W0 W1` with hidden `C1 C2 C3`.
pub fn build_post_selected_line(k: usize) -> Result<CausalStructure> {
    match k {
        0..=2 => invalid(format!("post-selected line needs k >= 3, got {k}")),
        3 => CausalStructure::new(
            "ptilde:3",
            vec![
                Node::observed("X0"),
                Node::observed("X1"),
                Node::observed("Y"),
                Node::observed("Z0"),
                Node::observed("Z1"),
                Node::unobserved("C"),
                Node::unobserved("D"),
            ],
            &[
                ("C", "X0"),
                ("C", "X1"),
                ("C", "Y"),
                ("D", "Y"),
                ("D", "Z0"),
                ("D", "Z1"),
            ],
        ),
        _ => {
            // inner chain letters after X; the last one is doubled
            let letters = ["Y", "Z", "W", "V", "U", "T", "S", "R"];
            if k - 1 > letters.len() {
                return invalid(format!("post-selected line supports k <= {}", letters.len() + 1));
            }
            let last = letters[k - 2];
            let mut nodes = vec![Node::observed("X0"), Node::observed("X1")];
            nodes.extend(letters[..k - 2].iter().map(|l| Node::observed(*l)));
            nodes.push(Node::observed(format!("{last}0")));
            nodes.push(Node::observed(format!("{last}1")));
            nodes.extend((1..k).map(|i| Node::unobserved(format!("C{i}"))));
            let mut chain: Vec<Vec<String>> = vec![vec!["X0".into(), "X1".into()]];
            chain.extend(letters[..k - 2].iter().map(|l| vec![l.to_string()]));
            chain.push(vec![format!("{last}0"), format!("{last}1")]);
            let mut edges = Vec::new();
            for i in 1..k {
                for child in chain[i - 1].iter().chain(&chain[i]) {
                    edges.push((format!("C{i}"), child.clone()));
                }
            }
            CausalStructure::from_owned(format!("ptilde:{k}"), nodes, &edges)
        }
    }
}

/// Resolves `pn:<n>`, `bell`, `ptilde:<k>`, or a path to a JSON structure file.
pub fn resolve_structure(selector: &str) -> Result<CausalStructure> {
    if let Some(n) = selector.strip_prefix("pn:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad line length in `{selector}`")))?;
        return build_line_structure(n);
    }
    if let Some(k) = selector.strip_prefix("ptilde:") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad size in `{selector}`")))?;
        return build_post_selected_line(k);
    }
    if selector == "bell" {
        return Ok(build_bell_structure());
    }
    load_structure(Path::new(selector))
}

pub fn load_structure(path: &Path) -> Result<CausalStructure> {
    let text = std::fs::read_to_string(path)?;
    parse_structure(&text)
}

pub fn parse_structure(text: &str) -> Result<CausalStructure> {
    let file: StructureFile = serde_json::from_str(text).map_err(|e| Error::Format {
        field: format!("structure (line {} column {})", e.line(), e.column()),
        message: e.to_string(),
    })?;
    CausalStructure::from_file(file)
}

/// Maximal ancestor-disjoint pairs as masks over the observed coordinates.
pub fn observed_independence_pairs(g: &CausalStructure) -> Vec<(Subset, Subset)> {
    g.ancestor_disjoint_pairs()
        .into_iter()
        .map(|(s, t)| {
            debug_assert!(g.d_separated_mask(s, t, 0).unwrap_or(false));
            (
                g.observed_mask_to_coordinates(s),
                g.observed_mask_to_coordinates(t),
            )
        })
        .collect()
}

/// `I(S:T) = 0` for every maximal ancestor-disjoint pair of observed sets,
/// as forms over the observed coordinates. Valid for classical and quantum
/// versions of the structure alike.
pub fn observed_independence_constraints(g: &CausalStructure) -> Vec<LinearForm> {
    observed_independence_pairs(g)
        .into_iter()
        .map(|(s, t)| LinearForm::mutual_information(s, t, 0).equality())
        .collect()
}

/// Coordinate index over the observed nodes of `g`.
pub fn observed_index(g: &CausalStructure) -> CoordinateIndex {
    CoordinateIndex::full(g.observed_names())
}
