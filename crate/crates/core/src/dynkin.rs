//! Dynkin diagrams of intersection forms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology0::{Basis0, Label0};
use crate::join1::{JoinBasis, Kind};
use crate::linalg::IntMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Plain,
    PullBack,
    Tangency,
    Exceptional,
}

#[derive(Clone, Debug, Serialize)]
pub struct Vertex {
    pub label: String,
    pub kind: VertexKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub multiplicity: u64,
    pub sign: i8,
    pub dashed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DynkinGraph {
    pub dim: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// Edge iff the entry above the diagonal is nonzero; dashed iff its sign is
/// (−1)^dim.
pub fn build(form: &IntMat, vertices: Vec<Vertex>, dim: u32) -> DynkinGraph {
    let dash = if dim.is_multiple_of(2) { 1 } else { -1 };
    let mut edges = vec![];
    for u in 0..form.len() {
        for v in u + 1..form.len() {
            let x = form[u][v];
            if x != 0 {
                let sign = x.signum() as i8;
                edges.push(Edge {
                    u,
                    v,
                    multiplicity: x.unsigned_abs(),
                    sign,
                    dashed: i64::from(sign) == dash,
                });
            }
        }
    }
    DynkinGraph {
        dim,
        vertices,
        edges,
    }
}

pub fn vertices0(b: &Basis0) -> Vec<Vertex> {
    b.cycles
        .iter()
        .map(|c| Vertex {
            label: c.label.to_string(),
            kind: match c.label {
                Label0::Plain(_) => VertexKind::Plain,
                Label0::PullBack { .. } => VertexKind::PullBack,
                Label0::Tangency(_) => VertexKind::Tangency,
            },
        })
        .collect()
}

pub fn vertices1(b: &JoinBasis) -> Vec<Vertex> {
    b.labels
        .iter()
        .map(|l| Vertex {
            label: l.to_string(),
            kind: match (b.which, l.kind) {
                (crate::join1::Which::F, _) => VertexKind::Plain,
                (_, Kind::PullBack) => VertexKind::PullBack,
                (_, Kind::TangencyX | Kind::TangencyY) => VertexKind::Tangency,
                (_, Kind::Exceptional) => VertexKind::Exceptional,
            },
        })
        .collect()
}

impl DynkinGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn adjacency(&self) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0; self.len()]; self.len()];
        for e in &self.edges {
            m[e.u][e.v] = e.multiplicity;
            m[e.v][e.u] = e.multiplicity;
        }
        m
    }

    /// Connected components of the vertices accepted by `keep`.
    pub fn components(&self, keep: impl Fn(&Vertex) -> bool) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.len()];
        let mut out = vec![];
        for s in 0..self.len() {
            if seen[s] || !keep(&self.vertices[s]) {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let u = comp[k];
                for v in 0..self.len() {
                    if adj[u][v] != 0 && !seen[v] && keep(&self.vertices[v]) {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(|_| true).len() <= 1
    }

    /// Largest number of pull-back neighbours of a tangency vertex.
    pub fn max_tangency_degree(&self) -> usize {
        let adj = self.adjacency();
        (0..self.len())
            .filter(|&u| self.vertices[u].kind == VertexKind::Tangency)
            .map(|u| {
                (0..self.len())
                    .filter(|&v| adj[u][v] != 0 && self.vertices[v].kind == VertexKind::PullBack)
                    .count()
            })
            .max()
            .unwrap_or(0)
    }

    /// Weighted adjacency of the induced subgraph on `vs`.
    pub fn induced(&self, vs: &[usize]) -> Vec<Vec<u64>> {
        let adj = self.adjacency();
        vs.iter()
            .map(|&u| vs.iter().map(|&v| adj[u][v]).collect())
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dynkin {\n");
        for (k, v) in self.vertices.iter().enumerate() {
            let style = match v.kind {
                VertexKind::Tangency => ", style=filled, fillcolor=black, fontcolor=white",
                VertexKind::Exceptional => ", shape=square",
                _ => "",
            };
            let _ = writeln!(s, "  v{k} [label=\"{}\"{style}];", v.label);
        }
        for e in &self.edges {
            let mut attrs = vec![];
            if e.multiplicity > 1 {
                attrs.push(format!("label=\"{}\"", e.multiplicity));
            }
            if e.dashed {
                attrs.push("style=dashed".to_string());
            }
            let a = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            let _ = writeln!(s, "  v{} -- v{}{a};", e.u, e.v);
        }
        s.push_str("}\n");
        s
    }
}

/// Canonical form of a small weighted graph: lexicographically least
/// adjacency over orderings that sort vertices by weighted degree.
pub fn canonical_form(adj: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = adj.len();
    let inv = |u: usize| {
        let mut w: Vec<u64> = adj[u].iter().copied().filter(|&x| x != 0).collect();
        w.sort_unstable();
        w
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| inv(u));
    let mut classes: Vec<Vec<usize>> = vec![];
    for &u in &order {
        match classes.last_mut() {
            Some(c) if inv(c[0]) == inv(u) => c.push(u),
            _ => classes.push(vec![u]),
        }
    }
    let mut best: Option<Vec<Vec<u64>>> = None;
    let mut cur = vec![];
    permute_classes(&classes, 0, &mut cur, adj, &mut best);
    best.unwrap_or_default()
}

fn permute_classes(
    classes: &[Vec<usize>],
    k: usize,
    cur: &mut Vec<usize>,
    adj: &[Vec<u64>],
    best: &mut Option<Vec<Vec<u64>>>,
) {
    if k == classes.len() {
        let m: Vec<Vec<u64>> = cur
            .iter()
            .map(|&u| cur.iter().map(|&v| adj[u][v]).collect())
            .collect();
        if best.as_ref().is_none_or(|b| m < *b) {
            *best = Some(m);
        }
        return;
    }
    let mut c = classes[k].clone();
    heap_permutations(&mut c, classes, k, cur, adj, best);
}

fn heap_permutations(
    c: &mut [usize],
    classes: &[Vec<usize>],
    k: usize,
    cur: &mut Vec<usize>,
    adj: &[Vec<u64>],
    best: &mut Option<Vec<Vec<u64>>>,
) {
    fn rec(
        c: &mut [usize],
        m: usize,
        classes: &[Vec<usize>],
        k: usize,
        cur: &mut Vec<usize>,
        adj: &[Vec<u64>],
        best: &mut Option<Vec<Vec<u64>>>,
    ) {
        if m <= 1 {
            let base = cur.len();
            cur.extend_from_slice(c);
            permute_classes(classes, k + 1, cur, adj, best);
            cur.truncate(base);
            return;
        }
        for i in 0..m {
            rec(c, m - 1, classes, k, cur, adj, best);
            let j = if m.is_multiple_of(2) { i } else { 0 };
            c.swap(j, m - 1);
        }
    }
    let m = c.len();
    rec(c, m, classes, k, cur, adj, best);
}

pub fn isomorphic(a: &[Vec<u64>], b: &[Vec<u64>]) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgraphReport {
    pub removed: usize,
    pub components: Vec<Vec<String>>,
    pub expected_components: usize,
    pub all_isomorphic: bool,
    pub connected_before_removal: bool,
}

/// Removes tangency and exceptional vertices and checks that the rest splits
/// into n² copies of `g`.
pub fn subgraph_decomposition(
    h: &DynkinGraph,
    g: &DynkinGraph,
    n: usize,
) -> Result<SubgraphReport> {
    let keep = |v: &Vertex| v.kind == VertexKind::PullBack;
    let comps = h.components(keep);
    let removed = h.vertices.iter().filter(|v| !keep(v)).count();
    let gadj = g.induced(&(0..g.len()).collect::<Vec<_>>());
    if comps.len() != n * n {
        return Err(Error::DecompositionFailure(format!(
            "{} components, expected {}",
            comps.len(),
            n * n
        )));
    }
    if let Some(bad) = comps.iter().find(|c| !isomorphic(&h.induced(c), &gadj)) {
        return Err(Error::DecompositionFailure(format!(
            "component {{{}}} is not isomorphic to the diagram of f",
            bad.iter()
                .map(|&u| h.vertices[u].label.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    Ok(SubgraphReport {
        removed,
        components: comps
            .iter()
            .map(|c| c.iter().map(|&u| h.vertices[u].label.clone()).collect())
            .collect(),
        expected_components: n * n,
        all_isomorphic: true,
        connected_before_removal: h.is_connected(),
    })
}

/// Adjacency export keyed by vertex label.
pub fn adjacency_json(g: &DynkinGraph) -> BTreeMap<String, Vec<(String, i64)>> {
    let mut m: BTreeMap<String, Vec<(String, i64)>> = g
        .vertices
        .iter()
        .map(|v| (v.label.clone(), vec![]))
        .collect();
    for e in &g.edges {
        let w = i64::from(e.sign) * e.multiplicity as i64;
        m.get_mut(&g.vertices[e.u].label)
            .unwrap()
            .push((g.vertices[e.v].label.clone(), w));
        m.get_mut(&g.vertices[e.v].label)
            .unwrap()
            .push((g.vertices[e.u].label.clone(), -w));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(n: usize) -> Vec<Vertex> {
        (0..n)
            .map(|k| Vertex {
                label: format!("d{}", k + 1),
                kind: VertexKind::Plain,
            })
            .collect()
    }

    #[test]
    fn path_and_empty() {
        let form = vec![vec![2, -1, 0], vec![-1, 2, 1], vec![0, 1, 2]];
        let g = build(&form, plain(3), 0);
        assert_eq!(g.edges.len(), 2);
        assert!(g.edges[1].dashed && !g.edges[0].dashed);
        let dot = g.to_dot();
        assert_eq!(dot.matches(" -- ").count(), 2);
        let e = build(&vec![vec![0; 2]; 2], plain(2), 1);
        assert!(e.edges.is_empty());
        assert!(!e.to_dot().contains("--"));
    }

    #[test]
    fn canonical() {
        let p1 = vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]];
        let p2 = vec![vec![0, 1, 1], vec![1, 0, 0], vec![1, 0, 0]];
        let tri = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        assert!(isomorphic(&p1, &p2));
        assert!(!isomorphic(&p1, &tri));
    }
}
