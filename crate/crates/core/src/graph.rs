//! Commutation graphs, their opposites and coconnected decomposition.
//!
//! The coconnected components of `Γ` are the induced subgraphs on the
//! connected components of the opposite graph. Every pair of vertices taken
//! from different components is an edge of `Γ`, so the right-angled Artin
//! monoid of `Γ` is the direct product of the monoids of its components.

use petgraph::unionfind::UnionFind;

use crate::monoid::Presentation;
use crate::{Error, Result};

/// A finite simple undirected graph with named, ordered vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UGraph {
    vertices: Vec<String>,
    adj: Vec<Vec<bool>>,
}

impl UGraph {
    pub fn new(vertices: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = vertices.len();
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a}, {b}) references a missing vertex")));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {:?}", vertices[a])));
            }
            adj[a][b] = true;
            adj[b][a] = true;
        }
        Ok(UGraph { vertices, adj })
    }

    pub fn from_names(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let idx = |s: &str| {
            vertices.iter().position(|v| *v == s).ok_or_else(|| Error::UnknownName(s.to_string()))
        };
        let e = edges.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
        UGraph::new(vertices.iter().map(|s| s.to_string()).collect(), &e)
    }

    pub fn complete(n: usize) -> Self {
        let e: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        UGraph::new((0..n).map(|i| format!("v{i}")).collect(), &e).expect("valid")
    }

    pub fn edgeless(n: usize) -> Self {
        UGraph::new((0..n).map(|i| format!("v{i}")).collect(), &[]).expect("valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&e| e).count()
    }

    /// Edges `(a, b)` with `a < b`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.adj[a][b])
            .collect()
    }

    /// Same vertices, complementary edge set within the 2-subsets.
    pub fn opposite(&self) -> UGraph {
        let n = self.order();
        let adj = (0..n).map(|a| (0..n).map(|b| a != b && !self.adj[a][b]).collect()).collect();
        UGraph { vertices: self.vertices.clone(), adj }
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// least vertex index.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut uf = UnionFind::<usize>::new(n);
        for (a, b) in self.edges() {
            uf.union(a, b);
        }
        let labels = uf.into_labeling();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot_of_label = vec![usize::MAX; n];
        for v in 0..n {
            let l = labels[v];
            if slot_of_label[l] == usize::MAX {
                slot_of_label[l] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot_of_label[l]].push(v);
        }
        groups
    }

    /// The induced subgraph on `vertices` (given as sorted indices).
    pub fn induced(&self, vertices: &[usize]) -> UGraph {
        let names = vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        let adj = vertices
            .iter()
            .map(|&a| vertices.iter().map(|&b| self.adj[a][b]).collect())
            .collect();
        UGraph { vertices: names, adj }
    }

    /// Vertex index sets of the coconnected components.
    pub fn coconnected_partition(&self) -> Vec<Vec<usize>> {
        self.opposite().connected_components()
    }

    /// Induced subgraphs on the connected components of the opposite graph,
    /// ordered by least vertex index.
    pub fn coconnected_components(&self) -> Vec<UGraph> {
        self.coconnected_partition().iter().map(|c| self.induced(c)).collect()
    }

    pub fn is_coconnected(&self) -> bool {
        self.coconnected_partition().len() <= 1
    }

    /// Whether the opposite graph has no isolated vertex, the hypothesis
    /// under which the Crisp–Laca boundary quotient relations apply.
    pub fn crisp_laca_applicable(&self) -> bool {
        let op = self.opposite();
        (0..op.order()).all(|v| op.degree(v) >= 1)
    }

    /// Rebuilds a graph from parts: the disjoint union of their edges plus
    /// every pair across different parts.
    pub fn join(parts: &[UGraph]) -> UGraph {
        let vertices: Vec<String> = parts.iter().flat_map(|p| p.vertices.iter().cloned()).collect();
        let n = vertices.len();
        let mut adj = vec![vec![true; n]; n];
        let mut offset = 0;
        for p in parts {
            for a in 0..p.order() {
                for b in 0..p.order() {
                    adj[offset + a][offset + b] = p.adj[a][b];
                }
            }
            offset += p.order();
        }
        for (v, row) in adj.iter_mut().enumerate() {
            row[v] = false;
        }
        UGraph { vertices, adj }
    }

    /// Same graph with vertices renamed into a new order (by name).
    pub fn reorder(&self, order: &[String]) -> Option<UGraph> {
        let idx: Option<Vec<usize>> = order.iter().map(|n| self.vertices.iter().position(|v| v == n)).collect();
        let idx = idx?;
        if idx.len() != self.order() {
            return None;
        }
        Some(self.induced(&idx))
    }
}

/// Checks the product formula for sphere sizes against the coconnected
/// decomposition: `|M_k|` equals the sum over `k_1 + … + k_r = k` of
/// `Π |M^{Γ_i}_{k_i}|`, both sides enumerated.
pub fn product_growth_check(g: &UGraph, k: usize) -> Result<bool> {
    let whole = Presentation::from_graph(g)?.growth(k)?;
    let mut convolved = vec![1u128];
    convolved.resize(k + 1, 0);
    for part in g.coconnected_components() {
        let factor = Presentation::from_graph(&part)?.growth(k)?;
        let mut next = vec![0u128; k + 1];
        for (i, &a) in convolved.iter().enumerate() {
            for (j, &b) in factor.iter().enumerate().take(k + 1 - i) {
                next[i + j] += a * b as u128;
            }
        }
        convolved = next;
    }
    Ok(whole[k] as u128 == convolved[k])
}
