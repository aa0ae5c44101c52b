//! The graph whose vertices are GHW groups and whose edges join groups of
//! consecutive dimensions when one is (witnessed as) a subgroup of the other.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::constructions::{list_reductions, Reduction, ReductionChoice};
use crate::enumerate::{CanonicalKey, Census};
use crate::error::Error;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub dim: usize,
    pub key: CanonicalKey,
    pub beta1: usize,
    pub orientable: bool,
    pub name: Option<&'static str>,
}

/// `upper` has dimension one more than `lower` and contains a copy of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub upper: usize,
    pub lower: usize,
    /// First reduction of `upper` whose result is `lower`.
    pub witness: ReductionChoice,
    /// Whether the witnessed subgroup is normal.
    pub normal: bool,
    /// Number of reductions of `upper` landing on `lower`.
    pub witness_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhwGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    index: BTreeMap<CanonicalKey, usize>,
    adjacency: Vec<Vec<usize>>,
}

fn names_for(census: &Census) -> Vec<Option<&'static str>> {
    match census.dim {
        2 => alloc::vec![Some("K"); census.len()],
        3 => {
            let mut amphi = ["+a2", "-a2"].into_iter();
            census.entries.iter().map(|e| if e.orientable { Some("c22") } else { amphi.next() }).collect()
        }
        _ => alloc::vec![None; census.len()],
    }
}

/// Builds the graph over consecutive censuses starting in dimension 2.
pub fn build_graph(censuses: &[Census]) -> Result<GhwGraph> {
    let reductions = censuses
        .iter()
        .flat_map(|c| c.entries.iter().map(move |e| (c.dim, e)))
        .map(|(dim, e)| if dim > 2 { list_reductions(&e.presentation) } else { Ok(Vec::new()) })
        .collect::<Result<Vec<_>>>()?;
    assemble_graph(censuses, reductions)
}

/// Builds the graph from precomputed reductions, one list per vertex in
/// census order.
pub fn assemble_graph(censuses: &[Census], reductions: Vec<Vec<Reduction>>) -> Result<GhwGraph> {
    for (offset, c) in censuses.iter().enumerate() {
        if c.dim != offset + 2 {
            return Err(Error::Precondition("censuses must cover consecutive dimensions from 2"));
        }
    }
    let mut vertices = Vec::new();
    for census in censuses {
        for (entry, name) in census.entries.iter().zip(names_for(census)) {
            vertices.push(Vertex {
                dim: census.dim,
                key: entry.key.clone(),
                beta1: entry.beta1,
                orientable: entry.orientable,
                name,
            });
        }
    }
    if reductions.len() != vertices.len() {
        return Err(Error::Precondition("one reduction list per vertex required"));
    }
    let index: BTreeMap<CanonicalKey, usize> = vertices.iter().enumerate().map(|(i, v)| (v.key.clone(), i)).collect();
    let mut edges: Vec<Edge> = Vec::new();
    for (upper, list) in reductions.iter().enumerate() {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for r in list {
            let &lower = index.get(&r.key).ok_or(Error::UnknownVertex)?;
            if vertices[lower].dim + 1 != vertices[upper].dim {
                return Err(Error::DimensionMismatch { left: vertices[upper].dim, right: vertices[lower].dim });
            }
            match seen.get(&lower) {
                Some(&e) => edges[e].witness_count += 1,
                None => {
                    seen.insert(lower, edges.len());
                    edges.push(Edge { upper, lower, witness: r.choice, normal: r.normal, witness_count: 1 });
                }
            }
        }
    }
    edges.sort_by_key(|e| (e.upper, e.lower));
    let mut adjacency = alloc::vec![Vec::new(); vertices.len()];
    for e in &edges {
        adjacency[e.upper].push(e.lower);
        adjacency[e.lower].push(e.upper);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    Ok(GhwGraph { vertices, edges, index, adjacency })
}

impl GhwGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, key: &CanonicalKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == Some(name))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn down_degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().filter(|&&w| self.vertices[w].dim < self.vertices[v].dim).count()
    }

    pub fn up_degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().filter(|&&w| self.vertices[w].dim > self.vertices[v].dim).count()
    }

    fn bfs(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = alloc::vec![None; self.vertices.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued vertices have a distance");
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, from: &CanonicalKey, to: &CanonicalKey) -> Result<usize> {
        let a = self.vertex(from).ok_or(Error::UnknownVertex)?;
        let b = self.vertex(to).ok_or(Error::UnknownVertex)?;
        self.bfs(a)[b].ok_or(Error::Disconnected)
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    fn label(&self, v: usize) -> String {
        match self.vertices[v].name {
            Some(name) => String::from(name),
            None => {
                let dim = self.vertices[v].dim;
                let first = self.vertices.iter().position(|w| w.dim == dim).unwrap_or(0);
                format!("{}.{}", dim, v - first + 1)
            }
        }
    }

    /// DOT text; `b_1 = 0` vertices are hollow circles, `b_1 = 1` vertices
    /// filled. Output depends only on the graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph ghw {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n");
        let max_dim = self.vertices.iter().map(|v| v.dim).max().unwrap_or(0);
        for dim in 2..=max_dim {
            out.push_str(&format!("  subgraph dim{dim} {{\n    rank=same;\n"));
            for (i, v) in self.vertices.iter().enumerate().filter(|(_, v)| v.dim == dim) {
                let style = if v.beta1 == 0 { "style=solid" } else { "style=filled, fillcolor=black, fontcolor=white" };
                out.push_str(&format!("    v{i} [label=\"{}\", {style}, tooltip=\"{}\"];\n", self.label(i), v.key));
            }
            out.push_str("  }\n");
        }
        for e in &self.edges {
            let style = if e.normal { "solid" } else { "dashed" };
            out.push_str(&format!("  v{} -- v{} [style={style}];\n", e.lower, e.upper));
        }
        out.push_str("}\n");
        out
    }
}
