//! Multicolored clique to MaxCover.
//!
//! For a graph whose vertices are split into `t` independent parts, the left
//! parts are the edge classes `E_{i,j}` (`i < j`, lexicographic) and the right
//! parts are the vertex parts. An edge `e ∈ E_{i,j}` is adjacent to `w ∈ W_l`
//! when `l ∉ {i, j}`, and otherwise exactly when `w` is the endpoint of `e` in
//! part `l`.

use std::collections::BTreeSet;

use crate::maxcover::{MaxCoverInstance, Vertex};

use super::{FrontEnd, FrontendError};

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, FrontendError> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(FrontendError::SelfLoop(u));
            }
            if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
                return Err(FrontendError::VertexRange { vertex, n });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }
}

/// A graph with every vertex assigned to one of `t` parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedGraph {
    graph: Graph,
    t: usize,
    part_of: Vec<usize>,
}

impl PartitionedGraph {
    pub fn new(graph: Graph, t: usize, part_of: Vec<usize>) -> Result<Self, FrontendError> {
        if part_of.len() != graph.n() {
            return Err(FrontendError::MissingPart(part_of.len().min(graph.n())));
        }
        if let Some(&part) = part_of.iter().find(|&&p| p >= t) {
            return Err(FrontendError::PartRange { part, t });
        }
        if let Some((u, v)) = graph.edges().find(|&(u, v)| part_of[u] == part_of[v]) {
            return Err(FrontendError::PartNotIndependent {
                part: part_of[u],
                u,
                v,
            });
        }
        Ok(PartitionedGraph { graph, t, part_of })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// Vertices of part `i`, ascending.
    pub fn part(&self, i: usize) -> Vec<usize> {
        (0..self.graph.n())
            .filter(|&v| self.part_of[v] == i)
            .collect()
    }

    /// Edges between parts `i < j`, as `(u in i, v in j)`, sorted.
    pub fn edge_class(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let mut class: Vec<(usize, usize)> = self
            .graph
            .edges()
            .filter_map(|(u, v)| match (self.part_of[u], self.part_of[v]) {
                (a, b) if a == i && b == j => Some((u, v)),
                (a, b) if a == j && b == i => Some((v, u)),
                _ => None,
            })
            .collect();
        class.sort_unstable();
        class
    }
}

/// `t` copies of `g`; copy `c` of vertex `v` gets id `c * n + v` and lies in
/// part `c`. Copies of `u` and `v` in different parts are adjacent iff `uv`
/// is an edge of `g`.
pub fn colorful_lift(g: &Graph, t: usize) -> PartitionedGraph {
    let n = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        for c1 in 0..t {
            for c2 in 0..t {
                if c1 != c2 {
                    edges.push((c1 * n + u, c2 * n + v));
                }
            }
        }
    }
    let lifted = Graph::new(n * t, &edges).expect("lift of a valid graph is valid");
    let part_of = (0..n * t).map(|x| x / n.max(1)).collect();
    PartitionedGraph::new(lifted, t, part_of).expect("copies of one graph are independent parts")
}

/// The MaxCover instance of a partitioned graph together with the labels of
/// its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueInstance {
    pub instance: MaxCoverInstance,
    /// Part pair `(i, j)` behind each left part.
    pub pairs: Vec<(usize, usize)>,
    /// Edges behind the vertices of each left part.
    pub edge_classes: Vec<Vec<(usize, usize)>>,
    /// Graph vertices behind the vertices of each right part.
    pub parts: Vec<Vec<usize>>,
}

impl CliqueInstance {
    /// The clique picked by a labeling, if its edges agree on every part.
    pub fn decode(&self, labeling: &[usize]) -> Option<Vec<usize>> {
        let mut chosen: Vec<Option<usize>> = vec![None; self.parts.len()];
        for (p, &x) in labeling.iter().enumerate() {
            let (i, j) = self.pairs[p];
            let (u, v) = self.edge_classes[p][x];
            for (slot, w) in [(i, u), (j, v)] {
                match chosen[slot] {
                    Some(prev) if prev != w => return None,
                    _ => chosen[slot] = Some(w),
                }
            }
        }
        chosen.into_iter().collect()
    }
}

pub fn clique_to_maxcover(h: &PartitionedGraph) -> Result<FrontEnd<CliqueInstance>, FrontendError> {
    let t = h.t();
    if t < 2 {
        return Err(FrontendError::TooFewParts { min: 2, got: t });
    }
    let parts: Vec<Vec<usize>> = (0..t).map(|i| h.part(i)).collect();
    if let Some(i) = parts.iter().position(Vec::is_empty) {
        return Ok(FrontEnd::DecidedNo(format!("part {i} has no vertices")));
    }
    let mut pairs = Vec::new();
    let mut classes = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            let class = h.edge_class(i, j);
            if class.is_empty() {
                return Ok(FrontEnd::DecidedNo(format!(
                    "no edge between parts {i} and {j}"
                )));
            }
            pairs.push((i, j));
            classes.push(class);
        }
    }
    let v_parts = classes.iter().map(Vec::len).collect();
    let w_parts = parts.iter().map(Vec::len).collect();
    let provenance = format!("clique_to_maxcover(n={}, t={t})", h.graph().n());
    let instance =
        MaxCoverInstance::from_fn(v_parts, w_parts, provenance, |e: Vertex, w: Vertex| {
            let (i, j) = pairs[e.part];
            let (u, v) = classes[e.part][e.index];
            let x = parts[w.part][w.index];
            if w.part == i {
                x == u
            } else if w.part == j {
                x == v
            } else {
                true
            }
        })?;
    Ok(FrontEnd::Instance(CliqueInstance {
        instance,
        pairs,
        edge_classes: classes,
        parts,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcover::{maxcover_value, projection_profile, MaxCoverGraph, ProfileEntry};

    fn singleton_parts(n: usize, edges: &[(usize, usize)]) -> PartitionedGraph {
        PartitionedGraph::new(Graph::new(n, edges).unwrap(), n, (0..n).collect()).unwrap()
    }

    #[test]
    fn triangle() {
        let h = singleton_parts(3, &[(0, 1), (1, 2), (0, 2)]);
        let FrontEnd::Instance(c) = clique_to_maxcover(&h).unwrap() else {
            panic!()
        };
        assert_eq!((c.instance.k(), c.instance.t()), (3, 3));
        let s = maxcover_value(&c.instance, 100).unwrap();
        assert!(s.value.is_one());
        assert_eq!(c.decode(&s.labeling), Some(vec![0, 1, 2]));
        // singleton right parts are both kinds at once, so check the profile on the lift
        let lifted = colorful_lift(&Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), 3);
        let FrontEnd::Instance(c) = clique_to_maxcover(&lifted).unwrap() else {
            panic!()
        };
        let p = projection_profile(&c.instance, 10_000).unwrap();
        for (p_idx, &(i, j)) in c.pairs.iter().enumerate() {
            for l in 0..3 {
                let want = if l == i || l == j {
                    ProfileEntry::Projection
                } else {
                    ProfileEntry::Full
                };
                assert_eq!(p.entry(p_idx, l), want);
            }
        }
    }

    #[test]
    fn path_is_decided_no() {
        let h = singleton_parts(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            clique_to_maxcover(&h).unwrap(),
            FrontEnd::DecidedNo(_)
        ));
    }

    #[test]
    fn four_cycle_two_parts() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = PartitionedGraph::new(g, 2, vec![0, 1, 0, 1]).unwrap();
        let FrontEnd::Instance(c) = clique_to_maxcover(&h).unwrap() else {
            panic!()
        };
        assert_eq!(c.instance.k(), 1);
        assert!(maxcover_value(&c.instance, 100).unwrap().value.is_one());
    }

    #[test]
    fn validation() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(
            PartitionedGraph::new(g.clone(), 2, vec![0, 0, 1]).unwrap_err(),
            FrontendError::PartNotIndependent {
                part: 0,
                u: 0,
                v: 1
            }
        );
        assert_eq!(
            PartitionedGraph::new(g, 2, vec![0, 1, 2]).unwrap_err(),
            FrontendError::PartRange { part: 2, t: 2 }
        );
        assert_eq!(
            Graph::new(2, &[(1, 1)]).unwrap_err(),
            FrontendError::SelfLoop(1)
        );
        let h = singleton_parts(1, &[]);
        assert_eq!(
            clique_to_maxcover(&h).unwrap_err(),
            FrontendError::TooFewParts { min: 2, got: 1 }
        );
    }

    #[test]
    fn lift() {
        let tri = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = colorful_lift(&tri, 3);
        assert_eq!(h.graph().n(), 9);
        assert!(h.graph().has_edge(0, 4) && h.graph().has_edge(4, 8) && h.graph().has_edge(0, 8));
        let FrontEnd::Instance(c) = clique_to_maxcover(&h).unwrap() else {
            panic!()
        };
        assert!(maxcover_value(&c.instance, 10_000).unwrap().value.is_one());
        let empty = colorful_lift(&Graph::new(3, &[]).unwrap(), 2);
        assert_eq!(empty.graph().edges().count(), 0);
    }
}
