//! Bipartite graphs `G = (U, V; E)` with a fixed edge order, and matchings.
//!
//! Vertex ids are opaque strings. Internally the left and right sides are
//! numbered densely by input position. Every edge carries the index it had in
//! the input edge list; restriction keeps those indices, so anything that
//! breaks ties by edge index behaves the same on a restricted graph.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::subset::LeftSet;

/// Fixed index of an edge in the input edge list.
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Left(usize),
    Right(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    /// Position in [`BipartiteGraph::left`].
    pub left: usize,
    /// Position in [`BipartiteGraph::right`].
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: Vec<String>,
    right: Vec<String>,
    /// Sorted by id.
    edges: Vec<Edge>,
    /// Number of edges in the unrestricted graph; every id is below this.
    id_space: usize,
    left_index: HashMap<String, usize>,
    right_index: HashMap<String, usize>,
    /// Per vertex, positions into `edges` (so in edge-index order).
    left_adj: Vec<Vec<usize>>,
    right_adj: Vec<Vec<usize>>,
}

fn index_of(ids: &[String]) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if map.insert(id.clone(), i).is_some() {
            return Err(Error::DuplicateVertex(id.clone()));
        }
    }
    Ok(map)
}

impl BipartiteGraph {
    /// Builds a graph; the edge list order fixes the edge indices.
    pub fn new<S: Into<String>>(left: Vec<S>, right: Vec<S>, edges: Vec<(S, S)>) -> Result<Self> {
        let left: Vec<String> = left.into_iter().map(Into::into).collect();
        let right: Vec<String> = right.into_iter().map(Into::into).collect();
        let left_index = index_of(&left)?;
        let right_index = index_of(&right)?;
        if let Some(shared) = left.iter().find(|id| right_index.contains_key(*id)) {
            return Err(Error::DuplicateVertex(shared.clone()));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, (u, v)) in edges.into_iter().enumerate() {
            let (u, v): (String, String) = (u.into(), v.into());
            let (Some(&l), Some(&r)) = (left_index.get(&u), right_index.get(&v)) else {
                if !left_index.contains_key(&u) && !right_index.contains_key(&u) {
                    return Err(Error::UnknownVertex(u));
                }
                if !left_index.contains_key(&v) && !right_index.contains_key(&v) {
                    return Err(Error::UnknownVertex(v));
                }
                return Err(Error::BadEdgeEndpoints(u, v));
            };
            if !seen.insert((l, r)) {
                return Err(Error::DuplicateEdge(u, v));
            }
            out.push(Edge {
                id,
                left: l,
                right: r,
            });
        }
        let id_space = out.len();
        Ok(Self::assemble(
            left,
            right,
            out,
            id_space,
            left_index,
            right_index,
        ))
    }

    fn assemble(
        left: Vec<String>,
        right: Vec<String>,
        edges: Vec<Edge>,
        id_space: usize,
        left_index: HashMap<String, usize>,
        right_index: HashMap<String, usize>,
    ) -> Self {
        let mut left_adj = vec![Vec::new(); left.len()];
        let mut right_adj = vec![Vec::new(); right.len()];
        for (pos, e) in edges.iter().enumerate() {
            left_adj[e.left].push(pos);
            right_adj[e.right].push(pos);
        }
        BipartiteGraph {
            left,
            right,
            edges,
            id_space,
            left_index,
            right_index,
            left_adj,
            right_adj,
        }
    }

    pub fn left(&self) -> &[String] {
        &self.left
    }

    pub fn right(&self) -> &[String] {
        &self.right
    }

    /// Edges in index order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge count of the graph this one was restricted from (or of itself).
    pub fn id_space(&self) -> usize {
        self.id_space
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex> {
        if let Some(&l) = self.left_index.get(id) {
            Ok(Vertex::Left(l))
        } else if let Some(&r) = self.right_index.get(id) {
            Ok(Vertex::Right(r))
        } else {
            Err(Error::UnknownVertex(id.to_string()))
        }
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        match v {
            Vertex::Left(l) => &self.left[l],
            Vertex::Right(r) => &self.right[r],
        }
    }

    pub fn left_position(&self, id: &str) -> Result<usize> {
        match self.vertex(id)? {
            Vertex::Left(l) => Ok(l),
            Vertex::Right(_) => Err(Error::NotLeftVertex(id.to_string())),
        }
    }

    /// Resolves left vertex ids to a [`LeftSet`].
    pub fn left_set<I, S>(&self, ids: I) -> Result<LeftSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        ids.into_iter()
            .map(|id| self.left_position(id.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(LeftSet::new)
    }

    pub fn left_names(&self, set: &LeftSet) -> Vec<String> {
        set.iter().map(|l| self.left[l].clone()).collect()
    }

    pub fn right_names(&self, positions: &[usize]) -> Vec<String> {
        positions.iter().map(|&r| self.right[r].clone()).collect()
    }

    /// Errors on the first position outside `U`.
    pub(crate) fn check_left_set(&self, set: &LeftSet) -> Result<()> {
        match set.iter().find(|&p| p >= self.left.len()) {
            Some(p) => Err(Error::UnknownVertex(format!("left position {p}"))),
            None => Ok(()),
        }
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|pos| &self.edges[pos])
    }

    pub fn edge_between(&self, left: usize, right: usize) -> Option<EdgeId> {
        self.left_adj
            .get(left)?
            .iter()
            .map(|&pos| &self.edges[pos])
            .find(|e| e.right == right)
            .map(|e| e.id)
    }

    /// Looks up an edge by endpoint ids.
    pub fn edge_by_names(&self, u: &str, v: &str) -> Result<EdgeId> {
        let l = self.left_position(u)?;
        let r = match self.vertex(v)? {
            Vertex::Right(r) => r,
            Vertex::Left(_) => return Err(Error::BadEdgeEndpoints(u.into(), v.into())),
        };
        self.edge_between(l, r)
            .ok_or_else(|| Error::BadEdgeEndpoints(u.into(), v.into()))
    }

    pub fn edge_names(&self, id: EdgeId) -> Option<(&str, &str)> {
        self.edge(id)
            .map(|e| (self.left[e.left].as_str(), self.right[e.right].as_str()))
    }

    fn adjacency(&self, v: Vertex) -> &[usize] {
        match v {
            Vertex::Left(l) => &self.left_adj[l],
            Vertex::Right(r) => &self.right_adj[r],
        }
    }

    /// Edges at a vertex given by position, in edge-index order.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        self.adjacency(v).iter().map(move |&pos| &self.edges[pos])
    }

    /// `N_G(r)` in edge-index order.
    pub fn neighbors(&self, id: &str) -> Result<Vec<&str>> {
        let v = self.vertex(id)?;
        Ok(self
            .incident(v)
            .map(|e| match v {
                Vertex::Left(_) => self.right[e.right].as_str(),
                Vertex::Right(_) => self.left[e.left].as_str(),
            })
            .collect())
    }

    /// `δ_G(r)` as edge indices.
    pub fn incident_edges(&self, id: &str) -> Result<Vec<EdgeId>> {
        let v = self.vertex(id)?;
        Ok(self.incident(v).map(|e| e.id).collect())
    }

    /// Induced subgraph `G[X]`. Surviving vertices keep their relative order
    /// and surviving edges keep their indices.
    pub fn restrict<I, S>(&self, keep: I) -> Result<BipartiteGraph>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut keep_left = vec![false; self.left.len()];
        let mut keep_right = vec![false; self.right.len()];
        for id in keep {
            match self.vertex(id.as_ref())? {
                Vertex::Left(l) => keep_left[l] = true,
                Vertex::Right(r) => keep_right[r] = true,
            }
        }
        Ok(self.restrict_flags(&keep_left, &keep_right))
    }

    /// `G[U' ∪ V]`.
    pub fn restrict_left(&self, subset: &LeftSet) -> BipartiteGraph {
        self.restrict_flags(
            &subset.flags(self.left.len()),
            &vec![true; self.right.len()],
        )
    }

    fn restrict_flags(&self, keep_left: &[bool], keep_right: &[bool]) -> BipartiteGraph {
        fn renumber(ids: &[String], keep: &[bool]) -> (Vec<String>, Vec<Option<usize>>) {
            let mut names = Vec::new();
            let map = ids
                .iter()
                .zip(keep)
                .map(|(id, &k)| {
                    k.then(|| {
                        names.push(id.clone());
                        names.len() - 1
                    })
                })
                .collect();
            (names, map)
        }
        let (left, lmap) = renumber(&self.left, keep_left);
        let (right, rmap) = renumber(&self.right, keep_right);
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    id: e.id,
                    left: lmap[e.left]?,
                    right: rmap[e.right]?,
                })
            })
            .collect();
        let left_index = left.iter().cloned().zip(0..).collect();
        let right_index = right.iter().cloned().zip(0..).collect();
        Self::assemble(left, right, edges, self.id_space, left_index, right_index)
    }

    fn check_ids(&self, ids: &[EdgeId]) -> Result<()> {
        match ids.iter().find(|&&id| self.edge(id).is_none()) {
            Some(&bad) => Err(Error::InvalidEdgeIndex(bad)),
            None => Ok(()),
        }
    }

    /// First vertex covered twice by `ids`, if any.
    fn doubly_covered(&self, ids: &[EdgeId]) -> Option<Vertex> {
        let mut seen_left = vec![false; self.left.len()];
        let mut seen_right = vec![false; self.right.len()];
        for &id in ids {
            let e = self.edge(id)?;
            if std::mem::replace(&mut seen_left[e.left], true) {
                return Some(Vertex::Left(e.left));
            }
            if std::mem::replace(&mut seen_right[e.right], true) {
                return Some(Vertex::Right(e.right));
            }
        }
        None
    }

    /// Whether `|M ∩ δ_G(r)| ≤ 1` holds at every vertex.
    pub fn is_matching(&self, ids: &[EdgeId]) -> Result<bool> {
        self.check_ids(ids)?;
        let mut sorted = ids.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(false);
        }
        Ok(self.doubly_covered(&sorted).is_none())
    }

    /// Validates `ids` as a matching of this graph.
    pub fn matching(&self, ids: &[EdgeId]) -> Result<Matching> {
        self.check_ids(ids)?;
        let mut sorted = ids.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            let e = self.edge(w[0]).expect("checked");
            return Err(Error::NotAMatching(self.left[e.left].clone()));
        }
        match self.doubly_covered(&sorted) {
            Some(v) => Err(Error::NotAMatching(self.vertex_name(v).to_string())),
            None => Ok(Matching { edges: sorted }),
        }
    }

    /// Matching built from endpoint id pairs.
    pub fn matching_by_names(&self, pairs: &[(&str, &str)]) -> Result<Matching> {
        let ids = pairs
            .iter()
            .map(|(u, v)| self.edge_by_names(u, v))
            .collect::<Result<Vec<_>>>()?;
        self.matching(&ids)
    }

    /// Splits `M1 △ M2` into its connected components. Each is a simple path
    /// or an even cycle, since every vertex meets at most one edge of each
    /// matching.
    pub fn symmetric_difference_components(
        &self,
        m1: &Matching,
        m2: &Matching,
    ) -> Result<Vec<Component>> {
        self.matching(&m1.edges)?;
        self.matching(&m2.edges)?;
        let diff: Vec<&Edge> = m1
            .edges
            .iter()
            .filter(|id| !m2.contains(**id))
            .chain(m2.edges.iter().filter(|id| !m1.contains(**id)))
            .map(|&id| self.edge(id).expect("validated"))
            .collect();

        let mut at: HashMap<Vertex, Vec<usize>> = HashMap::new();
        for (i, e) in diff.iter().enumerate() {
            at.entry(Vertex::Left(e.left)).or_default().push(i);
            at.entry(Vertex::Right(e.right)).or_default().push(i);
        }

        let mut done = vec![false; diff.len()];
        let mut components = Vec::new();
        for start in 0..diff.len() {
            if done[start] {
                continue;
            }
            let mut stack = vec![start];
            done[start] = true;
            let mut edges = Vec::new();
            let mut vertices = Vec::new();
            while let Some(i) = stack.pop() {
                edges.push(diff[i].id);
                for v in [Vertex::Left(diff[i].left), Vertex::Right(diff[i].right)] {
                    if !vertices.contains(&v) {
                        vertices.push(v);
                    }
                    for &j in &at[&v] {
                        if !done[j] {
                            done[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
            edges.sort_unstable();
            vertices.sort_unstable();
            let mut ends: Vec<Vertex> = vertices
                .iter()
                .copied()
                .filter(|v| at[v].len() == 1)
                .collect();
            let shape = match ends.len() {
                0 => ComponentShape::Cycle,
                2 => {
                    ends.sort_unstable();
                    ComponentShape::Path {
                        ends: [ends[0], ends[1]],
                    }
                }
                _ => unreachable!("matchings give degree at most 2 in their symmetric difference"),
            };
            components.push(Component {
                shape,
                edges,
                vertices,
            });
        }
        components.sort_by(|a, b| a.edges.cmp(&b.edges));
        Ok(components)
    }

    /// Every matching of the graph, `∅` first. Fails when the edge count
    /// exceeds `limit`.
    pub fn enumerate_matchings(&self, limit: usize) -> Result<Vec<Matching>> {
        let mut out = Vec::new();
        self.for_each_matching(limit, |ids| out.push(Matching::from_ids(ids.to_vec())))?;
        Ok(out)
    }

    /// Calls `visit` on the sorted edge ids of every matching.
    pub fn for_each_matching(&self, limit: usize, mut visit: impl FnMut(&[EdgeId])) -> Result<()> {
        if self.edges.len() > limit {
            return Err(Error::OracleLimit {
                edges: self.edges.len(),
                limit,
            });
        }
        struct Walk<'a, F> {
            edges: &'a [Edge],
            used_left: Vec<bool>,
            used_right: Vec<bool>,
            current: Vec<EdgeId>,
            visit: F,
        }
        impl<F: FnMut(&[EdgeId])> Walk<'_, F> {
            fn go(&mut self, i: usize) {
                if i == self.edges.len() {
                    (self.visit)(&self.current);
                    return;
                }
                self.go(i + 1);
                let e = self.edges[i];
                if !self.used_left[e.left] && !self.used_right[e.right] {
                    self.used_left[e.left] = true;
                    self.used_right[e.right] = true;
                    self.current.push(e.id);
                    self.go(i + 1);
                    self.current.pop();
                    self.used_left[e.left] = false;
                    self.used_right[e.right] = false;
                }
            }
        }
        let mut walk = Walk {
            edges: &self.edges,
            used_left: vec![false; self.left.len()],
            used_right: vec![false; self.right.len()],
            current: Vec::new(),
            visit: &mut visit,
        };
        walk.go(0);
        Ok(())
    }
}

/// A matching as a sorted set of edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Matching {
    edges: Vec<EdgeId>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// Sorts and deduplicates without checking the matching property.
    pub(crate) fn from_ids(mut ids: Vec<EdgeId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Matching { edges: ids }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.edges.binary_search(&id).is_ok()
    }

    /// `M(u)` for a left position.
    pub fn left_partner(&self, g: &BipartiteGraph, left: usize) -> Option<usize> {
        self.edges
            .iter()
            .filter_map(|&id| g.edge(id))
            .find(|e| e.left == left)
            .map(|e| e.right)
    }

    /// `M(v)` for a right position.
    pub fn right_partner(&self, g: &BipartiteGraph, right: usize) -> Option<usize> {
        self.edges
            .iter()
            .filter_map(|&id| g.edge(id))
            .find(|e| e.right == right)
            .map(|e| e.left)
    }

    /// Left positions covered by the matching.
    pub fn matched_left(&self, g: &BipartiteGraph) -> LeftSet {
        self.edges
            .iter()
            .filter_map(|&id| g.edge(id))
            .map(|e| e.left)
            .collect()
    }

    /// Right positions covered by the matching, ascending.
    pub fn matched_right(&self, g: &BipartiteGraph) -> Vec<usize> {
        let mut r: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&id| g.edge(id))
            .map(|e| e.right)
            .collect();
        r.sort_unstable();
        r
    }

    /// Right side as a bitmask; positions must be below 32.
    pub fn right_mask(&self, g: &BipartiteGraph) -> u32 {
        self.edges
            .iter()
            .filter_map(|&id| g.edge(id))
            .fold(0, |m, e| m | (1 << e.right))
    }

    /// Endpoint id pairs, in edge-index order.
    pub fn pairs<'g>(&self, g: &'g BipartiteGraph) -> Vec<(&'g str, &'g str)> {
        self.edges
            .iter()
            .filter_map(|&id| g.edge_names(id))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentShape {
    Path { ends: [Vertex; 2] },
    Cycle,
}

/// One connected component of a symmetric difference of two matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub shape: ComponentShape,
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
    /// Sorted vertices touched.
    pub vertices: Vec<Vertex>,
}

impl Component {
    pub fn is_path(&self) -> bool {
        matches!(self.shape, ComponentShape::Path { .. })
    }

    pub fn has_end(&self, v: Vertex) -> bool {
        matches!(self.shape, ComponentShape::Path { ends } if ends.contains(&v))
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn names<'a>(g: &'a BipartiteGraph, ids: &[EdgeId]) -> Vec<(&'a str, &'a str)> {
        ids.iter().map(|&id| g.edge_names(id).unwrap()).collect()
    }

    #[test]
    fn neighbors_follow_edge_order() {
        let g1 = example1_graph();
        assert_eq!(g1.neighbors("v1").unwrap(), vec!["u1", "u2", "u3"]);
        let g2 = example2_graph();
        assert_eq!(g2.neighbors("u1").unwrap(), vec!["v1", "v2"]);
        let empty = BipartiteGraph::new(vec!["a"], vec!["b"], vec![]).unwrap();
        assert!(empty.neighbors("a").unwrap().is_empty());
        assert_eq!(g1.neighbors("zz"), Err(Error::UnknownVertex("zz".into())));
    }

    #[test]
    fn incident_edges_at_a_vertex() {
        let g1 = example1_graph();
        assert_eq!(
            names(&g1, &g1.incident_edges("v3").unwrap()),
            vec![("u2", "v3")]
        );
        let g2 = example2_graph();
        assert_eq!(
            names(&g2, &g2.incident_edges("v1").unwrap()),
            vec![("u1", "v1"), ("u2", "v1"), ("u3", "v1")]
        );
        let iso = BipartiteGraph::new(vec!["a", "x"], vec!["b"], vec![("a", "b")]).unwrap();
        assert!(iso.incident_edges("x").unwrap().is_empty());
        assert!(g1.incident_edges("nope").is_err());
    }

    #[test]
    fn restriction_keeps_edge_indices() {
        let g = example1_graph();
        let r = g.restrict(["u1", "u2", "v1", "v2", "v3"]).unwrap();
        assert_eq!(
            r.edges()
                .iter()
                .map(|e| (e.id, g.edge_names(e.id).unwrap()))
                .collect::<Vec<_>>(),
            vec![
                (0, ("u1", "v1")),
                (1, ("u1", "v2")),
                (2, ("u2", "v1")),
                (3, ("u2", "v3")),
            ]
        );
        assert_eq!(r.edge_names(3), Some(("u2", "v3")));
        assert_eq!(r.id_space(), 6);

        let all: Vec<&String> = g.left().iter().chain(g.right()).collect();
        assert_eq!(g.restrict(all).unwrap(), g);

        let none = g.restrict(Vec::<&str>::new()).unwrap();
        assert!(none.left().is_empty() && none.right().is_empty() && none.edges().is_empty());
        assert!(g.restrict(["q"]).is_err());
    }

    #[test]
    fn matching_checks() {
        let g = example1_graph();
        let sm = [
            g.edge_by_names("u1", "v2").unwrap(),
            g.edge_by_names("u2", "v3").unwrap(),
            g.edge_by_names("u3", "v1").unwrap(),
        ];
        assert!(g.is_matching(&sm).unwrap());
        assert!(g.is_matching(&[]).unwrap());
        let clash = [
            g.edge_by_names("u1", "v1").unwrap(),
            g.edge_by_names("u2", "v1").unwrap(),
        ];
        assert!(!g.is_matching(&clash).unwrap());
        assert_eq!(g.is_matching(&[17]), Err(Error::InvalidEdgeIndex(17)));
        assert_eq!(g.matching(&clash), Err(Error::NotAMatching("v1".into())));
    }

    #[test]
    fn symmetric_difference_on_example2() {
        let g = example2_graph();
        let m1 = g.matching_by_names(&[("u1", "v1")]).unwrap();
        let m2 = g.matching_by_names(&[("u1", "v2"), ("u3", "v1")]).unwrap();
        let comps = g.symmetric_difference_components(&m1, &m2).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].is_path());
        assert_eq!(comps[0].edges.len(), 3);
        assert!(comps[0].has_end(Vertex::Right(1)));
        assert!(comps[0].has_end(Vertex::Left(2)));

        assert!(g
            .symmetric_difference_components(&m1, &m1)
            .unwrap()
            .is_empty());

        let single = g
            .symmetric_difference_components(&m1, &Matching::empty())
            .unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].edges, vec![0]);
        assert_eq!(
            single[0].shape,
            ComponentShape::Path {
                ends: [Vertex::Left(0), Vertex::Right(0)]
            }
        );
    }

    #[test]
    fn symmetric_difference_finds_cycles() {
        let g = BipartiteGraph::new(
            vec!["a", "b"],
            vec!["x", "y"],
            vec![("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")],
        )
        .unwrap();
        let m1 = g.matching_by_names(&[("a", "x"), ("b", "y")]).unwrap();
        let m2 = g.matching_by_names(&[("a", "y"), ("b", "x")]).unwrap();
        let comps = g.symmetric_difference_components(&m1, &m2).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape, ComponentShape::Cycle);
        assert_eq!(comps[0].edges, vec![0, 1, 2, 3]);
    }

    /// Counts matchings by recursing on the lowest uncovered left vertex,
    /// independently of the branch-on-edge enumerator.
    fn count_by_left_vertex(g: &BipartiteGraph, l: usize, used: &mut Vec<bool>) -> usize {
        if l == g.left().len() {
            return 1;
        }
        let mut total = count_by_left_vertex(g, l + 1, used);
        let rights: Vec<usize> = g.incident(Vertex::Left(l)).map(|e| e.right).collect();
        for r in rights {
            if !used[r] {
                used[r] = true;
                total += count_by_left_vertex(g, l + 1, used);
                used[r] = false;
            }
        }
        total
    }

    #[test]
    fn enumerate_matchings_counts() {
        let g2 = example2_graph();
        let all = g2.enumerate_matchings(24).unwrap();
        // ∅, four singletons, {(u1,v2),(u2,v1)} and {(u1,v2),(u3,v1)}
        assert_eq!(count_by_left_vertex(&g2, 0, &mut vec![false; 2]), 7);
        assert_eq!(all.len(), 7);
        assert_eq!(all[0], Matching::empty());

        let empty = BipartiteGraph::new(Vec::<&str>::new(), vec![], vec![]).unwrap();
        assert_eq!(
            empty.enumerate_matchings(24).unwrap(),
            vec![Matching::empty()]
        );

        let one = BipartiteGraph::new(vec!["a"], vec!["b"], vec![("a", "b")]).unwrap();
        assert_eq!(
            one.enumerate_matchings(24).unwrap(),
            vec![Matching::empty(), Matching::from_ids(vec![0])]
        );

        assert_eq!(
            g2.enumerate_matchings(3),
            Err(Error::OracleLimit { edges: 4, limit: 3 })
        );
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            BipartiteGraph::new(vec!["a"], vec!["a"], vec![]),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(matches!(
            BipartiteGraph::new(vec!["a"], vec!["b"], vec![("a", "b"), ("a", "b")]),
            Err(Error::DuplicateEdge(..))
        ));
        assert!(matches!(
            BipartiteGraph::new(vec!["a"], vec!["b"], vec![("b", "a")]),
            Err(Error::BadEdgeEndpoints(..))
        ));
        assert!(matches!(
            BipartiteGraph::new(vec!["a"], vec!["b"], vec![("a", "c")]),
            Err(Error::UnknownVertex(_))
        ));
    }
}
