//! Stable matching instances and deferred acceptance.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId, Matching, Vertex};
use crate::subset::LeftSet;

const UNRANKED: usize = usize::MAX;

/// Strict rankings over neighbours, most preferred first, for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    /// Right positions, best first.
    left: Vec<Vec<usize>>,
    /// Left positions, best first.
    right: Vec<Vec<usize>>,
    /// `left_rank[u][v]`: rank of `v` in `u`'s list, `UNRANKED` if absent.
    left_rank: Vec<Vec<usize>>,
    right_rank: Vec<Vec<usize>>,
}

impl PreferenceProfile {
    pub fn left_ranking(&self, u: usize) -> &[usize] {
        &self.left[u]
    }

    pub fn right_ranking(&self, v: usize) -> &[usize] {
        &self.right[v]
    }

    /// Does `u` strictly prefer right vertex `a` to `b`?
    pub fn left_prefers(&self, u: usize, a: usize, b: usize) -> bool {
        self.left_rank[u][a] < self.left_rank[u][b]
    }

    /// Does `v` strictly prefer left vertex `a` to `b`?
    pub fn right_prefers(&self, v: usize, a: usize, b: usize) -> bool {
        self.right_rank[v][a] < self.right_rank[v][b]
    }
}

fn rank_table(lists: &[Vec<usize>], other_side: usize) -> Vec<Vec<usize>> {
    lists
        .iter()
        .map(|list| {
            let mut rank = vec![UNRANKED; other_side];
            for (i, &x) in list.iter().enumerate() {
                rank[x] = i;
            }
            rank
        })
        .collect()
}

/// `(G, ≻)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableMatchingInstance {
    graph: BipartiteGraph,
    prefs: PreferenceProfile,
}

/// How deferred acceptance picks the next proposer from the pending set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProposalOrder {
    /// Queue seeded in left-vertex input order; displaced vertices rejoin at the back.
    #[default]
    Fifo,
    /// Most recently added pending vertex first.
    Lifo,
    /// Uniformly random pending vertex at every step.
    Seeded(u64),
}

impl StableMatchingInstance {
    /// Builds an instance from rankings keyed by vertex id. Every vertex
    /// needs a ranking that is a permutation of its neighbours.
    pub fn new(graph: BipartiteGraph, prefs: &BTreeMap<String, Vec<String>>) -> Result<Self> {
        for key in prefs.keys() {
            graph.vertex(key)?;
        }
        let lookup = |id: &String, ranks_left: bool| -> Result<Vec<usize>> {
            let bad = |reason: String| Error::BadPreferences {
                vertex: id.clone(),
                reason,
            };
            let list = prefs.get(id).ok_or_else(|| bad("missing ranking".into()))?;
            list.iter()
                .map(|n| match (graph.vertex(n), ranks_left) {
                    (Ok(Vertex::Left(p)), true) | (Ok(Vertex::Right(p)), false) => Ok(p),
                    (Ok(_), _) => Err(bad(format!("`{n}` is on the same side"))),
                    (Err(_), _) => Err(bad(format!("unknown vertex `{n}`"))),
                })
                .collect()
        };
        let left = graph
            .left()
            .iter()
            .map(|id| lookup(id, false))
            .collect::<Result<Vec<_>>>()?;
        let right = graph
            .right()
            .iter()
            .map(|id| lookup(id, true))
            .collect::<Result<Vec<_>>>()?;
        Self::from_positions(graph, left, right)
    }

    /// Builds an instance from position-based rankings.
    pub fn from_positions(
        graph: BipartiteGraph,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let bad = |v: Vertex, reason: String| Error::BadPreferences {
            vertex: graph.vertex_name(v).to_string(),
            reason,
        };
        if left.len() != graph.left().len() || right.len() != graph.right().len() {
            return Err(Error::BadPreferences {
                vertex: String::new(),
                reason: "one ranking per vertex is required".into(),
            });
        }
        let sides = [(&left, true), (&right, false)];
        for (lists, is_left) in sides {
            for (pos, list) in lists.iter().enumerate() {
                let v = if is_left {
                    Vertex::Left(pos)
                } else {
                    Vertex::Right(pos)
                };
                let mut nbrs: Vec<usize> = graph
                    .incident(v)
                    .map(|e| if is_left { e.right } else { e.left })
                    .collect();
                for &x in list {
                    if !nbrs.contains(&x) {
                        let other = if is_left {
                            Vertex::Right(x)
                        } else {
                            Vertex::Left(x)
                        };
                        let name = if (is_left && x < graph.right().len())
                            || (!is_left && x < graph.left().len())
                        {
                            graph.vertex_name(other).to_string()
                        } else {
                            format!("position {x}")
                        };
                        return Err(bad(v, format!("`{name}` is not a neighbour")));
                    }
                }
                let mut sorted = list.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(bad(v, "a neighbour is ranked twice".into()));
                }
                nbrs.sort_unstable();
                if sorted != nbrs {
                    return Err(bad(v, "some neighbours are not ranked".into()));
                }
            }
        }
        let left_rank = rank_table(&left, graph.right().len());
        let right_rank = rank_table(&right, graph.left().len());
        Ok(StableMatchingInstance {
            graph,
            prefs: PreferenceProfile {
                left,
                right,
                left_rank,
                right_rank,
            },
        })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn prefs(&self) -> &PreferenceProfile {
        &self.prefs
    }

    /// Ranking of a vertex as ids, best first.
    pub fn ranking(&self, id: &str) -> Result<Vec<&str>> {
        Ok(match self.graph.vertex(id)? {
            Vertex::Left(u) => self.prefs.left[u]
                .iter()
                .map(|&v| self.graph.right()[v].as_str())
                .collect(),
            Vertex::Right(v) => self.prefs.right[v]
                .iter()
                .map(|&u| self.graph.left()[u].as_str())
                .collect(),
        })
    }

    /// Rankings keyed by vertex id, the inverse of [`StableMatchingInstance::new`].
    pub fn rankings(&self) -> BTreeMap<String, Vec<String>> {
        let g = &self.graph;
        g.left()
            .iter()
            .chain(g.right())
            .map(|id| {
                let r = self.ranking(id).expect("own vertex");
                (id.clone(), r.into_iter().map(String::from).collect())
            })
            .collect()
    }

    /// `(G, ≻)_X`: the graph restricted to `X`, each ranking filtered to the
    /// surviving neighbours in its original order.
    pub fn restrict<I, S>(&self, keep: I) -> Result<StableMatchingInstance>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let sub = self.graph.restrict(keep)?;
        let rankings = self
            .rankings()
            .into_iter()
            .filter(|(id, _)| sub.vertex(id).is_ok())
            .map(|(id, list)| {
                let kept = list.into_iter().filter(|n| sub.vertex(n).is_ok()).collect();
                (id, kept)
            })
            .collect();
        StableMatchingInstance::new(sub, &rankings)
    }

    /// `(G, ≻)_{U' ∪ V}`.
    pub fn restrict_left(&self, subset: &LeftSet) -> Result<StableMatchingInstance> {
        self.graph.check_left_set(subset)?;
        let keep: Vec<&String> = subset
            .iter()
            .map(|u| &self.graph.left()[u])
            .chain(self.graph.right())
            .collect();
        self.restrict(keep)
    }

    fn edge_of(&self, e: EdgeId) -> Result<(usize, usize)> {
        self.graph
            .edge(e)
            .map(|e| (e.left, e.right))
            .ok_or(Error::InvalidEdgeIndex(e))
    }

    /// Whether edge `e = (u, v)` blocks `m`: each endpoint is unmatched or
    /// strictly prefers the other to its partner.
    pub fn is_blocking_pair(&self, m: &Matching, e: EdgeId) -> Result<bool> {
        let (u, v) = self.edge_of(e)?;
        self.graph.matching(m.edges())?;
        Ok(self.blocks(m, u, v))
    }

    fn blocks(&self, m: &Matching, u: usize, v: usize) -> bool {
        let u_wants = match m.left_partner(&self.graph, u) {
            None => true,
            Some(cur) => self.prefs.left_prefers(u, v, cur),
        };
        let v_wants = match m.right_partner(&self.graph, v) {
            None => true,
            Some(cur) => self.prefs.right_prefers(v, u, cur),
        };
        u_wants && v_wants
    }

    /// No edge blocks `m`.
    pub fn is_stable(&self, m: &Matching) -> Result<bool> {
        self.graph.matching(m.edges())?;
        Ok(self
            .graph
            .edges()
            .iter()
            .all(|e| !self.blocks(m, e.left, e.right)))
    }

    /// `SM(G, ≻; U')`: deferred acceptance with proposers `U'` on the
    /// instance restricted to `U' ∪ V`.
    pub fn deferred_acceptance(&self, subset: &LeftSet, order: ProposalOrder) -> Result<Matching> {
        self.graph.check_left_set(subset)?;
        let mut run = Proposals::new(self);
        match order {
            ProposalOrder::Fifo => run.run_fifo(subset.iter()),
            ProposalOrder::Lifo => {
                let mut pending: Vec<usize> = subset.iter().collect();
                pending.reverse();
                while let Some(u) = pending.pop() {
                    if let Some(next) = run.step(u) {
                        pending.push(next);
                    }
                }
            }
            ProposalOrder::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut pending: Vec<usize> = subset.iter().collect();
                while !pending.is_empty() {
                    let i = rng.gen_range(0..pending.len());
                    let u = pending[i];
                    match run.step(u) {
                        Some(next) if next == u => {}
                        Some(next) => pending[i] = next,
                        None => {
                            pending.swap_remove(i);
                        }
                    }
                }
            }
        }
        Ok(run.matching())
    }

    /// `F(U')`: right positions matched by `SM(G, ≻; U')`, ascending.
    pub fn induced_map(&self, subset: &LeftSet) -> Result<Vec<usize>> {
        let m = self.deferred_acceptance(subset, ProposalOrder::Fifo)?;
        Ok(m.matched_right(&self.graph))
    }

    /// `Ch(U')`: left positions matched by `SM(G, ≻; U')`.
    pub fn choice_function(&self, subset: &LeftSet) -> Result<LeftSet> {
        let m = self.deferred_acceptance(subset, ProposalOrder::Fifo)?;
        Ok(m.matched_left(&self.graph))
    }

    /// All stable matchings, by filtering every matching of the graph.
    pub fn enumerate_stable_matchings(&self, limit: usize) -> Result<Vec<Matching>> {
        let mut out = Vec::new();
        self.graph.for_each_matching(limit, |ids| {
            let m = Matching::from_ids(ids.to_vec());
            if self.is_stable(&m).expect("enumerated matchings are valid") {
                out.push(m);
            }
        })?;
        Ok(out)
    }
}

/// Deferred acceptance state: how far down its list each proposer has gone
/// and who currently holds each right vertex. Cloning a state and feeding it
/// one more proposer computes `SM(U' + q)` from `SM(U')`.
#[derive(Debug, Clone)]
pub struct Proposals<'a> {
    inst: &'a StableMatchingInstance,
    /// Index of the next right vertex `u` will propose to (`R_u` is the
    /// suffix of its ranking from here).
    next: Vec<usize>,
    holder: Vec<Option<usize>>,
}

impl<'a> Proposals<'a> {
    pub(crate) fn new(inst: &'a StableMatchingInstance) -> Self {
        Proposals {
            inst,
            next: vec![0; inst.graph.left().len()],
            holder: vec![None; inst.graph.right().len()],
        }
    }

    /// One proposal by `u`. Returns the vertex that is still pending
    /// afterwards: `u` itself if rejected, the displaced vertex if `u`
    /// replaced someone, or `None` when nobody is left waiting.
    fn step(&mut self, u: usize) -> Option<usize> {
        let ranking = &self.inst.prefs.left[u];
        let Some(&v) = ranking.get(self.next[u]) else {
            // R_u is empty: u drops out unmatched.
            return None;
        };
        match self.holder[v] {
            None => {
                self.holder[v] = Some(u);
                None
            }
            Some(cur) if self.inst.prefs.right_prefers(v, cur, u) => {
                self.next[u] += 1;
                Some(u)
            }
            Some(cur) => {
                self.holder[v] = Some(u);
                self.next[cur] += 1;
                Some(cur)
            }
        }
    }

    pub(crate) fn run_fifo(&mut self, proposers: impl IntoIterator<Item = usize>) {
        let mut queue: VecDeque<usize> = proposers.into_iter().collect();
        while let Some(u) = queue.pop_front() {
            match self.step(u) {
                Some(next) if next == u => queue.push_front(u),
                Some(next) => queue.push_back(next),
                None => {}
            }
        }
    }

    pub(crate) fn right_mask(&self) -> u32 {
        self.holder
            .iter()
            .enumerate()
            .filter(|(_, h)| h.is_some())
            .fold(0, |m, (v, _)| m | (1 << v))
    }

    pub(crate) fn matching(&self) -> Matching {
        let g = &self.inst.graph;
        Matching::from_ids(
            self.holder
                .iter()
                .enumerate()
                .filter_map(|(v, h)| {
                    h.map(|u| g.edge_between(u, v).expect("proposals follow edges"))
                })
                .collect(),
        )
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn set(inst: &StableMatchingInstance, ids: &[&str]) -> LeftSet {
        inst.graph().left_set(ids).unwrap()
    }

    fn pairs(inst: &StableMatchingInstance, m: &Matching) -> Vec<(String, String)> {
        m.pairs(inst.graph())
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    fn p(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn restriction_filters_rankings() {
        let inst = example1();
        let all: Vec<&String> = inst
            .graph()
            .left()
            .iter()
            .chain(inst.graph().right())
            .collect();
        assert_eq!(inst.restrict(all).unwrap(), inst);

        let r = inst.restrict(["u1", "u3", "v1", "v2", "v3"]).unwrap();
        assert_eq!(r.ranking("v1").unwrap(), vec!["u3", "u1"]);
        assert_eq!(r.ranking("v3").unwrap(), Vec::<&str>::new());

        let only_v = inst.restrict(["v1", "v2", "v3"]).unwrap();
        assert!(only_v.graph().left().is_empty());
        for v in ["v1", "v2", "v3"] {
            assert!(only_v.ranking(v).unwrap().is_empty());
        }
        assert!(inst.restrict(["w"]).is_err());
    }

    #[test]
    fn blocking_pairs() {
        let inst = example1();
        let g = inst.graph();
        let m = g.matching_by_names(&[("u1", "v1")]).unwrap();
        let e = g.edge_by_names("u3", "v1").unwrap();
        assert!(inst.is_blocking_pair(&m, e).unwrap());
        // an edge of the matching never blocks it
        assert!(!inst
            .is_blocking_pair(&m, g.edge_by_names("u1", "v1").unwrap())
            .unwrap());

        let sm = g
            .matching_by_names(&[("u1", "v2"), ("u2", "v3"), ("u3", "v1")])
            .unwrap();
        for e in g.edges() {
            assert!(!inst.is_blocking_pair(&sm, e.id).unwrap());
        }
        assert_eq!(
            inst.is_blocking_pair(&sm, 99),
            Err(Error::InvalidEdgeIndex(99))
        );
    }

    #[test]
    fn stability() {
        let inst = example1();
        let g = inst.graph();
        let sm = g
            .matching_by_names(&[("u1", "v2"), ("u2", "v3"), ("u3", "v1")])
            .unwrap();
        assert!(inst.is_stable(&sm).unwrap());
        assert!(!inst.is_stable(&Matching::empty()).unwrap());

        let bare = StableMatchingInstance::new(
            BipartiteGraph::new(vec!["a"], vec!["b"], vec![]).unwrap(),
            &rankings(&[("a", &[]), ("b", &[])]),
        )
        .unwrap();
        assert!(bare.is_stable(&Matching::empty()).unwrap());
    }

    #[test]
    fn deferred_acceptance_on_example1() {
        let inst = example1();
        let full = LeftSet::full(3);
        for order in [
            ProposalOrder::Fifo,
            ProposalOrder::Lifo,
            ProposalOrder::Seeded(7),
        ] {
            let m = inst.deferred_acceptance(&full, order).unwrap();
            assert_eq!(
                pairs(&inst, &m),
                p(&[("u1", "v2"), ("u2", "v3"), ("u3", "v1")])
            );
        }
        assert!(inst
            .deferred_acceptance(&LeftSet::empty(), ProposalOrder::Fifo)
            .unwrap()
            .is_empty());
        let m = inst
            .deferred_acceptance(&set(&inst, &["u1", "u2"]), ProposalOrder::Fifo)
            .unwrap();
        assert_eq!(pairs(&inst, &m), p(&[("u1", "v2"), ("u2", "v1")]));
        assert!(inst
            .deferred_acceptance(&LeftSet::new(vec![5]), ProposalOrder::Fifo)
            .is_err());
    }

    #[test]
    fn induced_map_and_choice() {
        let inst = example1();
        let g = inst.graph();
        let f = |ids: &[&str]| g.right_names(&inst.induced_map(&set(&inst, ids)).unwrap());
        assert_eq!(f(&["u1", "u2", "u3"]), vec!["v1", "v2", "v3"]);
        assert!(f(&[]).is_empty());
        assert_eq!(f(&["u3"]), vec!["v2"]);

        let ch = inst.choice_function(&LeftSet::full(3)).unwrap();
        assert_eq!(ch, LeftSet::full(3));
        assert!(inst.choice_function(&LeftSet::empty()).unwrap().is_empty());

        let lonely = StableMatchingInstance::new(
            BipartiteGraph::new(vec!["u1", "u2"], vec!["v1"], vec![("u1", "v1")]).unwrap(),
            &rankings(&[("u1", &["v1"]), ("u2", &[]), ("v1", &["u1"])]),
        )
        .unwrap();
        assert_eq!(
            lonely.choice_function(&LeftSet::full(2)).unwrap(),
            LeftSet::new(vec![0])
        );
    }

    #[test]
    fn stable_matching_enumeration() {
        let bare = StableMatchingInstance::new(
            BipartiteGraph::new(vec!["a"], vec!["b"], vec![]).unwrap(),
            &rankings(&[("a", &[]), ("b", &[])]),
        )
        .unwrap();
        assert_eq!(
            bare.enumerate_stable_matchings(24).unwrap(),
            vec![Matching::empty()]
        );

        let inst = example1();
        let sm = inst
            .graph()
            .matching_by_names(&[("u1", "v2"), ("u2", "v3"), ("u3", "v1")])
            .unwrap();
        assert!(inst.enumerate_stable_matchings(24).unwrap().contains(&sm));

        let one = StableMatchingInstance::new(
            BipartiteGraph::new(vec!["a"], vec!["b"], vec![("a", "b")]).unwrap(),
            &rankings(&[("a", &["b"]), ("b", &["a"])]),
        )
        .unwrap();
        assert_eq!(
            one.enumerate_stable_matchings(24).unwrap(),
            vec![Matching::from_ids(vec![0])]
        );
    }

    #[test]
    fn bad_rankings_are_rejected() {
        let g = BipartiteGraph::new(vec!["a"], vec!["b", "c"], vec![("a", "b")]).unwrap();
        let non_neighbour = rankings(&[("a", &["b", "c"]), ("b", &["a"]), ("c", &[])]);
        assert!(matches!(
            StableMatchingInstance::new(g.clone(), &non_neighbour),
            Err(Error::BadPreferences { .. })
        ));
        let missing = rankings(&[("a", &["b"]), ("b", &["a"])]);
        assert!(StableMatchingInstance::new(g.clone(), &missing).is_err());
        let incomplete = rankings(&[("a", &[]), ("b", &["a"]), ("c", &[])]);
        assert!(StableMatchingInstance::new(g.clone(), &incomplete).is_err());
        let same_side = rankings(&[("a", &["a"]), ("b", &["a"]), ("c", &[])]);
        assert!(StableMatchingInstance::new(g.clone(), &same_side).is_err());
        let stray = rankings(&[("a", &["b"]), ("b", &["a"]), ("c", &[]), ("zz", &[])]);
        assert!(StableMatchingInstance::new(g, &stray).is_err());
    }

    #[test]
    fn incremental_proposals_match_a_fresh_run() {
        let inst = example1();
        let mut base = Proposals::new(&inst);
        base.run_fifo([0, 1]);
        let mut grown = base.clone();
        grown.run_fifo([2]);
        let fresh = inst
            .deferred_acceptance(&LeftSet::full(3), ProposalOrder::Fifo)
            .unwrap();
        assert_eq!(grown.matching(), fresh);
        assert_eq!(grown.right_mask(), 0b111);
    }
}
