//! Weighted matching instances and the canonical maximum-weight matching.
//!
//! Weights are exact rationals. Ties between maximum-weight matchings are
//! broken by edge index: the winner has the smallest `Σ 2^idx(e)`, i.e.
//! when two optimal matchings differ, the one that avoids the largest
//! differing edge index is chosen. The solver realizes this by maximizing
//! the perturbed integer weight
//!
//! ```text
//! w'(e) = w(e)·D·2^(|E|+1) − 2^idx(e)
//! ```
//!
//! where `D` is the common denominator of all weights. The exhaustive oracle
//! compares candidates directly instead.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use std::borrow::Cow;

use bnum::types::{I1024, I256, I512};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId, Matching};
use crate::subset::LeftSet;

/// An exact edge weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(BigRational);

impl Weight {
    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }
}

impl From<i64> for Weight {
    fn from(v: i64) -> Self {
        Weight(BigRational::from_integer(v.into()))
    }
}

impl From<BigInt> for Weight {
    fn from(v: BigInt) -> Self {
        Weight(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Weight {
    fn from(v: BigRational) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Parses integers (`-12`), decimals (`2.75`) and fractions (`5/3`).
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadWeight(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Weight(BigRational::new(n, d)));
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        let digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
        if (int.is_empty() && frac.is_empty()) || !digits(int) || !digits(frac) {
            return Err(bad());
        }
        let mantissa: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = BigRational::new(mantissa, scale);
        Ok(Weight(if neg { -value } else { value }))
    }
}

/// One exact weight per edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    values: Vec<Weight>,
    /// `values` times their common denominator.
    scaled: Vec<BigInt>,
}

impl WeightFunction {
    pub fn new(values: Vec<Weight>) -> Self {
        let denom = values
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.0.denom()));
        let scaled = values
            .iter()
            .map(|w| (w.0.clone() * BigRational::from_integer(denom.clone())).to_integer())
            .collect();
        WeightFunction { values, scaled }
    }

    pub fn values(&self) -> &[Weight] {
        &self.values
    }
}

/// `(G, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInstance {
    graph: BipartiteGraph,
    weights: WeightFunction,
    /// `w'(e)` by edge index.
    perturbed: Vec<BigInt>,
    /// `perturbed` in the narrowest fixed width that holds every path sum.
    fixed: Fixed,
    /// Per left vertex, `(right, edge)` in edge order.
    adj: Vec<Vec<(usize, EdgeId)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Fixed {
    I128(Vec<i128>),
    I256(Vec<I256>),
    I512(Vec<I512>),
    I1024(Vec<I1024>),
    None,
}

impl WeightedInstance {
    /// `weights[i]` belongs to the edge with index `i`.
    pub fn new(graph: BipartiteGraph, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != graph.id_space() || graph.edge_count() != graph.id_space() {
            return Err(Error::WeightCount {
                expected: graph.edge_count(),
                found: weights.len(),
            });
        }
        let weights = WeightFunction::new(weights);
        let mut adj = vec![Vec::new(); graph.left().len()];
        for e in graph.edges() {
            adj[e.left].push((e.right, e.id));
        }
        let shift = graph.id_space() + 1;
        let perturbed = weights
            .scaled
            .iter()
            .enumerate()
            .map(|(idx, w)| (w << shift) - (BigInt::one() << idx))
            .collect::<Vec<BigInt>>();
        // an alternating path has fewer than |U| + |V| + 1 edges
        let terms = (graph.left().len() + graph.right().len() + 1) as u64;
        let widest = perturbed.iter().map(BigInt::bits).max().unwrap_or(0)
            + (64 - terms.leading_zeros()) as u64;
        let fixed = if widest < 127 {
            Fixed::I128(
                perturbed
                    .iter()
                    .map(|w| i128::try_from(w).expect("checked width"))
                    .collect(),
            )
        } else if widest < 255 {
            Fixed::I256(perturbed.iter().map(fixed_width).collect())
        } else if widest < 511 {
            Fixed::I512(perturbed.iter().map(fixed_width).collect())
        } else if widest < 1023 {
            Fixed::I1024(perturbed.iter().map(fixed_width).collect())
        } else {
            Fixed::None
        };
        Ok(WeightedInstance {
            graph,
            weights,
            perturbed,
            fixed,
            adj,
        })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    pub fn weight(&self, e: EdgeId) -> Option<&Weight> {
        self.weights.values.get(e)
    }

    /// `w(M)`, exactly.
    pub fn matching_weight(&self, m: &Matching) -> Result<Weight> {
        self.graph.matching(m.edges())?;
        Ok(Weight(
            m.edges()
                .iter()
                .map(|&e| &self.weights.values[e].0)
                .fold(BigRational::zero(), |acc, w| acc + w),
        ))
    }

    /// `MM(G, w; U')`.
    pub fn max_weight_matching(&self, subset: &LeftSet) -> Result<Matching> {
        self.graph.check_left_set(subset)?;
        Ok(self.solve(&subset.flags(self.graph.left().len()), None))
    }

    /// Same contract as [`Self::max_weight_matching`], with the solver's
    /// scan order over vertices and edges shuffled by `seed`.
    pub fn max_weight_matching_shuffled(&self, subset: &LeftSet, seed: u64) -> Result<Matching> {
        self.graph.check_left_set(subset)?;
        Ok(self.solve(&subset.flags(self.graph.left().len()), Some(seed)))
    }

    /// `F(U')`: right positions covered by `MM(G, w; U')`.
    pub fn induced_map(&self, subset: &LeftSet) -> Result<Vec<usize>> {
        Ok(self.max_weight_matching(subset)?.matched_right(&self.graph))
    }

    /// `Ch(U')`: left positions covered by `MM(G, w; U')`.
    pub fn choice_function(&self, subset: &LeftSet) -> Result<LeftSet> {
        Ok(self.max_weight_matching(subset)?.matched_left(&self.graph))
    }

    /// Successive maximum-gain augmenting paths, found by Bellman–Ford over
    /// the alternating residual graph. Stops once no path has positive
    /// gain, which gives the maximum over all cardinalities because the
    /// gains never increase.
    pub(crate) fn solve(&self, active: &[bool], explore: Option<u64>) -> Matching {
        match &self.fixed {
            Fixed::I128(w) => self.augment(w, active, explore),
            Fixed::I256(w) => self.augment(w, active, explore),
            Fixed::I512(w) => self.augment(w, active, explore),
            Fixed::I1024(w) => self.augment(w, active, explore),
            Fixed::None => self.augment(&self.perturbed, active, explore),
        }
    }

    fn augment<T: Weightish>(
        &self,
        perturbed: &[T],
        active: &[bool],
        explore: Option<u64>,
    ) -> Matching {
        let mut res = Residual::new(self, perturbed, active, &Matching::empty());
        if let Some(seed) = explore {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            res.lefts.shuffle(&mut rng);
            for list in res.adj.to_mut() {
                list.shuffle(&mut rng);
            }
        }
        loop {
            let sources: Vec<usize> = res
                .lefts
                .iter()
                .copied()
                .filter(|&l| res.mate_left[l].is_none())
                .collect();
            let paths = res.longest(&sources);
            let best = (0..res.mate_right.len())
                .filter(|&r| res.mate_right[r].is_none())
                .filter_map(|r| paths.right[r].as_ref().map(|d| (d, r)))
                .max_by(|a, b| a.0.cmp(b.0).then(b.1.cmp(&a.1)));
            match best {
                Some((gain, end)) if gain.is_positive() => res.flip(end, &paths.via),
                _ => break,
            }
        }
        res.matching()
    }

    /// `MM(G, w; A + q)` from `current = MM(G, w; A)`. The two differ by one
    /// alternating path starting at `q`, so a single longest-path search from
    /// `q` finds it. Only valid when `current` really is `MM(G, w; A)`.
    pub(crate) fn grow(&self, current: &Matching, active: &[bool], q: usize) -> Matching {
        match &self.fixed {
            Fixed::I128(w) => self.grow_with(w, current, active, q),
            Fixed::I256(w) => self.grow_with(w, current, active, q),
            Fixed::I512(w) => self.grow_with(w, current, active, q),
            Fixed::I1024(w) => self.grow_with(w, current, active, q),
            Fixed::None => self.grow_with(&self.perturbed, current, active, q),
        }
    }

    fn grow_with<T: Weightish>(
        &self,
        perturbed: &[T],
        current: &Matching,
        active: &[bool],
        q: usize,
    ) -> Matching {
        let mut res = Residual::new(self, perturbed, active, current);
        let paths = res.longest(&[q]);
        // a path ends at a free right vertex, or at a left vertex that gives
        // up its partner
        let to_right = (0..res.mate_right.len())
            .filter(|&r| res.mate_right[r].is_none())
            .filter_map(|r| paths.right[r].clone().map(|d| (d, Some(r), None)));
        let to_left = res
            .lefts
            .iter()
            .filter(|&&l| l != q)
            .filter_map(|&l| paths.left[l].clone().map(|d| (d, None, Some(l))));
        let best = to_right.chain(to_left).max_by(|a, b| a.0.cmp(&b.0));
        match best {
            Some((gain, Some(r), _)) if gain.is_positive() => res.flip(r, &paths.via),
            Some((gain, _, Some(l))) if gain.is_positive() => {
                let (r, _) = res.mate_left[l]
                    .take()
                    .expect("reached through its partner");
                res.mate_right[r] = None;
                res.flip(r, &paths.via);
            }
            _ => {}
        }
        res.matching()
    }

    /// Exhaustive counterpart of [`Self::max_weight_matching`]: scans every
    /// matching of `G[U' ∪ V]` and keeps the canonical best. Fails when the
    /// restricted graph has more than `limit` edges.
    pub fn oracle_max_weight(&self, subset: &LeftSet, limit: usize) -> Result<Matching> {
        self.graph.check_left_set(subset)?;
        let sub = self.graph.restrict_left(subset);
        let mut best: Option<(Vec<EdgeId>, BigRational)> = None;
        sub.for_each_matching(limit, |ids| {
            let w = ids.iter().fold(BigRational::zero(), |acc, &e| {
                acc + &self.weights.values[e].0
            });
            let better = match &best {
                None => true,
                Some((b, bw)) => canonical_cmp(ids, &w, b, bw) == Ordering::Greater,
            };
            if better {
                best = Some((ids.to_vec(), w));
            }
        })?;
        Ok(Matching::from_ids(
            best.map(|(ids, _)| ids).unwrap_or_default(),
        ))
    }
}

fn fixed_width<const N: usize>(w: &BigInt) -> bnum::BInt<N> {
    bnum::BInt::from_le_slice(&w.to_signed_bytes_le()).expect("checked width")
}

/// Integer types the solver runs on.
trait Weightish: Clone + Ord {
    const ZERO: Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn is_positive(&self) -> bool {
        *self > Self::ZERO
    }
}

macro_rules! weightish {
    ($t:ty, $zero:expr) => {
        impl Weightish for $t {
            const ZERO: Self = $zero;

            fn plus(&self, other: &Self) -> Self {
                self + other
            }

            fn minus(&self, other: &Self) -> Self {
                self - other
            }
        }
    };
}

weightish!(i128, 0);
weightish!(I256, I256::ZERO);
weightish!(I512, I512::ZERO);
weightish!(I1024, I1024::ZERO);
weightish!(BigInt, BigInt::ZERO);

struct Residual<'a, T> {
    perturbed: &'a [T],
    lefts: Vec<usize>,
    /// Inactive vertices are never reached, so the full adjacency serves.
    adj: Cow<'a, [Vec<(usize, EdgeId)>]>,
    mate_left: Vec<Option<(usize, EdgeId)>>,
    mate_right: Vec<Option<(usize, EdgeId)>>,
}

struct Paths<T> {
    left: Vec<Option<T>>,
    right: Vec<Option<T>>,
    via: Vec<Option<(usize, EdgeId)>>,
}

impl<'a, T: Weightish> Residual<'a, T> {
    fn new(
        inst: &'a WeightedInstance,
        perturbed: &'a [T],
        active: &[bool],
        start: &Matching,
    ) -> Self {
        let g = &inst.graph;
        let (nl, nr) = (g.left().len(), g.right().len());
        let mut mate_left = vec![None; nl];
        let mut mate_right = vec![None; nr];
        for &id in start.edges() {
            let e = g.edge(id).expect("matching of this graph");
            mate_left[e.left] = Some((e.right, id));
            mate_right[e.right] = Some((e.left, id));
        }
        Residual {
            perturbed,
            lefts: (0..nl).filter(|&l| active[l]).collect(),
            adj: Cow::Borrowed(&inst.adj),
            mate_left,
            mate_right,
        }
    }

    /// Heaviest alternating paths from `sources`, by Bellman–Ford driven by
    /// a queue of left vertices whose distance improved.
    fn longest(&self, sources: &[usize]) -> Paths<T> {
        let (nl, nr) = (self.mate_left.len(), self.mate_right.len());
        let mut left: Vec<Option<T>> = vec![None; nl];
        let mut right: Vec<Option<T>> = vec![None; nr];
        let mut via = vec![None; nr];
        let mut queued = vec![false; nl];
        let mut queue = VecDeque::with_capacity(nl);
        for &l in sources {
            left[l] = Some(T::ZERO);
            queued[l] = true;
            queue.push_back(l);
        }
        while let Some(l) = queue.pop_front() {
            queued[l] = false;
            let dl = left[l].clone().expect("queued vertices are reached");
            for &(r, e) in &self.adj[l] {
                if self.mate_left[l].map(|(mr, _)| mr) == Some(r) {
                    continue;
                }
                let cand = dl.plus(&self.perturbed[e]);
                if right[r].as_ref().is_some_and(|d| cand <= *d) {
                    continue;
                }
                via[r] = Some((l, e));
                if let Some((l2, e2)) = self.mate_right[r] {
                    let back = cand.minus(&self.perturbed[e2]);
                    if left[l2].as_ref().is_none_or(|d| back > *d) {
                        left[l2] = Some(back);
                        if !queued[l2] {
                            queued[l2] = true;
                            queue.push_back(l2);
                        }
                    }
                }
                right[r] = Some(cand);
            }
        }
        Paths { left, right, via }
    }

    /// Switches the path ending at right vertex `end`.
    fn flip(&mut self, end: usize, via: &[Option<(usize, EdgeId)>]) {
        let mut r = end;
        loop {
            let (l, e) = via[r].expect("reached vertices have a predecessor");
            let previous = self.mate_left[l];
            self.mate_left[l] = Some((r, e));
            self.mate_right[r] = Some((l, e));
            match previous {
                None => break,
                Some((old_r, _)) => r = old_r,
            }
        }
    }

    fn matching(&self) -> Matching {
        Matching::from_ids(self.mate_left.iter().flatten().map(|&(_, e)| e).collect())
    }
}

/// `Greater` when matching `a` beats `b`: larger weight, or equal weight and
/// `b` holds the largest edge index on which the two differ.
pub fn canonical_cmp(a: &[EdgeId], wa: &BigRational, b: &[EdgeId], wb: &BigRational) -> Ordering {
    wa.cmp(wb).then_with(|| {
        let top_diff = a
            .iter()
            .filter(|e| !b.contains(e))
            .chain(b.iter().filter(|e| !a.contains(e)))
            .max();
        match top_diff {
            None => Ordering::Equal,
            Some(e) if b.contains(e) => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    })
}
