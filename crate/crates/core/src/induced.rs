//! The family `{ F(U') : U' ⊆ U }` induced by a matching instance, and the
//! monotonicity and choice-function properties of `F`.
//!
//! Two sweeps produce the family:
//!
//! * [`Sweep::Full`] evaluates `F` on all `2^|U|` subsets.
//! * [`Sweep::Matched`] walks only the subsets `A` that the matching covers
//!   completely (`|F(A)| = |A|`), growing them one vertex at a time in
//!   ascending order. `F(U') = F(Ch(U'))` for every `U'`, so these subsets
//!   already reach every member. The walk relies on such subsets being
//!   closed under taking subsets, which [`check_lemmas`] verifies
//!   separately and the tests cross-check against the full sweep.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::antimatroid::{AxiomViolation, SetFamily, SetMask, MAX_GROUND};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Matching};
use crate::stable::{Proposals, StableMatchingInstance};
use crate::subset::{mask_positions, masks_by_popcount, popcount_key, submasks, LeftSet};
use crate::weighted::WeightedInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    Stable,
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    /// Every subset; fails when `|U|` exceeds the limit.
    Full { limit: usize },
    /// Completely matched subsets only; needs `|U| ≤ 64`.
    Matched,
}

/// An induced map `F: 2^U → 2^V` that can be evaluated on bitmasks and
/// grown one left vertex at a time.
pub trait InducedMap: Sync {
    type State<'a>: Clone + Send + Sync
    where
        Self: 'a;

    fn graph(&self) -> &BipartiteGraph;
    fn kind(&self) -> InstanceKind;
    fn instance_json(&self) -> serde_json::Value;

    /// Matched left and right sides for `U' = mask`.
    fn covered(&self, mask: u64) -> (u64, SetMask);

    fn empty_state(&self) -> Self::State<'_>;
    /// State for `A + u` from the state for `A`.
    fn extend<'a>(&'a self, state: &Self::State<'a>, u: usize) -> Self::State<'a>;
    fn image(&self, state: &Self::State<'_>) -> SetMask;

    fn eval(&self, mask: u64) -> SetMask {
        self.covered(mask).1
    }
}

fn flags(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask & (1 << i) != 0).collect()
}

fn left_mask(set: &LeftSet) -> u64 {
    set.to_mask().expect("left side fits in 64 bits")
}

impl InducedMap for StableMatchingInstance {
    type State<'a> = Proposals<'a>;

    fn graph(&self) -> &BipartiteGraph {
        StableMatchingInstance::graph(self)
    }

    fn kind(&self) -> InstanceKind {
        InstanceKind::Stable
    }

    fn instance_json(&self) -> serde_json::Value {
        serde_json::to_value(crate::io::StableFile::from_instance(self)).expect("serializable")
    }

    fn covered(&self, mask: u64) -> (u64, SetMask) {
        let mut run = Proposals::new(self);
        run.run_fifo(mask_positions(mask));
        let m = run.matching();
        (left_mask(&m.matched_left(self.graph())), run.right_mask())
    }

    fn empty_state(&self) -> Proposals<'_> {
        Proposals::new(self)
    }

    fn extend<'a>(&'a self, state: &Proposals<'a>, u: usize) -> Proposals<'a> {
        let mut next = state.clone();
        next.run_fifo([u]);
        next
    }

    fn image(&self, state: &Proposals<'_>) -> SetMask {
        state.right_mask()
    }
}

impl InducedMap for WeightedInstance {
    /// `(A, MM(G, w; A), F(A))`.
    type State<'a> = (u64, Matching, SetMask);

    fn graph(&self) -> &BipartiteGraph {
        WeightedInstance::graph(self)
    }

    fn kind(&self) -> InstanceKind {
        InstanceKind::Weighted
    }

    fn instance_json(&self) -> serde_json::Value {
        serde_json::to_value(crate::io::WeightedFile::from_instance(self)).expect("serializable")
    }

    fn covered(&self, mask: u64) -> (u64, SetMask) {
        let g = WeightedInstance::graph(self);
        let m = self.solve(&flags(mask, g.left().len()), None);
        (left_mask(&m.matched_left(g)), m.right_mask(g))
    }

    fn empty_state(&self) -> (u64, Matching, SetMask) {
        (0, Matching::empty(), 0)
    }

    fn extend(&self, state: &(u64, Matching, SetMask), u: usize) -> (u64, Matching, SetMask) {
        let g = WeightedInstance::graph(self);
        let mask = state.0 | (1 << u);
        let m = self.grow(&state.1, &flags(mask, g.left().len()), u);
        let image = m.right_mask(g);
        (mask, m, image)
    }

    fn image(&self, state: &(u64, Matching, SetMask)) -> SetMask {
        state.2
    }
}

/// The induced family with one witness `U'` per member.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedFamilyReport {
    pub kind: InstanceKind,
    /// Family over the right vertex ids.
    pub family: SetFamily,
    /// For each member, the first `U'` (by popcount, then binary value)
    /// with `F(U') = member`.
    pub witnesses: BTreeMap<SetMask, LeftSet>,
    /// Left vertex ids, for naming witnesses.
    pub left: Vec<String>,
    /// The instance in its input-file form, kept for counterexample capture.
    pub instance: serde_json::Value,
}

impl InducedFamilyReport {
    /// Re-evaluates `F` on every witness.
    pub fn verify_witnesses<M: InducedMap>(&self, map: &M) -> bool {
        self.witnesses
            .iter()
            .all(|(&member, set)| map.eval(left_mask(set)) == member)
            && self.witnesses.len() == self.family.len()
    }
}

/// A theorem check that failed, with what is needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub kind: InstanceKind,
    pub violation: AxiomViolation,
    pub instance: serde_json::Value,
}

/// Runs the antimatroid axioms on an induced family.
pub fn check_theorem(report: &InducedFamilyReport) -> Result<(), Counterexample> {
    report
        .family
        .check_antimatroid()
        .map_err(|violation| Counterexample {
            kind: report.kind,
            violation,
            instance: report.instance.clone(),
        })
}

/// `{ F(U') : U' ⊆ U }` for a stable instance, by the full sweep.
pub fn enumerate_codomain_sm(
    inst: &StableMatchingInstance,
    sweep_limit: usize,
) -> Result<InducedFamilyReport> {
    enumerate_codomain(inst, Sweep::Full { limit: sweep_limit })
}

/// `{ F(U') : U' ⊆ U }` for a weighted instance, by the full sweep.
pub fn enumerate_codomain_mm(
    inst: &WeightedInstance,
    sweep_limit: usize,
) -> Result<InducedFamilyReport> {
    enumerate_codomain(inst, Sweep::Full { limit: sweep_limit })
}

pub fn enumerate_codomain<M: InducedMap>(map: &M, sweep: Sweep) -> Result<InducedFamilyReport> {
    let g = map.graph();
    let n = g.left().len();
    if g.right().len() > MAX_GROUND {
        return Err(Error::GroundTooLarge {
            size: g.right().len(),
            limit: MAX_GROUND,
        });
    }
    let witnesses = match sweep {
        Sweep::Full { limit } => {
            if n > limit || n >= 64 {
                return Err(Error::SweepLimit { size: n, limit });
            }
            full_sweep(map, n)
        }
        Sweep::Matched => {
            if n > 64 {
                return Err(Error::SweepLimit { size: n, limit: 64 });
            }
            matched_sweep(map, n)
        }
    };
    let family = SetFamily::from_parts(g.right().to_vec(), witnesses.keys().copied().collect());
    Ok(InducedFamilyReport {
        kind: map.kind(),
        family,
        witnesses: witnesses
            .into_iter()
            .map(|(k, m)| (k, LeftSet::from_mask(m)))
            .collect(),
        left: g.left().to_vec(),
        instance: map.instance_json(),
    })
}

fn full_sweep<M: InducedMap>(map: &M, n: usize) -> BTreeMap<SetMask, u64> {
    let order = masks_by_popcount(n);
    let images: Vec<SetMask> = order.par_iter().map(|&m| map.eval(m)).collect();
    let mut witnesses = BTreeMap::new();
    for (&mask, image) in order.iter().zip(images) {
        witnesses.entry(image).or_insert(mask);
    }
    witnesses
}

fn matched_sweep<M: InducedMap>(map: &M, n: usize) -> BTreeMap<SetMask, u64> {
    fn walk<'a, M: InducedMap>(
        map: &'a M,
        n: usize,
        mask: u64,
        from: usize,
        state: &M::State<'a>,
        out: &mut BTreeMap<SetMask, u64>,
    ) {
        record(out, map.image(state), mask);
        let size = mask.count_ones() + 1;
        for q in from..n {
            let next = map.extend(state, q);
            if map.image(&next).count_ones() == size {
                walk(map, n, mask | (1 << q), q + 1, &next, out);
            }
        }
    }
    fn record(out: &mut BTreeMap<SetMask, u64>, image: SetMask, mask: u64) {
        out.entry(image)
            .and_modify(|w| {
                if popcount_key(mask) < popcount_key(*w) {
                    *w = mask;
                }
            })
            .or_insert(mask);
    }

    let root = map.empty_state();
    let branches: Vec<BTreeMap<SetMask, u64>> = (0..n)
        .into_par_iter()
        .map(|q| {
            let mut out = BTreeMap::new();
            let next = map.extend(&root, q);
            if map.image(&next).count_ones() == 1 {
                walk(map, n, 1 << q, q + 1, &next, &mut out);
            }
            out
        })
        .collect();
    let mut witnesses = BTreeMap::new();
    record(&mut witnesses, map.image(&root), 0);
    for branch in branches {
        for (image, mask) in branch {
            record(&mut witnesses, image, mask);
        }
    }
    witnesses
}

/// `Ch` and `F` for every subset of `U`, indexed by mask.
#[derive(Debug, Clone)]
pub struct ImageTable {
    pub n: usize,
    pub choice: Vec<u64>,
    pub image: Vec<SetMask>,
}

impl ImageTable {
    pub fn build<M: InducedMap>(map: &M, limit: usize) -> Result<Self> {
        let n = map.graph().left().len();
        if n > limit || n >= 64 {
            return Err(Error::SweepLimit { size: n, limit });
        }
        let (choice, image) = (0..(1u64 << n))
            .into_par_iter()
            .map(|m| map.covered(m))
            .unzip();
        Ok(ImageTable { n, choice, image })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "property", rename_all = "kebab-case")]
pub enum PropertyViolation {
    /// `U2 ⊆ U1` but `F(U2) ⊄ F(U1)`.
    Monotonicity { smaller: u64, larger: u64 },
    /// `U2 ⊆ U1`, `|F(U1)| = |U1|`, yet `|F(U2)| ≠ |U2|`.
    FullMatchShrink { smaller: u64, larger: u64 },
    /// `Ch(Ch(U1) ∪ U2) ≠ Ch(U1 ∪ U2)`.
    PathIndependence { first: u64, second: u64 },
    /// `U1 ⊆ U2` but `|Ch(U1)| > |Ch(U2)|`.
    SizeMonotonicity { smaller: u64, larger: u64 },
    /// `Ch(U') ⊄ U'` or `|Ch(U')| ≠ |F(U')|`.
    ChoiceShape { set: u64 },
}

/// Monotonicity and the full-match property of `F` over all pairs
/// `U2 ⊆ U1`.
pub fn check_lemmas(table: &ImageTable) -> Result<(), PropertyViolation> {
    for larger in 0..(1u64 << table.n) {
        let f1 = table.image[larger as usize];
        let full = f1.count_ones() == larger.count_ones();
        for smaller in submasks(larger) {
            let f2 = table.image[smaller as usize];
            if f2 & !f1 != 0 {
                return Err(PropertyViolation::Monotonicity { smaller, larger });
            }
            if full && f2.count_ones() != smaller.count_ones() {
                return Err(PropertyViolation::FullMatchShrink { smaller, larger });
            }
        }
    }
    Ok(())
}

/// Path independence over all pairs and size monotonicity over all nested
/// pairs of the choice function.
pub fn check_choice_function(table: &ImageTable) -> Result<(), PropertyViolation> {
    let size = 1u64 << table.n;
    for a in 0..size {
        let ch_a = table.choice[a as usize];
        if ch_a & !a != 0 || ch_a.count_ones() != table.image[a as usize].count_ones() {
            return Err(PropertyViolation::ChoiceShape { set: a });
        }
        for b in 0..size {
            if table.choice[(ch_a | b) as usize] != table.choice[(a | b) as usize] {
                return Err(PropertyViolation::PathIndependence {
                    first: a,
                    second: b,
                });
            }
        }
        for smaller in submasks(a) {
            if table.choice[smaller as usize].count_ones() > ch_a.count_ones() {
                return Err(PropertyViolation::SizeMonotonicity { smaller, larger: a });
            }
        }
    }
    Ok(())
}
