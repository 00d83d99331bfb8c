//! Set families, the antimatroid axioms, and chain decorations.
//!
//! Members are bitmasks over the ground set (at most [`MAX_GROUND`]
//! elements). A family is always stored in canonical order: ascending
//! cardinality, then lexicographic on the sorted element positions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// A subset of the ground set; bit `i` is ground element `i`.
pub type SetMask = u32;

pub const MAX_GROUND: usize = 16;

fn elements(mask: SetMask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Canonical member order: cardinality, then lexicographic on positions.
pub fn canonical_cmp(a: SetMask, b: SetMask) -> Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| elements(a).cmp(elements(b)))
}

/// Which axiom fails, with the offending members spelled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum AxiomViolation {
    /// `∅` is not a member.
    EmptySet,
    /// No element of `member` can be removed while staying in the family.
    Accessibility { member: Vec<String> },
    /// `left ∪ right` is missing.
    UnionClosure {
        left: Vec<String>,
        right: Vec<String>,
        union: Vec<String>,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &[String]| format!("{{{}}}", s.join(","));
        match self {
            AxiomViolation::EmptySet => write!(f, "the empty set is not a member"),
            AxiomViolation::Accessibility { member } => {
                write!(f, "{} has no removable element", set(member))
            }
            AxiomViolation::UnionClosure { left, right, union } => write!(
                f,
                "{} ∪ {} = {} is not a member",
                set(left),
                set(right),
                set(union)
            ),
        }
    }
}

/// A family of subsets of a named ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: Vec<String>,
    members: Vec<SetMask>,
}

impl SetFamily {
    /// Builds a family from element names. Duplicate members are merged.
    pub fn new<S: AsRef<str>>(ground: &[S], sets: &[Vec<S>]) -> Result<Self> {
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_string()).collect();
        check_ground(&ground)?;
        let index: HashMap<&str, usize> = ground
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        let masks = sets
            .iter()
            .map(|set| {
                set.iter().try_fold(0, |m, e| {
                    index
                        .get(e.as_ref())
                        .map(|&i| m | (1 << i))
                        .ok_or_else(|| Error::UnknownElement(e.as_ref().to_string()))
                })
            })
            .collect::<Result<Vec<SetMask>>>()?;
        Ok(Self::from_parts(ground, masks))
    }

    /// Builds a family from masks; every mask must lie inside the ground set.
    pub fn from_masks<S: AsRef<str>>(
        ground: &[S],
        masks: impl IntoIterator<Item = SetMask>,
    ) -> Result<Self> {
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_string()).collect();
        check_ground(&ground)?;
        let full = full_mask(ground.len());
        let masks: Vec<SetMask> = masks.into_iter().collect();
        if let Some(&bad) = masks.iter().find(|&&m| m & !full != 0) {
            return Err(Error::UnknownElement(format!(
                "position {}",
                31 - (bad & !full).leading_zeros()
            )));
        }
        Ok(Self::from_parts(ground, masks))
    }

    pub(crate) fn from_parts(ground: Vec<String>, mut members: Vec<SetMask>) -> Self {
        members.sort_by(|&a, &b| canonical_cmp(a, b));
        members.dedup();
        SetFamily { ground, members }
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[SetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: SetMask) -> bool {
        self.members
            .binary_search_by(|&m| canonical_cmp(m, set))
            .is_ok()
    }

    pub fn full_mask(&self) -> SetMask {
        full_mask(self.ground.len())
    }

    pub fn names(&self, set: SetMask) -> Vec<String> {
        elements(set).map(|i| self.ground[i].clone()).collect()
    }

    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<SetMask> {
        names.iter().try_fold(0, |m, n| {
            self.ground
                .iter()
                .position(|g| g == n.as_ref())
                .map(|i| m | (1 << i))
                .ok_or_else(|| Error::UnknownElement(n.as_ref().to_string()))
        })
    }

    /// Members as sorted name lists, in canonical order.
    pub fn sets(&self) -> Vec<Vec<String>> {
        self.members.iter().map(|&m| self.names(m)).collect()
    }

    /// Same family viewed over another ground set containing every element
    /// used; handy for comparing families built independently.
    pub fn same_sets(&self, other: &SetFamily) -> bool {
        let mine: BTreeSet<Vec<String>> = self.sets().into_iter().collect();
        let theirs: BTreeSet<Vec<String>> = other.sets().into_iter().collect();
        mine == theirs
    }

    /// A nonempty member with no removable element, if any.
    pub fn accessibility_witness(&self) -> Option<SetMask> {
        self.members
            .iter()
            .copied()
            .find(|&x| x != 0 && !elements(x).any(|e| self.contains(x & !(1 << e))))
    }

    pub fn is_accessible(&self) -> bool {
        self.accessibility_witness().is_none()
    }

    /// Two members whose union is missing, if any.
    pub fn union_witness(&self) -> Option<(SetMask, SetMask)> {
        let present: HashSet<SetMask> = self.members.iter().copied().collect();
        for (i, &x) in self.members.iter().enumerate() {
            for &y in &self.members[i + 1..] {
                if !present.contains(&(x | y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_union_closed(&self) -> bool {
        self.union_witness().is_none()
    }

    /// `∅ ∈ 𝓕`, union-closure and accessibility, in that order.
    pub fn check_antimatroid(&self) -> Result<(), AxiomViolation> {
        if !self.contains(0) {
            return Err(AxiomViolation::EmptySet);
        }
        if let Some((x, y)) = self.union_witness() {
            return Err(AxiomViolation::UnionClosure {
                left: self.names(x),
                right: self.names(y),
                union: self.names(x | y),
            });
        }
        if let Some(x) = self.accessibility_witness() {
            return Err(AxiomViolation::Accessibility {
                member: self.names(x),
            });
        }
        Ok(())
    }

    pub fn is_antimatroid(&self) -> bool {
        self.check_antimatroid().is_ok()
    }

    /// `{ S \ X : X ∈ 𝓕 }`.
    pub fn complement(&self) -> SetFamily {
        let full = self.full_mask();
        Self::from_parts(
            self.ground.clone(),
            self.members.iter().map(|&m| full & !m).collect(),
        )
    }

    /// Contains the ground set and is closed under intersection.
    pub fn is_convex_geometry(&self) -> bool {
        let present: HashSet<SetMask> = self.members.iter().copied().collect();
        present.contains(&self.full_mask())
            && self
                .members
                .iter()
                .all(|&x| self.members.iter().all(|&y| present.contains(&(x & y))))
    }

    /// Members not strictly contained in another member.
    pub fn maximal_members(&self) -> Vec<SetMask> {
        self.members
            .iter()
            .copied()
            .filter(|&x| !self.members.iter().any(|&y| y != x && x & y == x))
            .collect()
    }

    /// Union of all members.
    pub fn union_of_members(&self) -> SetMask {
        self.members.iter().fold(0, |a, &m| a | m)
    }

    /// Picks a trace `d`, derives the chains, the order `≻*` and the rank
    /// `b`. With no seed, `d(X)` is the first removable element in ground
    /// order; with a seed it is a seeded random removable element.
    pub fn build_decoration(&self, tie_seed: Option<u64>) -> Result<ChainDecoration> {
        self.check_antimatroid().map_err(Error::NotAntimatroid)?;
        let mut rng = tie_seed.map(ChaCha8Rng::seed_from_u64);
        let mut trace = BTreeMap::new();
        for &x in self.members.iter().filter(|&&x| x != 0) {
            let removable: Vec<usize> = elements(x)
                .filter(|&e| self.contains(x & !(1 << e)))
                .collect();
            let pick = match rng.as_mut() {
                Some(rng) => *removable.choose(rng).expect("accessible"),
                None => removable[0],
            };
            trace.insert(x, pick);
        }
        let mut chains = BTreeMap::new();
        for &x in trace.keys() {
            let mut chain = Vec::with_capacity(x.count_ones() as usize);
            let mut rest = x;
            while rest != 0 {
                let e = trace[&rest];
                chain.push(e);
                rest &= !(1 << e);
            }
            chain.reverse();
            chains.insert(x, chain);
        }
        let feasible_order: Vec<SetMask> =
            self.members.iter().copied().filter(|&x| x != 0).collect();
        let n = feasible_order.len();
        let rank = feasible_order
            .iter()
            .enumerate()
            .map(|(pos, &x)| (x, n - pos))
            .collect();
        Ok(ChainDecoration {
            trace,
            chains,
            feasible_order,
            rank,
        })
    }
}

fn full_mask(n: usize) -> SetMask {
    if n >= 32 {
        SetMask::MAX
    } else {
        (1 << n) - 1
    }
}

fn check_ground(ground: &[String]) -> Result<()> {
    if ground.len() > MAX_GROUND {
        return Err(Error::GroundTooLarge {
            size: ground.len(),
            limit: MAX_GROUND,
        });
    }
    let mut seen = HashSet::new();
    match ground.iter().find(|g| !seen.insert(g.as_str())) {
        Some(dup) => Err(Error::DuplicateVertex(dup.clone())),
        None => Ok(()),
    }
}

/// Trace `d`, chain orders `≻^X`, total order `≻*` and rank `b` for an
/// antimatroid. Keys are member masks; elements are ground positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecoration {
    trace: BTreeMap<SetMask, usize>,
    chains: BTreeMap<SetMask, Vec<usize>>,
    feasible_order: Vec<SetMask>,
    rank: BTreeMap<SetMask, usize>,
}

impl ChainDecoration {
    /// `d(X)`.
    pub fn trace(&self, x: SetMask) -> Option<usize> {
        self.trace.get(&x).copied()
    }

    /// `a_1 ≻^X … ≻^X a_k`.
    pub fn chain(&self, x: SetMask) -> Option<&[usize]> {
        self.chains.get(&x).map(Vec::as_slice)
    }

    /// Nonempty members, most preferred under `≻*` first.
    pub fn feasible_order(&self) -> &[SetMask] {
        &self.feasible_order
    }

    /// `b(X)`.
    pub fn rank(&self, x: SetMask) -> Option<usize> {
        self.rank.get(&x).copied()
    }

    /// Checks every invariant against `family`, re-verifying prefix
    /// membership for each member.
    pub fn validate(&self, family: &SetFamily) -> Result<(), String> {
        let nonempty: Vec<SetMask> = family
            .members()
            .iter()
            .copied()
            .filter(|&x| x != 0)
            .collect();
        let keyed: Vec<SetMask> = self.trace.keys().copied().collect();
        let mut expected = nonempty.clone();
        expected.sort_unstable();
        if keyed != expected {
            return Err("trace is not defined on exactly the nonempty members".into());
        }
        for &x in &nonempty {
            let d = self.trace[&x];
            if x & (1 << d) == 0 || !family.contains(x & !(1 << d)) {
                return Err(format!("d({:?}) = {} is not removable", family.names(x), d));
            }
            let chain = self
                .chains
                .get(&x)
                .ok_or_else(|| format!("no chain for {:?}", family.names(x)))?;
            if chain.iter().fold(0, |m, &e| m | (1 << e)) != x
                || chain.len() != x.count_ones() as usize
            {
                return Err(format!(
                    "chain of {:?} is not an ordering of it",
                    family.names(x)
                ));
            }
            let mut prefix = 0;
            for (i, &a) in chain.iter().enumerate() {
                prefix |= 1 << a;
                if !family.contains(prefix) {
                    return Err(format!("prefix {:?} is not a member", family.names(prefix)));
                }
                let rest = chain[i + 1..].iter().fold(x, |m, &e| m & !(1 << e));
                if self.trace.get(&rest) != Some(&a) {
                    return Err(format!("chain of {:?} disagrees with d", family.names(x)));
                }
            }
        }
        let mut order = self.feasible_order.clone();
        order.sort_unstable();
        if order != expected {
            return Err("≻* is not an ordering of the nonempty members".into());
        }
        let position: HashMap<SetMask, usize> = self
            .feasible_order
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i))
            .collect();
        for &x in &nonempty {
            for &y in &nonempty {
                if x != y && x & y == x && position[&x] > position[&y] {
                    return Err(format!(
                        "{:?} ⊊ {:?} but comes later in ≻*",
                        family.names(x),
                        family.names(y)
                    ));
                }
                let (bx, by) = (self.rank.get(&x), self.rank.get(&y));
                let (Some(bx), Some(by)) = (bx, by) else {
                    return Err("rank is not defined on every nonempty member".into());
                };
                if x != y && ((bx > by) != (position[&x] < position[&y])) {
                    return Err("rank disagrees with ≻*".into());
                }
            }
        }
        let mut ranks: Vec<usize> = self.rank.values().copied().collect();
        ranks.sort_unstable();
        if ranks != (1..=nonempty.len()).collect::<Vec<_>>() || self.rank.len() != nonempty.len() {
            return Err("rank is not a bijection onto 1..=n".into());
        }
        Ok(())
    }
}

/// Ground element names `a`, `b`, `c`, … used by the generators.
pub fn letter_ground(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

/// A random antimatroid on `ground_size ≤ 16` letters: random chains grown
/// from `∅` one element at a time, closed under union.
pub fn random_antimatroid(ground_size: usize, seed: u64) -> SetFamily {
    assert!(ground_size <= MAX_GROUND);
    let ground = letter_ground(ground_size);
    let full = full_mask(ground_size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut members: BTreeSet<SetMask> = BTreeSet::from([0]);
        if ground_size > 0 {
            let steps = rng.gen_range(1..=2 * ground_size);
            for _ in 0..steps {
                let open: Vec<SetMask> = members.iter().copied().filter(|&m| m != full).collect();
                let base = open[rng.gen_range(0..open.len())];
                let missing: Vec<usize> =
                    (0..ground_size).filter(|&e| base & (1 << e) == 0).collect();
                let e = missing[rng.gen_range(0..missing.len())];
                members.insert(base | (1 << e));
            }
        }
        let family = SetFamily::from_parts(ground.clone(), union_closure(members));
        if family.is_antimatroid() {
            return family;
        }
    }
}

fn union_closure(seed: BTreeSet<SetMask>) -> Vec<SetMask> {
    let mut all = seed;
    let mut frontier: Vec<SetMask> = all.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        let current: Vec<SetMask> = all.iter().copied().collect();
        for y in current {
            if all.insert(x | y) {
                frontier.push(x | y);
            }
        }
    }
    all.into_iter().collect()
}

/// Every antimatroid on a ground set of `n ≤ 4` letters (elements may be
/// unused), by filtering all families of subsets that contain `∅`.
pub fn all_antimatroids(n: usize) -> Vec<SetFamily> {
    assert!(n <= 4, "2^(2^n) families would be enumerated");
    let ground = letter_ground(n);
    let nonempty: Vec<SetMask> = (1..(1u32 << n)).collect();
    (0u64..(1u64 << nonempty.len()))
        .filter_map(|pick| {
            let masks = std::iter::once(0).chain(
                nonempty
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick & (1 << i) != 0)
                    .map(|(_, &m)| m),
            );
            let f = SetFamily::from_parts(ground.clone(), masks.collect());
            f.is_antimatroid().then_some(f)
        })
        .collect()
}
