//! Matching instances whose induced family is a given antimatroid.
//!
//! Both constructions use `U = 𝓕 \ {∅}`, `V = S` and an edge `(X, v)` for
//! every `v ∈ X`. Left vertex `X` ranks its elements by its chain order
//! `≻^X`. In the stable instance each element ranks the members containing
//! it by `≻*`; in the weighted instance the edge to the `i`-th element of
//! `X`'s chain weighs a power of two whose exponent grows with `b(X)`.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::antimatroid::{ChainDecoration, SetFamily, SetMask};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::induced::{enumerate_codomain, InducedFamilyReport, InducedMap, Sweep};
use crate::stable::StableMatchingInstance;
use crate::subset::LeftSet;
use crate::weighted::{Weight, WeightedInstance};

/// Largest family accepted by [`verify_roundtrip`].
pub const MAX_ROUNDTRIP_MEMBERS: usize = 64;

/// Exponent rule for the weighted representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightFormula {
    /// `2^(|V|·b(u) + i)`: the last element of a chain weighs the most.
    Literal,
    /// `2^(|V|·b(u) + |V| + 1 − i)`: the first element of a chain weighs the
    /// most, so a matched edge drags its whole chain prefix along.
    #[default]
    Corrected,
}

impl WeightFormula {
    /// Exponent for the `i`-th (1-based) chain element of a member with rank `b`.
    pub fn exponent(self, ground: usize, b: usize, i: usize) -> usize {
        match self {
            WeightFormula::Literal => ground * b + i,
            WeightFormula::Corrected => ground * b + ground + 1 - i,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentationKind {
    Stable,
    Weighted(WeightFormula),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepresentedInstance {
    Stable(StableMatchingInstance),
    Weighted(WeightedInstance),
}

impl RepresentedInstance {
    pub fn graph(&self) -> &BipartiteGraph {
        match self {
            RepresentedInstance::Stable(i) => i.graph(),
            RepresentedInstance::Weighted(i) => i.graph(),
        }
    }

    /// Matched right side of `F(U')` as a ground-set mask.
    pub fn eval(&self, subset: &LeftSet) -> SetMask {
        let mask = subset.to_mask().expect("at most 64 left vertices");
        match self {
            RepresentedInstance::Stable(i) => i.eval(mask),
            RepresentedInstance::Weighted(i) => i.eval(mask),
        }
    }

    pub fn codomain(&self, sweep: Sweep) -> Result<InducedFamilyReport> {
        match self {
            RepresentedInstance::Stable(i) => enumerate_codomain(i, sweep),
            RepresentedInstance::Weighted(i) => enumerate_codomain(i, sweep),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            RepresentedInstance::Stable(i) => i.instance_json(),
            RepresentedInstance::Weighted(i) => i.instance_json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationBundle {
    pub source: SetFamily,
    pub decoration: ChainDecoration,
    pub instance: RepresentedInstance,
    /// Member represented by each left vertex, by left position. Left
    /// vertices are listed in `≻*` order.
    pub left_members: Vec<SetMask>,
}

impl RepresentationBundle {
    pub fn left_position(&self, member: SetMask) -> Option<usize> {
        self.left_members.iter().position(|&m| m == member)
    }

    /// For every nonempty `X` with chain `a_1 … a_k`, evaluates `F` on the
    /// prefixes `{a_1}, {a_1, a_2}, …, X` and returns the members where the
    /// result is not `X`.
    pub fn chain_prefix_failures(&self) -> Vec<SetMask> {
        self.left_members
            .iter()
            .copied()
            .filter(|&x| {
                let chain = self.decoration.chain(x).expect("decorated");
                let mut prefix = 0;
                let lefts: LeftSet = chain
                    .iter()
                    .map(|&a| {
                        prefix |= 1 << a;
                        self.left_position(prefix).expect("prefixes are members")
                    })
                    .collect();
                self.instance.eval(&lefts) != x
            })
            .collect()
    }
}

/// `X{mask}`, prefixed with `_` until it clashes with no ground element.
fn left_label(ground: &[String], member: SetMask) -> String {
    let mut label = format!("X{member}");
    while ground.contains(&label) {
        label.insert(0, '_');
    }
    label
}

fn skeleton(f: &SetFamily, deco: &ChainDecoration) -> Result<(BipartiteGraph, Vec<SetMask>)> {
    f.check_antimatroid().map_err(Error::NotAntimatroid)?;
    deco.validate(f).map_err(Error::BadDecoration)?;
    let members = deco.feasible_order().to_vec();
    let labels: Vec<String> = members.iter().map(|&m| left_label(f.ground(), m)).collect();
    let mut edges = Vec::new();
    for (label, &m) in labels.iter().zip(&members) {
        for &v in deco.chain(m).expect("validated") {
            edges.push((label.clone(), f.ground()[v].clone()));
        }
    }
    let g = BipartiteGraph::new(labels, f.ground().to_vec(), edges)?;
    Ok((g, members))
}

/// Stable instance with `≻_X = ≻^X` and `≻_v` the restriction of `≻*`.
pub fn represent_stable(f: &SetFamily, deco: &ChainDecoration) -> Result<RepresentationBundle> {
    let (g, members) = skeleton(f, deco)?;
    let left: Vec<Vec<usize>> = members
        .iter()
        .map(|&m| deco.chain(m).expect("validated").to_vec())
        .collect();
    let right: Vec<Vec<usize>> = (0..f.ground().len())
        .map(|v| {
            (0..members.len())
                .filter(|&u| members[u] & (1 << v) != 0)
                .collect()
        })
        .collect();
    let inst = StableMatchingInstance::from_positions(g, left, right)?;
    Ok(RepresentationBundle {
        source: f.clone(),
        decoration: deco.clone(),
        instance: RepresentedInstance::Stable(inst),
        left_members: members,
    })
}

/// Weighted instance with power-of-two weights from `formula`.
pub fn represent_weighted(
    f: &SetFamily,
    deco: &ChainDecoration,
    formula: WeightFormula,
) -> Result<RepresentationBundle> {
    let (g, members) = skeleton(f, deco)?;
    let ground = f.ground().len();
    let mut weights = Vec::with_capacity(g.edge_count());
    for &m in &members {
        let b = deco.rank(m).expect("validated");
        for i in 1..=deco.chain(m).expect("validated").len() {
            weights.push(Weight::from(
                BigInt::one() << formula.exponent(ground, b, i),
            ));
        }
    }
    let inst = WeightedInstance::new(g, weights)?;
    Ok(RepresentationBundle {
        source: f.clone(),
        decoration: deco.clone(),
        instance: RepresentedInstance::Weighted(inst),
        left_members: members,
    })
}

pub fn represent(
    f: &SetFamily,
    deco: &ChainDecoration,
    kind: RepresentationKind,
) -> Result<RepresentationBundle> {
    match kind {
        RepresentationKind::Stable => represent_stable(f, deco),
        RepresentationKind::Weighted(formula) => represent_weighted(f, deco, formula),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundtripReport {
    pub kind: RepresentationKind,
    /// Codomain equals the input family.
    pub equal: bool,
    /// Input members the codomain misses.
    pub missing: Vec<Vec<String>>,
    /// Codomain members outside the input family.
    pub extra: Vec<Vec<String>>,
    /// Members whose chain-prefix subset did not map back to them.
    pub prefix_failures: Vec<Vec<String>>,
    pub left_vertices: usize,
    pub full_sweep: bool,
}

/// Decorates `f`, builds the representation and compares its codomain with
/// `f`. Subsets are swept in full when `|U| ≤ sweep_limit` and through the
/// completely-matched walk otherwise.
pub fn verify_roundtrip(
    f: &SetFamily,
    kind: RepresentationKind,
    sweep_limit: usize,
) -> Result<RoundtripReport> {
    if f.len() > MAX_ROUNDTRIP_MEMBERS {
        return Err(Error::SweepLimit {
            size: f.len(),
            limit: MAX_ROUNDTRIP_MEMBERS,
        });
    }
    let deco = f.build_decoration(None)?;
    let bundle = represent(f, &deco, kind)?;
    let n = bundle.left_members.len();
    let full_sweep = n <= sweep_limit;
    let sweep = if full_sweep {
        Sweep::Full { limit: sweep_limit }
    } else {
        Sweep::Matched
    };
    let codomain = bundle.instance.codomain(sweep)?.family;
    let missing: Vec<Vec<String>> = f
        .members()
        .iter()
        .filter(|&&m| !codomain.contains(m))
        .map(|&m| f.names(m))
        .collect();
    let extra: Vec<Vec<String>> = codomain
        .members()
        .iter()
        .filter(|&&m| !f.contains(m))
        .map(|&m| f.names(m))
        .collect();
    let prefix_failures: Vec<Vec<String>> = bundle
        .chain_prefix_failures()
        .into_iter()
        .map(|m| f.names(m))
        .collect();
    Ok(RoundtripReport {
        kind,
        equal: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
        prefix_failures,
        left_vertices: n,
        full_sweep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antimatroid::random_antimatroid;

    fn fam(ground: &[&str], sets: &[&[&str]]) -> SetFamily {
        let sets: Vec<Vec<&str>> = sets.iter().map(|s| s.to_vec()).collect();
        SetFamily::new(ground, &sets).unwrap()
    }

    fn chain_ab() -> SetFamily {
        fam(&["a", "b"], &[&[], &["a"], &["a", "b"]])
    }

    fn example1_codomain() -> SetFamily {
        fam(
            &["v1", "v2", "v3"],
            &[&[], &["v1"], &["v2"], &["v1", "v2"], &["v1", "v2", "v3"]],
        )
    }

    #[test]
    fn stable_representation_of_a_chain() {
        let f = chain_ab();
        let deco = f.build_decoration(None).unwrap();
        let bundle = represent_stable(&f, &deco).unwrap();
        let RepresentedInstance::Stable(inst) = &bundle.instance else {
            unreachable!()
        };
        let g = inst.graph();
        assert_eq!(g.left(), &["X1", "X3"]);
        let edges: Vec<_> = g
            .edges()
            .iter()
            .map(|e| g.edge_names(e.id).unwrap())
            .collect();
        assert_eq!(edges, vec![("X1", "a"), ("X3", "a"), ("X3", "b")]);
        assert_eq!(inst.ranking("X3").unwrap(), vec!["a", "b"]);
        assert_eq!(inst.ranking("a").unwrap(), vec!["X1", "X3"]);
        assert_eq!(inst.ranking("b").unwrap(), vec!["X3"]);
        let codomain = bundle.instance.codomain(Sweep::Full { limit: 20 }).unwrap();
        assert_eq!(codomain.family, f);
    }

    #[test]
    fn empty_family_represents_as_an_empty_instance() {
        let f = fam(&[], &[&[]]);
        let deco = f.build_decoration(None).unwrap();
        for kind in [
            RepresentationKind::Stable,
            RepresentationKind::Weighted(WeightFormula::Literal),
            RepresentationKind::Weighted(WeightFormula::Corrected),
        ] {
            let bundle = represent(&f, &deco, kind).unwrap();
            assert!(bundle.instance.graph().left().is_empty());
            let r = verify_roundtrip(&f, kind, 20).unwrap();
            assert!(r.equal);
        }
    }

    #[test]
    fn weights_of_a_chain() {
        let f = chain_ab();
        let deco = f.build_decoration(None).unwrap();
        let pow = |k: usize| Weight::from(BigInt::one() << k);

        let bundle = represent_weighted(&f, &deco, WeightFormula::Corrected).unwrap();
        let RepresentedInstance::Weighted(inst) = &bundle.instance else {
            unreachable!()
        };
        assert_eq!(inst.weights().values(), &[pow(6), pow(4), pow(3)]);
        assert!(
            verify_roundtrip(
                &f,
                RepresentationKind::Weighted(WeightFormula::Corrected),
                20
            )
            .unwrap()
            .equal
        );

        let bundle = represent_weighted(&f, &deco, WeightFormula::Literal).unwrap();
        let RepresentedInstance::Weighted(inst) = &bundle.instance else {
            unreachable!()
        };
        assert_eq!(inst.weights().values(), &[pow(5), pow(3), pow(4)]);
        let x2 = inst.graph().left_set(["X3"]).unwrap();
        assert_eq!(
            inst.graph().right_names(&inst.induced_map(&x2).unwrap()),
            vec!["b"]
        );
        let r =
            verify_roundtrip(&f, RepresentationKind::Weighted(WeightFormula::Literal), 20).unwrap();
        assert!(!r.equal);
        assert_eq!(r.extra, vec![vec!["b".to_string()]]);
    }

    #[test]
    fn example1_codomain_roundtrips() {
        let f = example1_codomain();
        let deco = f.build_decoration(None).unwrap();
        let bundle = represent_stable(&f, &deco).unwrap();
        assert_eq!(bundle.instance.graph().left().len(), 4);
        for kind in [
            RepresentationKind::Stable,
            RepresentationKind::Weighted(WeightFormula::Corrected),
        ] {
            let r = verify_roundtrip(&f, kind, 20).unwrap();
            assert!(r.equal && r.prefix_failures.is_empty(), "{r:?}");
        }
    }

    #[test]
    fn weighted_exponents_are_distinct_and_banded() {
        for seed in 0..30 {
            let f = random_antimatroid(5, seed);
            let deco = f.build_decoration(None).unwrap();
            let ground = f.ground().len();
            let mut seen = std::collections::HashSet::new();
            for &m in deco.feasible_order() {
                let b = deco.rank(m).unwrap();
                for i in 1..=m.count_ones() as usize {
                    let e = WeightFormula::Corrected.exponent(ground, b, i);
                    assert!((ground * b + 1..=ground * b + ground).contains(&e));
                    assert!(seen.insert(e));
                }
            }
        }
    }

    #[test]
    fn label_clashes_are_avoided() {
        let f = fam(&["X1", "b"], &[&[], &["X1"]]);
        let deco = f.build_decoration(None).unwrap();
        let bundle = represent_stable(&f, &deco).unwrap();
        assert_eq!(bundle.instance.graph().left(), &["_X1"]);
    }

    #[test]
    fn non_antimatroids_are_rejected() {
        let bad = fam(&["a", "b"], &[&[], &["a"], &["b"]]);
        let good = chain_ab();
        let deco = good.build_decoration(None).unwrap();
        assert!(matches!(
            represent_stable(&bad, &deco),
            Err(Error::NotAntimatroid(_))
        ));
        let other = fam(&["a", "b"], &[&[], &["b"], &["a", "b"]]);
        assert!(matches!(
            represent_stable(&other, &deco),
            Err(Error::BadDecoration(_))
        ));
        assert!(verify_roundtrip(&bad, RepresentationKind::Stable, 20).is_err());
    }
}
