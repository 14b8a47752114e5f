use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{check_elements, CanonicalError};
use crate::bits::Bits;
use crate::poset::{FinitePoset, PairRel};

/// Relation of a point to each constant, in constant order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrbitLabel(pub Vec<PairRel>);

impl OrbitLabel {
    pub fn of(p: &FinitePoset, consts: &[usize], x: usize) -> Self {
        OrbitLabel(consts.iter().map(|&c| p.rel(x, c)).collect())
    }

    /// True for the singleton block of a constant.
    pub fn is_constant(&self) -> bool {
        self.0.contains(&PairRel::Eq)
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", r.symbol())?;
        }
        write!(f, "]")
    }
}

pub type OrbitBlocks = BTreeMap<OrbitLabel, Vec<usize>>;

pub fn orbit_partition(p: &FinitePoset, consts: &[usize]) -> Result<OrbitBlocks, CanonicalError> {
    check_elements(p.len(), consts)?;
    let mut blocks: OrbitBlocks = BTreeMap::new();
    for x in 0..p.len() {
        blocks.entry(OrbitLabel::of(p, consts, x)).or_default().push(x);
    }
    Ok(blocks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitCompare {
    StrictlyBelow,
    StrictlyAbove,
    Incomparable,
    /// `X ≤ Y`, `Y ≰ X`, and not `X < Y`.
    DivBelow,
    DivAbove,
    Same,
}

impl OrbitCompare {
    pub fn converse(self) -> Self {
        use OrbitCompare::*;
        match self {
            StrictlyBelow => StrictlyAbove,
            StrictlyAbove => StrictlyBelow,
            DivBelow => DivAbove,
            DivAbove => DivBelow,
            other => other,
        }
    }
}

/// `X ≤ Y`: some `x ∈ X`, `y ∈ Y` with `x ≤ y`.
pub fn block_le(p: &FinitePoset, xs: &[usize], ys: &[usize]) -> bool {
    xs.iter().any(|&x| ys.iter().any(|&y| p.le(x, y)))
}

/// `X < Y`: every `x ∈ X` is below every `y ∈ Y`.
pub fn block_lt(p: &FinitePoset, xs: &[usize], ys: &[usize]) -> bool {
    xs.iter().all(|&x| ys.iter().all(|&y| p.lt(x, y)))
}

fn lookup<'a>(blocks: &'a OrbitBlocks, label: &OrbitLabel) -> Result<&'a [usize], CanonicalError> {
    blocks
        .get(label)
        .map(Vec::as_slice)
        .ok_or_else(|| CanonicalError::UnknownLabel(label.clone()))
}

pub fn orbit_compare(
    p: &FinitePoset,
    consts: &[usize],
    x: &OrbitLabel,
    y: &OrbitLabel,
) -> Result<OrbitCompare, CanonicalError> {
    let blocks = orbit_partition(p, consts)?;
    compare_blocks(p, lookup(&blocks, x)?, lookup(&blocks, y)?, x == y)
}

fn compare_blocks(
    p: &FinitePoset,
    xs: &[usize],
    ys: &[usize],
    same: bool,
) -> Result<OrbitCompare, CanonicalError> {
    if same {
        return Ok(OrbitCompare::Same);
    }
    let (le, ge) = (block_le(p, xs, ys), block_le(p, ys, xs));
    Ok(match (le, ge) {
        (false, false) => OrbitCompare::Incomparable,
        (true, false) if block_lt(p, xs, ys) => OrbitCompare::StrictlyBelow,
        (true, false) => OrbitCompare::DivBelow,
        (false, true) if block_lt(p, ys, xs) => OrbitCompare::StrictlyAbove,
        (false, true) => OrbitCompare::DivAbove,
        // Two distinct blocks cannot be ≤ each other: the constant on which
        // their labels differ would have to relate to both the same way.
        (true, true) => {
            return Err(CanonicalError::Certification(
                "distinct blocks below each other".into(),
            ))
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderViolation {
    Reflexivity { block: OrbitLabel },
    Antisymmetry { x: OrbitLabel, y: OrbitLabel, witnesses: [(usize, usize); 2] },
    /// `X ≤ Y` by `(x, y)` and `Y ≤ Z` by `(y2, z)`, but `X ≰ Z`.
    Transitivity {
        x: OrbitLabel,
        y: OrbitLabel,
        z: OrbitLabel,
        witnesses: [(usize, usize); 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitOrderReport {
    pub blocks: OrbitBlocks,
    pub violations: Vec<OrderViolation>,
    /// Number of `(X, Y, Z)` block triples whose transitivity was checked.
    pub triples_checked: usize,
}

impl OrbitOrderReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `≤` on blocks is a partial order.
///
/// With a `core`, transitivity is only demanded when one of the two middle
/// witnesses lies in the core: if `y ∈ core` realizes `X ≤ Y`, the one-point
/// extension over the constants and `y` copying the type of `z` over the
/// constants and `y2` supplies a `Z`-point above `y` (dually for `y2`). This
/// is what a depth `|consts| + 1` certificate over `core ⊇ consts` covers.
pub fn verify_orbit_order(
    p: &FinitePoset,
    consts: &[usize],
    core: Option<&[usize]>,
) -> Result<OrbitOrderReport, CanonicalError> {
    let blocks = orbit_partition(p, consts)?;
    if let Some(core) = core {
        check_elements(p.len(), core)?;
    }
    let in_core = core.map(|c| Bits::from_indices(p.len(), c.iter().copied()));
    let labels: Vec<&OrbitLabel> = blocks.keys().collect();
    let k = labels.len();
    // For each ordered block pair: every (x, y) with x ≤ y, kept per y.
    let mut le_pairs: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (i, li) in labels.iter().enumerate() {
        for (j, lj) in labels.iter().enumerate() {
            let mut pairs = Vec::new();
            for &x in &blocks[*li] {
                for &y in &blocks[*lj] {
                    if p.le(x, y) {
                        pairs.push((x, y));
                    }
                }
            }
            le_pairs.insert((i, j), pairs);
        }
    }
    let mut violations = Vec::new();
    for (i, li) in labels.iter().enumerate() {
        if le_pairs[&(i, i)].is_empty() {
            violations.push(OrderViolation::Reflexivity { block: (*li).clone() });
        }
        for j in i + 1..k {
            if let (Some(&a), Some(&b)) = (le_pairs[&(i, j)].first(), le_pairs[&(j, i)].first()) {
                violations.push(OrderViolation::Antisymmetry {
                    x: (*li).clone(),
                    y: labels[j].clone(),
                    witnesses: [a, b],
                });
            }
        }
    }
    let mut triples_checked = 0;
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                if i == j || j == l || i == l {
                    continue;
                }
                let (first, second) = (&le_pairs[&(i, j)], &le_pairs[&(j, l)]);
                if first.is_empty() || second.is_empty() {
                    continue;
                }
                let admitted = match &in_core {
                    None => Some((first[0], second[0])),
                    Some(core) => first
                        .iter()
                        .find(|&&(_, y)| core.contains(y))
                        .map(|&a| (a, second[0]))
                        .or_else(|| {
                            second
                                .iter()
                                .find(|&&(y, _)| core.contains(y))
                                .map(|&b| (first[0], b))
                        }),
                };
                let Some((a, b)) = admitted else { continue };
                triples_checked += 1;
                if le_pairs[&(i, l)].is_empty() {
                    violations.push(OrderViolation::Transitivity {
                        x: labels[i].clone(),
                        y: labels[j].clone(),
                        z: labels[l].clone(),
                        witnesses: [a, b],
                    });
                }
            }
        }
    }
    Ok(OrbitOrderReport { blocks, violations, triples_checked })
}

/// Type of an ordered pair over the constants: both labels and the relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairTypeOver {
    pub first: OrbitLabel,
    pub second: OrbitLabel,
    pub rel: PairRel,
}

pub fn pair_type_over(p: &FinitePoset, consts: &[usize], a: usize, b: usize) -> PairTypeOver {
    PairTypeOver {
        first: OrbitLabel::of(p, consts, a),
        second: OrbitLabel::of(p, consts, b),
        rel: p.rel(a, b),
    }
}

/// Two source pairs of equal type whose images differ in type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalWitness {
    pub pair: (usize, usize),
    pub other: (usize, usize),
}

impl fmt::Display for CanonicalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) and ({}, {}) have equal type but images of different type",
            self.pair.0, self.pair.1, self.other.0, self.other.1
        )
    }
}

/// `Ok(None)` when `f` is canonical from `(src, src_consts)` to
/// `(dst, dst_consts)` at the level of pairs (including `a = b`), otherwise
/// a violating quadruple.
pub fn is_canonical_map(
    src: &FinitePoset,
    src_consts: &[usize],
    dst: &FinitePoset,
    dst_consts: &[usize],
    f: &[usize],
) -> Result<Option<CanonicalWitness>, CanonicalError> {
    check_elements(src.len(), src_consts)?;
    check_elements(dst.len(), dst_consts)?;
    if f.len() != src.len() {
        return Err(CanonicalError::MapLength { expected: src.len(), found: f.len() });
    }
    check_elements(dst.len(), f)?;
    let src_labels: Vec<OrbitLabel> =
        (0..src.len()).map(|x| OrbitLabel::of(src, src_consts, x)).collect();
    let dst_labels: Vec<OrbitLabel> =
        (0..dst.len()).map(|x| OrbitLabel::of(dst, dst_consts, x)).collect();
    let mut seen: HashMap<PairTypeOver, (PairTypeOver, (usize, usize))> = HashMap::new();
    for a in 0..src.len() {
        for b in 0..src.len() {
            let t = PairTypeOver {
                first: src_labels[a].clone(),
                second: src_labels[b].clone(),
                rel: src.rel(a, b),
            };
            let image = PairTypeOver {
                first: dst_labels[f[a]].clone(),
                second: dst_labels[f[b]].clone(),
                rel: dst.rel(f[a], f[b]),
            };
            match seen.get(&t) {
                Some((prev, pair)) if *prev != image => {
                    return Ok(Some(CanonicalWitness { pair: *pair, other: (a, b) }));
                }
                Some(_) => {}
                None => {
                    seen.insert(t, (image, (a, b)));
                }
            }
        }
    }
    Ok(None)
}
