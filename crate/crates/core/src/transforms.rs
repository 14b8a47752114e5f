//! Reverse, turn and rotation on finite posets.
//!
//! A turn keeps the carrier and outputs the turned order ⊴_F: the up-set `F`
//! is placed below its complement `I`, and every cross pair flips between
//! "comparable" and "incomparable" (an `I`-element that was below an
//! `F`-element becomes incomparable to it, an incomparable cross pair becomes
//! `F`-below-`I`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::poset::{AxiomViolation, FinitePoset, PairRel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("element {element} out of range for poset of size {n}")]
    IndexOutOfRange { element: usize, n: usize },
    #[error("turn set is not upward closed: {below} is in it but {above} above it is not")]
    Role { below: usize, above: usize },
    #[error("invalid rotation partition: {0}")]
    Partition(String),
    #[error("rewritten relation is not a partial order: {0}")]
    Closure(AxiomViolation),
    #[error("cannot separate: {outside} lies above {inside}")]
    NotSeparable { inside: usize, outside: usize },
    #[error("no admissible second turn: {0}")]
    StrategyFailure(String),
}

pub fn reverse(p: &FinitePoset) -> FinitePoset {
    p.dual()
}

/// An upward closed set `F` (the complement `I` is implied).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnSpec {
    members: Bits,
}

impl TurnSpec {
    /// Validates that `members` is upward closed in `p`.
    pub fn new(p: &FinitePoset, members: &[usize]) -> Result<Self, TransformError> {
        for &m in members {
            if m >= p.len() {
                return Err(TransformError::IndexOutOfRange { element: m, n: p.len() });
            }
        }
        let set = Bits::from_indices(p.len(), members.iter().copied());
        Self::from_bits(p, set)
    }

    pub fn from_bits(p: &FinitePoset, set: Bits) -> Result<Self, TransformError> {
        for x in set.iter() {
            if let Some(y) = p.strictly_above(x).iter().find(|&y| !set.contains(y)) {
                return Err(TransformError::Role { below: x, above: y });
            }
        }
        Ok(TurnSpec { members: set })
    }

    pub fn empty(p: &FinitePoset) -> Self {
        TurnSpec { members: Bits::new(p.len()) }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn bits(&self) -> &Bits {
        &self.members
    }

    /// The complement `I`.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&x| !self.contains(x)).collect()
    }
}

/// The three defining clauses of ⊴_F, in this order: both in `F` and
/// `x ≤ y`; both in `I` and `x ≤ y`; `x ∈ F`, `y ∈ I` and `y ≰ x`.
/// Clauses can be switched off for mutation testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurnClauses {
    pub enabled: [bool; 3],
}

impl Default for TurnClauses {
    fn default() -> Self {
        TurnClauses::STANDARD
    }
}

impl TurnClauses {
    pub const STANDARD: TurnClauses = TurnClauses { enabled: [true; 3] };

    pub fn without(clause: usize) -> Self {
        let mut enabled = [true; 3];
        enabled[clause] = false;
        TurnClauses { enabled }
    }

    /// Strict turned order `x ◁_F y` from the original relation of `x` to `y`
    /// and the memberships of `x` and `y` in `F`.
    pub fn strictly_below(&self, rel: PairRel, x_in_f: bool, y_in_f: bool) -> bool {
        if rel == PairRel::Eq {
            return false;
        }
        match (x_in_f, y_in_f) {
            (true, true) => self.enabled[0] && rel == PairRel::Lt,
            (false, false) => self.enabled[1] && rel == PairRel::Lt,
            // y ≰ x, i.e. not y < x
            (true, false) => self.enabled[2] && rel != PairRel::Gt,
            (false, true) => false,
        }
    }

    /// Turned relation of `x` to `y`.
    pub fn turned_rel(&self, rel: PairRel, x_in_f: bool, y_in_f: bool) -> PairRel {
        if rel == PairRel::Eq {
            PairRel::Eq
        } else if self.strictly_below(rel, x_in_f, y_in_f) {
            PairRel::Lt
        } else if self.strictly_below(rel.converse(), y_in_f, x_in_f) {
            PairRel::Gt
        } else {
            PairRel::Inc
        }
    }
}

pub fn turn(p: &FinitePoset, spec: &TurnSpec) -> Result<FinitePoset, TransformError> {
    turn_with(p, spec, &TurnClauses::STANDARD)
}

/// The turned order under the given clause set. The result is validated
/// against the poset axioms.
pub fn turn_with(
    p: &FinitePoset,
    spec: &TurnSpec,
    clauses: &TurnClauses,
) -> Result<FinitePoset, TransformError> {
    if spec.members.len() != p.len() {
        return Err(TransformError::Partition(format!(
            "turn set built for {} elements, poset has {}",
            spec.members.len(),
            p.len()
        )));
    }
    FinitePoset::from_predicate(p.len(), |x, y| {
        clauses.strictly_below(p.rel(x, y), spec.contains(x), spec.contains(y))
    })
    .map_err(|e| match e {
        crate::poset::PosetError::Axiom(v) => TransformError::Closure(v),
        other => TransformError::Partition(other.to_string()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Block {
    X,
    Y,
    Z,
}

/// Partition `{X, Y, Z}` for a rotation: `X` downward closed, `Z` upward
/// closed, `X < Z` elementwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationPartition {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

impl RotationPartition {
    pub fn new(x: Vec<usize>, y: Vec<usize>, z: Vec<usize>) -> Self {
        RotationPartition { x, y, z }
    }

    /// The turn partition `{∅, I, F}`.
    pub fn for_turn(spec: &TurnSpec) -> Self {
        RotationPartition::new(Vec::new(), spec.complement(), spec.members())
    }

    /// Block of each element, checking that the blocks partition `0..n`.
    pub fn blocks(&self, n: usize) -> Result<Vec<Block>, TransformError> {
        let mut block = vec![None; n];
        for (members, b) in [(&self.x, Block::X), (&self.y, Block::Y), (&self.z, Block::Z)] {
            for &m in members {
                if m >= n {
                    return Err(TransformError::IndexOutOfRange { element: m, n });
                }
                if block[m].replace(b).is_some() {
                    return Err(TransformError::Partition(format!(
                        "element {m} appears in more than one block"
                    )));
                }
            }
        }
        block
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                b.ok_or_else(|| {
                    TransformError::Partition(format!("element {i} is in no block"))
                })
            })
            .collect()
    }
}

/// Why a pair cannot be rewritten by the rotation rules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPrecondition {
    pub a: usize,
    pub b: usize,
    pub blocks: (Block, Block),
    pub found: PairRel,
}

/// Rotated relation of `a` to `b`, or `None` when the input relation is one
/// the roles rule out (`y < x`, `z < y`, or `X–Z` not `Lt`).
pub fn rotated_rel(rel: PairRel, a: Block, b: Block) -> Option<PairRel> {
    use Block::*;
    use PairRel::*;
    if a == b || rel == Eq {
        return Some(rel);
    }
    // Normalize to a block order X < Y < Z and flip back at the end.
    let rank = |blk: Block| match blk {
        X => 0,
        Y => 1,
        Z => 2,
    };
    if rank(a) > rank(b) {
        return rotated_rel(rel.converse(), b, a).map(PairRel::converse);
    }
    match (a, b, rel) {
        (X, Z, Lt) => Some(Gt),
        (X, Y, Inc) | (Y, Z, Inc) => Some(Gt),
        (X, Y, Lt) | (Y, Z, Lt) => Some(Inc),
        _ => None,
    }
}

/// Checks block roles on the whole poset.
fn check_partition(p: &FinitePoset, blocks: &[Block]) -> Result<(), TransformError> {
    for a in 0..p.len() {
        for b in 0..p.len() {
            if rotated_rel(p.rel(a, b), blocks[a], blocks[b]).is_none() && blocks[a] < blocks[b] {
                return Err(TransformError::Partition(format!(
                    "{a} ({:?}) {} {b} ({:?}) is not allowed",
                    blocks[a],
                    p.rel(a, b).symbol(),
                    blocks[b]
                )));
            }
        }
    }
    Ok(())
}

pub fn rotate(p: &FinitePoset, part: &RotationPartition) -> Result<FinitePoset, TransformError> {
    let blocks = part.blocks(p.len())?;
    check_partition(p, &blocks)?;
    FinitePoset::from_predicate(p.len(), |a, b| {
        rotated_rel(p.rel(a, b), blocks[a], blocks[b]) == Some(PairRel::Lt)
    })
    .map_err(|e| match e {
        crate::poset::PosetError::Axiom(v) => TransformError::Closure(v),
        other => TransformError::Partition(other.to_string()),
    })
}

/// Minimal up-set containing `inside` and avoiding `outside`.
pub fn find_separating_upset(
    p: &FinitePoset,
    inside: &[usize],
    outside: &[usize],
) -> Result<TurnSpec, TransformError> {
    find_separating_upset_widened(p, inside, outside, &[])
}

/// Minimal up-set containing `inside` and `widen` and avoiding `outside`.
pub fn find_separating_upset_widened(
    p: &FinitePoset,
    inside: &[usize],
    outside: &[usize],
    widen: &[usize],
) -> Result<TurnSpec, TransformError> {
    for &e in inside.iter().chain(outside).chain(widen) {
        if e >= p.len() {
            return Err(TransformError::IndexOutOfRange { element: e, n: p.len() });
        }
    }
    let wanted: Vec<usize> = inside.iter().chain(widen).copied().collect();
    if let Some(&both) = wanted.iter().find(|i| outside.contains(i)) {
        return Err(TransformError::NotSeparable { inside: both, outside: both });
    }
    for &i in &wanted {
        if let Some(&o) = outside.iter().find(|&&o| p.lt(i, o)) {
            return Err(TransformError::NotSeparable { inside: i, outside: o });
        }
    }
    let up = p.up_closure(&Bits::from_indices(p.len(), wanted.iter().copied()));
    TurnSpec::from_bits(p, up)
}

/// How the second filter of a two-turn composition is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComposeStrategy {
    /// Target the rotation with `X = P∖F`, `Z = designated ⊆ F`,
    /// `Y = F∖Z`; the second filter is the up-closure of `Z` in the turned
    /// order.
    Designated(Vec<usize>),
    /// `Designated` with `Z = { z ∈ F : x < z for every in-scope x ∉ F }`.
    MaximalOverScope,
    /// Second filter is the up-closure of the turned image of `I = P∖F`;
    /// the targeted rotation is `{∅, I, F}`, i.e. the first turn itself.
    ComplementImage,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDeviation {
    pub a: usize,
    pub b: usize,
    pub original: PairRel,
    /// Relation after the two turns.
    pub composed: PairRel,
    /// Relation demanded by the rotation rules, if the pair satisfies their
    /// preconditions.
    pub expected: Option<PairRel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeReport {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub partition: RotationPartition,
    /// Deviations among in-scope pairs; the check passes iff this is empty.
    pub deviations: Vec<PairDeviation>,
    /// Deviations involving an element outside the scope (informational).
    pub outside_scope: Vec<PairDeviation>,
}

impl ComposeReport {
    pub fn matches(&self) -> bool {
        self.deviations.is_empty()
    }
}

/// Turns `p` by `first`, then turns the result by a second filter chosen by
/// `strategy`, and compares the relation change pair by pair with the
/// rotation for the induced partition. Pairs are compared on `scope` (all
/// elements when `None`).
pub fn compose_turns_check(
    p: &FinitePoset,
    first: &TurnSpec,
    strategy: &ComposeStrategy,
    scope: Option<&[usize]>,
) -> Result<(RotationPartition, ComposeReport), TransformError> {
    compose_turns_check_with(p, first, strategy, scope, &TurnClauses::STANDARD)
}

pub fn compose_turns_check_with(
    p: &FinitePoset,
    first: &TurnSpec,
    strategy: &ComposeStrategy,
    scope: Option<&[usize]>,
    clauses: &TurnClauses,
) -> Result<(RotationPartition, ComposeReport), TransformError> {
    let n = p.len();
    let in_scope = match scope {
        Some(s) => Bits::from_indices(n, s.iter().copied()),
        None => Bits::full(n),
    };
    let q = turn_with(p, first, clauses)?;
    let complement = Bits::from_indices(n, first.complement());

    let (z, second_seed) = match strategy {
        ComposeStrategy::Designated(z) => {
            let z = Bits::from_indices(n, z.iter().copied());
            (z.clone(), z)
        }
        ComposeStrategy::MaximalOverScope => {
            let lower: Vec<usize> = complement.iter().filter(|&x| in_scope.contains(x)).collect();
            let z = Bits::from_indices(
                n,
                first
                    .members
                    .iter()
                    .filter(|&f| lower.iter().all(|&x| p.lt(x, f))),
            );
            (z.clone(), z)
        }
        ComposeStrategy::ComplementImage => (first.members.clone(), complement.clone()),
    };
    if !z.is_subset(&first.members) {
        return Err(TransformError::StrategyFailure(
            "designated set is not contained in the first filter".into(),
        ));
    }
    let partition = match strategy {
        ComposeStrategy::ComplementImage => RotationPartition::for_turn(first),
        _ => {
            let mut y = first.members.clone();
            y.difference_with(&z);
            RotationPartition::new(complement.to_vec(), y.to_vec(), z.to_vec())
        }
    };

    let second_bits = q.up_closure(&second_seed);
    // The second filter may not swallow in-scope elements meant to stay out.
    let must_avoid: Bits = match strategy {
        ComposeStrategy::ComplementImage => first.members.clone(),
        _ => {
            let mut avoid = Bits::full(n);
            avoid.difference_with(&z);
            avoid
        }
    };
    if let Some(bad) = second_bits
        .iter()
        .find(|&e| must_avoid.contains(e) && in_scope.contains(e))
    {
        return Err(TransformError::StrategyFailure(format!(
            "up-closure of the second seed reaches in-scope element {bad}"
        )));
    }
    let second = TurnSpec::from_bits(&q, second_bits)?;
    let r = turn_with(&q, &second, clauses)?;

    let blocks = partition.blocks(n)?;
    let mut deviations = Vec::new();
    let mut outside_scope = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let original = p.rel(a, b);
            let composed = r.rel(a, b);
            let expected = rotated_rel(original, blocks[a], blocks[b]);
            if expected != Some(composed) {
                let dev = PairDeviation { a, b, original, composed, expected };
                if in_scope.contains(a) && in_scope.contains(b) {
                    deviations.push(dev);
                } else {
                    outside_scope.push(dev);
                }
            }
        }
    }
    let report = ComposeReport {
        first: first.members(),
        second: second.members(),
        partition: partition.clone(),
        deviations,
        outside_scope,
    };
    Ok((partition, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{are_isomorphic, family, FamilyKind, FamilySpec};

    fn v_poset() -> FinitePoset {
        FinitePoset::make(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn reverse_examples() {
        let c = FinitePoset::chain(2);
        assert_eq!(reverse(&c), FinitePoset::make(2, &[(1, 0)]).unwrap());
        let a = FinitePoset::antichain(3);
        assert_eq!(reverse(&a), a);
        let s = family(FamilySpec::new(FamilyKind::S, 3, 2)).unwrap();
        let t = family(FamilySpec::new(FamilyKind::T, 3, 2)).unwrap();
        assert!(are_isomorphic(&reverse(&s), &t).unwrap());
    }

    #[test]
    fn turn_examples() {
        let c = FinitePoset::chain(2);
        let turned = turn(&c, &TurnSpec::new(&c, &[1]).unwrap()).unwrap();
        assert!(turned.incomparable(0, 1));

        let a = FinitePoset::antichain(2);
        let turned = turn(&a, &TurnSpec::new(&a, &[1]).unwrap()).unwrap();
        assert!(turned.lt(1, 0));

        let v = v_poset();
        assert_eq!(turn(&v, &TurnSpec::empty(&v)).unwrap(), v);
    }

    #[test]
    fn turn_rejects_non_upset() {
        let c = FinitePoset::chain(3);
        assert_eq!(
            TurnSpec::new(&c, &[1]).unwrap_err(),
            TransformError::Role { below: 1, above: 2 }
        );
    }

    #[test]
    fn rotate_examples() {
        let v = v_poset();
        let spec = TurnSpec::new(&v, &[1]).unwrap();
        assert_eq!(
            rotate(&v, &RotationPartition::for_turn(&spec)).unwrap(),
            turn(&v, &spec).unwrap()
        );
        assert_eq!(
            rotate(&v, &RotationPartition::new(vec![], vec![0, 1, 2], vec![])).unwrap(),
            v
        );
        let c = FinitePoset::chain(3);
        let r = rotate(&c, &RotationPartition::new(vec![0], vec![1], vec![2])).unwrap();
        assert!(r.lt(2, 0));
        assert!(r.incomparable(1, 0));
        assert!(r.incomparable(2, 1));
    }

    #[test]
    fn rotate_rejects_forbidden_relations() {
        let c = FinitePoset::chain(2);
        // y=0 below x=1 is ruled out by X being downward closed.
        let err = rotate(&c, &RotationPartition::new(vec![1], vec![0], vec![])).unwrap_err();
        assert!(matches!(err, TransformError::Partition(_)));
        let a = FinitePoset::antichain(2);
        // X–Z must be strictly comparable.
        let err = rotate(&a, &RotationPartition::new(vec![0], vec![], vec![1])).unwrap_err();
        assert!(matches!(err, TransformError::Partition(_)));
        let err = rotate(&a, &RotationPartition::new(vec![0], vec![0], vec![1])).unwrap_err();
        assert!(matches!(err, TransformError::Partition(_)));
    }

    #[test]
    fn separating_upset_examples() {
        let a = FinitePoset::antichain(2);
        assert_eq!(find_separating_upset(&a, &[0], &[1]).unwrap().members(), vec![0]);
        let c = FinitePoset::chain(2);
        assert_eq!(
            find_separating_upset(&c, &[0], &[1]).unwrap_err(),
            TransformError::NotSeparable { inside: 0, outside: 1 }
        );
        let v = v_poset();
        assert_eq!(find_separating_upset(&v, &[1], &[0, 2]).unwrap().members(), vec![1]);
    }

    #[test]
    fn compose_with_empty_filter_is_identity() {
        let v = v_poset();
        let (part, report) = compose_turns_check(
            &v,
            &TurnSpec::empty(&v),
            &ComposeStrategy::Designated(vec![]),
            None,
        )
        .unwrap();
        assert!(report.second.is_empty());
        assert!(report.matches());
        assert_eq!(part.x, vec![0, 1, 2]);
    }

    #[test]
    fn compose_reproduces_three_block_rotation() {
        let c = FinitePoset::chain(3);
        let first = TurnSpec::new(&c, &[1, 2]).unwrap();
        let (part, report) =
            compose_turns_check(&c, &first, &ComposeStrategy::Designated(vec![2]), None).unwrap();
        assert_eq!(part, RotationPartition::new(vec![0], vec![1], vec![2]));
        assert_eq!(report.second, vec![2]);
        assert!(report.matches(), "{:?}", report.deviations);
    }

    #[test]
    fn complement_image_composes_to_identity() {
        // Turning by F and then by the image of its complement restores p,
        // which differs from the single turn on every flipped cross pair.
        let c = FinitePoset::chain(2);
        let first = TurnSpec::new(&c, &[1]).unwrap();
        let (part, report) =
            compose_turns_check(&c, &first, &ComposeStrategy::ComplementImage, None).unwrap();
        assert_eq!(part, RotationPartition::new(vec![], vec![0], vec![1]));
        assert_eq!(report.second, vec![0]);
        assert_eq!(
            report.deviations,
            vec![PairDeviation {
                a: 0,
                b: 1,
                original: PairRel::Lt,
                composed: PairRel::Lt,
                expected: Some(PairRel::Inc),
            }]
        );
    }

    #[test]
    fn designated_outside_first_filter_fails() {
        let a = FinitePoset::antichain(2);
        let first = TurnSpec::new(&a, &[1]).unwrap();
        assert!(matches!(
            compose_turns_check(&a, &first, &ComposeStrategy::Designated(vec![0]), None),
            Err(TransformError::StrategyFailure(_))
        ));
    }

    #[test]
    fn widened_separating_upset() {
        // V: 0 < 1, 0 < 2.
        let v = FinitePoset::make(3, &[(0, 1), (0, 2)]).unwrap();
        let f = find_separating_upset_widened(&v, &[1], &[0], &[2]).unwrap();
        assert_eq!(f.members(), vec![1, 2]);
        assert!(matches!(
            find_separating_upset_widened(&v, &[1], &[2], &[0]),
            Err(TransformError::NotSeparable { inside: 0, outside: 2 })
        ));
    }
}
