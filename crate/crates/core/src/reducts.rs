//! Triple types and the ternary relations cyc, cyc′ and pari, plus the
//! incomparability relation ⊥.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poset::{FinitePoset, PairRel, PosetError};

/// Relations among three distinct abstract points `a, b, c`:
/// `r12` is the relation of `a` to `b`, `r13` of `a` to `c`, `r23` of `b` to `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TripleType {
    pub r12: PairRel,
    pub r13: PairRel,
    pub r23: PairRel,
}

impl TripleType {
    pub const fn new(r12: PairRel, r13: PairRel, r23: PairRel) -> Self {
        TripleType { r12, r13, r23 }
    }

    /// Relation between positions `i` and `j` (0-based).
    pub fn rel(&self, i: usize, j: usize) -> PairRel {
        match (i, j) {
            (0, 1) => self.r12,
            (0, 2) => self.r13,
            (1, 2) => self.r23,
            (1, 0) => self.r12.converse(),
            (2, 0) => self.r13.converse(),
            (2, 1) => self.r23.converse(),
            (i, j) if i == j => PairRel::Eq,
            _ => panic!("triple position out of range: ({i}, {j})"),
        }
    }

    /// The type of the permuted tuple `(t[perm[0]], t[perm[1]], t[perm[2]])`.
    pub fn permute(&self, perm: [usize; 3]) -> TripleType {
        TripleType::new(
            self.rel(perm[0], perm[1]),
            self.rel(perm[0], perm[2]),
            self.rel(perm[1], perm[2]),
        )
    }

    /// Reverses every `Lt`/`Gt`.
    pub fn dual(&self) -> TripleType {
        TripleType::new(self.r12.converse(), self.r13.converse(), self.r23.converse())
    }

    pub fn of(p: &FinitePoset, a: usize, b: usize, c: usize) -> TripleType {
        TripleType::new(p.rel(a, b), p.rel(a, c), p.rel(b, c))
    }

    pub fn is_valid(&self) -> bool {
        let rels = [self.r12, self.r13, self.r23];
        if rels.contains(&PairRel::Eq) {
            return false;
        }
        (0..3).all(|i| {
            (0..3).all(|j| {
                (0..3).all(|k| {
                    let distinct = i != j && j != k && i != k;
                    !distinct
                        || !(self.rel(i, j) == PairRel::Lt && self.rel(j, k) == PairRel::Lt)
                        || self.rel(i, k) == PairRel::Lt
                })
            })
        })
    }

    pub fn incomparable_pairs(&self) -> usize {
        [self.r12, self.r13, self.r23]
            .iter()
            .filter(|r| **r == PairRel::Inc)
            .count()
    }

    /// Materializes the type as a poset on `{0, 1, 2}`.
    pub fn to_poset(&self) -> Result<FinitePoset, PosetError> {
        FinitePoset::from_predicate(3, |i, j| i != j && self.rel(i, j) == PairRel::Lt)
    }
}

impl fmt::Display for TripleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a{}b, a{}c, b{}c",
            self.r12.symbol(),
            self.r13.symbol(),
            self.r23.symbol()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TripleClass {
    Pari,
    Cyc,
    CycPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassOrDegenerate {
    Class(TripleClass),
    Degenerate,
}

/// The six clauses of cyc on `(x, y, z)`, in this order:
/// `x<y<z`, `y<z<x`, `z<x<y`, `x<y ∧ x⊥z ∧ y⊥z`, `y<z ∧ y⊥x ∧ z⊥x`,
/// `z<x ∧ z⊥y ∧ x⊥y`.
///
/// Each clause can be switched off to build deliberately corrupted
/// classifiers for mutation testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycClauses {
    pub enabled: [bool; 6],
}

impl Default for CycClauses {
    fn default() -> Self {
        CycClauses::STANDARD
    }
}

impl CycClauses {
    pub const STANDARD: CycClauses = CycClauses { enabled: [true; 6] };

    pub fn without(clause: usize) -> Self {
        let mut enabled = [true; 6];
        enabled[clause] = false;
        CycClauses { enabled }
    }

    pub fn holds(&self, t: &TripleType) -> bool {
        use PairRel::*;
        // (x, y, z) = positions (0, 1, 2)
        let r = |i, j| t.rel(i, j);
        let clauses = [
            r(0, 1) == Lt && r(1, 2) == Lt,
            r(1, 2) == Lt && r(2, 0) == Lt,
            r(2, 0) == Lt && r(0, 1) == Lt,
            r(0, 1) == Lt && r(0, 2) == Inc && r(1, 2) == Inc,
            r(1, 2) == Lt && r(1, 0) == Inc && r(2, 0) == Inc,
            r(2, 0) == Lt && r(2, 1) == Inc && r(0, 1) == Inc,
        ];
        clauses
            .iter()
            .zip(self.enabled)
            .any(|(holds, on)| on && *holds)
    }

    pub fn classify(&self, t: &TripleType) -> TripleClass {
        if t.incomparable_pairs() % 2 == 1 {
            TripleClass::Pari
        } else if self.holds(t) {
            TripleClass::Cyc
        } else {
            TripleClass::CycPrime
        }
    }
}

/// All 19 labelled strict orders on three points, sorted.
pub fn enumerate_triple_types() -> Vec<TripleType> {
    let mut out = Vec::new();
    for r12 in PairRel::DISTINCT {
        for r13 in PairRel::DISTINCT {
            for r23 in PairRel::DISTINCT {
                let t = TripleType::new(r12, r13, r23);
                if t.is_valid() {
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    out
}

pub fn classify_triple_type(t: &TripleType) -> TripleClass {
    CycClauses::STANDARD.classify(t)
}

pub fn classify_triple(
    p: &FinitePoset,
    (a, b, c): (usize, usize, usize),
) -> Result<ClassOrDegenerate, PosetError> {
    for i in [a, b, c] {
        p.pair_rel(i, i)?;
    }
    if a == b || b == c || a == c {
        return Ok(ClassOrDegenerate::Degenerate);
    }
    Ok(ClassOrDegenerate::Class(classify_triple_type(&TripleType::of(
        p, a, b, c,
    ))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Bot,
    Cyc,
    Pari,
}

/// The extension of ⊥ (pairs) or of cyc / pari (distinct triples) on `p`,
/// in lexicographic order.
pub fn relation_table(p: &FinitePoset, which: RelationKind) -> Vec<Vec<usize>> {
    let n = p.len();
    match which {
        RelationKind::Bot => (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| p.incomparable(x, y))
            .map(|(x, y)| vec![x, y])
            .collect(),
        RelationKind::Cyc | RelationKind::Pari => {
            let wanted = if which == RelationKind::Cyc {
                TripleClass::Cyc
            } else {
                TripleClass::Pari
            };
            let mut out = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if x == y || y == z || x == z {
                            continue;
                        }
                        if classify_triple_type(&TripleType::of(p, x, y, z)) == wanted {
                            out.push(vec![x, y, z]);
                        }
                    }
                }
            }
            out
        }
    }
}

/// A case from the explicit orbit lists: an `Lt`/`Gt`/`Inc` constraint on
/// each listed pair of positions `(i, j)`.
type ListCase = &'static [(usize, usize, PairRel)];

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

mod lists {
    use super::*;
    use PairRel::{Gt, Inc, Lt};

    /// pari, exactly as printed: the first line is a disjunction of single
    /// incomparabilities, and the third V / Λ cases repeat `b⊥c`.
    pub const PARI_LITERAL: &[ListCase] = &[
        &[(A, B, Inc)],
        &[(B, C, Inc)],
        &[(C, A, Inc)],
        &[(A, B, Lt), (A, C, Lt), (B, C, Inc)],
        &[(B, A, Lt), (B, C, Lt), (A, C, Inc)],
        &[(C, A, Lt), (C, B, Lt), (B, C, Inc)],
        &[(A, B, Gt), (A, C, Gt), (B, C, Inc)],
        &[(B, A, Gt), (B, C, Gt), (A, C, Inc)],
        &[(C, A, Gt), (C, B, Gt), (B, C, Inc)],
    ];

    /// pari with the first line read as a conjunction (the antichain) and the
    /// two repeated `b⊥c` entries read as `a⊥b`.
    pub const PARI_CORRECTED: &[ListCase] = &[
        &[(A, B, Inc), (B, C, Inc), (C, A, Inc)],
        &[(A, B, Lt), (A, C, Lt), (B, C, Inc)],
        &[(B, A, Lt), (B, C, Lt), (A, C, Inc)],
        &[(C, A, Lt), (C, B, Lt), (A, B, Inc)],
        &[(A, B, Gt), (A, C, Gt), (B, C, Inc)],
        &[(B, A, Gt), (B, C, Gt), (A, C, Inc)],
        &[(C, A, Gt), (C, B, Gt), (A, B, Inc)],
    ];

    pub const CYC: &[ListCase] = &[
        &[(A, B, Lt), (B, C, Lt)],
        &[(B, C, Lt), (C, A, Lt)],
        &[(C, A, Lt), (A, B, Lt)],
        &[(A, B, Lt), (C, A, Inc), (C, B, Inc)],
        &[(B, C, Lt), (A, B, Inc), (A, C, Inc)],
        &[(C, A, Lt), (B, A, Inc), (B, C, Inc)],
    ];

    pub const CYC_PRIME: &[ListCase] = &[
        &[(A, B, Gt), (B, C, Gt)],
        &[(B, C, Gt), (C, A, Gt)],
        &[(C, A, Gt), (A, B, Gt)],
        &[(A, B, Gt), (C, A, Inc), (C, B, Inc)],
        &[(B, C, Gt), (A, B, Inc), (A, C, Inc)],
        &[(C, A, Gt), (B, A, Inc), (B, C, Inc)],
    ];
}

fn list_matches(list: &[ListCase], t: &TripleType) -> bool {
    list.iter()
        .any(|case| case.iter().all(|&(i, j, r)| t.rel(i, j) == r))
}

/// Which reading of the printed pari list to check against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PariReading {
    Literal,
    Corrected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListMismatch {
    pub reading: PariReading,
    pub triple: TripleType,
    /// Class by the formula definitions.
    pub formula: TripleClass,
    /// Lists that contain the type (empty or several means disagreement).
    pub listed_in: Vec<TripleClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub types: usize,
    pub class_sizes: BTreeMap<TripleClass, usize>,
    /// Mismatches under the corrected pari reading; the acceptance target.
    pub mismatches: Vec<ListMismatch>,
    /// Mismatches under the literal pari reading, kept for audit.
    pub literal_mismatches: Vec<ListMismatch>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn orbit_list_crosscheck() -> CrosscheckReport {
    orbit_list_crosscheck_with(&CycClauses::STANDARD)
}

/// Compares the formula classification (with the given cyc clauses) to the
/// explicit orbit lists for every triple type.
pub fn orbit_list_crosscheck_with(cyc: &CycClauses) -> CrosscheckReport {
    let types = enumerate_triple_types();
    let mut class_sizes = BTreeMap::new();
    let mut mismatches = Vec::new();
    let mut literal_mismatches = Vec::new();
    for t in &types {
        let formula = cyc.classify(t);
        *class_sizes.entry(formula).or_insert(0) += 1;
        for (reading, pari_list, sink) in [
            (PariReading::Corrected, lists::PARI_CORRECTED, &mut mismatches),
            (PariReading::Literal, lists::PARI_LITERAL, &mut literal_mismatches),
        ] {
            let listed_in: Vec<_> = [
                (TripleClass::Pari, pari_list),
                (TripleClass::Cyc, lists::CYC),
                (TripleClass::CycPrime, lists::CYC_PRIME),
            ]
            .into_iter()
            .filter(|(_, list)| list_matches(list, t))
            .map(|(class, _)| class)
            .collect();
            if listed_in != [formula] {
                sink.push(ListMismatch {
                    reading,
                    triple: *t,
                    formula,
                    listed_in,
                });
            }
        }
    }
    CrosscheckReport {
        types: types.len(),
        class_sizes,
        mismatches,
        literal_mismatches,
    }
}
