//! Finite strict partial orders on `{0, .., n-1}`.
//!
//! The relation is stored as a full strict matrix (one bit row per element,
//! plus its transpose), so every order probe is a constant-time lookup.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;

/// Default bound for the brute-force isomorphism test.
pub const ISO_SIZE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element index {index} out of range for poset of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("relation closes into a cycle through element {element}")]
    Cycle { element: usize },
    #[error("relation is not a strict partial order: {0}")]
    Axiom(AxiomViolation),
    #[error("poset of size {n} exceeds the configured limit {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("invalid family parameters: {0}")]
    FamilyParameters(String),
}

/// The first broken axiom found while validating a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomViolation {
    Reflexive { element: usize },
    Antisymmetric { a: usize, b: usize },
    /// `a < b` and `b < c` hold but `a < c` does not.
    Transitivity { a: usize, b: usize, c: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Reflexive { element } => write!(f, "{element} < {element}"),
            AxiomViolation::Antisymmetric { a, b } => write!(f, "{a} < {b} and {b} < {a}"),
            AxiomViolation::Transitivity { a, b, c } => {
                write!(f, "{a} < {b} < {c} but missing pair [{a},{c}]")
            }
        }
    }
}

/// Relation between two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairRel {
    Eq,
    Lt,
    Gt,
    Inc,
}

impl PairRel {
    /// The three relations possible between distinct elements.
    pub const DISTINCT: [PairRel; 3] = [PairRel::Lt, PairRel::Gt, PairRel::Inc];

    pub fn converse(self) -> PairRel {
        match self {
            PairRel::Lt => PairRel::Gt,
            PairRel::Gt => PairRel::Lt,
            other => other,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            PairRel::Eq => "=",
            PairRel::Lt => "<",
            PairRel::Gt => ">",
            PairRel::Inc => "⊥",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    /// `above[i]` = `{ j : i < j }`
    above: Vec<Bits>,
    /// `below[j]` = `{ i : i < j }`
    below: Vec<Bits>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("n", &self.n)
            .field("lt", &self.strict_pairs())
            .finish()
    }
}

impl FinitePoset {
    pub fn antichain(n: usize) -> Self {
        FinitePoset {
            n,
            above: vec![Bits::new(n); n],
            below: vec![Bits::new(n); n],
        }
    }

    pub fn chain(n: usize) -> Self {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::from_full_relation(n, pairs).expect("a chain is a partial order")
    }

    /// Transitive closure of `pairs`, rejected if the closure is not strict.
    pub fn make(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut above = vec![Bits::new(n); n];
        for &(i, j) in pairs {
            check_index(i, n)?;
            check_index(j, n)?;
            above[i].insert(j);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = above[k].clone();
            for row in above.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        if let Some(element) = (0..n).find(|&i| above[i].contains(i)) {
            return Err(PosetError::Cycle { element });
        }
        Ok(Self::from_above(n, above))
    }

    /// Builds the poset from the complete strict relation, without computing
    /// any closure. Missing forced pairs are reported as axiom violations.
    pub fn from_full_relation(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PosetError> {
        let mut above = vec![Bits::new(n); n];
        for (i, j) in pairs {
            check_index(i, n)?;
            check_index(j, n)?;
            above[i].insert(j);
        }
        validate_rows(&above).map_err(PosetError::Axiom)?;
        Ok(Self::from_above(n, above))
    }

    /// Builds the poset from a predicate `lt(i, j)`, validating the axioms.
    pub fn from_predicate(n: usize, lt: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let above = (0..n)
            .map(|i| Bits::from_indices(n, (0..n).filter(|&j| lt(i, j))))
            .collect::<Vec<_>>();
        validate_rows(&above).map_err(PosetError::Axiom)?;
        Ok(Self::from_above(n, above))
    }

    pub(crate) fn from_above(n: usize, above: Vec<Bits>) -> Self {
        let mut below = vec![Bits::new(n); n];
        for (i, row) in above.iter().enumerate() {
            for j in row.iter() {
                below[j].insert(i);
            }
        }
        FinitePoset { n, above, below }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    #[inline]
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.lt(i, j) && !self.lt(j, i)
    }

    /// Unchecked relation probe; callers guarantee indices are in range.
    #[inline]
    pub fn rel(&self, i: usize, j: usize) -> PairRel {
        if i == j {
            PairRel::Eq
        } else if self.lt(i, j) {
            PairRel::Lt
        } else if self.lt(j, i) {
            PairRel::Gt
        } else {
            PairRel::Inc
        }
    }

    pub fn pair_rel(&self, i: usize, j: usize) -> Result<PairRel, PosetError> {
        check_index(i, self.n)?;
        check_index(j, self.n)?;
        Ok(self.rel(i, j))
    }

    /// `{ j : i < j }`
    pub fn strictly_above(&self, i: usize) -> &Bits {
        &self.above[i]
    }

    /// `{ j : j < i }`
    pub fn strictly_below(&self, i: usize) -> &Bits {
        &self.below[i]
    }

    /// Elements incomparable to `i`.
    pub fn incomparable_to(&self, i: usize) -> Bits {
        let mut inc = Bits::full(self.n);
        inc.difference_with(&self.above[i]);
        inc.difference_with(&self.below[i]);
        inc.remove(i);
        inc
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| self.above[i].iter().map(move |j| (i, j)))
            .collect()
    }

    /// The order with every relation reversed.
    pub fn dual(&self) -> FinitePoset {
        FinitePoset {
            n: self.n,
            above: self.below.clone(),
            below: self.above.clone(),
        }
    }

    /// Induced suborder on `elements`, relabelled `0..elements.len()` in the
    /// given order.
    pub fn induced(&self, elements: &[usize]) -> FinitePoset {
        let k = elements.len();
        let above = elements
            .iter()
            .map(|&a| {
                Bits::from_indices(
                    k,
                    elements
                        .iter()
                        .enumerate()
                        .filter(|&(_, &b)| self.lt(a, b))
                        .map(|(j, _)| j),
                )
            })
            .collect();
        FinitePoset::from_above(k, above)
    }

    /// Appends a new element `n` with the given strict down-set and up-set.
    /// The caller guarantees both sets are closed (down-set downward, up-set
    /// upward) and that every element of `down` lies below every element of `up`.
    pub(crate) fn push_element(&mut self, down: &Bits, up: &Bits) -> usize {
        let new = self.n;
        self.n += 1;
        for row in self.above.iter_mut().chain(self.below.iter_mut()) {
            row.push(false);
        }
        let mut new_above = up.clone();
        new_above.push(false);
        let mut new_below = down.clone();
        new_below.push(false);
        for d in down.iter() {
            self.above[d].insert(new);
        }
        for u in up.iter() {
            self.below[u].insert(new);
        }
        self.above.push(new_above);
        self.below.push(new_below);
        new
    }

    /// Direct validation of the three axioms on the stored matrix.
    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        validate_rows(&self.above)
    }

    pub fn is_upward_closed(&self, set: &Bits) -> bool {
        set.iter().all(|x| self.above[x].is_subset(set))
    }

    pub fn is_downward_closed(&self, set: &Bits) -> bool {
        set.iter().all(|x| self.below[x].is_subset(set))
    }

    pub fn up_closure(&self, set: &Bits) -> Bits {
        let mut out = set.clone();
        for x in set.iter() {
            out.union_with(&self.above[x]);
        }
        out
    }

    pub fn down_closure(&self, set: &Bits) -> Bits {
        let mut out = set.clone();
        for x in set.iter() {
            out.union_with(&self.below[x]);
        }
        out
    }

    /// Cover pairs of the order, sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for i in 0..self.n {
            for j in self.above[i].iter() {
                if !self.above[i].intersects(&self.below[j]) {
                    covers.push((i, j));
                }
            }
        }
        covers
    }

    pub fn check_role(&self, members: &[usize], role: Role) -> bool {
        if members.iter().any(|&m| m >= self.n) {
            return false;
        }
        let set = Bits::from_indices(self.n, members.iter().copied());
        match role {
            Role::UpClosed => self.is_upward_closed(&set),
            Role::DownClosed => self.is_downward_closed(&set),
            Role::Filter => {
                self.is_upward_closed(&set)
                    && directed(&set, |a, b| {
                        let mut common = self.below[a].clone();
                        common.intersect_with(&self.below[b]);
                        common.insert_if(set.contains(a) && self.le(a, b), a);
                        common.insert_if(self.le(b, a), b);
                        common.intersects(&set)
                    })
            }
            Role::Ideal => {
                self.is_downward_closed(&set)
                    && directed(&set, |a, b| {
                        let mut common = self.above[a].clone();
                        common.intersect_with(&self.above[b]);
                        common.insert_if(self.le(b, a), a);
                        common.insert_if(self.le(a, b), b);
                        common.intersects(&set)
                    })
            }
        }
    }
}

/// Every two members have a common bound inside the set, per `bounded`.
fn directed(set: &Bits, bounded: impl Fn(usize, usize) -> bool) -> bool {
    let members = set.to_vec();
    members
        .iter()
        .enumerate()
        .all(|(k, &a)| members[k + 1..].iter().all(|&b| bounded(a, b)))
}

trait InsertIf {
    fn insert_if(&mut self, cond: bool, i: usize);
}

impl InsertIf for Bits {
    fn insert_if(&mut self, cond: bool, i: usize) {
        if cond {
            self.insert(i);
        }
    }
}

fn check_index(index: usize, n: usize) -> Result<(), PosetError> {
    if index < n {
        Ok(())
    } else {
        Err(PosetError::IndexOutOfRange { index, n })
    }
}

fn validate_rows(above: &[Bits]) -> Result<(), AxiomViolation> {
    for (i, row) in above.iter().enumerate() {
        if row.contains(i) {
            return Err(AxiomViolation::Reflexive { element: i });
        }
    }
    for (a, row) in above.iter().enumerate() {
        for b in row.iter() {
            if above[b].contains(a) {
                return Err(AxiomViolation::Antisymmetric { a: a.min(b), b: a.max(b) });
            }
            if !above[b].is_subset(row) {
                let c = above[b].iter().find(|&c| !row.contains(c)).unwrap();
                return Err(AxiomViolation::Transitivity { a, b, c });
            }
        }
    }
    Ok(())
}

/// How a subset is meant to sit inside a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    UpClosed,
    /// Upward closed and downward directed.
    Filter,
    /// Downward closed and upward directed.
    Ideal,
    DownClosed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetRole {
    pub members: Vec<usize>,
    pub role: Role,
}

impl SubsetRole {
    pub fn holds_in(&self, p: &FinitePoset) -> bool {
        p.check_role(&self.members, self.role)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `k` independent points above a chain of `n - k` elements.
    S,
    /// Dual of `S`.
    T,
    /// `k` independent points above one element, plus `n - k - 1` isolated points.
    A,
    /// Dual of `A`.
    B,
    /// `k` independent points above one element (`n` is ignored; size `k + 1`).
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub k: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: usize, k: usize) -> Self {
        FamilySpec { kind, n, k }
    }

    pub fn c(k: usize) -> Self {
        FamilySpec { kind: FamilyKind::C, n: k + 1, k }
    }
}

/// The named families, labelled chain elements first (bottom to top), then
/// the `k` independent points, then any further isolated points.
pub fn family(spec: FamilySpec) -> Result<FinitePoset, PosetError> {
    let FamilySpec { kind, n, k } = spec;
    let bad = |msg: String| Err(PosetError::FamilyParameters(msg));
    match kind {
        FamilyKind::S | FamilyKind::T => {
            if k < 1 || k > n {
                return bad(format!("{kind:?} needs 1 <= k <= n, got n={n}, k={k}"));
            }
            let chain = n - k;
            let mut pairs = Vec::new();
            for i in 0..chain {
                for j in i + 1..n {
                    pairs.push((i, j));
                }
            }
            let s = FinitePoset::from_full_relation(n, pairs)?;
            Ok(if kind == FamilyKind::S { s } else { s.dual() })
        }
        FamilyKind::A | FamilyKind::B => {
            if k < 1 || k + 1 > n {
                return bad(format!("{kind:?} needs 1 <= k <= n-1, got n={n}, k={k}"));
            }
            let a = FinitePoset::from_full_relation(n, (1..=k).map(|j| (0, j)))?;
            Ok(if kind == FamilyKind::A { a } else { a.dual() })
        }
        FamilyKind::C => {
            if k < 1 {
                return bad(format!("C needs k >= 1, got k={k}"));
            }
            family(FamilySpec::new(FamilyKind::S, k + 1, k))
        }
    }
}

pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<bool, PosetError> {
    are_isomorphic_with_limit(p, q, ISO_SIZE_LIMIT)
}

/// Brute-force order isomorphism with degree pruning.
pub fn are_isomorphic_with_limit(
    p: &FinitePoset,
    q: &FinitePoset,
    limit: usize,
) -> Result<bool, PosetError> {
    for s in [p, q] {
        if s.len() > limit {
            return Err(PosetError::SizeLimit { n: s.len(), limit });
        }
    }
    if p.len() != q.len() || p.strict_pairs().len() != q.strict_pairs().len() {
        return Ok(false);
    }
    let degree = |s: &FinitePoset, i: usize| (s.below[i].count(), s.above[i].count());
    let mut dp: Vec<_> = (0..p.len()).map(|i| degree(p, i)).collect();
    let mut dq: Vec<_> = (0..q.len()).map(|i| degree(q, i)).collect();
    let (pdeg, qdeg) = (dp.clone(), dq.clone());
    dp.sort_unstable();
    dq.sort_unstable();
    if dp != dq {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    Ok(extend_iso(p, q, &pdeg, &qdeg, 0, &mut image, &mut used))
}

fn extend_iso(
    p: &FinitePoset,
    q: &FinitePoset,
    pdeg: &[(usize, usize)],
    qdeg: &[(usize, usize)],
    next: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if next == p.len() {
        return true;
    }
    for cand in 0..q.len() {
        if used[cand] || pdeg[next] != qdeg[cand] {
            continue;
        }
        if (0..next).any(|prev| p.rel(prev, next) != q.rel(image[prev], cand)) {
            continue;
        }
        image[next] = cand;
        used[cand] = true;
        if extend_iso(p, q, pdeg, qdeg, next + 1, image, used) {
            return true;
        }
        used[cand] = false;
    }
    false
}
