use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::orbits::{orbit_partition, OrbitLabel};
use super::{check_elements, CanonicalError, CanonicalWitness};
use crate::generic::LinearOrder;
use crate::poset::{FinitePoset, PairRel};
use crate::reducts::enumerate_triple_types;

/// A poset with a linear extension `≺`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPoset {
    pub poset: FinitePoset,
    pub prec: LinearOrder,
}

impl OrderedPoset {
    pub fn new(poset: FinitePoset, prec: LinearOrder) -> Result<Self, CanonicalError> {
        if !prec.extends(&poset) {
            return Err(CanonicalError::Order("order is not a linear extension".into()));
        }
        Ok(OrderedPoset { poset, prec })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn pair_type(&self, a: usize, b: usize) -> OrderedPairType {
        OrderedPairType::of(self.poset.rel(a, b), self.prec.precedes(a, b))
    }
}

/// Type of a pair of distinct elements of a poset with a linear extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrderedPairType {
    LtPrec,
    GtSucc,
    IncPrec,
    IncSucc,
}

impl OrderedPairType {
    pub const ALL: [OrderedPairType; 4] = [
        OrderedPairType::LtPrec,
        OrderedPairType::GtSucc,
        OrderedPairType::IncPrec,
        OrderedPairType::IncSucc,
    ];

    /// `None` for the impossible combinations `Lt` with `≻` and `Gt` with `≺`.
    pub fn try_of(rel: PairRel, precedes: bool) -> Option<Self> {
        use OrderedPairType::*;
        match (rel, precedes) {
            (PairRel::Lt, true) => Some(LtPrec),
            (PairRel::Gt, false) => Some(GtSucc),
            (PairRel::Inc, true) => Some(IncPrec),
            (PairRel::Inc, false) => Some(IncSucc),
            _ => None,
        }
    }

    fn of(rel: PairRel, precedes: bool) -> Self {
        Self::try_of(rel, precedes).expect("linear extension of a strict order")
    }

    pub fn rel(self) -> PairRel {
        match self {
            OrderedPairType::LtPrec => PairRel::Lt,
            OrderedPairType::GtSucc => PairRel::Gt,
            _ => PairRel::Inc,
        }
    }

    pub fn precedes(self) -> bool {
        matches!(self, OrderedPairType::LtPrec | OrderedPairType::IncPrec)
    }

    pub fn converse(self) -> Self {
        use OrderedPairType::*;
        match self {
            LtPrec => GtSucc,
            GtSucc => LtPrec,
            IncPrec => IncSucc,
            IncSucc => IncPrec,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Image type for each of the four source types, indexed in `ALL` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairTypeFunction(pub [OrderedPairType; 4]);

impl PairTypeFunction {
    pub fn image(&self, t: OrderedPairType) -> OrderedPairType {
        self.0[t.index()]
    }

    /// The converse-symmetric function with the given images of `LtPrec`
    /// and `IncPrec`.
    pub fn from_prec_images(lt: OrderedPairType, inc: OrderedPairType) -> Self {
        PairTypeFunction([lt, lt.converse(), inc, inc.converse()])
    }

    pub fn is_converse_symmetric(&self) -> bool {
        OrderedPairType::ALL
            .iter()
            .all(|&t| self.image(t.converse()) == self.image(t).converse())
    }

    /// Applies the function to every pair of three points with the given
    /// order and linear extension, and checks the images form a poset with a
    /// linear extension.
    fn consistent_on(&self, p: &FinitePoset, prec: &LinearOrder) -> bool {
        let t = |a: usize, b: usize| self.image(OrderedPairType::of(p.rel(a, b), prec.precedes(a, b)));
        let lt = |a: usize, b: usize| a != b && t(a, b).rel() == PairRel::Lt;
        let before = |a: usize, b: usize| a != b && t(a, b).precedes();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if lt(a, b) && lt(b, c) && !lt(a, c) {
                        return false;
                    }
                    if before(a, b) && before(b, c) && !before(a, c) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for PairTypeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = OrderedPairType::ALL
            .iter()
            .map(|&t| format!("{t:?}->{:?}", self.image(t)))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// All 3-point posets with a linear extension, as labelled structures.
pub fn ordered_triples() -> Vec<(FinitePoset, LinearOrder)> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for t in enumerate_triple_types() {
        let p = t.to_poset().expect("valid triple type");
        for perm in perms {
            let order = LinearOrder::from_sequence(perm.to_vec()).expect("permutation");
            if order.extends(&p) {
                out.push((p.clone(), order));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeFunctionEnumeration {
    pub candidates: usize,
    pub converse_symmetric: usize,
    pub configurations: usize,
    pub consistent: Vec<PairTypeFunction>,
}

/// Pair-type functions that are consistent on every 3-point configuration.
pub fn enumerate_consistent_type_functions() -> TypeFunctionEnumeration {
    let configs = ordered_triples();
    let mut symmetric = 0;
    let mut consistent = Vec::new();
    for code in 0..256usize {
        let f = PairTypeFunction(std::array::from_fn(|i| OrderedPairType::ALL[(code >> (2 * i)) & 3]));
        if !f.is_converse_symmetric() {
            continue;
        }
        symmetric += 1;
        if configs.iter().all(|(p, o)| f.consistent_on(p, o)) {
            consistent.push(f);
        }
    }
    consistent.sort();
    TypeFunctionEnumeration {
        candidates: 256,
        converse_symmetric: symmetric,
        configurations: configs.len(),
        consistent,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Behavior {
    Id,
    Rev,
    ChainPres,
    ChainRev,
    AntichainPres,
    AntichainRev,
    /// Observed function and, per source type, a realizing pair if any.
    Other {
        observed: BTreeMap<OrderedPairType, OrderedPairType>,
        witnesses: BTreeMap<OrderedPairType, (usize, usize)>,
    },
}

impl Behavior {
    pub const NAMED: [Behavior; 6] = [
        Behavior::Id,
        Behavior::Rev,
        Behavior::ChainPres,
        Behavior::ChainRev,
        Behavior::AntichainPres,
        Behavior::AntichainRev,
    ];

    pub fn type_function(&self) -> Option<PairTypeFunction> {
        use OrderedPairType::*;
        let (lt, inc) = match self {
            Behavior::Id => (LtPrec, IncPrec),
            Behavior::Rev => (GtSucc, IncSucc),
            Behavior::ChainPres => (LtPrec, LtPrec),
            Behavior::ChainRev => (GtSucc, GtSucc),
            Behavior::AntichainPres => (IncPrec, IncPrec),
            Behavior::AntichainRev => (IncSucc, IncSucc),
            Behavior::Other { .. } => return None,
        };
        Some(PairTypeFunction::from_prec_images(lt, inc))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Behavior::Id => "id",
            Behavior::Rev => "rev",
            Behavior::ChainPres => "chain-pres",
            Behavior::ChainRev => "chain-rev",
            Behavior::AntichainPres => "antichain-pres",
            Behavior::AntichainRev => "antichain-rev",
            Behavior::Other { .. } => "other",
        }
    }
}

/// Classifies an injective map between ordered posets by the image type of
/// each source pair type.
pub fn classify_behavior(
    src: &OrderedPoset,
    dst: &OrderedPoset,
    f: &[usize],
) -> Result<Behavior, CanonicalError> {
    if f.len() != src.len() {
        return Err(CanonicalError::MapLength { expected: src.len(), found: f.len() });
    }
    check_elements(dst.len(), f)?;
    let mut preimage = vec![None; dst.len()];
    for (a, &img) in f.iter().enumerate() {
        if let Some(b) = preimage[img].replace(a) {
            return Err(CanonicalError::NotInjective { a: b, b: a, image: img });
        }
    }
    let mut observed: BTreeMap<OrderedPairType, (OrderedPairType, (usize, usize))> = BTreeMap::new();
    for a in 0..src.len() {
        for b in 0..src.len() {
            if a == b {
                continue;
            }
            let t = src.pair_type(a, b);
            let image = dst.pair_type(f[a], f[b]);
            match observed.get(&t) {
                Some(&(prev, pair)) if prev != image => {
                    return Err(CanonicalError::NotCanonical(CanonicalWitness {
                        pair,
                        other: (a, b),
                    }));
                }
                Some(_) => {}
                None => {
                    observed.insert(t, (image, (a, b)));
                }
            }
        }
    }
    for behavior in Behavior::NAMED {
        let g = behavior.type_function().expect("named behavior");
        if observed.iter().all(|(&t, &(img, _))| g.image(t) == img) {
            return Ok(behavior);
        }
    }
    Ok(Behavior::Other {
        observed: observed.iter().map(|(&t, &(img, _))| (t, img)).collect(),
        witnesses: observed.iter().map(|(&t, &(_, w))| (t, w)).collect(),
    })
}

/// The ordered poset on the same carrier whose pair types are the images of
/// `src`'s under `g`, so that the identity map realizes `g`. Fails when `g`
/// is not consistent on some triple of `src`.
pub fn realize_type_function(
    src: &OrderedPoset,
    g: &PairTypeFunction,
) -> Result<OrderedPoset, CanonicalError> {
    let n = src.len();
    let image = |a: usize, b: usize| g.image(src.pair_type(a, b));
    let poset = FinitePoset::from_predicate(n, |a, b| a != b && image(a, b).rel() == PairRel::Lt)
        .map_err(|e| CanonicalError::Order(e.to_string()))?;
    let mut seq: Vec<usize> = (0..n).collect();
    // A transitive tournament sorts by the number of predecessors.
    let preds: Vec<usize> = (0..n)
        .map(|b| (0..n).filter(|&a| a != b && image(a, b).precedes()).count())
        .collect();
    seq.sort_by_key(|&x| preds[x]);
    let prec = LinearOrder::from_sequence(seq).map_err(|e| CanonicalError::Order(e.to_string()))?;
    for a in 0..n {
        for b in 0..n {
            if a != b && prec.precedes(a, b) != image(a, b).precedes() {
                return Err(CanonicalError::Order("image order is not transitive".into()));
            }
        }
    }
    OrderedPoset::new(poset, prec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitBehavior {
    LikeId,
    LikeRev,
    Neither { pair: (usize, usize), src: PairRel, dst: PairRel },
}

/// Whether `f : p → dst` behaves like the identity or like reversal on the
/// block `label`.
pub fn behavior_on_orbit(
    p: &FinitePoset,
    consts: &[usize],
    dst: &FinitePoset,
    f: &[usize],
    label: &OrbitLabel,
) -> Result<OrbitBehavior, CanonicalError> {
    check_map(p, dst, f)?;
    let blocks = orbit_partition(p, consts)?;
    let members = blocks
        .get(label)
        .ok_or_else(|| CanonicalError::UnknownLabel(label.clone()))?;
    let mut like_id = true;
    let mut like_rev = true;
    let mut first_bad = None;
    for &a in members {
        for &b in members {
            if a == b {
                continue;
            }
            let (r, s) = (p.rel(a, b), dst.rel(f[a], f[b]));
            let id_ok = r == s;
            let rev_ok = if r == PairRel::Inc { s == PairRel::Inc } else { s == r.converse() };
            like_id &= id_ok;
            like_rev &= rev_ok;
            if !id_ok && !rev_ok && first_bad.is_none() {
                first_bad = Some(((a, b), r, s));
            }
        }
    }
    Ok(if like_id {
        OrbitBehavior::LikeId
    } else if like_rev {
        OrbitBehavior::LikeRev
    } else {
        let ((a, b), src, dst) = first_bad.unwrap_or_else(|| {
            // Each pair fits one of the two, but not uniformly: report an
            // id-violating pair.
            let (a, b) = members
                .iter()
                .flat_map(|&a| members.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| a != b && p.rel(a, b) != dst.rel(f[a], f[b]))
                .expect("not like id");
            ((a, b), p.rel(a, b), dst.rel(f[a], f[b]))
        });
        OrbitBehavior::Neither { pair: (a, b), src, dst }
    })
}

/// Observed image relation for one input relation across two blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternEntry {
    Absent,
    Maps(PairRel),
    Mixed,
}

/// For `x ∈ X`, `y ∈ Y`: images of the pairs with `x < y`, `x > y`, `x ⊥ y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternTable {
    pub lt: PatternEntry,
    pub gt: PatternEntry,
    pub inc: PatternEntry,
}

impl PatternTable {
    pub fn is_like_id(&self) -> bool {
        let ok = |e: PatternEntry, r: PairRel| matches!(e, PatternEntry::Absent) || e == PatternEntry::Maps(r);
        ok(self.lt, PairRel::Lt) && ok(self.gt, PairRel::Gt) && ok(self.inc, PairRel::Inc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetweenBehavior {
    LikeId,
    Pattern(PatternTable),
}

pub fn behavior_between_orbits(
    p: &FinitePoset,
    consts: &[usize],
    dst: &FinitePoset,
    f: &[usize],
    x: &OrbitLabel,
    y: &OrbitLabel,
) -> Result<BetweenBehavior, CanonicalError> {
    check_map(p, dst, f)?;
    if x == y {
        return Err(CanonicalError::SameBlock);
    }
    let blocks = orbit_partition(p, consts)?;
    let get = |l: &OrbitLabel| blocks.get(l).ok_or_else(|| CanonicalError::UnknownLabel(l.clone()));
    let (xs, ys) = (get(x)?, get(y)?);
    let mut table = PatternTable {
        lt: PatternEntry::Absent,
        gt: PatternEntry::Absent,
        inc: PatternEntry::Absent,
    };
    for &a in xs {
        for &b in ys {
            let image = dst.rel(f[a], f[b]);
            let entry = match p.rel(a, b) {
                PairRel::Lt => &mut table.lt,
                PairRel::Gt => &mut table.gt,
                _ => &mut table.inc,
            };
            *entry = match *entry {
                PatternEntry::Absent => PatternEntry::Maps(image),
                PatternEntry::Maps(r) if r == image => PatternEntry::Maps(r),
                _ => PatternEntry::Mixed,
            };
        }
    }
    Ok(if table.is_like_id() {
        BetweenBehavior::LikeId
    } else {
        BetweenBehavior::Pattern(table)
    })
}

fn check_map(p: &FinitePoset, dst: &FinitePoset, f: &[usize]) -> Result<(), CanonicalError> {
    if f.len() != p.len() {
        return Err(CanonicalError::MapLength { expected: p.len(), found: f.len() });
    }
    check_elements(dst.len(), f)
}
