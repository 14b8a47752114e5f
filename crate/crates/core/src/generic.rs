//! One-point extensions and certified finite approximations of the random
//! partial order, optionally expanded by an up-set (class C) or a linear
//! extension (class D).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::poset::{FinitePoset, PairRel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenericError {
    #[error("element {element} out of range for structure of size {n}")]
    IndexOutOfRange { element: usize, n: usize },
    #[error("language parameter invalid: {0}")]
    Role(String),
    #[error("extension is inconsistent: {0}")]
    InconsistentExtension(String),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("round limit reached with {} elements", .partial.structure.len())]
    RoundLimitExceeded { partial: Box<Generated> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Plain,
    Upset,
    Ordered,
}

/// A linear order on `0..n`, stored as the sequence and its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    seq: Vec<usize>,
    rank: Vec<usize>,
}

impl LinearOrder {
    /// `seq` lists the elements from ≺-least to ≺-greatest.
    pub fn from_sequence(seq: Vec<usize>) -> Result<Self, GenericError> {
        let n = seq.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &e) in seq.iter().enumerate() {
            if e >= n {
                return Err(GenericError::IndexOutOfRange { element: e, n });
            }
            if rank[e] != usize::MAX {
                return Err(GenericError::Role(format!("element {e} repeated in linear order")));
            }
            rank[e] = r;
        }
        Ok(LinearOrder { seq, rank })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrder { seq: (0..n).collect(), rank: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn rank(&self, a: usize) -> usize {
        self.rank[a]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn extends(&self, p: &FinitePoset) -> bool {
        p.len() == self.len() && p.strict_pairs().iter().all(|&(a, b)| self.precedes(a, b))
    }

    /// Inserts the new element `self.len()` at ≺-position `pos`.
    fn insert_new(&mut self, pos: usize) {
        let new = self.seq.len();
        self.seq.insert(pos, new);
        self.rank.push(0);
        for (r, &e) in self.seq.iter().enumerate().skip(pos) {
            self.rank[e] = r;
        }
    }
}

/// A poset with an optional up-set and an optional linear extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub poset: FinitePoset,
    pub upset: Option<Bits>,
    pub order: Option<LinearOrder>,
}

impl Structure {
    pub fn plain(poset: FinitePoset) -> Self {
        Structure { poset, upset: None, order: None }
    }

    pub fn empty(language: Language) -> Self {
        Structure {
            poset: FinitePoset::antichain(0),
            upset: (language == Language::Upset).then(|| Bits::new(0)),
            order: (language == Language::Ordered).then(|| LinearOrder::identity(0)),
        }
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn in_upset(&self, x: usize) -> bool {
        self.upset.as_ref().is_some_and(|u| u.contains(x))
    }

    /// Checks that the data needed by `language` is present and valid.
    pub fn check_language(&self, language: Language) -> Result<(), GenericError> {
        match language {
            Language::Plain => Ok(()),
            Language::Upset => match &self.upset {
                None => Err(GenericError::Role("no up-set given".into())),
                Some(u) if u.len() != self.len() => {
                    Err(GenericError::Role("up-set has the wrong size".into()))
                }
                Some(u) if !self.poset.is_upward_closed(u) => {
                    Err(GenericError::Role("flagged set is not upward closed".into()))
                }
                Some(_) => Ok(()),
            },
            Language::Ordered => match &self.order {
                None => Err(GenericError::Role("no linear order given".into())),
                Some(o) if !o.extends(&self.poset) => {
                    Err(GenericError::Role("order is not a linear extension".into()))
                }
                Some(_) => Ok(()),
            },
        }
    }
}

/// A one-point extension over `base`: `rels[i]` is the relation of the new
/// point to `base[i]`; `upset` is its membership in the flagged set; `slot`
/// is the number of base elements preceding it in ≺ (so `slot = 0` means it
/// is ≺-below the whole base, otherwise it follows the base element of
/// ≺-rank `slot - 1` within the base).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtensionType {
    pub base: Vec<usize>,
    pub rels: Vec<PairRel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upset: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<usize>,
}

impl ExtensionType {
    pub fn plain(base: Vec<usize>, rels: Vec<PairRel>) -> Self {
        ExtensionType { base, rels, upset: None, slot: None }
    }
}

fn check_base(s: &Structure, base: &[usize]) -> Result<(), GenericError> {
    for (i, &a) in base.iter().enumerate() {
        if a >= s.len() {
            return Err(GenericError::IndexOutOfRange { element: a, n: s.len() });
        }
        if base[..i].contains(&a) {
            return Err(GenericError::Role(format!("base element {a} repeated")));
        }
    }
    Ok(())
}

/// Rule-based consistency of a candidate over the structure.
fn is_consistent(s: &Structure, ext: &ExtensionType) -> bool {
    let p = &s.poset;
    let base = &ext.base;
    for i in 0..base.len() {
        for j in 0..base.len() {
            let (ri, rj) = (ext.rels[i], ext.rels[j]);
            let (ai, aj) = (base[i], base[j]);
            if ri == PairRel::Lt && p.lt(ai, aj) && rj != PairRel::Lt {
                return false;
            }
            if ri == PairRel::Gt && p.lt(aj, ai) && rj != PairRel::Gt {
                return false;
            }
            if ri == PairRel::Gt && rj == PairRel::Lt && !p.lt(ai, aj) {
                return false;
            }
        }
    }
    if let Some(flag) = ext.upset {
        for (&a, &r) in base.iter().zip(&ext.rels) {
            if flag && r == PairRel::Lt && !s.in_upset(a) {
                return false;
            }
            if !flag && r == PairRel::Gt && s.in_upset(a) {
                return false;
            }
        }
    }
    if let (Some(slot), Some(order)) = (ext.slot, &s.order) {
        if slot > base.len() {
            return false;
        }
        for (&a, &r) in base.iter().zip(&ext.rels) {
            let before = base.iter().filter(|&&b| order.precedes(b, a)).count();
            if r == PairRel::Lt && before < slot {
                return false;
            }
            if r == PairRel::Gt && before >= slot {
                return false;
            }
        }
    }
    true
}

fn candidates(base: &[usize], language: Language) -> Vec<ExtensionType> {
    let k = base.len();
    let mut out = Vec::new();
    let total = 3usize.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let rels: Vec<PairRel> = (0..k)
            .map(|_| {
                let r = PairRel::DISTINCT[c % 3];
                c /= 3;
                r
            })
            .collect();
        match language {
            Language::Plain => out.push(ExtensionType::plain(base.to_vec(), rels)),
            Language::Upset => {
                for flag in [false, true] {
                    out.push(ExtensionType {
                        base: base.to_vec(),
                        rels: rels.clone(),
                        upset: Some(flag),
                        slot: None,
                    });
                }
            }
            Language::Ordered => {
                for slot in 0..=k {
                    out.push(ExtensionType {
                        base: base.to_vec(),
                        rels: rels.clone(),
                        upset: None,
                        slot: Some(slot),
                    });
                }
            }
        }
    }
    out
}

/// All consistent extension types over `base`, in a fixed order.
pub fn consistent_extension_types(
    s: &Structure,
    base: &[usize],
    language: Language,
) -> Result<Vec<ExtensionType>, GenericError> {
    s.check_language(language)?;
    check_base(s, base)?;
    let mut base = base.to_vec();
    base.sort_unstable();
    Ok(candidates(&base, language)
        .into_iter()
        .filter(|e| is_consistent(s, e))
        .collect())
}

/// Adds one element realizing `ext`, related to non-base elements only as
/// transitivity forces.
pub fn realize_extension(s: &Structure, ext: &ExtensionType) -> Result<Structure, GenericError> {
    let mut out = s.clone();
    realize_in_place(&mut out, ext)?;
    Ok(out)
}

fn realize_in_place(s: &mut Structure, ext: &ExtensionType) -> Result<usize, GenericError> {
    check_base(s, &ext.base)?;
    if ext.rels.len() != ext.base.len() {
        return Err(GenericError::InconsistentExtension(
            "one relation per base element is required".into(),
        ));
    }
    if ext.upset.is_some() != s.upset.is_some() {
        return Err(GenericError::InconsistentExtension(
            "up-set flag must be given exactly when the structure has an up-set".into(),
        ));
    }
    if ext.slot.is_some() != s.order.is_some() {
        return Err(GenericError::InconsistentExtension(
            "order slot must be given exactly when the structure is ordered".into(),
        ));
    }
    if !is_consistent(s, ext) {
        return Err(GenericError::InconsistentExtension(format!(
            "{:?} over {:?}",
            ext.rels, ext.base
        )));
    }
    let p = &s.poset;
    let n = p.len();
    let mut down = Bits::new(n);
    let mut up = Bits::new(n);
    for (&a, &r) in ext.base.iter().zip(&ext.rels) {
        match r {
            PairRel::Gt => {
                down.insert(a);
                down.union_with(p.strictly_below(a));
            }
            PairRel::Lt => {
                up.insert(a);
                up.union_with(p.strictly_above(a));
            }
            _ => {}
        }
    }
    let position = match (&s.order, ext.slot) {
        (Some(order), Some(slot)) => {
            let mut by_rank = ext.base.clone();
            by_rank.sort_by_key(|&a| order.rank(a));
            Some(if slot == 0 {
                by_rank.first().map_or(order.len(), |&a| order.rank(a))
            } else {
                order.rank(by_rank[slot - 1]) + 1
            })
        }
        _ => None,
    };
    let new = s.poset.push_element(&down, &up);
    if let (Some(u), Some(flag)) = (s.upset.as_mut(), ext.upset) {
        u.push(flag);
    }
    if let (Some(order), Some(pos)) = (s.order.as_mut(), position) {
        order.insert_new(pos);
    }
    Ok(new)
}

/// A realizing element for one extension type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub base: Vec<usize>,
    #[serde(rename = "type")]
    pub ext: ExtensionType,
    pub witness: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericCertificate {
    pub core: Vec<usize>,
    pub depth: usize,
    pub witnesses: Vec<WitnessRecord>,
    pub deficiencies: Vec<ExtensionType>,
}

impl GenericCertificate {
    pub fn is_complete(&self) -> bool {
        self.deficiencies.is_empty()
    }
}

/// Subsets of `core` of size at most `m`, each sorted, in lexicographic order
/// by size.
pub fn subsets_up_to(core: &[usize], m: usize) -> Vec<Vec<usize>> {
    let mut core = core.to_vec();
    core.sort_unstable();
    core.dedup();
    let mut out = vec![Vec::new()];
    let mut layer = vec![(Vec::new(), 0usize)];
    for _ in 0..m.min(core.len()) {
        let mut next = Vec::new();
        for (set, start) in &layer {
            for (i, &c) in core.iter().enumerate().skip(*start) {
                let mut s = set.clone();
                s.push(c);
                next.push((s, i + 1));
            }
        }
        out.extend(next.iter().map(|(s, _)| s.clone()));
        layer = next;
    }
    out
}

fn rel_digit(r: PairRel) -> usize {
    match r {
        PairRel::Lt => 0,
        PairRel::Gt => 1,
        _ => 2,
    }
}

/// Dense code of an extension type over a fixed base.
fn type_code(rels: impl Iterator<Item = PairRel>, k: usize, upset: Option<bool>, slot: Option<usize>) -> usize {
    let mut code = rels.fold((0, 1), |(acc, w), r| (acc + w * rel_digit(r), w * 3)).0;
    if let Some(flag) = upset {
        code = code * 2 + flag as usize;
    }
    if let Some(slot) = slot {
        code = code * (k + 1) + slot;
    }
    code
}

fn code_space(k: usize, language: Language) -> usize {
    let rels = 3usize.pow(k as u32);
    match language {
        Language::Plain => rels,
        Language::Upset => rels * 2,
        Language::Ordered => rels * (k + 1),
    }
}

fn ext_code(ext: &ExtensionType) -> usize {
    type_code(ext.rels.iter().copied(), ext.base.len(), ext.upset, ext.slot)
}

/// First realizing element (in index order) of each type over `base`,
/// indexed by type code.
fn index_witnesses(
    s: &Structure,
    base: &[usize],
    language: Language,
    pool: Option<&Bits>,
) -> Vec<Option<usize>> {
    let k = base.len();
    let mut seen = vec![None; code_space(k, language)];
    for e in 0..s.len() {
        if base.contains(&e) || pool.is_some_and(|p| !p.contains(e)) {
            continue;
        }
        let upset = (language == Language::Upset).then(|| s.in_upset(e));
        let slot = (language == Language::Ordered).then(|| {
            let order = s.order.as_ref().expect("ordered language checked");
            base.iter().filter(|&&a| order.precedes(a, e)).count()
        });
        let code = type_code(base.iter().map(|&a| s.poset.rel(e, a)), k, upset, slot);
        seen[code].get_or_insert(e);
    }
    seen
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerateConfig {
    pub depth: usize,
    pub seed: u64,
    pub language: Language,
    /// Number of saturation rounds; the certified core is everything present
    /// before the last one.
    pub rounds: usize,
    /// Abort with a partial result once the structure exceeds this size.
    pub max_elements: Option<usize>,
}

impl GenerateConfig {
    pub fn new(depth: usize, seed: u64, language: Language) -> Self {
        GenerateConfig {
            depth,
            seed,
            language,
            rounds: Self::default_rounds(depth, language),
            max_elements: Some(200_000),
        }
    }

    /// Rounds from the empty structure: round one adds a single point and
    /// round two its one-point extensions, so three rounds certify a core of
    /// four points. Shallow depths and plain depth 3 afford one more round.
    pub fn default_rounds(depth: usize, language: Language) -> usize {
        if depth <= 2 || language == Language::Plain {
            4
        } else {
            3
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub structure: Structure,
    pub certificate: GenericCertificate,
}

pub fn generate_generic(config: &GenerateConfig) -> Result<Generated, GenericError> {
    generate_from(Structure::empty(config.language), config)
}

/// Leveled saturation starting from `start`.
pub fn generate_from(start: Structure, config: &GenerateConfig) -> Result<Generated, GenericError> {
    if config.depth == 0 {
        return Err(GenericError::ZeroDepth);
    }
    start.check_language(config.language)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut s = start;
    let mut core: Vec<usize> = (0..s.len()).collect();
    let mut witnesses = Vec::new();
    for _ in 0..config.rounds {
        core = (0..s.len()).collect();
        witnesses.clear();
        let mut bases = subsets_up_to(&core, config.depth);
        bases.shuffle(&mut rng);
        for base in bases {
            let mut known = index_witnesses(&s, &base, config.language, None);
            let types: Vec<ExtensionType> = candidates(&base, config.language)
                .into_iter()
                .filter(|e| is_consistent(&s, e))
                .collect();
            for ext in types {
                let code = ext_code(&ext);
                let witness = match known[code] {
                    Some(w) => w,
                    None => {
                        let w = realize_in_place(&mut s, &ext)?;
                        known[code] = Some(w);
                        w
                    }
                };
                witnesses.push(WitnessRecord { base: base.clone(), ext, witness });
            }
            if config.max_elements.is_some_and(|limit| s.len() > limit) {
                return Err(GenericError::RoundLimitExceeded {
                    partial: Box::new(Generated {
                        structure: s,
                        certificate: GenericCertificate {
                            core,
                            depth: config.depth,
                            witnesses,
                            deficiencies: Vec::new(),
                        },
                    }),
                });
            }
        }
    }
    witnesses.sort_by(|a, b| (&a.base, &a.ext).cmp(&(&b.base, &b.ext)));
    Ok(Generated {
        structure: s,
        certificate: GenericCertificate { core, depth: config.depth, witnesses, deficiencies: Vec::new() },
    })
}

/// Consistency by building the small poset on `base ∪ {y}` from scratch and
/// comparing, independent of the rule set used for generation.
fn closure_consistent(s: &Structure, ext: &ExtensionType) -> bool {
    let k = ext.base.len();
    let y = k;
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if s.poset.lt(ext.base[i], ext.base[j]) {
                pairs.push((i, j));
            }
        }
        match ext.rels[i] {
            PairRel::Lt => pairs.push((y, i)),
            PairRel::Gt => pairs.push((i, y)),
            _ => {}
        }
    }
    let Ok(small) = FinitePoset::make(k + 1, &pairs) else {
        return false;
    };
    let exact = (0..k).all(|i| {
        small.rel(y, i) == ext.rels[i]
            && (0..k).all(|j| small.lt(i, j) == s.poset.lt(ext.base[i], ext.base[j]))
    });
    if !exact {
        return false;
    }
    if let Some(flag) = ext.upset {
        let mut members = Bits::new(k + 1);
        for (i, &a) in ext.base.iter().enumerate() {
            members.set(i, s.in_upset(a));
        }
        members.set(y, flag);
        if !small.is_upward_closed(&members) {
            return false;
        }
    }
    if let (Some(slot), Some(order)) = (ext.slot, &s.order) {
        let mut seq: Vec<usize> = (0..k).collect();
        seq.sort_by_key(|&i| order.rank(ext.base[i]));
        if slot > k {
            return false;
        }
        seq.insert(slot, y);
        let Ok(lin) = LinearOrder::from_sequence(seq) else {
            return false;
        };
        if !lin.extends(&small) {
            return false;
        }
    }
    true
}

/// Every consistent extension type over every base `⊆ core` of size `≤ m`,
/// each paired with a realizing element, or listed as a deficiency.
/// Witnesses are drawn from `pool` when given, otherwise from the whole
/// structure.
pub fn certify_extension(
    s: &Structure,
    core: &[usize],
    m: usize,
    language: Language,
    pool: Option<&[usize]>,
) -> Result<GenericCertificate, GenericError> {
    s.check_language(language)?;
    check_base(s, &{
        let mut c = core.to_vec();
        c.sort_unstable();
        c.dedup();
        c
    })?;
    let pool = pool.map(|p| Bits::from_indices(s.len(), p.iter().copied()));
    let mut witnesses = Vec::new();
    let mut deficiencies = Vec::new();
    if core.is_empty() {
        return Ok(GenericCertificate { core: Vec::new(), depth: m, witnesses, deficiencies });
    }
    for base in subsets_up_to(core, m) {
        let found = index_witnesses(s, &base, language, pool.as_ref());
        for ext in candidates(&base, language) {
            if !closure_consistent(s, &ext) {
                continue;
            }
            match found[ext_code(&ext)] {
                Some(w) => witnesses.push(WitnessRecord { base: base.clone(), ext, witness: w }),
                None => deficiencies.push(ext),
            }
        }
    }
    let mut core = core.to_vec();
    core.sort_unstable();
    core.dedup();
    Ok(GenericCertificate { core, depth: m, witnesses, deficiencies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use PairRel::*;

    fn upset_point(flagged: bool) -> Structure {
        Structure {
            poset: FinitePoset::antichain(1),
            upset: Some(Bits::from_indices(1, flagged.then_some(0))),
            order: None,
        }
    }

    #[test]
    fn single_point_has_three_types() {
        let s = Structure::plain(FinitePoset::antichain(1));
        let types = consistent_extension_types(&s, &[0], Language::Plain).unwrap();
        assert_eq!(types.len(), 3);
    }

    #[test]
    fn upset_examples() {
        let s = upset_point(true);
        let types = consistent_extension_types(&s, &[0], Language::Upset).unwrap();
        let in_above = ExtensionType { base: vec![0], rels: vec![Gt], upset: Some(true), slot: None };
        let out_above = ExtensionType { upset: Some(false), ..in_above.clone() };
        assert!(types.contains(&in_above));
        assert!(!types.contains(&out_above));
        assert!(realize_extension(&s, &out_above).is_err());
    }

    #[test]
    fn language_role_checked() {
        let s = Structure {
            poset: FinitePoset::chain(2),
            upset: Some(Bits::from_indices(2, [0])),
            order: None,
        };
        assert!(matches!(
            consistent_extension_types(&s, &[0], Language::Upset),
            Err(GenericError::Role(_))
        ));
        assert!(matches!(
            consistent_extension_types(&s, &[0], Language::Ordered),
            Err(GenericError::Role(_))
        ));
    }

    #[test]
    fn realize_examples() {
        let s = Structure::plain(FinitePoset::chain(2));
        let up = realize_extension(&s, &ExtensionType::plain(vec![0], vec![Gt])).unwrap();
        assert!(up.poset.lt(0, 2));
        assert!(up.poset.incomparable(1, 2));
        let down = realize_extension(&s, &ExtensionType::plain(vec![1], vec![Lt])).unwrap();
        assert!(down.poset.lt(2, 1));
        assert!(down.poset.incomparable(0, 2));
        let top = realize_extension(&s, &ExtensionType::plain(vec![0, 1], vec![Gt, Gt])).unwrap();
        assert!(top.poset.lt(1, 2));
        assert!(matches!(
            realize_extension(&s, &ExtensionType::plain(vec![0, 1], vec![Inc, Gt])),
            Err(GenericError::InconsistentExtension(_))
        ));
    }

    #[test]
    fn ordered_realization_respects_slot() {
        let s = Structure {
            poset: FinitePoset::antichain(2),
            upset: None,
            order: Some(LinearOrder::identity(2)),
        };
        for slot in 0..=2 {
            let ext = ExtensionType { base: vec![0, 1], rels: vec![Inc, Inc], upset: None, slot: Some(slot) };
            let r = realize_extension(&s, &ext).unwrap();
            let order = r.order.as_ref().unwrap();
            assert_eq!(order.rank(2), slot);
            assert!(order.extends(&r.poset));
        }
    }

    #[test]
    fn one_round_from_single_point() {
        let config = GenerateConfig { rounds: 1, ..GenerateConfig::new(1, 0, Language::Plain) };
        let g = generate_from(Structure::plain(FinitePoset::antichain(1)), &config).unwrap();
        let p = &g.structure.poset;
        assert_eq!(p.len(), 4);
        for rel in [Lt, Gt, Inc] {
            assert!((1..4).any(|e| p.rel(e, 0) == rel));
        }
        assert_eq!(g.certificate.core, vec![0]);
    }

    #[test]
    fn chain_of_three_has_deficiencies() {
        let s = Structure::plain(FinitePoset::chain(3));
        let cert = certify_extension(&s, &[0, 1, 2], 1, Language::Plain, None).unwrap();
        assert!(cert
            .deficiencies
            .contains(&ExtensionType::plain(vec![1], vec![Inc])));
    }

    #[test]
    fn empty_core_is_vacuous() {
        let s = Structure::plain(FinitePoset::chain(3));
        let cert = certify_extension(&s, &[], 2, Language::Plain, None).unwrap();
        assert!(cert.witnesses.is_empty() && cert.is_complete());
    }

    #[test]
    fn subsets_counted() {
        assert_eq!(subsets_up_to(&[0, 1, 2, 3], 2).len(), 1 + 4 + 6);
        assert_eq!(subsets_up_to(&[5], 3), vec![vec![], vec![5]]);
    }
}
