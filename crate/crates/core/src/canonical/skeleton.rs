use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::behavior::OrderedPoset;
use super::orbits::{orbit_partition, OrbitLabel};
use super::{check_elements, CanonicalError};
use crate::generic::{certify_extension, GenericCertificate, Language, Structure};
use crate::poset::PairRel;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonOptions {
    /// Depth of the extension certificate for `S` (0 skips it).
    pub certify_depth: usize,
    /// Bases for the certificate are drawn from `S ∩ certify_core`
    /// (all of `S` when `None`).
    pub certify_core: Option<Vec<usize>>,
    /// Representatives per non-constant block, in block order; chosen
    /// automatically when `None`.
    pub representatives: Option<Vec<usize>>,
}

/// One slice: the members of a non-constant block strictly between the
/// previous representative and the block's own representative in `≺`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slice {
    pub label: OrbitLabel,
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Pair type with respect to the order, the constants and `≺`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
struct OrderedTypeOver {
    first: (OrbitLabel, Vec<bool>),
    second: (OrbitLabel, Vec<bool>),
    rel: PairRel,
    precedes: bool,
}

/// Two pairs of equal type over the constants whose ordered types are
/// neither equal nor swapped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanViolation {
    pub pair: (usize, usize),
    pub other: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanReport {
    pub pairs_checked: usize,
    pub violations: Vec<CleanViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub members: Vec<usize>,
    pub slices: Vec<Slice>,
    pub clean: CleanReport,
    pub certificate: Option<GenericCertificate>,
}

impl SkeletonReport {
    pub fn passed(&self) -> bool {
        self.clean.violations.is_empty()
            && self.certificate.as_ref().is_none_or(GenericCertificate::is_complete)
    }
}

fn ordered_label(op: &OrderedPoset, consts: &[usize], x: usize) -> (OrbitLabel, Vec<bool>) {
    (
        OrbitLabel::of(&op.poset, consts, x),
        consts.iter().map(|&c| op.prec.precedes(c, x)).collect(),
    )
}

/// Exhaustive cleanness check over ordered pairs of distinct members of `s`.
/// Each pair is compared with the first pair seen of the same type over the
/// constants, which suffices since "equal or swapped" is an equivalence on
/// ordered types of equal unordered type.
pub fn check_clean(
    op: &OrderedPoset,
    consts: &[usize],
    s: &[usize],
) -> Result<CleanReport, CanonicalError> {
    check_elements(op.len(), consts)?;
    check_elements(op.len(), s)?;
    let labels: HashMap<usize, (OrbitLabel, Vec<bool>)> =
        s.iter().map(|&x| (x, ordered_label(op, consts, x))).collect();
    let ordered = |a: usize, b: usize| OrderedTypeOver {
        first: labels[&a].clone(),
        second: labels[&b].clone(),
        rel: op.poset.rel(a, b),
        precedes: op.prec.precedes(a, b),
    };
    let mut first_seen: HashMap<(OrbitLabel, OrbitLabel, PairRel), (usize, usize)> = HashMap::new();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for &a in s {
        for &b in s {
            if a == b {
                continue;
            }
            pairs_checked += 1;
            let key = (labels[&a].0.clone(), labels[&b].0.clone(), op.poset.rel(a, b));
            let &mut (ra, rb) = first_seen.entry(key).or_insert((a, b));
            let reference = ordered(ra, rb);
            if ordered(a, b) != reference && ordered(b, a) != reference {
                violations.push(CleanViolation { pair: (ra, rb), other: (a, b) });
            }
        }
    }
    Ok(CleanReport { pairs_checked, violations })
}

fn slices_for(
    op: &OrderedPoset,
    blocks: &[(OrbitLabel, Vec<usize>)],
    consts: &[usize],
    reps: &[usize],
) -> Vec<Slice> {
    // Representatives of all blocks, constants included, in ≺ order.
    let mut all: Vec<(usize, Option<usize>)> = consts.iter().map(|&c| (c, None)).collect();
    all.extend(reps.iter().enumerate().map(|(i, &r)| (r, Some(i))));
    all.sort_by_key(|&(r, _)| op.prec.rank(r));
    let mut slices = Vec::new();
    let mut lower: Option<usize> = None;
    for (r, block) in all {
        if let Some(i) = block {
            let (label, members) = &blocks[i];
            let low = lower.map(|l| op.prec.rank(l));
            let high = op.prec.rank(r);
            let members = members
                .iter()
                .copied()
                .filter(|&x| low.is_none_or(|l| op.prec.rank(x) > l) && op.prec.rank(x) < high)
                .collect();
            slices.push(Slice { label: label.clone(), representative: r, members });
        }
        lower = Some(r);
    }
    slices.sort_by(|a, b| a.label.cmp(&b.label));
    slices
}

fn score(slices: &[Slice]) -> (usize, usize) {
    let min = slices.iter().map(|s| s.members.len()).min().unwrap_or(0);
    let total = slices.iter().map(|s| s.members.len()).sum();
    (min, total)
}

/// Representatives maximizing the smallest slice, by coordinate ascent from
/// the ≺-median of each block.
fn choose_representatives(
    op: &OrderedPoset,
    blocks: &[(OrbitLabel, Vec<usize>)],
    consts: &[usize],
) -> Vec<usize> {
    let mut reps: Vec<usize> = blocks
        .iter()
        .map(|(_, m)| {
            let mut m = m.clone();
            m.sort_by_key(|&x| op.prec.rank(x));
            m[m.len() / 2]
        })
        .collect();
    let mut best = score(&slices_for(op, blocks, consts, &reps));
    loop {
        let mut improved = false;
        for i in 0..blocks.len() {
            for &candidate in &blocks[i].1 {
                let mut trial = reps.clone();
                trial[i] = candidate;
                let s = score(&slices_for(op, blocks, consts, &trial));
                if s > best {
                    best = s;
                    reps = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            return reps;
        }
    }
}

/// Builds `S` = constants plus one `≺`-slice per non-constant block, checks
/// cleanness exhaustively, and optionally certifies the extension property
/// of `S` (witnesses drawn from `S`).
pub fn build_clean_skeleton(
    op: &OrderedPoset,
    consts: &[usize],
    options: &SkeletonOptions,
) -> Result<SkeletonReport, CanonicalError> {
    let partition = orbit_partition(&op.poset, consts)?;
    let blocks: Vec<(OrbitLabel, Vec<usize>)> = partition
        .into_iter()
        .filter(|(label, _)| !label.is_constant())
        .collect();
    let reps = match &options.representatives {
        Some(r) => {
            check_elements(op.len(), r)?;
            if r.len() != blocks.len() {
                return Err(CanonicalError::Order(format!(
                    "{} representatives given for {} blocks",
                    r.len(),
                    blocks.len()
                )));
            }
            if let Some((i, _)) = r.iter().enumerate().find(|&(i, x)| !blocks[i].1.contains(x)) {
                return Err(CanonicalError::Order(format!(
                    "representative {} is not in block {}",
                    r[i], blocks[i].0
                )));
            }
            r.clone()
        }
        None => choose_representatives(op, &blocks, consts),
    };
    let slices = slices_for(op, &blocks, consts, &reps);
    if let Some(empty) = slices.iter().find(|s| s.members.is_empty()) {
        return Err(CanonicalError::EmptyBlock(empty.label.clone()));
    }
    let mut members: Vec<usize> = consts.to_vec();
    members.extend(slices.iter().flat_map(|s| s.members.iter().copied()));
    members.sort_unstable();
    members.dedup();
    let clean = check_clean(op, consts, &members)?;
    let certificate = if options.certify_depth > 0 {
        let core: Vec<usize> = match &options.certify_core {
            Some(c) => members.iter().copied().filter(|x| c.contains(x)).collect(),
            None => members.clone(),
        };
        let s = Structure::plain(op.poset.clone());
        Some(
            certify_extension(&s, &core, options.certify_depth, Language::Plain, Some(&members))
                .map_err(|e| CanonicalError::Certification(e.to_string()))?,
        )
    } else {
        None
    };
    Ok(SkeletonReport { members, slices, clean, certificate })
}
