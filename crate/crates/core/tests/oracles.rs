//! Checks against brute-force oracles that share no code with the library
//! beyond reading relations off a poset.

use std::collections::BTreeSet;

use reducts_core::canonical::{
    is_canonical_map, orbit_compare, orbit_partition, OrbitCompare, OrbitLabel,
};
use reducts_core::generic::{
    consistent_extension_types, generate_generic, realize_extension, ExtensionType, GenerateConfig,
    Generated, Language, Structure,
};
use reducts_core::reducts::{classify_triple_type, enumerate_triple_types, TripleClass, TripleType};
use reducts_core::transforms::{reverse, turn, TurnSpec};
use reducts_core::verify::{verify_turn_preserves_triple_classes, Semantics};
use reducts_core::{Bits, FinitePoset, PairRel};

/// Strict partial order test on an adjacency matrix.
fn is_strict_order(m: &[Vec<bool>]) -> bool {
    let n = m.len();
    for i in 0..n {
        if m[i][i] {
            return false;
        }
        for j in 0..n {
            if m[i][j] && m[j][i] {
                return false;
            }
            for k in 0..n {
                if m[i][j] && m[j][k] && !m[i][k] {
                    return false;
                }
            }
        }
    }
    true
}

fn set_rel(m: &mut [Vec<bool>], i: usize, j: usize, r: PairRel) {
    match r {
        PairRel::Lt => m[i][j] = true,
        PairRel::Gt => m[j][i] = true,
        _ => {}
    }
}

fn all_rel_vectors(k: usize) -> Vec<Vec<PairRel>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                PairRel::DISTINCT.iter().map(move |&r| {
                    let mut v = v.clone();
                    v.push(r);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn nineteen_labeled_posets_on_three_points() {
    let mut found = BTreeSet::new();
    for v in all_rel_vectors(3) {
        let mut m = vec![vec![false; 3]; 3];
        set_rel(&mut m, 0, 1, v[0]);
        set_rel(&mut m, 0, 2, v[1]);
        set_rel(&mut m, 1, 2, v[2]);
        if is_strict_order(&m) {
            found.insert(TripleType::new(v[0], v[1], v[2]));
        }
    }
    assert_eq!(found.len(), 19);
    let lib: BTreeSet<_> = enumerate_triple_types().into_iter().collect();
    assert_eq!(lib, found);
}

#[test]
fn pari_is_odd_incomparability_and_the_rest_split_evenly() {
    let types = enumerate_triple_types();
    let odd = |t: &TripleType| [t.r12, t.r13, t.r23].iter().filter(|&&r| r == PairRel::Inc).count() % 2 == 1;
    let pari: Vec<_> = types.iter().filter(|t| odd(t)).collect();
    assert_eq!(pari.len(), 7);
    for t in &types {
        assert_eq!(classify_triple_type(t) == TripleClass::Pari, odd(t), "{t}");
    }
    // Pari: the antichain, three V shapes and three Λ shapes.
    let comparable = |t: &TripleType| 3 - [t.r12, t.r13, t.r23].iter().filter(|&&r| r == PairRel::Inc).count();
    assert_eq!(pari.iter().filter(|t| comparable(t) == 0).count(), 1);
    assert_eq!(pari.iter().filter(|t| comparable(t) == 2).count(), 6);
    let cyc = types.iter().filter(|t| classify_triple_type(t) == TripleClass::Cyc).count();
    assert_eq!(cyc, 6);
}

#[test]
fn chain_pair_has_six_plain_extension_types() {
    // a = 0 < b = 1; brute force over the 9 relation vectors of a new y.
    let p = FinitePoset::chain(2);
    let mut oracle = BTreeSet::new();
    for v in all_rel_vectors(2) {
        let mut m = vec![vec![false; 3]; 3];
        m[0][1] = true;
        set_rel(&mut m, 2, 0, v[0]);
        set_rel(&mut m, 2, 1, v[1]);
        if is_strict_order(&m) {
            oracle.insert(v);
        }
    }
    assert_eq!(oracle.len(), 6);
    let lib: BTreeSet<_> = consistent_extension_types(&Structure::plain(p), &[0, 1], Language::Plain)
        .unwrap()
        .into_iter()
        .map(|t| t.rels)
        .collect();
    assert_eq!(lib, oracle);
}

#[test]
fn realized_extensions_force_nothing_extra() {
    let s = Structure::plain(FinitePoset::chain(2));
    let above_a = realize_extension(&s, &ExtensionType::plain(vec![0], vec![PairRel::Gt])).unwrap();
    assert_eq!(above_a.poset.rel(2, 0), PairRel::Gt);
    assert_eq!(above_a.poset.rel(2, 1), PairRel::Inc);
    let below_b = realize_extension(&s, &ExtensionType::plain(vec![1], vec![PairRel::Lt])).unwrap();
    assert_eq!(below_b.poset.rel(2, 1), PairRel::Lt);
    assert_eq!(below_b.poset.rel(2, 0), PairRel::Inc);
}

#[test]
fn turn_case_count_matches_upset_count() {
    // Each triple type contributes one case per up-set of its 3-point poset.
    let mut expected = 0;
    for t in enumerate_triple_types() {
        for bits in 0..8u8 {
            let inside = |i: usize| bits >> i & 1 == 1;
            let closed = (0..3).all(|i| (0..3).all(|j| !(inside(i) && t.rel(i, j) == PairRel::Lt && !inside(j))));
            if closed {
                expected += 1;
            }
        }
    }
    let report = verify_turn_preserves_triple_classes(&Semantics::default());
    assert_eq!(report.cases, expected);
    // 8 (antichain) + 6·4 (chains) + 3·5 (V) + 3·5 (Λ) + 6·6 (one edge).
    assert_eq!(expected, 98);
}

/// Naive extension-property check: every consistent type over every base of
/// size at most `m` drawn from the core has a witness outside the base.
fn naive_deficiencies(g: &Generated, m: usize, language: Language) -> usize {
    let s = &g.structure;
    let p = &s.poset;
    let core = &g.certificate.core;
    let mut bases: Vec<Vec<usize>> = vec![vec![]];
    for size in 1..=m {
        let mut next = Vec::new();
        for b in bases.iter().filter(|b| b.len() == size - 1) {
            for &c in core.iter().filter(|&&c| b.last().is_none_or(|&l| c > l)) {
                let mut b = b.clone();
                b.push(c);
                next.push(b);
            }
        }
        bases.extend(next);
    }
    let mut missing = 0;
    for base in &bases {
        let k = base.len();
        let rank_in_base = |a: usize| {
            let order = s.order.as_ref().unwrap();
            base.iter().filter(|&&b| order.precedes(b, a)).count()
        };
        for rels in all_rel_vectors(k) {
            let mut mat = vec![vec![false; k + 1]; k + 1];
            for i in 0..k {
                for j in 0..k {
                    mat[i][j] = p.lt(base[i], base[j]);
                }
                set_rel(&mut mat, k, i, rels[i]);
            }
            if !is_strict_order(&mat) {
                continue;
            }
            let flags: Vec<Option<bool>> = match language {
                Language::Upset => vec![Some(false), Some(true)],
                _ => vec![None],
            };
            let slots: Vec<Option<usize>> = match language {
                Language::Ordered => (0..=k).map(Some).collect(),
                _ => vec![None],
            };
            for &flag in &flags {
                if let Some(f) = flag {
                    // y in F forces everything above y in; y outside forces
                    // everything below y out.
                    let ok = (0..k).all(|i| match rels[i] {
                        PairRel::Lt => !f || s.in_upset(base[i]),
                        PairRel::Gt => f || !s.in_upset(base[i]),
                        _ => true,
                    });
                    if !ok {
                        continue;
                    }
                }
                for &slot in &slots {
                    if let Some(sl) = slot {
                        let ok = (0..k).all(|i| match rels[i] {
                            PairRel::Lt => rank_in_base(base[i]) >= sl,
                            PairRel::Gt => rank_in_base(base[i]) < sl,
                            _ => true,
                        });
                        if !ok {
                            continue;
                        }
                    }
                    let found = (0..s.len()).any(|e| {
                        !base.contains(&e)
                            && (0..k).all(|i| p.rel(e, base[i]) == rels[i])
                            && flag.is_none_or(|f| s.in_upset(e) == f)
                            && slot.is_none_or(|sl| {
                                let order = s.order.as_ref().unwrap();
                                base.iter().filter(|&&b| order.precedes(b, e)).count() == sl
                            })
                    });
                    if !found {
                        missing += 1;
                    }
                }
            }
        }
    }
    missing
}

#[test]
fn generated_structures_pass_naive_recertification() {
    for (depth, language) in [
        (2, Language::Plain),
        (2, Language::Upset),
        (2, Language::Ordered),
        (3, Language::Plain),
        (3, Language::Ordered),
    ] {
        let g = generate_generic(&GenerateConfig::new(depth, 5, language)).unwrap();
        assert!(g.certificate.is_complete());
        assert_eq!(naive_deficiencies(&g, depth, language), 0, "{language:?} depth {depth}");
    }
}

#[test]
fn naive_recertification_detects_a_missing_witness() {
    // A chain of three certified at depth 1 over its middle point lacks
    // a point incomparable to it.
    let g = Generated {
        structure: Structure::plain(FinitePoset::chain(3)),
        certificate: reducts_core::generic::GenericCertificate {
            core: vec![1],
            depth: 1,
            witnesses: vec![],
            deficiencies: vec![],
        },
    };
    assert_eq!(naive_deficiencies(&g, 1, Language::Plain), 1);
}

fn plain_depth_three() -> Generated {
    generate_generic(&GenerateConfig::new(3, 11, Language::Plain)).unwrap()
}

#[test]
fn one_constant_gives_four_nonempty_blocks() {
    let g = plain_depth_three();
    let p = &g.structure.poset;
    for &c in &g.certificate.core {
        let blocks = orbit_partition(p, &[c]).unwrap();
        assert_eq!(blocks.len(), 4);
        // Labels by hand: below, above and incomparable to c, plus c itself.
        let mut below = 0;
        let mut above = 0;
        let mut inc = 0;
        for x in 0..p.len() {
            match p.rel(x, c) {
                PairRel::Lt => below += 1,
                PairRel::Gt => above += 1,
                PairRel::Inc => inc += 1,
                PairRel::Eq => {}
            }
        }
        assert!(below > 0 && above > 0 && inc > 0);
        assert_eq!(blocks[&OrbitLabel(vec![PairRel::Lt])].len(), below);
        assert_eq!(blocks[&OrbitLabel(vec![PairRel::Inc])].len(), inc);
    }
}

#[test]
fn below_block_is_div_below_the_incomparable_block() {
    let g = plain_depth_three();
    let p = &g.structure.poset;
    let c = g.certificate.core[0];
    let below = OrbitLabel(vec![PairRel::Lt]);
    let inc = OrbitLabel(vec![PairRel::Inc]);
    // Oracle: some x < y across the blocks, some x' ⊥ y', and no y ≤ x.
    let xs: Vec<usize> = (0..p.len()).filter(|&x| p.lt(x, c)).collect();
    let ys: Vec<usize> = (0..p.len()).filter(|&y| p.incomparable(y, c)).collect();
    assert!(xs.iter().any(|&x| ys.iter().any(|&y| p.lt(x, y))));
    assert!(xs.iter().any(|&x| ys.iter().any(|&y| p.incomparable(x, y))));
    assert!(!xs.iter().any(|&x| ys.iter().any(|&y| p.le(y, x))));
    assert_eq!(orbit_compare(p, &[c], &below, &inc).unwrap(), OrbitCompare::DivBelow);
    assert_eq!(orbit_compare(p, &[c], &inc, &below).unwrap(), OrbitCompare::DivAbove);
}

#[test]
fn identity_into_the_reverse_is_canonical() {
    let g = plain_depth_three();
    let p = &g.structure.poset;
    let q = reverse(p);
    let consts = &g.certificate.core[..2];
    let identity: Vec<usize> = (0..p.len()).collect();
    assert_eq!(is_canonical_map(p, consts, &q, consts, &identity).unwrap(), None);
    // Turning by the up-closure of a point sends some Lt pairs to Lt and
    // others to Inc, so the identity into the turned order is not canonical
    // without constants.
    let top = Bits::from_indices(p.len(), [g.certificate.core[0]]);
    let spec = TurnSpec::from_bits(p, p.up_closure(&top)).unwrap();
    let turned = turn(p, &spec).unwrap();
    let w = is_canonical_map(p, &[], &turned, &[], &identity).unwrap().expect("witness");
    let (a, b) = w.pair;
    let (c, d) = w.other;
    assert_eq!(p.rel(a, b), p.rel(c, d));
    assert_ne!(turned.rel(a, b), turned.rel(c, d));
}
