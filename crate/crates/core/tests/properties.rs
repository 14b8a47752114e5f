use proptest::prelude::*;

use reducts_core::canonical::{orbit_compare, orbit_partition};
use reducts_core::format::{parse_structure, poset_to_json, structure_to_json};
use reducts_core::generic::{
    certify_extension, consistent_extension_types, generate_generic, realize_extension, GenerateConfig,
    Language, Structure,
};
use reducts_core::reducts::{classify_triple, ClassOrDegenerate, TripleClass};
use reducts_core::transforms::{reverse, rotate, turn, RotationPartition, TurnSpec};
use reducts_core::{Bits, FinitePoset};

/// A poset on up to `max_n` points: edges go from lower to higher position
/// in a random permutation, then closed.
fn poset(max_n: usize) -> impl Strategy<Value = FinitePoset> {
    (0..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::bool::weighted(0.3), n * n.saturating_sub(1) / 2),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, edges, perm)| {
            let mut pairs = Vec::new();
            let mut e = edges.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if e.next().unwrap() {
                        pairs.push((perm[i], perm[j]));
                    }
                }
            }
            FinitePoset::make(n, &pairs).unwrap()
        })
}

/// A poset with an up-set generated by a random subset.
fn poset_with_upset(max_n: usize) -> impl Strategy<Value = (FinitePoset, Bits)> {
    poset(max_n).prop_flat_map(|p| {
        let n = p.len();
        prop::collection::vec(prop::bool::weighted(0.3), n).prop_map(move |seeds| {
            let s = Bits::from_indices(n, (0..n).filter(|&i| seeds[i]));
            let f = p.up_closure(&s);
            (p.clone(), f)
        })
    })
}

fn class(p: &FinitePoset, t: (usize, usize, usize)) -> Option<TripleClass> {
    match classify_triple(p, t).unwrap() {
        ClassOrDegenerate::Class(c) => Some(c),
        ClassOrDegenerate::Degenerate => None,
    }
}

fn swap_cyc(c: TripleClass) -> TripleClass {
    match c {
        TripleClass::Cyc => TripleClass::CycPrime,
        TripleClass::CycPrime => TripleClass::Cyc,
        TripleClass::Pari => TripleClass::Pari,
    }
}

proptest! {
    #[test]
    fn reverse_is_an_involution(p in poset(10)) {
        prop_assert_eq!(reverse(&reverse(&p)), p.clone());
        prop_assert_eq!(reverse(&p), p.dual());
    }

    #[test]
    fn hasse_generates_the_order(p in poset(10)) {
        let q = FinitePoset::make(p.len(), &p.hasse()).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn turn_is_a_poset_and_a_rotation((p, f) in poset_with_upset(10)) {
        let spec = TurnSpec::from_bits(&p, f).unwrap();
        let q = turn(&p, &spec).unwrap();
        prop_assert!(q.check_axioms().is_ok());
        let r = rotate(&p, &RotationPartition::for_turn(&spec)).unwrap();
        prop_assert_eq!(r, q);
    }

    #[test]
    fn turn_puts_the_upset_below_its_complement((p, f) in poset_with_upset(10)) {
        let spec = TurnSpec::from_bits(&p, f.clone()).unwrap();
        let q = turn(&p, &spec).unwrap();
        // In the turned order F is a down-set.
        prop_assert!(q.is_downward_closed(&f));
    }

    #[test]
    fn three_block_rotations_are_posets((p, f) in poset_with_upset(9)) {
        // X = P∖F, Z = the part of F above all of X, Y = the rest of F.
        let n = p.len();
        let x: Vec<usize> = (0..n).filter(|&i| !f.contains(i)).collect();
        let z: Vec<usize> = f.iter().filter(|&i| x.iter().all(|&a| p.lt(a, i))).collect();
        let y: Vec<usize> = f.iter().filter(|i| !z.contains(i)).collect();
        let q = rotate(&p, &RotationPartition::new(x, y, z)).unwrap();
        prop_assert!(q.check_axioms().is_ok());
    }

    #[test]
    fn cyc_is_cyclic_and_a_swap_dualizes(p in poset(7)) {
        let n = p.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let Some(k) = class(&p, (a, b, c)) else { continue };
                    prop_assert_eq!(class(&p, (b, c, a)), Some(k));
                    prop_assert_eq!(class(&p, (b, a, c)), Some(swap_cyc(k)));
                    prop_assert_eq!(class(&p.dual(), (a, b, c)), Some(swap_cyc(k)));
                }
            }
        }
    }

    #[test]
    fn orbit_order_is_antisymmetric_and_conversed(
        p in poset(9),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
    ) {
        let n = p.len();
        let mut consts: Vec<usize> = if n == 0 { vec![] } else { picks.iter().map(|i| i.index(n)).collect() };
        consts.sort_unstable();
        consts.dedup();
        let blocks = orbit_partition(&p, &consts).unwrap();
        for x in blocks.keys() {
            for y in blocks.keys() {
                let xy = orbit_compare(&p, &consts, x, y);
                prop_assert!(xy.is_ok(), "{} vs {}: {:?}", x, y, xy);
                prop_assert_eq!(xy.unwrap().converse(), orbit_compare(&p, &consts, y, x).unwrap());
            }
        }
    }

    #[test]
    fn json_round_trip((p, f) in poset_with_upset(10)) {
        prop_assert_eq!(reducts_core::format::parse_poset(&poset_to_json(&p)).unwrap(), p.clone());
        let s = Structure { poset: p, upset: Some(f), order: None };
        prop_assert_eq!(parse_structure(&structure_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn realizing_an_extension_keeps_old_relations(
        p in poset(7),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3),
        choice in any::<prop::sample::Index>(),
    ) {
        prop_assume!(!p.is_empty());
        let mut base: Vec<usize> = picks.iter().map(|i| i.index(p.len())).collect();
        base.sort_unstable();
        base.dedup();
        let s = Structure::plain(p.clone());
        let types = consistent_extension_types(&s, &base, Language::Plain).unwrap();
        let t = &types[choice.index(types.len())];
        let out = realize_extension(&s, t).unwrap();
        let old: Vec<usize> = (0..p.len()).collect();
        prop_assert_eq!(out.poset.induced(&old), p.clone());
        for (i, &b) in base.iter().enumerate() {
            prop_assert_eq!(out.poset.rel(p.len(), b), t.rels[i]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn generation_is_deterministic_and_certified(seed in any::<u64>(), lang in 0..3usize) {
        let language = [Language::Plain, Language::Upset, Language::Ordered][lang];
        let mut config = GenerateConfig::new(2, seed, language);
        config.rounds = 3;
        let a = generate_generic(&config).unwrap();
        prop_assert_eq!(&a, &generate_generic(&config).unwrap());
        prop_assert!(a.certificate.is_complete());
        // Completeness at depth 2 implies completeness at depth 1.
        let shallow = certify_extension(&a.structure, &a.certificate.core, 1, language, None).unwrap();
        prop_assert!(shallow.is_complete());
    }
}
