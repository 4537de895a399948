use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stonelab::algebra::{Element, FiniteBooleanAlgebra};
use stonelab::bitset::BitSet;
use stonelab::family::SeparatingFamily;
use stonelab::free_algebra::{FreeAlgebra, FreeElement};
use stonelab::free_sequence::is_free_sequence;
use stonelab::limits::Limits;
use stonelab::oracle::{
    combinator_laws_once, generates_by_closure, height_by_recursion, min_support_exhaustive,
};
use stonelab::order::FinitePoset;
use stonelab::solver::{min_max_order, GeneratorPool, Mode};
use stonelab::tree::FiniteForest;

fn sets(n: usize, max: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..1 << n, 0..=max)
}

fn elements(b: &FiniteBooleanAlgebra, masks: &[u64]) -> Vec<Element> {
    masks
        .iter()
        .map(|&m| {
            b.element_from_bits(BitSet::from_mask(b.atom_count(), m))
                .unwrap()
        })
        .collect()
}

/// A union of basic clopens over `s` generators, each given by a code in 3^s.
fn clopen(fr: &FreeAlgebra, codes: &[u32]) -> FreeElement {
    let s = fr.generator_count();
    codes.iter().fold(fr.zero(), |acc, &c| {
        let (mut sigma, mut tau, mut c) = (Vec::new(), Vec::new(), c);
        for i in 0..s {
            match c % 3 {
                1 => sigma.push(i),
                2 => tau.push(i),
                _ => {}
            }
            c /= 3;
        }
        acc.or(&fr.basic_clopen(&sigma, &tau).unwrap())
    })
}

fn parents() -> impl Strategy<Value = Vec<Option<usize>>> {
    prop::collection::vec(any::<prop::sample::Index>(), 0..9).prop_map(|ix| {
        (0..ix.len())
            .map(|i| {
                if i == 0 || ix[i].index(4) == 0 {
                    None
                } else {
                    Some(ix[i].index(i))
                }
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bitset_laws(n in 1usize..64, a in any::<u64>(), b in any::<u64>()) {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let (x, y) = (BitSet::from_mask(n, a & mask), BitSet::from_mask(n, b & mask));
        prop_assert_eq!(x.to_mask(), a & mask);
        prop_assert_eq!(x.or(&y).not(), x.not().and(&y.not()));
        prop_assert_eq!(x.and_not(&y), x.and(&y.not()));
        prop_assert_eq!(x.and(&y).is_subset(&x), true);
        prop_assert_eq!(x.count() + y.count(), x.or(&y).count() + x.and(&y).count());
        prop_assert_eq!(BitSet::from_indices(n, x.ones()), x);
    }

    #[test]
    fn generation_matches_closure(n in 1usize..8, masks in sets(7, 6)) {
        let b = FiniteBooleanAlgebra::new(n).unwrap();
        let masks: Vec<u64> = masks.iter().map(|m| m & ((1 << n) - 1)).collect();
        let gens = elements(&b, &masks);
        let fast = b.generates_whole(&gens).unwrap();
        prop_assert_eq!(fast, generates_by_closure(n, &masks));
        let sep = SeparatingFamily::from_elements(&b, &gens).unwrap().is_t0_separating().is_separating();
        prop_assert_eq!(fast, sep);
    }

    #[test]
    fn min_support_is_least_and_anti_monotone(s in 1usize..6, c1 in prop::collection::vec(0u32..243, 1..4), c2 in prop::collection::vec(0u32..243, 1..4)) {
        let fr = FreeAlgebra::new(s).unwrap();
        let (v, w) = (clopen(&fr, &c1), clopen(&fr, &c2));
        let small = v.and(&w);
        prop_assume!(!small.is_zero());
        let big = fr.min_support_ultrafilter(&v).unwrap();
        let least = fr.min_support_ultrafilter(&small).unwrap();
        prop_assert!(small.leq(&v));
        prop_assert!(big.weight() <= least.weight());
        prop_assert_eq!(Some(least.weight()), min_support_exhaustive(&small));
        prop_assert!(small.satisfied_by(least.mask()));
    }

    #[test]
    fn free_sequences_are_prefix_closed(n in 1usize..5, masks in sets(4, 5)) {
        let b = FiniteBooleanAlgebra::new(n).unwrap();
        let masks: Vec<u64> = masks.iter().map(|m| m & ((1 << n) - 1)).collect();
        let seq = elements(&b, &masks);
        if is_free_sequence(&b, &seq).unwrap() {
            for k in 0..seq.len() {
                prop_assert!(is_free_sequence(&b, &seq[..k]).unwrap());
            }
        }
    }

    #[test]
    fn final_segments_form_a_lattice(n in 1usize..7, pairs in prop::collection::vec((0usize..7, 0usize..7), 0..10)) {
        let le: Vec<(usize, usize)> = pairs.into_iter().filter(|&(p, q)| p < q && q < n).collect();
        let poset = FinitePoset::from_pairs(n, &le).unwrap();
        let fs = poset.final_segments(&Limits::default()).unwrap();
        for a in fs.segments() {
            prop_assert!(poset.is_up_set(a));
            for b in fs.segments() {
                prop_assert!(fs.index_of(&a.or(b)).is_some());
                prop_assert!(fs.index_of(&a.and(b)).is_some());
            }
        }
        prop_assert!(fs.system().unwrap().family.is_t0_separating().is_separating());
    }

    #[test]
    fn tree_height_is_max_order(parent in parents()) {
        let f = FiniteForest::new(parent).unwrap();
        let ps = f.paths();
        prop_assert_eq!(ps.len(), f.size() + 1);
        let profile = ps.sigma_system().unwrap().family.order_profile();
        prop_assert_eq!(profile.max_order, height_by_recursion(&f));
    }

    #[test]
    fn combinator_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(combinator_laws_once(&mut rng, &Limits::default()).unwrap(), None);
    }

    #[test]
    fn solver_monotone_and_greedy_bounded(n in 1usize..6, base in sets(5, 6), extra in sets(5, 4)) {
        let lim = Limits::default();
        let mut masks: Vec<Vec<usize>> = base.iter().map(|m| BitSet::from_mask(n, m & ((1 << n) - 1)).to_vec()).collect();
        masks.extend((0..n).map(|x| vec![x]));
        let small = GeneratorPool::custom(&SeparatingFamily::from_index_sets(n, &masks).unwrap());
        masks.extend(extra.iter().map(|m| BitSet::from_mask(n, m & ((1 << n) - 1)).to_vec()));
        let large = GeneratorPool::custom(&SeparatingFamily::from_index_sets(n, &masks).unwrap());
        let e_small = min_max_order(&small, Mode::Exact, &lim).unwrap();
        let e_large = min_max_order(&large, Mode::Exact, &lim).unwrap();
        let greedy = min_max_order(&large, Mode::Greedy, &lim).unwrap();
        prop_assert!(e_large.value <= e_small.value);
        prop_assert!(greedy.value >= e_large.value);
        prop_assert!(greedy.family.is_t0_separating().is_separating());
        prop_assert_eq!(e_large.family.order_profile().max_order, e_large.value);
    }
}
