mod common;

use pomcka_core::boolean::{decide_equiv, Equivalence};
use pomcka_core::ideal::IdealEngine;
use pomcka_core::oracle::brute_idsp_slice;
use pomcka_core::pomset::{sp_ideals_of, DEFAULT_ENUM_VERTEX_CAP};
use pomcka_core::syntax::pomset_to_term;
use pomcka_core::term::slice;
use pomcka_core::{Budget, Term};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_term_upto, A, B};

const N: usize = 5;

fn bw(seed: u64) -> (Term, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_term_upto(&mut rng, 6, &[A, B], true), rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closure_contains_the_language_and_is_down_closed(seed in any::<u64>()) {
        let budget = Budget::default();
        let (t, _) = bw(seed);
        let c = IdealEngine::new(&budget).idsp_closure_term(&t).unwrap();
        let sc = slice(&c, N).unwrap();
        prop_assert!(slice(&t, N).unwrap().is_subset(&sc));
        for p in &sc {
            prop_assert!(sp_ideals_of(p, DEFAULT_ENUM_VERTEX_CAP).unwrap().is_subset(&sc));
        }
        prop_assert_eq!(sc, brute_idsp_slice(&t, N).unwrap());
    }

    #[test]
    fn closure_is_idempotent(seed in any::<u64>()) {
        let budget = Budget::default();
        let (t, _) = bw(seed);
        let mut engine = IdealEngine::new(&budget);
        let c = engine.idsp_closure_term(&t).unwrap();
        let cc = engine.idsp_closure_term(&c).unwrap();
        prop_assert_eq!(decide_equiv(&c, &cc, &budget).unwrap(), Equivalence::Equal);
    }

    #[test]
    fn adding_an_ideal_keeps_the_closure(seed in any::<u64>()) {
        let budget = Budget::default();
        let (t, mut rng) = bw(seed);
        let members: Vec<_> = slice(&t, N).unwrap().into_iter().collect();
        prop_assume!(!members.is_empty());
        let p = &members[rng.gen_range(0..members.len())];
        let ideals: Vec<_> = sp_ideals_of(p, DEFAULT_ENUM_VERTEX_CAP).unwrap().into_iter().collect();
        let x = pomset_to_term(&ideals[rng.gen_range(0..ideals.len())]);
        let mut engine = IdealEngine::new(&budget);
        prop_assert_eq!(engine.decide_ex_equiv(&t, &Term::plus(&t, &x)).unwrap(), Equivalence::Equal);
    }
}
