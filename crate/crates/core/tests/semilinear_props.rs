mod common;

use pomcka_core::semilinear::{comreg_atoms, semilinear_to_term, to_semilinear, LinearSet, SemilinearSet, SlEquiv};
use pomcka_core::{Budget, Letter};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::random_comm;

fn random_set<R: Rng>(rng: &mut R, dim: usize) -> SemilinearSet {
    let comps = (0..rng.gen_range(0..=2))
        .map(|_| {
            let base = (0..dim).map(|_| rng.gen_range(0..=3)).collect();
            let periods = (0..rng.gen_range(0..=2)).map(|_| (0..dim).map(|_| rng.gen_range(0..=3)).collect()).collect();
            LinearSet::new(base, periods)
        })
        .collect();
    SemilinearSet::from_components(dim, comps).unwrap()
}

/// Direct evaluation of `base + Σ n_i·p_i` membership by bounded search.
fn in_linear(v: &[u64], l: &LinearSet) -> bool {
    fn go(rest: Vec<i64>, periods: &[Vec<u64>]) -> bool {
        if rest.iter().any(|&x| x < 0) {
            return false;
        }
        if rest.iter().all(|&x| x == 0) {
            return true;
        }
        match periods.split_first() {
            None => false,
            Some((p, more)) => {
                let mut r = rest;
                loop {
                    if go(r.clone(), more) {
                        return true;
                    }
                    if r.iter().zip(p).any(|(&x, &y)| x < y as i64) {
                        return false;
                    }
                    for (x, &y) in r.iter_mut().zip(p) {
                        *x -= y as i64;
                    }
                }
            }
        }
    }
    let periods: Vec<Vec<u64>> = l.periods.iter().filter(|p| p.iter().any(|&x| x > 0)).cloned().collect();
    go(v.iter().zip(&l.base).map(|(&a, &b)| a as i64 - b as i64).collect(), &periods)
}

fn box_points(dim: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v| (0..=max).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn membership_matches_the_definition(seed in any::<u64>(), dim in 1usize..=3) {
        let s = random_set(&mut ChaCha8Rng::seed_from_u64(seed), dim);
        for v in box_points(dim, 8) {
            prop_assert_eq!(s.member(&v), s.components().iter().any(|l| in_linear(&v, l)));
        }
    }

    #[test]
    fn de_morgan_on_the_box(seed in any::<u64>(), dim in 1usize..=2) {
        let budget = Budget::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_set(&mut rng, dim), random_set(&mut rng, dim));
        let c = a.union(&b).unwrap().complement(&budget).unwrap();
        let d = a.complement(&budget).unwrap().difference(&b, &budget).unwrap();
        for v in box_points(dim, 8) {
            prop_assert_eq!(c.member(&v), !a.member(&v) && !b.member(&v));
            prop_assert_eq!(d.member(&v), c.member(&v));
        }
        prop_assert_eq!(c.equiv(&d, &budget).unwrap(), SlEquiv::Equal);
    }

    #[test]
    fn intersection_on_the_box(seed in any::<u64>(), dim in 1usize..=3) {
        let budget = Budget::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_set(&mut rng, dim), random_set(&mut rng, dim));
        let m = a.intersect(&b, &budget).unwrap();
        for v in box_points(dim, 8) {
            prop_assert_eq!(m.member(&v), a.member(&v) && b.member(&v));
        }
        prop_assert!(m.difference(&a, &budget).unwrap().is_empty());
    }

    #[test]
    fn terms_round_trip(seed in any::<u64>(), size in 1usize..7) {
        let budget = Budget::default();
        let letters = [Letter(0), Letter(1)];
        let t = random_comm(&mut ChaCha8Rng::seed_from_u64(seed), size, &letters);
        let s = to_semilinear(&t, &letters, &budget).unwrap();
        let back = to_semilinear(&semilinear_to_term(&s, &letters), &letters, &budget).unwrap();
        prop_assert_eq!(s.equiv(&back, &budget).unwrap(), SlEquiv::Equal);
    }

    #[test]
    fn atoms_partition_the_inputs(seed in any::<u64>()) {
        let budget = Budget::default();
        let letters = [Letter(0), Letter(1)];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sizes: [usize; 3] = [rng.gen_range(1..6), rng.gen_range(1..6), rng.gen_range(1..6)];
        let terms = sizes.map(|n| random_comm(&mut rng, n, &letters));
        let atoms = comreg_atoms(&terms, &letters, &budget).unwrap();
        for i in 0..atoms.sets.len() {
            prop_assert!(!atoms.sets[i].is_empty());
            for j in 0..i {
                prop_assert!(atoms.sets[i].intersect(&atoms.sets[j], &budget).unwrap().is_empty());
            }
        }
        for (t, cover) in terms.iter().zip(&atoms.cover) {
            let mut union = SemilinearSet::empty(2);
            for &c in cover {
                union = union.union(&atoms.sets[c]).unwrap();
            }
            let want = to_semilinear(t, &letters, &budget).unwrap();
            prop_assert_eq!(union.equiv(&want, &budget).unwrap(), SlEquiv::Equal);
        }
    }
}
