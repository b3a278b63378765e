mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use pomcka_core::oracle::{brute_slice, enum_pomsets, EnumConfig};
use pomcka_core::semilinear::comreg_atoms;
use pomcka_core::term::{normalize, slice, substitute, width_of, BodyNode, Matcher};
use pomcka_core::{Budget, ExtNat, Letter, SpPomset, Term};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_sp, random_comm, random_term_upto, A, B};

fn term(seed: u64, bw: bool) -> Term {
    random_term_upto(&mut ChaCha8Rng::seed_from_u64(seed), 7, &[A, B], bw)
}

fn small_sp() -> &'static Vec<SpPomset> {
    static ALL: OnceLock<Vec<SpPomset>> = OnceLock::new();
    ALL.get_or_init(|| all_sp(6, &[A, B]).into_iter().flatten().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_preserves_slices(seed in any::<u64>()) {
        let t = term(seed, false);
        prop_assert_eq!(slice(&normalize(&t).to_term(), 5).unwrap(), slice(&t, 5).unwrap());
    }

    #[test]
    fn top_operator_fixes_the_shape_of_members(seed in any::<u64>()) {
        let t = term(seed, false);
        let n = normalize(&t);
        let Some(body) = n.body else { return Ok(()) };
        let members = slice(&body.to_term(), 6).unwrap();
        match body.node() {
            BodyNode::Dot(_) | BodyNode::Bang(_) => prop_assert!(members.iter().all(SpPomset::is_sequential)),
            BodyNode::Par(_) | BodyNode::ParBang(_) => prop_assert!(members.iter().all(SpPomset::is_parallel)),
            _ => {}
        }
        prop_assert!(!members.contains(&SpPomset::Unit));
        prop_assert_eq!(n.nullable, slice(&t, 0).unwrap().contains(&SpPomset::Unit));
    }

    #[test]
    fn membership_agrees_with_slices(seed in any::<u64>()) {
        let t = term(seed, false);
        let s = slice(&t, 6).unwrap();
        let mut m = Matcher::new(&t);
        for p in small_sp() {
            prop_assert_eq!(m.matches(p), s.contains(p), "{:?}", p);
        }
    }

    #[test]
    fn slices_agree_with_the_brute_force_semantics(seed in any::<u64>()) {
        let t = term(seed, false);
        prop_assert_eq!(slice(&t, 5).unwrap(), brute_slice(&t, 5).unwrap());
    }

    #[test]
    fn width_bounds_member_widths(seed in any::<u64>()) {
        let t = term(seed, false);
        let w = width_of(&t);
        let widest = slice(&t, 6).unwrap().iter().map(SpPomset::width).max();
        if let Some(m) = widest {
            prop_assert!(ExtNat::Finite(m) <= w);
        }
        if let ExtNat::Finite(k) = w {
            if k <= 3 && t.is_bw_rational() {
                let found = (0..=10).any(|n| slice(&t, n).unwrap().iter().any(|p| p.width() == k));
                prop_assert!(found || k == 0, "no member of width {}", k);
            }
        }
    }

    #[test]
    fn substitution_keeps_disjoint_languages_disjoint(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (x, y) = (Letter(10), Letter(11));
        let mut rng = ChaCha8Rng::seed_from_u64(s1);
        let sizes: [usize; 2] = [rng.gen_range(1..=5), rng.gen_range(1..=5)];
        let terms = sizes.map(|n| random_comm(&mut rng, n, &[x, y]));
        let atoms = comreg_atoms(&terms, &[x, y], &Budget::default()).unwrap();
        // Disjoint sequential or atomic images.
        let images = [
            [Term::letter(A), Term::dot(&Term::letter(B), &Term::letter(B))],
            [Term::dot(&Term::letter(A), &Term::letter(B)), Term::dot(&Term::letter(B), &Term::letter(A))],
        ];
        let nu: BTreeMap<Letter, Term> = [(x, images[(s2 % 2) as usize][0].clone()), (y, images[(s2 % 2) as usize][1].clone())].into();
        let slices: Vec<BTreeSet<SpPomset>> = atoms.cells.iter().map(|c| slice(&substitute(c, &nu), 6).unwrap()).collect();
        for i in 0..slices.len() {
            for j in 0..i {
                prop_assert!(slices[i].is_disjoint(&slices[j]));
            }
        }
    }
}

#[test]
fn enumeration_has_no_isomorphic_duplicates() {
    let all = enum_pomsets(&EnumConfig { max_vertices: 4, ..EnumConfig::new(vec![A, B]) }).unwrap();
    let codes: BTreeSet<_> = all.iter().map(|g| g.canonical_code()).collect();
    assert_eq!(codes.len(), all.len());
    for (i, g) in all.iter().enumerate() {
        for h in &all[..i] {
            let same = g.len() == h.len() && g.is_subsumed_by(h) && h.is_subsumed_by(g);
            assert!(!same);
        }
    }
}
