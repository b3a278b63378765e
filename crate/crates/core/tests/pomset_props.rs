mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use pomcka_core::oracle::{enum_pomsets, enum_pomsets_of_size, EnumConfig};
use pomcka_core::pomset::{odot, sp_ideals_of, DEFAULT_ENUM_VERTEX_CAP};
use pomcka_core::{GeneralPomset, SpPomset};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_sp, A, B};

fn sp(seed: u64, max: usize) -> SpPomset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = (seed % max as u64) as usize + 1;
    random_sp(&mut rng, size, &[A, B])
}

/// Induced subposet on `keep`.
fn restrict(g: &GeneralPomset, keep: &[usize]) -> GeneralPomset {
    let labels = keep.iter().map(|&i| g.labels()[i]).collect();
    let mut pairs = Vec::new();
    for (x, &i) in keep.iter().enumerate() {
        for (y, &j) in keep.iter().enumerate() {
            if g.lt(i, j) {
                pairs.push((x, y));
            }
        }
    }
    GeneralPomset::new(labels, &pairs).unwrap()
}

/// Connected components of the graph on `0..n` with edges `adj`.
fn components(n: usize, adj: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for w in 0..n {
                if !seen[w] && adj(v, w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

/// Alternation depth read off the order itself: split by comparability
/// components, otherwise by incomparability components.
fn depth_brute(g: &GeneralPomset) -> usize {
    let n = g.len();
    if n <= 1 {
        return 0;
    }
    let mut parts = components(n, |i, j| g.comparable(i, j));
    if parts.len() == 1 {
        parts = components(n, |i, j| i != j && !g.comparable(i, j));
    }
    assert!(parts.len() > 1, "not series-parallel");
    1 + parts.iter().map(|p| depth_brute(&restrict(g, p))).max().unwrap()
}

fn by_labels() -> &'static Vec<GeneralPomset> {
    static ALL: OnceLock<Vec<GeneralPomset>> = OnceLock::new();
    ALL.get_or_init(|| enum_pomsets(&EnumConfig { max_vertices: 5, ..EnumConfig::new(vec![A, B]) }).unwrap())
}

fn label_bag(g: &GeneralPomset) -> Vec<u32> {
    let mut v: Vec<u32> = g.labels().iter().map(|l| l.0).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn products_are_sequential_or_parallel(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (p, q) = (sp(s1, 4), sp(s2, 4));
        let s = SpPomset::seq(&p, &q);
        let r = SpPomset::par(&p, &q);
        prop_assert!(s.is_sequential() && !s.is_parallel());
        prop_assert!(r.is_parallel() && !r.is_sequential());
    }

    #[test]
    fn general_round_trip(seed in any::<u64>()) {
        let p = sp(seed, 6);
        prop_assert_eq!(p.to_general().to_sp().unwrap(), p);
    }

    #[test]
    fn width_and_depth_agree_with_the_order(seed in any::<u64>()) {
        let p = sp(seed, 6);
        let g = p.to_general();
        prop_assert_eq!(p.width(), g.width_brute());
        prop_assert_eq!(p.depth(), depth_brute(&g));
    }

    #[test]
    fn odot_members_lie_below_the_parallel_product(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (p, q) = (sp(s1, 3), sp(s2, 3));
        let par = SpPomset::par(&p, &q);
        let prod = odot(&p, &q, DEFAULT_ENUM_VERTEX_CAP).unwrap();
        prop_assert!(prod.contains(&par));
        for m in &prod {
            prop_assert!(m.to_general().is_subsumed_by(&par.to_general()));
        }
    }

    #[test]
    fn ideals_are_the_nfree_pomsets_below(seed in any::<u64>()) {
        let p = sp(seed, 5);
        let g = p.to_general();
        let want: BTreeSet<SpPomset> = by_labels()
            .iter()
            .filter(|r| r.len() == g.len() && label_bag(r) == label_bag(&g) && r.is_n_free() && r.is_subsumed_by(&g))
            .map(|r| r.to_sp().unwrap())
            .collect();
        prop_assert_eq!(sp_ideals_of(&p, DEFAULT_ENUM_VERTEX_CAP).unwrap(), want);
    }
}

#[test]
fn subsumption_is_a_partial_order() {
    let cfg = EnumConfig::new(vec![A, B]);
    for n in 1..=4 {
        let all = enum_pomsets_of_size(n, &cfg).unwrap();
        for x in &all {
            assert!(x.is_subsumed_by(x));
            let below: Vec<&GeneralPomset> = all.iter().filter(|y| y.is_subsumed_by(x)).collect();
            for y in &below {
                if x.is_subsumed_by(y) {
                    assert_eq!(x.canonical_code(), y.canonical_code());
                }
                for z in all.iter().filter(|z| z.is_subsumed_by(y)) {
                    assert!(z.is_subsumed_by(x));
                }
            }
        }
    }
}
