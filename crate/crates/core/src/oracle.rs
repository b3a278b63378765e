//! Brute-force semantics: exhaustive pomset enumeration and direct slice,
//! ideal and ⊙ computations. Exponential; meant for tests and cross-checks.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pomset::{odot, sp_ideals_of, GeneralPomset, Letter, SpPomset, DEFAULT_ENUM_VERTEX_CAP};
use crate::term::{Node, Term};

/// Hard limit on enumerated pomset sizes.
pub const MAX_ENUM_VERTICES: usize = 8;

#[derive(Clone, Debug)]
pub struct EnumConfig {
    pub max_vertices: usize,
    pub alphabet: Vec<Letter>,
    /// Keep pomsets that contain an N.
    pub include_non_sp: bool,
}

impl EnumConfig {
    pub fn new(alphabet: Vec<Letter>) -> EnumConfig {
        EnumConfig { max_vertices: 5, alphabet, include_non_sp: true }
    }
}

/// Naturally labelled strict orders on `n` vertices (every pair `i < j` of
/// the order has `i < j` as indices), as closed successor masks. Every poset
/// has at least one such labelling.
fn natural_orders(n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for v in 0..n {
        let mut next = Vec::new();
        for succ in &out {
            // The new vertex is maximal; its strict down-set is any down-closed set.
            for down in 0u64..(1 << v) {
                let closed = (0..v).all(|i| down & (1 << i) == 0 || (0..v).all(|j| succ[j] & (1 << i) == 0 || down & (1 << j) != 0));
                if !closed {
                    continue;
                }
                let mut s = succ.clone();
                for (i, m) in s.iter_mut().enumerate() {
                    if down & (1 << i) != 0 {
                        *m |= 1 << v;
                    }
                }
                s.push(0);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

/// All labelled partial orders with exactly `n` vertices, one per isomorphism
/// class, in order of canonical code.
pub fn enum_pomsets_of_size(n: usize, cfg: &EnumConfig) -> Result<Vec<GeneralPomset>> {
    if n > MAX_ENUM_VERTICES {
        return Err(Error::CapExceeded { what: "enumerated vertices", limit: MAX_ENUM_VERTICES });
    }
    let k = cfg.alphabet.len();
    let mut seen = alloc::collections::BTreeMap::new();
    for succ in natural_orders(n) {
        let mut digits = vec![0usize; n];
        loop {
            let labels: Vec<Letter> = digits.iter().map(|&d| cfg.alphabet[d]).collect();
            let g = GeneralPomset::from_closed(labels, succ.clone());
            if cfg.include_non_sp || g.is_n_free() {
                seen.entry(g.canonical_code()).or_insert(g);
            }
            let mut i = 0;
            while i < n {
                digits[i] += 1;
                if digits[i] < k {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == n || k == 0 {
                break;
            }
        }
    }
    Ok(seen.into_values().collect())
}

/// All non-empty labelled partial orders with at most `cfg.max_vertices`
/// vertices, up to isomorphism.
pub fn enum_pomsets(cfg: &EnumConfig) -> Result<Vec<GeneralPomset>> {
    if cfg.max_vertices > MAX_ENUM_VERTICES {
        return Err(Error::CapExceeded { what: "enumerated vertices", limit: MAX_ENUM_VERTICES });
    }
    let mut out = Vec::new();
    for n in 1..=cfg.max_vertices {
        out.extend(enum_pomsets_of_size(n, cfg)?);
    }
    Ok(out)
}

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_ENUM_VERTICES {
        return Err(Error::CapExceeded { what: "brute-force slice size", limit: MAX_ENUM_VERTICES });
    }
    Ok(())
}

fn products(a: &BTreeSet<SpPomset>, b: &BTreeSet<SpPomset>, n: usize, par: bool) -> BTreeSet<SpPomset> {
    let mut out = BTreeSet::new();
    for p in a {
        for q in b {
            if p.size() + q.size() <= n {
                out.insert(if par { SpPomset::par(p, q) } else { SpPomset::seq(p, q) });
            }
        }
    }
    out
}

/// Members of `[[t]]` with at most `n` vertices, by bottom-up set
/// computation with iterations expanded as unions of powers.
pub fn brute_slice(t: &Term, n: usize) -> Result<BTreeSet<SpPomset>> {
    check_cap(n)?;
    Ok(brute(t, n))
}

fn brute(t: &Term, n: usize) -> BTreeSet<SpPomset> {
    match t.node() {
        Node::Zero => BTreeSet::new(),
        Node::One => BTreeSet::from([SpPomset::Unit]),
        Node::Letter(l) => {
            if n >= 1 {
                BTreeSet::from([SpPomset::Atom(*l)])
            } else {
                BTreeSet::new()
            }
        }
        Node::Plus(u, v) => {
            let mut s = brute(u, n);
            s.extend(brute(v, n));
            s
        }
        Node::Dot(u, v) => products(&brute(u, n), &brute(v, n), n, false),
        Node::Par(u, v) => products(&brute(u, n), &brute(v, n), n, true),
        Node::Star(u) | Node::ParStar(u) => {
            let base = brute(u, n);
            let par = matches!(t.node(), Node::ParStar(_));
            let mut all = BTreeSet::from([SpPomset::Unit]);
            let mut power = all.clone();
            loop {
                power = products(&power, &base, n, par);
                let before = all.len();
                all.extend(power.iter().cloned());
                if all.len() == before {
                    break;
                }
            }
            all
        }
    }
}

/// Series-parallel ideals of the members of `[[t]]` with at most `n` vertices.
pub fn brute_idsp_slice(t: &Term, n: usize) -> Result<BTreeSet<SpPomset>> {
    let mut out = BTreeSet::new();
    for p in brute_slice(t, n)? {
        out.extend(sp_ideals_of(&p, DEFAULT_ENUM_VERTEX_CAP)?);
    }
    Ok(out)
}

/// Members of `[[r1]] ⊙ [[r2]]` with at most `n` vertices.
pub fn brute_odot_slice(r1: &Term, r2: &Term, n: usize) -> Result<BTreeSet<SpPomset>> {
    let s1 = brute_slice(r1, n)?;
    let s2 = brute_slice(r2, n)?;
    let mut out = BTreeSet::new();
    for p in &s1 {
        for q in s2.iter().filter(|q| p.size() + q.size() <= n) {
            out.extend(odot(p, q, DEFAULT_ENUM_VERTEX_CAP)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Alphabet;
    use crate::term::slice;

    fn render(al: &Alphabet, s: &BTreeSet<SpPomset>) -> Vec<alloc::string::String> {
        s.iter().map(|p| al.render_pomset(p)).collect()
    }

    #[test]
    fn poset_counts() {
        let a = Letter(0);
        let cfg = EnumConfig::new(vec![a]);
        // Unlabelled posets on 1..=5 points: 1, 2, 5, 16, 63.
        for (n, count) in [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)] {
            assert_eq!(enum_pomsets_of_size(n, &cfg).unwrap().len(), count, "n={n}");
        }
        let sp = EnumConfig { include_non_sp: false, ..cfg.clone() };
        // Series-parallel posets: 1, 2, 5, 15, 48.
        for (n, count) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 48)] {
            assert_eq!(enum_pomsets_of_size(n, &sp).unwrap().len(), count, "n={n}");
        }
        let two = EnumConfig::new(vec![a, Letter(1)]);
        // a∥a, b∥b, a∥b, a;a, a;b, b;a, b;b
        assert_eq!(enum_pomsets_of_size(2, &two).unwrap().len(), 7);
    }

    #[test]
    fn no_duplicates() {
        let cfg = EnumConfig { max_vertices: 4, ..EnumConfig::new(vec![Letter(0), Letter(1)]) };
        let all = enum_pomsets(&cfg).unwrap();
        for i in 0..all.len() {
            for j in 0..i {
                assert!(all[i] != all[j]);
            }
        }
    }

    #[test]
    fn slices() {
        let mut al = Alphabet::with_names(["a", "b"]);
        let t = al.parse_term("(a+b)*").unwrap();
        assert_eq!(render(&al, &brute_slice(&t, 2).unwrap()), ["1", "a", "b", "a;a", "a;b", "b;a", "b;b"]);
        let t = al.parse_term("a|b").unwrap();
        assert_eq!(render(&al, &brute_slice(&t, 2).unwrap()), ["a|b"]);
        let t = al.parse_term("(a|b)^").unwrap();
        assert_eq!(render(&al, &brute_slice(&t, 4).unwrap()), ["1", "a|a|b|b", "a|b"]);
        for text in ["(a;b+b)*|a", "((a|b)^;a)*", "(a+1);(b|a^)"] {
            let t = al.parse_term(text).unwrap();
            assert_eq!(brute_slice(&t, 5).unwrap(), slice(&t, 5).unwrap(), "{text}");
        }
    }

    #[test]
    fn ideal_and_odot_slices() {
        let mut al = Alphabet::with_names(["a", "b"]);
        let t = al.parse_term("a|b").unwrap();
        assert_eq!(render(&al, &brute_idsp_slice(&t, 2).unwrap()), ["a;b", "b;a", "a|b"]);
        let t = al.parse_term("a;b").unwrap();
        assert_eq!(render(&al, &brute_idsp_slice(&t, 2).unwrap()), ["a;b"]);
        let (a, one) = (al.parse_term("a").unwrap(), Term::one());
        assert_eq!(render(&al, &brute_odot_slice(&a, &one, 1).unwrap()), ["a"]);
    }
}
