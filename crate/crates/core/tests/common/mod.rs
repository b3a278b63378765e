#![allow(dead_code)]

use std::collections::BTreeSet;

use pomcka_core::term::Node;
use pomcka_core::{Alphabet, Letter, SpPomset, Term};
use rand::Rng;

pub const A: Letter = Letter(0);
pub const B: Letter = Letter(1);

pub fn alphabet() -> Alphabet {
    Alphabet::with_names(["a", "b", "c", "d"])
}

/// A random term with exactly `size` AST nodes over `letters`. Parallel
/// iteration is left out when `bw` is set.
pub fn random_term<R: Rng>(rng: &mut R, size: usize, letters: &[Letter], bw: bool) -> Term {
    if size <= 1 {
        return match rng.gen_range(0..10) {
            0 => Term::raw(Node::One),
            1 => Term::raw(Node::Zero),
            _ => Term::raw(Node::Letter(letters[rng.gen_range(0..letters.len())])),
        };
    }
    let unary = size == 2 || rng.gen_range(0..4) == 0;
    if unary {
        let u = random_term(rng, size - 1, letters, bw);
        if !bw && rng.gen_bool(0.5) {
            Term::raw(Node::ParStar(u))
        } else {
            Term::raw(Node::Star(u))
        }
    } else {
        let left = rng.gen_range(1..size - 1);
        let u = random_term(rng, left, letters, bw);
        let v = random_term(rng, size - 1 - left, letters, bw);
        match rng.gen_range(0..3) {
            0 => Term::raw(Node::Plus(u, v)),
            1 => Term::raw(Node::Dot(u, v)),
            _ => Term::raw(Node::Par(u, v)),
        }
    }
}

/// A random term with at most `max_size` AST nodes.
pub fn random_term_upto<R: Rng>(rng: &mut R, max_size: usize, letters: &[Letter], bw: bool) -> Term {
    let size = rng.gen_range(1..=max_size);
    random_term(rng, size, letters, bw)
}

/// A random regular term (no parallel operators).
pub fn random_regex<R: Rng>(rng: &mut R, size: usize, letters: &[Letter]) -> Term {
    if size <= 1 {
        return match rng.gen_range(0..8) {
            0 => Term::raw(Node::One),
            _ => Term::raw(Node::Letter(letters[rng.gen_range(0..letters.len())])),
        };
    }
    if size == 2 || rng.gen_range(0..4) == 0 {
        return Term::raw(Node::Star(random_regex(rng, size - 1, letters)));
    }
    let left = rng.gen_range(1..size - 1);
    let u = random_regex(rng, left, letters);
    let v = random_regex(rng, size - 1 - left, letters);
    if rng.gen_bool(0.5) {
        Term::raw(Node::Plus(u, v))
    } else {
        Term::raw(Node::Dot(u, v))
    }
}

/// A random series-parallel pomset with exactly `size` vertices.
pub fn random_sp<R: Rng>(rng: &mut R, size: usize, letters: &[Letter]) -> SpPomset {
    if size == 0 {
        return SpPomset::Unit;
    }
    if size == 1 {
        return SpPomset::Atom(letters[rng.gen_range(0..letters.len())]);
    }
    let left = rng.gen_range(1..size);
    let (p, q) = (random_sp(rng, left, letters), random_sp(rng, size - left, letters));
    if rng.gen_bool(0.5) {
        SpPomset::seq(&p, &q)
    } else {
        SpPomset::par(&p, &q)
    }
}

/// A random commutative-regular term (`+`, `∥`, `^` only).
pub fn random_comm<R: Rng>(rng: &mut R, size: usize, letters: &[Letter]) -> Term {
    if size <= 1 {
        return match rng.gen_range(0..8) {
            0 => Term::raw(Node::One),
            _ => Term::raw(Node::Letter(letters[rng.gen_range(0..letters.len())])),
        };
    }
    if size == 2 || rng.gen_range(0..4) == 0 {
        return Term::raw(Node::ParStar(random_comm(rng, size - 1, letters)));
    }
    let left = rng.gen_range(1..size - 1);
    let u = random_comm(rng, left, letters);
    let v = random_comm(rng, size - 1 - left, letters);
    if rng.gen_bool(0.5) {
        Term::raw(Node::Plus(u, v))
    } else {
        Term::raw(Node::Par(u, v))
    }
}

/// Every series-parallel pomset over `letters` with at most `n` vertices,
/// grouped by size.
pub fn all_sp(n: usize, letters: &[Letter]) -> Vec<BTreeSet<SpPomset>> {
    let mut by_size: Vec<BTreeSet<SpPomset>> = vec![BTreeSet::new(); n + 1];
    by_size[0].insert(SpPomset::Unit);
    if n >= 1 {
        by_size[1] = letters.iter().map(|&l| SpPomset::Atom(l)).collect();
    }
    for s in 2..=n {
        let mut cur = BTreeSet::new();
        for l in 1..s {
            for p in &by_size[l] {
                for q in &by_size[s - l] {
                    cur.insert(SpPomset::seq(p, q));
                    cur.insert(SpPomset::par(p, q));
                }
            }
        }
        by_size[s] = cur;
    }
    by_size
}
