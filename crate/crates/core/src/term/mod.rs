//! Bi-Kleene terms: syntax trees, smart constructors, normal forms, and the
//! pomset-language semantics (membership, bounded slices, width, depth).

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::pomset::Letter;

mod norm;
pub(crate) mod semantics;
mod subst;

pub use norm::{normalize, Body, BodyNode, NormTerm};
pub use semantics::{
    atoms, depth_of, is_empty, member, min_member, nullable, slice, width_of, Matcher, SliceCache, SLICE_CAP,
};
pub use subst::{substitute, LabelRegistry};

/// A bi-Kleene term. Nodes are shared behind an `Arc`; cloning is cheap and
/// subterms built once may occur many times without being copied.
///
/// Equality is structural. The total order compares a cached structural hash
/// first and falls back to the variant tag and children only on collisions,
/// so comparing large shared terms stays cheap.
#[derive(Clone)]
pub struct Term(Arc<Inner>);

struct Inner {
    node: Node,
    hash: u64,
    size: u64,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    Zero,
    One,
    Letter(Letter),
    Plus(Term, Term),
    Dot(Term, Term),
    Star(Term),
    Par(Term, Term),
    ParStar(Term),
}

impl Node {
    fn tag(&self) -> u64 {
        match self {
            Node::Zero => 0,
            Node::One => 1,
            Node::Letter(_) => 2,
            Node::Plus(..) => 3,
            Node::Dot(..) => 4,
            Node::Star(_) => 5,
            Node::Par(..) => 6,
            Node::ParStar(_) => 7,
        }
    }
}

fn mix(h: u64, v: u64) -> u64 {
    let x = (h ^ v).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x ^ (x >> 29)
}

impl Term {
    /// Builds a node exactly as given, without simplification.
    pub fn raw(node: Node) -> Term {
        let tag = node.tag();
        let (hash, size) = match &node {
            Node::Zero | Node::One => (mix(0xC0FFEE, tag), 1),
            Node::Letter(l) => (mix(mix(0xC0FFEE, tag), l.0 as u64 + 1), 1),
            Node::Star(u) | Node::ParStar(u) => (mix(mix(0xC0FFEE, tag), u.0.hash), u.0.size.saturating_add(1)),
            Node::Plus(u, v) | Node::Dot(u, v) | Node::Par(u, v) => (
                mix(mix(mix(0xC0FFEE, tag), u.0.hash), v.0.hash.rotate_left(17)),
                u.0.size.saturating_add(v.0.size).saturating_add(1),
            ),
        };
        Term(Arc::new(Inner { node, hash, size }))
    }

    pub fn zero() -> Term {
        Term::raw(Node::Zero)
    }

    pub fn one() -> Term {
        Term::raw(Node::One)
    }

    pub fn letter(l: Letter) -> Term {
        Term::raw(Node::Letter(l))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Number of nodes of the term as a tree (shared subterms counted each
    /// time they occur), saturating.
    pub fn tree_size(&self) -> u64 {
        self.0.size
    }

    pub(crate) fn ptr_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.node(), Node::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self.node(), Node::One)
    }

    /// Sum with zero elimination, flattening, sorting and deduplication.
    pub fn plus(a: &Term, b: &Term) -> Term {
        Term::sum([a.clone(), b.clone()])
    }

    pub fn sum<I: IntoIterator<Item = Term>>(items: I) -> Term {
        let mut parts = Vec::new();
        for t in items {
            t.push_summands(&mut parts);
        }
        parts.sort();
        parts.dedup();
        let mut it = parts.into_iter();
        match it.next() {
            None => Term::zero(),
            Some(first) => it.fold(first, |acc, t| Term::raw(Node::Plus(acc, t))),
        }
    }

    fn push_summands(&self, out: &mut Vec<Term>) {
        match self.node() {
            Node::Zero => {}
            Node::Plus(a, b) => {
                a.push_summands(out);
                b.push_summands(out);
            }
            _ => out.push(self.clone()),
        }
    }

    /// The summands of a (possibly nested) sum; zero has none.
    pub fn summands(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.push_summands(&mut out);
        out
    }

    pub fn dot(a: &Term, b: &Term) -> Term {
        match (a.node(), b.node()) {
            (Node::Zero, _) | (_, Node::Zero) => Term::zero(),
            (Node::One, _) => b.clone(),
            (_, Node::One) => a.clone(),
            _ => Term::raw(Node::Dot(a.clone(), b.clone())),
        }
    }

    pub fn dots<I: IntoIterator<Item = Term>>(items: I) -> Term {
        items.into_iter().fold(Term::one(), |acc, t| Term::dot(&acc, &t))
    }

    pub fn star(a: &Term) -> Term {
        match a.node() {
            Node::Zero | Node::One => Term::one(),
            Node::Star(_) => a.clone(),
            _ => Term::raw(Node::Star(a.clone())),
        }
    }

    pub fn par(a: &Term, b: &Term) -> Term {
        match (a.node(), b.node()) {
            (Node::Zero, _) | (_, Node::Zero) => Term::zero(),
            (Node::One, _) => b.clone(),
            (_, Node::One) => a.clone(),
            _ => Term::raw(Node::Par(a.clone(), b.clone())),
        }
    }

    pub fn pars<I: IntoIterator<Item = Term>>(items: I) -> Term {
        items.into_iter().fold(Term::one(), |acc, t| Term::par(&acc, &t))
    }

    pub fn par_star(a: &Term) -> Term {
        match a.node() {
            Node::Zero | Node::One => Term::one(),
            Node::ParStar(_) => a.clone(),
            _ => Term::raw(Node::ParStar(a.clone())),
        }
    }

    /// Letters occurring in the term.
    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        self.collect_letters(&mut out, &mut seen);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<Letter>, seen: &mut BTreeSet<usize>) {
        if !seen.insert(self.ptr_id()) {
            return;
        }
        match self.node() {
            Node::Zero | Node::One => {}
            Node::Letter(l) => {
                out.insert(*l);
            }
            Node::Star(u) | Node::ParStar(u) => u.collect_letters(out, seen),
            Node::Plus(u, v) | Node::Dot(u, v) | Node::Par(u, v) => {
                u.collect_letters(out, seen);
                v.collect_letters(out, seen);
            }
        }
    }

    fn any_node(&self, pred: &dyn Fn(&Node) -> bool, seen: &mut BTreeSet<usize>) -> bool {
        if !seen.insert(self.ptr_id()) {
            return false;
        }
        if pred(self.node()) {
            return true;
        }
        match self.node() {
            Node::Zero | Node::One | Node::Letter(_) => false,
            Node::Star(u) | Node::ParStar(u) => u.any_node(pred, seen),
            Node::Plus(u, v) | Node::Dot(u, v) | Node::Par(u, v) => {
                u.any_node(pred, seen) || v.any_node(pred, seen)
            }
        }
    }

    /// No parallel iteration: the bw-rational fragment.
    pub fn is_bw_rational(&self) -> bool {
        !self.any_node(&|n| matches!(n, Node::ParStar(_)), &mut BTreeSet::new())
    }

    /// Only `0, 1, letters, +, ;, *`.
    pub fn is_regular(&self) -> bool {
        !self.any_node(&|n| matches!(n, Node::Par(..) | Node::ParStar(_)), &mut BTreeSet::new())
    }

    /// Only `0, 1, letters, +, |, ^`.
    pub fn is_commutative(&self) -> bool {
        !self.any_node(&|n| matches!(n, Node::Dot(..) | Node::Star(_)), &mut BTreeSet::new())
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for Term {}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.hash.cmp(&other.0.hash).then_with(|| self.0.node.cmp(&other.0.node))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::render_term_with(self, &|l: Letter, out: &mut alloc::string::String| {
            use core::fmt::Write;
            let _ = write!(out, "#{}", l.0);
        }))
    }
}
