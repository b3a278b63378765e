//! Normal forms: `1` occurs only as a top-level summand and `0` only as the
//! whole term. Stars become `u! = u*·u·u` and parallel stars `u(!) = u(*)∥u∥u`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::{Node, Term};
use crate::pomset::Letter;

/// A term in normal form: `nullable` says whether `1` is a summand, `body` is
/// the `1`-free, `0`-free remainder (absent when it denotes ∅).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormTerm {
    pub nullable: bool,
    pub body: Option<Body>,
}

/// A `1`-free, `0`-free term denoting a non-empty language of non-empty
/// pomsets. Sums are flattened, sorted and deduplicated; products are
/// flattened and parallel products sorted.
#[derive(Clone)]
pub struct Body(Arc<BodyInner>);

struct BodyInner {
    node: BodyNode,
    hash: u64,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BodyNode {
    Letter(Letter),
    Plus(Vec<Body>),
    Dot(Vec<Body>),
    Bang(Body),
    Par(Vec<Body>),
    ParBang(Body),
}

fn mix(h: u64, v: u64) -> u64 {
    let x = (h ^ v).wrapping_mul(0xD6E8_FEB8_6659_FD93);
    x ^ (x >> 31)
}

impl Body {
    fn new(node: BodyNode) -> Body {
        let hash = match &node {
            BodyNode::Letter(l) => mix(11, l.0 as u64),
            BodyNode::Bang(u) => mix(13, u.0.hash),
            BodyNode::ParBang(u) => mix(17, u.0.hash),
            BodyNode::Plus(cs) => cs.iter().fold(19, |h, c| mix(h, c.0.hash)),
            BodyNode::Dot(cs) => cs.iter().fold(23, |h, c| mix(h, c.0.hash)),
            BodyNode::Par(cs) => cs.iter().fold(29, |h, c| mix(h, c.0.hash)),
        };
        Body(Arc::new(BodyInner { node, hash }))
    }

    pub fn node(&self) -> &BodyNode {
        &self.0.node
    }

    pub(crate) fn ptr_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn letter(l: Letter) -> Body {
        Body::new(BodyNode::Letter(l))
    }

    pub fn sum<I: IntoIterator<Item = Body>>(items: I) -> Option<Body> {
        let mut parts = Vec::new();
        for b in items {
            match b.node() {
                BodyNode::Plus(cs) => parts.extend(cs.iter().cloned()),
                _ => parts.push(b),
            }
        }
        parts.sort();
        parts.dedup();
        match parts.len() {
            0 => None,
            1 => parts.pop(),
            _ => Some(Body::new(BodyNode::Plus(parts))),
        }
    }

    pub fn dot(a: &Body, b: &Body) -> Body {
        let mut parts = Vec::new();
        for x in [a, b] {
            match x.node() {
                BodyNode::Dot(cs) => parts.extend(cs.iter().cloned()),
                _ => parts.push(x.clone()),
            }
        }
        Body::new(BodyNode::Dot(parts))
    }

    pub fn par(a: &Body, b: &Body) -> Body {
        let mut parts = Vec::new();
        for x in [a, b] {
            match x.node() {
                BodyNode::Par(cs) => parts.extend(cs.iter().cloned()),
                _ => parts.push(x.clone()),
            }
        }
        parts.sort();
        Body::new(BodyNode::Par(parts))
    }

    pub fn bang(a: &Body) -> Body {
        Body::new(BodyNode::Bang(a.clone()))
    }

    pub fn par_bang(a: &Body) -> Body {
        Body::new(BodyNode::ParBang(a.clone()))
    }

    /// The summands (the body itself unless it is a sum).
    pub fn summands(&self) -> &[Body] {
        match self.node() {
            BodyNode::Plus(cs) => cs,
            _ => core::slice::from_ref(self),
        }
    }

    /// Every member is sequential.
    pub fn is_sequential(&self) -> bool {
        matches!(self.node(), BodyNode::Dot(_) | BodyNode::Bang(_))
    }

    /// Every member is parallel.
    pub fn is_parallel(&self) -> bool {
        matches!(self.node(), BodyNode::Par(_) | BodyNode::ParBang(_))
    }

    pub fn to_term(&self) -> Term {
        self.to_term_memo(&mut BTreeMap::new())
    }

    pub(crate) fn to_term_memo(&self, memo: &mut BTreeMap<usize, Term>) -> Term {
        if let Some(t) = memo.get(&self.ptr_id()) {
            return t.clone();
        }
        let t = match self.node() {
            BodyNode::Letter(l) => Term::letter(*l),
            BodyNode::Plus(cs) => {
                let parts: Vec<Term> = cs.iter().map(|c| c.to_term_memo(memo)).collect();
                Term::sum(parts)
            }
            BodyNode::Dot(cs) => {
                let parts: Vec<Term> = cs.iter().map(|c| c.to_term_memo(memo)).collect();
                Term::dots(parts)
            }
            BodyNode::Par(cs) => {
                let parts: Vec<Term> = cs.iter().map(|c| c.to_term_memo(memo)).collect();
                Term::pars(parts)
            }
            BodyNode::Bang(u) => {
                let u = u.to_term_memo(memo);
                Term::dot(&Term::star(&u), &Term::dot(&u, &u))
            }
            BodyNode::ParBang(u) => {
                let u = u.to_term_memo(memo);
                Term::par(&Term::par_star(&u), &Term::par(&u, &u))
            }
        };
        memo.insert(self.ptr_id(), t.clone());
        t
    }
}

impl PartialEq for Body {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for Body {}

impl Ord for Body {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.hash.cmp(&other.0.hash).then_with(|| self.0.node.cmp(&other.0.node))
    }
}

impl PartialOrd for Body {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl core::hash::Hash for Body {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.to_term(), f)
    }
}

impl fmt::Debug for NormTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.to_term(), f)
    }
}

impl NormTerm {
    pub const ZERO: NormTerm = NormTerm { nullable: false, body: None };
    pub const ONE: NormTerm = NormTerm { nullable: true, body: None };

    pub fn from_body(body: Body) -> NormTerm {
        NormTerm { nullable: false, body: Some(body) }
    }

    pub fn is_zero(&self) -> bool {
        !self.nullable && self.body.is_none()
    }

    /// Back to an ordinary term, expanding `u!` and `u(!)`.
    pub fn to_term(&self) -> Term {
        let body = self.body.as_ref().map_or_else(Term::zero, Body::to_term);
        if self.nullable {
            Term::plus(&Term::one(), &body)
        } else {
            body
        }
    }
}

/// Normal form of a term. Memoized on shared subterms, so the cost is linear
/// in the number of distinct nodes.
pub fn normalize(t: &Term) -> NormTerm {
    norm(t, &mut BTreeMap::new())
}

pub(crate) fn norm(t: &Term, memo: &mut BTreeMap<usize, NormTerm>) -> NormTerm {
    if let Some(n) = memo.get(&t.ptr_id()) {
        return n.clone();
    }
    let r = match t.node() {
        Node::Zero => NormTerm::ZERO,
        Node::One => NormTerm::ONE,
        Node::Letter(l) => NormTerm::from_body(Body::letter(*l)),
        Node::Plus(u, v) => {
            let (a, b) = (norm(u, memo), norm(v, memo));
            NormTerm { nullable: a.nullable || b.nullable, body: Body::sum(a.body.into_iter().chain(b.body)) }
        }
        Node::Dot(u, v) => product(norm(u, memo), norm(v, memo), Body::dot),
        Node::Par(u, v) => product(norm(u, memo), norm(v, memo), Body::par),
        Node::Star(u) => iterate(norm(u, memo), Body::bang),
        Node::ParStar(u) => iterate(norm(u, memo), Body::par_bang),
    };
    memo.insert(t.ptr_id(), r.clone());
    r
}

// (1+u)(1+v) = 1 + u + v + uv with the absent parts dropped.
fn product(a: NormTerm, b: NormTerm, op: fn(&Body, &Body) -> Body) -> NormTerm {
    if a.is_zero() || b.is_zero() {
        return NormTerm::ZERO;
    }
    let mut parts = Vec::new();
    if let (Some(x), Some(y)) = (&a.body, &b.body) {
        parts.push(op(x, y));
    }
    if a.nullable {
        parts.extend(b.body.clone());
    }
    if b.nullable {
        parts.extend(a.body.clone());
    }
    NormTerm { nullable: a.nullable && b.nullable, body: Body::sum(parts) }
}

// (1+u)* = u! + 1 + u
fn iterate(a: NormTerm, bang: fn(&Body) -> Body) -> NormTerm {
    match a.body {
        None => NormTerm::ONE,
        Some(u) => NormTerm { nullable: true, body: Body::sum([bang(&u), u]) },
    }
}
