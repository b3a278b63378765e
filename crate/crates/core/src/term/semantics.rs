//! Language-level queries on terms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::norm::{normalize, Body, BodyNode};
use super::{Node, Term};
use crate::error::{Error, Result};
use crate::pomset::{ExtNat, Letter, SpPomset};

/// Largest size accepted by [`slice`].
pub const SLICE_CAP: usize = 12;

/// Whether `[[t]]` is empty. Structural: `0` is empty, sums need both sides
/// empty, products either side, and iterations are never empty.
pub fn is_empty(t: &Term) -> bool {
    fn go(t: &Term, memo: &mut BTreeMap<usize, bool>) -> bool {
        if let Some(&b) = memo.get(&t.ptr_id()) {
            return b;
        }
        let r = match t.node() {
            Node::Zero => true,
            Node::One | Node::Letter(_) | Node::Star(_) | Node::ParStar(_) => false,
            Node::Plus(u, v) => go(u, memo) && go(v, memo),
            Node::Dot(u, v) | Node::Par(u, v) => go(u, memo) || go(v, memo),
        };
        memo.insert(t.ptr_id(), r);
        r
    }
    go(t, &mut BTreeMap::new())
}

/// Whether the empty pomset belongs to `[[t]]`.
pub fn nullable(t: &Term) -> bool {
    fn go(t: &Term, memo: &mut BTreeMap<usize, bool>) -> bool {
        if let Some(&b) = memo.get(&t.ptr_id()) {
            return b;
        }
        let r = match t.node() {
            Node::Zero | Node::Letter(_) => false,
            Node::One | Node::Star(_) | Node::ParStar(_) => true,
            Node::Plus(u, v) => go(u, memo) || go(v, memo),
            Node::Dot(u, v) | Node::Par(u, v) => go(u, memo) && go(v, memo),
        };
        memo.insert(t.ptr_id(), r);
        r
    }
    go(t, &mut BTreeMap::new())
}

/// Letters that are members of `[[t]]` as single-vertex pomsets.
pub fn atoms(t: &Term) -> BTreeSet<Letter> {
    let mut out = BTreeSet::new();
    if let Some(b) = normalize(t).body {
        for s in b.summands() {
            if let BodyNode::Letter(l) = s.node() {
                out.insert(*l);
            }
        }
    }
    out
}

/// A member of minimum size, ties broken by the pomset order at each node.
pub fn min_member(t: &Term) -> Option<SpPomset> {
    fn go(t: &Term, memo: &mut BTreeMap<usize, Option<SpPomset>>) -> Option<SpPomset> {
        if let Some(p) = memo.get(&t.ptr_id()) {
            return p.clone();
        }
        let r = match t.node() {
            Node::Zero => None,
            Node::One | Node::Star(_) | Node::ParStar(_) => Some(SpPomset::Unit),
            Node::Letter(l) => Some(SpPomset::Atom(*l)),
            Node::Plus(u, v) => match (go(u, memo), go(v, memo)) {
                (Some(a), Some(b)) => Some(core::cmp::min_by_key(a, b, |p| (p.size(), p.clone()))),
                (a, b) => a.or(b),
            },
            Node::Dot(u, v) => match (go(u, memo), go(v, memo)) {
                (Some(a), Some(b)) => Some(SpPomset::seq(&a, &b)),
                _ => None,
            },
            Node::Par(u, v) => match (go(u, memo), go(v, memo)) {
                (Some(a), Some(b)) => Some(SpPomset::par(&a, &b)),
                _ => None,
            },
        };
        memo.insert(t.ptr_id(), r.clone());
        r
    }
    go(t, &mut BTreeMap::new())
}

/// Supremum of member widths, with the width of ∅ taken to be 0.
pub fn width_of(t: &Term) -> ExtNat {
    // (empty, has a non-unit member, width)
    fn go(t: &Term, memo: &mut BTreeMap<usize, (bool, bool, ExtNat)>) -> (bool, bool, ExtNat) {
        if let Some(&r) = memo.get(&t.ptr_id()) {
            return r;
        }
        let z = ExtNat::Finite(0);
        let r = match t.node() {
            Node::Zero => (true, false, z),
            Node::One => (false, false, z),
            Node::Letter(_) => (false, true, ExtNat::Finite(1)),
            Node::Plus(u, v) => {
                let (a, b) = (go(u, memo), go(v, memo));
                (a.0 && b.0, a.1 || b.1, a.2.max(b.2))
            }
            Node::Dot(u, v) | Node::Par(u, v) => {
                let (a, b) = (go(u, memo), go(v, memo));
                if a.0 || b.0 {
                    (true, false, z)
                } else if matches!(t.node(), Node::Dot(..)) {
                    (false, a.1 || b.1, a.2.max(b.2))
                } else {
                    (false, a.1 || b.1, a.2.add(b.2))
                }
            }
            Node::Star(u) => {
                let a = go(u, memo);
                (false, a.1, a.2)
            }
            Node::ParStar(u) => {
                let a = go(u, memo);
                (false, a.1, if a.1 { ExtNat::Infinity } else { z })
            }
        };
        memo.insert(t.ptr_id(), r);
        r
    }
    go(t, &mut BTreeMap::new()).2
}

#[derive(Clone, Copy, Default)]
struct DepthInfo {
    atom: bool,
    seq: Option<usize>,
    par: Option<usize>,
}

impl DepthInfo {
    fn merge(self, o: DepthInfo) -> DepthInfo {
        DepthInfo { atom: self.atom || o.atom, seq: self.seq.max(o.seq), par: self.par.max(o.par) }
    }

    // Largest depth of a sequential factor contributed by a member.
    fn seq_factor(self) -> usize {
        let a = self.atom.then_some(0);
        a.max(self.seq.map(|d| d - 1)).max(self.par).unwrap_or(0)
    }

    // Largest depth of a parallel component contributed by a member.
    fn par_component(self) -> usize {
        let a = self.atom.then_some(0);
        a.max(self.seq).max(self.par.map(|d| d - 1)).unwrap_or(0)
    }
}

fn body_depth(b: &Body, memo: &mut BTreeMap<usize, DepthInfo>) -> DepthInfo {
    if let Some(&d) = memo.get(&b.ptr_id()) {
        return d;
    }
    let d = match b.node() {
        BodyNode::Letter(_) => DepthInfo { atom: true, ..Default::default() },
        BodyNode::Plus(cs) => cs.iter().fold(DepthInfo::default(), |acc, c| acc.merge(body_depth(c, memo))),
        BodyNode::Dot(cs) => {
            let m = cs.iter().map(|c| body_depth(c, memo).seq_factor()).max().unwrap_or(0);
            DepthInfo { seq: Some(m + 1), ..Default::default() }
        }
        BodyNode::Bang(u) => DepthInfo { seq: Some(body_depth(u, memo).seq_factor() + 1), ..Default::default() },
        BodyNode::Par(cs) => {
            let m = cs.iter().map(|c| body_depth(c, memo).par_component()).max().unwrap_or(0);
            DepthInfo { par: Some(m + 1), ..Default::default() }
        }
        BodyNode::ParBang(u) => {
            DepthInfo { par: Some(body_depth(u, memo).par_component() + 1), ..Default::default() }
        }
    };
    memo.insert(b.ptr_id(), d);
    d
}

/// Exact maximum depth over the members of a normalized body.
pub(crate) fn body_depth_of(b: &Body) -> usize {
    let d = body_depth(b, &mut BTreeMap::new());
    d.seq.max(d.par).unwrap_or(0)
}

/// Maximum depth of a member of `[[t]]` (0 for ∅).
pub fn depth_of(t: &Term) -> usize {
    normalize(t).body.map_or(0, |b| body_depth_of(&b))
}

/// Whether `p ∈ [[t]]`, by recursion on the unique decomposition of `p`.
pub fn member(p: &SpPomset, t: &Term) -> bool {
    Matcher::new(t).matches(p)
}

/// Membership tests against one term, sharing work between queries.
pub struct Matcher {
    t: Term,
    memo: HashMap<(usize, SpPomset), bool>,
    /// Least and greatest member size per subterm; `usize::MAX` as the least
    /// size marks an empty language.
    bounds: BTreeMap<usize, (usize, Option<usize>)>,
    summands: BTreeMap<usize, Vec<Term>>,
}

impl Matcher {
    pub fn new(t: &Term) -> Matcher {
        Matcher { t: t.clone(), memo: HashMap::new(), bounds: BTreeMap::new(), summands: BTreeMap::new() }
    }

    pub fn matches(&mut self, p: &SpPomset) -> bool {
        let t = self.t.clone();
        self.go(p, &t)
    }

    fn bounds(&mut self, t: &Term) -> (usize, Option<usize>) {
        if let Some(&b) = self.bounds.get(&t.ptr_id()) {
            return b;
        }
        let add = |a: Option<usize>, b: Option<usize>| a.zip(b).map(|(x, y)| x + y);
        let r = match t.node() {
            Node::Zero => (usize::MAX, Some(0)),
            Node::One => (0, Some(0)),
            Node::Letter(_) => (1, Some(1)),
            Node::Plus(u, v) => {
                let (a, b) = (self.bounds(u), self.bounds(v));
                let hi = if a.0 == usize::MAX {
                    b.1
                } else if b.0 == usize::MAX {
                    a.1
                } else {
                    a.1.zip(b.1).map(|(x, y)| x.max(y))
                };
                (a.0.min(b.0), hi)
            }
            Node::Dot(u, v) | Node::Par(u, v) => {
                let (a, b) = (self.bounds(u), self.bounds(v));
                if a.0 == usize::MAX || b.0 == usize::MAX {
                    (usize::MAX, Some(0))
                } else {
                    (a.0 + b.0, add(a.1, b.1))
                }
            }
            Node::Star(u) | Node::ParStar(u) => {
                let b = self.bounds(u);
                (0, if b.0 == usize::MAX || b.1 == Some(0) { Some(0) } else { None })
            }
        };
        self.bounds.insert(t.ptr_id(), r);
        r
    }

    fn go(&mut self, p: &SpPomset, t: &Term) -> bool {
        let (lo, hi) = self.bounds(t);
        if p.size() < lo || hi.is_some_and(|h| p.size() > h) {
            return false;
        }
        let key = (t.ptr_id(), p.clone());
        if let Some(&b) = self.memo.get(&key) {
            return b;
        }
        let r = match t.node() {
            Node::Zero => false,
            Node::One => *p == SpPomset::Unit,
            Node::Letter(l) => *p == SpPomset::Atom(*l),
            Node::Plus(..) => {
                let parts = self.summands.entry(t.ptr_id()).or_insert_with(|| t.summands()).clone();
                parts.iter().any(|s| self.go(p, s))
            }
            Node::Dot(u, v) => {
                let f = p.seq_factors();
                (0..=f.len()).any(|k| self.go(&seq_of(&f[..k]), u) && self.go(&seq_of(&f[k..]), v))
            }
            Node::Star(u) => {
                let f = p.seq_factors();
                f.is_empty() || (1..=f.len()).any(|k| self.go(&seq_of(&f[..k]), u) && self.go(&seq_of(&f[k..]), t))
            }
            Node::Par(u, v) => {
                let c = p.par_components();
                (0u32..1 << c.len()).any(|mask| {
                    let (l, r) = split_par(c, mask);
                    self.go(&l, u) && self.go(&r, v)
                })
            }
            Node::ParStar(u) => {
                let c = p.par_components();
                c.is_empty()
                    || (0u32..1 << c.len()).filter(|m| m & 1 == 1).any(|mask| {
                        let (l, r) = split_par(c, mask);
                        self.go(&l, u) && self.go(&r, t)
                    })
            }
        };
        self.memo.insert(key, r);
        r
    }
}

fn seq_of(parts: &[SpPomset]) -> SpPomset {
    SpPomset::from_seq_parts(parts.to_vec())
}

fn split_par(c: &[SpPomset], mask: u32) -> (SpPomset, SpPomset) {
    let mut l = Vec::new();
    let mut r = Vec::new();
    for (i, x) in c.iter().enumerate() {
        if mask & (1 << i) != 0 {
            l.push(x.clone());
        } else {
            r.push(x.clone());
        }
    }
    (SpPomset::from_par_parts(l), SpPomset::from_par_parts(r))
}

type Layers = Vec<BTreeSet<SpPomset>>;

/// Memo table for slicing several terms that share subterms.
pub struct SliceCache {
    n: usize,
    map: BTreeMap<usize, (Term, Arc<Layers>)>,
}

impl SliceCache {
    pub fn new(n: usize) -> Result<SliceCache> {
        if n > SLICE_CAP {
            return Err(Error::CapExceeded { what: "slice size", limit: SLICE_CAP });
        }
        Ok(SliceCache { n, map: BTreeMap::new() })
    }

    /// Members of `[[t]]` with at most `n` vertices.
    pub fn slice(&mut self, t: &Term) -> BTreeSet<SpPomset> {
        let layers = self.layers(t);
        layers.iter().flat_map(|s| s.iter().cloned()).collect()
    }

    fn layers(&mut self, t: &Term) -> Arc<Layers> {
        if let Some((_, l)) = self.map.get(&t.ptr_id()) {
            return l.clone();
        }
        let n = self.n;
        let mut out: Layers = vec![BTreeSet::new(); n + 1];
        match t.node() {
            Node::Zero => {}
            Node::One => {
                out[0].insert(SpPomset::Unit);
            }
            Node::Letter(l) => {
                if n >= 1 {
                    out[1].insert(SpPomset::Atom(*l));
                }
            }
            Node::Plus(u, v) => {
                let (a, b) = (self.layers(u), self.layers(v));
                for i in 0..=n {
                    out[i].extend(a[i].iter().cloned());
                    out[i].extend(b[i].iter().cloned());
                }
            }
            Node::Dot(u, v) | Node::Par(u, v) => {
                let (a, b) = (self.layers(u), self.layers(v));
                let seq = matches!(t.node(), Node::Dot(..));
                combine(&a, &b, &mut out, seq);
            }
            Node::Star(u) | Node::ParStar(u) => {
                let a = self.layers(u);
                let seq = matches!(t.node(), Node::Star(_));
                out[0].insert(SpPomset::Unit);
                for s in 1..=n {
                    let mut layer = BTreeSet::new();
                    for i in 1..=s {
                        for p in &a[i] {
                            for q in &out[s - i] {
                                layer.insert(if seq { SpPomset::seq(p, q) } else { SpPomset::par(p, q) });
                            }
                        }
                    }
                    out[s] = layer;
                }
            }
        }
        let out = Arc::new(out);
        self.map.insert(t.ptr_id(), (t.clone(), out.clone()));
        out
    }
}

fn combine(a: &Layers, b: &Layers, out: &mut Layers, seq: bool) {
    let n = out.len() - 1;
    for i in 0..=n {
        if a[i].is_empty() {
            continue;
        }
        for j in 0..=n - i {
            for p in &a[i] {
                for q in &b[j] {
                    out[i + j].insert(if seq { SpPomset::seq(p, q) } else { SpPomset::par(p, q) });
                }
            }
        }
    }
}

/// `{ p ∈ [[t]] : |p| ≤ n }`.
pub fn slice(t: &Term, n: usize) -> Result<BTreeSet<SpPomset>> {
    Ok(SliceCache::new(n)?.slice(t))
}
