//! Boolean operations on rational pomset languages and their equivalence.
//!
//! A family of terms is refined into a basis of terms with non-empty,
//! pairwise disjoint languages such that every input is a union of basis
//! elements. Parallel and sequential parts are decomposed over fresh labels,
//! the labels are refined recursively, and the Boolean cells of the resulting
//! skeletons are computed with the semilinear and regular engines.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::pomset::{Letter, SpPomset};
use crate::regular::{compile_regex, BoolOp, Dfa};
use crate::semilinear::comreg_atoms;
use crate::term::semantics::body_depth_of;
use crate::term::{member, min_member, normalize, substitute, Body, BodyNode, LabelRegistry, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mode {
    Parallel,
    Sequential,
}

impl Mode {
    fn owns(self, b: &Body) -> bool {
        match self {
            Mode::Parallel => b.is_parallel(),
            Mode::Sequential => b.is_sequential(),
        }
    }
}

/// The sequential, parallel and atomic parts of a term.
#[derive(Clone, Debug)]
pub struct Partition3 {
    pub t_seq: Term,
    pub t_par: Term,
    /// Letters and possibly `1`.
    pub t_atom: Term,
    par_body: Option<Body>,
}

pub fn partition_term(t: &Term) -> Partition3 {
    let n = normalize(t);
    let summands: &[Body] = n.body.as_ref().map_or(&[], |b| b.summands());
    let pick = |f: fn(&Body) -> bool| Body::sum(summands.iter().filter(|b| f(b)).cloned());
    let seq = pick(Body::is_sequential);
    let par = pick(Body::is_parallel);
    let atom = pick(|b| matches!(b.node(), BodyNode::Letter(_)));
    let to_term = |b: &Option<Body>| b.as_ref().map_or_else(Term::zero, Body::to_term);
    let mut t_atom = to_term(&atom);
    if n.nullable {
        t_atom = Term::plus(&Term::one(), &t_atom);
    }
    Partition3 { t_seq: to_term(&seq), t_par: to_term(&par), t_atom, par_body: par }
}

impl Partition3 {
    /// The members of the parallel part with exactly `i` parallel components.
    pub fn para_slice(&self, i: usize) -> Term {
        match &self.par_body {
            Some(b) if i >= 1 => component_slices(b, i, &mut BTreeMap::new())[i].clone(),
            _ => Term::zero(),
        }
    }
}

// Entry `j` holds the members with exactly `j` parallel components, j ≤ n.
fn component_slices(b: &Body, n: usize, memo: &mut BTreeMap<usize, Vec<Term>>) -> Vec<Term> {
    if let Some(v) = memo.get(&b.ptr_id()) {
        return v.clone();
    }
    let conv = |x: &[Term], y: &[Term]| -> Vec<Term> {
        (0..=n).map(|i| Term::sum((0..=i).map(|j| Term::par(&x[j], &y[i - j])))).collect()
    };
    let mut v = vec![Term::zero(); n + 1];
    match b.node() {
        BodyNode::Letter(_) | BodyNode::Dot(_) | BodyNode::Bang(_) => {
            if n >= 1 {
                v[1] = b.to_term();
            }
        }
        BodyNode::Plus(cs) => {
            for c in cs {
                let w = component_slices(c, n, memo);
                for (x, y) in v.iter_mut().zip(w) {
                    *x = Term::plus(x, &y);
                }
            }
        }
        BodyNode::Par(cs) => {
            v[0] = Term::one();
            for c in cs {
                v = conv(&v, &component_slices(c, n, memo));
            }
        }
        BodyNode::ParBang(u) => {
            let a = component_slices(u, n, memo);
            let mut q = a.clone();
            for _ in 2..=n.max(1) {
                q = conv(&q, &a);
                for (x, y) in v.iter_mut().zip(&q) {
                    *x = Term::plus(x, y);
                }
            }
        }
    }
    memo.insert(b.ptr_id(), v.clone());
    v
}

/// A term written over fresh labels for its parallel components (or
/// sequential factors), with `ν` mapping labels back.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub skeleton: Term,
    pub registry: LabelRegistry,
}

pub fn decompose(t: &Term, mode: Mode) -> Result<Decomposition> {
    let n = normalize(t);
    if n.nullable {
        return Err(Error::ModeMismatch("term contains the empty pomset"));
    }
    let bodies: Vec<Body> = n.body.into_iter().collect();
    let sk = decompose_bodies(&bodies, mode)?;
    let mut registry = LabelRegistry::new();
    for f in &sk.factors {
        registry.label(&f.to_term());
    }
    Ok(Decomposition { skeleton: sk.skeletons.into_iter().next().unwrap_or_else(Term::zero), registry })
}

/// Skeletons of several bodies over one shared label alphabet: label `j` is
/// `Letter(j)` and stands for `factors[j]`.
#[derive(Clone, Debug)]
pub(crate) struct Skeletons {
    pub skeletons: Vec<Term>,
    pub factors: Vec<Body>,
}

pub(crate) fn decompose_bodies(bodies: &[Body], mode: Mode) -> Result<Skeletons> {
    for b in bodies {
        if !b.summands().iter().all(|s| mode.owns(s)) {
            return Err(Error::ModeMismatch(match mode {
                Mode::Parallel => "term is not parallel",
                Mode::Sequential => "term is not sequential",
            }));
        }
    }
    Ok(skeletons_of(bodies, mode))
}

/// As [`decompose_bodies`], but summands outside the mode become single labels.
pub(crate) fn skeletons_of(bodies: &[Body], mode: Mode) -> Skeletons {
    struct Ctx {
        mode: Mode,
        labels: BTreeMap<Body, Letter>,
        factors: Vec<Body>,
        memo: BTreeMap<usize, Term>,
    }
    impl Ctx {
        fn label(&mut self, b: &Body) -> Term {
            let next = Letter(self.factors.len() as u32);
            let l = *self.labels.entry(b.clone()).or_insert(next);
            if l == next {
                self.factors.push(b.clone());
            }
            Term::letter(l)
        }

        fn conv(&mut self, b: &Body) -> Term {
            if let Some(t) = self.memo.get(&b.ptr_id()) {
                return t.clone();
            }
            let t = match (self.mode, b.node()) {
                (_, BodyNode::Plus(cs)) => {
                    let parts: Vec<Term> = cs.iter().map(|c| self.conv(c)).collect();
                    Term::sum(parts)
                }
                (Mode::Parallel, BodyNode::Par(cs)) => {
                    let parts: Vec<Term> = cs.iter().map(|c| self.conv(c)).collect();
                    Term::pars(parts)
                }
                (Mode::Parallel, BodyNode::ParBang(u)) => {
                    let x = self.conv(u);
                    Term::pars([Term::par_star(&x), x.clone(), x])
                }
                (Mode::Sequential, BodyNode::Dot(cs)) => {
                    let parts: Vec<Term> = cs.iter().map(|c| self.conv(c)).collect();
                    Term::dots(parts)
                }
                (Mode::Sequential, BodyNode::Bang(u)) => {
                    let x = self.conv(u);
                    Term::dots([Term::star(&x), x.clone(), x])
                }
                _ => self.label(b),
            };
            self.memo.insert(b.ptr_id(), t.clone());
            t
        }
    }
    let mut ctx = Ctx { mode, labels: BTreeMap::new(), factors: Vec::new(), memo: BTreeMap::new() };
    let skeletons = bodies.iter().map(|b| ctx.conv(b)).collect();
    Skeletons { skeletons, factors: ctx.factors }
}

/// Terms with non-empty, pairwise disjoint languages; input `i` denotes the
/// union of the elements listed in `cover[i]`.
#[derive(Clone, Debug)]
pub struct Basis {
    pub elements: Vec<Term>,
    pub cover: Vec<BTreeSet<usize>>,
}

pub fn refine_basis(ts: &[Term], budget: &Budget) -> Result<Basis> {
    let norms: Vec<_> = ts.iter().map(normalize).collect();
    let present: Vec<usize> = (0..ts.len()).filter(|&i| norms[i].body.is_some()).collect();
    let bodies: Vec<Body> = present.iter().map(|&i| norms[i].body.clone().unwrap()).collect();
    let (elems, sub_cover) = refine_bodies(&bodies, budget)?;
    let mut elements: Vec<Term> = elems.iter().map(Body::to_term).collect();
    let mut cover = vec![BTreeSet::new(); ts.len()];
    for (k, &i) in present.iter().enumerate() {
        cover[i] = sub_cover[k].clone();
    }
    if norms.iter().any(|n| n.nullable) {
        let unit = elements.len();
        elements.push(Term::one());
        for (i, n) in norms.iter().enumerate() {
            if n.nullable {
                cover[i].insert(unit);
            }
        }
    }
    Ok(Basis { elements, cover })
}

pub(crate) fn refine_bodies(inputs: &[Body], budget: &Budget) -> Result<(Vec<Body>, Vec<BTreeSet<usize>>)> {
    let mut elements: Vec<Body> = Vec::new();
    let mut cover = vec![BTreeSet::new(); inputs.len()];
    let mut letters: BTreeMap<Letter, usize> = BTreeMap::new();
    for (i, b) in inputs.iter().enumerate() {
        for s in b.summands() {
            if let BodyNode::Letter(l) = s.node() {
                let idx = *letters.entry(*l).or_insert_with(|| {
                    elements.push(s.clone());
                    elements.len() - 1
                });
                cover[i].insert(idx);
            }
        }
    }
    for mode in [Mode::Parallel, Mode::Sequential] {
        let pool: Vec<(usize, Body)> = inputs
            .iter()
            .enumerate()
            .filter_map(|(i, b)| Body::sum(b.summands().iter().filter(|s| mode.owns(s)).cloned()).map(|p| (i, p)))
            .collect();
        if pool.is_empty() {
            continue;
        }
        let bodies: Vec<Body> = pool.iter().map(|(_, b)| b.clone()).collect();
        let sk = decompose_bodies(&bodies, mode)?;
        let outer = body_depth_of(&Body::sum(bodies.iter().cloned()).unwrap());
        let inner = body_depth_of(&Body::sum(sk.factors.iter().cloned()).unwrap());
        assert!(inner < outer, "basis refinement depth did not decrease ({inner} >= {outer})");
        let (basis, fcover) = refine_bodies(&sk.factors, budget)?;
        let relabel: BTreeMap<Letter, Term> = fcover
            .iter()
            .enumerate()
            .map(|(j, xs)| (Letter(j as u32), Term::sum(xs.iter().map(|&x| Term::letter(Letter(x as u32))))))
            .collect();
        let skels: Vec<Term> = sk.skeletons.iter().map(|s| substitute(s, &relabel)).collect();
        let alphabet: Vec<Letter> = (0..basis.len()).map(|x| Letter(x as u32)).collect();
        let cells = match mode {
            Mode::Parallel => {
                let at = comreg_atoms(&skels, &alphabet, budget)?;
                let mut sets = vec![BTreeSet::new(); at.cells.len()];
                for (i, cs) in at.cover.iter().enumerate() {
                    for &c in cs {
                        sets[c].insert(i);
                    }
                }
                at.cells.into_iter().zip(sets).collect()
            }
            Mode::Sequential => regular_cells(&skels, &alphabet, budget)?,
        };
        let nu: BTreeMap<Letter, Term> =
            basis.iter().enumerate().map(|(x, b)| (Letter(x as u32), b.to_term())).collect();
        for (cell, members) in cells {
            let body = normalize(&substitute(&cell, &nu)).body.expect("basis cells are non-empty");
            let idx = elements.len();
            elements.push(body);
            for p in members {
                cover[pool[p].0].insert(idx);
            }
        }
    }
    Ok((elements, cover))
}

// Non-empty cells ⋂_{i∈N} L_i ∖ ⋃_{i∉N} L_i with N ≠ ∅ of regular terms.
fn regular_cells(ts: &[Term], alphabet: &[Letter], budget: &Budget) -> Result<Vec<(Term, BTreeSet<usize>)>> {
    let dfas: Vec<Dfa> = ts.iter().map(|t| compile_regex(t, alphabet, budget)).collect::<Result<_>>()?;
    let mut cells = vec![(Dfa::universal(alphabet), BTreeSet::new())];
    for (i, d) in dfas.iter().enumerate() {
        let mut next = Vec::new();
        for (c, n) in cells {
            let inside = Dfa::boolean(BoolOp::Intersect, &c, d, budget)?;
            if !inside.is_empty() {
                let mut n2: BTreeSet<usize> = n.clone();
                n2.insert(i);
                next.push((inside, n2));
            }
            let outside = Dfa::boolean(BoolOp::Difference, &c, d, budget)?;
            if !outside.is_empty() {
                next.push((outside, n));
            }
        }
        cells = next;
    }
    Ok(cells.into_iter().filter(|(_, n)| !n.is_empty()).map(|(d, n)| (d.to_term(), n)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Difference,
    Intersection,
    Union,
}

/// A term for `[[t1]] op [[t2]]`.
pub fn boolean_term(op: SetOp, t1: &Term, t2: &Term, budget: &Budget) -> Result<Term> {
    if op == SetOp::Union {
        return Ok(Term::plus(t1, t2));
    }
    let basis = refine_basis(&[t1.clone(), t2.clone()], budget)?;
    let (c1, c2) = (&basis.cover[0], &basis.cover[1]);
    let pick: Vec<usize> = match op {
        SetOp::Difference => c1.difference(c2).copied().collect(),
        _ => c1.intersection(c2).copied().collect(),
    };
    Ok(Term::sum(pick.into_iter().map(|i| basis.elements[i].clone())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// A pomset in exactly one of the two languages.
    NotEqual(SpPomset),
}

pub fn decide_equiv(t1: &Term, t2: &Term, budget: &Budget) -> Result<Equivalence> {
    let basis = refine_basis(&[t1.clone(), t2.clone()], budget)?;
    let witness = basis.cover[0]
        .symmetric_difference(&basis.cover[1])
        .filter_map(|&i| min_member(&basis.elements[i]))
        .min_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
    Ok(match witness {
        None => Equivalence::Equal,
        Some(w) => {
            assert!(member(&w, t1) != member(&w, t2), "equivalence witness is in both or neither language");
            Equivalence::NotEqual(w)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Alphabet;
    use crate::term::slice;

    fn setup() -> (Alphabet, Budget) {
        (Alphabet::with_names(["a", "b", "c"]), Budget::default())
    }

    fn sl(t: &Term, n: usize) -> BTreeSet<SpPomset> {
        slice(t, n).unwrap()
    }

    #[test]
    fn partition_examples() {
        let (mut al, _) = setup();
        let p = partition_term(&al.parse_term("a + a;b + a|b").unwrap());
        assert_eq!(al.render_term(&p.t_seq), "a;b");
        assert_eq!(al.render_term(&p.t_par), "a|b");
        assert_eq!(al.render_term(&p.t_atom), "a");
        let p = partition_term(&al.parse_term("a*").unwrap());
        assert!(p.t_par.is_zero());
        assert_eq!(sl(&p.t_atom, 3), sl(&al.parse_term("1+a").unwrap(), 3));
        assert_eq!(sl(&p.t_seq, 4), sl(&al.parse_term("a;a+a;a;a+a;a;a;a").unwrap(), 4));
        let p = partition_term(&al.parse_term("a|b").unwrap());
        assert_eq!(sl(&p.para_slice(2), 3), sl(&al.parse_term("a|b").unwrap(), 3));
        assert!(sl(&p.para_slice(3), 3).is_empty());
        let p = partition_term(&al.parse_term("(a+b)^").unwrap());
        let s3 = sl(&p.para_slice(3), 4);
        assert_eq!(s3, sl(&al.parse_term("(a+b)|(a+b)|(a+b)").unwrap(), 4));
    }

    #[test]
    fn decompose_examples() {
        let (mut al, _) = setup();
        let d = decompose(&al.parse_term("(a;b)|c").unwrap(), Mode::Parallel).unwrap();
        assert_eq!(d.registry.len(), 2);
        let back = substitute(&d.skeleton, &d.registry.nu());
        assert_eq!(sl(&back, 3), sl(&al.parse_term("(a;b)|c").unwrap(), 3));
        let t = al.parse_term("(a|b);(a|b)").unwrap();
        let d = decompose(&t, Mode::Sequential).unwrap();
        assert_eq!(d.registry.len(), 1);
        assert_eq!(sl(&substitute(&d.skeleton, &d.registry.nu()), 4), sl(&t, 4));
        assert!(decompose(&al.parse_term("a;b").unwrap(), Mode::Parallel).is_err());
        assert!(decompose(&al.parse_term("1+a|b").unwrap(), Mode::Parallel).is_err());
    }

    #[test]
    fn basis_examples() {
        let (mut al, b) = setup();
        let ts = [al.parse_term("a+b").unwrap(), al.parse_term("b+c").unwrap()];
        let basis = refine_basis(&ts, &b).unwrap();
        assert_eq!(basis.elements.len(), 3);
        assert_eq!(basis.cover[0].len(), 2);
        let ts = [al.parse_term("a|b").unwrap(), al.parse_term("a|b + a|c").unwrap()];
        let basis = refine_basis(&ts, &b).unwrap();
        assert_eq!(basis.elements.len(), 2);
        assert_eq!(basis.cover[0].len(), 1);
        assert_eq!(basis.cover[1].len(), 2);
    }

    #[test]
    fn boolean_examples() {
        let (mut al, b) = setup();
        let t1 = al.parse_term("(a|b)+a;b").unwrap();
        let t2 = al.parse_term("a|b").unwrap();
        let d = boolean_term(SetOp::Difference, &t1, &t2, &b).unwrap();
        assert_eq!(sl(&d, 4), sl(&al.parse_term("a;b").unwrap(), 4));
        assert!(boolean_term(SetOp::Difference, &t1, &t1, &b).unwrap().is_zero());
        let m = boolean_term(SetOp::Intersection, &al.parse_term("a*").unwrap(), &al.parse_term("(a;a)*").unwrap(), &b)
            .unwrap();
        assert_eq!(sl(&m, 6), sl(&al.parse_term("(a;a)*").unwrap(), 6));
    }

    #[test]
    fn equivalence_examples() {
        let (mut al, b) = setup();
        let eq = |al: &mut Alphabet, x: &str, y: &str| {
            let (t1, t2) = (al.parse_term(x).unwrap(), al.parse_term(y).unwrap());
            decide_equiv(&t1, &t2, &b).unwrap()
        };
        assert_eq!(eq(&mut al, "(a|b)+(b|a)", "a|b"), Equivalence::Equal);
        assert_eq!(eq(&mut al, "(a;b)*;a", "a;(b;a)*"), Equivalence::Equal);
        assert_eq!(eq(&mut al, "a^", "1 + a|a^"), Equivalence::Equal);
        assert_eq!(eq(&mut al, "(a|b)^", "1 + (a|b)^|a|b"), Equivalence::Equal);
        let Equivalence::NotEqual(w) = eq(&mut al, "a;(b|c)", "(a;b)|c") else { panic!() };
        assert_eq!(al.render_pomset(&w), "a;(b|c)");
        let Equivalence::NotEqual(w) = eq(&mut al, "a^", "(a|a)^") else { panic!() };
        assert_eq!(al.render_pomset(&w), "a");
    }
}
