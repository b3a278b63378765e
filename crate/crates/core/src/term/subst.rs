use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Node, Term};
use crate::pomset::Letter;

/// Replaces letters by terms homomorphically; letters outside `map` stay.
pub fn substitute(t: &Term, map: &BTreeMap<Letter, Term>) -> Term {
    fn go(t: &Term, map: &BTreeMap<Letter, Term>, memo: &mut BTreeMap<usize, Term>) -> Term {
        if let Some(r) = memo.get(&t.ptr_id()) {
            return r.clone();
        }
        let r = match t.node() {
            Node::Zero | Node::One => t.clone(),
            Node::Letter(l) => map.get(l).cloned().unwrap_or_else(|| t.clone()),
            Node::Plus(u, v) => Term::plus(&go(u, map, memo), &go(v, map, memo)),
            Node::Dot(u, v) => Term::dot(&go(u, map, memo), &go(v, map, memo)),
            Node::Par(u, v) => Term::par(&go(u, map, memo), &go(v, map, memo)),
            Node::Star(u) => Term::star(&go(u, map, memo)),
            Node::ParStar(u) => Term::par_star(&go(u, map, memo)),
        };
        memo.insert(t.ptr_id(), r.clone());
        r
    }
    go(t, map, &mut BTreeMap::new())
}

/// Fresh labels `l_u` for a finite set of terms `U`, with the inverse `ν`.
///
/// Labels live in their own namespace: they are only ever mixed with
/// user letters through [`substitute`] with [`LabelRegistry::nu`].
#[derive(Clone, Debug, Default)]
pub struct LabelRegistry {
    by_term: BTreeMap<Term, Letter>,
    terms: Vec<Term>,
}

impl LabelRegistry {
    pub fn new() -> LabelRegistry {
        LabelRegistry::default()
    }

    /// The label of `u`, allocating one on first use.
    pub fn label(&mut self, u: &Term) -> Letter {
        if let Some(&l) = self.by_term.get(u) {
            return l;
        }
        let l = Letter(self.terms.len() as u32);
        self.terms.push(u.clone());
        self.by_term.insert(u.clone(), l);
        l
    }

    pub fn lookup(&self, u: &Term) -> Option<Letter> {
        self.by_term.get(u).copied()
    }

    /// `ν(l)`.
    pub fn term(&self, l: Letter) -> Option<&Term> {
        self.terms.get(l.0 as usize)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.terms.len() as u32).map(Letter)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `ν` as a substitution map.
    pub fn nu(&self) -> BTreeMap<Letter, Term> {
        self.terms.iter().enumerate().map(|(i, t)| (Letter(i as u32), t.clone())).collect()
    }
}
