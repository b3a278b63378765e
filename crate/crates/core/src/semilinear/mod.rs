//! Commutative-regular languages as semilinear subsets of ℕ^k, closed under
//! union, intersection and complement.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::pomset::Letter;
use crate::term::{Node, Term};

pub mod diophantine;
mod linalg;

use diophantine::{in_span, reducible, solve};

/// `{ base + Σ n_i·p_i : n_i ∈ ℕ }`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearSet {
    pub base: Vec<u64>,
    pub periods: Vec<Vec<u64>>,
}

impl LinearSet {
    /// Drops zero and duplicate periods.
    pub fn new(base: Vec<u64>, mut periods: Vec<Vec<u64>>) -> LinearSet {
        periods.retain(|p| p.iter().any(|&x| x > 0));
        periods.sort();
        periods.dedup();
        LinearSet { base, periods }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn member(&self, v: &[u64]) -> bool {
        if v.len() != self.base.len() || v.iter().zip(&self.base).any(|(a, b)| a < b) {
            return false;
        }
        let rest: Vec<u64> = v.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        in_span(&rest, &self.periods)
    }

    /// Sufficient test for `other ⊆ self`.
    pub fn contains(&self, other: &LinearSet) -> bool {
        self.member(&other.base) && other.periods.iter().all(|p| in_span(p, &self.periods))
    }

    /// Removes periods generated by the remaining ones.
    fn reduce(mut self) -> LinearSet {
        if let Some(red) = reducible(&self.periods) {
            let mut it = red.into_iter();
            self.periods.retain(|_| !it.next().unwrap());
            return self;
        }
        let mut i = 0;
        while i < self.periods.len() {
            let p = self.periods[i].clone();
            let others: Vec<Vec<u64>> =
                self.periods.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            if in_span(&p, &others) {
                self.periods.remove(i);
            } else {
                i += 1;
            }
        }
        self
    }
}

/// Finite union of linear sets of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearSet {
    dim: usize,
    comps: Vec<LinearSet>,
}

/// Result of comparing two semilinear sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlEquiv {
    Equal,
    /// A vector in exactly one of the two sets.
    Differ(Vec<u64>),
}

fn unit(dim: usize, i: usize, scale: u64) -> Vec<u64> {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

impl SemilinearSet {
    pub fn empty(dim: usize) -> SemilinearSet {
        SemilinearSet { dim, comps: Vec::new() }
    }

    /// All of ℕ^dim.
    pub fn full(dim: usize) -> SemilinearSet {
        SemilinearSet::linear(LinearSet::new(vec![0; dim], (0..dim).map(|i| unit(dim, i, 1)).collect()))
    }

    pub fn linear(l: LinearSet) -> SemilinearSet {
        SemilinearSet { dim: l.dim(), comps: vec![l] }
    }

    pub fn from_components(dim: usize, comps: Vec<LinearSet>) -> Result<SemilinearSet> {
        if let Some(c) = comps.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: c.dim() });
        }
        let mut s = SemilinearSet { dim, comps };
        s.prune();
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[LinearSet] {
        &self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn member(&self, v: &[u64]) -> bool {
        self.comps.iter().any(|c| c.member(v))
    }

    fn is_full(&self) -> bool {
        let full = SemilinearSet::full(self.dim);
        self.comps.iter().any(|c| c.contains(&full.comps[0]))
    }

    /// Removes components contained in another component.
    fn prune(&mut self) {
        let mut comps = core::mem::take(&mut self.comps);
        comps.sort();
        comps.dedup();
        let mut comps: Vec<LinearSet> = comps.into_iter().map(LinearSet::reduce).collect();
        comps.sort();
        comps.dedup();
        // Larger period sets first, so containers are kept.
        comps.sort_by(|a, b| b.periods.len().cmp(&a.periods.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<LinearSet> = Vec::new();
        for c in comps {
            if !kept.iter().any(|k| k.contains(&c)) {
                kept.retain(|k| !c.contains(k));
                kept.push(c);
            }
        }
        // L(b; P∖{p}) ∪ L(b + p; P) = L(b; P).
        'merge: loop {
            for y in 0..kept.len() {
                for p in &kept[y].periods {
                    if kept[y].base.iter().zip(p).any(|(b, x)| b < x) {
                        continue;
                    }
                    let base: Vec<u64> = kept[y].base.iter().zip(p).map(|(b, x)| b - x).collect();
                    let lower = LinearSet::new(base.clone(), kept[y].periods.iter().filter(|q| *q != p).cloned().collect());
                    if let Some(x) = (0..kept.len()).find(|&x| x != y && kept[x].contains(&lower)) {
                        let merged = LinearSet::new(base, kept[y].periods.clone());
                        let drop_x = merged.contains(&kept[x]);
                        kept[y] = merged;
                        if drop_x {
                            kept.remove(x);
                        }
                        continue 'merge;
                    }
                }
            }
            break;
        }
        kept.sort();
        self.comps = kept;
    }

    fn check_dim(&self, other: &SemilinearSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn union(&self, other: &SemilinearSet) -> Result<SemilinearSet> {
        self.check_dim(other)?;
        let mut s = SemilinearSet { dim: self.dim, comps: self.comps.iter().chain(&other.comps).cloned().collect() };
        s.prune();
        Ok(s)
    }

    /// Minkowski sum: the semantics of `∥`.
    pub fn sum(&self, other: &SemilinearSet) -> Result<SemilinearSet> {
        self.check_dim(other)?;
        let mut comps = Vec::new();
        for a in &self.comps {
            for b in &other.comps {
                let base = a.base.iter().zip(&b.base).map(|(x, y)| x + y).collect();
                comps.push(LinearSet::new(base, a.periods.iter().chain(&b.periods).cloned().collect()));
            }
        }
        let mut s = SemilinearSet { dim: self.dim, comps };
        s.prune();
        Ok(s)
    }

    /// `S^(*)`: `{0} ∪ ⋃_{∅≠J} L(Σ_J b_j; ⋃_J (P_j ∪ {b_j}))`.
    pub fn star(&self, budget: &Budget) -> Result<SemilinearSet> {
        let n = self.comps.len();
        if n > 16 || (1usize << n) > budget.max_components {
            return Err(Error::CapExceeded { what: "semilinear components", limit: budget.max_components });
        }
        let mut comps = vec![LinearSet::new(vec![0; self.dim], Vec::new())];
        for mask in 1u32..(1 << n) {
            let mut base = vec![0; self.dim];
            let mut periods = Vec::new();
            for (j, c) in self.comps.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    for (x, y) in base.iter_mut().zip(&c.base) {
                        *x += y;
                    }
                    periods.extend(c.periods.iter().cloned());
                    periods.push(c.base.clone());
                }
            }
            comps.push(LinearSet::new(base, periods));
        }
        let mut s = SemilinearSet { dim: self.dim, comps };
        s.prune();
        Ok(s)
    }

    pub fn intersect(&self, other: &SemilinearSet, budget: &Budget) -> Result<SemilinearSet> {
        self.check_dim(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let mut comps = Vec::new();
        for a in &self.comps {
            for b in &other.comps {
                comps.extend(intersect_linear(a, b, budget)?);
                if comps.len() > budget.max_components {
                    return Err(Error::CapExceeded { what: "semilinear components", limit: budget.max_components });
                }
            }
        }
        let mut s = SemilinearSet { dim: self.dim, comps };
        s.prune();
        Ok(s)
    }

    /// `ℕ^k ∖ S`.
    pub fn complement(&self, budget: &Budget) -> Result<SemilinearSet> {
        SemilinearSet::full(self.dim).difference(self, budget)
    }

    /// Restricts `self` successively to the complement of every
    /// independent-period piece of `other`.
    pub fn difference(&self, other: &SemilinearSet, budget: &Budget) -> Result<SemilinearSet> {
        self.check_dim(other)?;
        let comps = self.comps.iter().filter(|l| !other.comps.iter().any(|o| o.contains(l))).cloned().collect();
        let mut acc = SemilinearSet { dim: self.dim, comps };
        if acc.is_empty() {
            return Ok(acc);
        }
        for c in &other.comps {
            for piece in independent_pieces(c, budget)? {
                let cons = complement_constraints(&piece);
                let mut comps = Vec::new();
                for l in &acc.comps {
                    if piece.contains(l) {
                        continue;
                    }
                    for con in &cons {
                        let r = restrict(l, con, budget)?;
                        comps.extend(r);
                    }
                    if comps.len() > budget.max_components {
                        return Err(Error::CapExceeded { what: "semilinear components", limit: budget.max_components });
                    }
                }
                acc = SemilinearSet { dim: self.dim, comps };
                acc.prune();
                if acc.is_empty() {
                    return Ok(acc);
                }
            }
        }
        Ok(acc)
    }

    /// Equality, with a member of the symmetric difference otherwise.
    pub fn equiv(&self, other: &SemilinearSet, budget: &Budget) -> Result<SlEquiv> {
        self.check_dim(other)?;
        for (a, b) in [(self, other), (other, self)] {
            let d = a.difference(b, budget)?;
            if let Some(c) = d.comps.first() {
                return Ok(SlEquiv::Differ(c.base.clone()));
            }
        }
        Ok(SlEquiv::Equal)
    }
}

fn intersect_linear(a: &LinearSet, b: &LinearSet, budget: &Budget) -> Result<Vec<LinearSet>> {
    if b.contains(a) {
        return Ok(vec![a.clone()]);
    }
    if a.contains(b) {
        return Ok(vec![b.clone()]);
    }
    let k = a.dim();
    let (r1, r2) = (a.periods.len(), b.periods.len());
    // P1 n - P2 m = b2 - b1
    let rows: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            a.periods.iter().map(|p| p[i] as i64).chain(b.periods.iter().map(|p| -(p[i] as i64))).collect()
        })
        .collect();
    let rhs: Vec<i64> = (0..k).map(|i| b.base[i] as i64 - a.base[i] as i64).collect();
    let sols = solve(&rows, &rhs, r1 + r2, budget)?;
    let apply = |coef: &[u64]| -> Vec<u64> {
        (0..k).map(|i| a.periods.iter().zip(coef).map(|(p, &c)| p[i] * c).sum()).collect()
    };
    let periods: Vec<Vec<u64>> = sols.hilbert.iter().map(|h| apply(&h[..r1])).collect();
    Ok(sols
        .minimal
        .iter()
        .map(|m| {
            let shift = apply(&m[..r1]);
            let base = a.base.iter().zip(&shift).map(|(x, y)| x + y).collect();
            LinearSet::new(base, periods.clone())
        })
        .collect())
}

fn to_i128(v: &[u64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

/// Writes a linear set as a union of linear sets with linearly independent
/// periods. A circuit relation `Σ_A α_i p_i = Σ_B β_j p_j` lets any
/// representation be rewritten until some `i ∈ A` is used fewer than `α_i`
/// times, so the set splits into copies shifted by `c·p_i` without `p_i`.
fn independent_pieces(l: &LinearSet, budget: &Budget) -> Result<Vec<LinearSet>> {
    let mut work = vec![l.clone()];
    let mut out = Vec::new();
    while let Some(s) = work.pop() {
        let cols: Vec<Vec<i128>> = s.periods.iter().map(|p| to_i128(p)).collect();
        let n = cols.len();
        let r = linalg::rank(&cols);
        if r == n {
            out.push(s);
            continue;
        }
        if n > 12 {
            return Err(Error::CapExceeded { what: "periods of a linear set", limit: 12 });
        }
        let members = |mask: u32| (0..n).filter(move |&i| mask & (1 << i) != 0);
        let mut best: Option<(i128, Vec<(usize, u64)>)> = None;
        for mask in 1u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size > r + 1 {
                continue;
            }
            let sub: Vec<Vec<i128>> = members(mask).map(|i| cols[i].clone()).collect();
            if linalg::rank(&sub) != size - 1 {
                continue;
            }
            let minimal = members(mask).all(|i| {
                let t: Vec<Vec<i128>> = members(mask & !(1 << i)).map(|j| cols[j].clone()).collect();
                linalg::rank(&t) == t.len()
            });
            if !minimal {
                continue;
            }
            let rel = linalg::circuit_relation(&sub);
            let idx: Vec<usize> = members(mask).collect();
            for sign in [1i128, -1] {
                let side: Vec<(usize, u64)> =
                    idx.iter().zip(&rel).filter(|(_, &c)| c * sign > 0).map(|(&i, &c)| (i, (c * sign) as u64)).collect();
                let cost: i128 = side.iter().map(|&(_, a)| a as i128).sum();
                if !side.is_empty() && best.as_ref().map_or(true, |(b, _)| cost < *b) {
                    best = Some((cost, side));
                }
            }
        }
        let (_, side) = best.expect("dependent periods contain a circuit");
        for (i, alpha) in side {
            let periods: Vec<Vec<u64>> =
                s.periods.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            for c in 0..alpha {
                let base = s.base.iter().zip(&s.periods[i]).map(|(x, y)| x + c * y).collect();
                work.push(LinearSet::new(base, periods.clone()));
            }
        }
        if work.len() + out.len() > budget.max_components {
            return Err(Error::CapExceeded { what: "semilinear components", limit: budget.max_components });
        }
    }
    let mut s = SemilinearSet { dim: l.dim(), comps: out };
    s.prune();
    Ok(s.comps)
}

/// Affine form `coef · x + c0`.
#[derive(Clone, Debug)]
struct Affine {
    coef: Vec<i128>,
    c0: i128,
}

impl Affine {
    fn neg(&self) -> Affine {
        Affine { coef: self.coef.iter().map(|x| -x).collect(), c0: -self.c0 }
    }
}

#[derive(Clone, Debug)]
enum Constraint {
    /// `f(x) ≥ 1`
    Positive(Affine),
    /// `f(x) ≡ r (mod d)`
    Congruent(Affine, i128, i128),
}

/// Constraints whose union is the complement of a linear set with
/// independent periods.
///
/// With rows `R` making `P_R` invertible, `D = |det P_R|` and `g(x) =
/// D·P_R⁻¹(x − b)_R`, a vector lies in the set iff `h_i(x) = D(x − b)_i −
/// P_i·g(x)` vanishes for `i ∉ R`, `g(x) ≥ 0`, and `g(x) ≡ 0 (mod D)`.
fn complement_constraints(l: &LinearSet) -> Vec<Constraint> {
    let k = l.dim();
    let r = l.periods.len();
    let b: Vec<i128> = to_i128(&l.base);
    let mut rows_sel: Vec<usize> = Vec::new();
    let mut mat: Vec<Vec<i128>> = Vec::new();
    for i in 0..k {
        if rows_sel.len() == r {
            break;
        }
        let row: Vec<i128> = l.periods.iter().map(|p| p[i] as i128).collect();
        let mut trial = mat.clone();
        trial.push(row);
        if linalg::rank(&trial) == trial.len() {
            mat = trial;
            rows_sel.push(i);
        }
    }
    let det = linalg::det(&mat);
    let d = det.abs();
    let sign = det.signum();
    let adj: Vec<Vec<i128>> = linalg::adjugate(&mat).into_iter().map(|row| row.into_iter().map(|x| x * sign).collect()).collect();
    let g: Vec<Affine> = (0..r)
        .map(|j| {
            let mut coef = vec![0i128; k];
            let mut c0 = 0;
            for (a, &ri) in rows_sel.iter().enumerate() {
                coef[ri] += adj[j][a];
                c0 -= adj[j][a] * b[ri];
            }
            Affine { coef, c0 }
        })
        .collect();
    let mut out = Vec::new();
    for i in (0..k).filter(|i| !rows_sel.contains(i)) {
        let mut coef = vec![0i128; k];
        coef[i] = d;
        let mut c0 = -d * b[i];
        for (j, gj) in g.iter().enumerate() {
            let pij = l.periods[j][i] as i128;
            for (c, &x) in coef.iter_mut().zip(&gj.coef) {
                *c -= pij * x;
            }
            c0 -= pij * gj.c0;
        }
        let h = Affine { coef, c0 };
        out.push(Constraint::Positive(h.neg()));
        out.push(Constraint::Positive(h));
    }
    for gj in &g {
        out.push(Constraint::Positive(gj.neg()));
        for rem in 1..d {
            out.push(Constraint::Congruent(gj.clone(), d, rem));
        }
    }
    out
}

/// The members of `l` satisfying `c`.
fn restrict(l: &LinearSet, c: &Constraint, budget: &Budget) -> Result<Vec<LinearSet>> {
    let f = match c {
        Constraint::Positive(f) | Constraint::Congruent(f, ..) => f,
    };
    let b = to_i128(&l.base);
    let v0 = f.c0 + f.coef.iter().zip(&b).map(|(x, y)| x * y).sum::<i128>();
    let a: Vec<i128> = l.periods.iter().map(|p| f.coef.iter().zip(p).map(|(x, &y)| x * y as i128).sum()).collect();
    let r = a.len();
    // One equation `coef·n - m·s = rhs` over `(n, s)`.
    let (coef, m, rhs) = match c {
        Constraint::Positive(_) => {
            let g = a.iter().fold(0, |g, &x| linalg::gcd(g, x));
            let need = 1 - v0;
            if g == 0 || (need <= 0 && a.iter().all(|&x| x >= 0)) {
                return Ok(if need <= 0 { vec![l.clone()] } else { Vec::new() });
            }
            let need = need.div_euclid(g) + i128::from(need.rem_euclid(g) != 0);
            (a.iter().map(|x| x / g).collect::<Vec<_>>(), 1, need)
        }
        // Both sides are reduced into [0, d), so the quotient is never negative.
        Constraint::Congruent(_, d, rem) => {
            let coef: Vec<i128> = a.iter().map(|x| x.rem_euclid(*d)).collect();
            let rhs = (rem - v0).rem_euclid(*d);
            if coef.iter().all(|&x| x == 0) {
                return Ok(if rhs == 0 { vec![l.clone()] } else { Vec::new() });
            }
            (coef, *d, rhs)
        }
    };
    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::CapExceeded { what: "coefficient size", limit: i64::MAX as usize });
    let mut row = coef.into_iter().map(narrow).collect::<Result<Vec<i64>>>()?;
    row.push(-narrow(m)?);
    let sols = solve(&[row], &[narrow(rhs)?], r + 1, budget)?;
    let apply = |n: &[u64]| -> Vec<u64> {
        (0..l.dim()).map(|i| l.periods.iter().zip(n).map(|(p, &c)| p[i] * c).sum()).collect()
    };
    let periods: Vec<Vec<u64>> = sols.hilbert.iter().map(|h| apply(&h[..r])).collect();
    Ok(sols
        .minimal
        .iter()
        .map(|n| {
            let base = l.base.iter().zip(apply(&n[..r])).map(|(x, y)| x + y).collect();
            LinearSet::new(base, periods.clone())
        })
        .collect())
}

/// Parikh semantics of a commutative-regular term over `letters` (one
/// coordinate per letter, in the given order).
pub fn to_semilinear(t: &Term, letters: &[Letter], budget: &Budget) -> Result<SemilinearSet> {
    if !t.is_commutative() {
        return Err(Error::UnsupportedOperator { engine: "commutative-regular", op: "sequential composition" });
    }
    let pos: BTreeMap<Letter, usize> = letters.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    if t.letters().iter().any(|l| !pos.contains_key(l)) {
        return Err(Error::AlphabetMismatch);
    }
    fn go(
        t: &Term,
        pos: &BTreeMap<Letter, usize>,
        budget: &Budget,
        memo: &mut BTreeMap<usize, SemilinearSet>,
    ) -> Result<SemilinearSet> {
        if let Some(s) = memo.get(&t.ptr_id()) {
            return Ok(s.clone());
        }
        let dim = pos.len();
        let s = match t.node() {
            Node::Zero => SemilinearSet::empty(dim),
            Node::One => SemilinearSet::linear(LinearSet::new(vec![0; dim], Vec::new())),
            Node::Letter(l) => SemilinearSet::linear(LinearSet::new(unit(dim, pos[l], 1), Vec::new())),
            Node::Plus(u, v) => go(u, pos, budget, memo)?.union(&go(v, pos, budget, memo)?)?,
            Node::Par(u, v) => go(u, pos, budget, memo)?.sum(&go(v, pos, budget, memo)?)?,
            Node::ParStar(u) => go(u, pos, budget, memo)?.star(budget)?,
            Node::Dot(..) | Node::Star(_) => unreachable!("checked by is_commutative"),
        };
        memo.insert(t.ptr_id(), s.clone());
        Ok(s)
    }
    go(t, &pos, budget, &mut BTreeMap::new())
}

fn word_term(v: &[u64], letters: &[Letter]) -> Term {
    Term::pars(
        v.iter()
            .zip(letters)
            .flat_map(|(&n, &l)| core::iter::repeat(Term::letter(l)).take(n as usize)),
    )
}

/// A commutative-regular term denoting `S`: each base as a ∥-word, each
/// period `p` as `word(p)^`, components summed.
pub fn semilinear_to_term(s: &SemilinearSet, letters: &[Letter]) -> Term {
    Term::sum(s.comps.iter().map(|c| {
        let periods = c.periods.iter().map(|p| Term::par_star(&word_term(p, letters)));
        Term::pars(core::iter::once(word_term(&c.base, letters)).chain(periods))
    }))
}

/// The non-empty Boolean cells of a family of commutative-regular terms.
#[derive(Clone, Debug)]
pub struct Atoms {
    /// One term per cell; the cells are pairwise disjoint.
    pub cells: Vec<Term>,
    pub sets: Vec<SemilinearSet>,
    /// For each input, the cells whose union it is.
    pub cover: Vec<BTreeSet<usize>>,
}

/// Splits `terms` into disjoint non-empty cells `⋂_{i∈N} A_i ∖ ⋃_{i∉N} A_i`
/// for `N ≠ ∅`.
pub fn comreg_atoms(terms: &[Term], letters: &[Letter], budget: &Budget) -> Result<Atoms> {
    let dim = letters.len();
    let sets: Vec<SemilinearSet> = terms.iter().map(|t| to_semilinear(t, letters, budget)).collect::<Result<_>>()?;
    let mut cells: Vec<(SemilinearSet, BTreeSet<usize>)> = vec![(SemilinearSet::full(dim), BTreeSet::new())];
    for (i, a) in sets.iter().enumerate() {
        if a.is_empty() {
            continue;
        }
        let comp = a.complement(budget)?;
        let mut next = Vec::new();
        for (c, n) in cells {
            let inside = c.intersect(a, budget)?;
            if !inside.is_empty() {
                let mut n2 = n.clone();
                n2.insert(i);
                next.push((inside, n2));
            }
            let outside = c.intersect(&comp, budget)?;
            if !outside.is_empty() {
                next.push((outside, n));
            }
        }
        cells = next;
    }
    cells.retain(|(_, n)| !n.is_empty());
    let mut cover = vec![BTreeSet::new(); terms.len()];
    for (ci, (_, n)) in cells.iter().enumerate() {
        for &i in n {
            cover[i].insert(ci);
        }
    }
    Ok(Atoms {
        cells: cells.iter().map(|(s, _)| semilinear_to_term(s, letters)).collect(),
        sets: cells.into_iter().map(|(s, _)| s).collect(),
        cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Alphabet;

    fn lin(base: &[u64], periods: &[&[u64]]) -> SemilinearSet {
        SemilinearSet::linear(LinearSet::new(base.to_vec(), periods.iter().map(|p| p.to_vec()).collect()))
    }

    fn boxed(dim: usize, max: u64) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..dim {
            out = out.into_iter().flat_map(|v| (0..=max).map(move |x| { let mut w = v.clone(); w.push(x); w })).collect();
        }
        out
    }

    #[test]
    fn membership() {
        let even = lin(&[0], &[&[2]]);
        assert!(even.member(&[4]));
        assert!(!even.member(&[3]));
        assert!(lin(&[1, 1], &[&[2, 2]]).member(&[5, 5]));
        assert!(lin(&[0, 1], &[&[1, 1]]).member(&[2, 3]));
    }

    #[test]
    fn intersections() {
        let b = Budget::default();
        let s = lin(&[0], &[&[2]]).intersect(&lin(&[0], &[&[3]]), &b).unwrap();
        for x in 0..=12u64 {
            assert_eq!(s.member(&[x]), x % 6 == 0, "{x}");
        }
        assert!(lin(&[1], &[]).intersect(&lin(&[0], &[&[2]]), &b).unwrap().is_empty());
        assert!(lin(&[0], &[&[2]]).intersect(&SemilinearSet::empty(1), &b).unwrap().is_empty());
    }

    #[test]
    fn complements() {
        let b = Budget::default();
        let c = lin(&[0], &[&[2]]).complement(&b).unwrap();
        for x in 0..=8u64 {
            assert_eq!(c.member(&[x]), x % 2 == 1);
        }
        assert_eq!(c.equiv(&lin(&[1], &[&[2]]), &b).unwrap(), SlEquiv::Equal);
        let full = SemilinearSet::empty(2).complement(&b).unwrap();
        assert_eq!(full.equiv(&SemilinearSet::full(2), &b).unwrap(), SlEquiv::Equal);
        // Dependent periods in dimension 2.
        let a = lin(&[1, 0], &[&[1, 1], &[2, 0], &[0, 2], &[1, 2]]);
        let ca = a.complement(&b).unwrap();
        for v in boxed(2, 8) {
            assert_ne!(a.member(&v), ca.member(&v), "{v:?}");
        }
        let cca = ca.complement(&b).unwrap();
        for v in boxed(2, 8) {
            assert_eq!(a.member(&v), cca.member(&v), "{v:?}");
        }
    }

    #[test]
    fn equivalence() {
        let b = Budget::default();
        let x = lin(&[0], &[&[2], &[3]]);
        let y = SemilinearSet::from_components(
            1,
            alloc::vec![
                LinearSet::new(alloc::vec![0], alloc::vec![]),
                LinearSet::new(alloc::vec![2], alloc::vec![]),
                LinearSet::new(alloc::vec![3], alloc::vec![]),
                LinearSet::new(alloc::vec![4], alloc::vec![alloc::vec![1]]),
            ],
        )
        .unwrap();
        assert_eq!(x.equiv(&y, &b).unwrap(), SlEquiv::Equal);
        assert_eq!(lin(&[0], &[&[2]]).equiv(&lin(&[0], &[&[4]]), &b).unwrap(), SlEquiv::Differ(alloc::vec![2]));
        assert_eq!(x.equiv(&x, &b).unwrap(), SlEquiv::Equal);
    }

    #[test]
    fn terms_round_trip() {
        let b = Budget::default();
        let mut al = Alphabet::with_names(["a", "b"]);
        let ab: Vec<Letter> = al.letters().collect();
        let t = al.parse_term("(a|a)^").unwrap();
        let s = to_semilinear(&t, &ab[..1], &b).unwrap();
        assert_eq!(s, lin(&[0], &[&[2]]));
        let one = to_semilinear(&Term::one(), &ab, &b).unwrap();
        assert_eq!(one, lin(&[0, 0], &[]));
        let t = al.parse_term("a|b+b").unwrap();
        let s = to_semilinear(&t, &ab, &b).unwrap();
        assert_eq!(s.components().len(), 2);
        assert!(s.member(&[1, 1]) && s.member(&[0, 1]) && !s.member(&[1, 0]));
        let back = semilinear_to_term(&s, &ab);
        assert_eq!(to_semilinear(&back, &ab, &b).unwrap().equiv(&s, &b).unwrap(), SlEquiv::Equal);
        assert!(semilinear_to_term(&SemilinearSet::empty(2), &ab).is_zero());
        let l = lin(&[1, 0], &[&[1, 1]]);
        let t = semilinear_to_term(&l, &ab);
        assert_eq!(al.render_term(&t), "a|(a|b)^");
        assert!(to_semilinear(&al.parse_term("a;b").unwrap(), &ab, &b).is_err());
    }

    #[test]
    fn atoms() {
        let b = Budget::default();
        let mut al = Alphabet::with_names(["a"]);
        let a: Vec<Letter> = al.letters().collect();
        let ts = [al.parse_term("a^").unwrap(), al.parse_term("(a|a)^").unwrap()];
        let at = comreg_atoms(&ts, &a, &b).unwrap();
        assert_eq!(at.cells.len(), 2);
        for x in 0..=8u64 {
            let hits: Vec<usize> = (0..2).filter(|&c| at.sets[c].member(&[x])).collect();
            assert_eq!(hits.len(), 1);
            let expect_in_second = x % 2 == 0;
            assert_eq!(at.cover[1].contains(&hits[0]), expect_in_second);
            assert!(at.cover[0].contains(&hits[0]));
        }
        let single = comreg_atoms(&ts[..1], &a, &b).unwrap();
        assert_eq!(single.cells.len(), 1);
        let z = comreg_atoms(&[Term::zero(), al.parse_term("a").unwrap()], &a, &b).unwrap();
        assert_eq!(z.cells.len(), 1);
        assert!(z.cover[0].is_empty());
    }
}
