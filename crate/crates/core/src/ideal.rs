//! Terms for ⊙ products and series-parallel ideal closures of bw-rational
//! terms, and equivalence modulo the exchange law.
//!
//! `(L1 ⊙ L2)` splits into its unit and atomic members, its sequential
//! members (`seq_slice_term`) and its parallel members with `k` components
//! (`para_slice_term`). The sequential part is read off a finite-index
//! congruence on the sequential skeletons of both sides; the parallel part
//! distributes both sides into parallel products and pairs up their factors.
//! The two recurse into each other on strictly smaller width sums.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::boolean::{decide_equiv, skeletons_of, Equivalence, Mode};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::pomset::Letter;
use crate::regular::{compile_regex, finite_index_congruence, guarded_word_language, split_pair_letter, BoolOp, Dfa};
use crate::term::{atoms, is_empty, normalize, nullable, substitute, width_of, Body, BodyNode, NormTerm, Node, Term};

fn bw_width(t: &Term) -> Result<usize> {
    width_of(t).finite().ok_or(Error::UnsupportedOperator { engine: "ideal closure", op: "parallel iteration" })
}

fn check_bw(t: &Term) -> Result<()> {
    if t.is_bw_rational() {
        Ok(())
    } else {
        Err(Error::UnsupportedOperator { engine: "ideal closure", op: "parallel iteration" })
    }
}

/// Letters in `(A ⊙ B) ∩ Σ`.
fn atom_part(a: &Term, b: &Term) -> Term {
    let mut ls = BTreeSet::new();
    if nullable(b) {
        ls.extend(atoms(a));
    }
    if nullable(a) {
        ls.extend(atoms(b));
    }
    Term::sum(ls.into_iter().map(Term::letter))
}

type Product = Vec<Body>;

/// Memoizing engine; one instance may serve many queries.
pub struct IdealEngine<'a> {
    budget: &'a Budget,
    seq_memo: BTreeMap<(NormTerm, NormTerm), Term>,
    para_memo: BTreeMap<(NormTerm, NormTerm, usize), Term>,
    closure_memo: BTreeMap<Term, Term>,
}

fn key(a: &Term, b: &Term) -> (NormTerm, NormTerm) {
    let (x, y) = (normalize(a), normalize(b));
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

impl<'a> IdealEngine<'a> {
    pub fn new(budget: &'a Budget) -> IdealEngine<'a> {
        IdealEngine { budget, seq_memo: BTreeMap::new(), para_memo: BTreeMap::new(), closure_memo: BTreeMap::new() }
    }

    /// A term for `[[r1]] ⊙ [[r2]]`.
    pub fn odot_term(&mut self, r1: &Term, r2: &Term) -> Result<Term> {
        check_bw(r1)?;
        check_bw(r2)?;
        let mut parts = vec![atom_part(r1, r2)];
        if nullable(r1) && nullable(r2) {
            parts.push(Term::one());
        }
        parts.push(self.seq_slice_term(r1, r2)?);
        let w = bw_width(r1)? + bw_width(r2)?;
        for k in 2..=w {
            parts.push(self.para_slice_term(r1, r2, k)?);
        }
        Ok(Term::sum(parts))
    }

    /// A term for `([[r1]] ⊙ [[r2]]) ∩ Seq`.
    pub fn seq_slice_term(&mut self, r1: &Term, r2: &Term) -> Result<Term> {
        check_bw(r1)?;
        check_bw(r2)?;
        if is_empty(r1) || is_empty(r2) {
            return Ok(Term::zero());
        }
        let k = key(r1, r2);
        if let Some(t) = self.seq_memo.get(&k) {
            return Ok(t.clone());
        }
        let t = self.seq_slice_uncached(&k.0, &k.1)?;
        self.seq_memo.insert(k, t.clone());
        Ok(t)
    }

    fn seq_slice_uncached(&mut self, n1: &NormTerm, n2: &NormTerm) -> Result<Term> {
        let bodies: Vec<Body> = n1.body.iter().chain(n2.body.iter()).cloned().collect();
        let sk = skeletons_of(&bodies, Mode::Sequential);
        if sk.factors.is_empty() {
            return Ok(Term::zero());
        }
        let mut skel = sk.skeletons.into_iter();
        let mut side = |n: &NormTerm| {
            let s = if n.body.is_some() { skel.next().unwrap() } else { Term::zero() };
            if n.nullable {
                Term::plus(&Term::one(), &s)
            } else {
                s
            }
        };
        let (s1, s2) = (side(n1), side(n2));
        let gamma: Vec<Letter> = (0..sk.factors.len()).map(|j| Letter(j as u32)).collect();
        let d1 = compile_regex(&s1, &gamma, self.budget)?;
        let d2 = compile_regex(&s2, &gamma, self.budget)?;
        let cong = finite_index_congruence(&[d1, d2], self.budget)?;
        let pairs = guarded_word_language(&cong, 0, Some(1), self.budget)?;
        let u = Dfa::boolean(BoolOp::Intersect, &pairs, &Dfa::min_length(pairs.alphabet(), 2), self.budget)?;
        let nu: BTreeMap<Letter, Term> =
            sk.factors.iter().enumerate().map(|(j, f)| (Letter(j as u32), f.to_term())).collect();
        let mut phi: BTreeMap<usize, Term> = BTreeMap::new();
        let mut class_term = |c: usize| -> Term {
            phi.entry(c).or_insert_with(|| substitute(&cong.class_dfa(c).to_term(), &nu)).clone()
        };
        let bound = bw_width(&n1.to_term())? + bw_width(&n2.to_term())?;
        let mut subst: BTreeMap<Letter, Term> = BTreeMap::new();
        for l in u.useful_letters() {
            let (d, e) = split_pair_letter(&cong, l);
            let (a, b) = (class_term(d), class_term(e));
            let w = bw_width(&a)? + bw_width(&b)?;
            assert!(w <= bound, "class width {w} exceeds {bound}");
            let mut parts = vec![atom_part(&a, &b)];
            for k in 2..=w {
                parts.push(self.para_slice_term(&a, &b, k)?);
            }
            let x = Term::sum(parts);
            if !is_empty(&x) {
                subst.insert(l, x);
            }
        }
        let keep: BTreeSet<Letter> = subst.keys().copied().collect();
        let word = u.restrict_alphabet(&keep).to_term();
        Ok(substitute(&word, &subst))
    }

    /// A term for the members of `[[r1]] ⊙ [[r2]]` with exactly `k ≥ 2`
    /// parallel components.
    pub fn para_slice_term(&mut self, r1: &Term, r2: &Term, k: usize) -> Result<Term> {
        check_bw(r1)?;
        check_bw(r2)?;
        if k < 2 || is_empty(r1) || is_empty(r2) {
            return Ok(Term::zero());
        }
        let (n1, n2) = key(r1, r2);
        let memo_key = (n1, n2, k);
        if let Some(t) = self.para_memo.get(&memo_key) {
            return Ok(t.clone());
        }
        let (n1, n2, _) = &memo_key;
        let p1 = parallel_products(n1, self.budget)?;
        let p2 = parallel_products(n2, self.budget)?;
        let measure = bw_width(&n1.to_term())? + bw_width(&n2.to_term())?;
        let mut parts = Vec::new();
        for x in &p1 {
            for y in &p2 {
                if x.len() + y.len() < k {
                    continue;
                }
                parts.push(self.pair_partitions(x, y, k, measure)?);
            }
        }
        let t = Term::sum(parts);
        self.para_memo.insert(memo_key, t.clone());
        Ok(t)
    }

    // Σ over partitions of the tagged factors of `x` and `y` into `k` blocks
    // of ∥_B ((∥ X_B ⊙ ∥ Y_B) ∩ (Seq ∪ Σ)).
    fn pair_partitions(&mut self, x: &Product, y: &Product, k: usize, measure: usize) -> Result<Term> {
        let factors: Vec<(bool, Term)> =
            x.iter().map(|b| (false, b.to_term())).chain(y.iter().map(|b| (true, b.to_term()))).collect();
        let f = factors.len();
        let mut out = Vec::new();
        // Restricted growth strings with exactly k blocks.
        let mut rgs = vec![0usize; f];
        let mut block_memo: BTreeMap<Vec<usize>, Term> = BTreeMap::new();
        loop {
            let used = rgs.iter().max().map_or(0, |m| m + 1);
            if used == k {
                let mut comps = Vec::with_capacity(k);
                for blk in 0..k {
                    let members: Vec<usize> = (0..f).filter(|&i| rgs[i] == blk).collect();
                    let m = match block_memo.get(&members) {
                        Some(m) => m.clone(),
                        None => {
                            let m = self.block_term(&factors, &members, measure)?;
                            block_memo.insert(members, m.clone());
                            m
                        }
                    };
                    if m.is_zero() {
                        break;
                    }
                    comps.push(m);
                }
                if comps.len() == k {
                    out.push(Term::pars(comps));
                }
            }
            if !next_rgs(&mut rgs, k) {
                break;
            }
        }
        Ok(Term::sum(out))
    }

    fn block_term(&mut self, factors: &[(bool, Term)], members: &[usize], measure: usize) -> Result<Term> {
        let left: Vec<Term> = members.iter().filter(|&&i| !factors[i].0).map(|&i| factors[i].1.clone()).collect();
        let right: Vec<Term> = members.iter().filter(|&&i| factors[i].0).map(|&i| factors[i].1.clone()).collect();
        if left.is_empty() || right.is_empty() {
            let one_side = if left.is_empty() { &right } else { &left };
            return Ok(if one_side.len() == 1 { one_side[0].clone() } else { Term::zero() });
        }
        let (a, b) = (Term::pars(left), Term::pars(right));
        let w = bw_width(&a)? + bw_width(&b)?;
        assert!(w < measure, "width sum did not decrease ({w} >= {measure})");
        let s = self.seq_slice_term(&a, &b)?;
        Ok(Term::plus(&s, &atom_part(&a, &b)))
    }

    /// A term for the series-parallel ideals of `[[t]]`.
    pub fn idsp_closure_term(&mut self, t: &Term) -> Result<Term> {
        check_bw(t)?;
        if let Some(c) = self.closure_memo.get(t) {
            return Ok(c.clone());
        }
        let c = match t.node() {
            Node::Zero | Node::One | Node::Letter(_) => t.clone(),
            Node::Plus(u, v) => Term::plus(&self.idsp_closure_term(u)?, &self.idsp_closure_term(v)?),
            Node::Dot(u, v) => Term::dot(&self.idsp_closure_term(u)?, &self.idsp_closure_term(v)?),
            Node::Star(u) => Term::star(&self.idsp_closure_term(u)?),
            Node::Par(u, v) => {
                let (cu, cv) = (self.idsp_closure_term(u)?, self.idsp_closure_term(v)?);
                self.odot_term(&cu, &cv)?
            }
            Node::ParStar(_) => unreachable!("checked by check_bw"),
        };
        self.closure_memo.insert(t.clone(), c.clone());
        Ok(c)
    }

    /// Equality of the sp-ideal closures, which is equality modulo the
    /// exchange law.
    pub fn decide_ex_equiv(&mut self, a: &Term, b: &Term) -> Result<Equivalence> {
        let ca = self.idsp_closure_term(a)?;
        let cb = self.idsp_closure_term(b)?;
        decide_equiv(&ca, &cb, self.budget)
    }
}

fn next_rgs(rgs: &mut [usize], k: usize) -> bool {
    // Increment from the right, keeping rgs[i] ≤ 1 + max(rgs[..i]) and < k.
    let f = rgs.len();
    let mut i = f;
    while i > 1 {
        i -= 1;
        let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
        if rgs[i] < k - 1 && rgs[i] <= prefix_max {
            rgs[i] += 1;
            for r in rgs[i + 1..].iter_mut() {
                *r = 0;
            }
            return true;
        }
    }
    false
}

/// `[[n]]` as a sum of parallel products of non-parallel factors; the empty
/// product stands for `1`.
fn parallel_products(n: &NormTerm, budget: &Budget) -> Result<Vec<Product>> {
    fn go(b: &Body, budget: &Budget) -> Result<Vec<Product>> {
        Ok(match b.node() {
            BodyNode::Letter(_) | BodyNode::Dot(_) | BodyNode::Bang(_) => vec![vec![b.clone()]],
            BodyNode::Plus(cs) => {
                let mut out = Vec::new();
                for c in cs {
                    out.extend(go(c, budget)?);
                }
                out
            }
            BodyNode::Par(cs) => {
                let mut acc: Vec<Product> = vec![Vec::new()];
                for c in cs {
                    let opts = go(c, budget)?;
                    if acc.len() * opts.len() > budget.max_products {
                        return Err(Error::CapExceeded { what: "parallel products", limit: budget.max_products });
                    }
                    acc = acc
                        .iter()
                        .flat_map(|p| {
                            opts.iter().map(move |q| {
                                let mut r = p.clone();
                                r.extend(q.iter().cloned());
                                r
                            })
                        })
                        .collect();
                }
                acc
            }
            BodyNode::ParBang(_) => {
                return Err(Error::UnsupportedOperator { engine: "ideal closure", op: "parallel iteration" })
            }
        })
    }
    let mut out = Vec::new();
    if n.nullable {
        out.push(Vec::new());
    }
    if let Some(b) = &n.body {
        out.extend(go(b, budget)?);
    }
    for p in out.iter_mut() {
        p.sort();
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn odot_term(r1: &Term, r2: &Term, budget: &Budget) -> Result<Term> {
    IdealEngine::new(budget).odot_term(r1, r2)
}

pub fn seq_slice_term(r1: &Term, r2: &Term, budget: &Budget) -> Result<Term> {
    IdealEngine::new(budget).seq_slice_term(r1, r2)
}

pub fn para_slice_term(r1: &Term, r2: &Term, k: usize, budget: &Budget) -> Result<Term> {
    IdealEngine::new(budget).para_slice_term(r1, r2, k)
}

pub fn idsp_closure_term(t: &Term, budget: &Budget) -> Result<Term> {
    IdealEngine::new(budget).idsp_closure_term(t)
}

pub fn decide_ex_equiv(a: &Term, b: &Term, budget: &Budget) -> Result<Equivalence> {
    IdealEngine::new(budget).decide_ex_equiv(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_idsp_slice, brute_odot_slice};
    use crate::pomset::SpPomset;
    use crate::syntax::Alphabet;
    use crate::term::slice;

    fn setup() -> (Alphabet, Budget) {
        (Alphabet::with_names(["a", "b", "c", "d"]), Budget::default())
    }

    fn render(al: &Alphabet, s: &BTreeSet<SpPomset>) -> Vec<alloc::string::String> {
        s.iter().map(|p| al.render_pomset(p)).collect()
    }

    #[test]
    fn rgs_counts() {
        // Stirling numbers of the second kind S(4, k).
        for (k, count) in [(1, 1), (2, 7), (3, 6), (4, 1)] {
            let mut rgs = vec![0; 4];
            let mut n = 0;
            loop {
                if rgs.iter().max().unwrap() + 1 == k {
                    n += 1;
                }
                if !next_rgs(&mut rgs, k) {
                    break;
                }
            }
            assert_eq!(n, count, "k={k}");
        }
    }

    #[test]
    fn odot_examples() {
        let (mut al, b) = setup();
        let (ta, tb) = (al.parse_term("a").unwrap(), al.parse_term("b").unwrap());
        let t = odot_term(&ta, &tb, &b).unwrap();
        assert_eq!(render(&al, &slice(&t, 4).unwrap()), ["a;b", "b;a", "a|b"]);
        let p = al.parse_term("a;b+c|d").unwrap();
        let t = odot_term(&p, &Term::one(), &b).unwrap();
        assert_eq!(slice(&t, 5).unwrap(), slice(&p, 5).unwrap());
        let (ab, c) = (al.parse_term("a;b").unwrap(), al.parse_term("c").unwrap());
        let s = slice(&odot_term(&ab, &c, &b).unwrap(), 3).unwrap();
        assert!(s.contains(&al.parse_pomset("a;(b|c)").unwrap()));
        assert!(!s.contains(&al.parse_pomset("(b;a)|c").unwrap()));
        assert_eq!(s, brute_odot_slice(&ab, &c, 3).unwrap());
    }

    #[test]
    fn slices_by_shape() {
        let (mut al, b) = setup();
        let (ta, tb) = (al.parse_term("a").unwrap(), al.parse_term("b").unwrap());
        let s = slice(&seq_slice_term(&ta, &tb, &b).unwrap(), 3).unwrap();
        assert_eq!(render(&al, &s), ["a;b", "b;a"]);
        assert!(is_empty(&seq_slice_term(&Term::one(), &Term::one(), &b).unwrap()));
        let s = slice(&para_slice_term(&ta, &tb, 2, &b).unwrap(), 3).unwrap();
        assert_eq!(render(&al, &s), ["a|b"]);
        assert!(is_empty(&para_slice_term(&ta, &tb, 3, &b).unwrap()));
        let (ab, c) = (al.parse_term("a|b").unwrap(), al.parse_term("c").unwrap());
        let oracle = brute_odot_slice(&ab, &c, 3).unwrap();
        let seq = slice(&seq_slice_term(&ab, &c, &b).unwrap(), 3).unwrap();
        assert_eq!(seq, oracle.iter().filter(|p| p.is_sequential()).cloned().collect());
        let par2 = slice(&para_slice_term(&ab, &c, 2, &b).unwrap(), 3).unwrap();
        assert!(par2.contains(&al.parse_pomset("(a;c)|b").unwrap()));
        assert!(par2.contains(&al.parse_pomset("a|(b;c)").unwrap()));
        assert_eq!(par2, oracle.iter().filter(|p| p.par_components().len() == 2).cloned().collect());
    }

    #[test]
    fn closure_examples() {
        let (mut al, b) = setup();
        let t = al.parse_term("a|b").unwrap();
        let c = idsp_closure_term(&t, &b).unwrap();
        assert_eq!(render(&al, &slice(&c, 3).unwrap()), ["a;b", "b;a", "a|b"]);
        let t = al.parse_term("a;b").unwrap();
        assert_eq!(slice(&idsp_closure_term(&t, &b).unwrap(), 3).unwrap(), slice(&t, 3).unwrap());
        assert!(idsp_closure_term(&Term::one(), &b).unwrap().is_one());
        assert!(idsp_closure_term(&al.parse_term("a^").unwrap(), &b).is_err());
        for text in ["(a;b)|c", "(a|b)*", "(a+b;c)|(a+1)", "(a|b);(c|d)"] {
            let t = al.parse_term(text).unwrap();
            let c = idsp_closure_term(&t, &b).unwrap();
            assert_eq!(slice(&c, 4).unwrap(), brute_idsp_slice(&t, 4).unwrap(), "{text}");
        }
    }

    #[test]
    fn exchange_examples() {
        let (mut al, b) = setup();
        let mut eq = |x: &str, y: &str| {
            let (t1, t2) = (al.parse_term(x).unwrap(), al.parse_term(y).unwrap());
            decide_ex_equiv(&t1, &t2, &b).unwrap()
        };
        assert_eq!(eq("(a|b)+a;b", "a|b"), Equivalence::Equal);
        assert!(matches!(eq("a;b", "b;a"), Equivalence::NotEqual(_)));
        assert_eq!(eq("(a|b);(c|d) + (b;d)|(a;c)", "(b;d)|(a;c)"), Equivalence::Equal);
    }
}
