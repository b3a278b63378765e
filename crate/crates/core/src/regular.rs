//! Word languages over finite alphabets of opaque [`Letter`]s: compilation of
//! regular terms, Boolean operations, equivalence, state elimination back to
//! terms, and finite-index congruences from transition monoids.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::pomset::Letter;
use crate::term::{Node, Term};

/// Complete deterministic automaton. States are `0..n`; `delta[s * k + i]`
/// is the successor of `s` on the `i`-th letter of the sorted alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<Letter>,
    start: usize,
    accept: Vec<bool>,
    delta: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersect,
    Difference,
    SymmetricDifference,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::Union => a || b,
            BoolOp::Intersect => a && b,
            BoolOp::Difference => a && !b,
            BoolOp::SymmetricDifference => a != b,
        }
    }
}

/// Result of comparing two automata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DfaEquiv {
    Equal,
    /// A shortest word accepted by exactly one side.
    Differ(Vec<Letter>),
}

fn sorted_alphabet<I: IntoIterator<Item = Letter>>(it: I) -> Vec<Letter> {
    let set: BTreeSet<Letter> = it.into_iter().collect();
    set.into_iter().collect()
}

impl Dfa {
    /// Builds an automaton from raw parts, checking totality.
    pub fn from_parts(alphabet: Vec<Letter>, start: usize, accept: Vec<bool>, delta: Vec<u32>) -> Result<Dfa> {
        let k = alphabet.len();
        let n = accept.len();
        let sorted = alphabet.windows(2).all(|w| w[0] < w[1]);
        if !sorted || start >= n.max(1) || delta.len() != n * k || delta.iter().any(|&s| s as usize >= n) {
            return Err(Error::InvalidPomset("malformed automaton"));
        }
        Ok(Dfa { alphabet, start, accept, delta })
    }

    /// The automaton of ∅.
    pub fn empty(alphabet: &[Letter]) -> Dfa {
        let alphabet = sorted_alphabet(alphabet.iter().copied());
        let k = alphabet.len();
        Dfa { alphabet, start: 0, accept: vec![false], delta: vec![0; k] }
    }

    /// The automaton of all words.
    pub fn universal(alphabet: &[Letter]) -> Dfa {
        let mut d = Dfa::empty(alphabet);
        d.accept[0] = true;
        d
    }

    /// Words of length at least `n`.
    pub fn min_length(alphabet: &[Letter], n: usize) -> Dfa {
        let alphabet = sorted_alphabet(alphabet.iter().copied());
        let k = alphabet.len();
        let mut delta = Vec::with_capacity((n + 1) * k);
        for s in 0..=n {
            delta.extend(core::iter::repeat((s + 1).min(n) as u32).take(k));
        }
        let accept = (0..=n).map(|s| s == n).collect();
        Dfa { alphabet, start: 0, accept, delta }
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.accept.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accept[s]
    }

    pub fn symbol(&self, l: Letter) -> Option<usize> {
        self.alphabet.binary_search(&l).ok()
    }

    pub fn step(&self, s: usize, sym: usize) -> usize {
        self.delta[s * self.alphabet.len() + sym] as usize
    }

    /// Runs a word; letters outside the alphabet reject.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut s = self.start;
        for &l in word {
            match self.symbol(l) {
                Some(i) => s = self.step(s, i),
                None => return false,
            }
        }
        self.accept[s]
    }

    /// Same language over a larger alphabet; new letters lead to a sink.
    pub fn extend_alphabet(&self, alphabet: &[Letter]) -> Dfa {
        let new_alpha = sorted_alphabet(self.alphabet.iter().chain(alphabet).copied());
        if new_alpha == self.alphabet {
            return self.clone();
        }
        let n = self.n_states();
        let sink = n;
        let k = new_alpha.len();
        let mut delta = Vec::with_capacity((n + 1) * k);
        for s in 0..=n {
            for l in &new_alpha {
                let t = match (s < n, self.symbol(*l)) {
                    (true, Some(i)) => self.step(s, i),
                    _ => sink,
                };
                delta.push(t as u32);
            }
        }
        let mut accept = self.accept.clone();
        accept.push(false);
        Dfa { alphabet: new_alpha, start: self.start, accept, delta }.minimize()
    }

    /// Only the words over `keep`; other letters are removed.
    pub fn restrict_alphabet(&self, keep: &BTreeSet<Letter>) -> Dfa {
        let idx: Vec<usize> = (0..self.alphabet.len()).filter(|&i| keep.contains(&self.alphabet[i])).collect();
        let alphabet: Vec<Letter> = idx.iter().map(|&i| self.alphabet[i]).collect();
        let mut delta = Vec::with_capacity(self.n_states() * idx.len());
        for s in 0..self.n_states() {
            for &i in &idx {
                delta.push(self.step(s, i) as u32);
            }
        }
        Dfa { alphabet, start: self.start, accept: self.accept.clone(), delta }.minimize()
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        for a in d.accept.iter_mut() {
            *a = !*a;
        }
        d
    }

    /// Product construction followed by minimization.
    pub fn boolean(op: BoolOp, a: &Dfa, b: &Dfa, budget: &Budget) -> Result<Dfa> {
        if a.alphabet != b.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let k = a.alphabet.len();
        let mut index = BTreeMap::new();
        let mut pairs = vec![(a.start, b.start)];
        index.insert((a.start, b.start), 0u32);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for sym in 0..k {
                let next = (a.step(p, sym), b.step(q, sym));
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if pairs.len() >= budget.max_states {
                            return Err(Error::CapExceeded { what: "automaton states", limit: budget.max_states });
                        }
                        let id = pairs.len() as u32;
                        index.insert(next, id);
                        pairs.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accept = pairs.iter().map(|&(p, q)| op.apply(a.accept[p], b.accept[q])).collect();
        Ok(Dfa { alphabet: a.alphabet.clone(), start: 0, accept, delta }.minimize())
    }

    fn reachable(&self) -> Vec<usize> {
        let k = self.alphabet.len();
        let mut seen = vec![false; self.n_states()];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for sym in 0..k {
                let t = self.step(s, sym);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Minimal automaton by Moore partition refinement on reachable states.
    /// States are renumbered in breadth-first order, so equal languages give
    /// identical automata.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.reachable();
        let mut class = vec![usize::MAX; self.n_states()];
        for &s in &reach {
            class[s] = self.accept[s] as usize;
        }
        let mut count = reach.iter().map(|&s| class[s]).collect::<BTreeSet<_>>().len();
        loop {
            let mut sig_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut next = vec![usize::MAX; self.n_states()];
            for &s in &reach {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[s]);
                for sym in 0..k {
                    sig.push(class[self.step(s, sym)]);
                }
                let len = sig_index.len();
                next[s] = *sig_index.entry(sig).or_insert(len);
            }
            let new_count = sig_index.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // Renumber classes breadth-first from the start state.
        let mut renum = vec![usize::MAX; count];
        let mut reps = Vec::new();
        let mut queue = VecDeque::new();
        renum[class[self.start]] = 0;
        reps.push(self.start);
        queue.push_back(self.start);
        while let Some(s) = queue.pop_front() {
            for sym in 0..k {
                let t = self.step(s, sym);
                if renum[class[t]] == usize::MAX {
                    renum[class[t]] = reps.len();
                    reps.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(reps.len() * k);
        for &s in &reps {
            for sym in 0..k {
                delta.push(renum[class[self.step(s, sym)]] as u32);
            }
        }
        let accept = reps.iter().map(|&s| self.accept[s]).collect();
        Dfa { alphabet: self.alphabet.clone(), start: 0, accept, delta }
    }

    /// A shortest accepted word, least in letter order among the shortest.
    pub fn shortest_word(&self) -> Option<Vec<Letter>> {
        let k = self.alphabet.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.n_states()];
        let mut seen = vec![false; self.n_states()];
        let mut queue = VecDeque::new();
        seen[self.start] = true;
        queue.push_back(self.start);
        while let Some(s) = queue.pop_front() {
            if self.accept[s] {
                let mut word = Vec::new();
                let mut at = s;
                while let Some((p, sym)) = parent[at] {
                    word.push(self.alphabet[sym]);
                    at = p;
                }
                word.reverse();
                return Some(word);
            }
            for sym in 0..k {
                let t = self.step(s, sym);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, sym));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Language equality with a shortest distinguishing word.
    pub fn equiv(a: &Dfa, b: &Dfa, budget: &Budget) -> Result<DfaEquiv> {
        let d = Dfa::boolean(BoolOp::SymmetricDifference, a, b, budget)?;
        Ok(match d.shortest_word() {
            None => DfaEquiv::Equal,
            Some(w) => DfaEquiv::Differ(w),
        })
    }

    /// States from which some accepting state is reachable.
    fn live(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let n = self.n_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for sym in 0..k {
                rev[self.step(s, sym)].push(s);
            }
        }
        let mut live = self.accept.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| live[s]).collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Letters used on some accepting path.
    pub fn useful_letters(&self) -> BTreeSet<Letter> {
        let live = self.live();
        let k = self.alphabet.len();
        let mut out = BTreeSet::new();
        for s in self.reachable() {
            if !live[s] {
                continue;
            }
            for sym in 0..k {
                if live[self.step(s, sym)] {
                    out.insert(self.alphabet[sym]);
                }
            }
        }
        out
    }

    /// A regular term for the language, by state elimination.
    pub fn to_term(&self) -> Term {
        let k = self.alphabet.len();
        let live = self.live();
        if !live[self.start] {
            return Term::zero();
        }
        let reach = self.reachable();
        let states: Vec<usize> = reach.into_iter().filter(|&s| live[s]).collect();
        let n = self.n_states();
        // Nodes: n = initial, n + 1 = final, plus the live states.
        let init = n;
        let fin = n + 1;
        let mut edges: BTreeMap<(usize, usize), Vec<Term>> = BTreeMap::new();
        for &s in &states {
            for sym in 0..k {
                let t = self.step(s, sym);
                if live[t] {
                    edges.entry((s, t)).or_default().push(Term::letter(self.alphabet[sym]));
                }
            }
            if self.accept[s] {
                edges.entry((s, fin)).or_default().push(Term::one());
            }
        }
        edges.entry((init, self.start)).or_default().push(Term::one());
        let mut r: BTreeMap<(usize, usize), Term> = edges.into_iter().map(|(e, ts)| (e, Term::sum(ts))).collect();
        let mut remaining: BTreeSet<usize> = states.iter().copied().collect();
        while !remaining.is_empty() {
            // Eliminate the state with the fewest in/out edge combinations.
            let mut best = None;
            for &s in &remaining {
                let ins = r.keys().filter(|&&(a, b)| b == s && a != s).count();
                let outs = r.keys().filter(|&&(a, b)| a == s && b != s).count();
                let cost = ins * outs;
                if best.map_or(true, |(c, _)| cost < c) {
                    best = Some((cost, s));
                }
            }
            let s = best.unwrap().1;
            remaining.remove(&s);
            let loop_term = r.remove(&(s, s)).map(|t| Term::star(&t)).unwrap_or_else(Term::one);
            let ins: Vec<(usize, Term)> =
                r.iter().filter(|(&(_, b), _)| b == s).map(|(&(a, _), t)| (a, t.clone())).collect();
            let outs: Vec<(usize, Term)> =
                r.iter().filter(|(&(a, _), _)| a == s).map(|(&(_, b), t)| (b, t.clone())).collect();
            for (a, _) in &ins {
                r.remove(&(*a, s));
            }
            for (b, _) in &outs {
                r.remove(&(s, *b));
            }
            for (a, tin) in &ins {
                let prefix = Term::dot(tin, &loop_term);
                for (b, tout) in &outs {
                    let path = Term::dot(&prefix, tout);
                    let merged = match r.get(&(*a, *b)) {
                        Some(old) => Term::plus(old, &path),
                        None => path,
                    };
                    r.insert((*a, *b), merged);
                }
            }
        }
        r.remove(&(init, fin)).unwrap_or_else(Term::zero)
    }
}

/// Compiles a regular term (no `|`, no `^`) to a minimal automaton over the
/// term's letters together with `alphabet`.
pub fn compile_regex(t: &Term, alphabet: &[Letter], budget: &Budget) -> Result<Dfa> {
    if !t.is_regular() {
        return Err(Error::UnsupportedOperator { engine: "regular", op: "parallel composition" });
    }
    let alpha = sorted_alphabet(alphabet.iter().copied().chain(t.letters()));
    let k = alpha.len();
    let mut g = Glushkov { letters: Vec::new(), follow: Vec::new() };
    let (nullable, first, last) = g.build(t);
    let npos = g.letters.len();
    let words = npos / 64 + 1;
    let to_bits = |v: &[usize]| {
        let mut b = vec![0u64; words];
        for &p in v {
            b[p / 64] |= 1 << (p % 64);
        }
        b
    };
    let last_bits = to_bits(&last);
    let follow_bits: Vec<Vec<u64>> = g.follow.iter().map(|f| to_bits(f)).collect();
    let first_bits = to_bits(&first);
    let sym_of: Vec<usize> = g.letters.iter().map(|l| alpha.binary_search(l).unwrap()).collect();

    // State 0 is the initial state; others are sets of positions.
    let mut index: BTreeMap<Vec<u64>, u32> = BTreeMap::new();
    let mut sets: Vec<Vec<u64>> = vec![Vec::new()];
    let mut accept = vec![nullable];
    let mut delta: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let mut next: Vec<Vec<u64>> = vec![vec![0u64; words]; k];
        let add = |from: &Vec<u64>, next: &mut Vec<Vec<u64>>| {
            for (w, &bits) in from.iter().enumerate() {
                let mut b = bits;
                while b != 0 {
                    let p = w * 64 + b.trailing_zeros() as usize;
                    b &= b - 1;
                    next[sym_of[p]][p / 64] |= 1 << (p % 64);
                }
            }
        };
        if i == 0 {
            add(&first_bits, &mut next);
        } else {
            let cur = sets[i].clone();
            for (w, &bits) in cur.iter().enumerate() {
                let mut b = bits;
                while b != 0 {
                    let p = w * 64 + b.trailing_zeros() as usize;
                    b &= b - 1;
                    add(&follow_bits[p], &mut next);
                }
            }
        }
        for set in next {
            let id = match index.get(&set) {
                Some(&id) => id,
                None => {
                    if sets.len() >= budget.max_states {
                        return Err(Error::CapExceeded { what: "automaton states", limit: budget.max_states });
                    }
                    let id = sets.len() as u32;
                    let acc = set.iter().zip(&last_bits).any(|(a, b)| a & b != 0);
                    accept.push(acc);
                    index.insert(set.clone(), id);
                    sets.push(set);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    Ok(Dfa { alphabet: alpha, start: 0, accept, delta }.minimize())
}

struct Glushkov {
    letters: Vec<Letter>,
    follow: Vec<Vec<usize>>,
}

impl Glushkov {
    // Returns (nullable, first, last) and records follow edges.
    fn build(&mut self, t: &Term) -> (bool, Vec<usize>, Vec<usize>) {
        match t.node() {
            Node::Zero => (false, Vec::new(), Vec::new()),
            Node::One => (true, Vec::new(), Vec::new()),
            Node::Letter(l) => {
                let p = self.letters.len();
                self.letters.push(*l);
                self.follow.push(Vec::new());
                (false, vec![p], vec![p])
            }
            Node::Plus(u, v) => {
                let (n1, mut f1, mut l1) = self.build(u);
                let (n2, f2, l2) = self.build(v);
                f1.extend(f2);
                l1.extend(l2);
                (n1 || n2, f1, l1)
            }
            Node::Dot(u, v) => {
                let (n1, f1, l1) = self.build(u);
                let (n2, f2, l2) = self.build(v);
                for &p in &l1 {
                    self.follow[p].extend(f2.iter().copied());
                }
                let mut first = f1;
                if n1 {
                    first.extend(f2.iter().copied());
                }
                let mut last = l2;
                if n2 {
                    last.extend(l1);
                }
                (n1 && n2, first, last)
            }
            Node::Star(u) => {
                let (_, f, l) = self.build(u);
                for &p in &l {
                    self.follow[p].extend(f.iter().copied());
                }
                (true, f, l)
            }
            Node::Par(..) | Node::ParStar(_) => unreachable!("checked by is_regular"),
        }
    }
}

/// A finite-index congruence on `Γ*` from the transition monoid of the
/// product of a family of automata. Each monoid element `θ` is a class
/// `K_θ = { w : w acts as θ }`; every registered language is a union of
/// classes.
#[derive(Clone, Debug)]
pub struct Congruence {
    alphabet: Vec<Letter>,
    elements: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    witnesses: Vec<Vec<Letter>>,
    letter_elem: Vec<usize>,
    identity: usize,
    targets: Vec<BTreeSet<usize>>,
}

impl Congruence {
    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn n_classes(&self) -> usize {
        self.elements.len()
    }

    /// Class of the empty word.
    pub fn identity(&self) -> usize {
        self.identity
    }

    /// A shortest word in each class.
    pub fn witness(&self, class: usize) -> &[Letter] {
        &self.witnesses[class]
    }

    /// Class of `a·b` for `a ∈ K_i`, `b ∈ K_j`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        let f = &self.elements[i];
        let g = &self.elements[j];
        let h: Vec<u32> = f.iter().map(|&s| g[s as usize]).collect();
        self.index[&h]
    }

    /// Full composition table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        let m = self.n_classes();
        (0..m).map(|i| (0..m).map(|j| self.compose(i, j)).collect()).collect()
    }

    /// Class of a word; `None` when it uses letters outside `Γ`.
    pub fn class_of(&self, word: &[Letter]) -> Option<usize> {
        let mut c = self.identity;
        for l in word {
            let sym = self.alphabet.binary_search(l).ok()?;
            c = self.compose(c, self.letter_elem[sym]);
        }
        Some(c)
    }

    /// Classes whose union is the `i`-th registered language.
    pub fn target_classes(&self, i: usize) -> Option<&BTreeSet<usize>> {
        self.targets.get(i)
    }

    pub fn n_targets(&self) -> usize {
        self.targets.len()
    }

    /// The automaton of one class: the Cayley graph of the monoid with the
    /// class as its only accepting element, minimized.
    pub fn class_dfa(&self, class: usize) -> Dfa {
        self.cayley(&BTreeSet::from([class]))
    }

    fn cayley(&self, accepting: &BTreeSet<usize>) -> Dfa {
        let k = self.alphabet.len();
        let m = self.n_classes();
        let mut delta = Vec::with_capacity(m * k);
        for e in 0..m {
            for sym in 0..k {
                delta.push(self.compose(e, self.letter_elem[sym]) as u32);
            }
        }
        let accept = (0..m).map(|e| accepting.contains(&e)).collect();
        Dfa { alphabet: self.alphabet.clone(), start: self.identity, accept, delta }.minimize()
    }
}

/// The congruence whose classes are the transition-monoid elements of the
/// product of `langs`. All automata must share one alphabet.
pub fn finite_index_congruence(langs: &[Dfa], budget: &Budget) -> Result<Congruence> {
    let alphabet = match langs.first() {
        Some(d) => d.alphabet.clone(),
        None => Vec::new(),
    };
    if langs.iter().any(|d| d.alphabet != alphabet) {
        return Err(Error::AlphabetMismatch);
    }
    let k = alphabet.len();
    // Reachable product states.
    let start: Vec<usize> = langs.iter().map(|d| d.start).collect();
    let mut index: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
    let mut states = vec![start.clone()];
    index.insert(start, 0);
    let mut step: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        for sym in 0..k {
            let next: Vec<usize> = states[i].iter().zip(langs).map(|(&s, d)| d.step(s, sym)).collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= budget.max_states {
                        return Err(Error::CapExceeded { what: "automaton states", limit: budget.max_states });
                    }
                    let id = states.len() as u32;
                    index.insert(next.clone(), id);
                    states.push(next);
                    id
                }
            };
            step.push(id);
        }
        i += 1;
    }
    let n = states.len();
    let letter_fn: Vec<Vec<u32>> = (0..k).map(|sym| (0..n).map(|s| step[s * k + sym]).collect()).collect();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut elements = vec![identity.clone()];
    let mut witnesses = vec![Vec::new()];
    let mut eindex = BTreeMap::new();
    eindex.insert(identity, 0usize);
    let mut i = 0;
    while i < elements.len() {
        for sym in 0..k {
            let h: Vec<u32> = elements[i].iter().map(|&s| letter_fn[sym][s as usize]).collect();
            if !eindex.contains_key(&h) {
                if elements.len() >= budget.max_monoid {
                    return Err(Error::CapExceeded { what: "transition monoid elements", limit: budget.max_monoid });
                }
                let mut w = witnesses[i].clone();
                w.push(alphabet[sym]);
                eindex.insert(h.clone(), elements.len());
                elements.push(h);
                witnesses.push(w);
            }
        }
        i += 1;
    }
    let letter_elem = letter_fn.iter().map(|f| eindex[f]).collect();
    let targets = (0..langs.len())
        .map(|li| {
            (0..elements.len())
                .filter(|&e| {
                    let s = elements[e][0] as usize;
                    langs[li].accept[states[s][li]]
                })
                .collect()
        })
        .collect();
    Ok(Congruence { alphabet, elements, index: eindex, witnesses, letter_elem, identity: 0, targets })
}

/// Letter of `Δ` standing for class `i`.
pub fn class_letter(i: usize) -> Letter {
    Letter(i as u32)
}

/// Letter of `Δ × Δ` standing for the class pair `(i, j)`.
pub fn pair_letter(c: &Congruence, i: usize, j: usize) -> Letter {
    Letter((i * c.n_classes() + j) as u32)
}

/// Inverse of [`pair_letter`].
pub fn split_pair_letter(c: &Congruence, l: Letter) -> (usize, usize) {
    let m = c.n_classes();
    (l.0 as usize / m, l.0 as usize % m)
}

/// Words `δ1⋯δb` over the class alphabet `Δ` whose class products lie in the
/// registered target `l1`; with `l2` given, words over `Δ × Δ` whose first and
/// second components satisfy this for `l1` and `l2` respectively.
pub fn guarded_word_language(c: &Congruence, l1: usize, l2: Option<usize>, budget: &Budget) -> Result<Dfa> {
    let t1 = c.target_classes(l1).ok_or(Error::UnregisteredTarget)?;
    let m = c.n_classes();
    let table = c.table();
    match l2 {
        None => {
            let alphabet: Vec<Letter> = (0..m).map(class_letter).collect();
            let mut delta = Vec::with_capacity(m * m);
            for e in 0..m {
                for d in 0..m {
                    delta.push(table[e][d] as u32);
                }
            }
            let accept = (0..m).map(|e| t1.contains(&e)).collect();
            Ok(Dfa { alphabet, start: c.identity, accept, delta }.minimize())
        }
        Some(l2) => {
            let t2 = c.target_classes(l2).ok_or(Error::UnregisteredTarget)?;
            if m * m > budget.max_states {
                return Err(Error::CapExceeded { what: "automaton states", limit: budget.max_states });
            }
            let alphabet: Vec<Letter> = (0..m * m).map(|x| Letter(x as u32)).collect();
            let mut delta = Vec::with_capacity(m * m * m * m);
            for e1 in 0..m {
                for e2 in 0..m {
                    for d1 in 0..m {
                        for d2 in 0..m {
                            delta.push((table[e1][d1] * m + table[e2][d2]) as u32);
                        }
                    }
                }
            }
            let accept = (0..m * m).map(|s| t1.contains(&(s / m)) && t2.contains(&(s % m))).collect();
            let start = c.identity * m + c.identity;
            Ok(Dfa { alphabet, start, accept, delta }.minimize())
        }
    }
}
