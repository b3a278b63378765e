//! Pomsets: canonical series-parallel trees, general labelled posets, and the
//! order-theoretic operations between them (N-freeness, subsumption, ideals,
//! the ⊙ product).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;

/// Hard limit on vertices of a [`GeneralPomset`]; the order is stored as one
/// `u64` bitset per vertex.
pub const MAX_GENERAL_VERTICES: usize = 64;

/// Interned symbol of an alphabet. Rendering goes through an
/// [`Alphabet`](crate::syntax::Alphabet).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(pub u32);

/// A natural number or infinity, ordered with infinity on top.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtNat {
    Finite(usize),
    Infinity,
}

impl ExtNat {
    pub fn max(self, other: ExtNat) -> ExtNat {
        core::cmp::max(self, other)
    }

    pub fn add(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a + b),
            _ => ExtNat::Infinity,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinity => None,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinity => f.write_str("inf"),
        }
    }
}

/// Canonical tree of a series-parallel pomset.
///
/// `Seq` children are never `Seq` or `Unit` and keep their order; `Par`
/// children are never `Par` or `Unit` and are sorted. Both have at least two
/// children. With these constraints structural equality is pomset equality.
/// The derived order (Unit < Atom < Seq < Par, then children
/// lexicographically) is the total order used to sort `Par` children.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SpPomset {
    Unit,
    Atom(Letter),
    Seq(Vec<SpPomset>),
    Par(Vec<SpPomset>),
}

impl SpPomset {
    pub fn atom(l: Letter) -> SpPomset {
        SpPomset::Atom(l)
    }

    /// Sequential product `p · q` in canonical form.
    pub fn seq(p: &SpPomset, q: &SpPomset) -> SpPomset {
        let mut parts = Vec::new();
        p.push_seq_parts(&mut parts);
        q.push_seq_parts(&mut parts);
        SpPomset::from_seq_parts(parts)
    }

    /// Parallel product `p ∥ q` in canonical form.
    pub fn par(p: &SpPomset, q: &SpPomset) -> SpPomset {
        let mut parts = Vec::new();
        p.push_par_parts(&mut parts);
        q.push_par_parts(&mut parts);
        SpPomset::from_par_parts(parts)
    }

    /// Sequential composition of a list of pomsets.
    pub fn seq_all<'a, I: IntoIterator<Item = &'a SpPomset>>(items: I) -> SpPomset {
        let mut parts = Vec::new();
        for p in items {
            p.push_seq_parts(&mut parts);
        }
        SpPomset::from_seq_parts(parts)
    }

    /// Parallel composition of a list of pomsets.
    pub fn par_all<'a, I: IntoIterator<Item = &'a SpPomset>>(items: I) -> SpPomset {
        let mut parts = Vec::new();
        for p in items {
            p.push_par_parts(&mut parts);
        }
        SpPomset::from_par_parts(parts)
    }

    fn push_seq_parts(&self, out: &mut Vec<SpPomset>) {
        match self {
            SpPomset::Unit => {}
            SpPomset::Seq(cs) => out.extend(cs.iter().cloned()),
            other => out.push(other.clone()),
        }
    }

    fn push_par_parts(&self, out: &mut Vec<SpPomset>) {
        match self {
            SpPomset::Unit => {}
            SpPomset::Par(cs) => out.extend(cs.iter().cloned()),
            other => out.push(other.clone()),
        }
    }

    /// Builds a pomset from non-unit, non-`Seq` parts.
    pub(crate) fn from_seq_parts(mut parts: Vec<SpPomset>) -> SpPomset {
        match parts.len() {
            0 => SpPomset::Unit,
            1 => parts.pop().unwrap(),
            _ => SpPomset::Seq(parts),
        }
    }

    /// Builds a pomset from non-unit, non-`Par` parts.
    pub(crate) fn from_par_parts(mut parts: Vec<SpPomset>) -> SpPomset {
        match parts.len() {
            0 => SpPomset::Unit,
            1 => parts.pop().unwrap(),
            _ => {
                parts.sort();
                SpPomset::Par(parts)
            }
        }
    }

    /// The maximal sequential factors (empty for the unit).
    pub fn seq_factors(&self) -> &[SpPomset] {
        match self {
            SpPomset::Unit => &[],
            SpPomset::Seq(cs) => cs,
            other => core::slice::from_ref(other),
        }
    }

    /// The maximal parallel components (empty for the unit).
    pub fn par_components(&self) -> &[SpPomset] {
        match self {
            SpPomset::Unit => &[],
            SpPomset::Par(cs) => cs,
            other => core::slice::from_ref(other),
        }
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        match self {
            SpPomset::Unit => 0,
            SpPomset::Atom(_) => 1,
            SpPomset::Seq(cs) | SpPomset::Par(cs) => cs.iter().map(SpPomset::size).sum(),
        }
    }

    pub fn is_sequential(&self) -> bool {
        matches!(self, SpPomset::Seq(_))
    }

    pub fn is_parallel(&self) -> bool {
        matches!(self, SpPomset::Par(_))
    }

    /// Maximal number of pairwise unordered vertices.
    pub fn width(&self) -> usize {
        match self {
            SpPomset::Unit => 0,
            SpPomset::Atom(_) => 1,
            SpPomset::Seq(cs) => cs.iter().map(SpPomset::width).max().unwrap_or(0),
            SpPomset::Par(cs) => cs.iter().map(SpPomset::width).sum(),
        }
    }

    /// Alternation depth of the series-parallel decomposition.
    pub fn depth(&self) -> usize {
        match self {
            SpPomset::Unit | SpPomset::Atom(_) => 0,
            SpPomset::Seq(cs) | SpPomset::Par(cs) => {
                cs.iter().map(SpPomset::depth).max().unwrap_or(0) + 1
            }
        }
    }

    /// Letters in vertex order of [`SpPomset::to_general`].
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        match self {
            SpPomset::Unit => {}
            SpPomset::Atom(l) => out.push(*l),
            SpPomset::Seq(cs) | SpPomset::Par(cs) => {
                for c in cs {
                    c.collect_letters(out);
                }
            }
        }
    }

    /// Explicit labelled partial order.
    pub fn to_general(&self) -> GeneralPomset {
        let labels = self.letters();
        let n = labels.len();
        assert!(n <= MAX_GENERAL_VERTICES, "pomset too large for GeneralPomset");
        let mut succ = vec![0u64; n];
        self.fill_order(0, &mut succ);
        GeneralPomset { labels, succ }
    }

    // Returns the vertex range [start, end) occupied by self.
    fn fill_order(&self, start: usize, succ: &mut [u64]) -> usize {
        match self {
            SpPomset::Unit => start,
            SpPomset::Atom(_) => start + 1,
            SpPomset::Par(cs) => {
                let mut at = start;
                for c in cs {
                    at = c.fill_order(at, succ);
                }
                at
            }
            SpPomset::Seq(cs) => {
                let mut ranges = Vec::with_capacity(cs.len());
                let mut at = start;
                for c in cs {
                    let end = c.fill_order(at, succ);
                    ranges.push((at, end));
                    at = end;
                }
                for &(s, e) in &ranges {
                    let later = range_mask(e, at);
                    for v in s..e {
                        succ[v] |= later;
                    }
                }
                at
            }
        }
    }
}

fn range_mask(lo: usize, hi: usize) -> u64 {
    if lo >= hi {
        return 0;
    }
    let upper = if hi >= 64 { u64::MAX } else { (1u64 << hi) - 1 };
    let lower = if lo >= 64 { u64::MAX } else { (1u64 << lo) - 1 };
    upper & !lower
}

/// Labelled strict partial order on vertices `0..n`.
///
/// `succ[i]` holds the bitset of vertices strictly above `i`; it is always
/// transitively closed. Equality is isomorphism.
#[derive(Clone, Debug)]
pub struct GeneralPomset {
    labels: Vec<Letter>,
    succ: Vec<u64>,
}

/// Four vertices forming an induced N: `v1 < v2`, `v3 < v2`, `v3 < v4`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NWitness(pub [usize; 4]);

impl GeneralPomset {
    /// Builds a pomset from labels and strict order pairs `(lo, hi)`; the
    /// relation is transitively closed. Fails on cycles or bad indices.
    pub fn new(labels: Vec<Letter>, pairs: &[(usize, usize)]) -> Result<GeneralPomset, Error> {
        let n = labels.len();
        if n > MAX_GENERAL_VERTICES {
            return Err(Error::CapExceeded { what: "pomset vertices", limit: MAX_GENERAL_VERTICES });
        }
        let mut succ = vec![0u64; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidPomset("order pair refers to a missing vertex"));
            }
            succ[a] |= 1 << b;
        }
        close_transitively(&mut succ);
        if (0..n).any(|i| succ[i] & (1 << i) != 0) {
            return Err(Error::InvalidPomset("order relation has a cycle"));
        }
        Ok(GeneralPomset { labels, succ })
    }

    pub(crate) fn from_closed(labels: Vec<Letter>, succ: Vec<u64>) -> GeneralPomset {
        GeneralPomset { labels, succ }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Letter] {
        &self.labels
    }

    /// `i < j` in the strict order.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.succ[i] & (1 << j) != 0
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i)
    }

    /// All strict order pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Finds an induced N on four vertices.
    pub fn n_witness(&self) -> Option<NWitness> {
        let n = self.len();
        for v3 in 0..n {
            for v2 in 0..n {
                if !self.lt(v3, v2) {
                    continue;
                }
                for v1 in 0..n {
                    if v1 == v3 || !self.lt(v1, v2) || self.comparable(v1, v3) {
                        continue;
                    }
                    for v4 in 0..n {
                        if v4 == v1 || v4 == v2 || !self.lt(v3, v4) {
                            continue;
                        }
                        if self.comparable(v1, v4) || self.comparable(v2, v4) {
                            continue;
                        }
                        return Some(NWitness([v1, v2, v3, v4]));
                    }
                }
            }
        }
        None
    }

    pub fn is_n_free(&self) -> bool {
        self.n_witness().is_none()
    }

    /// Canonical series-parallel tree, or the N that prevents one.
    pub fn to_sp(&self) -> Result<SpPomset, Error> {
        let all: Vec<usize> = (0..self.len()).collect();
        match self.sp_of(&all) {
            Some(p) => Ok(p),
            None => {
                let w = self.n_witness().expect("non-series-parallel poset contains an N");
                Err(Error::NotSeriesParallel(w))
            }
        }
    }

    fn sp_of(&self, vs: &[usize]) -> Option<SpPomset> {
        match vs.len() {
            0 => return Some(SpPomset::Unit),
            1 => return Some(SpPomset::Atom(self.labels[vs[0]])),
            _ => {}
        }
        let comp = self.components(vs, true);
        if comp.len() > 1 {
            let mut parts = Vec::with_capacity(comp.len());
            for c in &comp {
                parts.push(self.sp_of(c)?);
            }
            return Some(SpPomset::from_par_parts(parts));
        }
        let mut blocks = self.components(vs, false);
        if blocks.len() == 1 {
            return None;
        }
        // Blocks of the incomparability graph must be totally ordered.
        blocks.sort_by(|a, b| {
            if self.lt(a[0], b[0]) {
                Ordering::Less
            } else if self.lt(b[0], a[0]) {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        });
        for w in blocks.windows(2) {
            for &x in &w[0] {
                for &y in &w[1] {
                    if !self.lt(x, y) {
                        return None;
                    }
                }
            }
        }
        let mut parts = Vec::with_capacity(blocks.len());
        for b in &blocks {
            match self.sp_of(b)? {
                SpPomset::Seq(cs) => parts.extend(cs),
                other => parts.push(other),
            }
        }
        Some(SpPomset::from_seq_parts(parts))
    }

    // Connected components of the comparability graph (`comparable = true`)
    // or of the incomparability graph, restricted to `vs`.
    fn components(&self, vs: &[usize], comparable: bool) -> Vec<Vec<usize>> {
        let mut seen = vec![false; vs.len()];
        let mut out = Vec::new();
        for start in 0..vs.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                comp.push(vs[i]);
                for j in 0..vs.len() {
                    if !seen[j] && self.comparable(vs[i], vs[j]) == comparable {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Maximum antichain size by brute force over vertex subsets.
    pub fn width_brute(&self) -> usize {
        let n = self.len();
        assert!(n <= 20, "brute-force width limited to 20 vertices");
        let mut best = 0;
        for mask in 0u32..(1u32 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let antichain = (0..n).all(|i| {
                mask & (1 << i) == 0 || (0..n).all(|j| mask & (1 << j) == 0 || !self.comparable(i, j))
            });
            if antichain {
                best = size;
            }
        }
        best
    }

    /// Canonical code: labels and order bits under the lexicographically least
    /// relabelling. Two pomsets are isomorphic iff their codes are equal.
    pub fn canonical_code(&self) -> CanonicalCode {
        canonical_code(&self.labels, &self.succ)
    }

    /// Disjoint union with no order between the two vertex sets.
    pub fn disjoint_union(&self, other: &GeneralPomset) -> GeneralPomset {
        let shift = self.len();
        assert!(shift + other.len() <= MAX_GENERAL_VERTICES);
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut succ = self.succ.clone();
        succ.extend(other.succ.iter().map(|m| m << shift));
        GeneralPomset { labels, succ }
    }

    /// Whether `self` is an ideal of `other`: some label-preserving bijection
    /// from `other`'s vertices to `self`'s maps every order pair of `other`
    /// onto an order pair of `self`.
    pub fn is_subsumed_by(&self, other: &GeneralPomset) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        let mut a = self.labels.clone();
        let mut b = other.labels.clone();
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
        if self.pairs().len() < other.pairs().len() {
            return false;
        }
        let mut image = vec![usize::MAX; n];
        let mut used = 0u64;
        subsumption_search(self, other, 0, &mut image, &mut used)
    }
}

fn subsumption_search(
    p: &GeneralPomset,
    q: &GeneralPomset,
    next: usize,
    image: &mut [usize],
    used: &mut u64,
) -> bool {
    let n = q.len();
    if next == n {
        return true;
    }
    for cand in 0..n {
        if *used & (1 << cand) != 0 || p.labels[cand] != q.labels[next] {
            continue;
        }
        let ok = (0..next).all(|prev| {
            (!q.lt(prev, next) || p.lt(image[prev], cand))
                && (!q.lt(next, prev) || p.lt(cand, image[prev]))
        });
        if !ok {
            continue;
        }
        image[next] = cand;
        *used |= 1 << cand;
        if subsumption_search(p, q, next + 1, image, used) {
            return true;
        }
        *used &= !(1 << cand);
    }
    image[next] = usize::MAX;
    false
}

impl PartialEq for GeneralPomset {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical_code() == other.canonical_code()
    }
}

impl Eq for GeneralPomset {}

/// Isomorphism-invariant code of a labelled poset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode {
    labels: Vec<Letter>,
    rows: Vec<u64>,
}

fn canonical_code(labels: &[Letter], succ: &[u64]) -> CanonicalCode {
    let n = labels.len();
    // Vertex invariant: label, number of predecessors, number of successors.
    let preds: Vec<u32> = (0..n)
        .map(|j| (0..n).filter(|&i| succ[i] & (1 << j) != 0).count() as u32)
        .collect();
    let key = |v: usize| (labels[v], preds[v], succ[v].count_ones());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let keys: Vec<_> = order.iter().map(|&v| key(v)).collect();
    let mut best: Option<Vec<u64>> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    canon_search(succ, &order, &keys, &mut perm, &mut used, &mut best);
    CanonicalCode {
        labels: order.iter().map(|&v| labels[v]).collect(),
        rows: best.unwrap_or_default(),
    }
}

// Positions are filled left to right; position i may take any unused vertex
// whose invariant equals keys[i]. The code is the matrix of order bits in
// position coordinates, compared row by row.
fn canon_search(
    succ: &[u64],
    order: &[usize],
    keys: &[(Letter, u32, u32)],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<Vec<u64>>,
) {
    let n = order.len();
    let pos = perm.len();
    if pos == n {
        let rows = rows_for(succ, perm);
        if best.as_ref().map_or(true, |b| rows < *b) {
            *best = Some(rows);
        }
        return;
    }
    for &v in order {
        if used[v] || keys_of(order, keys, v) != keys[pos] {
            continue;
        }
        used[v] = true;
        perm.push(v);
        canon_search(succ, order, keys, perm, used, best);
        perm.pop();
        used[v] = false;
    }
}

fn keys_of(order: &[usize], keys: &[(Letter, u32, u32)], v: usize) -> (Letter, u32, u32) {
    let idx = order.iter().position(|&x| x == v).unwrap();
    keys[idx]
}

fn rows_for(succ: &[u64], perm: &[usize]) -> Vec<u64> {
    let n = perm.len();
    (0..n)
        .map(|i| {
            let mut row = 0u64;
            for j in 0..n {
                if succ[perm[i]] & (1 << perm[j]) != 0 {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect()
}

pub(crate) fn close_transitively(succ: &mut [u64]) {
    let n = succ.len();
    // Warshall over bitsets.
    for k in 0..n {
        let bit = 1u64 << k;
        let row_k = succ[k];
        for row in succ.iter_mut() {
            if *row & bit != 0 {
                *row |= row_k;
            }
        }
    }
}

/// Enumerates every strict partial order on `n` vertices containing the
/// closed order `base`. With `side` given, pairs on the same side that `base`
/// leaves unordered stay unordered.
fn extensions(n: usize, base: &[u64], side: Option<&[u8]>, out: &mut Vec<Vec<u64>>) {
    // Pairs i < j (by index) still undecided.
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let comparable = base[i] & (1 << j) != 0 || base[j] & (1 << i) != 0;
            let may_branch = side.map_or(true, |s| s[i] != s[j]);
            if !comparable && may_branch {
                pairs.push((i, j));
            }
        }
    }
    // Frozen incomparable pairs: same-side pairs that are unordered.
    let mut frozen = vec![0u64; n];
    if let Some(s) = side {
        for i in 0..n {
            for j in 0..n {
                if i != j && s[i] == s[j] && base[i] & (1 << j) == 0 && base[j] & (1 << i) == 0 {
                    frozen[i] |= 1 << j;
                }
            }
        }
    }
    let mut cur = base.to_vec();
    extend_rec(&pairs, 0, &mut cur, &mut frozen, out);
}

fn extend_rec(
    pairs: &[(usize, usize)],
    idx: usize,
    cur: &mut Vec<u64>,
    frozen: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    let n = cur.len();
    let mut idx = idx;
    while idx < pairs.len() {
        let (i, j) = pairs[idx];
        if cur[i] & (1 << j) != 0 || cur[j] & (1 << i) != 0 {
            idx += 1;
        } else {
            break;
        }
    }
    if idx == pairs.len() {
        out.push(cur.clone());
        return;
    }
    let (i, j) = pairs[idx];
    for &(lo, hi) in &[(i, j), (j, i)] {
        let mut next = cur.clone();
        next[lo] |= 1 << hi;
        close_transitively(&mut next);
        let consistent = (0..n).all(|v| next[v] & (1 << v) == 0 && next[v] & frozen[v] == 0);
        if consistent {
            let saved = core::mem::replace(cur, next);
            extend_rec(pairs, idx + 1, cur, frozen, out);
            *cur = saved;
        }
    }
    // Keep i, j incomparable from here on.
    frozen[i] |= 1 << j;
    frozen[j] |= 1 << i;
    extend_rec(pairs, idx + 1, cur, frozen, out);
    frozen[i] &= !(1 << j);
    frozen[j] &= !(1 << i);
}

/// Default vertex cap for the exponential ideal and ⊙ enumerations.
pub const DEFAULT_ENUM_VERTEX_CAP: usize = 8;

/// All series-parallel ideals of `p`: N-free orders on the same labelled
/// vertices that contain `p`'s order.
pub fn sp_ideals_of(p: &SpPomset, vertex_cap: usize) -> Result<BTreeSet<SpPomset>, Error> {
    let g = p.to_general();
    if g.len() > vertex_cap {
        return Err(Error::CapExceeded { what: "ideal enumeration vertices", limit: vertex_cap });
    }
    let mut exts = Vec::new();
    extensions(g.len(), &g.succ, None, &mut exts);
    Ok(collect_sp(&g.labels, exts))
}

/// The ⊙ product of two pomsets: every series-parallel pomset on the disjoint
/// union of their vertices whose restriction to each factor is that factor.
pub fn odot(p: &SpPomset, q: &SpPomset, vertex_cap: usize) -> Result<BTreeSet<SpPomset>, Error> {
    let g = p.to_general().disjoint_union(&q.to_general());
    if g.len() > vertex_cap {
        return Err(Error::CapExceeded { what: "odot enumeration vertices", limit: vertex_cap });
    }
    let mut side = vec![0u8; p.size()];
    side.extend(core::iter::repeat(1u8).take(q.size()));
    let mut exts = Vec::new();
    extensions(g.len(), &g.succ, Some(&side), &mut exts);
    Ok(collect_sp(&g.labels, exts))
}

fn collect_sp(labels: &[Letter], exts: Vec<Vec<u64>>) -> BTreeSet<SpPomset> {
    let mut out = BTreeSet::new();
    for succ in exts {
        let g = GeneralPomset::from_closed(labels.to_vec(), succ);
        if let Ok(sp) = g.to_sp() {
            out.insert(sp);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Letter = Letter(0);
    const B: Letter = Letter(1);
    const C: Letter = Letter(2);
    const D: Letter = Letter(3);

    fn at(l: Letter) -> SpPomset {
        SpPomset::Atom(l)
    }

    #[test]
    fn products_are_canonical() {
        let a = at(A);
        assert_eq!(SpPomset::seq(&a, &SpPomset::Unit), a);
        let bc = SpPomset::seq(&at(B), &at(C));
        assert_eq!(SpPomset::seq(&a, &bc), SpPomset::Seq(vec![at(A), at(B), at(C)]));
        let ab = SpPomset::par(&at(A), &at(B));
        assert_eq!(SpPomset::seq(&ab, &at(C)), SpPomset::Seq(vec![ab.clone(), at(C)]));
        assert_eq!(SpPomset::par(&at(B), &at(A)), SpPomset::Par(vec![at(A), at(B)]));
        assert_eq!(SpPomset::par(&a, &SpPomset::Unit), a);
        assert_eq!(SpPomset::par(&ab, &at(C)), SpPomset::Par(vec![at(A), at(B), at(C)]));
    }

    #[test]
    fn fig1_n_shape_is_not_series_parallel() {
        // v1 <= v2, v3 <= v2, v3 <= v4
        let g = GeneralPomset::new(vec![A, B, C, D], &[(0, 1), (2, 1), (2, 3)]).unwrap();
        assert!(!g.is_n_free());
        match g.to_sp() {
            Err(Error::NotSeriesParallel(NWitness(w))) => {
                let mut w = w;
                w.sort();
                assert_eq!(w, [0, 1, 2, 3]);
            }
            other => panic!("expected N witness, got {other:?}"),
        }
    }

    #[test]
    fn chain_and_crown() {
        let chain = GeneralPomset::new(vec![A, B, C], &[(0, 1), (1, 2)]).unwrap();
        assert!(chain.is_n_free());
        assert_eq!(chain.to_sp().unwrap(), SpPomset::Seq(vec![at(A), at(B), at(C)]));
        let crown = GeneralPomset::new(vec![A, B, C, D], &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(crown.is_n_free());
        let expected = SpPomset::Seq(vec![
            SpPomset::Par(vec![at(A), at(B)]),
            SpPomset::Par(vec![at(C), at(D)]),
        ]);
        let sp = crown.to_sp().unwrap();
        assert_eq!(sp, expected);
        // The orders coincide pair by pair.
        let back = sp.to_general();
        assert_eq!(back, crown);
        assert_eq!(GeneralPomset::new(vec![], &[]).unwrap().to_sp().unwrap(), SpPomset::Unit);
    }

    #[test]
    fn width_and_depth() {
        let ab = SpPomset::Par(vec![at(A), at(B)]);
        assert_eq!(ab.width(), 2);
        assert_eq!(SpPomset::Seq(vec![ab.clone(), at(C)]).width(), 2);
        assert_eq!(SpPomset::Par(vec![at(A), at(B), at(C)]).width(), 3);
        assert_eq!(at(A).depth(), 0);
        assert_eq!(SpPomset::Unit.depth(), 0);
        assert_eq!(ab.depth(), 1);
        let nested = SpPomset::par(&SpPomset::seq(&at(A), &at(B)), &at(C));
        assert_eq!(nested.depth(), 2);
    }

    #[test]
    fn subsumption() {
        let ab_seq = SpPomset::seq(&at(A), &at(B)).to_general();
        let ab_par = SpPomset::par(&at(A), &at(B)).to_general();
        assert!(ab_seq.is_subsumed_by(&ab_par));
        assert!(!ab_par.is_subsumed_by(&ab_seq));
        let chain = SpPomset::Seq(vec![at(A), at(B), at(C)]).to_general();
        let fork = SpPomset::seq(&at(A), &SpPomset::par(&at(B), &at(C))).to_general();
        assert!(!fork.is_subsumed_by(&chain));
        assert!(chain.is_subsumed_by(&fork));
    }

    #[test]
    fn ideals_and_odot() {
        let ab = SpPomset::par(&at(A), &at(B));
        let ideals = sp_ideals_of(&ab, 8).unwrap();
        let expected: BTreeSet<_> =
            [ab.clone(), SpPomset::seq(&at(A), &at(B)), SpPomset::seq(&at(B), &at(A))].into();
        assert_eq!(ideals, expected);
        let seq = SpPomset::seq(&at(A), &at(B));
        assert_eq!(sp_ideals_of(&seq, 8).unwrap(), [seq.clone()].into());
        assert_eq!(sp_ideals_of(&SpPomset::Unit, 8).unwrap(), [SpPomset::Unit].into());

        assert_eq!(odot(&at(A), &at(B), 8).unwrap(), expected);
        let prod = odot(&seq, &at(C), 8).unwrap();
        assert!(prod.contains(&SpPomset::seq(&at(A), &SpPomset::par(&at(B), &at(C)))));
        assert!(!prod.contains(&SpPomset::par(&SpPomset::seq(&at(B), &at(A)), &at(C))));
        assert_eq!(odot(&ab, &SpPomset::Unit, 8).unwrap(), [ab].into());
    }

    #[test]
    fn caps_are_enforced() {
        let big = SpPomset::par_all(&vec![at(A); 9]);
        assert!(matches!(sp_ideals_of(&big, 8), Err(Error::CapExceeded { .. })));
    }
}
