//! Spherical codes with integer coordinates, and binary codes of length ≤ 64.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{self, BitWord};
use crate::mono::{CoordPerm, Group};

pub type Cosine = Ratio<i64>;

/// A set of integer vectors sharing one squared norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalCode {
    dim: usize,
    vectors: Vec<Vec<i64>>,
    norm_sq: i64,
}

pub fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl SphericalCode {
    pub fn new(vectors: Vec<Vec<i64>>) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::InvalidCode("no vectors".into()))?;
        let dim = first.len();
        let norm_sq = dot(first, first);
        if norm_sq == 0 {
            return Err(Error::InvalidCode("zero vector".into()));
        }
        let mut seen = HashSet::with_capacity(vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            if dot(v, v) != norm_sq {
                return Err(Error::InvalidCode(format!("vector {i} has a different norm")));
            }
            if !seen.insert(v.as_slice()) {
                return Err(Error::InvalidCode(format!("vector {i} is repeated")));
            }
        }
        Ok(SphericalCode { dim, vectors, norm_sq })
    }

    /// The ±1 vectors `x₀ − 2v_B` for the given sign sets.
    pub fn from_sign_sets(n: usize, sets: impl IntoIterator<Item = BitWord>) -> Result<Self> {
        Self::new(sets.into_iter().map(|b| sign_vector(b, n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn norm_sq(&self) -> i64 {
        self.norm_sq
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.vectors.iter().any(|w| w == v)
    }

    pub fn vector_set(&self) -> BTreeSet<Vec<i64>> {
        self.vectors.iter().cloned().collect()
    }

    /// Inner products of distinct pairs.
    pub fn inner_products(&self) -> BTreeSet<i64> {
        (0..self.len())
            .into_par_iter()
            .map(|i| {
                let x = &self.vectors[i];
                self.vectors[i + 1..].iter().map(|y| dot(x, y)).collect::<BTreeSet<_>>()
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    }

    /// Number of ordered pairs of distinct vectors at each inner product.
    pub fn gram_distribution(&self) -> BTreeMap<i64, usize> {
        let mut hist = BTreeMap::new();
        for (i, x) in self.vectors.iter().enumerate() {
            for (j, y) in self.vectors.iter().enumerate() {
                if i != j {
                    *hist.entry(dot(x, y)).or_insert(0) += 1;
                }
            }
        }
        hist
    }

    /// Sorted multiset of per-vector inner-product profiles.
    pub fn gram_profiles(&self) -> Vec<Vec<i64>> {
        let mut profiles: Vec<Vec<i64>> = self
            .vectors
            .iter()
            .map(|x| {
                let mut p: Vec<i64> = self.vectors.iter().map(|y| dot(x, y)).collect();
                p.sort_unstable();
                p
            })
            .collect();
        profiles.sort();
        profiles
    }
}

pub fn sign_vector(b: BitWord, n: usize) -> Vec<i64> {
    (0..n).map(|i| if gf2::bit(b, i) { -1 } else { 1 }).collect()
}

/// Cosines of distinct pairs as reduced fractions.
pub fn cosine_set(c: &SphericalCode) -> BTreeSet<Cosine> {
    c.inner_products()
        .into_iter()
        .map(|ip| Ratio::new(ip, c.norm_sq))
        .collect()
}

/// Drops the given coordinates; every vector must agree on each of them.
pub fn reduce(c: &SphericalCode, drop: &[usize]) -> Result<SphericalCode> {
    for &k in drop {
        if k >= c.dim {
            return Err(Error::OutOfRange(format!("coordinate {k} of {}", c.dim)));
        }
        let v0 = c.vectors[0][k];
        if let Some(w) = c.vectors.iter().position(|v| v[k] != v0) {
            return Err(Error::ReductionMismatch { coord: k, witness: w });
        }
    }
    let keep: Vec<usize> = (0..c.dim).filter(|i| !drop.contains(i)).collect();
    SphericalCode::new(
        c.vectors
            .iter()
            .map(|v| keep.iter().map(|&i| v[i]).collect())
            .collect(),
    )
}

/// Cosines after dropping `l` agreeing coordinates from an orbit code with
/// inner products `{0, ±2^{d−k}}` of ±1 vectors.
pub fn reduced_cosines(d: usize, k: u32, l: usize) -> [Cosine; 3] {
    let n = 1i64 << d;
    let s = 1i64 << (d as u32 - k);
    let l = l as i64;
    [
        Ratio::new(-s - l, n - l),
        Ratio::new(-l, n - l),
        Ratio::new(s - l, n - l),
    ]
}

pub fn format_cosine(c: &Cosine) -> String {
    if *c.denom() == 1 {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_cosine(s: &str) -> Result<Cosine> {
    let bad = || Error::InvalidCode(format!("bad fraction {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(p.trim().parse().map_err(|_| bad())?, q))
        }
        None => Ok(Ratio::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn format_cosine_set(set: &BTreeSet<Cosine>) -> String {
    let parts: Vec<String> = set.iter().map(format_cosine).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Inner products within and across the parts of a partition of a code.
#[derive(Clone, Debug, Default)]
pub struct IpInvariants {
    pub within: BTreeSet<i64>,
    pub across: BTreeSet<i64>,
}

pub fn orbit_ip_invariants(c: &SphericalCode, parts: &[Vec<usize>]) -> Result<IpInvariants> {
    let mut part_of = vec![usize::MAX; c.len()];
    for (p, members) in parts.iter().enumerate() {
        for &i in members {
            if i >= c.len() || part_of[i] != usize::MAX {
                return Err(Error::InvalidCode("parts do not partition the code".into()));
            }
            part_of[i] = p;
        }
    }
    if part_of.contains(&usize::MAX) {
        return Err(Error::InvalidCode("parts do not cover the code".into()));
    }
    let mut inv = IpInvariants::default();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let ip = dot(&c.vectors[i], &c.vectors[j]);
            if part_of[i] == part_of[j] {
                inv.within.insert(ip);
            } else {
                inv.across.insert(ip);
            }
        }
    }
    Ok(inv)
}

/// Two pairs in the same relation with different two-step counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeViolation {
    pub relations: (usize, usize, usize),
    pub first: ((usize, usize), usize),
    pub second: ((usize, usize), usize),
}

#[derive(Clone, Debug)]
pub struct SchemeReport {
    /// Inner product defining each relation; relation 0 is the identity.
    pub relations: Vec<i64>,
    /// `intersection[a][b][c] = p^c_{ab}` when the partition is a scheme.
    pub intersection: Option<Vec<Vec<Vec<usize>>>>,
    pub violation: Option<SchemeViolation>,
}

impl SchemeReport {
    pub fn is_scheme(&self) -> bool {
        self.intersection.is_some()
    }

    /// Valencies `p^0_{aa}`.
    pub fn valencies(&self) -> Option<Vec<usize>> {
        self.intersection
            .as_ref()
            .map(|p| (0..self.relations.len()).map(|a| p[a][a][0]).collect())
    }
}

/// Checks whether the partition of pairs by inner product is an association scheme.
pub fn association_scheme_check(c: &SphericalCode) -> SchemeReport {
    let n = c.len();
    let mut relations = vec![c.norm_sq];
    relations.extend(c.inner_products().into_iter().filter(|&ip| ip != c.norm_sq));
    let r = relations.len();
    let index: BTreeMap<i64, usize> = relations.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rel: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 0 } else { index[&dot(&c.vectors[i], &c.vectors[j])] })
                .collect()
        })
        .collect();

    let mut table: Vec<Vec<Vec<Option<(usize, (usize, usize))>>>> = vec![vec![vec![None; r]; r]; r];
    let mut counts = vec![0usize; r * r];
    for x in 0..n {
        for y in 0..n {
            counts.iter_mut().for_each(|v| *v = 0);
            for z in 0..n {
                counts[rel[x][z] * r + rel[z][y]] += 1;
            }
            let cr = rel[x][y];
            for a in 0..r {
                for b in 0..r {
                    let cnt = counts[a * r + b];
                    match table[a][b][cr] {
                        None => table[a][b][cr] = Some((cnt, (x, y))),
                        Some((prev, pair)) if prev != cnt => {
                            return SchemeReport {
                                relations,
                                intersection: None,
                                violation: Some(SchemeViolation {
                                    relations: (a, b, cr),
                                    first: (pair, prev),
                                    second: ((x, y), cnt),
                                }),
                            };
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    let p = table
        .into_iter()
        .map(|tb| {
            tb.into_iter()
                .map(|tc| tc.into_iter().map(|e| e.map_or(0, |(cnt, _)| cnt)).collect())
                .collect()
        })
        .collect();
    SchemeReport { relations, intersection: Some(p), violation: None }
}

/// A binary code of length ≤ 64, words stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    words: BTreeSet<BitWord>,
}

impl BinaryCode {
    pub fn new(length: usize, words: impl IntoIterator<Item = BitWord>) -> Result<Self> {
        if length == 0 || length > 64 {
            return Err(Error::OutOfRange(format!("binary code length {length}")));
        }
        let words: BTreeSet<BitWord> = words.into_iter().collect();
        if let Some(w) = words.iter().find(|&&w| w & !gf2::low_mask(length) != 0) {
            return Err(Error::InvalidCode(format!("word {w:#x} is longer than {length}")));
        }
        Ok(BinaryCode { length, words })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &BTreeSet<BitWord> {
        &self.words
    }

    pub fn contains(&self, w: BitWord) -> bool {
        self.words.contains(&w)
    }

    pub fn weight_set(&self) -> BTreeSet<u32> {
        self.words.iter().map(|&w| gf2::weight(w)).collect()
    }

    pub fn translate(&self, s: BitWord) -> BinaryCode {
        BinaryCode { length: self.length, words: self.words.iter().map(|&w| w ^ s).collect() }
    }

    pub fn permute(&self, p: &CoordPerm) -> BinaryCode {
        BinaryCode {
            length: self.length,
            words: self.words.iter().map(|&w| p.image_of_set(w)).collect(),
        }
    }

    /// One lowercase hexadecimal word per line, sorted.
    pub fn hex_lines(&self) -> String {
        let width = self.length.div_ceil(4);
        self.words
            .iter()
            .map(|w| format!("{w:0width$x}\n"))
            .collect()
    }
}

/// Sign rule: coordinate `+1 ↦ 0`, `−1 ↦ 1`.
pub fn to_binary(c: &SphericalCode) -> Result<BinaryCode> {
    let words = c
        .vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.iter().enumerate().try_fold(0u64, |w, (k, &x)| match x {
                1 => Ok(w),
                -1 => Ok(w | 1 << k),
                value => Err(Error::NotSignVector { vector: i, value }),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    BinaryCode::new(c.dim, words)
}

pub fn min_distance(b: &BinaryCode) -> Option<u32> {
    let words: Vec<BitWord> = b.words.iter().copied().collect();
    let words = &words;
    (0..words.len())
        .flat_map(|i| words[i + 1..].iter().map(move |&w| gf2::weight(words[i] ^ w)))
        .min()
}

/// Distances from `from` to every word of the code (including itself).
pub fn distance_distribution_from(b: &BinaryCode, from: BitWord) -> BTreeMap<u32, usize> {
    let mut hist = BTreeMap::new();
    for &w in &b.words {
        *hist.entry(gf2::weight(from ^ w)).or_insert(0) += 1;
    }
    hist
}

/// The common distance distribution, or `None` if it depends on the base word.
pub fn distance_distribution(b: &BinaryCode) -> Option<BTreeMap<u32, usize>> {
    let mut it = b.words.iter();
    let first = distance_distribution_from(b, *it.next()?);
    it.all(|&w| distance_distribution_from(b, w) == first)
        .then_some(first)
}

/// Two words whose sum lies outside the code, if any.
pub fn nonlinearity_witness(b: &BinaryCode) -> Option<(BitWord, BitWord)> {
    b.words
        .iter()
        .flat_map(|&u| b.words.iter().map(move |&w| (u, w)))
        .find(|&(u, w)| !b.contains(u ^ w))
}

/// Nonempty coordinate sets `U` with `Σ_w (−1)^{|w ∩ U|} ≠ 0`. A permutation
/// preserving the code preserves this family, and projections onto a set are
/// uniform unless it contains a member. Empty for lengths above 20.
fn character_support(words: &[BitWord], n: usize) -> Vec<BitWord> {
    if n > 20 {
        return Vec::new();
    }
    (1..1u64 << n)
        .into_par_iter()
        .filter(|&u| words.iter().map(|&w| 1 - 2 * (gf2::weight(w & u) as i64 & 1)).sum::<i64>() != 0)
        .collect()
}

/// Assignment order: complete the member of the character support closest to
/// the assigned set, then the rest by invariant class size.
fn search_order(words: &[BitWord], n: usize, class_key: impl Fn(usize) -> (usize, usize)) -> Vec<usize> {
    let support = character_support(words, n);
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    loop {
        let next = support
            .iter()
            .filter(|&&u| u & !placed != 0)
            .min_by_key(|&&u| (gf2::weight(u & !placed), u));
        let Some(&u) = next else { break };
        let mut missing: Vec<usize> = gf2::ones(u & !placed).collect();
        missing.sort_by_key(|&i| (class_key(i), i));
        for i in missing {
            order.push(i);
            placed |= 1 << i;
        }
    }
    let mut rest: Vec<usize> = (0..n).filter(|&i| placed >> i & 1 == 0).collect();
    rest.sort_by_key(|&i| (class_key(i), i));
    order.extend(rest);
    order
}

/// Per coordinate: incidence with minimum-weight words and number of ones.
fn column_invariants(words: &[BitWord], n: usize) -> Vec<(usize, usize)> {
    let minw = words.iter().map(|&w| gf2::weight(w)).filter(|&w| w > 0).min().unwrap_or(0);
    (0..n)
        .map(|i| {
            let inc = words.iter().filter(|&&w| gf2::weight(w) == minw && gf2::bit(w, i)).count();
            let ones = words.iter().filter(|&&w| gf2::bit(w, i)).count();
            (inc, ones)
        })
        .collect()
}

/// Backtracking search for coordinate permutations carrying one code onto
/// another. Coordinates of the source are assigned in a fixed order; a
/// partial assignment survives only if the multisets of projections onto the
/// assigned coordinates agree.
struct Matcher {
    n: usize,
    a: Vec<BitWord>,
    b: Vec<BitWord>,
    inv_a: Vec<(usize, usize)>,
    inv_b: Vec<(usize, usize)>,
    order: Vec<usize>,
}

struct State {
    img: Vec<usize>,
    used: u64,
    ka: Vec<u64>,
    kb: Vec<u64>,
    sa: Vec<u64>,
    sb: Vec<u64>,
}

impl Matcher {
    fn new(from: &BinaryCode, to: &BinaryCode) -> Option<Self> {
        let n = from.length;
        if to.length != n || to.len() != from.len() || from.weight_set() != to.weight_set() {
            return None;
        }
        let a: Vec<BitWord> = from.words.iter().copied().collect();
        let b: Vec<BitWord> = to.words.iter().copied().collect();
        let inv_a = column_invariants(&a, n);
        let inv_b = column_invariants(&b, n);
        let mut class_size: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for v in &inv_a {
            *class_size.entry(*v).or_default() += 1;
        }
        let order = search_order(&a, n, |i| (class_size[&inv_a[i]], inv_a[i].0));
        Some(Matcher { n, a, b, inv_a, inv_b, order })
    }

    fn state(&self) -> State {
        let m = self.a.len();
        State {
            img: vec![usize::MAX; self.n],
            used: 0,
            ka: vec![0; m],
            kb: vec![0; m],
            sa: vec![0; m],
            sb: vec![0; m],
        }
    }

    fn assign(&self, st: &mut State, depth: usize, target: usize) -> bool {
        let src = self.order[depth];
        if st.used >> target & 1 == 1 || self.inv_a[src] != self.inv_b[target] {
            return false;
        }
        for (k, &w) in st.ka.iter_mut().zip(&self.a) {
            *k = *k << 1 | (w >> src & 1);
        }
        for (k, &w) in st.kb.iter_mut().zip(&self.b) {
            *k = *k << 1 | (w >> target & 1);
        }
        st.sa.copy_from_slice(&st.ka);
        st.sb.copy_from_slice(&st.kb);
        st.sa.sort_unstable();
        st.sb.sort_unstable();
        if st.sa != st.sb {
            self.shift_back(st);
            return false;
        }
        st.img[src] = target;
        st.used |= 1 << target;
        true
    }

    fn shift_back(&self, st: &mut State) {
        for k in st.ka.iter_mut().chain(st.kb.iter_mut()) {
            *k >>= 1;
        }
    }

    fn unassign(&self, st: &mut State, depth: usize) {
        let src = self.order[depth];
        st.used &= !(1 << st.img[src]);
        st.img[src] = usize::MAX;
        self.shift_back(st);
    }

    fn dfs(&self, st: &mut State, depth: usize, first_only: bool, budget: &Budget, out: &mut Vec<CoordPerm>) -> Result<bool> {
        if depth == self.n {
            out.push(CoordPerm::from_images(&st.img)?);
            return Ok(first_only);
        }
        for t in 0..self.n {
            budget.tick()?;
            if self.assign(st, depth, t) {
                let stop = self.dfs(st, depth + 1, first_only, budget, out)?;
                self.unassign(st, depth);
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Permutations whose images of the first `prefix.len()` coordinates in
    /// the search order are `prefix`.
    fn search(&self, prefix: &[usize], first_only: bool, budget: &Budget) -> Result<Vec<CoordPerm>> {
        let mut st = self.state();
        for (depth, &t) in prefix.iter().enumerate() {
            budget.tick()?;
            if !self.assign(&mut st, depth, t) {
                return Ok(Vec::new());
            }
        }
        let mut out = Vec::new();
        self.dfs(&mut st, prefix.len(), first_only, budget, &mut out)?;
        Ok(out)
    }
}

struct Budget {
    cap: u64,
    nodes: AtomicU64,
}

impl Budget {
    fn new(cap: u64) -> Self {
        Budget { cap, nodes: AtomicU64::new(0) }
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(Error::CapExceeded { what: "automorphism search nodes", cap: self.cap as usize });
        }
        Ok(())
    }
}

/// All coordinate permutations taking `from` onto `to`, sorted by images.
/// With `first_only` at most one is returned.
pub fn binary_isomorphisms(
    from: &BinaryCode,
    to: &BinaryCode,
    budget: u64,
    first_only: bool,
) -> Result<Vec<CoordPerm>> {
    let Some(m) = Matcher::new(from, to) else {
        return Ok(Vec::new());
    };
    let budget = Budget::new(budget);
    let found = if first_only {
        let mut found = Vec::new();
        for t in 0..m.n {
            found = m.search(&[t], true, &budget)?;
            if !found.is_empty() {
                break;
            }
        }
        found
    } else {
        let per_first = (0..m.n)
            .into_par_iter()
            .map(|t| m.search(&[t], false, &budget))
            .collect::<Result<Vec<_>>>()?;
        let mut found: Vec<CoordPerm> = per_first.into_iter().flatten().collect();
        found.sort_by_key(|p| p.images());
        found
    };
    if found.iter().any(|p| from.permute(p) != *to) {
        return Err(Error::Verification("backtrack leaf is not an isomorphism".into()));
    }
    Ok(found)
}

/// Coordinate-permutation automorphism group of a binary code.
#[derive(Clone, Debug)]
pub struct AutomorphismReport {
    pub gens: Vec<CoordPerm>,
    pub order: usize,
    pub group: Group<CoordPerm>,
}

/// Walks the chain of pointwise stabilizers of the search order: at each
/// level one automorphism is found per point of the base point's orbit, and
/// the group order is the product of the orbit lengths.
pub fn binary_automorphism_group(b: &BinaryCode, budget: u64) -> Result<AutomorphismReport> {
    let m = Matcher::new(b, b).expect("a code matches itself");
    let budget = Budget::new(budget);
    let mut gens: Vec<CoordPerm> = Vec::new();
    let mut order = 1usize;
    for level in 0..m.n {
        let fixed = &m.order[..level];
        let base = m.order[level];
        let reps = (0..m.n)
            .into_par_iter()
            .filter(|t| !fixed.contains(t))
            .map(|t| {
                let mut prefix = fixed.to_vec();
                prefix.push(t);
                Ok((t, m.search(&prefix, true, &budget)?.pop()))
            })
            .collect::<Result<Vec<_>>>()?;
        let orbit: Vec<(usize, CoordPerm)> = reps.into_iter().filter_map(|(t, p)| p.map(|p| (t, p))).collect();
        order *= orbit.len();
        gens.extend(orbit.into_iter().filter(|&(t, _)| t != base).map(|(_, p)| p));
    }
    if !gens.iter().all(|g| b.permute(g) == *b) {
        return Err(Error::Verification("generator does not preserve the code".into()));
    }
    let group = Group::closure_from(CoordPerm::identity(b.length), &gens, order)?;
    if group.order() != order {
        return Err(Error::Verification("stabilizer chain and closure disagree".into()));
    }
    let small = group.with_small_generating_set();
    Ok(AutomorphismReport { gens: small.gens().to_vec(), order, group: small })
}

/// Number of signed coordinate permutations `ε_S p` preserving the ±1 code
/// of `b`. Such a map sends the sign set `B` to `p[B Δ S]`, so `S` must be a
/// codeword and `p` an isomorphism from `b + S` onto `b`; those isomorphisms
/// form a coset of the automorphism group when they exist.
pub fn signed_automorphism_count(b: &BinaryCode, budget: u64) -> Result<u64> {
    let aut = binary_automorphism_group(b, budget)?.order as u64;
    let words: Vec<BitWord> = b.words.iter().copied().collect();
    let hits = words
        .par_iter()
        .map(|&s| Ok(!binary_isomorphisms(&b.translate(s), b, budget, true)?.is_empty()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(hits.into_iter().filter(|&h| h).count() as u64 * aut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Cosine {
        Ratio::new(p, q)
    }

    #[test]
    fn orthonormal_pair() {
        let c = SphericalCode::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(cosine_set(&c), BTreeSet::from([r(0, 1)]));
    }

    #[test]
    fn invalid_codes() {
        assert!(SphericalCode::new(vec![]).is_err());
        assert!(SphericalCode::new(vec![vec![1, 0], vec![1, 1]]).is_err());
        assert!(SphericalCode::new(vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(SphericalCode::new(vec![vec![1, 0], vec![1]]).is_err());
    }

    #[test]
    fn reduction_of_rm1_orbit() {
        // RM(1,3) avoiding ω₀: the 8 vectors agree on coordinate 0.
        let rm1 = crate::rm::build_rm(1, 3).unwrap();
        let words = rm1.anchor().elements();
        let c = SphericalCode::from_sign_sets(8, words).unwrap();
        assert_eq!(cosine_set(&c), BTreeSet::from([r(0, 1)]));
        let red = reduce(&c, &[0]).unwrap();
        assert_eq!(red.dim(), 7);
        assert_eq!(red.norm_sq(), 7);
        assert_eq!(cosine_set(&red), BTreeSet::from([r(-1, 7)]));
        assert!(matches!(reduce(&c, &[1]), Err(Error::ReductionMismatch { coord: 1, .. })));
    }

    #[test]
    fn reduced_cosine_formula() {
        assert_eq!(reduced_cosines(4, 2, 2), [r(-3, 7), r(-1, 7), r(1, 7)]);
        assert_eq!(reduced_cosines(4, 2, 1), [r(-1, 3), r(-1, 15), r(1, 5)]);
        assert_eq!(reduced_cosines(5, 1, 1), [r(-17, 31), r(-1, 31), r(15, 31)]);
        assert_eq!(reduced_cosines(5, 2, 1), [r(-9, 31), r(-1, 31), r(7, 31)]);
    }

    #[test]
    fn cosine_strings() {
        for s in ["-1/4", "0", "1/4", "-1", "-17/31"] {
            assert_eq!(format_cosine(&parse_cosine(s).unwrap()), s);
        }
        assert!(parse_cosine("1/0").is_err());
        assert!(parse_cosine("x").is_err());
    }

    #[test]
    fn simplex_is_a_scheme() {
        let c = SphericalCode::new(vec![vec![1, 1, 1], vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]])
            .unwrap();
        let rep = association_scheme_check(&c);
        assert!(rep.is_scheme());
        assert_eq!(rep.relations, vec![3, -1]);
        assert_eq!(rep.valencies().unwrap(), vec![1, 3]);
    }

    #[test]
    fn broken_regularity_is_reported() {
        let c = SphericalCode::new(vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, 0, 0],
            vec![0, -1, 0],
        ])
        .unwrap();
        let rep = association_scheme_check(&c);
        assert!(!rep.is_scheme());
        assert!(rep.violation.is_some());
    }

    #[test]
    fn binary_basics() {
        let c = SphericalCode::new(vec![vec![1; 4], vec![-1; 4], vec![1, 1, -1, -1]]).unwrap();
        let b = to_binary(&c).unwrap();
        assert_eq!(b.words(), &BTreeSet::from([0, 0b1100, 0b1111]));
        assert_eq!(min_distance(&b), Some(2));
        assert_eq!(nonlinearity_witness(&b), Some((0b1100, 0b1111)));
        assert_eq!(b.hex_lines(), "0\nc\nf\n");
        let bad = SphericalCode::new(vec![vec![2, 0]]).unwrap();
        assert!(to_binary(&bad).is_err());
    }

    #[test]
    fn linear_code_facts() {
        let rm1 = crate::rm::build_rm(1, 4).unwrap();
        let b = BinaryCode::new(16, rm1.codewords()).unwrap();
        assert_eq!(min_distance(&b), Some(8));
        assert_eq!(nonlinearity_witness(&b), None);
        assert_eq!(
            distance_distribution(&b).unwrap(),
            BTreeMap::from([(0, 1), (8, 30), (16, 1)])
        );
    }

    #[test]
    fn symmetric_code_has_full_group() {
        let words = std::iter::once(0).chain((0..6).map(|i| 1u64 << i));
        let b = BinaryCode::new(6, words).unwrap();
        let rep = binary_automorphism_group(&b, 1_000_000).unwrap();
        assert_eq!(rep.order, 720);
        assert!(rep.group.is_closed());
    }

    #[test]
    fn automorphisms_of_rm1_are_agl() {
        let rm1 = crate::rm::build_rm(1, 3).unwrap();
        let b = BinaryCode::new(8, rm1.codewords()).unwrap();
        let rep = binary_automorphism_group(&b, 1_000_000).unwrap();
        assert_eq!(rep.order, 1344);
        for g in crate::mono::agl_generators(3).unwrap() {
            assert!(rep.group.contains(&g));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let words = std::iter::once(0).chain((0..6).map(|i| 1u64 << i));
        let b = BinaryCode::new(6, words).unwrap();
        assert!(matches!(
            binary_automorphism_group(&b, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn sign_flip_is_xor(sets in proptest::collection::btree_set(0u64..256, 2..12), s in 0u64..256) {
            let c = SphericalCode::from_sign_sets(8, sets.iter().copied()).unwrap();
            let flipped = SphericalCode::new(
                c.vectors().iter().map(|v| v.iter().enumerate().map(|(i, &x)| if gf2::bit(s, i) { -x } else { x }).collect()).collect()
            ).unwrap();
            prop_assert_eq!(to_binary(&flipped).unwrap(), to_binary(&c).unwrap().translate(s));
        }

        #[test]
        fn permuted_code_is_isomorphic(sets in proptest::collection::btree_set(0u64..64, 2..10), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut images: Vec<usize> = (0..6).collect();
            images.shuffle(&mut rng);
            let p = CoordPerm::from_images(&images).unwrap();
            let b = BinaryCode::new(6, sets.iter().copied()).unwrap();
            let isos = binary_isomorphisms(&b, &b.permute(&p), 1_000_000, false).unwrap();
            prop_assert!(isos.contains(&p));
            for q in isos {
                prop_assert_eq!(b.permute(&q), b.permute(&p));
            }
        }
    }
}
