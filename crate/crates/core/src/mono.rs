//! Signed coordinate permutations on `2^d` coordinates.
//!
//! Everything acts on the right. A [`MonoElt`] `(A, p)` sends the basis
//! vector `v_i` to `(-1)^{[i ∈ A]} v_{p(i)}`: signs first, then the
//! permutation. Composition is "left operand first":
//!
//! ```text
//! (A,p)·(B,q) = (A Δ p⁻¹[B], q∘p)
//! ```
//!
//! so that `x·(gh) = (x·g)·h` for row vectors `x`.

use std::collections::HashSet;
use std::fmt;
use std::hash::{BuildHasherDefault, Hash};

use indexmap::IndexSet;
use rustc_hash::FxHasher;

use crate::error::{Error, Result};
use crate::gf2::{self, BitWord, Gf2Matrix, Gf2Subspace};
use crate::rm;

pub const MAX_POINTS: usize = 64;

type FxIndexSet<T> = IndexSet<T, BuildHasherDefault<FxHasher>>;

/// A finite group element with right-action composition.
pub trait GroupElement: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    /// `self` followed by `rhs`.
    fn op(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Self;
    fn identity_like(&self) -> Self;

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// `rhs⁻¹ · self · rhs`.
    fn conj(&self, rhs: &Self) -> Self {
        rhs.inv().op(self).op(rhs)
    }

    /// Order, or `None` if it exceeds `cap`.
    fn order(&self, cap: usize) -> Option<usize> {
        let mut x = self.clone();
        for n in 1..=cap {
            if x.is_identity() {
                return Some(n);
            }
            x = x.op(self);
        }
        None
    }
}

/// A permutation of `{0, …, n-1}`, `n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordPerm {
    n: u8,
    img: [u8; MAX_POINTS],
}

impl fmt::Debug for CoordPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordPerm{:?}", self.images())
    }
}

impl CoordPerm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        let mut img = [0u8; MAX_POINTS];
        for (i, v) in img.iter_mut().enumerate() {
            *v = i as u8;
        }
        CoordPerm { n: n as u8, img }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_POINTS {
            return Err(Error::OutOfRange(format!("{n} points exceeds 64")));
        }
        let mut seen = 0u64;
        let mut p = CoordPerm::identity(n);
        for (i, &j) in images.iter().enumerate() {
            if j >= n || gf2::bit(seen, j) {
                return Err(Error::OutOfRange(format!("not a permutation: {images:?}")));
            }
            seen |= 1 << j;
            p.img[i] = j as u8;
        }
        Ok(p)
    }

    /// The affine map `x ↦ x·L + shift` of Ω = F₂^d, where `rows[i]` is the
    /// image of the basis point `2^i` under the linear part `L`.
    pub fn affine(d: usize, rows: &[u64], shift: u64) -> Result<Self> {
        if rows.len() != d || d > rm::MAX_D {
            return Err(Error::DimensionMismatch { expected: d, got: rows.len() });
        }
        let images: Vec<usize> = (0..1u64 << d)
            .map(|x| (gf2::ones(x).fold(0, |acc, i| acc ^ rows[i]) ^ shift) as usize)
            .collect();
        CoordPerm::from_images(&images)
    }

    pub fn linear(d: usize, rows: &[u64]) -> Result<Self> {
        Self::affine(d, rows, 0)
    }

    pub fn translation(d: usize, by: u64) -> Self {
        let rows: Vec<u64> = (0..d).map(|i| 1 << i).collect();
        Self::affine(d, &rows, by).expect("translation is a bijection")
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.apply(i)).collect()
    }

    /// `p[A] = {p(i) : i ∈ A}`.
    #[inline]
    pub fn image_of_set(&self, a: BitWord) -> BitWord {
        let mut out = 0;
        for i in gf2::ones(a) {
            out |= 1 << self.img[i];
        }
        out
    }

    /// `p⁻¹[B] = {i : p(i) ∈ B}`.
    #[inline]
    pub fn preimage_of_set(&self, b: BitWord) -> BitWord {
        let mut out = 0;
        for i in 0..self.len() {
            if gf2::bit(b, self.img[i] as usize) {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.apply(i) == i).collect()
    }

    /// Cycle lengths, sorted.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.len() {
            if gf2::bit(seen, s) {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !gf2::bit(seen, i) {
                seen |= 1 << i;
                i = self.apply(i);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// Splits an affine permutation of Ω = F₂^d into (linear rows, shift).
    pub fn affine_parts(&self, d: usize) -> Option<(Vec<u64>, u64)> {
        if self.len() != 1 << d {
            return None;
        }
        let shift = self.apply(0) as u64;
        let rows: Vec<u64> = (0..d).map(|i| self.apply(1 << i) as u64 ^ shift).collect();
        let rebuilt = CoordPerm::affine(d, &rows, shift).ok()?;
        (rebuilt == *self).then_some((rows, shift))
    }

    pub fn linear_part(&self, d: usize) -> Option<CoordPerm> {
        let (rows, _) = self.affine_parts(d)?;
        CoordPerm::linear(d, &rows).ok()
    }
}

impl GroupElement for CoordPerm {
    #[inline]
    fn op(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = *self;
        for i in 0..self.len() {
            out.img[i] = rhs.img[self.img[i] as usize];
        }
        out
    }

    fn inv(&self) -> Self {
        let mut out = *self;
        for i in 0..self.len() {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    fn identity_like(&self) -> Self {
        CoordPerm::identity(self.len())
    }
}

/// A signed coordinate permutation `ε_A · p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoElt {
    pub signs: BitWord,
    pub perm: CoordPerm,
}

impl fmt::Debug for MonoElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono(signs={:#x}, {:?})", self.signs, self.perm.images())
    }
}

impl MonoElt {
    pub fn new(signs: BitWord, perm: CoordPerm) -> Self {
        debug_assert!(signs & !gf2::low_mask(perm.len()) == 0);
        MonoElt { signs, perm }
    }

    pub fn sign(signs: BitWord, n: usize) -> Self {
        MonoElt::new(signs, CoordPerm::identity(n))
    }

    pub fn perm(p: CoordPerm) -> Self {
        MonoElt::new(0, p)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn compose(&self, rhs: &MonoElt) -> Result<MonoElt> {
        if self.len() != rhs.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: rhs.len() });
        }
        Ok(self.op(rhs))
    }

    /// Right action on an integer row vector.
    pub fn apply_vec(&self, x: &[i64]) -> Vec<i64> {
        let mut y = vec![0i64; x.len()];
        for (i, &xi) in x.iter().enumerate() {
            let s = if gf2::bit(self.signs, i) { -xi } else { xi };
            y[self.perm.apply(i)] = s;
        }
        y
    }

    /// Action on sign sets of ±1 vectors: `(x₀ - 2v_B)·g = x₀ - 2v_{B·g}`.
    #[inline]
    pub fn apply_sign_set(&self, b: BitWord) -> BitWord {
        self.perm.image_of_set(b ^ self.signs)
    }

    /// The signed permutation matrix with row `i` equal to the image of `v_i`.
    pub fn dense_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[self.perm.apply(i)] = if gf2::bit(self.signs, i) { -1 } else { 1 };
        }
        m
    }
}

impl GroupElement for MonoElt {
    #[inline]
    fn op(&self, rhs: &Self) -> Self {
        MonoElt {
            signs: self.signs ^ self.perm.preimage_of_set(rhs.signs),
            perm: self.perm.op(&rhs.perm),
        }
    }

    fn inv(&self) -> Self {
        // (A,p)⁻¹ = (p[A], p⁻¹)
        MonoElt {
            signs: self.perm.image_of_set(self.signs),
            perm: self.perm.inv(),
        }
    }

    fn identity_like(&self) -> Self {
        MonoElt::sign(0, self.len())
    }
}

impl GroupElement for Gf2Matrix {
    fn op(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("square matrices of equal size")
    }

    fn inv(&self) -> Self {
        self.inverse().expect("group elements are invertible")
    }

    fn identity_like(&self) -> Self {
        Gf2Matrix::identity(self.nrows())
    }
}

/// A finite group materialized by breadth-first closure over its generators.
#[derive(Clone)]
pub struct Group<G: GroupElement> {
    gens: Vec<G>,
    elements: FxIndexSet<G>,
}

pub type MonoGroup = Group<MonoElt>;

impl<G: GroupElement> fmt::Debug for Group<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("gens", &self.gens.len())
            .field("order", &self.order())
            .finish()
    }
}

impl<G: GroupElement> Group<G> {
    /// Closure of `gens` containing `identity`; fails once more than `cap`
    /// elements have been produced.
    pub fn closure_from(identity: G, gens: &[G], cap: usize) -> Result<Self> {
        let mut elements = FxIndexSet::default();
        elements.insert(identity);
        let mut head = 0;
        while head < elements.len() {
            let x = elements.get_index(head).expect("in range").clone();
            head += 1;
            for s in gens {
                let y = x.op(s);
                if !elements.contains(&y) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { what: "group closure", cap });
                    }
                    elements.insert(y);
                }
            }
        }
        Ok(Group {
            gens: gens.to_vec(),
            elements,
        })
    }

    pub fn closure(gens: &[G], cap: usize) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::OutOfRange("closure needs at least one generator".into()))?;
        Self::closure_from(first.identity_like(), gens, cap)
    }

    pub fn gens(&self) -> &[G] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &G) -> bool {
        self.elements.contains(g)
    }

    pub fn index_of(&self, g: &G) -> Option<usize> {
        self.elements.get_index_of(g)
    }

    pub fn get(&self, i: usize) -> &G {
        self.elements.get_index(i).expect("element index in range")
    }

    pub fn iter(&self) -> impl Iterator<Item = &G> {
        self.elements.iter()
    }

    pub fn identity(&self) -> &G {
        self.get(0)
    }

    /// Checks closure under products with every element and under inverses.
    pub fn is_closed(&self) -> bool {
        self.iter().all(|x| {
            self.contains(&x.inv()) && self.gens.iter().all(|s| self.contains(&x.op(s)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<&G> = if self.gens.is_empty() {
            self.iter().collect()
        } else {
            self.gens.iter().collect()
        };
        gens.iter()
            .all(|a| gens.iter().all(|b| a.op(b) == b.op(a)))
    }

    pub fn exponent(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.iter()
            .map(|g| g.order(self.order()).expect("finite order"))
            .fold(1, |l, o| l / gcd(l, o) * o)
    }

    /// Conjugacy classes as lists of element indices.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let x = self.get(members[k]).clone();
                k += 1;
                for s in &self.gens {
                    let y = self.index_of(&x.conj(s)).expect("group is closed");
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
            }
            classes.push(members);
        }
        classes
    }

    /// The subgroup of elements satisfying `pred`, assumed closed.
    pub fn filter_subgroup(&self, pred: impl Fn(&G) -> bool) -> Result<Group<G>> {
        let elements: FxIndexSet<G> = self.iter().filter(|g| pred(g)).cloned().collect();
        let sub = Group {
            gens: elements.iter().cloned().collect(),
            elements,
        };
        if sub.elements.is_empty() {
            return Err(Error::Verification("empty subgroup".into()));
        }
        Ok(sub.with_small_generating_set())
    }

    /// Replaces the generator list by a greedy generating subset.
    pub fn with_small_generating_set(mut self) -> Self {
        let mut gens: Vec<G> = Vec::new();
        let id = self.identity().identity_like();
        let mut current: HashSet<G> = HashSet::from([id.clone()]);
        for g in self.elements.iter() {
            if current.contains(g) {
                continue;
            }
            gens.push(g.clone());
            current = Group::closure_from(id.clone(), &gens, usize::MAX)
                .expect("uncapped")
                .elements
                .into_iter()
                .collect();
            if current.len() == self.order() {
                break;
            }
        }
        self.gens = gens;
        self
    }

    /// Orbit of a point under a permutation action given by `act`.
    pub fn orbit_of<T: Clone + Eq + Hash>(&self, start: T, act: impl Fn(&T, &G) -> T) -> Vec<T> {
        orbit_generic(start, &self.gens, act, usize::MAX).expect("uncapped")
    }
}

/// Breadth-first orbit of `start` under `gens`.
pub fn orbit_generic<T: Clone + Eq + Hash, G>(
    start: T,
    gens: &[G],
    act: impl Fn(&T, &G) -> T,
    cap: usize,
) -> Result<Vec<T>> {
    let mut seen: FxIndexSet<T> = FxIndexSet::default();
    seen.insert(start);
    let mut head = 0;
    while head < seen.len() {
        let x = seen.get_index(head).expect("in range").clone();
        head += 1;
        for g in gens {
            let y = act(&x, g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded { what: "orbit", cap });
                }
                seen.insert(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Orbit of an integer vector under monomial generators, in BFS order.
pub fn orbit_vectors(start: &[i64], gens: &[MonoElt], cap: usize) -> Result<Vec<Vec<i64>>> {
    if let Some(g) = gens.iter().find(|g| g.len() != start.len()) {
        return Err(Error::DimensionMismatch { expected: start.len(), got: g.len() });
    }
    orbit_generic(start.to_vec(), gens, |x, g| g.apply_vec(x), cap)
}

/// Orbit of a ±1 vector given by its sign set.
pub fn orbit_sign_sets(start: BitWord, gens: &[MonoElt], cap: usize) -> Result<Vec<BitWord>> {
    orbit_generic(start, gens, |b, g| g.apply_sign_set(*b), cap)
}

/// Generators of AGL(d,2) on the `2^d` points of Ω: the adjacent elementary
/// transvections plus the translation by ω₁.
pub fn agl_generators(d: usize) -> Result<Vec<CoordPerm>> {
    let mut gens = gl_generators(d)?;
    gens.push(CoordPerm::translation(d, 1));
    Ok(gens)
}

/// Generators of GL(d,2) acting linearly on Ω: `e_i ↦ e_i + e_j` for `|i-j| = 1`.
pub fn gl_generators(d: usize) -> Result<Vec<CoordPerm>> {
    if d == 0 || d > rm::MAX_D {
        return Err(Error::OutOfRange(format!("d = {d} must be in 1..=6")));
    }
    Ok(transvection_pairs(0..d)
        .map(|(i, j)| transvection(d, i, j))
        .collect())
}

fn transvection_pairs(range: std::ops::Range<usize>) -> impl Iterator<Item = (usize, usize)> {
    let (lo, hi) = (range.start, range.end);
    (lo..hi.saturating_sub(1)).flat_map(|i| [(i, i + 1), (i + 1, i)])
}

/// The linear map sending `e_i ↦ e_i + e_j` and fixing the other basis points.
pub fn transvection(d: usize, i: usize, j: usize) -> CoordPerm {
    let mut rows: Vec<u64> = (0..d).map(|k| 1 << k).collect();
    rows[i] ^= 1 << j;
    CoordPerm::linear(d, &rows).expect("transvections are invertible")
}

/// Same transvections as matrices, for GL(n,2) acting on its natural module.
pub fn gl_matrix_generators(n: usize) -> Vec<Gf2Matrix> {
    transvection_pairs(0..n)
        .map(|(i, j)| {
            let mut rows: Vec<u64> = (0..n).map(|k| 1 << k).collect();
            rows[i] ^= 1 << j;
            Gf2Matrix::new(rows, n).expect("n <= 64")
        })
        .collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

/// Companion matrix rows of `x^m + Σ c_j x^j`, acting as multiplication by x.
fn companion_rows(m: usize, low: u64) -> Vec<u64> {
    (0..m)
        .map(|i| if i + 1 < m { 1 << (i + 1) } else { low })
        .collect()
}

/// The smallest primitive polynomial of degree `m`, returned as its low
/// coefficients (the leading `x^m` term is implicit).
pub fn primitive_polynomial(m: usize) -> Result<u64> {
    let target = (1usize << m) - 1;
    (0..1u64 << m)
        .filter(|c| c & 1 == 1)
        .find(|&c| {
            CoordPerm::linear(m, &companion_rows(m, c))
                .map(|p| p.order(target) == Some(target))
                .unwrap_or(false)
        })
        .ok_or_else(|| Error::NoCandidate(format!("primitive polynomial of degree {m}")))
}

/// An element of GL(d,2) of prime order `2^m - 1`: a primitive companion
/// block on the first `m` coordinates, identity on the rest. Fixes ω₀.
pub fn singer_like_element(m: usize, d: usize) -> Result<CoordPerm> {
    if m < 3 || m > d || d > rm::MAX_D {
        return Err(Error::OutOfRange(format!("need 3 <= m <= d <= 6, got m={m}, d={d}")));
    }
    if !is_prime((1 << m) - 1) {
        return Err(Error::NotMersenne(m));
    }
    let low = primitive_polynomial(m)?;
    let mut rows = companion_rows(m, low);
    rows.extend((m..d).map(|i| 1u64 << i));
    CoordPerm::linear(d, &rows)
}

/// The largest normal 2-subgroup: the union of conjugacy classes whose
/// normal closure is a 2-group.
pub fn o2_subgroup<G: GroupElement>(g: &Group<G>) -> Result<Group<G>> {
    const LIMIT: usize = 1_000_000;
    if g.order() > LIMIT {
        return Err(Error::CapExceeded { what: "O_2 computation", cap: LIMIT });
    }
    let two_part = 1usize << g.order().trailing_zeros();
    let id = g.identity().clone();
    let mut members: Vec<G> = Vec::new();
    for class in g.conjugacy_classes() {
        let rep = g.get(class[0]);
        let ord = rep.order(g.order()).expect("finite");
        if !ord.is_power_of_two() {
            continue;
        }
        let class_elts: Vec<G> = class.iter().map(|&i| g.get(i).clone()).collect();
        // Normal closure of the class, abandoned once it outgrows a Sylow 2-subgroup.
        let ok = match Group::closure_from(id.clone(), &class_elts, two_part) {
            Ok(n) => n.iter().all(|x| x.order(two_part).is_some_and(|o| o.is_power_of_two())),
            Err(_) => false,
        };
        if ok {
            members.extend(class_elts);
        }
    }
    if members.is_empty() {
        members.push(id.clone());
    }
    let sub = Group::closure_from(id, &members, g.order())?;
    Ok(sub.with_small_generating_set())
}

/// Coordinate index of ω₁ in the 16-point setting.
pub const OMEGA1: usize = 1;

/// The fixed subgroups and codeword spaces of the 16-point (d = 4) setting
/// around the two coordinates ω₀ = 0 and ω₁ = 1.
#[derive(Clone, Debug)]
pub struct SectionD4 {
    pub rm1: Gf2Subspace,
    pub rm2: Gf2Subspace,
    /// Linear hyperplane containing ω₀, not ω₁ (even indices).
    pub b0: BitWord,
    /// Its complement (odd indices).
    pub b1: BitWord,
    pub s0: Gf2Subspace,
    pub s1: Gf2Subspace,
    pub t0: Gf2Subspace,
    pub t1: Gf2Subspace,
    /// Sign changes at the RM(1,4) codewords avoiding ω₀ and ω₁.
    pub e01: Gf2Subspace,
    /// `B[01]`: the `p01`-symmetric even sets, the codeword space of `D01`.
    pub b01: Gf2Subspace,
    /// `J = F0 F1 D01`, the RM(2,4) codewords avoiding ω₀ and ω₁.
    pub j: Gf2Subspace,
    /// Generators of `Q ≅ GL(3,2)`: linear maps fixing ω₁ and stabilizing `B0`.
    pub q_gens: Vec<CoordPerm>,
    /// Extra generator making `P01 = U Q`, the linear maps fixing ω₁.
    pub u_gen: CoordPerm,
    /// Translation by ω₁.
    pub p01: CoordPerm,
}

fn affine_planes_in(points: BitWord) -> Vec<BitWord> {
    let pts: Vec<usize> = gf2::ones(points).collect();
    let mut out = Vec::new();
    for (ia, &a) in pts.iter().enumerate() {
        for (ib, &b) in pts.iter().enumerate().skip(ia + 1) {
            for &c in pts.iter().skip(ib + 1) {
                let e = a ^ b ^ c;
                if e > c && gf2::bit(points, e) {
                    out.push(rm::set_word(&[a, b, c, e]));
                }
            }
        }
    }
    out
}

/// Builds the named d = 4 sections and checks their basic properties.
pub fn section_builders_d4() -> Result<SectionD4> {
    let d = 4;
    let n = 16;
    let rm1 = rm::build_rm(1, d)?.space().clone();
    let rm2 = rm::build_rm(2, d)?.space().clone();
    let b0: BitWord = (0..n).filter(|i| i & OMEGA1 == 0).fold(0, |w, i| w | 1 << i);
    let b1 = !b0 & 0xffff;
    let s0 = Gf2Subspace::span(n, affine_planes_in(b0))?;
    let s1 = Gf2Subspace::span(n, affine_planes_in(b1))?;
    let t0 = s0.vanishing_on(1 << 0);
    let t1 = s1.vanishing_on(1 << OMEGA1);
    let avoid = 1u64 | 1 << OMEGA1;
    let e01 = rm1.vanishing_on(avoid);
    let p01 = CoordPerm::translation(d, OMEGA1 as u64);
    let rest0 = b0 & !1;
    let pts: Vec<usize> = gf2::ones(rest0).collect();
    let pair_sums = pts.windows(2).map(|w| rm::set_word(&[w[0], w[1]]));
    let b01 = Gf2Subspace::span(n, pair_sums.map(|a| a | p01.image_of_set(a)))?;
    let j = t0.sum(&t1).sum(&b01);

    // Q: e0 fixed, span(e1,e2,e3) preserved.
    let q_gens: Vec<CoordPerm> = transvection_pairs(1..d).map(|(i, k)| transvection(d, i, k)).collect();
    let u_gen = transvection(d, 1, 0);

    let sec = SectionD4 { rm1, rm2, b0, b1, s0, s1, t0, t1, e01, b01, j, q_gens, u_gen, p01 };
    sec.check()?;
    Ok(sec)
}

impl SectionD4 {
    fn check(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Verification(m.to_string()));
        if self.s0.dim() != 4 || self.s1.dim() != 4 || self.s0.intersection(&self.s1).dim() != 0 {
            return fail("S_i must be 4-dimensional and independent");
        }
        let s = self.s0.sum(&self.s1);
        if s.dim() != 8 || !s.is_subspace_of(&self.rm2) || !self.rm1.is_subspace_of(&s) {
            return fail("RM(2,4) >= S0+S1 >= RM(1,4) fails");
        }
        if self.t0.dim() != 3 || self.t1.dim() != 3 || self.e01.dim() != 3 || self.b01.dim() != 6 {
            return fail("T_i, E01, B[01] dimensions");
        }
        if *self.j.basis() != *self.rm2.vanishing_on(1 | 1 << OMEGA1).basis() || self.j.dim() != 9 {
            return fail("J must be the RM(2,4) codewords avoiding both base points");
        }
        if !self.e01.is_subspace_of(&self.b01) || self.t0.intersection(&self.b01).dim() != 0 {
            return fail("E01 <= B[01] and T0 ∩ B[01] = 0");
        }
        let q = Group::closure(&self.q_gens, 1000)?;
        if q.order() != 168 {
            return fail("|Q| must be 168");
        }
        for g in &self.q_gens {
            if g.image_of_set(self.b0) != self.b0 || g.apply(OMEGA1) != OMEGA1 {
                return fail("Q must fix ω1 and stabilize B0");
            }
            for space in [&self.t0, &self.t1, &self.b01, &self.e01] {
                if !space.basis().iter().all(|&v| space.contains(g.image_of_set(v))) {
                    return fail("Q must normalize T_i, B[01] and E01");
                }
            }
        }
        Ok(())
    }

    /// The diagonal group `{ε_A : A ∈ space}` as generators.
    pub fn sign_gens(space: &Gf2Subspace) -> Vec<MonoElt> {
        space.basis().iter().map(|&a| MonoElt::sign(a, 16)).collect()
    }

    pub fn p01_gens(&self) -> Vec<CoordPerm> {
        let mut g = self.q_gens.clone();
        g.push(self.u_gen);
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    fn random_mono(rng: &mut ChaCha8Rng) -> MonoElt {
        let mut imgs: Vec<usize> = (0..16).collect();
        for i in (1..16).rev() {
            imgs.swap(i, rng.gen_range(0..=i));
        }
        MonoElt::new(rng.gen::<u64>() & 0xffff, CoordPerm::from_images(&imgs).unwrap())
    }

    #[test]
    fn composition_matches_signed_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let g = random_mono(&mut rng);
            let h = random_mono(&mut rng);
            let gh = g.compose(&h).unwrap();
            assert_eq!(gh.dense_matrix(), dense_mul(&g.dense_matrix(), &h.dense_matrix()));
            let x: Vec<i64> = (0..16).map(|_| rng.gen_range(-3..4)).collect();
            assert_eq!(gh.apply_vec(&x), h.apply_vec(&g.apply_vec(&x)));
            assert!(g.op(&g.inv()).is_identity());
        }
    }

    #[test]
    fn sign_products_and_conjugation() {
        let a = MonoElt::sign(0b1011, 16);
        let b = MonoElt::sign(0b0110, 16);
        assert_eq!(a.op(&b), MonoElt::sign(0b1101, 16));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = MonoElt::perm(random_mono(&mut rng).perm);
            let set = rng.gen::<u64>() & 0xffff;
            let conj = MonoElt::sign(set, 16).conj(&p);
            assert_eq!(conj, MonoElt::sign(p.perm.image_of_set(set), 16));
        }
        let short = MonoElt::sign(0, 8);
        assert!(a.compose(&short).is_err());
    }

    #[test]
    fn agl_order_and_point_stabilizer() {
        let gens = agl_generators(4).unwrap();
        let agl = Group::closure(&gens, 400_000).unwrap();
        assert_eq!(agl.order(), 322_560);
        let stab = agl.iter().filter(|p| p.apply(0) == 0).count();
        assert_eq!(stab, 20_160);
        let orbit = agl.orbit_of(0usize, |&i, p| p.apply(i));
        assert_eq!(orbit.len() * stab, agl.order());
        let t = CoordPerm::translation(4, 1);
        assert_eq!(t.order(10), Some(2));
        assert!(t.fixed_points().is_empty());
        assert!(agl.iter().take(5000).all(|p| p.affine_parts(4).is_some()));
    }

    #[test]
    fn gl_orders_small() {
        assert_eq!(Group::closure(&gl_generators(3).unwrap(), 1000).unwrap().order(), 168);
        assert_eq!(Group::closure(&agl_generators(3).unwrap(), 10_000).unwrap().order(), 1344);
        assert_eq!(Group::closure(&gl_matrix_generators(3), 1000).unwrap().order(), 168);
    }

    #[test]
    fn singer_elements() {
        let g3 = singer_like_element(3, 3).unwrap();
        assert_eq!(g3.order(100), Some(7));
        assert_eq!(g3.fixed_points(), vec![0]);
        let g5 = singer_like_element(5, 5).unwrap();
        assert_eq!(g5.order(100), Some(31));
        assert_eq!(g5.fixed_points(), vec![0]);
        assert_eq!(g5.cycle_type(), vec![1, 31]);
        let g34 = singer_like_element(3, 4).unwrap();
        assert_eq!(g34.order(100), Some(7));
        assert!(matches!(singer_like_element(4, 4), Err(Error::NotMersenne(4))));
        assert!(singer_like_element(5, 4).is_err());
    }

    #[test]
    fn closure_of_rm1_signs() {
        let rm1 = rm::build_rm(1, 4).unwrap();
        let gens: Vec<MonoElt> = rm1.space().basis().iter().map(|&a| MonoElt::sign(a, 16)).collect();
        let g = Group::closure(&gens, 100).unwrap();
        assert_eq!(g.order(), 32);
        assert!(g.is_closed());
        let orbit = orbit_vectors(&[1; 16], &gens, 100).unwrap();
        assert_eq!(orbit.len(), 32);
        assert!(matches!(Group::closure(&gens, 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn closure_is_order_independent() {
        let mut gens = agl_generators(3).unwrap();
        let a: HashSet<_> = Group::closure(&gens, 2000).unwrap().iter().copied().collect();
        gens.reverse();
        let b: HashSet<_> = Group::closure(&gens, 2000).unwrap().iter().copied().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn o2_of_small_groups() {
        let rm1 = rm::build_rm(1, 3).unwrap();
        let gens: Vec<MonoElt> = rm1.space().basis().iter().map(|&a| MonoElt::sign(a, 8)).collect();
        let g = Group::closure(&gens, 100).unwrap();
        assert_eq!(o2_subgroup(&g).unwrap().order(), 16);
        // O_2(AGL(3,2)) is the translation subgroup.
        let agl3 = Group::closure(&agl_generators(3).unwrap(), 2000).unwrap();
        let o2 = o2_subgroup(&agl3).unwrap();
        assert_eq!(o2.order(), 8);
        assert!(o2.iter().all(|p| p.linear_part(3).unwrap().is_identity()));
        let gl3 = Group::closure(&gl_generators(3).unwrap(), 1000).unwrap();
        assert_eq!(o2_subgroup(&gl3).unwrap().order(), 1);
    }

    #[test]
    fn sections_build() {
        let s = section_builders_d4().unwrap();
        assert_eq!(s.e01.size(), 8);
        // seven affine hyperplanes avoid both base points, plus the empty set
        assert_eq!(s.e01.elements().iter().filter(|&&w| gf2::weight(w) == 8).count(), 7);
        let d = Group::closure(&SectionD4::sign_gens(&s.rm2), 5000).unwrap();
        assert_eq!(d.order(), 2048);
        let j = Group::closure(&SectionD4::sign_gens(&s.j), 1000).unwrap();
        assert_eq!(j.order(), 512);
        assert_eq!(d.order() / j.order(), 4);
        for t in [&s.t0, &s.t1] {
            assert_eq!(Group::closure(&SectionD4::sign_gens(t), 100).unwrap().order(), 8);
        }
        for g in &s.q_gens {
            assert_eq!(g.image_of_set(s.b1), s.b1);
        }
        let p01 = Group::closure(&s.p01_gens(), 2000).unwrap();
        assert_eq!(p01.order(), 1344);
        assert!(p01.iter().all(|p| p.apply(0) == 0 && p.apply(OMEGA1) == OMEGA1));
    }
}
