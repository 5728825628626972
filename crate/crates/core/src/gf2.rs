//! Linear algebra over F₂ on packed 64-bit words.
//!
//! A vector of length `n <= 64` is stored in the low `n` bits of a `u64`,
//! coordinate `i` in bit `i`. Subspaces are kept in fully reduced echelon
//! form with the pivot of each basis row at its highest set bit, which makes
//! the basis canonical and turns coset reduction into "clear the pivot bits".

use crate::error::{Error, Result};

/// A packed F₂ vector; coordinate `i` is bit `i`.
pub type BitWord = u64;

pub const MAX_BITS: usize = 64;

#[inline]
pub fn weight(w: BitWord) -> u32 {
    w.count_ones()
}

#[inline]
pub fn bit(w: BitWord, i: usize) -> bool {
    (w >> i) & 1 == 1
}

#[inline]
pub fn parity(w: BitWord) -> u64 {
    (w.count_ones() & 1) as u64
}

#[inline]
pub fn low_mask(n: usize) -> BitWord {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
fn top_bit(w: BitWord) -> u32 {
    63 - w.leading_zeros()
}

/// Iterator over the set bit positions of a word, lowest first.
pub fn ones(mut w: BitWord) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let i = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i)
        }
    })
}

/// Dense matrix over F₂ acting on row vectors from the right: `v ↦ v·M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: Vec<BitWord>,
    ncols: usize,
}

impl Gf2Matrix {
    pub fn new(rows: Vec<BitWord>, ncols: usize) -> Result<Self> {
        if ncols > MAX_BITS {
            return Err(Error::OutOfRange(format!("{ncols} columns exceeds 64")));
        }
        let mask = low_mask(ncols);
        if let Some(&r) = rows.iter().find(|&&r| r & !mask != 0) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                got: top_bit(r) as usize + 1,
            });
        }
        Ok(Gf2Matrix { rows, ncols })
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            rows: (0..n).map(|i| 1u64 << i).collect(),
            ncols: n,
        }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Gf2Matrix {
            rows: vec![0; nrows],
            ncols,
        }
    }

    pub fn rows(&self) -> &[BitWord] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        bit(self.rows[i], j)
    }

    /// Row vector times matrix.
    #[inline]
    pub fn apply(&self, v: BitWord) -> BitWord {
        let mut out = 0;
        for i in ones(v) {
            out ^= self.rows[i];
        }
        out
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.ncols != rhs.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                got: rhs.nrows(),
            });
        }
        Ok(Gf2Matrix {
            rows: self.rows.iter().map(|&r| rhs.apply(r)).collect(),
            ncols: rhs.ncols,
        })
    }

    pub fn add(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        debug_assert_eq!(self.ncols, rhs.ncols);
        Gf2Matrix {
            rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a ^ b).collect(),
            ncols: self.ncols,
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut rows = vec![0u64; self.ncols];
        for (i, &r) in self.rows.iter().enumerate() {
            for j in ones(r) {
                rows[j] |= 1 << i;
            }
        }
        Gf2Matrix {
            rows,
            ncols: self.rows.len(),
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Gf2Matrix> {
        let n = self.nrows();
        if n != self.ncols {
            return None;
        }
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| bit(a[r], col))?;
            a.swap(col, piv);
            inv.swap(col, piv);
            for r in 0..n {
                if r != col && bit(a[r], col) {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(Gf2Matrix { rows: inv, ncols: n })
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.ncols && self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }
}

/// A subspace of F₂^ambient, stored as a canonical reduced echelon basis.
///
/// Basis rows are sorted by pivot (highest set bit) in descending order, and no
/// row has a set bit at another row's pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Subspace {
    basis: Vec<BitWord>,
    ambient: usize,
}

impl Gf2Subspace {
    pub fn zero(ambient: usize) -> Self {
        Gf2Subspace {
            basis: Vec::new(),
            ambient,
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| 1u64 << i)).expect("unit vectors fit")
    }

    pub fn span(ambient: usize, gens: impl IntoIterator<Item = BitWord>) -> Result<Self> {
        if ambient > MAX_BITS {
            return Err(Error::OutOfRange(format!("ambient dimension {ambient} exceeds 64")));
        }
        let mut s = Gf2Subspace::zero(ambient);
        let mask = low_mask(ambient);
        for g in gens {
            if g & !mask != 0 {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: top_bit(g) as usize + 1,
                });
            }
            s.insert(g);
        }
        Ok(s)
    }

    pub fn basis(&self) -> &[BitWord] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Number of elements, `2^dim`.
    pub fn size(&self) -> u64 {
        1u64 << self.dim()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|&b| top_bit(b) as usize)
    }

    /// Canonical (smallest-integer) representative of `v + self`.
    #[inline]
    pub fn reduce(&self, mut v: BitWord) -> BitWord {
        for &b in &self.basis {
            if bit(v, top_bit(b) as usize) {
                v ^= b;
            }
        }
        v
    }

    #[inline]
    pub fn contains(&self, v: BitWord) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: BitWord) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let p = top_bit(v);
        for b in self.basis.iter_mut() {
            if bit(*b, p as usize) {
                *b ^= v;
            }
        }
        let pos = self
            .basis
            .iter()
            .position(|&b| top_bit(b) < p)
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, v);
        true
    }

    pub fn is_subspace_of(&self, other: &Gf2Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    /// Coordinates of a member in terms of the echelon basis: bit `i` is set
    /// when basis row `i` is used.
    pub fn coordinates(&self, v: BitWord) -> Result<BitWord> {
        let mut c = 0u64;
        let mut r = v;
        for (i, &b) in self.basis.iter().enumerate() {
            if bit(r, top_bit(b) as usize) {
                r ^= b;
                c |= 1 << i;
            }
        }
        if r != 0 {
            return Err(Error::NotInSubspace(v));
        }
        Ok(c)
    }

    pub fn combine(&self, coords: BitWord) -> BitWord {
        ones(coords).fold(0, |acc, i| acc ^ self.basis[i])
    }

    /// All `2^dim` members in increasing coordinate order.
    pub fn elements(&self) -> Vec<BitWord> {
        let n = self.dim();
        assert!(n <= 30, "refusing to enumerate a subspace of dimension {n}");
        let mut out = Vec::with_capacity(1 << n);
        out.push(0u64);
        for &b in &self.basis {
            let len = out.len();
            for j in 0..len {
                out.push(out[j] ^ b);
            }
        }
        out
    }

    /// `{v ∈ self : map(v) = 0}` for a linear `map`.
    pub fn kernel_of(&self, map: impl Fn(BitWord) -> BitWord) -> Gf2Subspace {
        // Echelon rows of images, each with the preimage that produced it.
        let mut rows: Vec<(BitWord, BitWord)> = Vec::new();
        let mut kernel = Gf2Subspace::zero(self.ambient);
        for &b in &self.basis {
            let mut img = map(b);
            let mut pre = b;
            for &(ri, rp) in &rows {
                if bit(img, top_bit(ri) as usize) {
                    img ^= ri;
                    pre ^= rp;
                }
            }
            if img == 0 {
                kernel.insert(pre);
            } else {
                let p = top_bit(img) as usize;
                for r in rows.iter_mut() {
                    if bit(r.0, p) {
                        r.0 ^= img;
                        r.1 ^= pre;
                    }
                }
                rows.push((img, pre));
            }
        }
        kernel
    }

    pub fn intersection(&self, other: &Gf2Subspace) -> Gf2Subspace {
        self.kernel_of(|v| other.reduce(v))
    }

    pub fn sum(&self, other: &Gf2Subspace) -> Gf2Subspace {
        let mut s = self.clone();
        for &b in &other.basis {
            s.insert(b);
        }
        s
    }

    /// Members vanishing on every coordinate of `mask`.
    pub fn vanishing_on(&self, mask: BitWord) -> Gf2Subspace {
        self.kernel_of(|v| v & mask)
    }

    /// `{u : u·b = 0 for all b}` with respect to the standard dot product.
    pub fn orthogonal_complement(&self) -> Gf2Subspace {
        let pivot_mask: u64 = self.pivots().fold(0, |m, p| m | 1 << p);
        let mut out = Gf2Subspace::zero(self.ambient);
        for f in 0..self.ambient {
            if bit(pivot_mask, f) {
                continue;
            }
            let mut u = 1u64 << f;
            for &b in &self.basis {
                if bit(b, f) {
                    u |= 1 << top_bit(b);
                }
            }
            out.insert(u);
        }
        out
    }
}

/// Row space and rank of a matrix.
pub fn rref(m: &Gf2Matrix) -> (Gf2Subspace, usize) {
    let mut s = Gf2Subspace::zero(m.ncols());
    for &r in m.rows() {
        s.insert(r);
    }
    let rank = s.dim();
    (s, rank)
}

/// Finds `x` with `x·m = t`, i.e. a set of rows of `m` summing to `t`.
pub fn solve(m: &Gf2Matrix, t: BitWord) -> Result<Option<BitWord>> {
    if t & !low_mask(m.ncols()) != 0 {
        return Err(Error::DimensionMismatch {
            expected: m.ncols(),
            got: top_bit(t) as usize + 1,
        });
    }
    if m.nrows() > MAX_BITS {
        return Err(Error::OutOfRange("more than 64 rows".into()));
    }
    let mut rows: Vec<(BitWord, BitWord)> = Vec::new();
    for (i, &r) in m.rows().iter().enumerate() {
        let mut v = r;
        let mut c = 1u64 << i;
        for &(rv, rc) in &rows {
            if bit(v, top_bit(rv) as usize) {
                v ^= rv;
                c ^= rc;
            }
        }
        if v != 0 {
            let p = top_bit(v) as usize;
            for row in rows.iter_mut() {
                if bit(row.0, p) {
                    row.0 ^= v;
                    row.1 ^= c;
                }
            }
            rows.push((v, c));
        }
    }
    let mut v = t;
    let mut c = 0u64;
    for &(rv, rc) in &rows {
        if bit(v, top_bit(rv) as usize) {
            v ^= rv;
            c ^= rc;
        }
    }
    Ok((v == 0).then_some(c))
}

/// The quotient `a/b` with a fixed basis, used to move between codewords and
/// quotient-module coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    a: Gf2Subspace,
    b: Gf2Subspace,
    /// Echelon basis of the canonical complement (members reduced modulo `b`).
    complement: Gf2Subspace,
}

impl Quotient {
    pub fn new(a: &Gf2Subspace, b: &Gf2Subspace) -> Result<Self> {
        if let Some(&w) = b.basis().iter().find(|&&w| !a.contains(w)) {
            return Err(Error::NotSubspace(w));
        }
        let complement =
            Gf2Subspace::span(a.ambient(), a.basis().iter().map(|&v| b.reduce(v)))?;
        debug_assert_eq!(complement.dim() + b.dim(), a.dim());
        Ok(Quotient {
            a: a.clone(),
            b: b.clone(),
            complement,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    pub fn numerator(&self) -> &Gf2Subspace {
        &self.a
    }

    pub fn denominator(&self) -> &Gf2Subspace {
        &self.b
    }

    /// Coordinates of `v + b` in the fixed basis of `a/b`.
    pub fn coords(&self, v: BitWord) -> Result<BitWord> {
        if !self.a.contains(v) {
            return Err(Error::NotInSubspace(v));
        }
        self.complement.coordinates(self.b.reduce(v))
    }

    /// Smallest-integer codeword of the coset with the given coordinates.
    pub fn lift(&self, coords: BitWord) -> BitWord {
        self.b.reduce(self.complement.combine(coords))
    }

    /// Canonical representative of every coset, sorted.
    pub fn coset_reps(&self) -> Vec<BitWord> {
        let mut reps: Vec<BitWord> = self
            .complement
            .elements()
            .into_iter()
            .map(|v| self.b.reduce(v))
            .collect();
        reps.sort_unstable();
        reps
    }
}

/// One canonical (smallest-integer) representative per coset of `b` in `a`.
pub fn coset_reps(a: &Gf2Subspace, b: &Gf2Subspace) -> Result<Vec<BitWord>> {
    Ok(Quotient::new(a, b)?.coset_reps())
}

pub fn quotient_coords(a: &Gf2Subspace, b: &Gf2Subspace, v: BitWord) -> Result<BitWord> {
    Quotient::new(a, b)?.coords(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_span(gens: &[u64]) -> std::collections::BTreeSet<u64> {
        let mut out = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << gens.len()) {
            out.insert(
                gens.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0, |a, (_, &g)| a ^ g),
            );
        }
        out
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(Gf2Matrix::identity(4).rank(), 4);
        assert_eq!(Gf2Matrix::zero(4, 4).rank(), 0);
    }

    #[test]
    fn solve_identity_and_miss() {
        let id = Gf2Matrix::identity(5);
        assert_eq!(solve(&id, 0b10110).unwrap(), Some(0b10110));
        let m = Gf2Matrix::new(vec![0b0011, 0b0110], 4).unwrap();
        assert_eq!(solve(&m, 0b1000).unwrap(), None);
        assert_eq!(solve(&m, 0b0101).unwrap(), Some(0b11));
        assert!(solve(&m, 0b10000).is_err());
    }

    #[test]
    fn coset_reps_trivial_quotient() {
        let a = Gf2Subspace::span(6, [0b11, 0b1100]).unwrap();
        assert_eq!(coset_reps(&a, &a).unwrap(), vec![0]);
        let b = Gf2Subspace::span(6, [0b100000]).unwrap();
        assert!(matches!(coset_reps(&a, &b), Err(Error::NotSubspace(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Gf2Matrix::new(vec![0b011, 0b110, 0b001], 3).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let sing = Gf2Matrix::new(vec![0b011, 0b011, 0b001], 3).unwrap();
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn orthogonal_complement_dimension() {
        let s = Gf2Subspace::span(8, [0b1111_0000, 0b0011_0011, 0b0101_0101]).unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(c.dim(), 5);
        for &u in c.basis() {
            for &b in s.basis() {
                assert_eq!(parity(u & b), 0);
            }
        }
    }

    proptest! {
        #[test]
        fn membership_matches_brute_force(gens in prop::collection::vec(0u64..4096, 0..7), v in 0u64..4096) {
            let s = Gf2Subspace::span(12, gens.iter().copied()).unwrap();
            let span = brute_span(&gens);
            prop_assert_eq!(s.contains(v), span.contains(&v));
            prop_assert_eq!(s.size() as usize, span.len());
        }

        #[test]
        fn rref_is_canonical(gens in prop::collection::vec(0u64..4096, 1..7)) {
            let s = Gf2Subspace::span(12, gens.iter().copied()).unwrap();
            // Same span, different generators: reversed list plus adjacent sums.
            let mut alt: Vec<u64> = gens.iter().rev().copied().collect();
            alt.extend(gens.windows(2).map(|w| w[0] ^ w[1]));
            let t = Gf2Subspace::span(12, alt).unwrap();
            prop_assert_eq!(s.basis(), t.basis());
            let again = Gf2Subspace::span(12, s.basis().iter().copied()).unwrap();
            prop_assert_eq!(again, s);
        }

        #[test]
        fn solve_roundtrip(rows in prop::collection::vec(0u64..4096, 1..8), x in 0u64..256) {
            let m = Gf2Matrix::new(rows.clone(), 12).unwrap();
            let x = x & low_mask(rows.len());
            let t = m.apply(x);
            let sol = solve(&m, t).unwrap().expect("t is in the row space");
            prop_assert_eq!(m.apply(sol), t);
        }

        #[test]
        fn reduce_gives_coset_minimum(gens in prop::collection::vec(0u64..1024, 0..5), v in 0u64..1024) {
            let s = Gf2Subspace::span(10, gens.iter().copied()).unwrap();
            let min = brute_span(&gens).into_iter().map(|w| w ^ v).min().unwrap();
            prop_assert_eq!(s.reduce(v), min);
        }

        #[test]
        fn coset_partition(gens_a in prop::collection::vec(0u64..1024, 1..6), pick in 0u64..64) {
            let a = Gf2Subspace::span(10, gens_a.iter().copied()).unwrap();
            let sub: Vec<u64> = a.basis().iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &b)| b).collect();
            let b = Gf2Subspace::span(10, sub).unwrap();
            let q = Quotient::new(&a, &b).unwrap();
            let reps = q.coset_reps();
            prop_assert_eq!(reps.len() as u64 * b.size(), a.size());
            let mut seen = std::collections::HashSet::new();
            for v in a.elements() {
                let c = q.coords(v).unwrap();
                prop_assert_eq!(q.lift(c), b.reduce(v));
                seen.insert(c);
            }
            prop_assert_eq!(seen.len(), reps.len());
        }
    }
}
