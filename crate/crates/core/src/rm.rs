//! Reed-Muller codes over Ω = F₂^d and the defect of second-order codewords.
//!
//! A codeword is a subset of Ω packed into a word of length `2^d`, where point
//! `ω_i` is the radix-2 encoding of `i` and sits in bit `i`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf2::{self, BitWord, Gf2Matrix, Gf2Subspace};

pub const MAX_D: usize = 6;

#[derive(Clone, Debug)]
pub struct RmCode {
    r: usize,
    d: usize,
    space: Gf2Subspace,
}

/// Truth table of the monomial `∏_{i ∈ vars} x_i` on F₂^d.
pub fn monomial_word(vars: u32, d: usize) -> BitWord {
    (0..1u64 << d)
        .filter(|&x| x as u32 & vars == vars)
        .fold(0, |w, x| w | 1 << x)
}

/// Builds RM(r, d) from the degree-≤r monomials.
pub fn build_rm(r: usize, d: usize) -> Result<RmCode> {
    if d > MAX_D || r > d {
        return Err(Error::OutOfRange(format!("RM({r},{d}) needs 0 <= r <= d <= 6")));
    }
    let gens = (0u32..1 << d)
        .filter(|s| s.count_ones() as usize <= r)
        .map(|s| monomial_word(s, d));
    let space = Gf2Subspace::span(1 << d, gens)?;
    Ok(RmCode { r, d, space })
}

impl RmCode {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        1 << self.d
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn space(&self) -> &Gf2Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, a: BitWord) -> bool {
        a & !gf2::low_mask(self.len()) == 0 && self.space.contains(a)
    }

    pub fn codewords(&self) -> Vec<BitWord> {
        self.space.elements()
    }

    pub fn weight_set(&self) -> BTreeSet<u32> {
        self.codewords().into_iter().map(gf2::weight).collect()
    }

    /// The members of RM(1,d) not containing ω₀: supports of linear functionals.
    pub fn anchor(&self) -> Gf2Subspace {
        build_rm(1, self.d)
            .expect("valid d")
            .space
            .vanishing_on(1)
    }
}

/// Algebraic normal form by the Möbius transform: bit `m` of the result is the
/// coefficient of the monomial with variable set `m`.
pub fn anf(truth: BitWord, d: usize) -> BitWord {
    let mut a = truth;
    for i in 0..d {
        let step = 1u64 << i;
        for x in 0..1u64 << d {
            if x & step != 0 && gf2::bit(a, (x ^ step) as usize) {
                a ^= 1 << x;
            }
        }
    }
    a
}

pub fn anf_degree(truth: BitWord, d: usize) -> u32 {
    gf2::ones(anf(truth, d))
        .map(|m| (m as u64).count_ones())
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefectClass {
    pub k: u32,
    pub clean: bool,
}

/// Gram matrix of the alternating form `B(x,y) = χ(x+y)+χ(x)+χ(y)+χ(0)` on the
/// coordinate basis of F₂^d.
pub fn bilinear_form(a: BitWord, d: usize) -> Gf2Matrix {
    let chi = |x: usize| gf2::bit(a, x) as u64;
    let rows = (0..d)
        .map(|i| {
            (0..d).fold(0u64, |row, j| {
                let (x, y) = (1usize << i, 1usize << j);
                let b = chi(x ^ y) ^ chi(x) ^ chi(y) ^ chi(0);
                row | b << j
            })
        })
        .collect();
    Gf2Matrix::new(rows, d).expect("d <= 6")
}

/// Defect of a codeword of RM(2,d): half the rank of its bilinear form.
pub fn defect(code: &RmCode, a: BitWord) -> Result<DefectClass> {
    if code.r != 2 {
        return Err(Error::OutOfRange(format!("defect needs RM(2,d), got RM({},{})", code.r, code.d)));
    }
    if !code.contains(a) {
        return Err(Error::NotInSubspace(a));
    }
    let rank = bilinear_form(a, code.d).rank() as u32;
    debug_assert!(rank.is_multiple_of(2));
    Ok(DefectClass {
        k: rank / 2,
        clean: gf2::weight(a) as usize != code.len() / 2,
    })
}

/// Number of clean words in `anchor + a`, where the anchor is the `2^d`
/// members of RM(1,d) avoiding ω₀.
pub fn coset_clean_count(code: &RmCode, a: BitWord) -> Result<usize> {
    if code.r != 2 || !code.contains(a) {
        return Err(Error::NotInSubspace(a));
    }
    let rm1 = build_rm(1, code.d)?;
    if rm1.contains(a) {
        return Err(Error::OutOfRange("codeword lies in RM(1,d)".into()));
    }
    let half = code.len() as u32 / 2;
    Ok(code
        .anchor()
        .elements()
        .into_iter()
        .filter(|&l| gf2::weight(l ^ a) != half)
        .count())
}

/// Trace of the sign change `ε_A` on `R^{2^d}`.
pub fn trace_of_sign(a: BitWord, d: usize) -> i64 {
    (1i64 << d) - 2 * gf2::weight(a) as i64
}

/// Admissible weights of a clean codeword of defect `k`.
pub fn clean_weights(d: usize, k: u32) -> [u32; 2] {
    let half = 1u32 << (d - 1);
    let delta = 1u32 << (d as u32 - k - 1);
    [half - delta, half + delta]
}

pub fn is_affine_plane(points: [usize; 4]) -> bool {
    let distinct: BTreeSet<_> = points.iter().collect();
    distinct.len() == 4 && points.iter().fold(0, |a, &p| a ^ p) == 0
}

pub fn set_word(points: &[usize]) -> BitWord {
    points.iter().fold(0, |w, &p| w | 1 << p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn dimensions() {
        assert_eq!(build_rm(1, 4).unwrap().dim(), 5);
        assert_eq!(build_rm(2, 4).unwrap().dim(), 11);
        assert_eq!(build_rm(2, 5).unwrap().dim(), 16);
        assert_eq!(build_rm(0, 3).unwrap().dim(), 1);
        assert!(build_rm(2, 7).is_err());
        assert!(build_rm(3, 2).is_err());
    }

    #[test]
    fn weights() {
        let rm1 = build_rm(1, 4).unwrap();
        assert_eq!(rm1.weight_set(), BTreeSet::from([0, 8, 16]));
        let rm2 = build_rm(2, 4).unwrap();
        assert_eq!(rm2.codewords().len(), 2048);
        assert_eq!(rm2.weight_set(), BTreeSet::from([0, 4, 6, 8, 10, 12, 16]));
        assert!(rm1.space().is_subspace_of(rm2.space()));
    }

    #[test]
    fn members_have_low_degree() {
        for d in 2..=5 {
            for r in 0..=d.min(3) {
                let code = build_rm(r, d).unwrap();
                for &b in code.space().basis() {
                    assert!(anf_degree(b, d) as usize <= r);
                }
            }
        }
    }

    #[test]
    fn defect_examples() {
        let rm2 = build_rm(2, 4).unwrap();
        for l in build_rm(1, 4).unwrap().codewords() {
            assert_eq!(defect(&rm2, l).unwrap().k, 0);
        }
        // {0,1,2,3} is the affine plane x2 = x3 = 0.
        let plane = set_word(&[0, 1, 2, 3]);
        assert_eq!(defect(&rm2, plane).unwrap(), DefectClass { k: 1, clean: true });
        assert!(defect(&rm2, 0b111).is_err());
        assert!(defect(&build_rm(1, 4).unwrap(), 0).is_err());
    }

    #[test]
    fn exhaustive_weight_law_d4() {
        let rm2 = build_rm(2, 4).unwrap();
        let mut by_weight: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        for a in rm2.codewords() {
            let c = defect(&rm2, a).unwrap();
            let w = gf2::weight(a);
            if c.clean {
                assert!(c.k == 0 || clean_weights(4, c.k).contains(&w), "{a:#x}");
            } else {
                assert_eq!(w, 8);
            }
            if c.clean && c.k > 0 {
                by_weight.entry(w).or_default().insert(c.k);
            }
        }
        assert_eq!(by_weight[&6], BTreeSet::from([2]));
        assert_eq!(by_weight[&10], BTreeSet::from([2]));
        assert_eq!(by_weight[&4], BTreeSet::from([1]));
        assert_eq!(by_weight[&12], BTreeSet::from([1]));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_of_sign(0, 4), 16);
        assert_eq!(trace_of_sign(0xff, 4), 0);
        assert_eq!(trace_of_sign(0b111111, 4), 4);
    }

    #[test]
    fn clean_count_small_cases() {
        let rm2 = build_rm(2, 4).unwrap();
        assert_eq!(coset_clean_count(&rm2, set_word(&[0, 1, 2, 3])).unwrap(), 4);
        // x0x1 + x2x3 has defect 2.
        let q = monomial_word(0b0011, 4) ^ monomial_word(0b1100, 4);
        assert_eq!(defect(&rm2, q).unwrap().k, 2);
        assert_eq!(coset_clean_count(&rm2, q).unwrap(), 16);
        assert!(coset_clean_count(&rm2, 0xff).is_err());
    }

    #[test]
    fn anf_roundtrip() {
        for t in [0u64, 0xffff, 0x8000, 0x6996, 0x1234] {
            let a = anf(t, 4);
            assert_eq!(anf(a, 4), t, "Möbius transform is an involution");
        }
        assert_eq!(anf(monomial_word(0b101, 4), 4), 1 << 0b101);
    }
}
