//! Diagonal codes from a prime-order `2^m − 1` linear map.
//!
//! The map `g` acts on the module of RM(2,d) codewords avoiding ω₀ modulo
//! the RM(1,d) codewords avoiding ω₀. Each `m`-dimensional irreducible
//! submodule lifts to a diagonal group `J` whose orbit of the all-ones vector
//! is a code of size `2^{m+d}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf2::{self, BitWord, Gf2Matrix, Gf2Subspace, Quotient};
use crate::mono::{singer_like_element, CoordPerm};
use crate::rm;
use crate::sphere::{self, Cosine, SphericalCode};

/// An irreducible `g`-submodule of the quotient module.
#[derive(Clone, Debug)]
pub struct Constituent {
    /// Minimal polynomial of `g` on the submodule, bit `i` = coefficient of `x^i`.
    pub poly: u64,
    /// Echelon basis in quotient coordinates.
    pub space: Gf2Subspace,
}

#[derive(Clone, Debug)]
pub struct DiagonalModule {
    pub d: usize,
    pub m: usize,
    pub g: CoordPerm,
    pub quotient: Quotient,
    pub matrix: Gf2Matrix,
    pub constituents: Vec<Constituent>,
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        a ^= b << (63 - a.leading_zeros() - db);
    }
    a
}

fn is_irreducible(p: u64) -> bool {
    let deg = 63 - p.leading_zeros();
    (2u64..1 << (deg / 2 + 1)).all(|q| poly_mod(p, q) != 0 || q == p)
}

fn eval_poly(poly: u64, m: &Gf2Matrix) -> Result<Gf2Matrix> {
    let n = m.nrows();
    let mut acc = Gf2Matrix::zero(n, n);
    let mut power = Gf2Matrix::identity(n);
    for i in 0..64 - poly.leading_zeros() {
        if poly >> i & 1 == 1 {
            acc = acc.add(&power);
        }
        power = power.mul(m)?;
    }
    Ok(acc)
}

impl DiagonalModule {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if !(3..=5).contains(&d) || m > d {
            return Err(Error::OutOfRange(format!("diagonal codes need 3 <= m <= d <= 5, got m={m}, d={d}")));
        }
        let g = singer_like_element(m, d)?;
        let rm2 = rm::build_rm(2, d)?;
        let rm1 = rm::build_rm(1, d)?;
        let quotient = Quotient::new(&rm2.space().vanishing_on(1), &rm1.space().vanishing_on(1))?;
        let n = quotient.dim();
        let rows = (0..n)
            .map(|i| quotient.coords(g.image_of_set(quotient.lift(1 << i))))
            .collect::<Result<Vec<_>>>()?;
        let matrix = Gf2Matrix::new(rows, n)?;

        let mut constituents = Vec::new();
        for poly in (1u64 << m..1 << (m + 1)).filter(|&p| is_irreducible(p)) {
            let phi = eval_poly(poly, &matrix)?;
            let kernel = Gf2Subspace::full(n).kernel_of(|v| phi.apply(v));
            if kernel.dim() == 0 {
                continue;
            }
            let mut seen: BTreeSet<Vec<BitWord>> = BTreeSet::new();
            let mut found = Vec::new();
            for v in kernel.elements().into_iter().skip(1) {
                let mut gens = Vec::with_capacity(m);
                let mut w = v;
                for _ in 0..m {
                    gens.push(w);
                    w = matrix.apply(w);
                }
                let space = Gf2Subspace::span(n, gens)?;
                if seen.insert(space.basis().to_vec()) {
                    found.push(Constituent { poly, space });
                }
            }
            found.sort_by(|a, b| a.space.basis().cmp(b.space.basis()));
            constituents.extend(found);
        }
        Ok(DiagonalModule { d, m, g, quotient, matrix, constituents })
    }

    /// The codeword space `J`: RM(1,d) words avoiding ω₀ plus lifts of the constituent.
    pub fn lower_space(&self, index: usize) -> Result<Gf2Subspace> {
        let c = self.constituents.get(index).ok_or_else(|| {
            Error::OutOfRange(format!("constituent {index} of {}", self.constituents.len()))
        })?;
        let lifts = c.space.basis().iter().map(|&v| self.quotient.lift(v));
        Gf2Subspace::span(
            1 << self.d,
            self.quotient.denominator().basis().iter().copied().chain(lifts),
        )
    }

    /// Common nonzero defect of the words of `J`, or `NotPure`.
    pub fn purity(&self, index: usize) -> Result<u32> {
        let j = self.lower_space(index)?;
        let rm2 = rm::build_rm(2, self.d)?;
        let defects: BTreeSet<u32> = j
            .elements()
            .into_iter()
            .map(|a| rm::defect(&rm2, a).map(|c| c.k))
            .collect::<Result<_>>()?;
        let nonzero: Vec<u32> = defects.into_iter().filter(|&k| k > 0).collect();
        match nonzero.as_slice() {
            [k] => Ok(*k),
            _ => Err(Error::NotPure { index, detail: format!("defects {nonzero:?}") }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DscBuild {
    pub d: usize,
    pub m: usize,
    pub index: usize,
    pub constituent_count: usize,
    pub poly: u64,
    pub k: u32,
    pub g: CoordPerm,
    pub j: Gf2Subspace,
    pub code: SphericalCode,
    pub cosines: BTreeSet<Cosine>,
    pub both_signs: bool,
}

/// Builds the diagonal code of the `index`-th constituent.
pub fn build_dsc(d: usize, m: usize, index: usize) -> Result<DscBuild> {
    let module = DiagonalModule::new(d, m)?;
    build_from_module(&module, index)
}

pub fn build_from_module(module: &DiagonalModule, index: usize) -> Result<DscBuild> {
    let k = module.purity(index)?;
    let j = module.lower_space(index)?;
    if !j.basis().iter().all(|&a| j.contains(module.g.image_of_set(a))) {
        return Err(Error::Verification("J is not g-invariant".into()));
    }
    let n = 1 << module.d;
    let code = SphericalCode::from_sign_sets(n, j.elements())?;
    let ips = code.inner_products();
    let s = 1i64 << (module.d as u32 - k);
    let both_signs = ips.contains(&s) && ips.contains(&-s);
    if !ips.is_subset(&BTreeSet::from([-s, 0, s])) {
        return Err(Error::Verification(format!("inner products {ips:?} exceed {{0, ±{s}}}")));
    }
    Ok(DscBuild {
        d: module.d,
        m: module.m,
        index,
        constituent_count: module.constituents.len(),
        poly: module.constituents[index].poly,
        k,
        g: module.g,
        j,
        cosines: sphere::cosine_set(&code),
        code,
        both_signs,
    })
}

/// The first constituent whose diagonal code has defect `k`.
pub fn build_dsc_with_defect(d: usize, m: usize, k: u32) -> Result<DscBuild> {
    let module = DiagonalModule::new(d, m)?;
    (0..module.constituents.len())
        .find(|&i| module.purity(i).ok() == Some(k))
        .map(|i| build_from_module(&module, i))
        .unwrap_or_else(|| Err(Error::NoCandidate(format!("constituent with defect {k} for d={d}, m={m}"))))
}

/// Weights of the words of `J`.
pub fn weight_set(j: &Gf2Subspace) -> BTreeSet<u32> {
    j.elements().into_iter().map(gf2::weight).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn irreducibles() {
        let cubics: Vec<u64> = (8u64..16).filter(|&p| is_irreducible(p)).collect();
        assert_eq!(cubics, vec![0b1011, 0b1101]);
        assert_eq!((32u64..64).filter(|&p| is_irreducible(p)).count(), 6);
    }

    #[test]
    fn d3_single_constituent() {
        let b = build_dsc(3, 3, 0).unwrap();
        assert_eq!(b.constituent_count, 1);
        assert_eq!(b.code.len(), 64);
        assert_eq!(b.k, 1);
        assert!(b.both_signs);
        let half = Ratio::new(1, 2);
        assert_eq!(b.cosines, BTreeSet::from([-half, Ratio::from_integer(0), half]));
        assert!(build_dsc(3, 3, 1).is_err());
    }

    #[test]
    fn d4_m3_defect_one() {
        let module = DiagonalModule::new(4, 3).unwrap();
        assert!(!module.constituents.is_empty());
        for i in 0..module.constituents.len() {
            let b = build_from_module(&module, i).unwrap();
            assert_eq!(b.k, 1);
            assert_eq!(b.code.len(), 128);
        }
    }

    #[test]
    fn module_dimension() {
        let module = DiagonalModule::new(5, 5).unwrap();
        assert_eq!(module.quotient.dim(), 10);
        assert_eq!(module.constituents.len(), 2);
        assert!(DiagonalModule::new(6, 3).is_err());
        assert!(matches!(DiagonalModule::new(4, 4), Err(Error::NotMersenne(4))));
    }
}
