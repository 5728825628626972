//! The twisted affine group on 16 points and its 256-point orbit.
//!
//! GL(4,2) acts on RM(2,4)/RM(1,4); that module has one nontrivial
//! cohomology class, and a noninner cocycle `f̄` with kernel of index 8 twists
//! the permutation action by sign changes. The group
//! `OG = (D∩R){ε_{f(x)} x : x ∈ AGL(4,2)}` has order `2^5 · |AGL(4,2)|`.

use std::collections::BTreeSet;

use crate::cocycle::{self, CocycleSpace, Derivation, ModuleAction, UnidefectVerdict};
use crate::error::{Error, Result};
use crate::gf2::{BitWord, Gf2Subspace, Quotient};
use crate::mono::{self, CoordPerm, Group, MonoElt};
use crate::rm;
use crate::sphere::{self, BinaryCode, SphericalCode};

pub const D: usize = 4;
pub const N: usize = 16;
pub const AGL_ORDER: u64 = 322_560;
pub const GL_ORDER: usize = 20_160;

/// GL(4,2) acting on RM(2,4)/RM(1,4), with its cocycle space.
pub struct GlModule {
    pub space: CocycleSpace<CoordPerm>,
    pub quotient: Quotient,
    pub rm1: Gf2Subspace,
}

pub fn gl42_module() -> Result<GlModule> {
    let rm1 = rm::build_rm(1, D)?.space().clone();
    let rm2 = rm::build_rm(2, D)?.space().clone();
    let quotient = Quotient::new(&rm2, &rm1)?;
    let action = ModuleAction::on_quotient(mono::gl_generators(D)?, &quotient)?;
    let space = CocycleSpace::new(action, GL_ORDER)?;
    Ok(GlModule { space, quotient, rm1 })
}

pub struct Optigroup {
    pub module: GlModule,
    pub fbar: Derivation,
    /// Generators: RM(1,4) sign basis, then the twisted AGL(4,2) generators.
    pub gens: Vec<MonoElt>,
    pub order: u64,
    pub kernel: Group<CoordPerm>,
    /// Permutations fixing `x₀`: affine maps whose linear part lies in the kernel.
    pub stabilizer: Group<CoordPerm>,
    /// Canonical lifts of the nonzero values of `f̄`.
    pub value_lifts: BTreeSet<BitWord>,
    pub verdict: UnidefectVerdict,
}

impl Optigroup {
    /// Canonical lift of `f(x)` for an affine `x`.
    pub fn lift_of(&self, x: &CoordPerm) -> Result<BitWord> {
        let lin = x
            .linear_part(D)
            .ok_or_else(|| Error::InvalidCode(format!("{x:?} is not affine")))?;
        let i = self
            .module
            .space
            .index_of(&lin)
            .ok_or_else(|| Error::Verification("linear part outside GL(4,2)".into()))?;
        Ok(self.module.quotient.lift(self.fbar.values[i]))
    }

    pub fn twisted(&self, x: &CoordPerm) -> Result<MonoElt> {
        Ok(MonoElt::new(self.lift_of(x)?, *x))
    }

    /// Generators of `X = (D∩R){ε_{f(x)} x : x ∈ GL(4,2)}`.
    pub fn x_gens(&self) -> Result<Vec<MonoElt>> {
        let mut gens: Vec<MonoElt> = self.module.rm1.basis().iter().map(|&a| MonoElt::sign(a, N)).collect();
        for s in mono::gl_generators(D)? {
            gens.push(self.twisted(&s)?);
        }
        Ok(gens)
    }
}

pub fn build_optigroup() -> Result<Optigroup> {
    let module = gl42_module()?;
    let fbar = module.space.select_noninner_with_kernel_index(8)?;
    let kernel = module.space.kernel(&fbar)?;
    let mut gens: Vec<MonoElt> = module.rm1.basis().iter().map(|&a| MonoElt::sign(a, N)).collect();
    let value_lifts: BTreeSet<BitWord> = fbar
        .values
        .iter()
        .filter(|&&v| v != 0)
        .map(|&v| module.quotient.lift(v))
        .collect();
    let mut og = Optigroup {
        module,
        fbar,
        gens: Vec::new(),
        order: 0,
        stabilizer: Group::closure_from(CoordPerm::identity(N), &[], 1)?,
        kernel,
        value_lifts,
        verdict: UnidefectVerdict::Strong,
    };
    for s in mono::agl_generators(D)? {
        gens.push(og.twisted(&s)?);
    }
    og.gens = gens;
    og.order = og.module.rm1.size() * AGL_ORDER;

    let mut stab_gens = og.kernel.gens().to_vec();
    stab_gens.extend((0..D).map(|i| CoordPerm::translation(D, 1 << i)));
    og.stabilizer = Group::closure(&stab_gens, AGL_ORDER as usize)?;

    let parts: BTreeSet<BitWord> = og
        .value_lifts
        .iter()
        .flat_map(|&a| og.module.rm1.elements().into_iter().map(move |r| a ^ r))
        .chain(og.module.rm1.elements())
        .collect();
    og.verdict = cocycle::unidefect_check(&parts, D, 2)?;
    Ok(og)
}

pub struct Opticode {
    pub sign_sets: Vec<BitWord>,
    pub code: SphericalCode,
    pub binary: BinaryCode,
}

pub fn build_opticode(og: &Optigroup) -> Result<Opticode> {
    let sign_sets = mono::orbit_sign_sets(0, &og.gens, 1 << 12)?;
    let code = SphericalCode::from_sign_sets(N, sign_sets.iter().copied())?;
    let binary = sphere::to_binary(&code)?;
    Ok(Opticode { sign_sets, code, binary })
}

/// The eight RM(1,4) cosets meeting the orbit, given by the kernel orbit of values.
pub fn coset_union(og: &Optigroup) -> BTreeSet<BitWord> {
    let rm1 = og.module.rm1.elements();
    std::iter::once(0)
        .chain(og.value_lifts.iter().copied())
        .flat_map(|a| rm1.iter().map(move |&r| a ^ r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl42_cohomology() {
        let m = gl42_module().unwrap();
        assert_eq!(m.space.order(), GL_ORDER);
        assert_eq!(m.space.z1().dim(), 7);
        assert_eq!(m.space.b1().dim(), 6);
        assert_eq!(m.space.h1_dim(), 1);
        assert_eq!(m.space.noninner_with_kernel_index(8).len(), 8);
    }

    #[test]
    fn optigroup_facts() {
        let og = build_optigroup().unwrap();
        assert_eq!(og.kernel.order(), 2520);
        assert_eq!(og.value_lifts.len(), 7);
        let rm2 = rm::build_rm(2, D).unwrap();
        for &a in &og.value_lifts {
            assert_eq!(rm::defect(&rm2, a).unwrap().k, 2);
        }
        assert_eq!(og.verdict, UnidefectVerdict::Strong);
        assert_eq!(og.stabilizer.order(), 40320);
        assert_eq!(og.order, 10_321_920);
        let oc = build_opticode(&og).unwrap();
        assert_eq!(oc.code.len(), 256);
        assert_eq!(og.order / oc.code.len() as u64, og.stabilizer.order() as u64);
        let set: BTreeSet<BitWord> = oc.sign_sets.iter().copied().collect();
        assert_eq!(set, coset_union(&og));
        for p in og.stabilizer.gens() {
            assert_eq!(oc.binary.permute(p), oc.binary);
        }
    }
}
