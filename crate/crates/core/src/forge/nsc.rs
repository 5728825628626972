//! The 64- and 128-point codes around the two base points ω₀ and ω₁.
//!
//! Two independent routes:
//! - restricting the GL(4,2) twist to the linear maps fixing ω₁ gives `H`,
//!   read off from the materialized group `X`;
//! - a cocycle of `Q ≅ GL(3,2)` into `J/E` gives `H*` directly.
//!
//! Both orbits of the all-ones vector are 64-point tricosine codes with the
//! same Gram data.

use std::collections::BTreeSet;

use crate::cocycle::{self, CocycleSpace, Derivation, ModuleAction, UnidefectVerdict};
use crate::error::{Error, Result};
use crate::gf2::{self, BitWord, Gf2Subspace, Quotient};
use crate::mono::{self, CoordPerm, Group, GroupElement, MonoElt, SectionD4, OMEGA1};
use crate::sphere::{self, SphericalCode};

use super::optimism::{Optigroup, N};

const BASE: BitWord = 1 | 1 << OMEGA1;
pub const X_ORDER: usize = 645_120;
pub const H_ORDER: usize = 10_752;

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Verification(msg.into()))
}

fn sign_group(space: &Gf2Subspace) -> Result<Group<MonoElt>> {
    let id = MonoElt::perm(CoordPerm::identity(N));
    Group::closure_from(id, &SectionD4::sign_gens(space), space.size() as usize)
}

/// `X`, materialized by closure.
pub fn build_x(og: &Optigroup) -> Result<Group<MonoElt>> {
    Group::closure(&og.x_gens()?, X_ORDER)
}

/// The elements of `X` fixing `x₀` and `v₁`: permutation fixes both base
/// points and the sign set avoids them.
pub fn h_from_x(x: &Group<MonoElt>) -> Result<Group<MonoElt>> {
    x.filter_subgroup(|g| g.perm.apply(0) == 0 && g.perm.apply(OMEGA1) == OMEGA1 && g.signs & BASE == 0)
}

/// The same subgroup built directly from the linear maps fixing ω₁.
pub fn h_direct(og: &Optigroup, sec: &SectionD4) -> Result<BTreeSet<MonoElt>> {
    let p01 = Group::closure(&sec.p01_gens(), 2000)?;
    let rm1 = og.module.rm1.elements();
    let mut out = BTreeSet::new();
    for x in p01.iter() {
        let a = og.lift_of(x)?;
        for &r in &rm1 {
            if (a ^ r) & BASE == 0 {
                out.insert(MonoElt::new(a ^ r, *x));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct NscFamily {
    pub h: Group<MonoElt>,
    pub o2: Group<MonoElt>,
    pub nsc16_64: SphericalCode,
    pub nsc15_64: SphericalCode,
    pub nsc14_64: SphericalCode,
    pub nsc16_128: SphericalCode,
    pub nsc15_128: SphericalCode,
    pub report: NscReport,
}

#[derive(Clone, Debug, Default)]
pub struct NscReport {
    pub x_order: usize,
    pub h_order: usize,
    pub h_matches_direct: bool,
    pub h_meet_p: usize,
    pub h_meet_r_is_e01: bool,
    pub normalizes_e01: bool,
    pub o2_order: usize,
    pub o2_abelian: bool,
    pub o2_exponent: usize,
    pub o2_small_elements: usize,
    pub o2_regular: bool,
    pub perm_image_o2_order: usize,
    pub p01_normalizes: bool,
    pub commutator_with_p01_is_e01: bool,
    pub extra_sign: BitWord,
    pub commutator_with_sign_in_e01: bool,
    pub no_antipodes_128: bool,
}

/// Builds `H` through `X` and the five codes; every structural check is
/// recorded in the report.
pub fn build_h_and_nsc_family(og: &Optigroup, sec: &SectionD4, extra_sign: BitWord) -> Result<NscFamily> {
    let x = build_x(og)?;
    let h = h_from_x(&x)?;
    let mut rep = NscReport { x_order: x.order(), h_order: h.order(), extra_sign, ..Default::default() };
    drop(x);

    let direct = h_direct(og, sec)?;
    rep.h_matches_direct = direct.len() == h.order() && h.iter().all(|g| direct.contains(g));

    let id_perm = CoordPerm::identity(N);
    rep.h_meet_p = h.iter().filter(|g| g.signs == 0).count();
    let h_meet_r: BTreeSet<BitWord> = h.iter().filter(|g| g.perm == id_perm).map(|g| g.signs).collect();
    rep.h_meet_r_is_e01 = h_meet_r == sec.e01.elements().into_iter().collect();
    let e01 = sign_group(&sec.e01)?;
    rep.normalizes_e01 = h.gens().iter().all(|g| e01.gens().iter().all(|e| e01.contains(&e.conj(g))));

    let o2 = mono::o2_subgroup(&h)?;
    rep.o2_order = o2.order();
    rep.o2_abelian = o2.is_abelian();
    rep.o2_exponent = o2.exponent();
    rep.o2_small_elements = o2.iter().filter(|g| g.op(g).is_identity()).count();
    let o2_orbit = mono::orbit_sign_sets(0, o2.gens(), 1 << 10)?;
    rep.o2_regular = o2_orbit.len() == o2.order();

    let perm_image = Group::closure(&h.gens().iter().map(|g| g.perm).collect::<Vec<_>>(), 2000)?;
    rep.perm_image_o2_order = mono::o2_subgroup(&perm_image)?.order();

    let p01 = MonoElt::perm(sec.p01);
    rep.p01_normalizes = h.gens().iter().all(|g| h.contains(&g.conj(&p01)));
    let comms: BTreeSet<MonoElt> = h.iter().map(|g| g.inv().op(&p01.inv()).op(g).op(&p01)).collect();
    let comm_signs = Gf2Subspace::span(N, comms.iter().map(|c| c.signs))?;
    rep.commutator_with_p01_is_e01 =
        comms.iter().all(|c| c.perm == id_perm && sec.e01.contains(c.signs)) && comm_signs.dim() == sec.e01.dim();

    let eps = MonoElt::sign(extra_sign, N);
    rep.commutator_with_sign_in_e01 = h.gens().iter().all(|g| {
        let c = g.inv().op(&eps).op(g).op(&eps);
        c.perm == id_perm && sec.e01.contains(c.signs)
    });

    let orbit64 = mono::orbit_sign_sets(0, h.gens(), 1 << 10)?;
    let nsc16_64 = SphericalCode::from_sign_sets(N, orbit64)?;
    let nsc15_64 = sphere::reduce(&nsc16_64, &[0])?;
    let nsc14_64 = sphere::reduce(&nsc16_64, &[0, OMEGA1])?;
    let mut gens128 = h.gens().to_vec();
    gens128.push(eps);
    let orbit128 = mono::orbit_sign_sets(0, &gens128, 1 << 10)?;
    let nsc16_128 = SphericalCode::from_sign_sets(N, orbit128)?;
    let nsc15_128 = sphere::reduce(&nsc16_128, &[0])?;
    rep.no_antipodes_128 = !nsc16_128.inner_products().contains(&-(N as i64));

    Ok(NscFamily { h, o2, nsc16_64, nsc15_64, nsc14_64, nsc16_128, nsc15_128, report: rep })
}

impl NscReport {
    /// Names of failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            ("|X| = 645120", self.x_order == X_ORDER),
            ("|H| = 10752", self.h_order == H_ORDER),
            ("H equals the direct construction", self.h_matches_direct),
            ("|H ∩ P| = 168", self.h_meet_p == 168),
            ("H ∩ R = E01", self.h_meet_r_is_e01),
            ("H normalizes E01", self.normalizes_e01),
            ("|O2(H)| = 64", self.o2_order == 64),
            ("O2(H) abelian", self.o2_abelian),
            ("O2(H) exponent 4", self.o2_exponent == 4),
            ("O2(H) has 8 elements of order <= 2", self.o2_small_elements == 8),
            ("O2(H) regular on the orbit", self.o2_regular),
            ("O2 of the permutation image has order 8", self.perm_image_o2_order == 8),
            ("p01 normalizes H", self.p01_normalizes),
            ("[H, p01] = E01", self.commutator_with_p01_is_e01),
            ("[H, extra sign] <= E01", self.commutator_with_sign_in_e01),
            ("128-point code has no antipodes", self.no_antipodes_128),
        ];
        checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }
}

/// `J/E` split into the `F0` part (in `T0`) and the `D01/E` part.
pub fn split_components(sec: &SectionD4, w: BitWord) -> Result<(BitWord, BitWord)> {
    for t in sec.t0.elements() {
        if sec.b01.contains(w ^ t) {
            return Ok((t, sec.e01.reduce(w ^ t)));
        }
    }
    Err(Error::NotInSubspace(w))
}

pub struct HStar {
    pub space: CocycleSpace<CoordPerm>,
    pub quotient: Quotient,
    pub f: Derivation,
    pub qualifying: usize,
    pub kernel_order: usize,
    pub verdict: UnidefectVerdict,
    pub gens: Vec<MonoElt>,
    pub group: Group<MonoElt>,
    pub code: SphericalCode,
}

impl HStar {
    pub fn lift_at(&self, x: &CoordPerm) -> BitWord {
        let i = self.space.index_of(x).expect("x lies in Q");
        self.quotient.lift(self.f.values[i])
    }
}

fn component_is_inner(
    space: &CocycleSpace<CoordPerm>,
    values: &[BitWord],
    candidates: &[BitWord],
    modulo: &Gf2Subspace,
) -> bool {
    candidates.iter().any(|&a| {
        space.elements().enumerate().all(|(i, x)| {
            let inner = a ^ x.preimage_of_set(a);
            modulo.reduce(values[i] ^ inner) == 0
        })
    })
}

/// Cocycle space of `Q` on `J/E`, the quotient, and the qualifying cocycles.
pub type QualifyingCocycles = (CocycleSpace<CoordPerm>, Quotient, Vec<(Derivation, UnidefectVerdict)>);

/// The qualifying cocycles of `Q` on `J/E`: both components noninner with the
/// same kernel of order 21, strongly unidefect of defect 2.
pub fn qualifying_h_star_cocycles(sec: &SectionD4) -> Result<QualifyingCocycles> {
    let quotient = Quotient::new(&sec.j, &sec.e01)?;
    let action = ModuleAction::on_quotient(sec.q_gens.clone(), &quotient)?;
    let space = CocycleSpace::new(action, 168)?;
    let t0 = sec.t0.elements();
    let b01 = sec.b01.elements();
    let zero = Gf2Subspace::zero(N);
    let mut out = Vec::new();
    for u in space.z1().elements() {
        let f = space.derivation(u)?;
        let lifts: Vec<BitWord> = f.values.iter().map(|&v| quotient.lift(v)).collect();
        let comps = lifts.iter().map(|&w| split_components(sec, w)).collect::<Result<Vec<_>>>()?;
        let g0: Vec<BitWord> = comps.iter().map(|c| c.0).collect();
        let g1: Vec<BitWord> = comps.iter().map(|c| c.1).collect();
        let k0: Vec<bool> = g0.iter().map(|&v| v == 0).collect();
        let k1: Vec<bool> = g1.iter().map(|&v| v == 0).collect();
        if k0 != k1 || k0.iter().filter(|&&z| z).count() != 21 {
            continue;
        }
        if component_is_inner(&space, &g0, &t0, &zero) || component_is_inner(&space, &g1, &b01, &sec.e01) {
            continue;
        }
        let e = sec.e01.elements();
        let parts: BTreeSet<BitWord> = lifts.iter().flat_map(|&a| e.iter().map(move |&r| a ^ r)).collect();
        let verdict = cocycle::unidefect_check(&parts, 4, 2)?;
        if matches!(verdict, UnidefectVerdict::Fail { .. }) {
            continue;
        }
        out.push((f, verdict));
    }
    Ok((space, quotient, out))
}

pub fn build_h_star_gl32_route(sec: &SectionD4) -> Result<HStar> {
    let (space, quotient, mut found) = qualifying_h_star_cocycles(sec)?;
    if found.is_empty() {
        return Err(Error::NoCandidate("qualifying near-derivation of GL(3,2) into J/E".into()));
    }
    let qualifying = found.len();
    let (f, verdict) = found.remove(0);
    let kernel_order = f.kernel_order();
    let near = cocycle::lift_to_near_derivation(&f, &quotient);
    let ug = cocycle::group_from_near_derivation(
        &sec.e01,
        &sec.q_gens,
        |s| near.lifted[space.index_of(s).expect("generator lies in Q")],
        168,
        kernel_order as u64,
    );
    let group = Group::closure(&ug.gens, 4 * ug.order as usize)?;
    if group.order() as u64 != ug.order {
        return fail(format!("|H*| = {} but {} expected", group.order(), ug.order));
    }
    let orbit = mono::orbit_sign_sets(0, &ug.gens, 1 << 10)?;
    if orbit.len() as u64 != ug.predicted_orbit {
        return fail(format!("orbit {} but {} predicted", orbit.len(), ug.predicted_orbit));
    }
    let code = SphericalCode::from_sign_sets(N, orbit)?;
    Ok(HStar { space, quotient, f, qualifying, kernel_order, verdict, gens: ug.gens, group, code })
}

#[derive(Clone, Debug)]
pub struct ComplementSearch {
    pub split: bool,
    pub witness: Option<(MonoElt, MonoElt)>,
    pub pairs_tried: usize,
}

/// Decides whether `group` splits over the normal subgroup `normal`, given two
/// elements whose images generate the quotient. A complement holds exactly
/// one element of each of the cosets `normal·a`, `normal·b`, and those two
/// generate it.
pub fn nonsplit_complement_search(
    group: &Group<MonoElt>,
    normal: &Group<MonoElt>,
    a: &MonoElt,
    b: &MonoElt,
) -> Result<ComplementSearch> {
    const LIMIT: usize = 5000;
    if group.order() > LIMIT {
        return Err(Error::CapExceeded { what: "complement search group order", cap: LIMIT });
    }
    let q_order = group.order() / normal.order();
    let mut tried = 0;
    for e1 in normal.iter() {
        for e2 in normal.iter() {
            tried += 1;
            let (x, y) = (e1.op(a), e2.op(b));
            let c = Group::closure(&[x, y], group.order())?;
            if c.order() == q_order && normal.iter().filter(|n| c.contains(n)).count() == 1 {
                return Ok(ComplementSearch { split: true, witness: Some((x, y)), pairs_tried: tried });
            }
        }
    }
    Ok(ComplementSearch { split: false, witness: None, pairs_tried: tried })
}

/// Two elements of `group` whose permutation images generate the image of order `q_order`.
pub fn quotient_generator_pair(group: &Group<MonoElt>, q_order: usize) -> Result<(MonoElt, MonoElt)> {
    let elts: Vec<&MonoElt> = group.iter().collect();
    let perms: Vec<CoordPerm> = elts.iter().map(|g| g.perm).collect();
    for i in 0..perms.len() {
        if perms[i].order(64) != Some(2) {
            continue;
        }
        for j in 0..perms.len() {
            if perms[j].order(64) != Some(3) {
                continue;
            }
            if Group::closure(&[perms[i], perms[j]], q_order)?.order() == q_order {
                return Ok((*elts[i], *elts[j]));
            }
        }
    }
    Err(Error::NoCandidate("generating pair of the quotient".into()))
}

pub fn e01_group(sec: &SectionD4) -> Result<Group<MonoElt>> {
    sign_group(&sec.e01)
}

/// The involution `t`, its moved pairs and fixed points on `B0 ∖ {ω₀}`, and
/// the six-point word built from them.
pub fn six_point_word(sec: &SectionD4, t: &CoordPerm) -> Option<BitWord> {
    let pts: Vec<usize> = gf2::ones(sec.b0 & !1).collect();
    let fixed: Vec<usize> = pts.iter().copied().filter(|&p| t.apply(p) == p).collect();
    let a = *pts.iter().find(|&&p| t.apply(p) != p)?;
    let a2 = t.apply(a);
    let (dd, e) = fixed
        .iter()
        .flat_map(|&x| fixed.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| x < y && x ^ y == a ^ a2)?;
    let f = *fixed.iter().find(|&&p| p != dd && p != e)?;
    let u = sec.p01.apply(e);
    let v = sec.p01.apply(f);
    Some(crate::rm::set_word(&[u, v, a, a2, dd, f]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rm;
    use num_rational::Ratio;

    #[test]
    fn six_point_word_has_defect_two() {
        let sec = mono::section_builders_d4().unwrap();
        let q = Group::closure(&sec.q_gens, 200).unwrap();
        let rm2 = rm::build_rm(2, 4).unwrap();
        let mut seen = 0;
        for t in q.iter().filter(|t| t.order(8) == Some(2)) {
            let y = six_point_word(&sec, t).unwrap();
            assert_eq!(gf2::weight(y), 6);
            assert_eq!(rm::defect(&rm2, y).unwrap().k, 2);
            assert_eq!(t.image_of_set(y), y);
            assert!(sec.b01.sum(&sec.t0).contains(y));
            seen += 1;
        }
        assert_eq!(seen, 21);
    }

    #[test]
    fn h_star_route() {
        let sec = mono::section_builders_d4().unwrap();
        let hs = build_h_star_gl32_route(&sec).unwrap();
        assert_eq!(hs.space.z1().dim(), 8);
        assert_eq!(hs.space.h1_dim(), 2);
        assert!(hs.qualifying >= 1);
        assert_eq!(hs.kernel_order, 21);
        assert_eq!(hs.group.order(), 1344);
        assert_eq!(hs.code.len(), 64);
        let q = Ratio::new(1, 4);
        assert_eq!(sphere::cosine_set(&hs.code), BTreeSet::from([-q, Ratio::from_integer(0), q]));
    }

    #[test]
    fn h_star_does_not_split() {
        let sec = mono::section_builders_d4().unwrap();
        let hs = build_h_star_gl32_route(&sec).unwrap();
        let e = e01_group(&sec).unwrap();
        let (a, b) = quotient_generator_pair(&hs.group, 168).unwrap();
        let res = nonsplit_complement_search(&hs.group, &e, &a, &b).unwrap();
        assert!(!res.split);
        assert_eq!(res.pairs_tried, 64);
    }

    #[test]
    fn semidirect_product_splits() {
        let sec = mono::section_builders_d4().unwrap();
        let mut gens = SectionD4::sign_gens(&sec.e01);
        gens.extend(sec.q_gens.iter().map(|&q| MonoElt::perm(q)));
        let g = Group::closure(&gens, 2000).unwrap();
        assert_eq!(g.order(), 1344);
        let e = e01_group(&sec).unwrap();
        let (a, b) = quotient_generator_pair(&g, 168).unwrap();
        let res = nonsplit_complement_search(&g, &e, &a, &b).unwrap();
        assert!(res.split);
    }
}
