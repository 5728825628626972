//! Named constructions, their expected data, and the summary table check.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde_json::json;

use crate::cocycle::{CocycleSpace, ModuleAction, UnidefectVerdict};
use crate::error::{Error, Result};
use crate::gf2::BitWord;
use crate::mono::{self, CoordPerm, Group, GroupElement, MonoElt, SectionD4};
use crate::rm;
use crate::sphere::{self, BinaryCode, Cosine, SphericalCode};

use super::dsc::{self, DscBuild};
use super::nsc::{self, HStar, NscFamily};
use super::optimism::{self, Opticode, Optigroup};

/// Lazily built shared pieces; building the 128- and 64-point codes needs
/// the twisted group, and everything on 16 points needs the sections.
#[derive(Default)]
pub struct Workbench {
    sections: Option<SectionD4>,
    og: Option<Optigroup>,
    opticode: Option<Opticode>,
    nsc: Option<NscFamily>,
    hstar: Option<HStar>,
    /// Sign set adjoined to `H` for the 128-point codes; defaults to `B1`.
    pub extra_sign: Option<BitWord>,
}

impl Workbench {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sections(&mut self) -> Result<&SectionD4> {
        if self.sections.is_none() {
            self.sections = Some(mono::section_builders_d4()?);
        }
        Ok(self.sections.as_ref().expect("just built"))
    }

    pub fn optigroup(&mut self) -> Result<&Optigroup> {
        if self.og.is_none() {
            self.og = Some(optimism::build_optigroup()?);
        }
        Ok(self.og.as_ref().expect("just built"))
    }

    pub fn opticode(&mut self) -> Result<&Opticode> {
        if self.opticode.is_none() {
            let oc = optimism::build_opticode(self.optigroup()?)?;
            self.opticode = Some(oc);
        }
        Ok(self.opticode.as_ref().expect("just built"))
    }

    pub fn nsc(&mut self) -> Result<&NscFamily> {
        if self.nsc.is_none() {
            self.sections()?;
            self.optigroup()?;
            let sec = self.sections.as_ref().expect("built");
            let extra = self.extra_sign.unwrap_or(sec.b1);
            let fam = nsc::build_h_and_nsc_family(self.og.as_ref().expect("built"), sec, extra)?;
            self.nsc = Some(fam);
        }
        Ok(self.nsc.as_ref().expect("just built"))
    }

    pub fn hstar(&mut self) -> Result<&HStar> {
        if self.hstar.is_none() {
            let hs = nsc::build_h_star_gl32_route(self.sections()?)?;
            self.hstar = Some(hs);
        }
        Ok(self.hstar.as_ref().expect("just built"))
    }

    /// Permutations of `H ∩ P`: linear maps fixing ω₁ on which `f̄` vanishes.
    pub fn h_meet_p(&mut self) -> Result<Vec<CoordPerm>> {
        let gens = self.sections()?.p01_gens();
        let og = self.optigroup()?;
        let p01 = Group::closure(&gens, 2000)?;
        let mut out = Vec::new();
        for x in p01.iter() {
            if og.lift_of(x)? == 0 {
                out.push(*x);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: &str, got: T, want: T) -> Self {
        let pass = got == want;
        Check::new(name, pass, format!("got {got:?}, expected {want:?}"))
    }
}

#[derive(Clone, Debug)]
pub struct Built {
    pub name: String,
    pub code: Option<SphericalCode>,
    pub binary: Option<BinaryCode>,
    pub checks: Vec<Check>,
    pub construction: serde_json::Value,
}

impl Built {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub const ENTRIES: &[&str] = &[
    "DSC_8_64",
    "DSC_7_64",
    "DSC_16_128",
    "DSC_32_256",
    "DSC_32_1024_K1",
    "DSC_32_1024_K2",
    "DSC_31_1024_K1",
    "DSC_31_1024_K2",
    "NSC_16_64",
    "NSC_15_64",
    "NSC_14_64",
    "NSC_16_128",
    "NSC_15_128",
    "NSC_16_64_GL32",
    "OPTICODE",
    "BC_16_256_6",
];

pub fn r(p: i64, q: i64) -> Cosine {
    Ratio::new(p, q)
}

pub fn tricosine(a: Cosine, b: Cosine, c: Cosine) -> BTreeSet<Cosine> {
    BTreeSet::from([a, b, c])
}

fn code_checks(code: &SphericalCode, size: usize, cosines: &BTreeSet<Cosine>) -> Vec<Check> {
    vec![
        Check::eq("cardinality", code.len(), size),
        Check::new(
            "cosines",
            sphere::cosine_set(code) == *cosines,
            format!(
                "got {}, expected {}",
                sphere::format_cosine_set(&sphere::cosine_set(code)),
                sphere::format_cosine_set(cosines)
            ),
        ),
    ]
}

fn dsc_entry(name: &str, build: DscBuild, drop: bool) -> Result<Built> {
    let code = if drop { sphere::reduce(&build.code, &[0])? } else { build.code.clone() };
    let l = usize::from(drop);
    let expected: BTreeSet<Cosine> = if drop {
        sphere::reduced_cosines(build.d, build.k, l).into_iter().collect()
    } else {
        let h = r(1, 1 << build.k);
        tricosine(-h, r(0, 1), h)
    };
    let mut checks = code_checks(&code, 1 << (build.m + build.d), &expected);
    checks.push(Check::new("both signs occur", build.both_signs, format!("defect {}", build.k)));
    if build.d == 3 && build.m == 3 {
        let g_normalizes = build.j.basis().iter().all(|&a| build.j.contains(build.g.image_of_set(a)));
        checks.push(Check::new("g normalizes J", g_normalizes, ""));
        let bin = sphere::to_binary(&build.code)?;
        let order = sphere::signed_automorphism_count(&bin, 100_000_000)?;
        checks.push(Check::new(
            "isometry group contains J<g>",
            order % (build.j.size() * 7) == 0,
            format!("signed permutation automorphisms: {order}"),
        ));
    }
    let construction = json!({
        "recipe": "diagonal",
        "d": build.d,
        "m": build.m,
        "constituent": build.index,
        "constituents": build.constituent_count,
        "minimal_polynomial": format!("{:#b}", build.poly),
        "defect": build.k,
        "dropped": if drop { vec![0] } else { vec![] },
        "lower_basis": build.j.basis().iter().map(|b| format!("{b:04x}")).collect::<Vec<_>>(),
    });
    Ok(Built { name: name.into(), code: Some(code), binary: None, checks, construction })
}

fn nsc_construction(wb: &mut Workbench, dropped: &[usize], extra: bool) -> Result<serde_json::Value> {
    let extra_sign = wb.nsc()?.report.extra_sign;
    let og = wb.optigroup()?;
    Ok(json!({
        "recipe": "restricted twisted group",
        "cocycle_generator_values": og.fbar.gen_values,
        "cocycle_packed": format!("{:#x}", og.fbar.packed),
        "extra_sign": if extra { Some(format!("{extra_sign:04x}")) } else { None },
        "dropped": dropped,
    }))
}

fn nsc_entry(wb: &mut Workbench, name: &str) -> Result<Built> {
    let q = r(1, 4);
    let (code, size, expected, dropped, extra): (SphericalCode, usize, BTreeSet<Cosine>, Vec<usize>, bool) = {
        let fam = wb.nsc()?;
        match name {
            "NSC_16_64" => (fam.nsc16_64.clone(), 64, tricosine(-q, r(0, 1), q), vec![], false),
            "NSC_15_64" => (fam.nsc15_64.clone(), 64, sphere::reduced_cosines(4, 2, 1).into(), vec![0], false),
            "NSC_14_64" => (fam.nsc14_64.clone(), 64, tricosine(r(-3, 7), r(-1, 7), r(1, 7)), vec![0, 1], false),
            "NSC_16_128" => (fam.nsc16_128.clone(), 128, tricosine(-q, r(0, 1), q), vec![], true),
            "NSC_15_128" => (fam.nsc15_128.clone(), 128, sphere::reduced_cosines(4, 2, 1).into(), vec![0], true),
            _ => return Err(Error::OutOfRange(format!("unknown entry {name}"))),
        }
    };
    let mut checks = code_checks(&code, size, &expected);
    let fam = wb.nsc()?;
    let failures = fam.report.failures();
    checks.push(Check::new("structure of H", failures.is_empty(), failures.join("; ")));
    let construction = nsc_construction(wb, &dropped, extra)?;
    Ok(Built { name: name.into(), code: Some(code), binary: None, checks, construction })
}

fn hstar_entry(wb: &mut Workbench) -> Result<Built> {
    let q = r(1, 4);
    let hs = wb.hstar()?;
    let code = hs.code.clone();
    let mut checks = code_checks(&code, 64, &tricosine(-q, r(0, 1), q));
    checks.push(Check::eq("|H*|", hs.group.order(), 1344));
    checks.push(Check::eq("kernel order", hs.kernel_order, 21));
    checks.push(Check::new(
        "unidefect 2",
        !matches!(hs.verdict, UnidefectVerdict::Fail { .. }),
        format!("{:?}", hs.verdict),
    ));
    let construction = json!({
        "recipe": "GL(3,2) cocycle into J/E",
        "cocycle_generator_values": hs.f.gen_values,
        "cocycle_packed": format!("{:#x}", hs.f.packed),
        "qualifying_cocycles": hs.qualifying,
    });
    let nsc_profiles = wb.nsc()?.nsc16_64.gram_profiles();
    checks.push(Check::new("Gram data equals the restricted route", code.gram_profiles() == nsc_profiles, ""));
    Ok(Built { name: "NSC_16_64_GL32".into(), code: Some(code), binary: None, checks, construction })
}

fn opticode_entry(wb: &mut Workbench) -> Result<Built> {
    let q = r(1, 4);
    let nsc64 = wb.nsc()?.nsc16_64.clone();
    let og = wb.optigroup()?;
    let verdict = og.verdict.clone();
    let stab = og.stabilizer.order();
    let order = og.order;
    let kernel = og.kernel.order();
    let values = og.value_lifts.clone();
    let construction = json!({
        "recipe": "twisted affine group",
        "cocycle_generator_values": og.fbar.gen_values,
        "cocycle_packed": format!("{:#x}", og.fbar.packed),
        "group_order": order,
    });
    let rm1 = og.module.rm1.elements();
    let oc = wb.opticode()?;
    let code = oc.code.clone();
    let mut checks = code_checks(&code, 256, &BTreeSet::from([r(-1, 1), -q, r(0, 1), q]));
    checks.push(Check::eq("sign-set weights", oc.binary.weight_set(), BTreeSet::from([0, 6, 8, 10, 16])));
    checks.push(Check::eq("kernel order", kernel, 2520));
    checks.push(Check::eq("stabilizer order", stab, 40320));
    checks.push(Check::eq("orbit-stabilizer", order, code.len() as u64 * stab as u64));
    let rm2 = rm::build_rm(2, 4)?;
    let defects: BTreeSet<u32> = values.iter().map(|&a| rm::defect(&rm2, a).map(|c| c.k)).collect::<Result<_>>()?;
    checks.push(Check::eq("nonzero values: count and defects", (values.len(), defects), (7, BTreeSet::from([2]))));
    checks.push(Check::eq("unidefect verdict", verdict, UnidefectVerdict::Strong));
    let alt: BTreeSet<BitWord> = sphere::to_binary(&nsc64)?
        .words()
        .iter()
        .flat_map(|&b| rm1.iter().map(move |&r| b ^ r))
        .collect();
    checks.push(Check::new("equals NSC_16_64 · (D∩R)", alt == *oc.binary.words(), ""));
    Ok(Built { name: "OPTICODE".into(), code: Some(code), binary: Some(oc.binary.clone()), checks, construction })
}

fn bc_entry(wb: &mut Workbench) -> Result<Built> {
    let b = wb.opticode()?.binary.clone();
    let mut checks = vec![
        Check::eq("length and size", (b.length(), b.len()), (16, 256)),
        Check::eq("minimum distance", sphere::min_distance(&b), Some(6)),
        Check::eq(
            "distance distribution from every word",
            sphere::distance_distribution(&b),
            Some(BTreeMap::from([(0, 1), (6, 112), (8, 30), (10, 112), (16, 1)])),
        ),
    ];
    let w = sphere::nonlinearity_witness(&b);
    checks.push(Check::new("nonlinear", w.is_some(), format!("{w:x?}")));
    let construction = json!({ "recipe": "sign rule on OPTICODE" });
    Ok(Built { name: "BC_16_256_6".into(), code: None, binary: Some(b), checks, construction })
}

pub fn build_entry(wb: &mut Workbench, name: &str) -> Result<Built> {
    match name {
        "DSC_8_64" => dsc_entry(name, dsc::build_dsc(3, 3, 0)?, false),
        "DSC_7_64" => dsc_entry(name, dsc::build_dsc(3, 3, 0)?, true),
        "DSC_16_128" => dsc_entry(name, dsc::build_dsc(4, 3, 0)?, false),
        "DSC_32_256" => dsc_entry(name, dsc::build_dsc_with_defect(5, 3, 1)?, false),
        "DSC_32_1024_K1" => dsc_entry(name, dsc::build_dsc_with_defect(5, 5, 1)?, false),
        "DSC_32_1024_K2" => dsc_entry(name, dsc::build_dsc_with_defect(5, 5, 2)?, false),
        "DSC_31_1024_K1" => dsc_entry(name, dsc::build_dsc_with_defect(5, 5, 1)?, true),
        "DSC_31_1024_K2" => dsc_entry(name, dsc::build_dsc_with_defect(5, 5, 2)?, true),
        "NSC_16_64" | "NSC_15_64" | "NSC_14_64" | "NSC_16_128" | "NSC_15_128" => nsc_entry(wb, name),
        "NSC_16_64_GL32" => hstar_entry(wb),
        "OPTICODE" => opticode_entry(wb),
        "BC_16_256_6" => bc_entry(wb),
        _ => Err(Error::OutOfRange(format!("unknown catalog entry {name:?}; known: {}", ENTRIES.join(", ")))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    /// The vectors match the reduction formula, not the printed cosines.
    MismatchWithErratum,
    Fail,
}

#[derive(Clone, Debug)]
pub struct Table1Row {
    pub symbol: String,
    pub dimension: usize,
    pub size: usize,
    pub printed: BTreeSet<Cosine>,
    pub formula: BTreeSet<Cosine>,
    pub computed: BTreeSet<Cosine>,
    pub computed_size: usize,
    pub computed_dimension: usize,
    pub status: RowStatus,
    /// Why no code was built, when the construction found no candidate.
    pub note: Option<String>,
}

fn row(symbol: &str, dimension: usize, size: usize, printed: BTreeSet<Cosine>, formula: BTreeSet<Cosine>, code: &SphericalCode) -> Table1Row {
    let computed = sphere::cosine_set(code);
    let shape_ok = code.len() == size && code.dim() == dimension;
    let status = if shape_ok && computed == printed {
        RowStatus::Pass
    } else if shape_ok && computed == formula {
        RowStatus::MismatchWithErratum
    } else {
        RowStatus::Fail
    };
    Table1Row {
        symbol: symbol.into(),
        dimension,
        size,
        printed,
        formula,
        computed,
        computed_size: code.len(),
        computed_dimension: code.dim(),
        status,
        note: None,
    }
}

/// Builds every row of the summary table and compares it with both the
/// printed cosines and the reduction formula.
pub fn verify_table1(wb: &mut Workbench) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for (d, m, k) in [(3, 3, 1), (5, 5, 1), (5, 5, 2)] {
        let built = match dsc::build_dsc_with_defect(d, m, k) {
            Ok(b) => Some(b),
            Err(Error::NoCandidate(_)) => None,
            Err(e) => return Err(e),
        };
        for l in [0, 1] {
            let f: BTreeSet<Cosine> = sphere::reduced_cosines(d, k, l).into_iter().collect();
            let n = (1 << d) - l;
            let symbol = format!("DSC_{n}_{} (k={k})", 1 << (m + d));
            match &built {
                Some(b) => {
                    let code = if l == 0 { b.code.clone() } else { sphere::reduce(&b.code, &[0])? };
                    rows.push(row(&symbol, n, 1 << (m + d), f.clone(), f, &code));
                }
                None => rows.push(Table1Row {
                    symbol,
                    dimension: n,
                    size: 1 << (m + d),
                    printed: f.clone(),
                    formula: f,
                    computed: BTreeSet::new(),
                    computed_size: 0,
                    computed_dimension: 0,
                    status: RowStatus::Fail,
                    note: Some(format!("no invariant constituent of defect {k} for d={d}, m={m}")),
                }),
            }
        }
    }
    let q = r(1, 4);
    let printed15 = tricosine(r(-1, 5), r(-1, 15), r(1, 3));
    let f16: BTreeSet<Cosine> = sphere::reduced_cosines(4, 2, 0).into();
    let f15: BTreeSet<Cosine> = sphere::reduced_cosines(4, 2, 1).into();
    let f14: BTreeSet<Cosine> = sphere::reduced_cosines(4, 2, 2).into();
    let fam = wb.nsc()?;
    rows.push(row("NSC_16_64", 16, 64, tricosine(-q, r(0, 1), q), f16.clone(), &fam.nsc16_64));
    rows.push(row("NSC_15_64", 15, 64, printed15.clone(), f15.clone(), &fam.nsc15_64));
    rows.push(row("NSC_14_64", 14, 64, tricosine(r(-3, 7), r(-1, 7), r(1, 7)), f14, &fam.nsc14_64));
    rows.push(row("NSC_16_128", 16, 128, tricosine(-q, r(0, 1), q), f16, &fam.nsc16_128));
    rows.push(row("NSC_15_128", 15, 128, printed15, f15, &fam.nsc15_128));
    Ok(rows)
}

/// One unidefect construction with the data entering the orbit-length law.
#[derive(Clone, Debug)]
pub struct UnidefectCase {
    pub name: &'static str,
    pub d: usize,
    pub k: u32,
    pub lower_order: u64,
    pub q_order: u64,
    pub kernel_order: u64,
    pub orbit_len: usize,
    pub inner_products: BTreeSet<i64>,
}

impl UnidefectCase {
    pub fn predicted_orbit(&self) -> u64 {
        self.lower_order * (self.q_order / self.kernel_order)
    }

    pub fn allowed(&self) -> BTreeSet<i64> {
        let s = 1i64 << (self.d as u32 - self.k);
        BTreeSet::from([-(1i64 << self.d), -s, 0, s])
    }

    pub fn holds(&self) -> bool {
        self.orbit_len as u64 == self.predicted_orbit() && self.inner_products.is_subset(&self.allowed())
    }
}

pub fn unidefect_cases(wb: &mut Workbench) -> Result<Vec<UnidefectCase>> {
    let mut cases = Vec::new();
    for (name, d, m, k) in [("DSC_8_64", 3, 3, 1), ("DSC_32_256", 5, 3, 1), ("DSC_32_1024_K2", 5, 5, 2)] {
        let b = dsc::build_dsc_with_defect(d, m, k)?;
        cases.push(UnidefectCase {
            name,
            d,
            k: b.k,
            lower_order: b.j.size(),
            q_order: 1,
            kernel_order: 1,
            orbit_len: b.code.len(),
            inner_products: b.code.inner_products(),
        });
    }
    let (code, stab) = {
        let og = wb.optigroup()?;
        let stab = og.stabilizer.order() as u64;
        (wb.opticode()?.code.clone(), stab)
    };
    cases.push(UnidefectCase {
        name: "OPTICODE",
        d: 4,
        k: 2,
        lower_order: 32,
        q_order: optimism::AGL_ORDER,
        kernel_order: stab,
        orbit_len: code.len(),
        inner_products: code.inner_products(),
    });
    let h_meet_p = wb.h_meet_p()?.len() as u64;
    let nsc64 = wb.nsc()?.nsc16_64.clone();
    cases.push(UnidefectCase {
        name: "NSC_16_64",
        d: 4,
        k: 2,
        lower_order: 8,
        q_order: 1344,
        kernel_order: h_meet_p,
        orbit_len: nsc64.len(),
        inner_products: nsc64.inner_products(),
    });
    let hs = wb.hstar()?;
    cases.push(UnidefectCase {
        name: "NSC_16_64_GL32",
        d: 4,
        k: 2,
        lower_order: 8,
        q_order: 168,
        kernel_order: hs.kernel_order as u64,
        orbit_len: hs.code.len(),
        inner_products: hs.code.inner_products(),
    });
    Ok(cases)
}

pub const SUBGROUP_PRESETS: &[&str] = &["nsc", "hstar", "gl", "e01"];

/// Generators for the orbit-union search.
pub fn subgroup_preset(wb: &mut Workbench, name: &str, d: usize) -> Result<Vec<MonoElt>> {
    let n = 1 << d;
    if name == "gl" {
        let rm1 = rm::build_rm(1, d)?;
        let mut gens: Vec<MonoElt> = rm1.space().basis().iter().map(|&a| MonoElt::sign(a, n)).collect();
        gens.extend(mono::gl_generators(d)?.into_iter().map(MonoElt::perm));
        return Ok(gens);
    }
    if !SUBGROUP_PRESETS.contains(&name) {
        return Err(Error::OutOfRange(format!("unknown subgroup preset {name:?}; known: {}", SUBGROUP_PRESETS.join(", "))));
    }
    if d != 4 {
        return Err(Error::OutOfRange(format!("preset {name} lives on 16 points (d = 4)")));
    }
    let mut gens = SectionD4::sign_gens(&wb.sections()?.e01);
    let perms: Vec<CoordPerm> = match name {
        "nsc" => wb.h_meet_p()?,
        "hstar" => {
            let hs = wb.hstar()?;
            hs.f.kernel_indices().into_iter().map(|i| *hs.space.element(i)).collect()
        }
        _ => Vec::new(),
    };
    if !perms.is_empty() {
        let small = Group::closure(&perms, perms.len())?.with_small_generating_set();
        gens.extend(small.gens().iter().map(|&p| MonoElt::perm(p)));
    }
    Ok(gens)
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub preset: String,
    pub order: usize,
    pub module_dim: usize,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
    /// Kernel order of each noninner cocycle, counted.
    pub noninner_kernels: BTreeMap<usize, usize>,
    pub noninner_kernel_abelian: Option<bool>,
}

pub const COHOMOLOGY_PRESETS: &[&str] = &["gl32-std3", "gl32-trivial", "gl42-m6"];

fn summarize<G: GroupElement>(preset: &str, space: &CocycleSpace<G>, check_abelian: bool) -> Result<CohomologyReport> {
    let mut noninner_kernels = BTreeMap::new();
    let mut abelian = None;
    for u in space.noninner_candidates() {
        let f = space.derivation(u)?;
        *noninner_kernels.entry(f.kernel_order()).or_insert(0) += 1;
        if check_abelian && abelian.is_none() {
            abelian = Some(space.kernel(&f)?.is_abelian());
        }
    }
    Ok(CohomologyReport {
        preset: preset.into(),
        order: space.order(),
        module_dim: space.action().dim(),
        z1: space.z1().dim(),
        b1: space.b1().dim(),
        h1: space.h1_dim(),
        noninner_kernels,
        noninner_kernel_abelian: abelian,
    })
}

pub fn cohomology_preset(preset: &str) -> Result<CohomologyReport> {
    match preset {
        "gl32-std3" => {
            let space = CocycleSpace::new(ModuleAction::natural(mono::gl_matrix_generators(3))?, 1000)?;
            summarize(preset, &space, true)
        }
        "gl32-trivial" => {
            let space = CocycleSpace::new(ModuleAction::trivial(mono::gl_matrix_generators(3), 1)?, 1000)?;
            summarize(preset, &space, true)
        }
        "gl42-m6" => {
            let m = optimism::gl42_module()?;
            summarize(preset, &m.space, false)
        }
        _ => Err(Error::OutOfRange(format!(
            "unknown cohomology preset {preset:?}; known: {}",
            COHOMOLOGY_PRESETS.join(", ")
        ))),
    }
}
