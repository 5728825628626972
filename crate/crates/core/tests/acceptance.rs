// Acceptance checks, one line per criterion. All comparisons are exact.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;

use fewcosine::forge::catalog::{self, RowStatus};
use fewcosine::forge::dsc::{self, DiagonalModule};
use fewcosine::forge::nsc;
use fewcosine::forge::optimism;
use fewcosine::forge::search::{self, SearchConfig};
use fewcosine::forge::{build_entry, Workbench};
use fewcosine::gf2;
use fewcosine::rm;
use fewcosine::sphere::{self, Cosine};
use fewcosine::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(checks: Vec<(&str, bool)>) -> Outcome {
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            format!("failed: {}", failed.join("; "))
        },
    }
}

fn r(p: i64, q: i64) -> Cosine {
    Ratio::new(p, q)
}

fn tri(h: Cosine) -> BTreeSet<Cosine> {
    BTreeSet::from([-h, r(0, 1), h])
}

fn reed_muller_facts(_: &mut Workbench) -> Result<Outcome> {
    let rm1 = rm::build_rm(1, 4)?;
    let rm2 = rm::build_rm(2, 4)?;
    let mut weight_law = true;
    for a in rm2.codewords() {
        let c = rm::defect(&rm2, a)?;
        let w = gf2::weight(a);
        weight_law &= c.clean == (w != 8);
        if c.clean && c.k > 0 {
            weight_law &= rm::clean_weights(4, c.k).contains(&w);
        }
    }
    let mut cosets: BTreeMap<u32, usize> = BTreeMap::new();
    let mut clean_law = true;
    let mut seen = BTreeSet::new();
    for a in rm2.codewords() {
        let rep = rm1.space().reduce(a);
        if rep != 0 && seen.insert(rep) {
            let k = rm::defect(&rm2, rep)?.k;
            *cosets.entry(k).or_default() += 1;
            clean_law &= rm::coset_clean_count(&rm2, rep)? == 1 << (2 * k);
        }
    }
    Ok(outcome(vec![
        ("dim RM(2,4) = 11", rm2.dim() == 11),
        ("|RM(2,4)| = 2048", rm2.codewords().len() == 2048),
        ("weight law", weight_law),
        ("clean-count law", clean_law),
        ("35 defect-1 and 28 defect-2 cosets", cosets == BTreeMap::from([(1, 35), (2, 28)])),
    ]))
}

fn cohomology_dimensions(_: &mut Workbench) -> Result<Outcome> {
    let gl3 = catalog::cohomology_preset("gl32-std3")?;
    let gl4 = catalog::cohomology_preset("gl42-m6")?;
    Ok(outcome(vec![
        ("GL(3,2): dim Z1 = 4", gl3.z1 == 4),
        ("GL(3,2): dim H1 = 1", gl3.h1 == 1),
        ("GL(3,2): noninner kernels of order 21", gl3.noninner_kernels.keys().eq([21].iter())),
        ("GL(3,2): noninner kernel nonabelian", gl3.noninner_kernel_abelian == Some(false)),
        ("GL(4,2): dim H1 = 1", gl4.h1 == 1),
        ("GL(4,2): 8 noninner cocycles with kernel 2520", gl4.noninner_kernels.get(&2520) == Some(&8)),
    ]))
}

fn optimism_suite(wb: &mut Workbench) -> Result<Outcome> {
    let stab = wb.optigroup()?.stabilizer.order();
    let union = optimism::coset_union(wb.optigroup()?);
    let oc = wb.opticode()?;
    let q = r(1, 4);
    let b = &oc.binary;
    let allowed = BTreeSet::from([0, 6, 8, 10, 16]);
    let dist = BTreeMap::from([(0, 1), (6, 112), (8, 30), (10, 112), (16, 1)]);
    Ok(outcome(vec![
        ("|OC| = 256", oc.code.len() == 256),
        ("cosines {-1, -1/4, 0, 1/4}", sphere::cosine_set(&oc.code) == BTreeSet::from([r(-1, 1), -q, r(0, 1), q])),
        ("sign-set weights", b.weight_set().is_subset(&allowed)),
        ("stabilizer order 40320", stab == 40320),
        ("minimum distance 6", sphere::min_distance(b) == Some(6)),
        ("distance distribution from every word", sphere::distance_distribution(b) == Some(dist)),
        ("nonlinearity witness", sphere::nonlinearity_witness(b).is_some()),
        ("coset-union construction agrees", union == *b.words()),
    ]))
}

fn binary_automorphisms(wb: &mut Workbench) -> Result<Outcome> {
    let b = wb.opticode()?.binary.clone();
    let rep = sphere::binary_automorphism_group(&b, 100_000_000)?;
    let stab = wb.optigroup()?.stabilizer.clone();
    Ok(outcome(vec![
        ("order 40320", rep.order == 40320),
        ("contains the stabilizer of x0", stab.gens().iter().all(|g| rep.group.contains(g))),
        ("stabilizer has order 40320", stab.order() == 40320),
    ]))
}

fn nsc_family(wb: &mut Workbench) -> Result<Outcome> {
    let rows = catalog::verify_table1(wb)?;
    let status = |s: &str| rows.iter().find(|r| r.symbol == s).map(|r| r.status.clone());
    let fam = wb.nsc()?;
    let q = r(1, 4);
    let fifteen = BTreeSet::from([r(-1, 3), r(-1, 15), r(1, 5)]);
    let formula: BTreeSet<Cosine> = sphere::reduced_cosines(4, 2, 1).into_iter().collect();
    Ok(outcome(vec![
        ("NSC16,64", fam.nsc16_64.len() == 64 && sphere::cosine_set(&fam.nsc16_64) == tri(q)),
        (
            "NSC14,64",
            fam.nsc14_64.len() == 64 && sphere::cosine_set(&fam.nsc14_64) == BTreeSet::from([r(-3, 7), r(-1, 7), r(1, 7)]),
        ),
        ("NSC16,128", fam.nsc16_128.len() == 128 && sphere::cosine_set(&fam.nsc16_128) == tri(q)),
        ("NSC15,64 cosines", sphere::cosine_set(&fam.nsc15_64) == fifteen),
        ("NSC15,128 cosines", sphere::cosine_set(&fam.nsc15_128) == fifteen),
        ("reduction formula reproduced", fifteen == formula),
        ("table rows 16/14 pass", [status("NSC_16_64"), status("NSC_14_64"), status("NSC_16_128")].iter().all(|s| *s == Some(RowStatus::Pass))),
        (
            "NSC15 rows flagged",
            status("NSC_15_64") == Some(RowStatus::MismatchWithErratum) && status("NSC_15_128") == Some(RowStatus::MismatchWithErratum),
        ),
    ]))
}

fn structure_checks(wb: &mut Workbench) -> Result<Outcome> {
    let rep = wb.nsc()?.report.clone();
    let o2_abelian = wb.nsc()?.o2.is_abelian();
    let sec = wb.sections()?.clone();
    let hs = wb.hstar()?;
    let e = nsc::e01_group(&sec)?;
    let (a, b) = nsc::quotient_generator_pair(&hs.group, 168)?;
    let split = nsc::nonsplit_complement_search(&hs.group, &e, &a, &b)?;
    Ok(outcome(vec![
        ("|H| = 10752", rep.h_order == 10752),
        ("O2(H) abelian", rep.o2_abelian && o2_abelian),
        ("|O2(H)| = 64", rep.o2_order == 64),
        ("O2(H) exponent 4", rep.o2_exponent == 4),
        ("O2(H) regular on the 64-point code", rep.o2_regular),
        ("H* has no complement over E", !split.split),
        ("all 64 lift pairs tried", split.pairs_tried == 64),
    ]))
}

fn diagonal_codes(_: &mut Workbench) -> Result<Outcome> {
    let small = dsc::build_dsc(3, 3, 0)?;
    let module = DiagonalModule::new(5, 5)?;
    let mut cosines = BTreeSet::new();
    let mut projected = BTreeSet::new();
    let mut sizes_ok = true;
    let mut signs_ok = true;
    for i in 0..module.constituents.len() {
        let b = dsc::build_from_module(&module, i)?;
        sizes_ok &= b.code.len() == 1024;
        signs_ok &= b.both_signs;
        cosines.insert(sphere::cosine_set(&b.code));
        projected.insert(sphere::cosine_set(&sphere::reduce(&b.code, &[0])?));
    }
    let want = BTreeSet::from([tri(r(1, 2)), tri(r(1, 4))]);
    let want_projected = BTreeSet::from([
        BTreeSet::from([r(-17, 31), r(-1, 31), r(15, 31)]),
        BTreeSet::from([r(-9, 31), r(-1, 31), r(7, 31)]),
    ]);
    let found: Vec<String> = cosines.iter().map(sphere::format_cosine_set).collect();
    let mut out = outcome(vec![
        ("d=m=3: 64 vectors", small.code.len() == 64),
        ("d=m=3: cosines {0, ±1/2}", sphere::cosine_set(&small.code) == tri(r(1, 2))),
        ("d=m=3: both signs", small.both_signs),
        ("d=m=5: 1024 vectors each", sizes_ok),
        ("d=m=5: both signs", signs_ok),
        ("d=m=5: cosines {0, ±1/2} and {0, ±1/4}", cosines == want),
        ("d=5, l=1: {-17/31, -1/31, 15/31} and {-9/31, -1/31, 7/31}", projected == want_projected),
    ]);
    out.detail = format!("{}; d=m=5 constituents give {}", out.detail, found.join(" and "));
    Ok(out)
}

fn unidefect_suite(wb: &mut Workbench) -> Result<Outcome> {
    let cases = catalog::unidefect_cases(wb)?;
    let checks: Vec<(String, bool)> = cases.iter().map(|c| (c.name.to_string(), c.holds())).collect();
    let checks = checks.iter().map(|(n, ok)| (n.as_str(), *ok)).collect();
    Ok(outcome(checks))
}

fn search_and_scheme(wb: &mut Workbench) -> Result<Outcome> {
    let gens = catalog::subgroup_preset(wb, "nsc", 4)?;
    let res = search::procedure51_search(&SearchConfig::new(4, gens))?;
    let tricosine_64 = res.hits.iter().any(|h| h.size == 64 && h.cosines.len() == 3);
    let built = build_entry(wb, "NSC_14_64")?;
    let code = built.code.expect("spherical entry");
    let scheme = sphere::association_scheme_check(&code);
    let complete = scheme
        .intersection
        .as_ref()
        .is_some_and(|p| p.len() == 4 && p.iter().all(|pa| pa.len() == 4 && pa.iter().all(|pab| pab.len() == 4)));
    let mut out = outcome(vec![
        ("2048 sign vectors scanned", res.a0_size == 2048),
        ("scan complete", !res.truncated),
        ("64-vector tricosine union found", tricosine_64),
        ("NSC14,64 intersection numbers complete", complete),
    ]);
    out.detail = format!("{}; valencies {:?}", out.detail, scheme.valencies().unwrap_or_default());
    Ok(out)
}

type Criterion = (&'static str, Duration, fn(&mut Workbench) -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Reed-Muller facts", Duration::from_secs(1), reed_muller_facts),
        ("cohomology dimensions", Duration::from_secs(60), cohomology_dimensions),
        ("optimism code suite", Duration::from_secs(60), optimism_suite),
        ("binary automorphism group", Duration::from_secs(600), binary_automorphisms),
        ("64- and 128-point family", Duration::from_secs(120), nsc_family),
        ("structure checks", Duration::from_secs(120), structure_checks),
        ("diagonal codes", Duration::from_secs(120), diagonal_codes),
        ("unidefect orbit law", Duration::from_secs(600), unidefect_suite),
        ("orbit-union search and scheme", Duration::from_secs(300), search_and_scheme),
    ];
    let mut wb = Workbench::new();
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check(&mut wb);
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && elapsed <= *limit, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let timing = if elapsed <= *limit { String::new() } else { format!("; over the {limit:?} limit") };
        println!(
            "{} criterion {}: {name} ({detail}{timing}) [{:.2?}]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed
        );
        if !pass {
            failures += 1;
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
