// The group H fixing both base points, its 64- and 128-point orbits and
// their projections, with the structural checks on H.

use fewcosine::forge::Workbench;
use fewcosine::sphere::{self, SphericalCode};
use fewcosine::Result;

fn show(name: &str, code: &SphericalCode) {
    println!(
        "{name}: {} vectors in dimension {}, cosines {}",
        code.len(),
        code.dim(),
        sphere::format_cosine_set(&sphere::cosine_set(code))
    );
}

pub fn run() -> Result<()> {
    let mut wb = Workbench::new();
    let fam = wb.nsc()?;
    let rep = &fam.report;
    println!("|X| = {}, |H| = {}, |H ∩ P| = {}", rep.x_order, rep.h_order, rep.h_meet_p);
    println!("O2(H): order {}, abelian {}, exponent {}", rep.o2_order, rep.o2_abelian, rep.o2_exponent);
    let failures = rep.failures();
    if failures.is_empty() {
        println!("all structure checks pass");
    } else {
        println!("failed: {}", failures.join("; "));
    }
    show("NSC_16_64", &fam.nsc16_64);
    show("NSC_15_64", &fam.nsc15_64);
    show("NSC_14_64", &fam.nsc14_64);
    show("NSC_16_128", &fam.nsc16_128);
    show("NSC_15_128", &fam.nsc15_128);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
