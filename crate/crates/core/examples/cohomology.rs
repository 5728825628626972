// First cohomology of GL(3,2) on its natural module and of GL(4,2) on
// RM(2,4)/RM(1,4), with the kernels of the noninner cocycles.

use fewcosine::forge::catalog;
use fewcosine::Result;

pub fn run(presets: &[&str]) -> Result<()> {
    for preset in presets {
        let rep = catalog::cohomology_preset(preset)?;
        println!("{preset}: |G| = {}, module dim {}", rep.order, rep.module_dim);
        println!("  dim Z1 = {}, dim B1 = {}, dim H1 = {}", rep.z1, rep.b1, rep.h1);
        for (k, n) in &rep.noninner_kernels {
            println!("  {n} noninner cocycles with kernel of order {k}");
        }
        if let Some(ab) = rep.noninner_kernel_abelian {
            println!("  noninner kernel abelian: {ab}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(catalog::COHOMOLOGY_PRESETS)
}
