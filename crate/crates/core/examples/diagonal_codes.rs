// Diagonal codes from Mersenne-prime permutations: every invariant
// constituent of RM(2,d)/RM(1,d), its defect, and the resulting orbit.

use fewcosine::forge::dsc::{self, DiagonalModule};
use fewcosine::sphere;
use fewcosine::Result;

pub fn run(cases: &[(usize, usize)]) -> Result<()> {
    for &(d, m) in cases {
        let module = DiagonalModule::new(d, m)?;
        println!("d={d} m={m}: {} constituents", module.constituents.len());
        for i in 0..module.constituents.len() {
            match module.purity(i) {
                Ok(k) => {
                    let b = dsc::build_from_module(&module, i)?;
                    let projected = sphere::reduce(&b.code, &[0])?;
                    println!(
                        "  #{i}: defect {k}, {} vectors, cosines {}, projected {}",
                        b.code.len(),
                        sphere::format_cosine_set(&sphere::cosine_set(&b.code)),
                        sphere::format_cosine_set(&sphere::cosine_set(&projected)),
                    );
                }
                Err(e) => println!("  #{i}: {e}"),
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&[(3, 3), (4, 3), (5, 3), (5, 5)])
}
