// Intersection numbers of the 64-point code in dimension 14.

use fewcosine::forge::Workbench;
use fewcosine::sphere;
use fewcosine::Result;

pub fn run() -> Result<()> {
    let mut wb = Workbench::new();
    let code = wb.nsc()?.nsc14_64.clone();
    let rep = sphere::association_scheme_check(&code);
    println!("relations by inner product {:?}", rep.relations);
    match &rep.intersection {
        Some(p) => {
            println!("association scheme with valencies {:?}", rep.valencies().unwrap_or_default());
            for (a, pa) in p.iter().enumerate() {
                for (b, pab) in pa.iter().enumerate() {
                    println!("  p[{a}][{b}] = {pab:?}");
                }
            }
        }
        None => println!("not a scheme: {:?}", rep.violation),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
