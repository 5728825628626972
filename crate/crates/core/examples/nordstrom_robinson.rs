// The (16,256,6) binary code read off the sign sets of the 256-point code.
// Pass `--aut` to run the automorphism backtrack.

use fewcosine::forge::Workbench;
use fewcosine::sphere;
use fewcosine::Result;

pub fn run(with_aut: bool) -> Result<()> {
    let mut wb = Workbench::new();
    let bin = wb.opticode()?.binary.clone();
    println!("length {} words {}", bin.length(), bin.len());
    println!("minimum distance {:?}", sphere::min_distance(&bin));
    println!("distance distribution {:?}", sphere::distance_distribution(&bin));
    if let Some((u, v)) = sphere::nonlinearity_witness(&bin) {
        println!("{u:04x} + {v:04x} = {:04x} is not a codeword", u ^ v);
    }
    if with_aut {
        let rep = sphere::binary_automorphism_group(&bin, 100_000_000)?;
        println!("automorphism group order {}", rep.order);
        let stab = wb.optigroup()?.stabilizer.gens().to_vec();
        println!("contains the stabilizer of x0: {}", stab.iter().all(|g| rep.group.contains(g)));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(std::env::args().any(|a| a == "--aut"))
}
