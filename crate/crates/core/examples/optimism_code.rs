// Twists AGL(4,2) by the noninner cocycle of GL(4,2) and takes the orbit of
// the all-ones vector: a 256-point code with cosines {-1, -1/4, 0, 1/4}.

use fewcosine::forge::optimism;
use fewcosine::rm;
use fewcosine::sphere;
use fewcosine::Result;

pub fn run() -> Result<()> {
    let og = optimism::build_optigroup()?;
    println!("kernel of the cocycle: order {}", og.kernel.order());
    let rm2 = rm::build_rm(2, optimism::D)?;
    for &a in &og.value_lifts {
        println!("  value lift {a:04x}: defect {}", rm::defect(&rm2, a)?.k);
    }
    println!("unidefect verdict: {:?}", og.verdict);
    println!("group order {} (stabilizer of x0: {})", og.order, og.stabilizer.order());

    let oc = optimism::build_opticode(&og)?;
    println!("code: {} vectors in dimension {}", oc.code.len(), oc.code.dim());
    println!("cosines {}", sphere::format_cosine_set(&sphere::cosine_set(&oc.code)));
    println!("sign-set weights {:?}", oc.binary.weight_set());
    let union = optimism::coset_union(&og);
    println!("equals the union of RM(1,4) cosets: {}", union == *oc.binary.words());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
