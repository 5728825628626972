// The 64-point code from a cocycle of GL(3,2) into J/E, and the check that
// the resulting group does not split over E.

use fewcosine::forge::nsc;
use fewcosine::mono;
use fewcosine::sphere;
use fewcosine::Result;

pub fn run() -> Result<()> {
    let sec = mono::section_builders_d4()?;
    let hs = nsc::build_h_star_gl32_route(&sec)?;
    println!("dim Z1 {}, dim H1 {}", hs.space.z1().dim(), hs.space.h1_dim());
    println!("{} qualifying cocycles; chosen kernel order {}", hs.qualifying, hs.kernel_order);
    println!("verdict {:?}", hs.verdict);
    println!("|H*| = {}", hs.group.order());
    println!(
        "orbit: {} vectors, cosines {}",
        hs.code.len(),
        sphere::format_cosine_set(&sphere::cosine_set(&hs.code))
    );
    let e = nsc::e01_group(&sec)?;
    let (a, b) = nsc::quotient_generator_pair(&hs.group, 168)?;
    let res = nsc::nonsplit_complement_search(&hs.group, &e, &a, &b)?;
    println!("complement over E found: {} ({} lift pairs tried)", res.split, res.pairs_tried);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
