// Classifies every word of RM(2,4) by defect and checks the weight and
// clean-count laws on each coset of RM(1,4).

use std::collections::{BTreeMap, BTreeSet};

use fewcosine::rm::{self, DefectClass};
use fewcosine::Result;

pub fn run() -> Result<()> {
    let d = 4;
    let rm1 = rm::build_rm(1, d)?;
    let rm2 = rm::build_rm(2, d)?;
    println!("RM(1,{d}): dim {} size {}", rm1.dim(), rm1.space().size());
    println!("RM(2,{d}): dim {} size {}", rm2.dim(), rm2.space().size());
    println!("weights of RM(2,{d}): {:?}", rm2.weight_set());

    let mut by_class: BTreeMap<DefectClass, BTreeSet<u32>> = BTreeMap::new();
    for a in rm2.codewords() {
        let c = rm::defect(&rm2, a)?;
        by_class.entry(c).or_default().insert(fewcosine::gf2::weight(a));
    }
    for (c, weights) in &by_class {
        let tag = if c.clean { "clean" } else { "midset" };
        println!("defect {} {tag}: weights {weights:?}", c.k);
    }

    let mut seen = BTreeSet::new();
    let mut cosets: BTreeMap<u32, usize> = BTreeMap::new();
    for a in rm2.codewords() {
        let rep = rm1.space().reduce(a);
        if rep == 0 || !seen.insert(rep) {
            continue;
        }
        let k = rm::defect(&rm2, rep)?.k;
        *cosets.entry(k).or_default() += 1;
        let clean = rm::coset_clean_count(&rm2, rep)?;
        assert_eq!(clean, 1 << (2 * k), "clean-count law");
    }
    for (k, n) in &cosets {
        println!("nonzero cosets of defect {k}: {n} (each with {} clean words in its anchor coset)", 1 << (2 * k));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
