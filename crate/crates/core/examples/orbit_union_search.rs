// Scans unions of orbits of a subgroup on the RM(2,4) sign vectors for
// codes with at most three cosines.

use fewcosine::forge::catalog;
use fewcosine::forge::search::{self, SearchConfig};
use fewcosine::forge::Workbench;
use fewcosine::Result;

pub fn run(preset: &str, max_hits: usize) -> Result<()> {
    let mut wb = Workbench::new();
    let gens = catalog::subgroup_preset(&mut wb, preset, 4)?;
    let mut cfg = SearchConfig::new(4, gens);
    cfg.hit_cap = max_hits;
    let res = search::procedure51_search(&cfg)?;
    println!("{} sign vectors in {} orbits", res.a0_size, res.orbits.len());
    println!("{} hits{}", res.hits.len(), if res.truncated { " (truncated)" } else { "" });
    for hit in res.hits.iter().filter(|h| h.size == 64).take(5) {
        println!("  orbits {:?}: {} vectors, cosines {:?}", hit.orbits, hit.size, hit.cosines);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let preset = std::env::args().nth(1).unwrap_or_else(|| "nsc".into());
    run(&preset, 100_000)
}
