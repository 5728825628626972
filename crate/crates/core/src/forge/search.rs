//! Scanning unions of orbits on the ±1 vectors of RM(2,d) for few-cosine codes.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{self, BitWord};
use crate::mono::{self, MonoElt};
use crate::rm;
use crate::sphere::{self, Cosine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AntipodalPolicy {
    Include,
    #[default]
    Exclude,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub d: usize,
    pub gens: Vec<MonoElt>,
    pub max_cosines: usize,
    pub antipodal: AntipodalPolicy,
    pub min_arity: usize,
    pub max_arity: usize,
    pub hit_cap: usize,
}

impl SearchConfig {
    pub fn new(d: usize, gens: Vec<MonoElt>) -> Self {
        SearchConfig {
            d,
            gens,
            max_cosines: 3,
            antipodal: AntipodalPolicy::Exclude,
            min_arity: 2,
            max_arity: usize::MAX,
            hit_cap: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub orbits: Vec<usize>,
    pub size: usize,
    pub cosines: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub a0_size: usize,
    /// Each orbit as sorted sign sets.
    pub orbits: Vec<Vec<BitWord>>,
    pub hits: Vec<SearchHit>,
    pub truncated: bool,
}

impl SearchResult {
    pub fn union(&self, hit: &SearchHit) -> Vec<BitWord> {
        let mut out: Vec<BitWord> = hit.orbits.iter().flat_map(|&i| self.orbits[i].iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

/// Mask over weights `|A Δ B|` of pairs drawn from `x` and `y` (distinct when same).
fn weight_mask(x: &[BitWord], y: &[BitWord], same: bool) -> u64 {
    let mut m = 0u64;
    for (i, &a) in x.iter().enumerate() {
        let rest = if same { &y[i + 1..] } else { y };
        for &b in rest {
            m |= 1 << gf2::weight(a ^ b);
        }
    }
    m
}

struct Scan<'a> {
    cfg: &'a SearchConfig,
    self_mask: &'a [u64],
    pair_mask: &'a [Vec<u64>],
    sizes: &'a [usize],
    found: &'a AtomicUsize,
}

impl Scan<'_> {
    fn dfs(&self, chosen: &mut Vec<usize>, mask: u64, out: &mut Vec<(Vec<usize>, u64)>) -> bool {
        if self.found.load(Ordering::Relaxed) >= self.cfg.hit_cap {
            return false;
        }
        if chosen.len() >= self.cfg.min_arity {
            out.push((chosen.clone(), mask));
            self.found.fetch_add(1, Ordering::Relaxed);
        }
        if chosen.len() >= self.cfg.max_arity {
            return true;
        }
        let last = *chosen.last().expect("nonempty");
        for next in last + 1..self.self_mask.len() {
            let mut m = mask | self.self_mask[next];
            for &c in chosen.iter() {
                m |= self.pair_mask[c][next];
            }
            if m.count_ones() as usize > self.cfg.max_cosines {
                continue;
            }
            chosen.push(next);
            let go_on = self.dfs(chosen, m, out);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn check_action(cfg: &SearchConfig, rm2: &rm::RmCode) -> Result<()> {
    let n = 1usize << cfg.d;
    for (i, g) in cfg.gens.iter().enumerate() {
        if g.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: g.len() });
        }
        if !rm2.contains(g.signs) {
            return Err(Error::Verification(format!("generator {i} has sign set {:#x} outside RM(2,{})", g.signs, cfg.d)));
        }
        if let Some(&b) = rm2.space().basis().iter().find(|&&b| !rm2.contains(g.perm.image_of_set(b))) {
            return Err(Error::Verification(format!("generator {i} moves {b:#x} out of RM(2,{})", cfg.d)));
        }
    }
    Ok(())
}

/// Partitions the RM(2,d) sign vectors into orbits and lists the orbit unions
/// with at most `max_cosines` distinct inner products. Hits are sorted by
/// orbit list; `truncated` is set when the cap stopped the scan.
pub fn procedure51_search(cfg: &SearchConfig) -> Result<SearchResult> {
    if cfg.d > 5 || cfg.d < 2 {
        return Err(Error::OutOfRange(format!("orbit-union search needs 2 <= d <= 5, got {}", cfg.d)));
    }
    let rm2 = rm::build_rm(2, cfg.d)?;
    check_action(cfg, &rm2)?;
    let a0 = rm2.codewords();
    let n = 1usize << cfg.d;

    let mut orbit_of = std::collections::HashMap::with_capacity(a0.len());
    let mut orbits: Vec<Vec<BitWord>> = Vec::new();
    for &a in &a0 {
        if orbit_of.contains_key(&a) {
            continue;
        }
        let mut orb = mono::orbit_sign_sets(a, &cfg.gens, a0.len())?;
        orb.sort_unstable();
        for &b in &orb {
            orbit_of.insert(b, orbits.len());
        }
        orbits.push(orb);
    }
    orbits.sort_by_key(|o| (o.len(), o[0]));

    let strip = if cfg.antipodal == AntipodalPolicy::Exclude { !(1u64 << n) } else { u64::MAX };
    let self_mask: Vec<u64> = orbits.iter().map(|o| weight_mask(o, o, true) & strip).collect();
    let pair_mask: Vec<Vec<u64>> = (0..orbits.len())
        .into_par_iter()
        .map(|i| {
            (0..orbits.len())
                .map(|j| if i == j { self_mask[i] } else { weight_mask(&orbits[i], &orbits[j], false) & strip })
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    let found = AtomicUsize::new(0);
    let scan = Scan { cfg, self_mask: &self_mask, pair_mask: &pair_mask, sizes: &sizes, found: &found };

    let per_start: Vec<(Vec<(Vec<usize>, u64)>, bool)> = (0..orbits.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            if self_mask[i].count_ones() as usize <= cfg.max_cosines {
                let complete = scan.dfs(&mut vec![i], self_mask[i], &mut out);
                (out, !complete)
            } else {
                (out, false)
            }
        })
        .collect();

    let mut truncated = false;
    let mut raw: Vec<(Vec<usize>, u64)> = Vec::new();
    for (hits, t) in per_start {
        truncated |= t;
        raw.extend(hits);
    }
    raw.sort();
    if raw.len() > cfg.hit_cap {
        raw.truncate(cfg.hit_cap);
        truncated = true;
    }
    let hits = raw
        .into_iter()
        .map(|(orbs, mask)| {
            let cosines: BTreeSet<Cosine> = gf2::ones(mask)
                .map(|w| Cosine::new(n as i64 - 2 * w as i64, n as i64))
                .collect();
            SearchHit {
                size: orbs.iter().map(|&i| scan.sizes[i]).sum(),
                orbits: orbs,
                cosines: cosines.iter().map(sphere::format_cosine).collect(),
            }
        })
        .collect();
    Ok(SearchResult { a0_size: a0.len(), orbits, hits, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::CoordPerm;

    #[test]
    fn orthogonal_frames_only_with_one_cosine() {
        let rm1 = rm::build_rm(1, 3).unwrap();
        let mut gens: Vec<MonoElt> = rm1.space().basis().iter().map(|&a| MonoElt::sign(a, 8)).collect();
        gens.push(MonoElt::perm(CoordPerm::identity(8)));
        let mut cfg = SearchConfig::new(3, gens);
        cfg.max_cosines = 1;
        let res = procedure51_search(&cfg).unwrap();
        assert_eq!(res.a0_size, 128);
        assert!(res.hits.iter().all(|h| h.cosines == vec!["0".to_string()]));
    }

    #[test]
    fn rejects_foreign_generators() {
        let mut cfg = SearchConfig::new(4, vec![MonoElt::sign(0b1111, 16)]);
        cfg.hit_cap = 1000;
        let res = procedure51_search(&cfg).unwrap();
        assert!(res.truncated);
        assert_eq!(res.hits.len(), 1000);
        let cfg = SearchConfig::new(4, vec![MonoElt::sign(0b1, 16)]);
        assert!(matches!(procedure51_search(&cfg), Err(Error::Verification(_))));
        let mut images: Vec<usize> = (0..16).collect();
        images.swap(0, 1);
        let p = CoordPerm::from_images(&images).unwrap();
        let cfg = SearchConfig::new(4, vec![MonoElt::perm(p)]);
        assert!(matches!(procedure51_search(&cfg), Err(Error::Verification(_))));
    }
}
