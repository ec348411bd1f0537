#![allow(dead_code)]

use std::path::{Path, PathBuf};

use popmatch_core::Instance;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_instance(
    rng: &mut ChaCha8Rng,
    applicants: usize,
    houses: usize,
    max_applicant_cap: u32,
    max_house_cap: u32,
) -> Instance {
    let mut b = Instance::builder();
    for h in 0..houses {
        b.add_house(format!("h{h}"), rng.random_range(1..=max_house_cap));
    }
    for a in 0..applicants {
        let mut hs: Vec<usize> = (0..houses).collect();
        hs.shuffle(rng);
        let len = rng.random_range(1..=houses);
        let prefs: Vec<String> = hs[..len].iter().map(|h| format!("h{h}")).collect();
        b.add_applicant(format!("a{a}"), rng.random_range(1..=max_applicant_cap), prefs);
    }
    b.build().unwrap()
}

/// Every non-empty ordered subset of `houses`.
pub fn pref_lists(houses: &[&str]) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    fn go(houses: &[&str], cur: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for h in houses {
            if !cur.iter().any(|c| c == h) {
                cur.push(h.to_string());
                go(houses, cur, out);
                cur.pop();
            }
        }
    }
    go(houses, &mut Vec::new(), &mut out);
    out
}

/// Houses h1, h2, h3 with capacities 1, n, n+1; 2n applicants `a` with
/// h1 > h2 > h3 and one applicant `b` with h2 > h1.
pub fn crowd_example(n: u32) -> Instance {
    let mut b = Instance::builder();
    b.add_house("h1", 1).add_house("h2", n).add_house("h3", n + 1);
    for i in 1..=2 * n {
        b.add_applicant(format!("a{i}"), 1, ["h1", "h2", "h3"]);
    }
    b.add_applicant("b", 1, ["h2", "h1"]);
    b.build().unwrap()
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}
