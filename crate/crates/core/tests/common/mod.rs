#![allow(dead_code)]

use popmatch_core::Instance;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random instance; every applicant gets a non-empty random preference list.
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
