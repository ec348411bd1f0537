mod common;

use popmatch_core::model::enumerate_matchings;
use popmatch_core::pareto::{find_pareto_max, is_pareto_optimal, max_matching_size, rank_sum};
use popmatch_core::votes::is_pareto_optimal_brute_force;

use common::{random_instance, rng};

const LIMIT: u64 = 1_000_000;

#[test]
fn certifier_and_construction_agree_with_brute_force() {
    let mut r = rng(7);
    for i in 0..800 {
        let na = 1 + i % 5;
        let nh = 1 + (i / 5) % 4;
        let inst = random_instance(&mut r, na, nh, 1, 3);
        let all = enumerate_matchings(&inst, LIMIT).unwrap();
        for m in &all {
            let poly = is_pareto_optimal(&inst, m).unwrap();
            let bf = is_pareto_optimal_brute_force(&inst, m, LIMIT).unwrap();
            assert_eq!(poly.optimal, bf.holds, "{inst:?} {m:?}");
        }
        let best = find_pareto_max(&inst).unwrap();
        assert!(is_pareto_optimal_brute_force(&inst, &best, LIMIT).unwrap().holds);
        let max = all.iter().map(|m| m.len()).max().unwrap();
        assert_eq!(best.len(), max);
        assert_eq!(max_matching_size(&inst).unwrap(), max);
        let least = all.iter().filter(|m| m.len() == max).map(|m| rank_sum(&inst, m)).min().unwrap();
        assert_eq!(rank_sum(&inst, &best), least);
    }
}
