mod common;

use popmatch_core::capopt::{
    min_max_pareto_perfect, min_max_pareto_perfect_exact, min_sum_pareto_perfect, min_sum_pop_perfect_exact,
    min_sum_pop_perfect_increase, ExactSearch,
};
use popmatch_core::chapop::is_popular_cha;
use popmatch_core::pareto::max_matching_size;
use popmatch_core::votes::{is_pareto_optimal_brute_force, is_popular_brute_force};
use popmatch_core::{Instance, PopularityNotion};

use common::{random_instance, rng};

const LIMIT: u64 = 1_000_000;

fn instances() -> Vec<Instance> {
    let mut out = Vec::new();
    let lists: [&[&str]; 4] = [&["h1"], &["h2"], &["h1", "h2"], &["h2", "h1"]];
    for p in lists {
        for q in lists {
            for r in lists {
                for c in [(1, 1), (1, 2), (2, 3)] {
                    out.push(
                        Instance::builder()
                            .applicant("a1", 1, p.iter())
                            .applicant("a2", 1, q.iter())
                            .applicant("a3", 1, r.iter())
                            .house("h1", c.0)
                            .house("h2", c.1)
                            .build()
                            .unwrap(),
                    );
                }
            }
        }
    }
    let mut b = Instance::builder();
    b.add_house("h1", 1).add_house("h2", 2).add_house("h3", 3);
    for i in 1..=4 {
        b.add_applicant(format!("a{i}"), 1, ["h1", "h2", "h3"]);
    }
    b.add_applicant("b", 1, ["h2", "h1"]);
    out.push(b.build().unwrap());
    let mut r = rng(2024);
    for i in 0..500 {
        out.push(random_instance(&mut r, 1 + i % 5, 1 + (i / 5) % 4, 1, 3));
    }
    out
}

#[test]
fn increase_only_min_sum_matches_exhaustive_search() {
    let (mut positive, mut strict) = (0, 0);
    for inst in instances() {
        let n = inst.num_applicants() as u64;
        let poly = min_sum_pop_perfect_increase(&inst).unwrap();
        let exact = min_sum_pop_perfect_exact(&inst, n, false, ExactSearch::default()).unwrap().unwrap();
        assert_eq!(poly.cost, exact.cost, "{inst:?}");
        let changed = inst.with_capacity_change(&poly.change).unwrap();
        assert!(changed.is_perfect(&poly.matching).unwrap());
        assert!(is_popular_cha(&changed, &poly.matching).unwrap().popular);
        assert!(is_popular_brute_force(&changed, &poly.matching, PopularityNotion::Traditional, LIMIT).unwrap().holds);
        let with_decrease = min_sum_pop_perfect_exact(&inst, n, true, ExactSearch::default()).unwrap().unwrap();
        assert!(with_decrease.cost <= exact.cost);
        positive += usize::from(exact.cost > 0);
        strict += usize::from(with_decrease.cost < exact.cost);
    }
    println!("positive-cost instances: {positive}, decrease strictly better: {strict}");
    assert!(positive > 100 && strict > 0);
}

#[test]
fn pareto_optimizers_are_optimal_and_certified() {
    for inst in instances() {
        let n = inst.num_applicants();
        let sum = min_sum_pareto_perfect(&inst).unwrap();
        assert_eq!(sum.cost as usize, n - max_matching_size(&inst).unwrap());
        let changed = inst.with_capacity_change(&sum.change).unwrap();
        assert!(changed.is_perfect(&sum.matching).unwrap());
        assert!(is_pareto_optimal_brute_force(&changed, &sum.matching, LIMIT).unwrap().holds);

        let max = min_max_pareto_perfect(&inst).unwrap();
        for allow_decrease in [false, true] {
            let exact = min_max_pareto_perfect_exact(&inst, n as u64, allow_decrease, ExactSearch::default())
                .unwrap()
                .unwrap();
            assert_eq!(max.cost, exact.cost, "{inst:?} decrease={allow_decrease}");
        }
        let changed = inst.with_capacity_change(&max.change).unwrap();
        assert!(changed.is_perfect(&max.matching).unwrap());
        assert!(is_pareto_optimal_brute_force(&changed, &max.matching, LIMIT).unwrap().holds);
    }
}
