mod common;

use popmatch_core::chapop::{
    exists_perfect_popular, find_popular_cha, is_popular_cha, max_conditioned_matching_size, ReducedGraph,
};
use popmatch_core::model::enumerate_matchings;
use popmatch_core::votes::is_popular_brute_force;
use popmatch_core::{Instance, PopularityNotion};

use common::{random_instance, rng};

const LIMIT: u64 = 1_000_000;

fn check(inst: &Instance) {
    let all = enumerate_matchings(inst, LIMIT).unwrap();
    let mut popular_exists = false;
    let mut perfect_popular_exists = false;
    for m in &all {
        let cha = is_popular_cha(inst, m).unwrap();
        let bf = is_popular_brute_force(inst, m, PopularityNotion::Traditional, LIMIT).unwrap();
        assert_eq!(cha.popular, bf.holds, "instance {inst:?} matching {m:?}");
        if cha.failed_condition == Some(4) {
            panic!("conditions 1-3 hold but 4 fails: {inst:?} {m:?}");
        }
        popular_exists |= bf.holds;
        perfect_popular_exists |= bf.holds && inst.is_perfect(m).unwrap();
    }

    let found = find_popular_cha(inst).unwrap();
    assert_eq!(found.is_some(), popular_exists, "instance {inst:?}");
    if let Some(m) = found {
        assert!(is_popular_brute_force(inst, &m, PopularityNotion::Traditional, LIMIT).unwrap().holds);
    }
    let perfect = exists_perfect_popular(inst).unwrap();
    assert_eq!(perfect.is_some(), perfect_popular_exists, "instance {inst:?}");

    let base = max_conditioned_matching_size(inst).unwrap();
    for h in inst.houses() {
        let mut caps = inst.house_capacities().to_vec();
        caps[h.0] += 1;
        let up = max_conditioned_matching_size(&inst.with_house_capacities(caps).unwrap()).unwrap();
        assert!(up == base || up == base + 1, "instance {inst:?} house {h:?}: {base} -> {up}");
    }

    let g = ReducedGraph::build(inst).unwrap();
    for e in g.edges() {
        let h = e.house;
        if g.admirers[h.0].len() > inst.house_capacity(h) as usize {
            assert_eq!(g.first[e.applicant.0], Some(h));
        }
    }
}

#[test]
fn exhaustive_three_applicants_two_houses() {
    let lists: [&[&str]; 4] = [&["h1"], &["h2"], &["h1", "h2"], &["h2", "h1"]];
    let mut count = 0;
    for p in lists {
        for q in lists {
            for r in lists {
                for c1 in 1..=3 {
                    for c2 in 1..=3 {
                        let inst = Instance::builder()
                            .applicant("a1", 1, p.iter())
                            .applicant("a2", 1, q.iter())
                            .applicant("a3", 1, r.iter())
                            .house("h1", c1)
                            .house("h2", c2)
                            .build()
                            .unwrap();
                        check(&inst);
                        count += 1;
                    }
                }
            }
        }
    }
    assert_eq!(count, 64 * 9);
}

#[test]
fn random_instances_agree_with_brute_force() {
    let mut r = rng(42);
    for i in 0..1200 {
        let na = 1 + i % 4;
        let nh = 1 + (i / 4) % 4;
        let inst = random_instance(&mut r, na, nh, 1, 3);
        check(&inst);
    }
}
