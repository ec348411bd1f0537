mod common;

use popmatch_core::model::enumerate_matchings;
use popmatch_core::{Edge, Instance};

/// Counts feasible edge subsets by plain recursion over the edge list.
fn count_subsets(inst: &Instance) -> u64 {
    fn go(edges: &[Edge], i: usize, aload: &mut [u32], hload: &mut [u32], inst: &Instance) -> u64 {
        if i == edges.len() {
            return 1;
        }
        let e = edges[i];
        let mut total = go(edges, i + 1, aload, hload, inst);
        if aload[e.applicant.0] < inst.applicant_capacity(e.applicant) && hload[e.house.0] < inst.house_capacity(e.house)
        {
            aload[e.applicant.0] += 1;
            hload[e.house.0] += 1;
            total += go(edges, i + 1, aload, hload, inst);
            aload[e.applicant.0] -= 1;
            hload[e.house.0] -= 1;
        }
        total
    }
    let edges: Vec<Edge> = inst.edges().collect();
    go(&edges, 0, &mut vec![0; inst.num_applicants()], &mut vec![0; inst.num_houses()], inst)
}

#[test]
fn enumeration_count_matches_subset_recursion() {
    let mut r = common::rng(11);
    for i in 0..600 {
        let inst = common::random_instance(&mut r, 1 + i % 3, 1 + (i / 3) % 3, 2, 2);
        let all = enumerate_matchings(&inst, 1_000_000).unwrap();
        assert_eq!(all.len() as u64, count_subsets(&inst), "{inst:?}");
        let mut keys: Vec<_> = all.iter().map(|m| m.edges().to_vec()).collect();
        let sorted = keys.clone();
        keys.sort();
        keys.dedup();
        assert_eq!(keys, sorted, "order must be canonical and duplicate-free");
        for m in &all {
            inst.check_matching(m).unwrap();
        }
    }
}
