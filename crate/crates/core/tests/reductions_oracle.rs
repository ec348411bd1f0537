use std::time::Instant;

use popmatch_core::reductions::{
    strict_instances, validate_3dm_reduction, Construction, ThreeDm, ValidationLimits,
};

fn report(t: &ThreeDm, c: Construction) {
    let start = Instant::now();
    let r = validate_3dm_reduction(t, c, ValidationLimits::default()).unwrap();
    println!("{} {:?} {:?}", c.name(), r, start.elapsed());
    assert_ne!(r.agree, Some(false), "{t:?}");
    assert_ne!(r.forward_ok, Some(false), "{t:?}");
}

#[test]
fn min_sum_construction_on_the_single_triple() {
    let t = strict_instances(1).remove(0);
    report(&t, Construction::MinSumDecrease);
    let relaxed = ThreeDm::new(1, vec![[1, 1, 1]], false).unwrap();
    report(&relaxed, Construction::MinSumDecrease);
}

#[test]
fn existence_constructions_on_all_small_strict_instances() {
    let mut n = 0;
    for n_hat in 1..=2 {
        for t in strict_instances(n_hat) {
            report(&t, Construction::PmcapTraditional);
            report(&t, Construction::PmcapLex);
            n += 1;
        }
    }
    println!("{n} instances");
}
