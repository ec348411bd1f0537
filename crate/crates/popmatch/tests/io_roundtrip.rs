use popmatch::io::{parse_instance, parse_matching, serialize_instance, serialize_matching};
use popmatch_core::model::enumerate_matchings;
use popmatch_core::Instance;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = Instance> {
    (1usize..5, 1usize..5)
        .prop_flat_map(|(na, nh)| {
            let house_caps = proptest::collection::vec(1u32..4, nh);
            let applicants = proptest::collection::vec(
                (1u32..3, Just((0..nh).collect::<Vec<_>>()).prop_shuffle(), 1usize..=nh),
                na,
            );
            (house_caps, applicants)
        })
        .prop_map(|(house_caps, applicants)| {
            let mut b = Instance::builder();
            for (h, q) in house_caps.iter().enumerate() {
                b.add_house(format!("house-{}", house_caps.len() - h), *q);
            }
            for (a, (q, order, len)) in applicants.iter().enumerate() {
                let n = house_caps.len();
                let prefs = order[..*len].iter().map(|h| format!("house-{}", n - h));
                b.add_applicant(format!("app \"{a}\""), *q, prefs);
            }
            b.build().unwrap()
        })
}

proptest! {
    #[test]
    fn instance_round_trip(inst in instance()) {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn matching_round_trip(inst in instance(), pick in any::<prop::sample::Index>()) {
        let all = enumerate_matchings(&inst, 100_000).unwrap();
        let m = &all[pick.index(all.len())];
        let text = serialize_matching(&inst, m);
        let back = parse_matching(&inst, &text).unwrap();
        prop_assert_eq!(&back, m);
        prop_assert_eq!(serialize_matching(&inst, &back), text);
    }
}
