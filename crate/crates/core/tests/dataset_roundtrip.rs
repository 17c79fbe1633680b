use proptest::prelude::*;
use sfc_core::model::{
    generate_dataset, load_dataset, paper_instance, save_dataset, Dataset, GeneratorSpec, ObjectiveConfig,
};

fn round_trip(d: &Dataset) -> Dataset {
    let mut bytes = Vec::new();
    save_dataset(d, &mut bytes).unwrap();
    load_dataset(bytes.as_slice()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_datasets_survive_save_and_load(seed in any::<u64>(), tiny in any::<bool>()) {
        let spec = if tiny { GeneratorSpec::tiny() } else { GeneratorSpec::default() };
        let (infrastructure, workload) = generate_dataset(&spec, seed).unwrap();
        let d = Dataset { infrastructure, workload, objective: ObjectiveConfig::default() };
        let once = round_trip(&d);
        prop_assert_eq!(&once, &d);
        prop_assert_eq!(round_trip(&once), d);
    }

    #[test]
    fn generation_is_a_function_of_the_seed(seed in any::<u64>()) {
        let spec = GeneratorSpec::default();
        prop_assert_eq!(generate_dataset(&spec, seed).unwrap(), generate_dataset(&spec, seed).unwrap());
    }
}

#[test]
fn generated_values_stay_within_generator_ranges() {
    let spec = GeneratorSpec::default();
    for seed in 0..50 {
        let (infra, workload) = generate_dataset(&spec, seed).unwrap();
        assert!((2..=3).contains(&infra.num_categories()));
        for c in &infra.categories {
            assert!((50..=700).contains(&c.node_count));
            assert!((1.0..=5.0).contains(&c.clock));
            assert!((0.008..=0.04).contains(&c.fail_active));
            assert!(c.fail_standby < c.fail_active);
            assert!((5.0..=25.0).contains(&c.cost_active));
        }
        let fastest = infra.categories.iter().map(|c| c.clock).fold(0.0, f64::max);
        assert!((5..=15).contains(&workload.num_sfcs()));
        for s in &workload.sfcs {
            assert!((2..=5).contains(&s.len()));
            assert!(s.loads.iter().sum::<f64>() / fastest <= s.deadline);
        }
    }
}

#[test]
fn reference_instance_round_trips() {
    for scale in [1.0, 0.2] {
        let d = paper_instance(scale);
        assert_eq!(round_trip(&d), d);
    }
}
