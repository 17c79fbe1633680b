use proptest::prelude::*;

use super::*;
use crate::model::{NodeCategory, SfcRequest};

fn group(n: usize, b: usize, fa: f64, fs: f64, t: f64) -> GroupSpec {
    GroupSpec { primaries: n, backups: b, fail_active: fa, fail_standby: fs, horizon: t }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn cdf_examples() {
    let law = |rate| FailureLaw { rate, mode: Mode::Active };
    assert_eq!(failure_cdf(law(0.01), 0.0).unwrap(), 0.0);
    assert_eq!(failure_cdf(law(0.0), 5.0).unwrap(), 0.0);
    // 1 − e^{−0.01}
    assert!(close(failure_cdf(law(0.01), 1.0).unwrap(), 0.009950166250831946, 1e-15));
    assert_eq!(failure_cdf(law(0.01), -1.0), Err(ReliabilityError::NegativeTime(-1.0)));
}

#[test]
fn dedicated_active_examples() {
    assert!(close(rel_dedicated_active(0, 0.2), 0.8, 1e-15));
    assert!(close(rel_dedicated_active(1, 0.01), 0.9999, 1e-15));
    assert!(close(rel_dedicated_active(3, 0.5), 0.9375, 1e-15));
}

#[test]
fn dedicated_standby_examples() {
    assert!(close(rel_dedicated_standby(0, 0.01, 0.001, 1.0), (-0.01f64).exp(), 1e-15));
    // [(f_a+f_s)e^{−f_a t} − f_a e^{−(f_a+f_s)t}]/f_s, evaluated to 50 digits
    assert!(close(rel_dedicated_standby(1, 0.01, 0.001, 1.0), 0.9999453834871616, 1e-13));
    // 4-state chain exponential, 50 digits
    let v = rel_dedicated_standby(2, 0.04, 0.004, 1.0);
    assert!(close(v, 0.9999863765504914, 1e-13));
    assert!(close(v, markov_group_survival(1, 2, 0.04, 0.004, 1.0), 1e-9));
}

#[test]
fn shared_active_examples() {
    assert!(close(shared_active_from_cdf(2, 0, 0.01), 0.9801, 1e-15));
    assert!(close(shared_active_from_cdf(2, 1, 0.01), 0.999702, 1e-9));
    assert!(close(shared_active_from_cdf(1, 1, 0.2), 0.96, 1e-15));
    assert_eq!(shared_active_from_cdf(3, 2, 0.0), 1.0);
    assert_eq!(shared_active_from_cdf(3, 2, 1.0), 0.0);
}

#[test]
fn shared_standby_examples() {
    assert!(close(rel_shared_standby(&group(3, 0, 0.01, 0.001, 1.0)), 0.9704455335485082, 1e-15));
    assert_eq!(
        rel_shared_standby(&group(1, 1, 0.01, 0.001, 1.0)),
        rel_dedicated_standby(1, 0.01, 0.001, 1.0)
    );
    let v = rel_shared_standby(&group(2, 2, 0.04, 0.004, 1.0));
    assert!(close(v, 0.9999074453563918, 1e-13));
    assert!(close(v, markov_group_survival(2, 2, 0.04, 0.004, 1.0), 1e-9));
}

#[test]
fn closed_form_survives_heavy_cancellation() {
    // Terms cancel by ~10 orders of magnitude here; frozen value from a
    // 50-digit evaluation of the same sum.
    let v = standby_closed_form(&group(5, 5, 0.04, 0.004, 5.0)).unwrap();
    assert!(close(v, 0.9992388665537663, 1e-14), "{v}");
    let v = standby_closed_form(&group(5, 5, 0.008, 0.0008, 0.1)).unwrap();
    assert!(close(v, 1.0, 1e-15));
}

#[test]
fn falls_back_to_the_chain_beyond_the_closed_form() {
    let spec = group(3, 40, 0.04, 0.004, 5.0);
    assert!(standby_closed_form(&spec).is_none());
    assert_eq!(rel_shared_standby(&spec), markov_group_survival(3, 40, 0.04, 0.004, 5.0));
    let spec = group(2, 12, 0.5, 0.2, 5.0);
    if let Some(v) = standby_closed_form(&spec) {
        assert!(close(v, markov_group_survival(2, 12, 0.5, 0.2, 5.0), 1e-9));
    }
    let tiny_rate = group(2, 3, 0.04, 1e-14, 1.0);
    assert!(close(
        rel_shared_standby(&tiny_rate),
        markov_group_survival(2, 3, 0.04, 1e-14, 1.0),
        1e-12
    ));
}

#[test]
fn cold_standby_is_the_chain_with_zero_idle_rate() {
    for (n, b, fa, t) in [(1, 3, 0.04, 5.0), (4, 2, 0.3, 1.0), (2, 6, 1.0, 2.0)] {
        let cold = rel_shared_standby(&group(n, b, fa, 0.0, t));
        assert!(close(cold, markov_group_survival(n, b, fa, 0.0, t), 1e-12));
    }
}

fn three_categories() -> Infrastructure {
    let cat = |fa: f64, pa: f64| NodeCategory {
        node_count: 4,
        clock: 5.0,
        cost_active: pa,
        cost_standby: pa / 10.0,
        fail_active: fa,
        fail_standby: fa / 10.0,
    };
    Infrastructure::new(vec![cat(0.01, 25.0), cat(0.3, 20.0), cat(0.0, 5.0)]).unwrap()
}

fn workload(loads: usize, strategy: BackupStrategy) -> Workload {
    Workload::new(vec![SfcRequest {
        loads: vec![1.0; loads],
        deadline: 100.0,
        reliability_target: 0.9,
        strategy,
    }])
    .unwrap()
}

#[test]
fn single_vnf_dedicated_active_composes_cdf() {
    let infra = three_categories();
    let w = workload(1, BackupStrategy::DedicatedActive);
    let sol = Solution::from_assignment(&infra, &w, vec![vec![0]]);
    assert!(close(sfc_reliability(&sol, 0, &infra, &w, 1.0), 0.9900498337491681, 1e-15));
}

#[test]
fn shared_active_split_matches_failure_pattern_enumeration() {
    let infra = three_categories();
    let w = workload(2, BackupStrategy::SharedActive);
    let mut sol = Solution::from_assignment(&infra, &w, vec![vec![0, 1]]);
    sol.shared_backups[0] = vec![1, 0, 0];
    // Nodes: two in category 0 (primary + pool spare), one in category 1.
    let fail = [cdf(0.01, 1.0), cdf(0.01, 1.0), cdf(0.3, 1.0)];
    let mut brute = 0.0;
    for pattern in 0u32..8 {
        let up = |i: usize| pattern & (1 << i) == 0;
        let prob: f64 =
            (0..3).map(|i| if up(i) { 1.0 - fail[i] } else { fail[i] }).product();
        if (up(0) || up(1)) && up(2) {
            brute += prob;
        }
    }
    assert!(close(sfc_reliability(&sol, 0, &infra, &w, 1.0), brute, 1e-15));
}

#[test]
fn zero_failure_rates_give_certainty() {
    let infra = three_categories();
    for s in BackupStrategy::ALL {
        let w = workload(3, s);
        let sol = Solution::from_assignment(&infra, &w, vec![vec![2, 2, 2]]);
        assert_eq!(sfc_reliability(&sol, 0, &infra, &w, 1.0), 1.0);
    }
}

#[test]
fn cost_examples() {
    let infra = Infrastructure::new(vec![
        NodeCategory {
            node_count: 10,
            clock: 5.0,
            cost_active: 25.0,
            cost_standby: 2.5,
            fail_active: 0.008,
            fail_standby: 0.0008,
        },
        NodeCategory {
            node_count: 10,
            clock: 1.0,
            cost_active: 5.0,
            cost_standby: 0.5,
            fail_active: 0.04,
            fail_standby: 0.004,
        },
    ])
    .unwrap();
    let w = workload(1, BackupStrategy::DedicatedActive);
    let mut sol = Solution::from_assignment(&infra, &w, vec![vec![0]]);
    sol.dedicated_backups[0][0] = 1;
    assert_eq!(sfc_cost(&sol, 0, &infra, &w), 50.0);

    let w = workload(1, BackupStrategy::DedicatedStandby);
    sol.dedicated_backups[0][0] = 2;
    assert_eq!(sfc_cost(&sol, 0, &infra, &w), 30.0);

    let w = workload(3, BackupStrategy::SharedStandby);
    let mut sol = Solution::from_assignment(&infra, &w, vec![vec![1, 1, 1]]);
    sol.shared_backups[0] = vec![0, 2];
    assert_eq!(sfc_cost(&sol, 0, &infra, &w), 16.0);

    let w = workload(3, BackupStrategy::SharedActive);
    assert_eq!(sfc_cost(&sol, 0, &infra, &w), 25.0);
}

fn table_rates() -> impl Strategy<Value = (f64, f64)> {
    prop::sample::select(vec![(0.008, 0.0008), (0.01, 0.001), (0.04, 0.004)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernels_are_probabilities_and_monotone(
        n in 1usize..6,
        b in 0usize..8,
        (fa, fs) in table_rates(),
        t in prop::sample::select(vec![0.1, 1.0, 5.0, 20.0]),
        scale in 1.0f64..20.0,
    ) {
        let (fa, fs) = (fa * scale, fs * scale);
        let standby = |b, t| rel_shared_standby(&group(n, b, fa, fs, t));
        let active = |b, t| rel_shared_active(&group(n, b, fa, fa, t));
        for r in [standby(b, t), active(b, t)] {
            prop_assert!((0.0..=1.0).contains(&r));
        }
        prop_assert!(standby(b + 1, t) >= standby(b, t) - 1e-12);
        prop_assert!(active(b + 1, t) >= active(b, t) - 1e-12);
        prop_assert!(standby(b, t * 1.5) <= standby(b, t) + 1e-12);
        prop_assert!(active(b, t * 1.5) <= active(b, t) + 1e-12);
        let f = cdf(fa, t);
        prop_assert!(rel_dedicated_active(b + 1, f) >= rel_dedicated_active(b, f));
    }

    #[test]
    fn zero_backups_match_closed_forms(n in 1usize..6, (fa, fs) in table_rates(), t in 0.05f64..10.0) {
        let exp_surv = (-(n as f64) * fa * t).exp();
        prop_assert!(close(rel_shared_standby(&group(n, 0, fa, fs, t)), exp_surv, 1e-12));
        let f = cdf(fa, t);
        prop_assert!(close(shared_active_from_cdf(n, 0, f), (1.0 - f).powi(n as i32), 1e-12));
    }

    #[test]
    fn single_primary_pools_reduce_to_dedicated(
        b in 0usize..=10,
        (fa, fs) in table_rates(),
        t in prop::sample::select(vec![0.1, 1.0, 5.0]),
    ) {
        let f = cdf(fa, t);
        prop_assert!(close(shared_active_from_cdf(1, b, f), rel_dedicated_active(b, f), 1e-12));
        prop_assert!(close(
            rel_shared_standby(&group(1, b, fa, fs, t)),
            rel_dedicated_standby(b, fa, fs, t),
            1e-12
        ));
    }

    #[test]
    fn standby_pools_outlive_active_pools(
        n in 1usize..6,
        b in 0usize..6,
        (fa, fs) in table_rates(),
        t in prop::sample::select(vec![0.1, 1.0, 5.0]),
    ) {
        let standby = markov_group_survival(n, b, fa, fs, t);
        let active = markov_group_survival(n, b, fa, fa, t);
        prop_assert!(standby >= active - 1e-12);
        prop_assert!(rel_shared_standby(&group(n, b, fa, fs, t)) >= rel_shared_active(&group(n, b, fa, fs, t)) - 1e-9);
    }
}
