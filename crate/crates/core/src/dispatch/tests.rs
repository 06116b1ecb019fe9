use approx::assert_relative_eq;

use super::*;
use crate::presets::two_region_night_wind;

fn snapshot(demand: Vec<f64>, supply: Vec<Vec<(f64, f64)>>, links: Vec<Link>) -> HourSnapshot {
    HourSnapshot {
        demand,
        supply: supply
            .into_iter()
            .map(|units| {
                units
                    .into_iter()
                    .map(|(capacity_mw, marginal_cost)| Supply {
                        capacity_mw,
                        marginal_cost,
                    })
                    .collect()
            })
            .collect(),
        links,
        penalty: DEFAULT_PENALTY_EUR_PER_MWH,
    }
}

fn flat_region(name: &str, tz_offset: i32, demand: f64, generators: Vec<Generator>) -> Region {
    Region {
        name: name.into(),
        tz_offset,
        demand_profile: vec![demand; HOURS_PER_DAY],
        generators,
    }
}

#[test]
fn single_region_single_unit() {
    let d = min_cost_flow(&snapshot(vec![5.0], vec![vec![(10.0, 1.0)]], vec![]));
    assert_eq!(d.regions[0].generation, vec![5.0]);
    assert_eq!(d.cost, 5.0);
    assert_eq!(d.regions[0].unserved, 0.0);
    assert_eq!(d.regions[0].price, 1.0);
}

#[test]
fn merit_order_fills_cheap_unit_first() {
    let d = min_cost_flow(&snapshot(vec![5.0], vec![vec![(3.0, 1.0), (3.0, 2.0)]], vec![]));
    assert_eq!(d.regions[0].generation, vec![3.0, 2.0]);
    assert_eq!(d.cost, 7.0);
    assert_eq!(d.regions[0].price, 2.0);
}

#[test]
fn zero_demand_moves_nothing() {
    let links = vec![Link {
        from: 0,
        to: 1,
        capacity_mw: 10.0,
        efficiency: 1.0,
    }];
    let d = min_cost_flow(&snapshot(
        vec![0.0, 0.0],
        vec![vec![(10.0, 1.0)], vec![(10.0, 0.0)]],
        links,
    ));
    assert_eq!(d.cost, 0.0);
    assert!(d.flows.iter().all(|f| f.forward == 0.0 && f.backward == 0.0));
    assert!(d.regions.iter().all(|r| r.total_generation() == 0.0));
    assert_eq!(d.regions[1].curtailed, 10.0);
}

#[test]
fn shortfall_is_shed_at_penalty() {
    let d = min_cost_flow(&snapshot(vec![8.0], vec![vec![(5.0, 3.0)]], vec![]));
    assert_eq!(d.regions[0].unserved, 3.0);
    assert_eq!(d.cost, 15.0 + 3.0 * DEFAULT_PENALTY_EUR_PER_MWH);
    assert_eq!(d.regions[0].price, DEFAULT_PENALTY_EUR_PER_MWH);
}

#[test]
fn import_through_lossy_link() {
    let links = vec![Link {
        from: 0,
        to: 1,
        capacity_mw: 100.0,
        efficiency: 0.9,
    }];
    let d = min_cost_flow(&snapshot(
        vec![0.0, 9.0],
        vec![vec![(100.0, 10.0)], vec![(100.0, 50.0)]],
        links,
    ));
    assert_relative_eq!(d.flows[0].forward, 10.0, epsilon = 1e-9);
    assert_relative_eq!(d.flows[0].losses(), 1.0, epsilon = 1e-9);
    assert_relative_eq!(d.cost, 100.0, epsilon = 1e-9);
    assert_relative_eq!(d.regions[1].price, 10.0 / 0.9, epsilon = 1e-9);
    assert!(d.balance_residual().abs() < 1e-9);
}

#[test]
fn identical_regions_without_links_self_dispatch() {
    let make = |name: &str| {
        flat_region(name, 0, 400.0, vec![Generator::new("gas", 500.0, 50.0)])
    };
    let net = DispatchNetwork::new(vec![make("A"), make("B")]);
    let result = simulate(&net, 24).unwrap();
    for h in &result.hours {
        assert!(h.flows.is_empty());
        for r in &h.regions {
            assert_eq!(r.generation, vec![400.0]);
        }
    }
}

#[test]
fn link_lowers_peaker_output() {
    let with_link = simulate(&two_region_night_wind(1000.0, 1.0), 24).unwrap();
    let without = simulate(&two_region_night_wind(0.0, 1.0), 24).unwrap();
    let (us, peaker) = (1, 1);
    assert!(
        with_link.generator_output(us, peaker) < without.generator_output(us, peaker),
        "{} vs {}",
        with_link.generator_output(us, peaker),
        without.generator_output(us, peaker)
    );
}

#[test]
fn delivered_flow_is_efficiency_times_sent() {
    let result = simulate(&two_region_night_wind(1000.0, 0.9), 24).unwrap();
    let mut moved = 0.0;
    for h in &result.hours {
        let f = &h.flows[0];
        assert_relative_eq!(f.losses(), 0.1 * (f.forward + f.backward), epsilon = 1e-9);
        let imported = h.regions[1].served() - h.regions[1].total_generation();
        assert_relative_eq!(imported, 0.9 * f.forward - f.backward, epsilon = 1e-6);
        moved += f.forward;
    }
    assert!(moved > 0.0);
}

#[test]
fn unlimited_link_removes_all_curtailment() {
    let baseline = simulate(&two_region_night_wind(0.0, 1.0), 24).unwrap();
    let linked = simulate(&two_region_night_wind(1e6, 1.0), 24).unwrap();
    let m = curtailment_metrics(&linked, &baseline).unwrap();
    assert!(m.baseline_curtailed_gwh > 0.0);
    assert!(m.curtailed_gwh.abs() < 1e-9);
    assert_relative_eq!(m.curtailment_reduction, 1.0, epsilon = 1e-12);
    assert!(m.cost_reduction > 0.0);
    assert!(m.mean_price_spread <= m.baseline_mean_price_spread);
}

#[test]
fn identical_runs_have_zero_deltas() {
    let r = simulate(&two_region_night_wind(500.0, 0.95), 24).unwrap();
    let m = curtailment_metrics(&r, &r).unwrap();
    assert_eq!(m.curtailment_reduction, 0.0);
    assert_eq!(m.cost_reduction, 0.0);
    assert_eq!(m.curtailed_gwh, m.baseline_curtailed_gwh);
    assert_eq!(m.mean_price_spread, m.baseline_mean_price_spread);
}

#[test]
fn mismatched_horizons_are_rejected() {
    let net = two_region_night_wind(500.0, 1.0);
    let a = simulate(&net, 24).unwrap();
    let b = simulate(&net, 12).unwrap();
    assert!(curtailment_metrics(&a, &b).is_err());
}

#[test]
fn zero_hours_is_rejected() {
    assert!(simulate(&two_region_night_wind(500.0, 1.0), 0).is_err());
}

#[test]
fn anti_phase_regions_share_reserves() {
    let net = two_region_night_wind(1000.0, 1.0);
    let r = reserve_requirements(&net, 0.1, true).unwrap();
    assert_relative_eq!(r.isolated_total(), 200.0, epsilon = 1e-9);
    assert!(r.shared < r.isolated_total());
    assert_relative_eq!(r.shared, 0.1 * 1500.0, epsilon = 1e-9);
}

#[test]
fn single_region_reserve_is_its_own() {
    let net = DispatchNetwork::new(vec![Region {
        name: "A".into(),
        tz_offset: 3,
        demand_profile: sinusoid_profile(800.0, 0.5, 18.0),
        generators: vec![],
    }]);
    let r = reserve_requirements(&net, 0.2, true).unwrap();
    assert_relative_eq!(r.shared, r.isolated_total(), epsilon = 1e-9);
    assert_relative_eq!(r.shared, 160.0, epsilon = 1e-9);
}

#[test]
fn in_phase_regions_share_nothing() {
    let region = |name: &str| Region {
        name: name.into(),
        tz_offset: 0,
        demand_profile: sinusoid_profile(1000.0, 0.5, 18.0),
        generators: vec![],
    };
    let mut net = DispatchNetwork::new(vec![region("A"), region("B")]);
    net.connect("A", "B", 1000.0, 1.0).unwrap();
    let r = reserve_requirements(&net, 0.1, true).unwrap();
    assert_relative_eq!(r.shared, r.isolated_total(), epsilon = 1e-9);
}

#[test]
fn reserve_credit_needs_a_link() {
    let net = two_region_night_wind(0.0, 1.0);
    let r = reserve_requirements(&net, 0.1, true).unwrap();
    assert_relative_eq!(r.shared, r.isolated_total(), epsilon = 1e-9);
    let off = reserve_requirements(&two_region_night_wind(1000.0, 1.0), 0.1, false).unwrap();
    assert_eq!(off.shared, off.isolated_total());
}

#[test]
fn reserve_alpha_is_checked() {
    let net = two_region_night_wind(0.0, 1.0);
    assert!(reserve_requirements(&net, 0.0, true).is_err());
    assert!(reserve_requirements(&net, 1.5, true).is_err());
}

#[test]
fn sinusoid_spans_peak_to_half() {
    let p = sinusoid_profile(1000.0, 0.5, 12.0);
    assert_relative_eq!(p[12], 1000.0, epsilon = 1e-9);
    assert_relative_eq!(p[0], 500.0, epsilon = 1e-9);
}

#[test]
fn local_hour_wraps() {
    let r = flat_region("A", -5, 1.0, vec![]);
    assert_eq!(r.local_hour(0), 19);
    assert_eq!(r.local_hour(29), 0);
}

#[test]
fn network_validation() {
    let mut net = two_region_night_wind(100.0, 1.0);
    assert!(net.validate().is_ok());
    net.interconnectors[0].efficiency = 0.0;
    assert!(net.validate().is_err());
    let mut dup = two_region_night_wind(100.0, 1.0);
    dup.regions[1].name = "EU".into();
    assert!(dup.validate().is_err());
    let mut bad = two_region_night_wind(100.0, 1.0);
    bad.regions[0].demand_profile[3] = -1.0;
    assert!(bad.validate().is_err());
    assert!(net.connect("EU", "Mars", 1.0, 1.0).is_err());
}
