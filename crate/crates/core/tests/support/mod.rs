//! Test-only oracles and fixture generators for the dispatch engine.
//!
//! Nothing here calls into the min-cost-flow code: the oracles solve the same
//! hourly problem by exhaustive enumeration (lossless integer data) or by a
//! general-purpose LP solver (lossy data).
#![allow(dead_code)]

use globalgrid_core::dispatch::{
    sinusoid_profile, DispatchNetwork, Generator, HourSnapshot, Interconnector, Link, Region,
    Supply,
};
use minilp::{ComparisonOp, OptimizationDirection, Problem};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum cost of one region covering `need` MWh from its own units plus
/// shedding at most `demand`, by enumerating integer outputs.
fn best_local(supply: &[Supply], need: i64, demand: i64, penalty: f64) -> Option<f64> {
    fn rec(supply: &[Supply], i: usize, gen: i64, cost: f64, need: i64, demand: i64, penalty: f64, best: &mut Option<f64>) {
        if i == supply.len() {
            let shed = need - gen;
            if (0..=demand).contains(&shed) {
                let total = cost + penalty * shed as f64;
                if best.map_or(true, |b| total < b) {
                    *best = Some(total);
                }
            }
            return;
        }
        let cap = supply[i].capacity_mw.round() as i64;
        for g in 0..=cap {
            rec(supply, i + 1, gen + g, cost + g as f64 * supply[i].marginal_cost, need, demand, penalty, best);
        }
    }
    if need < 0 {
        return None;
    }
    let mut best = None;
    rec(supply, 0, 0, 0.0, need, demand, penalty, &mut best);
    best
}

/// Exhaustive optimum for lossless snapshots with integer data.
pub fn enumerate_cost(snap: &HourSnapshot) -> f64 {
    assert!(snap.links.iter().all(|l| l.efficiency == 1.0));
    let n = snap.demand.len();
    let caps: Vec<i64> = snap.links.iter().map(|l| l.capacity_mw.round() as i64).collect();
    let mut flows = vec![0i64; snap.links.len()];
    let mut best = f64::INFINITY;
    fn next(flows: &mut [i64], caps: &[i64]) -> bool {
        for (f, &c) in flows.iter_mut().zip(caps) {
            if *f < c {
                *f += 1;
                return true;
            }
            *f = -c;
        }
        false
    }
    for (f, &c) in flows.iter_mut().zip(&caps) {
        *f = -c;
    }
    loop {
        let mut net_import = vec![0i64; n];
        for (l, &f) in snap.links.iter().zip(flows.iter()) {
            net_import[l.from] -= f;
            net_import[l.to] += f;
        }
        let mut total = 0.0;
        let mut feasible = true;
        for r in 0..n {
            let demand = snap.demand[r].round() as i64;
            match best_local(&snap.supply[r], demand - net_import[r], demand, snap.penalty) {
                Some(c) => total += c,
                None => {
                    feasible = false;
                    break;
                }
            }
        }
        if feasible && total < best {
            best = total;
        }
        if !next(&mut flows, &caps) {
            break;
        }
    }
    best
}

/// LP optimum of the hourly dispatch, losses included.
pub fn lp_cost(snap: &HourSnapshot) -> f64 {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let n = snap.demand.len();
    let mut balance: Vec<Vec<(minilp::Variable, f64)>> = vec![Vec::new(); n];
    for r in 0..n {
        for s in &snap.supply[r] {
            let v = p.add_var(s.marginal_cost, (0.0, s.capacity_mw));
            balance[r].push((v, 1.0));
        }
        let shed = p.add_var(snap.penalty, (0.0, snap.demand[r]));
        balance[r].push((shed, 1.0));
    }
    for l in &snap.links {
        let fwd = p.add_var(0.0, (0.0, l.capacity_mw));
        let bwd = p.add_var(0.0, (0.0, l.capacity_mw));
        balance[l.from].push((fwd, -1.0));
        balance[l.to].push((fwd, l.efficiency));
        balance[l.to].push((bwd, -1.0));
        balance[l.from].push((bwd, l.efficiency));
    }
    for r in 0..n {
        p.add_constraint(balance[r].as_slice(), ComparisonOp::Eq, snap.demand[r]);
    }
    p.solve().expect("dispatch LP is always feasible").objective()
}

/// Random snapshot with ≤ 3 regions, ≤ 2 links and integer data ≤ 10.
pub fn small_integer_snapshot(rng: &mut ChaCha8Rng) -> HourSnapshot {
    let regions = rng.random_range(1..=3usize);
    let demand = (0..regions).map(|_| rng.random_range(0..=10) as f64).collect();
    let supply = (0..regions)
        .map(|_| {
            (0..rng.random_range(0..=2usize))
                .map(|_| Supply {
                    capacity_mw: rng.random_range(0..=10) as f64,
                    marginal_cost: rng.random_range(0..=10) as f64,
                })
                .collect()
        })
        .collect();
    let mut links = Vec::new();
    if regions > 1 {
        for _ in 0..rng.random_range(0..=2usize) {
            let from = rng.random_range(0..regions);
            let mut to = rng.random_range(0..regions - 1);
            if to >= from {
                to += 1;
            }
            links.push(Link {
                from,
                to,
                capacity_mw: rng.random_range(0..=10) as f64,
                efficiency: 1.0,
            });
        }
    }
    HourSnapshot {
        demand,
        supply,
        links,
        penalty: 100.0,
    }
}

/// Random network with 2-4 regions, offsets, wind and lossy links.
pub fn random_network(rng: &mut ChaCha8Rng) -> DispatchNetwork {
    let count = rng.random_range(2..=4usize);
    let regions = (0..count)
        .map(|i| {
            let peak = rng.random_range(200.0..1500.0);
            let mut generators = vec![
                Generator::new("wind", rng.random_range(0.0..1200.0), 0.0).with_availability(
                    (0..24).map(|_| rng.random_range(0.0..=1.0)).collect(),
                ),
                Generator::new("base", rng.random_range(0.0..800.0), rng.random_range(10.0..50.0)),
            ];
            if rng.random_bool(0.7) {
                generators.push(Generator::new(
                    "peaker",
                    rng.random_range(0.0..600.0),
                    rng.random_range(60.0..200.0),
                ));
            }
            Region {
                name: format!("R{i}"),
                tz_offset: rng.random_range(-12..=12),
                demand_profile: sinusoid_profile(peak, 0.5, rng.random_range(0.0..24.0)),
                generators,
            }
        })
        .collect();
    let mut net = DispatchNetwork::new(regions);
    for _ in 0..rng.random_range(1..=count + 1) {
        let a = rng.random_range(0..count);
        let mut b = rng.random_range(0..count - 1);
        if b >= a {
            b += 1;
        }
        net.interconnectors.push(Interconnector {
            endpoints: (a, b),
            capacity_mw: rng.random_range(0.0..1500.0),
            efficiency: rng.random_range(0.85..=1.0),
        });
    }
    net
}
