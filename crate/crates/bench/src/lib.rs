//! Fixtures shared by the benchmarks.

use globalgrid_core::dispatch::{sinusoid_profile, DispatchNetwork, Generator, Region};

/// `n` regions spread evenly around the clock, each with wind, a base unit
/// and a peaker, joined in a ring of lossy interconnectors.
pub fn ring_network(n: usize) -> DispatchNetwork {
    assert!(n >= 2, "a ring needs at least two regions");
    let regions = (0..n)
        .map(|i| {
            let wind: Vec<f64> = (0..24)
                .map(|h| 0.5 + 0.5 * ((h + 3 * i) as f64 * 0.7).sin())
                .collect();
            Region {
                name: format!("R{i}"),
                tz_offset: (i * 24 / n) as i32,
                demand_profile: sinusoid_profile(1000.0 + 50.0 * i as f64, 0.5, 18.0),
                generators: vec![
                    Generator::new("wind", 900.0, 0.0).with_availability(wind),
                    Generator::new("base", 500.0, 30.0 + i as f64),
                    Generator::new("peaker", 400.0, 120.0 + 2.0 * i as f64),
                ],
            }
        })
        .collect();
    let mut net = DispatchNetwork::new(regions);
    for i in 0..n {
        let a = format!("R{i}");
        let b = format!("R{}", (i + 1) % n);
        if n > 2 || i == 0 {
            net.connect(&a, &b, 600.0, 0.97).expect("ring regions exist");
        }
    }
    net
}
