//! Hourly multi-region dispatch over an interconnector graph.
//!
//! Each hour is an independent transport problem: generators feed their
//! region's bus, buses exchange energy over lossy interconnectors, and load
//! that cannot be served is shed at a penalty price. Demand profiles are in
//! local time and are shifted by each region's time-zone offset.

mod flow;

use std::collections::HashSet;

pub use flow::{ArcId, GainNetwork, NodeId};

use crate::error::{Error, Result};

pub const HOURS_PER_DAY: usize = 24;
pub const DEFAULT_PENALTY_EUR_PER_MWH: f64 = 10_000.0;

/// Hourly demand following a cosine with its maximum at `peak_hour` (local
/// time) and its minimum at `trough_ratio * peak` twelve hours later.
pub fn sinusoid_profile(peak_mw: f64, trough_ratio: f64, peak_hour: f64) -> Vec<f64> {
    let mean = peak_mw * (1.0 + trough_ratio) / 2.0;
    let amplitude = peak_mw * (1.0 - trough_ratio) / 2.0;
    (0..HOURS_PER_DAY)
        .map(|h| {
            let phase = 2.0 * std::f64::consts::PI * (h as f64 - peak_hour) / 24.0;
            mean + amplitude * phase.cos()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub name: String,
    pub capacity_mw: f64,
    /// €/MWh. Zero-cost units are counted as renewable for curtailment.
    pub marginal_cost: f64,
    /// Optional 24 local-hour availability factors in [0, 1].
    pub availability: Option<Vec<f64>>,
}

impl Generator {
    pub fn new(name: impl Into<String>, capacity_mw: f64, marginal_cost: f64) -> Self {
        Self {
            name: name.into(),
            capacity_mw,
            marginal_cost,
            availability: None,
        }
    }

    pub fn with_availability(mut self, profile: Vec<f64>) -> Self {
        self.availability = Some(profile);
        self
    }

    pub fn is_renewable(&self) -> bool {
        self.marginal_cost == 0.0
    }

    pub fn available_mw(&self, local_hour: usize) -> f64 {
        match &self.availability {
            Some(p) => self.capacity_mw * p[local_hour],
            None => self.capacity_mw,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub name: String,
    pub tz_offset: i32,
    /// 24 hourly values in local time, MW.
    pub demand_profile: Vec<f64>,
    pub generators: Vec<Generator>,
}

impl Region {
    pub fn local_hour(&self, hour: usize) -> usize {
        (hour as i64 + i64::from(self.tz_offset)).rem_euclid(HOURS_PER_DAY as i64) as usize
    }

    pub fn demand_at(&self, hour: usize) -> f64 {
        self.demand_profile[self.local_hour(hour)]
    }

    pub fn peak_demand(&self) -> f64 {
        self.demand_profile.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interconnector {
    /// Region indices.
    pub endpoints: (usize, usize),
    pub capacity_mw: f64,
    /// Fraction of sent energy that arrives.
    pub efficiency: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispatchNetwork {
    pub regions: Vec<Region>,
    pub interconnectors: Vec<Interconnector>,
    pub penalty: f64,
}

impl DispatchNetwork {
    pub fn new(regions: Vec<Region>) -> Self {
        Self {
            regions,
            interconnectors: Vec::new(),
            penalty: DEFAULT_PENALTY_EUR_PER_MWH,
        }
    }

    pub fn region_index(&self, name: &str) -> Option<usize> {
        self.regions.iter().position(|r| r.name == name)
    }

    /// Adds an interconnector between two named regions.
    pub fn connect(&mut self, a: &str, b: &str, capacity_mw: f64, efficiency: f64) -> Result<()> {
        let find = |n: &str| {
            self.region_index(n)
                .ok_or_else(|| Error::invalid("interconnector", format!("unknown region `{n}`")))
        };
        let endpoints = (find(a)?, find(b)?);
        self.interconnectors.push(Interconnector {
            endpoints,
            capacity_mw,
            efficiency,
        });
        Ok(())
    }

    /// The same network with every interconnector capacity set to zero.
    pub fn isolated(&self) -> DispatchNetwork {
        let mut out = self.clone();
        for ic in &mut out.interconnectors {
            ic.capacity_mw = 0.0;
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let mut names = HashSet::new();
        for r in &self.regions {
            if !names.insert(r.name.as_str()) {
                return Err(Error::invalid("regions", format!("duplicate region `{}`", r.name)));
            }
            if r.demand_profile.len() != HOURS_PER_DAY {
                return Err(Error::invalid(
                    format!("{}.demand", r.name),
                    "needs exactly 24 hourly values",
                ));
            }
            if r.demand_profile.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
                return Err(Error::invalid(format!("{}.demand", r.name), "must be >= 0"));
            }
            for g in &r.generators {
                let field = format!("{}.{}", r.name, g.name);
                if !(g.capacity_mw.is_finite() && g.capacity_mw >= 0.0) {
                    return Err(Error::invalid(field, "capacity must be >= 0"));
                }
                if !(g.marginal_cost.is_finite() && g.marginal_cost >= 0.0) {
                    return Err(Error::invalid(field, "marginal cost must be >= 0"));
                }
                if let Some(p) = &g.availability {
                    if p.len() != HOURS_PER_DAY || p.iter().any(|a| !(0.0..=1.0).contains(a)) {
                        return Err(Error::invalid(
                            field,
                            "availability needs 24 values in [0, 1]",
                        ));
                    }
                }
            }
        }
        for ic in &self.interconnectors {
            let (a, b) = ic.endpoints;
            if a >= self.regions.len() || b >= self.regions.len() {
                return Err(Error::invalid("interconnector", "endpoint out of range"));
            }
            if a == b {
                return Err(Error::invalid("interconnector", "endpoints must differ"));
            }
            if !(ic.capacity_mw.is_finite() && ic.capacity_mw >= 0.0) {
                return Err(Error::invalid("interconnector", "capacity must be >= 0"));
            }
            if !(ic.efficiency > 0.0 && ic.efficiency <= 1.0) {
                return Err(Error::invalid("interconnector", "efficiency must be in (0, 1]"));
            }
        }
        if !(self.penalty.is_finite() && self.penalty > 0.0) {
            return Err(Error::invalid("penalty", "must be > 0"));
        }
        Ok(())
    }

    /// Demand and available capacity at simulated hour `hour`.
    pub fn snapshot(&self, hour: usize) -> HourSnapshot {
        HourSnapshot {
            demand: self.regions.iter().map(|r| r.demand_at(hour)).collect(),
            supply: self
                .regions
                .iter()
                .map(|r| {
                    let lh = r.local_hour(hour);
                    r.generators
                        .iter()
                        .map(|g| Supply {
                            capacity_mw: g.available_mw(lh),
                            marginal_cost: g.marginal_cost,
                        })
                        .collect()
                })
                .collect(),
            links: self
                .interconnectors
                .iter()
                .map(|ic| Link {
                    from: ic.endpoints.0,
                    to: ic.endpoints.1,
                    capacity_mw: ic.capacity_mw,
                    efficiency: ic.efficiency,
                })
                .collect(),
            penalty: self.penalty,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Supply {
    pub capacity_mw: f64,
    pub marginal_cost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub from: usize,
    pub to: usize,
    pub capacity_mw: f64,
    pub efficiency: f64,
}

/// One hour's dispatch problem.
#[derive(Debug, Clone, PartialEq)]
pub struct HourSnapshot {
    pub demand: Vec<f64>,
    pub supply: Vec<Vec<Supply>>,
    pub links: Vec<Link>,
    pub penalty: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionHour {
    pub demand: f64,
    pub unserved: f64,
    /// Output of each generator, MW.
    pub generation: Vec<f64>,
    /// Unused zero-cost capacity, MW.
    pub curtailed: f64,
    /// €/MWh.
    pub price: f64,
}

impl RegionHour {
    pub fn served(&self) -> f64 {
        self.demand - self.unserved
    }

    pub fn total_generation(&self) -> f64 {
        self.generation.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkFlow {
    /// Sent from the first endpoint towards the second, MW.
    pub forward: f64,
    /// Sent from the second endpoint towards the first, MW.
    pub backward: f64,
    pub efficiency: f64,
}

impl LinkFlow {
    /// Net sent flow, positive from the first endpoint to the second.
    pub fn signed(&self) -> f64 {
        self.forward - self.backward
    }

    pub fn losses(&self) -> f64 {
        (self.forward + self.backward) * (1.0 - self.efficiency)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HourDispatch {
    pub regions: Vec<RegionHour>,
    pub flows: Vec<LinkFlow>,
    /// Generation plus penalty cost, €.
    pub cost: f64,
}

impl HourDispatch {
    pub fn curtailed(&self) -> f64 {
        self.regions.iter().map(|r| r.curtailed).sum()
    }

    pub fn unserved(&self) -> f64 {
        self.regions.iter().map(|r| r.unserved).sum()
    }

    pub fn losses(&self) -> f64 {
        self.flows.iter().map(LinkFlow::losses).sum()
    }

    pub fn price_spread(&self) -> f64 {
        let max = self.regions.iter().map(|r| r.price).fold(f64::MIN, f64::max);
        let min = self.regions.iter().map(|r| r.price).fold(f64::MAX, f64::min);
        if self.regions.is_empty() {
            0.0
        } else {
            max - min
        }
    }

    /// Generation minus served demand minus losses, MW.
    pub fn balance_residual(&self) -> f64 {
        let generation: f64 = self.regions.iter().map(RegionHour::total_generation).sum();
        let served: f64 = self.regions.iter().map(RegionHour::served).sum();
        generation - served - self.losses()
    }
}

/// Clamps negatives and round-off below `1e-9 * scale` to zero.
fn snap_zero(v: f64, scale: f64) -> f64 {
    if v <= 1e-9 * scale.abs().max(1.0) {
        0.0
    } else {
        v
    }
}

/// Cost-minimal generation and interconnector flows for one hour.
pub fn min_cost_flow(snapshot: &HourSnapshot) -> HourDispatch {
    const SOURCE: NodeId = 0;
    const SINK: NodeId = 1;
    let bus = |r: usize| 2 + 2 * r;
    let load = |r: usize| 3 + 2 * r;
    let n_regions = snapshot.demand.len();

    let mut net = GainNetwork::new(2 + 2 * n_regions);
    let mut gen_arcs = Vec::with_capacity(n_regions);
    let mut serve_arcs = Vec::with_capacity(n_regions);
    for r in 0..n_regions {
        let demand = snapshot.demand[r];
        gen_arcs.push(
            snapshot.supply[r]
                .iter()
                .map(|s| net.add_arc(SOURCE, bus(r), s.capacity_mw, s.marginal_cost, 1.0))
                .collect::<Vec<_>>(),
        );
        serve_arcs.push(net.add_arc(bus(r), load(r), demand, 0.0, 1.0));
        net.add_arc(load(r), SINK, demand, 0.0, 1.0);
        net.add_arc(SOURCE, load(r), demand, snapshot.penalty, 1.0);
    }
    let link_arcs: Vec<(ArcId, ArcId)> = snapshot
        .links
        .iter()
        .map(|l| {
            let fwd = net.add_arc(bus(l.from), bus(l.to), l.capacity_mw, 0.0, l.efficiency);
            let bwd = net.add_arc(bus(l.to), bus(l.from), l.capacity_mw, 0.0, l.efficiency);
            (fwd, bwd)
        })
        .collect();

    let total_demand: f64 = snapshot.demand.iter().sum();
    net.deliver(SOURCE, SINK, total_demand);

    let arrival = net.marginal_arrival_costs(SOURCE);
    let disposal = net.marginal_disposal_costs(SOURCE);

    let regions = (0..n_regions)
        .map(|r| {
            let generation: Vec<f64> = gen_arcs[r].iter().map(|&a| net.flow(a)).collect();
            let curtailed = snapshot.supply[r]
                .iter()
                .zip(&generation)
                .filter(|(s, _)| s.marginal_cost == 0.0)
                .map(|(s, g)| snap_zero(s.capacity_mw - g, s.capacity_mw))
                .sum();
            let served = net.flow(serve_arcs[r]);
            let unserved = snap_zero(snapshot.demand[r] - served, snapshot.demand[r]);
            // price of the last unit actually served; the next unit's cost
            // when nothing is served
            let price = if served > 1e-9 && disposal[load(r)].is_finite() {
                -disposal[load(r)]
            } else {
                arrival[load(r)]
            };
            RegionHour {
                demand: snapshot.demand[r],
                unserved,
                generation,
                curtailed,
                price,
            }
        })
        .collect();
    let flows = link_arcs
        .iter()
        .zip(&snapshot.links)
        .map(|(&(fwd, bwd), l)| LinkFlow {
            forward: net.flow(fwd),
            backward: net.flow(bwd),
            efficiency: l.efficiency,
        })
        .collect();

    HourDispatch {
        regions,
        flows,
        cost: net.total_cost(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispatchResult {
    pub hours: Vec<HourDispatch>,
}

impl DispatchResult {
    pub fn total_cost(&self) -> f64 {
        self.hours.iter().map(|h| h.cost).sum()
    }

    /// MWh over the horizon.
    pub fn curtailed(&self) -> f64 {
        self.hours.iter().map(HourDispatch::curtailed).sum()
    }

    /// MWh over the horizon.
    pub fn unserved(&self) -> f64 {
        self.hours.iter().map(HourDispatch::unserved).sum()
    }

    pub fn mean_price_spread(&self) -> f64 {
        if self.hours.is_empty() {
            return 0.0;
        }
        self.hours.iter().map(HourDispatch::price_spread).sum::<f64>() / self.hours.len() as f64
    }

    /// Total output of one generator over the horizon, MWh.
    pub fn generator_output(&self, region: usize, generator: usize) -> f64 {
        self.hours
            .iter()
            .map(|h| h.regions[region].generation[generator])
            .sum()
    }
}

/// Runs `hours` independent hourly dispatches starting at hour 0.
pub fn simulate(network: &DispatchNetwork, hours: usize) -> Result<DispatchResult> {
    if hours == 0 {
        return Err(Error::invalid("hours", "must be >= 1"));
    }
    network.validate()?;
    Ok(DispatchResult {
        hours: (0..hours).map(|h| min_cost_flow(&network.snapshot(h))).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurtailmentMetrics {
    pub curtailed_gwh: f64,
    pub baseline_curtailed_gwh: f64,
    /// Fraction of baseline curtailment avoided; 0 when the baseline has none.
    pub curtailment_reduction: f64,
    /// Fraction of baseline cost avoided; 0 when the baseline costs nothing.
    pub cost_reduction: f64,
    /// €/MWh, mean over hours of the max-min regional price gap.
    pub mean_price_spread: f64,
    pub baseline_mean_price_spread: f64,
}

pub fn curtailment_metrics(
    result: &DispatchResult,
    baseline: &DispatchResult,
) -> Result<CurtailmentMetrics> {
    if result.hours.len() != baseline.hours.len() {
        return Err(Error::invalid(
            "baseline",
            format!(
                "horizon mismatch: {} vs {} hours",
                result.hours.len(),
                baseline.hours.len()
            ),
        ));
    }
    if result.hours.first().map(|h| h.regions.len()) != baseline.hours.first().map(|h| h.regions.len())
    {
        return Err(Error::invalid("baseline", "region count mismatch"));
    }
    let relative = |base: f64, now: f64| if base > 0.0 { (base - now) / base } else { 0.0 };
    let curtailed = result.curtailed();
    let base_curtailed = baseline.curtailed();
    Ok(CurtailmentMetrics {
        curtailed_gwh: curtailed / 1000.0,
        baseline_curtailed_gwh: base_curtailed / 1000.0,
        curtailment_reduction: relative(base_curtailed, curtailed),
        cost_reduction: relative(baseline.total_cost(), result.total_cost()),
        mean_price_spread: result.mean_price_spread(),
        baseline_mean_price_spread: baseline.mean_price_spread(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReserveRequirements {
    /// MW per region, in network order.
    pub isolated: Vec<f64>,
    pub shared: f64,
}

impl ReserveRequirements {
    pub fn isolated_total(&self) -> f64 {
        self.isolated.iter().sum()
    }
}

/// Reserve sized as `alpha` times peak demand. With headroom credit, regions
/// joined by interconnectors (capacity > 0) size one reserve on their
/// coincident peak instead of each covering its own.
pub fn reserve_requirements(
    network: &DispatchNetwork,
    alpha: f64,
    link_headroom_credit: bool,
) -> Result<ReserveRequirements> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::invalid("alpha", "must be in (0, 1]"));
    }
    network.validate()?;
    let isolated: Vec<f64> = network.regions.iter().map(|r| alpha * r.peak_demand()).collect();
    let isolated_total: f64 = isolated.iter().sum();
    if !link_headroom_credit {
        return Ok(ReserveRequirements {
            isolated,
            shared: isolated_total,
        });
    }

    let components = components(network);
    let mut shared = 0.0;
    for members in components {
        let coincident = (0..HOURS_PER_DAY)
            .map(|h| members.iter().map(|&r| network.regions[r].demand_at(h)).sum::<f64>())
            .fold(0.0, f64::max);
        shared += alpha * coincident;
    }
    Ok(ReserveRequirements {
        isolated,
        shared: shared.min(isolated_total),
    })
}

/// Regions grouped by connectivity over interconnectors with capacity > 0.
fn components(network: &DispatchNetwork) -> Vec<Vec<usize>> {
    let n = network.regions.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for ic in network.interconnectors.iter().filter(|ic| ic.capacity_mw > 0.0) {
        let (a, b) = (root(&mut parent, ic.endpoints.0), root(&mut parent, ic.endpoints.1));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for r in 0..n {
        let root = root(&mut parent, r);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(r);
    }
    groups
}

#[cfg(test)]
mod tests;
