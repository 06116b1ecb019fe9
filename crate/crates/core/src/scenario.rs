//! Generation-connection scenarios: a source wired to one or two markets,
//! its delivered energy, levelized transmission cost, peak-chasing revenue
//! and the residual capacity left for inter-market trade.
//!
//! Energies are GWh/yr, prices €/kWh, revenues € per year.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::finance::FinancialAssumptions;
use crate::transmission::{levelized_cost, TransmissionLink, HOURS_PER_YEAR};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationSource {
    pub capacity_mw: f64,
    pub capacity_factor: f64,
    /// Generation-only cost, €/kWh.
    pub lcoe: f64,
}

impl GenerationSource {
    pub fn validate(&self) -> Result<()> {
        if !(self.capacity_mw.is_finite() && self.capacity_mw > 0.0) {
            return Err(Error::invalid("generation.capacity_mw", "must be > 0"));
        }
        if !(self.capacity_factor > 0.0 && self.capacity_factor <= 1.0) {
            return Err(Error::invalid("generation.capacity_factor", "must be in (0, 1]"));
        }
        if !(self.lcoe.is_finite() && self.lcoe >= 0.0) {
            return Err(Error::invalid("generation.lcoe", "must be >= 0"));
        }
        Ok(())
    }
}

/// Annual energy output in GWh/yr.
pub fn annual_production(source: &GenerationSource) -> f64 {
    source.capacity_mw * HOURS_PER_YEAR * source.capacity_factor / 1000.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceModel {
    /// €/kWh.
    pub peak_price: f64,
    /// Off-peak price as a fraction of the peak price.
    pub offpeak_ratio: f64,
    /// Hours per day each market spends at peak.
    pub peak_window_hours: f64,
}

impl PriceModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.peak_price.is_finite() && self.peak_price > 0.0) {
            return Err(Error::invalid("prices.peak_price", "must be > 0"));
        }
        if !(0.0..=1.0).contains(&self.offpeak_ratio) {
            return Err(Error::invalid("prices.offpeak_ratio", "must be in [0, 1]"));
        }
        if !(self.peak_window_hours > 0.0 && self.peak_window_hours <= 24.0) {
            return Err(Error::invalid("prices.peak_window_hours", "must be in (0, 24]"));
        }
        Ok(())
    }

    /// Time-weighted daily average price for energy delivered flat over the day.
    pub fn flat_average(&self) -> f64 {
        let w = self.peak_window_hours;
        self.peak_price * (w + (24.0 - w) * self.offpeak_ratio) / 24.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    /// Everything goes down the first path.
    #[default]
    AllToSingle,
    /// Output alternates between two markets, always selling at peak.
    PeakChasing,
}

impl Schedule {
    pub fn as_str(self) -> &'static str {
        match self {
            Schedule::AllToSingle => "all_to_single",
            Schedule::PeakChasing => "peak_chasing",
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all_to_single" => Ok(Schedule::AllToSingle),
            "peak_chasing" => Ok(Schedule::PeakChasing),
            _ => Err(Error::invalid("schedule", format!("unknown schedule `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioPath {
    pub link: TransmissionLink,
    pub market: String,
    /// Hour on the common clock at which this market's peak window opens.
    pub tz_offset: i32,
}

impl ScenarioPath {
    pub fn new(link: TransmissionLink, market: impl Into<String>, tz_offset: i32) -> Self {
        Self {
            link,
            market: market.into(),
            tz_offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionScenario {
    pub source: GenerationSource,
    pub paths: Vec<ScenarioPath>,
    pub schedule: Schedule,
    pub trade_enabled: bool,
}

/// Two daily windows of `window` hours opening at `a` and `b` do not overlap.
fn windows_disjoint(a: i32, b: i32, window: f64) -> bool {
    let gap = f64::from((b - a).rem_euclid(24));
    gap >= window && 24.0 - gap >= window
}

impl ConnectionScenario {
    pub fn validate(&self) -> Result<()> {
        self.validate_with_window(12.0)
    }

    pub fn validate_with_window(&self, peak_window_hours: f64) -> Result<()> {
        self.source.validate()?;
        if self.paths.is_empty() {
            return Err(Error::invalid("paths", "empty"));
        }
        if self.paths.len() > 2 {
            return Err(Error::invalid("paths", "at most two paths are supported"));
        }
        for p in &self.paths {
            p.link.validate()?;
            if p.link.capacity_mw < self.source.capacity_mw {
                return Err(Error::invalid(
                    "paths",
                    format!(
                        "path to {} ({} MW) is smaller than the source ({} MW)",
                        p.market, p.link.capacity_mw, self.source.capacity_mw
                    ),
                ));
            }
        }
        if self.schedule == Schedule::PeakChasing {
            if self.paths.len() != 2 {
                return Err(Error::invalid("schedule", "peak_chasing needs exactly two paths"));
            }
            if !windows_disjoint(self.paths[0].tz_offset, self.paths[1].tz_offset, peak_window_hours)
            {
                return Err(Error::invalid(
                    "paths",
                    "peak windows of the two markets overlap",
                ));
            }
        }
        if self.trade_enabled && self.paths.len() != 2 {
            return Err(Error::invalid("trade", "trade needs exactly two paths"));
        }
        Ok(())
    }

    /// GWh/yr injected into each path by the schedule.
    pub fn injections(&self) -> Vec<f64> {
        let production = annual_production(&self.source);
        match self.schedule {
            Schedule::AllToSingle => {
                let mut v = vec![0.0; self.paths.len()];
                v[0] = production;
                v
            }
            Schedule::PeakChasing => vec![production / 2.0; self.paths.len()],
        }
    }

    /// The same source sending everything down the first path.
    pub fn single_path_baseline(&self) -> ConnectionScenario {
        ConnectionScenario {
            source: self.source,
            paths: self.paths[..1].to_vec(),
            schedule: Schedule::AllToSingle,
            trade_enabled: false,
        }
    }

    fn path_deliveries(&self) -> Result<Vec<PathDelivery>> {
        self.paths
            .iter()
            .zip(self.injections())
            .map(|(p, injected)| {
                Ok(PathDelivery {
                    market: p.market.clone(),
                    injected,
                    delivered: p.link.delivered_from_injection(injected)?,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathDelivery {
    pub market: String,
    pub injected: f64,
    pub delivered: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeResult {
    /// Capacity left over after the source's own flow, MW.
    pub residual_mw: f64,
    /// GWh/yr entering the hub-to-hub trade route.
    pub sent: f64,
    /// GWh/yr arriving at the far market.
    pub delivered: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub production: f64,
    pub delivered_per_path: Vec<PathDelivery>,
    /// M€.
    pub total_capex: f64,
    /// €/kWh over everything delivered (wind, plus trade when enabled).
    pub scenario_lcoe: f64,
    pub trade: Option<TradeResult>,
    pub total_delivered: f64,
}

impl ScenarioResult {
    pub fn wind_delivered(&self) -> f64 {
        self.delivered_per_path.iter().map(|p| p.delivered).sum()
    }

    pub fn trade_delivered(&self) -> f64 {
        self.trade.map_or(0.0, |t| t.delivered)
    }
}

pub fn evaluate_connection(
    scenario: &ConnectionScenario,
    fin: &FinancialAssumptions,
) -> Result<ScenarioResult> {
    scenario.validate()?;
    let production = annual_production(&scenario.source);
    let delivered_per_path = scenario.path_deliveries()?;
    let total_capex: f64 = scenario.paths.iter().map(|p| p.link.capex()).sum();
    let trade = if scenario.trade_enabled {
        Some(trade_potential(scenario)?)
    } else {
        None
    };
    let wind: f64 = delivered_per_path.iter().map(|p| p.delivered).sum();
    let total_delivered = wind + trade.map_or(0.0, |t| t.delivered);
    let scenario_lcoe = if total_capex == 0.0 {
        0.0
    } else {
        levelized_cost(total_capex, fin, total_delivered)?
    };
    Ok(ScenarioResult {
        production,
        delivered_per_path,
        total_capex,
        scenario_lcoe,
        trade,
        total_delivered,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevenueComparison {
    /// €/yr under the scenario's schedule.
    pub revenue: f64,
    /// €/yr if everything went down the first path at flat-average prices.
    pub baseline_revenue: f64,
    pub uplift: f64,
}

/// Revenue from selling the source's delivered energy, compared against the
/// single-path baseline.
pub fn revenue(scenario: &ConnectionScenario, prices: &PriceModel) -> Result<RevenueComparison> {
    prices.validate()?;
    scenario.validate_with_window(prices.peak_window_hours)?;
    let sell = |s: &ConnectionScenario| -> Result<f64> {
        let delivered: f64 = s.path_deliveries()?.iter().map(|p| p.delivered).sum();
        let price = match s.schedule {
            Schedule::PeakChasing => prices.peak_price,
            Schedule::AllToSingle => prices.flat_average(),
        };
        // GWh * €/kWh -> €
        Ok(delivered * 1e6 * price)
    };
    let revenue = sell(scenario)?;
    let baseline_revenue = sell(&scenario.single_path_baseline())?;
    Ok(RevenueComparison {
        revenue,
        baseline_revenue,
        uplift: revenue / baseline_revenue - 1.0,
    })
}

/// Inter-market trade carried on the capacity the source leaves unused.
///
/// The source is taken at constant output `cf * capacity`; trade crosses both
/// paths in series, so it is limited by the tighter residual and pays both
/// paths' availability and losses plus the ramping utilization.
pub fn trade_potential(scenario: &ConnectionScenario) -> Result<TradeResult> {
    if !scenario.trade_enabled {
        return Err(Error::invalid("trade", "trade is not enabled for this scenario"));
    }
    if scenario.paths.len() != 2 {
        return Err(Error::invalid("trade", "trade needs exactly two paths"));
    }
    let wind_flow = scenario.source.capacity_factor * scenario.source.capacity_mw;
    let residual_mw = scenario
        .paths
        .iter()
        .map(|p| p.link.capacity_mw - wind_flow)
        .fold(f64::INFINITY, f64::min);
    if residual_mw < 0.0 {
        return Err(Error::invalid(
            "trade",
            format!("negative residual capacity ({residual_mw} MW)"),
        ));
    }
    let sent = residual_mw * HOURS_PER_YEAR / 1000.0;
    let utilization = scenario
        .paths
        .iter()
        .map(|p| p.link.utilization_factor())
        .fold(f64::INFINITY, f64::min);
    let mut delivered = sent * utilization;
    for p in &scenario.paths {
        delivered *= p.link.availability * p.link.route_efficiency()?;
    }
    Ok(TradeResult {
        residual_mw,
        sent,
        delivered,
    })
}

/// Relative increase of the generation-plus-transmission cost per delivered
/// kWh when going from `single` to `dual`.
pub fn delivered_cost_increase(gen_lcoe: f64, single: &ScenarioResult, dual: &ScenarioResult) -> f64 {
    (gen_lcoe + dual.scenario_lcoe) / (gen_lcoe + single.scenario_lcoe) - 1.0
}

/// Revenue over a period divided by the energy the link could deliver in it,
/// in €/kWh.
pub fn revenue_per_delivered_kwh(
    revenue_eur: f64,
    link: &TransmissionLink,
    period_hours: f64,
) -> Result<f64> {
    if !(period_hours.is_finite() && period_hours > 0.0) {
        return Err(Error::invalid("period_hours", "must be > 0"));
    }
    let delivered_kwh = link.capacity_mw
        * period_hours
        * link.utilization_factor()
        * link.availability
        * link.route_efficiency()?
        * 1000.0;
    if delivered_kwh <= 0.0 {
        return Err(Error::invalid("link", "delivers no energy"));
    }
    Ok(revenue_eur / delivered_kwh)
}

/// Margin by which importing remote generation over a link undercuts local
/// supply: `(local - (remote + link)) / local`. Positive favours importing.
pub fn import_competitiveness(remote_gen: f64, link_lcoe: f64, local_cost: f64) -> Result<f64> {
    if !(local_cost.is_finite() && local_cost > 0.0) {
        return Err(Error::invalid("local_cost", "must be > 0"));
    }
    Ok((local_cost - (remote_gen + link_lcoe)) / local_cost)
}
