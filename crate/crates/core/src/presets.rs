//! Built-in link, source and scenario definitions for the reference cases:
//! the 3 GW transatlantic cable, the Greenland wind hub, and NorNed.

use std::fmt;
use std::str::FromStr;

use crate::dispatch::{sinusoid_profile, DispatchNetwork, Generator, Region};
use crate::error::{Error, Result};
use crate::scenario::{
    ConnectionScenario, GenerationSource, PriceModel, Schedule, ScenarioPath,
};
use crate::transmission::{LossModel, Segment, TransmissionLink, UtilizationModel};

pub const TERMINAL_COST_MEUR: f64 = 300.0;
pub const OVERHEAD_COST_MEUR_PER_KM: f64 = 0.6;
pub const AVAILABILITY: f64 = 0.99;
pub const HUB_CAPACITY_MW: f64 = 3000.0;
pub const TRANSATLANTIC_LENGTH_KM: f64 = 5500.0;
pub const HALIFAX_OPORTO_LENGTH_KM: f64 = 4400.0;

pub const WIND_CAPACITY_FACTOR: f64 = 0.4;
pub const WIND_LCOE_EUR_PER_KWH: f64 = 0.06;

pub const NORNED_CAPACITY_MW: f64 = 700.0;
pub const NORNED_LENGTH_KM: f64 = 580.0;
pub const NORNED_REVENUE_EUR: f64 = 50e6;
pub const NORNED_REVENUE_DAYS: f64 = 61.0;

/// Submarine cable cost assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostCase {
    /// 1.15 M€/km, the dearest completed project per km.
    Low,
    /// 1.8 M€/km.
    High,
}

impl CostCase {
    pub const BOTH: [CostCase; 2] = [CostCase::Low, CostCase::High];

    pub fn cable_cost_meur_per_km(self) -> f64 {
        match self {
            CostCase::Low => 1.15,
            CostCase::High => 1.8,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CostCase::Low => "low",
            CostCase::High => "high",
        }
    }
}

impl fmt::Display for CostCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CostCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" => Ok(CostCase::Low),
            "high" => Ok(CostCase::High),
            _ => Err(Error::invalid("case", format!("unknown cost case `{s}`"))),
        }
    }
}

fn hub_link(segments: Vec<Segment>) -> TransmissionLink {
    TransmissionLink {
        segments,
        terminal_count: 2,
        terminal_unit_cost: TERMINAL_COST_MEUR,
        capacity_mw: HUB_CAPACITY_MW,
        availability: AVAILABILITY,
        loss_model: LossModel::REFERENCE,
        utilization: UtilizationModel::RAMPING_OFF,
    }
}

/// A single 3 GW submarine cable with two 300 M€ terminals.
pub fn reference_cable(length_km: f64, case: CostCase) -> Result<TransmissionLink> {
    Ok(hub_link(vec![Segment::cable(
        length_km,
        case.cable_cost_meur_per_km(),
    )?]))
}

/// Tasiilaq - Reykjavik - Reydarfjördur - Faroe Islands - North UK.
pub fn greenland_uk_link(case: CostCase) -> TransmissionLink {
    let cable = case.cable_cost_meur_per_km();
    hub_link(vec![
        Segment::cable(770.0, cable).unwrap(),
        Segment::overhead(387.0, OVERHEAD_COST_MEUR_PER_KM).unwrap(),
        Segment::cable(452.0, cable).unwrap(),
        Segment::cable(457.0, cable).unwrap(),
    ])
}

/// Tasiilaq - Nuuk - Auyuittuq - North Quebec - Quebec City.
pub fn greenland_quebec_link(case: CostCase) -> TransmissionLink {
    let cable = case.cable_cost_meur_per_km();
    hub_link(vec![
        Segment::overhead(667.0, OVERHEAD_COST_MEUR_PER_KM).unwrap(),
        Segment::cable(550.0, cable).unwrap(),
        Segment::cable(510.0, cable).unwrap(),
        Segment::overhead(1542.0, OVERHEAD_COST_MEUR_PER_KM).unwrap(),
    ])
}

pub fn greenland_wind() -> GenerationSource {
    GenerationSource {
        capacity_mw: HUB_CAPACITY_MW,
        capacity_factor: WIND_CAPACITY_FACTOR,
        lcoe: WIND_LCOE_EUR_PER_KWH,
    }
}

/// Wind hub wired to the UK only.
pub fn greenland_single(case: CostCase) -> ConnectionScenario {
    ConnectionScenario {
        source: greenland_wind(),
        paths: vec![ScenarioPath::new(greenland_uk_link(case), "UK", 0)],
        schedule: Schedule::AllToSingle,
        trade_enabled: false,
    }
}

/// Wind hub wired to the UK and Quebec, selling into whichever market is
/// at peak. Peak windows are idealized as 12 h apart.
pub fn greenland_dual(case: CostCase, trade_enabled: bool) -> ConnectionScenario {
    ConnectionScenario {
        source: greenland_wind(),
        paths: vec![
            ScenarioPath::new(greenland_uk_link(case), "UK", 0),
            ScenarioPath::new(greenland_quebec_link(case), "Quebec", 12),
        ],
        schedule: Schedule::PeakChasing,
        trade_enabled,
    }
}

/// Off-peak at half the peak price, 12 h peak window.
pub fn half_price_offpeak(peak_price: f64) -> PriceModel {
    PriceModel {
        peak_price,
        offpeak_ratio: 0.5,
        peak_window_hours: 12.0,
    }
}

/// NorNed: 700 MW, 580 km, two converters, 11/12 utilization.
pub fn norned_link() -> TransmissionLink {
    TransmissionLink {
        segments: vec![Segment::cable(NORNED_LENGTH_KM, 0.52).unwrap()],
        terminal_count: 2,
        terminal_unit_cost: 150.0,
        capacity_mw: NORNED_CAPACITY_MW,
        availability: AVAILABILITY,
        loss_model: LossModel::REFERENCE,
        utilization: UtilizationModel::RAMPING_HALF,
    }
}

/// Two anti-phase regions (12 h apart). `EU` has 1.2 GW of must-take wind
/// against a 0.5-1 GW load, `US` runs on a CCGT and an expensive peaker.
/// With an interconnector of at least 700 MW every MWh of wind surplus fits
/// into the other region's load.
pub fn two_region_night_wind(link_mw: f64, efficiency: f64) -> DispatchNetwork {
    let eu = Region {
        name: "EU".into(),
        tz_offset: 0,
        demand_profile: sinusoid_profile(1000.0, 0.5, 12.0),
        generators: vec![
            Generator::new("wind", 1200.0, 0.0),
            Generator::new("gas", 800.0, 60.0),
        ],
    };
    let us = Region {
        name: "US".into(),
        tz_offset: 12,
        demand_profile: sinusoid_profile(1000.0, 0.5, 12.0),
        generators: vec![
            Generator::new("ccgt", 700.0, 40.0),
            Generator::new("peaker", 600.0, 120.0),
        ],
    };
    let mut net = DispatchNetwork::new(vec![eu, us]);
    net.connect("EU", "US", link_mw, efficiency)
        .expect("both regions exist");
    net
}
