//! HVDC route model: segments, converter terminals, losses, availability,
//! ramping utilization, delivered energy and levelized transmission cost.
//!
//! Units: lengths in km, costs in M€, capacities in MW, energies in GWh/yr.
//! Since 1 M€ / 1 GWh = 1 €/kWh, levelized costs come out directly in €/kWh.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::finance::{annualized_cost, FinancialAssumptions};

pub const HOURS_PER_YEAR: f64 = 8760.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    SubmarineCable,
    OverheadLine,
}

impl SegmentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SegmentKind::SubmarineCable => "submarine_cable",
            SegmentKind::OverheadLine => "overhead_line",
        }
    }
}

impl fmt::Display for SegmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SegmentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "submarine_cable" => Ok(SegmentKind::SubmarineCable),
            "overhead_line" => Ok(SegmentKind::OverheadLine),
            _ => Err(Error::invalid("kind", format!("unknown segment kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub length_km: f64,
    /// M€ per km.
    pub unit_cost: f64,
}

impl Segment {
    pub fn new(kind: SegmentKind, length_km: f64, unit_cost: f64) -> Result<Self> {
        if !(length_km.is_finite() && length_km > 0.0) {
            return Err(Error::invalid("length_km", "must be > 0"));
        }
        if !(unit_cost.is_finite() && unit_cost >= 0.0) {
            return Err(Error::invalid("unit_cost", "must be >= 0"));
        }
        Ok(Self {
            kind,
            length_km,
            unit_cost,
        })
    }

    pub fn cable(length_km: f64, unit_cost: f64) -> Result<Self> {
        Self::new(SegmentKind::SubmarineCable, length_km, unit_cost)
    }

    pub fn overhead(length_km: f64, unit_cost: f64) -> Result<Self> {
        Self::new(SegmentKind::OverheadLine, length_km, unit_cost)
    }

    pub fn cost(&self) -> f64 {
        self.length_km * self.unit_cost
    }
}

/// How line and terminal losses combine into a route efficiency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LossComposition {
    /// `(1 - rate * L/1000) * (1 - terminal_loss * n)`
    #[default]
    Linear,
    /// `(1 - rate)^(L/1000) * (1 - terminal_loss)^n`
    Compound,
}

impl LossComposition {
    pub fn as_str(self) -> &'static str {
        match self {
            LossComposition::Linear => "linear",
            LossComposition::Compound => "compound",
        }
    }
}

impl FromStr for LossComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(LossComposition::Linear),
            "compound" => Ok(LossComposition::Compound),
            _ => Err(Error::invalid(
                "composition",
                format!("unknown loss composition `{s}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossModel {
    /// Fraction lost per 1000 km of line.
    pub line_loss_rate: f64,
    /// Fraction lost in each converter terminal.
    pub terminal_loss: f64,
    pub composition: LossComposition,
}

impl LossModel {
    /// 3 %/1000 km line losses and 0.6 % per terminal, composed linearly.
    pub const REFERENCE: LossModel = LossModel {
        line_loss_rate: 0.03,
        terminal_loss: 0.006,
        composition: LossComposition::Linear,
    };

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.line_loss_rate) {
            return Err(Error::invalid("line_loss_rate", "must be in [0, 1)"));
        }
        if !(0.0..1.0).contains(&self.terminal_loss) {
            return Err(Error::invalid("terminal_loss", "must be in [0, 1)"));
        }
        Ok(())
    }

    pub fn with_composition(self, composition: LossComposition) -> Self {
        Self {
            composition,
            ..self
        }
    }

    /// Efficiency of `length_km` of line and `terminals` converter stations.
    pub fn efficiency(&self, length_km: f64, terminals: u32) -> Result<f64> {
        self.validate()?;
        let thousands = length_km / 1000.0;
        match self.composition {
            LossComposition::Linear => {
                let line = 1.0 - self.line_loss_rate * thousands;
                let stations = 1.0 - self.terminal_loss * f64::from(terminals);
                if line <= 0.0 {
                    return Err(Error::invalid(
                        "line_loss_rate",
                        format!("total linear line loss over {length_km} km reaches 100%"),
                    ));
                }
                if stations <= 0.0 {
                    return Err(Error::invalid(
                        "terminal_loss",
                        format!("total terminal loss over {terminals} terminals reaches 100%"),
                    ));
                }
                Ok(line * stations)
            }
            LossComposition::Compound => Ok((1.0 - self.line_loss_rate).powf(thousands)
                * (1.0 - self.terminal_loss).powi(terminals as i32)),
        }
    }
}

/// Hours per day spent at reduced transfer capacity around flow reversals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilizationModel {
    pub reduced_hours: f64,
    /// Fraction of rated capacity usable during the reduced hours.
    pub reduced_fraction: f64,
}

impl UtilizationModel {
    /// Four hours a day at zero capacity: 5/6.
    pub const RAMPING_OFF: UtilizationModel = UtilizationModel {
        reduced_hours: 4.0,
        reduced_fraction: 0.0,
    };
    /// Four hours a day at half capacity: 11/12.
    pub const RAMPING_HALF: UtilizationModel = UtilizationModel {
        reduced_hours: 4.0,
        reduced_fraction: 0.5,
    };
    pub const FULL: UtilizationModel = UtilizationModel {
        reduced_hours: 0.0,
        reduced_fraction: 1.0,
    };

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=24.0).contains(&self.reduced_hours) {
            return Err(Error::invalid("reduced_hours", "must be in [0, 24]"));
        }
        if !(0.0..=1.0).contains(&self.reduced_fraction) {
            return Err(Error::invalid("reduced_fraction", "must be in [0, 1]"));
        }
        Ok(())
    }

    pub fn factor(&self) -> f64 {
        utilization_factor(self)
    }
}

/// Average usable fraction of rated capacity over a day.
pub fn utilization_factor(u: &UtilizationModel) -> f64 {
    ((24.0 - u.reduced_hours) + u.reduced_hours * u.reduced_fraction) / 24.0
}

/// A point-to-point route: ordered segments plus converter terminals.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionLink {
    pub segments: Vec<Segment>,
    pub terminal_count: u32,
    /// M€ per terminal.
    pub terminal_unit_cost: f64,
    pub capacity_mw: f64,
    pub availability: f64,
    pub loss_model: LossModel,
    pub utilization: UtilizationModel,
}

impl TransmissionLink {
    pub fn validate(&self) -> Result<()> {
        if !(self.capacity_mw.is_finite() && self.capacity_mw > 0.0) {
            return Err(Error::invalid("capacity_mw", "must be > 0"));
        }
        if !(self.availability > 0.0 && self.availability <= 1.0) {
            return Err(Error::invalid("availability", "must be in (0, 1]"));
        }
        if !(self.terminal_unit_cost.is_finite() && self.terminal_unit_cost >= 0.0) {
            return Err(Error::invalid("terminal_unit_cost", "must be >= 0"));
        }
        for seg in &self.segments {
            if !(seg.length_km.is_finite() && seg.length_km > 0.0) {
                return Err(Error::invalid("length_km", "must be > 0"));
            }
            if !(seg.unit_cost.is_finite() && seg.unit_cost >= 0.0) {
                return Err(Error::invalid("unit_cost", "must be >= 0"));
            }
        }
        self.loss_model.validate()?;
        self.utilization.validate()?;
        // surfaces the linear-loss ceiling as a validation error
        self.route_efficiency().map(|_| ())
    }

    pub fn total_length_km(&self) -> f64 {
        self.segments.iter().map(|s| s.length_km).sum()
    }

    pub fn length_of(&self, kind: SegmentKind) -> f64 {
        self.segments
            .iter()
            .filter(|s| s.kind == kind)
            .map(|s| s.length_km)
            .sum()
    }

    /// Segment costs plus terminal costs, in M€.
    pub fn capex(&self) -> f64 {
        self.segments.iter().map(Segment::cost).sum::<f64>()
            + f64::from(self.terminal_count) * self.terminal_unit_cost
    }

    pub fn route_efficiency(&self) -> Result<f64> {
        self.loss_model
            .efficiency(self.total_length_km(), self.terminal_count)
    }

    pub fn utilization_factor(&self) -> f64 {
        utilization_factor(&self.utilization)
    }

    /// Largest energy the link can physically carry in a year, ignoring the
    /// ramping constraint (GWh/yr at the sending end).
    pub fn max_injection(&self) -> f64 {
        self.capacity_mw * HOURS_PER_YEAR * self.availability / 1000.0
    }

    /// Capacity-based annual deliverable energy (GWh/yr), used for
    /// interconnector duty.
    pub fn deliverable_energy(&self) -> Result<f64> {
        Ok(self.capacity_mw * HOURS_PER_YEAR / 1000.0
            * self.utilization_factor()
            * self.availability
            * self.route_efficiency()?)
    }

    /// Energy arriving at the far end when `injected` GWh/yr enter the link.
    /// The ramping utilization is not applied here.
    pub fn delivered_from_injection(&self, injected: f64) -> Result<f64> {
        if !(injected.is_finite() && injected >= 0.0) {
            return Err(Error::invalid("injected", "must be >= 0"));
        }
        let ceiling = self.max_injection();
        if injected > ceiling * (1.0 + 1e-12) {
            return Err(Error::invalid(
                "injected",
                format!("{injected} GWh/yr exceeds the link's physical maximum of {ceiling} GWh/yr"),
            ));
        }
        Ok(injected * self.availability * self.route_efficiency()?)
    }

    /// Joins two routes end to end (lengths and terminal counts add).
    /// Cost and operating parameters are taken from `self`.
    pub fn concat(&self, other: &TransmissionLink) -> TransmissionLink {
        let mut joined = self.clone();
        joined.segments.extend(other.segments.iter().cloned());
        joined.terminal_count += other.terminal_count;
        joined
    }
}

/// Annualized capex (plus O&M) per unit of delivered energy, in €/kWh.
pub fn transmission_lcoe(
    link: &TransmissionLink,
    fin: &FinancialAssumptions,
    delivered: f64,
) -> Result<f64> {
    levelized_cost(link.capex(), fin, delivered)
}

/// `annualized_cost(capex) / delivered` with capex in M€ and delivered in GWh/yr.
pub fn levelized_cost(capex: f64, fin: &FinancialAssumptions, delivered: f64) -> Result<f64> {
    if !(delivered.is_finite() && delivered > 0.0) {
        return Err(Error::invalid("delivered", "must be > 0"));
    }
    Ok(annualized_cost(capex, fin)? / delivered)
}
