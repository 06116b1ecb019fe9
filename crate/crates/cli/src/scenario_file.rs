//! TOML scenario files: links, generation, prices, a connection scenario and
//! an optional dispatch network. Unknown keys are rejected everywhere.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use globalgrid_core::dispatch::{
    sinusoid_profile, DispatchNetwork, Generator, Interconnector, Region,
    DEFAULT_PENALTY_EUR_PER_MWH, HOURS_PER_DAY,
};
use globalgrid_core::presets::CostCase;
use globalgrid_core::{
    ConnectionScenario, FinancialAssumptions, GenerationSource, LossComposition, LossModel,
    PriceModel, Schedule, ScenarioPath, Segment, SegmentKind, TransmissionLink, UtilizationModel,
};
use serde::Deserialize;

/// Scenario files shipped with the binary, addressable by name.
pub const BUNDLED: [(&str, &str); 4] = [
    ("greenland", include_str!("../scenarios/greenland.toml")),
    ("transatlantic", include_str!("../scenarios/transatlantic.toml")),
    ("norned", include_str!("../scenarios/norned.toml")),
    ("two-region", include_str!("../scenarios/two-region.toml")),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub finance: Option<FinanceSection>,
    #[serde(default)]
    pub links: BTreeMap<String, LinkDef>,
    pub generation: Option<GenerationSection>,
    pub prices: Option<PricesSection>,
    pub scenario: Option<ScenarioSection>,
    pub network: Option<NetworkSection>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinanceSection {
    pub discount_rate: f64,
    pub lifetime_years: u32,
    #[serde(default)]
    pub om_rate: f64,
}

/// A number, or one number per cost case.
#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CaseValue {
    Fixed(f64),
    ByCase(ByCase),
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ByCase {
    pub low: f64,
    pub high: f64,
}

impl CaseValue {
    fn resolve(self, case: Option<CostCase>) -> Result<f64> {
        match (self, case) {
            (CaseValue::Fixed(v), _) => Ok(v),
            (CaseValue::ByCase(b), Some(CostCase::Low)) => Ok(b.low),
            (CaseValue::ByCase(b), Some(CostCase::High)) => Ok(b.high),
            (CaseValue::ByCase(_), None) => bail!("cost case required for case-dependent costs"),
        }
    }

    fn depends_on_case(self) -> bool {
        matches!(self, CaseValue::ByCase(_))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentDef {
    pub kind: String,
    pub length_km: f64,
    pub unit_cost_meur_per_km: CaseValue,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerminalsDef {
    pub count: u32,
    pub unit_cost_meur: CaseValue,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LossDef {
    #[serde(default = "reference_line_loss")]
    pub line_loss_rate: f64,
    #[serde(default = "reference_terminal_loss")]
    pub terminal_loss: f64,
    #[serde(default)]
    pub composition: Option<String>,
}

fn reference_line_loss() -> f64 {
    LossModel::REFERENCE.line_loss_rate
}

fn reference_terminal_loss() -> f64 {
    LossModel::REFERENCE.terminal_loss
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UtilizationDef {
    pub reduced_hours: f64,
    pub reduced_fraction: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDef {
    #[serde(default)]
    pub segments: Vec<SegmentDef>,
    pub terminals: TerminalsDef,
    pub capacity_mw: f64,
    pub availability: f64,
    pub loss: Option<LossDef>,
    pub utilization: Option<UtilizationDef>,
}

impl LinkDef {
    pub fn depends_on_case(&self) -> bool {
        self.terminals.unit_cost_meur.depends_on_case()
            || self.segments.iter().any(|s| s.unit_cost_meur_per_km.depends_on_case())
    }

    pub fn build(&self, name: &str, case: Option<CostCase>) -> Result<TransmissionLink> {
        let ctx = |what: &str| format!("links.{name}.{what}");
        let segments = self
            .segments
            .iter()
            .map(|s| {
                let kind: SegmentKind = s.kind.parse().with_context(|| ctx("segments"))?;
                let cost = s.unit_cost_meur_per_km.resolve(case).with_context(|| ctx("segments"))?;
                Segment::new(kind, s.length_km, cost).with_context(|| ctx("segments"))
            })
            .collect::<Result<Vec<_>>>()?;
        let loss_model = match &self.loss {
            None => LossModel::REFERENCE,
            Some(l) => LossModel {
                line_loss_rate: l.line_loss_rate,
                terminal_loss: l.terminal_loss,
                composition: match &l.composition {
                    None => LossComposition::default(),
                    Some(c) => c.parse().with_context(|| ctx("loss"))?,
                },
            },
        };
        let utilization = self.utilization.map_or(UtilizationModel::RAMPING_OFF, |u| {
            UtilizationModel {
                reduced_hours: u.reduced_hours,
                reduced_fraction: u.reduced_fraction,
            }
        });
        let link = TransmissionLink {
            segments,
            terminal_count: self.terminals.count,
            terminal_unit_cost: self.terminals.unit_cost_meur.resolve(case)?,
            capacity_mw: self.capacity_mw,
            availability: self.availability,
            loss_model,
            utilization,
        };
        link.validate().with_context(|| format!("links.{name}"))?;
        Ok(link)
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationSection {
    pub capacity_mw: f64,
    pub capacity_factor: f64,
    pub lcoe_eur_per_kwh: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PricesSection {
    pub peak_price_eur_per_kwh: f64,
    pub offpeak_ratio: f64,
    #[serde(default = "default_window")]
    pub peak_window_hours: f64,
}

fn default_window() -> f64 {
    12.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathDef {
    pub link: String,
    pub market: String,
    #[serde(default)]
    pub tz_offset: i32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub paths: Vec<PathDef>,
    #[serde(default)]
    pub schedule: Option<String>,
    #[serde(default)]
    pub trade: bool,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SinusoidDef {
    pub peak_mw: f64,
    #[serde(default = "default_trough")]
    pub trough_ratio: f64,
    pub peak_hour: f64,
}

fn default_trough() -> f64 {
    0.5
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDef {
    pub name: String,
    pub capacity_mw: f64,
    pub marginal_cost_eur_per_mwh: f64,
    pub availability: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionDef {
    pub name: String,
    #[serde(default)]
    pub tz_offset: i32,
    pub demand_mw: Option<Vec<f64>>,
    pub demand_sinusoid: Option<SinusoidDef>,
    #[serde(default)]
    pub generators: Vec<GeneratorDef>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterconnectorDef {
    pub from: String,
    pub to: String,
    pub capacity_mw: f64,
    #[serde(default = "unit")]
    pub efficiency: f64,
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSection {
    #[serde(default = "default_hours")]
    pub hours: usize,
    #[serde(default = "default_penalty")]
    pub penalty_eur_per_mwh: f64,
    pub regions: Vec<RegionDef>,
    #[serde(default)]
    pub interconnectors: Vec<InterconnectorDef>,
}

fn default_hours() -> usize {
    HOURS_PER_DAY
}

fn default_penalty() -> f64 {
    DEFAULT_PENALTY_EUR_PER_MWH
}

impl NetworkSection {
    pub fn build(&self) -> Result<DispatchNetwork> {
        let regions = self
            .regions
            .iter()
            .map(|r| {
                let demand_profile = match (&r.demand_mw, r.demand_sinusoid) {
                    (Some(d), None) => d.clone(),
                    (None, Some(s)) => sinusoid_profile(s.peak_mw, s.trough_ratio, s.peak_hour),
                    _ => bail!(
                        "network.regions.{}: exactly one of demand_mw or demand_sinusoid is required",
                        r.name
                    ),
                };
                let generators = r
                    .generators
                    .iter()
                    .map(|g| {
                        let gen = Generator::new(&g.name, g.capacity_mw, g.marginal_cost_eur_per_mwh);
                        match &g.availability {
                            Some(a) => gen.with_availability(a.clone()),
                            None => gen,
                        }
                    })
                    .collect();
                Ok(Region {
                    name: r.name.clone(),
                    tz_offset: r.tz_offset,
                    demand_profile,
                    generators,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut net = DispatchNetwork::new(regions);
        net.penalty = self.penalty_eur_per_mwh;
        for ic in &self.interconnectors {
            let a = region(&net, &ic.from)?;
            let b = region(&net, &ic.to)?;
            net.interconnectors.push(Interconnector {
                endpoints: (a, b),
                capacity_mw: ic.capacity_mw,
                efficiency: ic.efficiency,
            });
        }
        net.validate().context("network")?;
        Ok(net)
    }
}

fn region(net: &DispatchNetwork, name: &str) -> Result<usize> {
    net.region_index(name)
        .ok_or_else(|| anyhow!("network.interconnectors: unknown region `{name}`"))
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| anyhow!("{}", e.to_string().trim_end()))
    }

    /// A bundled name or a path to a TOML file.
    pub fn load(name_or_path: &str) -> Result<Self> {
        if let Some((_, text)) = BUNDLED.iter().find(|(name, _)| *name == name_or_path) {
            return Self::parse(text).with_context(|| format!("bundled scenario `{name_or_path}`"));
        }
        let path = Path::new(name_or_path);
        if !path.exists() {
            let names: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
            bail!(
                "scenario: `{name_or_path}` is neither a file nor a bundled scenario ({})",
                names.join(", ")
            );
        }
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("scenario: cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("scenario file {}", path.display()))
    }

    pub fn finance(&self) -> Result<FinancialAssumptions> {
        let f = self
            .finance
            .ok_or_else(|| anyhow!("finance: section required for the custom profile"))?;
        Ok(FinancialAssumptions::new(f.discount_rate, f.lifetime_years, f.om_rate)?)
    }

    pub fn link(&self, name: &str, case: Option<CostCase>) -> Result<TransmissionLink> {
        self.links
            .get(name)
            .ok_or_else(|| anyhow!("links: unknown link `{name}`"))?
            .build(name, case)
    }

    /// True when any link referenced by the file has per-case costs.
    pub fn depends_on_case(&self) -> bool {
        self.links.values().any(LinkDef::depends_on_case)
    }

    pub fn source(&self) -> Result<GenerationSource> {
        let g = self
            .generation
            .ok_or_else(|| anyhow!("generation: section required"))?;
        let source = GenerationSource {
            capacity_mw: g.capacity_mw,
            capacity_factor: g.capacity_factor,
            lcoe: g.lcoe_eur_per_kwh,
        };
        source.validate()?;
        Ok(source)
    }

    pub fn prices(&self) -> Result<Option<PriceModel>> {
        self.prices
            .map(|p| {
                let m = PriceModel {
                    peak_price: p.peak_price_eur_per_kwh,
                    offpeak_ratio: p.offpeak_ratio,
                    peak_window_hours: p.peak_window_hours,
                };
                m.validate()?;
                Ok(m)
            })
            .transpose()
    }

    pub fn connection(&self, case: Option<CostCase>) -> Result<ConnectionScenario> {
        let s = self
            .scenario
            .as_ref()
            .ok_or_else(|| anyhow!("scenario: section required"))?;
        let paths = s
            .paths
            .iter()
            .map(|p| Ok(ScenarioPath::new(self.link(&p.link, case)?, &p.market, p.tz_offset)))
            .collect::<Result<Vec<_>>>()?;
        let schedule: Schedule = match &s.schedule {
            None => Schedule::default(),
            Some(v) => v.parse().context("scenario.schedule")?,
        };
        let scenario = ConnectionScenario {
            source: self.source()?,
            paths,
            schedule,
            trade_enabled: s.trade,
        };
        let window = self.prices()?.map_or(12.0, |p| p.peak_window_hours);
        scenario.validate_with_window(window)?;
        Ok(scenario)
    }

    pub fn network(&self) -> Result<DispatchNetwork> {
        self.network
            .as_ref()
            .ok_or_else(|| anyhow!("network: section required"))?
            .build()
    }
}
