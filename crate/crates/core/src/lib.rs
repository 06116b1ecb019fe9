//! Techno-economic models for long-distance HVDC interconnections.
//!
//! - [`finance`]: annuitization and currency/price-year normalization
//! - [`transmission`]: route losses, availability, utilization, levelized cost
//! - [`projects`]: published project records and implied cable cost per km
//! - [`scenario`]: generation hubs wired to one or two markets, revenue, trade
//! - [`dispatch`]: hourly multi-region min-cost-flow dispatch
//! - [`profiles`] and [`presets`]: calibration profiles and reference cases

pub mod dispatch;
pub mod error;
pub mod finance;
pub mod presets;
pub mod profiles;
pub mod projects;
pub mod scenario;
pub mod transmission;

pub use error::{Error, Result};
pub use finance::{
    annualized_cost, capital_recovery_factor, normalize_currency, ConversionContext, Currency,
    FinancialAssumptions, MoneyAmount,
};
pub use profiles::CalibrationProfile;
pub use projects::{CostEstimate, CostPerKm, ProjectRecord};
pub use scenario::{
    ConnectionScenario, GenerationSource, PriceModel, Schedule, ScenarioPath, ScenarioResult,
};
pub use transmission::{
    LossComposition, LossModel, Segment, SegmentKind, TransmissionLink, UtilizationModel,
};
