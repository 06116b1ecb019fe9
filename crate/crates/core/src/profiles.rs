//! Calibration profiles: the parameter sets under which each published
//! result is reproduced.
//!
//! | profile                 | O&M     | utilization | losses |
//! |-------------------------|---------|-------------|--------|
//! | `paper-appendix-A`      | 0       | 5/6         | linear |
//! | `appendix-B-reconciled` | 0.5 %/yr| 5/6         | linear |
//! | `norned`                | 0       | 11/12       | linear |
//! | `custom`                | from input                     |
//!
//! The reconciled O&M rate is a fitted hypothesis, not a published value.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::finance::FinancialAssumptions;
use crate::transmission::{LossComposition, TransmissionLink, UtilizationModel};

pub const DISCOUNT_RATE: f64 = 0.03;
pub const LIFETIME_YEARS: u32 = 40;
pub const RECONCILED_OM_RATE: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CalibrationProfile {
    PaperAppendixA,
    AppendixBReconciled,
    NorNed,
    Custom,
}

impl CalibrationProfile {
    pub const ALL: [CalibrationProfile; 4] = [
        CalibrationProfile::PaperAppendixA,
        CalibrationProfile::AppendixBReconciled,
        CalibrationProfile::NorNed,
        CalibrationProfile::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CalibrationProfile::PaperAppendixA => "paper-appendix-A",
            CalibrationProfile::AppendixBReconciled => "appendix-B-reconciled",
            CalibrationProfile::NorNed => "norned",
            CalibrationProfile::Custom => "custom",
        }
    }

    /// `None` for [`CalibrationProfile::Custom`].
    pub fn finance(self) -> Option<FinancialAssumptions> {
        let om_rate = match self {
            CalibrationProfile::PaperAppendixA | CalibrationProfile::NorNed => 0.0,
            CalibrationProfile::AppendixBReconciled => RECONCILED_OM_RATE,
            CalibrationProfile::Custom => return None,
        };
        Some(FinancialAssumptions {
            discount_rate: DISCOUNT_RATE,
            lifetime: LIFETIME_YEARS,
            om_rate,
        })
    }

    pub fn utilization(self) -> Option<UtilizationModel> {
        match self {
            CalibrationProfile::PaperAppendixA | CalibrationProfile::AppendixBReconciled => {
                Some(UtilizationModel::RAMPING_OFF)
            }
            CalibrationProfile::NorNed => Some(UtilizationModel::RAMPING_HALF),
            CalibrationProfile::Custom => None,
        }
    }

    pub fn composition(self) -> Option<LossComposition> {
        match self {
            CalibrationProfile::Custom => None,
            _ => Some(LossComposition::Linear),
        }
    }

    /// Overrides the link's utilization and loss composition where the
    /// profile pins them.
    pub fn apply(self, link: &TransmissionLink) -> TransmissionLink {
        let mut out = link.clone();
        if let Some(u) = self.utilization() {
            out.utilization = u;
        }
        if let Some(c) = self.composition() {
            out.loss_model.composition = c;
        }
        out
    }
}

impl fmt::Display for CalibrationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CalibrationProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CalibrationProfile::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::invalid("profile", format!("unknown profile `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in CalibrationProfile::ALL {
            assert_eq!(p.name().parse::<CalibrationProfile>().unwrap(), p);
        }
        assert!("appendix-a".parse::<CalibrationProfile>().is_err());
    }

    #[test]
    fn custom_pins_nothing() {
        let p = CalibrationProfile::Custom;
        assert!(p.finance().is_none() && p.utilization().is_none() && p.composition().is_none());
    }

    #[test]
    fn reconciled_differs_only_in_om() {
        let a = CalibrationProfile::PaperAppendixA.finance().unwrap();
        let b = CalibrationProfile::AppendixBReconciled.finance().unwrap();
        assert_eq!(a.discount_rate, b.discount_rate);
        assert_eq!(a.lifetime, b.lifetime);
        assert_eq!(b.om_rate, 0.005);
    }
}
