//! Capital annuitization and currency/price-year normalization.
//!
//! All monetary computations are unrounded; rounding happens only when a
//! report is rendered.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Discount rate, economic lifetime and fixed O&M rate of an investment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinancialAssumptions {
    /// Fraction per year.
    pub discount_rate: f64,
    /// Whole years.
    pub lifetime: u32,
    /// Fixed operations and maintenance, as a fraction of capex per year.
    pub om_rate: f64,
}

impl FinancialAssumptions {
    pub fn new(discount_rate: f64, lifetime: u32, om_rate: f64) -> Result<Self> {
        let fin = Self {
            discount_rate,
            lifetime,
            om_rate,
        };
        fin.validate()?;
        Ok(fin)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.discount_rate.is_finite() && self.discount_rate >= 0.0) {
            return Err(Error::invalid("discount_rate", "must be >= 0"));
        }
        if self.lifetime < 1 {
            return Err(Error::invalid("lifetime", "must be >= 1 year"));
        }
        if !(self.om_rate >= 0.0 && self.om_rate < 1.0) {
            return Err(Error::invalid("om_rate", "must be in [0, 1)"));
        }
        Ok(())
    }

    pub fn capital_recovery_factor(&self) -> Result<f64> {
        capital_recovery_factor(self.discount_rate, self.lifetime)
    }
}

/// Annuity factor `r(1+r)^N / ((1+r)^N - 1)` with end-of-period payments.
///
/// At `rate == 0` the straight-line limit `1/N` is returned.
pub fn capital_recovery_factor(rate: f64, years: u32) -> Result<f64> {
    if years == 0 {
        return Err(Error::invalid("years", "must be >= 1"));
    }
    if !rate.is_finite() || rate <= -1.0 {
        return Err(Error::invalid("rate", "must be finite and > -1"));
    }
    let n = f64::from(years);
    if rate == 0.0 {
        return Ok(1.0 / n);
    }
    // (1+r)^N - 1 computed via exp_m1 to keep precision for tiny rates
    let growth_minus_one = (n * rate.ln_1p()).exp_m1();
    Ok(rate * (growth_minus_one + 1.0) / growth_minus_one)
}

/// Constant yearly payment covering capital recovery plus fixed O&M.
pub fn annualized_cost(capex: f64, fin: &FinancialAssumptions) -> Result<f64> {
    if !(capex.is_finite() && capex >= 0.0) {
        return Err(Error::invalid("capex", "must be finite and >= 0"));
    }
    fin.validate()?;
    Ok(capex * (fin.capital_recovery_factor()? + fin.om_rate))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Currency {
    Eur,
    Usd,
    Gbp,
}

impl Currency {
    pub fn code(self) -> &'static str {
        match self {
            Currency::Eur => "EUR",
            Currency::Usd => "USD",
            Currency::Gbp => "GBP",
        }
    }
}

impl fmt::Display for Currency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Currency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "EUR" => Ok(Currency::Eur),
            "USD" => Ok(Currency::Usd),
            "GBP" => Ok(Currency::Gbp),
            _ => Err(Error::invalid("currency", format!("unknown currency `{s}`"))),
        }
    }
}

/// A value tagged with its currency and price year.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoneyAmount {
    pub value: f64,
    pub currency: Currency,
    pub price_year: i32,
}

impl MoneyAmount {
    pub fn new(value: f64, currency: Currency, price_year: i32) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::invalid("value", "must be finite"));
        }
        if !(1900..=2100).contains(&price_year) {
            return Err(Error::invalid("price_year", "must be in [1900, 2100]"));
        }
        Ok(Self {
            value,
            currency,
            price_year,
        })
    }
}

/// Exchange rate and yearly inflation used to restate a [`MoneyAmount`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConversionContext {
    /// Target-currency units per source-currency unit.
    pub fx_rate: f64,
    /// Fraction per year.
    pub inflation_rate: f64,
    pub target: Currency,
}

impl ConversionContext {
    pub fn new(fx_rate: f64, inflation_rate: f64, target: Currency) -> Result<Self> {
        if !(fx_rate.is_finite() && fx_rate > 0.0) {
            return Err(Error::invalid("fx_rate", "must be > 0"));
        }
        if !(inflation_rate.is_finite() && inflation_rate > -1.0) {
            return Err(Error::invalid("inflation_rate", "must be > -1"));
        }
        Ok(Self {
            fx_rate,
            inflation_rate,
            target,
        })
    }

    /// Context for a rate quoted the other way round (source units per
    /// target unit), i.e. conversion divides by the quoted rate.
    pub fn from_inverse_quote(quoted: f64, inflation_rate: f64, target: Currency) -> Result<Self> {
        if !(quoted.is_finite() && quoted > 0.0) {
            return Err(Error::invalid("fx_rate", "must be > 0"));
        }
        Self::new(1.0 / quoted, inflation_rate, target)
    }
}

/// Restate `amount` in `ctx.target` currency at `target_year` prices.
pub fn normalize_currency(
    amount: MoneyAmount,
    ctx: &ConversionContext,
    target_year: i32,
) -> Result<MoneyAmount> {
    if target_year < amount.price_year {
        return Err(Error::invalid(
            "target_year",
            format!(
                "{target_year} precedes price year {} (deflation is not modelled)",
                amount.price_year
            ),
        ));
    }
    let years = target_year - amount.price_year;
    let value = amount.value * ctx.fx_rate * (1.0 + ctx.inflation_rate).powi(years);
    MoneyAmount::new(value, ctx.target, target_year)
}
