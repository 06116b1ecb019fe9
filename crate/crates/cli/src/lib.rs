//! Command-line front end for the `globalgrid` toolkit.
//!
//! [`run`] parses arguments, executes one subcommand and writes its reports.
//! It returns the process exit status: 0 on success, 2 on any input error.

pub mod commands;
pub mod report;
pub mod scenario_file;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use globalgrid_core::presets::CostCase;
use globalgrid_core::{CalibrationProfile, Currency};

use crate::commands::{
    CompareImportArgs, LcoeArgs, NormalizeArgs, NornedArgs, ProjectTableArgs, ScenarioArgs,
    SimulateArgs,
};
use crate::report::{render_all, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "globalgrid", version, about = "Cost and benefit models for intercontinental HVDC links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format: table, csv or markdown.
    #[arg(long, default_value = "table", global = true)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Levelized transmission cost of a point-to-point link.
    Lcoe {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "paper-appendix-A")]
        profile: CalibrationProfile,
        /// Cable cost case (low or high); both when omitted.
        #[arg(long)]
        case: Option<CostCase>,
        /// Cable length of the reference link.
        #[arg(long)]
        length_km: Option<f64>,
        /// Evaluate every link of a scenario file instead.
        #[arg(long)]
        scenario: Option<String>,
    },
    /// Implied cable cost per km of completed HVDC projects.
    ProjectTable {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "paper-appendix-A")]
        profile: CalibrationProfile,
        /// Assumed cost of one converter station, M€.
        #[arg(long, default_value_t = 150.0)]
        converter_cost: f64,
        /// Project CSV; the bundled table when omitted.
        #[arg(long)]
        projects: Option<String>,
    },
    /// Single versus dual connection of a remote generator.
    Scenario {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "appendix-B-reconciled")]
        profile: CalibrationProfile,
        #[arg(long)]
        case: Option<CostCase>,
        #[arg(long, default_value = "greenland")]
        scenario: String,
    },
    /// Trade carried on the capacity a generator leaves unused.
    Trade {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "appendix-B-reconciled")]
        profile: CalibrationProfile,
        #[arg(long)]
        case: Option<CostCase>,
        #[arg(long, default_value = "greenland")]
        scenario: String,
    },
    /// Arbitrage revenue per delivered kWh of an existing link.
    Norned {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "norned")]
        profile: CalibrationProfile,
        /// Revenue earned over the period, €.
        #[arg(long, default_value_t = 50e6)]
        revenue_eur: f64,
        /// Length of the revenue period in days.
        #[arg(long, default_value_t = 61.0)]
        days: f64,
        /// Scenario file holding exactly one link.
        #[arg(long)]
        scenario: Option<String>,
    },
    /// Imported remote generation versus local supply.
    CompareImport {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "paper-appendix-A")]
        profile: CalibrationProfile,
        /// Remote generation cost per kWh.
        #[arg(long)]
        remote: Option<f64>,
        /// Transmission cost per kWh.
        #[arg(long)]
        link: Option<f64>,
        /// Local generation cost per kWh.
        #[arg(long)]
        local: Option<f64>,
    },
    /// Hourly multi-region dispatch with and without interconnectors.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "custom")]
        profile: CalibrationProfile,
        #[arg(long, default_value = "two-region")]
        scenario: String,
        /// Number of hours; the scenario's value when omitted.
        #[arg(long)]
        hours: Option<usize>,
        /// Reserve requirement as a fraction of peak demand.
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
    },
    /// Restate a monetary amount in another currency and price year.
    Normalize {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "paper-appendix-A")]
        profile: CalibrationProfile,
        #[arg(long, allow_negative_numbers = true)]
        value: f64,
        #[arg(long)]
        from: Currency,
        #[arg(long, default_value_t = 2007)]
        from_year: i32,
        #[arg(long)]
        to: Currency,
        /// Defaults to the source year.
        #[arg(long)]
        to_year: Option<i32>,
        /// Target units per source unit (source units per target unit with --inverse).
        #[arg(long)]
        fx: f64,
        /// Annual inflation applied per year of restatement.
        #[arg(long, default_value_t = 0.0)]
        inflation: f64,
        #[arg(long)]
        inverse: bool,
        /// Also report the result divided by this length.
        #[arg(long)]
        per_km: Option<f64>,
    },
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (format, result) = execute(cli.command);
    match result {
        Ok(reports) => {
            if out.write_all(render_all(&reports, format).as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT
        }
    }
}

fn execute(command: Command) -> (Format, anyhow::Result<Vec<report::Report>>) {
    match command {
        Command::Lcoe { common, profile, case, length_km, scenario } => (
            common.format,
            commands::lcoe(&LcoeArgs { profile, case, length_km, scenario }),
        ),
        Command::ProjectTable { common, profile, converter_cost, projects } => (
            common.format,
            commands::project_table(&ProjectTableArgs { profile, converter_cost, projects }),
        ),
        Command::Scenario { common, profile, case, scenario } => (
            common.format,
            commands::scenario(&ScenarioArgs { profile, case, scenario }),
        ),
        Command::Trade { common, profile, case, scenario } => (
            common.format,
            commands::trade(&ScenarioArgs { profile, case, scenario }),
        ),
        Command::Norned { common, profile, revenue_eur, days, scenario } => (
            common.format,
            commands::norned(&NornedArgs { profile, revenue_eur, days, scenario }),
        ),
        Command::CompareImport { common, profile, remote, link, local } => (
            common.format,
            commands::compare_import(&CompareImportArgs { profile, remote, link, local }),
        ),
        Command::Simulate { common, profile, scenario, hours, alpha } => (
            common.format,
            commands::simulate(&SimulateArgs { profile, scenario, hours, alpha }),
        ),
        Command::Normalize {
            common,
            profile,
            value,
            from,
            from_year,
            to,
            to_year,
            fx,
            inflation,
            inverse,
            per_km,
        } => (
            common.format,
            commands::normalize(&NormalizeArgs {
                profile,
                value,
                from,
                from_year,
                to,
                to_year,
                fx,
                inflation,
                inverse,
                per_km,
            }),
        ),
    }
}
