//! Acceptance suite: one PASS/FAIL line per criterion, each checked at its
//! stated tolerance. Exits non-zero if any criterion fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use globalgrid_core::dispatch::{min_cost_flow, reserve_requirements, simulate};
use globalgrid_core::presets::{
    greenland_dual, greenland_single, greenland_uk_link, half_price_offpeak, norned_link,
    reference_cable, CostCase, HALIFAX_OPORTO_LENGTH_KM, NORNED_REVENUE_EUR, TRANSATLANTIC_LENGTH_KM,
};
use globalgrid_core::projects::{bundled_projects, round_to, CostPerKm};
use globalgrid_core::scenario::{
    delivered_cost_increase, evaluate_connection, import_competitiveness, revenue,
    revenue_per_delivered_kwh, ScenarioResult,
};
use globalgrid_core::transmission::transmission_lcoe;
use globalgrid_core::{
    capital_recovery_factor, normalize_currency, CalibrationProfile, ConversionContext, Currency,
    FinancialAssumptions, LossComposition, LossModel, MoneyAmount, Segment, TransmissionLink,
    UtilizationModel,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn within_rel(value: f64, target: f64, tol: f64) -> bool {
    ((value - target) / target).abs() <= tol
}

fn check(lines: &mut Vec<String>, detail: String, pass: bool) -> bool {
    lines.push(format!("{} {detail}", if pass { "ok  " } else { "MISS" }));
    pass
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("globalgrid").chain(args.iter().copied());
    let code = globalgrid_cli::run(argv, &mut out, &mut Vec::new());
    (code, String::from_utf8(out).unwrap())
}

fn finish(lines: Vec<String>, all: bool) -> Outcome {
    Outcome {
        pass: all,
        detail: lines.join("\n      "),
    }
}

fn profile_lcoe(profile: CalibrationProfile, length_km: f64, case: CostCase) -> f64 {
    let link = profile.apply(&reference_cable(length_km, case).unwrap());
    let fin = profile.finance().unwrap();
    transmission_lcoe(&link, &fin, link.deliverable_energy().unwrap()).unwrap()
}

fn c1_transatlantic_lcoe() -> Outcome {
    let p = CalibrationProfile::PaperAppendixA;
    let mut lines = Vec::new();
    let mut all = true;
    for (length, case, target) in [
        (TRANSATLANTIC_LENGTH_KM, CostCase::Low, 0.0166),
        (TRANSATLANTIC_LENGTH_KM, CostCase::High, 0.0251),
        (HALIFAX_OPORTO_LENGTH_KM, CostCase::Low, 0.013),
    ] {
        let v = profile_lcoe(p, length, case);
        all &= check(
            &mut lines,
            format!("{length} km {case}: {v:.5} EUR/kWh vs {target} (±2%)"),
            within_rel(v, target, 0.02),
        );
    }
    finish(lines, all)
}

fn c2_project_table() -> Outcome {
    let expected = [
        CostPerKm::Point(0.52),
        CostPerKm::Point(1.03),
        CostPerKm::Point(1.15),
        CostPerKm::Range(1.19, 2.67),
        CostPerKm::Point(0.60),
    ];
    let mut lines = Vec::new();
    let mut all = true;
    let records = bundled_projects();
    all &= check(&mut lines, format!("{} bundled records", records.len()), records.len() == 5);
    for (r, want) in records.iter().zip(expected) {
        let got = r.implied_cable_cost_per_km(150.0).unwrap().rounded(2);
        all &= check(&mut lines, format!("{}: {got:?} vs {want:?}", r.name), got == want);
    }
    let (code, out) = cli(&["project-table", "--converter-cost", "150"]);
    all &= check(
        &mut lines,
        "project-table prints 1.19-2.67".into(),
        code == 0 && out.contains("1.19-2.67"),
    );
    finish(lines, all)
}

fn c3_currency() -> Outcome {
    let mut lines = Vec::new();
    let mut all = true;
    let usd = MoneyAmount::new(126.7, Currency::Usd, 1997).unwrap();
    let ctx = ConversionContext::new(0.8587, 0.0224, Currency::Eur).unwrap();
    let eur = normalize_currency(usd, &ctx, 2007).unwrap();
    let per_km = round_to(eur.value / 100.0, 2);
    all &= check(
        &mut lines,
        format!("126.7 M USD-1997 -> {:.4} M EUR-2007/km, rounds to {per_km}", eur.value / 100.0),
        per_km == 1.36,
    );
    let to_usd = ConversionContext::from_inverse_quote(0.7119, 0.0, Currency::Usd).unwrap();
    for (eur_kwh, target) in [(0.0166, 0.023), (0.0251, 0.035)] {
        let v = normalize_currency(MoneyAmount::new(eur_kwh, Currency::Eur, 2011).unwrap(), &to_usd, 2011)
            .unwrap()
            .value;
        all &= check(
            &mut lines,
            format!("EUR {eur_kwh} -> USD {v:.4} vs {target} (±2%)"),
            within_rel(v, target, 0.02),
        );
    }
    finish(lines, all)
}

fn reconciled() -> FinancialAssumptions {
    CalibrationProfile::AppendixBReconciled.finance().unwrap()
}

fn c4_deliveries() -> Outcome {
    let mut lines = Vec::new();
    let mut all = true;
    let r = evaluate_connection(&greenland_dual(CostCase::Low, false), &reconciled()).unwrap();
    for (p, target) in r.delivered_per_path.iter().zip([4822.0, 4637.0]) {
        all &= check(
            &mut lines,
            format!("{}: {:.1} GWh/yr vs {target} (±0.5%)", p.market, p.delivered),
            within_rel(p.delivered, target, 0.005),
        );
    }
    finish(lines, all)
}

fn scenario_results(fin: &FinancialAssumptions, case: CostCase) -> (ScenarioResult, ScenarioResult) {
    (
        evaluate_connection(&greenland_single(case), fin).unwrap(),
        evaluate_connection(&greenland_dual(case, false), fin).unwrap(),
    )
}

fn c5_greenland_costs() -> Outcome {
    let mut lines = Vec::new();
    let mut all = true;
    let om0 = CalibrationProfile::PaperAppendixA.finance().unwrap();
    for (case, single_ref, dual_ref) in [(CostCase::Low, 0.014, 0.029), (CostCase::High, 0.019, 0.038)] {
        let (single, dual) = scenario_results(&reconciled(), case);
        for (name, v, target) in [("single", single.scenario_lcoe, single_ref), ("dual", dual.scenario_lcoe, dual_ref)] {
            all &= check(
                &mut lines,
                format!("reconciled {case} {name}: {v:.5} vs {target} (±5%)"),
                within_rel(v, target, 0.05),
            );
        }
        let (single, dual) = scenario_results(&om0, case);
        for (name, v, target) in [("single", single.scenario_lcoe, single_ref), ("dual", dual.scenario_lcoe, dual_ref)] {
            let rel = (v - target) / target;
            all &= check(
                &mut lines,
                format!("om 0 {case} {name}: {v:.5} vs {target} ({:+.1}%, allowed -13%..0%)", rel * 100.0),
                (-0.13..=0.0).contains(&rel),
            );
        }
    }
    let (code, out) = cli(&["scenario", "--profile", "paper-appendix-A"]);
    all &= check(
        &mut lines,
        "om 0 report flags the gap".into(),
        code == 0 && out.contains("O&M rate is 0"),
    );
    finish(lines, all)
}

fn c6_uplift_and_increase() -> Outcome {
    let mut lines = Vec::new();
    let mut all = true;
    let prices = half_price_offpeak(0.1);
    let mut ideal = greenland_dual(CostCase::Low, false);
    ideal.paths[1].link = ideal.paths[0].link.clone();
    let u = revenue(&ideal, &prices).unwrap().uplift * 100.0;
    all &= check(
        &mut lines,
        format!("idealized uplift {u:.4}% vs 33.3% (exact at 3 significant figures)"),
        (u - 100.0 / 3.0).abs() < 1e-9 && format!("{u:.1}") == "33.3",
    );
    let u = revenue(&greenland_dual(CostCase::Low, false), &prices).unwrap().uplift * 100.0;
    all &= check(
        &mut lines,
        format!("case-study uplift {u:.2}% vs 30.8% (±1 pp)"),
        (u - 30.8).abs() <= 1.0,
    );
    for case in CostCase::BOTH {
        let (single, dual) = scenario_results(&reconciled(), case);
        let inc = delivered_cost_increase(0.06, &single, &dual) * 100.0;
        let reported = inc.round();
        all &= check(
            &mut lines,
            format!("{case} cost increase {inc:.3}% -> {reported}% at whole-percent precision, band [21%, 25%]"),
            (21.0..=25.0).contains(&reported),
        );
    }
    finish(lines, all)
}

fn c7_trade() -> Outcome {
    let mut lines = Vec::new();
    let mut all = true;
    for (case, lcoe_ref) in [(CostCase::Low, 0.014), (CostCase::High, 0.0185)] {
        let r = evaluate_connection(&greenland_dual(case, true), &reconciled()).unwrap();
        let t = r.trade_delivered();
        all &= check(
            &mut lines,
            format!("{case} trade delivered {t:.0} vs 10095 (±10%)"),
            within_rel(t, 10095.0, 0.10),
        );
        all &= check(
            &mut lines,
            format!("{case} total delivered {:.0} vs 19554 (±5%)", r.total_delivered),
            within_rel(r.total_delivered, 19554.0, 0.05),
        );
        all &= check(
            &mut lines,
            format!("{case} trade-inclusive lcoe {:.5} vs {lcoe_ref} (±5%)", r.scenario_lcoe),
            within_rel(r.scenario_lcoe, lcoe_ref, 0.05),
        );
    }
    let full = greenland_uk_link(CostCase::Low).deliverable_energy().unwrap();
    all &= check(
        &mut lines,
        format!("UK path full-capacity deliverable {full:.0} GWh/yr vs 20000 (±5%)"),
        within_rel(full, 20000.0, 0.05),
    );
    finish(lines, all)
}

fn c8_norned() -> Outcome {
    let mut lines = Vec::new();
    let link = CalibrationProfile::NorNed.apply(&norned_link());
    let v = revenue_per_delivered_kwh(NORNED_REVENUE_EUR, &link, 61.0 * 24.0).unwrap();
    let all = check(
        &mut lines,
        format!("61 days, utilization 11/12: {v:.5} EUR/kWh vs 0.0556 (±2%)"),
        within_rel(v, 0.0556, 0.02),
    );
    finish(lines, all)
}

fn c9_properties() -> Outcome {
    let mut lines = Vec::new();
    let mut all = true;

    let mut worst: f64 = 0.0;
    for n in 1..=100u32 {
        for k in 1..=200 {
            let r = 0.001 * f64::from(k);
            let crf = capital_recovery_factor(r, n).unwrap();
            let pv: f64 = (1..=n).map(|t| crf / (1.0 + r).powi(t as i32)).sum();
            worst = worst.max((pv - 1.0).abs());
        }
    }
    all &= check(&mut lines, format!("annuity identity, worst error {worst:.1e} (<= 1e-9)"), worst <= 1e-9);

    let mut monotone = true;
    for composition in [LossComposition::Linear, LossComposition::Compound] {
        let eff = |km: f64, terminals: u32| {
            TransmissionLink {
                segments: vec![Segment::cable(km, 1.0).unwrap()],
                terminal_count: terminals,
                terminal_unit_cost: 0.0,
                capacity_mw: 1.0,
                availability: 1.0,
                loss_model: LossModel::REFERENCE.with_composition(composition),
                utilization: UtilizationModel::FULL,
            }
            .route_efficiency()
            .unwrap()
        };
        for step in 1..300 {
            let km = 100.0 * f64::from(step);
            for terminals in 0..8 {
                let e = eff(km, terminals);
                monotone &= e > 0.0 && e <= 1.0;
                monotone &= eff(km + 100.0, terminals) < e;
                monotone &= eff(km, terminals + 1) < e;
            }
        }
    }
    all &= check(&mut lines, "route efficiency strictly decreasing in length and terminals".into(), monotone);

    let mut rng = support::rng(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let snap = support::small_integer_snapshot(&mut rng);
        worst = worst.max((min_cost_flow(&snap).cost - support::enumerate_cost(&snap)).abs());
    }
    all &= check(
        &mut lines,
        format!("enumeration oracle on 2000 integer fixtures, worst gap {worst:.1e} (<= 1e-9)"),
        worst <= 1e-9,
    );

    let mut balance: f64 = 0.0;
    let mut addition_ok = true;
    let mut reserve_ok = true;
    let mut scaling_ok = true;
    for _ in 0..200 {
        let net = support::random_network(&mut rng);
        let linked = simulate(&net, 24).unwrap();
        let isolated = simulate(&net.isolated(), 24).unwrap();
        for h in &linked.hours {
            balance = balance.max(h.balance_residual().abs());
        }
        addition_ok &= linked.total_cost() <= isolated.total_cost() * (1.0 + 1e-12) + 1e-9;
        for alpha in [0.05, 0.2, 1.0] {
            let r = reserve_requirements(&net, alpha, true).unwrap();
            reserve_ok &= r.shared <= r.isolated_total() + 1e-9;
        }
        let snap = net.snapshot(17);
        let base = min_cost_flow(&snap);
        let mut scaled = snap.clone();
        for units in &mut scaled.supply {
            for u in units {
                u.marginal_cost *= 7.5;
            }
        }
        scaled.penalty *= 7.5;
        let d = min_cost_flow(&scaled);
        scaling_ok &= (d.cost - 7.5 * base.cost).abs() <= 1e-9 * (7.5 * base.cost).max(1.0);
        for (a, b) in d.regions.iter().zip(&base.regions) {
            for (x, y) in a.generation.iter().zip(&b.generation) {
                scaling_ok &= (x - y).abs() <= 1e-6;
            }
        }
        for (a, b) in d.flows.iter().zip(&base.flows) {
            scaling_ok &= (a.signed() - b.signed()).abs() <= 1e-6;
        }
    }
    all &= check(&mut lines, format!("hourly energy balance, worst residual {balance:.1e} MW (<= 1e-6)"), balance <= 1e-6);
    all &= check(&mut lines, "interconnectors never raise cost over 200 fixtures".into(), addition_ok);
    all &= check(&mut lines, "shared reserve <= isolated sum over 200 fixtures".into(), reserve_ok);
    all &= check(&mut lines, "dispatch invariant under cost scaling".into(), scaling_ok);
    finish(lines, all)
}

fn c10_import() -> Outcome {
    let mut lines = Vec::new();
    let cheap = import_competitiveness(0.04, 0.023, 0.08).unwrap();
    let dear = import_competitiveness(0.13, 0.035, 0.14).unwrap();
    let mut all = check(
        &mut lines,
        format!("($0.04 + $0.023) vs $0.08: margin {:+.1}% (import cheaper)", cheap * 100.0),
        cheap > 0.0,
    );
    all &= check(
        &mut lines,
        format!("($0.13 + $0.035) vs $0.14: margin {:+.1}% (local cheaper)", dear * 100.0),
        dear < 0.0,
    );
    finish(lines, all)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Transatlantic cable LCOE", c1_transatlantic_lcoe),
        ("Project cost-per-km table", c2_project_table),
        ("Currency normalization", c3_currency),
        ("Greenland path deliveries", c4_deliveries),
        ("Greenland scenario costs", c5_greenland_costs),
        ("Revenue uplift and delivered-cost increase", c6_uplift_and_increase),
        ("Trade on residual capacity", c7_trade),
        ("NorNed revenue per delivered kWh", c8_norned),
        ("Property suites", c9_properties),
        ("Import competitiveness signs", c10_import),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {name}\n      {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
