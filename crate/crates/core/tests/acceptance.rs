//! Runs every acceptance check and prints one line per check.

use linefront::acceptance::{criteria, CriterionReport, SIMULATOR_SPACINGS};

fn print(report: &CriterionReport) {
    println!("{report}");
}

fn main() {
    let mut failed = Vec::new();
    let mut reports = Vec::new();
    for c in criteria() {
        let report = c.run();
        print(&report);
        if !report.passed {
            failed.push(report.id);
        }
        reports.push(report);
    }
    // halving the spacing should cut the speed error by at least 1.5
    let sim = reports.iter().find(|r| r.id == 6).expect("simulator check present");
    let errs: Vec<f64> = SIMULATOR_SPACINGS
        .iter()
        .filter_map(|h| sim.metric(&format!("rel@{h}")))
        .collect();
    if errs.len() == SIMULATOR_SPACINGS.len() {
        for w in errs.windows(2) {
            println!("grid convergence: error ratio {:.3} per halving (need >= 1.5)", w[0] / w[1]);
            if w[0] / w[1] < 1.5 {
                println!("FAIL grid convergence too slow");
                std::process::exit(1);
            }
        }
    }
    let passed = reports.len() - failed.len();
    println!("acceptance: {passed}/{} passed", reports.len());
    if !failed.is_empty() {
        println!("failed checks: {failed:?}");
        std::process::exit(1);
    }
}
