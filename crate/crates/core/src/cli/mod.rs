//! Scenario suite and single-check front end shared by the binary.

mod runner;
mod scenario;

pub use runner::{
    build_ring, render_reports, reports_to_json, run_check, run_builtin_suite, run_scenario, run_scenarios,
    suite_exit_code, CheckReport, Observation, Report, SuiteOptions,
};
pub use scenario::{builtin_scenarios, parse_scenarios, Basis, BudgetSpec, Construction, Expectation, Scenario};
