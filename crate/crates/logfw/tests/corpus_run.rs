//! Full corpus smoke run: every fixture must either produce agreeing
//! verdicts or be rejected exactly as its expected block says.

use logfw::corpus::run_corpus;
use logfw::Budgets;

#[test]
fn corpus_runs_clean() {
    let report = run_corpus(None, &Budgets::default());
    for f in &report.fixtures {
        eprintln!("{}", f.human_line());
    }
    assert_eq!(report.summary.total, 20);
    assert_eq!(
        report.summary.route_disagreements, 0,
        "routes disagree somewhere"
    );
    assert_eq!(
        report.summary.expected_mismatches, 0,
        "expected-results mismatches"
    );
    // exactly one fixture is an intentional rejection
    assert_eq!(report.summary.rejected, 1);
    assert_eq!(report.summary.ok, 19);
}
