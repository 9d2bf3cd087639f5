use tunnel_core::selftest;

#[test]
fn every_suite_passes() {
    for report in selftest::run_all() {
        for c in &report.checks {
            println!(
                "[{}] {} {}: {}",
                report.name,
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        for line in &report.info {
            println!("[{}] info: {line}", report.name);
        }
        assert!(report.passed(), "suite {} failed", report.name);
    }
}
