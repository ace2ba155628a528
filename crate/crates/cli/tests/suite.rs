use planecode::{Field, Plane};
use planecode_cli::formats::write_plane;
use planecode_cli::record::RunRecord;
use planecode_cli::suite::{run_acceptance, SuiteConfig};

fn small() -> SuiteConfig {
    SuiteConfig { random_words: 20, ..SuiteConfig::default() }
}

#[test]
fn corrupted_plane_file_fails_ingest_row() {
    let plane = Plane::pg2(&Field::prime(3).unwrap()).unwrap();
    let good = write_plane(&plane);
    // move point 0 of the first line onto a point already on it
    let mut lines: Vec<String> = good.lines().map(str::to_string).collect();
    let first: Vec<&str> = lines[1].split_whitespace().collect();
    lines[1] = format!("{} {}", first[1..].join(" "), lines[2].split_whitespace().last().unwrap());
    let bad = lines.join("\n") + "\n";
    let cfg = SuiteConfig { plane_files: vec![("good".into(), good), ("bad".into(), bad)], ..small() };
    let rows = run_acceptance(&cfg, |_| {});
    let ingest = rows.iter().find(|r| r.id == "ingest").unwrap();
    assert!(!ingest.passed);
    assert!(ingest.detail.contains("bad"), "{}", ingest.detail);
}

#[test]
fn tiny_budget_fails_truth_table() {
    let cfg = SuiteConfig { budget: 1, ..small() };
    let rows = run_acceptance(&cfg, |_| {});
    let row = rows.iter().find(|r| r.id == "7").unwrap();
    assert!(!row.passed);
    assert!(row.detail.contains("budget-exceeded"), "{}", row.detail);
}

#[test]
fn comparable_drops_only_wall_time() {
    let mut a = RunRecord::new("x", vec!["x".into()], serde_json::json!({"k": 1}));
    let mut b = a.clone();
    a.finish(std::time::Duration::from_millis(5));
    b.finish(std::time::Duration::from_millis(900));
    assert_eq!(a.comparable(), b.comparable());
    b.add_input("f", b"abc");
    assert_ne!(a.comparable(), b.comparable());
}
