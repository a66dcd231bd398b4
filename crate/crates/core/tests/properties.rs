mod common;

#[test]
fn randomized_suites() {
    let mut failed = Vec::new();
    for (name, result) in common::all_properties(common::CASES) {
        if let Err(e) = result {
            failed.push(format!("{name}: {e}"));
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}
