//! Criteria 1-9 over the embedded catalog, one line per criterion.

use cyclolie::catalog::Catalog;
use cyclolie::reproduce::{run, tally, Options, Status};

const TITLES: [&str; 9] = [
    "cohomology tables",
    "HRC/HC gap localization",
    "two-route cyclic cohomology",
    "Kunneth",
    "structural identities",
    "signatures",
    "deformation verification",
    "versal order 2 on W3",
    "property suites",
];

/// Checks that fail for a reason recorded in the decision notes: the printed
/// generic `H` row of g62 does not match the computed ranks at any sampled
/// value of the parameter.
const KNOWN_FAILURES: [&str; 3] = ["table g62(2)", "table g62(3)", "table g62(-1/2)"];

#[test]
fn acceptance() {
    let catalog = Catalog::embedded().unwrap();
    let results = run(&catalog, &Options::default()).unwrap();
    let mut failed = Vec::new();
    for (i, title) in TITLES.iter().enumerate() {
        let criterion = i as u8 + 1;
        let group: Vec<_> = results.iter().filter(|r| r.criterion == criterion).cloned().collect();
        let t = tally(&group);
        let verdict = if group.is_empty() || t.fail > 0 { "FAIL" } else { "PASS" };
        println!("criterion {criterion} {verdict}: {title} ({} pass, {} warn, {} fail)", t.pass, t.warn, t.fail);
        for r in group.iter().filter(|r| r.status != Status::Pass) {
            println!("    {r}");
        }
        if verdict == "FAIL" {
            failed.push(criterion);
        }
    }
    let t = tally(&results);
    println!("{} checks: {} pass, {} warn, {} fail", results.len(), t.pass, t.warn, t.fail);
    assert!(results.len() >= 40);
    let unexpected: Vec<_> =
        results.iter().filter(|r| r.status == Status::Fail && !KNOWN_FAILURES.contains(&r.name.as_str())).collect();
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
    let unexpected_pass: Vec<_> = KNOWN_FAILURES
        .iter()
        .filter(|name| results.iter().any(|r| r.name == **name && r.status != Status::Fail))
        .collect();
    assert!(unexpected_pass.is_empty(), "known failures now pass: {unexpected_pass:?}");
    if !failed.is_empty() {
        println!("failing criteria {failed:?} are limited to the known failures");
    }
}
