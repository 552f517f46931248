//! The octuplet OPE structure at p = 3 (slower than the p = 2 acceptance run).

use nichols_w3::freefield::checks::{octuplet_chain, octuplet_ope_structure};

#[test]
fn ope_structure_at_p3() {
    let chain = octuplet_chain(3).unwrap();
    let report = octuplet_ope_structure(&chain).unwrap();
    assert!(report.all_passed(), "{}", report.to_text());
    // (−1)^{p+1} = +1 at odd p
    let signs: Vec<_> = report.entries.iter().filter(|e| e.name.contains("sign")).collect();
    assert_eq!(signs.len(), 2);
    assert!(signs.iter().all(|e| e.detail.starts_with("ratio 1 ")));
}
