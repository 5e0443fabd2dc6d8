//! Runs the binary so the budget override does not leak into other tests.

use std::process::Command;

#[test]
fn budget_variable_limits_the_oracle() {
    let k5 = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/k5_c3.em");
    let bin = env!("CARGO_BIN_EXE_edgemon");
    let tight = Command::new(bin)
        .args(["oracle", "--in", k5])
        .env("EM_BUDGET_VERTICES", "4")
        .output()
        .unwrap();
    assert_eq!(tight.status.code(), Some(3));
    let loose = Command::new(bin)
        .args(["oracle", "--in", k5])
        .env("EM_BUDGET_VERTICES", "5")
        .output()
        .unwrap();
    assert_eq!(loose.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(loose.stdout).unwrap(),
        "status feasible\nvalue 5\nset 0 1 2 3 4\n"
    );
    let junk = Command::new(bin)
        .args(["oracle", "--in", k5])
        .env("EM_BUDGET_VERTICES", "lots")
        .output()
        .unwrap();
    assert_eq!(junk.status.code(), Some(2));
}
