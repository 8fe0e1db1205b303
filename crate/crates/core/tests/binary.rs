use std::process::Command;

fn pmon(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_pmon"))
        .args(args)
        .env("PMON_FIXTURES", concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
        .output()
        .unwrap()
}

#[test]
fn usage_errors_exit_two_and_domain_errors_exit_one() {
    assert_eq!(pmon(&["no-such-verb"]).status.code(), Some(2));
    let out = pmon(&["count", "--what", "apsis", "--m", "2", "-k", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--family", "pmod:2", "-k", "4"];
    let first = pmon(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, pmon(&args).stdout);
}

#[test]
fn all_tables_reproduce() {
    let out = pmon(&["tables", "--reproduce", "all"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
