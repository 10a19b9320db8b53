use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn kn(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kn")).args(args).current_dir(cwd).output().expect("run kn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn summary(o: &Output, key: &str) -> Option<String> {
    let text = stdout(o);
    let block = text.split("SUMMARY BEGIN").nth(1)?;
    block.lines().find_map(|l| l.strip_prefix(&format!("{key} ")).map(str::to_string))
}

#[test]
fn lemma44_reports_121_identities() {
    let dir = tempfile::tempdir().unwrap();
    let o = kn(&["verify", "lemma44", "--range", "5"], dir.path());
    assert!(o.status.success());
    assert_eq!(summary(&o, "checks").as_deref(), Some("121"));
    assert_eq!(summary(&o, "status").as_deref(), Some("PASS"));
}

#[test]
fn virasoro_sl2_has_central_charge_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = kn(&["verify", "virasoro", "--k", "3", "--depth", "8", "--algebra", "sl:2", "--level", "1"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(summary(&o, "central-charge").as_deref(), Some("1/1"));
}

#[test]
fn casimir_abelian_reports_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    let o = kn(&["verify", "casimir", "--algebra", "abelian:1"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(summary(&o, "lambda_omega").as_deref(), Some("1/1"));
}

#[test]
fn every_suite_passes_on_a_small_box() {
    let dir = tempfile::tempdir().unwrap();
    for suite in kn_core::suites::SUITES {
        let o = kn(&["verify", suite, "--range", "2", "--depth", "4", "--k", "2", "--r", "2"], dir.path());
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        let text = stdout(&o);
        assert!(text.lines().filter(|l| l.starts_with("CHECK ")).all(|l| l.contains(" PASS ")), "{suite}");
    }
}

#[test]
fn unknown_suite_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = kn(&["verify", "nonsense"], dir.path());
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn refused_ordering_gives_nonzero_exit() {
    // the weight suite refuses orderings outside the critical square
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("far.ord"), "1 -1 +\n").unwrap();
    let o = kn(&["verify", "weight", "--ordering", "far.ord", "--depth", "3"], dir.path());
    assert!(!o.status.success());
}

#[test]
fn report_lists_charge_weight_and_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let o = kn(&["report", "--range", "3", "--depth", "4"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("central charge 1/1"), "{text}");
    assert!(text.contains("lambda (-1/4)"), "{text}");
    assert!(text.contains("lambda_omega 3/2"), "{text}");
    // χ_{k,−k} = −(k³−k)/6
    for k in -3i64..=3 {
        let want = num_rational::Ratio::new(-(k.pow(3) - k), 6);
        assert!(text.contains(&format!("chi {k} {} {}/{}", -k, want.numer(), want.denom())), "{k}: {text}");
    }
}

#[test]
fn tables_are_deterministic_and_gamma_is_antidiagonal() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &str| {
        let o = kn(&["tables", "--range", "5", "--out", out], dir.path());
        assert!(o.status.success());
    };
    run("a");
    run("b");
    for entry in fs::read_dir(dir.path().join("a")).unwrap() {
        let name = entry.unwrap().file_name();
        let a = fs::read(dir.path().join("a").join(&name)).unwrap();
        let b = fs::read(dir.path().join("b").join(&name)).unwrap();
        assert_eq!(a, b, "{name:?}");
    }
    let gamma = fs::read_to_string(dir.path().join("a/gamma.tbl")).unwrap();
    let rows: Vec<Vec<&str>> =
        gamma.lines().filter(|l| l.starts_with("gamma ")).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 10);
    for r in rows {
        let (n, m): (i64, i64) = (r[1].parse().unwrap(), r[3].parse().unwrap());
        assert_eq!(n + m, 0);
        assert_eq!(r[5], format!("{}/1", -n));
    }
}

#[test]
fn multi_point_duality_via_config() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("job.cfg"),
        "realization = multi-point\nin_points = 0, 1\nout_points = 2, inf\nrange = 2\n",
    )
    .unwrap();
    let o = kn(&["verify", "duality", "--config", "job.cfg"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn export_import_round_trip_and_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let o = kn(&["export-realization", "--range", "8", "--out", "g0.real"], dir.path());
    assert!(o.status.success());
    let o = kn(&["import-realization", "g0.real", "--range", "3", "--out", "imported"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = kn(&["tables", "--range", "3", "--out", "native"], dir.path());
    assert!(o.status.success());
    for entry in fs::read_dir(dir.path().join("native")).unwrap() {
        let name = entry.unwrap().file_name();
        let a = fs::read(dir.path().join("native").join(&name)).unwrap();
        let b = fs::read(dir.path().join("imported").join(&name)).unwrap();
        assert_eq!(a, b, "{name:?}");
    }
    let text = fs::read_to_string(dir.path().join("g0.real")).unwrap();
    fs::write(dir.path().join("bad.real"), text.replacen("depth ", "depth x", 1)).unwrap();
    let o = kn(&["import-realization", "bad.real"], dir.path());
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line "));
}
