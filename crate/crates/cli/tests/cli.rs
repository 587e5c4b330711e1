use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(format!("{name}.json"))
}

fn swfcalc(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_swfcalc"));
    cmd.env_remove("SWFCALC_CACHE");
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write_input(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn s0_has_zero_invariants() {
    let v = json_of(&swfcalc(
        &["eval", example("s0").to_str().unwrap(), "--format", "json"],
        None,
    ));
    for q in ["alpha", "beta", "gamma", "delta0", "delta2", "mu"] {
        assert_eq!(v[q]["eighths"], 0, "{q}");
    }
}

#[test]
fn schema_errors_cite_paths() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"construct":"rep_sphere","rtilde":-1}"#, "$.rtilde"),
        (
            r#"{"construct":"rep_sphere","rtilde":0,"quat":0,"extra":1}"#,
            "$.extra",
        ),
        (
            r#"{"construct":"suspend","rtilde":0,"quat":0,"of":{"construct":"moy"}}"#,
            "$.of",
        ),
        (
            r#"{"construct":"rep_sphere","rtilde":0"#,
            "$: malformed JSON",
        ),
    ];
    for (i, (text, needle)) in cases.into_iter().enumerate() {
        let f = write_input(dir.path(), &format!("bad{i}.json"), text);
        let o = swfcalc(&["eval", &f], None);
        assert_eq!(o.status.code(), Some(1), "{text}");
        assert!(stderr(&o).contains(needle), "{text}: {}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(swfcalc(&["--help"], None).status.code(), Some(0));
    assert_eq!(swfcalc(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(
        swfcalc(&["brieskorn", "2", "5", "7"], None).status.code(),
        Some(1)
    );
    assert_eq!(
        swfcalc(&["brieskorn", "2", "3", "9"], None).status.code(),
        Some(1)
    );
    assert_eq!(
        swfcalc(&["eval", "/nonexistent/input.json"], None)
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        swfcalc(&["eval", example("moy-ambiguous").to_str().unwrap()], None)
            .status
            .code(),
        Some(3)
    );
    let o = swfcalc(
        &[
            "dualize",
            example("s3").to_str().unwrap(),
            "--rtilde",
            "0",
            "--quat",
            "1",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    let o = swfcalc(
        &[
            "dualize",
            example("z2").to_str().unwrap(),
            "--rtilde",
            "0",
            "--quat",
            "0",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn ambiguity_lists_alternatives() {
    let o = swfcalc(&["eval", example("moy-ambiguous").to_str().unwrap()], None);
    assert!(stderr(&o).contains("[0, 1]"), "{}", stderr(&o));
}

#[test]
fn dualize_command_matches_dual_input() {
    for n in 1..=6 {
        let quat = n.to_string();
        let z = example(&format!("z{n}"));
        let a = json_of(&swfcalc(
            &[
                "dualize",
                z.to_str().unwrap(),
                "--rtilde",
                "0",
                "--quat",
                &quat,
                "--format",
                "json",
            ],
            None,
        ));
        let b = json_of(&swfcalc(
            &[
                "eval",
                example(&format!("zprime{n}")).to_str().unwrap(),
                "--format",
                "json",
            ],
            None,
        ));
        assert_eq!(a, b);
    }
}

#[test]
fn formats_carry_the_same_numbers() {
    let args = |f: &'static str| ["brieskorn", "2", "3", "7", "--format", f];
    let v = json_of(&swfcalc(&args("json"), None));
    let md = stdout(&swfcalc(&args("md"), None));
    let csv = stdout(&swfcalc(&args("csv"), None));
    for q in ["alpha", "beta", "gamma", "delta0", "delta2", "mu"] {
        let value = v[q]["value"].as_str().unwrap();
        assert!(md.contains(&format!("| {q} | {value} |")), "{q}");
        assert!(csv.contains(&format!("\n{q},,{value}\n")), "{q}");
    }
    for d in v["swfh"].as_array().unwrap() {
        let (deg, dim) = (&d["degree"], &d["dim"]);
        assert!(md.contains(&format!("| {deg} | {dim} |")));
        assert!(csv.contains(&format!("swfh.dim,{deg},{dim}\n")));
    }
}

#[test]
fn fractional_normalization_is_exact() {
    let v = json_of(&swfcalc(
        &[
            "eval",
            example("g-tilde-normalized").to_str().unwrap(),
            "--format",
            "json",
        ],
        None,
    ));
    assert_eq!(v["alpha"]["value"], "3/8");
    assert_eq!(v["beta"]["eighths"], -13);
    assert_eq!(v["swfh_shift"]["value"], "3/4");
}

#[test]
fn table_csv_has_twelve_rows() {
    let o = swfcalc(
        &["table", "2", "3", "--k-max", "3", "--format", "csv"],
        None,
    );
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,family,k,alpha,beta,gamma,delta0,delta2,mu,lambda"
    );
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[2], "11,12k-1,1,2,0,0,1,1,0,-2");
    assert_eq!(
        swfcalc(&["table", "2", "3", "--k-max", "0"], None)
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn cold_warm_and_disabled_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["brieskorn", "2", "3", "11", "--format", "json"];
    let none = swfcalc(&args, None);
    let cold = swfcalc(&args, Some(dir.path()));
    let warm = swfcalc(&args, Some(dir.path()));
    assert_eq!(none.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    let stats = json_of(&swfcalc(
        &["cache", "stats", "--format", "json"],
        Some(dir.path()),
    ));
    assert_eq!(stats["entries"], 1);
}

fn only_entry(dir: &Path) -> PathBuf {
    let entries: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(entries.len(), 1, "{entries:?}");
    entries[0].clone()
}

#[test]
fn truncated_entry_is_evicted_and_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = example("z3");
    let args = ["eval", z3.to_str().unwrap(), "--format", "json"];
    let first = swfcalc(&args, Some(dir.path()));
    let entry = only_entry(dir.path());
    let full = fs::read(&entry).unwrap();
    fs::write(&entry, &full[..full.len() / 2]).unwrap();
    let again = swfcalc(&args, Some(dir.path()));
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(again.stdout, first.stdout);
    assert_eq!(fs::read(&entry).unwrap(), full);
}

#[test]
fn stale_or_tampered_entries_are_not_trusted() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["brieskorn", "2", "3", "13", "--format", "json"];
    let first = swfcalc(&args, Some(dir.path()));
    let entry = only_entry(dir.path());
    let mut v: Value = serde_json::from_slice(&fs::read(&entry).unwrap()).unwrap();
    v["version"] = "swfcalc 0.0.0 results/0".into();
    v["value"]["alpha"]["eighths"] = 999.into();
    fs::write(&entry, v.to_string()).unwrap();
    let again = swfcalc(&args, Some(dir.path()));
    assert_eq!(again.stdout, first.stdout);
}

#[test]
fn unwritable_cache_downgrades_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let o = swfcalc(&["brieskorn", "2", "3", "7"], Some(&blocker.join("cache")));
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stderr(&o).contains("warning: cache directory"),
        "{}",
        stderr(&o)
    );
    assert_eq!(
        o.stdout,
        swfcalc(&["brieskorn", "2", "3", "7"], None).stdout
    );
}

#[test]
fn environment_variable_selects_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_swfcalc"))
        .env("SWFCALC_CACHE", dir.path())
        .args(["brieskorn", "2", "3", "17"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    only_entry(dir.path());
    let cleared = json_of(&swfcalc(
        &["cache", "clear", "--format", "json"],
        Some(dir.path()),
    ));
    assert_eq!(cleared["removed"], 1);
}

#[test]
fn verify_is_reproducible() {
    let a = swfcalc(
        &["verify", "--iters", "20", "--seed", "9", "--format", "csv"],
        None,
    );
    let b = swfcalc(
        &["verify", "--iters", "20", "--seed", "9", "--format", "csv"],
        None,
    );
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("suite,cases,failures,status\n"));
}

#[test]
fn cobordism_requires_spin() {
    let (s3, s7) = (example("s3"), example("sigma-2-3-7"));
    let o = swfcalc(
        &[
            "check-cobordism",
            s3.to_str().unwrap(),
            s7.to_str().unwrap(),
            "--b2",
            "0",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
}
