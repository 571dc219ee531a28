use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use dpcoh::exactlin::PrimeField;
use dpcoh::fimod::specht_fi;
use dpcoh::symrep::Partition;

fn dpcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpcoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dpcoh-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

/// Second column of a CSV body, skipping the header and any summary row.
fn column(body: &str, i: usize) -> Vec<String> {
    body.lines()
        .skip(1)
        .filter(|l| !l.starts_with("all,"))
        .map(|l| l.split(',').nth(i).unwrap().to_string())
        .collect()
}

#[test]
fn multiplication_over_the_integers() {
    let o = dpcoh(&["dp", "mul", "--p", "0", "x[2]", "x[3]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "10*x[5]\n");
    let o = dpcoh(&["dp", "mul", "--p", "2", "x[1]", "x[1]"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn sphere_pieces_from_the_data_file() {
    let o = dpcoh(&["dp", "hilbert", "--ring", "Z", "--file", &data("sphere.dpm"), "--n", "2..20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let body = stdout(&o);
    assert!(body.starts_with("n,structure\n"));
    let expect: Vec<String> = (2..=20).map(|n| format!("Z/{}", 2 * n - 2)).collect();
    assert_eq!(column(&body, 1), expect);
}

#[test]
fn epsilon_over_the_integers_is_a_usage_error() {
    let o = dpcoh(&["dp", "epsilon", "--ring", "Z", "--file", &data("sphere.dpm")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field of positive characteristic"), "{}", stderr(&o));
    let o = dpcoh(&["dp", "epsilon", "--p", "2", "--file", &data("y0-quotients-mod2.dpm")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "p,epsilon,g_epsilon,lambda,basis_degrees\n2,1,1,0,0 1\n");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = scratch("parse");
    let bad = dir.join("bad.dpm");
    fs::write(&bad, "gen g 1\n\nrel 2 : h*1*x[1]\n").unwrap();
    let o = dpcoh(&["dp", "period", "--p", "2", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn period_of_the_sphere_mod_two() {
    let o = dpcoh(&["dp", "period", "--p", "2", "--file", &data("sphere.dpm"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "dpcoh.dp-period/1");
    assert_eq!(v["period"], 1);
    assert_eq!(v["confirmed"], true);
}

#[test]
fn trivial_module_invariants_are_all_ones() {
    let o = dpcoh(&["gamma", "table", "--module", "trivial", "--p", "3", "--t", "0", "--nmax", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(column(&stdout(&o), 1), vec!["1"; 10]);
}

#[test]
fn standard_module_invariants_alternate() {
    let o = dpcoh(&["gamma", "table", "--module", "specht:1", "--p", "2", "--t", "0", "--nmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let body = stdout(&o);
    let m = specht_fi(&PrimeField::new(2).unwrap(), &Partition::new(&[1]).unwrap());
    let oracle: Vec<String> = (0..=10).map(|n| m.eval(n).unwrap().fixed_space().cols().to_string()).collect();
    assert_eq!(column(&body, 1), oracle);
    assert_eq!(&oracle[3..], &["0", "1", "0", "1", "0", "1", "0", "1"]);
    let summary = body.lines().last().unwrap();
    assert_eq!(summary, "all,,onset=3;period=2,pass,periodicity of Specht module cohomology");
    // every row names the statement it checks
    assert!(body.lines().skip(1).all(|l| l.ends_with(",periodicity of Specht module cohomology")));
}

#[test]
fn hemmer_table_in_degree_one() {
    let o = dpcoh(&["gamma", "table", "--module", "specht:1", "--p", "2", "--t", "1", "--nmax", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("all,,onset=3;period=2,pass,periodicity of Specht module cohomology\n"));
}

#[test]
fn failing_claims_exit_with_one() {
    let o = dpcoh(&["gamma", "table", "--module", "specht:1", "--p", "2", "--nmax", "9", "--claim", "onset=3;period=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("all,,onset=3;period=1,fail,user-supplied onset and period\n"));
}

#[test]
fn nakaoka_report() {
    let o = dpcoh(&["gamma", "nakaoka", "--p", "2", "--t", "1", "--nmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("iso for n ≥ 3"), "{}", stderr(&o));
    let o = dpcoh(&["gamma", "nakaoka", "--p", "2", "--t", "2", "--nmax", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "dpcoh.nakaoka/1");
    assert_eq!(v["stable_from"], 5);
}

#[test]
fn guard_violations_report_the_feasible_window() {
    let o = dpcoh(&["gamma", "table", "--module", "trivial", "--p", "2", "--t", "2", "--nmax", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("maximum feasible window is 5"), "{}", stderr(&o));
    let o = dpcoh(&["gamma", "table", "--module", "trivial", "--p", "2", "--t", "2", "--nmax", "9", "--truncate"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(column(&stdout(&o), 0).len(), 6);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(dpcoh(&["gamma", "table", "--module", "nonsense", "--p", "2", "--nmax", "3"]).status.code(), Some(2));
    assert_eq!(dpcoh(&["dp", "mul", "--p", "4", "x[1]", "x[1]"]).status.code(), Some(2));
    assert_eq!(dpcoh(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(dpcoh(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["gamma", "table", "--module", "induced:d=1,rep=trivial", "--p", "3", "--t", "1", "--nmax", "7", "--format", "json"];
    let a = dpcoh(&args);
    let b = dpcoh(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "dpcoh.gamma-table/1");

    let dir = scratch("determinism");
    let cfg = dir.join("same.cfg");
    fs::write(
        &cfg,
        "experiment = gamma-table\nring = 3\nmodule = induced:d=1,rep=trivial\nt = 1\nnmax = 7\nformat = json\n",
    )
    .unwrap();
    let c = dpcoh(&["run", cfg.to_str().unwrap()]);
    assert_eq!(c.stdout, a.stdout);
}

#[test]
fn configs_run_concurrently_and_write_atomically() {
    let dir = scratch("atomic");
    for (name, module) in [("a", "trivial"), ("b", "specht:1")] {
        fs::write(
            dir.join(format!("{name}.cfg")),
            format!("experiment = gamma-table\nring = 2\nmodule = {module}\nnmax = 8\noutput = {name}.csv\n"),
        )
        .unwrap();
    }
    let o = dpcoh(&["run", dir.join("a.cfg").to_str().unwrap(), dir.join("b.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let a = fs::read_to_string(dir.join("a.csv")).unwrap();
    assert!(a.starts_with("n,dim,claim,verdict,reference\n"));
    let b = fs::read_to_string(dir.join("b.csv")).unwrap();
    assert_eq!(column(&b, 1)[3..], ["0", "1", "0", "1", "0", "1"]);
    let leftovers: Vec<_> = fs::read_dir(&dir).unwrap().filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp")).collect();
    assert!(leftovers.is_empty());
}

#[test]
fn rejected_configs_name_the_key() {
    let dir = scratch("badcfg");
    let cfg = dir.join("bad.cfg");
    fs::write(&cfg, "experiment = gamma-table\nring = 2\nmodule = trivial\nnmax = lots\n").unwrap();
    let o = dpcoh(&["run", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("'nmax'"), "{}", stderr(&o));
    fs::write(&cfg, "experiment = gamma-table\nring = 2\nnmax = 4\n").unwrap();
    let o = dpcoh(&["run", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("'module'"), "{}", stderr(&o));
}

#[test]
fn shipped_configs_run() {
    let o = dpcoh(&["run", &data("configs/sphere.cfg"), &data("configs/nakaoka-t2.cfg")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("20,Z/38\n"));
    assert!(stdout(&o).contains("iso for n ≥ 5"));
}

#[test]
fn verification_suites() {
    for suite in ["dpa", "sphere", "dold"] {
        let o = dpcoh(&["verify", suite, "--format", "csv"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        let body = stdout(&o);
        assert!(body.starts_with("criterion,suite,checks,failures,verdict,reference\n"));
        assert!(body.lines().skip(1).all(|l| l.contains(",pass,")), "{body}");
    }
    let a = dpcoh(&["verify", "1", "--seed", "7"]);
    let b = dpcoh(&["verify", "1", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("(seed 7)"));
}
