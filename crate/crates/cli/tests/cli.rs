use std::path::Path;
use std::process::{Command, Output};

fn kerrcav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kerrcav")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn modes_on_resonance_zero_bandwidth() {
    let o = kerrcav(&["modes", "--length", "15cm", "--center-q", "1000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("q,nu_hz,omega_rad_s\n"));
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "1000");
}

#[test]
fn modes_five_fsr_band() {
    // FSR of a 0.15 m cavity is 999.308193333 MHz
    let o = kerrcav(&[
        "modes",
        "--length",
        "0.15",
        "--center",
        "99930.8193333MHz",
        "--bandwidth",
        "4996.54096667MHz",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let q: Vec<String> = data_rows(&o).into_iter().map(|r| r[0].clone()).collect();
    assert_eq!(q, ["98", "99", "100", "101", "102"]);
}

#[test]
fn modes_off_resonance_fails() {
    let o = kerrcav(&["modes", "--center", "1.5GHz", "--bandwidth", "1kHz"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("no mode in band"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn simulate_hadamard() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h.circ", "QUBITS 1\nH 0\n");
    let o = kerrcav(&["simulate", &f, "--qubits", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("0,0,0.707106781187,0,0.5"), "{text}");
    assert!(text.contains("1,1,0.707106781187,0,0.5"), "{text}");
    assert!(text.contains("arm,z_expectation\n0,0\n"), "{text}");
}

#[test]
fn simulate_bell_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bell.circ", "QUBITS 2\nH 1\nCNOT 1 0\n");
    let o = kerrcav(&["simulate", &f, "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p: Vec<f64> = v["amplitudes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["probability"].as_f64().unwrap())
        .collect();
    assert_eq!(p, [0.5, 0.0, 0.0, 0.5]);
    assert_eq!(v["z_expectation"], serde_json::json!([0.0, 0.0]));
}

#[test]
fn simulate_cp_flips_11() {
    let dir = tempfile::tempdir().unwrap();
    let prep = "QUBITS 2\nRPERP 0 pi 0\nRPERP 1 pi 0\n";
    let a = write(dir.path(), "a.circ", prep);
    let b = write(dir.path(), "b.circ", &format!("{prep}CP 0 1 3.141592653589793\n"));
    let amp = |f: &str| -> (f64, f64) {
        let o = kerrcav(&["simulate", f, "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let a = &v["amplitudes"][3];
        (a["re"].as_f64().unwrap(), a["im"].as_f64().unwrap())
    };
    let (ar, ai) = amp(&a);
    let (br, bi) = amp(&b);
    assert!((br + ar).abs() < 1e-12 && (bi + ai).abs() < 1e-12);
    assert!((ar * ar + ai * ai - 1.0).abs() < 1e-12);
}

#[test]
fn simulate_parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.circ", "QUBITS 2\n# comment\nCNOT 0 5\n");
    let o = kerrcav(&["simulate", &f]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn simulate_qubit_mismatch_is_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h.circ", "QUBITS 1\nH 0\n");
    assert_eq!(kerrcav(&["simulate", &f, "--qubits", "2"]).status.code(), Some(4));
}

#[test]
fn simulate_missing_file_is_io_error() {
    assert_eq!(kerrcav(&["simulate", "/nonexistent/x.circ"]).status.code(), Some(5));
}

#[test]
fn simulate_ea_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "phases.txt", "0 pi/2\npi/2 0\n");
    let f = write(dir.path(), "ea.circ", "QUBITS 2\nH 0\nH 1\nEA phases.txt\n");
    let o = kerrcav(&["simulate", &f, "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a = &v["amplitudes"][3];
    assert!((a["re"].as_f64().unwrap()).abs() < 1e-12);
    assert!((a["im"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn noise_sweep_zero_sigma_is_exact() {
    let o = kerrcav(&[
        "noise-sweep",
        "--grid",
        "0,1e-3",
        "--trials",
        "20",
        "--round-trips",
        "300",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("param,mean_fidelity,std_err,trials\n"));
    let rows = data_rows(&o);
    assert_eq!(rows[0], ["0", "1", "0", "20"]);
    assert_eq!(rows.len(), 2);
}

#[test]
fn noise_sweep_seed_changes_output() {
    let run = |seed: &str| {
        stdout(&kerrcav(&[
            "noise-sweep",
            "--grid",
            "5e-4",
            "--trials",
            "10",
            "--round-trips",
            "100",
            "--seed",
            seed,
        ]))
    };
    assert_eq!(run("1"), run("1"));
    assert_ne!(run("1"), run("2"));
}

#[test]
fn noise_sweep_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let p = path.to_str().unwrap();
    let o = kerrcav(&[
        "noise-sweep",
        "--mode",
        "reflections",
        "--grid",
        "10,20",
        "--trials",
        "5",
        "--out",
        p,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("\n10,") && text.contains("\n20,"));
}

#[test]
fn noise_sweep_unwritable_out() {
    let o = kerrcav(&[
        "noise-sweep",
        "--grid",
        "0",
        "--trials",
        "2",
        "--round-trips",
        "10",
        "--out",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn noise_sweep_bad_grid() {
    let o = kerrcav(&["noise-sweep", "--grid", "0:1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = kerrcav(&["noise-sweep", "--grid=-1e-3"]);
    assert_eq!(o.status.code(), Some(4));
}

fn report(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["feasibility", "--format", "json"];
    full.extend_from_slice(args);
    let o = kerrcav(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn feasibility_conservative_linewidths() {
    let v = report(&["--preset", "conservative", "--ops", "10,100,1000"]);
    assert_eq!(v["input"]["n2"].as_f64(), Some(1e-18));
    let got: Vec<f64> = v["linewidth_budget"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["max_linewidth_hz"].as_f64().unwrap())
        .collect();
    for (g, published) in got.iter().zip([38e3, 3.8e3, 380.0]) {
        assert!(((g - published) / published).abs() <= 0.05, "{g} vs {published}");
    }
    let phi = v["phi_tot"].as_f64().unwrap();
    assert!((1.1..=1.3).contains(&phi));
}

#[test]
fn feasibility_moderate_is_feasible() {
    let v = report(&["--preset", "moderate"]);
    assert_eq!(v["feasible"], serde_json::json!(true));
    assert_eq!(v["input"]["l_cav"].as_f64(), Some(0.15));
    assert!((v["implied"]["l_nl_over_l_cav"].as_f64().unwrap() / 1.5334e-2 - 1.0).abs() < 1e-3);
}

#[test]
fn feasibility_explicit_zero_n2() {
    let v = report(&["--n2", "0", "--power", "20W", "--waist", "30um", "--q", "5e9"]);
    assert_eq!(v["phi_tot"].as_f64(), Some(0.0));
    assert_eq!(v["feasible"], serde_json::json!(false));
}

#[test]
fn feasibility_coherence_and_csv() {
    let o = kerrcav(&[
        "feasibility",
        "--preset",
        "all",
        "--laser-linewidth",
        "1kHz",
        "--margin",
        "100",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    assert!(header.contains(&"coherence_passed"));
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 3);
    let idx = header.iter().position(|h| *h == "coherence_passed").unwrap();
    // 1 ms coherence vs τ of a few µs: ratio ~200-400, margin 100
    assert!(rows.iter().all(|r| r[idx] == "true"));
}

#[test]
fn feasibility_unknown_preset() {
    let o = kerrcav(&["feasibility", "--preset", "heroic"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("heroic"));
}

#[test]
fn feasibility_invalid_input_lists_fields() {
    let o = kerrcav(&[
        "feasibility",
        "--n2",
        "1e-18",
        "--power=-1",
        "--waist",
        "0",
        "--q",
        "5e9",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let err = stderr(&o);
    assert!(err.contains("power") && err.contains("w"), "{err}");
}

#[test]
fn oracle_check_passes() {
    let o = kerrcav(&["oracle-check"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let names: Vec<String> = data_rows(&o)
        .into_iter()
        .map(|r| format!("{} {}", r[0], r[1]))
        .collect();
    let expected: Vec<String> = kerrcav::oracle::CHECK_NAMES
        .iter()
        .map(|n| format!("PASS {n}"))
        .collect();
    assert_eq!(names, expected);
}

#[test]
fn oracle_check_sign_flip_fails() {
    let o = kerrcav(&["oracle-check", "--inject-sign-flip"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL,kerr-restriction-equals-cp"));
    assert!(stderr(&o).contains("kerr-restriction-equals-cp"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(kerrcav(&["modes"]).status.code(), Some(2));
    assert_eq!(kerrcav(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(kerrcav(&["modes", "--center", "1parsec"]).status.code(), Some(2));
}
