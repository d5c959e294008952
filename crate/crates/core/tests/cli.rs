use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn specest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_prints_builtins() {
    let o = specest(&["list"]);
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(names, ["SC-A1", "SC-A2", "SC-A3", "SC-B1", "SC-B2", "SC-C1", "SC-C2"]);
}

#[test]
fn run_case_a_writes_six_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = specest(&["run", "SC-A1", "--seed", "42", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut files: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    files.sort();
    assert_eq!(
        files,
        [
            "spectrum_SC-A1_blackman_tukey.csv",
            "spectrum_SC-A1_capon.csv",
            "spectrum_SC-A1_modcov.csv",
            "spectrum_SC-A1_periodogram.csv",
            "spectrum_SC-A1_yule_walker.csv",
            "summary.csv",
        ]
    );
    let spectrum = fs::read_to_string(dir.path().join("spectrum_SC-A1_modcov.csv")).unwrap();
    let mut lines = spectrum.lines();
    assert_eq!(lines.next(), Some("frequency,power,power_db"));
    assert_eq!(lines.count(), 1024);
    assert!(!spectrum.contains('\r'));
}

#[test]
fn case_b_marks_not_applicable() {
    let dir = tempfile::tempdir().unwrap();
    let o = specest(&["run", "SC-B1", "--out", dir.path().to_str().unwrap(), "--grid", "512"]);
    assert!(o.status.success());
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let modcov = summary.lines().find(|l| l.starts_with("SC-B1,modcov")).unwrap();
    assert!(modcov.contains("not applicable: requires raw data"));
    assert!(summary.lines().all(|l| l.split(',').count() == 12));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 4);
}

#[test]
fn run_all_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = specest(&["run", "all", "--out", d.path().to_str().unwrap()]);
        assert!(o.status.success());
    }
    let sa = fs::read(a.path().join("summary.csv")).unwrap();
    let sb = fs::read(b.path().join("summary.csv")).unwrap();
    assert_eq!(sa, sb);
    assert_eq!(String::from_utf8(sa).unwrap().lines().count(), 1 + 7 * 5);
}

#[test]
fn timing_flag_fills_ms_column() {
    let dir = tempfile::tempdir().unwrap();
    let o = specest(&["run", "SC-A1", "--timing", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let row = summary.lines().nth(1).unwrap();
    assert!(!row.ends_with(','));
}

fn detect_error(wav: &Path) -> f64 {
    let o = specest(&[
        "detect",
        "--in",
        wav.to_str().unwrap(),
        "--method",
        "modcov",
        "--order",
        "10",
        "--true-freq",
        "0.2",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("absolute_error:")).unwrap();
    line.split_once(':').unwrap().1.trim().parse().unwrap()
}

#[test]
fn embed_then_detect() {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("s.wav");
    let o = specest(&[
        "embed", "--synth", "7", "--freq", "0.2", "--amp", "1", "--len", "1000", "--out",
        wav.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(detect_error(&wav) < 0.01);
}

#[test]
fn embed_into_user_wav() {
    let dir = tempfile::tempdir().unwrap();
    let carrier = dir.path().join("c.wav");
    let c = specest::synth_carrier(3, 1500).unwrap();
    specest::save_wav(&c, &carrier).unwrap();
    let wav = dir.path().join("s.wav");
    let o = specest(&[
        "embed", "--in", carrier.to_str().unwrap(), "--freq", "0.2", "--amp", "0.5", "--out",
        wav.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(detect_error(&wav) < 0.01);
}

#[test]
fn usage_errors_exit_one() {
    let o = specest(&["run", "SC-A1", "--seed", "abc"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--seed"));
    let o = specest(&["embed", "--freq", "0.2", "--out", "/tmp/never.wav"]);
    assert_eq!(o.status.code(), Some(1));
    let o = specest(&["detect", "--in", "x.wav", "--method", "burg", "--order", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--method"));
    let o = specest(&["run", "SC-Q7"]);
    assert_eq!(o.status.code(), Some(1));
    let o = specest(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn runtime_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.wav");
    let o = specest(&["detect", "--in", missing.to_str().unwrap(), "--method", "yw", "--order", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_scenarios_are_listed_and_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    fs::write(
        &cfg,
        "[close-pair]\nkind = \"two_tone_awgn\"\nf1 = 0.2\nf2 = 0.21\nb = 1.0\norder = 14\nn = 256\nnoise_variance = 0.001\nseed = 5\n",
    )
    .unwrap();
    let o = specest(&["list", "--config", cfg.to_str().unwrap()]);
    assert!(stdout(&o).lines().any(|l| l == "close-pair"));
    let out = dir.path().join("out");
    let o = specest(&["run", "close-pair", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("spectrum_close-pair_modcov.csv").exists());
}
