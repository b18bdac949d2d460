use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn repnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repnet"))
        .args(args)
        .current_dir(dir())
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows: everything after the metadata block and the header.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn meta<'a>(text: &'a str, key: &str) -> Vec<&'a str> {
    let prefix = format!("# {key}: ");
    text.lines().filter_map(|l| l.strip_prefix(prefix.as_str())).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn minimal_sweep_has_one_row() {
    let o = repnet(&["optimize-line", "--L", "100", "--code", "none"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].len(), 13);
    assert_eq!((r[0][0].as_str(), r[0][1].as_str()), ("100", "none"));
    assert_eq!(meta(&text, "command"), ["optimize-line"]);
}

#[test]
fn sweep_ranges_expand() {
    let o = repnet(&["optimize-line", "--L", "100:500:100", "--code", "golay,steane:7"]);
    assert!(o.status.success());
    assert_eq!(rows(&stdout(&o)).len(), 10);
}

#[test]
fn all_infeasible_exits_one() {
    // Noise this high leaves no positive secret fraction anywhere.
    let tmp = tempfile::tempdir().unwrap();
    let p = write(tmp.path(), "p.params", "f_P_u = 0.2\nf_G_u = 0.2\nf_M_u = 0.2\n");
    let o = repnet(&["optimize-line", "--params", &p, "--L", "100", "--code", "golay", "--w-max", "20"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r[0][2], "");
}

#[test]
fn missing_file_names_the_path() {
    let o = repnet(&["analyze-network", "--network", "no/such/file.net"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no/such/file.net"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_inputs_are_usage_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let p = write(tmp.path(), "p.params", "f_G_u = 0.1\nbogus = 3\n");
    let o = repnet(&["optimize-line", "--params", &p, "--L", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":2"), "{}", stderr(&o));
    for args in [
        &["optimize-line", "--L", "-5"][..],
        &["optimize-line", "--L", "100", "--code", "hamming"],
        &["optimize-line", "--L", "100", "--w-min", "3"],
        &["optimize-line"],
    ] {
        assert_eq!(repnet(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn triangle_reports_nodes_and_bounds() {
    let o = repnet(&["analyze-network", "--params", "data/uniform_1e-4.params", "--network", "data/triangle.net"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 5);
    let ids: Vec<&str> = r.iter().map(|row| row[0].as_str()).collect();
    assert_eq!(ids, ["a", "b", "c", "fidelity_lower", "fidelity_upper"]);
    let lo: f64 = r[3][2].parse().unwrap();
    let hi: f64 = r[4][2].parse().unwrap();
    assert!(0.0 < lo && lo <= hi && hi <= 1.0);
}

#[test]
fn single_link_network_matches_line_optimum() {
    let line = repnet(&["optimize-line", "--params", "data/uniform_1e-4.params", "--L", "100", "--code", "golay"]);
    let w = rows(&stdout(&line))[0][2].clone();
    let net = repnet(&[
        "analyze-network",
        "--params",
        "data/uniform_1e-4.params",
        "--network",
        "data/line.net",
        "--code",
        "golay",
        "--repeaters",
        "optimal",
    ]);
    assert!(net.status.success(), "{}", stderr(&net));
    let text = stdout(&net);
    let link = meta(&text, "link");
    assert_eq!(link.len(), 1);
    assert!(link[0].contains(&format!(" w={w} ")), "{} vs w={w}", link[0]);
}

#[test]
fn odd_repeater_counts_round_up_with_warning() {
    let tmp = tempfile::tempdir().unwrap();
    let n = write(tmp.path(), "odd.net", "node a\nnode b\nedge a b length_km=10 w=5\n");
    let o = repnet(&["analyze-network", "--network", &n]);
    assert!(o.status.success());
    assert!(stderr(&o).to_lowercase().contains("odd"), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(meta(&text, "link")[0].contains(" w=6 "), "{text}");
}

#[test]
fn noiseless_simulation_is_error_free() {
    let o = repnet(&["simulate", "--network", "data/star4.net", "--trials", "10000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for row in rows(&stdout(&o)) {
        assert_eq!(row[2].parse::<f64>().unwrap(), 0.0);
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
        assert_eq!(row[7], "ok");
    }
}

#[test]
fn seeded_simulation_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = tmp.path().join(name);
        let trace = tmp.path().join(format!("{name}.trace"));
        let o = repnet(&[
            "simulate",
            "--params",
            "data/noisy_1e-3.params",
            "--network",
            "data/triangle.net",
            "--trials",
            "20000",
            "--seed",
            "9",
            "--out",
            out.to_str().unwrap(),
            "--trace",
            trace.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        (std::fs::read(out).unwrap(), std::fs::read_to_string(trace).unwrap())
    };
    let (a, ta) = run("a.csv");
    let (b, tb) = run("b.csv");
    assert_eq!(a, b);
    assert_eq!(ta, tb);
    assert!(ta.lines().any(|l| l.starts_with("station ")));
    assert!(ta.lines().any(|l| l.starts_with("byproduct ")));
}

#[test]
fn circuit_sampling_rejects_codes() {
    let o = repnet(&["simulate", "--network", "data/star4.net", "--trials", "10000", "--code", "golay", "--sampling", "circuit"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn too_few_trials_is_an_error() {
    let o = repnet(&["simulate", "--network", "data/star4.net", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lc_check_outcomes() {
    let same = repnet(&["lc-check", "data/cycle4.net", "data/cycle4.net"]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(stdout(&same).trim(), "equivalent: local complementation at []");

    let star = repnet(&["lc-check", "data/star4.net", "data/complete4.net"]);
    assert_eq!(star.status.code(), Some(0));
    assert_eq!(stdout(&star).trim(), "equivalent: local complementation at [c]");

    let split = repnet(&["lc-check", "data/split4.net", "data/complete4.net"]);
    assert_eq!(split.status.code(), Some(1));
    assert_eq!(stdout(&split).trim(), "not equivalent");
}

#[test]
fn lc_check_bound_is_reported() {
    let o = repnet(&["lc-check", "data/cycle4.net", "data/star4.net", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not found within bound"), "{}", stdout(&o));
}

#[test]
fn output_file_is_written_whole() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("sweep.csv");
    let o = repnet(&["optimize-line", "--L", "50,100", "--code", "golay", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(rows(&std::fs::read_to_string(out).unwrap()).len(), 2);
}

fn golden(name: &str, args: &[&str]) {
    let o = repnet(args);
    assert!(o.status.success(), "{}", stderr(&o));
    let expected = std::fs::read_to_string(dir().join("tests/golden").join(name)).unwrap();
    assert_eq!(stdout(&o), expected, "{name} drifted");
}

#[test]
fn golden_outputs() {
    golden(
        "optimize_line.csv",
        &["optimize-line", "--params", "data/uniform_1e-4.params", "--code", "none,steane:7,golay", "--L", "100:300:100"],
    );
    golden(
        "triangle.csv",
        &["analyze-network", "--params", "data/uniform_1e-4.params", "--network", "data/triangle.net", "--code", "steane:2"],
    );
    golden(
        "simulate_star4.csv",
        &["simulate", "--params", "data/noisy_1e-3.params", "--network", "data/star4.net", "--trials", "100000", "--seed", "3"],
    );
}
