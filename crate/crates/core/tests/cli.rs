use std::path::Path;
use std::process::{Command, Output};

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn classify_reports() {
    let o = qwalk(&["classify", "--p", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["class"], "positive_recurrent");
    assert!((v["c_R"].as_f64().unwrap() - 1.75).abs() < 1e-12);

    // eta = 0.3 is the walk parameter itself: p = 0.35, c_R = 13/6
    let v = json(&qwalk(&["classify", "--eta", "0.3"]));
    assert!((v["c_R"].as_f64().unwrap() - 13.0 / 6.0).abs() < 1e-12);

    let o = qwalk(&["classify", "--p", "0.7", "--format", "csv"]);
    let row = stdout(&o).lines().nth(2).unwrap().to_string();
    assert!(row.starts_with("transient,,"));

    let v = json(&qwalk(&["classify", "--eta", "0.0"]));
    assert_eq!(v["class"], "null_recurrent");
}

#[test]
fn table_without_tail_is_undetermined() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.csv");
    std::fs::write(&path, "j,p\n0,0.3\n1,0.4\n2,0.2\n").unwrap();
    let o = qwalk(&["classify", "--table", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["class"], "undetermined");
    assert!(v["partial_sums"]["c_R"].as_f64().unwrap() > 1.0);

    std::fs::write(&path, "j,p\n0,0.3\n1,0.4\ntail,0.2\n").unwrap();
    let o = qwalk(&["classify", "--table", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn eigen_reports() {
    let dir = tempfile::tempdir().unwrap();
    let vec_path = dir.path().join("psi.csv");
    let o = qwalk(&["eigen", "--p", "0.3", "--vector", vec_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["source"], "stationary-measure");
    assert!((v["norm_sq"].as_f64().unwrap() - 2.5).abs() < 1e-9);
    assert!(v["residual"].as_f64().unwrap() <= 1e-10);
    let dump = std::fs::read_to_string(&vec_path).unwrap();
    assert!(dump.starts_with("# qwalk arc-state v1\nsite,direction,re,im\n"));

    let v = json(&qwalk(&["eigen", "--p", "0.7"]));
    assert_eq!(v["source"], "energy-flow");
    assert!((v["norm_sq"].as_f64().unwrap() - 2.5).abs() < 1e-9);

    // p = 0.65 for the walk parameter -0.3
    let v = json(&qwalk(&["eigen", "--eta", "-0.3"]));
    assert_eq!(v["source"], "energy-flow");
    assert!((v["norm_sq"].as_f64().unwrap() - 10.0 / 3.0).abs() < 1e-9);
    let v = json(&qwalk(&["eigen", "--eta", "-0.3+0.25i"]));
    assert!((v["eigenvalue"]["im"].as_f64().unwrap() + 0.25).abs() < 1e-9);

    assert_eq!(qwalk(&["eigen", "--eta", "0.0"]).status.code(), Some(4));
    assert_eq!(qwalk(&["eigen", "--eta", "2.0"]).status.code(), Some(2));
}

#[test]
fn eigen_for_a_fourier_mode() {
    let v = json(&qwalk(&["eigen", "--alpha", "3.9269908169872414", "--beta", "0.5235987755982988", "--k", "0.0"]));
    let re = v["eigenvalue"]["re"].as_f64().unwrap();
    assert!((re - 1.0).abs() < 1e-9);
    assert!((v["norm_sq"].as_f64().unwrap() * 0.965_925_826_289_068_3 - 1.0).abs() < 1e-9);
}

#[test]
fn evolve_rows() {
    let o = qwalk(&["evolve", "--eta", "0.2+0.1i", "--steps", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# qwalk evolve v1"));
    assert_eq!(lines.next(), Some("t,site,probability,norm"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows[0], ["0", "0", "1.0000000000000000e0", "1.0000000000000000e0"]);
    for r in &rows {
        let norm: f64 = r[3].parse().unwrap();
        assert!((norm - 1.0).abs() <= 1e-11);
        assert_eq!(r[2].split('e').next().unwrap().len(), 18, "17 significant digits");
    }
    assert_eq!(qwalk(&["evolve", "--eta", "0.2", "--steps", "30", "--cutoff", "10"]).status.code(), Some(5));
}

#[test]
fn dispersion_csv() {
    let o = qwalk(&["dispersion", "--alpha", "3.926991", "--beta", "0.523599", "--grid", "1024"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 1024);
    let empty: Vec<usize> = (0..1024).filter(|i| rows[*i].split(',').nth(6) == Some("")).collect();
    assert_eq!(empty, vec![256, 768]);
    for r in &rows {
        let f: Vec<&str> = r.split(',').collect();
        if let Ok(t0) = f[6].parse::<f64>() {
            let tc: f64 = f[1].parse().unwrap();
            assert!(t0.cos().abs() >= tc.cos() - 1e-12);
        }
    }

    let o = qwalk(&["dispersion", "--alpha", "0.785398", "--beta", "0.785398", "--grid", "64"]);
    assert!(stdout(&o).lines().skip(2).all(|r| r.split(',').nth(6) == Some("")));
}

#[test]
fn ae_evolve_fourier_check() {
    let dir = tempfile::tempdir().unwrap();
    let snap = dir.path().join("final.csv");
    let o = qwalk(&[
        "ae-evolve",
        "--alpha",
        "3.9269908169872414",
        "--beta",
        "0.5235987755982988",
        "--cylinder",
        "16",
        "--steps",
        "20",
        "--check-fourier",
        "--snapshot",
        snap.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    let dev: f64 = err.trim().rsplit(' ').next().unwrap().parse().unwrap();
    assert!(dev <= 1e-9);
    for r in stdout(&o).lines().skip(2) {
        let norm: f64 = r.split(',').nth(3).unwrap().parse().unwrap();
        assert!((norm - 1.0).abs() <= 1e-11);
    }
    assert!(std::fs::read_to_string(&snap).unwrap().starts_with("# qwalk planar-state v1 cylinder 16\n"));

    let o = qwalk(&["ae-evolve", "--alpha", "1", "--beta", "2", "--steps", "3", "--check-fourier"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let o = qwalk(&["dispersion", "--alpha", "1.0", "--beta", "0.2", "--grid", "64", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        "# planar run\nalpha = 3.9269908169872414\nbeta = 0.5235987755982988\ncylinder = 8\nsteps = 4\ncheck-fourier = true\nformat = json\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = qwalk(&["ae-evolve", "--config", cfg]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["steps"].as_array().unwrap().len(), 5);
    assert!(v["fourier_max_deviation"].as_f64().unwrap() <= 1e-9);

    let o = qwalk(&["ae-evolve", "--config", cfg, "--steps", "2", "--format", "csv"]);
    assert!(stdout(&o).starts_with("# qwalk ae-evolve v1"));
    assert!(stdout(&o).lines().last().unwrap().starts_with("2,"));
    assert!(!Path::new("nonexistent.conf").exists());
    assert_eq!(qwalk(&["classify", "--config", "nonexistent.conf"]).status.code(), Some(2));
}
