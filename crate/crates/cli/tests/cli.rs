use std::fs;
use std::process::{Command, Output};

fn zerodist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerodist")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|c| c == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

#[test]
fn hermite_two_zeros() {
    let o = zerodist(&["zeros", "--family", "hermite", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let x: Vec<f64> = column(&s, "x_k").iter().map(|v| v.parse().unwrap()).collect();
    assert_eq!(s.lines().next(), Some("k,x_k,z_k"));
    assert!((x[0] + 0.5f64.sqrt()).abs() < 1e-15 && (x[1] - 0.5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn meixner_density_plateau_is_one() {
    let o = zerodist(&["density", "--family", "meixner:beta=1,c=0.25", "--grid", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let z = column(&s, "z");
    let rho = column(&s, "rho");
    let mut seen = 0;
    for (z, r) in z.iter().zip(&rho) {
        if z.parse::<f64>().unwrap() <= 0.33 {
            assert_eq!(r.parse::<f64>().unwrap(), 1.0, "z={z}");
            seen += 1;
        }
    }
    assert_eq!(seen, 34);
}

#[test]
fn output_is_byte_stable() {
    let args = ["zeros", "--family", "mp:lambda=1,phi=1.0471975512", "--n", "60"];
    assert_eq!(zerodist(&args).stdout, zerodist(&args).stdout);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "1"]);
    assert_eq!(zerodist(&args).stdout, zerodist(&threaded).stdout);
}

#[test]
fn compare_reports_ks_and_edges() {
    let o = zerodist(&["compare", "--family", "mp:lambda=1,phi=1.0471975512", "--n", "400"]);
    let s = stdout(&o);
    let metric = column(&s, "metric");
    let value = column(&s, "value");
    let ks: f64 = value[metric.iter().position(|m| m == "ks").unwrap()].parse().unwrap();
    assert!(ks < 0.03);
    // the extreme zeros are still about 0.047 inside the support at n = 400
    assert_eq!(o.status.code(), Some(1));
    let relaxed = zerodist(&["compare", "--family", "mp:lambda=1,phi=1.0471975512", "--n", "400", "--edge-max", "0.05"]);
    assert_eq!(relaxed.status.code(), Some(0));
}

#[test]
fn bethe_products_within_threshold() {
    for family in ["meixner:beta=1,c=0.25", "mp:lambda=1,phi=1.0471975512"] {
        for identity in ["exact", "shifted"] {
            let o = zerodist(&["bethe", "--family", family, "--n", "100", "--identity", identity]);
            assert_eq!(o.status.code(), Some(0), "{family} {identity}");
            let s = stdout(&o);
            assert_eq!(s.lines().next(), Some("m,x_m,z_m,residual_abs"));
            assert_eq!(s.lines().count(), 101);
        }
    }
}

#[test]
fn bethe_fails_verification_on_loose_zeros() {
    let o = zerodist(&["bethe", "--family", "hermite", "--n", "50", "--tol", "1e-3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sum-rule"));
}

#[test]
fn chi_columns_and_window() {
    let o = zerodist(&["chi", "--family", "meixner:beta=1,c=0.25", "--n", "200", "--window", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("z,ln_ratio,ln_chi_analytic"));
    let wide = stdout(&zerodist(&["chi", "--family", "meixner:beta=1,c=0.25", "--n", "200"]));
    assert!(wide.lines().count() < s.lines().count());
}

#[test]
fn moments_from_traces_and_quadrature() {
    let o = zerodist(&["moments", "--family", "hermite", "--n", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    let o = zerodist(&["moments", "--a", "1", "--b", "0", "--gamma", "1", "--kmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let measured = column(&stdout(&o), "measured");
    assert!((measured[1].parse::<f64>().unwrap() - 0.5).abs() < 1e-8);
    assert_eq!(zerodist(&["moments", "--a", "1"]).status.code(), Some(2));
}

#[test]
fn nudensity_json_has_nulls_for_infinite_values() {
    let o = zerodist(&["nudensity", "--a", "0", "--b", "1", "--gamma", "1", "--grid", "0.5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("\"rho\": null"), "{s}");
}

#[test]
fn writes_file_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rho.csv");
    let out_s = out.to_str().unwrap();
    let o = zerodist(&["density", "--family", "hermite", "--grid", "0.1", "--out", out_s, "--plot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(&out).unwrap().starts_with("z,rho,ln_chi\n"));
    let script = fs::read_to_string(dir.path().join("rho.csv.gp")).unwrap();
    assert!(script.contains(out_s));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["zeros", "--family", "laguerre", "--n", "3"],
        vec!["zeros", "--family", "hermite", "--n", "0"],
        vec!["zeros", "--family", "hermite", "--n", "3", "--precision", "quad"],
        vec!["zeros", "--family", "hermite", "--n", "3", "--plot"],
        vec!["density", "--family", "hermite", "--grid", "-1"],
        vec!["chi", "--family", "hermite", "--n", "10"],
        vec!["bethe", "--family", "charlier:a=1", "--n", "10"],
        vec!["nudensity", "--a", "1", "--b", "1", "--gamma", "1"],
    ] {
        assert_eq!(zerodist(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn numeric_failure_exits_three() {
    // a single zero has no gap above the precision floor
    let o = zerodist(&["chi", "--family", "meixner:beta=1,c=0.25", "--n", "1"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}
