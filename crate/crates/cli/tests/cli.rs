use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use helixkit_core::{discrete_curvature, Metric, Point3};
use serde_json::Value;

fn helixkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helixkit"))
        .args(args)
        .output()
        .unwrap()
}

fn generate_json(dir: &Path, name: &str, args: &[&str]) -> Value {
    let out = dir.join(name);
    let mut all = vec!["generate", "--out", out.to_str().unwrap()];
    all.extend_from_slice(args);
    let o = helixkit(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap()
}

fn column(v: &Value, key: &str) -> Vec<f64> {
    v["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[key].as_f64().unwrap())
        .collect()
}

#[test]
fn list_is_stable_and_complete() {
    let a = helixkit(&["list"]);
    let b = helixkit(&["list"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let json = helixkit(&["list", "--format", "json"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["families"].as_array().unwrap().len(), 6);
    let fields = v["killing_fields"].as_array().unwrap();
    for metric in ["euclidean", "hyperbolic-uhs"] {
        assert_eq!(fields.iter().filter(|f| f["metric"] == metric).count(), 6);
    }
}

#[test]
fn generate_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["json", "csv"] {
        let paths: Vec<_> = (0..2)
            .map(|i| dir.path().join(format!("run{i}.{format}")))
            .collect();
        for p in &paths {
            let o = helixkit(&[
                "generate",
                "--family",
                "mn",
                "--param",
                "omega=s",
                "--format",
                format,
                "--out",
                p.to_str().unwrap(),
            ]);
            assert!(o.status.success());
        }
        assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    }
}

#[test]
fn horosphere_rows_stay_at_height_one() {
    let dir = tempfile::tempdir().unwrap();
    let v = generate_json(
        dir.path(),
        "p.json",
        &[
            "--family",
            "hyp-parabolic",
            "--param",
            "c=1",
            "--param",
            "theta=deg:30",
            "--samples",
            "100",
        ],
    );
    let z = column(&v, "z");
    assert_eq!(z.len(), 100);
    assert!(z.iter().all(|&z| z == 1.0));
    assert_eq!(v["meta"]["metric"], "hyperbolic-uhs");
    assert_eq!(v["meta"]["family"], "hyp-parabolic");
}

#[test]
fn circular_helix_curvature_column() {
    let dir = tempfile::tempdir().unwrap();
    let v = generate_json(
        dir.path(),
        "e.json",
        &[
            "--family",
            "euclidean-rotational",
            "--param",
            "r=1",
            "--param",
            "theta=deg:45",
        ],
    );
    assert!(column(&v, "kappa").iter().all(|k| (k - 0.5).abs() < 1e-9));
}

#[test]
#[allow(clippy::approx_constant)]
fn constant_angle_rows_lie_on_the_cone() {
    let dir = tempfile::tempdir().unwrap();
    let v = generate_json(
        dir.path(),
        "m.json",
        &[
            "--family",
            "mn",
            "--param",
            "omega=const:0.7853981634",
            "--param",
            "theta=deg:45",
        ],
    );
    let w = 0.7853981634_f64;
    for row in v["samples"].as_array().unwrap() {
        let (x, y, z) = (
            row["x"].as_f64().unwrap(),
            row["y"].as_f64().unwrap(),
            row["z"].as_f64().unwrap(),
        );
        // apex at the origin, half-angle π/2 − w from the z-axis
        let gap = (x * x + y * y).sqrt() * w.tan() - z;
        assert!(gap.abs() < 1e-9, "{gap}");
    }
}

#[test]
fn csv_has_fixed_header() {
    let o = helixkit(&[
        "generate",
        "--family",
        "hyp-dilation",
        "--samples",
        "5",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,x,y,z,kappa,tau,axis_len,angle"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn degenerate_curve_leaves_frame_columns_null() {
    let o = helixkit(&[
        "generate",
        "--family",
        "hyp-dilation",
        "--param",
        "c=0",
        "--param",
        "theta=0",
        "--samples",
        "3",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in v["samples"].as_array().unwrap() {
        assert!(row["kappa"].is_null() && row["tau"].is_null());
        assert!(row["angle"].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn verify_exit_codes() {
    let o = helixkit(&["verify", "--family", "hyp-dilation"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);

    let o = helixkit(&[
        "verify",
        "--family",
        "mn",
        "--param",
        "omega=s",
        "--param",
        "lancret=1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let lancret = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "lancret_ratio_spread")
        .unwrap();
    assert_eq!(lancret["verdict"], "fail");

    let o = helixkit(&[
        "verify",
        "--family",
        "hyp-dilation",
        "--param",
        "theta=6.283185307179586",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("theta"), "{err}");
}

#[test]
fn tolerance_override_can_fail_a_check() {
    let o = helixkit(&[
        "verify",
        "--family",
        "hyp-dilation",
        "--tol",
        "kt_match_rel=1e-14",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = helixkit(&["verify", "--family", "hyp-dilation", "--tol", "bogus=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(
        &cfg,
        "# parabolic run\nfamily = hyp-parabolic\nc = 2\nsamples = 7\nformat = csv\n",
    )
    .unwrap();
    let o = helixkit(&[
        "generate",
        "--config",
        cfg.to_str().unwrap(),
        "--param",
        "c=3",
    ]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.split(',').nth(3) == Some("3.0")));

    fs::write(&cfg, "family hyp-parabolic\n").unwrap();
    let o = helixkit(&["generate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn polyline_round_trip_reproduces_curvature() {
    let dir = tempfile::tempdir().unwrap();
    for family in ["hyp-dilation", "hyp-elliptic", "euclidean-rotational"] {
        let v = generate_json(
            dir.path(),
            &format!("{family}.json"),
            &["--family", family, "--range", "0:2", "--samples", "2001"],
        );
        let metric = match v["meta"]["metric"].as_str().unwrap() {
            "euclidean" => Metric::Euclidean,
            _ => Metric::HyperbolicUhs,
        };
        let s = column(&v, "s");
        let pts: Vec<Point3> = v["samples"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                Point3::new(
                    r["x"].as_f64().unwrap(),
                    r["y"].as_f64().unwrap(),
                    r["z"].as_f64().unwrap(),
                )
            })
            .collect();
        let kappa = column(&v, "kappa");
        let discrete = discrete_curvature(metric, &pts, s[1] - s[0]).unwrap();
        let mut checked = 0;
        for (d, k) in discrete.iter().zip(&kappa) {
            if let Some(d) = d {
                assert!((d - k).abs() < 1e-4, "{family}: {d} vs {k}");
                checked += 1;
            }
        }
        assert!(checked > 1900);
    }
}
