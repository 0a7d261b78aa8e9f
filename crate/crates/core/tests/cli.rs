use std::process::{Command, Output};

fn dbridge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dbridge"))
        .args(args)
        .env_remove("DB_PRECISION_BITS")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = dbridge(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn scan_reproduces_twenty_digit_table() {
    let out = stdout(&[
        "scan",
        "--alpha",
        "inv_sqrt5",
        "--nmax",
        "1000000",
        "--digits",
        "20",
    ]);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(
        rows[0],
        "n,xi_tilde,omega_plus,omega_minus,in_I_plus,in_I_minus"
    );
    assert_eq!(rows.len(), 6);
    assert!(rows[5].starts_with("109801,-0.05590169943720494638,"));
    assert!(rows
        .iter()
        .skip(1)
        .all(|r| r.split(',').nth(4) == Some("true")));
}

#[test]
fn scan_output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (path, threads) in [(&a, "1"), (&b, "8")] {
        let out = dbridge(&[
            "scan",
            "--alpha",
            "inv_sqrt3",
            "--nmax",
            "300000",
            "--format",
            "json",
            "--threads",
            threads,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["clusters"].as_array().unwrap().len(), 2);
}

#[test]
fn rational_scan_has_single_hit() {
    let out = stdout(&["scan", "--alpha", "1/3", "--nmax", "100"]);
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 2);
}

#[test]
fn spectrum_rational_markers() {
    let out = stdout(&["spectrum", "--alpha", "1/3", "--nmax", "10"]);
    let branches: Vec<&str> = out.lines().filter(|l| l.ends_with(",true")).collect();
    assert_eq!(
        branches,
        ["plus,3,,,,true", "plus,6,,,,true", "plus,9,,,,true"]
    );
    assert!(out.ends_with("# isolated=14 branch_plus=3 branch_minus=0\n"));
}

#[test]
fn profile_csv_starts_at_vertex_value() {
    let out = stdout(&[
        "profile",
        "--alpha",
        "inv_sqrt5",
        "--family",
        "plus",
        "--n",
        "19",
        "--grid",
        "512",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("edge,x,u,du"));
    let first: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    let spectrum = stdout(&["spectrum", "--alpha", "inv_sqrt5", "--nmax", "19"]);
    let omega: f64 = spectrum
        .lines()
        .find(|l| l.starts_with("plus,19,"))
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!((first[2] - (2.0 * omega.abs()).sqrt()).abs() < 1e-12);
    assert_eq!(out.lines().count(), 1 + 4 * 512);
}

#[test]
fn profile_validation_in_json_header() {
    let out = stdout(&[
        "profile",
        "--alpha",
        "1/2",
        "--branch",
        "--n",
        "1",
        "--omega",
        "-1",
        "--format",
        "json",
        "--validate",
        "--grid",
        "64",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["validation"]["kirchhoff_cont"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["samples"].as_array().unwrap().len(), 4 * 64);
}

#[test]
fn construct_alpha_reports_omega0() {
    let out = stdout(&[
        "construct-alpha",
        "--ell",
        "5.25",
        "--depth",
        "12",
        "--omega0",
    ]);
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(rows.len(), 12);
    assert!(rows[11].contains(",5.25000000000000000000,"));
    assert!(out.contains("# omega0="));
}

#[test]
fn linear_examples() {
    let out = stdout(&["linear", "--alpha", "inv_sqrt5"]);
    assert!(out.contains("no eigenvalues"));
    let out = stdout(&[
        "linear",
        "--alpha",
        "1/3",
        "--bifurcate",
        "--n",
        "1",
        "--eps",
        "1e-8",
    ]);
    let ratio: f64 = out
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(5)
        .unwrap()
        .parse()
        .unwrap();
    assert!((ratio - 1.0).abs() < 1e-3);
}

#[test]
fn exit_codes_and_diagnostics() {
    let cases: [(&[&str], i32); 5] = [
        (&["scan", "--alpha", "7/3"], 1),
        (&["scan", "--alpha", "nope"], 1),
        (&["scan", "--bogus"], 1),
        (
            &[
                "scan",
                "--alpha",
                "inv_sqrt5",
                "--nmax",
                "100",
                "--precision-bits",
                "30",
            ],
            2,
        ),
        (
            &[
                "scan",
                "--alpha",
                "1/3",
                "--nmax",
                "5",
                "--output",
                "/nonexistent-dir/x.csv",
            ],
            3,
        ),
    ];
    for (args, code) in cases {
        let out = dbridge(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
    }
}

#[test]
fn precision_env_and_config_file() {
    let out = Command::new(env!("CARGO_BIN_EXE_dbridge"))
        .args(["scan", "--alpha", "inv_sqrt5", "--nmax", "100"])
        .env("DB_PRECISION_BITS", "30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "alpha = inv_sqrt5\nnmax = 400\nthreshold = 0.1\nvalidate = true\n",
    )
    .unwrap();
    let out = stdout(&["scan", "--config", cfg.to_str().unwrap()]);
    assert!(out.starts_with("n,xi_tilde"));
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 4);

    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(
        dbridge(&["scan", "--alpha", "1/3", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn catalog_file_entries_resolve() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("extra.cat");
    std::fs::write(&cat, "# golden section\ngolden quad -1 1 2 5\n").unwrap();
    let out = stdout(&[
        "spectrum",
        "--alpha",
        "golden",
        "--nmax",
        "2",
        "--catalog",
        cat.to_str().unwrap(),
    ]);
    assert_eq!(out.lines().filter(|l| l.ends_with(",false")).count(), 4);
}
