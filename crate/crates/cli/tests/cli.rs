use std::path::Path;
use std::process::{Command, Output};

fn gelfand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gelfand"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

fn signal_csv(values: &[(f64, f64)]) -> String {
    let mut s = String::from("element_index,re,im\n");
    for (i, (a, b)) in values.iter().enumerate() {
        s.push_str(&format!("{i},{a},{b}\n"));
    }
    s
}

fn parse_signal(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn pairs_list_show_export() {
    let o = gelfand(&["pairs", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 12);

    let o = gelfand(&["pairs", "show", "sym-3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["double_cosets"], 2);
    assert_eq!(v["order"], 6);

    let o = gelfand(&["pairs", "export", "dihedral-6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 12);
    assert_eq!(v["subgroup"].as_array().unwrap().len(), 2);

    assert_eq!(gelfand(&["pairs", "show", "nope"]).status.code(), Some(2));
}

#[test]
fn spectrum_of_point_mass_on_exported_pair() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("z4.json");
    let o = gelfand(&[
        "pairs",
        "export",
        "cyclic-4",
        "--output",
        pair.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let sig = dir.path().join("delta.csv");
    write(
        &sig,
        &signal_csv(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
    );
    let o = gelfand(&[
        "spectrum",
        "--pair",
        pair.to_str().unwrap(),
        "--signal",
        sig.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("phi_index,weight,re,im\n"));
    for l in text.lines().skip(1) {
        let f: Vec<f64> = l.split(',').skip(1).map(|x| x.parse().unwrap()).collect();
        assert!((f[0] - 0.25).abs() < 1e-15);
        assert!((f[1] - 1.0).abs() < 1e-15 && f[2].abs() < 1e-15);
    }
}

#[test]
fn analyze_then_synthesize_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let vals: Vec<(f64, f64)> = (0..8)
        .map(|i| (i as f64 * 0.25 - 1.0, 0.5 / (1.0 + i as f64)))
        .collect();
    let sig = dir.path().join("f.csv");
    let win = dir.path().join("w.csv");
    let coeffs = dir.path().join("c.csv");
    let back = dir.path().join("g.csv");
    write(&sig, &signal_csv(&vals));
    write(
        &win,
        &signal_csv(&[
            (1.0, 0.0),
            (0.5, 0.5),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.25, 0.0),
        ]),
    );
    let common = [
        "--pair",
        "cyclic-8",
        "--window",
        win.to_str().unwrap(),
        "--automorphism",
        "mul-3",
        "--normalize-window",
    ];

    let mut args = vec![
        "analyze",
        "--signal",
        sig.to_str().unwrap(),
        "--output",
        coeffs.to_str().unwrap(),
    ];
    args.extend(common);
    assert_eq!(gelfand(&args).status.code(), Some(0));
    let sidecar: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(format!("{}.json", coeffs.display())).unwrap(),
    )
    .unwrap();
    let ratio =
        sidecar["coefficient_norm"].as_f64().unwrap() / sidecar["signal_norm"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() < 1e-12);

    let mut args = vec![
        "synthesize",
        "--coeffs",
        coeffs.to_str().unwrap(),
        "--output",
        back.to_str().unwrap(),
    ];
    args.extend(common);
    assert_eq!(gelfand(&args).status.code(), Some(0));
    let got = parse_signal(&std::fs::read_to_string(&back).unwrap());
    for (a, b) in got.iter().zip(&vals) {
        assert!((a.0 - b.0).abs() < 1e-10 && (a.1 - b.1).abs() < 1e-10);
    }
}

#[test]
fn localize_with_constant_symbol_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let vals: Vec<(f64, f64)> = (0..4).map(|i| (i as f64, -(i as f64) / 2.0)).collect();
    let sig = dir.path().join("f.csv");
    let win = dir.path().join("w.csv");
    let sym = dir.path().join("u.csv");
    let out = dir.path().join("out.csv");
    write(&sig, &signal_csv(&vals));
    write(
        &win,
        &signal_csv(&[(0.5, 0.0), (0.5, 0.0), (0.5, 0.0), (0.5, 0.0)]),
    );
    let mut u = String::from("t_index,phi_index,re,im\n");
    for t in 0..4 {
        for p in 0..4 {
            u.push_str(&format!("{t},{p},1,0\n"));
        }
    }
    write(&sym, &u);
    let o = gelfand(&[
        "localize",
        "--pair",
        "cyclic-4",
        "--signal",
        sig.to_str().unwrap(),
        "--window",
        win.to_str().unwrap(),
        "--symbol",
        sym.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    for (a, b) in parse_signal(&std::fs::read_to_string(&out).unwrap())
        .iter()
        .zip(&vals)
    {
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    }
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(format!("{}.report.json", out.display())).unwrap(),
    )
    .unwrap();
    assert!((report["operator_norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn verify_is_deterministic_and_sets_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = gelfand(&[
            "verify",
            "--pairs",
            "cyclic-8,sym-3",
            "--seed",
            "9",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["metadata"]["seed"], 9);
    assert_eq!(v["cells"].as_array().unwrap().len(), 4 + 2);

    let o = gelfand(&[
        "verify", "--pairs", "cyclic-4", "--tol=-1", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("asserted-fail"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(gelfand(&[]).status.code(), Some(2));
    assert_eq!(gelfand(&["spectrum"]).status.code(), Some(2));
    assert_eq!(gelfand(&["verify", "--seed", "x"]).status.code(), Some(2));
    assert_eq!(
        gelfand(&["verify", "--pairs", "nope"]).status.code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let sig = dir.path().join("bad.csv");
    write(&sig, "element_index,re,im\n0,1,0\n1,zz,0\n2,0,0\n3,0,0\n");
    let o = gelfand(&[
        "spectrum",
        "--pair",
        "cyclic-4",
        "--signal",
        sig.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    // Not constant on double cosets of (S_3, S_2).
    write(
        &sig,
        &signal_csv(&[
            (1.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
        ]),
    );
    let o = gelfand(&[
        "spectrum",
        "--pair",
        "sym-3",
        "--signal",
        sig.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
