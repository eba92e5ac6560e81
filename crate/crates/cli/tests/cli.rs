use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jsobolev"))
}

#[test]
fn window_prints_the_known_pair() {
    let out = bin()
        .args(["window", "--alpha", "0", "--beta", "0", "--m", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "p_lower=1.6 p_upper=2.6666666666666665\n"
    );
}

#[test]
fn partial_sum_reproduces_a_basis_element() {
    let out = bin()
        .args([
            "partial-sum",
            "--alpha",
            "0",
            "--beta",
            "0",
            "--m",
            "1",
            "--f",
            "q7",
            "--n",
            "10",
            "--p",
            "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for line in text.lines().skip(2) {
        let (n, err) = line.split_once(',').unwrap();
        let n: usize = n.parse().unwrap();
        let err: f64 = err.parse().unwrap();
        if n >= 7 {
            assert!(err < 1e-8, "n={n}: error {err}");
        } else {
            assert!(err > 0.5, "n={n}: error {err}");
        }
    }
}

#[test]
fn identical_config_gives_byte_identical_csv() {
    let dir = std::env::temp_dir();
    let a = dir.join("jsobolev_sweep_a.csv");
    let b = dir.join("jsobolev_sweep_b.csv");
    for path in [&a, &b] {
        let out = bin()
            .args([
                "sweep-p",
                "--alpha",
                "0",
                "--beta",
                "0",
                "--m",
                "1",
                "--p-grid",
                "1.8:2.2:0.2",
                "--degrees",
                "8:16:*2",
                "--out",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let ca = std::fs::read(&a).unwrap();
    let cb = std::fs::read(&b).unwrap();
    assert!(!ca.is_empty());
    assert_eq!(ca, cb);
    assert!(ca.starts_with(b"p,n,value,slope_window_flag\n"));
    assert!(!ca.contains(&b'\r'));
}

#[test]
fn invalid_parameters_exit_with_2() {
    let out = bin()
        .args(["window", "--alpha", "-2", "--beta", "0", "--m", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_config_keys_are_hard_errors() {
    let path = std::env::temp_dir().join("jsobolev_bad_config.json");
    std::fs::write(&path, r#"{"alpha": 0.5, "alpa": 1.0}"#).unwrap();
    let out = bin()
        .args(["window", "--config", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpa"));
}

#[test]
fn flags_override_the_config_file() {
    let path = std::env::temp_dir().join("jsobolev_config.json");
    std::fs::write(&path, r#"{"alpha": 0.0, "beta": 0.0, "m": 2}"#).unwrap();
    let out = bin()
        .args(["window", "--config", path.to_str().unwrap(), "--m", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "p_lower=1.6 p_upper=2.6666666666666665\n"
    );
}

#[test]
fn unwritable_output_path_exits_with_1() {
    let out = bin()
        .args([
            "eval",
            "--f",
            "expx",
            "--x",
            "0.5",
            "--out",
            "/no/such/dir/out.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn env_resolution_is_lowest_precedence() {
    // a deliberately coarse env resolution ruins the q7 reconstruction,
    // while an explicit flag restores it
    let run = |extra: &[&str]| {
        let mut cmd = bin();
        cmd.env("JSOBOLEV_RESOLUTION", "4").args([
            "partial-sum",
            "--alpha",
            "0",
            "--beta",
            "0",
            "--m",
            "1",
            "--f",
            "q7",
            "--n",
            "8",
        ]);
        cmd.args(extra);
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        let last = text.lines().last().unwrap().to_string();
        let (_, err) = last.split_once(',').unwrap();
        err.parse::<f64>().unwrap()
    };
    assert!(run(&[]) > 1e-8);
    assert!(run(&["--resolution", "64"]) < 1e-8);
}
