use std::path::PathBuf;
use std::process::{Command, Output};

fn slaglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slaglab"))
        .args(args)
        .env_remove("SLAGLAB_SEED")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn pbp_exit_codes() {
    assert_eq!(
        code(&slaglab(&["pbp", "decide", &data("solid_torus3.json")])),
        0
    );
    assert_eq!(
        code(&slaglab(&["pbp", "decide", &data("disk2_maslov1.json")])),
        3
    );
    assert_eq!(
        code(&slaglab(&["pbp", "decide", &data("n5_su_obstructed.json")])),
        3
    );
    assert_eq!(code(&slaglab(&["pbp", "decide", &data("n7.json")])), 4);
}

#[test]
fn extension_count_reported() {
    let out = slaglab(&[
        "--json",
        "pbp",
        "decide",
        &data("solid_torus3.json"),
        "--count",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["extensions"]["rank"], 2);
    assert_eq!(v["verdict"], "Solvable");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(code(&slaglab(&["cone", "verify"])), 2);
    assert_eq!(code(&slaglab(&["cone", "verify", "su(1)"])), 2);
    let out = slaglab(&["cobordism", "Wu*"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains('^'));
    assert_eq!(code(&slaglab(&["pbp", "decide", "/nonexistent.json"])), 2);
}

#[test]
fn cone_verify_matches_catalog() {
    assert_eq!(
        code(&slaglab(&["cone", "verify", "su(3)", "--samples", "20"])),
        0
    );
    assert_eq!(
        code(&slaglab(&["cone", "verify", "sw(1,2)", "--samples", "20"])),
        0
    );
}

#[test]
fn catalog_mismatch_exits_1() {
    // An absurd tolerance rejects even the exact cone.
    assert_eq!(
        code(&slaglab(&[
            "--tol",
            "0",
            "cone",
            "verify",
            "su(3)",
            "--samples",
            "20"
        ])),
        1
    );
}

#[test]
fn cobordism_and_charclass() {
    let out = slaglab(&["cobordism", "Wu"]);
    assert_eq!(code(&out), 0);
    assert!(
        String::from_utf8_lossy(&out.stdout).contains("DoesNotBound"),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(code(&slaglab(&["charclass", "CP(2)*CP(2)"])), 0);
}

#[test]
fn maslov_of_schoen_wolfson() {
    let out = slaglab(&["--json", "cone", "maslov", "2", "5"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["maslov_index"], -3);
}

#[test]
fn json_is_deterministic_under_seed() {
    let args = [
        "--json",
        "--seed",
        "11",
        "cone",
        "verify",
        "su-sp(2)",
        "--samples",
        "25",
    ];
    let (a, b) = (slaglab(&args), slaglab(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let other = slaglab(&[
        "--json",
        "--seed",
        "12",
        "cone",
        "verify",
        "su-sp(2)",
        "--samples",
        "25",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_slaglab"));
        cmd.args(args).env_remove("SLAGLAB_SEED");
        if let Some(s) = env {
            cmd.env("SLAGLAB_SEED", s);
        }
        cmd.output().unwrap().stdout
    };
    let base = ["--json", "cone", "verify", "su(3)", "--samples", "15"];
    let from_env = run(Some("11"), &base);
    let from_flag = run(
        None,
        &[
            "--json",
            "--seed",
            "11",
            "cone",
            "verify",
            "su(3)",
            "--samples",
            "15",
        ],
    );
    assert_eq!(from_env, from_flag);
    assert_ne!(from_env, run(None, &base));
}

#[test]
fn geometry_commands() {
    let out = slaglab(&["--json", "geom", "integral", "--circle"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let value = v["value"].as_f64().unwrap_or_else(|| panic!("{v}"));
    assert!((value - std::f64::consts::PI).abs() < 1e-6);
    assert_eq!(code(&slaglab(&["geom", "integral", "--sw", "1,2"])), 0);
    assert_eq!(code(&slaglab(&["geom", "maslov", "--sw", "3,1"])), 0);
    assert_eq!(
        code(&slaglab(&[
            "geom",
            "moments",
            "--clifford",
            "3",
            "--grid",
            "8"
        ])),
        0
    );
    assert_eq!(
        code(&slaglab(&[
            "cone",
            "smoothing",
            "clifford(2)",
            "--radii",
            "5"
        ])),
        0
    );
}
