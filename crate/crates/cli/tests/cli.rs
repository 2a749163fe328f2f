use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn knset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knset"))
        .args(args)
        .env_remove("KNSET_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    knset(args).status.code().unwrap_or(-1)
}

#[test]
fn input_errors_exit_with_2() {
    assert_eq!(code(&["validate", "--input", &data("malformed.json")]), 2);
    assert_eq!(code(&["validate", "--input", &data("does_not_exist.json")]), 2);
    assert_eq!(code(&["validate"]), 2);
    let cut = data("cut_cube.json");
    assert_eq!(
        code(&["quadrics", "--input", &cut, "--facet-order", "1,2,4,3,5,6,7,8"]),
        2
    );
    assert_eq!(code(&["quadrics", "--input", &cut, "--facet-order", "1,2,3"]), 2);
    assert_eq!(code(&["quadrics", "--input", &data("cp2_fan.json")]), 2);
    let redundant = std::env::temp_dir().join("knset-redundant.json");
    std::fs::write(&redundant, r#"{"n": 1, "A": [[1], [-1], [-1]], "b": [0, 1, 2]}"#).unwrap();
    assert_eq!(code(&["validate", "--input", redundant.to_str().unwrap()]), 2);
}

#[test]
fn unsupported_geometry_exits_with_3() {
    assert_eq!(
        code(&["betti", "--input", &data("square_pyramid.json"), "--no-cache"]),
        3
    );
    assert_eq!(code(&["validate", "--input", &data("nonsimplicial_fan.json")]), 3);
    let out = knset(&["validate", "--input", &data("square_pyramid.json"), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["simple"], serde_json::Value::Bool(false));
}

#[test]
fn bad_cocycles_exit_with_4() {
    let cut = data("cut_cube.json");
    assert_eq!(code(&["massey", "--input", &cut, "u_1v_2", "u_2v_5", "u_3v_6"]), 4);
    assert_eq!(code(&["massey", "--input", &cut, "u_1v_4", "w_2", "u_3v_6"]), 4);
    assert_eq!(code(&["massey", "--input", &cut, "u_9v_4", "u_2v_5", "u_3v_6"]), 4);
}

#[test]
fn massey_reports_undefined_products() {
    let out = knset(&[
        "massey",
        "--input",
        &data("cut_cube.json"),
        "u_1v_4",
        "u_3v_6",
        "u_2v_5",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["defined"], serde_json::Value::Bool(false));
    assert_eq!(v["nonzero_product"], "ab");
}

#[test]
fn json_output_is_canonical() {
    let cache = tempfile::tempdir().unwrap();
    let dir = cache.path().to_str().unwrap();
    let cut = data("cut_cube.json");
    let runs = [
        knset(&["ring", "--input", &cut, "--format", "json", "--no-cache"]),
        knset(&["ring", "--input", &cut, "--format", "json", "--cache-dir", dir]),
        knset(&[
            "ring",
            "--input",
            &cut,
            "--format",
            "json",
            "--cache-dir",
            dir,
            "--jobs",
            "1",
        ]),
    ];
    for out in &runs {
        assert!(out.status.success());
        assert_eq!(out.stdout, runs[0].stdout);
    }
    let v: serde_json::Value = serde_json::from_slice(&runs[0].stdout).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again.as_bytes(), &runs[0].stdout[..]);
    assert_eq!(std::fs::read_dir(cache.path()).unwrap().count(), 1);
}

#[test]
fn quadric_checks_are_reproducible() {
    let cut = data("cut_cube.json");
    let run = |seed: &str| {
        knset(&[
            "quadrics",
            "--input",
            &cut,
            "--check",
            "--samples",
            "50",
            "--seed",
            seed,
            "--format",
            "json",
        ])
        .stdout
    };
    assert_eq!(run("3"), run("3"));
    let v: serde_json::Value = serde_json::from_slice(&run("3")).unwrap();
    assert_eq!(v["check"]["passed"], serde_json::Value::Bool(true));
}

#[test]
fn text_reports() {
    let out = knset(&["validate", "--input", &data("three_rays.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("complete: false"));
    let out = knset(&["validate", "--input", &data("cp2_fan.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("complete: true"));
    assert!(text.contains("G: rank 1"));
    let out = knset(&["validate", "--input", &data("octahedron.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("minimal non-faces: {1,2} {3,4} {5,6}"));
}

#[test]
fn small_examples() {
    let text = |args: &[&str]| String::from_utf8(knset(args).stdout).unwrap();
    assert!(text(&["betti", "--input", &data("square.json"), "--no-cache"]).starts_with("betti: (1,0,0,2,0,0,1)\n"));
    let ring = text(&["ring", "--input", &data("cp2_fan.json"), "--degree", "5", "--no-cache"]);
    assert!(ring.contains("H^5: 1 generators\n  [u_1v_2v_3]\n"));
    let quadrics = text(&["quadrics", "--input", &data("simplex_2.json")]);
    assert!(quadrics.ends_with("|z_1|^2+|z_2|^2+|z_3|^2-1=0\n"));
    let cp2 = data("cp2_fan.json");
    let massey = text(&["massey", "--input", &cp2, "u_1v_2v_3", "u_1v_2v_3", "u_1v_2v_3"]);
    assert!(massey.starts_with("defined, trivial"));
}
