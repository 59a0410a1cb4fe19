//! End-to-end tests of the command-line binary: exit codes, golden machine
//! output, and diagnostics.

use std::path::PathBuf;
use std::process::{Command, Output};

fn manifest(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../manifests")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-ogw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn validate_accepts_shipped_manifests() {
    for name in ["local_P1.txt", "local_P2.txt", "local_P1xP1.txt"] {
        let out = run(&["validate", manifest(name).to_str().unwrap()]);
        assert!(out.status.success(), "{name} failed validation");
        assert!(stdout_of(&out).contains("ok"));
    }
}

#[test]
fn validate_reports_violations_with_nonzero_status() {
    let dir = std::env::temp_dir().join("toric-ogw-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_rowsum.txt");
    std::fs::write(&path, "n = 2\nw = [[0],[-1],[1]]\nQ = [[-3,1,1]]\n").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_of(&out).contains("sums to -1"));
}

#[test]
fn parse_errors_name_line_and_column() {
    let dir = std::env::temp_dir().join("toric-ogw-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("syntax.txt");
    std::fs::write(&path, "n = 2\nw = [[0],[-1],[1]\nQ = [[-2,1,1]]\n").unwrap();
    let out = run(&["open-gw", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn open_gw_machine_output_is_golden() {
    let out = run(&[
        "open-gw",
        manifest("local_P1.txt").to_str().unwrap(),
        "--order",
        "10",
        "--machine",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "GEN\t0\t1\nGEN\t1\t1\n");
}

#[test]
fn open_gw_local_p2_table() {
    let out = run(&[
        "open-gw",
        manifest("local_P2.txt").to_str().unwrap(),
        "--order",
        "5",
        "--machine",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "GEN\t0\t1\nGEN\t1\t-2\nGEN\t2\t5\nGEN\t3\t-32\nGEN\t4\t286\nGEN\t5\t-3038\n"
    );
}

#[test]
fn machine_output_is_byte_stable_across_runs() {
    let path = manifest("local_P1xP1.txt");
    let args = [
        "invert",
        path.to_str().unwrap(),
        "--order",
        "6",
        "--machine",
    ];
    let first = stdout_of(&run(&args));
    let second = stdout_of(&run(&args));
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn xi_records_carry_the_ray_index() {
    let out = run(&[
        "xi",
        manifest("local_P1.txt").to_str().unwrap(),
        "--order",
        "3",
        "--ray",
        "0",
        "--machine",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "XI\t0,1,0\t1\nXI\t0,2,0\t3/2\nXI\t0,3,0\t10/3\n"
    );
}

#[test]
fn xi_of_vertex_rays_is_empty_in_machine_mode() {
    let out = run(&[
        "xi",
        manifest("local_P1.txt").to_str().unwrap(),
        "--ray",
        "3",
        "--machine",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "");
}

#[test]
fn syz_matches_invert_on_the_base_components() {
    let path = manifest("local_P2.txt");
    let syz = stdout_of(&run(&[
        "syz",
        path.to_str().unwrap(),
        "--order",
        "6",
        "--machine",
    ]));
    let inv = stdout_of(&run(&[
        "invert",
        path.to_str().unwrap(),
        "--order",
        "6",
        "--machine",
    ]));
    // The SYZ records are the INVMAP records of component 0 with the inert
    // fiber exponent column removed.
    let expected: Vec<String> = inv
        .lines()
        .filter(|line| line.starts_with("INVMAP\t0,"))
        .map(|line| {
            let fields: Vec<&str> = line.split('\t').collect();
            let nums: Vec<&str> = fields[1].split(',').collect();
            assert_eq!(*nums.last().unwrap(), "0");
            format!(
                "SYZ\t{}\t{}",
                nums[..nums.len() - 1].join(","),
                fields[2]
            )
        })
        .collect();
    let got: Vec<String> = syz.lines().map(str::to_string).collect();
    assert_eq!(got, expected);
}

#[test]
fn gkz_check_passes_and_prints_the_report() {
    let out = run(&[
        "gkz-check",
        manifest("local_P2.txt").to_str().unwrap(),
        "--order",
        "8",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("residuals: all zero (effective order >= 5)"), "{text}");
    assert!(text.contains("expected solutions: 3"), "{text}");
}

#[test]
fn gkz_check_machine_records_end_with_volume() {
    let out = run(&[
        "gkz-check",
        manifest("local_P1.txt").to_str().unwrap(),
        "--order",
        "6",
        "--degree-bound",
        "2",
        "--machine",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    // Degrees (1,0) and (2,0) survive the sublattice filter, one component.
    assert_eq!(
        text,
        "RESIDUAL\t0,1,0\t0\nRESIDUAL\t0,2,0\t0\nVOLUME\t-\t2\n"
    );
}

#[test]
fn volume_uses_cones_when_present() {
    let out = run(&["volume", manifest("local_P2.txt").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("3"));
    let machine = run(&[
        "volume",
        manifest("local_P1xP1.txt").to_str().unwrap(),
        "--machine",
    ]);
    assert_eq!(stdout_of(&machine), "VOLUME\t-\t4\n");
}

#[test]
fn mirror_map_human_output_names_components() {
    let out = run(&[
        "mirror-map",
        manifest("local_P1.txt").to_str().unwrap(),
        "--order",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("log q_1(y) = log y_1 + series"), "{text}");
    assert!(text.contains("log q_2(y) = log y_2 + series"), "{text}");
}
