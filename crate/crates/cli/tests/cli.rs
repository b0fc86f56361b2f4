use std::path::Path;
use std::process::{Command, Output};

fn borcherds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borcherds")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn knz_args() -> Vec<&'static str> {
    vec![
        "expand", "--lattice", "u-plus-u", "--form", "j-minus-744", "--ell", "1,0,0,0",
        "--chamber-point", "2,-1", "--weyl", "0,-1", "--cutoff", "4",
    ]
}

#[test]
fn lattice_info_of_e8() {
    let r = stdout(&borcherds(&["lattice", "info", "E8.json"]));
    assert!(r.contains("rank: 8\n") && r.contains("det: 1\n") && r.contains("maximal: true\n"), "{r}");
}

#[test]
fn non_maximal_lattice_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eight.json");
    std::fs::write(&path, "{\"header\": \"borcherds-kit v1\", \"gram\": [[8]]}").unwrap();
    let r = stdout(&borcherds(&["lattice", "info", path.to_str().unwrap()]));
    assert!(r.contains("maximal: false\n") && r.contains("overlattice gram: [[2]]\n"), "{r}");
}

#[test]
fn theta_of_niemeier_a1() {
    let r = stdout(&borcherds(&["theta", "niemeier-a1.json", "--prec", "8"]));
    assert!(r.contains("\nq^1 48\n"), "{r}");
    assert!(r.contains("\nq^8 "), "{r}");
}

#[test]
fn knz_product_table() {
    let r = stdout(&borcherds(&knz_args()));
    assert!(r.contains("N: 1\nA: 1\n"), "{r}");
    assert!(r.contains("weyl exponent: (-1, 0)\n"), "{r}");
    // p^{-1} · p (j(p) − j(q)): −q^{-1} → (1, 1), −196884 q → (1, −1), 196884 p² → (2, 0)
    for line in ["(0, 0) 1\n", "(1, 1) -1\n", "(1, -1) -196884\n", "(2, 0) 196884\n"] {
        assert!(r.contains(line), "missing {line}: {r}");
    }
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let a = stdout(&borcherds(&knz_args()));
    let b = stdout(&borcherds(&knz_args()));
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("knz.txt");
    let mut args = knz_args();
    let out_str = out.to_str().unwrap();
    args.extend(["--out", out_str]);
    assert!(stdout(&borcherds(&args)).is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), a);
}

#[test]
fn relations_and_pairing() {
    assert_eq!(stdout(&borcherds(&["relation", "--form", "24-over-delta"])), "24 * Z(1,())\n-576 * ω\n");
    assert_eq!(stdout(&borcherds(&["relation", "--form", "one-over-delta", "--scale", "24"])), "24 * Z(1,())\n-576 * ω\n");
    assert_eq!(stdout(&borcherds(&["embed-trick", "--form", "24-over-delta"])), "24 * Z(1,())\n-576 * ω\n");
    assert_eq!(stdout(&borcherds(&["pair", "--form", "e4sq-over-delta", "--series", "e6"])), "0\n");
    let r = stdout(&borcherds(&["pair", "--form", "e4sq-over-delta"]));
    assert!(r.ends_with("reduced: 0\n"), "{r}");
}

#[test]
fn embedding_trick_needs_integral_split() {
    let o = borcherds(&["embed-trick", "--form", "one-over-delta"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("24"));
}

#[test]
fn generated_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let form = dir.path().join("f.json");
    let lattice = dir.path().join("l.json");
    stdout(&borcherds(&["form-gen", "24-over-delta", "--prec", "6", "--out", form.to_str().unwrap()]));
    stdout(&borcherds(&["lattice", "export", "niemeier-a2", "--out", lattice.to_str().unwrap()]));
    assert_eq!(stdout(&borcherds(&["relation", "--form", form.to_str().unwrap()])), "24 * Z(1,())\n-576 * ω\n");
    let info = stdout(&borcherds(&["lattice", "info", lattice.to_str().unwrap()]));
    assert!(info.contains("glue codewords: 729\n"), "{info}");
    let again = stdout(&borcherds(&["lattice", "export", "niemeier-a2"]));
    assert_eq!(std::fs::read_to_string(&lattice).unwrap(), again);
}

#[test]
fn data_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/A2.json");
    std::fs::copy(bundled, dir.path().join("mine.json")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_borcherds"))
        .args(["lattice", "info", "mine"])
        .env("BORCHERDS_DATA", dir.path())
        .output()
        .unwrap();
    assert!(stdout(&o).contains("discriminant group: Z/3\n"));
}

#[test]
fn exit_codes() {
    let missing = borcherds(&["theta", "does-not-exist.json"]);
    assert_eq!(missing.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"header\": \"borcherds-kit v1\",\n  \"gram\": [[2,]]\n}").unwrap();
    let parse = borcherds(&["theta", bad.to_str().unwrap()]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 3"));

    let indefinite = borcherds(&["theta", "u-plus-u"]);
    assert_eq!(indefinite.status.code(), Some(1));

    let mut off_wall = knz_args();
    off_wall[8] = "1,-1";
    assert_eq!(borcherds(&off_wall).status.code(), Some(1));
}
