use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn mfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfrac")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = mfrac(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    mfrac(args).status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mfrac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn measure_csv() {
    let out = stdout(&["measure", "-p", &data("n2.txt"), "--element", "x", "--depth", "10"]);
    assert_eq!(out, "tau,depth,count,denominator,lower_bound\nx,10,1023,1024,1023/1024\n");
}

#[test]
fn defects_csv_schema() {
    let out = stdout(&["defects", "-p", &data("f2.txt"), "--depth", "3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("label,norm_defect,hs_defect_num,hs_defect_den,exceptional_mass"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 5));
    assert!(rows.iter().any(|r| r[0] == "eqsum" && r[1] == "0"));
    assert!(rows.iter().any(|r| r[0] == "T:eqdelta:x" && r[1] == "1"));
}

#[test]
fn presentation_and_decompose() {
    let out = stdout(&["presentation", "-p", &data("c4.txt"), "--depth", "2"]);
    assert!(out.contains("depth,size,elements\n0,1,1\n1,4,"));
    assert!(out.contains("\n2,12,"));
    let out = stdout(&["decompose", "-p", &data("c4.txt")]);
    assert_eq!(out, "components: 2\ncomponent 1: a c\ncomponent 2: b d\ncrisp-laca: applicable\n");
    let out = stdout(&["decompose", "-p", &data("n2.txt")]);
    assert!(out.ends_with("crisp-laca: not applicable\n"));
}

#[test]
fn boundary_verdicts() {
    let leq = stdout(&["boundary-leq", "-p", &data("xyz.txt"), "--left", "(xz)^inf", "--right", "x^inf"]);
    assert!(leq.starts_with("TRUE\nwitnesses: 1 3 5 7 9\n"));
    let eq = stdout(&["boundary-leq", "-p", &data("f2.txt"), "--left", "x^inf", "--right", "y^inf", "--relation", "equiv"]);
    assert!(eq.starts_with("FALSE\n"));
    assert!(eq.contains("letter y runs out"));
}

#[test]
fn fractal_render_writes_both_formats() {
    let pgm = scratch("cantor.pgm");
    let out = stdout(&[
        "fractal-render", "-p", &data("f2.txt"), "--ifs", &data("cantor.ifs"), "--depth", "10", "--grid", "9",
        "--out", pgm.to_str().unwrap(), "--region", "0:1/3",
    ]);
    assert!(out.contains("region,lower,upper\n0:1/3,1/2,1/2\n"));
    assert!(std::fs::read(&pgm).unwrap().starts_with(b"P5\n"));
    let csv = scratch("cantor.csv");
    stdout(&["fractal-render", "-p", &data("f2.txt"), "--ifs", &data("cantor.ifs"), "--depth", "6", "--grid", "4", "--out", csv.to_str().unwrap()]);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("i0,lo0,hi0,lower,upper\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn attractor_outputs() {
    let out = stdout(&["attractor", "-p", &data("f2.txt"), "--ifs", &data("cantor.ifs"), "--depth", "2"]);
    assert_eq!(out.lines().next(), Some("element,x0"));
    assert_eq!(out.lines().count(), 5);
    let out = stdout(&["attractor", "-p", &data("f2.txt"), "--ifs", &data("cantor.ifs"), "--depth", "5", "--word", "x^inf", "--seed", "0"]);
    assert!(out.starts_with("x0,bound\n0,"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["no-such-command"]), 1);
    assert_eq!(code(&["measure", "-p", "/nonexistent/p.txt", "--element", "x", "--depth", "2"]), 1);
    assert_eq!(code(&["measure", "-p", &data("f2.txt"), "--element", "x", "--depth", "two"]), 1);
    assert_eq!(code(&["attractor", "-p", &data("f2.txt"), "--ifs", &data("cantor.ifs"), "--depth", "2", "--seed", "1,2"]), 1);
    assert_eq!(code(&["measure", "-p", &data("f2.txt"), "--element", "xyx", "--depth", "2"]), 2);
    assert_eq!(code(&["measure", "-p", &data("f2.txt"), "--element", "q", "--depth", "2"]), 2);
    assert_eq!(code(&["boundary-leq", "-p", &data("f2.txt"), "--left", "x", "--right", "y^inf"]), 2);
    assert_eq!(code(&["defects", "-p", &data("f3.txt"), "--depth", "12", "--max-sphere", "1000"]), 3);
    let out = mfrac(&["presentation", "-p", &data("f2.txt"), "--depth", "30", "--max-sphere", "5000"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}
