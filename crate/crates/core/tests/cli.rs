use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn crclass(args: &[&str], input: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crclass")).args(args).arg("--input").arg(input).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HEISENBERG: &str = r#"{"n": 1, "c": 1, "phi": ["z*zb"]}"#;
const SPHERE: &str = r#"{"n": 2, "c": 1, "phi": ["z1*zb1 + z2*zb2"]}"#;
const III2: &str = r#"{"n": 1, "c": 3, "phi": ["z*zb", "z*zb*(z + zb)", "z*zb*(z^2 + 3/2*z*zb + zb^2)"]}"#;

#[test]
fn frame_of_heisenberg() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&crclass(&["frame"], &write(&dir, "h.json", HEISENBERG)));
    assert!(out.contains("L1 = d/dz1 + (I*zb1) d/du1"), "{out}");
    assert!(out.contains("Lb1 = d/dzb1 + (-I*z1) d/du1"), "{out}");
    assert!(out.contains("rho0_1 = "), "{out}");
}

#[test]
fn classify_iii2_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "m.json", III2);
    let text = stdout(&crclass(&["classify"], &input));
    assert!(text.contains("verdict: Class III_2"), "{text}");
    assert!(text.contains("rank {L, Lb, T, [L,T], [Lb,T]} = 4 / 4"), "{text}");
    assert!(text.contains("rank {L, Lb, T, [L,T], [Lb,T], [L,[L,T]]} = 5 / 5"), "{text}");

    let json: serde_json::Value = serde_json::from_str(&stdout(&crclass(&["classify", "--json"], &input))).unwrap();
    assert_eq!(json["verdict"], "ClassIII2");
    assert_eq!(json["ranks"]["{L, Lb, T}"]["generic"], 3);
    assert_eq!(json["sigma_flag"], false);
    let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(&keys[..3], ["input", "verdict", "ranks"]);
}

#[test]
fn json_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "m.json", III2);
    let a = crclass(&["classify", "--json"], &input);
    let b = crclass(&["classify", "--json"], &input);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn levi_of_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&crclass(&["levi"], &write(&dir, "s.json", SPHERE)));
    assert!(out.contains("[2, 0]") && out.contains("[0, 2]"), "{out}");
    assert!(out.contains("det = 4"), "{out}");
    assert!(out.contains("generic rank = 2"), "{out}");
}

#[test]
fn hull_and_brackets() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "h.json", HEISENBERG);
    let out = stdout(&crclass(&["hull", "--depth", "3"], &input));
    assert!(out.contains("hull rank = 3"), "{out}");
    assert!(out.contains("stabilized at depth 2"), "{out}");
    let br = stdout(&crclass(&["brackets", "--json"], &input));
    let v: serde_json::Value = serde_json::from_str(&br).unwrap();
    assert!(v.is_object());
}

#[test]
fn point_override_clears_sigma_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "a.json", r#"{"n": 1, "c": 1, "phi": ["z^2*zb + z*zb^2"]}"#);
    let at_origin = stdout(&crclass(&["classify"], &input));
    assert!(at_origin.contains("rank {L, Lb, T} = 3 / 2"), "{at_origin}");
    assert!(at_origin.contains("sigma_flag: true"), "{at_origin}");
    let point = write(&dir, "p.json", r#"{"z": ["1"], "u": ["0"]}"#);
    let o = Command::new(env!("CARGO_BIN_EXE_crclass"))
        .args(["classify", "--input"])
        .arg(&input)
        .arg("--point")
        .arg(&point)
        .output()
        .unwrap();
    assert!(stdout(&o).contains("sigma_flag: false"));
}

#[test]
fn validation_failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(crclass(&["classify"], &missing).status.code(), Some(1));

    let bad = write(&dir, "bad.json", r#"{"n": 1, "c": 1, "phi": ["z*zb +"]}"#);
    let o = crclass(&["classify"], &bad);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("phi[0]"));

    let unknown = write(&dir, "u.json", r#"{"n": 1, "c": 1, "phi": ["w*zb"]}"#);
    assert_eq!(crclass(&["frame"], &unknown).status.code(), Some(1));

    let h = write(&dir, "h.json", HEISENBERG);
    assert_eq!(crclass(&["hull", "--depth", "0"], &h).status.code(), Some(1));
    assert_eq!(crclass(&["levi"], &write(&dir, "c3.json", III2)).status.code(), Some(1));
}
