//! End-to-end checks of the binary: artifact layout, determinism, exit
//! codes, and format switches.

use std::path::Path;
use std::process::Command;

fn msp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_msp"))
}

fn write_well(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("well.json");
    std::fs::write(
        &path,
        r#"{
  "well_nm": 15.0,
  "barrier_meV": 520.0,
  "eff_mass": 0.043,
  "eps_s": 12.9,
  "Ns_cm2": 1.5e13
}"#,
    )
    .unwrap();
    path
}

#[test]
fn subbands_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let well = write_well(dir.path());
    let status = msp()
        .args(["subbands", "--config"])
        .arg(&well)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let wf = std::fs::read_to_string(dir.path().join("wavefunctions.csv")).unwrap();
    assert!(wf.starts_with("# msp "));
    assert!(wf.contains("# command = subbands"));
    let header = wf
        .lines()
        .find(|l| !l.starts_with('#'))
        .unwrap();
    assert!(header.starts_with("z_nm,psi_1,psi_2"));
    let tr = std::fs::read_to_string(dir.path().join("transitions.csv")).unwrap();
    assert!(tr.lines().any(|l| l == "i,f,w_meV,dN_cm2,intJ"));
}

#[test]
fn spectrum_deterministic_and_correct_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    for out in [&out1, &out2] {
        let status = msp()
            .args([
                "spectrum", "--g", "15", "-Q", "15", "--variant", "full", "--points", "801",
            ])
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(out1.join("spectrum.csv")).unwrap();
    let b = std::fs::read(out2.join("spectrum.csv")).unwrap();
    assert_eq!(a, b, "repeated runs must be byte-identical");
    let text = String::from_utf8(a).unwrap();
    assert!(text.lines().any(|l| l == "omega_norm,re_t,im_t,re_r,im_r,alpha"));
}

#[test]
fn json_format_is_valid_json() {
    let dir = tempfile::tempdir().unwrap();
    let status = msp()
        .args([
            "spectrum", "--g", "1", "-Q", "15", "--points", "51", "--format", "json",
        ])
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(dir.path().join("spectrum.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["command"], "spectrum");
    assert_eq!(doc["columns"].as_array().unwrap().len(), 6);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 51);
}

#[test]
fn invalid_variant_exits_2_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let output = msp()
        .args(["spectrum", "--g", "1", "-Q", "15", "--variant", "nope"])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn schema_violation_exits_2_with_field_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"well_nm": 15.0, "barrier_meV": 520.0, "eff_mass": -1.0, "eps_s": 12.9, "Ns_cm2": 1e12}"#,
    )
    .unwrap();
    let output = msp()
        .args(["subbands", "--config"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("eff_mass"), "stderr: {err}");
}

#[test]
fn unknown_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("extra.json");
    std::fs::write(
        &bad,
        r#"{"well_nm": 15.0, "barrier_meV": 520.0, "eff_mass": 0.043, "eps_s": 12.9, "Ns_cm2": 1e12, "wat": 1}"#,
    )
    .unwrap();
    let output = msp()
        .args(["subbands", "--config"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("line"), "stderr: {err}");
}

#[test]
fn physics_error_exits_3_with_error_name() {
    let dir = tempfile::tempdir().unwrap();
    let flat = dir.path().join("flat.json");
    std::fs::write(
        &flat,
        r#"{"well_nm": 15.0, "barrier_meV": 0.0, "eff_mass": 0.043, "eps_s": 12.9, "Ns_cm2": 1e12}"#,
    )
    .unwrap();
    let output = msp()
        .args(["subbands", "--config"])
        .arg(&flat)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("NoBoundState"), "stderr: {err}");
}

#[test]
fn dispersion_svg_has_light_cone_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let status = msp()
        .args(["dispersion", "--size", "64", "--svg"])
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let svg = std::fs::read_to_string(dir.path().join("dispersion.svg")).unwrap();
    assert!(svg.contains("stroke-dasharray"), "light cone should be dashed");
    let csv = std::fs::read_to_string(dir.path().join("dispersion.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "k_norm,omega_norm,weight"));
}

#[test]
fn thermal_columns_match_contract() {
    let dir = tempfile::tempdir().unwrap();
    let status = msp()
        .args([
            "thermal", "--Tel", "300", "--Tph", "100", "--g", "1", "--omega-points", "101",
        ])
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(dir.path().join("emission.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "omega_meV,n_out,planck_Tel,planck_Tph,alpha"));
}
