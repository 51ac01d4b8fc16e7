use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rpd_core::format::{parse_complex, write_complex};
use tempfile::TempDir;

fn rpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpd"))
        .args(args)
        .env_remove("RPD_ZMAX")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build_into(dir: &TempDir, dim: usize) -> std::path::PathBuf {
    let out = dir.path().join(format!("rp{dim}.scx"));
    let o = rpd(&["build", "--dim", &dim.to_string(), "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn build_writes_the_projective_plane() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("rp2.scx");
    let o = rpd(&["build", "--dim", "2", "--out", path_str(&out)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("f=(6,15,10)"), "{text}");
    assert!(text.contains("f0_formula=6 match"));
    let file = parse_complex(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file.complex.facets().len(), 10);
    assert_eq!(file.complex, rpd_core::build_rpd(2).unwrap());
}

#[test]
fn builds_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = build_into(&dir, 3);
    let b = dir.path().join("again.scx");
    assert!(rpd(&["build", "--dim", "3", "--out", path_str(&b)])
        .status
        .success());
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn build_respects_max_dim() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.scx");
    let o = rpd(&[
        "build",
        "--dim",
        "5",
        "--max-dim",
        "4",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn verify_accepts_built_complexes() {
    let dir = TempDir::new().unwrap();
    let out = build_into(&dir, 2);
    let o = rpd(&["verify", path_str(&out)]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    for line in [
        "kind=complex",
        "check.pm=pass",
        "check.links=pass",
        "betti_gf2=(1,1,1)",
        "homology_z=(Z,Z/2,0)",
        "result=pass",
    ] {
        assert!(text.contains(line), "missing {line} in {text}");
    }
}

#[test]
fn verify_runs_only_requested_checks() {
    let dir = TempDir::new().unwrap();
    let out = build_into(&dir, 3);
    let text = stdout(&rpd(&["verify", path_str(&out), "--checks", "hgf2"]));
    assert!(text.contains("check.hgf2=pass"));
    assert!(!text.contains("check.pm"));
    assert!(!text.contains("homology_z"));
}

#[test]
fn verify_rejects_a_complex_with_a_missing_facet() {
    let dir = TempDir::new().unwrap();
    let rp = rpd_core::build_rpd(2).unwrap();
    let broken = rpd_core::SimplicialComplex::from_facets(rp.facets()[1..].iter().cloned());
    let path = dir.path().join("broken.scx");
    fs::write(&path, write_complex(&broken, false)).unwrap();
    let o = rpd(&["verify", path_str(&path)]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("check.pm=fail"), "{text}");
    assert!(text.contains("result=fail"));
}

#[test]
fn verify_reports_malformed_input_with_exit_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("junk.scx");
    fs::write(&path, "scx 1\ndim 1\nvertices 2\nfacets 1\n2 1\n").unwrap();
    let o = rpd(&["verify", path_str(&path)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn verify_checks_sphere_files() {
    let dir = TempDir::new().unwrap();
    let sphere = rpd_core::build(2).unwrap().top().complex().clone();
    let path = dir.path().join("s2.scx");
    fs::write(&path, write_complex(&sphere, true)).unwrap();
    let text = stdout(&rpd(&["verify", path_str(&path)]));
    assert!(text.contains("check.cs=pass"), "{text}");
    assert!(text.contains("check.4cycle=pass"));
    assert!(text.contains("homology_z=(Z,0,Z)"));
    assert!(text.contains("result=pass"));
}

#[test]
fn integral_homology_cap() {
    let dir = TempDir::new().unwrap();
    let out = build_into(&dir, 3);
    let o = rpd(&["verify", path_str(&out), "--checks", "hz", "--zmax", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));

    let o = Command::new(env!("CARGO_BIN_EXE_rpd"))
        .args(["verify", path_str(&out)])
        .env("RPD_ZMAX", "2")
        .output()
        .unwrap();
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(!text.contains("check.hz"));
    assert!(text.contains("check.hgf2=pass"));
}

#[test]
fn tower_files_verify() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("rp3.scx");
    let tower = dir.path().join("tower.txt");
    let o = rpd(&[
        "build",
        "--dim",
        "3",
        "--out",
        path_str(&out),
        "--tower",
        path_str(&tower),
    ]);
    assert!(o.status.success());
    let o = rpd(&["verify", path_str(&tower)]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("kind=tower"));
    assert!(text.contains("check.cert=pass"));
}

#[test]
fn kuhnel_command() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("k2.scx");
    let o = rpd(&["kuhnel", "--dim", "2", "--out", path_str(&out)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("f=(7,"));
    let text = stdout(&rpd(&["verify", path_str(&out)]));
    assert!(text.contains("result=pass"), "{text}");
}

#[test]
fn compare_command() {
    let text = stdout(&rpd(&["compare", "--dim", "5"]));
    assert!(text.contains("ours=32"), "{text}");
    assert!(text.contains("kuhnel=63"));
    assert!(text.contains("holds"));
    let text = stdout(&rpd(&["compare", "--dim", "2"]));
    assert!(text.contains("ours=6"));
    assert!(text.contains("outside stated range"));
    assert!(!text.contains("holds"));
}
