use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn ratknot(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ratknot"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 3] = [
        (&["lens", "info", "5", "2"], "lens_info_5_2.json"),
        (&["unknot", "mountain", "5", "3", "--orient", "K1", "--depth", "0"], "unknot_mountain_5_3_K1_depth0.tsv"),
        (&["bennequin", "--sl", "-7/5", "--chi", "1", "-r", "5"], "bennequin_sl_neg7_5_chi1_r5.json"),
    ];
    for (args, file) in cases {
        let out = ratknot(args, None);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&out), golden(file), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(ratknot(&["bennequin", "--sl", "1/5", "--chi", "1", "-r", "5"], None).status.code(), Some(2));
    let bad = ratknot(&["lens", "info", "6", "4"], None);
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    let err = String::from_utf8(bad.stderr).unwrap();
    assert!(err.starts_with("error: ") && err.lines().count() == 1, "{err}");
    assert_eq!(ratknot(&["--version"], None).status.code(), Some(0));
}

const CHAIN: &str = "N a e +\nN b e +\nN x h +\nE a x\nE b x\nE x ∂\nE x ∂\n";

const OVERTWISTED: &str = "N a e +\nN b e +\nN x h +\nN y h +\nN p e -\n\
E a x\nE b x\nE x p\nE x y\nE b y\nE y p\nE y ∂\n";

#[test]
fn foliation_from_stdin() {
    let out = ratknot(&["foliation", "check", "-r", "3", "--chi", "1"], Some(CHAIN));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"sl\":\"-1/3\""), "{text}");
    assert!(text.contains("\"poincare_hopf\":true"), "{text}");

    let out = ratknot(&["foliation", "simplify", "-"], Some(CHAIN));
    assert!(stdout(&out).starts_with("{\"result\":\"normalized\""), "{}", stdout(&out));
    assert!(stdout(&out).ends_with(CHAIN));
}

#[test]
fn foliation_from_file() {
    let path = std::env::temp_dir().join(format!("ratknot-cli-{}.fol", std::process::id()));
    std::fs::write(&path, OVERTWISTED).unwrap();
    let out = ratknot(&["foliation", "simplify", path.to_str().unwrap()], None);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("{\"result\":\"overtwisted\",\"sink\":\"p\",\"frontier\":[\"x\",\"y\"]"), "{text}");

    let missing = ratknot(&["foliation", "check", "/nonexistent/graph.fol"], None);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn malformed_graph_is_an_error() {
    let out = ratknot(&["foliation", "check"], Some("N x h +\nE x ∂\n"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stderr).unwrap().lines().count(), 1);
}
