use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_paving-ideals"))
}

fn run(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut sin = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            sin.write_all(s.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn example_piped_into_degree() {
    let (code, ideal, _) = run(&["example", "m-power"], None);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["degree", "--ideal", "-"], Some(&ideal));
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "3");
}

#[test]
fn membership_in_2z() {
    assert_eq!(run(&["member", "--ideal", "lattice2:2Z", "--support", "0 2"], None).1.trim(), "true");
    assert_eq!(run(&["member", "--ideal", "lattice2:2Z", "--support", "0 1"], None).1.trim(), "false");
}

#[test]
fn json_output_parses() {
    let (code, out, _) = run(&["--json", "member", "--ideal", "lattice2:2Z", "--support", "0 1"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["member"], serde_json::Value::Bool(false));
}

#[test]
fn expectation_mismatch_exits_three() {
    let (code, _, err) = run(&["realize-search", "--target", "4Z", "--field", "3", "--expect", "zero"], None);
    assert_eq!(code, 3);
    assert!(err.contains("witnesses"));
}

#[test]
fn unknown_flag_exits_one() {
    assert_eq!(run(&["member", "--points", "0"], None).0, 1);
}

#[test]
fn window_resource_limit_exits_four() {
    let (code, _, _) = run(&["--max-window-points", "5", "circuits", "--ideal", "lattice2:2Z", "--box", "0", "20"], None);
    assert_eq!(code, 4);
}
