use std::process::Command;

fn bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bfredholm")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["index", "T(z^3)"]), (0, "-3\n".into()));
    let (code, out) = bin(&["analyze", "T(z-1)"]);
    assert_eq!(code, 2);
    assert!(out.contains("NotInClass"));
    assert_eq!(bin(&["analyze", "T(z"]).0, 1);
    assert_eq!(bin(&["verify", "--suite", "loglaw"]).0, 0);
}

#[test]
fn seeded_output_is_reproducible() {
    let a = bin(&["--format", "json", "verify", "--suite", "traceaxioms", "--seed", "11"]);
    let b = bin(&["--format", "json", "verify", "--suite", "traceaxioms", "--seed", "11"]);
    assert_eq!(a, b);
    let scan = ["--format", "csv", "scan", "T((z - 1/2)^2/(z - 3))", "--directions", "8"];
    assert_eq!(bin(&scan), bin(&scan));
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("bfredholm-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, stdout) = bin(&["--format", "json", "--out", p, "analyze", "T(z^-2)"]);
    assert_eq!((code, stdout.as_str()), (0, ""));
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(written.contains("\"index_winding\": 2"));
}
