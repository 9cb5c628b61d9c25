use std::process::Command;

fn tower(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tower"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn geometric_series_residue() {
    let out = tower(&[
        "padic", "eval", "--p", "3", "--expr", "1/(1-3)", "--prec", "4", "--format", "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "residue: 40"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(
        tower(&[
            "filter",
            "verify",
            "--identity",
            "nhds-product",
            "--size",
            "2"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        tower(&["spa", "member", "--point", "cl:0", "--subset", "R(p,X/X)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tower(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn origin_is_outside_the_annulus() {
    let out = tower(&[
        "spa", "member", "--p", "3", "--point", "cl:0", "--subset", "R(p,X/X)",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["member"], false);
}
