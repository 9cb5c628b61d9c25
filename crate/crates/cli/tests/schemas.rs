use std::collections::BTreeSet;
use std::path::PathBuf;

use adic_cli::{dispatch, Outcome, EXIT_OK, EXIT_USAGE};
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

fn schema(name: &str) -> JSONSchema {
    let path = schema_dir().join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&value).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn run(args: &[&str]) -> Outcome {
    dispatch(std::iter::once("tower").chain(args.iter().copied()))
}

fn assert_valid(name: &str, text: &str) {
    let instance: Value =
        serde_json::from_str(text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
    let compiled = schema(name);
    let messages: Vec<String> = match compiled.validate(&instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    assert!(
        messages.is_empty(),
        "{name} output violates its schema: {messages:?}\n{text}"
    );
}

const CASES: &[(&str, &[&str])] = &[
    (
        "padic-eval",
        &[
            "padic", "eval", "--p", "3", "--expr", "1/(1-3)", "--prec", "4",
        ],
    ),
    (
        "padic-eval",
        &["padic", "eval", "--p", "5", "--expr", "7/25"],
    ),
    (
        "filter-verify",
        &["filter", "verify", "--identity", "galois", "--size", "2"],
    ),
    (
        "filter-verify",
        &["filter", "verify", "--identity", "prod-mk", "--size", "2"],
    ),
    (
        "filter-verify",
        &["filter", "verify", "--identity", "cauchy", "--size", "2"],
    ),
    (
        "valuation-eval",
        &["valuation", "eval", "--val", "padic:3", "--expr", "18"],
    ),
    (
        "valuation-eval",
        &[
            "valuation",
            "eval",
            "--val",
            "disc:3:gauss:0:1",
            "--expr",
            "X + 3",
        ],
    ),
    (
        "valuation-axioms",
        &["valuation", "axioms", "--val", "padic:5", "--samples", "20"],
    ),
    (
        "valuation-axioms",
        &[
            "valuation",
            "axioms",
            "--val",
            "disc:2:rk2:1:1:-",
            "--samples",
            "20",
        ],
    ),
    (
        "adic-nilpotent",
        &[
            "adic",
            "nilpotent",
            "--ring",
            "int:3",
            "--expr",
            "6",
            "--budget",
            "4",
        ],
    ),
    (
        "adic-nilpotent",
        &[
            "adic",
            "nilpotent",
            "--ring",
            "int:3",
            "--expr",
            "2",
            "--budget",
            "4",
        ],
    ),
    (
        "adic-in-ideal",
        &[
            "adic", "in-ideal", "--ring", "poly:2", "--expr", "X^3", "--power", "2",
        ],
    ),
    (
        "adic-power-bounded",
        &["adic", "power-bounded", "--ring", "rat:3", "--expr", "3"],
    ),
    (
        "adic-power-bounded",
        &["adic", "power-bounded", "--ring", "rat:3", "--expr", "1/3"],
    ),
    (
        "adic-mul-t-open",
        &[
            "adic",
            "mul-t-open",
            "--ring",
            "int:2",
            "--t",
            "2",
            "--u",
            "9",
        ],
    ),
    (
        "adic-mul-t-open",
        &[
            "adic",
            "mul-t-open",
            "--ring",
            "rat:3",
            "--t",
            "2",
            "--u",
            "9",
        ],
    ),
    (
        "spa-member",
        &[
            "spa", "member", "--p", "3", "--point", "cl:0", "--subset", "R(p,X/X)",
        ],
    ),
    (
        "spa-member",
        &[
            "spa",
            "member",
            "--p",
            "3",
            "--point",
            "gauss:0:1/2",
            "--subset",
            "R(p,X/X)",
        ],
    ),
    (
        "perfectoid-check",
        &["perfectoid", "check", "--model", "qp:3", "--samples", "20"],
    ),
    (
        "perfectoid-check",
        &[
            "perfectoid",
            "check",
            "--model",
            "tower:3:1",
            "--samples",
            "20",
        ],
    ),
    ("suite", &["suite", "--seed", "3"]),
];

#[test]
fn every_subcommand_output_matches_its_schema() {
    for (name, args) in CASES {
        let out = run(args);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
        assert_valid(name, &out.stdout);
    }
}

#[test]
fn every_schema_file_is_exercised() {
    let mut covered: BTreeSet<String> = CASES.iter().map(|(n, _)| n.to_string()).collect();
    covered.insert("error".into());
    let on_disk: BTreeSet<String> = std::fs::read_dir(schema_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter_map(|f| f.strip_suffix(".schema.json").map(str::to_string))
        .collect();
    assert_eq!(covered, on_disk);
}

#[test]
fn usage_errors_match_error_schema() {
    let bad: &[&[&str]] = &[
        &["padic", "eval", "--expr", "1"],
        &["padic", "eval", "--p", "3", "--expr", "1/0"],
        &[
            "spa", "member", "--p", "3", "--point", "nowhere", "--subset", "R(p,X/X)",
        ],
        &["adic", "nilpotent", "--ring", "int:4", "--expr", "2"],
        &["perfectoid", "check", "--model", "tower:6:1"],
    ];
    for args in bad {
        let out = run(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(out.stdout.is_empty());
        assert_valid("error", &out.stderr);
    }
}

#[test]
fn schemas_reject_malformed_output() {
    let out = run(&[
        "spa", "member", "--p", "3", "--point", "cl:0", "--subset", "R(p,X/X)",
    ]);
    let mut value: Value = serde_json::from_str(&out.stdout).unwrap();
    value.as_object_mut().unwrap().remove("member");
    assert!(!schema("spa-member").is_valid(&value));
    value["member"] = Value::String("no".into());
    assert!(!schema("spa-member").is_valid(&value));
}
