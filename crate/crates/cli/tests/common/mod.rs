#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs the binary from the fixtures directory.
pub fn prolam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prolam"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 output")
}

/// The golden corpus: every command in JSON mode with a fixed seed.
pub fn corpus() -> Vec<(&'static str, Vec<&'static str>)> {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("check", vec!["check", r"\f:o -> o. \x:o. f (f x)"]),
        (
            "normalize",
            vec!["normalize", r"(\g:(o -> o) -> o -> o. g) (\f:o -> o. f)"],
        ),
        ("interp_proj1", vec!["interp", "--q", "2", r"\x:o.\y:o.x"]),
        ("interp_twice", vec!["interp", "--q", "2", r"\f:o -> o. \x:o. f (f x)"]),
        ("def_first_order", vec!["def", "--type", "o -> o -> o", "--q", "3"]),
        ("def_church", vec!["def", "--type", "(o -> o) -> o -> o", "--q", "2"]),
        (
            "def_saturation",
            vec!["def", "--type", "(o -> o -> o) -> o -> o", "--q", "2"],
        ),
        (
            "def_lower_bound",
            vec!["def", "--type", "((o -> o) -> o) -> o", "--q", "2", "--budget", "10"],
        ),
        ("lang_member", vec!["lang", "member", "proj1.lang.json", r"\x:o.\y:o.x"]),
        (
            "lang_union",
            vec!["lang", "op", "union", "proj1.lang.json", "proj2.lang.json"],
        ),
        (
            "lang_intersection",
            vec!["lang", "op", "intersection", "proj1.lang.json", "proj2.lang.json"],
        ),
        ("lang_complement", vec!["lang", "op", "complement", "proj1.lang.json"]),
        ("lang_embed", vec!["lang", "embed", "proj1.lang.json", "--q", "3"]),
        (
            "lang_intersect",
            vec!["lang", "intersect", "proj1.lang.json", "full1.lang.json"],
        ),
        ("pro_iota", vec!["pro", "iota", r"\f:o -> o. \x:o. f (f x)"]),
        ("pro_natural", vec!["pro", "check-natural", "twice.approx.json"]),
        ("pro_not_natural", vec!["pro", "check-natural", "mixed.approx.json"]),
        (
            "pro_parametric",
            vec!["pro", "check-parametric", r"\x:o.\y:o.y", "--k", "2"],
        ),
        (
            "pro_not_parametric",
            vec!["pro", "check-parametric", "mixed.approx.json"],
        ),
        (
            "pro_parametric_sampled",
            vec![
                "pro",
                "check-parametric",
                "twice.approx.json",
                "--samples",
                "64",
                "--seed",
                "7",
            ],
        ),
        (
            "pro_compose",
            vec![
                "pro",
                "compose",
                r"\f:o -> o. f",
                r"\f:o -> o. \x:o. f (f x)",
                "--k",
                "3",
            ],
        ),
        ("pro_omega_type", vec!["pro", "omega", "--type", "o", "--k", "3"]),
        ("pro_omega_apply", vec!["pro", "omega", "twice.approx.json"]),
        (
            "pro_word_omega",
            vec!["pro", "word-omega", r"\a:o -> o. \b:o -> o. \c:o. b (a c)", "--k", "2"],
        ),
        (
            "pro_separate",
            vec![
                "pro",
                "separate",
                r"\f:o->o.\x:o.f x",
                r"\f:o->o.\x:o.f (f x)",
                "--max-q",
                "4",
            ],
        ),
        (
            "pro_not_separated",
            vec!["pro", "separate", r"\f:o->o.\x:o.f x", r"\f:o->o.f", "--max-q", "3"],
        ),
        ("dfa_run", vec!["dfa", "run", "parity.json", "ab"]),
        ("dfa_accepts", vec!["dfa", "accepts", "parity.json", "aab"]),
        (
            "dfa_accepts_term",
            vec![
                "dfa",
                "accepts",
                "parity.json",
                "--term",
                r"\a:o->o.\b:o->o.\c:o. a (b c)",
            ],
        ),
        ("dfa_to_reg", vec!["dfa", "to-reg", "mod3.json"]),
        ("dfa_monoid", vec!["dfa", "monoid", "klein.json"]),
    ];
    cases
        .into_iter()
        .map(|(name, mut args)| {
            args.push("--json");
            if !args.contains(&"--seed") {
                args.extend(["--seed", "0"]);
            }
            (name, args)
        })
        .collect()
}
