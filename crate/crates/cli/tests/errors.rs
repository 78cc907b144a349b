mod common;

use common::{prolam, stderr};

fn fails(args: &[&str], code: i32, needle: &str) {
    let out = prolam(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", stderr(&out));
    assert!(out.stdout.is_empty(), "{args:?}");
    let err = stderr(&out);
    assert!(err.contains(needle), "{args:?}: expected {needle:?} in {err:?}");
}

#[test]
fn usage_errors_exit_with_2() {
    fails(&["frobnicate"], 2, "unrecognized subcommand");
    fails(&[], 2, "Usage");
    fails(&["interp", "--q", "0", r"\x:o.x"], 2, "--q");
    fails(&["def", "--budget", "0", "--type", "o"], 2, "--budget");
    fails(&["def"], 2, "--type");
    fails(&["pro", "omega"], 2, "--type");
    fails(&["lang", "op", "union", "proj1.lang.json"], 2, "two languages");
    fails(
        &["lang", "op", "complement", "proj1.lang.json", "proj2.lang.json"],
        2,
        "one language",
    );
    fails(&["dfa", "accepts", "parity.json"], 2, "either a word or --term");
}

#[test]
fn domain_errors_exit_with_1() {
    fails(&["check", r"\x:o. ("], 1, "parse error");
    fails(&["check", r"\x:o. y"], 1, "unbound variable");
    fails(&["check", r"\x:o. x x"], 1, "type error");
    fails(&["interp", "--q", "5", r"\f:(o->o)->o.\x:o.x"], 1, "over the cap");
    fails(&["interp", "--q", "3", "--cap", "8", r"\f:o->o.f"], 1, "over the cap");
    fails(
        &["pro", "check-natural", "swap.approx.json"],
        1,
        "definability evidence",
    );
    fails(&["pro", "compose", r"\x:o.x", r"\f:o->o.f"], 1, "mismatch");
    fails(&["pro", "word-omega", r"\x:o.\y:o.x"], 1, "mismatch");
    fails(&["lang", "member", "proj1.lang.json", r"\x:o.x"], 1, "mismatch");
    fails(
        &["lang", "member", "out_of_range.lang.json", r"\x:o.x"],
        1,
        "out of range",
    );
    fails(
        &["lang", "op", "union", "proj1.lang.json", "full1.lang.json"],
        1,
        "mismatch",
    );
    fails(&["lang", "embed", "proj1.lang.json", "--q", "1"], 1, "");
    fails(&["dfa", "run", "parity.json", "abc"], 1, "unknown letter");
    fails(&["dfa", "run", "unknown_letter.json", "a"], 1, "unknown letter");
    fails(&["dfa", "run", "bad_initial.json", "a"], 1, "initial state");
    fails(&["dfa", "run", "malformed.json", "a"], 1, "malformed JSON");
    fails(&["dfa", "run", "missing.json", "a"], 1, "cannot read");
    fails(&["dfa", "accepts", "parity.json", "--term", r"\x:o.x"], 1, "mismatch");
}
