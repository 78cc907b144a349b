mod common;

use common::{prolam, stdout};

fn text(args: &[&str]) -> String {
    let out = prolam(args);
    assert!(out.status.success(), "{args:?}");
    stdout(&out)
}

#[test]
fn interp_prints_the_projection_table() {
    assert_eq!(
        text(&["interp", "--q", "2", r"\x:o.\y:o.x"]),
        "\\a:o. \\b:o. a : o -> o -> o over q=2 is #12\n0 0 | 0\n0 1 | 0\n1 0 | 1\n1 1 | 1\n"
    );
}

#[test]
fn separation_example() {
    assert_eq!(
        text(&[
            "pro",
            "separate",
            r"\f:o->o.\x:o.f x",
            r"\f:o->o.\x:o.f (f x)",
            "--max-q",
            "4"
        ]),
        "separated at q=2\n"
    );
}

#[test]
fn parity_automaton() {
    assert_eq!(text(&["dfa", "run", "parity.json", "ab"]), "state 1, accepted\n");
    assert_eq!(text(&["dfa", "run", "parity.json", "aab"]), "state 0, rejected\n");
    assert_eq!(text(&["dfa", "run", "parity.json", ""]), "state 0, rejected\n");
    assert_eq!(text(&["dfa", "accepts", "parity.json", "ab"]), "accepted\n");
    assert_eq!(text(&["dfa", "accepts", "@parity.json", "b"]), "rejected\n");
}

#[test]
fn terms_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("twice.lam");
    std::fs::write(&path, "\\f:o -> o. \\x:o. f (f x)\n").unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(
        text(&["check", &arg]),
        "\\a:o -> o. \\b:o. a (a b) : (o -> o) -> o -> o\n"
    );
    assert_eq!(
        text(&["pro", "check-natural", &arg, "--k", "2"]),
        "natural (6 partial surjections checked)\n"
    );
}

#[test]
fn definability_report() {
    assert_eq!(
        text(&["def", "--type", "o -> o -> o"]),
        "Def(o -> o -> o) over [2]: 2 elements, exact (FirstOrder)\n  #12  \\a:o. \\b:o. a\n  #10  \\a:o. \\b:o. b\n"
    );
}
