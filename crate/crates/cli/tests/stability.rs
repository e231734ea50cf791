//! Reports depend only on the input bytes.

use std::fs;

use finitopos_cli::run;

fn report<S: AsRef<str>>(args: &[S]) -> String {
    let out = run(std::iter::once("finitopos").chain(args.iter().map(|a| a.as_ref())));
    out.stdout
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let src = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/squares.fp")).unwrap();
    let a = dir.path().join("a.fp");
    let b = dir.path().join("b.fp");
    fs::write(&a, &src).unwrap();
    fs::write(&b, &src).unwrap();
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    for args in [
        vec!["--json", "check-morphism", "FILE", "pB", "--bound", "1"],
        vec!["--json", "check-category", "FILE"],
        vec!["--json", "bc-square", "FILE", "pB", "--etale", "yB"],
    ] {
        let with =
            |f: &str| args.iter().map(|&x| if x == "FILE" { f.to_string() } else { x.to_string() }).collect::<Vec<_>>();
        let first = report(&with(a));
        assert!(first.ends_with("}\n"));
        assert_eq!(first, report(&with(a)));
        assert_eq!(first, report(&with(b)), "the path must not leak into the report");
    }
}

#[test]
fn sweep_reports_are_stable() {
    let args = ["--json", "sweep", "--max-objects", "1", "--max-arrows", "3", "--seed", "5"];
    assert_eq!(report(&args), report(&args));
}

#[test]
fn keys_are_sorted() {
    let out = report(&["--json", "classify", concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/retract.fp")]);
    let top: Vec<&str> = [
        "\"command\"",
        "\"exit_status\"",
        "\"grammar_version\"",
        "\"input_digest\"",
        "\"result\"",
        "\"tool\"",
        "\"version\"",
    ]
    .into_iter()
    .collect();
    let positions: Vec<usize> = top.iter().map(|k| out.rfind(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{out}");
}
