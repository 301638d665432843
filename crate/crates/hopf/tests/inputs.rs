use dynquant_hopf::spec::HopfCheckSpec;
use std::path::Path;

fn run(text: &str) -> dynquant_hopf::Report {
    HopfCheckSpec::parse(text).unwrap().run().unwrap()
}

fn group_algebra_z2(antipode_g: &str) -> String {
    format!(
        r#"{{"hopf": {{"kind": "explicit", "name": "Z/2",
            "mult": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
            "unit": [1, 0],
            "comult": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
            "counit": [1, 1],
            "antipode": [[1, 0], {antipode_g}]}}}}"#
    )
}

#[test]
fn shipped_inputs_pass() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let r = run(&std::fs::read_to_string(&path).unwrap());
            assert!(r.passed(), "{}: {:?}", path.display(), r.lines());
            seen += 1;
        }
    }
    assert!(seen >= 2);
}

#[test]
fn explicit_group_algebra_matches_the_builtin() {
    let r = run(&group_algebra_z2("[0, 1]"));
    assert!(r.passed(), "{:?}", r.lines());
    assert_eq!(r.lines(), run(r#"{"hopf": {"kind": "cyclic", "n": 2}}"#).lines());
}

#[test]
fn wrong_antipode_is_reported() {
    let r = run(&group_algebra_z2(r#"["-1", 0]"#));
    assert!(r.failure("Hopf axioms: antipode").is_some(), "{:?}", r.lines());
}

#[test]
fn klein_example_needs_the_twisted_flip() {
    let good = run(r#"{"hopf": {"kind": "cyclic", "n": 2}, "dynamical": {"kind": "klein"}}"#);
    assert!(good.passed(), "{:?}", good.lines());
    let bad = run(r#"{"hopf": {"kind": "cyclic", "n": 2}, "dynamical": {"kind": "klein", "plain_flip": true}}"#);
    assert!(bad.failure("dynamical: shifted associativity").is_some(), "{:?}", bad.lines());
}

#[test]
fn factor_bases_of_a_tensor_product() {
    for index in 0..2 {
        let r = run(&format!(
            r#"{{"hopf": {{"kind": "tensor", "left": {{"kind": "sweedler"}}, "right": {{"kind": "cyclic", "n": 3}}}},
                "base": {{"kind": "factor", "index": {index}}}}}"#
        ));
        assert!(r.passed(), "{:?}", r.lines());
    }
}

#[test]
fn malformed_inputs_are_errors() {
    assert!(HopfCheckSpec::parse(r#"{"hopf": {"kind": "cyclic", "n": 2}, "extra": 1}"#).is_err());
    let factor = HopfCheckSpec::parse(r#"{"hopf": {"kind": "sweedler"}, "base": {"kind": "factor", "index": 0}}"#).unwrap();
    assert!(factor.run().is_err());
    let ragged = group_algebra_z2("[0]");
    assert!(HopfCheckSpec::parse(&ragged).unwrap().run().is_err());
}
