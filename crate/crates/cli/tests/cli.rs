mod common;

use common::{corpus, data_arg, round_trip, seeded_commands};
use hamiltonian_cli::commands::{run_command, Outcome};
use proptest::prelude::*;

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("hamlie").chain(args.iter().copied()))
}

#[test]
fn corpus_round_trips() {
    let cases = corpus();
    assert_eq!(cases.len(), 50);
    for c in &cases {
        if let Err(e) = round_trip(c) {
            panic!("{} | {} | {}: {e}", c.kind, c.algebra, c.text);
        }
    }
}

#[test]
fn documented_examples() {
    let f1 = data_arg("f1.alg");
    let r = run(&["check", "jacobi", "--spec", &f1, "--samples", "500", "--seed", "7"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run(&["eval", "bracket", "x[(1,0)]", "x[(0,1)]", "--spec", &f1]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "x[(2,2)]\n"));
    let r = run(&["h2", "--spec", &data_arg("f3.alg")]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "dim 0\n"));
    let r = run(&["eval", "product", "t1^2*t2", "1", "--fixture", "F2"]);
    assert_eq!(r.stdout, "t1^2*t2\n");
}

#[test]
fn exit_codes() {
    // parse and usage errors
    assert_eq!(run(&["eval", "product", "t1", "1", "--fixture", "F1"]).code, 2);
    assert_eq!(run(&["eval", "product", "x[(1,0)", "1", "--fixture", "F1"]).code, 2);
    assert_eq!(run(&["h2"]).code, 2);
    assert_eq!(run(&["frobnicate", "--fixture", "F1"]).code, 2);
    assert_eq!(run(&["h2", "--spec", "/nonexistent.alg"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    // mathematical failures
    let mixed = data_arg("mixed.alg");
    let r = run(&["iso", "validate", &data_arg("bad_target.iso"), "--spec", &mixed]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.ends_with("invalid\n"));
    assert_eq!(run(&["iso", "verify", &data_arg("bad_target.iso"), "--spec", &mixed]).code, 1);
    assert_eq!(run(&["iso", "verify", &data_arg("shear.iso"), "--spec", &mixed]).code, 0);
    // phi cocycles need a pure first-block shape
    assert_eq!(run(&["eval", "cocycle", "phi[1]", "1", "1", "--fixture", "F3"]).code, 2);
}

#[test]
fn invalid_structure_exits_one() {
    let dir = std::env::temp_dir().join(format!("hamlie-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("dependent.alg");
    std::fs::write(&p, "shape.l = [1,0,0,0,0,0,0]\ngamma.basis = [[1,0],[0,1],[1,1]]\n").unwrap();
    let r = run(&["validate", "--spec", p.to_str().unwrap()]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    std::fs::write(&p, "shape.l = [1,0,0,0,0,0,0]\ngamma.basis = [[1,0],\n [0]]\n").unwrap();
    let r = run(&["validate", "--spec", p.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3, column 2 (gamma.basis)"), "{}", r.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seeded_reports_are_reproducible() {
    for argv in seeded_commands() {
        let a = run_command(argv.clone());
        let b = run_command(argv.clone());
        assert_eq!(a.code, 0, "{argv:?}: {}", a.stderr);
        assert_eq!(a, b, "{argv:?}");
    }
    let f1 = data_arg("f1.alg");
    let a = run(&["classify", "x[(1,0)]", "--spec", &f1, "--samples", "6", "--seed", "1"]);
    let b = run(&["classify", "x[(1,0)]", "--spec", &f1, "--samples", "6", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn json_element_output_is_ordered() {
    let r = run(&["eval", "product", "x[(1,0)] + x[(0,1)]", "x[(-1,0)] - 7", "--fixture", "F1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let alphas: Vec<Vec<String>> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["alpha"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect())
        .collect();
    assert_eq!(alphas.len(), 4);
    assert!(alphas.iter().flatten().all(|a| a.contains('/')));
    let f1 = hamiltonian_core::fixtures::f1();
    let u = hamiltonian_cli::element::element_from_json(&v, &f1).unwrap();
    assert_eq!(hamiltonian_cli::element::element_to_json(&u), v);
}

proptest! {
    #[test]
    fn random_elements_round_trip(seed in 0u64..5000, terms in 1usize..5) {
        for (_, alg) in hamiltonian_core::fixtures::all() {
            let s = hamiltonian_core::sampling::Sampler::new(&alg);
            let u = s.element(&mut hamiltonian_core::sampling::sample_rng(seed, 0), terms);
            let text = hamiltonian_cli::element::format_element(&u);
            prop_assert_eq!(hamiltonian_cli::element::parse_element(&text, &alg).unwrap(), u);
        }
    }
}
