//! One PASS/FAIL line per acceptance criterion. Every comparison is exact.
//! Run with `--nocapture` to see the report.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use hamiltonian_cli::commands::run_command;
use hamiltonian_core::cohomology::{
    check_cocycle_laws, h2_independence, h2_report, random_functional, reduce_cocycle, Cocycle, KeyBox,
};
use hamiltonian_core::derivations::{
    check_derivation_law, derivation_probe, eval_derivation, mu_component, outer_family, DerivationSpec,
};
use hamiltonian_core::fixtures;
use hamiltonian_core::isomorphisms::{
    active_slots, apply_tau, build_theta, extend_character, sigma_mismatch, validate_preserving, verify_morphism, Block,
};
use hamiltonian_core::kernel::{bracket_structural, Algebra, Element, Field, GroupVector, Key, Lattice, MultiIndex, Scalar, Shape};
use hamiltonian_core::linalg;
use hamiltonian_core::locality::{cyclic_probe, nilpotency_bound_check, sample_cyclic_pair, sample_h2};
use hamiltonian_core::properties;
use hamiltonian_core::sampling::{preserving_iso, sample_rng, Sampler};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn standard(l: [usize; 7]) -> Arc<Algebra> {
    let s = Shape::new(l).unwrap();
    let basis = active_slots(&s)
        .into_iter()
        .map(|i| {
            let mut v = GroupVector::zeros(s.dim());
            v[i] = Scalar::one();
            v
        })
        .collect();
    Algebra::new(Lattice::new(s, Field::Rational, basis).unwrap())
}

fn c1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    for (name, alg) in fixtures::all() {
        let r = properties::oracle_equivalence(&alg, 1000, 101, 4).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {} mismatches, first {:?}", r.failures, r.witness))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.2}s"))?;
    Ok(format!("6 fixtures x 1000 pairs in {secs:.2}s"))
}

fn c2_jacobi() -> Outcome {
    for (name, alg) in fixtures::all() {
        let r = properties::jacobi(&alg, 500, 102, 4).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {:?}", r.witness))?;
    }
    Ok("skew symmetry and Jacobi on 6 x 500 triples".into())
}

fn c3_leibniz() -> Outcome {
    for (name, alg) in fixtures::all() {
        let r = properties::leibniz(&alg, 500, 103, 4).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {:?}", r.witness))?;
    }
    Ok("6 x 500 triples".into())
}

type Poly = BTreeMap<(i64, i64), Scalar>;

fn add_term(p: &mut Poly, k: (i64, i64), c: Scalar) {
    let e = p.entry(k).or_insert_with(Scalar::zero);
    *e += &c;
    if e.is_zero() {
        p.remove(&k);
    }
}

fn to_poly(e: &Element, map: impl Fn(&Key) -> (i64, i64)) -> Poly {
    let mut p = Poly::new();
    for (k, c) in e.terms() {
        add_term(&mut p, map(k), c.clone());
    }
    p
}

fn c4_classical_regression() -> Outcome {
    // F2: [f, g] = f_1 g_2 - f_2 g_1 on polynomials in t_1, t_2
    let alg = fixtures::f2();
    let t = |a: i64, b: i64| {
        Element::monomial(&alg, Key::new(GroupVector::zeros(2), MultiIndex::new(vec![a as u32, b as u32])), Scalar::one())
            .unwrap()
    };
    let mut pairs = 0;
    for d in 0..=6 {
        for a0 in 0..=d {
            for a1 in 0..=d - a0 {
                for b0 in 0..=d - a0 - a1 {
                    let b1 = d - a0 - a1 - b0;
                    let mut want = Poly::new();
                    if a0 > 0 && b1 > 0 {
                        add_term(&mut want, (a0 + b0 - 1, a1 + b1 - 1), Scalar::from_int(a0 * b1));
                    }
                    if a1 > 0 && b0 > 0 {
                        add_term(&mut want, (a0 + b0 - 1, a1 + b1 - 1), Scalar::from_int(-a1 * b0));
                    }
                    let got = bracket_structural(&t(a0, a1), &t(b0, b1)).map_err(|e| e.to_string())?;
                    let got = to_poly(&got, |k| (k.index[0] as i64, k.index[1] as i64));
                    ensure(got == want, || format!("F2 t^({a0},{a1}), t^({b0},{b1})"))?;
                    pairs += 1;
                }
            }
        }
    }
    // F1: Laurent bracket (X1 X2)^{-1} (D1 f D2 g - D2 f D1 g), D = X d/dX,
    // read through x^alpha <-> X^{-alpha}
    let alg = fixtures::f1();
    let mut boxed = 0;
    for a0 in -2..=2 {
        for a1 in -2..=2 {
            for b0 in -2..=2 {
                for b1 in -2..=2 {
                    let u = Element::x_ints(&alg, &[a0, a1]).unwrap();
                    let v = Element::x_ints(&alg, &[b0, b1]).unwrap();
                    let got = to_poly(&bracket_structural(&u, &v).map_err(|e| e.to_string())?, |k| {
                        (-k.alpha[0].to_i64().unwrap(), -k.alpha[1].to_i64().unwrap())
                    });
                    let (p, q) = ((-a0, -a1), (-b0, -b1));
                    let mut want = Poly::new();
                    add_term(&mut want, (p.0 + q.0 - 1, p.1 + q.1 - 1), Scalar::from_int(p.0 * q.1 - p.1 * q.0));
                    ensure(got == want, || format!("F1 x^({a0},{a1}), x^({b0},{b1})"))?;
                    boxed += 1;
                }
            }
        }
    }
    Ok(format!("F2: {pairs} pairs of degree <= 6; F1: {boxed} pairs on [-2,2]^2 x [-2,2]^2"))
}

fn combo(parts: Vec<(i64, DerivationSpec)>) -> DerivationSpec {
    DerivationSpec::Combo(parts.into_iter().map(|(c, d)| (Scalar::from_int(c), d)).collect())
}

fn derivation_algebras() -> Vec<(&'static str, Arc<Algebra>)> {
    let mut v = fixtures::all();
    v.push(("full", standard([1, 1, 1, 1, 1, 1, 1])));
    v
}

fn c5_derivation_law() -> Outcome {
    let mut generators = 0;
    let mut identities = 0;
    for (name, alg) in derivation_algebras() {
        let s = alg.shape();
        let sampler = Sampler::new(&alg).with_level(3).with_range(2);
        let mut family: Vec<(String, DerivationSpec)> =
            outer_family(&alg).into_iter().map(|(g, d)| (g.to_string(), d)).collect();
        family.push(("inner".into(), DerivationSpec::Ad(sampler.element(&mut sample_rng(105, 0), 3))));
        for (g, d) in &family {
            let r = check_derivation_law(d, &alg, 200, 105).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{name} {g}: {:?}", r.counterexample))?;
            generators += 1;
        }
        let monos: Vec<Element> = (0..100u64).map(|i| sampler.monomial(&mut sample_rng(205, i))).collect();
        let br = |a: &Element, b: &Element| bracket_structural(a, b).unwrap();
        let ev = |d: &DerivationSpec, u: &Element| eval_derivation(d, u).unwrap();
        // ad_{x^{-sigma_p}} in terms of d_mu and the down-grading operators
        for p in s.blocks(1, 4) {
            let mut parts = vec![(1, DerivationSpec::DMu(mu_component(&alg, p).unwrap()))];
            match s.block_of(p) {
                3 => parts.push((1, DerivationSpec::PartialT(p))),
                4 => {
                    parts.push((1, DerivationSpec::PartialT(p)));
                    parts.push((-1, DerivationSpec::PartialT(s.bar(p))));
                }
                _ => {}
            }
            let d = combo(parts);
            let h = Element::x(&alg, -&s.sigma(p)).unwrap();
            for u in &monos {
                ensure(br(&h, u) == ev(&d, u), || format!("{name}: ad x^-sigma_{p} on {u:?}"))?;
            }
            identities += 1;
        }
        // ad_{t_{bar q}} for q in I_5, I_6
        for q in s.blocks(5, 6) {
            let mut parts = vec![(1, DerivationSpec::DMu(mu_component(&alg, q).unwrap()))];
            if s.block_of(q) == 6 {
                parts.push((-1, DerivationSpec::PartialT(q)));
            }
            let d = combo(parts);
            let h = Element::t(&alg, s.bar(q)).unwrap();
            for u in &monos {
                ensure(br(&h, u) == ev(&d, u), || format!("{name}: ad t_bar{q} on {u:?}"))?;
            }
            identities += 1;
        }
        // down-grading operators as inner derivations
        let mut cases: Vec<usize> = s.barred_blocks(5, 6).collect();
        cases.extend(s.paired_blocks(7, 7));
        cases.extend(s.block(6));
        for p in cases {
            let bp = s.bar(p);
            for u in &monos {
                let dt = ev(&DerivationSpec::PartialT(p), u);
                let expected = match s.block_of(p) {
                    5 => {
                        let t = Element::t_extended(&alg, bp).unwrap();
                        br(&t, &u.to_extended()).to_restricted().unwrap()
                    }
                    6 if !s.is_barred(p) => {
                        let mu = ev(&DerivationSpec::DMu(mu_component(&alg, p).unwrap()), u);
                        &mu - &br(&Element::t(&alg, bp).unwrap(), u)
                    }
                    7 if !s.is_barred(p) => br(&Element::t(&alg, bp).unwrap(), u).neg(),
                    _ => br(&Element::t(&alg, bp).unwrap(), u),
                };
                ensure(dt == expected, || format!("{name}: dt_{p} on {u:?}"))?;
            }
            identities += 1;
        }
    }
    Ok(format!("{generators} generators x 200 pairs; {identities} operator identities x 100 monomials"))
}

fn c6_probe() -> Outcome {
    let mut n_checked = 0;
    for (name, alg) in derivation_algebras() {
        let family = outer_family(&alg);
        for n in 0..50u64 {
            let mut rng = sample_rng(106, n);
            let sampler = Sampler::new(&alg).with_level(2).with_range(2);
            let coeffs: Vec<Scalar> = family.iter().map(|_| sampler.coefficient(&mut rng)).collect();
            let inner = sampler.element(&mut rng, 2);
            let mut parts: Vec<(Scalar, DerivationSpec)> =
                family.iter().zip(&coeffs).map(|((_, d), c)| (c.clone(), d.clone())).collect();
            parts.push((Scalar::one(), DerivationSpec::Ad(inner)));
            let r = derivation_probe(&DerivationSpec::Combo(parts), &alg).map_err(|e| format!("{name}: {e}"))?;
            for ((g, _), c) in family.iter().zip(&coeffs) {
                ensure(&r.coefficient(g) == c, || format!("{name} #{n} {g}: got {} want {c}", r.coefficient(g)))?;
            }
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} planted combinations recovered"))
}

fn c7_cocycles() -> Outcome {
    let mut laws = 0;
    for (name, alg) in [("F1", fixtures::f1()), ("F6", fixtures::f6())] {
        let mut gens = h2_report(&alg).generators;
        let mu_present = gens.iter().any(|c| matches!(c, Cocycle::PhiMu(_)));
        ensure(mu_present == (name == "F6"), || format!("{name}: phi_mu presence"))?;
        let b = KeyBox::degree_box(&alg, 1, 2);
        for k in 0..3 {
            gens.push(Cocycle::Coboundary(random_functional(&alg, &b, &mut sample_rng(107, k))));
        }
        for c in &gens {
            let r = check_cocycle_laws(c, &alg, 500, 107).map_err(|e| e.to_string())?;
            ensure(r.passed() && r.skipped == 0, || format!("{name} {c:?}: {:?} skipped {}", r.witness, r.skipped))?;
            laws += 1;
        }
        let ind = h2_independence(&alg).map_err(|e| e.to_string())?;
        ensure(ind.only_zero, || format!("{name}: nonzero solution of the independence system"))?;
    }
    Ok(format!("{laws} cocycles x 500 triples; independence system has only the zero solution on F1, F6"))
}

fn c8_reduction() -> Outcome {
    let mut pairs = 0;
    for (name, alg, p, r) in [("F3", fixtures::f3(), 1, 1), ("F2", fixtures::f2(), 1, 0)] {
        let b = KeyBox::degree_box(&alg, r, 5);
        for n in 0..20u64 {
            let g = random_functional(&alg, &b, &mut sample_rng(108, n));
            let rep = reduce_cocycle(&Cocycle::Coboundary(g), &alg, &b, p).map_err(|e| e.to_string())?;
            ensure(rep.checked_pairs > 0 && rep.residual_vanishes(), || format!("{name} #{n}: {:?}", rep.witness))?;
            pairs += rep.checked_pairs;
        }
    }
    Ok(format!("40 coboundaries, {pairs} in-box pairs with zero residual"))
}

fn c9_nilpotency() -> Outcome {
    let mut sharp = 0;
    for (name, alg) in fixtures::all() {
        let s = Sampler::new(&alg).with_level(4).with_range(2);
        for n in 0..100u64 {
            let mut rng = sample_rng(109, n);
            let u = sample_h2(&alg, &mut rng);
            let v = s.monomial(&mut rng);
            let r = nilpotency_bound_check(&u, &v).map_err(|e| e.to_string())?;
            ensure(r.verified, || format!("{name}: ad_u^{}(v) != 0 for {u:?}, {v:?}", r.m))?;
            ensure(r.leading_nonzero == r.nonzero_before, || format!("{name}: witness prediction at m-1 for {u:?}, {v:?}"))?;
            sharp += r.nonzero_before as usize;
        }
    }
    Ok(format!("600 samples, {sharp} with a nonzero power at m-1"))
}

fn c10_morphisms() -> Outcome {
    let shapes = [[1, 0, 1, 2, 1, 1, 0], [2, 0, 0, 0, 1, 1, 0], [1, 1, 0, 0, 1, 1, 1], [2, 1, 1, 1, 1, 1, 1]];
    let (mut moved_nu, mut b15, mut b16, mut twisted) = (0, 0, 0, 0);
    let mut checks = 0;
    for k in 0..20u64 {
        let l = shapes[(k % 4) as usize];
        let alg = standard(l);
        let s = alg.shape();
        let iso = preserving_iso(s, &mut sample_rng(110, k));
        let image: Vec<GroupVector> = alg.lattice().basis().iter().map(|g| apply_tau(&iso, g)).collect();
        let target = Algebra::new(Lattice::new(s.clone(), Field::Rational, image).map_err(|e| e.to_string())?);
        let v = validate_preserving(&iso, alg.lattice(), target.lattice()).map_err(|e| e.to_string())?;
        ensure(v.valid(), || format!("iso #{k} on {l:?}: {:?}", v.failure))?;
        ensure(sigma_mismatch(&iso).is_none(), || format!("iso #{k}: tau(sigma_p) != sigma_nu(p)"))?;
        let chi = extend_character(&alg, &iso.b).map_err(|e| e.to_string())?;
        let theta = build_theta(&iso, &chi, &target).map_err(|e| e.to_string())?;
        let r = verify_morphism(&theta, 200, 110 + k);
        ensure(r.passed(), || format!("iso #{k} on {l:?}: {:?}", r.witness))?;
        checks += r.checks;
        moved_nu += (iso.nu.iter().enumerate().any(|(i, &q)| q != i + 1)) as usize;
        b15 += !linalg::is_zero(iso.block(Block::B15)) as usize;
        b16 += !linalg::is_zero(iso.block(Block::B16)) as usize;
        twisted += iso.b.iter().any(|b| !b.is_one()) as usize;
    }
    ensure(moved_nu > 0 && b15 > 0 && b16 > 0 && twisted > 0, || {
        format!("sample mix too narrow: nu {moved_nu}, B15 {b15}, B16 {b16}, b_p {twisted}")
    })?;
    Ok(format!(
        "20 isomorphisms ({moved_nu} permuting, {b15} with B15 != 0, {b16} with B16 != 0, {twisted} with some b_p != 1), {checks} checks"
    ))
}

fn c11_cyclic() -> Outcome {
    for (name, alg) in [("F1", fixtures::f1()), ("F3", fixtures::f3())] {
        for n in 0..100u64 {
            let (alpha, u) = sample_cyclic_pair(&alg, &mut sample_rng(111, n));
            let r = cyclic_probe(&alpha, &u).map_err(|e| e.to_string())?;
            ensure(r.equal(), || format!("{name}: {alpha:?}, {u:?}"))?;
        }
    }
    Ok("2 x 100 samples".into())
}

fn c12_h2() -> Outcome {
    let dims: Vec<(&str, usize, usize)> = [("F3", fixtures::f3(), 0), ("F1", fixtures::f1(), 2), ("F6", fixtures::f6(), 3)]
        .into_iter()
        .map(|(n, a, want)| (n, h2_report(&a).dimension, want))
        .collect();
    for (n, got, want) in &dims {
        ensure(got == want, || format!("{n}: dimension {got}, expected {want}"))?;
    }
    Ok(dims.iter().map(|(n, got, _)| format!("{n} -> {got}")).collect::<Vec<_>>().join(", "))
}

fn c13_cli() -> Outcome {
    let cases = common::corpus();
    ensure(cases.len() == 50, || format!("corpus has {} cases", cases.len()))?;
    for c in &cases {
        common::round_trip(c).map_err(|e| format!("{} | {} | {}: {e}", c.kind, c.algebra, c.text))?;
    }
    let cmds = common::seeded_commands();
    for argv in &cmds {
        let a = run_command(argv.clone());
        let b = run_command(argv.clone());
        ensure(a.code == 0, || format!("{argv:?} exited {}: {}", a.code, a.stderr))?;
        ensure(a == b, || format!("{argv:?} differs between runs"))?;
    }
    Ok(format!("50 corpus cases round-trip; {} seeded commands byte-identical", cmds.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("bracket oracle equivalence", c1_oracle_equivalence),
        ("jacobi and skew symmetry", c2_jacobi),
        ("leibniz", c3_leibniz),
        ("classical regression", c4_classical_regression),
        ("derivation law and operator identities", c5_derivation_law),
        ("direct-sum probe", c6_probe),
        ("cocycle laws and independence", c7_cocycles),
        ("coboundary reduction", c8_reduction),
        ("nilpotency bound", c9_nilpotency),
        ("morphism law", c10_morphisms),
        ("cyclic identity", c11_cyclic),
        ("H2 report", c12_h2),
        ("cli determinism and round trip", c13_cli),
    ];
    let mut failed = Vec::new();
    for (i, (label, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {n:>2} PASS  {label}: {detail} [{secs:.1}s]"),
            Err(why) => {
                println!("criterion {n:>2} FAIL  {label}: {why} [{secs:.1}s]");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
