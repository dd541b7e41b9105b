//! Subcommand dispatch. Exit codes: 0 success, 1 mathematical failure,
//! 2 usage or parse error.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use hamiltonian_core::cohomology::{check_cocycle_laws, eval_cocycle, h2_report, Cocycle};
use hamiltonian_core::derivations::{check_derivation_law, eval_derivation, outer_family, DerivationSpec};
use hamiltonian_core::isomorphisms::{
    apply_tau, build_theta, extend_character, sigma_mismatch, validate_preserving, verify_morphism, AlgebraMorphism,
    Character, PreservingIso, ValidationFailure,
};
use hamiltonian_core::kernel::{bracket_structural, Algebra, Element, GroupVector, Lattice};
use hamiltonian_core::locality::{classify, nilpotency_bound_check, sample_h2};
use hamiltonian_core::properties::{self, SuiteReport};
use hamiltonian_core::sampling::{preserving_iso, sample_rng, Sampler};
use serde_json::{json, Value};

use crate::cocycle::{format_cocycle, parse_cocycle};
use crate::derivation::{format_derivation, parse_derivation};
use crate::element::{element_to_json, format_element, parse_element};
use crate::iso::{build_iso, parse_iso, IsoDocument};
use crate::spec::{parse_spec, AlgebraSpecDocument};
use crate::syntax::ParseError;

#[derive(Parser, Debug)]
#[command(name = "hamlie", about = "Exact computations in nongraded Hamiltonian Lie algebras")]
struct Cli {
    /// algebra description (`.alg`)
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// standard algebra F1..F6 instead of a spec file
    #[arg(long, global = true)]
    fixture: Option<String>,
    /// machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the algebra description.
    Validate,
    /// Evaluate an expression.
    Eval {
        #[command(subcommand)]
        what: Eval,
    },
    /// Run a seeded property suite.
    Check {
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// derivation for `derivation-law` (default: every outer generator)
        #[arg(long)]
        derivation: Option<String>,
        /// cocycle for `cocycle-law` (default: the H^2 generators)
        #[arg(long)]
        cocycle: Option<String>,
        /// isomorphism for `morphism` (default: one sampled from the seed)
        #[arg(long)]
        iso: Option<PathBuf>,
    },
    /// Preserving isomorphisms and their algebra maps.
    Iso {
        #[command(subcommand)]
        what: Iso,
    },
    /// Dimension and generators of the second cohomology.
    H2,
    /// Locally finite / locally nilpotent membership and ad-orbits.
    Classify {
        element: String,
        #[arg(long, default_value_t = 6)]
        max_power: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Eval {
    /// Associative product a*b.
    Product { a: String, b: String },
    /// Poisson bracket [a, b].
    Bracket { a: String, b: String },
    /// Apply a derivation to an element.
    Derivation { derivation: String, element: String },
    /// Evaluate a 2-cocycle on a pair of elements.
    Cocycle { cocycle: String, a: String, b: String },
}

#[derive(Subcommand, Debug)]
enum Iso {
    /// Check that the file describes a preserving isomorphism onto its target.
    Validate { file: PathBuf },
    /// Image of an element under the induced algebra map.
    Apply { file: PathBuf, element: String },
    /// Sample the morphism law for the induced algebra map.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Jacobi,
    Leibniz,
    OracleEquivalence,
    DerivationLaw,
    CocycleLaw,
    Morphism,
    Nilpotency,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::Usage(format!("parse error at {e}"))
    }
}

impl From<hamiltonian_core::Error> for Failure {
    fn from(e: hamiltonian_core::Error) -> Failure {
        Failure::Math(e.to_string())
    }
}

/// A finished report: its rendering and whether the checks held.
struct Report {
    human: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(human: String, json: Value) -> Report {
        Report { human, json, ok: true }
    }
}

/// Run one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let mut stdout = if cli.json {
                serde_json::to_string_pretty(&r.json).expect("json values serialize")
            } else {
                r.human
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code: if r.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Math(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_iso(path: &PathBuf) -> Result<IsoDocument, Failure> {
    parse_iso(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_algebra(cli: &Cli) -> Result<(AlgebraSpecDocument, Arc<Algebra>), Failure> {
    let doc = match (&cli.spec, &cli.fixture) {
        (Some(_), Some(_)) => return Err(Failure::Usage("give either --spec or --fixture".into())),
        (Some(p), None) => {
            let text = read(p)?;
            parse_spec(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
        }
        (None, Some(f)) => {
            AlgebraSpecDocument::fixture(f).ok_or_else(|| Failure::Usage(format!("unknown fixture `{f}`")))?
        }
        (None, None) => return Err(Failure::Usage("no algebra: pass --spec FILE or --fixture NAME".into())),
    };
    let alg = doc.build().map_err(|e| Failure::Math(format!("invalid structure: {e}")))?;
    Ok((doc, alg))
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let (doc, alg) = load_algebra(cli)?;
    match &cli.cmd {
        Cmd::Validate => Ok(validate(&doc, &alg)),
        Cmd::Eval { what } => eval(what, &alg),
        Cmd::Check { suite, samples, seed, max_degree, derivation, cocycle, iso } => {
            let r = match suite {
                Suite::Jacobi => suite_report(&properties::jacobi(&alg, *samples, *seed, *max_degree)?),
                Suite::Leibniz => suite_report(&properties::leibniz(&alg, *samples, *seed, *max_degree)?),
                Suite::OracleEquivalence => {
                    suite_report(&properties::oracle_equivalence(&alg, *samples, *seed, *max_degree)?)
                }
                Suite::DerivationLaw => derivation_law(&alg, derivation.as_deref(), *samples, *seed)?,
                Suite::CocycleLaw => cocycle_law(&alg, cocycle.as_deref(), *samples, *seed)?,
                Suite::Morphism => {
                    let setup = match iso {
                        Some(p) => setup_iso(&alg, &load_iso(p)?)?,
                        None => sampled_setup(&alg, *seed)?,
                    };
                    morphism(&setup, *samples, *seed)?
                }
                Suite::Nilpotency => nilpotency(&alg, *samples, *seed, *max_degree)?,
            };
            Ok(r)
        }
        Cmd::Iso { what } => match what {
            Iso::Validate { file } => iso_validate(&alg, &load_iso(file)?),
            Iso::Apply { file, element } => {
                let setup = setup_iso(&alg, &load_iso(file)?)?;
                let u = parse_element(element, &alg)?;
                let img = setup.theta.eval(&u)?;
                Ok(Report::ok(format_element(&img), element_to_json(&img)))
            }
            Iso::Verify { file, samples, seed } => morphism(&setup_iso(&alg, &load_iso(file)?)?, *samples, *seed),
        },
        Cmd::H2 => Ok(h2(&alg)),
        Cmd::Classify { element, max_power, samples, seed } => {
            let u = parse_element(element, &alg)?;
            classify_report(&u, *max_power, *samples, *seed)
        }
    }
}

fn validate(doc: &AlgebraSpecDocument, alg: &Arc<Algebra>) -> Report {
    let l: Vec<String> = doc.l.iter().map(|x| x.to_string()).collect();
    let human = format!(
        "valid\nshape ({})\nrank {}\nfield {}\n",
        l.join(","),
        alg.lattice().rank(),
        alg.field()
    );
    Report::ok(human, json!({"valid": true, "shape": doc.l, "rank": alg.lattice().rank(), "field": alg.field().to_string()}))
}

fn eval(what: &Eval, alg: &Arc<Algebra>) -> Result<Report, Failure> {
    let element = |e: Element| Report::ok(format_element(&e), element_to_json(&e));
    match what {
        Eval::Product { a, b } => {
            let (u, v) = (parse_element(a, alg)?, parse_element(b, alg)?);
            Ok(element(u.multiply(&v)?))
        }
        Eval::Bracket { a, b } => {
            let (u, v) = (parse_element(a, alg)?, parse_element(b, alg)?);
            Ok(element(bracket_structural(&u, &v)?))
        }
        Eval::Derivation { derivation, element: e } => {
            let d = parse_derivation(derivation, alg)?;
            let u = parse_element(e, alg)?;
            Ok(element(eval_derivation(&d, &u)?))
        }
        Eval::Cocycle { cocycle, a, b } => {
            let c = parse_cocycle(cocycle, alg)?;
            let (u, v) = (parse_element(a, alg)?, parse_element(b, alg)?);
            let x = eval_cocycle(&c, &u, &v)?;
            Ok(Report::ok(x.to_string(), json!(x.to_canonical_string())))
        }
    }
}

fn witness_text(w: &Option<(String, Vec<Element>)>) -> Option<String> {
    w.as_ref().map(|(label, ops)| {
        format!("{label}: {}", ops.iter().map(|e| format!("[{}]", format_element(e))).collect::<Vec<_>>().join(" "))
    })
}

fn suite_report(r: &SuiteReport) -> Report {
    let mut human = format!("suite {}\nsamples {}\nfailures {}\n", r.suite, r.samples, r.failures);
    let w = witness_text(&r.witness);
    if let Some(w) = &w {
        human.push_str(&format!("witness {w}\n"));
    }
    human.push_str(if r.passed() { "PASS\n" } else { "FAIL\n" });
    Report {
        human,
        json: json!({"suite": r.suite, "samples": r.samples, "failures": r.failures, "witness": w, "passed": r.passed()}),
        ok: r.passed(),
    }
}

/// One line per checked item, then a verdict.
fn itemized(suite: &str, items: Vec<(String, usize, usize, Option<String>)>) -> Report {
    let mut human = format!("suite {suite}\n");
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, samples, failures, w) in items {
        ok &= failures == 0;
        human.push_str(&format!("{name}: {samples} samples, {failures} failures\n"));
        if let Some(w) = &w {
            human.push_str(&format!("  witness {w}\n"));
        }
        rows.push(json!({"item": name, "samples": samples, "failures": failures, "witness": w}));
    }
    human.push_str(if ok { "PASS\n" } else { "FAIL\n" });
    Report { human, json: json!({"suite": suite, "items": rows, "passed": ok}), ok }
}

fn derivation_law(alg: &Arc<Algebra>, text: Option<&str>, samples: usize, seed: u64) -> Result<Report, Failure> {
    let ds: Vec<DerivationSpec> = match text {
        Some(t) => vec![parse_derivation(t, alg)?],
        None => outer_family(alg).into_iter().map(|(_, d)| d).collect(),
    };
    let mut items = Vec::new();
    for d in &ds {
        let r = check_derivation_law(d, alg, samples, seed)?;
        let w = r.counterexample.as_ref().map(|(u, v)| format!("[{}] [{}]", format_element(u), format_element(v)));
        items.push((format_derivation(d, alg), r.samples, r.samples - r.passes, w));
    }
    Ok(itemized("derivation-law", items))
}

fn cocycle_law(alg: &Arc<Algebra>, text: Option<&str>, samples: usize, seed: u64) -> Result<Report, Failure> {
    let cs: Vec<Cocycle> = match text {
        Some(t) => vec![parse_cocycle(t, alg)?],
        None => h2_report(alg).generators,
    };
    let mut items = Vec::new();
    for c in &cs {
        let r = check_cocycle_laws(c, alg, samples, seed)?;
        items.push((format_cocycle(c, alg), r.samples, r.skew_failures + r.jacobi_failures, witness_text(&r.witness)));
    }
    Ok(itemized("cocycle-law", items))
}

fn nilpotency(alg: &Arc<Algebra>, samples: usize, seed: u64, max_degree: u32) -> Result<Report, Failure> {
    let s = Sampler::new(alg).with_level(max_degree).with_range(2);
    let (mut failures, mut sharp) = (0, 0);
    let mut witness = None;
    for n in 0..samples {
        let mut rng = sample_rng(seed, n as u64);
        let u = sample_h2(alg, &mut rng);
        let v = s.monomial(&mut rng);
        let r = nilpotency_bound_check(&u, &v)?;
        sharp += r.nonzero_before as usize;
        if !r.verified || r.leading_nonzero != r.nonzero_before {
            failures += 1;
            witness.get_or_insert_with(|| format!("m={} [{}] [{}]", r.m, format_element(&u), format_element(&v)));
        }
    }
    let mut rep = itemized("nilpotency", vec![("ad_u^m(v) = 0 at the bound".into(), samples, failures, witness)]);
    rep.human = rep.human.replace("PASS\n", &format!("sharp {sharp}\nPASS\n")).replace("FAIL\n", &format!("sharp {sharp}\nFAIL\n"));
    rep.json["sharp"] = json!(sharp);
    Ok(rep)
}

struct IsoSetup {
    iso: PreservingIso,
    target: Arc<Algebra>,
    theta: AlgebraMorphism,
}

fn image_target(alg: &Arc<Algebra>, iso: &PreservingIso) -> Result<Arc<Algebra>, Failure> {
    let image = alg.lattice().basis().iter().map(|g| apply_tau(iso, g)).collect();
    Ok(Algebra::new(Lattice::new(alg.shape().clone(), alg.field(), image)?))
}

fn target_of(alg: &Arc<Algebra>, doc: &IsoDocument, iso: &PreservingIso) -> Result<Arc<Algebra>, Failure> {
    match &doc.target {
        Some(rows) => {
            let basis = rows.iter().map(|r| GroupVector::new(r.clone())).collect();
            Ok(Algebra::new(Lattice::new(alg.shape().clone(), alg.field(), basis)?))
        }
        None => image_target(alg, iso),
    }
}

fn setup_iso(alg: &Arc<Algebra>, doc: &IsoDocument) -> Result<IsoSetup, Failure> {
    let iso = build_iso(doc, alg.shape()).map_err(Failure::Usage)?;
    let target = target_of(alg, doc, &iso)?;
    let v = validate_preserving(&iso, alg.lattice(), target.lattice())?;
    if let Some(f) = v.failure {
        return Err(Failure::Math(validation_text(&f)));
    }
    let chi = match &doc.character {
        Some(vals) => Character::new(alg, vals.clone())?,
        None => extend_character(alg, &iso.b)?,
    };
    let theta = build_theta(&iso, &chi, &target)?;
    Ok(IsoSetup { iso, target, theta })
}

fn sampled_setup(alg: &Arc<Algebra>, seed: u64) -> Result<IsoSetup, Failure> {
    let iso = preserving_iso(alg.shape(), &mut sample_rng(seed, u64::MAX));
    let target = image_target(alg, &iso)?;
    let chi = extend_character(alg, &iso.b)?;
    let theta = build_theta(&iso, &chi, &target)?;
    Ok(IsoSetup { iso, target, theta })
}

fn validation_text(f: &ValidationFailure) -> String {
    let v = |g: &GroupVector| g.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    match f {
        ValidationFailure::Forward(k, img) => format!("tau(g_{}) = ({}) is not in the target lattice", k + 1, v(img)),
        ValidationFailure::Backward(k, pre) => format!("tau^-1(g'_{}) = ({}) is not in the source lattice", k + 1, v(pre)),
    }
}

fn iso_validate(alg: &Arc<Algebra>, doc: &IsoDocument) -> Result<Report, Failure> {
    let iso = build_iso(doc, alg.shape()).map_err(Failure::Usage)?;
    let target = target_of(alg, doc, &iso)?;
    let v = validate_preserving(&iso, alg.lattice(), target.lattice())?;
    let sigma = sigma_mismatch(&iso);
    let ok = v.valid() && sigma.is_none();
    let mut human = String::new();
    if let Some(f) = &v.failure {
        human.push_str(&format!("{}\n", validation_text(f)));
    }
    if let Some(p) = sigma {
        human.push_str(&format!("tau(sigma_{p}) differs from sigma_nu({p})\n"));
    }
    human.push_str(if ok { "valid\n" } else { "invalid\n" });
    let json = json!({
        "valid": ok,
        "lattice_failure": v.failure.as_ref().map(validation_text),
        "sigma_mismatch": sigma,
    });
    Ok(Report { human, json, ok })
}

fn morphism(setup: &IsoSetup, samples: usize, seed: u64) -> Result<Report, Failure> {
    let r = verify_morphism(&setup.theta, samples, seed);
    let sigma = sigma_mismatch(&setup.iso);
    let ok = r.passed() && sigma.is_none();
    let w = r.witness.as_ref().map(|(l, u, v)| format!("{l}: [{}] [{}]", format_element(u), format_element(v)));
    let mut human = format!("suite morphism\nchecks {}\nfailures {}\n", r.checks, r.failures);
    if let Some(w) = &w {
        human.push_str(&format!("witness {w}\n"));
    }
    if let Some(p) = sigma {
        human.push_str(&format!("tau(sigma_{p}) differs from sigma_nu({p})\n"));
    }
    human.push_str(&format!("target rank {}\n", setup.target.lattice().rank()));
    human.push_str(if ok { "PASS\n" } else { "FAIL\n" });
    Ok(Report {
        human,
        json: json!({"suite": "morphism", "checks": r.checks, "failures": r.failures, "witness": w, "sigma_mismatch": sigma, "passed": ok}),
        ok,
    })
}

fn h2(alg: &Arc<Algebra>) -> Report {
    let r = h2_report(alg);
    let gens: Vec<String> = r.generators.iter().map(|c| format_cocycle(c, alg)).collect();
    let mut human = format!("dim {}\n", r.dimension);
    for g in &gens {
        human.push_str(&format!("  {g}\n"));
    }
    Report::ok(human, json!({"dimension": r.dimension, "generators": gens}))
}

fn classify_report(u: &Element, n: usize, targets: usize, seed: u64) -> Result<Report, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--max-power must be at least 1".into()));
    }
    let r = classify(u, n, targets, seed)?;
    let mut human = format!(
        "element {}\nH1 {}\nH2 {}\nH3 {}\nspan(H1 u H3) {}\n",
        format_element(u),
        r.in_h1,
        r.in_h2,
        r.in_h3,
        r.in_span_h1_h3
    );
    let mut orbits = Vec::new();
    for o in &r.orbits {
        let dims: Vec<String> = o.span_dims.iter().map(|d| d.to_string()).collect();
        let nil = o.nilpotent_at.map_or("-".to_string(), |k| k.to_string());
        human.push_str(&format!("orbit [{}] dims {} nilpotent_at {nil}\n", format_element(&o.v), dims.join(",")));
        orbits.push(json!({"target": element_to_json(&o.v), "span_dims": o.span_dims, "nilpotent_at": o.nilpotent_at}));
    }
    let growth = r.growth.as_ref().map(|g| {
        let beta: Vec<String> = g.beta.coords().iter().map(|c| c.to_string()).collect();
        human.push_str(&format!(
            "growth p {} b {} beta ({}) dims {}\n",
            g.p,
            g.b,
            beta.join(","),
            g.orbit.span_dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        ));
        json!({
            "p": g.p,
            "b": g.b.to_canonical_string(),
            "beta": g.beta.coords().iter().map(|c| c.to_canonical_string()).collect::<Vec<_>>(),
            "span_dims": g.orbit.span_dims,
            "leading_matches": g.leading_matches,
        })
    });
    human.push_str(&format!("consistent {}\n", r.consistent));
    let json = json!({
        "element": element_to_json(u),
        "in_h1": r.in_h1,
        "in_h2": r.in_h2,
        "in_h3": r.in_h3,
        "in_span_h1_h3": r.in_span_h1_h3,
        "orbits": orbits,
        "growth": growth,
        "consistent": r.consistent,
    });
    Ok(Report { human, json, ok: r.consistent })
}
