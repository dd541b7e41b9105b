//! Derivations: the outer family `d'_0, d_0, d_p, dt_q, d_mu`, inner
//! derivations, the derivation-law check and the coordinate probe.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kernel::{
    add_term, apply_operator, bracket_structural, pi_component, same_algebra, Algebra, Element, GroupVector, Key,
    MultiIndex, OperatorKind, Scalar,
};
use crate::linalg::{self, Matrix};
use crate::sampling::{sample_rng, Sampler};

/// A group homomorphism `mu: Gamma -> F` killing every `sigma_p`, given by
/// its values on the lattice basis.
#[derive(Clone)]
pub struct HomPlus {
    alg: Arc<Algebra>,
    values: Vec<Scalar>,
}

impl HomPlus {
    pub fn new(alg: &Arc<Algebra>, values: Vec<Scalar>) -> Result<HomPlus> {
        let h = HomPlus::unchecked(alg, values)?;
        let s = alg.shape();
        for p in s.blocks(1, 4) {
            if !h.eval(&s.sigma(p)).is_zero() {
                return Err(Error::NotHomPlus { p });
            }
        }
        Ok(h)
    }

    /// Any homomorphism `Gamma -> F` (the `sigma_p` condition unchecked).
    pub fn unchecked(alg: &Arc<Algebra>, values: Vec<Scalar>) -> Result<HomPlus> {
        let rank = alg.lattice().rank();
        if values.len() != rank {
            return Err(Error::WrongLength { expected: rank, found: values.len() });
        }
        if !values.iter().all(|v| alg.field().contains(v)) {
            return Err(Error::FieldMismatch);
        }
        Ok(HomPlus { alg: alg.clone(), values })
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// `mu(alpha)`, extended linearly to the rational span.
    pub fn eval(&self, alpha: &GroupVector) -> Scalar {
        let coords = self.alg.lattice().rational_coordinates(alpha).expect("exponent in the lattice span");
        coords.iter().zip(&self.values).map(|(c, v)| c * v).sum()
    }
}

impl fmt::Debug for HomPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPlus{:?}", self.values)
    }
}

impl PartialEq for HomPlus {
    fn eq(&self, o: &HomPlus) -> bool {
        self.values == o.values && same_algebra(&self.alg, &o.alg)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DerivationSpec {
    DPrime0,
    D0,
    /// `d_p = ad_{t_p}` through the enlarged algebra; `DOuter(0)` is `d_0`.
    DOuter(usize),
    PartialT(usize),
    DMu(HomPlus),
    Ad(Element),
    Combo(Vec<(Scalar, DerivationSpec)>),
}

fn outer_index_ok(alg: &Algebra, p: usize) -> bool {
    let s = alg.shape();
    p == 0
        || (s.check_index(p).is_ok()
            && match s.block_of(p) {
                1 => true,
                2 | 3 => s.is_barred(p),
                5 => !s.is_barred(p),
                _ => false,
            })
}

impl DerivationSpec {
    /// Check that this names a derivation of `alg`.
    pub fn validate(&self, alg: &Arc<Algebra>) -> Result<()> {
        match self {
            DerivationSpec::DPrime0 if !alg.shape().is_pure_first_block() => Err(Error::DPrimeUnavailable),
            DerivationSpec::DOuter(p) if !outer_index_ok(alg, *p) => {
                Err(Error::Precondition(format!("d[{p}] needs p in J_1, bar I_2, bar I_3 or I_5")))
            }
            DerivationSpec::PartialT(q) => {
                alg.shape().check_index(*q)?;
                if alg.shape().t_allowed(*q) {
                    Ok(())
                } else {
                    Err(Error::ForbiddenIndex { p: *q })
                }
            }
            DerivationSpec::DMu(mu) if !same_algebra(mu.algebra(), alg) => Err(Error::MixedAlgebra),
            DerivationSpec::Ad(v) => {
                if !same_algebra(v.algebra(), alg) {
                    Err(Error::MixedAlgebra)
                } else if v.is_extended() {
                    Err(Error::MixedExtension)
                } else {
                    Ok(())
                }
            }
            DerivationSpec::Combo(parts) => parts.iter().try_for_each(|(_, d)| d.validate(alg)),
            _ => Ok(()),
        }
    }
}

/// Eigenvalue of `d_0` on `x^{alpha,i}`.
fn d0_weight(alg: &Algebra, key: &Key) -> Scalar {
    let s = alg.shape();
    let mut w = Scalar::one();
    for p in s.blocks(1, 4) {
        w += &key.alpha[s.slot(p)];
    }
    let mut bar56 = 0i64;
    for q in s.barred_blocks(5, 6) {
        bar56 += key.index[s.slot(q)] as i64;
    }
    let mut j7 = 0i64;
    for q in s.paired_blocks(7, 7) {
        j7 += key.index[s.slot(q)] as i64;
    }
    &(&w - &Scalar::from_int(bar56)) - &Scalar::from_ratio(j7, 2)
}

pub fn eval_derivation(d: &DerivationSpec, u: &Element) -> Result<Element> {
    if u.is_extended() {
        return Err(Error::MixedExtension);
    }
    let alg = u.algebra();
    d.validate(alg)?;
    eval_inner(d, u)
}

fn eval_inner(d: &DerivationSpec, u: &Element) -> Result<Element> {
    let alg = u.algebra();
    match d {
        DerivationSpec::D0 | DerivationSpec::DOuter(0) => {
            Ok(u.map_terms(|k, c, out| add_term(out, k.clone(), c * &d0_weight(alg, k))))
        }
        DerivationSpec::DOuter(p) => {
            let t = Element::t_extended(alg, *p)?;
            bracket_structural(&t, &u.to_extended())?.to_restricted()
        }
        DerivationSpec::DPrime0 => {
            let sigma = Key::new(alg.shape().sigma_total(), MultiIndex::zeros(alg.dim()));
            Ok(Element::one(alg).scale(&u.coefficient(&sigma)))
        }
        DerivationSpec::PartialT(q) => apply_operator(OperatorKind::DownGrading, *q, u),
        DerivationSpec::DMu(mu) => Ok(u.map_terms(|k, c, out| add_term(out, k.clone(), c * &mu.eval(&k.alpha)))),
        DerivationSpec::Ad(v) => bracket_structural(v, u),
        DerivationSpec::Combo(parts) => {
            let mut acc = Element::zero(alg);
            for (c, part) in parts {
                acc = acc.try_add(&eval_inner(part, u)?.scale(c))?;
            }
            Ok(acc)
        }
    }
}

/// The homomorphism `alpha -> pi(alpha)_p`, `p` in `I_{1,6}`.
pub fn mu_component(alg: &Arc<Algebra>, p: usize) -> Result<HomPlus> {
    let s = alg.shape();
    if !s.blocks(1, 6).contains(&p) {
        return Err(Error::IndexOutOfRange { p, max: s.iota(6) });
    }
    let values = alg.lattice().basis().iter().map(|g| pi_component(alg, p, g)).collect();
    HomPlus::new(alg, values)
}

/// Integer coordinates of each `sigma_p`, `p` in `I_{1,4}`.
pub(crate) fn sigma_matrix(alg: &Algebra) -> Vec<Vec<BigInt>> {
    let s = alg.shape();
    s.blocks(1, 4).map(|p| alg.lattice().coordinates(&s.sigma(p)).expect("sigma_p in Gamma")).collect()
}

pub fn hom_plus_basis(alg: &Arc<Algebra>) -> Vec<HomPlus> {
    let rank = alg.lattice().rank();
    let m: Matrix =
        sigma_matrix(alg).into_iter().map(|r| r.into_iter().map(Scalar::from_bigint).collect()).collect();
    linalg::nullspace(&m, rank).into_iter().map(|v| HomPlus { alg: alg.clone(), values: v }).collect()
}

/// A fixed complement of `span{mu_p}` in `Hom+`: greedily keep the basis
/// vectors of [`hom_plus_basis`] that raise the rank.
pub fn hom_star_complement(alg: &Arc<Algebra>) -> Vec<HomPlus> {
    let s = alg.shape();
    let mut rows: Matrix = s.blocks(1, 6).map(|p| mu_component(alg, p).expect("in range").values).collect();
    let mut r = linalg::rank(&rows);
    let mut out = Vec::new();
    for h in hom_plus_basis(alg) {
        rows.push(h.values.clone());
        let r2 = linalg::rank(&rows);
        if r2 > r {
            r = r2;
            out.push(h);
        } else {
            rows.pop();
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct DerivationLawReport {
    pub samples: usize,
    pub passes: usize,
    /// first failing pair `(u, v)`
    pub counterexample: Option<(Element, Element)>,
}

impl DerivationLawReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn check_derivation_law(d: &DerivationSpec, alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<DerivationLawReport> {
    d.validate(alg)?;
    Ok(check_derivation_law_with(alg, |u| eval_inner(d, u), samples, seed))
}

/// Derivation law for an arbitrary map; evaluation errors count as failures.
pub fn check_derivation_law_with(
    alg: &Arc<Algebra>,
    f: impl Fn(&Element) -> Result<Element>,
    samples: usize,
    seed: u64,
) -> DerivationLawReport {
    let sampler = Sampler::new(alg);
    let mut passes = 0;
    let mut counterexample = None;
    for n in 0..samples {
        let mut rng = sample_rng(seed, n as u64);
        let u = sampler.monomial(&mut rng);
        let v = sampler.monomial(&mut rng);
        let ok = (|| -> Result<bool> {
            let lhs = f(&bracket_structural(&u, &v)?)?;
            let rhs = bracket_structural(&f(&u)?, &v)?.try_add(&bracket_structural(&u, &f(&v)?)?)?;
            Ok(lhs == rhs)
        })()
        .unwrap_or(false);
        if ok {
            passes += 1;
        } else if counterexample.is_none() {
            counterexample = Some((u, v));
        }
    }
    DerivationLawReport { samples, passes, counterexample }
}

/// Members of the outer spanning family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OuterGenerator {
    DPrime0,
    D0,
    D(usize),
    Dt(usize),
    /// index into [`hom_star_complement`]
    Mu(usize),
}

impl fmt::Display for OuterGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OuterGenerator::DPrime0 => write!(f, "d0'"),
            OuterGenerator::D0 => write!(f, "d0"),
            OuterGenerator::D(p) => write!(f, "d[{p}]"),
            OuterGenerator::Dt(q) => write!(f, "dt[{q}]"),
            OuterGenerator::Mu(k) => write!(f, "dmu#{k}"),
        }
    }
}

/// `d'_0` (when defined), `d_0`, `d_p`, `dt_q` for `q` in `I_{2,3} u J_4`,
/// and `d_mu` over the `Hom*` basis. Together with the inner derivations
/// these span all derivations.
pub fn outer_family(alg: &Arc<Algebra>) -> Vec<(OuterGenerator, DerivationSpec)> {
    let s = alg.shape();
    let mut out = Vec::new();
    if s.is_pure_first_block() {
        out.push((OuterGenerator::DPrime0, DerivationSpec::DPrime0));
    }
    out.push((OuterGenerator::D0, DerivationSpec::D0));
    for p in s.all_indices().filter(|&p| outer_index_ok(alg, p)) {
        out.push((OuterGenerator::D(p), DerivationSpec::DOuter(p)));
    }
    for q in s.blocks(2, 3).chain(s.paired_blocks(4, 4)) {
        out.push((OuterGenerator::Dt(q), DerivationSpec::PartialT(q)));
    }
    for (k, mu) in hom_star_complement(alg).into_iter().enumerate() {
        out.push((OuterGenerator::Mu(k), DerivationSpec::DMu(mu)));
    }
    out
}

/// The probe elements: `1`, `x^{-sigma_p}`, `x^{eps_q}`, the relevant `t_r`,
/// plus `x^{lambda_p}`, the basis monomials `x^{g_k}` and `x^sigma`.
pub fn probe_elements(alg: &Arc<Algebra>) -> Vec<Element> {
    let s = alg.shape();
    let mut probes = vec![Element::one(alg)];
    for p in s.blocks(1, 4) {
        probes.push(Element::x(alg, -&s.sigma(p)).expect("sigma in Gamma"));
    }
    for q in s.blocks(5, 6) {
        probes.push(Element::x(alg, s.unit(q)).expect("eps_q in Gamma"));
    }
    let t_set: BTreeSet<usize> = s
        .barred_blocks(5, 6)
        .chain(s.paired_blocks(7, 7))
        .chain(s.blocks(2, 3))
        .chain(s.paired_blocks(4, 4))
        .chain(s.blocks(6, 6))
        .collect();
    for r in t_set {
        probes.push(Element::t(alg, r).expect("allowed t index"));
    }
    for p in s.blocks(1, 4) {
        probes.push(Element::x(alg, alg.lattice().lambda(p).expect("lambda exists")).expect("lambda in Gamma"));
    }
    for g in alg.lattice().basis() {
        probes.push(Element::x(alg, g.clone()).expect("basis vector"));
    }
    if s.is_pure_first_block() {
        probes.push(Element::x(alg, s.sigma_total()).expect("sigma in Gamma"));
    }
    let mut seen = BTreeSet::new();
    probes.retain(|p| seen.insert(format!("{p:?}")));
    probes
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub outer: Vec<(OuterGenerator, Scalar)>,
    /// `v` with the inner part equal to `ad_v` on the probes
    pub inner: Element,
}

impl ProbeReport {
    pub fn coefficient(&self, g: &OuterGenerator) -> Scalar {
        self.outer.iter().find(|(h, _)| h == g).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }
}

/// Keys `k` such that `[x^k, x^{probe}]` can produce `out`.
fn inner_candidates(alg: &Arc<Algebra>, probe: &Key, out: &Key, acc: &mut BTreeSet<Key>) {
    let s = alg.shape();
    let dim = s.dim();
    for q in s.blocks(1, 7) {
        let gamma = &(&out.alpha - &probe.alpha) - &s.sigma(q);
        let (sq, sb) = (s.slot(q), s.slot(s.bar(q)));
        for shift in [vec![], vec![sq], vec![sb], vec![sq, sb]] {
            let mut m = Vec::with_capacity(dim);
            let mut ok = true;
            for slot in 0..dim {
                let v = out.index[slot] as i64 - probe.index[slot] as i64 + shift.iter().filter(|&&x| x == slot).count() as i64;
                if v < 0 {
                    ok = false;
                    break;
                }
                m.push(v as u32);
            }
            if !ok {
                continue;
            }
            let key = Key::new(gamma.clone(), MultiIndex::new(m));
            if key != Key::unit(dim) && alg.accepts(&key, false).is_ok() {
                acc.insert(key);
            }
        }
    }
}

/// Recover the outer coordinates of `d` from its values on the probes.
pub fn derivation_probe(d: &DerivationSpec, alg: &Arc<Algebra>) -> Result<ProbeReport> {
    d.validate(alg)?;
    let probes = probe_elements(alg);
    let family = outer_family(alg);
    let targets: Vec<Element> = probes.iter().map(|p| eval_inner(d, p)).collect::<Result<_>>()?;
    let family_values: Vec<Vec<Element>> =
        family.iter().map(|(_, f)| probes.iter().map(|p| eval_inner(f, p)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;

    let mut candidates = BTreeSet::new();
    for (pi, p) in probes.iter().enumerate() {
        let (pk, _) = p.as_monomial().expect("probes are monomials");
        let mut outs: BTreeSet<&Key> = targets[pi].terms().keys().collect();
        for fv in &family_values {
            outs.extend(fv[pi].terms().keys());
        }
        for o in outs {
            inner_candidates(alg, pk, o, &mut candidates);
        }
    }
    let candidates: Vec<Key> = candidates.into_iter().collect();
    let inner_values: Vec<Vec<Element>> = candidates
        .iter()
        .map(|k| {
            let v = Element::monomial(alg, k.clone(), Scalar::one())?;
            probes.iter().map(|p| bracket_structural(&v, p)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // One row per (probe, output key).
    let nf = family.len();
    let ncols = nf + candidates.len();
    let mut row_index: BTreeMap<(usize, Key), usize> = BTreeMap::new();
    let mut rows: Matrix = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut put = |rows: &mut Matrix, rhs: &mut Vec<Scalar>, pi: usize, key: &Key| -> usize {
        *row_index.entry((pi, key.clone())).or_insert_with(|| {
            rows.push(vec![Scalar::zero(); ncols]);
            rhs.push(Scalar::zero());
            rows.len() - 1
        })
    };
    for pi in 0..probes.len() {
        for (k, c) in targets[pi].terms() {
            let r = put(&mut rows, &mut rhs, pi, k);
            rhs[r] = c.clone();
        }
        for (col, fv) in family_values.iter().chain(&inner_values).enumerate() {
            for (k, c) in fv[pi].terms() {
                let r = put(&mut rows, &mut rhs, pi, k);
                rows[r][col] = c.clone();
            }
        }
    }
    let sol = linalg::solve(&rows, &rhs, ncols)
        .ok_or_else(|| Error::Precondition("derivation is not in the spanning family on the probe set".into()))?;
    for v in linalg::nullspace(&rows, ncols) {
        if let Some(j) = (0..nf).find(|&j| !v[j].is_zero()) {
            return Err(Error::ProbeSingular(format!("coordinate of {} is not determined", family[j].0)));
        }
    }
    let outer = family.iter().zip(&sol).map(|((g, _), c)| (g.clone(), c.clone())).collect();
    let mut inner = Element::zero(alg);
    for (k, c) in candidates.iter().zip(&sol[nf..]) {
        inner = inner.try_add(&Element::monomial(alg, k.clone(), c.clone())?)?;
    }
    Ok(ProbeReport { outer, inner })
}
