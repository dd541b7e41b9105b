//! 2-cocycles: the generators `phi_p`, `phi'_p`, `phi_mu`, coboundaries
//! `psi_f`, the cocycle laws, the reduction to a coboundary when
//! `iota_7 != l_1`, and the independence probe.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::derivations::{hom_star_complement, HomPlus};
use crate::error::{Error, Result};
use crate::kernel::{bracket_structural, same_algebra, Algebra, Element, GroupVector, Key, MultiIndex, Scalar};
use crate::linalg::{self, Matrix};
use crate::sampling::{sample_rng, Sampler};

/// A finite set of basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyBox {
    keys: BTreeSet<Key>,
}

impl KeyBox {
    pub fn new(keys: impl IntoIterator<Item = Key>) -> KeyBox {
        KeyBox { keys: keys.into_iter().collect() }
    }

    /// Lattice coordinates in `[-r, r]` and level at most `max_level`.
    pub fn degree_box(alg: &Algebra, r: i64, max_level: u32) -> KeyBox {
        let lat = alg.lattice();
        let s = alg.shape();
        let mut alphas = vec![GroupVector::zeros(s.dim())];
        for g in lat.basis() {
            let mut next = Vec::with_capacity(alphas.len() * (2 * r as usize + 1));
            for a in &alphas {
                for c in -r..=r {
                    next.push(a + &g.scale(&Scalar::from_int(c)));
                }
            }
            alphas = next;
        }
        let slots: Vec<usize> = s.t_indices().into_iter().map(|p| s.slot(p)).collect();
        let mut indices = vec![MultiIndex::zeros(s.dim())];
        for &slot in &slots {
            let mut next = Vec::new();
            for i in &indices {
                let used = i.level() as u32;
                for e in 0..=(max_level - used) {
                    let mut j = i.clone();
                    j[slot] = e;
                    next.push(j);
                }
            }
            indices = next;
        }
        let keys = alphas.iter().flat_map(|a| indices.iter().map(move |i| Key::new(a.clone(), i.clone())));
        KeyBox::new(keys)
    }

    pub fn contains(&self, k: &Key) -> bool {
        self.keys.contains(k)
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.keys.iter()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// A linear functional supported in a box.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional {
    values: BTreeMap<Key, Scalar>,
}

impl LinearFunctional {
    pub fn zero() -> LinearFunctional {
        LinearFunctional { values: BTreeMap::new() }
    }

    pub fn new(values: impl IntoIterator<Item = (Key, Scalar)>) -> LinearFunctional {
        LinearFunctional { values: values.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// The functional reading off the coefficients of `u`.
    pub fn from_element(u: &Element) -> LinearFunctional {
        LinearFunctional::new(u.terms().iter().map(|(k, c)| (k.clone(), c.clone())))
    }

    pub fn value(&self, k: &Key) -> Scalar {
        self.values.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn values(&self) -> &BTreeMap<Key, Scalar> {
        &self.values
    }

    pub fn set(&mut self, k: Key, c: Scalar) {
        if c.is_zero() {
            self.values.remove(&k);
        } else {
            self.values.insert(k, c);
        }
    }

    pub fn eval(&self, u: &Element) -> Scalar {
        u.terms().iter().map(|(k, c)| c * &self.value(k)).sum()
    }
}

/// A finite table of values on pairs of box keys.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleTable {
    pub keybox: KeyBox,
    pub values: BTreeMap<(Key, Key), Scalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cocycle {
    PhiP(usize),
    PhiPPrime(usize),
    PhiMu(HomPlus),
    Coboundary(LinearFunctional),
    Table(CocycleTable),
    Combo(Vec<(Scalar, Cocycle)>),
}

impl Cocycle {
    pub fn validate(&self, alg: &Arc<Algebra>) -> Result<()> {
        let s = alg.shape();
        let needs_pure = |p: Option<usize>| -> Result<()> {
            if !s.is_pure_first_block() {
                return Err(Error::Precondition("phi cocycles need iota_7 = l_1".into()));
            }
            match p {
                Some(p) if !s.blocks(1, 1).contains(&p) => Err(Error::IndexOutOfRange { p, max: s.iota(1) }),
                _ => Ok(()),
            }
        };
        match self {
            Cocycle::PhiP(p) | Cocycle::PhiPPrime(p) => needs_pure(Some(*p)),
            Cocycle::PhiMu(mu) => {
                needs_pure(None)?;
                if same_algebra(mu.algebra(), alg) {
                    Ok(())
                } else {
                    Err(Error::MixedAlgebra)
                }
            }
            Cocycle::Combo(parts) => parts.iter().try_for_each(|(_, c)| c.validate(alg)),
            _ => Ok(()),
        }
    }

    /// Value on a pair of basis labels.
    fn on_keys(&self, alg: &Algebra, k1: &Key, k2: &Key) -> Result<Scalar> {
        let s = alg.shape();
        let keys_plain = k1.index.is_zero() && k2.index.is_zero();
        let sum = &k1.alpha + &k2.alpha;
        Ok(match self {
            Cocycle::PhiP(p) | Cocycle::PhiPPrime(p) => {
                if keys_plain && sum == &s.sigma_total() - &s.sigma(*p) {
                    let slot = if matches!(self, Cocycle::PhiP(_)) { s.slot(*p) } else { s.slot(s.bar(*p)) };
                    k1.alpha[slot].clone()
                } else {
                    Scalar::zero()
                }
            }
            Cocycle::PhiMu(mu) => {
                if keys_plain && sum == s.sigma_total() {
                    mu.eval(&k1.alpha)
                } else {
                    Scalar::zero()
                }
            }
            Cocycle::Coboundary(_) => unreachable!("evaluated on elements"),
            Cocycle::Table(t) => {
                if !t.keybox.contains(k1) || !t.keybox.contains(k2) {
                    return Err(Error::OutsideTable(format!("{k1:?}, {k2:?}")));
                }
                t.values.get(&(k1.clone(), k2.clone())).cloned().unwrap_or_else(Scalar::zero)
            }
            Cocycle::Combo(_) => unreachable!("evaluated on elements"),
        })
    }

    /// Sums `alpha + beta` off which the cocycle vanishes on `(x^alpha, x^beta)`,
    /// when such a finite set exists.
    fn anchors(&self, alg: &Algebra) -> Vec<GroupVector> {
        let s = alg.shape();
        let mut out = match self {
            Cocycle::PhiP(p) | Cocycle::PhiPPrime(p) => vec![&s.sigma_total() - &s.sigma(*p)],
            Cocycle::PhiMu(_) => vec![s.sigma_total()],
            Cocycle::Coboundary(f) => {
                let mut v = Vec::new();
                for k in f.values().keys() {
                    v.push(k.alpha.clone());
                    for q in s.blocks(1, 4) {
                        v.push(&k.alpha - &s.sigma(q));
                    }
                }
                v
            }
            Cocycle::Table(t) => t.values.keys().map(|(a, b)| &a.alpha + &b.alpha).collect(),
            Cocycle::Combo(parts) => parts.iter().flat_map(|(_, c)| c.anchors(alg)).collect(),
        };
        out.sort();
        out.dedup();
        out
    }
}

pub fn eval_cocycle(c: &Cocycle, u: &Element, v: &Element) -> Result<Scalar> {
    let alg = u.algebra();
    u.check_compatible(v)?;
    if u.is_extended() {
        return Err(Error::MixedExtension);
    }
    c.validate(alg)?;
    eval_inner(c, u, v)
}

fn eval_inner(c: &Cocycle, u: &Element, v: &Element) -> Result<Scalar> {
    let alg = u.algebra();
    match c {
        Cocycle::Coboundary(f) => Ok(f.eval(&bracket_structural(u, v)?)),
        Cocycle::Combo(parts) => {
            let mut acc = Scalar::zero();
            for (w, part) in parts {
                acc += &(w * &eval_inner(part, u, v)?);
            }
            Ok(acc)
        }
        _ => {
            let mut acc = Scalar::zero();
            for (k1, c1) in u.terms() {
                for (k2, c2) in v.terms() {
                    let val = c.on_keys(alg, k1, k2)?;
                    if !val.is_zero() {
                        acc += &(&(c1 * c2) * &val);
                    }
                }
            }
            Ok(acc)
        }
    }
}

#[derive(Clone, Debug)]
pub struct CocycleLawReport {
    pub samples: usize,
    pub skew_failures: usize,
    pub jacobi_failures: usize,
    /// evaluations that left a table's box
    pub skipped: usize,
    pub witness: Option<(String, Vec<Element>)>,
}

impl CocycleLawReport {
    pub fn passed(&self) -> bool {
        self.skew_failures == 0 && self.jacobi_failures == 0
    }
}

/// Skew-symmetry on pairs and the cyclic identity on triples. Half of the
/// samples are steered so that the exponents sum to a point where the
/// cocycle can be nonzero.
pub fn check_cocycle_laws(c: &Cocycle, alg: &Arc<Algebra>, samples: usize, seed: u64) -> Result<CocycleLawReport> {
    c.validate(alg)?;
    let anchors = c.anchors(alg);
    let s = alg.shape();
    let sampler = Sampler::new(alg);
    let table_keys: Option<Vec<Key>> = match c {
        Cocycle::Table(t) => Some(t.keybox.keys().cloned().collect()),
        _ => None,
    };
    let mut report = CocycleLawReport { samples, skew_failures: 0, jacobi_failures: 0, skipped: 0, witness: None };
    for n in 0..samples {
        let mut rng = sample_rng(seed, n as u64);
        let mono = |rng: &mut rand_chacha::ChaCha8Rng| -> Element {
            match &table_keys {
                Some(keys) => Element::monomial(alg, keys.choose(rng).expect("nonempty table box").clone(), sampler.coefficient(rng))
                    .expect("box key"),
                None => sampler.monomial(rng),
            }
        };
        let u = mono(&mut rng);
        let mut v = mono(&mut rng);
        let mut w = mono(&mut rng);
        if table_keys.is_none() && !anchors.is_empty() && rng.gen_bool(0.5) {
            let (ku, _) = u.as_monomial().expect("monomial");
            let anchor = anchors.choose(&mut rng).expect("nonempty");
            // steer (u, v) onto the anchor, and the bracket of (u, v) with w
            let kv = v.as_monomial().expect("monomial").0.clone();
            let vk = Key::new(anchor - &ku.alpha, kv.index.clone());
            v = Element::monomial(alg, vk, sampler.coefficient(&mut rng)).expect("anchor in Gamma");
            let shift = s.blocks(1, 4).collect::<Vec<_>>().choose(&mut rng).map(|&q| s.sigma(q)).unwrap_or_else(|| GroupVector::zeros(s.dim()));
            let (ku2, _) = u.as_monomial().expect("monomial");
            let kw = w.as_monomial().expect("monomial").0.clone();
            let other = sampler.key(&mut rng);
            let wk = Key::new(&(&(anchor - &ku2.alpha) - &other.alpha) - &shift, kw.index.clone());
            w = Element::monomial(alg, wk, sampler.coefficient(&mut rng)).expect("in Gamma");
            v = if rng.gen_bool(0.5) { v } else { Element::monomial(alg, other, sampler.coefficient(&mut rng)).expect("sampled") };
        }
        let skew = (|| -> Result<bool> { Ok(eval_inner(c, &u, &v)? == -&eval_inner(c, &v, &u)?) })();
        let jacobi = (|| -> Result<bool> {
            let a = eval_inner(c, &bracket_structural(&u, &v)?, &w)?;
            let b = eval_inner(c, &bracket_structural(&v, &w)?, &u)?;
            let d = eval_inner(c, &bracket_structural(&w, &u)?, &v)?;
            Ok((&(&a + &b) + &d).is_zero())
        })();
        for (law, r) in [("skew-symmetry", skew), ("jacobi", jacobi)] {
            match r {
                Ok(true) => {}
                Ok(false) => {
                    if law == "jacobi" {
                        report.jacobi_failures += 1;
                    } else {
                        report.skew_failures += 1;
                    }
                    if report.witness.is_none() {
                        report.witness = Some((law.into(), vec![u.clone(), v.clone(), w.clone()]));
                    }
                }
                Err(Error::OutsideTable(_)) => report.skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub f: LinearFunctional,
    /// pairs of box keys whose bracket stays in the box
    pub checked_pairs: usize,
    pub nonzero_residuals: usize,
    pub witness: Option<(Key, Key, Scalar)>,
}

impl ReductionReport {
    pub fn residual_vanishes(&self) -> bool {
        self.nonzero_residuals == 0
    }
}

/// Build `f` with `(psi - psi_f)(t_p, .) = 0` on the box, then measure
/// `psi - psi_f` on every pair of box keys whose bracket stays in the box.
///
/// Uses `[t_p, x^{alpha,i}] = alpha_{bar p} x^{alpha+sigma_p,i}
/// + i_{bar p} x^{alpha+sigma_p,i-eps_{bar p}}`, valid for `p` in `I_4`, `I_6`, `I_7`.
pub fn reduce_cocycle(psi: &Cocycle, alg: &Arc<Algebra>, keybox: &KeyBox, p: usize) -> Result<ReductionReport> {
    let s = alg.shape();
    if s.is_pure_first_block() {
        return Err(Error::Precondition("reduction needs iota_7 != l_1".into()));
    }
    s.check_index(p)?;
    if !matches!(s.block_of(p), 4 | 6 | 7) || s.is_barred(p) {
        return Err(Error::Precondition(format!("reduction index {p} must lie in I_4, I_6 or I_7")));
    }
    psi.validate(alg)?;
    let bp = s.bar(p);
    let bslot = s.slot(bp);
    let sigma = s.sigma(p);
    let tp = Element::t(alg, p)?;
    let psi_t = |alpha: &GroupVector, i: &MultiIndex| -> Result<Scalar> {
        let x = Element::monomial(alg, Key::new(alpha.clone(), i.clone()), Scalar::one())?;
        match eval_inner(psi, &tp, &x) {
            Err(Error::OutsideTable(m)) => Err(Error::BoxTooSmall(m)),
            r => r,
        }
    };

    // ascending in i_{bar p}, so the descending branch finds its lower value
    let mut keys: Vec<&Key> = keybox.keys().collect();
    keys.sort_by_key(|k| k.index[bslot]);
    let mut f = LinearFunctional::zero();
    for k in keys {
        let alpha = &k.alpha - &sigma;
        let ab = &alpha[bslot];
        let val = if !ab.is_zero() {
            let mut v = psi_t(&alpha, &k.index)?;
            if let Some(lower) = k.index.minus_unit(bslot) {
                let lk = Key::new(k.alpha.clone(), lower);
                if !keybox.contains(&lk) {
                    return Err(Error::BoxTooSmall(format!("{lk:?}")));
                }
                v -= &(&Scalar::from_int(k.index[bslot] as i64) * &f.value(&lk));
            }
            &v * &ab.inv().expect("nonzero")
        } else {
            let up = k.index.plus_unit(bslot);
            &psi_t(&alpha, &up)? * &Scalar::from_ratio(1, k.index[bslot] as i64 + 1)
        };
        f.set(k.clone(), val);
    }

    let coboundary = Cocycle::Coboundary(f.clone());
    let mut report = ReductionReport { f, checked_pairs: 0, nonzero_residuals: 0, witness: None };
    let monos: Vec<(Key, Element)> = keybox
        .keys()
        .map(|k| Ok((k.clone(), Element::monomial(alg, k.clone(), Scalar::one())?)))
        .collect::<Result<_>>()?;
    for (k1, u) in &monos {
        for (k2, v) in &monos {
            let b = bracket_structural(u, v)?;
            if !b.terms().keys().all(|k| keybox.contains(k)) {
                continue;
            }
            report.checked_pairs += 1;
            let r = &eval_inner(psi, u, v)? - &eval_inner(&coboundary, u, v)?;
            if !r.is_zero() {
                report.nonzero_residuals += 1;
                if report.witness.is_none() {
                    report.witness = Some((k1.clone(), k2.clone(), r));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct H2Report {
    pub dimension: usize,
    /// `phi_p`, `phi'_p` for `p` in `I_1`, then `phi_mu` over the Hom* basis
    pub generators: Vec<Cocycle>,
}

pub fn h2_report(alg: &Arc<Algebra>) -> H2Report {
    let s = alg.shape();
    if !s.is_pure_first_block() {
        return H2Report { dimension: 0, generators: vec![] };
    }
    let mut generators: Vec<Cocycle> = s.blocks(1, 1).flat_map(|p| [Cocycle::PhiP(p), Cocycle::PhiPPrime(p)]).collect();
    generators.extend(hom_star_complement(alg).into_iter().map(Cocycle::PhiMu));
    H2Report { dimension: generators.len(), generators }
}

/// The pairs `(x^{-sigma_p}, x^sigma)`, `(x^{lambda_p}, x^{sigma-lambda_p-sigma_p})`
/// and `(x^{g_k}, x^{sigma-g_k})`.
pub fn probe_pairs(alg: &Arc<Algebra>) -> Result<Vec<(Element, Element)>> {
    let s = alg.shape();
    let sigma = s.sigma_total();
    let x = |a: GroupVector| Element::x(alg, a);
    let mut out = Vec::new();
    for p in s.blocks(1, 1) {
        out.push((x(-&s.sigma(p))?, x(sigma.clone())?));
        let l = alg.lattice().lambda(p)?;
        out.push((x(l.clone())?, x(&(&sigma - &l) - &s.sigma(p))?));
    }
    for g in alg.lattice().basis() {
        out.push((x(g.clone())?, x(&sigma - g)?));
    }
    Ok(out)
}

fn probe_system(alg: &Arc<Algebra>, cocycles: &[Cocycle]) -> Result<(Matrix, usize, BTreeMap<Key, usize>)> {
    let pairs = probe_pairs(alg)?;
    let brackets: Vec<Element> = pairs.iter().map(|(u, v)| bracket_structural(u, v)).collect::<Result<_>>()?;
    let mut fcols: BTreeMap<Key, usize> = BTreeMap::new();
    for b in &brackets {
        for k in b.terms().keys() {
            let n = fcols.len();
            fcols.entry(k.clone()).or_insert(n);
        }
    }
    let nc = cocycles.len();
    let ncols = nc + fcols.len();
    let mut rows = Vec::with_capacity(pairs.len());
    for ((u, v), b) in pairs.iter().zip(&brackets) {
        let mut row = vec![Scalar::zero(); ncols];
        for (j, c) in cocycles.iter().enumerate() {
            row[j] = eval_inner(c, u, v)?;
        }
        for (k, c) in b.terms() {
            row[nc + fcols[k]] = c.clone();
        }
        rows.push(row);
    }
    Ok((rows, ncols, fcols))
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    /// some `f` makes `combo + psi_f` vanish on every probe pair
    pub coboundary_on_probes: bool,
    /// such an `f`, when it exists
    pub f: Option<LinearFunctional>,
}

/// Is `combo` a coboundary as far as the probe pairs can tell?
pub fn independence_probe(combo: &Cocycle, alg: &Arc<Algebra>) -> Result<IndependenceReport> {
    combo.validate(alg)?;
    if !alg.shape().is_pure_first_block() {
        return Err(Error::Precondition("independence probe needs iota_7 = l_1".into()));
    }
    let (rows, ncols, fcols) = probe_system(alg, std::slice::from_ref(combo))?;
    // combo(u,v) + f([u,v]) = 0
    let a: Matrix = rows.iter().map(|r| r[1..].to_vec()).collect();
    let b: Vec<Scalar> = rows.iter().map(|r| -&r[0]).collect();
    match linalg::solve(&a, &b, ncols - 1) {
        Some(sol) => {
            let f = LinearFunctional::new(fcols.iter().map(|(k, &j)| (k.clone(), sol[j].clone())));
            Ok(IndependenceReport { coboundary_on_probes: true, f: Some(f) })
        }
        None => Ok(IndependenceReport { coboundary_on_probes: false, f: None }),
    }
}

#[derive(Clone, Debug)]
pub struct H2IndependenceReport {
    /// number of coefficients `a_p, b_p` and Hom* coordinates
    pub unknowns: usize,
    /// `sum a_p phi_p + b_p phi'_p + phi_mu + psi_f = 0` on the probes forces
    /// every coefficient to vanish
    pub only_zero: bool,
}

pub fn h2_independence(alg: &Arc<Algebra>) -> Result<H2IndependenceReport> {
    let gens = h2_report(alg).generators;
    if gens.is_empty() {
        return Ok(H2IndependenceReport { unknowns: 0, only_zero: true });
    }
    let (rows, ncols, _) = probe_system(alg, &gens)?;
    let null = linalg::nullspace(&rows, ncols);
    let only_zero = null.iter().all(|v| v[..gens.len()].iter().all(Scalar::is_zero));
    Ok(H2IndependenceReport { unknowns: gens.len(), only_zero })
}

/// A random functional on the box.
pub fn random_functional(alg: &Arc<Algebra>, keybox: &KeyBox, rng: &mut impl Rng) -> LinearFunctional {
    let sampler = Sampler::new(alg);
    let mut values = Vec::new();
    for k in keybox.keys() {
        if rng.gen_bool(0.5) {
            values.push((k.clone(), sampler.coefficient(rng)));
        }
    }
    LinearFunctional::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::mu_component;

    fn f1() -> Arc<Algebra> {
        Algebra::from_int_basis([1, 0, 0, 0, 0, 0, 0], &[&[1, 0], &[0, 1]]).unwrap()
    }

    fn x(a: &Arc<Algebra>, v: &[i64]) -> Element {
        Element::x_ints(a, v).unwrap()
    }

    #[test]
    fn phi_values() {
        let a = f1();
        let v = eval_cocycle(&Cocycle::PhiP(1), &x(&a, &[2, 0]), &x(&a, &[-2, 0])).unwrap();
        assert_eq!(v, Scalar::from_int(2));
        assert!(eval_cocycle(&Cocycle::PhiP(1), &x(&a, &[1, 0]), &x(&a, &[0, 1])).unwrap().is_zero());
        assert!(eval_cocycle(&Cocycle::PhiPPrime(1), &x(&a, &[2, 0]), &x(&a, &[-2, 0])).unwrap().is_zero());
        let f = LinearFunctional::new([(Key::new(GroupVector::from_ints(&[2, 2]), MultiIndex::zeros(2)), Scalar::one())]);
        let v = eval_cocycle(&Cocycle::Coboundary(f), &x(&a, &[1, 0]), &x(&a, &[0, 1])).unwrap();
        assert_eq!(v, Scalar::one());
    }

    #[test]
    fn phi_needs_pure_shape() {
        let a = Algebra::from_int_basis([0, 0, 0, 1, 0, 0, 0], &[&[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(eval_cocycle(&Cocycle::PhiP(1), &Element::one(&a), &Element::one(&a)), Err(Error::Precondition(_))));
    }

    #[test]
    fn laws() {
        let a = f1();
        for c in [Cocycle::PhiP(1), Cocycle::PhiPPrime(1), Cocycle::Combo(vec![]), Cocycle::PhiMu(mu_component(&a, 1).unwrap())] {
            let r = check_cocycle_laws(&c, &a, 200, 5).unwrap();
            assert!(r.passed(), "{c:?}: {:?}", r.witness);
        }
        let b = KeyBox::degree_box(&a, 1, 0);
        let keys: Vec<Key> = b.keys().cloned().collect();
        let values = keys
            .iter()
            .flat_map(|k| keys.iter().map(move |l| ((k.clone(), l.clone()), Scalar::one())))
            .collect();
        let sym = Cocycle::Table(CocycleTable { keybox: b, values });
        let r = check_cocycle_laws(&sym, &a, 50, 5).unwrap();
        assert!(r.skew_failures > 0);
    }

    #[test]
    fn reduction_of_zero_and_coboundaries() {
        let a = Algebra::from_int_basis([0, 0, 0, 1, 0, 0, 0], &[&[1, 0], &[0, 1]]).unwrap();
        let b = KeyBox::degree_box(&a, 1, 2);
        let r = reduce_cocycle(&Cocycle::Combo(vec![]), &a, &b, 1).unwrap();
        assert!(r.f.values().is_empty() && r.residual_vanishes());
        let g = random_functional(&a, &b, &mut sample_rng(1, 0));
        let r = reduce_cocycle(&Cocycle::Coboundary(g.clone()), &a, &b, 1).unwrap();
        assert!(r.checked_pairs > 0);
        assert!(r.residual_vanishes(), "{:?}", r.witness);
        assert_eq!(r.f, g);
    }

    #[test]
    fn h2() {
        assert_eq!(h2_report(&Algebra::from_int_basis([0, 0, 0, 1, 0, 0, 0], &[&[1, 0], &[0, 1]]).unwrap()).dimension, 0);
        let r = h2_report(&f1());
        assert_eq!(r.generators, vec![Cocycle::PhiP(1), Cocycle::PhiPPrime(1)]);
        assert!(h2_independence(&f1()).unwrap().only_zero);
    }

    #[test]
    fn probes() {
        let a = f1();
        assert!(!independence_probe(&Cocycle::PhiP(1), &a).unwrap().coboundary_on_probes);
        assert!(independence_probe(&Cocycle::Combo(vec![]), &a).unwrap().coboundary_on_probes);
        let r = independence_probe(&Cocycle::PhiMu(mu_component(&a, 1).unwrap()), &a).unwrap();
        assert!(r.coboundary_on_probes);
        // f(x^{sigma_1 + sigma}) = -c_1 with c_1 = 1
        let k = Key::new(GroupVector::from_ints(&[2, 2]), MultiIndex::zeros(2));
        assert_eq!(r.f.unwrap().value(&k), Scalar::from_int(-1));
    }
}
