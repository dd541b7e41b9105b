//! ad-orbits, the sandwich sets `H_1`, `H_2`, `H_3`, eigenvector sets,
//! `M^F` / `M^N` membership and the `M_0`-module identity on `M_mu`.
//!
//! Local finiteness is only semi-decidable, so every classifier output is
//! either structural (closed-form set descriptions) or empirical (orbit
//! iteration). [`classify`] reports both and whether they agree.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::kernel::{
    bracket_structural, monomial_stats, pi_unchecked, set_membership, Algebra, Element, GroupVector, Key, MultiIndex,
    Scalar, SetKind,
};
use crate::linalg::{self, Matrix};
use crate::sampling::{sample_rng, Sampler};

#[derive(Clone, Debug)]
pub struct AdOrbitReport {
    pub u: Element,
    pub v: Element,
    /// `ad_u^n(v)` for `n = 0..`
    pub powers: Vec<Element>,
    /// dimension of the span of `powers[..=n]`
    pub span_dims: Vec<usize>,
    pub nilpotent_at: Option<usize>,
}

impl AdOrbitReport {
    /// Every power adds a new dimension.
    pub fn strictly_growing(&self) -> bool {
        self.span_dims.windows(2).all(|w| w[1] > w[0])
    }

    /// The last power adds nothing.
    pub fn stabilized(&self) -> bool {
        self.nilpotent_at.is_some() || self.span_dims.windows(2).last().is_none_or(|w| w[0] == w[1])
    }
}

fn span_dim(elems: &[Element]) -> usize {
    let mut cols: BTreeMap<&Key, usize> = BTreeMap::new();
    for e in elems {
        for k in e.terms().keys() {
            let n = cols.len();
            cols.entry(k).or_insert(n);
        }
    }
    let rows: Matrix = elems
        .iter()
        .map(|e| {
            let mut r = vec![Scalar::zero(); cols.len()];
            for (k, c) in e.terms() {
                r[cols[k]] = c.clone();
            }
            r
        })
        .collect();
    linalg::rank(&rows)
}

/// Iterate `ad_u` on `v` up to power `n`, stopping at the first zero.
pub fn ad_orbit(u: &Element, v: &Element, n: usize) -> Result<AdOrbitReport> {
    if n == 0 {
        return Err(Error::Precondition("ad_orbit needs N >= 1".into()));
    }
    u.check_compatible(v)?;
    let mut powers = vec![v.clone()];
    let mut span_dims = vec![span_dim(&powers)];
    let mut nilpotent_at = if v.is_zero() { Some(0) } else { None };
    while nilpotent_at.is_none() && powers.len() <= n {
        let next = bracket_structural(u, powers.last().expect("nonempty"))?;
        let zero = next.is_zero();
        powers.push(next);
        span_dims.push(span_dim(&powers));
        if zero {
            nilpotent_at = Some(powers.len() - 1);
        }
    }
    Ok(AdOrbitReport { u: u.clone(), v: v.clone(), powers, span_dims, nilpotent_at })
}

/// `(bar I_{5,6} u J_7) \ supp(u)`.
fn descent_indices(alg: &Algebra, key: &Key) -> Vec<usize> {
    let s = alg.shape();
    let (_, supp) = monomial_stats(alg, key);
    s.barred_blocks(5, 6).chain(s.paired_blocks(7, 7)).filter(|p| !supp.contains(p)).collect()
}

#[derive(Clone, Debug)]
pub struct NilpotencyReport {
    /// `1 + sum of j_p` over the descent indices
    pub m: usize,
    /// `ad_u^m(v) = 0`
    pub verified: bool,
    /// `ad_u^{m-1}(v) != 0` is predicted: every descent index `c` with
    /// `j_c > 0` has `bar c` in the support of `u`
    pub leading_nonzero: bool,
    /// `ad_u^{m-1}(v) != 0`
    pub nonzero_before: bool,
}

/// Check `ad_u^m(v) = 0` for the bound `m` attached to `u` in `H_2`.
pub fn nilpotency_bound_check(u: &Element, v: &Element) -> Result<NilpotencyReport> {
    u.check_compatible(v)?;
    if !set_membership(&SetKind::H2, u) {
        return Err(Error::Precondition("u is not in H_2".into()));
    }
    let (vk, _) = v.as_monomial().ok_or_else(|| Error::Precondition("v must be a monomial".into()))?;
    let alg = u.algebra();
    let s = alg.shape();
    let (uk, _) = u.as_monomial().expect("H_2 elements are monomials");
    let (_, supp) = monomial_stats(alg, uk);
    let desc = descent_indices(alg, uk);
    let m = 1 + desc.iter().map(|&p| vk.index[s.slot(p)] as usize).sum::<usize>();
    let leading_nonzero = desc.iter().all(|&c| vk.index[s.slot(c)] == 0 || supp.contains(&s.bar(c)));
    let mut cur = v.clone();
    let mut before = v.clone();
    for _ in 0..m {
        before = cur.clone();
        cur = bracket_structural(u, &cur)?;
    }
    Ok(NilpotencyReport { m, verified: cur.is_zero(), leading_nonzero, nonzero_before: !before.is_zero() })
}

/// Every term of `[u, v]` lowers `j_p` for some descent index `p`.
pub fn support_decrease_holds(u: &Element, v: &Element) -> Result<bool> {
    let alg = u.algebra();
    let s = alg.shape();
    let (uk, _) = u.as_monomial().ok_or_else(|| Error::Precondition("u must be a monomial".into()))?;
    let (vk, _) = v.as_monomial().ok_or_else(|| Error::Precondition("v must be a monomial".into()))?;
    let desc = descent_indices(alg, uk);
    let b = bracket_structural(u, v)?;
    Ok(b.terms().keys().all(|k| desc.iter().any(|&p| k.index[s.slot(p)] < vk.index[s.slot(p)])))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenClass {
    /// the zero vector, in every `M_mu`
    Zero,
    Mu(Vec<Scalar>),
    NotEigen,
}

#[derive(Clone, Debug)]
pub struct EigenReport {
    /// structural: pure `x^alpha` terms with a common `pi(alpha)`
    pub class: EigenClass,
    /// empirical: `[h, u]` is a multiple of `u` for every probe `h`
    pub direct: bool,
    pub probes: usize,
}

impl EigenReport {
    pub fn consistent(&self) -> bool {
        (self.class != EigenClass::NotEigen) == self.direct
    }
}

/// The elements of `H_1` and the `H_2` elements `x^{e eps_q}` (`q` in `I_{5,6}`)
/// and `t_{bar p}` (`p` in `J_7`).
fn eigen_probes(alg: &Arc<Algebra>) -> Vec<Element> {
    let s = alg.shape();
    let mut out = Vec::new();
    for p in s.blocks(1, 4) {
        out.extend(Element::x(alg, -&s.sigma(p)));
    }
    for q in s.blocks(5, 6) {
        out.extend(Element::t(alg, s.bar(q)));
        if let Ok(e) = alg.lattice().epsilon_multiple(q) {
            out.extend(Element::x(alg, s.unit(q).scale(&e)));
        }
    }
    for p in s.paired_blocks(7, 7) {
        out.extend(Element::t(alg, p));
    }
    out
}

fn is_multiple(w: &Element, u: &Element) -> Result<bool> {
    if w.is_zero() {
        return Ok(true);
    }
    let (k, c) = u.terms().iter().next().expect("nonzero");
    let ratio = &w.coefficient(k) * &c.inv().expect("nonzero");
    Ok(w.try_sub(&u.scale(&ratio))?.is_zero())
}

pub fn eigen_membership(u: &Element, h2_samples: usize, seed: u64) -> Result<EigenReport> {
    let alg = u.algebra();
    let class = if u.is_zero() {
        EigenClass::Zero
    } else if u.terms().keys().all(|k| k.index.is_zero()) {
        let mut mus = u.terms().keys().map(|k| pi_unchecked(alg, &k.alpha));
        let first = mus.next().expect("nonzero");
        if mus.all(|m| m == first) {
            EigenClass::Mu(first)
        } else {
            EigenClass::NotEigen
        }
    } else {
        EigenClass::NotEigen
    };
    let mut probes = eigen_probes(alg);
    for n in 0..h2_samples {
        probes.push(sample_h2(alg, &mut sample_rng(seed, n as u64)));
    }
    let mut direct = true;
    if !u.is_zero() {
        for h in &probes {
            if !is_multiple(&bracket_structural(h, u)?, u)? {
                direct = false;
                break;
            }
        }
    }
    Ok(EigenReport { class, direct, probes: probes.len() })
}

/// `(in M^F, in M^N)` for `u` in `M`.
pub fn mf_mn_membership(u: &Element) -> Result<(bool, bool)> {
    if !set_membership(&SetKind::M, u) || u.is_extended() {
        return Err(Error::Precondition("element is not in M".into()));
    }
    let alg = u.algebra();
    let s = alg.shape();
    let j14: Vec<usize> = s.paired_blocks(1, 4).map(|p| s.slot(p)).collect();
    let neg_sigma: Vec<GroupVector> = s.blocks(1, 4).map(|p| -&s.sigma(p)).collect();
    let flat = |k: &Key| j14.iter().all(|&slot| k.alpha[slot].is_zero());
    let mn = u.terms().keys().all(flat);
    let mf = u.terms().keys().all(|k| flat(k) || neg_sigma.contains(&k.alpha));
    Ok((mf, mn))
}

#[derive(Clone, Debug)]
pub struct GrowthWitness {
    /// the index `p` in `I_1` driving the growth
    pub p: usize,
    pub b: Scalar,
    pub beta: GroupVector,
    pub orbit: AdOrbitReport,
    /// `prod_{m<n} (gamma_p b + m (gamma_p - gamma_{bar p}))` matched the
    /// coefficient of `x^{beta + n (gamma + sigma_p), n k}` for every `n`
    pub leading_matches: bool,
}

/// Smallest-height `b` in `e Z` with `gamma_p b + m (gamma_p - gamma_{bar p}) != 0` for `m < n`.
fn choose_b(gp: &Scalar, gbp: &Scalar, e: &Scalar, n: usize) -> Option<Scalar> {
    if gp.is_zero() {
        return None;
    }
    let step = gp - gbp;
    (1..).flat_map(|k: i64| [k, -k]).take(4 * n + 8).map(|k| &Scalar::from_int(k) * e).find(|b| {
        (0..n).all(|m| !(&(gp * b) + &(&Scalar::from_int(m as i64) * &step)).is_zero())
    })
}

/// For a monomial `x^{gamma,k}` with `gamma_p != 0` for some `p` in `I_1` and
/// `gamma != -sigma_p`, pick `beta = b eps_{bar p}` and iterate `n` powers.
pub fn growth_witness(u: &Element, n: usize) -> Result<Option<GrowthWitness>> {
    let alg = u.algebra();
    let s = alg.shape();
    let (k, _) = u.as_monomial().ok_or_else(|| Error::Precondition("u must be a monomial".into()))?;
    for p in s.block(1) {
        let bp = s.bar(p);
        let (gp, gbp) = (&k.alpha[s.slot(p)], &k.alpha[s.slot(bp)]);
        if k.alpha == -&s.sigma(p) {
            continue;
        }
        let Ok(e) = alg.lattice().epsilon_multiple(bp) else { continue };
        let Some(b) = choose_b(gp, gbp, &e, n) else { continue };
        let beta = s.unit(bp).scale(&b);
        let orbit = ad_orbit(u, &Element::x(alg, beta.clone())?, n)?;
        let mut leading_matches = true;
        let mut coeff = Scalar::one();
        let shift = &k.alpha + &s.sigma(p);
        for (m, pw) in orbit.powers.iter().enumerate() {
            let mut alpha = beta.clone();
            let mut idx = MultiIndex::zeros(s.dim());
            for _ in 0..m {
                alpha = &alpha + &shift;
                idx = idx.plus(&k.index);
            }
            let c0 = u.coefficient(k).pow(m as i64);
            if pw.coefficient(&Key::new(alpha, idx)) != &coeff * &c0 {
                leading_matches = false;
            }
            coeff = &coeff * &(&(gp * &b) + &(&Scalar::from_int(m as i64) * &(gp - gbp)));
        }
        return Ok(Some(GrowthWitness { p, b, beta, orbit, leading_matches }));
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct CyclicReport {
    pub lhs: Element,
    pub rhs: Element,
}

impl CyclicReport {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of `[x^alpha, u] = -sum_{p in I_{1,4}} alpha_p mu_p x^{sigma_p + alpha} u`
/// for `pi(alpha) = 0` and `u` in `M_mu`.
pub fn cyclic_probe(alpha: &GroupVector, u: &Element) -> Result<CyclicReport> {
    let alg = u.algebra();
    let s = alg.shape();
    if s.iota(4) == 0 {
        return Err(Error::Precondition("needs iota_4 != 0".into()));
    }
    let xa = Element::x(alg, alpha.clone())?;
    if pi_unchecked(alg, alpha).iter().any(|c| !c.is_zero()) {
        return Err(Error::Precondition("pi(alpha) must vanish".into()));
    }
    let mu = match eigen_class(u) {
        Some(EigenClass::Mu(mu)) => mu,
        Some(EigenClass::Zero) => vec![Scalar::zero(); s.iota(6)],
        _ => return Err(Error::Precondition("u must lie in some M_mu".into())),
    };
    let lhs = bracket_structural(&xa, u)?;
    let mut rhs = Element::zero(alg);
    for p in s.blocks(1, 4) {
        let c = -&(&alpha[s.slot(p)] * &mu[p - 1]);
        if !c.is_zero() {
            rhs = rhs.try_add(&Element::x(alg, &s.sigma(p) + alpha)?.multiply(u)?.scale(&c))?;
        }
    }
    Ok(CyclicReport { lhs, rhs })
}

fn eigen_class(u: &Element) -> Option<EigenClass> {
    if u.is_zero() {
        return Some(EigenClass::Zero);
    }
    let alg = u.algebra();
    if !u.terms().keys().all(|k| k.index.is_zero()) {
        return None;
    }
    let mut mus = u.terms().keys().map(|k| pi_unchecked(alg, &k.alpha));
    let first = mus.next()?;
    mus.all(|m| m == first).then_some(EigenClass::Mu(first))
}

/// Integer lattice coordinates spanning (a finite-index sublattice of)
/// `{alpha in Gamma : f(alpha) = 0}` for a linear `f`.
fn lattice_kernel(alg: &Algebra, f: impl Fn(&GroupVector) -> Vec<Scalar>) -> Vec<Vec<BigInt>> {
    let images: Vec<Vec<Scalar>> = alg.lattice().basis().iter().map(&f).collect();
    let rank = images.len();
    let m = images.first().map_or(0, Vec::len);
    let mut rows: Matrix = Vec::new();
    for j in 0..m {
        rows.push(images.iter().map(|v| Scalar::from_rational(v[j].rational_part().clone())).collect());
        rows.push(images.iter().map(|v| Scalar::from_rational(v[j].irrational_part().clone())).collect());
    }
    linalg::nullspace(&rows, rank)
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.rational_part().denom()));
            v.iter().map(|c| (c.rational_part() * &den).to_integer()).collect()
        })
        .collect()
}

fn random_combination(alg: &Algebra, basis: &[Vec<BigInt>], r: i64, rng: &mut impl Rng) -> GroupVector {
    let rank = alg.lattice().rank();
    let mut coords = vec![BigInt::zero(); rank];
    for b in basis {
        let c = BigInt::from(rng.gen_range(-r..=r));
        for (x, y) in coords.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    alg.lattice().combine(&coords)
}

/// `ker pi`, as lattice coordinates.
pub fn pi_kernel(alg: &Algebra) -> Vec<Vec<BigInt>> {
    lattice_kernel(alg, |a| pi_unchecked(alg, a))
}

/// A random monomial of `H_2`.
pub fn sample_h2(alg: &Arc<Algebra>, rng: &mut impl Rng) -> Element {
    let s = alg.shape();
    let j14: Vec<usize> = s.paired_blocks(1, 4).map(|p| s.slot(p)).collect();
    let flat = lattice_kernel(alg, |a| j14.iter().map(|&slot| a[slot].clone()).collect());
    let alpha = random_combination(alg, &flat, 2, rng);
    let mut idx = Sampler::new(alg).with_level(4).index(rng);
    for p in s.paired_blocks(1, 4).chain(s.barred_blocks(5, 6)) {
        idx[s.slot(p)] = 0;
    }
    for p in s.block(7) {
        let (a, b) = (s.slot(p), s.slot(s.bar(p)));
        if idx[a] != 0 && idx[b] != 0 {
            let drop = if rng.gen_bool(0.5) { a } else { b };
            idx[drop] = 0;
        }
    }
    let c = Sampler::new(alg).coefficient(rng);
    let u = Element::monomial(alg, Key::new(alpha, idx), c).expect("H_2 key lies in the algebra");
    debug_assert!(set_membership(&SetKind::H2, &u));
    u
}

/// A random `(alpha, u)` with `pi(alpha) = 0` and `u` a two-term element of some `M_mu`.
pub fn sample_cyclic_pair(alg: &Arc<Algebra>, rng: &mut impl Rng) -> (GroupVector, Element) {
    let ker = pi_kernel(alg);
    let alpha = random_combination(alg, &ker, 2, rng);
    let sampler = Sampler::new(alg).with_range(2);
    let beta = sampler.key(rng).alpha;
    let kappa = random_combination(alg, &ker, 2, rng);
    let u = &Element::x(alg, beta.clone()).expect("in Gamma").scale(&sampler.coefficient(rng))
        + &Element::x(alg, &beta + &kappa).expect("in Gamma").scale(&sampler.coefficient(rng));
    (alpha, u)
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub in_h1: bool,
    pub in_h2: bool,
    pub in_h3: bool,
    /// structural upper bound for `H^F`
    pub in_span_h1_h3: bool,
    /// empirical: orbits on the probe targets
    pub orbits: Vec<AdOrbitReport>,
    pub growth: Option<GrowthWitness>,
    /// no structural claim is contradicted by an orbit
    pub consistent: bool,
}

/// Structural sandwich membership plus empirical ad-orbits on seeded targets.
pub fn classify(u: &Element, n: usize, targets: usize, seed: u64) -> Result<ClassifyReport> {
    let alg = u.algebra();
    let in_h1 = set_membership(&SetKind::H1, u);
    let in_h2 = set_membership(&SetKind::H2, u);
    let in_h3 = set_membership(&SetKind::H3, u);
    let in_span_h1_h3 = u.terms().iter().all(|(k, _)| {
        let mono = Element::monomial(alg, k.clone(), Scalar::one()).expect("term key");
        set_membership(&SetKind::H1, &mono) || set_membership(&SetKind::H3, &mono)
    });
    let sampler = Sampler::new(alg).with_range(2).with_level(2);
    let mut orbits = Vec::with_capacity(targets);
    for i in 0..targets {
        orbits.push(ad_orbit(u, &sampler.monomial(&mut sample_rng(seed, i as u64)), n)?);
    }
    let growth = if u.as_monomial().is_some() && !in_span_h1_h3 { growth_witness(u, n)? } else { None };
    // H_1 and H_2 act by a scalar plus lowering of the multi-index, so the
    // orbit of x^{beta,j} stays in the span of the x^{beta',j'} with j' <= j
    let bounded = |o: &AdOrbitReport| match o.v.as_monomial() {
        Some((k, _)) if in_h1 || in_h2 => {
            let cap: usize = k.index.entries().iter().map(|&e| e as usize + 1).product();
            o.span_dims.last().copied().unwrap_or(0) <= cap
        }
        _ => true,
    };
    let consistent = orbits.iter().all(bounded) && growth.as_ref().is_none_or(|g| g.orbit.strictly_growing());
    Ok(ClassifyReport { in_h1, in_h2, in_h3, in_span_h1_h3, orbits, growth, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1() -> Arc<Algebra> {
        Algebra::from_int_basis([1, 0, 0, 0, 0, 0, 0], &[&[1, 0], &[0, 1]]).unwrap()
    }

    fn x(a: &Arc<Algebra>, v: &[i64]) -> Element {
        Element::x_ints(a, v).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let a = f1();
        let r = ad_orbit(&x(&a, &[-1, -1]), &x(&a, &[2, 1]), 4).unwrap();
        assert!(r.span_dims.iter().all(|&d| d == 1));
        let r = ad_orbit(&x(&a, &[1, 0]), &x(&a, &[0, 1]), 5).unwrap();
        assert_eq!(r.span_dims, vec![1, 2, 3, 4, 5, 6]);
        let r = ad_orbit(&Element::zero(&a), &x(&a, &[1, 0]), 3).unwrap();
        assert_eq!(r.nilpotent_at, Some(1));
        assert!(ad_orbit(&x(&a, &[1, 0]), &x(&a, &[1, 0]), 0).is_err());
    }

    #[test]
    fn growth_choice() {
        let a = f1();
        let w = growth_witness(&x(&a, &[1, 0]), 5).unwrap().unwrap();
        assert_eq!(w.b, Scalar::one());
        assert!(w.orbit.strictly_growing());
        assert!(w.leading_matches);
        assert!(growth_witness(&x(&a, &[-1, -1]), 5).unwrap().is_none());
    }

    #[test]
    fn nilpotency_examples() {
        let a = Algebra::from_int_basis([0, 0, 0, 0, 0, 0, 1], &[]).unwrap();
        let t = |i: &[u32]| Element::monomial(&a, Key::new(GroupVector::zeros(2), MultiIndex::new(i.to_vec())), Scalar::one()).unwrap();
        let r = nilpotency_bound_check(&t(&[2, 0]), &t(&[1, 3])).unwrap();
        assert_eq!(r.m, 4);
        assert!(r.verified && r.leading_nonzero && r.nonzero_before);
        let r = nilpotency_bound_check(&Element::one(&a), &t(&[1, 3])).unwrap();
        assert_eq!(r.m, 5);
        assert!(r.verified);

        let a = Algebra::from_int_basis([0, 0, 0, 0, 1, 0, 0], &[&[1, 0]]).unwrap();
        let u = x(&a, &[1, 0]);
        let v = Element::monomial(&a, Key::new(GroupVector::zeros(2), MultiIndex::new(vec![0, 2])), Scalar::one()).unwrap();
        let r = nilpotency_bound_check(&u, &v).unwrap();
        assert_eq!(r.m, 3);
        assert!(r.verified && r.nonzero_before);
        assert!(nilpotency_bound_check(&Element::t(&a, 2).unwrap(), &v).is_err());
    }

    #[test]
    fn eigen_examples() {
        let a = f1();
        let r = eigen_membership(&x(&a, &[2, 0]), 5, 1).unwrap();
        assert_eq!(r.class, EigenClass::Mu(vec![Scalar::from_int(2)]));
        assert!(r.direct);
        let r = eigen_membership(&(&x(&a, &[2, 0]) + &x(&a, &[0, 2])), 5, 1).unwrap();
        assert_eq!(r.class, EigenClass::NotEigen);
        assert!(r.consistent());
        assert_eq!(eigen_membership(&Element::zero(&a), 5, 1).unwrap().class, EigenClass::Zero);
    }

    #[test]
    fn mf_mn_examples() {
        let a = f1();
        assert_eq!(mf_mn_membership(&x(&a, &[-1, -1])).unwrap(), (true, false));
        assert_eq!(mf_mn_membership(&x(&a, &[1, 0])).unwrap(), (false, false));
        assert_eq!(mf_mn_membership(&Element::one(&a)).unwrap(), (true, true));
    }

    #[test]
    fn cyclic_examples() {
        let a = f1();
        let r = cyclic_probe(&GroupVector::from_ints(&[1, 1]), &x(&a, &[2, 0])).unwrap();
        assert_eq!(r.lhs, x(&a, &[4, 2]).scale(&Scalar::from_int(-2)));
        assert!(r.equal());
        let r = cyclic_probe(&GroupVector::zeros(2), &x(&a, &[2, 0])).unwrap();
        assert!(r.lhs.is_zero() && r.equal());
        let b = Algebra::from_int_basis([1, 0, 0, 0, 1, 0, 0], &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]).unwrap();
        // mu_{I_1} = 0, mu_2 = -1
        let r = cyclic_probe(&GroupVector::from_ints(&[1, 1, 0, 0]), &Element::x_ints(&b, &[1, 1, 1, 0]).unwrap()).unwrap();
        assert!(r.lhs.is_zero() && r.equal());
    }
}
