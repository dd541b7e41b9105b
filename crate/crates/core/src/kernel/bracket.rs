//! The Poisson bracket (two independent formulations), the basic
//! operators, and the index maps attached to monomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::element::{add_term, Algebra, Element};
use super::scalar::Scalar;
use super::vector::{GroupVector, Key, MultiIndex};
use crate::error::{Error, Result};

/// Structural bracket: four sums of closed-form coefficients.
pub fn bracket_structural(u: &Element, v: &Element) -> Result<Element> {
    u.check_compatible(v)?;
    let alg = u.algebra();
    let mut out = BTreeMap::new();
    for (k1, c1) in u.terms() {
        for (k2, c2) in v.terms() {
            bracket_keys(alg, u.is_extended(), k1, k2, &(c1 * c2), &mut out);
        }
    }
    Ok(Element::from_terms_unchecked(alg, u.is_extended(), out))
}

/// Accumulate `c * [x^{k1}, x^{k2}]` into `out`.
pub(crate) fn bracket_keys(alg: &Arc<Algebra>, extended: bool, k1: &Key, k2: &Key, c: &Scalar, out: &mut BTreeMap<Key, Scalar>) {
    let s = alg.shape();
    let r = s.bracket_ranges(extended);
    let (a, i) = (&k1.alpha, &k1.index);
    let (b, j) = (&k2.alpha, &k2.index);
    let base_alpha = a + b;
    let base_index = i.plus(j);
    let int = |x: u32| Scalar::from_int(x as i64);
    // Every term for index p carries the group part sigma_p + alpha + beta.
    let shifted = |p: usize| {
        let mut g = base_alpha.clone();
        let sp = s.sigma(p);
        for slot in 0..g.len() {
            if !sp[slot].is_zero() {
                g[slot] += &sp[slot];
            }
        }
        g
    };
    let mut emit = |p: usize, coef: Scalar, index: MultiIndex| {
        if !coef.is_zero() {
            add_term(out, Key::new(shifted(p), index), &coef * c);
        }
    };
    for &p in &r.gg {
        let (sp, sb) = (s.slot(p), s.slot(s.bar(p)));
        let coef = &(&a[sp] * &b[sb]) - &(&a[sb] * &b[sp]);
        emit(p, coef, base_index.clone());
    }
    for &p in &r.gd {
        let (sp, sb) = (s.slot(p), s.slot(s.bar(p)));
        let coef = &(&a[sp] * &int(j[sb])) - &(&int(i[sb]) * &b[sp]);
        if !coef.is_zero() {
            emit(p, coef, base_index.minus_unit(sb).expect("nonzero coefficient needs i+j > 0"));
        }
    }
    for &p in &r.dg {
        let (sp, sb) = (s.slot(p), s.slot(s.bar(p)));
        let coef = &(&int(i[sp]) * &b[sb]) - &(&int(j[sp]) * &a[sb]);
        if !coef.is_zero() {
            emit(p, coef, base_index.minus_unit(sp).expect("nonzero coefficient needs i+j > 0"));
        }
    }
    for &p in &r.dd {
        let (sp, sb) = (s.slot(p), s.slot(s.bar(p)));
        let coef = i[sp] as i64 * j[sb] as i64 - i[sb] as i64 * j[sp] as i64;
        if coef != 0 {
            let idx = base_index.minus_unit(sp).and_then(|x| x.minus_unit(sb)).expect("nonzero coefficient");
            emit(p, Scalar::from_int(coef), idx);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// `x^{alpha,i} -> alpha_p x^{alpha,i}`
    Grading,
    /// `x^{alpha,i} -> i_p x^{alpha,i-eps_p}`
    DownGrading,
    /// sum of the two
    Mixed,
}

pub fn apply_operator(kind: OperatorKind, p: usize, u: &Element) -> Result<Element> {
    let s = u.algebra().shape();
    s.check_index(p)?;
    let slot = s.slot(p);
    Ok(u.map_terms(|k, c, out| {
        if kind != OperatorKind::DownGrading && !k.alpha[slot].is_zero() {
            add_term(out, k.clone(), c * &k.alpha[slot]);
        }
        if kind != OperatorKind::Grading {
            if let Some(idx) = k.index.minus_unit(slot) {
                let f = Scalar::from_int(k.index[slot] as i64);
                add_term(out, Key::new(k.alpha.clone(), idx), c * &f);
            }
        }
    }))
}

/// `sum_{p in I} x^{sigma_p} (d_p u d_{bar p} v - d_{bar p} u d_p v)` with
/// the mixed operators `d_p`.
pub fn bracket_defining(u: &Element, v: &Element) -> Result<Element> {
    u.check_compatible(v)?;
    let alg = u.algebra();
    let s = alg.shape();
    let mut acc = Element::zero(alg);
    if u.is_extended() {
        acc = acc.to_extended();
    }
    for p in s.blocks(1, 7) {
        let bp = s.bar(p);
        let du = apply_operator(OperatorKind::Mixed, p, u)?;
        let dbu = apply_operator(OperatorKind::Mixed, bp, u)?;
        let dv = apply_operator(OperatorKind::Mixed, p, v)?;
        let dbv = apply_operator(OperatorKind::Mixed, bp, v)?;
        let inner = du.multiply(&dbv)?.try_sub(&dbu.multiply(&dv)?)?;
        if inner.is_zero() {
            continue;
        }
        let dim = s.dim();
        let shift = Element::from_key_unchecked(alg, u.is_extended(), Key::new(s.sigma(p), MultiIndex::zeros(dim)), Scalar::one());
        acc = acc.try_add(&shift.multiply(&inner)?)?;
    }
    Ok(acc)
}

/// The eigenvalue fingerprint `pi(alpha)`, one value per index of `I_{1,6}`.
pub fn pi_map(alg: &Algebra, alpha: &GroupVector) -> Result<Vec<Scalar>> {
    if !alg.lattice().contains(alpha) {
        return Err(Error::NotInLattice(alpha.clone()));
    }
    Ok(pi_unchecked(alg, alpha))
}

pub(crate) fn pi_unchecked(alg: &Algebra, alpha: &GroupVector) -> Vec<Scalar> {
    let s = alg.shape();
    s.blocks(1, 6).map(|p| pi_component(alg, p, alpha)).collect()
}

/// Component `p` of `pi`, for `p` in `I_{1,6}`.
pub fn pi_component(alg: &Algebra, p: usize, alpha: &GroupVector) -> Scalar {
    let s = alg.shape();
    let a = &alpha[s.slot(p)];
    let ab = &alpha[s.slot(s.bar(p))];
    match s.block_of(p) {
        1 | 3 | 4 => a - ab,
        2 => -ab,
        5 | 6 => -a,
        _ => panic!("pi has no component for I_7"),
    }
}

/// Level and support of a basis label.
pub fn monomial_stats(alg: &Algebra, key: &Key) -> (u64, Vec<usize>) {
    let s = alg.shape();
    let support = s
        .all_indices()
        .filter(|&p| {
            let slot = s.slot(p);
            !key.alpha[slot].is_zero() || key.index[slot] != 0
        })
        .collect();
    (key.index.level(), support)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetKind {
    H1,
    H2,
    H3,
    M,
    /// with the value of `pi`
    MMu(Vec<Scalar>),
}

pub fn set_membership(which: &SetKind, u: &Element) -> bool {
    let alg = u.algebra();
    let s = alg.shape();
    let dim = s.dim();
    let j14: Vec<usize> = s.paired_blocks(1, 4).collect();
    let bar56: Vec<usize> = s.barred_blocks(5, 6).collect();
    // i vanishes on J_{1,4} u bar I_{5,6}; alpha on J_{1,4}.
    let h3_key = |key: &Key| {
        j14.iter().all(|&p| key.alpha[s.slot(p)].is_zero() && key.index[s.slot(p)] == 0)
            && bar56.iter().all(|&p| key.index[s.slot(p)] == 0)
    };
    match which {
        SetKind::H1 => {
            let Some((key, _)) = u.as_monomial() else { return false };
            if u.is_extended() {
                return false;
            }
            let neg_sigma = s.blocks(1, 4).any(|p| *key == Key::new(-&s.sigma(p), MultiIndex::zeros(dim)));
            let t_bar = s.blocks(5, 6).any(|q| {
                let mut k = Key::unit(dim);
                k.index[s.slot(s.bar(q))] = 1;
                *key == k
            });
            neg_sigma || t_bar
        }
        SetKind::H2 => {
            let Some((key, _)) = u.as_monomial() else { return false };
            h3_key(key) && s.block(7).all(|p| key.index[s.slot(p)] == 0 || key.index[s.slot(s.bar(p))] == 0)
        }
        SetKind::H3 => u.terms().keys().all(h3_key),
        SetKind::M => u.terms().keys().all(|k| k.index.is_zero()),
        SetKind::MMu(mu) => u.terms().keys().all(|k| k.index.is_zero() && pi_unchecked(alg, &k.alpha) == *mu),
    }
}
