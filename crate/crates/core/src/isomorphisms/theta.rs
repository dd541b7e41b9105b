use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{bracket_structural, Algebra, Element, Key, Lattice, Scalar};
use crate::linalg::{self, Matrix};

use super::{decompose_tau, validate_preserving, verify_morphism, AlgebraMorphism, Character, PreservingIso};

/// Algebra on the image basis `tau(g_k)`; membership conditions are not
/// re-checked for these intermediate groups.
fn image_algebra(iso: &PreservingIso, source: &Arc<Algebra>) -> Result<Arc<Algebra>> {
    let m = iso.full_matrix();
    let basis = source.lattice().basis().iter().map(|g| crate::kernel::GroupVector::new(linalg::vec_mat(g.coords(), &m))).collect();
    Ok(Algebra::new(Lattice::new_unchecked(source.shape().clone(), source.field(), basis)?))
}

fn t(alg: &Arc<Algebra>, p: usize) -> Element {
    Element::t(alg, p).expect("t index allowed")
}

/// `theta_nu`: permute indices.
fn case_a(iso: &PreservingIso, source: &Arc<Algebra>) -> Result<AlgebraMorphism> {
    let s = source.shape();
    let target = image_algebra(iso, source)?;
    let mut images = BTreeMap::new();
    for p in s.t_indices() {
        let q = if s.block_of(p) <= 4 {
            let img = iso.nu[s.base(p) - 1];
            if s.is_barred(p) {
                s.bar(img)
            } else {
                img
            }
        } else {
            p
        };
        images.insert(p, t(&target, q));
    }
    AlgebraMorphism::new(source, &target, iso.full_matrix(), Character::trivial(source), images)
}

/// `theta` for `tau_1 = diag(A_p, B55, B66)`.
fn case_b(iso: &PreservingIso, source: &Arc<Algebra>, chi: &[Scalar]) -> Result<AlgebraMorphism> {
    let s = source.shape();
    let target = image_algebra(iso, source)?;
    let mut images = BTreeMap::new();
    for p in s.blocks(2, 2) {
        images.insert(p, t(&target, p));
    }
    for q in s.blocks(3, 3) {
        images.insert(q, t(&target, q).scale(&iso.b[q - 1]));
    }
    for r in s.blocks(4, 4) {
        let br = s.bar(r);
        let b = &iso.b[r - 1];
        let m = linalg::inverse(&iso.a_matrix(r)).expect("det A_r = b_r != 0");
        // (-s_br, s_r) = b_r (-t'_br, t'_r) A_r^{-1}
        let tb = t(&target, br);
        let tr = t(&target, r);
        images.insert(br, (&tb.scale(&m[0][0]) - &tr.scale(&m[1][0])).scale(b));
        images.insert(r, (&tr.scale(&m[1][1]) - &tb.scale(&m[0][1])).scale(b));
    }
    let q56: Vec<usize> = s.blocks(5, 6).collect();
    let l5 = s.l()[4];
    let mut diag = linalg::zeros(q56.len(), q56.len());
    super::put(&mut diag, 0, 0, iso.block(super::Block::B55));
    super::put(&mut diag, l5, l5, iso.block(super::Block::B66));
    let inv = linalg::inverse(&diag).expect("checked");
    for (j, &qj) in q56.iter().enumerate() {
        let mut acc = Element::zero(&target);
        for (i, &qi) in q56.iter().enumerate() {
            acc = &acc + &t(&target, s.bar(qi)).scale(&inv[i][j]);
        }
        images.insert(s.bar(qj), acc);
    }
    let q6: Vec<usize> = s.blocks(6, 6).collect();
    let b66 = iso.block(super::Block::B66);
    for (j, &qj) in q6.iter().enumerate() {
        let mut acc = Element::zero(&target);
        for (i, &qi) in q6.iter().enumerate() {
            acc = &acc + &t(&target, qi).scale(&b66[j][i]);
        }
        images.insert(qj, acc);
    }
    for p in s.paired_blocks(7, 7) {
        images.insert(p, t(&target, p));
    }
    let chi = Character::new(source, chi.to_vec())?;
    AlgebraMorphism::new(source, &target, iso.full_matrix(), chi, images)
}

/// One linear constraint with a readable origin.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseCEquation {
    pub coeffs: Vec<Scalar>,
    pub rhs: Scalar,
    pub label: String,
}

/// A linear system on the correction unknowns.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CaseCSystem {
    pub unknowns: Vec<String>,
    pub equations: Vec<CaseCEquation>,
}

impl CaseCSystem {
    fn matrix(&self, upto: usize) -> (Matrix, Vec<Scalar>) {
        let eqs = &self.equations[..upto];
        (eqs.iter().map(|e| e.coeffs.clone()).collect(), eqs.iter().map(|e| e.rhs.clone()).collect())
    }

    /// Particular solution (free unknowns zero) and a nullspace basis; an
    /// inconsistent system names the first equation that breaks it.
    pub fn solve(&self) -> Result<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
        let n = self.unknowns.len();
        let (a, b) = self.matrix(self.equations.len());
        if let Some(x) = linalg::solve(&a, &b, n) {
            return Ok((x, linalg::nullspace(&a, n)));
        }
        let mut lo = 0;
        let mut hi = self.equations.len();
        // smallest prefix that is inconsistent
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            let (a, b) = self.matrix(mid);
            if linalg::solve(&a, &b, n).is_some() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(Error::CaseCInconsistent(self.equations[hi - 1].label.clone()))
    }

    /// Add `constant + sum_u x_u * forms[u] = 0`, one equation per key.
    fn push_forms(&mut self, constant: &Element, forms: &[Element], label: &str) {
        let mut keys: BTreeSet<&Key> = constant.terms().keys().collect();
        for f in forms {
            keys.extend(f.terms().keys());
        }
        for k in keys {
            let coeffs: Vec<Scalar> = forms.iter().map(|f| f.coefficient(k)).collect();
            let rhs = -&constant.coefficient(k);
            if coeffs.iter().all(Scalar::is_zero) && rhs.is_zero() {
                continue;
            }
            self.equations.push(CaseCEquation { coeffs, rhs, label: format!("{label} at {k:?}") });
        }
    }
}

/// The correction matrices of the `tau_2` case together with the map.
#[derive(Clone, Debug)]
pub struct CaseCSolution {
    pub e1: Matrix,
    pub e2: Matrix,
    pub e3: Matrix,
    pub e4: Matrix,
    pub morphism: AlgebraMorphism,
}

struct Unknown {
    /// J index of the `t` whose image receives this term
    owner: usize,
    term: Element,
    /// matrix number, row, column
    slot: (usize, usize, usize),
}

fn image_of_zero_index(theta_x: impl Fn(&Key) -> Result<Element>, u: &Element, target: &Arc<Algebra>) -> Result<Element> {
    let mut acc = Element::zero(target);
    for (k, c) in u.terms() {
        if !k.index.is_zero() {
            return Err(Error::CaseCInconsistent(format!("bracket term {k:?} carries t factors")));
        }
        acc = acc.try_add(&theta_x(k)?.scale(c))?;
    }
    Ok(acc)
}

/// Solve for `E_1..E_4` so that the map with `x^alpha -> x'^{tau alpha}`
/// and the corrected `t` images is a morphism.
pub fn solve_case_c(iso: &PreservingIso, source: &Arc<Algebra>) -> Result<CaseCSolution> {
    iso.check()?;
    if !iso.is_unipotent() {
        return Err(Error::Precondition("case c needs a unipotent tau".into()));
    }
    let s = source.shape().clone();
    let target = image_algebra(iso, source)?;
    let matrix = iso.full_matrix();
    let theta_x = |k: &Key| -> Result<Element> {
        Element::x(&target, crate::kernel::GroupVector::new(linalg::vec_mat(k.alpha.coords(), &matrix)))
    };

    // bar-vector orderings
    let k1: Vec<usize> = s
        .blocks(2, 4)
        .flat_map(|q| if s.block_of(q) == 4 { vec![s.bar(q), q] } else { vec![q] })
        .collect();
    let k2: Vec<usize> = s.blocks(5, 6).map(|q| s.bar(q)).collect();
    let r6: Vec<usize> = s.blocks(6, 6).collect();
    let r4: Vec<usize> = s.blocks(1, 4).collect();
    let sign = |k: usize| Scalar::from_int(s.sgn(k));

    let mut base: BTreeMap<usize, Element> = s.t_indices().into_iter().map(|p| (p, t(&target, p))).collect();
    let mut unknowns: Vec<Unknown> = Vec::new();
    for (j, &k) in k1.iter().enumerate() {
        for (i, &q) in r6.iter().enumerate() {
            unknowns.push(Unknown { owner: k, term: t(&target, q).scale(&sign(k)), slot: (1, i, j) });
        }
    }
    for (j, &k) in k2.iter().enumerate() {
        base.insert(k, Element::zero(&target));
        for (i, &ki) in k2.iter().enumerate() {
            unknowns.push(Unknown { owner: k, term: t(&target, ki), slot: (2, i, j) });
        }
        for (i, &q) in r6.iter().enumerate() {
            unknowns.push(Unknown { owner: k, term: t(&target, q).neg(), slot: (3, i, j) });
        }
        for (i, &r) in r4.iter().enumerate() {
            let x = Element::x(&target, -&s.sigma(r)).expect("sigma in the image group");
            unknowns.push(Unknown { owner: k, term: x.neg(), slot: (4, i, j) });
        }
    }
    let labels: Vec<String> = unknowns.iter().map(|u| format!("E{}[{}][{}]", u.slot.0, u.slot.1, u.slot.2)).collect();

    // Stage 1: (t_p, x^alpha) is linear in the unknowns.
    let basis = source.lattice().basis();
    let mut probes: Vec<crate::kernel::GroupVector> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        probes.push(g.clone());
        probes.push(-g);
        for h in &basis[i + 1..] {
            probes.push(g + h);
        }
    }
    let mut stage1 = CaseCSystem { unknowns: labels.clone(), equations: Vec::new() };
    for &p in base.keys() {
        for alpha in &probes {
            let x = Element::x(source, alpha.clone())?;
            let tx = theta_x(&Key::new(alpha.clone(), crate::kernel::MultiIndex::zeros(s.dim())))?;
            let rhs = image_of_zero_index(theta_x, &bracket_structural(&t(source, p), &x)?, &target)?;
            let constant = bracket_structural(&base[&p], &tx)?.try_sub(&rhs)?;
            let forms: Vec<Element> = unknowns
                .iter()
                .map(|u| if u.owner == p { bracket_structural(&u.term, &tx) } else { Ok(Element::zero(&target)) })
                .collect::<Result<_>>()?;
            stage1.push_forms(&constant, &forms, &format!("[t{p}, x^{alpha:?}]"));
        }
    }
    let (e0, null) = stage1.solve()?;

    // Stage 2: substitute; (t_p, t_q) must then be linear in what is left.
    let image_with = |coeffs: &[Scalar], include_base: bool| -> BTreeMap<usize, Element> {
        let mut out: BTreeMap<usize, Element> = base
            .iter()
            .map(|(&p, b)| (p, if include_base { b.clone() } else { Element::zero(&target) }))
            .collect();
        for (u, c) in unknowns.iter().zip(coeffs) {
            if !c.is_zero() {
                let e = out.get_mut(&u.owner).expect("owner has an image");
                *e = &*e + &u.term.scale(c);
            }
        }
        out
    };
    let s0 = image_with(&e0, true);
    let dirs: Vec<BTreeMap<usize, Element>> = null.iter().map(|v| image_with(v, false)).collect();
    let ts: Vec<usize> = base.keys().copied().collect();
    let mut stage2 = CaseCSystem { unknowns: (0..null.len()).map(|a| format!("z{a}")).collect(), equations: Vec::new() };
    for (i, &p) in ts.iter().enumerate() {
        for &q in &ts[i + 1..] {
            let rhs = image_of_zero_index(theta_x, &bracket_structural(&t(source, p), &t(source, q))?, &target)?;
            let constant = bracket_structural(&s0[&p], &s0[&q])?.try_sub(&rhs)?;
            let mut forms = Vec::with_capacity(dirs.len());
            for d in &dirs {
                forms.push(bracket_structural(&d[&p], &s0[&q])?.try_add(&bracket_structural(&s0[&p], &d[&q])?)?);
            }
            for a in 0..dirs.len() {
                for b in a..dirs.len() {
                    let mut quad = bracket_structural(&dirs[a][&p], &dirs[b][&q])?;
                    if a != b {
                        quad = quad.try_add(&bracket_structural(&dirs[b][&p], &dirs[a][&q])?)?;
                    }
                    if !quad.is_zero() {
                        return Err(Error::CaseCInconsistent(format!(
                            "[t{p}, t{q}] is quadratic in the undetermined corrections"
                        )));
                    }
                }
            }
            stage2.push_forms(&constant, &forms, &format!("[t{p}, t{q}]"));
        }
    }
    let (z, _) = stage2.solve()?;
    let mut e = e0;
    for (za, v) in z.iter().zip(&null) {
        for (ei, vi) in e.iter_mut().zip(v) {
            *ei += &(za * vi);
        }
    }
    let images = image_with(&e, true);
    let morphism = AlgebraMorphism::new(source, &target, matrix.clone(), Character::trivial(source), images)?;
    let check = verify_morphism(&morphism, 0, 0);
    if let Some((law, u, v)) = check.witness {
        return Err(Error::CaseCInconsistent(format!("substitution check failed: {law} on {u:?}, {v:?}")));
    }

    let mut mats = [
        linalg::zeros(r6.len(), k1.len()),
        linalg::zeros(k2.len(), k2.len()),
        linalg::zeros(r6.len(), k2.len()),
        linalg::zeros(r4.len(), k2.len()),
    ];
    for (u, c) in unknowns.iter().zip(&e) {
        let (m, i, j) = u.slot;
        mats[m - 1][i][j] = c.clone();
    }
    let [e1, e2, e3, e4] = mats;
    Ok(CaseCSolution { e1, e2, e3, e4, morphism })
}

/// `theta = theta_nu . theta_1 . theta_2` for a validated iso and a
/// character with `chi(sigma_p) = b_p`.
pub fn build_theta(iso: &PreservingIso, chi: &Character, target: &Arc<Algebra>) -> Result<AlgebraMorphism> {
    let source = chi.algebra();
    let report = validate_preserving(iso, source.lattice(), target.lattice())?;
    if let Some(f) = report.failure {
        return Err(Error::InvalidIso(format!("{f:?}")));
    }
    let s = source.shape();
    for p in s.blocks(1, 4) {
        let v = chi.eval(&s.sigma(p))?;
        if v != iso.b[p - 1] {
            return Err(Error::InvalidIso(format!("chi(sigma_{p}) = {v} but b_{p} = {}", iso.b[p - 1])));
        }
    }
    let (nu, t1, t2) = decompose_tau(iso);
    let theta2 = solve_case_c(&t2, source)?.morphism;
    let theta1 = case_b(&t1, theta2.target(), chi.values())?;
    let theta_nu = case_a(&nu, theta1.target())?;
    theta2.then(&theta1)?.then(&theta_nu)?.with_target(target)
}
