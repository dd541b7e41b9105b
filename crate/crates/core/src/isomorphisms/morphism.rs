use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{bracket_structural, same_algebra, Algebra, Element, GroupVector, Key};
use crate::linalg::{self, Matrix};
use crate::sampling::{sample_rng, Sampler};

use super::Character;

/// A Poisson algebra map `H -> H'` fixed by `x^alpha -> chi(alpha) x'^{alpha M}`
/// and the images of the `t_p`, extended multiplicatively.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    /// row-vector action on full coordinate vectors
    matrix: Matrix,
    character: Character,
    /// keyed by J index, one per `t_p` in the source
    t_images: BTreeMap<usize, Element>,
}

impl AlgebraMorphism {
    pub fn new(
        source: &Arc<Algebra>,
        target: &Arc<Algebra>,
        matrix: Matrix,
        character: Character,
        t_images: BTreeMap<usize, Element>,
    ) -> Result<AlgebraMorphism> {
        if source.shape() != target.shape() {
            return Err(Error::ShapeMismatch);
        }
        let dim = source.dim();
        if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
            return Err(Error::WrongLength { expected: dim, found: matrix.len() });
        }
        if !same_algebra(character.algebra(), source) {
            return Err(Error::MixedAlgebra);
        }
        for g in source.lattice().basis() {
            let img = GroupVector::new(linalg::vec_mat(g.coords(), &matrix));
            if !target.lattice().contains(&img) {
                return Err(Error::NotInLattice(img));
            }
        }
        for p in source.shape().t_indices() {
            let img = t_images.get(&p).ok_or_else(|| Error::Precondition(format!("no image for t{p}")))?;
            if !same_algebra(img.algebra(), target) || img.is_extended() {
                return Err(Error::MixedAlgebra);
            }
        }
        if t_images.keys().any(|&p| !source.shape().t_allowed(p)) {
            return Err(Error::Precondition("image given for a t outside the algebra".into()));
        }
        Ok(AlgebraMorphism { source: source.clone(), target: target.clone(), matrix, character, t_images })
    }

    pub fn identity(alg: &Arc<Algebra>) -> AlgebraMorphism {
        let t_images = alg.shape().t_indices().into_iter().map(|p| (p, Element::t(alg, p).expect("allowed"))).collect();
        AlgebraMorphism {
            source: alg.clone(),
            target: alg.clone(),
            matrix: linalg::identity(alg.dim()),
            character: Character::trivial(alg),
            t_images,
        }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn t_image(&self, p: usize) -> Option<&Element> {
        self.t_images.get(&p)
    }

    pub fn tau(&self, alpha: &GroupVector) -> GroupVector {
        GroupVector::new(linalg::vec_mat(alpha.coords(), &self.matrix))
    }

    fn eval_key(&self, key: &Key) -> Result<Element> {
        let c = self.character.eval(&key.alpha)?;
        let mut acc = Element::x(&self.target, self.tau(&key.alpha))?.scale(&c);
        let s = self.source.shape();
        for (slot, &e) in key.index.entries().iter().enumerate() {
            if e > 0 {
                let img = &self.t_images[&s.index_at(slot)];
                acc = acc.multiply(&img.pow(e))?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, u: &Element) -> Result<Element> {
        if !same_algebra(u.algebra(), &self.source) {
            return Err(Error::MixedAlgebra);
        }
        if u.is_extended() {
            return Err(Error::MixedExtension);
        }
        let mut acc = Element::zero(&self.target);
        for (k, c) in u.terms() {
            acc = acc.try_add(&self.eval_key(k)?.scale(c))?;
        }
        Ok(acc)
    }

    /// `second . self`.
    pub fn then(&self, second: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if !same_algebra(&self.target, &second.source) {
            return Err(Error::MixedAlgebra);
        }
        let values = self
            .source
            .lattice()
            .basis()
            .iter()
            .zip(self.character.values())
            .map(|(g, c)| Ok(c * &second.character.eval(&self.tau(g))?))
            .collect::<Result<Vec<_>>>()?;
        let t_images = self.t_images.iter().map(|(&p, s)| Ok((p, second.eval(s)?))).collect::<Result<_>>()?;
        Ok(AlgebraMorphism {
            source: self.source.clone(),
            target: second.target.clone(),
            matrix: linalg::mat_mul(&self.matrix, &second.matrix),
            character: Character::new(&self.source, values)?,
            t_images,
        })
    }

    /// The same map into another handle of the image group.
    pub fn with_target(&self, target: &Arc<Algebra>) -> Result<AlgebraMorphism> {
        let t_images = self
            .t_images
            .iter()
            .map(|(&p, s)| Ok((p, Element::from_terms(target, false, s.terms().iter().map(|(k, c)| (k.clone(), c.clone())).collect())?)))
            .collect::<Result<_>>()?;
        AlgebraMorphism::new(&self.source, target, self.matrix.clone(), self.character.clone(), t_images)
    }
}

#[derive(Clone, Debug)]
pub struct MorphismReport {
    pub checks: usize,
    pub failures: usize,
    /// first failure: which law and the offending pair
    pub witness: Option<(String, Element, Element)>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Bracket and product laws on the generator pairs `(x^{g_k}, x^{g_l})`,
/// `(t_p, x^{g_k})`, `(t_p, t_q)` and on sampled monomial pairs.
pub fn verify_morphism(theta: &AlgebraMorphism, samples: usize, seed: u64) -> MorphismReport {
    let alg = theta.source();
    let mut gens: Vec<Element> = Vec::new();
    for g in alg.lattice().basis() {
        gens.push(Element::x(alg, g.clone()).expect("basis vector"));
        gens.push(Element::x(alg, -g).expect("basis vector"));
    }
    let ts: Vec<Element> = alg.shape().t_indices().into_iter().map(|p| Element::t(alg, p).expect("allowed")).collect();
    let mut pairs: Vec<(Element, Element)> = Vec::new();
    for u in gens.iter().chain(&ts) {
        for v in &gens {
            pairs.push((u.clone(), v.clone()));
        }
    }
    for u in &ts {
        for v in &ts {
            pairs.push((u.clone(), v.clone()));
        }
    }
    let sampler = Sampler::new(alg);
    for n in 0..samples {
        let mut rng = sample_rng(seed, n as u64);
        pairs.push((sampler.monomial(&mut rng), sampler.monomial(&mut rng)));
    }

    let mut report = MorphismReport { checks: 1, failures: 0, witness: None };
    let one = Element::one(alg);
    if theta.eval(&one).ok() != Some(Element::one(theta.target())) {
        report.failures += 1;
        report.witness = Some(("unit".into(), one.clone(), one));
    }
    for (u, v) in pairs {
        let bracket = (|| -> Result<bool> {
            Ok(theta.eval(&bracket_structural(&u, &v)?)? == bracket_structural(&theta.eval(&u)?, &theta.eval(&v)?)?)
        })()
        .unwrap_or(false);
        let product = (|| -> Result<bool> { Ok(theta.eval(&u.multiply(&v)?)? == theta.eval(&u)?.multiply(&theta.eval(&v)?)?) })()
            .unwrap_or(false);
        for (law, ok) in [("bracket", bracket), ("product", product)] {
            report.checks += 1;
            if !ok {
                report.failures += 1;
                if report.witness.is_none() {
                    report.witness = Some((law.into(), u.clone(), v.clone()));
                }
            }
        }
    }
    report
}
