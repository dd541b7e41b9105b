//! Seeded property suites for the bracket: oracle equivalence, skew
//! symmetry with Jacobi, and Leibniz.

use std::sync::Arc;

use crate::error::Result;
use crate::kernel::{bracket_defining, bracket_structural, Algebra, Element};
use crate::sampling::{sample_rng, Sampler};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub samples: usize,
    pub failures: usize,
    /// first failing sample, as (label, operands)
    pub witness: Option<(String, Vec<Element>)>,
}

impl SuiteReport {
    fn new(suite: &'static str, samples: usize) -> SuiteReport {
        SuiteReport { suite, samples, failures: 0, witness: None }
    }

    fn fail(&mut self, label: &str, ops: &[&Element]) {
        self.failures += 1;
        if self.witness.is_none() {
            self.witness = Some((label.to_string(), ops.iter().map(|e| (*e).clone()).collect()));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn draws(alg: &Arc<Algebra>, max_level: u32, seed: u64, n: usize, k: usize) -> Vec<Element> {
    let s = Sampler::new(alg).with_level(max_level);
    let mut rng = sample_rng(seed, n as u64);
    (0..k).map(|_| s.monomial(&mut rng)).collect()
}

/// `bracket_structural == bracket_defining` on random monomial pairs.
pub fn oracle_equivalence(alg: &Arc<Algebra>, samples: usize, seed: u64, max_level: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("oracle-equivalence", samples);
    for n in 0..samples {
        let m = draws(alg, max_level, seed, n, 2);
        if bracket_structural(&m[0], &m[1])? != bracket_defining(&m[0], &m[1])? {
            r.fail("structural != defining", &[&m[0], &m[1]]);
        }
    }
    Ok(r)
}

/// Skew symmetry and the Jacobi identity on random monomial triples.
pub fn jacobi(alg: &Arc<Algebra>, samples: usize, seed: u64, max_level: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("jacobi", samples);
    for n in 0..samples {
        let m = draws(alg, max_level, seed, n, 3);
        let (u, v, w) = (&m[0], &m[1], &m[2]);
        if bracket_structural(u, v)? != bracket_structural(v, u)?.neg() {
            r.fail("skew", &[u, v]);
            continue;
        }
        let j = bracket_structural(&bracket_structural(u, v)?, w)?
            .try_add(&bracket_structural(&bracket_structural(v, w)?, u)?)?
            .try_add(&bracket_structural(&bracket_structural(w, u)?, v)?)?;
        if !j.is_zero() {
            r.fail("jacobi", &[u, v, w]);
        }
    }
    Ok(r)
}

/// `[u, vw] = [u, v] w + v [u, w]` on random monomial triples.
pub fn leibniz(alg: &Arc<Algebra>, samples: usize, seed: u64, max_level: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("leibniz", samples);
    for n in 0..samples {
        let m = draws(alg, max_level, seed, n, 3);
        let (u, v, w) = (&m[0], &m[1], &m[2]);
        let lhs = bracket_structural(u, &v.multiply(w)?)?;
        let rhs = bracket_structural(u, v)?.multiply(w)?.try_add(&v.multiply(&bracket_structural(u, w)?)?)?;
        if lhs != rhs {
            r.fail("leibniz", &[u, v, w]);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn suites_pass_on_f3() {
        let a = fixtures::f3();
        assert!(oracle_equivalence(&a, 50, 1, 4).unwrap().passed());
        assert!(jacobi(&a, 30, 1, 3).unwrap().passed());
        assert!(leibniz(&a, 30, 1, 3).unwrap().passed());
    }
}
