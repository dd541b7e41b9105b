//! Seeded random monomials for the property suites.
//!
//! Every sample draws from its own ChaCha8 stream keyed by
//! `(seed, sample index)`, so runs are reproducible and order independent.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::isomorphisms::{Block, PreservingIso};
use crate::kernel::{Algebra, Element, Key, MultiIndex, Scalar, Shape};

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug)]
pub struct Sampler {
    alg: Arc<Algebra>,
    /// maximal level of the multi-index
    pub max_level: u32,
    /// lattice coordinates are drawn from `-coord_range..=coord_range`
    pub coord_range: i64,
    /// sample keys of the enlarged algebra
    pub extended: bool,
}

impl Sampler {
    pub fn new(alg: &Arc<Algebra>) -> Sampler {
        Sampler { alg: alg.clone(), max_level: 4, coord_range: 3, extended: false }
    }

    pub fn with_level(mut self, max_level: u32) -> Sampler {
        self.max_level = max_level;
        self
    }

    pub fn with_range(mut self, r: i64) -> Sampler {
        self.coord_range = r;
        self
    }

    pub fn extended(mut self, on: bool) -> Sampler {
        self.extended = on;
        self
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn key(&self, rng: &mut impl Rng) -> Key {
        let lat = self.alg.lattice();
        let coords: Vec<BigInt> =
            (0..lat.rank()).map(|_| BigInt::from(rng.gen_range(-self.coord_range..=self.coord_range))).collect();
        let alpha = lat.combine(&coords);
        Key::new(alpha, self.index(rng))
    }

    pub fn index(&self, rng: &mut impl Rng) -> MultiIndex {
        let s = self.alg.shape();
        let allowed: Vec<usize> =
            s.all_indices().filter(|&p| self.extended || s.t_allowed(p)).map(|p| s.slot(p)).collect();
        let mut idx = MultiIndex::zeros(s.dim());
        if allowed.is_empty() {
            return idx;
        }
        let level = rng.gen_range(0..=self.max_level);
        for _ in 0..level {
            let slot = *allowed.choose(rng).unwrap();
            idx[slot] += 1;
        }
        idx
    }

    /// A small nonzero coefficient; irrational parts appear in `Q(sqrt d)`.
    pub fn coefficient(&self, rng: &mut impl Rng) -> Scalar {
        let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
        let den = rng.gen_range(1..=2);
        let c = Scalar::from_ratio(num, den);
        let d = self.alg.field().radicand();
        if d != 0 && rng.gen_bool(0.3) {
            &c + &(&Scalar::from_int(rng.gen_range(1..=2)) * &Scalar::sqrt_of(d))
        } else {
            c
        }
    }

    pub fn monomial(&self, rng: &mut impl Rng) -> Element {
        let key = self.key(rng);
        let c = self.coefficient(rng);
        if self.extended {
            Element::extended_monomial(&self.alg, key, c).expect("sampled key is valid")
        } else {
            Element::monomial(&self.alg, key, c).expect("sampled key is valid")
        }
    }

    /// Sum of up to `max_terms` monomials.
    pub fn element(&self, rng: &mut impl Rng, max_terms: usize) -> Element {
        let n = rng.gen_range(1..=max_terms.max(1));
        let mut acc = self.monomial(rng);
        for _ in 1..n {
            acc = &acc + &self.monomial(rng);
        }
        acc
    }
}

/// A random preserving isomorphism: block-preserving `nu`, small integer
/// `a_p`, `b_p` from a set with rational square roots, `B55 = B66 = +-1` on
/// the diagonal and small integer off-diagonal blocks.
pub fn preserving_iso(shape: &Shape, rng: &mut impl Rng) -> PreservingIso {
    let mut iso = PreservingIso::identity(shape);
    for k in 1..=4 {
        let mut block: Vec<usize> = shape.block(k).collect();
        block.shuffle(rng);
        for (p, q) in shape.block(k).zip(block) {
            iso.nu[p - 1] = q;
        }
    }
    for p in shape.blocks(1, 4) {
        iso.a[p - 1] = Scalar::from_int(rng.gen_range(-2..=2));
        iso.b[p - 1] = [Scalar::one(), Scalar::from_int(-1), Scalar::from_int(4), Scalar::from_ratio(1, 4)]
            .choose(rng)
            .unwrap()
            .clone();
    }
    for blk in Block::ALL {
        let (r, c) = blk.dims(shape);
        let m = (0..r)
            .map(|i| {
                (0..c)
                    .map(|j| {
                        if !blk.is_diagonal() {
                            Scalar::from_int(rng.gen_range(-2..=2))
                        } else if i == j {
                            Scalar::from_int(if rng.gen_bool(0.5) { 1 } else { -1 })
                        } else if i < j {
                            Scalar::from_int(rng.gen_range(-1..=1))
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        iso.blocks.insert(blk, m);
    }
    iso
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Algebra;

    #[test]
    fn reproducible_streams() {
        let a = Algebra::from_int_basis([1, 0, 0, 1, 0, 0, 0], &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
            .unwrap();
        let s = Sampler::new(&a);
        let x = s.element(&mut sample_rng(7, 3), 3);
        let y = s.element(&mut sample_rng(7, 3), 3);
        assert_eq!(x, y);
        let z = s.element(&mut sample_rng(7, 4), 3);
        assert_ne!(x, z);
    }
}
