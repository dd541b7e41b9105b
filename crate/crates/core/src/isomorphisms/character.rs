use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::derivations::sigma_matrix;
use crate::error::{Error, Result};
use crate::kernel::{same_algebra, Algebra, GroupVector, Scalar};
use crate::linalg;

/// A character `chi: Gamma -> F^x`, given by its values on the basis.
#[derive(Clone, Debug)]
pub struct Character {
    alg: Arc<Algebra>,
    values: Vec<Scalar>,
}

impl PartialEq for Character {
    fn eq(&self, o: &Character) -> bool {
        self.values == o.values && same_algebra(&self.alg, &o.alg)
    }
}

fn big_pow(s: &Scalar, e: &BigInt) -> Scalar {
    let e = e.to_i64().expect("exponent fits in i64");
    s.pow(e)
}

impl Character {
    pub fn new(alg: &Arc<Algebra>, values: Vec<Scalar>) -> Result<Character> {
        let rank = alg.lattice().rank();
        if values.len() != rank {
            return Err(Error::WrongLength { expected: rank, found: values.len() });
        }
        if values.iter().any(|v| v.is_zero() || !alg.field().contains(v)) {
            return Err(Error::Precondition("character values must be nonzero field elements".into()));
        }
        Ok(Character { alg: alg.clone(), values })
    }

    pub fn trivial(alg: &Arc<Algebra>) -> Character {
        Character { alg: alg.clone(), values: vec![Scalar::one(); alg.lattice().rank()] }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn eval(&self, alpha: &GroupVector) -> Result<Scalar> {
        let coords = self.alg.lattice().coordinates(alpha).ok_or_else(|| Error::NotInLattice(alpha.clone()))?;
        Ok(coords.iter().zip(&self.values).fold(Scalar::one(), |acc, (c, v)| &acc * &big_pow(v, c)))
    }
}

/// Extend `chi(sigma_p) = b_p` (`p` in `I_{1,4}`) to all of `Gamma`.
///
/// With `U M V = D` for the coordinate matrix `M` of the `sigma_p`, put
/// `b'_i = prod_p b_p^{U_ip}`, take `w_i` a `d_i`-th root of `b'_i` (free
/// `w_i = 1`) and `chi(g_k) = prod_j w_j^{V_kj}`.
pub fn extend_character(alg: &Arc<Algebra>, b: &[Scalar]) -> Result<Character> {
    let s = alg.shape();
    let n4 = s.iota(4);
    if b.len() != n4 {
        return Err(Error::WrongLength { expected: n4, found: b.len() });
    }
    if b.iter().any(|v| v.is_zero() || !alg.field().contains(v)) {
        return Err(Error::Precondition("b_p must be nonzero field elements".into()));
    }
    let rank = alg.lattice().rank();
    let m = sigma_matrix(alg);
    let dg = linalg::diagonalize(&m, rank);
    let mut w = vec![Scalar::one(); rank];
    for (i, row) in dg.u.iter().enumerate() {
        let bi = row.iter().zip(b).fold(Scalar::one(), |acc, (e, v)| &acc * &big_pow(v, e));
        if i >= dg.rank {
            if !bi.is_one() {
                return Err(Error::CharacterNotRepresentable(format!(
                    "the sigma relations force {bi} = 1"
                )));
            }
            continue;
        }
        let d = &dg.diag[i];
        let n = d.to_u32().ok_or_else(|| Error::CharacterNotRepresentable(format!("root of order {d}")))?;
        w[i] = bi.nth_root(n, alg.field().radicand()).ok_or_else(|| {
            Error::CharacterNotRepresentable(format!("w^{n} = {bi} has no solution in the working field"))
        })?;
    }
    let values: Vec<Scalar> = (0..rank)
        .map(|k| {
            (0..rank).fold(Scalar::one(), |acc, j| {
                let e = &dg.v[k][j];
                if e.is_zero() {
                    acc
                } else {
                    &acc * &big_pow(&w[j], e)
                }
            })
        })
        .collect();
    let chi = Character { alg: alg.clone(), values };
    for p in s.blocks(1, 4) {
        debug_assert_eq!(chi.eval(&s.sigma(p)).expect("sigma in Gamma"), b[p - 1]);
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Field, Lattice, Shape};

    #[test]
    fn examples() {
        let a = Algebra::from_int_basis([1, 0, 0, 0, 0, 0, 0], &[&[1, 0], &[0, 1]]).unwrap();
        let chi = extend_character(&a, &[Scalar::from_int(-1)]).unwrap();
        assert_eq!(chi.values(), &[Scalar::from_int(-1), Scalar::one()]);

        let s = Shape::new([1, 0, 0, 0, 0, 0, 0]).unwrap();
        let half = Scalar::from_ratio(1, 2);
        let g1 = GroupVector::new(vec![half.clone(), half]);
        let lat = Lattice::new(s, Field::Rational, vec![g1, GroupVector::from_ints(&[1, -1])]).unwrap();
        let a = Algebra::new(lat);
        let chi = extend_character(&a, &[Scalar::from_int(9)]).unwrap();
        assert_eq!(chi.values(), &[Scalar::from_int(3), Scalar::one()]);
        assert!(matches!(extend_character(&a, &[Scalar::from_int(2)]), Err(Error::CharacterNotRepresentable(_))));
    }

    #[test]
    fn roots_in_quadratic_field() {
        let s = Shape::new([1, 0, 0, 0, 0, 0, 0]).unwrap();
        let half = Scalar::from_ratio(1, 2);
        let g1 = GroupVector::new(vec![half.clone(), half]);
        let lat = Lattice::new(s, Field::quadratic(2).unwrap(), vec![g1, GroupVector::from_ints(&[1, -1])]).unwrap();
        let a = Algebra::new(lat);
        let chi = extend_character(&a, &[Scalar::from_int(2)]).unwrap();
        assert_eq!(chi.values()[0], Scalar::sqrt_of(2));
        assert_eq!(chi.eval(&GroupVector::from_ints(&[1, 1])).unwrap(), Scalar::from_int(2));
    }
}
