//! The exponent group `Gamma`, given by a finite basis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{is_valid_radicand, Scalar};
use super::shape::Shape;
use super::vector::GroupVector;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// `Q(sqrt d)`.
    Quadratic(i64),
}

impl Field {
    pub fn quadratic(d: i64) -> Result<Field> {
        if is_valid_radicand(d) {
            Ok(Field::Quadratic(d))
        } else {
            Err(Error::BadRadicand(d))
        }
    }

    /// 0 for `Q`, `d` for `Q(sqrt d)`.
    pub fn radicand(self) -> i64 {
        match self {
            Field::Rational => 0,
            Field::Quadratic(d) => d,
        }
    }

    pub fn contains(self, s: &Scalar) -> bool {
        s.radicand() == 0 || s.radicand() == self.radicand()
    }

    /// Number of rational coordinates per scalar.
    fn split_width(self) -> usize {
        match self {
            Field::Rational => 1,
            Field::Quadratic(_) => 2,
        }
    }

    fn split_into(self, s: &Scalar, out: &mut Vec<Scalar>) {
        out.push(Scalar::from_rational(s.rational_part().clone()));
        if self.split_width() == 2 {
            out.push(Scalar::from_rational(s.irrational_part().clone()));
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Quadratic(d) => write!(f, "quadratic:{d}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Lattice {
    shape: Shape,
    field: Field,
    basis: Vec<GroupVector>,
    /// rational split coordinates where the basis is invertible
    pivots: Vec<usize>,
    /// inverse of the basis restricted to `pivots`
    pivot_inverse: Matrix,
    split_basis: Matrix,
}

impl PartialEq for Lattice {
    fn eq(&self, o: &Lattice) -> bool {
        self.shape == o.shape && self.field == o.field && self.basis == o.basis
    }
}

impl Eq for Lattice {}

impl Lattice {
    /// Validated lattice: grading constraints on the basis plus the three
    /// membership conditions (sigma_p, eps_q, multiples of eps_r).
    pub fn new(shape: Shape, field: Field, basis: Vec<GroupVector>) -> Result<Lattice> {
        let lat = Lattice::new_unchecked(shape, field, basis)?;
        let s = &lat.shape;
        for (k, g) in lat.basis.iter().enumerate() {
            for p in s.all_indices() {
                if !s.alpha_allowed(p) && !g[s.slot(p)].is_zero() {
                    return Err(Error::GradingViolation { vector: k, p });
                }
            }
        }
        for p in s.blocks(1, 4) {
            if !lat.contains(&s.sigma(p)) {
                return Err(Error::SigmaNotInLattice { p });
            }
        }
        for q in s.blocks(5, 6) {
            if !lat.contains(&s.unit(q)) {
                return Err(Error::EpsilonNotInLattice { q });
            }
        }
        for r in s.paired_blocks(1, 4) {
            if lat.epsilon_multiple_opt(r).is_none() {
                return Err(Error::NoEpsilonMultiple { r });
            }
        }
        Ok(lat)
    }

    /// Only checks lengths, field membership and independence. Used for the
    /// intermediate groups `tau_2(Gamma)` of composite maps.
    pub fn new_unchecked(shape: Shape, field: Field, basis: Vec<GroupVector>) -> Result<Lattice> {
        for g in &basis {
            if g.len() != shape.dim() {
                return Err(Error::WrongLength { expected: shape.dim(), found: g.len() });
            }
            if !g.coords().iter().all(|c| field.contains(c)) {
                return Err(Error::FieldMismatch);
            }
        }
        let split_basis: Matrix = basis.iter().map(|g| split(field, g)).collect();
        let mut reduced = split_basis.clone();
        let pivots = linalg::rref(&mut reduced);
        if pivots.len() < basis.len() {
            return Err(Error::DependentBasis);
        }
        let minor: Matrix = split_basis.iter().map(|row| pivots.iter().map(|&c| row[c].clone()).collect()).collect();
        let pivot_inverse = linalg::inverse(&minor).ok_or(Error::DependentBasis)?;
        Ok(Lattice { shape, field, basis, pivots, pivot_inverse, split_basis })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[GroupVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Rational coordinates of `v` in the basis, if `v` is in the rational span.
    pub fn rational_coordinates(&self, v: &GroupVector) -> Option<Vec<Scalar>> {
        if v.len() != self.shape.dim() || !v.coords().iter().all(|c| self.field.contains(c)) {
            return None;
        }
        let sv = split(self.field, v);
        let picked: Vec<Scalar> = self.pivots.iter().map(|&c| sv[c].clone()).collect();
        let coords = if self.basis.is_empty() { vec![] } else { linalg::vec_mat(&picked, &self.pivot_inverse) };
        let back = if self.basis.is_empty() {
            vec![Scalar::zero(); sv.len()]
        } else {
            linalg::vec_mat(&coords, &self.split_basis)
        };
        if back == sv {
            Some(coords)
        } else {
            None
        }
    }

    /// Integer coordinates of `v`, if `v` lies in `Gamma`.
    pub fn coordinates(&self, v: &GroupVector) -> Option<Vec<BigInt>> {
        self.rational_coordinates(v)?.iter().map(Scalar::to_bigint).collect()
    }

    pub fn contains(&self, v: &GroupVector) -> bool {
        self.coordinates(v).is_some()
    }

    /// The vector with the given integer coordinates.
    pub fn combine(&self, coords: &[BigInt]) -> GroupVector {
        let mut v = GroupVector::zeros(self.shape.dim());
        for (c, g) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                v = &v + &g.scale(&Scalar::from_bigint(c.clone()));
            }
        }
        v
    }

    /// Positive scalar `e` of smallest height with `e * eps_r` in `Gamma`.
    pub fn epsilon_multiple(&self, r: usize) -> Result<Scalar> {
        self.shape.check_index(r)?;
        self.epsilon_multiple_opt(r).ok_or(Error::NoEpsilonMultiple { r })
    }

    fn epsilon_multiple_opt(&self, r: usize) -> Option<Scalar> {
        let s = &self.shape;
        let w = self.field.split_width();
        let rs = s.slot(r);
        // Equations: every split coordinate outside slot r vanishes.
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for slot in 0..s.dim() {
            if slot == rs {
                continue;
            }
            for k in 0..w {
                rows.push(self.split_basis.iter().map(|g| g[slot * w + k].rational_part().clone()).collect());
            }
        }
        let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| integral_row(r)).collect();
        let diag = linalg::diagonalize(&int_rows, self.rank());
        let mut best: Option<Scalar> = None;
        for j in diag.rank..self.rank() {
            let k: Vec<BigInt> = diag.v.iter().map(|row| row[j].clone()).collect();
            let e = self.combine(&k)[rs].clone();
            if e.is_zero() {
                continue;
            }
            let e = if e.is_canonically_positive() { e } else { -e };
            if best.as_ref().is_none_or(|b| e.height() < b.height()) {
                best = Some(e);
            }
        }
        best
    }

    /// `lambda_p = e_p eps_{bar p}` for `p` in `I_{1,4}`.
    pub fn lambda(&self, p: usize) -> Result<GroupVector> {
        let bp = self.shape.bar(p);
        let e = self.epsilon_multiple(bp)?;
        Ok(self.shape.unit(bp).scale(&e))
    }
}

fn split(field: Field, g: &GroupVector) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(g.len() * field.split_width());
    for c in g.coords() {
        field.split_into(c, &mut out);
    }
    out
}

/// Scale a rational row to a primitive integer row.
fn integral_row(r: &[BigRational]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
}
