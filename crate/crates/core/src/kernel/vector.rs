//! Exponent vectors, multi-indices and basis keys.
//!
//! Both vector kinds are stored in slot order `(1, bar 1, 2, bar 2, ...)`;
//! use [`Shape::slot`](super::Shape::slot) to address a coordinate by its
//! index in `J`.

use std::ops::{Add, Index, IndexMut, Neg, Sub};

use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupVector(Vec<Scalar>);

impl GroupVector {
    pub fn zeros(dim: usize) -> GroupVector {
        GroupVector(vec![Scalar::zero(); dim])
    }

    pub fn new(coords: Vec<Scalar>) -> GroupVector {
        GroupVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> GroupVector {
        GroupVector(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> GroupVector {
        GroupVector(self.0.iter().map(|x| x * c).collect())
    }
}

impl Index<usize> for GroupVector {
    type Output = Scalar;
    fn index(&self, slot: usize) -> &Scalar {
        &self.0[slot]
    }
}

impl IndexMut<usize> for GroupVector {
    fn index_mut(&mut self, slot: usize) -> &mut Scalar {
        &mut self.0[slot]
    }
}

impl<'a> Add<&'a GroupVector> for &'a GroupVector {
    type Output = GroupVector;
    fn add(self, o: &GroupVector) -> GroupVector {
        assert_eq!(self.len(), o.len());
        GroupVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a GroupVector> for &'a GroupVector {
    type Output = GroupVector;
    fn sub(self, o: &GroupVector) -> GroupVector {
        assert_eq!(self.len(), o.len());
        GroupVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupVector {
    type Output = GroupVector;
    fn neg(self) -> GroupVector {
        GroupVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Nonnegative exponents of the `t` variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zeros(dim: usize) -> MultiIndex {
        MultiIndex(vec![0; dim])
    }

    pub fn new(entries: Vec<u32>) -> MultiIndex {
        MultiIndex(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Sum of all entries.
    pub fn level(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// `self + other` entrywise.
    pub fn plus(&self, o: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// Decrement a slot; `None` if it would go negative.
    pub fn minus_unit(&self, slot: usize) -> Option<MultiIndex> {
        let mut v = self.0.clone();
        v[slot] = v[slot].checked_sub(1)?;
        Some(MultiIndex(v))
    }

    pub fn plus_unit(&self, slot: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[slot] += 1;
        MultiIndex(v)
    }
}

impl Index<usize> for MultiIndex {
    type Output = u32;
    fn index(&self, slot: usize) -> &u32 {
        &self.0[slot]
    }
}

impl IndexMut<usize> for MultiIndex {
    fn index_mut(&mut self, slot: usize) -> &mut u32 {
        &mut self.0[slot]
    }
}

/// Basis label `(alpha, i)` of the monomial `x^{alpha,i}`. The derived
/// order (alpha first, then i) is the canonical term order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Key {
    pub alpha: GroupVector,
    pub index: MultiIndex,
}

impl Key {
    pub fn new(alpha: GroupVector, index: MultiIndex) -> Key {
        Key { alpha, index }
    }

    pub fn unit(dim: usize) -> Key {
        Key { alpha: GroupVector::zeros(dim), index: MultiIndex::zeros(dim) }
    }

    pub fn times(&self, o: &Key) -> Key {
        Key { alpha: &self.alpha + &o.alpha, index: self.index.plus(&o.index) }
    }
}
