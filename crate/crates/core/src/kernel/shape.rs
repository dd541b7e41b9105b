//! The shape `l = (l1, ..., l7)` and its index combinatorics.
//!
//! Indices in `J` are numbered `1..=2n` with `n = iota_7`; `bar(p) = p + n`
//! for `p <= n`. Block `I_k` is `iota_{k-1}+1 ..= iota_k`.

use std::ops::RangeInclusive;

use super::scalar::Scalar;
use super::vector::GroupVector;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    l: [usize; 7],
    iota: [usize; 8],
    ranges: [BracketRanges; 2],
}

/// Index lists for the four sums of the structural bracket.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[derive(Default)]
pub struct BracketRanges {
    /// grading/grading pairs
    pub gg: Vec<usize>,
    /// grading on `p`, down-grading on `bar p`
    pub gd: Vec<usize>,
    /// down-grading on `p`, grading on `bar p`
    pub dg: Vec<usize>,
    /// down-grading on both
    pub dd: Vec<usize>,
}

impl Shape {
    pub fn new(l: [usize; 7]) -> Result<Shape> {
        if l.iter().all(|&x| x == 0) {
            return Err(Error::ZeroShape);
        }
        let mut iota = [0usize; 8];
        for k in 1..8 {
            iota[k] = iota[k - 1] + l[k - 1];
        }
        let mut s = Shape { l, iota, ranges: Default::default() };
        let r = |a: usize, b: usize| s.blocks(a, b).collect::<Vec<_>>();
        let four_six: Vec<usize> = s.blocks(4, 6).collect();
        let dd: Vec<usize> = s.block(4).chain(s.blocks(6, 7)).collect();
        let restricted = BracketRanges { gg: r(1, 4), gd: four_six, dg: r(2, 4), dd };
        let extended = BracketRanges { gg: r(1, 4), gd: r(1, 6), dg: r(1, 4), dd: r(1, 7) };
        s.ranges = [restricted, extended];
        Ok(s)
    }

    pub fn l(&self) -> [usize; 7] {
        self.l
    }

    /// `iota_k` for `k = 0..=7`.
    pub fn iota(&self, k: usize) -> usize {
        self.iota[k]
    }

    /// `iota_7`, the number of unbarred indices.
    pub fn n(&self) -> usize {
        self.iota[7]
    }

    /// `|J| = 2 iota_7`, the length of every coordinate vector.
    pub fn dim(&self) -> usize {
        2 * self.iota[7]
    }

    /// `I_k` as a range of unbarred indices.
    pub fn block(&self, k: usize) -> RangeInclusive<usize> {
        self.blocks(k, k)
    }

    /// `I_{i,j}`.
    pub fn blocks(&self, i: usize, j: usize) -> RangeInclusive<usize> {
        assert!((1..=7).contains(&i) && (1..=7).contains(&j));
        self.iota[i - 1] + 1..=self.iota[j]
    }

    /// `bar I_{i,j}`.
    pub fn barred_blocks(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.blocks(i, j).map(|p| self.bar(p))
    }

    /// `J_{i,j} = I_{i,j} u bar I_{i,j}`, listed as `p, bar p` pairs.
    pub fn paired_blocks(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.blocks(i, j).flat_map(|p| [p, self.bar(p)])
    }

    pub fn all_indices(&self) -> RangeInclusive<usize> {
        1..=self.dim()
    }

    pub fn check_index(&self, p: usize) -> Result<()> {
        if p >= 1 && p <= self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { p, max: self.dim() })
        }
    }

    pub fn bar(&self, p: usize) -> usize {
        let n = self.n();
        if p <= n {
            p + n
        } else {
            p - n
        }
    }

    pub fn is_barred(&self, p: usize) -> bool {
        p > self.n()
    }

    /// The unbarred representative of `{p, bar p}`.
    pub fn base(&self, p: usize) -> usize {
        if self.is_barred(p) {
            p - self.n()
        } else {
            p
        }
    }

    /// Block number `k` with `base(p) in I_k`.
    pub fn block_of(&self, p: usize) -> usize {
        let b = self.base(p);
        (1..=7).find(|&k| self.iota[k - 1] < b && b <= self.iota[k]).expect("index in range")
    }

    /// Storage position of index `p`.
    pub fn slot(&self, p: usize) -> usize {
        let n = self.n();
        if p <= n {
            2 * (p - 1)
        } else {
            2 * (p - n - 1) + 1
        }
    }

    /// Inverse of [`slot`](Self::slot).
    pub fn index_at(&self, slot: usize) -> usize {
        if slot.is_multiple_of(2) {
            slot / 2 + 1
        } else {
            slot / 2 + 1 + self.n()
        }
    }

    pub fn sgn(&self, p: usize) -> i64 {
        if self.is_barred(p) {
            -1
        } else {
            1
        }
    }

    /// Unit vector `eps_p`.
    pub fn unit(&self, p: usize) -> GroupVector {
        let mut v = GroupVector::zeros(self.dim());
        v[self.slot(p)] = Scalar::one();
        v
    }

    /// `sigma_p` (equal to `sigma_{bar p}`).
    pub fn sigma(&self, p: usize) -> GroupVector {
        let mut v = GroupVector::zeros(self.dim());
        let b = self.base(p);
        match self.block_of(p) {
            1 | 3 | 4 => {
                v[self.slot(b)] = Scalar::one();
                v[self.slot(self.bar(b))] = Scalar::one();
            }
            2 => v[self.slot(b)] = Scalar::one(),
            _ => {}
        }
        v
    }

    /// `sigma = sum over I_{1,4} of sigma_p`.
    pub fn sigma_total(&self) -> GroupVector {
        self.blocks(1, 4).fold(GroupVector::zeros(self.dim()), |acc, p| &acc + &self.sigma(p))
    }

    /// `eta_q` for `q` in `J_{1,4}`.
    pub fn eta(&self, q: usize) -> i64 {
        assert!(self.block_of(q) <= 4, "eta is defined on J_1..J_4");
        if !self.is_barred(q) {
            1
        } else if self.block_of(q) == 2 {
            0
        } else {
            -1
        }
    }

    /// May `alpha_p` be nonzero for `alpha` in `Gamma`?
    pub fn alpha_allowed(&self, p: usize) -> bool {
        match self.block_of(p) {
            5 | 6 => !self.is_barred(p),
            7 => false,
            _ => true,
        }
    }

    /// May `i_p` be nonzero in the restricted algebra?
    pub fn t_allowed(&self, p: usize) -> bool {
        match self.block_of(p) {
            1 => false,
            2 | 3 => !self.is_barred(p),
            5 => self.is_barred(p),
            _ => true,
        }
    }

    /// Indices whose `t_p` lies in the algebra, in increasing order.
    pub fn t_indices(&self) -> Vec<usize> {
        self.all_indices().filter(|&p| self.t_allowed(p)).collect()
    }

    pub fn bracket_ranges(&self, extended: bool) -> &BracketRanges {
        &self.ranges[extended as usize]
    }

    /// `iota_7 == l_1`: the case with nontrivial second cohomology.
    pub fn is_pure_first_block(&self) -> bool {
        self.n() == self.l[0]
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn shape(l: [usize; 7]) -> Shape {
        Shape::new(l).unwrap()
    }

    #[test]
    fn first_block_shape() {
        let s = shape([1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(s.n(), 1);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.bar(1), 2);
        assert_eq!(s.sigma(1), GroupVector::from_ints(&[1, 1]));
        assert!(s.is_pure_first_block());
    }

    #[test]
    fn last_block_shape() {
        let s = shape([0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(s.block(7), 1..=1);
        assert_eq!(s.sigma(1), GroupVector::from_ints(&[0, 0]));
        assert_eq!(s.t_indices(), vec![1, 2]);
    }

    #[test]
    fn second_block_shape() {
        let s = shape([0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(s.sigma(1), GroupVector::from_ints(&[1, 0]));
        assert_eq!(s.eta(s.bar(1)), 0);
    }

    #[test]
    fn zero_shape_rejected() {
        assert!(matches!(Shape::new([0; 7]), Err(Error::ZeroShape)));
    }

    #[test]
    fn slots_are_interleaved() {
        let s = shape([1, 1, 0, 1, 0, 0, 0]);
        assert_eq!(s.slot(1), 0);
        assert_eq!(s.slot(4), 1);
        assert_eq!(s.slot(2), 2);
        assert_eq!(s.slot(6), 5);
        for slot in 0..s.dim() {
            assert_eq!(s.slot(s.index_at(slot)), slot);
        }
    }

    #[test]
    fn bar_is_fixed_point_free_involution() {
        let s = shape([2, 1, 1, 1, 1, 1, 2]);
        for p in s.all_indices() {
            assert_ne!(s.bar(p), p);
            assert_eq!(s.bar(s.bar(p)), p);
            assert_eq!(s.sigma(p), s.sigma(s.bar(p)));
        }
    }

    #[test]
    fn sigma_eta_consistency() {
        let s = shape([2, 1, 1, 2, 0, 0, 0]);
        for q in s.blocks(1, 4) {
            let bq = s.bar(q);
            let rhs = &s.unit(q) - &s.unit(bq).scale(&Scalar::from_int(s.eta(bq)));
            assert_eq!(s.sigma(q), rhs, "q = {q}");
        }
    }

    #[test]
    fn allowed_sets() {
        let s = shape([1, 1, 1, 1, 1, 1, 1]);
        let n = s.n();
        let allowed: Vec<usize> = s.t_indices();
        // I_{2,4}, I_6, I_7 unbarred; bar I_4..bar I_7.
        assert_eq!(allowed, vec![2, 3, 4, 6, 7, 4 + n, 5 + n, 6 + n, 7 + n]);
        let alpha: Vec<usize> = s.all_indices().filter(|&p| s.alpha_allowed(p)).collect();
        assert_eq!(alpha, vec![1, 2, 3, 4, 5, 6, 1 + n, 2 + n, 3 + n, 4 + n]);
    }
}
