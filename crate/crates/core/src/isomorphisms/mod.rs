//! Preserving isomorphisms `tau: Gamma -> Gamma'`, characters and the
//! induced algebra maps `theta`.
//!
//! `tau` acts on row vectors of active coordinates
//! `(alpha_{J_{1,4}}, alpha_{I_5}, alpha_{I_6})`; every other coordinate of
//! a lattice vector is zero.

mod character;
mod morphism;
mod theta;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use character::{extend_character, Character};
pub use morphism::{verify_morphism, AlgebraMorphism, MorphismReport};
pub use theta::{build_theta, solve_case_c, CaseCEquation, CaseCSolution, CaseCSystem};

use crate::error::{Error, Result};
use crate::kernel::{GroupVector, Lattice, Scalar, Shape};
use crate::linalg::{self, Matrix};

/// The off-diagonal and diagonal `B` blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    B15,
    B25,
    B55,
    B16,
    B26,
    B36,
    B56,
    B66,
}

impl Block {
    pub const ALL: [Block; 8] =
        [Block::B15, Block::B25, Block::B55, Block::B16, Block::B26, Block::B36, Block::B56, Block::B66];

    /// `(rows, cols)` for the given shape.
    pub fn dims(self, s: &Shape) -> (usize, usize) {
        let l = s.l();
        match self {
            Block::B15 => (l[0], l[4]),
            Block::B25 => (l[1], l[4]),
            Block::B55 => (l[4], l[4]),
            Block::B16 => (l[0], l[5]),
            Block::B26 => (l[1], l[5]),
            Block::B36 => (l[2] + l[3], l[5]),
            Block::B56 => (l[4], l[5]),
            Block::B66 => (l[5], l[5]),
        }
    }

    pub fn is_diagonal(self) -> bool {
        matches!(self, Block::B55 | Block::B66)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Block {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Block, String> {
        Block::ALL.into_iter().find(|b| b.to_string() == s).ok_or_else(|| format!("unknown block {s:?}"))
    }
}

/// A preserving isomorphism given by its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct PreservingIso {
    pub shape: Shape,
    /// `nu[p-1]` is the image of `p` in `I_{1,4}`
    pub nu: Vec<usize>,
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub blocks: BTreeMap<Block, Matrix>,
}

fn det2(m: &Matrix) -> Scalar {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

impl PreservingIso {
    pub fn identity(shape: &Shape) -> PreservingIso {
        let n4 = shape.iota(4);
        let blocks = Block::ALL
            .into_iter()
            .map(|b| {
                let (r, c) = b.dims(shape);
                (b, if b.is_diagonal() { linalg::identity(r) } else { linalg::zeros(r, c) })
            })
            .collect();
        PreservingIso {
            shape: shape.clone(),
            nu: (1..=n4).collect(),
            a: vec![Scalar::zero(); n4],
            b: vec![Scalar::one(); n4],
            blocks,
        }
    }

    pub fn block(&self, b: Block) -> &Matrix {
        &self.blocks[&b]
    }

    /// Structural checks: `nu` preserves the blocks, `b_p != 0`, block
    /// dimensions, `B55` and `B66` invertible.
    pub fn check(&self) -> Result<()> {
        let s = &self.shape;
        let n4 = s.iota(4);
        for (what, len) in [("nu", self.nu.len()), ("a", self.a.len()), ("b", self.b.len())] {
            if len != n4 {
                return Err(Error::InvalidIso(format!("{what} has {len} entries, expected {n4}")));
            }
        }
        let mut seen = vec![false; n4];
        for (i, &q) in self.nu.iter().enumerate() {
            let p = i + 1;
            if q == 0 || q > n4 || s.block_of(q) != s.block_of(p) {
                return Err(Error::InvalidIso(format!("nu({p}) = {q} leaves block I_{}", s.block_of(p))));
            }
            if std::mem::replace(&mut seen[q - 1], true) {
                return Err(Error::InvalidIso(format!("nu is not injective at {q}")));
            }
        }
        if let Some(i) = self.b.iter().position(|b| b.is_zero()) {
            return Err(Error::InvalidIso(format!("b_{} = 0", i + 1)));
        }
        for blk in Block::ALL {
            let (r, c) = blk.dims(s);
            let m = self.blocks.get(&blk).ok_or_else(|| Error::InvalidIso(format!("missing {blk}")))?;
            if m.len() != r || m.iter().any(|row| row.len() != c) {
                return Err(Error::InvalidIso(format!("{blk} must be {r}x{c}")));
            }
            if blk.is_diagonal() && linalg::inverse(m).is_none() {
                return Err(Error::InvalidIso(format!("{blk} is singular")));
            }
        }
        Ok(())
    }

    /// The 2x2 matrix `A_p` for `p` in `I_{1,4}`.
    pub fn a_matrix(&self, p: usize) -> Matrix {
        let (a, b) = (&self.a[p - 1], &self.b[p - 1]);
        let one = Scalar::one();
        match self.shape.block_of(p) {
            1 | 4 => vec![vec![a + b, a.clone()], vec![&(&one - a) - b, &one - a]],
            2 => vec![vec![one, Scalar::zero()], vec![a.clone(), b.clone()]],
            3 => vec![vec![b.clone(), Scalar::zero()], vec![&one - b, one]],
            _ => panic!("A_p is defined for p in I_1..I_4"),
        }
    }

    pub fn det_a(&self, p: usize) -> Scalar {
        det2(&self.a_matrix(p))
    }
}

/// Storage slots of the active coordinates, in order.
pub fn active_slots(s: &Shape) -> Vec<usize> {
    (0..2 * s.iota(4)).chain(s.blocks(5, 6).map(|p| s.slot(p))).collect()
}

/// Rows `(m_p; -m_p)` for each row of `m`.
fn tilde(m: &Matrix) -> Matrix {
    m.iter().flat_map(|r| [r.clone(), r.iter().map(|c| -c).collect()]).collect()
}

/// Rows `(0; -m_p)` for each row of `m`.
fn hat(m: &Matrix) -> Matrix {
    m.iter().flat_map(|r| [vec![Scalar::zero(); r.len()], r.iter().map(|c| -c).collect()]).collect()
}

fn put(dst: &mut Matrix, row0: usize, col0: usize, src: &Matrix) {
    for (i, r) in src.iter().enumerate() {
        for (j, c) in r.iter().enumerate() {
            dst[row0 + i][col0 + j] = c.clone();
        }
    }
}

impl PreservingIso {
    fn dims(&self) -> (usize, usize, usize, usize) {
        let s = &self.shape;
        let n4 = s.iota(4);
        let (l5, l6) = (s.l()[4], s.l()[5]);
        (n4, l5, l6, 2 * n4 + l5 + l6)
    }

    /// Unipotent factor `C = 1 + D` of `tau = tau_nu . tau_1 . tau_2`
    /// (applied first).
    pub fn c_matrix(&self) -> Matrix {
        let s = &self.shape;
        let (n4, l5, l6, n) = self.dims();
        let l = s.l();
        let inv55 = linalg::inverse(self.block(Block::B55)).expect("checked");
        let inv66 = linalg::inverse(self.block(Block::B66)).expect("checked");
        let mut d5 = linalg::zeros(n, l5);
        put(&mut d5, 0, 0, &tilde(self.block(Block::B15)));
        put(&mut d5, 2 * l[0], 0, &hat(self.block(Block::B25)));
        let d5 = if l5 > 0 { linalg::mat_mul(&d5, &inv55) } else { d5 };
        let mut d6 = linalg::zeros(n, l6);
        put(&mut d6, 0, 0, &tilde(self.block(Block::B16)));
        put(&mut d6, 2 * l[0], 0, &hat(self.block(Block::B26)));
        put(&mut d6, 2 * s.iota(2), 0, &tilde(self.block(Block::B36)));
        put(&mut d6, 2 * n4, 0, self.block(Block::B56));
        let d6 = if l6 > 0 { linalg::mat_mul(&d6, &inv66) } else { d6 };
        let mut c = linalg::identity(n);
        for i in 0..n {
            for j in 0..l5 {
                c[i][2 * n4 + j] += &d5[i][j];
            }
            for j in 0..l6 {
                c[i][2 * n4 + l5 + j] += &d6[i][j];
            }
        }
        c
    }

    /// Block-diagonal factor `diag(A_1, ..., A_{iota_4}, B55, B66)`.
    pub fn a_block_matrix(&self) -> Matrix {
        let (n4, l5, _, n) = self.dims();
        let mut a = linalg::zeros(n, n);
        for p in 1..=n4 {
            put(&mut a, 2 * (p - 1), 2 * (p - 1), &self.a_matrix(p));
        }
        put(&mut a, 2 * n4, 2 * n4, self.block(Block::B55));
        put(&mut a, 2 * n4 + l5, 2 * n4 + l5, self.block(Block::B66));
        a
    }

    /// Permutation factor moving the pair `{p, bar p}` to `{nu p, bar nu p}`.
    pub fn p_matrix(&self) -> Matrix {
        let (n4, _, _, n) = self.dims();
        let mut m = linalg::zeros(n, n);
        for p in 1..=n4 {
            let q = self.nu[p - 1];
            for k in 0..2 {
                m[2 * (p - 1) + k][2 * (q - 1) + k] = Scalar::one();
            }
        }
        for i in 2 * n4..n {
            m[i][i] = Scalar::one();
        }
        m
    }

    /// `T` with `tau(a) = a T` on active coordinates.
    pub fn tau_matrix(&self) -> Matrix {
        linalg::mat_mul(&linalg::mat_mul(&self.c_matrix(), &self.a_block_matrix()), &self.p_matrix())
    }

    /// The same map on full coordinate vectors (identity on inactive slots).
    pub fn full_matrix(&self) -> Matrix {
        embed_active(&self.shape, &self.tau_matrix())
    }
}

pub(crate) fn embed_active(s: &Shape, t: &Matrix) -> Matrix {
    let slots = active_slots(s);
    let mut m = linalg::identity(s.dim());
    for &i in &slots {
        m[i][i] = Scalar::zero();
    }
    for (a, &i) in slots.iter().enumerate() {
        for (b, &j) in slots.iter().enumerate() {
            m[i][j] = t[a][b].clone();
        }
    }
    m
}

pub fn apply_tau(iso: &PreservingIso, alpha: &GroupVector) -> GroupVector {
    let s = &iso.shape;
    let slots = active_slots(s);
    let a: Vec<Scalar> = slots.iter().map(|&i| alpha[i].clone()).collect();
    let img = linalg::vec_mat(&a, &iso.tau_matrix());
    let mut out = GroupVector::zeros(s.dim());
    for (k, &i) in slots.iter().enumerate() {
        out[i] = img[k].clone();
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum ValidationFailure {
    /// `tau(g)` for this source basis vector is outside `Gamma'`
    Forward(usize, GroupVector),
    /// `tau^{-1}(g')` for this target basis vector is outside `Gamma`
    Backward(usize, GroupVector),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub failure: Option<ValidationFailure>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn validate_preserving(iso: &PreservingIso, source: &Lattice, target: &Lattice) -> Result<ValidationReport> {
    if source.shape() != target.shape() || &iso.shape != source.shape() {
        return Err(Error::ShapeMismatch);
    }
    iso.check()?;
    for (k, g) in source.basis().iter().enumerate() {
        let img = apply_tau(iso, g);
        if !target.contains(&img) {
            return Ok(ValidationReport { failure: Some(ValidationFailure::Forward(k, img)) });
        }
    }
    let s = &iso.shape;
    let slots = active_slots(s);
    let tinv = linalg::inverse(&iso.tau_matrix()).ok_or_else(|| Error::InvalidIso("tau is singular".into()))?;
    for (k, g) in target.basis().iter().enumerate() {
        let a: Vec<Scalar> = slots.iter().map(|&i| g[i].clone()).collect();
        let pre = linalg::vec_mat(&a, &tinv);
        let mut v = GroupVector::zeros(s.dim());
        for (j, &i) in slots.iter().enumerate() {
            v[i] = pre[j].clone();
        }
        if !source.contains(&v) {
            return Ok(ValidationReport { failure: Some(ValidationFailure::Backward(k, v)) });
        }
    }
    Ok(ValidationReport { failure: None })
}

/// First `p` in `J_{1,4}` with `tau(sigma_p) != sigma_{nu(p)}`, where
/// `nu(bar p) = bar nu(p)`.
pub fn sigma_mismatch(iso: &PreservingIso) -> Option<usize> {
    let s = &iso.shape;
    s.paired_blocks(1, 4).find(|&p| {
        let q = iso.nu[s.base(p) - 1];
        let q = if s.is_barred(p) { s.bar(q) } else { q };
        apply_tau(iso, &s.sigma(p)) != s.sigma(q)
    })
}

/// `(nu part, tau_1 part, tau_2 part)` with `T = C A P`. The `tau_2` part
/// carries the off-diagonal blocks right-multiplied by `B_kk^{-1}`, so its
/// own `c_matrix` equals the original one.
pub fn decompose_tau(iso: &PreservingIso) -> (PreservingIso, PreservingIso, PreservingIso) {
    let s = &iso.shape;
    let id = PreservingIso::identity(s);
    let nu = PreservingIso { nu: iso.nu.clone(), ..id.clone() };
    let mut t1 = PreservingIso { a: iso.a.clone(), b: iso.b.clone(), ..id.clone() };
    t1.blocks.insert(Block::B55, iso.block(Block::B55).clone());
    t1.blocks.insert(Block::B66, iso.block(Block::B66).clone());
    let mut t2 = id;
    let inv55 = linalg::inverse(iso.block(Block::B55)).expect("checked");
    let inv66 = linalg::inverse(iso.block(Block::B66)).expect("checked");
    for blk in [Block::B15, Block::B25] {
        t2.blocks.insert(blk, mul_or_empty(iso.block(blk), &inv55, blk.dims(s)));
    }
    for blk in [Block::B16, Block::B26, Block::B36, Block::B56] {
        t2.blocks.insert(blk, mul_or_empty(iso.block(blk), &inv66, blk.dims(s)));
    }
    (nu, t1, t2)
}

fn mul_or_empty(a: &Matrix, b: &Matrix, (r, c): (usize, usize)) -> Matrix {
    if r == 0 || c == 0 {
        linalg::zeros(r, c)
    } else {
        linalg::mat_mul(a, b)
    }
}

impl PreservingIso {
    /// Is this a pure `tau_2` factor (no permutation, `A_p = 1`, `B_kk = 1`)?
    pub fn is_unipotent(&self) -> bool {
        let id = PreservingIso::identity(&self.shape);
        self.nu == id.nu
            && self.a == id.a
            && self.b == id.b
            && self.blocks[&Block::B55] == id.blocks[&Block::B55]
            && self.blocks[&Block::B66] == id.blocks[&Block::B66]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Field;

    fn gv(v: &[i64]) -> GroupVector {
        GroupVector::from_ints(v)
    }

    fn f1_iso(a: i64, b: Scalar) -> PreservingIso {
        let s = Shape::new([1, 0, 0, 0, 0, 0, 0]).unwrap();
        let mut iso = PreservingIso::identity(&s);
        iso.a[0] = Scalar::from_int(a);
        iso.b[0] = b;
        iso
    }

    fn z2(l: [usize; 7]) -> Lattice {
        let s = Shape::new(l).unwrap();
        Lattice::new(s, Field::Rational, vec![gv(&[1, 0]), gv(&[0, 1])]).unwrap()
    }

    #[test]
    fn tau_examples() {
        let id = PreservingIso::identity(&Shape::new([1, 0, 0, 0, 0, 0, 0]).unwrap());
        assert_eq!(apply_tau(&id, &gv(&[3, -2])), gv(&[3, -2]));
        let iso = f1_iso(0, Scalar::from_int(-1));
        assert_eq!(iso.a_matrix(1), linalg::from_ints(&[&[-1, 0], &[2, 1]]));
        assert_eq!(apply_tau(&iso, &gv(&[1, 0])), gv(&[-1, 0]));
        assert_eq!(apply_tau(&iso, &gv(&[1, 1])), gv(&[1, 1]));
        assert_eq!(iso.det_a(1), Scalar::from_int(-1));
    }

    #[test]
    fn validation() {
        let l = z2([1, 0, 0, 0, 0, 0, 0]);
        let id = PreservingIso::identity(l.shape());
        assert!(validate_preserving(&id, &l, &l).unwrap().valid());
        assert!(validate_preserving(&f1_iso(0, Scalar::from_int(-1)), &l, &l).unwrap().valid());
        let r = validate_preserving(&f1_iso(0, Scalar::from_ratio(1, 2)), &l, &l).unwrap();
        assert_eq!(r.failure, Some(ValidationFailure::Forward(0, GroupVector::new(vec![Scalar::from_ratio(1, 2), Scalar::zero()]))));
        let other = z2([0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(validate_preserving(&id, &l, &other).unwrap_err(), Error::ShapeMismatch);
    }

    #[test]
    fn nu_must_preserve_blocks() {
        let s = Shape::new([1, 1, 0, 0, 0, 0, 0]).unwrap();
        let mut iso = PreservingIso::identity(&s);
        iso.nu = vec![2, 1];
        assert!(matches!(iso.check(), Err(Error::InvalidIso(_))));
        let s = Shape::new([2, 0, 0, 0, 0, 0, 0]).unwrap();
        let mut iso = PreservingIso::identity(&s);
        iso.nu = vec![2, 1];
        iso.check().unwrap();
        let v = GroupVector::from_ints(&[1, 2, 3, 4]);
        assert_eq!(apply_tau(&iso, &v), GroupVector::from_ints(&[3, 4, 1, 2]));
    }

    #[test]
    fn decomposition() {
        let s = Shape::new([1, 0, 0, 0, 1, 0, 0]).unwrap();
        let mut iso = PreservingIso::identity(&s);
        iso.blocks.insert(Block::B15, linalg::from_ints(&[&[3]]));
        let (nu, t1, t2) = decompose_tau(&iso);
        assert_eq!(nu.tau_matrix(), linalg::identity(3));
        assert_eq!(t1.tau_matrix(), linalg::identity(3));
        // D5 = tilde(B15) = (3; -3)
        assert_eq!(t2.tau_matrix(), linalg::from_ints(&[&[1, 0, 3], &[0, 1, -3], &[0, 0, 1]]));

        iso.a[0] = Scalar::from_int(1);
        iso.b[0] = Scalar::from_int(2);
        iso.blocks.insert(Block::B55, linalg::from_ints(&[&[-1]]));
        iso.blocks.insert(Block::B15, linalg::from_ints(&[&[0]]));
        let (_, t1, t2) = decompose_tau(&iso);
        assert_eq!(t2.tau_matrix(), linalg::identity(3));
        assert_eq!(t1.tau_matrix(), iso.tau_matrix());
    }

    #[test]
    fn matches_the_coordinate_formulas() {
        // alpha*_{I5} = (a_1 - a_{bar 1}) B15 - a_{bar 2} B25 + a_5 B55
        let s = Shape::new([1, 1, 0, 0, 1, 0, 0]).unwrap();
        let mut iso = PreservingIso::identity(&s);
        iso.blocks.insert(Block::B15, linalg::from_ints(&[&[2]]));
        iso.blocks.insert(Block::B25, linalg::from_ints(&[&[5]]));
        iso.blocks.insert(Block::B55, linalg::from_ints(&[&[-3]]));
        iso.a[1] = Scalar::from_int(4);
        iso.b[1] = Scalar::from_int(7);
        let alpha = GroupVector::from_ints(&[1, 2, 3, 4, 5, 0]);
        let img = apply_tau(&iso, &alpha);
        assert_eq!(img[4], Scalar::from_int((1 - 2) * 2 - 4 * 5 + 5 * -3));
        // I_2 pair: (a_2, a_{bar 2}) A_2 = (3 + 4*4, 7*4)
        assert_eq!((img[2].clone(), img[3].clone()), (Scalar::from_int(19), Scalar::from_int(28)));
    }

    #[test]
    fn sigma_is_fixed() {
        let s = Shape::new([1, 1, 1, 1, 1, 1, 0]).unwrap();
        let mut iso = PreservingIso::identity(&s);
        for p in 1..=4 {
            iso.a[p - 1] = Scalar::from_int(p as i64);
            iso.b[p - 1] = Scalar::from_int(-2);
        }
        for blk in Block::ALL {
            if !blk.is_diagonal() {
                iso.blocks.insert(blk, linalg::from_ints(&[&[1]]));
            }
        }
        iso.blocks.insert(Block::B36, linalg::from_ints(&[&[1], &[2]]));
        iso.check().unwrap();
        assert_eq!(sigma_mismatch(&iso), None);
        for p in 1..=4 {
            assert_eq!(iso.det_a(p), iso.b[p - 1]);
        }
    }
}
