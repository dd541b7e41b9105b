//! Exact scalars: rationals, optionally extended by a fixed `sqrt(d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A value `re + im * sqrt(d)` with rational parts.
///
/// `d == 0` exactly when `im == 0`, so rationals compare equal no matter
/// which field they were produced in. Combining two values with different
/// nonzero radicands is a logic error and panics.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
    d: i64,
}

fn join_radicand(a: i64, b: i64) -> i64 {
    match (a, b) {
        (0, x) | (x, 0) => x,
        (x, y) if x == y => x,
        (x, y) => panic!("scalars from different fields: sqrt({x}) and sqrt({y})"),
    }
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational, d: i64) -> Scalar {
        let mut s = Scalar { re, im, d };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.im.is_zero() {
            self.d = 0;
        } else {
            assert!(self.d != 0, "irrational part without a radicand");
        }
    }

    pub fn zero() -> Scalar {
        Scalar { re: BigRational::zero(), im: BigRational::zero(), d: 0 }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(n))
    }

    /// `n / m`; panics if `m == 0`.
    pub fn from_ratio(n: i64, m: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(m)))
    }

    pub fn from_rational(re: BigRational) -> Scalar {
        Scalar { re, im: BigRational::zero(), d: 0 }
    }

    /// The element `sqrt(d)` itself.
    pub fn sqrt_of(d: i64) -> Scalar {
        Scalar::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.re
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.im
    }

    /// Radicand of the irrational part, 0 for rationals.
    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_bigint().and_then(|n| n.to_i64())
    }

    /// Galois conjugate `re - im*sqrt(d)`.
    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -self.im.clone(), d: self.d }
    }

    /// Field norm `re^2 - d*im^2`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.d));
        &self.re * &self.re - d * &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar::from_rational(self.re.recip()));
        }
        let n = self.norm();
        let c = self.conj();
        Some(Scalar::new(c.re / &n, c.im / n, self.d))
    }

    /// Integer power; negative exponents invert (panics on `0^-k`).
    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Positive in the canonical sense: `re > 0`, or `re == 0` and `im > 0`.
    pub fn is_canonically_positive(&self) -> bool {
        match self.re.cmp(&BigRational::zero()) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.im.is_positive(),
        }
    }

    /// Height: the largest absolute value among numerators and denominators.
    pub fn height(&self) -> BigInt {
        [self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()]
            .iter()
            .map(|n| n.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// An `n`-th root inside `Q` or `Q(sqrt d)` (with `d = field_d`, 0 for `Q`).
    ///
    /// Positive roots are preferred. Returns `None` when no root lies in
    /// the field, or when the search is not supported (odd roots of
    /// irrational values).
    pub fn nth_root(&self, n: u32, field_d: i64) -> Option<Scalar> {
        assert!(n >= 1);
        if n == 1 || self.is_zero() {
            return Some(self.clone());
        }
        if self.is_rational() {
            if let Some(r) = rational_root(&self.re, n) {
                return Some(Scalar::from_rational(r));
            }
            if n == 2 && field_d != 0 {
                // c = d * v^2 gives v*sqrt(d).
                let q = &self.re / BigRational::from_integer(BigInt::from(field_d));
                if let Some(v) = rational_root(&q, 2) {
                    return Some(Scalar::new(BigRational::zero(), v, field_d));
                }
            }
            if n.is_multiple_of(2) && field_d != 0 {
                let half = self.nth_root(2, field_d)?;
                return half.nth_root(n / 2, field_d);
            }
            return None;
        }
        if n % 2 == 1 {
            return None;
        }
        let half = self.irrational_sqrt()?;
        half.nth_root(n / 2, field_d)
    }

    /// Square root of `a + b sqrt(d)`, `b != 0`, in the same field.
    fn irrational_sqrt(&self) -> Option<Scalar> {
        // (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d.
        let s = rational_root(&self.norm(), 2)?;
        let two = BigRational::from_integer(BigInt::from(2));
        for u2 in [(&self.re + &s) / &two, (&self.re - &s) / &two] {
            if u2.is_zero() {
                continue;
            }
            if let Some(u) = rational_root(&u2, 2) {
                let v = &self.im / (&two * &u);
                return Some(Scalar::new(u, v, self.d));
            }
        }
        None
    }

    /// Canonical machine encoding: `p/q` or `p/q+r/s*sqrt(d)`.
    pub fn to_canonical_string(&self) -> String {
        let re = format!("{}/{}", self.re.numer(), self.re.denom());
        if self.im.is_zero() {
            return re;
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let im = self.im.abs();
        format!("{re}{sign}{}/{}*sqrt({})", im.numer(), im.denom(), self.d)
    }

    /// True when the human rendering needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        !self.im.is_zero() && !self.re.is_zero()
    }
}

fn rational_root(r: &BigRational, n: u32) -> Option<BigRational> {
    let neg = r.is_negative();
    if neg && n.is_multiple_of(2) {
        return None;
    }
    let num = int_root(&r.numer().abs(), n)?;
    let den = int_root(r.denom(), n)?;
    let root = BigRational::new(num, den);
    Some(if neg { -root } else { root })
}

fn int_root(a: &BigInt, n: u32) -> Option<BigInt> {
    let r = a.nth_root(n);
    if num_traits::pow::pow(r.clone(), n as usize) == *a {
        Some(r)
    } else {
        None
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_abs = self.im.abs();
        let irr = if im_abs.is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_rational(&im_abs), self.d)
        };
        let neg = self.im.is_negative();
        if self.re.is_zero() {
            if neg {
                write!(f, "-{irr}")
            } else {
                write!(f, "{irr}")
            }
        } else {
            write!(f, "{}{}{irr}", fmt_rational(&self.re), if neg { "-" } else { "+" })
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed scalar `{0}`")]
pub struct ParseScalarError(pub String);

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let ok = |t: &str| {
        let t = t.strip_prefix(['+', '-']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        None if ok(s) => Some(BigRational::from_integer(s.parse().ok()?)),
        Some((p, q)) if ok(p) && !q.is_empty() && q.bytes().all(|b| b.is_ascii_digit()) => {
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p.parse().ok()?, q))
            }
        }
        _ => None,
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts both the machine and the human rendering.
    fn from_str(text: &str) -> Result<Scalar, ParseScalarError> {
        let err = || ParseScalarError(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(at) = s.find("sqrt(") else {
            return parse_rational(&s).map(Scalar::from_rational).ok_or_else(err);
        };
        let tail = &s[at + 5..];
        let d: i64 = tail.strip_suffix(')').ok_or_else(err)?.parse().map_err(|_| err())?;
        let head = &s[..at];
        // head is `[re](+|-)[coef*]`
        let (head, coef) = match head.strip_suffix('*') {
            Some(h) => {
                let cut = h.rfind(['+', '-']).unwrap_or(0);
                (&h[..cut], Some(&h[cut..]))
            }
            None => (head, None),
        };
        let (re_text, im) = match coef {
            Some(c) => (head, parse_rational(c).ok_or_else(err)?),
            None => match head.chars().last() {
                Some('+') => (&head[..head.len() - 1], BigRational::one()),
                Some('-') => (&head[..head.len() - 1], -BigRational::one()),
                None => (head, BigRational::one()),
                _ => return Err(err()),
            },
        };
        // `-3/4*sqrt(2)` leaves the sign in coef with an empty head.
        let re = if re_text.is_empty() { BigRational::zero() } else { parse_rational(re_text).ok_or_else(err)? };
        if d == 0 {
            return Err(err());
        }
        Ok(Scalar::new(re, im, d))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.d == 0 && o.d == 0 {
            return Scalar::from_rational(&self.re + &o.re);
        }
        Scalar::new(&self.re + &o.re, &self.im + &o.im, join_radicand(self.d, o.d))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if self.d == 0 && o.d == 0 {
            return Scalar::from_rational(&self.re - &o.re);
        }
        Scalar::new(&self.re - &o.re, &self.im - &o.im, join_radicand(self.d, o.d))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.d == 0 && o.d == 0 {
            return Scalar::from_rational(&self.re * &o.re);
        }
        let d = join_radicand(self.d, o.d);
        let dd = BigRational::from_integer(BigInt::from(d));
        let re = &self.re * &o.re + &self.im * &o.im * dd;
        let im = &self.re * &o.im + &self.im * &o.re;
        Scalar::new(re, im, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone(), d: self.d }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im, d: self.d }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if self.d == 0 && o.d == 0 {
            self.re += &o.re;
        } else {
            *self = &*self + o;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        if self.d == 0 && o.d == 0 {
            self.re -= &o.re;
        } else {
            *self = &*self - o;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Is `d` square-free and not 0 or 1?
pub fn is_valid_radicand(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, m: i64) -> Scalar {
        Scalar::from_ratio(n, m)
    }

    fn quad(a: (i64, i64), b: (i64, i64), d: i64) -> Scalar {
        Scalar::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
            d,
        )
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2) * q(2, 3), q(1, 3));
        assert_eq!(q(3, 4).inv().unwrap(), q(4, 3));
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(q(2, 1).pow(-2), q(1, 4));
    }

    #[test]
    fn quadratic_arithmetic() {
        let r2 = Scalar::sqrt_of(2);
        assert_eq!(&r2 * &r2, Scalar::from_int(2));
        let x = quad((1, 1), (1, 1), 2);
        assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
        // irrational parts cancel back to a plain rational
        assert_eq!((&r2 - &r2).radicand(), 0);
    }

    #[test]
    #[should_panic]
    fn mixed_fields_panic() {
        let _ = Scalar::sqrt_of(2) + Scalar::sqrt_of(3);
    }

    #[test]
    fn roots() {
        assert_eq!(q(9, 4).nth_root(2, 0), Some(q(3, 2)));
        assert_eq!(q(2, 1).nth_root(2, 0), None);
        assert_eq!(q(-8, 1).nth_root(3, 0), Some(q(-2, 1)));
        assert_eq!(q(2, 1).nth_root(2, 2), Some(Scalar::sqrt_of(2)));
        // (1 + sqrt 2)^2 = 3 + 2 sqrt 2
        let sq = quad((3, 1), (2, 1), 2);
        assert_eq!(sq.nth_root(2, 2), Some(quad((1, 1), (1, 1), 2)));
    }

    #[test]
    fn display_and_parse() {
        for (s, v) in [
            ("3", q(3, 1)),
            ("-1/2", q(-1, 2)),
            ("sqrt(2)", Scalar::sqrt_of(2)),
            ("-3/4*sqrt(2)", quad((0, 1), (-3, 4), 2)),
            ("1+sqrt(2)", quad((1, 1), (1, 1), 2)),
            ("1/2-2*sqrt(-1)", quad((1, 2), (-2, 1), -1)),
        ] {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<Scalar>().unwrap(), v);
            assert_eq!(v.to_canonical_string().parse::<Scalar>().unwrap(), v);
        }
        assert_eq!(q(3, 1).to_canonical_string(), "3/1");
        assert_eq!(quad((0, 1), (-3, 4), 2).to_canonical_string(), "0/1-3/4*sqrt(2)");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn radicands() {
        assert!(is_valid_radicand(2));
        assert!(is_valid_radicand(-1));
        assert!(!is_valid_radicand(4));
        assert!(!is_valid_radicand(1));
        assert!(!is_valid_radicand(12));
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..7, -20i64..20, 1i64..7).prop_map(|(a, b, c, e)| quad((a, b), (c, e), 3))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
            prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        }
    }
}
