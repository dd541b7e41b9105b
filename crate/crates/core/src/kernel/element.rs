//! Algebras and their elements.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::lattice::{Field, Lattice};
use super::scalar::Scalar;
use super::shape::Shape;
use super::vector::{GroupVector, Key, MultiIndex};
use crate::error::{Error, Result};

/// `H(l, Gamma)` over a given field; the lattice carries shape and field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    lattice: Lattice,
}

impl Algebra {
    pub fn new(lattice: Lattice) -> Arc<Algebra> {
        Arc::new(Algebra { lattice })
    }

    /// Convenience: validated lattice from integer rows over `Q`.
    pub fn from_int_basis(l: [usize; 7], basis: &[&[i64]]) -> Result<Arc<Algebra>> {
        let shape = Shape::new(l)?;
        let basis = basis.iter().map(|b| GroupVector::from_ints(b)).collect();
        Ok(Algebra::new(Lattice::new(shape, Field::Rational, basis)?))
    }

    pub fn shape(&self) -> &Shape {
        self.lattice.shape()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn field(&self) -> Field {
        self.lattice.field()
    }

    pub fn dim(&self) -> usize {
        self.shape().dim()
    }

    /// Is `key` a basis label of this algebra (or of its extension)?
    pub fn accepts(&self, key: &Key, extended: bool) -> Result<()> {
        let s = self.shape();
        if key.alpha.len() != s.dim() {
            return Err(Error::WrongLength { expected: s.dim(), found: key.alpha.len() });
        }
        if key.index.len() != s.dim() {
            return Err(Error::WrongLength { expected: s.dim(), found: key.index.len() });
        }
        if !self.lattice.contains(&key.alpha) {
            return Err(Error::NotInLattice(key.alpha.clone()));
        }
        if !extended {
            for p in s.all_indices() {
                if key.index[s.slot(p)] != 0 && !s.t_allowed(p) {
                    return Err(Error::ForbiddenIndex { p });
                }
            }
        }
        Ok(())
    }

    fn t_key(&self, p: usize) -> Key {
        let mut k = Key::unit(self.dim());
        k.index[self.shape().slot(p)] = 1;
        k
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A finite linear combination of monomials `x^{alpha,i}`.
#[derive(Clone)]
pub struct Element {
    algebra: Arc<Algebra>,
    extended: bool,
    terms: BTreeMap<Key, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, o: &Element) -> bool {
        self.extended == o.extended && self.terms == o.terms && same_algebra(&self.algebra, &o.algebra)
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(algebra: &Arc<Algebra>) -> Element {
        Element { algebra: algebra.clone(), extended: false, terms: BTreeMap::new() }
    }

    pub fn one(algebra: &Arc<Algebra>) -> Element {
        Element::from_key_unchecked(algebra, false, Key::unit(algebra.dim()), Scalar::one())
    }

    /// `c * x^{alpha,i}`, checked against the lattice and index constraints.
    pub fn monomial(algebra: &Arc<Algebra>, key: Key, c: Scalar) -> Result<Element> {
        algebra.accepts(&key, false)?;
        Ok(Element::from_key_unchecked(algebra, false, key, c))
    }

    /// Monomial of the enlarged algebra, where every `t_p` is allowed.
    pub fn extended_monomial(algebra: &Arc<Algebra>, key: Key, c: Scalar) -> Result<Element> {
        algebra.accepts(&key, true)?;
        Ok(Element::from_key_unchecked(algebra, true, key, c))
    }

    /// `x^alpha`.
    pub fn x(algebra: &Arc<Algebra>, alpha: GroupVector) -> Result<Element> {
        let dim = algebra.dim();
        Element::monomial(algebra, Key::new(alpha, MultiIndex::zeros(dim)), Scalar::one())
    }

    /// `x^alpha` for integer coordinates.
    pub fn x_ints(algebra: &Arc<Algebra>, alpha: &[i64]) -> Result<Element> {
        Element::x(algebra, GroupVector::from_ints(alpha))
    }

    /// `t_p` of the restricted algebra.
    pub fn t(algebra: &Arc<Algebra>, p: usize) -> Result<Element> {
        algebra.shape().check_index(p)?;
        Element::monomial(algebra, algebra.t_key(p), Scalar::one())
    }

    /// `t_p` of the enlarged algebra.
    pub fn t_extended(algebra: &Arc<Algebra>, p: usize) -> Result<Element> {
        algebra.shape().check_index(p)?;
        Element::extended_monomial(algebra, algebra.t_key(p), Scalar::one())
    }

    pub(crate) fn from_key_unchecked(algebra: &Arc<Algebra>, extended: bool, key: Key, c: Scalar) -> Element {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        Element { algebra: algebra.clone(), extended, terms }
    }

    pub(crate) fn from_terms_unchecked(algebra: &Arc<Algebra>, extended: bool, mut terms: BTreeMap<Key, Scalar>) -> Element {
        terms.retain(|_, c| !c.is_zero());
        Element { algebra: algebra.clone(), extended, terms }
    }

    /// Build from explicit terms, validating every key.
    pub fn from_terms(algebra: &Arc<Algebra>, extended: bool, terms: Vec<(Key, Scalar)>) -> Result<Element> {
        let mut map: BTreeMap<Key, Scalar> = BTreeMap::new();
        for (k, c) in terms {
            algebra.accepts(&k, extended)?;
            *map.entry(k).or_insert_with(Scalar::zero) += &c;
        }
        Ok(Element::from_terms_unchecked(algebra, extended, map))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Key, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &Key) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The single term of a monomial.
    pub fn as_monomial(&self) -> Option<(&Key, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Same terms, viewed in the enlarged algebra.
    pub fn to_extended(&self) -> Element {
        Element { algebra: self.algebra.clone(), extended: true, terms: self.terms.clone() }
    }

    /// Back to the restricted algebra; fails if a forbidden `t_p` occurs.
    pub fn to_restricted(&self) -> Result<Element> {
        for k in self.terms.keys() {
            self.algebra.accepts(k, false).map_err(|_| Error::NotRestricted)?;
        }
        Ok(Element { algebra: self.algebra.clone(), extended: false, terms: self.terms.clone() })
    }

    pub(crate) fn check_compatible(&self, o: &Element) -> Result<()> {
        if !same_algebra(&self.algebra, &o.algebra) {
            return Err(Error::MixedAlgebra);
        }
        if self.extended != o.extended {
            return Err(Error::MixedExtension);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Element) -> Result<Element> {
        self.check_compatible(o)?;
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            add_term(&mut terms, k.clone(), c.clone());
        }
        Ok(Element { algebra: self.algebra.clone(), extended: self.extended, terms })
    }

    pub fn try_sub(&self, o: &Element) -> Result<Element> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element { algebra: self.algebra.clone(), extended: self.extended, terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect();
        Element { algebra: self.algebra.clone(), extended: self.extended, terms }
    }

    /// Associative commutative product: exponents add.
    pub fn multiply(&self, o: &Element) -> Result<Element> {
        self.check_compatible(o)?;
        let mut terms = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                add_term(&mut terms, k1.times(k2), c1 * c2);
            }
        }
        terms.retain(|_, c: &mut Scalar| !c.is_zero());
        Ok(Element { algebra: self.algebra.clone(), extended: self.extended, terms })
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Element { algebra: self.algebra.clone(), extended: self.extended, ..Element::one(&self.algebra) };
        for _ in 0..k {
            acc = acc.multiply(self).expect("same algebra");
        }
        acc
    }

    /// Apply a map to every term and sum.
    pub(crate) fn map_terms(&self, mut f: impl FnMut(&Key, &Scalar, &mut BTreeMap<Key, Scalar>)) -> Element {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            f(k, c, &mut out);
        }
        Element::from_terms_unchecked(&self.algebra, self.extended, out)
    }
}

pub(crate) fn add_term(terms: &mut BTreeMap<Key, Scalar>, k: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    /// Panics on mixed operands; use [`Element::try_add`] to get an error.
    fn add(self, o: &Element) -> Element {
        self.try_add(o).expect("compatible operands")
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        self.try_sub(o).expect("compatible operands")
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    fn mul(self, o: &Element) -> Element {
        self.multiply(o).expect("compatible operands")
    }
}

/// Plain debugging rendering; the CLI has the canonical grammar.
impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s = self.algebra.shape();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let alpha: Vec<String> = k.alpha.coords().iter().map(|x| x.to_string()).collect();
                let mut t = String::new();
                for p in s.all_indices() {
                    let e = k.index[s.slot(p)];
                    if e > 0 {
                        t.push_str(&format!("*t{p}^{e}"));
                    }
                }
                format!("({c})*x[({})]{t}", alpha.join(","))
            })
            .collect();
        write!(f, "{}{}", parts.join(" + "), if self.extended { " [ext]" } else { "" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1() -> Arc<Algebra> {
        Algebra::from_int_basis([1, 0, 0, 0, 0, 0, 0], &[&[1, 0], &[0, 1]]).unwrap()
    }

    fn f2() -> Arc<Algebra> {
        Algebra::from_int_basis([0, 0, 0, 0, 0, 0, 1], &[]).unwrap()
    }

    #[test]
    fn product_adds_exponents() {
        let a = f1();
        let u = Element::x_ints(&a, &[1, 0]).unwrap();
        let v = Element::x_ints(&a, &[0, 1]).unwrap();
        assert_eq!(&u * &v, Element::x_ints(&a, &[1, 1]).unwrap());
        assert_eq!(&Element::one(&a) * &u, u);
    }

    #[test]
    fn classical_product() {
        let a = f2();
        let t1 = Element::t(&a, 1).unwrap();
        let t2 = Element::t(&a, 2).unwrap();
        let lhs = &(&t1 + &t2) * &t1;
        let expect = &t1.pow(2) + &(&t1 * &t2);
        assert_eq!(lhs, expect);
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn constraints_enforced() {
        let a = f1();
        assert_eq!(Element::t(&a, 1).unwrap_err(), Error::ForbiddenIndex { p: 1 });
        assert!(Element::t_extended(&a, 1).is_ok());
        let half = GroupVector::new(vec![Scalar::from_ratio(1, 2), Scalar::zero()]);
        assert!(matches!(Element::x(&a, half), Err(Error::NotInLattice(_))));
    }

    #[test]
    fn zero_terms_pruned() {
        let a = f1();
        let u = Element::x_ints(&a, &[1, 0]).unwrap();
        assert!((&u - &u).is_zero());
        assert!(u.scale(&Scalar::zero()).is_zero());
    }

    #[test]
    fn mixed_algebras_rejected() {
        let u = Element::one(&f1());
        let v = Element::one(&f2());
        assert_eq!(u.multiply(&v).unwrap_err(), Error::MixedAlgebra);
        assert_eq!(u.multiply(&u.to_extended()).unwrap_err(), Error::MixedExtension);
    }
}
