//! The standard test algebras `F1` .. `F6`.

use std::sync::Arc;

use crate::kernel::{Algebra, Field, GroupVector, Lattice, Scalar, Shape};

/// Shape `(1,0,0,0,0,0,0)`, `Gamma = Z^2`.
pub fn f1() -> Arc<Algebra> {
    Algebra::from_int_basis([1, 0, 0, 0, 0, 0, 0], &[&[1, 0], &[0, 1]]).expect("valid fixture")
}

/// Shape `(0,0,0,0,0,0,1)`, `Gamma = 0`: the classical Poisson algebra in `t_1, t_{bar 1}`.
pub fn f2() -> Arc<Algebra> {
    Algebra::from_int_basis([0, 0, 0, 0, 0, 0, 1], &[]).expect("valid fixture")
}

/// Shape `(0,0,0,1,0,0,0)`, `Gamma = Z^2`.
pub fn f3() -> Arc<Algebra> {
    Algebra::from_int_basis([0, 0, 0, 1, 0, 0, 0], &[&[1, 0], &[0, 1]]).expect("valid fixture")
}

/// Shape `(0,1,0,0,0,0,0)`, `Gamma = Z^2`.
pub fn f4() -> Arc<Algebra> {
    Algebra::from_int_basis([0, 1, 0, 0, 0, 0, 0], &[&[1, 0], &[0, 1]]).expect("valid fixture")
}

/// Shape `(0,0,0,0,1,0,0)`, `Gamma = Z eps_1`.
pub fn f5() -> Arc<Algebra> {
    Algebra::from_int_basis([0, 0, 0, 0, 1, 0, 0], &[&[1, 0]]).expect("valid fixture")
}

/// Shape `(1,0,0,0,0,0,0)` over `Q(sqrt 2)` with the rank-3 lattice spanned
/// by `eps_1`, `eps_{bar 1}` and `sqrt(2) eps_1`.
pub fn f6() -> Arc<Algebra> {
    let s = Shape::new([1, 0, 0, 0, 0, 0, 0]).expect("valid shape");
    let basis = vec![
        GroupVector::from_ints(&[1, 0]),
        GroupVector::from_ints(&[0, 1]),
        GroupVector::new(vec![Scalar::sqrt_of(2), Scalar::zero()]),
    ];
    Algebra::new(Lattice::new(s, Field::quadratic(2).expect("2 is square-free"), basis).expect("valid fixture"))
}

pub fn by_name(name: &str) -> Option<Arc<Algebra>> {
    Some(match name.to_ascii_uppercase().as_str() {
        "F1" => f1(),
        "F2" => f2(),
        "F3" => f3(),
        "F4" => f4(),
        "F5" => f5(),
        "F6" => f6(),
        _ => return None,
    })
}

pub fn all() -> Vec<(&'static str, Arc<Algebra>)> {
    vec![("F1", f1()), ("F2", f2()), ("F3", f3()), ("F4", f4()), ("F5", f5()), ("F6", f6())]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let all = all();
        assert_eq!(all.len(), 6);
        assert_eq!(f6().lattice().rank(), 3);
        assert!(by_name("f3").is_some() && by_name("F9").is_none());
    }
}
