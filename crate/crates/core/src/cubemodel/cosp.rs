//! Comparisons of the weak cubical structure given by chosen pushouts.

use super::cube::{Cube, Sign};
use super::tmap::TMap;
use super::track::{compare, CompareError, Tracked, Transform};

/// `u +_i (v +_i w) -> (u +_i v) +_i w`.
pub fn kappa(u: &Cube, v: &Cube, w: &Cube, i: usize) -> Result<TMap, CompareError> {
    let (a, b, c) = (Tracked::leaf(u, 0), Tracked::leaf(v, 1), Tracked::leaf(w, 2));
    let src = a.concat(&b.concat(&c, i)?, i)?;
    let dst = a.concat(&b, i)?.concat(&c, i)?;
    compare(&src, &dst, Transform::Identity)
}

/// `(x +_1 y) +_2 (z +_1 u) -> (x +_2 z) +_1 (y +_2 u)`.
pub fn chi(x: &Cube, y: &Cube, z: &Cube, u: &Cube) -> Result<TMap, CompareError> {
    let (a, b, c, d) = (Tracked::leaf(x, 0), Tracked::leaf(y, 1), Tracked::leaf(z, 2), Tracked::leaf(u, 3));
    let src = a.concat(&b, 1)?.concat(&c.concat(&d, 1)?, 2)?;
    let dst = a.concat(&c, 2)?.concat(&b.concat(&d, 2)?, 1)?;
    compare(&src, &dst, Transform::Identity)
}

/// `e_i(∂⁻_i u) +_i u -> u`.
pub fn lambda(u: &Cube, i: usize) -> Result<TMap, CompareError> {
    let t = Tracked::leaf(u, 0);
    let src = t.face(i, Sign::Minus)?.degeneracy(i)?.concat(&t, i)?;
    compare(&src, &t, Transform::Identity)
}

/// `u +_i e_i(∂⁺_i u) -> u`.
pub fn rho(u: &Cube, i: usize) -> Result<TMap, CompareError> {
    let t = Tracked::leaf(u, 0);
    let src = t.concat(&t.face(i, Sign::Plus)?.degeneracy(i)?, i)?;
    compare(&src, &t, Transform::Identity)
}

/// `e_1 e_1 u -> e_2 e_1 u`.
pub fn sigma(u: &Cube) -> Result<TMap, CompareError> {
    let t = Tracked::leaf(u, 0);
    let e = t.degeneracy(1)?;
    compare(&e.degeneracy(1)?, &e.degeneracy(2)?, Transform::Identity)
}

/// `e_1(x) +_2 e_1(y) -> e_1(x +_1 y)`.
pub fn iota(x: &Cube, y: &Cube) -> Result<TMap, CompareError> {
    let (a, b) = (Tracked::leaf(x, 0), Tracked::leaf(y, 1));
    let src = a.degeneracy(1)?.concat(&b.degeneracy(1)?, 2)?;
    let dst = a.concat(&b, 1)?.degeneracy(1)?;
    compare(&src, &dst, Transform::Identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::{FinSpace, IntervalModel, SpaceMap};

    fn cospan(k: usize, base: &FinSpace) -> Cube {
        let i = IntervalModel::new(k).unwrap();
        let (c, _, _) = crate::finspace::product(base, &i.space);
        let m = SpaceMap::from_fn(base, &c, |b| crate::finspace::pair_index(&c, base, b, &i.space, i.point(0)));
        let q = SpaceMap::from_fn(base, &c, |b| crate::finspace::pair_index(&c, base, b, &i.space, i.point(i.end())));
        Cube::cospan(&m, &q).unwrap()
    }

    #[test]
    fn units_are_identities() {
        let x = FinSpace::new(&["a", "b"], &[("a", "b")]).unwrap();
        let u = cospan(1, &x);
        assert!(lambda(&u, 1).unwrap().is_identity());
        assert!(rho(&u, 1).unwrap().is_identity());
        assert!(sigma(&u).unwrap().is_identity());
    }

    #[test]
    fn associator_faces_are_identities() {
        let x = FinSpace::point("*");
        let (u, v, w) = (cospan(1, &x), cospan(2, &x), cospan(1, &x));
        let k = kappa(&u, &v, &w, 1).unwrap();
        assert!(k.is_special() && k.is_invertible());
        assert!(k.face(1, Sign::Minus).unwrap().is_identity());
        assert!(k.face(1, Sign::Plus).unwrap().is_identity());
    }

    #[test]
    fn interchange_square() {
        let x = FinSpace::point("*");
        let c = cospan(1, &x);
        let sq = c.product(&c);
        let k = chi(&sq, &sq.reverse(1).unwrap(), &sq.reverse(2).unwrap(), &sq.reverse(1).unwrap().reverse(2).unwrap()).unwrap();
        assert!(k.is_special() && k.is_invertible());
        let e = iota(&c, &c.reverse(1).unwrap()).unwrap();
        assert!(e.is_identity());
    }
}
