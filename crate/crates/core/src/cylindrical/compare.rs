//! Comparisons of the cylindrical structure, built from provenance.

use thiserror::Error;

use crate::cubemodel::{compare, CompareError, Cube, Sign, TMap, Tracked, Transform};
use crate::finspace::is_homotopy_equivalence;

use super::tracked::{track_cyl_concat, track_cyl_degeneracy, track_sym_paste};

fn leaf(u: &Cube, k: u32) -> Tracked {
    Tracked::leaf(u, k)
}

/// `λ_i u: E_i(∂⁻_i u) ⊗_i u -> u`, collapsing both cylinders on the minus face.
pub fn lambda(u: &Cube, i: usize) -> Result<TMap, CompareError> {
    let t = leaf(u, 0);
    let unit = track_cyl_degeneracy(&t.face(i, Sign::Minus)?, i)?;
    let src = track_cyl_concat(&unit, &t, i)?;
    compare(&src, &t, Transform::DropDir(i as u8))
}

/// `ρ_i u: u ⊗_i E_i(∂⁺_i u) -> u`.
pub fn rho(u: &Cube, i: usize) -> Result<TMap, CompareError> {
    let t = leaf(u, 0);
    let unit = track_cyl_degeneracy(&t.face(i, Sign::Plus)?, i)?;
    let src = track_cyl_concat(&t, &unit, i)?;
    compare(&src, &t, Transform::DropDir(i as u8))
}

/// `p_i u: E_i(u) -> e_i(u)`, the cylinder collapse.
pub fn projection(u: &Cube, i: usize) -> Result<TMap, CompareError> {
    let t = leaf(u, 0);
    compare(&track_cyl_degeneracy(&t, i)?, &t.degeneracy(i)?, Transform::DropDir(i as u8))
}

/// `σ_1 u: E_1E_1(u) -> E_2E_1(u)`, swapping the two cylinder coordinates.
pub fn sigma(u: &Cube) -> Result<TMap, CompareError> {
    let e = track_cyl_degeneracy(&leaf(u, 0), 1)?;
    compare(&track_cyl_degeneracy(&e, 1)?, &track_cyl_degeneracy(&e, 2)?, Transform::Identity)
}

/// `u ⊗_i (v ⊗_i w) -> (u ⊗_i v) ⊗_i w`.
pub fn kappa(u: &Cube, v: &Cube, w: &Cube, i: usize) -> Result<TMap, CompareError> {
    let (a, b, c) = (leaf(u, 0), leaf(v, 1), leaf(w, 2));
    let src = track_cyl_concat(&a, &track_cyl_concat(&b, &c, i)?, i)?;
    let dst = track_cyl_concat(&track_cyl_concat(&a, &b, i)?, &c, i)?;
    compare(&src, &dst, Transform::Identity)
}

fn block(x: &Cube, y: &Cube, z: &Cube, u: &Cube) -> [Tracked; 4] {
    [leaf(x, 0), leaf(y, 1), leaf(z, 2), leaf(u, 3)]
}

fn rows_first(b: &[Tracked; 4]) -> Result<Tracked, CompareError> {
    let top = track_cyl_concat(&b[0], &b[1], 1)?;
    let bottom = track_cyl_concat(&b[2], &b[3], 1)?;
    Ok(track_cyl_concat(&top, &bottom, 2)?)
}

fn columns_first(b: &[Tracked; 4]) -> Result<Tracked, CompareError> {
    let left = track_cyl_concat(&b[0], &b[2], 2)?;
    let right = track_cyl_concat(&b[1], &b[3], 2)?;
    Ok(track_cyl_concat(&left, &right, 1)?)
}

/// `(x ⊗_1 y) ⊗_2 (z ⊗_1 u) -> (x ⊗_2 z) ⊗_1 (y ⊗_2 u)`.
pub fn chi(x: &Cube, y: &Cube, z: &Cube, u: &Cube) -> Result<TMap, CompareError> {
    let b = block(x, y, z, u);
    compare(&rows_first(&b)?, &columns_first(&b)?, Transform::Identity)
}

/// The same interchange, factored through the symmetric pasting.
pub fn chi_via_paste(x: &Cube, y: &Cube, z: &Cube, u: &Cube) -> Result<TMap, CompareError> {
    let b = block(x, y, z, u);
    let mid = track_sym_paste(&b[0], &b[1], &b[2], &b[3])?;
    let to = compare(&rows_first(&b)?, &mid, Transform::Identity)?;
    let from = compare(&mid, &columns_first(&b)?, Transform::Identity)?;
    Ok(from.after(&to)?)
}

/// The symmetry of the pasting: `⊗_12(x, y, z, u) s_1` against `⊗_12(x s_1, z s_1, y s_1, u s_1)`,
/// as the canonical relabeling between them.
pub fn paste_symmetry(x: &Cube, y: &Cube, z: &Cube, u: &Cube) -> Result<TMap, CompareError> {
    let b = block(x, y, z, u);
    let lhs = track_sym_paste(&b[0], &b[1], &b[2], &b[3])?.transpose(1)?;
    let s: Vec<Tracked> = b.iter().map(|t| t.transpose(1)).collect::<Result<_, _>>()?;
    let rhs = track_sym_paste(&s[0], &s[2], &s[1], &s[3])?;
    compare(&lhs, &rhs, Transform::Identity)
}

/// `ι_1(x, y): E_1(x) ⊗_2 E_1(y) -> E_1(x ⊗_1 y)`.
pub fn iota(x: &Cube, y: &Cube) -> Result<TMap, CompareError> {
    let (a, b) = (leaf(x, 0), leaf(y, 1));
    let src = track_cyl_concat(&track_cyl_degeneracy(&a, 1)?, &track_cyl_degeneracy(&b, 1)?, 2)?;
    let dst = track_cyl_degeneracy(&track_cyl_concat(&a, &b, 1)?, 1)?;
    compare(&src, &dst, Transform::Identity)
}

/// Special, with every component a homotopy equivalence.
pub fn is_weak_equivalence(f: &TMap) -> bool {
    f.is_special() && f.comps().iter().all(is_homotopy_equivalence)
}

/// Orientation of a link in a zig-zag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// The link leaves the current cube.
    Forward,
    /// The link arrives at the current cube.
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("link {0} does not start or end at the current cube")]
    Broken(usize),
    #[error("link {0} is not a weak equivalence")]
    NotWeak(usize),
    #[error("chain ends at a different cube")]
    WrongEnd,
    #[error("endpoints have different vertices")]
    Vertices,
}

/// Checks a zig-zag of weak equivalences from `u` to `v`.
pub fn weak_equivalence_chain(u: &Cube, v: &Cube, links: &[(TMap, Orientation)]) -> Result<(), ChainError> {
    if u.degree() != v.degree() || u.vertices().iter().any(|&p| u.space(p) != v.space(p)) {
        return Err(ChainError::Vertices);
    }
    let mut cur = u.clone();
    for (k, (f, o)) in links.iter().enumerate() {
        let (from, to) = match o {
            Orientation::Forward => (f.src(), f.dst()),
            Orientation::Backward => (f.dst(), f.src()),
        };
        if from != &cur {
            return Err(ChainError::Broken(k));
        }
        if !is_weak_equivalence(f) {
            return Err(ChainError::NotWeak(k));
        }
        cur = to.clone();
    }
    if &cur != v {
        return Err(ChainError::WrongEnd);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylindrical::{cyl_concat_t, cyl_degeneracy};
    use crate::finspace::{pair_index, product, FinSpace, IntervalModel, SpaceMap};

    fn cospan(k: usize, base: &FinSpace) -> Cube {
        let i = IntervalModel::new(k).unwrap();
        let (c, _, _) = product(base, &i.space);
        let m = SpaceMap::from_fn(base, &c, |b| pair_index(&c, base, b, &i.space, i.point(0)));
        let q = SpaceMap::from_fn(base, &c, |b| pair_index(&c, base, b, &i.space, i.point(i.end())));
        Cube::cospan(&m, &q).unwrap()
    }

    fn pt() -> FinSpace {
        FinSpace::point("*")
    }

    #[test]
    fn sigma_swaps_and_is_special() {
        let s = sigma(&Cube::from_space(&pt())).unwrap();
        assert!(s.is_special() && s.is_invertible());
        assert!(!s.is_identity());
        for a in Sign::both() {
            assert!(s.face(1, a).unwrap().is_identity());
            assert!(s.face(2, a).unwrap().is_identity());
        }
    }

    #[test]
    fn lambda_on_degenerate_point() {
        let u = Cube::from_space(&pt()).degeneracy(1).unwrap();
        let l = lambda(&u, 1).unwrap();
        assert!(is_weak_equivalence(&l));
        assert!(!l.is_invertible());
        assert!(is_weak_equivalence(&rho(&u, 1).unwrap()));
    }

    #[test]
    fn projection_components() {
        let x = FinSpace::new(&["a", "b"], &[("a", "b")]).unwrap();
        let p = projection(&Cube::from_space(&x), 1).unwrap();
        assert!(p.comp(0).is_identity() && p.comp(2).is_identity());
        assert_eq!(p.comp(1).src().len(), 6);
        assert!(is_weak_equivalence(&p));
    }

    #[test]
    fn associator_and_interchange() {
        let c = cospan(1, &pt());
        let k = kappa(&c, &c.reverse(1).unwrap(), &c, 1).unwrap();
        assert!(k.is_special() && k.is_invertible());
        let sq = c.product(&c);
        let (x, y, z, u) = (sq.clone(), sq.reverse(1).unwrap(), sq.reverse(2).unwrap(), sq.reverse(1).unwrap().reverse(2).unwrap());
        let direct = chi(&x, &y, &z, &u).unwrap();
        assert!(direct.is_special() && direct.is_invertible());
        assert_eq!(chi_via_paste(&x, &y, &z, &u).unwrap(), direct);
        assert!(paste_symmetry(&x, &y, &z, &u).unwrap().is_invertible());
        let i = iota(&c, &c.reverse(1).unwrap()).unwrap();
        assert!(i.is_special() && i.is_invertible());
    }

    #[test]
    fn triangle_fails() {
        let x = cospan(1, &pt());
        let y = x.reverse(1).unwrap();
        let a = x.face(1, Sign::Plus).unwrap();
        let e = cyl_degeneracy(&a, 1).unwrap();
        let k = kappa(&x, &e, &y, 1).unwrap();
        let r = cyl_concat_t(&rho(&x, 1).unwrap(), &TMap::identity(&y), 1).unwrap();
        let one_l = cyl_concat_t(&TMap::identity(&x), &lambda(&y, 1).unwrap(), 1).unwrap();
        let lhs = r.after(&k).unwrap();
        assert_eq!(lhs.src(), one_l.src());
        assert_eq!(lhs.dst(), one_l.dst());
        assert_ne!(lhs, one_l);
    }
}
