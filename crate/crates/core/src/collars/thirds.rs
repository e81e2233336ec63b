//! Collared degeneracies and small collared building blocks.

use super::{Collar, PreCollared};
use crate::cubemodel::cube::{coords_of, pos_count, pos_of, sharp};
use crate::cubemodel::{Cube, CubeError, Sign};
use crate::finspace::{cylinder, pair_index, product_map, FinSpace, IntervalModel, SpaceMap};

/// Interval degree of the collared degeneracy's middle cylinder.
pub const THIRDS: usize = 3;

/// The endpoint collars of `X -> X × I_3 <- X`: each covers one third of the cylinder.
pub fn thirds_collars(x: &FinSpace) -> (Collar, Collar) {
    let short = cylinder(x, 1).unwrap();
    let long = cylinder(x, THIRDS).unwrap();
    let end = 2 * THIRDS;
    let minus = SpaceMap::from_fn(&short.space, &long.space, |e| long.at(short.collapse.apply(e), short.level(e)));
    let plus = SpaceMap::from_fn(&short.space, &long.space, |e| long.at(short.collapse.apply(e), end - short.level(e)));
    (Collar { k: 1, map: minus }, Collar { k: 1, map: plus })
}

/// Collared degeneracy in direction `i`: a thirds-collared cylinder, with every existing collar
/// carried along the cylinder coordinate.
pub fn collared_degeneracy(u: &PreCollared, i: usize) -> Result<PreCollared, CubeError> {
    let n = u.degree();
    if i < 1 || i > n + 1 {
        return Err(CubeError::IndexOutOfRange { what: "collared degeneracy", index: i, degree: n });
    }
    let first = degeneracy_first(u);
    let mut w = first;
    for j in 1..i {
        w = w.transpose(j)?;
    }
    Ok(w)
}

fn degeneracy_first(u: &PreCollared) -> PreCollared {
    let n = u.degree();
    let m = n + 1;
    let np = pos_count(m);
    let i3 = IntervalModel::new(THIRDS).unwrap();
    let id3 = SpaceMap::identity(&i3.space);
    let rest = |p: usize| pos_of(&coords_of(m, p)[1..]);
    let spaces: Vec<FinSpace> = (0..np)
        .map(|p| {
            let x = u.cube().space(rest(p));
            if coords_of(m, p)[0] == 0 {
                cylinder(x, THIRDS).unwrap().space
            } else {
                x.clone()
            }
        })
        .collect();
    let mut arrows = vec![vec![None; np]; m];
    let mut collars = vec![vec![None; np]; m];
    for p in 0..np {
        let t = coords_of(m, p);
        let r = rest(p);
        let x = u.cube().space(r);
        if t[0] != 0 {
            let long = cylinder(x, THIRDS).unwrap();
            arrows[0][p] = Some(if t[0] < 0 { long.d_minus } else { long.d_plus });
            let (lo, hi) = thirds_collars(x);
            collars[0][p] = Some(if t[0] < 0 { lo } else { hi });
        }
        for e in 1..m {
            if t[e] == 0 {
                continue;
            }
            let a = u.cube().arr(e - 1, r);
            let c = u.col(e - 1, r);
            if t[0] != 0 {
                arrows[e][p] = Some(a.clone());
                collars[e][p] = Some(c.clone());
                continue;
            }
            arrows[e][p] = Some(product_map(a, &id3));
            // ((x, s), c) -> (U(x, c), s)
            let dom = cylinder(&spaces[p], c.k).unwrap();
            let own = cylinder(x, c.k).unwrap();
            let target = &spaces[sharp(p, m, e)];
            let mut assign = vec![0; dom.space.len()];
            for a0 in 0..x.len() {
                for s in 0..i3.space.len() {
                    let xs = pair_index(&spaces[p], x, a0, &i3.space, s);
                    for j in 0..=2 * c.k {
                        let img = c.map.apply(own.at(a0, j));
                        assign[dom.at(xs, j)] = pair_index(target, c.map.dst(), img, &i3.space, s);
                    }
                }
            }
            collars[e][p] = Some(Collar { k: c.k, map: SpaceMap::raw(dom.space, target.clone(), assign) });
        }
    }
    PreCollared::raw(Cube::raw(m, spaces, arrows), collars)
}

/// `X -> X × I_1 <- ∅` (minus) or its mirror `∅ -> X × I_1 <- X` (plus), collared at the nonempty end.
pub fn half_open(x: &FinSpace, sign: Sign) -> PreCollared {
    let cyl = cylinder(x, 1).unwrap();
    let empty = FinSpace::empty();
    let none = SpaceMap::from_fn(&empty, &cyl.space, |_| 0);
    let ecyl = cylinder(&empty, 1).unwrap();
    let none_col = Collar { k: 1, map: SpaceMap::from_fn(&ecyl.space, &cyl.space, |_| 0) };
    match sign {
        Sign::Minus => {
            let cube = Cube::cospan(&cyl.d_minus, &none).unwrap();
            let id = Collar { k: 1, map: SpaceMap::identity(&cyl.space) };
            PreCollared::raw(cube, vec![vec![Some(id), None, Some(none_col)]])
        }
        Sign::Plus => {
            let cube = Cube::cospan(&none, &cyl.d_plus).unwrap();
            let flip = SpaceMap::from_fn(&cyl.space, &cyl.space, |e| cyl.at(cyl.collapse.apply(e), 2 - cyl.level(e)));
            PreCollared::raw(cube, vec![vec![Some(none_col), None, Some(Collar { k: 1, map: flip })]])
        }
    }
}

/// Two squares meeting along the empty face in direction 1: a degenerate half-open strip
/// on `p`, followed by a half-open strip on `q` times the collared cylinder on a point.
pub fn empty_interface_pair(p: &FinSpace, q: &FinSpace) -> (PreCollared, PreCollared) {
    let u = half_open(p, Sign::Minus).degeneracy(2).unwrap();
    let pt = collared_degeneracy(&PreCollared::from_space(&FinSpace::point("*")), 1).unwrap();
    let v = half_open(q, Sign::Plus).product(&pt);
    (u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collars::check_collared;
    use crate::finspace::poset_iso;

    #[test]
    fn thirds_cylinder_is_collared() {
        let x = FinSpace::new(&["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap();
        let e = collared_degeneracy(&PreCollared::from_space(&x), 1).unwrap();
        assert!(e.validate().is_empty());
        assert!(check_collared(&e).is_ok());
        assert_eq!(e.cube().space(1).len(), 3 * 7);
    }

    #[test]
    fn iterated_degeneracies_differ_but_agree_pointwise() {
        let x = FinSpace::point("*");
        let e = collared_degeneracy(&PreCollared::from_space(&x), 1).unwrap();
        let e11 = collared_degeneracy(&e, 1).unwrap();
        let e21 = collared_degeneracy(&e, 2).unwrap();
        assert!(e11.validate().is_empty() && e21.validate().is_empty());
        assert_ne!(e11, e21);
        for p in 0..9 {
            assert!(poset_iso(e11.cube().space(p), e21.cube().space(p)).is_some());
        }
        assert!(check_collared(&e11).is_ok() && check_collared(&e21).is_ok());
    }

    #[test]
    fn shared_face_is_empty() {
        let p = FinSpace::discrete(&["a", "b"]).unwrap();
        let (u, v) = empty_interface_pair(&p, &FinSpace::point("*"));
        let f = u.face(1, Sign::Plus).unwrap();
        assert_eq!(f, v.face(1, Sign::Minus).unwrap());
        assert!(f.cube().spaces().iter().all(|s| s.is_empty()));
        assert!(check_collared(&u).is_ok() && check_collared(&v).is_ok());
    }
}
