use thiserror::Error;

use super::{check_collared, CollarDiagnosis, CollarIssue, Collar, CollaredWitness, PreCollared};
use crate::cubemodel::cube::{coords_of, fmt_pos, pos_count, pos_of, sharp};
use crate::cubemodel::cube::Concat;
use crate::cubemodel::{CubeError, Sign};
use crate::finspace::{cylinder, induced_from_legs, product_map, IntervalModel, SpaceError, SpaceMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcatError {
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error("collars on the shared face differ")]
    CollarsMismatch,
    #[error("collars in direction {dir} at {at} use different interval degrees on the two sides")]
    DegreeMismatch { dir: usize, at: String },
    #[error("collar in direction {dir} at {at} cannot be glued: {source}")]
    Glue { dir: usize, at: String, source: SpaceError },
    #[error("result is not pre-collared: {0:?}")]
    Revalidation(Vec<CollarIssue>),
    #[error("{side} operand is not collared: {diag}")]
    NotCollared { side: &'static str, diag: CollarDiagnosis },
    #[error("collar images from the two operands meet in direction {dir} at {at}")]
    Disjointness { dir: usize, at: String },
    #[error("result is not collared: {0}")]
    Result(CollarDiagnosis),
}

/// Gluing two pre-collared cubes along a shared face in direction `i`.
pub fn concat_precollared(u: &PreCollared, v: &PreCollared, i: usize) -> Result<PreCollared, ConcatError> {
    Ok(glue(u, v, i)?.0)
}

/// The concatenation together with the pushout legs, unless a unit shortcut applied.
fn glue(u: &PreCollared, v: &PreCollared, i: usize) -> Result<(PreCollared, Option<Concat>), ConcatError> {
    let n = u.degree();
    if i < 1 || i > n {
        return Err(CubeError::IndexOutOfRange { what: "collared concat", index: i, degree: n }.into());
    }
    u.cube().check_consecutive(v.cube(), i)?;
    let face = u.face(i, Sign::Plus)?;
    if face != v.face(i, Sign::Minus)? {
        return Err(ConcatError::CollarsMismatch);
    }
    // gluing a trivially collared degeneracy must give the other operand back
    let degenerate = face.degeneracy(i)?;
    if v == &degenerate {
        return Ok((u.clone(), None));
    }
    if u == &degenerate {
        return Ok((v.clone(), None));
    }
    let d = i - 1;
    let glued = u.cube().concat_with_legs(v.cube(), i)?;
    let w = &glued.cube;
    let np = pos_count(n);
    let mut collars = vec![vec![None; np]; n];
    for (j, row) in collars.iter_mut().enumerate() {
        for p in 0..np {
            let t = coords_of(n, p);
            if t[j] == 0 {
                continue;
            }
            let at = || fmt_pos(n, p);
            let q = sharp(p, n, j);
            row[p] = Some(if j == d {
                if t[d] < 0 {
                    let c = u.col(d, p);
                    Collar { k: c.k, map: c.map.then(glued.left[q].as_ref().unwrap()) }
                } else {
                    let c = v.col(d, p);
                    Collar { k: c.k, map: c.map.then(glued.right[q].as_ref().unwrap()) }
                }
            } else {
                match t[d] {
                    -1 => u.col(j, p).clone(),
                    1 => v.col(j, p).clone(),
                    _ => {
                        let (cu, cv) = (u.col(j, p), v.col(j, p));
                        if cu.k != cv.k {
                            return Err(ConcatError::DegreeMismatch { dir: j + 1, at: at() });
                        }
                        let id_i = SpaceMap::identity(&IntervalModel::new(cu.k).expect("k >= 1").space);
                        let (l, r) = (glued.left[p].as_ref().unwrap(), glued.right[p].as_ref().unwrap());
                        let (l2, r2) = (glued.left[q].as_ref().unwrap(), glued.right[q].as_ref().unwrap());
                        let cyl = cylinder(w.space(p), cu.k).expect("k >= 1");
                        let (il, ir) = (product_map(l, &id_i), product_map(r, &id_i));
                        let (ml, mr) = (cu.map.then(l2), cv.map.then(r2));
                        let map = induced_from_legs(&cyl.space, &[(&il, &ml), (&ir, &mr)])
                            .map_err(|source| ConcatError::Glue { dir: j + 1, at: at(), source })?;
                        Collar { k: cu.k, map }
                    }
                }
            });
        }
    }
    let w = PreCollared::new(glued.cube.clone(), collars).map_err(ConcatError::Revalidation)?;
    Ok((w, Some(glued)))
}

/// Glued collar images of `u` and `v` must not meet in any central space of the concatenation.
pub fn cross_images_disjoint(
    u: &PreCollared,
    v: &PreCollared,
    i: usize,
    wu: &CollaredWitness,
    wv: &CollaredWitness,
) -> Result<(), ConcatError> {
    let glued = u.cube().concat_with_legs(v.cube(), i)?;
    disjoint_over(u, v, i, wu, wv, &glued)
}

fn disjoint_over(
    u: &PreCollared,
    v: &PreCollared,
    i: usize,
    wu: &CollaredWitness,
    wv: &CollaredWitness,
    glued: &Concat,
) -> Result<(), ConcatError> {
    let n = u.degree();
    let d = i - 1;
    for j in (0..n).filter(|&j| j != d) {
        for c in 0..pos_count(n) {
            let t = coords_of(n, c);
            if t[d] != 0 || t[j] != 0 {
                continue;
            }
            let (l, r) = (glued.left[c].as_ref().unwrap(), glued.right[c].as_ref().unwrap());
            let image = |x: &PreCollared, w: &CollaredWitness, leg: &SpaceMap, s: i8| {
                let mut m = t.clone();
                m[j] = s;
                let p = pos_of(&m);
                let col = x.col(j, p);
                let cyl = cylinder(x.cube().space(p), col.k).unwrap();
                let mut img = vec![false; leg.dst().len()];
                for e in 0..cyl.space.len() {
                    if w.parts[j][p][cyl.collapse.apply(e)] {
                        img[leg.apply(col.map.apply(e))] = true;
                    }
                }
                img
            };
            for s in [-1, 1] {
                let a = image(u, wu, l, s);
                let b = image(v, wv, r, -s);
                if a.iter().zip(&b).any(|(x, y)| *x && *y) {
                    return Err(ConcatError::Disjointness { dir: j + 1, at: fmt_pos(n, c) });
                }
            }
        }
    }
    Ok(())
}

/// An end collar in direction `i` restricted to a trivially collared component of its own operand
/// is constant along the cylinder. Such components are homeomorphic to the shared face, so the
/// other operand's collar on that face is carried across instead.
fn transport_trivial_ends(
    w: PreCollared,
    u: &PreCollared,
    v: &PreCollared,
    i: usize,
    wu: &CollaredWitness,
    wv: &CollaredWitness,
    glued: &Concat,
) -> Result<PreCollared, ConcatError> {
    let n = u.degree();
    let d = i - 1;
    let mut collars = w.collars().to_vec();
    let mut changed = false;
    for p in 0..pos_count(n) {
        let t = coords_of(n, p);
        if t[d] == 0 {
            continue;
        }
        let q = sharp(p, n, d);
        let mut m = t.clone();
        m[d] = -t[d];
        let mirror = pos_of(&m);
        // `own` donates the end collar, `other` has the same face as its opposite end
        let (own, other, part, leg_own, leg_other) = if t[d] < 0 {
            (u, v, &wu.parts[d][p], &glued.left[q], &glued.right[q])
        } else {
            (v, u, &wv.parts[d][p], &glued.right[q], &glued.left[q])
        };
        let (leg_own, leg_other) = (leg_own.as_ref().unwrap(), leg_other.as_ref().unwrap());
        let x = own.cube().space(p);
        let trivial: Vec<usize> = (0..x.len()).filter(|&a| !part[a]).collect();
        if trivial.is_empty() {
            continue;
        }
        let (cu, co) = (own.col(d, p), other.col(d, p));
        if cu.k != co.k {
            return Err(ConcatError::DegreeMismatch { dir: i, at: fmt_pos(n, p) });
        }
        // the trivial part of `own` maps onto the same central points from both ends
        let (arr, back) = (own.cube().arr(d, p), own.cube().arr(d, mirror));
        let across: Vec<Option<usize>> = (0..x.len())
            .map(|a| (!part[a]).then(|| (0..back.src().len()).find(|&b| back.apply(b) == arr.apply(a))).flatten())
            .collect();
        let cyl = cylinder(x, cu.k).expect("k >= 1");
        let map = SpaceMap::from_fn(&cyl.space, w.cube().space(q), |e| {
            let a = cyl.collapse.apply(e);
            match across[a] {
                Some(b) => leg_other.apply(co.map.apply(cyl.at(b, cyl.level(e)))),
                None => leg_own.apply(cu.map.apply(e)),
            }
        });
        collars[d][p] = Some(Collar { k: cu.k, map });
        changed = true;
    }
    if !changed {
        return Ok(w);
    }
    PreCollared::new(w.cube().clone(), collars).map_err(ConcatError::Revalidation)
}

/// Concatenation of collared cubes, returning the result with a fresh collared witness.
pub fn concat_collared(u: &PreCollared, v: &PreCollared, i: usize) -> Result<(PreCollared, CollaredWitness), ConcatError> {
    let wu = check_collared(u).map_err(|diag| ConcatError::NotCollared { side: "left", diag })?;
    let wv = check_collared(v).map_err(|diag| ConcatError::NotCollared { side: "right", diag })?;
    let (mut w, glued) = glue(u, v, i)?;
    if let Some(glued) = glued {
        disjoint_over(u, v, i, &wu, &wv, &glued)?;
        w = transport_trivial_ends(w, u, v, i, &wu, &wv, &glued)?;
    }
    let ww = check_collared(&w).map_err(ConcatError::Result)?;
    Ok((w, ww))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collars::thirds::{collared_degeneracy, empty_interface_pair, half_open};
    use crate::finspace::FinSpace;

    #[test]
    fn degenerate_operand_is_a_unit() {
        let x = FinSpace::discrete(&["a", "b"]).unwrap();
        let u = half_open(&x, Sign::Minus);
        let e = u.face(1, Sign::Plus).unwrap().degeneracy(1).unwrap();
        assert_eq!(concat_precollared(&u, &e, 1).unwrap(), u);
        let e = u.face(1, Sign::Minus).unwrap().degeneracy(1).unwrap();
        assert_eq!(concat_precollared(&e, &u, 1).unwrap(), u);
    }

    #[test]
    fn thirds_glue_to_collared() {
        let x = FinSpace::new(&["a", "b"], &[("a", "b")]).unwrap();
        let u = collared_degeneracy(&PreCollared::from_space(&x), 1).unwrap();
        let (w, _) = concat_collared(&u, &u, 1).unwrap();
        assert_eq!(w.cube().space(1).len(), 2 * 14 - 2);
    }

    #[test]
    fn squares_glue_in_both_directions() {
        let x = FinSpace::point("*");
        let e = collared_degeneracy(&PreCollared::from_space(&x), 1).unwrap();
        let sq = e.product(&e);
        for i in 1..=2 {
            let (w, _) = concat_collared(&sq, &sq, i).unwrap();
            assert!(w.validate().is_empty());
        }
    }

    #[test]
    fn trivial_component_takes_the_other_collar() {
        let a = PreCollared::from_space(&FinSpace::point("a"));
        let b = PreCollared::from_space(&FinSpace::point("b"));
        let u = collared_degeneracy(&a, 1).unwrap().sum(&b.degeneracy(1).unwrap()).unwrap();
        let v = collared_degeneracy(&u.face(1, Sign::Plus).unwrap(), 1).unwrap();
        assert!(check_collared(&concat_precollared(&u, &v, 1).unwrap()).is_err());
        let (w, wit) = concat_collared(&u, &v, 1).unwrap();
        assert!(wit.parts[0].iter().all(|p| p.iter().all(|&b| b)));
        assert_eq!(w.cube(), &u.cube().concat(v.cube(), 1).unwrap());
    }

    #[test]
    fn empty_interface_concat() {
        let p = FinSpace::point("*");
        let (u, v) = empty_interface_pair(&p, &p);
        let (w, wit) = concat_collared(&u, &v, 1).unwrap();
        assert_eq!(w.degree(), 2);
        assert!(wit.parts[1].iter().any(|p| p.iter().any(|&b| b)));
    }
}
