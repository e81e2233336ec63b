//! Pre-collared and collared cubical cospans.

pub mod collared;
pub mod concat;
pub mod lemma;
pub mod thirds;

use std::fmt;

use thiserror::Error;

use crate::cubemodel::cube::{coords_of, fmt_pos, pos_count, pos_of, sharp};
use crate::cubemodel::{Cube, CubeError, Sign};
use crate::finspace::{cylinder, is_pullback, pair_index, product_map, FinSpace, IntervalModel, SpaceMap};

pub use collared::{check_collared, CollarDiagnosis, CollaredWitness};
pub use concat::{concat_collared, concat_precollared, cross_images_disjoint, ConcatError};
pub use lemma::{back_square_pullback, BackSquareCube, HypothesisError};
pub use thirds::{collared_degeneracy, empty_interface_pair, half_open, thirds_collars, THIRDS};

/// A pre-collar `U: X × I_k -> Y` of a map `u: X -> Y`.
#[derive(Clone, PartialEq, Eq)]
pub struct Collar {
    pub k: usize,
    pub map: SpaceMap,
}

impl fmt::Debug for Collar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Collar(k={}, {:?} -> {:?})", self.k, self.map.src(), self.map.dst())
    }
}

impl Collar {
    /// The trivial collar `u ∘ e`.
    pub fn trivial(u: &SpaceMap, k: usize) -> Collar {
        let c = cylinder(u.src(), k).expect("k >= 1");
        Collar { k, map: c.collapse.then(u) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollarIssue {
    #[error("arrow in direction {dir} at {at} is not an embedding")]
    NotEmbedding { dir: usize, at: String },
    #[error("collar in direction {dir} at {at} has the wrong domain or codomain")]
    CollarEnds { dir: usize, at: String },
    #[error("collar in direction {dir} at {at} does not extend its map")]
    Extension { dir: usize, at: String },
    #[error("collar square at {at} (collar direction {collar}, map direction {map}) does not commute")]
    SquareNotCommuting { at: String, collar: usize, map: usize },
    #[error("collar square at {at} (collar direction {collar}, map direction {map}) is not a pullback")]
    SquareNotPullback { at: String, collar: usize, map: usize },
    #[error("collars in direction {dir} at {at} and its target use different interval degrees")]
    DegreeMismatch { dir: usize, at: String },
    #[error(transparent)]
    Cube(#[from] CubeError),
}

/// A cubical cospan of embeddings with a pre-collar on every arrow.
#[derive(Clone, PartialEq, Eq)]
pub struct PreCollared {
    cube: Cube,
    /// `collars[d][pos]`, present iff coordinate `d` of `pos` is non-zero.
    collars: Vec<Vec<Option<Collar>>>,
}

impl fmt::Debug for PreCollared {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PreCollared({:?})", self.cube)
    }
}

impl PreCollared {
    pub fn new(cube: Cube, collars: Vec<Vec<Option<Collar>>>) -> Result<PreCollared, Vec<CollarIssue>> {
        let u = PreCollared { cube, collars };
        let issues = u.validate();
        if issues.is_empty() {
            Ok(u)
        } else {
            Err(issues)
        }
    }

    pub(crate) fn raw(cube: Cube, collars: Vec<Vec<Option<Collar>>>) -> PreCollared {
        let u = PreCollared { cube, collars };
        debug_assert!(u.validate().is_empty(), "invalid internal pre-collared cube: {:?}", u.validate());
        u
    }

    /// Degree-0 input: the bare space.
    pub fn from_space(x: &FinSpace) -> PreCollared {
        PreCollared { cube: Cube::from_space(x), collars: vec![] }
    }

    pub fn cube(&self) -> &Cube {
        &self.cube
    }

    pub fn degree(&self) -> usize {
        self.cube.degree()
    }

    /// Collar in direction `i` (1-based) at `pos`.
    pub fn collar(&self, i: usize, pos: usize) -> Option<&Collar> {
        self.collars.get(i.wrapping_sub(1))?.get(pos)?.as_ref()
    }

    pub(crate) fn col(&self, d: usize, pos: usize) -> &Collar {
        self.collars[d][pos].as_ref().expect("collar at central coordinate")
    }

    pub fn collars(&self) -> &[Vec<Option<Collar>>] {
        &self.collars
    }

    /// Every failed condition: embeddings, extension law, and the collar pullback squares.
    pub fn validate(&self) -> Vec<CollarIssue> {
        let mut out = Vec::new();
        if let Err(e) = self.cube.validate() {
            out.push(e.into());
            return out;
        }
        let u = &self.cube;
        let n = u.degree();
        if self.collars.len() != n {
            out.push(CubeError::WrongSize { expected: n, got: self.collars.len() }.into());
            return out;
        }
        for d in 0..n {
            for pos in 0..pos_count(n) {
                let t = coords_of(n, pos);
                let at = || fmt_pos(n, pos);
                match (&self.collars[d][pos], t[d]) {
                    (None, 0) => continue,
                    (Some(_), 0) | (None, _) => {
                        out.push(CollarIssue::CollarEnds { dir: d + 1, at: at() });
                        continue;
                    }
                    (Some(c), _) => {
                        let a = u.arr(d, pos);
                        if !a.is_embedding() {
                            out.push(CollarIssue::NotEmbedding { dir: d + 1, at: at() });
                        }
                        let cyl = match cylinder(u.space(pos), c.k) {
                            Ok(cyl) => cyl,
                            Err(_) => {
                                out.push(CollarIssue::CollarEnds { dir: d + 1, at: at() });
                                continue;
                            }
                        };
                        if c.map.src() != &cyl.space || c.map.dst() != a.dst() {
                            out.push(CollarIssue::CollarEnds { dir: d + 1, at: at() });
                            continue;
                        }
                        if &cyl.d_minus.then(&c.map) != a {
                            out.push(CollarIssue::Extension { dir: d + 1, at: at() });
                        }
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        // collar direction j against map direction i
        for pos in 0..pos_count(n) {
            let t = coords_of(n, pos);
            for j in 0..n {
                for i in 0..n {
                    if i == j || t[i] == 0 || t[j] == 0 {
                        continue;
                    }
                    let at = fmt_pos(n, pos);
                    let ti = sharp(pos, n, i);
                    let tj = sharp(pos, n, j);
                    let (cj, cji) = (self.col(j, pos), self.col(j, ti));
                    if cj.k != cji.k {
                        out.push(CollarIssue::DegreeMismatch { dir: j + 1, at });
                        continue;
                    }
                    let i_k = IntervalModel::new(cj.k).expect("k >= 1").space;
                    let f = product_map(u.arr(i, pos), &SpaceMap::identity(&i_k));
                    let g = &cj.map;
                    let h = &cji.map;
                    let k = u.arr(i, tj);
                    if f.then(h) != g.then(k) {
                        out.push(CollarIssue::SquareNotCommuting { at, collar: j + 1, map: i + 1 });
                    } else if !is_pullback(&f, g, h, k) {
                        out.push(CollarIssue::SquareNotPullback { at, collar: j + 1, map: i + 1 });
                    }
                }
            }
        }
        out
    }

    /// Reindexing as for cubes; `None` directions receive the collapse as trivial collar.
    fn reindex(&self, cube: Cube, locate: impl Fn(&[i8]) -> Vec<i8>, dirs: impl Fn(usize) -> Option<usize>) -> PreCollared {
        let m = cube.degree();
        let np = pos_count(m);
        let mut collars = vec![vec![None; np]; m];
        for (d, row) in collars.iter_mut().enumerate() {
            for p in 0..np {
                if coords_of(m, p)[d] == 0 {
                    continue;
                }
                row[p] = Some(match dirs(d) {
                    Some(od) => self.col(od, pos_of(&locate(&coords_of(m, p)))).clone(),
                    None => Collar::trivial(cube.arr(d, p), 1),
                });
            }
        }
        PreCollared::raw(cube, collars)
    }

    pub fn face(&self, i: usize, sign: Sign) -> Result<PreCollared, CubeError> {
        let cube = self.cube.face(i, sign)?;
        let (d, a) = (i - 1, sign.value());
        Ok(self.reindex(
            cube,
            |t| {
                let mut v = t.to_vec();
                v.insert(d, a);
                v
            },
            |e| Some(if e < d { e } else { e + 1 }),
        ))
    }

    pub fn degeneracy(&self, i: usize) -> Result<PreCollared, CubeError> {
        let cube = self.cube.degeneracy(i)?;
        let d = i - 1;
        Ok(self.reindex(
            cube,
            |t| {
                let mut v = t.to_vec();
                v.remove(d);
                v
            },
            |e| match e.cmp(&d) {
                std::cmp::Ordering::Less => Some(e),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(e - 1),
            },
        ))
    }

    pub fn transpose(&self, i: usize) -> Result<PreCollared, CubeError> {
        let cube = self.cube.transpose(i)?;
        let d = i - 1;
        Ok(self.reindex(
            cube,
            |t| {
                let mut v = t.to_vec();
                v.swap(d, d + 1);
                v
            },
            |e| Some(if e == d { d + 1 } else if e == d + 1 { d } else { e }),
        ))
    }

    pub fn reverse(&self, i: usize) -> Result<PreCollared, CubeError> {
        let cube = self.cube.reverse(i)?;
        let d = i - 1;
        Ok(self.reindex(
            cube,
            |t| {
                let mut v = t.to_vec();
                v[d] = -v[d];
                v
            },
            Some,
        ))
    }

    /// Positionwise sum.
    pub fn sum(&self, other: &PreCollared) -> Result<PreCollared, CubeError> {
        let cube = self.cube.sum(&other.cube)?;
        let n = cube.degree();
        let np = pos_count(n);
        let mut collars = vec![vec![None; np]; n];
        for (d, row) in collars.iter_mut().enumerate() {
            for p in 0..np {
                if coords_of(n, p)[d] == 0 {
                    continue;
                }
                let (a, b) = (self.col(d, p), other.col(d, p));
                if a.k != b.k {
                    return Err(CubeError::FaceMismatch {
                        at: fmt_pos(n, p),
                        detail: "summands use different collar interval degrees".into(),
                    });
                }
                row[p] = Some(Collar { k: a.k, map: sum_collar(&a.map, &b.map, self.cube.space(p), other.cube.space(p), a.k) });
            }
        }
        Ok(PreCollared::raw(cube, collars))
    }

    /// Exterior product; each collar acts on its own factor.
    pub fn product(&self, other: &PreCollared) -> PreCollared {
        let cube = self.cube.product(&other.cube);
        let (n, m) = (self.degree(), other.degree());
        let k = n + m;
        let np = pos_count(k);
        let mut collars = vec![vec![None; np]; k];
        for (d, row) in collars.iter_mut().enumerate() {
            for p in 0..np {
                let t = coords_of(k, p);
                if t[d] == 0 {
                    continue;
                }
                let (a, b) = (pos_of(&t[..n]), pos_of(&t[n..]));
                let (xa, yb) = (self.cube.space(a), other.cube.space(b));
                let c = if d < n { self.col(d, a) } else { other.col(d - n, b) };
                let cyl = cylinder(cube.space(p), c.k).unwrap();
                let target = cube.space(sharp(p, k, d));
                let own = cylinder(if d < n { xa } else { yb }, c.k).unwrap();
                let mut assign = vec![0; cyl.space.len()];
                for x in 0..xa.len() {
                    for y in 0..yb.len() {
                        let xy = pair_index(cube.space(p), xa, x, yb, y);
                        for j in 0..=2 * c.k {
                            let to = if d < n {
                                pair_index(target, c.map.dst(), c.map.apply(own.at(x, j)), yb, y)
                            } else {
                                pair_index(target, xa, x, c.map.dst(), c.map.apply(own.at(y, j)))
                            };
                            assign[cyl.at(xy, j)] = to;
                        }
                    }
                }
                let map = SpaceMap::raw(cyl.space, target.clone(), assign);
                row[p] = Some(Collar { k: c.k, map });
            }
        }
        PreCollared::raw(cube, collars)
    }
}

/// The collar of a sum: `I(X + Y) -> X' + Y'` from collars on each summand.
fn sum_collar(a: &SpaceMap, b: &SpaceMap, xa: &FinSpace, xb: &FinSpace, k: usize) -> SpaceMap {
    let (base, il, ir) = crate::finspace::sum(xa, xb);
    let cyl = cylinder(&base, k).unwrap();
    let (dst, dl, dr) = crate::finspace::sum(a.dst(), b.dst());
    let (ca, cb) = (cylinder(xa, k).unwrap(), cylinder(xb, k).unwrap());
    let mut assign = vec![0; cyl.space.len()];
    for j in 0..=2 * k {
        for x in 0..xa.len() {
            assign[cyl.at(il.apply(x), j)] = dl.apply(a.apply(ca.at(x, j)));
        }
        for y in 0..xb.len() {
            assign[cyl.at(ir.apply(y), j)] = dr.apply(b.apply(cb.at(y, j)));
        }
    }
    SpaceMap::raw(cyl.space, dst, assign)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn endpoint_collared(base: &FinSpace) -> PreCollared {
        // X -> X × I_1 <- X, collars identity and flip
        let cyl = cylinder(base, 1).unwrap();
        let flip = SpaceMap::from_fn(&cyl.space, &cyl.space, |e| cyl.at(cyl.collapse.apply(e), 2 - cyl.level(e)));
        let cube = Cube::cospan(&cyl.d_minus, &cyl.d_plus).unwrap();
        PreCollared::new(
            cube,
            vec![vec![Some(Collar { k: 1, map: SpaceMap::identity(&cyl.space) }), None, Some(Collar { k: 1, map: flip })]],
        )
        .unwrap()
    }

    #[test]
    fn trivial_collar_on_identity_cospan() {
        let x = FinSpace::new(&["a", "b"], &[("a", "b")]).unwrap();
        let id = SpaceMap::identity(&x);
        let cube = Cube::cospan(&id, &id).unwrap();
        let c = Collar::trivial(&id, 1);
        assert!(PreCollared::new(cube, vec![vec![Some(c.clone()), None, Some(c)]]).is_ok());
    }

    #[test]
    fn extension_violation_named() {
        let x = FinSpace::point("*");
        let u = endpoint_collared(&x);
        let mut collars = u.collars.clone();
        let c = collars[0][0].clone().unwrap();
        let wrong = SpaceMap::from_fn(c.map.src(), c.map.dst(), |_| c.map.dst().index_of("(*,p1)").unwrap());
        collars[0][0] = Some(Collar { k: 1, map: wrong });
        let issues = PreCollared::new(u.cube.clone(), collars).unwrap_err();
        assert!(issues.iter().any(|e| matches!(e, CollarIssue::Extension { dir: 1, .. })));
    }

    #[test]
    fn products_are_precollared() {
        let x = FinSpace::point("*");
        let u = endpoint_collared(&x);
        let sq = u.product(&u);
        assert!(sq.validate().is_empty());
        assert_eq!(sq.face(1, Sign::Minus).unwrap().degree(), 1);
    }

    #[test]
    fn degeneracy_face_round_trip() {
        let x = FinSpace::discrete(&["a", "b"]).unwrap();
        let u = endpoint_collared(&x);
        for j in 1..=2 {
            let e = u.degeneracy(j).unwrap();
            assert!(e.validate().is_empty());
            assert_eq!(e.face(j, Sign::Plus).unwrap(), u);
        }
        let s = u.sum(&u.reverse(1).unwrap()).unwrap();
        assert!(s.validate().is_empty());
    }
}
