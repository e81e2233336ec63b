//! Provenance-tracked cubes.
//!
//! Every element of a tracked cube carries the set of leaf elements that land on it,
//! each tagged with the interval coordinates picked up along the way. Two cubes built
//! from the same leaves by different bracketings are then compared elementwise: a
//! comparison sends an element to the unique target element sharing its atoms.

use std::collections::HashMap;

use thiserror::Error;

use super::cube::{coords_of, fmt_pos, pos_count, pos_of, Concat, Cube, CubeError, Sign};
use super::tmap::{TMap, TMapError};
use crate::finspace::SpaceMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordKind {
    /// Cylinder of a cylindrical degeneracy.
    Cyl,
    /// Cylinder inserted by a homotopy pushout.
    Glue,
}

/// An interval coordinate attached to an atom: direction (1-based), origin, fence position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub dir: u8,
    pub kind: CoordKind,
    pub at: u16,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub leaf: u32,
    /// Position in the leaf's own grid.
    pub pos: u32,
    pub elem: u32,
    /// Sorted by direction.
    pub coords: Vec<Coord>,
}

impl Atom {
    pub(crate) fn with_coord(&self, c: Coord) -> Atom {
        let mut a = self.clone();
        a.coords.push(c);
        a.coords.sort();
        a
    }

    fn map_dirs(&self, f: impl Fn(u8) -> u8) -> Atom {
        let mut a = self.clone();
        for c in &mut a.coords {
            c.dir = f(c.dir);
        }
        a.coords.sort();
        a
    }
}

/// Atoms per position, per element; each list sorted and deduplicated.
pub(crate) type AtomTable = Vec<Vec<Vec<Atom>>>;

#[derive(Debug, Clone)]
pub struct Tracked {
    pub(crate) cube: Cube,
    pub(crate) atoms: AtomTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error("element `{elem}` at {at} has no provenance")]
    Untracked { at: String, elem: String },
    #[error("element `{elem}` at {at} has no counterpart in the target")]
    Unmatched { at: String, elem: String },
    #[error("element `{elem}` at {at} matches several target elements")]
    Ambiguous { at: String, elem: String },
    #[error(transparent)]
    Map(#[from] TMapError),
    #[error(transparent)]
    Cube(#[from] CubeError),
}

pub(crate) fn normalize(list: &mut Vec<Atom>) {
    list.sort();
    list.dedup();
}

/// Pushes atoms of a member space through a leg into the apex table.
pub(crate) fn push_atoms(apex: &mut [Vec<Atom>], leg: &SpaceMap, member: &[Vec<Atom>]) {
    for (s, list) in member.iter().enumerate() {
        apex[leg.apply(s)].extend(list.iter().cloned());
    }
}

impl Tracked {
    /// A leaf: every element records all leaf elements that reach it along the cube's arrows.
    pub fn leaf(cube: &Cube, leaf: u32) -> Tracked {
        let n = cube.degree();
        let np = pos_count(n);
        let mut atoms: AtomTable = cube.spaces().iter().map(|x| vec![Vec::new(); x.len()]).collect();
        for t in 0..np {
            let tc = coords_of(n, t);
            // chain from t towards every s obtained by zeroing a subset of the non-zero coordinates
            let nz: Vec<usize> = (0..n).filter(|&k| tc[k] != 0).collect();
            for mask in 0..(1usize << nz.len()) {
                let mut cur = t;
                let mut chain = SpaceMap::identity(cube.space(t));
                for (b, &k) in nz.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        chain = chain.then(cube.arr(k, cur));
                        let mut c = coords_of(n, cur);
                        c[k] = 0;
                        cur = pos_of(&c);
                    }
                }
                for y in 0..cube.space(t).len() {
                    atoms[cur][chain.apply(y)].push(Atom { leaf, pos: t as u32, elem: y as u32, coords: vec![] });
                }
            }
        }
        for row in &mut atoms {
            for list in row {
                normalize(list);
            }
        }
        Tracked { cube: cube.clone(), atoms }
    }

    pub fn cube(&self) -> &Cube {
        &self.cube
    }

    pub fn into_cube(self) -> Cube {
        self.cube
    }

    pub(crate) fn atoms_at(&self, pos: usize) -> &[Vec<Atom>] {
        &self.atoms[pos]
    }

    fn reindex(&self, cube: Cube, locate: impl Fn(&[i8]) -> Vec<i8>, dirs: impl Fn(u8) -> u8 + Copy) -> Tracked {
        let m = cube.degree();
        let atoms = (0..pos_count(m))
            .map(|p| {
                let old = pos_of(&locate(&coords_of(m, p)));
                self.atoms[old].iter().map(|l| l.iter().map(|a| a.map_dirs(dirs)).collect()).collect()
            })
            .collect();
        Tracked { cube, atoms }
    }

    pub fn face(&self, i: usize, sign: Sign) -> Result<Tracked, CubeError> {
        let cube = self.cube.face(i, sign)?;
        let a = sign.value();
        let i8_ = i as u8;
        Ok(self.reindex(
            cube,
            |t| {
                let mut v = t.to_vec();
                v.insert(i - 1, a);
                v
            },
            move |d| if d > i8_ { d - 1 } else { d },
        ))
    }

    pub fn degeneracy(&self, i: usize) -> Result<Tracked, CubeError> {
        let cube = self.cube.degeneracy(i)?;
        let i8_ = i as u8;
        Ok(self.reindex(
            cube,
            |t| {
                let mut v = t.to_vec();
                v.remove(i - 1);
                v
            },
            move |d| if d >= i8_ { d + 1 } else { d },
        ))
    }

    pub fn transpose(&self, i: usize) -> Result<Tracked, CubeError> {
        let cube = self.cube.transpose(i)?;
        let i8_ = i as u8;
        Ok(self.reindex(
            cube,
            |t| {
                let mut v = t.to_vec();
                v.swap(i - 1, i);
                v
            },
            move |d| {
                if d == i8_ {
                    d + 1
                } else if d == i8_ + 1 {
                    d - 1
                } else {
                    d
                }
            },
        ))
    }

    /// Concatenation by chosen pushouts; atoms are pushed through the legs.
    pub fn concat(&self, other: &Tracked, i: usize) -> Result<Tracked, CubeError> {
        let Concat { cube, left, right } = self.cube.concat_with_legs(&other.cube, i)?;
        let n = cube.degree();
        let mut atoms: AtomTable = Vec::with_capacity(cube.positions());
        for p in 0..cube.positions() {
            atoms.push(match coords_of(n, p)[i - 1] {
                -1 => self.atoms[p].clone(),
                1 => other.atoms[p].clone(),
                _ => {
                    let mut apex = vec![Vec::new(); cube.space(p).len()];
                    push_atoms(&mut apex, left[p].as_ref().unwrap(), &self.atoms[p]);
                    push_atoms(&mut apex, right[p].as_ref().unwrap(), &other.atoms[p]);
                    apex.iter_mut().for_each(normalize);
                    apex
                }
            });
        }
        Ok(Tracked { cube, atoms })
    }

    /// Wraps an externally built cube with a precomputed table.
    pub(crate) fn from_parts(cube: Cube, atoms: AtomTable) -> Tracked {
        debug_assert_eq!(atoms.len(), cube.positions());
        Tracked { cube, atoms }
    }
}

/// How source atoms are rewritten before lookup in the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Identity,
    /// Forget all coordinates in the given direction (collapsing those cylinders).
    DropDir(u8),
}

impl Transform {
    fn apply(self, a: &Atom) -> Atom {
        match self {
            Transform::Identity => a.clone(),
            Transform::DropDir(d) => {
                let mut b = a.clone();
                b.coords.retain(|c| c.dir != d);
                b
            }
        }
    }
}

/// The transversal map determined by provenance, validated for naturality.
pub fn compare(src: &Tracked, dst: &Tracked, transform: Transform) -> Result<TMap, CompareError> {
    let n = src.cube.degree();
    if dst.cube.degree() != n {
        return Err(TMapError::Degree.into());
    }
    let mut comps = Vec::with_capacity(src.cube.positions());
    for p in 0..src.cube.positions() {
        let mut index: HashMap<&Atom, usize> = HashMap::new();
        for (e, list) in dst.atoms[p].iter().enumerate() {
            for a in list {
                if let Some(&old) = index.get(a) {
                    if old != e {
                        return Err(CompareError::Ambiguous { at: fmt_pos(n, p), elem: dst.cube.space(p).id(e).into() });
                    }
                }
                index.insert(a, e);
            }
        }
        let sp = src.cube.space(p);
        let mut assign = Vec::with_capacity(sp.len());
        for (e, list) in src.atoms[p].iter().enumerate() {
            let elem = || sp.id(e).to_string();
            if list.is_empty() {
                return Err(CompareError::Untracked { at: fmt_pos(n, p), elem: elem() });
            }
            let mut target = None;
            for a in list {
                let b = transform.apply(a);
                match (index.get(&b), target) {
                    (None, _) => return Err(CompareError::Unmatched { at: fmt_pos(n, p), elem: elem() }),
                    (Some(&t), None) => target = Some(t),
                    (Some(&t), Some(u)) if t == u => {}
                    _ => return Err(CompareError::Ambiguous { at: fmt_pos(n, p), elem: elem() }),
                }
            }
            assign.push(target.unwrap());
        }
        let map = SpaceMap::new(sp.clone(), dst.cube.space(p).clone(), assign).map_err(TMapError::from)?;
        comps.push(map);
    }
    Ok(TMap::new(src.cube.clone(), dst.cube.clone(), comps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::{FinSpace, IntervalModel};

    fn cospan(k: usize) -> Cube {
        let i = IntervalModel::new(k).unwrap();
        let p = FinSpace::point("*");
        let m = SpaceMap::from_fn(&p, &i.space, |_| i.point(0));
        let q = SpaceMap::from_fn(&p, &i.space, |_| i.point(i.end()));
        Cube::cospan(&m, &q).unwrap()
    }

    #[test]
    fn leaf_saturation() {
        let u = cospan(1);
        let t = Tracked::leaf(&u, 0);
        // the centre point p0 is hit by itself and by the minus endpoint
        let c = u.space(1).index_of("p0").unwrap();
        assert_eq!(t.atoms[1][c].len(), 2);
    }

    #[test]
    fn associativity_by_provenance() {
        let (x, y, z) = (cospan(1), cospan(2), cospan(1));
        let tx = Tracked::leaf(&x, 0);
        let ty = Tracked::leaf(&y, 1);
        let tz = Tracked::leaf(&z, 2);
        let a = tx.concat(&ty.concat(&tz, 1).unwrap(), 1).unwrap();
        let b = tx.concat(&ty, 1).unwrap().concat(&tz, 1).unwrap();
        let k = compare(&a, &b, Transform::Identity).unwrap();
        assert!(k.is_special() && k.is_invertible());
        let back = compare(&b, &a, Transform::Identity).unwrap();
        assert!(back.after(&k).unwrap().is_identity());
    }

    #[test]
    fn identity_compare() {
        let u = cospan(1);
        let t = Tracked::leaf(&u, 0);
        assert!(compare(&t, &t, Transform::Identity).unwrap().is_identity());
        let e = t.face(1, Sign::Plus).unwrap().degeneracy(1).unwrap();
        let w = t.concat(&e, 1).unwrap();
        assert!(compare(&w, &t, Transform::Identity).unwrap().is_identity());
    }
}
