use thiserror::Error;

use super::cube::{coords_of, fmt_pos, pos_count, pos_of, sharp, Concat, Cube, CubeError, Sign};
use crate::finspace::{induced_from_legs, SpaceError, SpaceMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TMapError {
    #[error("degree mismatch")]
    Degree,
    #[error("component at {0} has the wrong source or target")]
    ComponentEnds(String),
    #[error("naturality fails in direction {dir} at {at}")]
    NotNatural { dir: usize, at: String },
    #[error("maps are not composable")]
    NotComposable,
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A transversal map: a natural transformation between cubes of the same degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TMap {
    src: Cube,
    dst: Cube,
    comps: Vec<SpaceMap>,
}

impl TMap {
    pub fn new(src: Cube, dst: Cube, comps: Vec<SpaceMap>) -> Result<TMap, TMapError> {
        let f = TMap { src, dst, comps };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn raw(src: Cube, dst: Cube, comps: Vec<SpaceMap>) -> TMap {
        let f = TMap { src, dst, comps };
        debug_assert!(f.validate().is_ok(), "invalid internal transversal map: {:?}", f.validate());
        f
    }

    pub fn validate(&self) -> Result<(), TMapError> {
        let n = self.src.degree();
        if self.dst.degree() != n || self.comps.len() != pos_count(n) {
            return Err(TMapError::Degree);
        }
        for (p, c) in self.comps.iter().enumerate() {
            if c.src() != self.src.space(p) || c.dst() != self.dst.space(p) {
                return Err(TMapError::ComponentEnds(fmt_pos(n, p)));
            }
        }
        for d in 0..n {
            for p in 0..pos_count(n) {
                if coords_of(n, p)[d] == 0 {
                    continue;
                }
                let q = sharp(p, n, d);
                let a = self.comps[p].then(self.dst.arr(d, p));
                let b = self.src.arr(d, p).then(&self.comps[q]);
                if a != b {
                    return Err(TMapError::NotNatural { dir: d + 1, at: fmt_pos(n, p) });
                }
            }
        }
        Ok(())
    }

    pub fn identity(u: &Cube) -> TMap {
        TMap { src: u.clone(), dst: u.clone(), comps: u.spaces().iter().map(SpaceMap::identity).collect() }
    }

    pub fn src(&self) -> &Cube {
        &self.src
    }
    pub fn dst(&self) -> &Cube {
        &self.dst
    }
    pub fn comps(&self) -> &[SpaceMap] {
        &self.comps
    }
    pub fn comp(&self, pos: usize) -> &SpaceMap {
        &self.comps[pos]
    }
    pub fn degree(&self) -> usize {
        self.src.degree()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &TMap) -> Result<TMap, TMapError> {
        if first.dst != self.src {
            return Err(TMapError::NotComposable);
        }
        let comps = first.comps.iter().zip(&self.comps).map(|(a, b)| a.then(b)).collect();
        Ok(TMap { src: first.src.clone(), dst: self.dst.clone(), comps })
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.comps.iter().all(|c| c.is_identity())
    }

    /// All vertex components are identities.
    pub fn is_special(&self) -> bool {
        self.src.vertices().into_iter().all(|p| self.comps[p].is_identity())
    }

    pub fn is_invertible(&self) -> bool {
        self.comps.iter().all(|c| c.is_homeomorphism())
    }

    pub fn inverse(&self) -> Option<TMap> {
        let comps: Option<Vec<SpaceMap>> = self.comps.iter().map(|c| c.inverse()).collect();
        Some(TMap::raw(self.dst.clone(), self.src.clone(), comps?))
    }

    fn reindex(&self, src: Cube, dst: Cube, locate: impl Fn(&[i8]) -> Vec<i8>) -> TMap {
        let m = src.degree();
        let comps = (0..pos_count(m)).map(|p| self.comps[pos_of(&locate(&coords_of(m, p)))].clone()).collect();
        TMap::raw(src, dst, comps)
    }

    pub fn face(&self, i: usize, sign: Sign) -> Result<TMap, TMapError> {
        let (s, t) = (self.src.face(i, sign)?, self.dst.face(i, sign)?);
        let a = sign.value();
        Ok(self.reindex(s, t, |t| {
            let mut v = t.to_vec();
            v.insert(i - 1, a);
            v
        }))
    }

    pub fn degeneracy(&self, i: usize) -> Result<TMap, TMapError> {
        let (s, t) = (self.src.degeneracy(i)?, self.dst.degeneracy(i)?);
        Ok(self.reindex(s, t, |t| {
            let mut v = t.to_vec();
            v.remove(i - 1);
            v
        }))
    }

    pub fn transpose(&self, i: usize) -> Result<TMap, TMapError> {
        let (s, t) = (self.src.transpose(i)?, self.dst.transpose(i)?);
        Ok(self.reindex(s, t, |t| {
            let mut v = t.to_vec();
            v.swap(i - 1, i);
            v
        }))
    }

    /// Vertex components, keyed by position.
    pub fn vertex_components(&self) -> Vec<(usize, &SpaceMap)> {
        self.src.vertices().into_iter().map(|p| (p, &self.comps[p])).collect()
    }

    /// Concatenation in direction `i` of two maps whose `i`-faces agree.
    pub fn concat(&self, g: &TMap, i: usize) -> Result<TMap, TMapError> {
        let s = self.src.concat_with_legs(&g.src, i)?;
        let t = self.dst.concat_with_legs(&g.dst, i)?;
        if self.face(i, Sign::Plus)? != g.face(i, Sign::Minus)? {
            return Err(TMapError::NotComposable);
        }
        concat_components(self, g, i, &s, &t)
    }
}

fn concat_components(f: &TMap, g: &TMap, i: usize, s: &Concat, t: &Concat) -> Result<TMap, TMapError> {
    let n = f.degree();
    let d = i - 1;
    let mut comps = Vec::with_capacity(pos_count(n));
    for p in 0..pos_count(n) {
        comps.push(match coords_of(n, p)[d] {
            -1 => f.comps[p].clone(),
            1 => g.comps[p].clone(),
            _ => {
                let ml = f.comps[p].then(t.left[p].as_ref().unwrap());
                let mr = g.comps[p].then(t.right[p].as_ref().unwrap());
                induced_from_legs(s.cube.space(p), &[(s.left[p].as_ref().unwrap(), &ml), (s.right[p].as_ref().unwrap(), &mr)])?
            }
        });
    }
    Ok(TMap::new(s.cube.clone(), t.cube.clone(), comps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::{FinSpace, IntervalModel};

    fn cospan() -> Cube {
        let i = IntervalModel::new(1).unwrap();
        let p = FinSpace::point("*");
        let m = SpaceMap::from_fn(&p, &i.space, |_| i.point(0));
        let q = SpaceMap::from_fn(&p, &i.space, |_| i.point(2));
        Cube::cospan(&m, &q).unwrap()
    }

    #[test]
    fn identity_is_unit() {
        let u = cospan();
        let id = TMap::identity(&u);
        assert_eq!(id.after(&id).unwrap(), id);
        assert!(id.is_special() && id.is_invertible());
    }

    #[test]
    fn concat_of_identities() {
        let u = cospan();
        let v = u.reverse(1).unwrap();
        let f = TMap::identity(&u).concat(&TMap::identity(&v), 1).unwrap();
        assert_eq!(f, TMap::identity(&u.concat(&v, 1).unwrap()));
    }

    #[test]
    fn naturality_violation() {
        let u = cospan();
        let x = u.space(1).clone();
        let mid = x.index_of("p1").unwrap();
        let mut comps: Vec<SpaceMap> = u.spaces().iter().map(SpaceMap::identity).collect();
        comps[1] = SpaceMap::from_fn(&x, &x, |_| mid);
        assert!(matches!(TMap::new(u.clone(), u, comps), Err(TMapError::NotNatural { .. })));
    }
}
