use thiserror::Error;

use super::cube::{coords_of, fmt_pos, pos_count, sharp, Cube};
use crate::finspace::{is_pullback, FinSpace, SpaceError, SpaceMap};

/// A space with, per direction, a pair of distinguished subsets (minus face, plus face).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacedSpace {
    pub total: FinSpace,
    /// `faces[i] = (minus, plus)` as id lists.
    pub faces: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FacedError {
    #[error("faces in direction {dir} share `{elem}`")]
    Overlap { dir: usize, elem: String },
    #[error("square at {at} in directions {i},{j} is not a pullback")]
    NotPullback { at: String, i: usize, j: usize },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

fn subset_mask(x: &FinSpace, ids: &[String]) -> Result<Vec<bool>, SpaceError> {
    let mut m = vec![false; x.len()];
    for id in ids {
        let i = x.index_of(id).ok_or_else(|| SpaceError::UnknownElement(id.clone()))?;
        m[i] = true;
    }
    Ok(m)
}

/// The cube of intersections of faces, with inclusions as arrows.
pub fn from_faced_space(f: &FacedSpace) -> Result<Cube, FacedError> {
    let x = &f.total;
    let n = f.faces.len();
    let mut masks = Vec::with_capacity(n);
    for (d, (minus, plus)) in f.faces.iter().enumerate() {
        let m = subset_mask(x, minus)?;
        let p = subset_mask(x, plus)?;
        if let Some(e) = (0..x.len()).find(|&e| m[e] && p[e]) {
            return Err(FacedError::Overlap { dir: d + 1, elem: x.id(e).into() });
        }
        masks.push((m, p));
    }
    let np = pos_count(n);
    let keep: Vec<Vec<usize>> = (0..np)
        .map(|pos| {
            let t = coords_of(n, pos);
            (0..x.len())
                .filter(|&e| {
                    t.iter().enumerate().all(|(d, &c)| match c {
                        -1 => masks[d].0[e],
                        1 => masks[d].1[e],
                        _ => true,
                    })
                })
                .collect()
        })
        .collect();
    let spaces: Vec<FinSpace> = keep.iter().map(|k| x.subspace(k)).collect();
    let mut arrows = vec![vec![None; np]; n];
    for (d, row) in arrows.iter_mut().enumerate() {
        for pos in 0..np {
            if coords_of(n, pos)[d] == 0 {
                continue;
            }
            let q = sharp(pos, n, d);
            let (s, t) = (&spaces[pos], &spaces[q]);
            row[pos] = Some(SpaceMap::from_fn(s, t, |e| t.index_of(s.id(e)).unwrap()));
        }
    }
    let cube = Cube::new(n, spaces, arrows).map_err(|e| match e {
        super::cube::CubeError::Space(s) => FacedError::Space(s),
        other => panic!("inclusion cube invalid: {other}"),
    })?;
    if let Some(e) = non_pullback_squares(&cube).into_iter().next() {
        return Err(e);
    }
    Ok(cube)
}

/// All two-direction squares of a cube that fail to be pullbacks.
pub fn non_pullback_squares(u: &Cube) -> Vec<FacedError> {
    let n = u.degree();
    let mut out = Vec::new();
    for pos in 0..pos_count(n) {
        let t = coords_of(n, pos);
        for i in 0..n {
            for j in (i + 1)..n {
                if t[i] == 0 || t[j] == 0 {
                    continue;
                }
                let f = u.arr(i, pos);
                let g = u.arr(j, pos);
                let h = u.arr(j, sharp(pos, n, i));
                let k = u.arr(i, sharp(pos, n, j));
                if !is_pullback(f, g, h, k) {
                    out.push(FacedError::NotPullback { at: fmt_pos(n, pos), i: i + 1, j: j + 1 });
                }
            }
        }
    }
    out
}

/// Total number of two-direction squares of a cube.
pub fn square_count(n: usize) -> usize {
    (0..pos_count(n))
        .map(|p| {
            let nz = coords_of(n, p).iter().filter(|&&c| c != 0).count();
            nz * nz.saturating_sub(1) / 2
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::{product, IntervalModel};

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn interval_with_endpoints() {
        let i = IntervalModel::new(1).unwrap();
        let f = FacedSpace { total: i.space.clone(), faces: vec![(ids(&["p0"]), ids(&["p2"]))] };
        let u = from_faced_space(&f).unwrap();
        assert_eq!(u.space(1), &i.space);
        assert_eq!(u.space(0).ids(), &["p0".to_string()]);
    }

    #[test]
    fn square_of_intervals() {
        let i = IntervalModel::new(1).unwrap();
        let (sq, _, _) = product(&i.space, &i.space);
        let side = |coord: usize, v: &str| -> Vec<String> {
            sq.ids()
                .iter()
                .filter(|id| {
                    let inner = &id[1..id.len() - 1];
                    inner.split(',').nth(coord) == Some(v)
                })
                .cloned()
                .collect()
        };
        let f = FacedSpace { total: sq.clone(), faces: vec![(side(0, "p0"), side(0, "p2")), (side(1, "p0"), side(1, "p2"))] };
        let u = from_faced_space(&f).unwrap();
        assert_eq!(u.space(4).len(), 9);
        assert_eq!(u.space(0).len(), 1);
        assert!(non_pullback_squares(&u).is_empty());
        assert_eq!(square_count(2), 4);
    }

    #[test]
    fn overlapping_faces_rejected() {
        let i = IntervalModel::new(1).unwrap();
        let f = FacedSpace { total: i.space, faces: vec![(ids(&["p0", "p1"]), ids(&["p1"]))] };
        assert!(matches!(from_faced_space(&f), Err(FacedError::Overlap { dir: 1, .. })));
    }
}
