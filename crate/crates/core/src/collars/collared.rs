use thiserror::Error;

use super::PreCollared;
use crate::cubemodel::cube::{coords_of, fmt_pos, pos_count, sharp};
use crate::finspace::{cylinder, UnionFind};

/// Why a pre-collared cube is not collared.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollarDiagnosis {
    #[error("direction {dir} at {at}: collar part is not an embedding")]
    Embedding { dir: usize, at: String },
    #[error("direction {dir} at {at}: collar image is not closed")]
    Closed { dir: usize, at: String },
    #[error("direction {dir} at {at}: collar images from both sides meet")]
    Disjointness { dir: usize, at: String },
    #[error("direction {dir} at {at}: collar image away from the far end is not open")]
    Openness { dir: usize, at: String },
}

impl CollarDiagnosis {
    pub fn kind(&self) -> &'static str {
        match self {
            CollarDiagnosis::Embedding { .. } => "embedding",
            CollarDiagnosis::Closed { .. } => "closed",
            CollarDiagnosis::Disjointness { .. } => "disjointness",
            CollarDiagnosis::Openness { .. } => "openness",
        }
    }
}

/// The decomposition found in each direction: `parts[d][pos][elem]` is true on the 1-collared part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollaredWitness {
    pub parts: Vec<Vec<Vec<bool>>>,
}

impl CollaredWitness {
    pub fn in_part_one(&self, dir: usize, pos: usize, elem: usize) -> bool {
        self.parts[dir - 1][pos][elem]
    }
}

/// Finds the coarsest-compatible splitting into a trivially collared part and a genuinely
/// collared part in every direction, or the first condition that fails.
pub fn check_collared(u: &PreCollared) -> Result<CollaredWitness, CollarDiagnosis> {
    let n = u.degree();
    let mut parts = Vec::with_capacity(n);
    for d in 0..n {
        parts.push(check_direction(u, d)?);
    }
    Ok(CollaredWitness { parts })
}

fn check_direction(u: &PreCollared, d: usize) -> Result<Vec<Vec<bool>>, CollarDiagnosis> {
    let c = u.cube();
    let n = c.degree();
    let np = pos_count(n);
    let mut offset = vec![0; np + 1];
    for p in 0..np {
        offset[p + 1] = offset[p] + c.space(p).len();
    }
    let mut uf = UnionFind::new(offset[np]);
    for p in 0..np {
        let x = c.space(p);
        for a in 0..x.len() {
            for b in (0..x.len()).filter(|&b| x.leq(a, b)) {
                uf.union(offset[p] + a, offset[p] + b);
            }
        }
        let t = coords_of(n, p);
        for (e, &te) in t.iter().enumerate() {
            if te == 0 {
                continue;
            }
            let q = sharp(p, n, e);
            let arr = c.arr(e, p);
            for a in 0..x.len() {
                uf.union(offset[p] + a, offset[q] + arr.apply(a));
            }
        }
        if t[d] != 0 {
            let q = sharp(p, n, d);
            let col = u.col(d, p);
            let cyl = cylinder(x, col.k).unwrap();
            for e in 0..cyl.space.len() {
                uf.union(offset[p] + cyl.collapse.apply(e), offset[q] + col.map.apply(e));
            }
        }
    }
    let root: Vec<usize> = (0..offset[np]).map(|g| uf.find(g)).collect();
    let mut part = vec![false; offset[np]];
    let mut roots: Vec<usize> = root.clone();
    roots.sort_unstable();
    roots.dedup();
    for r in roots {
        let member = |p: usize, a: usize| root[offset[p] + a] == r;
        if is_trivial_part(u, d, &member) {
            continue;
        }
        check_one_part(u, d, &member)?;
        for g in 0..offset[np] {
            if root[g] == r {
                part[g] = true;
            }
        }
    }
    Ok((0..np).map(|p| part[offset[p]..offset[p + 1]].to_vec()).collect())
}

fn is_trivial_part(u: &PreCollared, d: usize, member: &dyn Fn(usize, usize) -> bool) -> bool {
    let c = u.cube();
    let n = c.degree();
    for p in 0..pos_count(n) {
        if coords_of(n, p)[d] == 0 {
            continue;
        }
        let q = sharp(p, n, d);
        let (x, y) = (c.space(p), c.space(q));
        let arr = c.arr(d, p);
        let src: Vec<usize> = (0..x.len()).filter(|&a| member(p, a)).collect();
        let dst: Vec<usize> = (0..y.len()).filter(|&b| member(q, b)).collect();
        // an embedding restricted to a class is a homeomorphism iff it is onto the class
        if src.len() != dst.len() {
            return false;
        }
        let col = u.col(d, p);
        let cyl = cylinder(x, col.k).unwrap();
        for &a in &src {
            if (0..=2 * col.k).any(|j| col.map.apply(cyl.at(a, j)) != arr.apply(a)) {
                return false;
            }
        }
    }
    true
}

fn check_one_part(u: &PreCollared, d: usize, member: &dyn Fn(usize, usize) -> bool) -> Result<(), CollarDiagnosis> {
    let c = u.cube();
    let n = c.degree();
    let np = pos_count(n);
    let mut images: Vec<Option<Vec<bool>>> = vec![None; np];
    for p in 0..np {
        let t = coords_of(n, p);
        if t[d] == 0 {
            continue;
        }
        let at = || fmt_pos(n, p);
        let dir = d + 1;
        let q = sharp(p, n, d);
        let (x, y) = (c.space(p), c.space(q));
        let col = u.col(d, p);
        let cyl = cylinder(x, col.k).unwrap();
        let dom: Vec<usize> = (0..cyl.space.len()).filter(|&e| member(p, cyl.collapse.apply(e))).collect();
        for &a in &dom {
            for &b in &dom {
                let (fa, fb) = (col.map.apply(a), col.map.apply(b));
                if (fa == fb && a != b) || (y.leq(fa, fb) && !cyl.space.leq(a, b)) {
                    return Err(CollarDiagnosis::Embedding { dir, at: at() });
                }
            }
        }
        let mut img = vec![false; y.len()];
        let mut open = vec![false; y.len()];
        for &e in &dom {
            img[col.map.apply(e)] = true;
            if cyl.level(e) < 2 * col.k {
                open[col.map.apply(e)] = true;
            }
        }
        if !y.is_down_closed(&img) {
            return Err(CollarDiagnosis::Closed { dir, at: at() });
        }
        if !y.is_up_closed(&open) {
            return Err(CollarDiagnosis::Openness { dir, at: at() });
        }
        images[p] = Some(img);
    }
    for p in 0..np {
        let t = coords_of(n, p);
        if t[d] != -1 {
            continue;
        }
        let mut m = t.clone();
        m[d] = 1;
        let mirror = crate::cubemodel::pos_of(&m);
        let (a, b) = (images[p].as_ref().unwrap(), images[mirror].as_ref().unwrap());
        if a.iter().zip(b).any(|(x, y)| *x && *y) {
            return Err(CollarDiagnosis::Disjointness { dir: d + 1, at: fmt_pos(n, sharp(p, n, d)) });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collars::{thirds::half_open, Collar};
    use crate::cubemodel::{Cube, Sign};
    use crate::finspace::{FinSpace, SpaceMap};

    #[test]
    fn identity_cospan_is_trivially_collared() {
        let x = FinSpace::new(&["a", "b"], &[("a", "b")]).unwrap();
        let u = PreCollared::from_space(&x).degeneracy(1).unwrap();
        let w = check_collared(&u).unwrap();
        assert!(w.parts[0].iter().all(|p| p.iter().all(|b| !b)));
    }

    #[test]
    fn half_open_interval_is_collared() {
        let x = FinSpace::discrete(&["a", "b"]).unwrap();
        let w = check_collared(&half_open(&x, Sign::Minus)).unwrap();
        assert!(w.parts[0][1].iter().all(|&b| b));
    }

    #[test]
    fn whole_interval_collar_meets_other_end() {
        // X -> X × I_1 <- X with identity collars on both ends
        let x = FinSpace::point("*");
        let cyl = cylinder(&x, 1).unwrap();
        let flip = SpaceMap::from_fn(&cyl.space, &cyl.space, |e| cyl.at(0, 2 - cyl.level(e)));
        let cube = Cube::cospan(&cyl.d_minus, &cyl.d_plus).unwrap();
        let u = PreCollared::new(
            cube,
            vec![vec![Some(Collar { k: 1, map: SpaceMap::identity(&cyl.space) }), None, Some(Collar { k: 1, map: flip })]],
        )
        .unwrap();
        assert_eq!(check_collared(&u).unwrap_err().kind(), "disjointness");
    }

    #[test]
    fn collar_onto_open_point_is_not_closed() {
        // pt -> I_1 with the collar landing on p0 < p1 and p1 not covering p2 in the image
        let x = FinSpace::point("*");
        let cyl = cylinder(&x, 1).unwrap();
        let i3 = cylinder(&x, 3).unwrap();
        // (x,p_j) -> (x,p_{j+1}) is not an extension; (x,p0)->p0,(x,p1)->p1,(x,p2)->p1 fails embedding
        let squash = SpaceMap::from_fn(&cyl.space, &i3.space, |e| i3.at(0, cyl.level(e).min(1)));
        let cube = Cube::cospan(&i3.d_minus, &i3.d_plus).unwrap();
        let plus = SpaceMap::from_fn(&cyl.space, &i3.space, |e| i3.at(0, 6 - cyl.level(e)));
        let u = PreCollared::new(cube, vec![vec![Some(Collar { k: 1, map: squash }), None, Some(Collar { k: 1, map: plus })]])
            .unwrap();
        assert_eq!(check_collared(&u).unwrap_err().kind(), "embedding");
    }
}
