use std::fmt;

use thiserror::Error;

use crate::finspace::{
    chosen_pushout, induced_from_legs, product, product_map, sum, sum_map, FinSpace, SpaceError, SpaceMap,
};

/// Sign of a face or of a non-central coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
    pub fn both() -> [Sign; 2] {
        [Sign::Minus, Sign::Plus]
    }
    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "-" | "-1" | "minus" => Some(Sign::Minus),
            "+" | "1" | "+1" | "plus" => Some(Sign::Plus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("expected {expected} grid positions, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("missing position {0}")]
    MissingPosition(String),
    #[error("missing arrow in direction {dir} at {at}")]
    MissingArrow { dir: usize, at: String },
    #[error("unexpected arrow in direction {dir} at {at} (coordinate is central)")]
    ExtraArrow { dir: usize, at: String },
    #[error("arrow in direction {dir} at {at} has the wrong source or target")]
    ArrowEnds { dir: usize, at: String },
    #[error("square at {at} in directions {i},{j} does not commute")]
    NotCommuting { at: String, i: usize, j: usize },
    #[error("index {index} out of range for degree {degree} ({what})")]
    IndexOutOfRange { what: &'static str, index: usize, degree: usize },
    #[error("faces do not match at {at}: {detail}")]
    FaceMismatch { at: String, detail: String },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

pub fn pos_count(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Coordinates in {-1,0,1}^n of a position; the first coordinate is most significant.
pub fn coords_of(n: usize, pos: usize) -> Vec<i8> {
    let mut t = vec![0i8; n];
    let mut p = pos;
    for k in (0..n).rev() {
        t[k] = (p % 3) as i8 - 1;
        p /= 3;
    }
    t
}

pub fn pos_of(t: &[i8]) -> usize {
    t.iter().fold(0, |acc, &c| acc * 3 + (c + 1) as usize)
}

/// The position obtained by annihilating coordinate `d` (0-based).
pub fn sharp(pos: usize, n: usize, d: usize) -> usize {
    let mut t = coords_of(n, pos);
    t[d] = 0;
    pos_of(&t)
}

pub fn format_index(t: &[i8]) -> String {
    t.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_index(s: &str, n: usize) -> Option<Vec<i8>> {
    if n == 0 {
        return if s.trim().is_empty() { Some(vec![]) } else { None };
    }
    let t: Option<Vec<i8>> = s
        .split(',')
        .map(|c| match c.trim() {
            "-1" | "-" => Some(-1),
            "0" => Some(0),
            "1" | "+1" | "+" => Some(1),
            _ => None,
        })
        .collect();
    t.filter(|t| t.len() == n)
}

pub(crate) fn fmt_pos(n: usize, pos: usize) -> String {
    format!("({})", format_index(&coords_of(n, pos)))
}

/// An n-cubical cospan: a 3^n grid of spaces with maps from each non-central
/// coordinate towards the centre.
#[derive(Clone, PartialEq, Eq)]
pub struct Cube {
    n: usize,
    spaces: Vec<FinSpace>,
    /// `arrows[d][pos]` is present iff coordinate `d` of `pos` is non-zero.
    arrows: Vec<Vec<Option<SpaceMap>>>,
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Cube(n={})", self.n)?;
        for (p, x) in self.spaces.iter().enumerate() {
            writeln!(f, "  {} {:?}", fmt_pos(self.n, p), x)?;
        }
        Ok(())
    }
}

/// A concatenation together with the pushout legs at its central positions.
#[derive(Debug, Clone)]
pub struct Concat {
    pub cube: Cube,
    /// Indexed by position; present where the concatenation coordinate is 0.
    pub left: Vec<Option<SpaceMap>>,
    pub right: Vec<Option<SpaceMap>>,
}

impl Cube {
    pub fn new(n: usize, spaces: Vec<FinSpace>, arrows: Vec<Vec<Option<SpaceMap>>>) -> Result<Cube, CubeError> {
        let c = Cube { n, spaces, arrows };
        c.validate()?;
        Ok(c)
    }

    /// Trusted constructor; validated in debug builds.
    pub(crate) fn raw(n: usize, spaces: Vec<FinSpace>, arrows: Vec<Vec<Option<SpaceMap>>>) -> Cube {
        let c = Cube { n, spaces, arrows };
        debug_assert!(c.validate().is_ok(), "invalid internal cube: {:?}", c.validate());
        c
    }

    pub fn from_space(x: &FinSpace) -> Cube {
        Cube { n: 0, spaces: vec![x.clone()], arrows: vec![] }
    }

    /// The degree-1 cube `minus: X⁻ -> X⁰ <- X⁺ :plus`.
    pub fn cospan(minus: &SpaceMap, plus: &SpaceMap) -> Result<Cube, CubeError> {
        let spaces = vec![minus.src().clone(), minus.dst().clone(), plus.src().clone()];
        Cube::new(1, spaces, vec![vec![Some(minus.clone()), None, Some(plus.clone())]])
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> usize {
        self.spaces.len()
    }

    pub fn space(&self, pos: usize) -> &FinSpace {
        &self.spaces[pos]
    }

    pub fn space_at(&self, t: &[i8]) -> &FinSpace {
        &self.spaces[pos_of(t)]
    }

    pub fn spaces(&self) -> &[FinSpace] {
        &self.spaces
    }

    /// Arrow in direction `i` (1-based) at `pos`.
    pub fn arrow(&self, i: usize, pos: usize) -> Option<&SpaceMap> {
        self.arrows.get(i.wrapping_sub(1))?.get(pos)?.as_ref()
    }

    pub(crate) fn arr(&self, d: usize, pos: usize) -> &SpaceMap {
        self.arrows[d][pos].as_ref().expect("arrow at central coordinate")
    }

    pub fn coords(&self, pos: usize) -> Vec<i8> {
        coords_of(self.n, pos)
    }

    /// Positions whose coordinates are all non-zero.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.positions()).filter(|&p| self.coords(p).iter().all(|&c| c != 0)).collect()
    }

    pub fn total_points(&self) -> usize {
        self.spaces.iter().map(|s| s.len()).sum()
    }

    pub fn validate(&self) -> Result<(), CubeError> {
        let n = self.n;
        let np = pos_count(n);
        if self.spaces.len() != np {
            return Err(CubeError::WrongSize { expected: np, got: self.spaces.len() });
        }
        if self.arrows.len() != n {
            return Err(CubeError::WrongSize { expected: n, got: self.arrows.len() });
        }
        for d in 0..n {
            if self.arrows[d].len() != np {
                return Err(CubeError::WrongSize { expected: np, got: self.arrows[d].len() });
            }
            for pos in 0..np {
                let t = coords_of(n, pos);
                match (&self.arrows[d][pos], t[d]) {
                    (None, 0) => {}
                    (Some(_), 0) => return Err(CubeError::ExtraArrow { dir: d + 1, at: fmt_pos(n, pos) }),
                    (None, _) => return Err(CubeError::MissingArrow { dir: d + 1, at: fmt_pos(n, pos) }),
                    (Some(a), _) => {
                        if a.src() != &self.spaces[pos] || a.dst() != &self.spaces[sharp(pos, n, d)] {
                            return Err(CubeError::ArrowEnds { dir: d + 1, at: fmt_pos(n, pos) });
                        }
                    }
                }
            }
        }
        for pos in 0..np {
            let t = coords_of(n, pos);
            for i in 0..n {
                for j in (i + 1)..n {
                    if t[i] == 0 || t[j] == 0 {
                        continue;
                    }
                    let pi = sharp(pos, n, i);
                    let pj = sharp(pos, n, j);
                    let a = self.arr(i, pos).then(self.arr(j, pi));
                    let b = self.arr(j, pos).then(self.arr(i, pj));
                    if a != b {
                        return Err(CubeError::NotCommuting { at: fmt_pos(n, pos), i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// Generic reindexing: new position `t'` holds the old position `locate(t')`;
    /// new direction `d'` uses old direction `dirs(d')`, or identities if `None`.
    pub(crate) fn reindex(&self, m: usize, locate: impl Fn(&[i8]) -> Vec<i8>, dirs: impl Fn(usize) -> Option<usize>) -> Cube {
        let np = pos_count(m);
        let old: Vec<usize> = (0..np).map(|p| pos_of(&locate(&coords_of(m, p)))).collect();
        let spaces = old.iter().map(|&o| self.spaces[o].clone()).collect();
        let mut arrows = vec![vec![None; np]; m];
        for (d, row) in arrows.iter_mut().enumerate() {
            for p in 0..np {
                if coords_of(m, p)[d] == 0 {
                    continue;
                }
                row[p] = Some(match dirs(d) {
                    Some(od) => self.arr(od, old[p]).clone(),
                    None => SpaceMap::identity(&self.spaces[old[p]]),
                });
            }
        }
        Cube::raw(m, spaces, arrows)
    }

    fn check_dir(&self, what: &'static str, i: usize, max: usize) -> Result<usize, CubeError> {
        if i < 1 || i > max {
            return Err(CubeError::IndexOutOfRange { what, index: i, degree: self.n });
        }
        Ok(i - 1)
    }

    /// Face: the (n-1)-cube at coordinate `i = sign`.
    pub fn face(&self, i: usize, sign: Sign) -> Result<Cube, CubeError> {
        let d = self.check_dir("face", i, self.n)?;
        let a = sign.value();
        Ok(self.reindex(
            self.n - 1,
            |t| {
                let mut v = t.to_vec();
                v.insert(d, a);
                v
            },
            |e| Some(if e < d { e } else { e + 1 }),
        ))
    }

    /// Degeneracy: the (n+1)-cube constant in direction `i` (1 ≤ i ≤ n+1).
    pub fn degeneracy(&self, i: usize) -> Result<Cube, CubeError> {
        let d = self.check_dir("degeneracy", i, self.n + 1)?;
        Ok(self.reindex(
            self.n + 1,
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

    /// Transposition of directions `i` and `i+1` (1 ≤ i ≤ n-1).
    pub fn transpose(&self, i: usize) -> Result<Cube, CubeError> {
        let d = self.check_dir("transpose", i, self.n.saturating_sub(1))?;
        Ok(self.reindex(
            self.n,
            |t| {
                let mut v = t.to_vec();
                v.swap(d, d + 1);
                v
            },
            |e| Some(if e == d { d + 1 } else if e == d + 1 { d } else { e }),
        ))
    }

    /// Mirror image in direction `i`: the two sides are exchanged.
    pub fn reverse(&self, i: usize) -> Result<Cube, CubeError> {
        let d = self.check_dir("reverse", i, self.n)?;
        Ok(self.reindex(
            self.n,
            |t| {
                let mut v = t.to_vec();
                v[d] = -v[d];
                v
            },
            Some,
        ))
    }

    /// Iterated face `∂^{α1}_1 ... ∂^{αn}_n` reaching a vertex.
    pub fn vertex(&self, signs: &[Sign]) -> &FinSpace {
        let t: Vec<i8> = signs.iter().map(|s| s.value()).collect();
        self.space_at(&t)
    }

    pub(crate) fn check_consecutive(&self, other: &Cube, i: usize) -> Result<(), CubeError> {
        if self.n != other.n {
            return Err(CubeError::DegreeMismatch(self.n, other.n));
        }
        let a = self.face(i, Sign::Plus)?;
        let b = other.face(i, Sign::Minus)?;
        first_difference(&a, &b).map_or(Ok(()), Err)
    }

    /// Concatenation in direction `i` by chosen pushouts.
    pub fn concat(&self, other: &Cube, i: usize) -> Result<Cube, CubeError> {
        Ok(self.concat_with_legs(other, i)?.cube)
    }

    pub fn concat_with_legs(&self, other: &Cube, i: usize) -> Result<Concat, CubeError> {
        let d = self.check_dir("concat", i, self.n)?;
        self.check_consecutive(other, i)?;
        let n = self.n;
        let np = pos_count(n);
        let mut spaces: Vec<Option<FinSpace>> = vec![None; np];
        let mut left = vec![None; np];
        let mut right = vec![None; np];
        for pos in 0..np {
            let t = coords_of(n, pos);
            spaces[pos] = Some(match t[d] {
                -1 => self.spaces[pos].clone(),
                1 => other.spaces[pos].clone(),
                _ => {
                    let mut tp = t.clone();
                    tp[d] = 1;
                    let mut tm = t.clone();
                    tm[d] = -1;
                    let f = self.arr(d, pos_of(&tp));
                    let g = other.arr(d, pos_of(&tm));
                    let po = chosen_pushout(f, g)?;
                    left[pos] = Some(po.left);
                    right[pos] = Some(po.right);
                    po.apex
                }
            });
        }
        let spaces: Vec<FinSpace> = spaces.into_iter().map(Option::unwrap).collect();
        let mut arrows = vec![vec![None; np]; n];
        for (e, row) in arrows.iter_mut().enumerate() {
            for pos in 0..np {
                let t = coords_of(n, pos);
                if t[e] == 0 {
                    continue;
                }
                let tgt = sharp(pos, n, e);
                row[pos] = Some(if e == d {
                    if t[d] == -1 {
                        self.arr(d, pos).then(left[tgt].as_ref().unwrap())
                    } else {
                        other.arr(d, pos).then(right[tgt].as_ref().unwrap())
                    }
                } else {
                    match t[d] {
                        -1 => self.arr(e, pos).clone(),
                        1 => other.arr(e, pos).clone(),
                        _ => {
                            let l = left[pos].as_ref().unwrap();
                            let r = right[pos].as_ref().unwrap();
                            let ml = self.arr(e, pos).then(left[tgt].as_ref().unwrap());
                            let mr = other.arr(e, pos).then(right[tgt].as_ref().unwrap());
                            induced_from_legs(&spaces[pos], &[(l, &ml), (r, &mr)])?
                        }
                    }
                });
            }
        }
        let cube = Cube::new(n, spaces, arrows)?;
        Ok(Concat { cube, left, right })
    }

    /// Positionwise tagged sum of two cubes of the same degree.
    pub fn sum(&self, other: &Cube) -> Result<Cube, CubeError> {
        if self.n != other.n {
            return Err(CubeError::DegreeMismatch(self.n, other.n));
        }
        let np = self.positions();
        let spaces = (0..np).map(|p| sum(&self.spaces[p], &other.spaces[p]).0).collect();
        let arrows = (0..self.n)
            .map(|d| {
                (0..np)
                    .map(|p| self.arrows[d][p].as_ref().map(|a| sum_map(a, other.arr(d, p))))
                    .collect()
            })
            .collect();
        Ok(Cube::raw(self.n, spaces, arrows))
    }

    /// Exterior product: degree `n + m`, spaces `X(t) × Y(s)`.
    pub fn product(&self, other: &Cube) -> Cube {
        let (n, m) = (self.n, other.n);
        let k = n + m;
        let np = pos_count(k);
        let split = |p: usize| {
            let t = coords_of(k, p);
            (pos_of(&t[..n]), pos_of(&t[n..]))
        };
        let spaces = (0..np)
            .map(|p| {
                let (a, b) = split(p);
                product(&self.spaces[a], &other.spaces[b]).0
            })
            .collect();
        let mut arrows = vec![vec![None; np]; k];
        for (d, row) in arrows.iter_mut().enumerate() {
            for p in 0..np {
                if coords_of(k, p)[d] == 0 {
                    continue;
                }
                let (a, b) = split(p);
                row[p] = Some(if d < n {
                    product_map(self.arr(d, a), &SpaceMap::identity(&other.spaces[b]))
                } else {
                    product_map(&SpaceMap::identity(&self.spaces[a]), other.arr(d - n, b))
                });
            }
        }
        Cube::raw(k, spaces, arrows)
    }
}

/// First position where two cubes differ, as a face-mismatch error.
pub fn first_difference(a: &Cube, b: &Cube) -> Option<CubeError> {
    if a.n != b.n {
        return Some(CubeError::DegreeMismatch(a.n, b.n));
    }
    for pos in 0..a.positions() {
        if a.spaces[pos] != b.spaces[pos] {
            return Some(CubeError::FaceMismatch {
                at: fmt_pos(a.n, pos),
                detail: format!("spaces differ: {:?} vs {:?}", a.spaces[pos], b.spaces[pos]),
            });
        }
    }
    for d in 0..a.n {
        for pos in 0..a.positions() {
            if a.arrows[d][pos] != b.arrows[d][pos] {
                return Some(CubeError::FaceMismatch {
                    at: fmt_pos(a.n, pos),
                    detail: format!("arrows in direction {} differ", d + 1),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::IntervalModel;

    fn endpoint_cospan() -> Cube {
        let i = IntervalModel::new(1).unwrap();
        let p = FinSpace::point("*");
        let m = SpaceMap::from_fn(&p, &i.space, |_| i.point(0));
        let q = SpaceMap::from_fn(&p, &i.space, |_| i.point(2));
        Cube::cospan(&m, &q).unwrap()
    }

    #[test]
    fn index_round_trip() {
        for n in 0..4 {
            for p in 0..pos_count(n) {
                assert_eq!(pos_of(&coords_of(n, p)), p);
            }
        }
        assert_eq!(parse_index("-1,0,1", 3), Some(vec![-1, 0, 1]));
        assert_eq!(parse_index("", 0), Some(vec![]));
        assert_eq!(parse_index("2", 1), None);
    }

    #[test]
    fn degree_zero_and_degenerate() {
        let x = FinSpace::new(&["a", "b"], &[("a", "b")]).unwrap();
        let c = Cube::from_space(&x);
        assert!(c.validate().is_ok());
        let e = c.degeneracy(1).unwrap();
        let id = SpaceMap::identity(&x);
        assert_eq!(e, Cube::cospan(&id, &id).unwrap());
        assert_eq!(e.face(1, Sign::Minus).unwrap(), c);
    }

    #[test]
    fn broken_square_reported() {
        let u = endpoint_cospan();
        let sq = u.product(&u);
        let mut arrows = sq.arrows.clone();
        // redirect one corner arrow to the other endpoint of its edge
        let p = pos_of(&[-1, -1]);
        let a = sq.arr(0, p).clone();
        let tgt = a.dst().clone();
        let other = tgt.index_of("(p2,*)").unwrap();
        arrows[0][p] = Some(SpaceMap::from_fn(a.src(), &tgt, |_| other));
        let err = Cube::new(2, sq.spaces.clone(), arrows).unwrap_err();
        assert!(matches!(err, CubeError::NotCommuting { .. }), "{err}");
    }

    #[test]
    fn concat_unitary() {
        let u = endpoint_cospan();
        let e = u.face(1, Sign::Plus).unwrap().degeneracy(1).unwrap();
        assert_eq!(u.concat(&e, 1).unwrap(), u);
        let e = u.face(1, Sign::Minus).unwrap().degeneracy(1).unwrap();
        assert_eq!(e.concat(&u, 1).unwrap(), u);
    }

    #[test]
    fn concat_of_intervals_has_five_points() {
        let u = endpoint_cospan();
        let w = u.concat(&u, 1).unwrap();
        assert_eq!(w.space_at(&[0]).len(), 5);
        assert!(u.concat(&u.degeneracy(2).unwrap(), 1).is_err());
    }

    #[test]
    fn face_mismatch_reports_position() {
        let u = endpoint_cospan();
        let v = Cube::from_space(&FinSpace::discrete(&["x", "y"]).unwrap()).degeneracy(1).unwrap();
        let err = u.concat(&v, 1).unwrap_err();
        assert!(matches!(err, CubeError::FaceMismatch { .. }));
    }

    #[test]
    fn transpose_involution() {
        let u = endpoint_cospan();
        let sq = u.product(&u.reverse(1).unwrap());
        assert_eq!(sq.transpose(1).unwrap().transpose(1).unwrap(), sq);
        assert!(sq.transpose(2).is_err());
    }
}
