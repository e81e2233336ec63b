//! Back squares of cubes whose top is a pushout and whose front and bottom are pullbacks.

use thiserror::Error;

use crate::finspace::{chosen_pushout, is_pullback, FinSpace, SpaceMap};

/// A commutative cube of embeddings. The top face is `A -> X, A -> Y, X -> Z, Y -> Z`,
/// the bottom face is its primed copy, and `a, x, y, z` map each top corner to its primed one.
#[derive(Debug, Clone)]
pub struct BackSquareCube {
    pub ax: SpaceMap,
    pub ay: SpaceMap,
    pub xz: SpaceMap,
    pub yz: SpaceMap,
    pub ax2: SpaceMap,
    pub ay2: SpaceMap,
    pub xz2: SpaceMap,
    pub yz2: SpaceMap,
    pub a: SpaceMap,
    pub x: SpaceMap,
    pub y: SpaceMap,
    pub z: SpaceMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error("map `{0}` is not an embedding")]
    NotEmbedding(&'static str),
    #[error("the {0} face does not commute")]
    NotCommutative(&'static str),
    #[error("front face is not a pullback")]
    FrontNotPullback,
    #[error("bottom face is not a pullback")]
    BottomNotPullback,
    #[error("top face is not a pushout")]
    TopNotPushout,
}

impl HypothesisError {
    pub fn class(&self) -> &'static str {
        match self {
            HypothesisError::NotEmbedding(_) => "not-embedding",
            HypothesisError::NotCommutative(_) => "not-commutative",
            HypothesisError::FrontNotPullback => "front-not-pullback",
            HypothesisError::BottomNotPullback => "bottom-not-pullback",
            HypothesisError::TopNotPushout => "top-not-pushout",
        }
    }
}

fn commutes(f: &SpaceMap, h: &SpaceMap, g: &SpaceMap, k: &SpaceMap) -> bool {
    f.src() == g.src() && f.dst() == h.src() && g.dst() == k.src() && h.dst() == k.dst() && f.then(h) == g.then(k)
}

impl BackSquareCube {
    pub fn check_hypotheses(&self) -> Result<(), HypothesisError> {
        let named = [
            ("A->X", &self.ax),
            ("A->Y", &self.ay),
            ("X->Z", &self.xz),
            ("Y->Z", &self.yz),
            ("A'->X'", &self.ax2),
            ("A'->Y'", &self.ay2),
            ("X'->Z'", &self.xz2),
            ("Y'->Z'", &self.yz2),
            ("A->A'", &self.a),
            ("X->X'", &self.x),
            ("Y->Y'", &self.y),
            ("Z->Z'", &self.z),
        ];
        if let Some((name, _)) = named.iter().find(|(_, m)| !m.is_embedding()) {
            return Err(HypothesisError::NotEmbedding(name));
        }
        let faces = [
            ("top", commutes(&self.ax, &self.xz, &self.ay, &self.yz)),
            ("bottom", commutes(&self.ax2, &self.xz2, &self.ay2, &self.yz2)),
            ("front", commutes(&self.ax, &self.x, &self.a, &self.ax2)),
            ("side", commutes(&self.ay, &self.y, &self.a, &self.ay2)),
            ("left", commutes(&self.xz, &self.z, &self.x, &self.xz2)),
            ("back", commutes(&self.yz, &self.z, &self.y, &self.yz2)),
        ];
        if let Some((name, _)) = faces.iter().find(|(_, ok)| !ok) {
            return Err(HypothesisError::NotCommutative(name));
        }
        if !is_pullback(&self.ax, &self.a, &self.x, &self.ax2) {
            return Err(HypothesisError::FrontNotPullback);
        }
        if !is_pullback(&self.ax2, &self.ay2, &self.xz2, &self.yz2) {
            return Err(HypothesisError::BottomNotPullback);
        }
        let po = chosen_pushout(&self.ax, &self.ay).map_err(|_| HypothesisError::TopNotPushout)?;
        match po.induced(&self.xz, &self.yz) {
            Ok(m) if m.is_homeomorphism() => Ok(()),
            _ => Err(HypothesisError::TopNotPushout),
        }
    }

    /// Whether `Y -> Z, Y -> Y', Z -> Z', Y' -> Z'` is a pullback.
    pub fn back_is_pullback(&self) -> bool {
        is_pullback(&self.yz, &self.y, &self.z, &self.yz2)
    }

    /// The cube over the pushout of an embedding span `A' -> X', A' -> Y'`, with top corners the
    /// subspaces `x_keep` of `X'` and `y_keep` of `Y'`, `A` their common preimage in `A'` and `Z`
    /// the pushout. `None` if the preimages in `A'` differ, so no such cube exists.
    pub fn over_pushout(ax2: &SpaceMap, ay2: &SpaceMap, x_keep: &[usize], y_keep: &[usize]) -> Option<BackSquareCube> {
        let (a2, x2, y2) = (ax2.src(), ax2.dst(), ay2.dst());
        let po = chosen_pushout(ax2, ay2).ok()?;
        let (in_x, in_y) = (mask(x2.len(), x_keep), mask(y2.len(), y_keep));
        let a_keep: Vec<usize> = (0..a2.len()).filter(|&e| in_x[ax2.apply(e)]).collect();
        if (0..a2.len()).any(|e| in_y[ay2.apply(e)] != in_x[ax2.apply(e)]) {
            return None;
        }
        let (a, x, y) = (a2.subspace(&a_keep), x2.subspace(x_keep), y2.subspace(y_keep));
        let incl = |s: &FinSpace, t: &FinSpace| SpaceMap::from_fn(s, t, |e| t.index_of(s.id(e)).unwrap());
        let (ia, ix, iy) = (incl(&a, a2), incl(&x, x2), incl(&y, y2));
        let ax = SpaceMap::from_fn(&a, &x, |e| x.index_of(x2.id(ax2.apply(ia.apply(e)))).unwrap());
        let ay = SpaceMap::from_fn(&a, &y, |e| y.index_of(y2.id(ay2.apply(ia.apply(e)))).unwrap());
        let top = chosen_pushout(&ax, &ay).ok()?;
        let z = top.induced(&ix.then(&po.left), &iy.then(&po.right)).ok()?;
        Some(BackSquareCube {
            ax,
            ay,
            xz: top.left,
            yz: top.right,
            ax2: ax2.clone(),
            ay2: ay2.clone(),
            xz2: po.left,
            yz2: po.right,
            a: ia,
            x: ix,
            y: iy,
            z,
        })
    }
}

fn mask(n: usize, keep: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &k in keep {
        m[k] = true;
    }
    m
}

/// Checks the hypotheses, then reports whether the back square is a pullback.
pub fn back_square_pullback(c: &BackSquareCube) -> Result<bool, HypothesisError> {
    c.check_hypotheses()?;
    Ok(c.back_is_pullback())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn incl(s: &FinSpace, t: &FinSpace) -> SpaceMap {
        SpaceMap::from_fn(s, t, |e| t.index_of(s.id(e)).unwrap())
    }

    /// Bottom span `{a} -> {a < x}`, `{a} -> {a < y}`.
    fn span() -> (SpaceMap, SpaceMap) {
        let a2 = FinSpace::point("a");
        let x2 = FinSpace::new(&["a", "x"], &[("a", "x")]).unwrap();
        let y2 = FinSpace::new(&["a", "y"], &[("a", "y")]).unwrap();
        (incl(&a2, &x2), incl(&a2, &y2))
    }

    #[test]
    fn sample_satisfies_lemma() {
        let (f, g) = span();
        let x = f.dst().index_of("x").unwrap();
        let y = g.dst().index_of("y").unwrap();
        let c = BackSquareCube::over_pushout(&f, &g, &[x], &[y]).unwrap();
        assert_eq!(back_square_pullback(&c), Ok(true));
        let all: Vec<usize> = (0..2).collect();
        let c = BackSquareCube::over_pushout(&f, &g, &all, &all).unwrap();
        assert_eq!(back_square_pullback(&c), Ok(true));
        assert!(BackSquareCube::over_pushout(&f, &g, &all, &[y]).is_none());
    }

    #[test]
    fn broken_front_is_reported() {
        // top: X = X', Y = ∅, but A = ∅ misses the part of A' inside X
        let (f, g) = span();
        let all: Vec<usize> = (0..2).collect();
        let mut c = BackSquareCube::over_pushout(&f, &g, &all, &all).unwrap();
        let empty = FinSpace::empty();
        let x = c.ax.dst().clone();
        let z = c.xz.dst().clone();
        c.ax = incl(&empty, &x);
        c.a = incl(&empty, f.src());
        c.ay = SpaceMap::from_fn(&empty, &empty, |_| 0);
        c.y = SpaceMap::from_fn(&empty, g.dst(), |_| 0);
        c.yz = SpaceMap::from_fn(&empty, &z, |_| 0);
        assert_eq!(c.check_hypotheses(), Err(HypothesisError::FrontNotPullback));
    }
}
