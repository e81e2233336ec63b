//! Pushouts of embeddings and the back-square lemma.

use std::collections::HashMap;

use super::instances;
use crate::collars::{back_square_pullback, BackSquareCube, HypothesisError};
use crate::finspace::{all_maps, chosen_pushout, is_pullback, FinSpace, SpaceMap};
use crate::harness::laws::ensure;
use crate::harness::{holds, Failure, GenConfig, LawReport};

/// Small test spaces for cocones: a point, two discrete points, the Sierpinski space.
fn cocone_targets() -> Vec<FinSpace> {
    vec![
        FinSpace::point("w"),
        FinSpace::discrete(&["w0", "w1"]).unwrap(),
        FinSpace::new(&["w0", "w1"], &[("w0", "w1")]).unwrap(),
    ]
}

/// Every cocone on the span into `w` factors through the pushout exactly once, and the
/// factorisation is the induced map.
fn universal_into(f: &SpaceMap, g: &SpaceMap, w: &FinSpace) -> Result<(), Failure> {
    let po = chosen_pushout(f, g)?;
    let mut by_legs: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
    for m in all_maps(&po.apex, w) {
        let key = (po.left.then(&m).assign().to_vec(), po.right.then(&m).assign().to_vec());
        *by_legs.entry(key).or_default() += 1;
    }
    let ys = all_maps(g.dst(), w);
    for kx in all_maps(f.dst(), w) {
        let fx = f.then(&kx);
        for ky in ys.iter().filter(|ky| g.then(ky) == fx) {
            let key = (kx.assign().to_vec(), ky.assign().to_vec());
            let count = by_legs.get(&key).copied().unwrap_or(0);
            ensure(count == 1, || format!("cocone into {} points factors {count} times", w.len()))?;
            let m = po.induced(&kx, ky)?;
            ensure(po.left.then(&m) == kx && po.right.then(&m) == *ky, || "induced map misses a leg".into())?;
        }
    }
    Ok(())
}

pub(super) fn pushout_embeddings(cfg: &GenConfig) -> Vec<LawReport> {
    let open = instances(cfg, "legs-embeddings", |g| g.embedding_span(cfg.max_points, false));
    let closed = instances(cfg, "closed-legs", |g| g.embedding_span(cfg.max_points, true));
    let squares = instances(cfg, "pullback-square", |g| {
        let closed = g.chance(0.5);
        g.embedding_span(cfg.max_points, closed)
    });
    let small = instances(cfg, "universal-property", |g| {
        let closed = g.chance(0.5);
        g.embedding_span(cfg.max_points.min(5), closed)
    });
    let targets = cocone_targets();
    vec![
        holds("legs-embeddings", &open, |(f, g)| {
            let po = chosen_pushout(f, g)?;
            ensure(po.left.is_embedding() && po.right.is_embedding(), || "a pushout leg is not an embedding".into())
        }),
        holds("closed-legs", &closed, |(f, g)| {
            let po = chosen_pushout(f, g)?;
            ensure(po.left.is_closed_embedding() && po.right.is_closed_embedding(), || {
                "a pushout leg is not a closed embedding".into()
            })
        }),
        holds("pullback-square", &squares, |(f, g)| {
            let po = chosen_pushout(f, g)?;
            ensure(is_pullback(f, g, &po.left, &po.right), || "pushout square is not a pullback".into())
        }),
        holds("universal-property", &small, |(f, g)| {
            for w in &targets {
                universal_into(f, g, w)?;
            }
            Ok(())
        }),
    ]
}

fn incl(s: &FinSpace, t: &FinSpace) -> SpaceMap {
    SpaceMap::from_fn(s, t, |e| t.index_of(s.id(e)).unwrap())
}

fn from_empty(t: &FinSpace) -> SpaceMap {
    SpaceMap::from_fn(&FinSpace::empty(), t, |_| 0)
}

/// A cube over the empty span: top corners `x, y`, bottom corners `x2, y2`, included vertically.
#[allow(clippy::too_many_arguments)]
fn over_empty(
    x: &FinSpace,
    y: &FinSpace,
    x2: &FinSpace,
    y2: &FinSpace,
    xz: SpaceMap,
    yz: SpaceMap,
    xz2: SpaceMap,
    yz2: SpaceMap,
    zz: SpaceMap,
) -> BackSquareCube {
    BackSquareCube {
        ax: from_empty(x),
        ay: from_empty(y),
        xz,
        yz,
        ax2: from_empty(x2),
        ay2: from_empty(y2),
        xz2,
        yz2,
        a: from_empty(&FinSpace::empty()),
        x: incl(x, x2),
        y: incl(y, y2),
        z: zz,
    }
}

/// Hand-built cubes that each break one hypothesis, with the error class expected of them.
pub fn hypothesis_violations() -> Vec<(&'static str, BackSquareCube)> {
    let a2 = FinSpace::point("a");
    let x2 = FinSpace::new(&["a", "x"], &[("a", "x")]).unwrap();
    let y2 = FinSpace::new(&["a", "y"], &[("a", "y")]).unwrap();
    let (f, g) = (incl(&a2, &x2), incl(&a2, &y2));
    let all = [0, 1];
    let good = BackSquareCube::over_pushout(&f, &g, &all, &all).unwrap();

    let mut collapse = good.clone();
    collapse.x = SpaceMap::from_fn(collapse.x.src(), collapse.x.dst(), |_| 0);

    // A = ∅ although the front corner X' meets A'
    let mut front = good.clone();
    let empty = FinSpace::empty();
    let (x, z) = (front.ax.dst().clone(), front.xz.dst().clone());
    front.ax = incl(&empty, &x);
    front.a = incl(&empty, f.src());
    front.ay = SpaceMap::from_fn(&empty, &empty, |_| 0);
    front.y = from_empty(g.dst());
    front.yz = from_empty(&z);

    // two points glued into a chain instead of their disjoint union
    let (px, py) = (FinSpace::point("x"), FinSpace::point("y"));
    let chain = FinSpace::new(&["x", "y"], &[("x", "y")]).unwrap();
    let top = over_empty(
        &px,
        &py,
        &px,
        &py,
        incl(&px, &chain),
        incl(&py, &chain),
        incl(&px, &chain),
        incl(&py, &chain),
        SpaceMap::identity(&chain),
    );

    // the bottom corners all coincide over an empty A'
    let pz = FinSpace::point("z");
    let id = SpaceMap::identity(&pz);
    let bottom = over_empty(
        &empty,
        &empty,
        &pz,
        &pz,
        from_empty(&empty),
        from_empty(&empty),
        id.clone(),
        id,
        from_empty(&pz),
    );

    // Z -> Z' sends x away from the image of X' -> Z'
    let two = FinSpace::discrete(&["w", "x"]).unwrap();
    let skew = over_empty(
        &px,
        &empty,
        &px,
        &empty,
        SpaceMap::identity(&px),
        from_empty(&px),
        incl(&px, &two),
        from_empty(&two),
        SpaceMap::from_fn(&px, &two, |_| two.index_of("w").unwrap()),
    );

    vec![
        ("not-embedding", collapse),
        ("front-not-pullback", front),
        ("top-not-pushout", top),
        ("bottom-not-pullback", bottom),
        ("not-commutative", skew),
    ]
}

pub(super) fn back_square(cfg: &GenConfig) -> Vec<LawReport> {
    let cubes = instances(cfg, "back-square-pullback", |g| g.back_square_cube());
    let bad = hypothesis_violations();
    vec![
        holds("back-square-pullback", &cubes, |c| match back_square_pullback(c) {
            Ok(true) => Ok(()),
            Ok(false) => Err(Failure::new("back square is not a pullback")),
            Err(e) => Err(Failure::new(format!("generated cube breaks a hypothesis: {e}"))),
        }),
        holds("hypothesis-violations", &bad, |(class, c)| match back_square_pullback(c) {
            Err(e) if e.class() == *class => Ok(()),
            Err(e) => Err(Failure::new(format!("expected {class}, got {}", HypothesisError::class(&e)))),
            Ok(_) => Err(Failure::new(format!("expected {class}, hypotheses accepted"))),
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_violation_has_its_class() {
        for (class, c) in hypothesis_violations() {
            assert_eq!(back_square_pullback(&c).unwrap_err().class(), class);
        }
    }
}
