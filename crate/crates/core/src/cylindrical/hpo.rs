use crate::cubemodel::cube::{coords_of, pos_count, pos_of, sharp};
use crate::cubemodel::{Cube, CubeError, Sign, TMap, TMapError};
use crate::finspace::{
    cylinder, induced_from_legs, product_map, quotient, tagged_sum, Cylinder, FinSpace, IntervalModel, SpaceError,
    SpaceMap,
};

/// A standard homotopy pushout `(X + IA + Y)/∼` of a span `X <- A -> Y`.
#[derive(Debug, Clone)]
pub struct HomotopyPushout {
    pub apex: FinSpace,
    pub left: SpaceMap,
    pub right: SpaceMap,
    /// The cylinder on the span's domain.
    pub cyl: Cylinder,
    /// `IA -> P`.
    pub homotopy: SpaceMap,
}

impl HomotopyPushout {
    /// The map out of the apex determined by a map on each of the three pieces.
    pub fn induced(&self, kx: &SpaceMap, kc: &SpaceMap, ky: &SpaceMap) -> Result<SpaceMap, SpaceError> {
        induced_from_legs(&self.apex, &[(&self.left, kx), (&self.homotopy, kc), (&self.right, ky)])
    }
}

/// Gluing a unit-length cylinder between `f: A -> X` and `g: A -> Y`.
pub fn standard_hpo(f: &SpaceMap, g: &SpaceMap) -> Result<HomotopyPushout, SpaceError> {
    if f.src() != g.src() {
        return Err(SpaceError::DomainMismatch("span legs have different domains".into()));
    }
    let a = f.src();
    let cyl = cylinder(a, 1)?;
    let (sum, inj) = tagged_sum(&[("L", f.dst()), ("C", &cyl.space), ("R", g.dst())]);
    let mut pairs = Vec::with_capacity(2 * a.len());
    for e in 0..a.len() {
        pairs.push((inj[0].apply(f.apply(e)), inj[1].apply(cyl.d_minus.apply(e))));
        pairs.push((inj[2].apply(g.apply(e)), inj[1].apply(cyl.d_plus.apply(e))));
    }
    let (apex, q) = quotient(&sum, &pairs);
    Ok(HomotopyPushout {
        left: inj[0].then(&q),
        homotopy: inj[1].then(&q),
        right: inj[2].then(&q),
        apex,
        cyl,
    })
}

/// Cylindrical degeneracy in direction `i` (1 ≤ i ≤ n+1).
pub fn cyl_degeneracy(u: &Cube, i: usize) -> Result<Cube, CubeError> {
    let n = u.degree();
    if i < 1 || i > n + 1 {
        return Err(CubeError::IndexOutOfRange { what: "cylindrical degeneracy", index: i, degree: n });
    }
    let d = i - 1;
    let m = n + 1;
    let np = pos_count(m);
    let old = |p: usize| {
        let mut t = coords_of(m, p);
        t.remove(d);
        pos_of(&t)
    };
    let cyls: Vec<Option<Cylinder>> = (0..np)
        .map(|p| (coords_of(m, p)[d] == 0).then(|| cylinder(u.space(old(p)), 1).expect("k = 1")))
        .collect();
    let spaces: Vec<FinSpace> = (0..np)
        .map(|p| match &cyls[p] {
            Some(c) => c.space.clone(),
            None => u.space(old(p)).clone(),
        })
        .collect();
    let id_i = SpaceMap::identity(&IntervalModel::new(1)?.space);
    let mut arrows = vec![vec![None; np]; m];
    for (e, row) in arrows.iter_mut().enumerate() {
        for p in 0..np {
            let t = coords_of(m, p);
            if t[e] == 0 {
                continue;
            }
            row[p] = Some(if e == d {
                let c = cyls[sharp(p, m, d)].as_ref().unwrap();
                if t[d] < 0 {
                    c.d_minus.clone()
                } else {
                    c.d_plus.clone()
                }
            } else {
                let oe = if e < d { e } else { e - 1 };
                let a = u.arr(oe, old(p));
                if t[d] == 0 {
                    product_map(a, &id_i)
                } else {
                    a.clone()
                }
            });
        }
    }
    Ok(Cube::raw(m, spaces, arrows))
}

/// Cylindrical concatenation with the three legs of each central homotopy pushout.
#[derive(Debug, Clone)]
pub struct HpoConcat {
    pub cube: Cube,
    /// Present where the concatenation coordinate is 0.
    pub hpo: Vec<Option<HomotopyPushout>>,
}

pub fn cyl_concat(u: &Cube, v: &Cube, i: usize) -> Result<Cube, CubeError> {
    Ok(cyl_concat_with_legs(u, v, i)?.cube)
}

pub fn cyl_concat_with_legs(u: &Cube, v: &Cube, i: usize) -> Result<HpoConcat, CubeError> {
    let n = u.degree();
    if i < 1 || i > n {
        return Err(CubeError::IndexOutOfRange { what: "cylindrical concat", index: i, degree: n });
    }
    u.check_consecutive(v, i)?;
    let d = i - 1;
    let np = pos_count(n);
    let with = |t: &[i8], c: i8| {
        let mut s = t.to_vec();
        s[d] = c;
        pos_of(&s)
    };
    let mut hpo: Vec<Option<HomotopyPushout>> = vec![None; np];
    for (p, slot) in hpo.iter_mut().enumerate() {
        let t = coords_of(n, p);
        if t[d] == 0 {
            *slot = Some(standard_hpo(u.arr(d, with(&t, 1)), v.arr(d, with(&t, -1)))?);
        }
    }
    let spaces: Vec<FinSpace> = (0..np)
        .map(|p| match coords_of(n, p)[d] {
            -1 => u.space(p).clone(),
            1 => v.space(p).clone(),
            _ => hpo[p].as_ref().unwrap().apex.clone(),
        })
        .collect();
    let id_i = SpaceMap::identity(&IntervalModel::new(1)?.space);
    let mut arrows = vec![vec![None; np]; n];
    for (e, row) in arrows.iter_mut().enumerate() {
        for p in 0..np {
            let t = coords_of(n, p);
            if t[e] == 0 {
                continue;
            }
            let q = sharp(p, n, e);
            row[p] = Some(if e == d {
                let h = hpo[q].as_ref().unwrap();
                if t[d] < 0 {
                    u.arr(d, p).then(&h.left)
                } else {
                    v.arr(d, p).then(&h.right)
                }
            } else {
                match t[d] {
                    -1 => u.arr(e, p).clone(),
                    1 => v.arr(e, p).clone(),
                    _ => {
                        let (h, h2) = (hpo[p].as_ref().unwrap(), hpo[q].as_ref().unwrap());
                        let kx = u.arr(e, p).then(&h2.left);
                        let ka = product_map(u.arr(e, with(&t, 1)), &id_i).then(&h2.homotopy);
                        let ky = v.arr(e, p).then(&h2.right);
                        h.induced(&kx, &ka, &ky)?
                    }
                }
            });
        }
    }
    let cube = Cube::new(n, spaces, arrows)?;
    Ok(HpoConcat { cube, hpo })
}

/// Cylindrical concatenation of transversal maps.
pub fn cyl_concat_t(f: &TMap, g: &TMap, i: usize) -> Result<TMap, TMapError> {
    if f.face(i, Sign::Plus)? != g.face(i, Sign::Minus)? {
        return Err(TMapError::NotComposable);
    }
    let s = cyl_concat_with_legs(f.src(), g.src(), i)?;
    let t = cyl_concat_with_legs(f.dst(), g.dst(), i)?;
    let n = f.degree();
    let d = i - 1;
    let id_i = SpaceMap::identity(&IntervalModel::new(1)?.space);
    let mut comps = Vec::with_capacity(pos_count(n));
    for p in 0..pos_count(n) {
        let tc = coords_of(n, p);
        comps.push(match tc[d] {
            -1 => f.comp(p).clone(),
            1 => g.comp(p).clone(),
            _ => {
                let mut a = tc.clone();
                a[d] = 1;
                let (hs, ht) = (s.hpo[p].as_ref().unwrap(), t.hpo[p].as_ref().unwrap());
                let kx = f.comp(p).then(&ht.left);
                let ka = product_map(f.comp(pos_of(&a)), &id_i).then(&ht.homotopy);
                let ky = g.comp(p).then(&ht.right);
                hs.induced(&kx, &ka, &ky)?
            }
        });
    }
    TMap::new(s.cube, t.cube, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::{poset_iso, sum};

    #[test]
    fn hpo_of_identities_is_cylinder() {
        let a = FinSpace::new(&["x", "y"], &[("x", "y")]).unwrap();
        let id = SpaceMap::identity(&a);
        let h = standard_hpo(&id, &id).unwrap();
        assert!(poset_iso(&h.apex, &cylinder(&a, 1).unwrap().space).is_some());
        assert!(h.left.is_embedding() && h.right.is_embedding());
    }

    #[test]
    fn hpo_over_empty_is_sum() {
        let e = FinSpace::empty();
        let x = FinSpace::point("x");
        let y = FinSpace::discrete(&["y", "z"]).unwrap();
        let h = standard_hpo(&SpaceMap::from_fn(&e, &x, |_| 0), &SpaceMap::from_fn(&e, &y, |_| 0)).unwrap();
        assert!(poset_iso(&h.apex, &sum(&x, &y).0).is_some());
    }

    #[test]
    fn hpo_of_points_is_interval() {
        let p = FinSpace::point("*");
        let id = SpaceMap::identity(&p);
        let h = standard_hpo(&id, &id).unwrap();
        assert!(poset_iso(&h.apex, &IntervalModel::new(1).unwrap().space).is_some());
    }

    #[test]
    fn cylindrical_degeneracy_faces() {
        let x = FinSpace::new(&["a", "b"], &[("a", "b")]).unwrap();
        let u = Cube::from_space(&x);
        let e = cyl_degeneracy(&u, 1).unwrap();
        assert_eq!(e.face(1, Sign::Minus).unwrap(), u);
        assert_eq!(e.space(1).len(), 6);
        let ee = cyl_degeneracy(&e, 1).unwrap();
        let e2 = cyl_degeneracy(&e, 2).unwrap();
        assert_ne!(ee, e2);
        assert_eq!(ee.face(1, Sign::Plus).unwrap(), e);
        assert_eq!(e2.face(2, Sign::Plus).unwrap(), e);
    }

    #[test]
    fn degenerate_pasting_is_a_cylinder() {
        let x = FinSpace::new(&["a", "b"], &[("a", "b")]).unwrap();
        let e = Cube::from_space(&x).degeneracy(1).unwrap();
        let w = cyl_concat(&e, &e, 1).unwrap();
        let big = cyl_degeneracy(&Cube::from_space(&x), 1).unwrap();
        assert!(poset_iso(w.space(1), big.space(1)).is_some());
        assert_eq!(w.face(1, Sign::Minus).unwrap(), e.face(1, Sign::Minus).unwrap());
    }

    #[test]
    fn identity_tmaps_concatenate() {
        let x = FinSpace::point("*");
        let e = cyl_degeneracy(&Cube::from_space(&x), 1).unwrap();
        let f = cyl_concat_t(&TMap::identity(&e), &TMap::identity(&e), 1).unwrap();
        assert!(f.is_identity());
    }
}
