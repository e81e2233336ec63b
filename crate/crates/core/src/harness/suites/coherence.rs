//! Pentagon, hexagon, unit squares and triangle for both structures.

use serde_json::json;

use crate::cubemodel::{Cube, Sign, TMap};
use crate::cylindrical::Structure;
use crate::harness::laws::{same_tmap, tmap_difference, tmap_value};
use crate::harness::{fails, holds, Failure, Gen, GenConfig, LawReport};

fn id(u: &Cube) -> TMap {
    TMap::identity(u)
}

/// `(κ(x+y,z,u)) ∘ κ(x,y,z+u)` against `(κ(x,y,z)+1) ∘ κ(x,y+z,u) ∘ (1+κ(y,z,u))`.
pub fn pentagon(s: Structure, c: &[Cube], i: usize) -> Result<(TMap, TMap), Failure> {
    let [x, y, z, u] = [&c[0], &c[1], &c[2], &c[3]];
    let cat = |a: &Cube, b: &Cube| s.concat(a, b, i);
    let lhs = s.kappa(&cat(x, y)?, z, u, i)?.after(&s.kappa(x, y, &cat(z, u)?, i)?)?;
    let first = s.concat_t(&id(x), &s.kappa(y, z, u, i)?, i)?;
    let middle = s.kappa(x, &cat(y, z)?, u, i)?;
    let last = s.concat_t(&s.kappa(x, y, z, i)?, &id(u), i)?;
    let rhs = last.after(&middle)?.after(&first)?;
    Ok((lhs, rhs))
}

/// The two paths from `(x+1(y+1z)) +2 (x'+1(y'+1z'))` to `((x+2x')+1(y+2y'))+1(z+2z')`.
pub fn hexagon(s: Structure, top: &[Cube; 3], bottom: &[Cube; 3]) -> Result<(TMap, TMap), Failure> {
    let [x, y, z] = top;
    let [x2, y2, z2] = bottom;
    let c1 = |a: &Cube, b: &Cube| s.concat(a, b, 1);
    let c2 = |a: &Cube, b: &Cube| s.concat(a, b, 2);
    let right = {
        let k = s.concat_t(&s.kappa(x, y, z, 1)?, &s.kappa(x2, y2, z2, 1)?, 2)?;
        let mid = s.chi(&c1(x, y)?, z, &c1(x2, y2)?, z2)?;
        let end = s.concat_t(&s.chi(x, y, x2, y2)?, &id(&c2(z, z2)?), 1)?;
        end.after(&mid)?.after(&k)?
    };
    let left = {
        let first = s.chi(x, &c1(y, z)?, x2, &c1(y2, z2)?)?;
        let mid = s.concat_t(&id(&c2(x, x2)?), &s.chi(y, z, y2, z2)?, 1)?;
        let end = s.kappa(&c2(x, x2)?, &c2(y, y2)?, &c2(z, z2)?, 1)?;
        end.after(&mid)?.after(&first)?
    };
    Ok((left, right))
}

/// The left and right unit squares for 2-consecutive `x, y`.
pub fn unit_squares(s: Structure, x: &Cube, y: &Cube) -> Result<[(TMap, TMap); 2], Failure> {
    let xy = s.concat(x, y, 2)?;
    let left = {
        let (ex, ey) = (s.unit(&x.face(1, Sign::Minus)?, 1)?, s.unit(&y.face(1, Sign::Minus)?, 1)?);
        let chi = s.chi(&ex, x, &ey, y)?;
        let iota = s.iota(&x.face(1, Sign::Minus)?, &y.face(1, Sign::Minus)?)?;
        let lhs = s.lambda(&xy, 1)?.after(&s.concat_t(&iota, &id(&xy), 1)?)?.after(&chi)?;
        let rhs = s.concat_t(&s.lambda(x, 1)?, &s.lambda(y, 1)?, 2)?;
        (lhs, rhs)
    };
    let right = {
        let (ex, ey) = (s.unit(&x.face(1, Sign::Plus)?, 1)?, s.unit(&y.face(1, Sign::Plus)?, 1)?);
        let chi = s.chi(x, &ex, y, &ey)?;
        let iota = s.iota(&x.face(1, Sign::Plus)?, &y.face(1, Sign::Plus)?)?;
        let lhs = s.rho(&xy, 1)?.after(&s.concat_t(&id(&xy), &iota, 1)?)?.after(&chi)?;
        let rhs = s.concat_t(&s.rho(x, 1)?, &s.rho(y, 1)?, 2)?;
        (lhs, rhs)
    };
    Ok([left, right])
}

/// `(ρx + 1) ∘ κ(x, e∂⁺x, y)` against `1 + λy`.
pub fn triangle(s: Structure, x: &Cube, y: &Cube) -> Result<(TMap, TMap), Failure> {
    let e = s.unit(&x.face(1, Sign::Plus)?, 1)?;
    let lhs = s.concat_t(&s.rho(x, 1)?, &id(y), 1)?.after(&s.kappa(x, &e, y, 1)?)?;
    let rhs = s.concat_t(&id(x), &s.lambda(y, 1)?, 1)?;
    Ok((lhs, rhs))
}

struct Instances {
    chains4: Vec<(Vec<Cube>, usize)>,
    hexagons: Vec<([Cube; 3], [Cube; 3])>,
    columns: Vec<(Cube, Cube)>,
    pairs: Vec<(Cube, Cube)>,
}

/// `(degree of pentagon and triangle instances, degree of hexagon and unit-square instances)`.
fn instances(cfg: &GenConfig, salt: &str, deg: (usize, usize)) -> Instances {
    let mut g = Gen::new(cfg, &format!("{salt}/pentagon"));
    let chains4 = (0..cfg.instance_count)
        .map(|_| {
            let n = g.degree_upto(deg.0);
            let i = 1 + g.below(n);
            (g.chain(n, i, 4), i)
        })
        .collect();
    let mut g = Gen::new(cfg, &format!("{salt}/hexagon"));
    let hexagons = (0..cfg.instance_count).map(|_| g.hexagon_block(deg.1)).collect();
    let mut g = Gen::new(cfg, &format!("{salt}/unit-squares"));
    let columns = (0..cfg.instance_count)
        .map(|_| {
            let c = g.chain(deg.1, 2, 2);
            (c[0].clone(), c[1].clone())
        })
        .collect();
    let mut g = Gen::new(cfg, &format!("{salt}/triangle"));
    let pairs = (0..cfg.instance_count)
        .map(|_| {
            let n = g.degree_upto(deg.0);
            let c = g.chain(n, 1, 2);
            (c[0].clone(), c[1].clone())
        })
        .collect();
    Instances { chains4, hexagons, columns, pairs }
}

fn coherence_laws(s: Structure, inst: &Instances, with_triangle: bool) -> Vec<LawReport> {
    let mut out = vec![
        holds("pentagon", &inst.chains4, |(c, i)| {
            let (l, r) = pentagon(s, c, *i)?;
            same_tmap("pentagon", &l, &r)
        }),
        holds("hexagon", &inst.hexagons, |(t, b)| {
            let (l, r) = hexagon(s, t, b)?;
            same_tmap("hexagon", &l, &r)
        }),
        holds("unit-squares", &inst.columns, |(x, y)| {
            let [(l1, r1), (l2, r2)] = unit_squares(s, x, y)?;
            same_tmap("left unit square", &l1, &r1)?;
            same_tmap("right unit square", &l2, &r2)
        }),
    ];
    if with_triangle {
        out.push(holds("triangle", &inst.pairs, |(x, y)| {
            let (l, r) = triangle(s, x, y)?;
            same_tmap("triangle", &l, &r)
        }));
    }
    out
}

fn small(cfg: &GenConfig) -> GenConfig {
    GenConfig { max_points: cfg.max_points.min(2), max_degree: 1, ..cfg.clone() }
}

pub(super) fn cosp(cfg: &GenConfig) -> Vec<LawReport> {
    let inst = instances(cfg, "coherence-cosp", (cfg.max_degree.clamp(1, 2), 2));
    coherence_laws(Structure::Cosp, &inst, true)
}

pub(super) fn cylindrical(cfg: &GenConfig) -> Vec<LawReport> {
    let small = small(cfg);
    let inst = instances(&small, "coherence-cylindrical", (1, 2));
    coherence_laws(Structure::Cylindrical, &inst, false)
}

/// The two cylinders only differ over a nonempty shared face, so instances are drawn with one.
pub(super) fn triangle_cylindrical(cfg: &GenConfig) -> Vec<LawReport> {
    let small = small(cfg);
    let mut g = Gen::new(&small, "triangle-cylindrical/triangle");
    let mut pairs = Vec::with_capacity(cfg.instance_count);
    while pairs.len() < cfg.instance_count {
        let c = g.chain(1, 1, 2);
        if c[0].face(1, Sign::Plus).is_ok_and(|f| !f.space(0).is_empty()) {
            pairs.push((c[0].clone(), c[1].clone()));
        }
    }
    vec![fails("triangle", &pairs, |(x, y)| {
        let (l, r) = triangle(Structure::Cylindrical, x, y)?;
        Ok((l != r).then(|| {
            Failure::with(
                format!("the two sides collapse different cylinders: {}", tmap_difference(&l, &r)),
                json!({ "lhs": tmap_value(&l), "rhs": tmap_value(&r) }),
            )
        }))
    })]
}
