//! Pre-collared and collared concatenation, and collared degeneracies.

use rand::Rng;
use serde_json::json;

use super::instances;
use crate::collars::{
    check_collared, collared_degeneracy as thirds_degeneracy, concat_collared, concat_precollared,
    cross_images_disjoint, empty_interface_pair, PreCollared,
};
use crate::cubemodel::cube::first_difference;
use crate::cubemodel::Sign;
use crate::finspace::poset_iso;
use crate::harness::laws::{collared_value, ensure, same_collared, same_cube};
use crate::harness::{holds, Failure, GenConfig, LawReport};

type Pair = (PreCollared, PreCollared, usize);

/// Pairs in direction 1 (degree 1 or 2) and direction 2 (degree 2), `count` of each.
fn pairs(cfg: &GenConfig, salt: &str) -> Vec<Pair> {
    let mut out = instances(cfg, &format!("{salt}/1"), |g| {
        let n = g.rng().gen_range(1..=2);
        let (u, v) = g.collared_pair(n, 1);
        (u, v, 1)
    });
    out.extend(instances(cfg, &format!("{salt}/2"), |g| {
        let (u, v) = g.collared_pair(2, 2);
        (u, v, 2)
    }));
    out
}

fn issues(u: &PreCollared) -> Result<(), Failure> {
    let bad = u.validate();
    match bad.first() {
        None => Ok(()),
        Some(e) => Err(Failure::with(format!("{} collar issues, first: {e}", bad.len()), json!({ "cube": collared_value(u) }))),
    }
}

pub(super) fn precollared_concat(cfg: &GenConfig) -> Vec<LawReport> {
    let glue = pairs(cfg, "revalidates");
    let forget = pairs(cfg, "forgetful");
    let units = instances(cfg, "unitarity", |g| {
        let n = g.rng().gen_range(1..=2);
        g.collared(n)
    });
    let fd = instances(cfg, "face-degeneracy", |g| {
        let n = g.rng().gen_range(0..=2);
        g.collared(n)
    });
    vec![
        holds("revalidates", &glue, |(u, v, i)| issues(&concat_precollared(u, v, *i)?)),
        holds("forgetful", &forget, |(u, v, i)| {
            let w = concat_precollared(u, v, *i)?;
            same_cube("underlying cube", w.cube(), &u.cube().concat(v.cube(), *i)?)
        }),
        holds("unitarity", &units, |u| {
            for i in 1..=u.degree() {
                let right = u.face(i, Sign::Plus)?.degeneracy(i)?;
                same_collared(&format!("u +{i} e{i}"), &concat_precollared(u, &right, i)?, u)?;
                let left = u.face(i, Sign::Minus)?.degeneracy(i)?;
                same_collared(&format!("e{i} +{i} u"), &concat_precollared(&left, u, i)?, u)?;
            }
            Ok(())
        }),
        holds("face-degeneracy", &fd, |u| {
            let n = u.degree();
            for i in 1..=n + 1 {
                let e = u.degeneracy(i)?;
                issues(&e)?;
                for a in Sign::both() {
                    same_collared(&format!("d{a}{i} e{i}"), &e.face(i, a)?, u)?;
                }
            }
            for i in 1..=n {
                for a in Sign::both() {
                    issues(&u.face(i, a)?)?;
                }
            }
            for i in 1..n {
                issues(&u.transpose(i)?)?;
                same_collared(&format!("s{i} s{i}"), &u.transpose(i)?.transpose(i)?, u)?;
            }
            Ok(())
        }),
    ]
}

pub(super) fn collared_concat(cfg: &GenConfig) -> Vec<LawReport> {
    let glue = pairs(cfg, "witness");
    let disjoint = pairs(cfg, "disjointness");
    let empty = instances(cfg, "empty-interface", |g| {
        let p = g.space_upto(2);
        let q = g.space_upto(2);
        empty_interface_pair(&p, &q)
    });
    vec![
        holds("witness", &glue, |(u, v, i)| {
            let (w, wit) = concat_collared(u, v, *i)?;
            issues(&w)?;
            ensure(check_collared(&w).as_ref() == Ok(&wit), || "witness is not reproducible".into())
        }),
        holds("disjointness", &disjoint, |(u, v, i)| {
            let wu = check_collared(u).map_err(|d| Failure::new(format!("left operand: {d}")))?;
            let wv = check_collared(v).map_err(|d| Failure::new(format!("right operand: {d}")))?;
            Ok(cross_images_disjoint(u, v, *i, &wu, &wv)?)
        }),
        holds("empty-interface", &empty, |(u, v)| {
            let f = u.face(1, Sign::Plus)?;
            ensure(f.cube().spaces().iter().all(|s| s.is_empty()), || "interface is not empty".into())?;
            let (w, _) = concat_collared(u, v, 1)?;
            issues(&w)?;
            same_cube("underlying cube", w.cube(), &u.cube().concat(v.cube(), 1)?)
        }),
    ]
}

pub(super) fn collared_degeneracy(cfg: &GenConfig) -> Vec<LawReport> {
    let cubes = |salt: &str, hi: usize| {
        instances(cfg, salt, |g| {
            let n = g.rng().gen_range(0..=hi);
            g.collared(n)
        })
    };
    let thirds = cubes("thirds-collared", 1);
    let faces = cubes("faces", 1);
    let iterated = instances(cfg, "iterated-distinct-isomorphic", |g| PreCollared::from_space(&g.space_upto(2)));
    vec![
        holds("thirds-collared", &thirds, |u| {
            for i in 1..=u.degree() + 1 {
                let e = thirds_degeneracy(u, i)?;
                issues(&e)?;
                check_collared(&e).map_err(|d| Failure::with(d.to_string(), json!({ "cube": collared_value(&e) })))?;
            }
            Ok(())
        }),
        holds("faces", &faces, |u| {
            let n = u.degree();
            for i in 1..=n + 1 {
                let e = thirds_degeneracy(u, i)?;
                for a in Sign::both() {
                    same_collared(&format!("d{a}{i} E{i}"), &e.face(i, a)?, u)?;
                }
                for j in (1..=n + 1).filter(|&j| j != i) {
                    for a in Sign::both() {
                        let (k, l) = if j < i { (j, i - 1) } else { (j - 1, i) };
                        let rhs = thirds_degeneracy(&u.face(k, a)?, l)?;
                        same_collared(&format!("d{a}{j} E{i}"), &e.face(j, a)?, &rhs)?;
                    }
                }
            }
            Ok(())
        }),
        holds("iterated-distinct-isomorphic", &iterated, |x| {
            let e = thirds_degeneracy(x, 1)?;
            let (e11, e21) = (thirds_degeneracy(&e, 1)?, thirds_degeneracy(&e, 2)?);
            if e11.cube() == e21.cube() {
                return Err(Failure::new("iterated collared degeneracies coincide"));
            }
            let d = first_difference(e11.cube(), e21.cube()).map(|e| e.to_string()).unwrap_or_default();
            for p in 0..e11.cube().positions() {
                ensure(poset_iso(e11.cube().space(p), e21.cube().space(p)).is_some(), || {
                    format!("no isomorphism at position {p} ({d})")
                })?;
            }
            Ok(())
        }),
    ]
}
