//! The cylindrical structure: the failed degeneracy relation, lax units, the comparison maps
//! and the face formulas of the comparisons of both structures.

use rand::Rng;
use serde_json::json;

use super::instances;
use crate::cubemodel::cube::first_difference;
use crate::cubemodel::{Cube, Sign, TMap};
use crate::cylindrical::{
    chi_via_paste, cyl_concat, cyl_degeneracy, is_weak_equivalence, paste_symmetry, projection, standard_hpo,
    weak_equivalence_chain, Orientation, Structure,
};
use crate::finspace::{all_maps, poset_iso, FinSpace, SpaceMap};
use crate::harness::laws::{cube_value, ensure, is_identity, same_tmap, tmap_value};
use crate::harness::{fails, holds, Failure, Gen, GenConfig, LawReport};

/// Instances for the cylindrical structure stay small: every gluing adds a cylinder.
fn small(cfg: &GenConfig) -> GenConfig {
    GenConfig { max_points: cfg.max_points.min(3), max_degree: cfg.max_degree.min(2), ..cfg.clone() }
}

fn weak(what: &str, f: &TMap) -> Result<(), Failure> {
    if is_weak_equivalence(f) {
        Ok(())
    } else {
        Err(Failure::with(format!("{what} is not a weak equivalence"), json!({ "map": tmap_value(f) })))
    }
}

fn special_iso(what: &str, f: &TMap) -> Result<(), Failure> {
    if f.is_special() && f.is_invertible() {
        Ok(())
    } else {
        Err(Failure::with(format!("{what} is not an invertible special map"), json!({ "map": tmap_value(f) })))
    }
}

/// The base label of a pasting element: its id with the piece tag (`LH.` and the like) removed.
fn base_label(id: &str) -> &str {
    match id.split_once('.') {
        Some((tag, rest)) if !tag.is_empty() && tag.chars().all(|c| c.is_ascii_uppercase()) => rest,
        _ => id,
    }
}

/// Invertible, with vertex components that only move elements between pieces.
fn relabeling(what: &str, f: &TMap) -> Result<(), Failure> {
    let vertices_kept = f.vertex_components().into_iter().all(|(_, c)| {
        (0..c.src().len()).all(|e| base_label(c.src().id(e)) == base_label(c.dst().id(c.apply(e))))
    });
    if f.is_invertible() && vertices_kept {
        Ok(())
    } else {
        Err(Failure::with(format!("{what} is not a relabeling isomorphism"), json!({ "map": tmap_value(f) })))
    }
}

fn cubes_of_degree(cfg: &GenConfig, salt: &str, lo: usize, hi: usize) -> Vec<Cube> {
    instances(cfg, salt, |g| {
        let n = g.rng().gen_range(lo..=hi);
        g.cube(n)
    })
}

pub(super) fn quasi_degeneracy(cfg: &GenConfig) -> Vec<LawReport> {
    let cfg = &small(cfg);
    let points = instances(cfg, "degeneracy-relation", |g| Cube::from_space(&g.space()));
    let repair = cubes_of_degree(cfg, "symmetry-repair", 0, 1);
    vec![
        fails("degeneracy-relation", &points, |x| {
            let e = cyl_degeneracy(x, 1)?;
            let (e11, e21) = (cyl_degeneracy(&e, 1)?, cyl_degeneracy(&e, 2)?);
            Ok(first_difference(&e11, &e21).map(|d| {
                Failure::with(
                    format!("E1E1 and E2E1 differ: {d}"),
                    json!({ "lhs": cube_value(&e11), "rhs": cube_value(&e21) }),
                )
            }))
        }),
        holds("symmetry-repair", &repair, |u| {
            let s = Structure::Cylindrical.sigma(u)?;
            special_iso("sigma", &s)?;
            let e = cyl_degeneracy(u, 1)?;
            for a in Sign::both() {
                for i in [1, 2] {
                    let f = s.face(i, a)?;
                    is_identity(&format!("d{a}{i} sigma"), &f)?;
                    ensure(f.src() == &e, || format!("d{a}{i} sigma is not the identity of E1 u"))?;
                }
                for j in 1..=u.degree() {
                    let rhs = Structure::Cylindrical.sigma(&u.face(j, a)?)?;
                    same_tmap(&format!("d{a}{} sigma", j + 2), &s.face(j + 2, a)?, &rhs)?;
                }
            }
            Ok(())
        }),
    ]
}

pub(super) fn lax_units(cfg: &GenConfig) -> Vec<LawReport> {
    let cfg = &small(cfg);
    let cyl = Structure::Cylindrical;
    let lam = cubes_of_degree(cfg, "lambda-weak", 1, 2);
    let rho = cubes_of_degree(cfg, "rho-weak", 1, 2);
    let proj = cubes_of_degree(cfg, "projection-weak", 0, 2);
    let mut degenerate = vec![Cube::from_space(&FinSpace::point("*")).degeneracy(1).unwrap()];
    degenerate.extend(instances(cfg, "lambda-invertible", |g| Cube::from_space(&g.space()).degeneracy(1).unwrap()));
    degenerate.truncate(cfg.instance_count.max(1));
    let pasted = instances(cfg, "degenerate-paste", |g| g.space());
    let chains = cubes_of_degree(cfg, "weak-chain", 1, 2);
    vec![
        holds("lambda-weak", &lam, |u| {
            for i in 1..=u.degree() {
                weak(&format!("lambda{i}"), &cyl.lambda(u, i)?)?;
            }
            Ok(())
        }),
        holds("rho-weak", &rho, |u| {
            for i in 1..=u.degree() {
                weak(&format!("rho{i}"), &cyl.rho(u, i)?)?;
            }
            Ok(())
        }),
        holds("projection-weak", &proj, |u| {
            for i in 1..=u.degree() + 1 {
                weak(&format!("p{i}"), &projection(u, i)?)?;
            }
            Ok(())
        }),
        fails("lambda-invertible", &degenerate, |u| {
            let l = cyl.lambda(u, 1)?;
            weak("lambda1", &l)?;
            Ok((!l.is_invertible()).then(|| {
                let at = l.comps().iter().position(|c| !c.is_homeomorphism()).unwrap();
                Failure::with(
                    format!("lambda1 has a non-invertible component at position {at}"),
                    json!({ "map": tmap_value(&l) }),
                )
            }))
        }),
        holds("degenerate-paste", &pasted, |x| {
            let e = Cube::from_space(x).degeneracy(1)?;
            let lhs = cyl_concat(&e, &e, 1)?;
            let rhs = cyl_degeneracy(&Cube::from_space(x), 1)?;
            for p in 0..lhs.positions() {
                ensure(poset_iso(lhs.space(p), rhs.space(p)).is_some(), || format!("no isomorphism at position {p}"))?;
            }
            Ok(())
        }),
        holds("weak-chain", &chains, |u| {
            for i in 1..=u.degree() {
                let (l, r) = (cyl.lambda(u, i)?, cyl.rho(u, i)?);
                let links = [(l.clone(), Orientation::Forward), (r.clone(), Orientation::Backward)];
                weak_equivalence_chain(l.src(), r.src(), &links)?;
            }
            Ok(())
        }),
    ]
}

/// Every cocone out of `X <- A -> Y` with a chosen homotopy factors uniquely.
fn hpo_universal(f: &SpaceMap, g: &SpaceMap, w: &FinSpace) -> Result<(), Failure> {
    let h = standard_hpo(f, g)?;
    let from_apex = all_maps(&h.apex, w);
    let cyl_maps = all_maps(&h.cyl.space, w);
    for kx in all_maps(f.dst(), w) {
        for ky in all_maps(g.dst(), w) {
            let (fx, gy) = (f.then(&kx), g.then(&ky));
            for kc in cyl_maps.iter().filter(|kc| h.cyl.d_minus.then(kc) == fx && h.cyl.d_plus.then(kc) == gy) {
                let count = from_apex
                    .iter()
                    .filter(|m| h.left.then(m) == kx && h.right.then(m) == ky && h.homotopy.then(m) == *kc)
                    .count();
                ensure(count == 1, || format!("cocone factors {count} times"))?;
                let m = h.induced(&kx, kc, &ky)?;
                ensure(h.homotopy.then(&m) == *kc, || "induced map misses the homotopy".into())?;
            }
        }
    }
    Ok(())
}

pub(super) fn comparisons(cfg: &GenConfig) -> Vec<LawReport> {
    let cfg = &small(cfg);
    let cyl = Structure::Cylindrical;
    let triples = instances(cfg, "associator", |g| {
        let i = 1;
        let c = g.chain(1, i, 3);
        (c, i)
    });
    let blocks = |salt: &str| {
        let tiny = GenConfig { max_points: 2, ..cfg.clone() };
        let mut g = Gen::new(&tiny, salt);
        (0..cfg.instance_count.min(25)).map(|_| g.block(2)).collect::<Vec<_>>()
    };
    let chi_blocks = blocks("interchange");
    let paste_blocks = blocks("paste-symmetry");
    let nullary = instances(cfg, "nullary-interchange", |g| {
        let c = g.chain(1, 1, 2);
        (c[0].clone(), c[1].clone())
    });
    let spans = instances(cfg, "homotopy-pushout-universal", |g| {
        let a = g.space_upto(2);
        let x = g.space_upto(2);
        let y = g.space_upto(2);
        (g.map(&a, &x), g.map(&a, &y))
    });
    let targets = [FinSpace::point("w"), FinSpace::new(&["w0", "w1"], &[("w0", "w1")]).unwrap()];
    vec![
        holds("associator", &triples, |(c, i)| special_iso("kappa", &cyl.kappa(&c[0], &c[1], &c[2], *i)?)),
        holds("interchange", &chi_blocks, |[x, y, z, u]| {
            let k = cyl.chi(x, y, z, u)?;
            special_iso("chi", &k)?;
            same_tmap("chi through the symmetric pasting", &chi_via_paste(x, y, z, u)?, &k)
        }),
        holds("paste-symmetry", &paste_blocks, |[x, y, z, u]| relabeling("pasting symmetry", &paste_symmetry(x, y, z, u)?)),
        holds("nullary-interchange", &nullary, |(x, y)| special_iso("iota", &cyl.iota(x, y)?)),
        holds("homotopy-pushout-universal", &spans, |(f, g)| {
            for w in &targets {
                hpo_universal(f, g, w)?;
            }
            Ok(())
        }),
    ]
}

/// Whether every face of `f` in directions `dirs` is an identity.
fn faces_identity(f: &TMap, dirs: &[usize]) -> Result<bool, Failure> {
    for &i in dirs {
        for a in Sign::both() {
            if !f.face(i, a)?.is_identity() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn boundary_laws(s: Structure, cfg: &GenConfig) -> Vec<LawReport> {
    let name = |law: &str| format!("{}/{law}", s.name());
    let units = cubes_of_degree(cfg, &name("unit-boundaries"), 1, 2);
    let sym = cubes_of_degree(cfg, &name("symmetry-boundaries"), 0, 1);
    let triples = instances(cfg, &name("associator-boundaries"), |g| {
        let n = g.rng().gen_range(1..=2);
        g.chain(n, 1, 3)
    });
    let tiny = GenConfig { max_points: 2, ..cfg.clone() };
    let mut g = Gen::new(&tiny, &name("interchange-boundaries"));
    let blocks: Vec<[Cube; 4]> = (0..cfg.instance_count.min(25)).map(|_| g.block(2)).collect();
    let pairs = instances(cfg, &name("nullary-interchange-boundaries"), |g| {
        let n = g.rng().gen_range(1..=2);
        g.chain(n, 1, 2)
    });
    let mut chi_identity = 0;
    let mut chi_report = holds(&name("interchange-boundaries"), &blocks, |[x, y, z, u]| {
        let k = s.chi(x, y, z, u)?;
        for a in Sign::both() {
            for i in [1, 2] {
                special_iso(&format!("d{a}{i} chi"), &k.face(i, a)?)?;
            }
        }
        Ok(())
    });
    if chi_report.status == crate::harness::Status::Pass {
        for [x, y, z, u] in &blocks {
            if s.chi(x, y, z, u).ok().and_then(|k| faces_identity(&k, &[1, 2]).ok()) == Some(true) {
                chi_identity += 1;
            }
        }
        chi_report.detail = format!("outer faces are identities on {chi_identity} of {} instances", blocks.len());
    }
    vec![
        holds(&name("unit-boundaries"), &units, |u| {
            for a in Sign::both() {
                is_identity(&format!("d{a}1 lambda"), &s.lambda(u, 1)?.face(1, a)?)?;
                is_identity(&format!("d{a}1 rho"), &s.rho(u, 1)?.face(1, a)?)?;
                for j in 2..=u.degree() {
                    let f = u.face(j, a)?;
                    same_tmap(&format!("d{a}{j} lambda"), &s.lambda(u, 1)?.face(j, a)?, &s.lambda(&f, 1)?)?;
                    same_tmap(&format!("d{a}{j} rho"), &s.rho(u, 1)?.face(j, a)?, &s.rho(&f, 1)?)?;
                }
            }
            Ok(())
        }),
        holds(&name("symmetry-boundaries"), &sym, |u| {
            let k = s.sigma(u)?;
            let e = s.unit(u, 1)?;
            for a in Sign::both() {
                for i in [1, 2] {
                    let f = k.face(i, a)?;
                    is_identity(&format!("d{a}{i} sigma"), &f)?;
                    ensure(f.src() == &e, || format!("d{a}{i} sigma is not the identity of the unit"))?;
                }
                for j in 1..=u.degree() {
                    same_tmap(&format!("d{a}{} sigma", j + 2), &k.face(j + 2, a)?, &s.sigma(&u.face(j, a)?)?)?;
                }
            }
            Ok(())
        }),
        holds(&name("associator-boundaries"), &triples, |c| {
            let k = s.kappa(&c[0], &c[1], &c[2], 1)?;
            let m = k.face(1, Sign::Minus)?;
            is_identity("d-1 kappa", &m)?;
            ensure(m.src() == &c[0].face(1, Sign::Minus)?, || "d-1 kappa is not the identity of d-1 x".into())?;
            let p = k.face(1, Sign::Plus)?;
            is_identity("d+1 kappa", &p)?;
            ensure(p.src() == &c[2].face(1, Sign::Plus)?, || "d+1 kappa is not the identity of d+1 z".into())?;
            for j in 2..=c[0].degree() {
                for a in Sign::both() {
                    let f: Vec<Cube> = c.iter().map(|u| u.face(j, a)).collect::<Result<_, _>>()?;
                    same_tmap(&format!("d{a}{j} kappa"), &k.face(j, a)?, &s.kappa(&f[0], &f[1], &f[2], 1)?)?;
                }
            }
            Ok(())
        }),
        chi_report,
        holds(&name("nullary-interchange-boundaries"), &pairs, |c| {
            let (x, y) = (&c[0], &c[1]);
            let k = s.iota(x, y)?;
            let xy = s.concat(x, y, 1)?;
            for a in Sign::both() {
                let f = k.face(1, a)?;
                is_identity(&format!("d{a}1 iota"), &f)?;
                ensure(f.src() == &xy, || format!("d{a}1 iota is not the identity of x + y"))?;
            }
            let m = k.face(2, Sign::Minus)?;
            is_identity("d-2 iota", &m)?;
            ensure(m.src() == &s.unit(&x.face(1, Sign::Minus)?, 1)?, || "d-2 iota has the wrong source".into())?;
            let p = k.face(2, Sign::Plus)?;
            is_identity("d+2 iota", &p)?;
            ensure(p.src() == &s.unit(&y.face(1, Sign::Plus)?, 1)?, || "d+2 iota has the wrong source".into())?;
            for j in 2..=x.degree() {
                for a in Sign::both() {
                    let rhs = s.iota(&x.face(j, a)?, &y.face(j, a)?)?;
                    same_tmap(&format!("d{a}{} iota", j + 1), &k.face(j + 1, a)?, &rhs)?;
                }
            }
            Ok(())
        }),
    ]
}

pub(super) fn boundaries(cfg: &GenConfig) -> Vec<LawReport> {
    let units = cubes_of_degree(cfg, "cosp-units-identities", 1, cfg.max_degree.clamp(1, 3));
    let mut out = boundary_laws(Structure::Cosp, cfg);
    out.extend(boundary_laws(Structure::Cylindrical, &small(cfg)));
    out.push(holds("cosp-units-identities", &units, |u| {
        let cosp = Structure::Cosp;
        for i in 1..=u.degree() {
            is_identity(&format!("lambda{i}"), &cosp.lambda(u, i)?)?;
            is_identity(&format!("rho{i}"), &cosp.rho(u, i)?)?;
        }
        is_identity("sigma", &cosp.sigma(u)?)?;
        let r = u.reverse(1)?;
        is_identity("iota", &cosp.iota(u, &r)?)
    }));
    out
}
