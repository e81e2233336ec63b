//! Structural laws of the chosen-pushout cubes: cubical relations, the reduced presentation,
//! concatenation consistency, unitarity and faced objects.

use rand::Rng;

use super::{degree, instances};
use crate::cubemodel::faced::square_count;
use crate::cubemodel::{from_faced_space, non_pullback_squares, Cube, FacedError, FacedSpace, Sign, TMap};
use crate::cylindrical::{cyl_concat, cyl_concat_t, Structure};
use crate::finspace::{pair_index, product, IntervalModel};
use crate::harness::laws::{ensure, same_cube, same_tmap};
use crate::harness::{holds, Failure, GenConfig, LawReport};

fn signs() -> [Sign; 2] {
    Sign::both()
}

pub(super) fn relations(cfg: &GenConfig) -> Vec<LawReport> {
    let cubes = |salt: &str, lo: usize| {
        instances(cfg, salt, |g| {
            let n = degree(g, lo);
            g.cube(n)
        })
    };
    let face_face = cubes("face-face", 2);
    let degen = cubes("degeneracy-degeneracy", 0);
    let face_degen = cubes("face-degeneracy", 0);
    let moore = cubes("moore", 2);
    let mixed = cubes("mixed", 1);
    vec![
        holds("face-face", &face_face, |u| {
            let n = u.degree();
            for i in 1..n {
                for j in 1..=i {
                    for a in signs() {
                        for b in signs() {
                            let lhs = u.face(j, b)?.face(i, a)?;
                            let rhs = u.face(i + 1, a)?.face(j, b)?;
                            same_cube(&format!("d{a}{i} d{b}{j}"), &lhs, &rhs)?;
                        }
                    }
                }
            }
            Ok(())
        }),
        holds("degeneracy-degeneracy", &degen, |u| {
            let n = u.degree();
            for i in 1..=n + 1 {
                for j in 1..=i {
                    let lhs = u.degeneracy(i)?.degeneracy(j)?;
                    let rhs = u.degeneracy(j)?.degeneracy(i + 1)?;
                    same_cube(&format!("e{j} e{i}"), &lhs, &rhs)?;
                }
            }
            Ok(())
        }),
        holds("face-degeneracy", &face_degen, |u| {
            let n = u.degree();
            for i in 1..=n + 1 {
                for j in 1..=n + 1 {
                    for a in signs() {
                        let lhs = u.degeneracy(j)?.face(i, a)?;
                        let rhs = match j.cmp(&i) {
                            std::cmp::Ordering::Less => u.face(i - 1, a)?.degeneracy(j)?,
                            std::cmp::Ordering::Equal => u.clone(),
                            std::cmp::Ordering::Greater => u.face(i, a)?.degeneracy(j - 1)?,
                        };
                        same_cube(&format!("d{a}{i} e{j}"), &lhs, &rhs)?;
                    }
                }
            }
            Ok(())
        }),
        holds("moore", &moore, |u| {
            let n = u.degree();
            for i in 1..n {
                same_cube(&format!("s{i} s{i}"), &u.transpose(i)?.transpose(i)?, u)?;
                for j in i + 1..n {
                    let (lhs, rhs) = if j == i + 1 {
                        (u.transpose(i)?.transpose(j)?.transpose(i)?, u.transpose(j)?.transpose(i)?.transpose(j)?)
                    } else {
                        (u.transpose(j)?.transpose(i)?, u.transpose(i)?.transpose(j)?)
                    };
                    same_cube(&format!("s{i} s{j}"), &lhs, &rhs)?;
                }
            }
            Ok(())
        }),
        holds("mixed", &mixed, |u| {
            let n = u.degree();
            for i in 1..n {
                for j in 1..=n {
                    for a in signs() {
                        let lhs = u.transpose(i)?.face(j, a)?;
                        let rhs = if j < i {
                            u.face(j, a)?.transpose(i - 1)?
                        } else if j == i {
                            u.face(i + 1, a)?
                        } else if j == i + 1 {
                            u.face(i, a)?
                        } else {
                            u.face(j, a)?.transpose(i)?
                        };
                        same_cube(&format!("d{a}{j} s{i}"), &lhs, &rhs)?;
                    }
                }
            }
            for i in 1..=n {
                for j in 1..=n + 1 {
                    let lhs = u.degeneracy(j)?.transpose(i)?;
                    let rhs = if j < i {
                        u.transpose(i - 1)?.degeneracy(j)?
                    } else if j == i {
                        u.degeneracy(i + 1)?
                    } else if j == i + 1 {
                        u.degeneracy(i)?
                    } else {
                        u.transpose(i)?.degeneracy(j)?
                    };
                    same_cube(&format!("s{i} e{j}"), &lhs, &rhs)?;
                }
            }
            Ok(())
        }),
    ]
}

/// `∂^α_1 s_1 s_2 ... s_{i-1}`.
fn derived_face(u: &Cube, i: usize, a: Sign) -> Result<Cube, Failure> {
    let mut v = u.clone();
    for k in (1..i).rev() {
        v = v.transpose(k)?;
    }
    Ok(v.face(1, a)?)
}

/// `s_{i-1} ... s_1 e_1`.
fn derived_degeneracy(u: &Cube, i: usize) -> Result<Cube, Failure> {
    let mut v = u.degeneracy(1)?;
    for k in 1..i {
        v = v.transpose(k)?;
    }
    Ok(v)
}

/// The permutation of directions a word of transpositions performs, applied left to right.
fn permutation(n: usize, word: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for &i in word {
        p.swap(i - 1, i);
    }
    p
}

/// A bubble-sort word that realises `target` from the identity.
fn canonical_word(target: &[usize]) -> Vec<usize> {
    let mut cur: Vec<usize> = (0..target.len()).collect();
    let mut word = Vec::new();
    for slot in 0..target.len() {
        let mut k = cur.iter().position(|&x| x == target[slot]).unwrap();
        while k > slot {
            cur.swap(k - 1, k);
            word.push(k);
            k -= 1;
        }
    }
    word
}

fn apply_word(u: &Cube, word: &[usize]) -> Result<Cube, Failure> {
    let mut v = u.clone();
    for &i in word {
        v = v.transpose(i)?;
    }
    Ok(v)
}

pub(super) fn reduced(cfg: &GenConfig) -> Vec<LawReport> {
    let cubes = |salt: &str, lo: usize| {
        instances(cfg, salt, |g| {
            let n = degree(g, lo);
            g.cube(n)
        })
    };
    let faces = cubes("derived-faces", 1);
    let degens = cubes("derived-degeneracies", 0);
    let words = instances(cfg, "permutation-words", |g| {
        let n = degree(g, 2);
        let u = g.cube(n);
        let len = g.rng().gen_range(0..=6);
        let word: Vec<usize> = (0..len).map(|_| g.rng().gen_range(1..n)).collect();
        (u, word)
    });
    let rel = cubes("reduced-relations", 2);
    let second = cubes("second-order-symmetry", 0);
    vec![
        holds("derived-faces", &faces, |u| {
            for i in 1..=u.degree() {
                for a in signs() {
                    same_cube(&format!("d{a}{i}"), &derived_face(u, i, a)?, &u.face(i, a)?)?;
                }
            }
            Ok(())
        }),
        holds("derived-degeneracies", &degens, |u| {
            for i in 1..=u.degree() + 1 {
                same_cube(&format!("e{i}"), &derived_degeneracy(u, i)?, &u.degeneracy(i)?)?;
            }
            Ok(())
        }),
        holds("permutation-words", &words, |(u, word)| {
            let canon = canonical_word(&permutation(u.degree(), word));
            same_cube(&format!("word {word:?} against {canon:?}"), &apply_word(u, word)?, &apply_word(u, &canon)?)?;
            let back: Vec<usize> = word.iter().rev().copied().collect();
            same_cube("word then its reverse", &apply_word(&apply_word(u, word)?, &back)?, u)
        }),
        holds("reduced-relations", &rel, |u| {
            let n = u.degree();
            for a in signs() {
                for b in signs() {
                    let lhs = u.face(1, b)?.face(1, a)?;
                    let rhs = u.transpose(1)?.face(1, a)?.face(1, b)?;
                    same_cube(&format!("d{a}1 d{b}1"), &lhs, &rhs)?;
                }
                for i in 1..n - 1 {
                    let lhs = u.face(1, a)?.transpose(i)?;
                    let rhs = u.transpose(i + 1)?.face(1, a)?;
                    same_cube(&format!("s{i} d{a}1"), &lhs, &rhs)?;
                }
                same_cube(&format!("d{a}1 e1"), &u.degeneracy(1)?.face(1, a)?, u)?;
            }
            for i in 1..n {
                let lhs = u.transpose(i)?.degeneracy(1)?;
                let rhs = u.degeneracy(1)?.transpose(i + 1)?;
                same_cube(&format!("e1 s{i}"), &lhs, &rhs)?;
            }
            Ok(())
        }),
        holds("second-order-symmetry", &second, |u| {
            let ee = u.degeneracy(1)?.degeneracy(1)?;
            same_cube("e1 e1", &ee.transpose(1)?, &ee)
        }),
    ]
}

/// The concatenation laws for faces and transpositions, parametrised by the concatenation.
fn faces_law(name: &str, pairs: &[(Cube, Cube, usize)], cat: fn(&Cube, &Cube, usize) -> Result<Cube, Failure>) -> LawReport {
    holds(name, pairs, |(x, y, i)| {
        let i = *i;
        let w = cat(x, y, i)?;
        same_cube("minus face", &w.face(i, Sign::Minus)?, &x.face(i, Sign::Minus)?)?;
        same_cube("plus face", &w.face(i, Sign::Plus)?, &y.face(i, Sign::Plus)?)?;
        for j in (1..=x.degree()).filter(|&j| j != i) {
            let k = if j < i { i - 1 } else { i };
            for a in signs() {
                let rhs = cat(&x.face(j, a)?, &y.face(j, a)?, k)?;
                same_cube(&format!("d{a}{j} of +{i}"), &w.face(j, a)?, &rhs)?;
            }
        }
        Ok(())
    })
}

fn transpositions_law(
    name: &str,
    pairs: &[(Cube, Cube, usize)],
    cat: fn(&Cube, &Cube, usize) -> Result<Cube, Failure>,
) -> LawReport {
    holds(name, pairs, |(x, y, i)| {
        let i = *i;
        let w = cat(x, y, i)?;
        for j in 1..x.degree() {
            let k = if j + 1 == i {
                i - 1
            } else if j == i {
                i + 1
            } else {
                i
            };
            let rhs = cat(&x.transpose(j)?, &y.transpose(j)?, k)?;
            same_cube(&format!("s{j} of +{i}"), &w.transpose(j)?, &rhs)?;
        }
        Ok(())
    })
}

fn cosp_cat(x: &Cube, y: &Cube, i: usize) -> Result<Cube, Failure> {
    Ok(x.concat(y, i)?)
}

fn cyl_cat(x: &Cube, y: &Cube, i: usize) -> Result<Cube, Failure> {
    Ok(cyl_concat(x, y, i)?)
}

/// Transversal maps `f, g` and `h, k` with `h ∘ f`, `k ∘ g` defined and `f, g` consecutive:
/// associators along a chain of eight cubes.
struct MapQuad {
    f: TMap,
    g: TMap,
    h: TMap,
    k: TMap,
    i: usize,
}

fn map_quad(s: Structure, c: &[Cube], i: usize) -> Result<MapQuad, Failure> {
    let cat = |a: &Cube, b: &Cube| s.concat(a, b, i);
    let f = s.kappa(&c[0], &c[1], &cat(&c[2], &c[3])?, i)?;
    let h = s.kappa(&cat(&c[0], &c[1])?, &c[2], &c[3], i)?;
    let g = s.kappa(&c[4], &c[5], &cat(&c[6], &c[7])?, i)?;
    let k = s.kappa(&cat(&c[4], &c[5])?, &c[6], &c[7], i)?;
    Ok(MapQuad { f, g, h, k, i })
}

fn composition_law(name: &str, s: Structure, quads: &[MapQuad], with_operators: bool) -> LawReport {
    holds(name, quads, |q| {
        let hf = q.h.after(&q.f)?;
        if with_operators {
            let n = hf.degree();
            for j in 1..=n {
                for a in signs() {
                    same_tmap(&format!("d{a}{j}"), &hf.face(j, a)?, &q.h.face(j, a)?.after(&q.f.face(j, a)?)?)?;
                }
            }
            for j in 1..=n + 1 {
                same_tmap(&format!("e{j}"), &hf.degeneracy(j)?, &q.h.degeneracy(j)?.after(&q.f.degeneracy(j)?)?)?;
            }
            for j in 1..n {
                same_tmap(&format!("s{j}"), &hf.transpose(j)?, &q.h.transpose(j)?.after(&q.f.transpose(j)?)?)?;
            }
        }
        let lhs = s.concat_t(&q.h, &q.k, q.i)?.after(&s.concat_t(&q.f, &q.g, q.i)?)?;
        let rhs = s.concat_t(&hf, &q.k.after(&q.g)?, q.i)?;
        same_tmap("(h+k)(f+g)", &lhs, &rhs)
    })
}

pub(super) fn concat_consistency(cfg: &GenConfig) -> Vec<LawReport> {
    let pairs = |salt: &str, lo: usize, hi: usize| {
        instances(cfg, salt, |g| {
            let n = g.rng().gen_range(lo..=hi.min(cfg.max_degree).max(lo));
            let i = g.rng().gen_range(1..=n);
            let c = g.chain(n, i, 2);
            (c[0].clone(), c[1].clone(), i)
        })
    };
    let faces = pairs("concat-faces", 1, 3);
    let trans = pairs("concat-transpositions", 2, 3);
    let degens = pairs("concat-degeneracies", 1, 2);
    let first = instances(cfg, "first-degeneracy-concat", |g| {
        let n = degree(g, 1).min(2);
        let c = g.chain(n, 1, 2);
        (c[0].clone(), c[1].clone())
    });
    let quads = |salt: &str, s: Structure, hi: usize| {
        let mut g = crate::harness::Gen::new(cfg, salt);
        (0..cfg.instance_count)
            .map(|_| {
                let n = g.rng().gen_range(1..=hi);
                let i = g.rng().gen_range(1..=n);
                let c = g.chain(n, i, 8);
                map_quad(s, &c, i)
            })
            .collect::<Result<Vec<_>, _>>()
    };
    // the cylindrical variants run on small instances: every gluing adds a cylinder
    let small = GenConfig { max_points: 2, max_degree: 2, ..cfg.clone() };
    let cyl_pairs = |salt: &str, lo: usize| {
        instances(&small, salt, |g| {
            let n = g.rng().gen_range(lo..=2);
            let i = g.rng().gen_range(1..=n);
            let c = g.chain(n, i, 2);
            (c[0].clone(), c[1].clone(), i)
        })
    };
    let mut out = vec![
        faces_law("concat-faces", &faces, cosp_cat),
        transpositions_law("concat-transpositions", &trans, cosp_cat),
        holds("concat-degeneracies", &degens, |(x, y, i)| {
            let (i, n) = (*i, x.degree());
            let w = x.concat(y, i)?;
            for j in 1..=n + 1 {
                let k = if j <= i { i + 1 } else { i };
                let rhs = x.degeneracy(j)?.concat(&y.degeneracy(j)?, k)?;
                same_cube(&format!("e{j} of +{i}"), &w.degeneracy(j)?, &rhs)?;
            }
            Ok(())
        }),
        holds("first-degeneracy-concat", &first, |(x, y)| {
            same_cube("e1 of +1", &x.concat(y, 1)?.degeneracy(1)?, &x.degeneracy(1)?.concat(&y.degeneracy(1)?, 2)?)
        }),
    ];
    out.push(match quads("transversal-composition", Structure::Cosp, 2) {
        Ok(q) => composition_law("transversal-composition", Structure::Cosp, &q, true),
        Err(f) => holds("transversal-composition", &[()], |_| Err(f.clone())),
    });
    out.push(faces_law("cyl-concat-faces", &cyl_pairs("cyl-concat-faces", 1), cyl_cat));
    out.push(transpositions_law("cyl-concat-transpositions", &cyl_pairs("cyl-concat-transpositions", 2), cyl_cat));
    let small_quads = {
        let mut g = crate::harness::Gen::new(&small, "cyl-transversal-composition");
        (0..cfg.instance_count.min(20))
            .map(|_| {
                let c = g.chain(1, 1, 8);
                let cosp = map_quad(Structure::Cosp, &c, 1)?;
                Ok::<_, Failure>(cosp)
            })
            .collect::<Result<Vec<_>, _>>()
    };
    out.push(match small_quads {
        Ok(q) => holds("cyl-transversal-composition", &q, |q| {
            let lhs = cyl_concat_t(&q.h, &q.k, 1)?.after(&cyl_concat_t(&q.f, &q.g, 1)?)?;
            let rhs = cyl_concat_t(&q.h.after(&q.f)?, &q.k.after(&q.g)?, 1)?;
            same_tmap("(h+k)(f+g)", &lhs, &rhs)
        }),
        Err(f) => holds("cyl-transversal-composition", &[()], |_| Err(f.clone())),
    });
    out
}

pub(super) fn unitarity(cfg: &GenConfig) -> Vec<LawReport> {
    let cubes = |salt: &str| {
        instances(cfg, salt, |g| {
            let n = degree(g, 1);
            g.cube(n)
        })
    };
    let right = cubes("right-unit");
    let left = cubes("left-unit");
    vec![
        holds("right-unit", &right, |u| {
            for i in 1..=u.degree() {
                let e = u.face(i, Sign::Plus)?.degeneracy(i)?;
                same_cube(&format!("u +{i} e{i}(d+{i} u)"), &u.concat(&e, i)?, u)?;
            }
            Ok(())
        }),
        holds("left-unit", &left, |u| {
            for i in 1..=u.degree() {
                let e = u.face(i, Sign::Minus)?.degeneracy(i)?;
                same_cube(&format!("e{i}(d-{i} u) +{i} u"), &e.concat(u, i)?, u)?;
            }
            Ok(())
        }),
    ]
}

/// `I_1 × I_1` with its four sides as faces.
pub fn interval_square() -> FacedSpace {
    let i = IntervalModel::new(1).unwrap();
    let (sq, _, _) = product(&i.space, &i.space);
    let side = |d: usize, j: usize| -> Vec<String> {
        let mut out = Vec::new();
        for a in 0..i.space.len() {
            for b in 0..i.space.len() {
                if (if d == 0 { a } else { b }) == i.point(j) {
                    out.push(sq.id(pair_index(&sq, &i.space, a, &i.space, b)).to_string());
                }
            }
        }
        out
    };
    FacedSpace { total: sq.clone(), faces: vec![(side(0, 0), side(0, 2)), (side(1, 0), side(1, 2))] }
}

pub(super) fn faced_objects(cfg: &GenConfig) -> Vec<LawReport> {
    let mut spaces = vec![interval_square()];
    let mut g = crate::harness::Gen::new(cfg, "square-pullbacks");
    while spaces.len() < cfg.instance_count.max(1) {
        let x = g.space();
        let n = g.rng().gen_range(1..=cfg.max_degree.max(1));
        let faces = (0..n)
            .map(|_| {
                let (mut m, mut p) = (Vec::new(), Vec::new());
                for id in x.ids() {
                    match g.rng().gen_range(0..3) {
                        0 => m.push(id.clone()),
                        1 => p.push(id.clone()),
                        _ => {}
                    }
                }
                (m, p)
            })
            .collect();
        spaces.push(FacedSpace { total: x, faces });
    }
    let overlaps: Vec<FacedSpace> = spaces
        .iter()
        .filter(|f| !f.total.is_empty())
        .map(|f| {
            let mut f = f.clone();
            let shared = f.total.id(0).to_string();
            let last = f.faces.len() - 1;
            let (m, p) = &mut f.faces[last];
            for s in [m, p] {
                if !s.contains(&shared) {
                    s.push(shared.clone());
                }
            }
            f
        })
        .collect();
    vec![
        holds("square-pullbacks", &spaces, |f| {
            let u = from_faced_space(f)?;
            u.validate()?;
            let bad = non_pullback_squares(&u);
            ensure(bad.is_empty(), || format!("{} of {} squares are not pullbacks: {}", bad.len(), square_count(u.degree()), bad[0]))
        }),
        holds("overlap-rejected", &overlaps, |f| match from_faced_space(f) {
            Err(FacedError::Overlap { .. }) => Ok(()),
            Err(e) => Err(Failure::new(format!("wrong error: {e}"))),
            Ok(_) => Err(Failure::new("overlapping faces were accepted")),
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_words_realise_permutations() {
        let w = [1, 2, 1, 3, 2];
        let p = permutation(4, &w);
        assert_eq!(permutation(4, &canonical_word(&p)), p);
    }

    #[test]
    fn interval_square_faces() {
        let f = interval_square();
        assert_eq!(f.total.len(), 9);
        assert!(f.faces.iter().all(|(m, p)| m.len() == 3 && p.len() == 3));
    }
}
