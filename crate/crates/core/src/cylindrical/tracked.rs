//! Provenance for cylindrical degeneracies, homotopy pushouts and the symmetric pasting.

use crate::cubemodel::cube::{coords_of, pos_count, pos_of, sharp};
use crate::cubemodel::track::{normalize, push_atoms, AtomTable};
use crate::cubemodel::{Atom, Coord, CoordKind, Cube, CubeError, Tracked};
use crate::finspace::{cylinder, induced_from_legs, product, product_map, quotient, tagged_sum, FinSpace, SpaceMap};

use super::hpo::{cyl_concat_with_legs, cyl_degeneracy};

fn shift(a: &Atom, from: u8) -> Atom {
    let mut b = a.clone();
    for c in &mut b.coords {
        if c.dir >= from {
            c.dir += 1;
        }
    }
    b
}

fn coord(dir: usize, kind: CoordKind, at: usize) -> Coord {
    Coord { dir: dir as u8, kind, at: at as u16 }
}

/// Tracked `E_i`.
pub fn track_cyl_degeneracy(t: &Tracked, i: usize) -> Result<Tracked, CubeError> {
    let cube = cyl_degeneracy(t.cube(), i)?;
    let m = cube.degree();
    let mut atoms: AtomTable = Vec::with_capacity(cube.positions());
    for p in 0..cube.positions() {
        let mut tc = coords_of(m, p);
        let c = tc.remove(i - 1);
        let old = pos_of(&tc);
        let src = &t.atoms_at(old);
        let shifted: Vec<Vec<Atom>> = src.iter().map(|l| l.iter().map(|a| shift(a, i as u8)).collect()).collect();
        if c != 0 {
            atoms.push(shifted);
            continue;
        }
        let cyl = cylinder(t.cube().space(old), 1).expect("k = 1");
        let mut table = vec![Vec::new(); cyl.space.len()];
        for (x, list) in shifted.iter().enumerate() {
            for j in 0..=cyl.interval.end() {
                table[cyl.at(x, j)] = list.iter().map(|a| a.with_coord(coord(i, CoordKind::Cyl, j))).collect();
            }
        }
        table.iter_mut().for_each(normalize);
        atoms.push(table);
    }
    Ok(Tracked::from_parts(cube, atoms))
}

/// Atoms of a shared face element seen from both sides, with a glue coordinate.
fn glued(a: &[Atom], b: &[Atom], dir: usize, at: usize) -> Vec<Atom> {
    a.iter().chain(b).map(|x| x.with_coord(coord(dir, CoordKind::Glue, at))).collect()
}

/// Tracked `⊗_i`.
pub fn track_cyl_concat(u: &Tracked, v: &Tracked, i: usize) -> Result<Tracked, CubeError> {
    let hc = cyl_concat_with_legs(u.cube(), v.cube(), i)?;
    let n = hc.cube.degree();
    let mut atoms: AtomTable = Vec::with_capacity(hc.cube.positions());
    for p in 0..hc.cube.positions() {
        let mut tc = coords_of(n, p);
        atoms.push(match tc[i - 1] {
            -1 => u.atoms_at(p).to_vec(),
            1 => v.atoms_at(p).to_vec(),
            _ => {
                let h = hc.hpo[p].as_ref().unwrap();
                let mut apex = vec![Vec::new(); h.apex.len()];
                push_atoms(&mut apex, &h.left, u.atoms_at(p));
                push_atoms(&mut apex, &h.right, v.atoms_at(p));
                tc[i - 1] = 1;
                let ua = u.atoms_at(pos_of(&tc));
                tc[i - 1] = -1;
                let va = v.atoms_at(pos_of(&tc));
                let mut cyl = vec![Vec::new(); h.cyl.space.len()];
                for e in 0..h.cyl.base.len() {
                    for j in 0..=h.cyl.interval.end() {
                        cyl[h.cyl.at(e, j)] = glued(&ua[e], &va[e], i, j);
                    }
                }
                push_atoms(&mut apex, &h.homotopy, &cyl);
                apex.iter_mut().for_each(normalize);
                apex
            }
        });
    }
    Ok(Tracked::from_parts(hc.cube, atoms))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Band {
    Low,
    Mid,
    High,
}

impl Band {
    fn tag(self) -> char {
        match self {
            Band::Low => 'L',
            Band::Mid => 'M',
            Band::High => 'H',
        }
    }
}

/// One piece of the symmetric pasting at a position.
struct Piece {
    col: Band,
    row: Band,
    /// Index into `[x, y, z, u]` and position there.
    base: usize,
    base_pos: usize,
    /// Other (cube, position) pairs whose space is the same face (for provenance).
    aliases: Vec<(usize, usize)>,
    space: FinSpace,
}

fn bands(t: i8) -> Vec<Band> {
    match t {
        -1 => vec![Band::Low],
        1 => vec![Band::High],
        _ => vec![Band::Low, Band::Mid, Band::High],
    }
}

fn with2(t: &[i8], a: i8, b: i8) -> usize {
    let mut s = t.to_vec();
    s[0] = a;
    s[1] = b;
    pos_of(&s)
}

fn interval_space() -> FinSpace {
    crate::finspace::IntervalModel::new(1).unwrap().space
}

fn pieces_at(cubes: &[&Tracked; 4], t: &[i8]) -> Vec<Piece> {
    let i1 = interval_space();
    let mut out = Vec::new();
    for row in bands(t[1]) {
        for col in bands(t[0]) {
            // the cube owning this piece, by the coordinates of its 2x2 block
            let right = col == Band::High;
            let lower = row == Band::High;
            let base = (right as usize) + 2 * (lower as usize);
            let c1 = if col == Band::Mid { 1 } else { t[0] };
            let c2 = if row == Band::Mid { 1 } else { t[1] };
            let base_pos = with2(t, c1, c2);
            let mut aliases = Vec::new();
            if col == Band::Mid {
                aliases.push((base + 1, with2(t, -1, c2)));
            }
            if row == Band::Mid {
                aliases.push((base + 2, with2(t, c1, -1)));
            }
            if col == Band::Mid && row == Band::Mid {
                aliases.push((3, with2(t, -1, -1)));
            }
            let mut space = cubes[base].cube().space(base_pos).clone();
            if col == Band::Mid {
                space = product(&space, &i1).0;
            }
            if row == Band::Mid {
                space = product(&space, &i1).0;
            }
            out.push(Piece { col, row, base, base_pos, aliases, space });
        }
    }
    out
}

/// Splits an element of a piece space into its base element and interval positions.
struct PieceCoords {
    base: usize,
    c1: Option<usize>,
    c2: Option<usize>,
}

fn decode(piece: &Piece, base_space: &FinSpace, e: usize) -> PieceCoords {
    // piece spaces are nested products ((base, I), I); unwind by ids
    let split = |s: &str| -> (String, usize) {
        let inner = &s[1..s.len() - 1];
        let cut = inner.rfind(',').unwrap();
        (inner[..cut].to_string(), inner[cut + 2..].parse().unwrap())
    };
    let mut id = piece.space.id(e).to_string();
    let (mut c1, mut c2) = (None, None);
    if piece.row == Band::Mid {
        let (rest, j) = split(&id);
        c2 = Some(j);
        id = rest;
    }
    if piece.col == Band::Mid {
        let (rest, j) = split(&id);
        c1 = Some(j);
        id = rest;
    }
    PieceCoords { base: base_space.index_of(&id).unwrap(), c1, c2 }
}

fn encode(piece: &Piece, base_space: &FinSpace, c: &PieceCoords) -> usize {
    let mut id = base_space.id(c.base).to_string();
    if let Some(j) = c.c1 {
        id = format!("({id},p{j})");
    }
    if let Some(j) = c.c2 {
        id = format!("({id},p{j})");
    }
    piece.space.index_of(&id).unwrap()
}

fn tag(p: &Piece) -> String {
    format!("{}{}", p.col.tag(), p.row.tag())
}

/// The symmetric quaternary pasting of a 2x2 block `x y / z u` (directions 1, 2).
pub fn track_sym_paste(x: &Tracked, y: &Tracked, z: &Tracked, u: &Tracked) -> Result<Tracked, CubeError> {
    let n = x.cube().degree();
    if n < 2 {
        return Err(CubeError::IndexOutOfRange { what: "symmetric pasting", index: 2, degree: n });
    }
    x.cube().check_consecutive(y.cube(), 1)?;
    z.cube().check_consecutive(u.cube(), 1)?;
    x.cube().check_consecutive(z.cube(), 2)?;
    y.cube().check_consecutive(u.cube(), 2)?;
    let cubes = [x, y, z, u];
    let np = pos_count(n);
    let i1 = interval_space();
    let mut all_pieces = Vec::with_capacity(np);
    let mut spaces = Vec::with_capacity(np);
    let mut legs: Vec<Vec<SpaceMap>> = Vec::with_capacity(np);
    let mut atoms: AtomTable = Vec::with_capacity(np);
    for p in 0..np {
        let t = coords_of(n, p);
        let pieces = pieces_at(&cubes, &t);
        let tags: Vec<String> = pieces.iter().map(tag).collect();
        let parts: Vec<(&str, &FinSpace)> = tags.iter().map(|s| s.as_str()).zip(pieces.iter().map(|q| &q.space)).collect();
        let (sum, inj) = tagged_sum(&parts);
        let find = |c: Band, r: Band| pieces.iter().position(|q| q.col == c && q.row == r);
        let mut pairs = Vec::new();
        for (k, q) in pieces.iter().enumerate() {
            let bs = cubes[q.base].cube().space(q.base_pos);
            for e in 0..q.space.len() {
                let pc = decode(q, bs, e);
                let here = inj[k].apply(e);
                let mut glue = |toward_col: bool, at_end: bool| {
                    let (c, r) = if toward_col {
                        (if at_end { Band::High } else { Band::Low }, q.row)
                    } else {
                        (q.col, if at_end { Band::High } else { Band::Low })
                    };
                    let k2 = find(c, r).expect("neighbouring piece");
                    let q2 = &pieces[k2];
                    let dir = if toward_col { 0 } else { 1 };
                    // the element lives on the far side's face when gluing at the end
                    let (cube, from) = if at_end {
                        let mut tt = coords_of(n, q.base_pos);
                        tt[dir] = -1;
                        (q2.base, pos_of(&tt))
                    } else {
                        (q.base, q.base_pos)
                    };
                    let arr = cubes[cube].cube().arr(dir, from);
                    debug_assert_eq!(sharp(from, n, dir), q2.base_pos);
                    let mut nc = PieceCoords { base: arr.apply(pc.base), c1: pc.c1, c2: pc.c2 };
                    if toward_col {
                        nc.c1 = None;
                    } else {
                        nc.c2 = None;
                    }
                    let e2 = encode(q2, cubes[q2.base].cube().space(q2.base_pos), &nc);
                    pairs.push((here, inj[k2].apply(e2)));
                };
                if pc.c1 == Some(0) {
                    glue(true, false);
                }
                if pc.c1 == Some(2) {
                    glue(true, true);
                }
                if pc.c2 == Some(0) {
                    glue(false, false);
                }
                if pc.c2 == Some(2) {
                    glue(false, true);
                }
            }
        }
        let (apex, q) = quotient(&sum, &pairs);
        let piece_legs: Vec<SpaceMap> = inj.iter().map(|l| l.then(&q)).collect();
        let mut table = vec![Vec::new(); apex.len()];
        for (k, pc) in pieces.iter().enumerate() {
            let bs = cubes[pc.base].cube().space(pc.base_pos);
            let mut local = vec![Vec::new(); pc.space.len()];
            for (e, slot) in local.iter_mut().enumerate() {
                let d = decode(pc, bs, e);
                let mut list: Vec<Atom> = cubes[pc.base].atoms_at(pc.base_pos)[d.base].clone();
                for &(c, at) in &pc.aliases {
                    list.extend(cubes[c].atoms_at(at)[d.base].iter().cloned());
                }
                *slot = list
                    .into_iter()
                    .map(|a| {
                        let mut a = a;
                        if let Some(j) = d.c1 {
                            a = a.with_coord(coord(1, CoordKind::Glue, j));
                        }
                        if let Some(j) = d.c2 {
                            a = a.with_coord(coord(2, CoordKind::Glue, j));
                        }
                        a
                    })
                    .collect();
            }
            push_atoms(&mut table, &piece_legs[k], &local);
        }
        table.iter_mut().for_each(normalize);
        atoms.push(table);
        spaces.push(apex);
        legs.push(piece_legs);
        all_pieces.push(pieces);
    }
    let mut arrows = vec![vec![None; np]; n];
    for (dir, row) in arrows.iter_mut().enumerate() {
        for p in 0..np {
            let t = coords_of(n, p);
            if t[dir] == 0 {
                continue;
            }
            let q = sharp(p, n, dir);
            let mut maps = Vec::new();
            for (k, pc) in all_pieces[p].iter().enumerate() {
                let k2 = all_pieces[q].iter().position(|o| o.col == pc.col && o.row == pc.row).unwrap();
                let target = &all_pieces[q][k2];
                let base_arr = if pc.base_pos == target.base_pos {
                    SpaceMap::identity(cubes[pc.base].cube().space(pc.base_pos))
                } else {
                    cubes[pc.base].cube().arr(dir, pc.base_pos).clone()
                };
                let mut m = base_arr;
                if pc.col == Band::Mid {
                    m = product_map(&m, &SpaceMap::identity(&i1));
                }
                if pc.row == Band::Mid {
                    m = product_map(&m, &SpaceMap::identity(&i1));
                }
                maps.push((k, m.then(&legs[q][k2])));
            }
            let refs: Vec<(&SpaceMap, &SpaceMap)> = maps.iter().map(|(k, m)| (&legs[p][*k], m)).collect();
            row[p] = Some(induced_from_legs(&spaces[p], &refs)?);
        }
    }
    let cube = Cube::new(n, spaces, arrows)?;
    Ok(Tracked::from_parts(cube, atoms))
}

/// The untracked symmetric pasting.
pub fn sym_paste(x: &Cube, y: &Cube, z: &Cube, u: &Cube) -> Result<Cube, CubeError> {
    let t = |c: &Cube, k| Tracked::leaf(c, k);
    Ok(track_sym_paste(&t(x, 0), &t(y, 1), &t(z, 2), &t(u, 3))?.into_cube())
}

