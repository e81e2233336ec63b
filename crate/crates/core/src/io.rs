//! JSON documents for spaces, maps, cubes, pre-collared cubes, transversal maps and faced spaces.
//!
//! Spaces list their elements and every non-reflexive relation pair. Maps assign ids to ids.
//! Cube grid positions are written `"t1,...,tn"` with coordinates in `{-1, 0, 1}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::collars::{Collar, CollarIssue, PreCollared};
use crate::cubemodel::cube::{coords_of, format_index, parse_index, pos_count, pos_of};
use crate::cubemodel::{Cube, CubeError, FacedSpace, TMap, TMapError};
use crate::finspace::{cylinder, FinSpace, SpaceError, SpaceMap};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown space reference `{0}`")]
    UnknownRef(String),
    #[error("bad grid position `{0}`")]
    BadPosition(String),
    #[error("duplicate entry for direction {dir} at `{at}`")]
    Duplicate { dir: usize, at: String },
    #[error("direction {dir} out of range")]
    BadDirection { dir: usize },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Map(#[from] TMapError),
    #[error("invalid pre-collared cube: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Collars(Vec<CollarIssue>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

/// A space given inline or by a name in the enclosing document's `spaces` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Name(String),
    Inline(SpaceDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub spaces: BTreeMap<String, SpaceDoc>,
    pub src: SpaceRef,
    pub dst: SpaceRef,
    pub assign: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub dir: usize,
    pub at: String,
    pub assign: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollarDoc {
    pub dir: usize,
    pub at: String,
    #[serde(default = "one")]
    pub k: usize,
    pub assign: BTreeMap<String, String>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeDoc {
    pub n: usize,
    pub spaces: BTreeMap<String, SpaceDoc>,
    #[serde(default)]
    pub maps: Vec<ArrowDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collars: Option<Vec<CollarDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TMapDoc {
    pub src: CubeDoc,
    pub dst: CubeDoc,
    pub components: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDoc {
    pub minus: Vec<String>,
    pub plus: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacedDoc {
    pub total: SpaceDoc,
    pub faces: Vec<FaceDoc>,
}

pub fn space_doc(x: &FinSpace) -> SpaceDoc {
    let mut leq = Vec::new();
    for a in 0..x.len() {
        for b in 0..x.len() {
            if a != b && x.leq(a, b) {
                leq.push([x.id(a).to_string(), x.id(b).to_string()]);
            }
        }
    }
    SpaceDoc { elements: x.ids().to_vec(), leq }
}

pub fn space_from_doc(d: &SpaceDoc) -> Result<FinSpace, SpaceError> {
    let pairs: Vec<(&str, &str)> = d.leq.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
    let elems: Vec<&str> = d.elements.iter().map(String::as_str).collect();
    FinSpace::new(&elems, &pairs)
}

fn resolve(r: &SpaceRef, table: &BTreeMap<String, SpaceDoc>) -> Result<FinSpace, IoError> {
    Ok(match r {
        SpaceRef::Inline(d) => space_from_doc(d)?,
        SpaceRef::Name(n) => space_from_doc(table.get(n).ok_or_else(|| IoError::UnknownRef(n.clone()))?)?,
    })
}

pub fn map_doc(f: &SpaceMap) -> MapDoc {
    MapDoc {
        spaces: BTreeMap::new(),
        src: SpaceRef::Inline(space_doc(f.src())),
        dst: SpaceRef::Inline(space_doc(f.dst())),
        assign: f.assign_ids(),
    }
}

pub fn map_from_doc(d: &MapDoc) -> Result<SpaceMap, IoError> {
    let src = resolve(&d.src, &d.spaces)?;
    let dst = resolve(&d.dst, &d.spaces)?;
    Ok(SpaceMap::from_ids(src, dst, &d.assign)?)
}

pub fn cube_doc(u: &Cube) -> CubeDoc {
    let n = u.degree();
    let mut spaces = BTreeMap::new();
    let mut maps = Vec::new();
    for p in 0..pos_count(n) {
        let t = coords_of(n, p);
        spaces.insert(format_index(&t), space_doc(u.space(p)));
        for (d, &c) in t.iter().enumerate() {
            if c != 0 {
                maps.push(ArrowDoc { dir: d + 1, at: format_index(&t), assign: u.arr(d, p).assign_ids() });
            }
        }
    }
    CubeDoc { n, spaces, maps, collars: None }
}

fn grid_pos(at: &str, n: usize) -> Result<usize, IoError> {
    parse_index(at, n).map(|t| pos_of(&t)).ok_or_else(|| IoError::BadPosition(at.to_string()))
}

pub fn cube_from_doc(d: &CubeDoc) -> Result<Cube, IoError> {
    let n = d.n;
    let np = pos_count(n);
    let mut spaces: Vec<Option<FinSpace>> = vec![None; np];
    for (at, s) in &d.spaces {
        let p = grid_pos(at, n)?;
        spaces[p] = Some(space_from_doc(s)?);
    }
    let spaces: Vec<FinSpace> = spaces
        .into_iter()
        .enumerate()
        .map(|(p, s)| s.ok_or_else(|| CubeError::MissingPosition(format_index(&coords_of(n, p)))))
        .collect::<Result<_, _>>()?;
    let mut arrows = vec![vec![None; np]; n];
    for a in &d.maps {
        if a.dir < 1 || a.dir > n {
            return Err(IoError::BadDirection { dir: a.dir });
        }
        let p = grid_pos(&a.at, n)?;
        let t = coords_of(n, p);
        if t[a.dir - 1] == 0 {
            return Err(CubeError::ExtraArrow { dir: a.dir, at: a.at.clone() }.into());
        }
        let q = crate::cubemodel::cube::sharp(p, n, a.dir - 1);
        let m = SpaceMap::from_ids(spaces[p].clone(), spaces[q].clone(), &a.assign)?;
        if arrows[a.dir - 1][p].replace(m).is_some() {
            return Err(IoError::Duplicate { dir: a.dir, at: a.at.clone() });
        }
    }
    Ok(Cube::new(n, spaces, arrows)?)
}

pub fn precollared_doc(u: &PreCollared) -> CubeDoc {
    let mut doc = cube_doc(u.cube());
    let n = u.degree();
    let mut collars = Vec::new();
    for d in 0..n {
        for p in 0..pos_count(n) {
            if let Some(c) = u.collar(d + 1, p) {
                collars.push(CollarDoc { dir: d + 1, at: format_index(&coords_of(n, p)), k: c.k, assign: c.map.assign_ids() });
            }
        }
    }
    doc.collars = Some(collars);
    doc
}

/// A cube document without `collars` is read with trivial collars of degree 1.
pub fn precollared_from_doc(d: &CubeDoc) -> Result<PreCollared, IoError> {
    precollared_from_doc_with(d, 1)
}

/// As [`precollared_from_doc`], with trivial collars of degree `k` where an entry is missing.
pub fn precollared_from_doc_with(d: &CubeDoc, k: usize) -> Result<PreCollared, IoError> {
    let cube = cube_from_doc(d)?;
    let n = d.n;
    let np = pos_count(n);
    let mut collars: Vec<Vec<Option<Collar>>> = vec![vec![None; np]; n];
    for c in d.collars.iter().flatten() {
        if c.dir < 1 || c.dir > n {
            return Err(IoError::BadDirection { dir: c.dir });
        }
        let p = grid_pos(&c.at, n)?;
        if coords_of(n, p)[c.dir - 1] == 0 {
            return Err(CubeError::ExtraArrow { dir: c.dir, at: c.at.clone() }.into());
        }
        let cyl = cylinder(cube.space(p), c.k)?;
        let q = crate::cubemodel::cube::sharp(p, n, c.dir - 1);
        let map = SpaceMap::from_ids(cyl.space, cube.space(q).clone(), &c.assign)?;
        if collars[c.dir - 1][p].replace(Collar { k: c.k, map }).is_some() {
            return Err(IoError::Duplicate { dir: c.dir, at: c.at.clone() });
        }
    }
    for (d, row) in collars.iter_mut().enumerate() {
        for (p, slot) in row.iter_mut().enumerate() {
            if slot.is_none() && coords_of(n, p)[d] != 0 {
                *slot = Some(Collar::trivial(cube.arr(d, p), k));
            }
        }
    }
    PreCollared::new(cube, collars).map_err(IoError::Collars)
}

pub fn tmap_doc(f: &TMap) -> TMapDoc {
    let n = f.degree();
    let components = (0..pos_count(n)).map(|p| (format_index(&coords_of(n, p)), f.comp(p).assign_ids())).collect();
    TMapDoc { src: cube_doc(f.src()), dst: cube_doc(f.dst()), components }
}

pub fn tmap_from_doc(d: &TMapDoc) -> Result<TMap, IoError> {
    let src = cube_from_doc(&d.src)?;
    let dst = cube_from_doc(&d.dst)?;
    let n = src.degree();
    let mut comps = Vec::with_capacity(pos_count(n));
    for p in 0..pos_count(n) {
        let at = format_index(&coords_of(n, p));
        let a = d.components.get(&at).ok_or(CubeError::MissingPosition(at))?;
        comps.push(SpaceMap::from_ids(src.space(p).clone(), dst.space(p).clone(), a)?);
    }
    Ok(TMap::new(src, dst, comps)?)
}

pub fn faced_doc(f: &FacedSpace) -> FacedDoc {
    FacedDoc {
        total: space_doc(&f.total),
        faces: f.faces.iter().map(|(m, p)| FaceDoc { minus: m.clone(), plus: p.clone() }).collect(),
    }
}

pub fn faced_from_doc(d: &FacedDoc) -> Result<FacedSpace, IoError> {
    Ok(FacedSpace {
        total: space_from_doc(&d.total)?,
        faces: d.faces.iter().map(|f| (f.minus.clone(), f.plus.clone())).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collars::collared_degeneracy;
    use crate::cubemodel::Sign;

    fn sample() -> Cube {
        let x = FinSpace::new(&["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap();
        let u = Cube::from_space(&x).degeneracy(1).unwrap();
        u.concat(&u, 1).unwrap().degeneracy(2).unwrap()
    }

    #[test]
    fn cube_round_trip() {
        let u = sample();
        let doc = cube_doc(&u);
        let text = serde_json::to_string(&doc).unwrap();
        let back: CubeDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(cube_from_doc(&back).unwrap(), u);
    }

    #[test]
    fn unknown_fields_rejected() {
        let bad = r#"{"elements":["a"],"leq":[],"extra":1}"#;
        assert!(serde_json::from_str::<SpaceDoc>(bad).is_err());
        let bad = r#"{"n":0,"spaces":{"":{"elements":["a"]}},"color":"red"}"#;
        assert!(serde_json::from_str::<CubeDoc>(bad).is_err());
    }

    #[test]
    fn named_space_refs() {
        let doc: MapDoc = serde_json::from_str(
            r#"{"spaces":{"A":{"elements":["x"]},"B":{"elements":["y","z"],"leq":[["y","z"]]}},
                "src":"A","dst":"B","assign":{"x":"z"}}"#,
        )
        .unwrap();
        let f = map_from_doc(&doc).unwrap();
        assert_eq!(f.apply_id("x"), Some("z"));
        assert!(matches!(
            map_from_doc(&MapDoc { src: SpaceRef::Name("Q".into()), ..doc }),
            Err(IoError::UnknownRef(_))
        ));
    }

    #[test]
    fn collared_and_tmap_round_trip() {
        let x = FinSpace::point("*");
        let e = collared_degeneracy(&PreCollared::from_space(&x), 1).unwrap();
        let doc = precollared_doc(&e);
        assert_eq!(precollared_from_doc(&doc).unwrap(), e);
        let f = TMap::identity(&sample());
        assert_eq!(tmap_from_doc(&tmap_doc(&f)).unwrap(), f);
        let plain = cube_doc(&sample().face(2, Sign::Minus).unwrap());
        assert!(precollared_from_doc(&plain).is_ok());
    }
}
