//! Comparison helpers that turn a mismatch into a witness in the cube file format.

use serde_json::{json, Value};

use super::Failure;
use crate::collars::PreCollared;
use crate::cubemodel::cube::first_difference;
use crate::cubemodel::{coords_of, format_index, Cube, TMap};
use crate::io::{cube_doc, precollared_doc, tmap_doc};

pub(crate) fn cube_value(u: &Cube) -> Value {
    serde_json::to_value(cube_doc(u)).expect("cube docs serialize")
}

pub(crate) fn collared_value(u: &PreCollared) -> Value {
    serde_json::to_value(precollared_doc(u)).expect("cube docs serialize")
}

pub(crate) fn tmap_value(f: &TMap) -> Value {
    serde_json::to_value(tmap_doc(f)).expect("map docs serialize")
}

pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure::new(what()))
    }
}

pub(crate) fn same_cube(what: &str, lhs: &Cube, rhs: &Cube) -> Result<(), Failure> {
    if lhs == rhs {
        return Ok(());
    }
    let at = first_difference(lhs, rhs).map(|e| e.to_string()).unwrap_or_default();
    Err(Failure::with(format!("{what}: {at}"), json!({ "lhs": cube_value(lhs), "rhs": cube_value(rhs) })))
}

pub(crate) fn same_collared(what: &str, lhs: &PreCollared, rhs: &PreCollared) -> Result<(), Failure> {
    if lhs == rhs {
        return Ok(());
    }
    let at = first_difference(lhs.cube(), rhs.cube()).map_or_else(|| "collars differ".to_string(), |e| e.to_string());
    Err(Failure::with(format!("{what}: {at}"), json!({ "lhs": collared_value(lhs), "rhs": collared_value(rhs) })))
}

/// Position of the first differing component, if the maps have the same ends.
pub(crate) fn tmap_difference(lhs: &TMap, rhs: &TMap) -> String {
    if lhs.src() != rhs.src() {
        return "sources differ".into();
    }
    if lhs.dst() != rhs.dst() {
        return "targets differ".into();
    }
    let n = lhs.degree();
    (0..lhs.comps().len())
        .find(|&p| lhs.comp(p) != rhs.comp(p))
        .map_or_else(String::new, |p| format!("components differ at ({})", format_index(&coords_of(n, p))))
}

pub(crate) fn same_tmap(what: &str, lhs: &TMap, rhs: &TMap) -> Result<(), Failure> {
    if lhs == rhs {
        return Ok(());
    }
    Err(Failure::with(
        format!("{what}: {}", tmap_difference(lhs, rhs)),
        json!({ "lhs": tmap_value(lhs), "rhs": tmap_value(rhs) }),
    ))
}

pub(crate) fn is_identity(what: &str, f: &TMap) -> Result<(), Failure> {
    if f.is_identity() {
        Ok(())
    } else {
        Err(Failure::with(format!("{what} is not an identity"), json!({ "map": tmap_value(f) })))
    }
}
