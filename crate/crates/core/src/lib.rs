//! Cubical cospans of finite topological spaces.
//!
//! Spaces are finite preorders (`finspace`). Cubes, transversal maps and the
//! chosen-pushout comparisons live in `cubemodel`; pre-collars and collars in
//! `collars`; cylinders, homotopy pushouts and their lax comparisons in
//! `cylindrical`. `harness` turns the algebraic laws into seeded suites.

pub mod collars;
pub mod cubemodel;
pub mod cylindrical;
pub mod dot;
pub mod finspace;
pub mod harness;
pub mod io;
