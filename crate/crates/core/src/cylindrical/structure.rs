//! The two structures on cubes, behind one interface for the coherence suites.

use crate::cubemodel::{cosp, CompareError, Cube, TMap};

use super::compare as cyl;
use super::hpo::{cyl_concat, cyl_concat_t, cyl_degeneracy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    /// Chosen pushouts and ordinary degeneracies.
    Cosp,
    /// Homotopy pushouts and cylindrical degeneracies.
    Cylindrical,
}

impl Structure {
    pub fn name(self) -> &'static str {
        match self {
            Structure::Cosp => "cosp",
            Structure::Cylindrical => "cylindrical",
        }
    }

    /// The unit cube in direction `i`: `e_i` or `E_i`.
    pub fn unit(self, u: &Cube, i: usize) -> Result<Cube, CompareError> {
        Ok(match self {
            Structure::Cosp => u.degeneracy(i)?,
            Structure::Cylindrical => cyl_degeneracy(u, i)?,
        })
    }

    pub fn concat(self, u: &Cube, v: &Cube, i: usize) -> Result<Cube, CompareError> {
        Ok(match self {
            Structure::Cosp => u.concat(v, i)?,
            Structure::Cylindrical => cyl_concat(u, v, i)?,
        })
    }

    pub fn concat_t(self, f: &TMap, g: &TMap, i: usize) -> Result<TMap, CompareError> {
        Ok(match self {
            Structure::Cosp => f.concat(g, i)?,
            Structure::Cylindrical => cyl_concat_t(f, g, i)?,
        })
    }

    pub fn kappa(self, u: &Cube, v: &Cube, w: &Cube, i: usize) -> Result<TMap, CompareError> {
        match self {
            Structure::Cosp => cosp::kappa(u, v, w, i),
            Structure::Cylindrical => cyl::kappa(u, v, w, i),
        }
    }

    pub fn chi(self, x: &Cube, y: &Cube, z: &Cube, u: &Cube) -> Result<TMap, CompareError> {
        match self {
            Structure::Cosp => cosp::chi(x, y, z, u),
            Structure::Cylindrical => cyl::chi(x, y, z, u),
        }
    }

    pub fn lambda(self, u: &Cube, i: usize) -> Result<TMap, CompareError> {
        match self {
            Structure::Cosp => cosp::lambda(u, i),
            Structure::Cylindrical => cyl::lambda(u, i),
        }
    }

    pub fn rho(self, u: &Cube, i: usize) -> Result<TMap, CompareError> {
        match self {
            Structure::Cosp => cosp::rho(u, i),
            Structure::Cylindrical => cyl::rho(u, i),
        }
    }

    pub fn sigma(self, u: &Cube) -> Result<TMap, CompareError> {
        match self {
            Structure::Cosp => cosp::sigma(u),
            Structure::Cylindrical => cyl::sigma(u),
        }
    }

    pub fn iota(self, x: &Cube, y: &Cube) -> Result<TMap, CompareError> {
        match self {
            Structure::Cosp => cosp::iota(x, y),
            Structure::Cylindrical => cyl::iota(x, y),
        }
    }
}
