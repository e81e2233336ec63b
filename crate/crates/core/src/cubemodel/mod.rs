//! Cubical cospans, transversal maps, and the comparisons for chosen pushouts.

pub mod cosp;
pub mod cube;
pub mod faced;
pub mod formal;
pub mod tmap;
pub mod track;

pub use cube::{coords_of, format_index, parse_index, pos_count, pos_of, Concat, Cube, CubeError, Sign};
pub use faced::{from_faced_space, non_pullback_squares, FacedError, FacedSpace};
pub use tmap::{TMap, TMapError};
pub use track::{compare, Atom, CompareError, Coord, CoordKind, Tracked, Transform};
