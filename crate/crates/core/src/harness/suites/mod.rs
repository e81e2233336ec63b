//! The suite registry. Each suite is a list of role-named laws evaluated on seeded instances.

mod coherence;
mod collared;
mod cubical;
mod cylindrical;
mod pushout;

pub use cubical::interval_square;
pub use pushout::hypothesis_violations;

use rand::Rng;

use super::{Gen, GenConfig, LawReport, SuiteError, SuiteReport};

type SuiteFn = fn(&GenConfig) -> Vec<LawReport>;

/// Every suite, in report order.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("cubical-relations", cubical::relations),
    ("reduced-presentation", cubical::reduced),
    ("concat-consistency", cubical::concat_consistency),
    ("unitarity", cubical::unitarity),
    ("faced-objects", cubical::faced_objects),
    ("pushout-embeddings", pushout::pushout_embeddings),
    ("back-square", pushout::back_square),
    ("precollared-concat", collared::precollared_concat),
    ("collared-concat", collared::collared_concat),
    ("collared-degeneracy", collared::collared_degeneracy),
    ("quasi-degeneracy", cylindrical::quasi_degeneracy),
    ("lax-units", cylindrical::lax_units),
    ("cylindrical-comparisons", cylindrical::comparisons),
    ("comparison-boundaries", cylindrical::boundaries),
    ("coherence-cosp", coherence::cosp),
    ("coherence-cylindrical", coherence::cylindrical),
    ("triangle-cylindrical", coherence::triangle_cylindrical),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(name: &str, cfg: &GenConfig) -> Result<SuiteReport, SuiteError> {
    let (_, run) = SUITES.iter().find(|(n, _)| *n == name).ok_or_else(|| SuiteError::Unknown(name.into()))?;
    Ok(SuiteReport { suite: name.into(), config: cfg.clone(), laws: run(cfg) })
}

/// `cfg.instance_count` instances from a stream private to `salt`.
fn instances<T>(cfg: &GenConfig, salt: &str, mut make: impl FnMut(&mut Gen) -> T) -> Vec<T> {
    let mut g = Gen::new(cfg, salt);
    (0..cfg.instance_count).map(|_| make(&mut g)).collect()
}

/// A degree in `lo..=max(lo, max_degree)`.
fn degree(g: &mut Gen, lo: usize) -> usize {
    let hi = g.cfg.max_degree.max(lo);
    g.rng().gen_range(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(run_suite("nope", &GenConfig::new(0)), Err(SuiteError::Unknown("nope".into())));
    }

    #[test]
    fn names_are_unique() {
        let mut v = suite_names();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), SUITES.len());
    }
}
