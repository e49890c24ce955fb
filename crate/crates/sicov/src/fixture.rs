//! Discrete-law fixtures: `{"atoms": [[x, y, prob], ...]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sicov_core::oracle::DiscreteJointLaw;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub atoms: Vec<[f64; 3]>,
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed fixture: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Law(#[from] sicov_core::Error),
}

impl Fixture {
    pub fn from_law(law: &DiscreteJointLaw) -> Self {
        Fixture { atoms: law.atoms().iter().map(|&(x, y, p)| [x, y, p]).collect() }
    }

    pub fn to_law(&self) -> Result<DiscreteJointLaw, sicov_core::Error> {
        DiscreteJointLaw::new(self.atoms.iter().map(|a| (a[0], a[1], a[2])).collect())
    }
}

pub fn parse_fixture(text: &str) -> Result<DiscreteJointLaw, FixtureError> {
    let fixture: Fixture = serde_json::from_str(text)?;
    Ok(fixture.to_law()?)
}

pub fn load_fixture(path: impl AsRef<Path>) -> Result<DiscreteJointLaw, FixtureError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io { path: path.display().to_string(), source })?;
    parse_fixture(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let law = parse_fixture(r#"{"atoms": [[1, 1, 0.5], [-1, -1, 0.5]]}"#).unwrap();
        assert_eq!(law, DiscreteJointLaw::rademacher_identity());
        let text = serde_json::to_string(&Fixture::from_law(&law)).unwrap();
        assert_eq!(parse_fixture(&text).unwrap(), law);
    }

    #[test]
    fn rejects_bad_fixtures() {
        assert!(matches!(parse_fixture(r#"{"atoms": [[1, 1, 0.4]]}"#), Err(FixtureError::Law(_))));
        assert!(matches!(parse_fixture(r#"{"atoms": [[1, 1]]}"#), Err(FixtureError::Json(_))));
        assert!(matches!(parse_fixture(r#"{"atom": []}"#), Err(FixtureError::Json(_))));
    }
}
