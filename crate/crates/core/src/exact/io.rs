//! JSON schemas for cones, points and cone pairs.
//!
//! Cones: `{"space_dim": N, "generators": [["p/q", ...], ...]}` or the same
//! with `"inequalities"`. Points: a bare array of `"p/q"` strings.
//! Pairs: `{"K": <cone>, "L": <cone>}`.

use serde::{Deserialize, Serialize};

use super::cone::{ConeH, ConeV, ProperCone};
use super::rational::RationalVector;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConeFile {
    V(ConeV),
    H(ConeH),
}

impl ConeFile {
    pub fn space_dim(&self) -> usize {
        match self {
            ConeFile::V(c) => c.space_dim,
            ConeFile::H(c) => c.space_dim,
        }
    }

    /// Re-validates through the canonicalizing constructors.
    pub fn validated(self) -> Result<ConeFile> {
        Ok(match self {
            ConeFile::V(c) => ConeFile::V(ConeV::new(c.space_dim, c.generators)?),
            ConeFile::H(c) => ConeFile::H(ConeH::new(c.space_dim, c.inequalities)?),
        })
    }

    pub fn to_proper(&self) -> Result<ProperCone> {
        match self.clone().validated()? {
            ConeFile::V(c) => ProperCone::from_v(&c),
            ConeFile::H(c) => ProperCone::from_h(&c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    #[serde(rename = "K")]
    pub k: ConeFile,
    #[serde(rename = "L")]
    pub l: ConeFile,
}

pub fn parse_cone(text: &str) -> Result<ConeFile> {
    let c: ConeFile = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    c.validated()
}

pub fn parse_point(text: &str) -> Result<RationalVector> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn parse_pair(text: &str) -> Result<PairFile> {
    let p: PairFile = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(PairFile { k: p.k.validated()?, l: p.l.validated()? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let v = parse_cone(r#"{"space_dim": 2, "generators": [["2","-1"],["-1","2"]]}"#).unwrap();
        assert!(matches!(v, ConeFile::V(_)));
        let h = parse_cone(r#"{"space_dim": 2, "inequalities": [["2","1"],["1","2"]]}"#).unwrap();
        assert_eq!(v.to_proper().unwrap(), h.to_proper().unwrap().dual().dual());
        assert_eq!(v.to_proper().unwrap().facets, h.to_proper().unwrap().facets);
    }

    #[test]
    fn canonical_output_uses_same_schema() {
        let v = parse_cone(r#"{"space_dim": 2, "generators": [["4","-2"],["-1","2"]]}"#).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"space_dim":2,"generators":[["-1","2"],["1","-1/2"]]}"#);
        assert_eq!(parse_cone(&s).unwrap(), v);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_cone(r#"{"space_dim": 2, "generators": [["1","0","0"]]}"#).is_err());
        assert!(parse_cone(r#"{"space_dim": 2, "generators": [["a","0"]]}"#).is_err());
        assert!(parse_point(r#"["1/0"]"#).is_err());
    }
}
