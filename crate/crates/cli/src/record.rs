//! Group file format: a JSON object with a name, a degree, generator image
//! arrays (0-based points), optional declared maximal subgroups (given by
//! generators or by a stabilized point set), and free-form metadata.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use gendim_core::lattice::{DeclaredSubgroup, MemberTest};
use gendim_core::{PermGroup, Permutation};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupRecord {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub declared_maximal: Vec<DeclaredMaximal>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeclaredMaximal {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilized_points: Option<Vec<usize>>,
}

impl GroupRecord {
    pub fn from_group(name: &str, g: &PermGroup) -> GroupRecord {
        GroupRecord {
            name: name.to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
            declared_maximal: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn load(path: &Path) -> anyhow::Result<GroupRecord> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let record: GroupRecord =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        record.validate()?;
        Ok(record)
    }

    pub fn parse(text: &str) -> anyhow::Result<GroupRecord> {
        let record: GroupRecord = serde_json::from_str(text)?;
        record.validate()?;
        Ok(record)
    }

    /// Checks that generators are bijections of the stated degree and that
    /// declared subgroups really are subgroups.
    pub fn validate(&self) -> anyhow::Result<()> {
        let group = self.group()?;
        for (k, decl) in self.declared_maximal.iter().enumerate() {
            let sub = self.declared_subgroup(k)?;
            for gen in &sub.gens {
                if !group.contains(gen)? {
                    bail!("declared subgroup {k}: generator outside the group");
                }
                if !sub.contains(gen)? {
                    bail!("declared subgroup {k}: generator fails its own membership test");
                }
            }
            if decl.generators.is_empty() && decl.stabilized_points.is_none() {
                bail!("declared subgroup {k}: neither generators nor stabilized points");
            }
        }
        Ok(())
    }

    pub fn group(&self) -> anyhow::Result<PermGroup> {
        let mut gens = Vec::new();
        for (k, images) in self.generators.iter().enumerate() {
            if images.len() != self.degree {
                bail!(
                    "generator {k} has length {} but degree is {}",
                    images.len(),
                    self.degree
                );
            }
            let p = Permutation::from_images(images.clone())
                .map_err(|e| anyhow::anyhow!("generator {k}: {e}"))?;
            gens.push(p);
        }
        Ok(PermGroup::from_generators(self.degree, gens)?)
    }

    pub fn declared_subgroup(&self, k: usize) -> anyhow::Result<DeclaredSubgroup> {
        let decl = &self.declared_maximal[k];
        let mut gens = Vec::new();
        for images in &decl.generators {
            gens.push(Permutation::from_images(images.clone())?);
        }
        let test = match &decl.stabilized_points {
            Some(points) => {
                if points.iter().any(|&p| p >= self.degree) {
                    bail!("declared subgroup {k}: stabilized point out of range");
                }
                MemberTest::SetStabilizer(points.clone())
            }
            None => MemberTest::Chain(PermGroup::from_generators(self.degree, gens.clone())?),
        };
        Ok(DeclaredSubgroup { gens, test })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_s3_record() {
        let text = r#"{"name": "S3", "degree": 3, "generators": [[1,0,2],[1,2,0]]}"#;
        let r = GroupRecord::parse(text).unwrap();
        let g = r.group().unwrap();
        assert_eq!(g.order_usize(), Some(6));
    }

    #[test]
    fn loads_trivial_record() {
        let text = r#"{"name": "1", "degree": 1, "generators": []}"#;
        let r = GroupRecord::parse(text).unwrap();
        assert!(r.group().unwrap().is_trivial());
    }

    #[test]
    fn rejects_non_bijection() {
        let text = r#"{"name": "bad", "degree": 3, "generators": [[0,0,1]]}"#;
        assert!(GroupRecord::parse(text).is_err());
    }

    #[test]
    fn rejects_outside_declared_subgroup() {
        let text = r#"{
            "name": "bad", "degree": 3, "generators": [[1,2,0]],
            "declared_maximal": [{"generators": [[1,0,2]]}]
        }"#;
        assert!(GroupRecord::parse(text).is_err());
    }
}
