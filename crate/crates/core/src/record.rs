use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm_core::{FinGroup, Perm};

/// A permutation group as JSON: `{degree, generators, name?}` with 0-based
/// image arrays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRecord {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupRecord {
    pub fn from_group(g: &FinGroup) -> Self {
        GroupRecord {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
            name: None,
        }
    }

    pub fn named(g: &FinGroup, name: &str) -> Self {
        GroupRecord {
            name: Some(name.to_string()),
            ..Self::from_group(g)
        }
    }

    pub fn perms(&self) -> Result<Vec<Perm>> {
        self.generators
            .iter()
            .map(|imgs| {
                if imgs.len() != self.degree {
                    return Err(Error::DegreeMismatch {
                        expected: self.degree,
                        found: imgs.len(),
                    });
                }
                Perm::from_images(imgs.clone())
            })
            .collect()
    }

    pub fn to_group(&self) -> Result<FinGroup> {
        FinGroup::from_generators(self.perms()?, self.degree)
    }

    /// Record without the cosmetic name, used for hashing.
    pub fn unnamed(&self) -> Self {
        GroupRecord {
            name: None,
            ..self.clone()
        }
    }
}

pub fn perm_images(p: &Perm) -> Vec<u32> {
    p.images().to_vec()
}
