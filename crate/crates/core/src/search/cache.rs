use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::subgroups::{solvable_subgroups_with_limit, OrderFilter, SubgroupList};
use crate::error::Result;
use crate::record::GroupRecord;

pub const CACHE_ENV: &str = "BRACE_FORGE_CACHE";

/// Subgroup lists stored as JSON files named by
/// `sha256(group record ‖ filter)`.
#[derive(Clone, Debug)]
pub struct SubgroupCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct CachedList {
    parent: GroupRecord,
    filter: OrderFilter,
    reps: Vec<GroupRecord>,
}

impl SubgroupCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SubgroupCache { dir: dir.into() }
    }

    /// Cache at `$BRACE_FORGE_CACHE` when set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(parent: &GroupRecord, filter: OrderFilter) -> String {
        let mut hasher = Sha256::new();
        hasher.update(serde_json::to_vec(&parent.unnamed()).expect("records serialize"));
        hasher.update(serde_json::to_vec(&filter).expect("filters serialize"));
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("subgroups-{key}.json"))
    }

    /// A stored list, or `None` when absent or unreadable.
    pub fn load(&self, parent: &crate::FinGroup, filter: OrderFilter) -> Option<SubgroupList> {
        let rec = GroupRecord::from_group(parent);
        let text = fs::read(self.path(&Self::key(&rec, filter))).ok()?;
        let cached: CachedList = serde_json::from_slice(&text).ok()?;
        if cached.parent != rec || cached.filter != filter {
            return None;
        }
        let reps = cached.reps.iter().map(|r| r.to_group()).collect::<Result<Vec<_>>>().ok()?;
        SubgroupList::from_reps(parent, filter, reps).ok()
    }

    pub fn store(&self, list: &SubgroupList) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let parent = GroupRecord::from_group(&list.parent);
        let cached = CachedList {
            parent: parent.clone(),
            filter: list.filter,
            reps: list.classes.iter().map(|c| GroupRecord::from_group(&c.rep)).collect(),
        };
        let path = self.path(&Self::key(&parent, list.filter));
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(&cached)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

/// [`solvable_subgroups_with_limit`] through an optional cache.
pub fn solvable_subgroups_cached(
    g: &crate::FinGroup,
    filter: OrderFilter,
    limit: u64,
    cache: Option<&SubgroupCache>,
) -> Result<SubgroupList> {
    if g.order() > limit {
        return solvable_subgroups_with_limit(g, filter, limit);
    }
    if let Some(list) = cache.and_then(|c| c.load(g, filter)) {
        return Ok(list);
    }
    let list = solvable_subgroups_with_limit(g, filter, limit)?;
    if let Some(c) = cache {
        c.store(&list)?;
    }
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FinGroup;

    #[test]
    fn store_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SubgroupCache::new(dir.path());
        let g = FinGroup::symmetric(4);
        let fresh = solvable_subgroups_cached(&g, OrderFilter::All, 10_000, Some(&cache)).unwrap();
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
        let again = cache.load(&g, OrderFilter::All).unwrap();
        assert_eq!(fresh.reps(), again.reps());
        let sizes = |l: &SubgroupList| l.classes.iter().map(|c| c.conjugates.len()).collect::<Vec<_>>();
        assert_eq!(sizes(&fresh), sizes(&again));
        // a different filter is a different key
        assert!(cache.load(&g, OrderFilter::Equal(4)).is_none());
    }

    #[test]
    fn key_ignores_name() {
        let g = FinGroup::cyclic(5);
        let a = GroupRecord::from_group(&g);
        let b = GroupRecord::named(&g, "C5");
        assert_eq!(SubgroupCache::key(&a, OrderFilter::All), SubgroupCache::key(&b, OrderFilter::All));
        assert_ne!(
            SubgroupCache::key(&a, OrderFilter::All),
            SubgroupCache::key(&a, OrderFilter::Dividing(5))
        );
    }
}
