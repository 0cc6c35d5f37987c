use std::num::NonZeroUsize;
use std::sync::{Mutex, OnceLock};

use lru::LruCache;

use crate::diagram::{ArcId, NormalKey};
use crate::poly::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum CacheKey {
    Bracket(NormalKey),
    L(NormalKey),
    Conway(Vec<([ArcId; 4], bool)>),
}

/// Bounded LRU memo shared by the skein computations. Safe to share
/// between threads.
pub struct SkeinCache {
    inner: Mutex<LruCache<CacheKey, LaurentPoly>>,
}

impl SkeinCache {
    pub const DEFAULT_CAPACITY: usize = 1 << 15;

    pub fn new(capacity: usize) -> SkeinCache {
        let cap = NonZeroUsize::new(capacity.max(1)).unwrap();
        SkeinCache { inner: Mutex::new(LruCache::new(cap)) }
    }

    /// Process-wide cache used by the plain entry points.
    pub fn global() -> &'static SkeinCache {
        static C: OnceLock<SkeinCache> = OnceLock::new();
        C.get_or_init(|| SkeinCache::new(Self::DEFAULT_CAPACITY))
    }

    pub fn len(&self) -> usize {
        self.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.lock().clear()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, LruCache<CacheKey, LaurentPoly>> {
        // A poisoned cache only ever holds complete entries.
        self.inner.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub(crate) fn get(&self, k: &CacheKey) -> Option<LaurentPoly> {
        self.lock().get(k).cloned()
    }

    pub(crate) fn put(&self, k: CacheKey, v: LaurentPoly) {
        self.lock().put(k, v);
    }
}

impl Default for SkeinCache {
    fn default() -> Self {
        SkeinCache::new(Self::DEFAULT_CAPACITY)
    }
}
