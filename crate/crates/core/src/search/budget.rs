use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

/// Limits for the exhaustive searches. Running out of any of them turns the
/// answer into `Unknown`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest formula (in leaves) the enumeration may need to consider.
    pub max_leaves: usize,
    /// Cap on generated candidates (formula nodes or search nodes).
    pub max_candidates: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_leaves: 40, max_candidates: 50_000_000, time_limit: Duration::from_secs(120) }
    }
}

impl SearchBudget {
    pub fn with_leaves(mut self, n: usize) -> Self {
        self.max_leaves = n;
        self
    }

    pub fn with_candidates(mut self, n: u64) -> Self {
        self.max_candidates = n;
        self
    }

    pub fn with_time_limit(mut self, d: Duration) -> Self {
        self.time_limit = d;
        self
    }

    pub(crate) fn validate(&self) -> crate::Result<()> {
        if self.max_leaves == 0 || self.max_candidates == 0 || self.time_limit.is_zero() {
            return Err(crate::Error::InvalidArgument("budget limits must be positive".into()));
        }
        Ok(())
    }
}

/// Shared counter and deadline for one search, safe to use across threads.
pub(crate) struct Meter {
    count: AtomicU64,
    limit: u64,
    start: Instant,
    deadline: Instant,
    tripped: AtomicBool,
}

impl Meter {
    pub(crate) fn new(b: &SearchBudget) -> Self {
        let start = Instant::now();
        Meter {
            count: AtomicU64::new(0),
            limit: b.max_candidates,
            start,
            deadline: start + b.time_limit,
            tripped: AtomicBool::new(false),
        }
    }

    /// Counts `n` more candidates; false once the budget is gone.
    pub(crate) fn tick(&self, n: u64) -> bool {
        if self.tripped.load(Ordering::Relaxed) {
            return false;
        }
        let c = self.count.fetch_add(n, Ordering::Relaxed) + n;
        if c > self.limit || (c & 0x3ff < n && Instant::now() > self.deadline) {
            self.tripped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed) || Instant::now() > self.deadline
    }

    pub(crate) fn reason(&self) -> String {
        if self.count.load(Ordering::Relaxed) > self.limit {
            format!("candidate budget of {} exhausted", self.limit)
        } else {
            format!("time limit of {} ms exhausted", (self.deadline - self.start).as_millis())
        }
    }

    pub(crate) fn stats(&self) -> super::SearchStats {
        super::SearchStats { candidates: self.count.load(Ordering::Relaxed), elapsed: self.start.elapsed() }
    }
}
