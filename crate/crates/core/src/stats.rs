use std::fmt;
use std::ops::AddAssign;

/// Operation counters collected during a run.
///
/// `events_inserted` and `decrease_keys` count operations on the per-vertex
/// event queues (for the sampling algorithm: on its single Dijkstra heap).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    pub relax_ops: u64,
    pub global_extracts: u64,
    pub local_extracts: u64,
    pub events_inserted: u64,
    pub decrease_keys: u64,
}

impl RunStats {
    /// `(name, value)` pairs in a fixed order.
    pub fn fields(&self) -> [(&'static str, u64); 5] {
        [
            ("relax_ops", self.relax_ops),
            ("global_extracts", self.global_extracts),
            ("local_extracts", self.local_extracts),
            ("events_inserted", self.events_inserted),
            ("decrease_keys", self.decrease_keys),
        ]
    }
}

impl AddAssign for RunStats {
    fn add_assign(&mut self, rhs: Self) {
        self.relax_ops += rhs.relax_ops;
        self.global_extracts += rhs.global_extracts;
        self.local_extracts += rhs.local_extracts;
        self.events_inserted += rhs.events_inserted;
        self.decrease_keys += rhs.decrease_keys;
    }
}

/// One `name=value` line per counter.
impl fmt::Display for RunStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in self.fields() {
            writeln!(f, "{name}={value}")?;
        }
        Ok(())
    }
}
