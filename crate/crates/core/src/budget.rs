use std::time::{Duration, Instant};

/// Wall-clock budget shared by the search and the pricer. The clock is
/// consulted on every explicit [`Budget::check`] and once per 1000 ticks.
#[derive(Debug, Clone)]
pub struct Budget {
    start: Instant,
    limit: Option<Duration>,
    ticks: u64,
}

/// The time budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interrupted;

impl Budget {
    pub fn new(limit: Option<Duration>) -> Self {
        Budget {
            start: Instant::now(),
            limit,
            ticks: 0,
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(None)
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn check(&self) -> Result<(), Interrupted> {
        match self.limit {
            Some(limit) if self.start.elapsed() >= limit => Err(Interrupted),
            _ => Ok(()),
        }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Interrupted> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(1000) {
            self.check()
        } else {
            Ok(())
        }
    }
}
