use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_FACES: u64 = 5_000_000;
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(600);

/// Resource guard shared by enumeration and elimination.
///
/// Exceeding either bound yields [`Error::ResourceLimit`] instead of running
/// out of memory or time.
#[derive(Clone, Debug)]
pub struct Limits {
    pub max_faces: u64,
    deadline: Option<Instant>,
    budget: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_faces: DEFAULT_MAX_FACES,
            deadline: None,
            budget: None,
        }
    }
}

impl Limits {
    pub fn with_max_faces(max_faces: u64) -> Self {
        Limits {
            max_faces,
            ..Limits::default()
        }
    }

    /// Same face bound, plus a wall-clock budget starting now.
    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self.budget = Some(budget);
        self
    }

    pub fn check_faces(&self, count: u64) -> Result<()> {
        if count > self.max_faces {
            Err(Error::ResourceLimit {
                what: format!("face count reached {count}"),
                bound: self.max_faces,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_time(&self) -> Result<()> {
        match (self.deadline, self.budget) {
            (Some(deadline), Some(budget)) if Instant::now() > deadline => {
                Err(Error::ResourceLimit {
                    what: "time budget in seconds".into(),
                    bound: budget.as_secs(),
                })
            }
            _ => Ok(()),
        }
    }
}
