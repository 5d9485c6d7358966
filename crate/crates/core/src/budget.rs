use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Limits for the exact searches.
///
/// Every exhaustive routine counts the search nodes it expands against
/// `max_nodes`; the wall-clock limit is polled every few thousand nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_seconds: Option<f64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 200_000_000,
            max_seconds: None,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            max_seconds: None,
        }
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            limit: self.max_nodes,
            used: 0,
            deadline: self
                .max_seconds
                .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
        }
    }
}

/// Per-call node counter.
#[derive(Debug)]
pub(crate) struct Meter {
    limit: u64,
    used: u64,
    deadline: Option<Instant>,
}

impl Meter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExhausted { nodes: self.used });
        }
        if self.used & 0xfff == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Error::BudgetExhausted { nodes: self.used });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meter_stops_at_limit() {
        let mut m = Budget::nodes(3).meter();
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert_eq!(m.tick(), Err(Error::BudgetExhausted { nodes: 4 }));
    }
}
