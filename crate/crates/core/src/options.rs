use crate::error::{Error, Result};
use crate::par::Exec;

/// Default bound on `p^dim` for element enumeration.
pub const DEFAULT_GUARD: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub exec: Exec,
    /// Largest set size any enumeration may walk.
    pub guard: u64,
    /// Seed for sampled checks.
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { exec: Exec::default(), guard: DEFAULT_GUARD, seed: 0x5eed }
    }
}

impl Options {
    pub fn with_exec(self, exec: Exec) -> Self {
        Options { exec, ..self }
    }

    pub fn with_guard(self, guard: u64) -> Self {
        Options { guard, ..self }
    }

    pub fn check_guard(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.guard as u128 {
            Err(Error::GuardExceeded { what, needed, guard: self.guard })
        } else {
            Ok(())
        }
    }
}
