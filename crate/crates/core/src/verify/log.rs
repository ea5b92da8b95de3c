use super::report::{Entry, Status};

/// Accumulates the checks behind one report entry.
#[derive(Default)]
pub(crate) struct Log {
    levels: Vec<Vec<usize>>,
    checks: Vec<String>,
    notes: Vec<String>,
    method: Option<String>,
}

impl Log {
    pub fn level(&mut self, levels: &[usize]) {
        if !self.levels.iter().any(|l| l == levels) {
            self.levels.push(levels.to_vec());
        }
    }

    pub fn check(&mut self, text: impl Into<String>) {
        self.checks.push(text.into());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn method(&mut self, text: impl Into<String>) {
        self.method = Some(text.into());
    }

    fn finish(self, status: Status, summary: String) -> Entry {
        Entry {
            status,
            summary,
            levels_checked: self.levels,
            checks: self.checks,
            method: self.method,
            notes: self.notes,
        }
    }

    pub fn pass(self, summary: impl Into<String>) -> Entry {
        self.finish(Status::Pass, summary.into())
    }

    pub fn fail(self, summary: impl Into<String>) -> Entry {
        self.finish(Status::Fail, summary.into())
    }
}

/// Returns a failing entry from the enclosing verifier unless `cond` holds.
macro_rules! ensure {
    ($log:ident, $cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Ok($log.fail(format!($($fmt)+)));
        }
    };
}

pub(crate) use ensure;
