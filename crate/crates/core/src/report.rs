//! Shared report vocabulary.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// Anything that carries a pass/fail status.
pub trait HasStatus {
    fn status(&self) -> Status;
}

/// A named battery: how many instances were checked and the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn from_failures(name: &str, checked: usize, failures: Vec<String>) -> Check {
        Check {
            name: name.to_string(),
            status: Status::from_bool(failures.is_empty()),
            checked,
            witness: failures.into_iter().next(),
        }
    }

    pub fn pass(name: &str, checked: usize) -> Check {
        Check::from_failures(name, checked, Vec::new())
    }

    pub fn fail(name: &str, checked: usize, witness: String) -> Check {
        Check::from_failures(name, checked, vec![witness])
    }
}

impl HasStatus for Check {
    fn status(&self) -> Status {
        self.status
    }
}

pub fn all_pass<T: HasStatus>(items: &[T]) -> bool {
    items.iter().all(|c| c.status().passed())
}

pub fn first_failure<T: HasStatus>(items: &[T]) -> Option<&T> {
    items.iter().find(|c| !c.status().passed())
}
