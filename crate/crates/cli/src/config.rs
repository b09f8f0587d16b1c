use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use swduality::aff::{AffModule, FixtureSpec};
use swduality::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Relations,
    Alpha,
    Roundtrip,
    Glue,
    Hom,
    Degree,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Relations,
        Suite::Alpha,
        Suite::Roundtrip,
        Suite::Glue,
        Suite::Hom,
        Suite::Degree,
    ];

    /// Suites that only make sense for `ℓ ≤ n`.
    pub fn needs_hypothesis(self) -> bool {
        matches!(self, Suite::Alpha | Suite::Roundtrip | Suite::Hom)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().expect("string"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub ell: usize,
    pub m: usize,
    pub kmax: i64,
    pub seed: u64,
    /// Random samples per depth for the gluing conditions.
    pub samples: usize,
    pub fixtures: Vec<String>,
    pub suites: Vec<Suite>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 2,
            ell: 2,
            m: 2,
            kmax: 2,
            seed: 0,
            samples: 16,
            fixtures: Vec::new(),
            suites: Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(swduality::Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(s) => write!(f, "{s}"),
        }
    }
}

impl From<swduality::Error> for CliError {
    fn from(e: swduality::Error) -> Self {
        CliError::Core(e)
    }
}

/// Evaluation parameters `(3 + 2f + 5i + 7r) / (1 + i + f)`: distinct and
/// nonzero for every loop `i` and place `r`.
pub fn default_fixtures(m: usize, ell: usize) -> Vec<String> {
    (0..2i64)
        .map(|f| {
            let groups: Vec<Vec<Rational>> = (0..m as i64)
                .map(|i| {
                    (0..ell as i64)
                        .map(|r| Rational::new(3 + 2 * f + 5 * i + 7 * r, 1 + i + f).expect("nonzero"))
                        .collect()
                })
                .collect();
            FixtureSpec::Eval(groups).to_string()
        })
        .collect()
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n == 0 || self.ell == 0 || self.m == 0 || self.kmax < 1 {
            return Err(CliError::Usage("n, ell, m and kmax must all be at least 1".into()));
        }
        if self.ell > self.n {
            if let Some(s) = self.suites.iter().find(|s| s.needs_hypothesis()) {
                return Err(CliError::Usage(format!(
                    "suite {s} needs ell <= n, got ell = {} and n = {}",
                    self.ell, self.n
                )));
            }
        }
        Ok(())
    }

    pub fn fixture_specs(&self) -> Vec<String> {
        if self.fixtures.is_empty() {
            default_fixtures(self.m, self.ell)
        } else {
            self.fixtures.clone()
        }
    }

    /// Builds every fixture and checks it matches `(m, ℓ)`. Relations are
    /// not checked here.
    pub fn modules(&self) -> Result<Vec<(String, AffModule)>, CliError> {
        self.fixture_specs()
            .into_iter()
            .map(|s| {
                let module = FixtureSpec::parse(&s, self.ell)
                    .and_then(|f| f.build())
                    .map_err(|e| CliError::Usage(format!("fixture {s}: {e}")))?;
                if module.ell() != self.ell || module.m() != self.m {
                    return Err(CliError::Usage(format!(
                        "fixture {s} has m = {} and ell = {}, expected m = {} and ell = {}",
                        module.m(),
                        module.ell(),
                        self.m,
                        self.ell
                    )));
                }
                Ok((s, module))
            })
            .collect()
    }
}
