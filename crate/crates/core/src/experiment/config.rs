use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lin::DEFAULT_EXHAUSTIVE_CAP;
use crate::poly::MAX_VARS;

/// Default `n`, matching the experiments being replayed.
pub const DEFAULT_N: usize = 5;
pub const DEFAULT_ITERATIONS: u64 = 1000;
pub const DEFAULT_SEED: u64 = 42;
/// Largest n for polynomial trials without `allow_large_n`.
pub const POLY_N_CAP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "d")]
    D,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::A => "a",
            Variant::B => "b",
            Variant::C => "c",
            Variant::D => "d",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    ConjI,
    Conj1,
    Conj2,
    Conj3,
    Conj4,
    Conj5,
    ConjII,
    Obs1,
    Obs2,
    Solve,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ConjI => "conjI",
            Command::Conj1 => "conj1",
            Command::Conj2 => "conj2",
            Command::Conj3 => "conj3",
            Command::Conj4 => "conj4",
            Command::Conj5 => "conj5",
            Command::ConjII => "conjII",
            Command::Obs1 => "obs1",
            Command::Obs2 => "obs2",
            Command::Solve => "solve",
        }
    }

    fn supports_exhaustive(self) -> bool {
        matches!(
            self,
            Command::ConjI | Command::Conj2 | Command::Conj3 | Command::Conj4 | Command::Obs1
        )
    }

    fn is_poly(self) -> bool {
        matches!(self, Command::Conj5 | Command::ConjII | Command::Obs2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// `None` means the default (or, for `solve`, the largest index in the file).
    pub n: Option<usize>,
    pub mode: Mode,
    pub iterations: u64,
    pub seed: u64,
    /// Half-open interval of combination ranks (exhaustive) or trial indices (random).
    pub range: Option<(u64, u64)>,
    pub threads: usize,
    pub strict_semantics: bool,
    pub variant: Option<Variant>,
    pub witness_dir: Option<PathBuf>,
    /// Scan the squaring-chain equations first in every conj5 trial.
    pub extremal: bool,
    pub allow_large_n: bool,
    pub input: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            n: None,
            mode: Mode::Random,
            iterations: DEFAULT_ITERATIONS,
            seed: DEFAULT_SEED,
            range: None,
            threads: 1,
            strict_semantics: false,
            variant: None,
            witness_dir: None,
            extremal: false,
            allow_large_n: false,
            input: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n.unwrap_or(DEFAULT_N)
    }

    pub fn witness_dir(&self) -> PathBuf {
        self.witness_dir.clone().unwrap_or_else(|| PathBuf::from("witnesses"))
    }

    /// Trial-index interval of a random run.
    pub fn trial_range(&self) -> (u64, u64) {
        self.range.unwrap_or((0, self.iterations))
    }

    /// Checks the invariants that do not depend on the driver's data.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        let cmd = self.command;
        let n = self.n();
        if self.threads == 0 {
            return bad("--threads must be at least 1".into());
        }
        if cmd == Command::Solve {
            if self.input.is_none() {
                return bad("solve needs a system file".into());
            }
            return Ok(());
        }
        if n == 0 {
            return bad("--n must be at least 1".into());
        }
        if let Some((a, b)) = self.range {
            if a > b {
                return bad(format!("empty range {a}..{b}"));
            }
        }
        match self.mode {
            Mode::Exhaustive => {
                if !cmd.supports_exhaustive() {
                    return bad(format!("{} has no exhaustive mode", cmd.name()));
                }
                let cap = match cmd {
                    Command::Obs1 => 4,
                    _ => DEFAULT_EXHAUSTIVE_CAP,
                };
                if n > cap {
                    return bad(format!("exhaustive {} is capped at n = {cap}", cmd.name()));
                }
            }
            Mode::Random => {
                if self.range.is_none() && self.iterations == 0 {
                    return bad("--iters must be at least 1".into());
                }
            }
        }
        if cmd == Command::Conj2 && n < 2 {
            return bad("conj2 needs n >= 2".into());
        }
        if matches!(cmd, Command::Obs1 | Command::Obs2) && n > 4 {
            return bad("the replacement observations are stated for n <= 4".into());
        }
        if cmd == Command::Conj5 && self.variant.is_none() {
            return bad("conj5 needs --variant a|b|c|d".into());
        }
        if self.extremal {
            let ok = cmd == Command::Conj5 && matches!(self.variant, Some(Variant::A | Variant::D));
            if !ok || n < 2 {
                return bad("--extremal applies to conj5 --variant a or d with n >= 2".into());
            }
        }
        if cmd.is_poly() {
            if n > MAX_VARS {
                return bad(format!("polynomial trials support n <= {MAX_VARS}"));
            }
            if n > POLY_N_CAP && !self.allow_large_n {
                return bad(format!(
                    "polynomial trials are capped at n = {POLY_N_CAP}; pass --allow-large-n to go beyond"
                ));
            }
        }
        Ok(())
    }

    /// Config echo written into reports. The thread count is left out so
    /// reports do not depend on it.
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            n: if self.command == Command::Solve { self.n } else { Some(self.n()) },
            mode: self.mode,
            iterations: (self.mode == Mode::Random && self.command != Command::Solve)
                .then_some(self.iterations),
            seed: self.seed,
            range: self.range.map(|(a, b)| format!("{a}..{b}")),
            strict_semantics: self.strict_semantics,
            variant: self.variant,
            extremal: self.extremal,
            input: self.input.as_ref().map(|p| p.display().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub n: Option<usize>,
    pub mode: Mode,
    pub iterations: Option<u64>,
    pub seed: u64,
    pub range: Option<String>,
    pub strict_semantics: bool,
    pub variant: Option<Variant>,
    pub extremal: bool,
    pub input: Option<String>,
}

/// Parses `A..B` into a half-open interval.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::Config(format!("range must look like A..B, got {s}")))?;
    let p = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| Error::Config(format!("bad range bound {t:?}")))
    };
    let (a, b) = (p(a)?, p(b)?);
    if a > b {
        return Err(Error::Config(format!("empty range {s}")));
    }
    Ok((a, b))
}
