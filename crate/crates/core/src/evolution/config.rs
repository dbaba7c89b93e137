use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How cells are picked for mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OuterMutation {
    /// Exactly one cell, uniformly.
    OneBit,
    /// Each cell independently with probability `1/(M-1)`.
    BitWise,
}

/// How many block operations a picked cell receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerMutation {
    /// One operation.
    Local,
    /// `K ~ Poisson(1)` operations.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Crossover {
    None,
    OnePoint,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MutationConfig {
    pub outer: OuterMutation,
    pub inner: InnerMutation,
    /// Apply `K + 1` operations under global mutation instead of `K`.
    #[serde(default)]
    pub global_shifted: bool,
}

impl MutationConfig {
    pub fn new(outer: OuterMutation, inner: InnerMutation) -> Self {
        Self {
            outer,
            inner,
            global_shifted: false,
        }
    }

    /// `local`, `global` or `global-shifted`.
    pub fn inner_label(&self) -> &'static str {
        match (self.inner, self.global_shifted) {
            (InnerMutation::Local, _) => "local",
            (InnerMutation::Global, false) => "global",
            (InnerMutation::Global, true) => "global-shifted",
        }
    }

    /// Parses the `inner` variant string, which also carries the shift flag.
    pub fn with_inner_label(outer: OuterMutation, label: &str) -> Result<Self> {
        let (inner, global_shifted) = match label {
            "local" => (InnerMutation::Local, false),
            "global" => (InnerMutation::Global, false),
            "global-shifted" => (InnerMutation::Global, true),
            other => return Err(Error::Config(format!("unknown inner mutation {other:?}"))),
        };
        Ok(Self {
            outer,
            inner,
            global_shifted,
        })
    }
}

impl fmt::Display for MutationConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.outer, self.inner_label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub mutation: MutationConfig,
    /// Population and offspring size; 1 gives the (1+1) algorithm.
    #[serde(default = "default_lambda")]
    pub lambda: usize,
    #[serde(default = "default_crossover")]
    pub crossover: Crossover,
    /// Upper bound of the initial uniform counts; `None` means `r`.
    #[serde(default)]
    pub s: Option<u64>,
    #[serde(default = "default_max_generations")]
    pub max_generations: u64,
    #[serde(default)]
    pub record_trajectory: bool,
}

fn default_lambda() -> usize {
    1
}

fn default_crossover() -> Crossover {
    Crossover::None
}

fn default_max_generations() -> u64 {
    10_000_000
}

impl EvolutionConfig {
    pub fn one_plus_one(mutation: MutationConfig) -> Self {
        Self {
            mutation,
            lambda: 1,
            crossover: Crossover::None,
            s: None,
            max_generations: default_max_generations(),
            record_trajectory: false,
        }
    }

    pub fn population(mutation: MutationConfig, lambda: usize, crossover: Crossover) -> Self {
        Self {
            lambda,
            crossover,
            ..Self::one_plus_one(mutation)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda == 0 {
            return Err(Error::Config("lambda must be at least 1".into()));
        }
        if self.crossover != Crossover::None && self.lambda < 2 {
            return Err(Error::Config(format!(
                "{} crossover needs lambda >= 2, got {}",
                self.crossover, self.lambda
            )));
        }
        if self.s == Some(0) {
            return Err(Error::Config(
                "initialization bound s must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn init_bound(&self, r: usize) -> u64 {
        self.s.unwrap_or(r as u64)
    }
}

macro_rules! labelled_enum {
    ($ty:ty, $($variant:path => $label:literal),+ $(,)?) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $label),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($label => Ok($variant),)+
                    other => Err(Error::Config(format!(
                        concat!("unknown ", stringify!($ty), " {:?}"),
                        other
                    ))),
                }
            }
        }
    };
}

labelled_enum!(OuterMutation, OuterMutation::OneBit => "onebit", OuterMutation::BitWise => "bitwise");
labelled_enum!(InnerMutation, InnerMutation::Local => "local", InnerMutation::Global => "global");
labelled_enum!(
    Crossover,
    Crossover::None => "none",
    Crossover::OnePoint => "onepoint",
    Crossover::Uniform => "uniform",
);
