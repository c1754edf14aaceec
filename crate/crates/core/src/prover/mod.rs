//! Decision procedures for K.
//!
//! [`Prover::prove`] decides `|- f` with a tableau on negation normal form
//! and returns either a proof summary or a tree countermodel.
//! [`Prover::global_consequence`] decides `premises |- f` (necessitation
//! allowed on premises) by type elimination and cross-checks positive
//! answers by searching for the least `n` with `|- [<n](/\premises) -> f`.

mod consequence;
mod nnf;
mod tableau;
mod types;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;
use crate::kripke::{KripkeModel, ModelFile, TreeModel};

pub use consequence::deduction_depth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Resource {
    /// Tableau or type-elimination steps.
    Nodes,
    /// Formulas in the subformula closure.
    Closure,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("resource limit exceeded: {resource:?} > {limit}")]
    ResourceLimit { resource: Resource, limit: u64 },
}

/// Per-call budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProverConfig {
    pub max_nodes: u64,
    /// At most 64; larger values are clamped.
    pub max_closure: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            max_nodes: 1_000_000,
            max_closure: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProverVerdict {
    /// The tableau for the negation closed; `nodes` is the work it took.
    Proved { nodes: u64 },
    /// The root of `countermodel` falsifies the formula.
    Refuted { countermodel: TreeModel },
}

impl ProverVerdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProverVerdict::Proved { .. })
    }

    pub fn countermodel(&self) -> Option<&TreeModel> {
        match self {
            ProverVerdict::Refuted { countermodel } => Some(countermodel),
            ProverVerdict::Proved { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsequenceVerdict {
    /// `deduction_depth` is the least `n` with `|- [<n](/\premises) -> f`,
    /// or `None` when that search ran out of budget.
    Derivable { deduction_depth: Option<usize> },
    /// `countermodel` validates every premise and refutes `f` at `world`.
    NotDerivable {
        countermodel: KripkeModel,
        world: String,
    },
}

impl ConsequenceVerdict {
    pub fn is_derivable(&self) -> bool {
        matches!(self, ConsequenceVerdict::Derivable { .. })
    }
}

/// JSON body of a countermodel: a model plus the refuting world.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub model: ModelFile,
    pub refuted_at: String,
}

impl Certificate {
    pub fn new(model: &KripkeModel, world: &str) -> Self {
        Certificate {
            model: model.to_file(),
            refuted_at: world.to_owned(),
        }
    }

    /// Rebuilds the model and checks that it refutes `f` at `refuted_at`
    /// and validates every formula of `valid`.
    pub fn certifies(&self, f: &Formula, valid: &[Formula]) -> bool {
        let Ok(m) = KripkeModel::try_from(self.model.clone()) else {
            return false;
        };
        m.eval(&self.refuted_at, f) == Ok(false) && valid.iter().all(|g| m.globally_valid(g))
    }
}

impl Serialize for ProverVerdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Proved {
            proved: bool,
            nodes: u64,
        }
        #[derive(Serialize)]
        struct Refuted {
            proved: bool,
            #[serde(flatten)]
            certificate: Certificate,
        }
        match self {
            ProverVerdict::Proved { nodes } => Proved {
                proved: true,
                nodes: *nodes,
            }
            .serialize(serializer),
            ProverVerdict::Refuted { countermodel } => Refuted {
                proved: false,
                certificate: Certificate::new(countermodel.model(), countermodel.root()),
            }
            .serialize(serializer),
        }
    }
}

impl Serialize for ConsequenceVerdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Derivable {
            derivable: bool,
            deduction_depth: Option<usize>,
        }
        #[derive(Serialize)]
        struct NotDerivable {
            derivable: bool,
            #[serde(flatten)]
            certificate: Certificate,
        }
        match self {
            ConsequenceVerdict::Derivable { deduction_depth } => Derivable {
                derivable: true,
                deduction_depth: *deduction_depth,
            }
            .serialize(serializer),
            ConsequenceVerdict::NotDerivable {
                countermodel,
                world,
            } => NotDerivable {
                derivable: false,
                certificate: Certificate::new(countermodel, world),
            }
            .serialize(serializer),
        }
    }
}

/// Budgeted entry point for every decision procedure.
#[derive(Debug, Clone, Copy, Default)]
pub struct Prover {
    pub config: ProverConfig,
}

impl Prover {
    pub fn new(config: ProverConfig) -> Self {
        Prover { config }
    }

    /// Decides `|- f`.
    pub fn prove(&self, f: &Formula) -> Result<ProverVerdict, ProverError> {
        let mut budget = Budget::new(self.config.max_nodes);
        tableau::prove(f, &mut budget)
    }

    /// Decides `premises |- f` for the global consequence relation.
    pub fn global_consequence(
        &self,
        premises: &[Formula],
        f: &Formula,
    ) -> Result<ConsequenceVerdict, ProverError> {
        consequence::global_consequence(premises, f, &self.config)
    }

    /// The first conclusion derivable from `premises`, if any.
    pub fn derivable_rule(
        &self,
        premises: &[Formula],
        conclusions: &[Formula],
    ) -> Result<Option<Formula>, ProverError> {
        for psi in conclusions {
            if self.global_consequence(premises, psi)?.is_derivable() {
                return Ok(Some(psi.clone()));
            }
        }
        Ok(None)
    }
}

/// [`Prover::prove`] with default budgets.
pub fn prove(f: &Formula) -> Result<ProverVerdict, ProverError> {
    Prover::default().prove(f)
}

/// [`Prover::global_consequence`] with default budgets.
pub fn global_consequence(
    premises: &[Formula],
    f: &Formula,
) -> Result<ConsequenceVerdict, ProverError> {
    Prover::default().global_consequence(premises, f)
}

/// [`Prover::derivable_rule`] with default budgets.
pub fn derivable_rule(
    premises: &[Formula],
    conclusions: &[Formula],
) -> Result<Option<Formula>, ProverError> {
    Prover::default().derivable_rule(premises, conclusions)
}

/// A countdown of work units shared by one call.
#[derive(Debug)]
pub(crate) struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub(crate) fn charge(&mut self, units: u64) -> Result<(), ProverError> {
        self.used = self.used.saturating_add(units);
        if self.used > self.limit {
            Err(ProverError::ResourceLimit {
                resource: Resource::Nodes,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }
}
