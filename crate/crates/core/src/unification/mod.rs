//! Substitutions and the unifiers of `p0 -> [] p0`.
//!
//! The family `sigma(n)` sends `p0` to `[<n]p0 & [n]false` and `sigma(Top)`
//! sends it to `true`; both leave every other atom alone. Every unifier of
//! `p0 -> [] p0` is less general than one of them, which is what
//! [`classify_unifier`] computes through the weak rule of margins.

mod analysis;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::formula::{self, Formula, ParseError};
use crate::kripke::TreeModel;
use crate::prover::{Prover, ProverError};

pub use analysis::{
    chain_check, classify_unifier, exactness_refute, is_projective, is_unifier,
    margin_rule_admissible, weak_margins, AdmissibilityReport, AtomCheck, ChainCheck, ChainReport,
    ConclusionCheck, Dominators, ExactnessWitness, Margin, ProjectivityReport, SigmaCheck,
    UnifierCheck, UnifierClassification,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnificationError {
    #[error(transparent)]
    Prover(#[from] ProverError),
    #[error("substitution syntax: {0}")]
    Syntax(String),
    #[error("formula {formula} is not unified")]
    NotAUnifier {
        formula: Formula,
        countermodel: TreeModel,
    },
    #[error("precondition fails: {formula} is not provable")]
    Precondition {
        formula: Formula,
        countermodel: TreeModel,
    },
    #[error("conclusion set is empty")]
    EmptyConclusions,
    /// A theorem-backed invariant failed; indicates a prover bug.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl From<ParseError> for UnificationError {
    fn from(e: ParseError) -> Self {
        UnificationError::Syntax(e.to_string())
    }
}

/// Index of a member of the `sigma` family.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum SigmaIndex {
    Finite(usize),
    Top,
}

impl fmt::Display for SigmaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaIndex::Finite(n) => n.fmt(f),
            SigmaIndex::Top => f.write_str("top"),
        }
    }
}

impl FromStr for SigmaIndex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "top" | "T" => Ok(SigmaIndex::Top),
            _ => s
                .parse()
                .map(SigmaIndex::Finite)
                .map_err(|_| format!("expected a natural number or 'top', got {s:?}")),
        }
    }
}

impl Serialize for SigmaIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            SigmaIndex::Finite(n) => serializer.serialize_u64(*n as u64),
            SigmaIndex::Top => serializer.serialize_str("top"),
        }
    }
}

/// Finitely many bindings `atom -> formula`; unbound atoms map to
/// themselves.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Substitution {
    bindings: BTreeMap<u32, Formula>,
}

impl Substitution {
    pub fn identity() -> Self {
        Substitution::default()
    }

    pub fn new<I: IntoIterator<Item = (u32, Formula)>>(bindings: I) -> Self {
        Substitution {
            bindings: bindings.into_iter().collect(),
        }
    }

    pub fn single(atom: u32, image: Formula) -> Self {
        Substitution::new([(atom, image)])
    }

    /// `sigma(n)(p0) = [<n]p0 & [n]false`, `sigma(Top)(p0) = true`.
    pub fn sigma(index: SigmaIndex) -> Self {
        let image = match index {
            SigmaIndex::Finite(n) => Formula::and(
                Formula::box_lt(n, Formula::p()),
                Formula::box_n(n, Formula::Bottom),
            ),
            SigmaIndex::Top => Formula::Top,
        };
        Substitution::single(0, image)
    }

    pub fn bindings(&self) -> &BTreeMap<u32, Formula> {
        &self.bindings
    }

    pub fn bound_atoms(&self) -> BTreeSet<u32> {
        self.bindings.keys().copied().collect()
    }

    /// Image of a single atom.
    pub fn image(&self, atom: u32) -> Formula {
        self.bindings
            .get(&atom)
            .cloned()
            .unwrap_or(Formula::Atom(atom))
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        f.map_atoms(|i| self.image(i))
    }

    /// The substitution `q -> self(other(q))`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let atoms = self.bound_atoms().into_iter().chain(other.bound_atoms());
        Substitution::new(atoms.map(|q| (q, self.apply(&other.image(q)))))
    }

    /// Keeps only the binding of `p0`.
    pub fn restrict_to_p(&self) -> Substitution {
        Substitution::single(0, self.image(0))
    }

    /// `|- self(q) <-> other(q)` for every checked atom. `atoms` defaults to
    /// the atoms bound by either side.
    pub fn equiv(
        &self,
        other: &Substitution,
        atoms: Option<&BTreeSet<u32>>,
        prover: &Prover,
    ) -> Result<bool, ProverError> {
        let default: BTreeSet<u32>;
        let atoms = match atoms {
            Some(a) => a,
            None => {
                default = self
                    .bound_atoms()
                    .union(&other.bound_atoms())
                    .copied()
                    .collect();
                &default
            }
        };
        for &q in atoms {
            let goal = Formula::iff(self.image(q), other.image(q));
            if !prover.prove(&goal)?.is_proved() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (atom, image) in &self.bindings {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            write!(f, "p{atom} := {image}")?;
        }
        Ok(())
    }
}

/// Parses `p0 := (p0 & [1] false); p2 := true`. Blank input is the
/// identity.
impl FromStr for Substitution {
    type Err = UnificationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut bindings = BTreeMap::new();
        for part in text.split(';') {
            if part.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = part
                .split_once(":=")
                .ok_or_else(|| UnificationError::Syntax(format!("missing ':=' in {part:?}")))?;
            let atom = match formula::parse(lhs)? {
                Formula::Atom(i) => i,
                other => {
                    return Err(UnificationError::Syntax(format!(
                        "left-hand side {other} is not an atom"
                    )))
                }
            };
            if bindings.insert(atom, formula::parse(rhs)?).is_some() {
                return Err(UnificationError::Syntax(format!("p{atom} is bound twice")));
            }
        }
        Ok(Substitution { bindings })
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A multiple-conclusion rule `premises / conclusions`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Rule {
    pub premises: Vec<Formula>,
    pub conclusions: Vec<Formula>,
}

impl Rule {
    /// Some conclusion follows from the premises under global consequence.
    pub fn derivable(&self, prover: &Prover) -> Result<Option<Formula>, ProverError> {
        prover.derivable_rule(&self.premises, &self.conclusions)
    }

    /// Whether `s` unifies the premises but none of the conclusions, i.e.
    /// witnesses that the rule is not admissible.
    pub fn refuted_by(&self, s: &Substitution, prover: &Prover) -> Result<bool, ProverError> {
        if !is_unifier(prover, s, &self.premises)?.unifies() {
            return Ok(false);
        }
        for c in &self.conclusions {
            if is_unifier(prover, s, std::slice::from_ref(c))?.unifies() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
