use std::collections::BTreeSet;
use std::thread;

use serde::Serialize;

use super::{SigmaIndex, Substitution, UnificationError};
use crate::formula::Formula;
use crate::kripke::TreeModel;
use crate::prover::{ConsequenceVerdict, Prover, ProverError, ProverVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum UnifierCheck {
    Unifies,
    /// `formula` is the member of the set whose image is refuted.
    Fails {
        formula: Formula,
        countermodel: TreeModel,
    },
}

impl UnifierCheck {
    pub fn unifies(&self) -> bool {
        matches!(self, UnifierCheck::Unifies)
    }
}

pub fn is_unifier(
    prover: &Prover,
    s: &Substitution,
    gamma: &[Formula],
) -> Result<UnifierCheck, ProverError> {
    for phi in gamma {
        if let ProverVerdict::Refuted { countermodel } = prover.prove(&s.apply(phi))? {
            return Ok(UnifierCheck::Fails {
                formula: phi.clone(),
                countermodel,
            });
        }
    }
    Ok(UnifierCheck::Unifies)
}

fn require_unifier(
    prover: &Prover,
    s: &Substitution,
    gamma: &[Formula],
) -> Result<(), UnificationError> {
    match is_unifier(prover, s, gamma)? {
        UnifierCheck::Unifies => Ok(()),
        UnifierCheck::Fails {
            formula,
            countermodel,
        } => Err(UnificationError::NotAUnifier {
            formula,
            countermodel,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "n", rename_all = "snake_case")]
pub enum Margin {
    Provable,
    /// Least `n` with `|- f -> [n]false`.
    ImpliesBoxBot(usize),
}

/// Given `|- f -> []f`, decides whether `|- f` or, for the least such `n`,
/// `|- f -> [n]false`. The search stops at the modal degree of `f`.
pub fn weak_margins(prover: &Prover, f: &Formula) -> Result<Margin, UnificationError> {
    let stable = Formula::implies(f.clone(), Formula::boxed(f.clone()));
    if let ProverVerdict::Refuted { countermodel } = prover.prove(&stable)? {
        return Err(UnificationError::Precondition {
            formula: stable,
            countermodel,
        });
    }
    if prover.prove(f)?.is_proved() {
        return Ok(Margin::Provable);
    }
    let md = f.modal_degree().0;
    for n in 0..=md {
        let goal = Formula::implies(f.clone(), Formula::box_n(n, Formula::Bottom));
        if prover.prove(&goal)?.is_proved() {
            return Ok(Margin::ImpliesBoxBot(n));
        }
    }
    Err(UnificationError::Inconsistent(format!(
        "{f} is stable but neither provable nor bounded by [{md}]false"
    )))
}

/// The `sigma` members that are more general than a unifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominators {
    Top,
    /// Every `sigma(m)` with `m >= n`.
    AtLeast(usize),
}

impl Dominators {
    pub fn min_n(&self) -> Option<usize> {
        match self {
            Dominators::Top => None,
            Dominators::AtLeast(n) => Some(*n),
        }
    }

    pub fn contains(&self, index: SigmaIndex) -> bool {
        match (self, index) {
            (Dominators::Top, SigmaIndex::Top) => true,
            (Dominators::AtLeast(n), SigmaIndex::Finite(m)) => m >= *n,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum UnifierClassification {
    NotUnifier { countermodel: TreeModel },
    Unifier { dominators: Dominators },
}

impl UnifierClassification {
    pub fn dominators(&self) -> Option<Dominators> {
        match self {
            UnifierClassification::Unifier { dominators } => Some(*dominators),
            UnifierClassification::NotUnifier { .. } => None,
        }
    }
}

/// Classifies `s` as a unifier of `p0 -> []p0` by its image of `p0`.
pub fn classify_unifier(
    prover: &Prover,
    s: &Substitution,
) -> Result<UnifierClassification, UnificationError> {
    match weak_margins(prover, &s.image(0)) {
        Ok(Margin::Provable) => Ok(UnifierClassification::Unifier {
            dominators: Dominators::Top,
        }),
        Ok(Margin::ImpliesBoxBot(n)) => Ok(UnifierClassification::Unifier {
            dominators: Dominators::AtLeast(n),
        }),
        Err(UnificationError::Precondition { countermodel, .. }) => {
            Ok(UnifierClassification::NotUnifier { countermodel })
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub claim: &'static str,
    pub formula: Formula,
    pub expect_proved: bool,
    pub passed: bool,
    pub verdict: ProverVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub n: usize,
    pub passed: bool,
    pub checks: Vec<ChainCheck>,
    pub note: &'static str,
}

const CHAIN_NOTE: &str = "finite evidence at one level: sigma(n) is strictly less general \
than sigma(n+1) and incomparable with sigma(top)";

/// Runs the four checks behind `sigma(n) < sigma(n+1)` and the
/// incomparability of `sigma(n)` with `sigma(top)`.
pub fn chain_check(prover: &Prover, n: usize) -> Result<ChainReport, ProverError> {
    let image = |k| Substitution::sigma(SigmaIndex::Finite(k)).image(0);
    let bot = |k| Formula::box_n(k, Formula::Bottom);
    let obligations = [
        (
            "sigma(n)(p0) -> [n+1]false",
            Formula::implies(image(n), bot(n + 1)),
            true,
        ),
        (
            "sigma(n+1)(p0) -> [n]false",
            Formula::implies(image(n + 1), bot(n)),
            false,
        ),
        ("sigma(n)(p0)", image(n), false),
        ("[n]false", bot(n), false),
    ];
    let verdicts: Vec<Result<ProverVerdict, ProverError>> = thread::scope(|scope| {
        let handles: Vec<_> = obligations
            .iter()
            .map(|(_, f, _)| scope.spawn(move || prover.prove(f)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("prover threads do not panic"))
            .collect()
    });
    let mut checks = Vec::with_capacity(4);
    for ((claim, formula, expect_proved), verdict) in obligations.into_iter().zip(verdicts) {
        let verdict = verdict?;
        let passed = match &verdict {
            ProverVerdict::Proved { .. } => expect_proved,
            ProverVerdict::Refuted { countermodel } => {
                !expect_proved
                    && countermodel.model().eval(countermodel.root(), &formula) == Ok(false)
            }
        };
        checks.push(ChainCheck {
            claim,
            formula,
            expect_proved,
            passed,
            verdict,
        });
    }
    Ok(ChainReport {
        n,
        passed: checks.iter().all(|c| c.passed),
        checks,
        note: CHAIN_NOTE,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomCheck {
    pub atom: u32,
    /// `gamma |- p <-> s(p)` for this atom.
    pub goal: Formula,
    pub verdict: ConsequenceVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectivityReport {
    pub projective: bool,
    pub atoms: Vec<AtomCheck>,
}

/// Whether the unifier `s` of `gamma` satisfies `gamma |- q <-> s(q)` for
/// every atom of `gamma` and every atom bound by `s`.
pub fn is_projective(
    prover: &Prover,
    gamma: &[Formula],
    s: &Substitution,
) -> Result<ProjectivityReport, UnificationError> {
    require_unifier(prover, s, gamma)?;
    let mut atoms: BTreeSet<u32> = s.bound_atoms();
    atoms.extend(gamma.iter().flat_map(Formula::atoms));
    let mut checks = Vec::with_capacity(atoms.len());
    for atom in atoms {
        let goal = Formula::iff(Formula::Atom(atom), s.image(atom));
        let verdict = prover.global_consequence(gamma, &goal)?;
        checks.push(AtomCheck {
            atom,
            goal,
            verdict,
        });
    }
    Ok(ProjectivityReport {
        projective: checks.iter().all(|c| c.verdict.is_derivable()),
        atoms: checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessWitness {
    pub probe: Formula,
    pub derivable: bool,
    pub image_provable: bool,
    pub consequence: ConsequenceVerdict,
    pub image: ProverVerdict,
}

/// Probes `p0 -> [k]false` for `k <= probe_bound`, then `p0`, then `extras`,
/// and returns the first `probe` where `gamma |- probe` and `|- s(probe)`
/// disagree.
pub fn exactness_refute(
    prover: &Prover,
    gamma: &[Formula],
    s: &Substitution,
    probe_bound: usize,
    extras: &[Formula],
) -> Result<Option<ExactnessWitness>, UnificationError> {
    require_unifier(prover, s, gamma)?;
    let probes = (0..=probe_bound)
        .map(|k| Formula::implies(Formula::p(), Formula::box_n(k, Formula::Bottom)))
        .chain(std::iter::once(Formula::p()))
        .chain(extras.iter().cloned());
    for probe in probes {
        let consequence = prover.global_consequence(gamma, &probe)?;
        let image = prover.prove(&s.apply(&probe))?;
        if consequence.is_derivable() != image.is_proved() {
            return Ok(Some(ExactnessWitness {
                probe,
                derivable: consequence.is_derivable(),
                image_provable: image.is_proved(),
                consequence,
                image,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConclusionCheck {
    pub conclusion: Formula,
    pub verdict: ConsequenceVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaCheck {
    pub index: SigmaIndex,
    /// First conclusion unified by this member, if any.
    pub unifies: Option<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub derivations: Vec<ConclusionCheck>,
    /// Largest finite index checked.
    pub bound: usize,
    pub sigma: Vec<SigmaCheck>,
}

/// Admissibility of `p0 -> []p0 / delta`, computed twice: as derivability
/// of some conclusion, and as every `sigma(a)` with `a <= bound` or
/// `a = top` unifying some conclusion, where `bound` is one more than the
/// largest modal degree in `delta`. The two must agree.
pub fn margin_rule_admissible(
    prover: &Prover,
    delta: &[Formula],
) -> Result<AdmissibilityReport, UnificationError> {
    if delta.is_empty() {
        return Err(UnificationError::EmptyConclusions);
    }
    let premise = [Formula::implies(Formula::p(), Formula::boxed(Formula::p()))];
    let mut derivations = Vec::with_capacity(delta.len());
    for psi in delta {
        let verdict = prover.global_consequence(&premise, psi)?;
        derivations.push(ConclusionCheck {
            conclusion: psi.clone(),
            verdict,
        });
    }
    let derivable = derivations.iter().any(|c| c.verdict.is_derivable());

    let bound = 1 + delta.iter().map(|f| f.modal_degree().0).max().unwrap_or(0);
    let indices = (0..=bound)
        .map(SigmaIndex::Finite)
        .chain(std::iter::once(SigmaIndex::Top));
    let mut sigma = Vec::with_capacity(bound + 2);
    for index in indices {
        let s = Substitution::sigma(index);
        let mut unifies = None;
        for psi in delta {
            if prover.prove(&s.apply(psi))?.is_proved() {
                unifies = Some(psi.clone());
                break;
            }
        }
        sigma.push(SigmaCheck { index, unifies });
    }
    let stable = sigma.iter().all(|c| c.unifies.is_some());

    if derivable != stable {
        return Err(UnificationError::Inconsistent(format!(
            "derivability says {derivable} but the sigma family says {stable}"
        )));
    }
    Ok(AdmissibilityReport {
        admissible: derivable,
        derivations,
        bound,
        sigma,
    })
}
