//! Shared inputs for the criterion benchmarks.

use kmodal_core::{Formula, SigmaIndex, Substitution};

/// `sigma_n(p0) -> [] sigma_n(p0)`, the unifier check for `p0 -> [] p0`.
pub fn sigma_unifier_goal(n: usize) -> Formula {
    let image = Substitution::sigma(SigmaIndex::Finite(n)).apply(&Formula::p());
    Formula::implies(image.clone(), Formula::boxed(image))
}

/// A K-valid formula whose refutation tree branches at every level.
pub fn branching_theorem(depth: usize) -> Formula {
    let p = Formula::atom(0);
    let q = Formula::atom(1);
    let base = Formula::or(Formula::dia(p.clone()), Formula::dia(q.clone()));
    let goal = Formula::dia(Formula::or(p, q));
    (0..depth).fold(Formula::iff(base, goal), |f, _| Formula::boxed(f))
}
