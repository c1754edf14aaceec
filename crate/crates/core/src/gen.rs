//! Seeded random formulas, models and trees.
//!
//! Everything is driven by [`ChaCha8Rng`], so a seed reproduces the same
//! instances on every platform.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::kripke::{KripkeModel, TreeModel};
use crate::unification::Substitution;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct FormulaParams {
    /// Atoms are drawn from `p0 .. p(atoms-1)`.
    pub atoms: u32,
    pub max_modal_degree: usize,
    /// Syntax-tree height, counting a leaf as 1.
    pub max_depth: usize,
}

impl Default for FormulaParams {
    fn default() -> Self {
        FormulaParams {
            atoms: 2,
            max_modal_degree: 2,
            max_depth: 5,
        }
    }
}

pub fn formula<R: Rng>(rng: &mut R, params: &FormulaParams) -> Formula {
    build(
        rng,
        params.atoms.max(1),
        params.max_modal_degree,
        params.max_depth.max(1),
    )
}

fn build<R: Rng>(rng: &mut R, atoms: u32, md: usize, depth: usize) -> Formula {
    if depth == 1 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::Atom(rng.gen_range(0..atoms)),
        };
    }
    let sub = |rng: &mut R, md| build(rng, atoms, md, depth - 1);
    match rng.gen_range(0..7) {
        0 => Formula::not(sub(rng, md)),
        1 | 2 if md > 0 => Formula::boxed(sub(rng, md - 1)),
        1 | 2 => Formula::not(sub(rng, md)),
        3 => Formula::and(sub(rng, md), sub(rng, md)),
        4 => Formula::or(sub(rng, md), sub(rng, md)),
        5 => Formula::implies(sub(rng, md), sub(rng, md)),
        _ => Formula::iff(sub(rng, md), sub(rng, md)),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ModelParams {
    pub max_worlds: usize,
    pub edge_probability: f64,
    pub atoms: u32,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            max_worlds: 8,
            edge_probability: 0.3,
            atoms: 3,
        }
    }
}

/// A model on worlds `x0 .. x(k-1)` with `1 <= k <= max_worlds`.
pub fn model<R: Rng>(rng: &mut R, params: &ModelParams) -> KripkeModel {
    let n = rng.gen_range(1..=params.max_worlds.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(params.edge_probability) {
                edges.push((a, b));
            }
        }
    }
    let val = (0..n).map(|_| random_atoms(rng, params.atoms)).collect();
    KripkeModel::from_indexed(names, edges, val).expect("fresh names")
}

/// A tree on worlds `n0 .. n(k-1)` rooted at `n0`, each world attached to a
/// uniformly chosen earlier one.
pub fn tree<R: Rng>(rng: &mut R, max_worlds: usize, atoms: u32) -> TreeModel {
    let n = rng.gen_range(1..=max_worlds.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let edges = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    let val = (0..n).map(|_| random_atoms(rng, atoms)).collect();
    let m = KripkeModel::from_indexed(names, edges, val).expect("fresh names");
    TreeModel::new(m, "n0").expect("parent pointers form a tree")
}

/// Binds every atom below `params.atoms` to a random formula.
pub fn substitution<R: Rng>(rng: &mut R, params: &FormulaParams) -> Substitution {
    Substitution::new((0..params.atoms.max(1)).map(|a| (a, formula(rng, params))))
}

fn random_atoms<R: Rng>(rng: &mut R, atoms: u32) -> BTreeSet<u32> {
    (0..atoms).filter(|_| rng.gen_bool(0.5)).collect()
}
