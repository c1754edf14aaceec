//! Type elimination for global consequence.
//!
//! A type is a propositionally consistent truth assignment to the
//! subformula closure of `premises ∪ {goal}` that makes every premise true.
//! It is fixed by the values of the atoms and boxes in the closure, so types
//! are enumerated as bitmasks over those. `t -> t'` iff every `[]c` true in
//! `t` has `c` true in `t'`. Types with a false `[]c` and no successor
//! falsifying `c` are deleted until nothing changes. The survivors form a
//! model in which every closure formula is true exactly at the types that
//! contain it.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Budget, ProverConfig, ProverError, Resource};
use crate::formula::{subformula_closure, Formula};
use crate::kripke::KripkeModel;

pub(crate) enum Elimination {
    /// No surviving type falsifies the goal.
    Valid { closure_len: usize },
    /// Generated submodel of the survivors, refuting the goal at `world`.
    Countermodel { model: KripkeModel, world: String },
}

enum Op {
    Base(u32),
    Const(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
}

pub(crate) fn eliminate(
    premises: &[Formula],
    goal: &Formula,
    config: &ProverConfig,
    budget: &mut Budget,
) -> Result<Elimination, ProverError> {
    let closure_set = subformula_closure(premises.iter().chain(std::iter::once(goal)));
    let max_closure = config.max_closure.min(64);
    if closure_set.len() > max_closure {
        return Err(ProverError::ResourceLimit {
            resource: Resource::Closure,
            limit: max_closure as u64,
        });
    }
    let mut closure: Vec<Formula> = closure_set.into_iter().collect();
    closure.sort_by_key(Formula::size);
    let position: HashMap<&Formula, usize> =
        closure.iter().enumerate().map(|(i, f)| (f, i)).collect();

    let mut base = 0u32;
    let mut atoms = Vec::new(); // (closure index, atom)
    let mut boxes = Vec::new(); // (closure index, body index)
    let ops: Vec<Op> = closure
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let pos = |g: &Formula| position[g];
            match f {
                Formula::Atom(a) => {
                    atoms.push((i, *a));
                    base += 1;
                    Op::Base(base - 1)
                }
                Formula::Box(body) => {
                    boxes.push((i, pos(body)));
                    base += 1;
                    Op::Base(base - 1)
                }
                Formula::Top => Op::Const(true),
                Formula::Bottom => Op::Const(false),
                Formula::Not(a) => Op::Not(pos(a)),
                Formula::And(a, b) => Op::And(pos(a), pos(b)),
                Formula::Or(a, b) => Op::Or(pos(a), pos(b)),
                Formula::Implies(a, b) => Op::Implies(pos(a), pos(b)),
                Formula::Iff(a, b) => Op::Iff(pos(a), pos(b)),
            }
        })
        .collect();

    if base >= 63 || (1u64 << base) > config.max_nodes {
        return Err(ProverError::ResourceLimit {
            resource: Resource::Nodes,
            limit: config.max_nodes,
        });
    }

    let premise_mask: u64 = premises
        .iter()
        .map(|p| 1u64 << position[p])
        .fold(0, |a, b| a | b);
    let goal_bit = 1u64 << position[goal];

    let mut types: Vec<u64> = Vec::new();
    for assignment in 0..(1u64 << base) {
        budget.charge(1)?;
        let mut t = 0u64;
        for (i, op) in ops.iter().enumerate() {
            let bit = |j: usize| t >> j & 1 == 1;
            let v = match *op {
                Op::Base(k) => assignment >> k & 1 == 1,
                Op::Const(c) => c,
                Op::Not(a) => !bit(a),
                Op::And(a, b) => bit(a) && bit(b),
                Op::Or(a, b) => bit(a) || bit(b),
                Op::Implies(a, b) => !bit(a) || bit(b),
                Op::Iff(a, b) => bit(a) == bit(b),
            };
            if v {
                t |= 1 << i;
            }
        }
        if t & premise_mask == premise_mask {
            types.push(t);
        }
    }

    // required successor content and unmet demands, per type
    let required = |t: u64| -> u64 {
        boxes
            .iter()
            .filter(|&&(b, _)| t >> b & 1 == 1)
            .fold(0, |acc, &(_, c)| acc | 1 << c)
    };
    let demands = |t: u64| -> u64 {
        boxes
            .iter()
            .filter(|&&(b, _)| t >> b & 1 == 0)
            .fold(0, |acc, &(_, c)| acc | 1 << c)
    };

    let mut alive = types;
    loop {
        let classes: BTreeSet<u64> = alive.iter().map(|&t| required(t)).collect();
        budget.charge(classes.len() as u64 * alive.len() as u64)?;
        // bodies that some successor of each class can falsify
        let falsifiable: HashMap<u64, u64> = classes
            .iter()
            .map(|&r| {
                let m = alive
                    .iter()
                    .filter(|&&s| s & r == r)
                    .fold(0u64, |acc, &s| acc | !s);
                (r, m)
            })
            .collect();
        let before = alive.len();
        alive.retain(|&t| demands(t) & !falsifiable[&required(t)] == 0);
        if alive.len() == before {
            break;
        }
    }

    let Some(witness) = alive.iter().position(|&t| t & goal_bit == 0) else {
        return Ok(Elimination::Valid {
            closure_len: closure.len(),
        });
    };

    // generated submodel from the witness type
    let mut order = vec![witness];
    let mut seen = vec![false; alive.len()];
    seen[witness] = true;
    let mut queue = VecDeque::from([witness]);
    while let Some(a) = queue.pop_front() {
        let r = required(alive[a]);
        for (b, &s) in alive.iter().enumerate() {
            if !seen[b] && s & r == r {
                seen[b] = true;
                order.push(b);
                queue.push_back(b);
            }
        }
    }
    let names: Vec<String> = (0..order.len()).map(|i| format!("t{i}")).collect();
    let mut edges = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        let r = required(alive[a]);
        for (j, &b) in order.iter().enumerate() {
            if alive[b] & r == r {
                edges.push((i, j));
            }
        }
    }
    let val = order
        .iter()
        .map(|&a| {
            atoms
                .iter()
                .filter(|&&(i, _)| alive[a] >> i & 1 == 1)
                .map(|&(_, atom)| atom)
                .collect()
        })
        .collect();
    let model = KripkeModel::from_indexed(names, edges, val).expect("type names are unique");
    let (model, world) = shrink(model, premises, goal, budget)?;
    Ok(Elimination::Countermodel { model, world })
}

/// Largest countermodel handed to [`shrink`].
const SHRINK_LIMIT: usize = 64;

/// Greedily drops worlds while the model still validates every premise and
/// refutes `goal` somewhere.
fn shrink(
    mut model: KripkeModel,
    premises: &[Formula],
    goal: &Formula,
    budget: &mut Budget,
) -> Result<(KripkeModel, String), ProverError> {
    let refutes = |m: &KripkeModel| {
        premises.iter().all(|p| m.globally_valid(p)) && m.refuting_world(goal).is_some()
    };
    if model.len() <= SHRINK_LIMIT {
        let mut i = 0;
        while i < model.len() && model.len() > 1 {
            budget.charge(model.len() as u64)?;
            let keep: BTreeSet<usize> = (0..model.len()).filter(|&j| j != i).collect();
            let smaller = model.restrict_indices(&keep).expect("nonempty");
            if refutes(&smaller) {
                model = smaller;
            } else {
                i += 1;
            }
        }
    }
    let world = model
        .refuting_world(goal)
        .expect("countermodels refute the goal")
        .to_owned();
    Ok((model, world))
}
