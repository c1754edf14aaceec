//! Tableau for K-satisfiability of NNF labels.
//!
//! A label is saturated under the propositional rules (branching on
//! disjunctions with `x | (~x & y)`), then every diamond `<>c` gets its own
//! successor labelled `c` plus the bodies of all boxes. Modal depth drops at
//! each successor, so the search terminates, and an open branch reads off as
//! a finite irreflexive intransitive tree.

use std::collections::{BTreeSet, HashSet};

use super::nnf::{Id, Nnf, Node};
use super::{Budget, ProverError, ProverVerdict};
use crate::formula::Formula;
use crate::kripke::{KripkeModel, TreeModel};

/// An open branch: atoms true at the world and one child per diamond.
#[derive(Debug, Clone)]
pub(crate) struct Witness {
    atoms: BTreeSet<u32>,
    children: Vec<Witness>,
}

struct Search<'a> {
    nnf: &'a mut Nnf,
    budget: &'a mut Budget,
    unsat: HashSet<Vec<Id>>,
}

impl Search<'_> {
    fn world(&mut self, mut label: Vec<Id>) -> Result<Option<Witness>, ProverError> {
        label.sort_unstable();
        label.dedup();
        if self.unsat.contains(&label) {
            return Ok(None);
        }
        self.budget.charge(1)?;
        let result = self.saturate(BTreeSet::new(), label.clone(), Vec::new())?;
        if result.is_none() {
            self.unsat.insert(label);
        }
        Ok(result)
    }

    fn saturate(
        &mut self,
        mut seen: BTreeSet<Id>,
        mut pending: Vec<Id>,
        mut disjunctions: Vec<Id>,
    ) -> Result<Option<Witness>, ProverError> {
        while let Some(id) = pending.pop() {
            self.budget.charge(1)?;
            if !seen.insert(id) {
                continue;
            }
            match self.nnf.node(id) {
                Node::True | Node::Box(_) | Node::Dia(_) => {}
                Node::False => return Ok(None),
                Node::Lit(a, pol) => {
                    if let Some(neg) = self.nnf.find(Node::Lit(a, !pol)) {
                        if seen.contains(&neg) {
                            return Ok(None);
                        }
                    }
                }
                Node::And(x, y) => {
                    pending.push(y);
                    pending.push(x);
                }
                Node::Or(..) => disjunctions.push(id),
            }
        }

        while let Some(d) = disjunctions.pop() {
            let Node::Or(x, y) = self.nnf.node(d) else {
                unreachable!("only disjunctions are queued")
            };
            if seen.contains(&x) || seen.contains(&y) {
                continue;
            }
            if let Some(w) = self.saturate(seen.clone(), vec![x], disjunctions.clone())? {
                return Ok(Some(w));
            }
            let not_x = self.nnf.negate(x);
            return self.saturate(seen, vec![y, not_x], disjunctions);
        }

        let mut boxes = Vec::new();
        let mut diamonds = Vec::new();
        let mut atoms = BTreeSet::new();
        for &id in &seen {
            match self.nnf.node(id) {
                Node::Box(c) => boxes.push(c),
                Node::Dia(c) => diamonds.push(c),
                Node::Lit(a, true) => {
                    atoms.insert(a);
                }
                _ => {}
            }
        }
        let mut children = Vec::with_capacity(diamonds.len());
        for c in diamonds {
            let mut label = boxes.clone();
            label.push(c);
            match self.world(label)? {
                Some(w) => children.push(w),
                None => return Ok(None),
            }
        }
        Ok(Some(Witness { atoms, children }))
    }
}

/// A model of `f` as a tree rooted at `w`, or `None` if `f` is unsatisfiable.
pub(crate) fn satisfy(f: &Formula, budget: &mut Budget) -> Result<Option<TreeModel>, ProverError> {
    let mut nnf = Nnf::default();
    let root = nnf.convert(f, true);
    let mut search = Search {
        nnf: &mut nnf,
        budget,
        unsat: HashSet::new(),
    };
    Ok(search.world(vec![root])?.map(witness_to_tree))
}

pub(crate) fn prove(f: &Formula, budget: &mut Budget) -> Result<ProverVerdict, ProverError> {
    let start = budget.used();
    match satisfy(&Formula::not(f.clone()), budget)? {
        Some(countermodel) => Ok(ProverVerdict::Refuted { countermodel }),
        None => Ok(ProverVerdict::Proved {
            nodes: budget.used() - start,
        }),
    }
}

const ROOT: &str = "w";

fn witness_to_tree(w: Witness) -> TreeModel {
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let mut val = Vec::new();
    let mut stack = vec![(w, ROOT.to_owned(), None::<usize>)];
    while let Some((node, name, parent)) = stack.pop() {
        let me = names.len();
        if let Some(p) = parent {
            edges.push((p, me));
        }
        for (i, child) in node.children.into_iter().enumerate() {
            stack.push((child, format!("{name}.{i}"), Some(me)));
        }
        names.push(name);
        val.push(node.atoms);
    }
    let model = KripkeModel::from_indexed(names, edges, val).expect("witness names are unique");
    TreeModel::new(model, ROOT).expect("witnesses are trees")
}
