//! Hash-consed negation normal form.

use std::collections::HashMap;

use crate::formula::Formula;

pub(crate) type Id = u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Node {
    True,
    False,
    Lit(u32, bool),
    And(Id, Id),
    Or(Id, Id),
    Box(Id),
    Dia(Id),
}

#[derive(Default, Debug)]
pub(crate) struct Nnf {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    negation: HashMap<Id, Id>,
}

impl Nnf {
    pub(crate) fn node(&self, id: Id) -> Node {
        self.nodes[id as usize]
    }

    pub(crate) fn find(&self, node: Node) -> Option<Id> {
        self.index.get(&node).copied()
    }

    fn intern(&mut self, node: Node) -> Id {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    fn and(&mut self, a: Id, b: Id) -> Id {
        match (self.node(a), self.node(b)) {
            (Node::False, _) | (_, Node::False) => self.intern(Node::False),
            (Node::True, _) => b,
            (_, Node::True) => a,
            _ if a == b => a,
            _ => self.intern(Node::And(a.min(b), a.max(b))),
        }
    }

    fn or(&mut self, a: Id, b: Id) -> Id {
        match (self.node(a), self.node(b)) {
            (Node::True, _) | (_, Node::True) => self.intern(Node::True),
            (Node::False, _) => b,
            (_, Node::False) => a,
            _ if a == b => a,
            _ => self.intern(Node::Or(a.min(b), a.max(b))),
        }
    }

    /// NNF of `f` (when `positive`) or of `~f`.
    pub(crate) fn convert(&mut self, f: &Formula, positive: bool) -> Id {
        match f {
            Formula::Atom(i) => self.intern(Node::Lit(*i, positive)),
            Formula::Top => self.intern(if positive { Node::True } else { Node::False }),
            Formula::Bottom => self.intern(if positive { Node::False } else { Node::True }),
            Formula::Not(a) => self.convert(a, !positive),
            Formula::And(a, b) | Formula::Or(a, b) => {
                let x = self.convert(a, positive);
                let y = self.convert(b, positive);
                if matches!(f, Formula::And(..)) == positive {
                    self.and(x, y)
                } else {
                    self.or(x, y)
                }
            }
            Formula::Implies(a, b) => {
                let x = self.convert(a, !positive);
                let y = self.convert(b, positive);
                if positive {
                    self.or(x, y)
                } else {
                    self.and(x, y)
                }
            }
            Formula::Iff(a, b) => {
                let ap = self.convert(a, true);
                let an = self.convert(a, false);
                let bp = self.convert(b, positive);
                let bn = self.convert(b, !positive);
                let both = self.and(ap, bp);
                let neither = self.and(an, bn);
                self.or(both, neither)
            }
            Formula::Box(a) => {
                let x = self.convert(a, positive);
                self.intern(if positive { Node::Box(x) } else { Node::Dia(x) })
            }
        }
    }

    /// NNF of the negation of an interned node.
    pub(crate) fn negate(&mut self, id: Id) -> Id {
        if let Some(&n) = self.negation.get(&id) {
            return n;
        }
        let n = match self.node(id) {
            Node::True => self.intern(Node::False),
            Node::False => self.intern(Node::True),
            Node::Lit(a, pol) => self.intern(Node::Lit(a, !pol)),
            Node::And(a, b) => {
                let (x, y) = (self.negate(a), self.negate(b));
                self.or(x, y)
            }
            Node::Or(a, b) => {
                let (x, y) = (self.negate(a), self.negate(b));
                self.and(x, y)
            }
            Node::Box(a) => {
                let x = self.negate(a);
                self.intern(Node::Dia(x))
            }
            Node::Dia(a) => {
                let x = self.negate(a);
                self.intern(Node::Box(x))
            }
        };
        self.negation.insert(id, n);
        self.negation.insert(n, id);
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn conversion_shares_and_simplifies() {
        let mut nnf = Nnf::default();
        let a = nnf.convert(&parse("~(p0 -> [] p0)").unwrap(), true);
        let b = nnf.convert(&parse("p0 & <> ~p0").unwrap(), true);
        assert_eq!(a, b);
        let t = nnf.convert(&parse("p0 | true").unwrap(), true);
        assert_eq!(nnf.node(t), Node::True);
        let neg = nnf.negate(a);
        assert_eq!(neg, nnf.convert(&parse("p0 -> [] p0").unwrap(), true));
        assert_eq!(nnf.negate(neg), a);
    }
}
