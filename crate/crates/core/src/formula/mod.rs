//! Modal-propositional formulas over atoms `p0, p1, ...` with a single box.
//!
//! `Top` and `Bottom` are primitive constants. Diamonds and the iterated
//! boxes are derived: see [`Formula::dia`], [`Formula::box_n`],
//! [`Formula::box_lt`] and [`expand`].

mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use parse::{parse, ParseError, ParseErrorKind};

/// A modal formula. Structural equality is the equality used everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(u32),
    Bottom,
    Top,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
}

/// Maximum nesting depth of boxes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct ModalDegree(pub usize);

impl fmt::Display for ModalDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Derived connectives that [`expand`] unfolds into primitive syntax.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Expansion {
    /// `n`-fold box.
    BoxN,
    /// Conjunction of `[]^i f` for `i < n`; `Top` when `n = 0`.
    BoxLtN,
    /// `~[]^n ~f`.
    DiaN,
    /// `~[] ~f`; ignores `n`.
    Dia,
}

pub fn expand(kind: Expansion, n: usize, f: Formula) -> Formula {
    match kind {
        Expansion::BoxN => Formula::box_n(n, f),
        Expansion::BoxLtN => Formula::box_lt(n, f),
        Expansion::DiaN => Formula::dia_n(n, f),
        Expansion::Dia => Formula::dia(f),
    }
}

impl Formula {
    pub fn atom(index: u32) -> Self {
        Formula::Atom(index)
    }

    /// The distinguished atom `p0`.
    pub fn p() -> Self {
        Formula::Atom(0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    pub fn dia(f: Formula) -> Self {
        Formula::not(Formula::boxed(Formula::not(f)))
    }

    pub fn box_n(n: usize, f: Formula) -> Self {
        (0..n).fold(f, |acc, _| Formula::boxed(acc))
    }

    pub fn dia_n(n: usize, f: Formula) -> Self {
        Formula::not(Formula::box_n(n, Formula::not(f)))
    }

    /// `[]^0 f & []^1 f & ... & []^(n-1) f`, left-nested in ascending order.
    pub fn box_lt(n: usize, f: Formula) -> Self {
        let mut conjuncts = (0..n).map(|i| Formula::box_n(i, f.clone()));
        match conjuncts.next() {
            None => Formula::Top,
            Some(first) => conjuncts.fold(first, Formula::and),
        }
    }

    /// Left-nested conjunction; `Top` for an empty iterator.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(fs: I) -> Self {
        let mut it = fs.into_iter();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    pub fn modal_degree(&self) -> ModalDegree {
        ModalDegree(self.md())
    }

    fn md(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => 0,
            Formula::Not(a) => a.md(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.md().max(b.md()),
            Formula::Box(a) => 1 + a.md(),
        }
    }

    /// Height of the syntax tree, counting a leaf as 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => 1,
            Formula::Not(a) | Formula::Box(a) => 1 + a.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => 1,
            Formula::Not(a) | Formula::Box(a) => 1 + a.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => vec![],
            Formula::Not(a) | Formula::Box(a) => vec![a],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                vec![a, b]
            }
        }
    }

    /// Atom indices occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        if let Formula::Atom(i) = self {
            out.insert(*i);
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Replaces every atom `i` by `f(i)`.
    pub fn map_atoms<F: Fn(u32) -> Formula + Copy>(&self, f: F) -> Formula {
        let bin = |a: &Formula, b: &Formula| (Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f)));
        match self {
            Formula::Atom(i) => f(*i),
            Formula::Bottom => Formula::Bottom,
            Formula::Top => Formula::Top,
            Formula::Not(a) => Formula::Not(Box::new(a.map_atoms(f))),
            Formula::Box(a) => Formula::Box(Box::new(a.map_atoms(f))),
            Formula::And(a, b) => {
                let (a, b) = bin(a, b);
                Formula::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Or(a, b)
            }
            Formula::Implies(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Implies(a, b)
            }
            Formula::Iff(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Iff(a, b)
            }
        }
    }
}

/// Smallest set containing `fs` that is closed under subformulas and under
/// single negation (`~c` is added for every member `c` that is not itself a
/// negation).
pub fn subformula_closure<'a, I>(fs: I) -> BTreeSet<Formula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut out = BTreeSet::new();
    let mut stack: Vec<&Formula> = fs.into_iter().collect();
    while let Some(f) = stack.pop() {
        if out.insert(f.clone()) {
            stack.extend(f.children());
        }
    }
    let negations: Vec<Formula> = out
        .iter()
        .filter(|f| !matches!(f, Formula::Not(_)))
        .map(|f| Formula::not(f.clone()))
        .collect();
    out.extend(negations);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_formula(f, self)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p0() -> Formula {
        Formula::p()
    }

    #[test]
    fn modal_degree_examples() {
        assert_eq!(p0().modal_degree(), ModalDegree(0));
        assert_eq!(parse("p0 -> [] p0").unwrap().modal_degree(), ModalDegree(1));
        assert_eq!(
            parse("p0 & []p0 & [2]false").unwrap().modal_degree(),
            ModalDegree(2)
        );
        assert_eq!(Formula::Top.modal_degree(), ModalDegree(0));
        assert_eq!(Formula::Bottom.modal_degree(), ModalDegree(0));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(Expansion::BoxLtN, 0, p0()), Formula::Top);
        assert_eq!(expand(Expansion::BoxN, 0, p0()), p0());
        assert_eq!(
            expand(Expansion::BoxLtN, 2, p0()),
            Formula::and(p0(), Formula::boxed(p0()))
        );
        assert_eq!(
            expand(Expansion::BoxLtN, 3, p0()),
            Formula::and(
                Formula::and(p0(), Formula::boxed(p0())),
                Formula::box_n(2, p0())
            )
        );
        assert_eq!(
            expand(Expansion::Dia, 7, p0()),
            Formula::not(Formula::boxed(Formula::not(p0())))
        );
        assert_eq!(
            expand(Expansion::DiaN, 2, p0()),
            Formula::not(Formula::box_n(2, Formula::not(p0())))
        );
    }

    #[test]
    fn box_n_adds_to_degree() {
        let f = parse("p1 | [] (p0 -> <>p1)").unwrap();
        for n in 0..=6 {
            assert_eq!(Formula::box_n(n, f.clone()).modal_degree().0, n + 2);
        }
    }

    #[test]
    fn closure_examples() {
        let set =
            |fs: &[&str]| -> BTreeSet<Formula> { fs.iter().map(|s| parse(s).unwrap()).collect() };

        assert_eq!(
            subformula_closure(&[parse("[] p0").unwrap()]),
            set(&["[] p0", "p0", "~[] p0", "~p0"])
        );
        assert_eq!(
            subformula_closure(&[Formula::Bottom]),
            set(&["false", "~false"])
        );
        assert_eq!(
            subformula_closure(&[parse("p0 -> [] p0").unwrap()]),
            set(&[
                "p0 -> [] p0",
                "~(p0 -> [] p0)",
                "p0",
                "~p0",
                "[] p0",
                "~[] p0"
            ])
        );
        // a negation in the input does not get doubled
        assert_eq!(
            subformula_closure(&[parse("~p0").unwrap()]),
            set(&["~p0", "p0"])
        );
    }

    #[test]
    fn closure_idempotent_and_monotone() {
        let samples = ["p0 -> [] p0", "[2] false & ~p1", "<>p0 <-> [<3] p1", "true"];
        let mut acc: Vec<Formula> = Vec::new();
        let mut prev = BTreeSet::new();
        for s in samples {
            acc.push(parse(s).unwrap());
            let c = subformula_closure(&acc);
            assert_eq!(subformula_closure(&c), c);
            assert!(prev.is_subset(&c));
            prev = c;
        }
    }

    #[test]
    fn map_atoms_is_homomorphic() {
        let f = parse("p0 -> [] (p1 & p0)").unwrap();
        let g = f.map_atoms(|i| {
            if i == 0 {
                Formula::Top
            } else {
                Formula::atom(i)
            }
        });
        assert_eq!(g, parse("true -> [] (p1 & true)").unwrap());
    }
}
