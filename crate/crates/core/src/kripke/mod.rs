//! Finite Kripke models and the constructions used to reason about them.
//!
//! Worlds are named by opaque strings. A model keeps its worlds sorted by
//! name, so two models with the same worlds, edges and valuation compare
//! equal regardless of how they were built.

mod construct;
mod morphism;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;

pub use construct::{graft, truncate, unravel, TreeModel, GRAFT_LEFT, GRAFT_RIGHT};
pub use morphism::{is_p_morphism, p_morphism_defects, PMorphismDefect, WorldMap};

/// Upper bound on the number of worlds any construction may produce.
pub const MAX_WORLDS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("duplicate world {0:?}")]
    DuplicateWorld(String),
    #[error("models must have at least one world")]
    Empty,
    #[error("not a finite irreflexive intransitive tree: {0}")]
    NotATree(String),
    #[error("construction would exceed {MAX_WORLDS} worlds")]
    TooLarge,
    #[error("invalid model file: {0}")]
    Format(String),
}

/// Whether [`KripkeModel::reach`] returns exactly the `n`-step successors or
/// everything within `n` steps.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reach {
    Exact,
    UpTo,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ModelFile", into = "ModelFile")]
pub struct KripkeModel {
    names: Vec<String>,
    succ: Vec<Vec<usize>>,
    val: Vec<BTreeSet<u32>>,
}

/// On-disk JSON shape of a model.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub val: BTreeMap<String, Vec<u32>>,
}

impl KripkeModel {
    /// Builds a model from world names, edges and true atoms per world.
    /// Worlds missing from `val` make every atom false.
    pub fn new<W, E, V, S, A>(worlds: W, edges: E, val: V) -> Result<Self, ModelError>
    where
        W: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        V: IntoIterator<Item = (S, A)>,
        S: AsRef<str>,
        A: IntoIterator<Item = u32>,
    {
        let names: Vec<String> = worlds.into_iter().map(|s| s.as_ref().to_owned()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.as_str(), i).is_some() {
                return Err(ModelError::DuplicateWorld(n.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| ModelError::UnknownWorld(s.to_owned()))
        };
        let mut indexed_edges = Vec::new();
        for (a, b) in edges {
            indexed_edges.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        let mut valuation = vec![BTreeSet::new(); names.len()];
        for (w, atoms) in val {
            valuation[lookup(w.as_ref())?].extend(atoms);
        }
        Self::from_indexed(names, indexed_edges, valuation)
    }

    /// Builds a model from positional data; `edges` and `val` refer to
    /// positions in `names`.
    pub(crate) fn from_indexed(
        names: Vec<String>,
        edges: Vec<(usize, usize)>,
        val: Vec<BTreeSet<u32>>,
    ) -> Result<Self, ModelError> {
        if names.is_empty() {
            return Err(ModelError::Empty);
        }
        debug_assert_eq!(names.len(), val.len());
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        for pair in order.windows(2) {
            if names[pair[0]] == names[pair[1]] {
                return Err(ModelError::DuplicateWorld(names[pair[0]].clone()));
            }
        }
        let mut rank = vec![0; names.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut succ = vec![Vec::new(); names.len()];
        for (a, b) in edges {
            succ[rank[a]].push(rank[b]);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let mut names: Vec<Option<String>> = names.into_iter().map(Some).collect();
        let mut val: Vec<Option<BTreeSet<u32>>> = val.into_iter().map(Some).collect();
        Ok(KripkeModel {
            names: order.iter().map(|&o| names[o].take().unwrap()).collect(),
            succ,
            val: order.iter().map(|&o| val[o].take().unwrap()).collect(),
        })
    }

    /// Number of worlds.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false; empty models cannot be constructed.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn worlds(&self) -> impl Iterator<Item = &str> + '_ {
        self.names.iter().map(String::as_str)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.succ.iter().enumerate().flat_map(move |(a, bs)| {
            bs.iter()
                .map(move |&b| (self.names[a].as_str(), self.names[b].as_str()))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, world: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(world)).ok()
    }

    fn require(&self, world: &str) -> Result<usize, ModelError> {
        self.index_of(world)
            .ok_or_else(|| ModelError::UnknownWorld(world.to_owned()))
    }

    pub fn contains(&self, world: &str) -> bool {
        self.index_of(world).is_some()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn successors(&self, index: usize) -> &[usize] {
        &self.succ[index]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.succ[from].binary_search(&to).is_ok()
    }

    /// Atoms true at a world, by index.
    pub fn atoms_at(&self, index: usize) -> &BTreeSet<u32> {
        &self.val[index]
    }

    /// Truth value of `f` at the named world.
    pub fn eval(&self, world: &str, f: &Formula) -> Result<bool, ModelError> {
        let w = self.require(world)?;
        Ok(self.truth_set(f)[w])
    }

    /// Truth value of `f` at every world, indexed like [`Self::name`].
    pub fn truth_set(&self, f: &Formula) -> Vec<bool> {
        let n = self.len();
        match f {
            Formula::Atom(i) => self.val.iter().map(|v| v.contains(i)).collect(),
            Formula::Bottom => vec![false; n],
            Formula::Top => vec![true; n],
            Formula::Not(a) => self.truth_set(a).into_iter().map(|b| !b).collect(),
            Formula::And(a, b) => zip_with(self.truth_set(a), self.truth_set(b), |x, y| x && y),
            Formula::Or(a, b) => zip_with(self.truth_set(a), self.truth_set(b), |x, y| x || y),
            Formula::Implies(a, b) => {
                zip_with(self.truth_set(a), self.truth_set(b), |x, y| !x || y)
            }
            Formula::Iff(a, b) => zip_with(self.truth_set(a), self.truth_set(b), |x, y| x == y),
            Formula::Box(a) => {
                let inner = self.truth_set(a);
                self.succ
                    .iter()
                    .map(|s| s.iter().all(|&y| inner[y]))
                    .collect()
            }
        }
    }

    /// True iff `f` holds at every world.
    pub fn globally_valid(&self, f: &Formula) -> bool {
        self.truth_set(f).into_iter().all(|b| b)
    }

    /// First world (by name order) where `f` fails.
    pub fn refuting_world(&self, f: &Formula) -> Option<&str> {
        self.truth_set(f)
            .into_iter()
            .position(|b| !b)
            .map(|i| self.name(i))
    }

    pub(crate) fn reach_indices(&self, x: usize, n: usize, mode: Reach) -> BTreeSet<usize> {
        let mut frontier = BTreeSet::from([x]);
        let mut all = frontier.clone();
        for _ in 0..n {
            let next: BTreeSet<usize> = frontier
                .iter()
                .flat_map(|&w| self.succ[w].iter().copied())
                .collect();
            if mode == Reach::UpTo {
                // worlds already seen have had their successors expanded
                frontier = next.difference(&all).copied().collect();
                all.extend(next);
                if frontier.is_empty() {
                    break;
                }
            } else {
                frontier = next;
            }
        }
        match mode {
            Reach::Exact => frontier,
            Reach::UpTo => all,
        }
    }

    /// `R^n(x)` or `R^{<=n}(x)`, with `R^0(x) = {x}`.
    pub fn reach(&self, x: &str, n: usize, mode: Reach) -> Result<BTreeSet<String>, ModelError> {
        let x = self.require(x)?;
        Ok(self
            .reach_indices(x, n, mode)
            .into_iter()
            .map(|i| self.names[i].clone())
            .collect())
    }

    pub(crate) fn restrict_indices(
        &self,
        keep: &BTreeSet<usize>,
    ) -> Result<KripkeModel, ModelError> {
        let position: HashMap<usize, usize> =
            keep.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let names = keep.iter().map(|&w| self.names[w].clone()).collect();
        let val = keep.iter().map(|&w| self.val[w].clone()).collect();
        let edges = keep
            .iter()
            .flat_map(|&a| {
                self.succ[a]
                    .iter()
                    .filter_map(|b| position.get(b).map(|&pb| (position[&a], pb)))
                    .collect::<Vec<_>>()
            })
            .collect();
        KripkeModel::from_indexed(names, edges, val)
    }

    /// Submodel on `worlds` with the induced relation and valuation.
    pub fn restrict<S: AsRef<str>>(
        &self,
        worlds: impl IntoIterator<Item = S>,
    ) -> Result<KripkeModel, ModelError> {
        let keep = worlds
            .into_iter()
            .map(|w| self.require(w.as_ref()))
            .collect::<Result<BTreeSet<_>, _>>()?;
        self.restrict_indices(&keep)
    }

    /// Same model with every world name prefixed.
    pub fn with_prefix(&self, prefix: &str) -> KripkeModel {
        KripkeModel {
            names: self.names.iter().map(|n| format!("{prefix}{n}")).collect(),
            succ: self.succ.clone(),
            val: self.val.clone(),
        }
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            worlds: self.names.clone(),
            edges: self
                .edges()
                .map(|(a, b)| (a.to_owned(), b.to_owned()))
                .collect(),
            val: self
                .names
                .iter()
                .cloned()
                .zip(self.val.iter().map(|v| v.iter().copied().collect()))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<KripkeModel, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serialization is infallible")
    }

    /// Breadth-first distances from `root`; `None` for unreachable worlds.
    pub(crate) fn distances(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(w) = queue.pop_front() {
            let d = dist[w].unwrap();
            for &y in &self.succ[w] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

fn zip_with(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

impl TryFrom<ModelFile> for KripkeModel {
    type Error = ModelError;

    fn try_from(file: ModelFile) -> Result<Self, Self::Error> {
        KripkeModel::new(
            file.worlds.iter().map(String::as_str),
            file.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            file.val
                .iter()
                .map(|(w, atoms)| (w.as_str(), atoms.iter().copied())),
        )
    }
}

impl From<KripkeModel> for ModelFile {
    fn from(m: KripkeModel) -> Self {
        m.to_file()
    }
}

/// Whether the `n`-step neighborhoods of `x` in both models coincide
/// exactly: same worlds, same edges, same atoms.
pub fn agree_up_to(
    m1: &KripkeModel,
    x: &str,
    m2: &KripkeModel,
    n: usize,
) -> Result<bool, ModelError> {
    let x1 = m1.require(x)?;
    let x2 = m2.require(x)?;
    let n1 = m1.restrict_indices(&m1.reach_indices(x1, n, Reach::UpTo))?;
    let n2 = m2.restrict_indices(&m2.reach_indices(x2, n, Reach::UpTo))?;
    Ok(n1 == n2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    pub(crate) fn chain(names: &[&str], p0_at: &[&str]) -> KripkeModel {
        KripkeModel::new(
            names.iter().copied(),
            names.windows(2).map(|w| (w[0], w[1])),
            p0_at.iter().map(|&w| (w, [0])),
        )
        .unwrap()
    }

    fn single(p0: bool, reflexive: bool) -> KripkeModel {
        let atoms: Vec<u32> = if p0 { vec![0] } else { vec![] };
        let edges = if reflexive { vec![("x", "x")] } else { vec![] };
        KripkeModel::new(["x"], edges, [("x", atoms)]).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert!(single(false, false).eval("x", &f("[] false")).unwrap());
        let m = chain(&["x", "y"], &["x"]);
        assert!(!m.eval("x", &f("p0 -> [] p0")).unwrap());
        assert!(single(true, true).eval("x", &f("p0 -> [] p0")).unwrap());
        assert_eq!(
            m.eval("z", &f("p0")),
            Err(ModelError::UnknownWorld("z".into()))
        );
    }

    #[test]
    fn global_validity_examples() {
        assert!(single(false, false).globally_valid(&f("p0 -> [] p0")));
        let m = chain(&["x", "y"], &["x"]);
        assert!(!m.globally_valid(&f("p0 -> [] p0")));
        assert_eq!(m.refuting_world(&f("p0 -> [] p0")), Some("x"));
        assert!(m.globally_valid(&f("true")));
    }

    #[test]
    fn reach_examples() {
        let m = chain(&["x", "y", "z"], &[]);
        let set = |ws: &[&str]| ws.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(m.reach("y", 0, Reach::Exact).unwrap(), set(&["y"]));
        assert_eq!(m.reach("x", 2, Reach::Exact).unwrap(), set(&["z"]));
        assert_eq!(m.reach("x", 2, Reach::UpTo).unwrap(), set(&["x", "y", "z"]));
        assert_eq!(m.reach("x", 3, Reach::Exact).unwrap(), set(&[]));
        let loopy = single(true, true);
        assert_eq!(loopy.reach("x", 5, Reach::Exact).unwrap(), set(&["x"]));
    }

    #[test]
    fn restrict_examples() {
        let m = chain(&["x", "y", "z"], &["y"]);
        assert_eq!(m.restrict(m.worlds().collect::<Vec<_>>()).unwrap(), m);
        assert_eq!(m.restrict(["x", "y"]).unwrap(), chain(&["x", "y"], &["y"]));
        assert_eq!(
            m.restrict(["x", "w"]),
            Err(ModelError::UnknownWorld("w".into()))
        );
        assert_eq!(m.restrict(Vec::<&str>::new()), Err(ModelError::Empty));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            KripkeModel::new(
                ["x", "x"],
                Vec::<(&str, &str)>::new(),
                Vec::<(&str, [u32; 0])>::new()
            ),
            Err(ModelError::DuplicateWorld("x".into()))
        );
        assert_eq!(
            KripkeModel::new(
                Vec::<&str>::new(),
                Vec::<(&str, &str)>::new(),
                Vec::<(&str, [u32; 0])>::new()
            ),
            Err(ModelError::Empty)
        );
        assert_eq!(
            KripkeModel::new(["x"], [("x", "y")], Vec::<(&str, [u32; 0])>::new()),
            Err(ModelError::UnknownWorld("y".into()))
        );
    }

    #[test]
    fn json_format() {
        let m = KripkeModel::from_json(
            r#"{"worlds": ["x","y"], "edges": [["x","y"]], "val": {"x": [0], "y": []}}"#,
        )
        .unwrap();
        assert_eq!(m, chain(&["x", "y"], &["x"]));
        // absent valuation entries mean all atoms false
        let m2 = KripkeModel::from_json(
            r#"{"worlds": ["x","y"], "edges": [["x","y"]], "val": {"x": [0]}}"#,
        )
        .unwrap();
        assert_eq!(m, m2);
        assert_eq!(KripkeModel::from_json(&m.to_json()).unwrap(), m);
        assert!(matches!(
            KripkeModel::from_json(r#"{"worlds": ["x"], "edges": [["x","q"]]}"#),
            Err(ModelError::Format(_))
        ));
    }

    #[test]
    fn agreement_examples() {
        let m = chain(&["a", "b", "c", "d"], &["a", "c"]);
        for n in 0..5 {
            assert!(agree_up_to(&m, "a", &m, n).unwrap());
        }
        let shorter = chain(&["a", "b", "c"], &["a", "c"]);
        assert!(agree_up_to(&m, "a", &shorter, 2).unwrap());
        assert!(!agree_up_to(&m, "a", &shorter, 3).unwrap());
        assert!(agree_up_to(&m, "q", &shorter, 2).is_err());
    }
}
