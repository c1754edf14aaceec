use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{KripkeModel, ModelError, ModelFile, WorldMap, MAX_WORLDS};

/// Prefix given to worlds of the first model by [`graft`].
pub const GRAFT_LEFT: &str = "f:";
/// Prefix given to worlds of the second model by [`graft`].
pub const GRAFT_RIGHT: &str = "g:";

/// A model whose relation is the edge set of a finite directed tree with
/// edges oriented away from `root`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "TreeFile", into = "TreeFile")]
pub struct TreeModel {
    model: KripkeModel,
    root: String,
}

#[derive(Serialize, Deserialize)]
struct TreeFile {
    #[serde(flatten)]
    model: ModelFile,
    root: String,
}

impl TryFrom<TreeFile> for TreeModel {
    type Error = ModelError;

    fn try_from(file: TreeFile) -> Result<Self, ModelError> {
        TreeModel::new(KripkeModel::try_from(file.model)?, &file.root)
    }
}

impl From<TreeModel> for TreeFile {
    fn from(t: TreeModel) -> Self {
        TreeFile {
            model: t.model.to_file(),
            root: t.root,
        }
    }
}

impl TreeModel {
    /// Checks the tree shape: the root has no predecessor, every other world
    /// has exactly one, and everything is reachable from the root.
    pub fn new(model: KripkeModel, root: &str) -> Result<Self, ModelError> {
        let r = model.require(root)?;
        let mut indegree = vec![0usize; model.len()];
        for s in &model.succ {
            for &y in s {
                indegree[y] += 1;
            }
        }
        if indegree[r] != 0 {
            return Err(ModelError::NotATree(format!(
                "root {root:?} has a predecessor"
            )));
        }
        if let Some(w) = (0..model.len()).find(|&w| w != r && indegree[w] != 1) {
            return Err(ModelError::NotATree(format!(
                "world {:?} has {} predecessors",
                model.name(w),
                indegree[w]
            )));
        }
        let dist = model.distances(r);
        if let Some(w) = dist.iter().position(Option::is_none) {
            return Err(ModelError::NotATree(format!(
                "world {:?} is unreachable from the root",
                model.name(w)
            )));
        }
        Ok(TreeModel {
            model,
            root: root.to_owned(),
        })
    }

    pub fn model(&self) -> &KripkeModel {
        &self.model
    }

    pub fn into_model(self) -> KripkeModel {
        self.model
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    /// Distance from the root for every world, indexed like the model.
    pub fn depths(&self) -> Vec<usize> {
        let r = self.model.index_of(&self.root).expect("root is a world");
        self.model
            .distances(r)
            .into_iter()
            .map(|d| d.expect("trees are rooted"))
            .collect()
    }

    /// Length of the longest branch, in edges.
    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serialization is infallible")
    }
}

/// Unravels `m` from `x` into the tree of `R`-paths with at most `depth`
/// edges. A path `x0/x1/.../xk` is named by joining world names with `/`,
/// carries the valuation of its last world, and is sent to that last world
/// by the returned map.
pub fn unravel(
    m: &KripkeModel,
    x: &str,
    depth: usize,
) -> Result<(TreeModel, WorldMap), ModelError> {
    let start = m.require(x)?;
    // (path name, last world)
    let mut paths: Vec<(String, usize)> = vec![(x.to_owned(), start)];
    let mut edges = Vec::new();
    let mut layer = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &p in &layer {
            let last = paths[p].1;
            for &y in m.successors(last) {
                if paths.len() >= MAX_WORLDS {
                    return Err(ModelError::TooLarge);
                }
                let name = format!("{}/{}", paths[p].0, m.name(y));
                edges.push((p, paths.len()));
                next.push(paths.len());
                paths.push((name, y));
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    let map = WorldMap::new(
        paths
            .iter()
            .map(|(name, w)| (name.clone(), m.name(*w).to_owned())),
    );
    let val = paths.iter().map(|(_, w)| m.atoms_at(*w).clone()).collect();
    let names = paths.into_iter().map(|(name, _)| name).collect();
    let model = KripkeModel::from_indexed(names, edges, val)?;
    Ok((TreeModel::new(model, x)?, map))
}

/// Keeps the worlds at distance less than `n` from the root.
pub fn truncate(t: &TreeModel, n: usize) -> Result<TreeModel, ModelError> {
    if n == 0 {
        return Err(ModelError::Empty);
    }
    let keep: BTreeSet<usize> = t
        .depths()
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d < n)
        .map(|(w, _)| w)
        .collect();
    let model = t.model.restrict_indices(&keep)?;
    TreeModel::new(model, &t.root)
}

/// Disjoint union of `f` and `g` plus one edge `from -> to`. Worlds of `f`
/// are renamed with [`GRAFT_LEFT`], worlds of `g` with [`GRAFT_RIGHT`].
pub fn graft(
    f: &KripkeModel,
    g: &KripkeModel,
    from: &str,
    to: &str,
) -> Result<KripkeModel, ModelError> {
    let a = f.require(from)?;
    let b = g.require(to)?;
    let offset = f.len();
    let names = f
        .names
        .iter()
        .map(|n| format!("{GRAFT_LEFT}{n}"))
        .chain(g.names.iter().map(|n| format!("{GRAFT_RIGHT}{n}")))
        .collect();
    let edges = (0..f.len())
        .flat_map(|x| f.succ[x].iter().map(move |&y| (x, y)))
        .chain((0..g.len()).flat_map(|x| g.succ[x].iter().map(move |&y| (x + offset, y + offset))))
        .chain(std::iter::once((a, b + offset)))
        .collect();
    let val = f.val.iter().chain(g.val.iter()).cloned().collect();
    KripkeModel::from_indexed(names, edges, val)
}
