use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::KripkeModel;

/// A map from world names of a source model to world names of a target.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WorldMap {
    mapping: BTreeMap<String, String>,
}

impl WorldMap {
    pub fn new<I: IntoIterator<Item = (String, String)>>(pairs: I) -> Self {
        WorldMap {
            mapping: pairs.into_iter().collect(),
        }
    }

    pub fn identity(m: &KripkeModel) -> Self {
        WorldMap::new(m.worlds().map(|w| (w.to_owned(), w.to_owned())))
    }

    pub fn get(&self, world: &str) -> Option<&str> {
        self.mapping.get(world).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.mapping.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }
}

/// A reason why a map fails to be a p-morphism.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum PMorphismDefect {
    /// A source world has no image.
    Unmapped { world: String },
    /// An image is not a world of the target.
    BadImage { world: String, image: String },
    /// `x R y` but not `f(x) S f(y)`.
    Forth { from: String, to: String },
    /// `f(x) S z` with no `R`-successor of `x` mapped to `z`.
    Back { world: String, target: String },
    /// `x` and `f(x)` disagree on some atom.
    Atoms { world: String },
}

/// Every violation of the forth, back and atom conditions, in source-world
/// order. Entries in the map for worlds outside `src` are ignored.
pub fn p_morphism_defects(
    map: &WorldMap,
    src: &KripkeModel,
    dst: &KripkeModel,
) -> Vec<PMorphismDefect> {
    let mut defects = Vec::new();
    let mut image = Vec::with_capacity(src.len());
    for w in src.worlds() {
        match map.get(w) {
            None => defects.push(PMorphismDefect::Unmapped { world: w.into() }),
            Some(t) => match dst.index_of(t) {
                None => defects.push(PMorphismDefect::BadImage {
                    world: w.into(),
                    image: t.into(),
                }),
                Some(i) => image.push(i),
            },
        }
    }
    if !defects.is_empty() {
        return defects;
    }
    for x in 0..src.len() {
        let fx = image[x];
        for &y in src.successors(x) {
            if !dst.has_edge(fx, image[y]) {
                defects.push(PMorphismDefect::Forth {
                    from: src.name(x).into(),
                    to: src.name(y).into(),
                });
            }
        }
        for &z in dst.successors(fx) {
            if !src.successors(x).iter().any(|&y| image[y] == z) {
                defects.push(PMorphismDefect::Back {
                    world: src.name(x).into(),
                    target: dst.name(z).into(),
                });
            }
        }
        if src.atoms_at(x) != dst.atoms_at(fx) {
            defects.push(PMorphismDefect::Atoms {
                world: src.name(x).into(),
            });
        }
    }
    defects
}

pub fn is_p_morphism(map: &WorldMap, src: &KripkeModel, dst: &KripkeModel) -> bool {
    p_morphism_defects(map, src, dst).is_empty()
}
