//! Vertex colorings of marked vertices. Colorings need not be proper.

use std::collections::BTreeMap;

use crate::embedded::EmbeddedGraph;
use crate::error::{Error, Result};

/// Color ids are dense `0..c` and every id is used. Unmarked host vertices
/// carry no color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    of: Vec<Option<usize>>,
    names: Vec<String>,
}

impl Coloring {
    /// Colors the marked vertices of `eg` by name.
    pub fn from_names<S: AsRef<str>>(eg: &EmbeddedGraph, assignment: &[(usize, S)]) -> Result<Self> {
        let mut of = vec![None; eg.host_graph().vertex_count()];
        let mut ids: BTreeMap<String, usize> = BTreeMap::new();
        let mut names = Vec::new();
        for (v, name) in assignment {
            if *v >= of.len() {
                return Err(Error::VertexOutOfRange {
                    vertex: *v,
                    count: of.len(),
                });
            }
            if of[*v].is_some() {
                return Err(Error::InvalidColoring(format!("vertex {v} colored twice")));
            }
            let name = name.as_ref().to_string();
            let id = *ids.entry(name.clone()).or_insert_with(|| {
                names.push(name);
                names.len() - 1
            });
            of[*v] = Some(id);
        }
        let col = Coloring { of, names };
        col.validate(eg)?;
        Ok(col)
    }

    /// Per-host-vertex color ids with their names.
    pub fn from_ids(eg: &EmbeddedGraph, of: Vec<Option<usize>>, names: Vec<String>) -> Result<Self> {
        let col = Coloring { of, names };
        col.validate(eg)?;
        Ok(col)
    }

    /// Every marked vertex gets its own color, named after the vertex.
    pub fn injective(eg: &EmbeddedGraph) -> Self {
        let assignment: Vec<_> = eg.marked_vertices().into_iter().map(|v| (v, v.to_string())).collect();
        Self::from_names(eg, &assignment).expect("injective coloring is valid")
    }

    pub fn constant(eg: &EmbeddedGraph, name: &str) -> Result<Self> {
        let assignment: Vec<_> = eg.marked_vertices().into_iter().map(|v| (v, name)).collect();
        Self::from_names(eg, &assignment)
    }

    pub fn validate(&self, eg: &EmbeddedGraph) -> Result<()> {
        let n = eg.host_graph().vertex_count();
        if self.of.len() != n {
            return Err(Error::InvalidColoring(format!(
                "coloring covers {} vertices, host has {n}",
                self.of.len()
            )));
        }
        let mut used = vec![false; self.names.len()];
        for (v, c) in self.of.iter().enumerate() {
            match (eg.is_vertex_marked(v), c) {
                (true, None) => {
                    return Err(Error::InvalidColoring(format!("marked vertex {v} has no color")))
                }
                (false, Some(_)) => {
                    return Err(Error::InvalidColoring(format!("unmarked vertex {v} is colored")))
                }
                (true, Some(c)) if *c >= used.len() => {
                    return Err(Error::InvalidColoring(format!("vertex {v} has color id {c} out of range")))
                }
                (true, Some(c)) => used[*c] = true,
                (false, None) => {}
            }
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::InvalidColoring(format!("color {:?} is unused", self.names[c])));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = self.names.iter().find(|n| !seen.insert(*n)) {
            return Err(Error::InvalidColoring(format!("color name {dup:?} repeated")));
        }
        Ok(())
    }

    pub fn color_count(&self) -> usize {
        self.names.len()
    }

    pub fn color_of(&self, v: usize) -> Option<usize> {
        self.of.get(v).copied().flatten()
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.of
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, c: usize) -> &str {
        &self.names[c]
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownColor(name.to_string()))
    }

    /// Host vertices of color `c`.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.of.len()).filter(|&v| self.of[v] == Some(c)).collect()
    }

    /// Drops colors from vertices that `eg` no longer marks and re-densifies.
    pub fn restrict(&self, eg: &EmbeddedGraph) -> Self {
        let of: Vec<_> = self
            .of
            .iter()
            .enumerate()
            .map(|(v, c)| c.filter(|_| eg.is_vertex_marked(v)))
            .collect();
        Self::densify(of, &self.names)
    }

    /// Applies `perm` (old id -> new id) to ids and names alike.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let c = self.names.len();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..c).collect::<Vec<_>>() {
            return Err(Error::InvalidColoring("not a permutation of the colors".into()));
        }
        let mut names = vec![String::new(); c];
        for (old, &new) in perm.iter().enumerate() {
            names[new] = self.names[old].clone();
        }
        Ok(Coloring {
            of: self.of.iter().map(|c| c.map(|c| perm[c])).collect(),
            names,
        })
    }

    /// Renames every color with `f`; names must stay distinct.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Self {
        Coloring {
            of: self.of.clone(),
            names: self.names.iter().map(|n| f(n)).collect(),
        }
    }

    fn densify(of: Vec<Option<usize>>, names: &[String]) -> Self {
        let mut used = vec![false; names.len()];
        for &c in of.iter().flatten() {
            used[c] = true;
        }
        let mut remap = vec![usize::MAX; names.len()];
        let mut out_names = Vec::new();
        for c in (0..names.len()).filter(|&c| used[c]) {
            remap[c] = out_names.len();
            out_names.push(names[c].clone());
        }
        Coloring {
            of: of.into_iter().map(|c| c.map(|c| remap[c])).collect(),
            names: out_names,
        }
    }
}

/// Recolors every `c`-colored vertex with `c_prime`.
pub fn merge_colors(col: &Coloring, c: &str, c_prime: &str) -> Result<Coloring> {
    let a = col.id(c)?;
    let b = col.id(c_prime)?;
    if a == b {
        return Err(Error::InvalidColoring("cannot merge a color with itself".into()));
    }
    let of = col.of.iter().map(|x| x.map(|x| if x == a { b } else { x })).collect();
    Ok(Coloring::densify(of, &col.names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    fn path(n: usize) -> EmbeddedGraph {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        EmbeddedGraph::planar(Multigraph::from_pairs(n, &pairs).unwrap())
    }

    #[test]
    fn names_become_dense_ids() {
        let eg = path(3);
        let col = Coloring::from_names(&eg, &[(0, "a"), (1, "b"), (2, "a")]).unwrap();
        assert_eq!(col.color_count(), 2);
        assert_eq!(col.class(col.id("a").unwrap()), vec![0, 2]);
    }

    #[test]
    fn rejects_partial_colorings() {
        let eg = path(3);
        assert!(Coloring::from_names(&eg, &[(0, "a"), (1, "b")]).is_err());
        assert!(Coloring::from_ids(&eg, vec![Some(0), Some(0), Some(0)], vec!["a".into(), "b".into()]).is_err());
        let h = eg.remove_vertex(2).unwrap();
        assert!(Coloring::from_names(&h, &[(0, "a"), (1, "b"), (2, "c")]).is_err());
    }

    #[test]
    fn merge_to_constant() {
        let eg = path(2);
        let col = Coloring::from_names(&eg, &[(0, "a"), (1, "b")]).unwrap();
        let m = merge_colors(&col, "a", "b").unwrap();
        assert_eq!(m.color_count(), 1);
        assert_eq!(m.names(), &["b".to_string()]);
        assert!(matches!(merge_colors(&col, "a", "z"), Err(Error::UnknownColor(_))));
        assert!(merge_colors(&col, "a", "a").is_err());
    }

    #[test]
    fn merge_commutes_with_permutation() {
        let eg = path(4);
        let col = Coloring::from_names(&eg, &[(0, "a"), (1, "b"), (2, "c"), (3, "a")]).unwrap();
        let perm = [2, 0, 1];
        let one = merge_colors(&col, "a", "c").unwrap();
        let two = merge_colors(&col.permute(&perm).unwrap(), "a", "c").unwrap();
        // same partition of vertices and same names per class
        for v in 0..4 {
            assert_eq!(
                one.name(one.color_of(v).unwrap()),
                two.name(two.color_of(v).unwrap())
            );
        }
    }

    #[test]
    fn restrict_drops_vanished_colors() {
        let eg = path(3);
        let col = Coloring::from_names(&eg, &[(0, "a"), (1, "b"), (2, "c")]).unwrap();
        let h = eg.remove_vertex(1).unwrap();
        let r = col.restrict(&h);
        r.validate(&h).unwrap();
        assert_eq!(r.names(), &["a".to_string(), "c".to_string()]);
    }
}
