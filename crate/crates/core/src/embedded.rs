//! A marked subgraph of a host: either a plain multigraph (planar mode, where
//! face counts follow from Euler's formula) or a rotation map (surface mode).

use crate::error::{Error, Result};
use crate::graph::{islands, Edge, Multigraph, VertexSubset};
use crate::surface::RotationMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Host {
    Planar(Multigraph),
    Surface(RotationMap),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    host: Host,
    vertices: VertexSubset,
    edges: Vec<bool>,
}

impl EmbeddedGraph {
    /// Planar-mode graph with everything marked.
    pub fn planar(g: Multigraph) -> Self {
        let vertices = VertexSubset::full(g.vertex_count());
        let edges = vec![true; g.edge_count()];
        EmbeddedGraph {
            host: Host::Planar(g),
            vertices,
            edges,
        }
    }

    /// Surface-mode graph with the whole host marked.
    pub fn surface(m: RotationMap) -> Self {
        let vertices = VertexSubset::full(m.graph().vertex_count());
        let edges = vec![true; m.graph().edge_count()];
        EmbeddedGraph {
            host: Host::Surface(m),
            vertices,
            edges,
        }
    }

    /// Marks the given host vertices and host edge ids (by position).
    pub fn with_marks(host: Host, vertices: VertexSubset, edges: &[usize]) -> Result<Self> {
        let g = host_graph(&host);
        let n = g.vertex_count();
        if vertices.universe() != n {
            if let Some(v) = vertices.iter().find(|&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, count: n });
            }
        }
        let vertices = VertexSubset::from_members(n, vertices.iter())?;
        let mut marks = vec![false; g.edge_count()];
        for &i in edges {
            let e = g.edges().get(i).ok_or(Error::EdgeOutOfRange {
                edge: i,
                count: g.edge_count(),
            })?;
            for x in [e.u, e.v] {
                if !vertices.contains(x) {
                    return Err(Error::UnmarkedEndpoint { edge: e.id, vertex: x });
                }
            }
            marks[i] = true;
        }
        Ok(EmbeddedGraph {
            host,
            vertices,
            edges: marks,
        })
    }

    pub fn host(&self) -> &Host {
        &self.host
    }

    pub fn host_graph(&self) -> &Multigraph {
        host_graph(&self.host)
    }

    pub fn map(&self) -> Option<&RotationMap> {
        match &self.host {
            Host::Surface(m) => Some(m),
            Host::Planar(_) => None,
        }
    }

    pub fn is_planar_mode(&self) -> bool {
        matches!(self.host, Host::Planar(_))
    }

    pub fn genus(&self) -> usize {
        self.map().map_or(0, RotationMap::genus)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus() as i64
    }

    pub fn marked_vertex_set(&self) -> &VertexSubset {
        &self.vertices
    }

    pub fn marked_vertices(&self) -> Vec<usize> {
        self.vertices.iter().collect()
    }

    /// Positions (into the host edge list) of marked edges.
    pub fn marked_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i]).collect()
    }

    pub fn is_vertex_marked(&self, v: usize) -> bool {
        self.vertices.contains(v)
    }

    pub fn is_edge_marked(&self, e: usize) -> bool {
        self.edges.get(e).copied().unwrap_or(false)
    }

    /// Number of marked vertices.
    pub fn n(&self) -> usize {
        self.vertices.count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|&&b| b).count()
    }

    /// The marked graph on its own, vertices renumbered `0..n` in increasing
    /// host order. Edge ids are host positions.
    pub fn graph(&self) -> Multigraph {
        let g = self.host_graph();
        let mut index = vec![usize::MAX; g.vertex_count()];
        for (i, v) in self.vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .marked_edges()
            .into_iter()
            .map(|i| {
                let e = &g.edges()[i];
                Edge {
                    id: i,
                    u: index[e.u],
                    v: index[e.v],
                }
            })
            .collect();
        Multigraph::new(self.n(), edges).expect("marked edges have marked endpoints")
    }

    /// Host edge positions of marked edges whose endpoints are both in `s`.
    pub fn induced_edges(&self, s: &VertexSubset) -> Vec<usize> {
        let g = self.host_graph();
        self.marked_edges()
            .into_iter()
            .filter(|&i| s.contains(g.edges()[i].u) && s.contains(g.edges()[i].v))
            .collect()
    }

    /// `Γ − v`: unmarks `v` and every marked edge at it.
    pub fn remove_vertex(&self, v: usize) -> Result<Self> {
        self.remove_vertices(&[v])
    }

    pub fn remove_vertices(&self, vs: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for &v in vs {
            if !self.vertices.contains(v) {
                return Err(Error::UnmarkedVertex(v));
            }
            out.vertices.remove(v);
        }
        let g = host_graph(&out.host);
        for (i, e) in g.edges().iter().enumerate() {
            if !out.vertices.contains(e.u) || !out.vertices.contains(e.v) {
                out.edges[i] = false;
            }
        }
        Ok(out)
    }

    /// `Γ − e`: unmarks edge `e`.
    pub fn remove_edge(&self, e: usize) -> Result<Self> {
        if !self.is_edge_marked(e) {
            return Err(Error::UnmarkedEdge(e));
        }
        let mut out = self.clone();
        out.edges[e] = false;
        Ok(out)
    }

    /// `f_σ` of the subgraph of Γ induced on `s`, summed island by island.
    pub fn face_count(&self, s: &VertexSubset) -> Result<usize> {
        if let Some(v) = s.iter().find(|&v| !self.vertices.contains(v)) {
            return Err(Error::UnmarkedVertex(v));
        }
        let g = self.host_graph();
        let edges = self.induced_edges(s);
        let local: Vec<usize> = s.iter().collect();
        let mut index = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in local.iter().enumerate() {
            index[v] = i;
        }
        let sub = Multigraph::new(
            local.len(),
            edges
                .iter()
                .map(|&i| Edge {
                    id: i,
                    u: index[g.edges()[i].u],
                    v: index[g.edges()[i].v],
                })
                .collect(),
        )?;
        let mut total = 0;
        for island in islands(&sub).islands {
            match &self.host {
                Host::Planar(_) => {
                    total += island.edges.len() + 2 - island.vertices.count();
                }
                Host::Surface(m) => {
                    let vs = VertexSubset::from_members(
                        g.vertex_count(),
                        island.vertices.iter().map(|i| local[i]),
                    )?;
                    total += crate::surface::complement_components(m, &vs, &island.edges)?;
                }
            }
        }
        Ok(total)
    }
}

fn host_graph(host: &Host) -> &Multigraph {
    match host {
        Host::Planar(g) => g,
        Host::Surface(m) => m.graph(),
    }
}
