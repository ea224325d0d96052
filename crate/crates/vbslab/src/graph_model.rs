//! Graphs of spins joined by valence bonds: validation, incidence matrix,
//! the uniqueness condition, Katsura degeneracy and block dimensions.

use std::collections::{BTreeSet, HashMap};

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Result, VbsError};
use crate::exact_algebra::HalfInt;
use crate::spin_operators::{Bond, HamiltonianSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Number of valence bonds on the edge.
    pub m: u32,
}

/// A connected graph of spins. Vertices are addressed by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    spins: Vec<HalfInt>,
    edges: Vec<Edge>,
    labels: Vec<String>,
}

impl GraphSpec {
    pub fn new(spins: Vec<HalfInt>, edges: Vec<Edge>) -> Result<Self> {
        let labels = (0..spins.len()).map(|i| i.to_string()).collect();
        Self::with_labels(spins, edges, labels)
    }

    pub fn with_labels(spins: Vec<HalfInt>, edges: Vec<Edge>, labels: Vec<String>) -> Result<Self> {
        let n = spins.len();
        if n == 0 {
            return Err(VbsError::Domain("graph has no vertices".into()));
        }
        if labels.len() != n {
            return Err(VbsError::Domain("one label per vertex required".into()));
        }
        if let Some((i, s)) = spins.iter().enumerate().find(|(_, s)| s.twice() < 1) {
            return Err(VbsError::Domain(format!("vertex {i} has spin {s}; need at least 1/2")));
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(VbsError::Domain(format!("edge ({}, {}) out of range", e.u, e.v)));
            }
            if e.u == e.v {
                return Err(VbsError::Domain(format!("self-loop at vertex {}", e.u)));
            }
            if e.m == 0 {
                return Err(VbsError::Domain(format!("edge ({}, {}) has multiplicity 0", e.u, e.v)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(VbsError::Domain(format!("duplicate edge ({}, {})", e.u, e.v)));
            }
        }
        let g = GraphSpec { spins, edges, labels };
        if !g.is_connected() {
            return Err(VbsError::Domain(
                "graph is disconnected; split it into connected components first".into(),
            ));
        }
        Ok(g)
    }

    /// Open chain `0 - 1 - ... - n-1`.
    pub fn chain(spins: Vec<HalfInt>, multiplicities: &[u32]) -> Result<Self> {
        if multiplicities.len() + 1 != spins.len() {
            return Err(VbsError::Domain(format!(
                "{} spins need {} multiplicities, got {}",
                spins.len(),
                spins.len().saturating_sub(1),
                multiplicities.len()
            )));
        }
        let edges = multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| Edge { u: i, v: i + 1, m })
            .collect();
        Self::new(spins, edges)
    }

    /// Basic model: one valence bond per edge and `S = z/2` at every vertex.
    pub fn basic(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut valence = vec![0i64; n];
        for &(u, v) in pairs {
            if u < n {
                valence[u] += 1;
            }
            if v < n {
                valence[v] += 1;
            }
        }
        let spins = valence.into_iter().map(HalfInt::from_twice).collect();
        let edges = pairs.iter().map(|&(u, v)| Edge { u, v, m: 1 }).collect();
        Self::new(spins, edges)
    }

    pub fn spins(&self) -> &[HalfInt] {
        &self.spins
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.spins.len()
    }

    pub fn local_dims(&self) -> Vec<usize> {
        self.spins.iter().map(|s| s.multiplet_dim()).collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.spins.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Hamiltonian with the generalized forbidden-spin set on every edge.
    pub fn hamiltonian_spec(&self) -> Result<HamiltonianSpec> {
        let spec = HamiltonianSpec {
            sites: self.spins.clone(),
            bonds: self.edges.iter().map(|e| Bond::new(e.u, e.v, e.m)).collect(),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Vertex-edge incidence matrix, vertices as rows.
pub fn incidence_matrix(g: &GraphSpec) -> DMatrix<u8> {
    let mut inc = DMatrix::zeros(g.vertex_count(), g.edges.len());
    for (k, e) in g.edges.iter().enumerate() {
        inc[(e.u, k)] = 1;
        inc[(e.v, k)] = 1;
    }
    inc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: usize,
    pub twice_spin: i64,
    /// `Σ_e I_{v,e} M_e` at this vertex.
    pub bond_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub holds: bool,
    pub violations: Vec<Violation>,
}

/// Checks `2S = I · M` vertex by vertex.
pub fn check_uniqueness(g: &GraphSpec) -> UniquenessReport {
    let inc = incidence_matrix(g);
    let violations: Vec<Violation> = (0..g.vertex_count())
        .filter_map(|v| {
            let bond_sum: i64 = g
                .edges
                .iter()
                .enumerate()
                .map(|(k, e)| i64::from(inc[(v, k)]) * i64::from(e.m))
                .sum();
            let twice_spin = g.spins[v].twice();
            (twice_spin != bond_sum).then_some(Violation {
                vertex: v,
                twice_spin,
                bond_sum,
            })
        })
        .collect();
    UniquenessReport {
        holds: violations.is_empty(),
        violations,
    }
}

/// A block `B` of vertices and what the cut looks like from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCut {
    pub block: Vec<usize>,
    /// Block vertices with at least one cut edge.
    pub boundary: Vec<usize>,
    /// Environment vertices with at least one cut edge.
    pub env_boundary: Vec<usize>,
    /// Indices into `g.edges()` of edges with exactly one end in the block.
    pub cut_edges: Vec<usize>,
}

impl BlockCut {
    /// The whole vertex set is accepted as a block with an empty cut.
    pub fn new(g: &GraphSpec, block: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = block.iter().copied().collect();
        if set.is_empty() {
            return Err(VbsError::Domain("block is empty".into()));
        }
        if let Some(&bad) = set.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(VbsError::Domain(format!("block vertex {bad} out of range")));
        }
        let mut boundary = BTreeSet::new();
        let mut env_boundary = BTreeSet::new();
        let mut cut_edges = Vec::new();
        for (k, e) in g.edges.iter().enumerate() {
            match (set.contains(&e.u), set.contains(&e.v)) {
                (true, false) => {
                    boundary.insert(e.u);
                    env_boundary.insert(e.v);
                    cut_edges.push(k);
                }
                (false, true) => {
                    boundary.insert(e.v);
                    env_boundary.insert(e.u);
                    cut_edges.push(k);
                }
                _ => {}
            }
        }
        Ok(BlockCut {
            block: set.into_iter().collect(),
            boundary: boundary.into_iter().collect(),
            env_boundary: env_boundary.into_iter().collect(),
            cut_edges,
        })
    }

    pub fn is_proper(&self, g: &GraphSpec) -> bool {
        self.block.len() < g.vertex_count()
    }
}

/// `Π_{l ∈ ∂B} (Σ_{cut edges at l} M + 1)`.
pub fn katsura_degeneracy(g: &GraphSpec, cut: &BlockCut) -> BigUint {
    let mut cut_sum: HashMap<usize, u64> = HashMap::new();
    for &k in &cut.cut_edges {
        let e = g.edges[k];
        let inside = if cut.block.binary_search(&e.u).is_ok() {
            e.u
        } else {
            e.v
        };
        *cut_sum.entry(inside).or_default() += u64::from(e.m);
    }
    cut.boundary
        .iter()
        .map(|l| BigUint::from(cut_sum[l] + 1))
        .fold(BigUint::one(), |acc, x| acc * x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertCounts {
    /// `Π_{l∈B} (2S_l + 1)`.
    pub dim: BigUint,
    /// Katsura degeneracy of the block Hamiltonian ground space.
    pub deg: BigUint,
    /// `deg <= dim`.
    pub bound_ok: bool,
}

pub fn hilbert_dimensions(g: &GraphSpec, cut: &BlockCut) -> HilbertCounts {
    let dim = cut
        .block
        .iter()
        .map(|&l| BigUint::from(g.spins[l].multiplet_dim()))
        .fold(BigUint::one(), |acc, x| acc * x);
    let deg = katsura_degeneracy(g, cut);
    HilbertCounts {
        bound_ok: deg <= dim,
        dim,
        deg,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Num(i64),
    Text(String),
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexId::Num(n) => write!(f, "{n}"),
            VertexId::Text(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: VertexId,
    pub twice_spin: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: VertexId,
    pub v: VertexId,
    pub m: u32,
}

/// On-disk graph description:
/// `{"vertices":[{"id","twice_spin"}], "edges":[{"u","v","m"}], "block":[ids]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub block: Vec<VertexId>,
}

impl GraphFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| VbsError::Parse(format!("graph JSON: {e}")))
    }

    /// Resolve ids into a validated graph and the block as vertex positions.
    pub fn resolve(&self) -> Result<(GraphSpec, Vec<usize>)> {
        let mut index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.id.to_string(), i).is_some() {
                return Err(VbsError::Parse(format!("duplicate vertex id {}", v.id)));
            }
        }
        let find = |id: &VertexId| {
            index
                .get(&id.to_string())
                .copied()
                .ok_or_else(|| VbsError::Parse(format!("unknown vertex id {id}")))
        };
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    u: find(&e.u)?,
                    v: find(&e.v)?,
                    m: e.m,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let spins = self
            .vertices
            .iter()
            .map(|v| HalfInt::from_twice(v.twice_spin))
            .collect();
        let labels = self.vertices.iter().map(|v| v.id.to_string()).collect();
        let g = GraphSpec::with_labels(spins, edges, labels)?;
        let block = self.block.iter().map(find).collect::<Result<Vec<_>>>()?;
        Ok((g, block))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn spin1_chain(n: usize, boundary_twice: i64) -> GraphSpec {
        let mut spins = vec![h(boundary_twice)];
        spins.extend(std::iter::repeat_n(h(2), n));
        spins.push(h(boundary_twice));
        GraphSpec::chain(spins, &vec![1; n + 1]).unwrap()
    }

    #[test]
    fn incidence_examples() {
        let single = GraphSpec::chain(vec![h(1), h(1)], &[1]).unwrap();
        assert_eq!(incidence_matrix(&single), DMatrix::from_element(2, 1, 1u8));
        let path = GraphSpec::basic(3, &[(0, 1), (1, 2)]).unwrap();
        let inc = incidence_matrix(&path);
        let rows: Vec<u32> = inc.row_iter().map(|r| r.iter().map(|&x| u32::from(x)).sum()).collect();
        assert_eq!(rows, vec![1, 2, 1]);
        assert!(inc
            .column_iter()
            .all(|c| c.iter().map(|&x| u32::from(x)).sum::<u32>() == 2));
        let tri = GraphSpec::basic(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let inc = incidence_matrix(&tri);
        assert_eq!(inc.shape(), (3, 3));
        assert!(inc
            .row_iter()
            .all(|r| r.iter().map(|&x| u32::from(x)).sum::<u32>() == 2));
    }

    #[test]
    fn uniqueness_examples() {
        assert!(check_uniqueness(&spin1_chain(3, 1)).holds);
        let report = check_uniqueness(&spin1_chain(3, 2));
        assert!(!report.holds);
        let bad: Vec<usize> = report.violations.iter().map(|v| v.vertex).collect();
        assert_eq!(bad, vec![0, 4]);
        let tri = GraphSpec::basic(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(check_uniqueness(&tri).holds);
    }

    #[test]
    fn katsura_examples() {
        let g = spin1_chain(5, 1);
        let cut = BlockCut::new(&g, &[2, 3, 4]).unwrap();
        assert_eq!(katsura_degeneracy(&g, &cut), BigUint::from(4u32));
        let counts = hilbert_dimensions(&g, &cut);
        assert_eq!(counts.dim, BigUint::from(27u32));
        assert!(counts.bound_ok);

        // spin-3 chain block: (S+1)^2
        let spin3 = GraphSpec::chain(vec![h(3), h(6), h(6), h(6), h(3)], &[3, 3, 3, 3]).unwrap();
        let cut = BlockCut::new(&spin3, &[1, 2, 3]).unwrap();
        assert_eq!(katsura_degeneracy(&spin3, &cut), BigUint::from(16u32));

        let whole = BlockCut::new(&g, &(0..7).collect::<Vec<_>>()).unwrap();
        assert_eq!(katsura_degeneracy(&g, &whole), BigUint::one());
        assert!(!whole.is_proper(&g));
    }

    #[test]
    fn single_vertex_block() {
        let tri = GraphSpec::basic(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let cut = BlockCut::new(&tri, &[1]).unwrap();
        let counts = hilbert_dimensions(&tri, &cut);
        assert_eq!(counts.dim, BigUint::from(3u32));
        assert_eq!(counts.deg, BigUint::from(3u32));
        assert_eq!(cut.env_boundary, vec![0, 2]);
    }

    #[test]
    fn rejects_bad_graphs() {
        let e = |u, v, m| Edge { u, v, m };
        assert!(GraphSpec::new(vec![h(1), h(1), h(1), h(1)], vec![e(0, 1, 1), e(2, 3, 1)]).is_err());
        assert!(GraphSpec::new(vec![h(2)], vec![e(0, 0, 1)]).is_err());
        assert!(GraphSpec::new(vec![h(1), h(1)], vec![e(0, 1, 0)]).is_err());
        assert!(GraphSpec::new(vec![h(1), h(1)], vec![e(0, 1, 1), e(1, 0, 1)]).is_err());
    }

    #[test]
    fn graph_json_round_trip() {
        let text = r#"{"vertices":[{"id":"a","twice_spin":2},{"id":"b","twice_spin":2},{"id":"c","twice_spin":2}],
            "edges":[{"u":"a","v":"b","m":1},{"u":"b","v":"c","m":1},{"u":"c","v":"a","m":1}],
            "block":["b"]}"#;
        let file = GraphFile::from_json(text).unwrap();
        let (g, block) = file.resolve().unwrap();
        assert_eq!(block, vec![1]);
        assert_eq!(g.labels()[2], "c");
        assert!(check_uniqueness(&g).holds);
        let numeric = r#"{"vertices":[{"id":0,"twice_spin":1},{"id":1,"twice_spin":1}],"edges":[{"u":0,"v":1,"m":1}]}"#;
        let (g, block) = GraphFile::from_json(numeric).unwrap().resolve().unwrap();
        assert!(block.is_empty());
        assert_eq!(g.edges().len(), 1);
        assert!(GraphFile::from_json(r#"{"vertices":[]}"#).is_err());
    }
}
