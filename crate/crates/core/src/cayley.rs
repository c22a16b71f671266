//! Cayley graphs over the elementary abelian group Z_2^n.
//!
//! Vertices are the integers `0..2^n`. The coordinate vector `(x_1, ..., x_n)` of a
//! vertex is its binary expansion with `x_1` as the most significant bit, so numeric
//! order is lexicographic order and the first half of the vertices has `x_1 = 0`.
//! The group operation is XOR and `u ~ v` iff `u ^ v` is a generator.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use crate::linalg::Matrix;
use crate::limits::HARD_MAX_DIMENSION;
use crate::{Error, Limits, Result};

/// An element of Z_2^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    bits: u64,
    n: u32,
}

impl GroupElement {
    pub fn new(bits: u64, n: u32) -> Result<Self> {
        if n == 0 || n > HARD_MAX_DIMENSION {
            return Err(Error::range(n, 1, HARD_MAX_DIMENSION));
        }
        let order = 1u64 << n;
        if bits >= order {
            return Err(Error::VertexOutOfRange { vertex: bits, order });
        }
        Ok(GroupElement { bits, n })
    }

    pub fn identity(n: u32) -> Result<Self> {
        Self::new(0, n)
    }

    /// The weight-1 vector `e_i` (1-based coordinate index).
    pub fn unit(i: u32, n: u32) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidGenerator(format!("coordinate e_{i} does not exist for n = {n}")));
        }
        Self::new(1u64 << (n - i), n)
    }

    /// Parses a bit string `x_1 x_2 ... x_n`, e.g. `"101"`.
    pub fn parse(text: &str) -> Result<Self> {
        let n = text.len() as u32;
        let bits = u64::from_str_radix(text, 2)
            .map_err(|_| Error::Parse(format!("not a bit string: {text:?}")))?;
        if text.starts_with('+') {
            return Err(Error::Parse(format!("not a bit string: {text:?}")));
        }
        Self::new(bits, n)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn dimension(self) -> u32 {
        self.n
    }

    pub fn is_identity(self) -> bool {
        self.bits == 0
    }

    /// Coordinate `x_i`, 1-based.
    pub fn coordinate(self, i: u32) -> bool {
        assert!(i >= 1 && i <= self.n, "coordinate index out of range");
        (self.bits >> (self.n - i)) & 1 == 1
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Group operation (XOR). Panics on a dimension mismatch.
    pub fn op(self, other: GroupElement) -> GroupElement {
        assert_eq!(self.n, other.n, "group elements of different dimension");
        GroupElement { bits: self.bits ^ other.bits, n: self.n }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.n as usize)
    }
}

/// Generating set of a Cayley graph on Z_2^n.
///
/// Stored sorted. Every element of Z_2^n is its own inverse, so the set is
/// automatically inverse-closed and the graph undirected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: u32,
    elements: Vec<GroupElement>,
}

impl GeneratorSet {
    pub fn new(n: u32, elements: impl IntoIterator<Item = GroupElement>) -> Result<Self> {
        let mut elements: Vec<GroupElement> = elements.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::InvalidGenerator("empty generator set".into()));
        }
        if let Some(bad) = elements.iter().find(|g| g.n != n) {
            return Err(Error::InvalidGenerator(format!(
                "generator {bad} has dimension {}, expected {n}",
                bad.n
            )));
        }
        if elements.iter().any(|g| g.is_identity()) {
            return Err(Error::InvalidGenerator("identity element is not allowed".into()));
        }
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGenerator(format!("duplicate generator {}", w[0])));
        }
        Ok(GeneratorSet { n, elements })
    }

    /// Builds from raw bit patterns.
    pub fn from_bits(n: u32, bits: &[u64]) -> Result<Self> {
        let elements = bits.iter().map(|&b| GroupElement::new(b, n)).collect::<Result<Vec<_>>>()?;
        Self::new(n, elements)
    }

    /// Builds from bit strings such as `["001", "010"]`.
    pub fn from_strs(n: u32, strs: &[&str]) -> Result<Self> {
        let elements = strs.iter().map(|s| GroupElement::parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(n, elements)
    }

    /// The `n` weight-1 vectors.
    pub fn standard_basis(n: u32) -> Result<Self> {
        let elements = (1..=n).map(|i| GroupElement::unit(i, n)).collect::<Result<Vec<_>>>()?;
        Self::new(n, elements)
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Rank of the generators as vectors over GF(2).
    pub fn rank(&self) -> u32 {
        // XOR basis indexed by leading bit.
        let mut basis = [0u64; 64];
        let mut rank = 0;
        for g in &self.elements {
            let mut v = g.bits;
            while v != 0 {
                let lead = 63 - v.leading_zeros() as usize;
                if basis[lead] == 0 {
                    basis[lead] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[lead];
            }
        }
        rank
    }
}

/// True iff the generators span GF(2)^n.
pub fn is_generating(gens: &GeneratorSet) -> bool {
    gens.rank() == gens.n
}

/// Cay(Z_2^n, S). Immutable; adjacency is computed on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    n: u32,
    generators: GeneratorSet,
    masks: Vec<u64>,
}

/// The hypercube Γ_n with the default [`Limits`].
pub fn make_hypercube(n: u32) -> Result<CayleyGraph> {
    make_hypercube_with(n, &Limits::default())
}

pub fn make_hypercube_with(n: u32, limits: &Limits) -> Result<CayleyGraph> {
    Error::check_range(n, 1, limits.max_dimension)?;
    make_cayley_with(n, GeneratorSet::standard_basis(n)?, limits)
}

/// Cay(Z_2^n, gens) with the default [`Limits`].
pub fn make_cayley(n: u32, gens: GeneratorSet) -> Result<CayleyGraph> {
    make_cayley_with(n, gens, &Limits::default())
}

pub fn make_cayley_with(n: u32, gens: GeneratorSet, limits: &Limits) -> Result<CayleyGraph> {
    Error::check_range(n, 1, limits.max_dimension.min(HARD_MAX_DIMENSION))?;
    if gens.n != n {
        return Err(Error::InvalidGenerator(format!(
            "generator set has dimension {}, graph has dimension {n}",
            gens.n
        )));
    }
    let masks = gens.elements.iter().map(|g| g.bits).collect();
    Ok(CayleyGraph { n, generators: gens, masks })
}

impl CayleyGraph {
    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.n
    }

    /// Order as `usize`, for dense-matrix code paths.
    pub fn order(&self) -> usize {
        self.vertex_count() as usize
    }

    pub fn degree(&self) -> usize {
        self.masks.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.vertex_count() * self.degree() as u64 / 2
    }

    /// True when every generator has weight one and all `n` are present.
    pub fn is_hypercube(&self) -> bool {
        self.degree() == self.n as usize && self.masks.iter().all(|m| m.count_ones() == 1)
    }

    pub fn is_connected(&self) -> bool {
        is_generating(&self.generators)
    }

    pub fn contains_vertex(&self, v: u64) -> bool {
        v < self.vertex_count()
    }

    pub fn vertex(&self, v: u64) -> Result<GroupElement> {
        if !self.contains_vertex(v) {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.vertex_count() });
        }
        Ok(GroupElement { bits: v, n: self.n })
    }

    pub fn is_adjacent(&self, u: u64, v: u64) -> bool {
        self.masks.contains(&(u ^ v))
    }

    /// Neighbors of `v`, sorted.
    pub fn neighbors(&self, v: GroupElement) -> Result<Vec<GroupElement>> {
        if v.n != self.n {
            return Err(Error::VertexOutOfRange { vertex: v.bits, order: self.vertex_count() });
        }
        let mut out: Vec<GroupElement> = self
            .masks
            .iter()
            .map(|&m| GroupElement { bits: v.bits ^ m, n: self.n })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Neighbor indices of vertex `v` in generator order (unsorted). `v` must be in range.
    pub fn neighbor_indices(&self, v: u64) -> impl Iterator<Item = u64> + '_ {
        self.masks.iter().map(move |&m| v ^ m)
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let mut sorted = self.masks.clone();
        sorted.sort_unstable();
        (0..self.vertex_count()).flat_map(move |u| {
            let mut nbrs: Vec<u64> = sorted.iter().map(|&m| u ^ m).filter(|&v| v > u).collect();
            nbrs.sort_unstable();
            nbrs.into_iter().map(move |v| (u, v))
        })
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: u64) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order()];
        let mut queue = VecDeque::new();
        dist[source as usize] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u as usize].unwrap();
            for v in self.neighbor_indices(u) {
                if dist[v as usize].is_none() {
                    dist[v as usize] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Number of connected components, by breadth-first search.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.order()];
        let mut components = 0;
        for start in 0..self.vertex_count() {
            if seen[start as usize] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start as usize] = true;
            while let Some(u) = stack.pop() {
                for v in self.neighbor_indices(u) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        stack.push(v);
                    }
                }
            }
        }
        components
    }

    /// Diameter, or `None` if disconnected. Cayley graphs are vertex-transitive, so
    /// the eccentricity of the identity is the diameter.
    pub fn diameter(&self) -> Option<u32> {
        self.bfs_distances(0).into_iter().try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// Dense 0/1 adjacency matrix in lexicographic vertex order.
    pub fn adjacency_matrix(&self, limits: &Limits) -> Result<Matrix<u8>> {
        Error::check_range(self.n, 1, limits.dense_float)?;
        let order = self.order();
        let mut m = Matrix::filled(order, order, 0u8);
        for u in 0..order {
            for v in self.neighbor_indices(u as u64) {
                m[(u, v as usize)] = 1;
            }
        }
        Ok(m)
    }

    /// One edge per line, `"u v"` with `u < v`, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Undirected Graphviz DOT; vertices are labelled with their bit strings.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph cayley_{} {{", self.n);
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", GroupElement { bits: v, n: self.n });
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Checks that `A_n = [[A_{n-1}, I], [I, A_{n-1}]]` entrywise in lexicographic order.
pub fn verify_block_structure(n: u32) -> Result<bool> {
    verify_block_structure_with(n, &Limits::default())
}

pub fn verify_block_structure_with(n: u32, limits: &Limits) -> Result<bool> {
    Error::check_range(n, 2, limits.dense_float)?;
    let big = make_hypercube_with(n, limits)?.adjacency_matrix(limits)?;
    let small = make_hypercube_with(n - 1, limits)?.adjacency_matrix(limits)?;
    let half = small.rows();
    let identity = Matrix::<u8>::identity(half);
    Ok(big.block(0, 0, half) == small
        && big.block(half, half, half) == small
        && big.block(0, half, half) == identity
        && big.block(half, 0, half) == identity)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[GroupElement]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn small_hypercubes() {
        let k2 = make_hypercube(1).unwrap();
        assert_eq!((k2.vertex_count(), k2.edge_count()), (2, 1));

        let c4 = make_hypercube(2).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count(), c4.degree()), (4, 4, 2));
        assert_eq!(c4.diameter(), Some(2));

        let q3 = make_hypercube(3).unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count(), q3.degree()), (8, 12, 3));
        assert_eq!(q3.diameter(), Some(3));
    }

    #[test]
    fn dimension_range_errors() {
        assert!(matches!(make_hypercube(0), Err(Error::DimensionRange { .. })));
        assert!(matches!(make_hypercube(21), Err(Error::DimensionRange { .. })));
        assert!(make_hypercube(20).is_ok());
    }

    #[test]
    fn hypercube_neighbors() {
        let q3 = make_hypercube(3).unwrap();
        let n = |s| strs(&q3.neighbors(GroupElement::parse(s).unwrap()).unwrap());
        assert_eq!(n("000"), ["001", "010", "100"]);
        assert_eq!(n("101"), ["001", "100", "111"]);
        let k2 = make_hypercube(1).unwrap();
        assert_eq!(strs(&k2.neighbors(GroupElement::parse("0").unwrap()).unwrap()), ["1"]);
    }

    #[test]
    fn neighbors_rejects_foreign_vertex() {
        let q3 = make_hypercube(3).unwrap();
        let v = GroupElement::parse("1010").unwrap();
        assert!(matches!(q3.neighbors(v), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(q3.vertex(8), Err(Error::VertexOutOfRange { .. })));
        assert!(GroupElement::new(4, 2).is_err());
    }

    #[test]
    fn unit_vectors_follow_lexicographic_convention() {
        assert_eq!(GroupElement::unit(1, 3).unwrap().to_string(), "100");
        assert_eq!(GroupElement::unit(3, 3).unwrap().to_string(), "001");
        assert!(GroupElement::unit(1, 3).unwrap().coordinate(1));
    }

    #[test]
    fn cayley_construction() {
        let g = make_cayley(2, GeneratorSet::from_strs(2, &["01", "10"]).unwrap()).unwrap();
        assert_eq!(g, make_hypercube(2).unwrap());

        let g = make_cayley(2, GeneratorSet::from_strs(2, &["11"]).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.component_count(), 2);
        assert!(!g.is_connected());

        let gens = GeneratorSet::from_strs(3, &["001", "010", "100", "111"]).unwrap();
        let g = make_cayley(3, gens).unwrap();
        assert_eq!(g.degree(), 4);
        assert!(g.bfs_distances(0).iter().all(Option::is_some));
    }

    #[test]
    fn invalid_generators() {
        assert!(matches!(GeneratorSet::from_strs(2, &["00", "01"]), Err(Error::InvalidGenerator(_))));
        assert!(matches!(GeneratorSet::from_strs(2, &["01", "01"]), Err(Error::InvalidGenerator(_))));
        assert!(matches!(GeneratorSet::from_strs(2, &["01", "011"]), Err(Error::InvalidGenerator(_))));
        assert!(matches!(GeneratorSet::new(2, []), Err(Error::InvalidGenerator(_))));
        let gens = GeneratorSet::from_strs(2, &["01"]).unwrap();
        assert!(matches!(make_cayley(3, gens), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn generation_by_rank() {
        assert!(is_generating(&GeneratorSet::from_strs(2, &["01", "10"]).unwrap()));
        assert!(!is_generating(&GeneratorSet::from_strs(2, &["11"]).unwrap()));
        assert!(!is_generating(&GeneratorSet::from_strs(3, &["011", "101", "110"]).unwrap()));
        assert!(is_generating(&GeneratorSet::from_strs(3, &["011", "101", "111"]).unwrap()));
    }

    #[test]
    fn block_structure() {
        for n in 2..=10 {
            assert!(verify_block_structure(n).unwrap(), "n = {n}");
        }
        assert!(verify_block_structure(1).is_err());
        assert!(verify_block_structure(13).is_err());
    }

    #[test]
    fn edge_list_export() {
        let c4 = make_hypercube(2).unwrap();
        assert_eq!(c4.to_edge_list(), "0 1\n0 2\n1 3\n2 3\n");
        let dot = c4.to_dot();
        assert!(dot.starts_with("graph cayley_2 {"));
        assert_eq!(dot.matches(" -- ").count(), 4);
    }
}
