use rand::Rng;

use super::{ModelError, SubsetSelection};

/// Simple graph on `0..size` with the vertex order given by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedGraph {
    size: usize,
    adjacency: Vec<bool>,
}

impl OrderedGraph {
    pub fn empty(size: usize) -> Self {
        OrderedGraph {
            size,
            adjacency: vec![false; size * size],
        }
    }

    pub fn complete(size: usize) -> Self {
        let mut g = OrderedGraph::empty(size);
        for i in 0..size {
            for j in i + 1..size {
                g.set_edge(i, j, true);
            }
        }
        g
    }

    /// Builds a graph from zero-based edges.
    pub fn from_edges(size: usize, edges: &[(usize, usize)]) -> Result<Self, ModelError> {
        let mut g = OrderedGraph::empty(size);
        for &(i, j) in edges {
            if i >= size || j >= size || i == j {
                return Err(ModelError::InvalidEdge { i, j, size });
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    /// Graph whose edge set is the bit pattern `bits` over the pairs
    /// `(0,1), (0,2), …, (size-2, size-1)` in lexicographic order.
    pub fn from_pair_bits(size: usize, bits: u64) -> Self {
        let mut g = OrderedGraph::empty(size);
        let mut k = 0;
        for i in 0..size {
            for j in i + 1..size {
                g.set_edge(i, j, bits >> k & 1 == 1);
                k += 1;
            }
        }
        g
    }

    fn set_edge(&mut self, i: usize, j: usize, on: bool) {
        self.adjacency[i * self.size + j] = on;
        self.adjacency[j * self.size + i] = on;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.size + j]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |i| {
            (i + 1..self.size).filter_map(move |j| self.adjacent(i, j).then_some((i, j)))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Restriction to `subset`, relabelled `0..|subset|` in increasing order.
    pub fn induced_substructure(&self, subset: &SubsetSelection) -> OrderedGraph {
        debug_assert_eq!(subset.host(), self.size);
        let members = subset.members();
        let mut g = OrderedGraph::empty(members.len());
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate().skip(a + 1) {
                g.set_edge(a, b, self.adjacent(i, j));
            }
        }
        g
    }

    /// Line 1 `m=<size>`, then one `i j` line per edge, one-based with `i < j`.
    pub fn to_dump(&self) -> String {
        let mut out = format!("m={}\n", self.size);
        for (i, j) in self.edges() {
            out.push_str(&format!("{} {}\n", i + 1, j + 1));
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self, ModelError> {
        let mut lines = super::dump_lines(text);
        let size = super::parse_header(&mut lines)?;
        let mut g = OrderedGraph::empty(size);
        for (line_no, line) in lines {
            let nums: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = nums.as_slice() else {
                return Err(ModelError::dump(line_no, "expected `i j`"));
            };
            let i = super::parse_element(a, size, line_no)?;
            let j = super::parse_element(b, size, line_no)?;
            if i >= j {
                return Err(ModelError::dump(line_no, "edge endpoints must satisfy i < j"));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }
}

/// Each unordered pair is an edge independently with probability `p`.
pub fn sample_graph<R: Rng + ?Sized>(size: usize, p: f64, rng: &mut R) -> OrderedGraph {
    assert!((0.0..=1.0).contains(&p), "edge probability {p} outside [0, 1]");
    let mut g = OrderedGraph::empty(size);
    for i in 0..size {
        for j in i + 1..size {
            if rng.gen_bool(p) {
                g.set_edge(i, j, true);
            }
        }
    }
    g
}
