use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::Matroid;

/// `F` is independent iff `|F| <= cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMatroid {
    n: usize,
    cap: usize,
}

impl UniformMatroid {
    pub fn new(n: usize, cap: usize) -> UniformMatroid {
        UniformMatroid { n, cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn independent(&self, set: &[usize]) -> bool {
        set.len() <= self.cap
    }
    fn kind(&self) -> &'static str {
        "uniform"
    }
}

/// Blocks `E_1, ..., E_l` partitioning the ground set, each with a cap `N_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    block_of: Vec<usize>,
    caps: Vec<usize>,
}

impl PartitionMatroid {
    pub fn new(n: usize, blocks: Vec<(Vec<usize>, usize)>) -> Result<PartitionMatroid> {
        let mut block_of = vec![usize::MAX; n];
        let mut caps = Vec::with_capacity(blocks.len());
        for (b, (members, cap)) in blocks.into_iter().enumerate() {
            for e in members {
                if e >= n {
                    return Err(Error::Invalid(format!(
                        "block {b}: element {e} out of range"
                    )));
                }
                if block_of[e] != usize::MAX {
                    return Err(Error::Invalid(format!(
                        "element {e} appears in blocks {} and {b}",
                        block_of[e]
                    )));
                }
                block_of[e] = b;
            }
            caps.push(cap);
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Invalid(format!("element {e} is in no block")));
        }
        Ok(PartitionMatroid { block_of, caps })
    }

    pub fn blocks(&self) -> Vec<(Vec<usize>, usize)> {
        let mut out: Vec<(Vec<usize>, usize)> =
            self.caps.iter().map(|&c| (Vec::new(), c)).collect();
        for (e, &b) in self.block_of.iter().enumerate() {
            out[b].0.push(e);
        }
        out
    }
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.block_of.len()
    }
    fn independent(&self, set: &[usize]) -> bool {
        let mut used = vec![0usize; self.caps.len()];
        for &e in set {
            let b = self.block_of[e];
            used[b] += 1;
            if used[b] > self.caps[b] {
                return false;
            }
        }
        true
    }
    fn kind(&self) -> &'static str {
        "partition"
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(len: usize) -> DisjointSets {
        DisjointSets {
            parent: (0..len).collect(),
            rank: vec![0; len],
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Returns false if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
        true
    }
}

/// Edge sets of a multigraph; `F` is independent iff `(V, F)` is a forest.
/// Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicMatroid {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphicMatroid {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<GraphicMatroid> {
        if let Some((i, &(u, v))) = edges
            .iter()
            .enumerate()
            .find(|(_, &(u, v))| u >= vertices || v >= vertices)
        {
            return Err(Error::Invalid(format!(
                "edge {i} = ({u}, {v}) references a vertex outside 0..{vertices}"
            )));
        }
        Ok(GraphicMatroid { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }
    // Rebuilt per query so the oracle stays stateless.
    fn independent(&self, set: &[usize]) -> bool {
        let mut dsu = DisjointSets::new(self.vertices);
        set.iter().all(|&e| {
            let (u, v) = self.edges[e];
            dsu.union(u, v)
        })
    }
    fn kind(&self) -> &'static str {
        "graphic"
    }
}

/// Columns over GF(2); `F` is independent iff its columns are linearly independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMatroidGF2 {
    dimension: usize,
    // packed little-endian words per column
    columns: Vec<Vec<u64>>,
}

impl LinearMatroidGF2 {
    pub fn new(dimension: usize, columns: &[Vec<bool>]) -> Result<LinearMatroidGF2> {
        let words = dimension.div_ceil(64);
        let mut packed = Vec::with_capacity(columns.len());
        for (e, col) in columns.iter().enumerate() {
            if col.len() != dimension {
                return Err(Error::Invalid(format!(
                    "column {e} has {} entries, expected {dimension}",
                    col.len()
                )));
            }
            let mut w = vec![0u64; words];
            for (r, &bit) in col.iter().enumerate() {
                if bit {
                    w[r / 64] |= 1 << (r % 64);
                }
            }
            packed.push(w);
        }
        Ok(LinearMatroidGF2 {
            dimension,
            columns: packed,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn column(&self, e: usize) -> Vec<bool> {
        (0..self.dimension)
            .map(|r| self.columns[e][r / 64] >> (r % 64) & 1 == 1)
            .collect()
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

impl Matroid for LinearMatroidGF2 {
    fn ground_size(&self) -> usize {
        self.columns.len()
    }
    fn independent(&self, set: &[usize]) -> bool {
        if set.len() > self.dimension {
            return false;
        }
        // xor basis keyed by leading bit
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::with_capacity(set.len());
        for &e in set {
            let mut v = self.columns[e].clone();
            loop {
                let Some(lead) = leading_bit(&v) else {
                    return false;
                };
                match basis.iter().find(|(l, _)| *l == lead) {
                    Some((_, b)) => v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                    None => {
                        basis.push((lead, v));
                        break;
                    }
                }
            }
        }
        true
    }
    fn kind(&self) -> &'static str {
        "linear_gf2"
    }
}

/// A user-supplied list of independent sets. Nothing about it is assumed; run
/// [`validate_axioms`](super::validate_axioms) before trusting it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitMatroid {
    n: usize,
    sets: BTreeSet<Vec<usize>>,
}

impl ExplicitMatroid {
    pub fn new(n: usize, sets: impl IntoIterator<Item = Vec<usize>>) -> Result<ExplicitMatroid> {
        let mut out = BTreeSet::new();
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&e) = s.iter().find(|&&e| e >= n) {
                return Err(Error::Invalid(format!("element {e} out of range")));
            }
            out.insert(s);
        }
        Ok(ExplicitMatroid { n, sets: out })
    }

    pub fn sets(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.sets.iter()
    }
}

impl Matroid for ExplicitMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn independent(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.sets.contains(&s)
    }
    fn kind(&self) -> &'static str {
        "explicit"
    }
}
