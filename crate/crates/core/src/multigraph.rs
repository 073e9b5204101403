//! Loopless multigraphs on `{0, 1, ..., n}` rooted at `0`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{from_u64, Scalar};

/// Seeded generator behind every random instance in the crate: ChaCha with
/// 8 rounds, keyed by `seed_from_u64`. Its output stream is specified
/// independently of platform, so reports replay bit-for-bit.
pub type InstanceRng = ChaCha8Rng;

pub fn instance_rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A loopless undirected multigraph with non-root vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Multigraph {
    n: usize,
    adj: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    adj: Vec<Vec<u64>>,
}

impl From<Multigraph> for GraphJson {
    fn from(g: Multigraph) -> Self {
        GraphJson { n: g.n, adj: g.adj }
    }
}

impl TryFrom<GraphJson> for Multigraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        if j.adj.len() != j.n + 1 {
            return Err(Error::DimensionMismatch {
                expected: j.n + 1,
                found: j.adj.len(),
            });
        }
        Multigraph::from_adjacency(j.adj)
    }
}

/// A nonempty subset of `[n]`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidParameter(
                "vertex set must be nonempty".into(),
            ));
        }
        if let Some(&v) = members.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} is not in [{n}]"
            )));
        }
        Ok(Self { members })
    }

    /// Bit `i - 1` of `mask` selects vertex `i`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        Self::new(n, (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// `L`, `Q` and their truncations at the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laplacians<T> {
    pub laplacian: Matrix<T>,
    pub signless: Matrix<T>,
    pub truncated_laplacian: Matrix<T>,
    pub truncated_signless: Matrix<T>,
}

impl Multigraph {
    /// Validates an `(n+1) x (n+1)` symmetric, zero-diagonal adjacency matrix.
    pub fn from_adjacency(adj: Vec<Vec<u64>>) -> Result<Self> {
        let size = adj.len();
        if size < 2 {
            return Err(Error::InvalidParameter("a multigraph needs n >= 1".into()));
        }
        for (i, row) in adj.iter().enumerate() {
            if row.len() != size {
                return Err(Error::NotSquare {
                    rows: size,
                    row: i,
                    len: row.len(),
                });
            }
            if row[i] != 0 {
                return Err(Error::InvalidParameter(format!("loop at vertex {i}")));
            }
        }
        if !(0..size).all(|i| (i + 1..size).all(|j| adj[i][j] == adj[j][i])) {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { n: size - 1, adj })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_adjacency(vec![vec![0; n + 1]; n + 1])
    }

    /// Builds from an edge list of `(i, j, multiplicity)`; repeated pairs add up.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(i, j, m) in edges {
            if i == j || i > n || j > n {
                return Err(Error::InvalidParameter(format!("bad edge ({i}, {j})")));
            }
            g.adj[i][j] += m;
            g.adj[j][i] += m;
        }
        Ok(g)
    }

    /// `K_{n+1}^{a,b}`: `a` parallel edges from the root to each vertex and
    /// `b` between any two non-root vertices.
    pub fn complete(n: usize, a: u64, b: u64) -> Result<Self> {
        if n < 1 || a < 1 || (n > 1 && b < 1) {
            return Err(Error::InvalidParameter(format!(
                "complete multigraph needs n, a, b >= 1 (got n={n}, a={a}, b={b})"
            )));
        }
        let adj = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| match (i, j) {
                        _ if i == j => 0,
                        (0, _) | (_, 0) => a,
                        _ => b,
                    })
                    .collect()
            })
            .collect();
        Self::from_adjacency(adj)
    }

    /// `K_{n+1}` with the root edges to `n-r+1, ..., n` removed.
    pub fn g_n_r(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidParameter(format!("r = {r} outside [0, {n}]")));
        }
        let mut g = Self::complete(n, 1, 1)?;
        for i in n - r + 1..=n {
            g.adj[0][i] = 0;
            g.adj[i][0] = 0;
        }
        Ok(g)
    }

    /// The path `0 - 1 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, i + 1, 1)).collect();
        Self::from_edges(n, &edges)
    }

    /// The cycle `0 - 1 - ... - n - 0` (a double edge when `n = 1`).
    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (0..n).map(|i| (i, i + 1, 1)).collect();
        edges.push((n, 0, 1));
        Self::from_edges(n, &edges)
    }

    /// Multiplicity of every pair `i < j` drawn uniformly from `0..=max_multiplicity`.
    pub fn random(n: usize, max_multiplicity: u64, seed: u64) -> Result<Self> {
        if max_multiplicity < 1 {
            return Err(Error::InvalidParameter(
                "max_multiplicity must be >= 1".into(),
            ));
        }
        let mut g = Self::empty(n)?;
        let mut rng = instance_rng(seed);
        for i in 0..=n {
            for j in i + 1..=n {
                let m = rng.random_range(0..=max_multiplicity);
                g.adj[i][j] = m;
                g.adj[j][i] = m;
            }
        }
        Ok(g)
    }

    /// `K_{n+1}^{a,b}` minus a uniformly random sub-multiset of its root
    /// edges: each vertex independently keeps `0..=a` of its `a` root edges.
    pub fn random_root_deletion(n: usize, a: u64, b: u64, seed: u64) -> Result<Self> {
        let mut g = Self::complete(n, a, b)?;
        let mut rng = instance_rng(seed);
        for i in 1..=n {
            let kept = a - rng.random_range(0..=a);
            g.adj[0][i] = kept;
            g.adj[i][0] = kept;
        }
        Ok(g)
    }

    /// Number of non-root vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u64 {
        self.adj[i][j]
    }

    pub fn adjacency(&self) -> &[Vec<u64>] {
        &self.adj
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.adj[i].iter().sum()
    }

    /// Edges from `i` to vertices outside `set` (the root always counts as outside).
    pub fn d_a(&self, set: &VertexSet, i: usize) -> Result<u64> {
        if !set.contains(i) {
            return Err(Error::InvalidParameter(format!(
                "vertex {i} is not in {:?}",
                set.members()
            )));
        }
        Ok(self.outside_degree(set, i))
    }

    pub(crate) fn outside_degree(&self, set: &VertexSet, i: usize) -> u64 {
        (0..=self.n)
            .filter(|&j| !set.contains(j))
            .map(|j| self.adj[i][j])
            .sum()
    }

    /// `D - A` and `D + A` plus their truncations (row and column 0 removed).
    pub fn laplacians<T: Scalar>(&self) -> Laplacians<T> {
        let size = self.n + 1;
        let degrees: Vec<u64> = (0..size).map(|i| self.degree(i)).collect();
        let build = |sign: bool| {
            Matrix::from_fn(size, |i, j| {
                if i == j {
                    from_u64::<T>(degrees[i])
                } else if sign {
                    from_u64::<T>(self.adj[i][j])
                } else {
                    -from_u64::<T>(self.adj[i][j])
                }
            })
        };
        let laplacian = build(false);
        let signless = build(true);
        Laplacians {
            truncated_laplacian: laplacian.minor(0),
            truncated_signless: signless.minor(0),
            laplacian,
            signless,
        }
    }

    pub fn truncated_laplacian<T: Scalar>(&self) -> Matrix<T> {
        self.laplacians().truncated_laplacian
    }

    pub fn truncated_signless<T: Scalar>(&self) -> Matrix<T> {
        self.laplacians().truncated_signless
    }

    /// Removes one of the parallel edges between the root and `j`.
    pub fn delete_root_edge(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.n {
            return Err(Error::InvalidParameter(format!(
                "vertex {j} is not in [{}]",
                self.n
            )));
        }
        if self.adj[0][j] == 0 {
            return Err(Error::NoRootEdge(j));
        }
        let mut g = self.clone();
        g.adj[0][j] -= 1;
        g.adj[j][0] -= 1;
        Ok(g)
    }

    /// Identifies `j` with the root: edges `j - r` become root edges, edges
    /// between `j` and the root disappear. Remaining vertices keep their order.
    pub fn merge_into_root(&self, j: usize) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::InvalidParameter("merging needs n >= 2".into()));
        }
        if j == 0 || j > self.n {
            return Err(Error::InvalidParameter(format!(
                "vertex {j} is not in [{}]",
                self.n
            )));
        }
        let kept: Vec<usize> = (0..=self.n).filter(|&v| v != j).collect();
        let adj = kept
            .iter()
            .map(|&r| {
                kept.iter()
                    .map(|&s| match (r, s) {
                        _ if r == s => 0,
                        (0, s) => self.adj[0][s] + self.adj[j][s],
                        (r, 0) => self.adj[r][0] + self.adj[r][j],
                        _ => self.adj[r][s],
                    })
                    .collect()
            })
            .collect();
        Self::from_adjacency(adj)
    }

    /// Renames non-root vertex `v` to `perm[v - 1] + 1`; `perm` permutes `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        let to = |v: usize| if v == 0 { 0 } else { perm[v - 1] + 1 };
        let mut adj = vec![vec![0; self.n + 1]; self.n + 1];
        for i in 0..=self.n {
            for j in 0..=self.n {
                adj[to(i)][to(j)] = self.adj[i][j];
            }
        }
        Self::from_adjacency(adj)
    }

    /// Plain-text form: `n` on the first line, then one `i j m` line per
    /// nonzero pair with `i < j`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..=self.n {
            for j in i + 1..=self.n {
                if self.adj[i][j] > 0 {
                    out.push_str(&format!("{i} {j} {}\n", self.adj[i][j]));
                }
            }
        }
        out
    }

    /// Parses the text form; `#` starts a comment. Input whose first
    /// non-blank character is `{` is read as `{"n": .., "adj": [[..]]}`.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            return serde_json::from_str(input).map_err(|e| Error::Parse {
                line: e.line(),
                msg: e.to_string(),
            });
        }
        let mut n: Option<usize> = None;
        let mut adj: Vec<Vec<u64>> = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match n {
                None => {
                    if fields.len() != 1 {
                        return Err(err(format!("expected the vertex count n, found {line:?}")));
                    }
                    let v: usize = fields[0]
                        .parse()
                        .map_err(|_| err(format!("bad vertex count {:?}", fields[0])))?;
                    if v < 1 {
                        return Err(err("n must be at least 1".into()));
                    }
                    n = Some(v);
                    adj = vec![vec![0; v + 1]; v + 1];
                }
                Some(n) => {
                    if fields.len() != 3 {
                        return Err(err(format!("expected `i j m`, found {line:?}")));
                    }
                    let parse = |s: &str| {
                        s.parse::<u64>()
                            .map_err(|_| err(format!("bad integer {s:?}")))
                    };
                    let (i, j, m) = (
                        parse(fields[0])? as usize,
                        parse(fields[1])? as usize,
                        parse(fields[2])?,
                    );
                    if !(i < j && j <= n) {
                        return Err(err(format!("need 0 <= i < j <= {n}, found i={i}, j={j}")));
                    }
                    if m < 1 {
                        return Err(err("multiplicity must be at least 1".into()));
                    }
                    if adj[i][j] != 0 {
                        return Err(err(format!("pair ({i}, {j}) listed twice")));
                    }
                    adj[i][j] = m;
                    adj[j][i] = m;
                }
            }
        }
        if n.is_none() {
            return Err(Error::Parse {
                line: 0,
                msg: "empty graph description".into(),
            });
        }
        Self::from_adjacency(adj)
    }
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
