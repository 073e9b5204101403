//! Instance generators for matrices in the class G_n and the pivot order
//! used by the splitting of `J_H`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::multigraph::{InstanceRng, Multigraph};
use crate::IntegerMatrix;

/// How a candidate `H` was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HStrategy {
    /// Truncated signless Laplacian of a random multigraph.
    SignlessLaplacian,
    /// Random symmetric off-diagonal part, diagonal drawn above the row maximum.
    BoostedSymmetric,
    /// `B^t B` for a random 0/1 matrix `B`, diagonal raised at random.
    Gram,
}

impl HStrategy {
    pub const ALL: [HStrategy; 3] = [
        HStrategy::SignlessLaplacian,
        HStrategy::BoostedSymmetric,
        HStrategy::Gram,
    ];
}

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

/// Draws a candidate with the given strategy. The result is symmetric and
/// nonnegative but may still fall outside G_n, exceed `entry_max`, or fail
/// to be positive semidefinite.
pub fn random_candidate(
    strategy: HStrategy,
    n: usize,
    entry_max: u64,
    rng: &mut InstanceRng,
) -> IntegerMatrix {
    match strategy {
        HStrategy::SignlessLaplacian => {
            let mult = rng.random_range(1..=2);
            let g = Multigraph::random(n, mult, rng.random()).expect("valid parameters");
            g.truncated_signless()
        }
        HStrategy::BoostedSymmetric => random_class_gn(n, entry_max, rng),
        HStrategy::Gram => {
            let k = rng.random_range(1..=n.max(1));
            let b: Vec<Vec<u64>> = (0..k)
                .map(|_| (0..n).map(|_| rng.random_range(0..=1)).collect())
                .collect();
            IntegerMatrix::from_fn(n, |i, j| {
                let dot: u64 = b.iter().map(|row| row[i] * row[j]).sum();
                let boost = if i == j { rng.random_range(0..=1) } else { 0 };
                int(dot + boost)
            })
        }
    }
}

/// A uniformly shaped member of G_n: off-diagonal entries in
/// `0..=entry_max/2`, each diagonal entry between its row maximum and
/// `entry_max`.
pub fn random_class_gn(n: usize, entry_max: u64, rng: &mut InstanceRng) -> IntegerMatrix {
    let off_max = entry_max / 2;
    let mut off = vec![vec![0u64; n]; n];
    for (i, j) in (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))) {
        let v = rng.random_range(0..=off_max);
        off[i][j] = v;
        off[j][i] = v;
    }
    let diag: Vec<u64> = (0..n)
        .map(|i| {
            let row_max = off[i].iter().copied().max().unwrap_or(0);
            rng.random_range(row_max..=entry_max.max(row_max))
        })
        .collect();
    IntegerMatrix::from_fn(n, |i, j| int(if i == j { diag[i] } else { off[i][j] }))
}

pub fn max_entry(h: &IntegerMatrix) -> BigInt {
    h.rows()
        .flat_map(|r| r.iter())
        .cloned()
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// A simultaneous row and column order for `H` in which, with `b` the
/// largest off-diagonal entry and `p = r`, column `p` holds entries `< b`
/// above the diagonal and row `p` holds entries `= b` to its right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitPivot {
    /// `perm[i]` is the original index placed at position `i`.
    pub perm: Vec<usize>,
    /// Zero-based pivot position.
    pub r: usize,
    pub b: BigInt,
}

/// Pivot order for `H` of order at least 2.
///
/// Take a vertex `v` whose row attains `b`; put the indices where row `v`
/// is below `b` first, then `v`, then the indices where it equals `b`.
pub fn split_pivot(h: &IntegerMatrix) -> Option<SplitPivot> {
    let n = h.order();
    if n < 2 {
        return None;
    }
    let b = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| h.get(i, j).clone())
        .max()?;
    let v = (0..n).find(|&i| (0..n).any(|j| j != i && *h.get(i, j) == b))?;
    let below: Vec<usize> = (0..n).filter(|&i| i != v && *h.get(v, i) < b).collect();
    let equal: Vec<usize> = (0..n).filter(|&i| i != v && *h.get(v, i) == b).collect();
    let r = below.len();
    let perm: Vec<usize> = below.into_iter().chain([v]).chain(equal).collect();
    Some(SplitPivot { perm, r, b })
}

/// Checks the shape promised by [`split_pivot`] on an already permuted matrix.
pub fn is_split_shape(h: &IntegerMatrix, r: usize, b: &BigInt) -> bool {
    let n = h.order();
    r + 2 <= n && (0..r).all(|i| h.get(i, r) < b) && (r + 1..n).all(|j| h.get(r, j) == b)
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut InstanceRng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub(crate) fn to_u64(v: &BigInt) -> u64 {
    v.to_u64().expect("small nonnegative entry")
}
