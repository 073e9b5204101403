//! Monomial ideals as finite generator lists.
//!
//! Variables are addressed by zero-based slot: slot `i` holds the exponent
//! of `x_{i+1}`. Every constructor minimalizes, so two ideals are equal
//! exactly when their generator lists are.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::multigraph::{Multigraph, VertexSet};
use crate::scalar::Scalar;

/// Largest `n` for which subset-indexed ideals are built.
pub const MAX_SUBSET_VARS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u64>,
}

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Self { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            exponents: vec![0; nvars],
        }
    }

    /// `x_{var+1}^e`.
    pub fn var_power(nvars: usize, var: usize, e: u64) -> Self {
        let mut m = Self::one(nvars);
        m.exponents[var] = e;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Index of the only variable present, if this is a pure power `x_i^e`, `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut support = self.exponents.iter().enumerate().filter(|(_, &e)| e > 0);
        match (support.next(), support.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u64::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u64::min)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a + b)
    }

    /// `self / gcd(self, other)`.
    pub fn strip(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u64::saturating_sub)
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u64, u64) -> u64) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x_{}", i + 1)?,
                _ => write!(f, "x_{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

/// A monomial ideal given by its minimal generators, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, generators: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: g.nvars(),
            });
        }
        Ok(Self {
            nvars,
            generators: minimal_generators(generators),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            generators: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        Self {
            nvars,
            generators: vec![Monomial::one(nvars)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    /// Some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        self.check(m)?;
        Ok(self.generators.iter().any(|g| g.divides(m)))
    }

    pub fn is_standard(&self, m: &Monomial) -> Result<bool> {
        self.contains(m).map(|c| !c)
    }

    /// Equality of minimal generator sets.
    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(self.generators == other.generators)
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subideal_of(&self, other: &MonomialIdeal) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(I : m)`, generated by `g / gcd(g, m)`.
    pub fn colon(&self, m: &Monomial) -> Result<Self> {
        self.check(m)?;
        Self::new(
            self.nvars,
            self.generators.iter().map(|g| g.strip(m)).collect(),
        )
    }

    /// `<I, x_{var+1}^e>`.
    pub fn adjoin_power(&self, var: usize, e: u64) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::InvalidParameter(format!(
                "variable slot {var} out of range"
            )));
        }
        let mut gens = self.generators.clone();
        gens.push(Monomial::var_power(self.nvars, var, e));
        Self::new(self.nvars, gens)
    }

    /// Sets `x_{var+1} = 0` in the quotient sense: the ideal of the remaining
    /// variables generated by the generators free of `x_{var+1}`.
    pub fn drop_variable(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::InvalidParameter(format!(
                "variable slot {var} out of range"
            )));
        }
        let gens = self
            .generators
            .iter()
            .filter(|g| g.exponents[var] == 0)
            .map(|g| {
                let mut e = g.exponents.clone();
                e.remove(var);
                Monomial::new(e)
            })
            .collect();
        Self::new(self.nvars - 1, gens)
    }

    /// Renames `x_{i+1}` to `x_{perm[i]+1}`.
    pub fn permute_variables(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: perm.len(),
            });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut e = vec![0; self.nvars];
                for (i, &p) in perm.iter().enumerate() {
                    e[p] = g.exponents[i];
                }
                Monomial::new(e)
            })
            .collect();
        Self::new(self.nvars, gens)
    }

    /// One generator per line, exponents separated by spaces.
    pub fn to_text(&self) -> String {
        self.generators
            .iter()
            .map(|g| {
                let e: Vec<String> = g.exponents.iter().map(u64::to_string).collect();
                e.join(" ") + "\n"
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IdealJson::from(self)).expect("plain data")
    }

    fn check(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: m.nvars(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    nvars: usize,
    generators: Vec<Vec<String>>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(i: &MonomialIdeal) -> Self {
        IdealJson {
            nvars: i.nvars,
            generators: i
                .generators
                .iter()
                .map(|g| g.exponents.iter().map(u64::to_string).collect())
                .collect(),
        }
    }
}

/// Drops duplicates and every generator divisible by another, then sorts.
pub fn minimalize(generators: &[Monomial]) -> Vec<Monomial> {
    minimal_generators(generators.to_vec())
}

fn minimal_generators(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

/// `m_A`: the product of `x_i^{d_A(i)}` over `i` in `A`.
pub fn m_a(g: &Multigraph, set: &VertexSet) -> Monomial {
    let mut e = vec![0; g.n()];
    for &i in set.members() {
        e[i - 1] = g.outside_degree(set, i);
    }
    Monomial::new(e)
}

/// Nonempty subsets of `[n]` as bit masks in colexicographic order.
fn subset_masks(n: usize) -> Result<impl Iterator<Item = u64>> {
    if n > MAX_SUBSET_VARS {
        return Err(Error::GuardExceeded {
            what: "variable count for subset enumeration",
            size: n as u128,
            limit: MAX_SUBSET_VARS as u128,
        });
    }
    Ok(1..(1u64 << n))
}

/// The k-skeleton ideal: `m_A` for every nonempty `A` with `|A| <= k + 1`.
pub fn skeleton_ideal(g: &Multigraph, k: usize) -> Result<MonomialIdeal> {
    let n = g.n();
    if k + 1 > n {
        return Err(Error::InvalidParameter(format!(
            "skeleton index {k} outside [0, {}]",
            n - 1
        )));
    }
    let gens = subset_masks(n)?
        .filter(|m| m.count_ones() as usize <= k + 1)
        .map(|mask| m_a(g, &VertexSet::from_mask(n, mask).expect("nonempty mask")))
        .collect();
    MonomialIdeal::new(n, gens)
}

/// The G-parking function ideal, i.e. the `(n-1)`-skeleton.
pub fn parking_ideal(g: &Multigraph) -> Result<MonomialIdeal> {
    skeleton_ideal(g, g.n() - 1)
}

pub(crate) fn check_lambda(lambda: &[u64]) -> Result<()> {
    if lambda.is_empty() {
        return Err(Error::InvalidParameter("lambda must be nonempty".into()));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) || lambda[lambda.len() - 1] < 1 {
        return Err(Error::InvalidParameter(format!(
            "{lambda:?} is not a nonincreasing positive sequence"
        )));
    }
    Ok(())
}

/// `M_lambda`: `(prod_{i in A} x_i)^{lambda_{|A|}}` for every nonempty `A`.
pub fn lambda_ideal(lambda: &[u64]) -> Result<MonomialIdeal> {
    check_lambda(lambda)?;
    let n = lambda.len();
    let gens = subset_masks(n)?
        .map(|mask| {
            let e = lambda[mask.count_ones() as usize - 1];
            Monomial::new(
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { e } else { 0 })
                    .collect(),
            )
        })
        .collect();
    MonomialIdeal::new(n, gens)
}

/// `omega(i) = a` on the first `n - r` variables and `a - 1` on the last `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    n: usize,
    r: usize,
    a: u64,
}

impl WeightFunction {
    pub fn new(n: usize, r: usize, a: u64) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidParameter(format!("r = {r} outside [0, {n}]")));
        }
        if a < 1 || (r >= 1 && a < 2) {
            return Err(Error::InvalidParameter(format!(
                "a = {a} too small for r = {r}"
            )));
        }
        Ok(Self { n, r, a })
    }

    /// Weight of `x_i`, `1 <= i <= n`.
    pub fn weight(&self, i: usize) -> u64 {
        if i <= self.n - self.r {
            self.a
        } else {
            self.a - 1
        }
    }
}

/// `I_{n,r}^<a>`: `x_i^{w(i)}` and `x_i^{w(i)-1} x_j^{w(j)-1}` for `i != j`.
pub fn i_n_r_a(n: usize, r: usize, a: u64) -> Result<MonomialIdeal> {
    let w = WeightFunction::new(n, r, a)?;
    let mut gens = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        gens.push(Monomial::var_power(n, i - 1, w.weight(i)));
        for j in i + 1..=n {
            let mut e = vec![0; n];
            e[i - 1] = w.weight(i) - 1;
            e[j - 1] = w.weight(j) - 1;
            gens.push(Monomial::new(e));
        }
    }
    MonomialIdeal::new(n, gens)
}

fn exponent<T: Scalar + ToPrimitive>(v: &T) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::Overflow(v.to_string()))
}

/// `J_H` for `H` in G_n: `x_l^{h_ll}` and `x_i^{h_ii - h_ij} x_j^{h_jj - h_ij}`.
pub fn j_h<T: Scalar + ToPrimitive>(h: &Matrix<T>) -> Result<MonomialIdeal> {
    if let Some(why) = h.class_gn_violation() {
        return Err(Error::NotInClassGn(why));
    }
    let n = h.order();
    let diag: Vec<u64> = (0..n)
        .map(|i| exponent(h.get(i, i)))
        .collect::<Result<_>>()?;
    let mut gens = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        gens.push(Monomial::var_power(n, i, diag[i]));
        for j in i + 1..n {
            let b = exponent(h.get(i, j))?;
            let mut e = vec![0; n];
            e[i] = diag[i] - b;
            e[j] = diag[j] - b;
            gens.push(Monomial::new(e));
        }
    }
    MonomialIdeal::new(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn mono(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(nvars: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::new(nvars, gens.iter().map(|g| mono(g)).collect()).unwrap()
    }

    fn hmat(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn m_a_examples() {
        let k4 = Multigraph::complete(3, 1, 1).unwrap();
        assert_eq!(m_a(&k4, &VertexSet::new(3, [1]).unwrap()), mono(&[3, 0, 0]));
        assert_eq!(
            m_a(&k4, &VertexSet::new(3, [1, 2]).unwrap()),
            mono(&[2, 2, 0])
        );
        let g = Multigraph::g_n_r(3, 1).unwrap();
        // vertex 2 keeps its root edge and its edge to 1, vertex 3 only the edge to 1
        assert_eq!(
            m_a(&g, &VertexSet::new(3, [2, 3]).unwrap()),
            mono(&[0, 2, 1])
        );
    }

    #[test]
    fn skeleton_examples() {
        let k3 = Multigraph::complete(2, 1, 1).unwrap();
        assert_eq!(
            skeleton_ideal(&k3, 1).unwrap(),
            ideal(2, &[&[2, 0], &[0, 2], &[1, 1]])
        );
        assert_eq!(parking_ideal(&k3).unwrap(), skeleton_ideal(&k3, 1).unwrap());

        let k4 = Multigraph::complete(3, 1, 1).unwrap();
        let expected = ideal(
            3,
            &[
                &[3, 0, 0],
                &[0, 3, 0],
                &[0, 0, 3],
                &[2, 2, 0],
                &[2, 0, 2],
                &[0, 2, 2],
            ],
        );
        assert_eq!(skeleton_ideal(&k4, 1).unwrap(), expected);

        let p4 = Multigraph::path(3).unwrap();
        assert_eq!(
            skeleton_ideal(&p4, 1).unwrap(),
            ideal(3, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        assert!(skeleton_ideal(&p4, 3).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(
            lambda_ideal(&[2, 1]).unwrap(),
            ideal(2, &[&[2, 0], &[0, 2], &[1, 1]])
        );
        assert_eq!(
            lambda_ideal(&[1, 1]).unwrap(),
            ideal(2, &[&[1, 0], &[0, 1]])
        );
        let l = lambda_ideal(&[3, 2, 2]).unwrap();
        assert!(l.contains(&mono(&[2, 2, 2])).unwrap());
        // (x_1 x_2 x_3)^2 is redundant next to (x_1 x_2)^2
        assert!(!l.generators().contains(&mono(&[2, 2, 2])));
        assert!(l.generators().contains(&mono(&[3, 0, 0])));
        assert!(l.generators().contains(&mono(&[0, 2, 2])));
        assert!(lambda_ideal(&[1, 2]).is_err());
        assert!(lambda_ideal(&[2, 0]).is_err());
    }

    #[test]
    fn i_n_r_a_examples() {
        assert_eq!(
            i_n_r_a(2, 0, 2).unwrap(),
            ideal(2, &[&[2, 0], &[0, 2], &[1, 1]])
        );
        assert_eq!(i_n_r_a(2, 1, 2).unwrap(), ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(i_n_r_a(3, 3, 3).unwrap(), i_n_r_a(3, 0, 2).unwrap());
        assert!(i_n_r_a(2, 3, 2).is_err());
        assert!(i_n_r_a(2, 1, 1).is_err());
        assert!(i_n_r_a(2, 0, 1).unwrap().is_unit());
        assert_eq!(i_n_r_a(0, 0, 3).unwrap(), MonomialIdeal::zero(0));
    }

    #[test]
    fn i_n_r_a_at_weight_n_is_the_gnr_skeleton() {
        for n in 2..=5 {
            for r in 0..=n {
                let g = Multigraph::g_n_r(n, r).unwrap();
                assert_eq!(
                    i_n_r_a(n, r, n as u64).unwrap(),
                    skeleton_ideal(&g, 1).unwrap(),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn j_h_examples() {
        assert_eq!(
            j_h(&hmat(&[&[2, 1], &[1, 2]])).unwrap(),
            ideal(2, &[&[2, 0], &[0, 2], &[1, 1]])
        );
        let q_p4 = hmat(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 1]]);
        assert_eq!(
            j_h(&q_p4).unwrap(),
            ideal(3, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        let d = hmat(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 1]]);
        assert_eq!(
            j_h(&d).unwrap(),
            ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 1]])
        );
        assert!(matches!(
            j_h(&hmat(&[&[1, 2], &[2, 3]])),
            Err(Error::NotInClassGn(_))
        ));
        // alpha_i = b_ij everywhere gives the unit ideal
        assert!(j_h(&hmat(&[&[1, 1], &[1, 1]])).unwrap().is_unit());
    }

    #[test]
    fn j_h_of_signless_laplacian_is_one_skeleton() {
        for seed in 0..30 {
            let g = Multigraph::random(4, 3, seed).unwrap();
            let q = g.truncated_signless::<BigInt>();
            assert_eq!(
                j_h(&q).unwrap(),
                skeleton_ideal(&g, 1).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn colon_examples() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(
            i.colon(&mono(&[1, 0])).unwrap(),
            ideal(2, &[&[1, 0], &[0, 1]])
        );
        let i = i_n_r_a(2, 0, 2).unwrap();
        assert_eq!(i.colon(&mono(&[0, 1])).unwrap(), i_n_r_a(2, 1, 2).unwrap());
        assert_eq!(i.colon(&Monomial::one(2)).unwrap(), i);
        assert!(i.colon(&Monomial::one(3)).is_err());
    }

    #[test]
    fn adjoin_examples() {
        let i = ideal(2, &[&[2, 0]]);
        assert_eq!(i.adjoin_power(1, 1).unwrap(), ideal(2, &[&[2, 0], &[0, 1]]));
        assert!(i.adjoin_power(0, 0).unwrap().is_unit());
        let k3 = skeleton_ideal(&Multigraph::complete(2, 1, 1).unwrap(), 1).unwrap();
        assert_eq!(
            k3.adjoin_power(0, 1).unwrap(),
            ideal(2, &[&[1, 0], &[0, 2]])
        );
        assert!(i.adjoin_power(2, 1).is_err());
    }

    #[test]
    fn membership_and_minimalize() {
        let i = ideal(2, &[&[1, 1]]);
        assert!(i.contains(&mono(&[2, 1])).unwrap());
        assert!(!i.contains(&mono(&[2, 0])).unwrap());
        assert!(i.contains(&mono(&[1])).is_err());
        assert!(ideal(1, &[&[1], &[2]]).equals(&ideal(1, &[&[1]])).unwrap());
        assert!(ideal(1, &[&[1]]).equals(&ideal(2, &[&[1, 0]])).is_err());
        assert_eq!(
            minimalize(&[mono(&[2, 0]), mono(&[2, 1])]),
            vec![mono(&[2, 0])]
        );
        assert_eq!(
            minimalize(&[mono(&[1, 1]), mono(&[1, 1])]),
            vec![mono(&[1, 1])]
        );
        assert!(MonomialIdeal::new(2, vec![mono(&[1])]).is_err());
    }

    #[test]
    fn drop_variable_matches_quotient() {
        let k4 = skeleton_ideal(&Multigraph::complete(3, 1, 1).unwrap(), 1).unwrap();
        assert_eq!(
            k4.drop_variable(2).unwrap(),
            ideal(2, &[&[3, 0], &[0, 3], &[2, 2]])
        );
    }

    #[test]
    fn display() {
        assert_eq!(
            ideal(2, &[&[2, 0], &[1, 1]]).to_string(),
            "<x_1*x_2, x_1^2>"
        );
        assert_eq!(MonomialIdeal::unit(2).to_string(), "<1>");
        assert_eq!(ideal(2, &[&[2, 0], &[1, 1]]).to_text(), "1 1\n2 0\n");
        assert_eq!(
            ideal(2, &[&[2, 0]]).to_json(),
            serde_json::json!({"nvars": 2, "generators": [["2", "0"]]})
        );
    }
}
