//! Exact dense linear algebra over a [`Scalar`] ring.
//!
//! Determinants use fraction-free (Bareiss) elimination, so every
//! intermediate division is exact in an integral domain. The characteristic
//! polynomial uses the Faddeev–LeVerrier recurrence, whose divisions by
//! `k` are exact for integer input. No floating point is involved anywhere,
//! which makes determinant signs and PSD verdicts certificates.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest order accepted by the cofactor-expansion oracle.
pub const COFACTOR_MAX_ORDER: usize = 8;

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.chunks(self.order.max(1)))
            .finish()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.order.max(1)) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != order {
                return Err(Error::NotSquare {
                    rows: order,
                    row,
                    len: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(Self { order, entries })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Self { order, entries }
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, |_, _| T::zero())
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(values: &[T]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                values[i].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.order).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            order: self.order,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        let n = self.order;
        Ok(Self::from_fn(n, |i, j| {
            (0..n).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        }))
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn diagonal_product(&self) -> T {
        (0..self.order).fold(T::one(), |acc, i| acc * self.get(i, i).clone())
    }

    /// `P^t M P` for the permutation matrix sending position `i` to `perm[i]`,
    /// i.e. entry `(i, j)` of the result is `M[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.order)?;
        Ok(Self::from_fn(self.order, |i, j| {
            self.get(perm[i], perm[j]).clone()
        }))
    }

    /// Rows and columns restricted to `kept`, in the given order.
    pub fn principal_submatrix(&self, kept: &[usize]) -> Result<Self> {
        if kept.is_empty() {
            return Err(Error::InvalidParameter("empty index selection".into()));
        }
        if let Some(&bad) = kept.iter().find(|&&k| k >= self.order) {
            return Err(Error::InvalidParameter(format!(
                "index {bad} out of range for order {}",
                self.order
            )));
        }
        let mut seen = vec![false; self.order];
        for &k in kept {
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidParameter(format!("index {k} selected twice")));
            }
        }
        Ok(Self::from_fn(kept.len(), |i, j| {
            self.get(kept[i], kept[j]).clone()
        }))
    }

    /// Deletes row and column `index`.
    pub fn minor(&self, index: usize) -> Self {
        let kept: Vec<usize> = (0..self.order).filter(|&k| k != index).collect();
        Self::from_fn(kept.len(), |i, j| self.get(kept[i], kept[j]).clone())
    }

    /// Exact determinant by fraction-free elimination with row pivoting.
    pub fn det(&self) -> T {
        let n = self.order;
        if n == 0 {
            return T::one();
        }
        let mut a = self.entries.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(p) => {
                        for j in 0..n {
                            a.swap(k * n + j, p * n + j);
                        }
                        negate = !negate;
                    }
                    None => return T::zero(),
                }
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                let lead = a[i * n + k].clone();
                for j in k + 1..n {
                    let v =
                        a[i * n + j].clone() * pivot.clone() - lead.clone() * a[k * n + j].clone();
                    a[i * n + j] = v / prev.clone();
                }
                a[i * n + k] = T::zero();
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Determinant by Laplace expansion along the first row. Exponential;
    /// kept as an independent oracle for small orders.
    pub fn det_cofactor(&self) -> Result<T> {
        if self.order > COFACTOR_MAX_ORDER {
            return Err(Error::GuardExceeded {
                what: "cofactor expansion order",
                size: self.order as u128,
                limit: COFACTOR_MAX_ORDER as u128,
            });
        }
        let cols: Vec<usize> = (0..self.order).collect();
        Ok(self.cofactor_rec(0, &cols))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> T {
        if cols.is_empty() {
            return T::one();
        }
        let mut acc = T::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry.clone() * self.cofactor_rec(row + 1, &rest);
            acc = if pos % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    /// Coefficients of `det(xI - M)` by the Faddeev–LeVerrier recurrence.
    pub fn char_poly(&self) -> CharPoly<T> {
        let n = self.order;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut aux = Self::zeros(n);
        for k in 1..=n {
            // aux <- M * aux + c_{n-k+1} I
            let mut next = self.mul(&aux).expect("same order");
            for i in 0..n {
                let v = next.get(i, i).clone() + coeffs[n - k + 1].clone();
                next.set(i, i, v);
            }
            let t = self.mul(&next).expect("same order").trace();
            let kk = T::from_usize(k).expect("order fits the scalar ring");
            debug_assert!(
                (t.clone() % kk.clone()).is_zero(),
                "inexact Faddeev–LeVerrier step"
            );
            coeffs[n - k] = -(t / kk);
            aux = next;
        }
        CharPoly { coeffs }
    }

    /// Exact positive-semidefiniteness test for symmetric input.
    ///
    /// Writing `det(xI - M) = x^n - e_1 x^{n-1} + e_2 x^{n-2} - ...`, the
    /// spectrum of a symmetric matrix is real, and it is nonnegative exactly
    /// when every `e_k >= 0`.
    pub fn is_psd(&self) -> Result<bool> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let poly = self.char_poly();
        Ok((0..=self.order).all(|k| poly.elementary(k) >= T::zero()))
    }

    /// Membership in G_n: symmetric, nonnegative, and every diagonal entry
    /// at least as large as each off-diagonal entry of its row.
    pub fn in_class_gn(&self) -> bool {
        self.class_gn_violation().is_none()
    }

    pub(crate) fn class_gn_violation(&self) -> Option<String> {
        if !self.is_symmetric() {
            return Some("not symmetric".into());
        }
        for i in 0..self.order {
            for j in 0..self.order {
                let v = self.get(i, j);
                if *v < T::zero() {
                    return Some(format!("negative entry at ({i}, {j})"));
                }
                if i != j && v > self.get(i, i) {
                    return Some(format!(
                        "entry ({i}, {j}) exceeds the diagonal entry of row {i}"
                    ));
                }
            }
        }
        None
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter(format!(
                "{perm:?} is not a permutation"
            )));
        }
    }
    Ok(())
}

/// `det(xI - M)` as coefficients `c_0..c_n` of increasing degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> CharPoly<T> {
    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `e_k`, the k-th elementary symmetric function of the roots.
    pub fn elementary(&self, k: usize) -> T {
        let c = self.coeffs[self.degree() - k].clone();
        if k.is_multiple_of(2) {
            c
        } else {
            -c
        }
    }
}

impl<T: fmt::Display + Scalar> fmt::Display for CharPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k > 0 && c.is_one() {
                terms.push(mono);
            } else if k > 0 && *c == -T::one() {
                terms.push(format!("-{mono}"));
            } else {
                terms.push(format!("{c}{mono}"));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl<T: fmt::Display> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.order))?;
        for row in self.entries.chunks(self.order.max(1)).take(self.order) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            seq.serialize_element(&cells)?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Cell {
    Text(String),
    Signed(i64),
    Unsigned(u64),
}

impl<'de, T: Scalar + FromStr> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<Cell>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| {
                        let text = match c {
                            Cell::Text(t) => t,
                            Cell::Signed(v) => v.to_string(),
                            Cell::Unsigned(v) => v.to_string(),
                        };
                        text.trim()
                            .parse::<T>()
                            .map_err(|_| de::Error::custom(format!("bad matrix entry {text:?}")))
                    })
                    .collect::<std::result::Result<Vec<T>, D::Error>>()
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Matrix::from_rows(rows).map_err(de::Error::custom)
    }
}
