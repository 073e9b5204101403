//! Closed forms evaluated in exact rationals.
//!
//! Each formula is computed with [`BigRational`] arithmetic and converted to
//! an integer only after checking integrality, so any algebra slip surfaces
//! as an error instead of a silently truncated value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::check_lambda;
use crate::linalg::Matrix;

/// A nonincreasing sequence of positive integers `lambda_1 >= ... >= lambda_n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaSeq(Vec<u64>);

impl LambdaSeq {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        check_lambda(&values)?;
        Ok(Self(values))
    }

    /// `(x + (n-1)b, ..., x + b, x)`.
    pub fn arithmetic(n: usize, x: u64, b: u64) -> Result<Self> {
        Self::new((0..n as u64).rev().map(|k| x + k * b).collect())
    }

    /// `(x + b, x, ..., x)` of length `n`.
    pub fn hook(n: usize, x: u64, b: u64) -> Result<Self> {
        Self::new((0..n).map(|i| if i == 0 { x + b } else { x }).collect())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every nonincreasing sequence of length `n` with entries in `1..=max`.
    pub fn all(n: usize, max: u64) -> Vec<LambdaSeq> {
        fn rec(n: usize, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<LambdaSeq>) {
            if cur.len() == n {
                out.push(LambdaSeq(cur.clone()));
                return;
            }
            for v in (1..=cap).rev() {
                cur.push(v);
                rec(n, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, max, &mut Vec::with_capacity(n), &mut out);
        }
        out
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(int(v))
}

/// `base^exp` for any integer exponent; `0^0 = 1`, `0^(negative)` is a domain error.
fn rpow(base: &BigRational, exp: i64) -> Result<BigRational> {
    if exp >= 0 {
        return Ok(num_traits::pow(base.clone(), exp as usize));
    }
    if base.is_zero() {
        return Err(Error::Domain(format!("0 raised to the power {exp}")));
    }
    Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
}

fn to_integer(v: &BigRational, what: &str) -> Result<BigInt> {
    if !v.is_integer() {
        return Err(Error::NonIntegral(format!("{what} evaluated to {v}")));
    }
    Ok(v.to_integer())
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)` by the multiplicative formula; each partial product is exact.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Entry `(i, j)` (1-based) is `lambda_{n-i+1}^{j-i+1} / (j-i+1)!` for
/// `i <= j + 1` and `0` below the subdiagonal.
pub fn steck_matrix(lambda: &LambdaSeq) -> Matrix<BigRational> {
    let n = lambda.len();
    let l = lambda.as_slice();
    Matrix::from_fn(n, |i, j| {
        // zero-based: i <= j + 1, power j - i + 1
        if i > j + 1 {
            return BigRational::zero();
        }
        let p = (j + 1 - i) as u64;
        let base = BigInt::from(l[n - 1 - i]);
        BigRational::new(num_traits::pow(base, p as usize), factorial(p))
    })
}

/// `n! det(Steck(lambda))`, the number of lambda-parking functions.
pub fn steck_count(lambda: &LambdaSeq) -> Result<BigInt> {
    let d = steck_matrix(lambda).det() * BigRational::from_integer(factorial(lambda.len() as u64));
    to_integer(&d, "n! * Steck determinant")
}

/// `x (x + nb)^{n-1} / n!`.
pub fn f_poly(n: u64, b: i64, x: i64) -> BigRational {
    let v = int(x) * num_traits::pow(int(x) + int(n as i64) * b, n as usize - 1);
    BigRational::new(v, factorial(n))
}

/// `x^{n-1} (x + nb) / n!`.
pub fn g_poly(n: u64, b: i64, x: i64) -> BigRational {
    let v = num_traits::pow(int(x), n as usize - 1) * (int(x) + int(n as i64) * b);
    BigRational::new(v, factorial(n))
}

/// `theta_l(x) = x^{l-1} (x + l)` for `l >= 1`.
pub fn theta(l: u64, x: i64) -> Result<BigInt> {
    if l < 1 {
        return Err(Error::Domain(
            "theta_l needs l >= 1 as an integer polynomial".into(),
        ));
    }
    Ok(num_traits::pow(int(x), l as usize - 1) * (int(x) + int(l as i64)))
}

/// `theta_l` extended to `l = 0`, where `x^{-1} (x + 0)` cancels to `1`.
fn theta_rational(l: u64, x: i64) -> BigRational {
    if l == 0 {
        return BigRational::one();
    }
    BigRational::from_integer(theta(l, x).expect("l >= 1"))
}

/// `a (a + nb)^{n-1}`, the parking-function count of `K_{n+1}^{a,b}`.
pub fn dim_parking_kab(n: u64, a: u64, b: u64) -> BigInt {
    BigInt::from(a) * num_traits::pow(BigInt::from(a + n * b), n as usize - 1)
}

/// `(a + (n-2)b)^{n-1} (a + (2n-2)b)`, the 1-skeleton count of `K_{n+1}^{a,b}`.
pub fn dim_skel1_kab(n: u64, a: u64, b: u64) -> BigInt {
    let base = int(a as i64) + (int(n as i64) - 2) * int(b as i64);
    num_traits::pow(base, n as usize - 1)
        * (int(a as i64) + (int(2 * n as i64) - 2) * int(b as i64))
}

fn check_gnr(n: u64, r: u64) -> Result<()> {
    if n < 2 || r > n {
        return Err(Error::Domain(format!(
            "need n >= 2 and 0 <= r <= n (got n={n}, r={r})"
        )));
    }
    Ok(())
}

/// `det` of the truncated signless Laplacian of `G_{n,r}`, from the expanded form
/// `(n-1)^{n-r-1} [(2n-1)(n-2)^r + r(n-2)^{r-1}]` with `0^0 = 1` and the
/// second term read as `0` when `r = 0`.
pub fn det_q_gnr(n: u64, r: u64) -> Result<BigInt> {
    check_gnr(n, r)?;
    let (n, r) = (n as i64, r as i64);
    let first = rat(2 * n - 1) * rpow(&rat(n - 2), r)?;
    let second = if r == 0 {
        BigRational::zero()
    } else {
        rat(r) * rpow(&rat(n - 2), r - 1)?
    };
    let v = rpow(&rat(n - 1), n - r - 1)? * (first + second);
    let v = to_integer(&v, "expanded signless determinant")?;
    if v.is_negative() {
        return Err(Error::Domain(format!("negative determinant {v}")));
    }
    Ok(v)
}

/// Factored form `(n-1)^{n-r-1} (n-2)^{r-1} [(2n-1)(n-2) + r]`; `None` where it
/// is indeterminate, which happens only at `(n, r) = (2, 0)`.
pub fn det_q_gnr_factored(n: u64, r: u64) -> Result<Option<BigInt>> {
    check_gnr(n, r)?;
    let (n, r) = (n as i64, r as i64);
    let Ok(mid) = rpow(&rat(n - 2), r - 1) else {
        return Ok(None);
    };
    let v = rpow(&rat(n - 1), n - r - 1)? * mid * rat((2 * n - 1) * (n - 2) + r);
    to_integer(&v, "factored signless determinant").map(Some)
}

/// `sum_{i=0}^{r} (-1)^i C(r, i) theta_{n-i}(a - 1)`.
pub fn lemma2_sum(n: u64, r: u64, a: u64) -> Result<BigInt> {
    if r > n || a < 2 {
        return Err(Error::Domain(format!(
            "need 0 <= r <= n and a >= 2 (got n={n}, r={r}, a={a})"
        )));
    }
    let x = a as i64 - 1;
    let mut acc = BigRational::zero();
    for i in 0..=r {
        let term = BigRational::from_integer(binomial(r, i)) * theta_rational(n - i, x);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    to_integer(&acc, "alternating theta sum")
}

/// `(a-1)^{n-1} (a + n - 1)`, the `r = 0` closed form.
pub fn lemma2_closed(n: u64, a: u64) -> Result<BigInt> {
    if a < 2 {
        return Err(Error::Domain(format!("need a >= 2 (got {a})")));
    }
    to_integer(&theta_rational(n, a as i64 - 1), "theta value")
}

/// Both sides of `(a-2)^{n-1}(a+n-2) = sum_{i=0}^{n} (-1)^i C(n,i) (a-1)^{n-i-1}(a+n-i-1)`.
/// Terms of the shape `y^{-1} (y + 0)` are taken in their cancelled form `1`.
pub fn remark_sides(n: u64, a: i64) -> Result<(BigRational, BigRational)> {
    if a == 1 {
        return Err(Error::Domain(
            "a = 1 makes the i = n term (a-1)^{-1}(a-1) undefined".into(),
        ));
    }
    let lhs = theta_rational(n, a - 2);
    let mut rhs = BigRational::zero();
    for i in 0..=n {
        let term = BigRational::from_integer(binomial(n, i)) * theta_rational(n - i, a - 1);
        if i % 2 == 0 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    Ok((lhs, rhs))
}

pub fn remark_identity_check(n: u64, a: i64) -> Result<bool> {
    remark_sides(n, a).map(|(l, r)| l == r)
}

/// `n!` times a rational known to be a count.
pub fn scaled_by_factorial(n: u64, v: &BigRational) -> Result<BigInt> {
    to_integer(
        &(v * BigRational::from_integer(factorial(n))),
        "n! * polynomial value",
    )
}
