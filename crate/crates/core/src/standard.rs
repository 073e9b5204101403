//! Standard monomials of Artinian monomial quotients.
//!
//! The dimension of `R / I` over any field is the number of monomials
//! outside `I`, so no field appears anywhere below.

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::ideal::{check_lambda, Monomial, MonomialIdeal};
use crate::multigraph::{Multigraph, VertexSet};

/// Generator-count limit for inclusion–exclusion.
pub const IE_MAX_GENERATORS: usize = 22;
/// Limit on the number of monomials [`enumerate_standard`] materializes.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;
/// Limit on the box scanned by the brute-force lambda-parking counter.
pub const BRUTE_FORCE_LIMIT: u128 = 50_000_000;

/// `bounds[i]` is the least `e` with `x_{i+1}^e` in the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinianBox {
    bounds: Vec<u64>,
}

impl ArtinianBox {
    pub fn of(ideal: &MonomialIdeal) -> Result<Self> {
        let mut bounds = vec![None::<u64>; ideal.nvars()];
        for g in ideal.generators() {
            if g.is_one() {
                bounds.iter_mut().for_each(|b| *b = Some(0));
                break;
            }
            if let Some(i) = g.pure_power_var() {
                let e = g.exponents()[i];
                bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
            }
        }
        let bounds = bounds
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or(Error::NotArtinian { var: i + 1 }))
            .collect::<Result<_>>()?;
        Ok(Self { bounds })
    }

    pub fn bounds(&self) -> &[u64] {
        &self.bounds
    }

    pub fn volume(&self) -> BigUint {
        self.bounds.iter().map(|&b| BigUint::from(b)).product()
    }
}

/// Depth-first walk over the box, outermost variable first. A generator is
/// "active" once its exponents on the already-fixed variables are covered by
/// the prefix; a prefix is dead when an active generator has no support on
/// the remaining variables. The innermost coordinate is counted in one step.
struct Walker<'a> {
    gens: Vec<&'a Monomial>,
    /// Highest variable slot each generator involves.
    last_support: Vec<usize>,
    bounds: &'a [u64],
}

impl<'a> Walker<'a> {
    fn new(ideal: &'a MonomialIdeal, bounds: &'a [u64]) -> Self {
        let gens: Vec<&Monomial> = ideal.generators().iter().collect();
        let last_support = gens
            .iter()
            .map(|g| g.exponents().iter().rposition(|&e| e > 0).unwrap_or(0))
            .collect();
        Self {
            gens,
            last_support,
            bounds,
        }
    }

    fn count(&self) -> u128 {
        let active: Vec<usize> = (0..self.gens.len()).collect();
        self.count_level(0, &active)
    }

    fn count_level(&self, level: usize, active: &[usize]) -> u128 {
        let last = self.bounds.len() - 1;
        if level == last {
            return active
                .iter()
                .map(|&g| self.gens[g].exponents()[last])
                .min()
                .unwrap_or(0) as u128;
        }
        let mut total = 0u128;
        let mut next = Vec::with_capacity(active.len());
        for e in 0..self.bounds[level] {
            next.clear();
            next.extend(
                active
                    .iter()
                    .copied()
                    .filter(|&g| self.gens[g].exponents()[level] <= e),
            );
            if next.iter().any(|&g| self.last_support[g] <= level) {
                break;
            }
            total += self.count_level(level + 1, &next);
        }
        total
    }

    fn collect(&self, prefix: &mut Vec<u64>, active: &[usize], out: &mut Vec<Monomial>) {
        let level = prefix.len();
        if level == self.bounds.len() {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        let mut next = Vec::with_capacity(active.len());
        for e in 0..self.bounds[level] {
            next.clear();
            next.extend(
                active
                    .iter()
                    .copied()
                    .filter(|&g| self.gens[g].exponents()[level] <= e),
            );
            if next.iter().any(|&g| self.last_support[g] <= level) {
                break;
            }
            prefix.push(e);
            self.collect(prefix, &next, out);
            prefix.pop();
        }
    }
}

/// Number of standard monomials of `R / I`.
pub fn count_standard(ideal: &MonomialIdeal) -> Result<BigUint> {
    if ideal.is_unit() {
        return Ok(BigUint::from(0u8));
    }
    if ideal.nvars() == 0 {
        return Ok(BigUint::from(1u8));
    }
    let bx = ArtinianBox::of(ideal)?;
    Ok(BigUint::from(Walker::new(ideal, bx.bounds()).count()))
}

/// Inclusion–exclusion over subsets of the non-pure-power generators,
/// counting box points divisible by each subset's lcm. Independent of
/// [`count_standard`]'s walk.
pub fn count_standard_ie(ideal: &MonomialIdeal) -> Result<BigUint> {
    if ideal.generators().len() > IE_MAX_GENERATORS {
        return Err(Error::GuardExceeded {
            what: "generator count for inclusion-exclusion",
            size: ideal.generators().len() as u128,
            limit: IE_MAX_GENERATORS as u128,
        });
    }
    if ideal.is_unit() {
        return Ok(BigUint::from(0u8));
    }
    if ideal.nvars() == 0 {
        return Ok(BigUint::from(1u8));
    }
    let bx = ArtinianBox::of(ideal)?;
    let mixed: Vec<&Monomial> = ideal
        .generators()
        .iter()
        .filter(|g| g.pure_power_var().is_none())
        .collect();
    let mut total = BigInt::from(0);
    ie_rec(
        &mixed,
        0,
        &Monomial::one(ideal.nvars()),
        true,
        bx.bounds(),
        &mut total,
    );
    total
        .to_biguint()
        .ok_or_else(|| Error::NonIntegral(format!("negative inclusion-exclusion total {total}")))
}

fn ie_rec(
    gens: &[&Monomial],
    from: usize,
    lcm: &Monomial,
    positive: bool,
    bounds: &[u64],
    acc: &mut BigInt,
) {
    let mut term = BigInt::from(1);
    for (&b, &e) in bounds.iter().zip(lcm.exponents()) {
        if e >= b {
            return;
        }
        term *= b - e;
    }
    if positive {
        *acc += term;
    } else {
        *acc -= term;
    }
    for k in from..gens.len() {
        ie_rec(gens, k + 1, &lcm.lcm(gens[k]), !positive, bounds, acc);
    }
}

/// All standard monomials, ordered by `x_n` exponent first, then `x_{n-1}`,
/// down to `x_1` (colexicographic on exponent vectors).
pub fn enumerate_standard(ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
    let count = count_standard(ideal)?;
    if count > BigUint::from(ENUMERATION_LIMIT) {
        return Err(Error::GuardExceeded {
            what: "standard monomial count",
            size: u128::try_from(&count).unwrap_or(u128::MAX),
            limit: ENUMERATION_LIMIT as u128,
        });
    }
    if ideal.is_unit() {
        return Ok(Vec::new());
    }
    if ideal.nvars() == 0 {
        return Ok(vec![Monomial::one(0)]);
    }
    let bx = ArtinianBox::of(ideal)?;
    let walker = Walker::new(ideal, bx.bounds());
    let mut out = Vec::new();
    let active: Vec<usize> = (0..walker.gens.len()).collect();
    walker.collect(&mut Vec::with_capacity(ideal.nvars()), &active, &mut out);
    out.sort_by(|a, b| a.exponents().iter().rev().cmp(b.exponents().iter().rev()));
    Ok(out)
}

/// Writes one exponent vector per line, space separated.
pub fn write_standard(ideal: &MonomialIdeal, mut out: impl std::io::Write) -> std::io::Result<u64> {
    let monomials = enumerate_standard(ideal).map_err(std::io::Error::other)?;
    for m in &monomials {
        let e: Vec<String> = m.exponents().iter().map(u64::to_string).collect();
        writeln!(out, "{}", e.join(" "))?;
    }
    Ok(monomials.len() as u64)
}

/// The sorted rearrangement `q` of `p` satisfies `q_i < lambda_{n-i+1}`.
pub fn is_lambda_parking(p: &[u64], lambda: &[u64]) -> Result<bool> {
    check_lambda(lambda)?;
    if p.len() != lambda.len() {
        return Err(Error::DimensionMismatch {
            expected: lambda.len(),
            found: p.len(),
        });
    }
    let mut sorted = p.to_vec();
    sorted.sort_unstable();
    let n = lambda.len();
    Ok(sorted
        .iter()
        .enumerate()
        .all(|(i, &v)| v < lambda[n - 1 - i]))
}

/// Brute force over `[0, lambda_1)^n`.
pub fn count_lambda_parking(lambda: &[u64]) -> Result<u64> {
    check_lambda(lambda)?;
    let n = lambda.len();
    let side = lambda[0];
    let volume = (side as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if volume > BRUTE_FORCE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "brute-force box",
            size: volume,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut p = vec![0u64; n];
    let mut count = 0;
    loop {
        if is_lambda_parking(&p, lambda)? {
            count += 1;
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            p[i] += 1;
            if p[i] < side {
                break;
            }
            p[i] = 0;
            i += 1;
        }
    }
}

/// Every nonempty `A` of `[n]` has some `i` in `A` with `p_i < d_A(i)`.
pub fn is_g_parking(g: &Multigraph, p: &[u64]) -> Result<bool> {
    let n = g.n();
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.len(),
        });
    }
    for mask in 1..(1u64 << n) {
        let set = VertexSet::from_mask(n, mask)?;
        if !set
            .members()
            .iter()
            .any(|&i| p[i - 1] < g.outside_degree(&set, i))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{parking_ideal, skeleton_ideal};

    fn ideal(nvars: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::new(
            nvars,
            gens.iter().map(|g| Monomial::new(g.to_vec())).collect(),
        )
        .unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            count_standard(&ideal(2, &[&[1, 0], &[0, 1]])).unwrap(),
            big(1)
        );
        let k4 = Multigraph::complete(3, 1, 1).unwrap();
        assert_eq!(
            count_standard(&parking_ideal(&k4).unwrap()).unwrap(),
            big(16)
        );
        assert_eq!(
            count_standard(&skeleton_ideal(&k4, 1).unwrap()).unwrap(),
            big(20)
        );
    }

    #[test]
    fn ie_examples() {
        assert_eq!(
            count_standard_ie(&ideal(2, &[&[2, 0], &[0, 2], &[1, 1]])).unwrap(),
            big(3)
        );
        let g = Multigraph::g_n_r(3, 1).unwrap();
        let i = skeleton_ideal(&g, 1).unwrap();
        assert_eq!(count_standard_ie(&i).unwrap(), big(12));
        assert_eq!(count_standard(&i).unwrap(), big(12));
        assert_eq!(count_standard_ie(&MonomialIdeal::unit(3)).unwrap(), big(0));
        assert_eq!(count_standard(&MonomialIdeal::unit(3)).unwrap(), big(0));
    }

    #[test]
    fn ie_guard() {
        let k6 = Multigraph::complete(5, 1, 1).unwrap();
        let i = parking_ideal(&k6).unwrap();
        assert!(i.generators().len() > IE_MAX_GENERATORS);
        assert!(matches!(
            count_standard_ie(&i),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn enumerate_examples() {
        let k3 = parking_ideal(&Multigraph::complete(2, 1, 1).unwrap()).unwrap();
        let got: Vec<Vec<u64>> = enumerate_standard(&k3)
            .unwrap()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        assert_eq!(got, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);

        let one_var = ideal(1, &[&[1]]);
        assert_eq!(
            enumerate_standard(&one_var).unwrap(),
            vec![Monomial::new(vec![0])]
        );

        let p4 = skeleton_ideal(&Multigraph::path(3).unwrap(), 1).unwrap();
        let got: Vec<Vec<u64>> = enumerate_standard(&p4)
            .unwrap()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        assert_eq!(got, vec![vec![0, 0, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn enumeration_guard() {
        let big_box = ideal(3, &[&[200, 0, 0], &[0, 200, 0], &[0, 0, 200]]);
        assert!(matches!(
            enumerate_standard(&big_box),
            Err(Error::GuardExceeded { .. })
        ));
        assert_eq!(count_standard(&big_box).unwrap(), big(8_000_000));
    }

    #[test]
    fn non_artinian_names_the_variable() {
        let i = ideal(3, &[&[2, 0, 0], &[0, 1, 1], &[0, 0, 4]]);
        assert_eq!(count_standard(&i), Err(Error::NotArtinian { var: 2 }));
        assert_eq!(count_standard_ie(&i), Err(Error::NotArtinian { var: 2 }));
    }

    #[test]
    fn zero_variable_ring() {
        assert_eq!(count_standard(&MonomialIdeal::zero(0)).unwrap(), big(1));
        assert_eq!(count_standard(&MonomialIdeal::unit(0)).unwrap(), big(0));
    }

    #[test]
    fn lambda_parking_examples() {
        assert!(is_lambda_parking(&[1, 0], &[2, 1]).unwrap());
        assert!(!is_lambda_parking(&[1, 1], &[2, 1]).unwrap());
        assert_eq!(count_lambda_parking(&[2, 1]).unwrap(), 3);
        assert!(is_lambda_parking(&[1], &[2, 1]).is_err());
        // ordinary parking functions of length 3
        assert_eq!(count_lambda_parking(&[3, 2, 1]).unwrap(), 16);
    }

    #[test]
    fn g_parking_examples() {
        let k3 = Multigraph::complete(2, 1, 1).unwrap();
        assert!(is_g_parking(&k3, &[0, 1]).unwrap());
        assert!(!is_g_parking(&k3, &[1, 1]).unwrap());
        for seed in 0..10 {
            let g = Multigraph::random_root_deletion(3, 2, 1, seed).unwrap();
            if g.degree(0) > 0 {
                assert!(is_g_parking(&g, &[0, 0, 0]).unwrap());
            }
        }
        assert!(is_g_parking(&k3, &[0]).is_err());
    }

    #[test]
    fn write_streams_one_line_per_monomial() {
        let k3 = parking_ideal(&Multigraph::complete(2, 1, 1).unwrap()).unwrap();
        let mut buf = Vec::new();
        assert_eq!(write_standard(&k3, &mut buf).unwrap(), 3);
        assert_eq!(String::from_utf8(buf).unwrap(), "0 0\n1 0\n0 1\n");
    }
}
