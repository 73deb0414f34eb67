use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial with integer coefficients and exponent
/// vectors in `Z^rank`. Zero coefficients are never stored, and terms
/// iterate in lexicographic order on the exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    rank: usize,
    terms: BTreeMap<Vec<BigInt>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(rank: usize) -> Self {
        LaurentPolynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![BigInt::zero(); rank], BigInt::one())
    }

    pub fn monomial(exponent: Vec<BigInt>, coefficient: BigInt) -> Self {
        let rank = exponent.len();
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        LaurentPolynomial { rank, terms }
    }

    /// Univariate monomial `c * z^e`.
    pub fn monomial1(exponent: impl Into<BigInt>, coefficient: impl Into<BigInt>) -> Self {
        Self::monomial(vec![exponent.into()], coefficient.into())
    }

    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<BigInt>, BigInt)>,
    {
        let mut poly = Self::zero(rank);
        for (exp, coeff) in terms {
            if exp.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: exp.len(),
                });
            }
            poly.add_term(exp, coeff);
        }
        Ok(poly)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[BigInt], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient at `exponent`; zero for absent exponents.
    pub fn coeff(&self, exponent: &[BigInt]) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Univariate coefficient lookup.
    pub fn coeff1(&self, exponent: impl Into<BigInt>) -> BigInt {
        self.coeff(&[exponent.into()])
    }

    pub(crate) fn add_term(&mut self, exponent: Vec<BigInt>, coefficient: BigInt) {
        debug_assert_eq!(exponent.len(), self.rank);
        if coefficient.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponent) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (exp, coeff) in &other.terms {
            out.add_term(exp.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("rank mismatch in add")
    }

    pub fn negate(&self) -> Self {
        LaurentPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<BigInt> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exp, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("rank mismatch in mul")
    }

    /// Product that drops every term whose pairing with `weight_vector`
    /// exceeds `cap`. Sound whenever all later factors can only raise the
    /// pairing, which is how the expansion code uses it.
    pub fn mul_truncated(&self, other: &Self, weight_vector: &[BigInt], cap: &BigInt) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch in mul_truncated");
        assert_eq!(weight_vector.len(), self.rank);
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<BigInt> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if dot(weight_vector, &exp) > *cap {
                    continue;
                }
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    /// Shift exponents: multiply by the monomial `t^shift`.
    pub fn mul_monomial(&self, shift: &[BigInt], coefficient: &BigInt) -> Self {
        assert_eq!(shift.len(), self.rank);
        if coefficient.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let exp: Vec<BigInt> = e.iter().zip(shift).map(|(x, y)| x + y).collect();
                    (exp, c * coefficient)
                })
                .collect(),
        }
    }

    /// Maximum of `<direction, exponent>` over the support; `None` for the
    /// zero polynomial (the minus-infinity sentinel).
    pub fn support_max(&self, direction: &[BigInt]) -> Option<BigInt> {
        assert_eq!(direction.len(), self.rank);
        self.terms.keys().map(|e| dot(direction, e)).max()
    }

    pub fn support_min(&self, direction: &[BigInt]) -> Option<BigInt> {
        assert_eq!(direction.len(), self.rank);
        self.terms.keys().map(|e| dot(direction, e)).min()
    }

    /// Specialize exponents along `direction`: the univariate polynomial
    /// with the exponent of each term replaced by its pairing.
    pub fn specialize(&self, direction: &[BigInt]) -> LaurentPolynomial {
        assert_eq!(direction.len(), self.rank);
        let mut out = Self::zero(1);
        for (exp, coeff) in &self.terms {
            out.add_term(vec![dot(direction, exp)], coeff.clone());
        }
        out
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    /// Render with the given variable letter: `1 + z + z^2` for rank 1,
    /// `t^(1,0) + 2t^(0,1)` for higher rank.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let monomial = render_monomial(var, exp);
            if monomial.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&monomial);
            } else {
                out.push_str(&abs.to_string());
                out.push_str(&monomial);
            }
        }
        out
    }
}

fn render_monomial(var: &str, exp: &[BigInt]) -> String {
    if exp.len() == 1 {
        let e = &exp[0];
        if e.is_zero() {
            String::new()
        } else if e.is_one() {
            var.to_string()
        } else {
            format!("{var}^{e}")
        }
    } else if exp.iter().all(|e| e.is_zero()) {
        String::new()
    } else {
        let coords: Vec<String> = exp.iter().map(|e| e.to_string()).collect();
        format!("{var}^({})", coords.join(","))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.rank == 1 { "z" } else { "t" };
        write!(f, "{}", self.render(var))
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> LaurentPolynomial {
        LaurentPolynomial::monomial1(1, 1)
    }

    #[test]
    fn difference_of_squares() {
        let one = LaurentPolynomial::one(1);
        let lhs = one.add(&z()).mul(&one.sub(&z()));
        let expected = one.sub(&z().mul(&z()));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn coeff_of_zero_polynomial() {
        let p = LaurentPolynomial::zero(3);
        assert_eq!(p.coeff(&[1.into(), (-2).into(), 0.into()]), BigInt::zero());
    }

    #[test]
    fn support_max_univariate() {
        let p = LaurentPolynomial::one(1)
            .add(&z())
            .add(&z().mul(&z()));
        assert_eq!(p.support_max(&[1.into()]), Some(2.into()));
        assert_eq!(p.support_min(&[1.into()]), Some(0.into()));
        assert_eq!(LaurentPolynomial::zero(1).support_max(&[1.into()]), None);
    }

    #[test]
    fn cancelling_add_removes_term() {
        let p = z().add(&z().negate());
        assert!(p.is_zero());
    }

    #[test]
    fn rank_mismatch_reported() {
        let p = LaurentPolynomial::one(1);
        let q = LaurentPolynomial::one(2);
        assert!(matches!(
            p.try_add(&q),
            Err(Error::RankMismatch { expected: 1, found: 2 })
        ));
        assert!(matches!(p.try_mul(&q), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn render_univariate() {
        let p = LaurentPolynomial::one(1)
            .add(&z())
            .add(&z().mul(&z()));
        assert_eq!(p.render("z"), "1 + z + z^2");
        let q = LaurentPolynomial::monomial1(-2, -3).add(&LaurentPolynomial::one(1));
        assert_eq!(q.render("z"), "-3z^-2 + 1");
        assert_eq!(LaurentPolynomial::zero(1).render("z"), "0");
    }

    #[test]
    fn specialize_pairs_exponents() {
        let p = LaurentPolynomial::monomial(vec![1.into(), 0.into()], 1.into())
            .add(&LaurentPolynomial::monomial(vec![0.into(), 1.into()], 1.into()));
        let s = p.specialize(&[2.into(), 1.into()]);
        assert_eq!(s.coeff1(2), BigInt::one());
        assert_eq!(s.coeff1(1), BigInt::one());
    }
}
