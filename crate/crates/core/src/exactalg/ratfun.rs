use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::laurent::LaurentPolynomial;

/// Quotient of univariate Laurent polynomials. Normalized so that the
/// denominator has nonnegative minimal exponent and positive leading
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: LaurentPolynomial,
    denominator: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(numerator: LaurentPolynomial, denominator: LaurentPolynomial) -> Result<Self> {
        if numerator.rank() != 1 {
            return Err(Error::RankMismatch {
                expected: 1,
                found: numerator.rank(),
            });
        }
        if denominator.rank() != 1 {
            return Err(Error::RankMismatch {
                expected: 1,
                found: denominator.rank(),
            });
        }
        if denominator.is_zero() {
            return Err(Error::NotPolynomial {
                message: "zero denominator".to_string(),
            });
        }
        let mut rf = RationalFunction {
            numerator,
            denominator,
        };
        rf.normalize();
        Ok(rf)
    }

    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        RationalFunction::new(p, LaurentPolynomial::one(1)).expect("unit denominator")
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.denominator
    }

    fn normalize(&mut self) {
        let one = [BigInt::one()];
        if let Some(min) = self.denominator.support_min(&one) {
            if min.is_negative() {
                let shift = [-min];
                let unit = BigInt::one();
                self.numerator = self.numerator.mul_monomial(&shift, &unit);
                self.denominator = self.denominator.mul_monomial(&shift, &unit);
            }
        }
        let lead_exp = self
            .denominator
            .support_max(&one)
            .expect("nonzero denominator");
        if self.denominator.coeff(&[lead_exp]).is_negative() {
            self.numerator = self.numerator.negate();
            self.denominator = self.denominator.negate();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .numerator
            .mul(&other.denominator)
            .add(&other.numerator.mul(&self.denominator));
        let den = self.denominator.mul(&other.denominator);
        RationalFunction::new(num, den).expect("denominators stay nonzero")
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction::new(
            self.numerator.mul(&other.numerator),
            self.denominator.mul(&other.denominator),
        )
        .expect("denominators stay nonzero")
    }

    /// Exact division. Fails with `NotPolynomial` when the quotient is not
    /// an integer-coefficient Laurent polynomial.
    pub fn to_laurent(&self) -> Result<LaurentPolynomial> {
        divide_exact(&self.numerator, &self.denominator)
    }
}

/// Long division by descending exponents over the rationals, with an
/// integrality check on the quotient. The quotient of Laurent polynomials,
/// when it exists, has its exponents confined to
/// `[min(num)-min(den), max(num)-max(den)]`, which bounds the loop.
fn divide_exact(
    numerator: &LaurentPolynomial,
    denominator: &LaurentPolynomial,
) -> Result<LaurentPolynomial> {
    let one = [BigInt::one()];
    if denominator.is_zero() {
        return Err(Error::NotPolynomial {
            message: "zero denominator".to_string(),
        });
    }
    if numerator.is_zero() {
        return Ok(LaurentPolynomial::zero(1));
    }
    let den_max = denominator.support_max(&one).expect("nonzero");
    let den_min = denominator.support_min(&one).expect("nonzero");
    let num_min = numerator.support_min(&one).expect("nonzero");
    let min_quotient_exp = &num_min - &den_min;

    let mut rem: Vec<(BigInt, BigRational)> = numerator
        .terms()
        .map(|(e, c)| (e[0].clone(), BigRational::from_integer(c.clone())))
        .collect();
    // kept sorted ascending by exponent; the lead is the last entry
    let den_terms: Vec<(BigInt, BigRational)> = denominator
        .terms()
        .map(|(e, c)| (e[0].clone(), BigRational::from_integer(c.clone())))
        .collect();
    let den_lead = den_terms
        .iter()
        .find(|(e, _)| *e == den_max)
        .expect("lead term")
        .1
        .clone();

    let mut quotient: Vec<(BigInt, BigRational)> = Vec::new();
    while let Some((lead_exp, lead_coeff)) = rem.last().cloned() {
        let q_exp = &lead_exp - &den_max;
        if q_exp < min_quotient_exp {
            return Err(Error::NotPolynomial {
                message: format!("nonzero remainder of degree {lead_exp}"),
            });
        }
        let q_coeff = lead_coeff / &den_lead;
        for (de, dc) in &den_terms {
            let e = &q_exp + de;
            let delta = -(&q_coeff * dc);
            merge_term(&mut rem, e, delta);
        }
        quotient.push((q_exp, q_coeff));
    }

    let mut out = LaurentPolynomial::zero(1);
    for (e, c) in quotient {
        if !c.denom().is_one() {
            return Err(Error::NotPolynomial {
                message: format!("non-integer coefficient {c} at exponent {e}"),
            });
        }
        out.add_term(vec![e], c.numer().clone());
    }
    Ok(out)
}

fn merge_term(terms: &mut Vec<(BigInt, BigRational)>, exp: BigInt, delta: BigRational) {
    if delta.is_zero() {
        return;
    }
    match terms.binary_search_by(|(e, _)| e.cmp(&exp)) {
        Ok(i) => {
            terms[i].1 += delta;
            if terms[i].1.is_zero() {
                terms.remove(i);
            }
        }
        Err(i) => {
            terms.insert(i, (exp, delta));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pairs: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            1,
            pairs
                .iter()
                .map(|&(e, c)| (vec![BigInt::from(e)], BigInt::from(c))),
        )
        .unwrap()
    }

    #[test]
    fn normalization_clears_negative_exponents() {
        // 1 / (1 - z^-2)  ->  z^2 / (z^2 - 1)
        let rf = RationalFunction::new(poly(&[(0, 1)]), poly(&[(0, 1), (-2, -1)])).unwrap();
        assert_eq!(rf.numerator(), &poly(&[(2, 1)]));
        assert_eq!(rf.denominator(), &poly(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn exact_division_recovers_factor() {
        // (1 - z^3) / (1 - z) = 1 + z + z^2
        let rf = RationalFunction::new(poly(&[(0, 1), (3, -1)]), poly(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(rf.to_laurent().unwrap(), poly(&[(0, 1), (1, 1), (2, 1)]));
    }

    #[test]
    fn inexact_division_rejected() {
        // 1 / (1 - z^-1) is a geometric series, not a Laurent polynomial.
        let rf = RationalFunction::new(poly(&[(0, 1)]), poly(&[(0, 1), (-1, -1)])).unwrap();
        assert!(matches!(rf.to_laurent(), Err(Error::NotPolynomial { .. })));
    }

    #[test]
    fn sum_of_simple_poles_cancels() {
        // 1/(1-z) + 1/(1-z^-1) = 1
        let a = RationalFunction::new(poly(&[(0, 1)]), poly(&[(0, 1), (1, -1)])).unwrap();
        let b = RationalFunction::new(poly(&[(0, 1)]), poly(&[(0, 1), (-1, -1)])).unwrap();
        assert_eq!(a.add(&b).to_laurent().unwrap(), poly(&[(0, 1)]));
    }

    #[test]
    fn product_of_fractions_divides_out() {
        // (1-z^2)/(1-z) * (1-z^3)/(1-z) = (1+z)(1+z+z^2)
        let a = RationalFunction::new(poly(&[(0, 1), (2, -1)]), poly(&[(0, 1), (1, -1)])).unwrap();
        let b = RationalFunction::new(poly(&[(0, 1), (3, -1)]), poly(&[(0, 1), (1, -1)])).unwrap();
        let expected = poly(&[(0, 1), (1, 1)]).mul(&poly(&[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(a.mul(&b).to_laurent().unwrap(), expected);
    }

    #[test]
    fn laurent_quotient_with_negative_exponents() {
        // (z^-1 + 1) * (1 + z) / (1 + z) = z^-1 + 1
        let num = poly(&[(-1, 1), (0, 2), (1, 1)]);
        let rf = RationalFunction::new(num, poly(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(rf.to_laurent().unwrap(), poly(&[(-1, 1), (0, 1)]));
    }
}
