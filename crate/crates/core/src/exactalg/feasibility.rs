use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Outcome of a strict homogeneous feasibility query: does some `u`
/// satisfy `<u, a> > 0` for every row `a` of the system?
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Exact Fourier-Motzkin elimination on the strict system `<u, a_i> > 0`.
/// Variables are eliminated in ascending index order; back-substitution
/// picks interval midpoints (or a unit offset on one-sided intervals), so
/// the witness is deterministic. The witness is re-checked against every
/// input row before it is returned.
pub fn strict_feasibility(system: &[Vec<BigInt>]) -> Feasibility {
    if system.is_empty() {
        return Feasibility::Feasible(Vec::new());
    }
    let dim = system[0].len();
    for a in system {
        assert_eq!(a.len(), dim, "constraint length mismatch");
        assert!(a.iter().any(|x| !x.is_zero()), "zero constraint vector");
    }

    // stages[k] holds primitive integer constraint vectors over u_k..u_{dim-1}
    let mut stages: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(dim + 1);
    stages.push(dedup(system.iter().map(|a| primitive(a.clone()))));

    for k in 0..dim {
        let current = &stages[k];
        if current.iter().any(|c| c.iter().all(|x| x.is_zero())) {
            return Feasibility::Infeasible;
        }
        let mut next: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        let lowers: Vec<&Vec<BigInt>> = current.iter().filter(|c| c[0].is_positive()).collect();
        let uppers: Vec<&Vec<BigInt>> = current.iter().filter(|c| c[0].is_negative()).collect();
        for c in current.iter().filter(|c| c[0].is_zero()) {
            next.insert(primitive(c[1..].to_vec()));
        }
        for lo in &lowers {
            for up in &uppers {
                // lo: p0 u_k + <p', u'> > 0 with p0 > 0
                // up: q0 u_k + <q', u'> > 0 with q0 < 0
                // pair condition: p0 <q', u'> + (-q0) <p', u'> > 0
                let p0 = &lo[0];
                let q0_neg = -&up[0];
                let combined: Vec<BigInt> = lo[1..]
                    .iter()
                    .zip(&up[1..])
                    .map(|(p, q)| p0 * q + &q0_neg * p)
                    .collect();
                next.insert(primitive(combined));
            }
        }
        stages.push(next.into_iter().collect());
        if k + 1 < dim && stages[k + 1].iter().any(|c| c.iter().all(|x| x.is_zero())) {
            return Feasibility::Infeasible;
        }
    }
    // any surviving zero-length constraint reads 0 > 0
    if !stages[dim].is_empty() {
        return Feasibility::Infeasible;
    }

    let mut witness = vec![BigRational::zero(); dim];
    for k in (0..dim).rev() {
        let tail = &witness[k + 1..];
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for c in &stages[k] {
            let head = &c[0];
            if head.is_zero() {
                continue;
            }
            let rest: BigRational = c[1..]
                .iter()
                .zip(tail)
                .map(|(coef, val)| BigRational::from_integer(coef.clone()) * val)
                .sum();
            let bound = -rest / BigRational::from_integer(head.clone());
            if head.is_positive() {
                lower = Some(match lower {
                    Some(cur) if cur >= bound => cur,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(cur) if cur <= bound => cur,
                    _ => bound,
                });
            }
        }
        witness[k] = match (lower, upper) {
            (Some(lo), Some(hi)) => (lo + hi) / BigRational::from_integer(2.into()),
            (Some(lo), None) => lo + BigRational::one(),
            (None, Some(hi)) => hi - BigRational::one(),
            (None, None) => BigRational::zero(),
        };
    }

    for a in system {
        let value: BigRational = a
            .iter()
            .zip(&witness)
            .map(|(coef, val)| BigRational::from_integer(coef.clone()) * val)
            .sum();
        assert!(
            value.is_positive(),
            "back-substituted witness violates a constraint"
        );
    }
    Feasibility::Feasible(witness)
}

/// Divide out the gcd of the entries (positive scaling preserves strict
/// inequalities).
fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

fn dedup(iter: impl Iterator<Item = Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let set: BTreeSet<Vec<BigInt>> = iter.collect();
    set.into_iter().collect()
}
