//! Character computation by fixed-point localization. Rank-1 characters
//! come from exact rational-function arithmetic; higher rank is
//! reconstructed from region-wise series expansions and cross-checked
//! under two independent sign assignments. The component machinery
//! evaluates character coefficients for non-isolated fixed sets from
//! supplied characteristic numbers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{dot, LaurentPolynomial, RationalFunction};
use crate::fpdata::{ComponentSet, FixedPointSet};
use crate::partition::{
    count_np, default_circle_split, find_polarizing, sign_assignment_from_polarizing, tilde_c_big,
    CountMode, KostantSign, PolarizingVector, SignAssignment,
};

/// Sign convention for the localization denominators. `Paper` keeps the
/// weights as stored, `Negated` flips every weight first; on toric data
/// the negated convention reproduces the polytope's lattice-point count
/// while the stored orientation yields the interior count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Paper,
    Negated,
}

impl Convention {
    pub fn label(self) -> &'static str {
        match self {
            Convention::Paper => "paper",
            Convention::Negated => "negated",
        }
    }
}

/// The dataset the formulas actually run on under the convention.
pub fn effective_dataset(fps: &FixedPointSet, convention: Convention) -> FixedPointSet {
    match convention {
        Convention::Paper => fps.clone(),
        Convention::Negated => fps.negated_weights(),
    }
}

/// Base window margin, counted in reachable degree steps.
const WINDOW_UNITS: u64 = 20;

/// Equivariant index character from fixed-point data. Rank 1 sums the
/// localization terms over a common denominator and divides exactly;
/// rank >= 2 reconstructs the series expansion under the first two
/// polarizing directions and insists the results coincide.
pub fn character_exact(fps: &FixedPointSet, convention: Convention) -> Result<LaurentPolynomial> {
    let eff = effective_dataset(fps, convention);
    if eff.rank() == 1 {
        return rank1_character(&eff);
    }
    let directions = find_polarizing(&eff, 2);
    let sa1 = sign_assignment_from_polarizing(&eff, &directions[0])?;
    let sa2 = sign_assignment_from_polarizing(&eff, &directions[1])?;
    let c1 = reconstruct_character(&eff, &sa1);
    let c2 = reconstruct_character(&eff, &sa2);
    if c1 != c2 {
        return Err(Error::ReconstructionMismatch {
            message: format!(
                "expansions under directions {:?} and {:?} differ",
                directions[0], directions[1]
            ),
        });
    }
    Ok(c1)
}

/// Character specialized along an integer polarizing direction: the
/// univariate Laurent polynomial whose exponents are the pairings.
pub fn character_polarized(
    fps: &FixedPointSet,
    u: &[BigInt],
    convention: Convention,
) -> Result<LaurentPolynomial> {
    let eff = effective_dataset(fps, convention);
    let rational: Vec<BigRational> = u
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let vector = PolarizingVector::new(&eff, &rational)?;
    let mut sum: Option<RationalFunction> = None;
    for (i, p) in eff.points().iter().enumerate() {
        let moment = vector
            .moment_pairing(i)
            .to_integer();
        let numerator = LaurentPolynomial::monomial(vec![moment], BigInt::one());
        let mut denominator = LaurentPolynomial::one(1);
        for j in 0..p.weights().len() {
            let pairing = vector.pairing(i, j).to_integer();
            let factor =
                LaurentPolynomial::one(1).sub(&LaurentPolynomial::monomial(vec![-pairing], BigInt::one()));
            denominator = denominator.mul(&factor);
        }
        let term = RationalFunction::new(numerator, denominator)?;
        sum = Some(match sum {
            None => term,
            Some(acc) => acc.add(&term),
        });
    }
    sum.expect("datasets are nonempty").to_laurent()
}

fn rank1_character(eff: &FixedPointSet) -> Result<LaurentPolynomial> {
    let mut sum: Option<RationalFunction> = None;
    for p in eff.points() {
        let numerator = LaurentPolynomial::monomial(vec![p.moment()[0].clone()], BigInt::one());
        let mut denominator = LaurentPolynomial::one(1);
        for w in p.weights() {
            let factor = LaurentPolynomial::one(1).sub(&LaurentPolynomial::monomial(
                vec![-w.entries()[0].clone()],
                BigInt::one(),
            ));
            denominator = denominator.mul(&factor);
        }
        let term = RationalFunction::new(numerator, denominator)?;
        sum = Some(match sum {
            None => term,
            Some(acc) => acc.add(&term),
        });
    }
    sum.expect("datasets are nonempty").to_laurent()
}

/// Coefficient of the monomial at `target` in the region expansion:
/// `(-1)^n (sum over Q+ of N_p - sum over Q- of N_p)`.
pub fn expansion_coefficient(
    fps: &FixedPointSet,
    mode: CountMode<'_>,
    target: &[BigInt],
) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for i in 0..fps.points().len() {
        let sigma = match mode {
            CountMode::Circle => default_circle_split(fps, i).sigma,
            CountMode::Polarized(part) => part.sigma(i),
            CountMode::Eps(sa) => sa.sigma(i),
        };
        let count = count_np(fps, i, target, mode)?;
        if sigma > 0 {
            total += count;
        } else {
            total -= count;
        }
    }
    if fps.half_dim() % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// Generating polynomial of the counts at one point: the truncated product
/// `t^J(p) * prod_A sum_{m>=1} t^{m alpha} * prod_B sum_{m>=0} t^{-m alpha}`
/// keeping exponents whose pairing with the assignment's ranking direction
/// stays at most `cap`. Coefficients inside the cap are the exact counts.
pub fn point_count_series(
    fps: &FixedPointSet,
    assignment: &SignAssignment,
    point: usize,
    cap: &BigInt,
) -> LaurentPolynomial {
    let w = assignment.ranking_direction();
    let p = fps.point(point);
    let base_degree = dot(&w, p.moment());
    let mut series = LaurentPolynomial::monomial(p.moment().to_vec(), BigInt::one());
    if base_degree > *cap {
        return LaurentPolynomial::zero(fps.rank());
    }
    let split = assignment.split(point);
    for &j in &split.a_slots {
        let alpha = p.weights()[j].entries();
        let factor = geometric_factor(alpha, false, 1, &w, &(cap - &base_degree));
        series = series.mul_truncated(&factor, &w, cap);
    }
    for &j in &split.b_slots {
        let alpha = p.weights()[j].entries();
        let factor = geometric_factor(alpha, true, 0, &w, &(cap - &base_degree));
        series = series.mul_truncated(&factor, &w, cap);
    }
    series
}

/// `sum_{m >= start} t^(sign * m * alpha)` truncated at relative degree
/// `budget` along `w`; `negate` selects the `t^{-m alpha}` branch.
fn geometric_factor(
    alpha: &[BigInt],
    negate: bool,
    start: u64,
    w: &[BigInt],
    budget: &BigInt,
) -> LaurentPolynomial {
    let step_vec: Vec<BigInt> = if negate {
        alpha.iter().map(|x| -x).collect()
    } else {
        alpha.to_vec()
    };
    let step_cost = dot(w, &step_vec);
    debug_assert!(step_cost.is_positive());
    let mut out = LaurentPolynomial::zero(alpha.len());
    let mut m = BigInt::from(start);
    loop {
        let cost = &m * &step_cost;
        if cost > *budget {
            break;
        }
        let exp: Vec<BigInt> = step_vec.iter().map(|x| x * &m).collect();
        out.add_term(exp, BigInt::one());
        m += 1;
    }
    out
}

/// Reconstruct the character from the expansion under `assignment`. The
/// window cap starts at the largest moment degree plus `half_dim * 20`
/// reachable steps and widens until the trailing stretch of zero
/// coefficients is at least `2 * half_dim` steps long.
pub fn reconstruct_character(
    fps: &FixedPointSet,
    assignment: &SignAssignment,
) -> LaurentPolynomial {
    let w = assignment.ranking_direction();
    let n = fps.half_dim() as u64;
    let step = min_step(fps, assignment, &w);
    let base_max = fps
        .points()
        .iter()
        .map(|p| dot(&w, p.moment()))
        .max()
        .expect("nonempty dataset");
    let mut margin = BigInt::from(n * WINDOW_UNITS) * &step;
    for _attempt in 0..64 {
        let cap = &base_max + &margin;
        let chi = windowed_sum(fps, assignment, &cap);
        let guard = BigInt::from(2 * n) * &step;
        match chi.support_max(&w) {
            None => return chi,
            Some(last) if &cap - &last >= guard => return chi,
            Some(_) => margin += BigInt::from(n * WINDOW_UNITS) * &step,
        }
    }
    panic!("expansion window failed to stabilize");
}

/// Signed sum of the per-point count series; equals the character on
/// every exponent inside the cap.
pub fn windowed_sum(
    fps: &FixedPointSet,
    assignment: &SignAssignment,
    cap: &BigInt,
) -> LaurentPolynomial {
    let mut chi = LaurentPolynomial::zero(fps.rank());
    let global_sign = if fps.half_dim() % 2 == 1 { -1 } else { 1 };
    for i in 0..fps.points().len() {
        let series = point_count_series(fps, assignment, i, cap);
        let sign = BigInt::from(i32::from(assignment.sigma(i) * global_sign));
        chi = chi.add(&series.scale(&sign));
    }
    chi
}

/// Smallest degree increment any slot can contribute under `assignment`.
pub fn min_step(fps: &FixedPointSet, assignment: &SignAssignment, w: &[BigInt]) -> BigInt {
    let mut best: Option<BigInt> = None;
    for (i, p) in fps.points().iter().enumerate() {
        let split = assignment.split(i);
        for &j in split.a_slots.iter().chain(&split.b_slots) {
            let mut cost = dot(w, p.weights()[j].entries());
            if split.b_slots.contains(&j) {
                cost = -cost;
            }
            debug_assert!(cost.is_positive());
            best = Some(match best {
                None => cost,
                Some(b) if cost < b => cost,
                Some(b) => b,
            });
        }
    }
    best.unwrap_or_else(BigInt::one)
}

/// Coefficient of the degree-`k` monomial of the character of a component
/// dataset, specialized along the integer polarizing direction `u`:
/// the characteristic numbers weighted by products of composition counts
/// over the solutions of `sum_j |<u, alpha_Fj>| l_j = k - <u, J(F)>`.
pub fn component_coefficient(cs: &ComponentSet, u: &[BigInt], k: &BigInt) -> Result<BigRational> {
    check_component_polarizing(cs, u)?;
    let mut total = BigRational::zero();
    for c in cs.components() {
        let moment_pairing = dot(u, c.moment());
        let target = k - &moment_pairing;
        let pairings: Vec<BigInt> = c.weights().iter().map(|w| w.pair(u)).collect();
        let magnitudes: Vec<BigInt> = pairings.iter().map(|x| x.abs()).collect();
        let signs: Vec<i8> = pairings
            .iter()
            .map(|x| if x.is_positive() { 1 } else { -1 })
            .collect();
        let solutions = nonneg_knapsack(&magnitudes, &target);
        if solutions.is_empty() {
            continue;
        }
        for tuple in c.support_tuples(cs.half_dim()) {
            let a = c.char_number(&tuple, cs.half_dim());
            if a.is_zero() {
                continue;
            }
            let mut inner = BigInt::zero();
            for l in &solutions {
                let mut product = BigInt::one();
                for (j, lj) in l.iter().enumerate() {
                    product *= tilde_c_big(signs[j], tuple[j] as u64, lj);
                    if product.is_zero() {
                        break;
                    }
                }
                inner += product;
            }
            total += a * BigRational::from_integer(inner);
        }
    }
    Ok(total)
}

/// The unsigned combinatorial weight `D(F, tuple, k)`: the same inner sum
/// with plain composition counts in place of the signed ones.
pub fn component_d(
    cs: &ComponentSet,
    u: &[BigInt],
    component: usize,
    tuple: &[usize],
    k: &BigInt,
) -> Result<BigInt> {
    check_component_polarizing(cs, u)?;
    let c = &cs.components()[component];
    assert_eq!(tuple.len(), c.weights().len());
    let target = k - dot(u, c.moment());
    let pairings: Vec<BigInt> = c.weights().iter().map(|w| w.pair(u)).collect();
    let magnitudes: Vec<BigInt> = pairings.iter().map(|x| x.abs()).collect();
    let mut out = BigInt::zero();
    for l in nonneg_knapsack(&magnitudes, &target) {
        let mut product = BigInt::one();
        for (j, lj) in l.iter().enumerate() {
            let sign = if pairings[j].is_positive() {
                KostantSign::Plus
            } else {
                KostantSign::Minus
            };
            product *= crate::partition::kostant_c_big(sign, tuple[j] as u64, lj);
            if product.is_zero() {
                break;
            }
        }
        out += product;
    }
    Ok(out)
}

/// Parity factor `tau(F, tuple) = prod_j (-sign<u, alpha_Fj>)^(tuple_j + 1)`.
pub fn component_tau(cs: &ComponentSet, u: &[BigInt], component: usize, tuple: &[usize]) -> Result<i8> {
    check_component_polarizing(cs, u)?;
    let c = &cs.components()[component];
    assert_eq!(tuple.len(), c.weights().len());
    let mut tau = 1i8;
    for (j, w) in c.weights().iter().enumerate() {
        let sigma = if w.pair(u).is_positive() { 1 } else { -1 };
        let base = -sigma;
        if (tuple[j] + 1) % 2 == 1 {
            tau *= base;
        }
    }
    Ok(tau)
}

fn check_component_polarizing(cs: &ComponentSet, u: &[BigInt]) -> Result<()> {
    if u.len() != cs.rank() {
        return Err(Error::RankMismatch {
            expected: cs.rank(),
            found: u.len(),
        });
    }
    for c in cs.components() {
        for (j, w) in c.weights().iter().enumerate() {
            if w.pair(u).is_zero() {
                return Err(Error::NotPolarizing {
                    point: c.name().to_string(),
                    slot: j,
                });
            }
        }
    }
    Ok(())
}

/// All `l >= 0` with `sum coeffs[j] * l[j] = target`, coefficients
/// strictly positive; lexicographic order.
fn nonneg_knapsack(coeffs: &[BigInt], target: &BigInt) -> Vec<Vec<BigInt>> {
    fn recurse(
        coeffs: &[BigInt],
        idx: usize,
        rest: &BigInt,
        prefix: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if idx == coeffs.len() {
            if rest.is_zero() {
                out.push(prefix.clone());
            }
            return;
        }
        let max = rest / &coeffs[idx];
        if max.is_negative() {
            return;
        }
        let mut x = BigInt::zero();
        while x <= max {
            prefix.push(x.clone());
            recurse(coeffs, idx + 1, &(rest - &x * &coeffs[idx]), prefix, out);
            prefix.pop();
            x += 1;
        }
    }
    if target.is_negative() {
        return Vec::new();
    }
    let mut out = Vec::new();
    recurse(coeffs, 0, target, &mut Vec::new(), &mut out);
    out
}
