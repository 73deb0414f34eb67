//! Sign partitions of the fixed-point set and the partition-function
//! counters built on them. Each point's weight slots split into a
//! strictly-positive class A and a nonnegative class B (relative to a
//! polarizing direction or a sign assignment); the parity of #B induces
//! the global partition of points into Q+ and Q-.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{dot, strict_feasibility, Feasibility};
use crate::fpdata::FixedPointSet;

/// A direction with nonzero pairing against every weight of the dataset,
/// together with the cached pairings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizingVector {
    entries: Vec<BigRational>,
    /// `pairings[point][slot] = <u, alpha>`
    pairings: Vec<Vec<BigRational>>,
    /// `<u, J(p)>` per point
    moment_pairings: Vec<BigRational>,
}

impl PolarizingVector {
    pub fn new(fps: &FixedPointSet, u: &[BigRational]) -> Result<Self> {
        if u.len() != fps.rank() {
            return Err(Error::RankMismatch {
                expected: fps.rank(),
                found: u.len(),
            });
        }
        let mut pairings = Vec::with_capacity(fps.points().len());
        let mut moment_pairings = Vec::with_capacity(fps.points().len());
        for p in fps.points() {
            let mut row = Vec::with_capacity(p.weights().len());
            for (j, w) in p.weights().iter().enumerate() {
                let pairing = w.pair_rational(u);
                if pairing.is_zero() {
                    return Err(Error::NotPolarizing {
                        point: p.name().to_string(),
                        slot: j,
                    });
                }
                row.push(pairing);
            }
            pairings.push(row);
            moment_pairings.push(
                p.moment()
                    .iter()
                    .zip(u)
                    .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                    .sum(),
            );
        }
        Ok(PolarizingVector {
            entries: u.to_vec(),
            pairings,
            moment_pairings,
        })
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn pairing(&self, point: usize, slot: usize) -> &BigRational {
        &self.pairings[point][slot]
    }

    pub fn moment_pairing(&self, point: usize) -> &BigRational {
        &self.moment_pairings[point]
    }

    /// The direction as an integer vector, when it is one.
    pub fn integer_entries(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|x| x.denom().is_one().then(|| x.numer().clone()))
            .collect()
    }
}

/// Per-point split of the weight slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSplit {
    pub a_slots: Vec<usize>,
    pub b_slots: Vec<usize>,
    pub sigma: i8,
}

impl PointSplit {
    fn from_b(total: usize, b_slots: Vec<usize>) -> Self {
        let a_slots = (0..total).filter(|j| !b_slots.contains(j)).collect();
        let sigma = if b_slots.len() % 2 == 0 { 1 } else { -1 };
        PointSplit {
            a_slots,
            b_slots,
            sigma,
        }
    }
}

/// Partition of a dataset induced by a polarizing vector: slot classes
/// per point and the global Q+/Q- split by the parity sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedPartition {
    vector: PolarizingVector,
    splits: Vec<PointSplit>,
    q_plus: Vec<usize>,
    q_minus: Vec<usize>,
}

impl PolarizedPartition {
    pub fn vector(&self) -> &PolarizingVector {
        &self.vector
    }

    pub fn split(&self, point: usize) -> &PointSplit {
        &self.splits[point]
    }

    pub fn splits(&self) -> &[PointSplit] {
        &self.splits
    }

    pub fn sigma(&self, point: usize) -> i8 {
        self.splits[point].sigma
    }

    pub fn q_plus(&self) -> &[usize] {
        &self.q_plus
    }

    pub fn q_minus(&self) -> &[usize] {
        &self.q_minus
    }

    /// Equality of the combinatorial data only (slot classes and point
    /// classes), ignoring the vector that induced them.
    pub fn same_partition(&self, other: &PolarizedPartition) -> bool {
        self.splits == other.splits
    }
}

/// Split every point's weights by the sign of the pairing with `u`.
pub fn polarize(fps: &FixedPointSet, u: &[BigRational]) -> Result<PolarizedPartition> {
    let vector = PolarizingVector::new(fps, u)?;
    let mut splits = Vec::with_capacity(fps.points().len());
    let mut q_plus = Vec::new();
    let mut q_minus = Vec::new();
    for (i, p) in fps.points().iter().enumerate() {
        let b_slots: Vec<usize> = (0..p.weights().len())
            .filter(|&j| vector.pairing(i, j).is_negative())
            .collect();
        let split = PointSplit::from_b(p.weights().len(), b_slots);
        if split.sigma > 0 {
            q_plus.push(i);
        } else {
            q_minus.push(i);
        }
        splits.push(split);
    }
    Ok(PolarizedPartition {
        vector,
        splits,
        q_plus,
        q_minus,
    })
}

/// Integer-vector convenience for [`polarize`].
pub fn polarize_ints(fps: &FixedPointSet, u: &[BigInt]) -> Result<PolarizedPartition> {
    let rational: Vec<BigRational> = u
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    polarize(fps, &rational)
}

/// Canonical polarization: rank 1 uses the direction `(1)` (recovering the
/// sign split of the weights themselves), higher rank takes the first
/// vector found by [`find_polarizing`].
pub fn default_polarization(fps: &FixedPointSet) -> Result<PolarizedPartition> {
    if fps.rank() == 1 {
        polarize_ints(fps, &[BigInt::one()])
    } else {
        let u = find_polarizing(fps, 1)
            .into_iter()
            .next()
            .expect("a polarizing vector exists for every dataset");
        polarize_ints(fps, &u)
    }
}

/// Deterministic search for integer polarizing vectors: sup-norm balls of
/// radius 1, 2, ... scanned in descending lexicographic order; the first
/// `count` non-orthogonal vectors win.
pub fn find_polarizing(fps: &FixedPointSet, count: usize) -> Vec<Vec<BigInt>> {
    let rank = fps.rank();
    let mut found = Vec::new();
    for radius in 1i64..=10_000 {
        let mut candidate = vec![radius; rank];
        loop {
            if candidate.iter().any(|c| c.abs() == radius) {
                let u: Vec<BigInt> = candidate.iter().map(|&c| BigInt::from(c)).collect();
                let polarizing = fps.all_weights().all(|(_, _, w)| !w.pair(&u).is_zero());
                if polarizing {
                    found.push(u);
                    if found.len() == count {
                        return found;
                    }
                }
            }
            // next vector in descending lexicographic order over the cube
            let mut idx = rank;
            loop {
                if idx == 0 {
                    break;
                }
                idx -= 1;
                if candidate[idx] > -radius {
                    candidate[idx] -= 1;
                    for c in candidate.iter_mut().skip(idx + 1) {
                        *c = radius;
                    }
                    break;
                }
                if idx == 0 {
                    idx = usize::MAX;
                    break;
                }
            }
            if idx == usize::MAX {
                break;
            }
        }
    }
    panic!("no polarizing vector found within the search bound");
}

/// A sign choice per (point, slot) whose open cone
/// `{ w : eps(p,j) * <w, alpha_pj> > 0 for all p, j }` is nonempty,
/// together with a rational interior point of that cone. Slots with
/// eps = -1 form the strictly-positive class A, slots with eps = +1 the
/// nonnegative class B; sigma is the parity of #B as in the polarized
/// case, so the expansion bookkeeping is uniform across modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignAssignment {
    eps: Vec<Vec<i8>>,
    interior: Vec<BigRational>,
    splits: Vec<PointSplit>,
    q_plus: Vec<usize>,
    q_minus: Vec<usize>,
}

impl SignAssignment {
    pub fn eps(&self, point: usize, slot: usize) -> i8 {
        self.eps[point][slot]
    }

    pub fn eps_rows(&self) -> &[Vec<i8>] {
        &self.eps
    }

    pub fn interior(&self) -> &[BigRational] {
        &self.interior
    }

    pub fn split(&self, point: usize) -> &PointSplit {
        &self.splits[point]
    }

    pub fn sigma(&self, point: usize) -> i8 {
        self.splits[point].sigma
    }

    pub fn q_plus(&self) -> &[usize] {
        &self.q_plus
    }

    pub fn q_minus(&self) -> &[usize] {
        &self.q_minus
    }

    /// The antipodal assignment: all signs flipped, interior negated.
    /// Always feasible when `self` is.
    pub fn negated(&self, fps: &FixedPointSet) -> SignAssignment {
        let eps: Vec<Vec<i8>> = self
            .eps
            .iter()
            .map(|row| row.iter().map(|&e| -e).collect())
            .collect();
        let interior: Vec<BigRational> = self.interior.iter().map(|x| -x).collect();
        build_sign_assignment(fps, eps, interior)
    }

    /// Integer multiple of `-interior`; pairs strictly positively with
    /// every folded column, so it ranks the enumeration in eps mode.
    pub(crate) fn ranking_direction(&self) -> Vec<BigInt> {
        let lcm = self
            .interior
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        self.interior
            .iter()
            .map(|x| -(x.numer() * (&lcm / x.denom())))
            .collect()
    }
}

fn build_sign_assignment(
    fps: &FixedPointSet,
    eps: Vec<Vec<i8>>,
    interior: Vec<BigRational>,
) -> SignAssignment {
    let mut splits = Vec::with_capacity(fps.points().len());
    let mut q_plus = Vec::new();
    let mut q_minus = Vec::new();
    for (i, p) in fps.points().iter().enumerate() {
        let b_slots: Vec<usize> = (0..p.weights().len())
            .filter(|&j| eps[i][j] == 1)
            .collect();
        let split = PointSplit::from_b(p.weights().len(), b_slots);
        if split.sigma > 0 {
            q_plus.push(i);
        } else {
            q_minus.push(i);
        }
        splits.push(split);
    }
    SignAssignment {
        eps,
        interior,
        splits,
        q_plus,
        q_minus,
    }
}

/// Check feasibility of the open cone selected by `eps` and build the
/// assignment. `eps` rows follow dataset point order; entries are +1/-1.
pub fn make_sign_assignment(fps: &FixedPointSet, eps: Vec<Vec<i8>>) -> Result<SignAssignment> {
    if eps.len() != fps.points().len() {
        return Err(Error::ModeMismatch {
            message: format!(
                "sign assignment covers {} points, dataset has {}",
                eps.len(),
                fps.points().len()
            ),
        });
    }
    let mut system = Vec::new();
    for (i, p) in fps.points().iter().enumerate() {
        if eps[i].len() != p.weights().len() {
            return Err(Error::ModeMismatch {
                message: format!(
                    "sign assignment row {i} has {} entries, point {} has {} weights",
                    eps[i].len(),
                    p.name(),
                    p.weights().len()
                ),
            });
        }
        for (j, w) in p.weights().iter().enumerate() {
            let e = eps[i][j];
            if e != 1 && e != -1 {
                return Err(Error::ModeMismatch {
                    message: format!("sign assignment entry ({i},{j}) must be +1 or -1"),
                });
            }
            let row: Vec<BigInt> = w
                .entries()
                .iter()
                .map(|x| if e == 1 { x.clone() } else { -x })
                .collect();
            system.push(row);
        }
    }
    match strict_feasibility(&system) {
        Feasibility::Feasible(interior) => Ok(build_sign_assignment(fps, eps, interior)),
        Feasibility::Infeasible => Err(Error::InfeasibleAssignment),
    }
}

/// The sign assignment whose series expansion matches polarization by `u`:
/// `eps(p,j) = -sign <u, alpha_pj>`, with `-u` an interior point of its
/// cone by construction.
pub fn sign_assignment_from_polarizing(
    fps: &FixedPointSet,
    u: &[BigInt],
) -> Result<SignAssignment> {
    let partition = polarize_ints(fps, u)?;
    let eps: Vec<Vec<i8>> = fps
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            (0..p.weights().len())
                .map(|j| {
                    if partition.vector().pairing(i, j).is_positive() {
                        -1
                    } else {
                        1
                    }
                })
                .collect()
        })
        .collect();
    let interior: Vec<BigRational> = u
        .iter()
        .map(|x| BigRational::from_integer(-x.clone()))
        .collect();
    Ok(build_sign_assignment(fps, eps, interior))
}

/// One representation of the target: values of the strictly-positive
/// variables over class A, then the nonnegative variables over class B,
/// both in slot order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub positives: Vec<BigInt>,
    pub nonnegatives: Vec<BigInt>,
}

/// Counting mode for the partition functions.
#[derive(Debug, Clone, Copy)]
pub enum CountMode<'a> {
    /// Rank-1 dataset, weights split by their own sign.
    Circle,
    /// Scalar equation on the pairings with an integer polarizing vector.
    Polarized(&'a PolarizedPartition),
    /// Full vector equation with slot classes from a sign assignment.
    Eps(&'a SignAssignment),
}

/// Number of representations of the target exponent at `point`: solutions
/// of `J(p) + sum_A m_i alpha_i - sum_B n_k alpha_k = l` with
/// `m_i >= 1`, `n_k >= 0`.
pub fn count_np(
    fps: &FixedPointSet,
    point: usize,
    target: &[BigInt],
    mode: CountMode<'_>,
) -> Result<BigInt> {
    Ok(BigInt::from(representations(fps, point, target, mode)?.len()))
}

/// The representations themselves, in lexicographic order on (m, n).
pub fn representations(
    fps: &FixedPointSet,
    point: usize,
    target: &[BigInt],
    mode: CountMode<'_>,
) -> Result<Vec<Representation>> {
    let p = fps.point(point);
    let (split, columns, ranking, folded_target): (
        &PointSplit,
        Vec<Vec<BigInt>>,
        Vec<BigInt>,
        Vec<BigInt>,
    );
    match mode {
        CountMode::Circle => {
            if fps.rank() != 1 {
                return Err(Error::ModeMismatch {
                    message: format!("circle mode on a rank-{} dataset", fps.rank()),
                });
            }
            if target.len() != 1 {
                return Err(Error::ModeMismatch {
                    message: "circle mode takes a scalar target".to_string(),
                });
            }
            let part = default_circle_split(fps, point);
            let mut cols = Vec::new();
            for &j in &part.a_slots {
                cols.push(vec![p.weights()[j].entries()[0].clone()]);
            }
            for &j in &part.b_slots {
                cols.push(vec![-p.weights()[j].entries()[0].clone()]);
            }
            let d = vec![&target[0] - &p.moment()[0]];
            return Ok(enumerate(
                &cols,
                part.a_slots.len(),
                &d,
                &[BigInt::one()],
            ));
        }
        CountMode::Polarized(partition) => {
            if target.len() != 1 {
                return Err(Error::ModeMismatch {
                    message: "polarized mode takes a scalar target".to_string(),
                });
            }
            let Some(u) = partition.vector().integer_entries() else {
                return Err(Error::ModeMismatch {
                    message: "polarized counting requires an integer polarizing vector"
                        .to_string(),
                });
            };
            split = partition.split(point);
            let mut cols = Vec::new();
            for &j in &split.a_slots {
                cols.push(vec![p.weights()[j].pair(&u)]);
            }
            for &j in &split.b_slots {
                cols.push(vec![-p.weights()[j].pair(&u)]);
            }
            columns = cols;
            ranking = vec![BigInt::one()];
            folded_target = vec![&target[0] - dot(&u, p.moment())];
        }
        CountMode::Eps(assignment) => {
            if target.len() != fps.rank() {
                return Err(Error::ModeMismatch {
                    message: format!(
                        "eps mode takes a rank-{} target, found length {}",
                        fps.rank(),
                        target.len()
                    ),
                });
            }
            split = assignment.split(point);
            let mut cols = Vec::new();
            for &j in &split.a_slots {
                cols.push(p.weights()[j].entries().to_vec());
            }
            for &j in &split.b_slots {
                cols.push(p.weights()[j].entries().iter().map(|x| -x).collect());
            }
            columns = cols;
            ranking = assignment.ranking_direction();
            folded_target = target
                .iter()
                .zip(p.moment())
                .map(|(t, j)| t - j)
                .collect();
        }
    }
    Ok(enumerate(
        &columns,
        split.a_slots.len(),
        &folded_target,
        &ranking,
    ))
}

/// Slot split of a rank-1 point by the sign of each weight.
pub(crate) fn default_circle_split(fps: &FixedPointSet, point: usize) -> PointSplit {
    let p = fps.point(point);
    let b_slots: Vec<usize> = (0..p.weights().len())
        .filter(|&j| p.weights()[j].entries()[0].is_negative())
        .collect();
    PointSplit::from_b(p.weights().len(), b_slots)
}

/// Bounded depth-first enumeration of `sum_v x_v * col_v = target` where
/// the first `strict` variables satisfy `x >= 1` and the rest `x >= 0`.
/// Every column pairs strictly positively with `ranking`, which bounds
/// each variable and guarantees termination; the exact vector equation is
/// checked at the leaves.
fn enumerate(
    columns: &[Vec<BigInt>],
    strict: usize,
    target: &[BigInt],
    ranking: &[BigInt],
) -> Vec<Representation> {
    let costs: Vec<BigInt> = columns.iter().map(|c| dot(ranking, c)).collect();
    debug_assert!(costs.iter().all(|c| c.is_positive()));
    // minimal ranking cost of the variables from index i onward
    let mut tail_min = vec![BigInt::zero(); columns.len() + 1];
    for i in (0..columns.len()).rev() {
        tail_min[i] = &tail_min[i + 1]
            + if i < strict {
                costs[i].clone()
            } else {
                BigInt::zero()
            };
    }
    let mut out = Vec::new();
    let mut assignment = vec![BigInt::zero(); columns.len()];
    let budget = dot(ranking, target);
    dfs(
        columns,
        strict,
        &costs,
        &tail_min,
        0,
        &mut target.to_vec(),
        budget,
        &mut assignment,
        &mut out,
    );
    out
        .into_iter()
        .map(|x| Representation {
            positives: x[..strict].to_vec(),
            nonnegatives: x[strict..].to_vec(),
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    columns: &[Vec<BigInt>],
    strict: usize,
    costs: &[BigInt],
    tail_min: &[BigInt],
    idx: usize,
    residual: &mut Vec<BigInt>,
    residual_cost: BigInt,
    assignment: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    if idx == columns.len() {
        if residual.iter().all(|x| x.is_zero()) {
            out.push(assignment.clone());
        }
        return;
    }
    let lower = if idx < strict {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    let headroom = &residual_cost - &tail_min[idx + 1];
    let upper = headroom.div_floor(&costs[idx]);
    if upper < lower {
        return;
    }
    let mut x = lower.clone();
    // enter at x = lower
    for (r, c) in residual.iter_mut().zip(&columns[idx]) {
        *r -= &lower * c;
    }
    let mut cost_left = &residual_cost - &lower * &costs[idx];
    loop {
        assignment[idx] = x.clone();
        dfs(
            columns,
            strict,
            costs,
            tail_min,
            idx + 1,
            residual,
            cost_left.clone(),
            assignment,
            out,
        );
        x += 1;
        if x > upper {
            break;
        }
        for (r, c) in residual.iter_mut().zip(&columns[idx]) {
            *r -= c;
        }
        cost_left -= &costs[idx];
    }
    // restore residual
    for (r, c) in residual.iter_mut().zip(&columns[idx]) {
        *r += &upper * c;
    }
    assignment[idx] = BigInt::zero();
}

/// Composition counts from the two geometric expansions of
/// `tau^m / (1 - tau)^(m+1)`:
/// minus branch counts tuples with `m + a_1 + ... + a_{m+1} = l`,
/// plus branch counts tuples with `a_1 + ... + a_{m+1} = l - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KostantSign {
    Plus,
    Minus,
}

/// Closed form: stars and bars gives `C_-(m,l) = C(l,m)` for `l >= m`
/// and `C_+(m,l) = C(l-1+m,m)` for `l >= 1`, both zero otherwise.
pub fn kostant_c(sign: KostantSign, m: u64, l: u64) -> BigInt {
    kostant_c_big(sign, m, &BigInt::from(l))
}

/// Closed form for targets beyond machine range.
pub fn kostant_c_big(sign: KostantSign, m: u64, l: &BigInt) -> BigInt {
    match sign {
        KostantSign::Minus => {
            if *l < BigInt::from(m) {
                BigInt::zero()
            } else {
                binomial_big(l, m)
            }
        }
        KostantSign::Plus => {
            if !l.is_positive() {
                BigInt::zero()
            } else {
                binomial_big(&(l - 1 + m), m)
            }
        }
    }
}

/// Exhaustive tuple enumeration of the same counts; the oracle for the
/// closed form.
pub fn kostant_c_brute(sign: KostantSign, m: u64, l: u64) -> BigInt {
    let total = match sign {
        KostantSign::Minus => {
            if l < m {
                return BigInt::zero();
            }
            l - m
        }
        KostantSign::Plus => {
            if l == 0 {
                return BigInt::zero();
            }
            l - 1
        }
    };
    fn count(parts: u64, sum: u64) -> u64 {
        if parts == 1 {
            return 1;
        }
        (0..=sum).map(|a| count(parts - 1, sum - a)).sum()
    }
    BigInt::from(count(m + 1, total))
}

/// `(-sigma)^(m+1) * C_sigma(m, l)` for `sigma` in {+1, -1}.
pub fn tilde_c(sigma: i8, m: u64, l: u64) -> BigInt {
    tilde_c_big(sigma, m, &BigInt::from(l))
}

pub fn tilde_c_big(sigma: i8, m: u64, l: &BigInt) -> BigInt {
    assert!(sigma == 1 || sigma == -1);
    let base = if sigma == 1 {
        kostant_c_big(KostantSign::Plus, m, l)
    } else {
        kostant_c_big(KostantSign::Minus, m, l)
    };
    let flip = if sigma == 1 { m % 2 == 0 } else { false };
    if flip {
        -base
    } else {
        base
    }
}

/// `C(n, k)` for nonnegative `n`; exact stepwise division.
fn binomial_big(n: &BigInt, k: u64) -> BigInt {
    if *n < BigInt::from(k) {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * (n - i) / BigInt::from(i + 1);
    }
    out
}
