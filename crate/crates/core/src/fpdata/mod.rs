//! Fixed-point dataset model: integer moment vectors and isotropy weights
//! for a rank-`r` torus action, plus the non-isolated variant where fixed
//! components carry rational characteristic numbers.
//!
//! Moments are stored as plain integers. A common shift of every moment
//! multiplies the character by a single monomial and changes no verdict,
//! so no normalization is imposed on the input data.

mod json;
mod toric;

pub use json::{parse_dataset, serialize_dataset};
pub use toric::{restrict_to_circle, segment, simplex, toric_product, DelzantPolytope, ToricVertex};

use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Exponent of a torus character; never the zero vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(Vec<BigInt>);

impl WeightVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.iter().all(|x| x.is_zero()) {
            return Err(Error::Invariant {
                path: "weight".to_string(),
                message: "zero weight vector".to_string(),
            });
        }
        Ok(WeightVector(entries))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> WeightVector {
        WeightVector(self.0.iter().map(|x| -x).collect())
    }

    /// Integer pairing `<u, alpha>`.
    pub fn pair(&self, u: &[BigInt]) -> BigInt {
        crate::exactalg::dot(u, &self.0)
    }

    /// Rational pairing `<u, alpha>`.
    pub fn pair_rational(&self, u: &[BigRational]) -> BigRational {
        self.0
            .iter()
            .zip(u)
            .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
            .sum()
    }
}

/// Isolated fixed point: integer moment vector and one weight per
/// tangent-space line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoint {
    name: String,
    moment: Vec<BigInt>,
    weights: Vec<WeightVector>,
}

impl FixedPoint {
    pub fn new(name: impl Into<String>, moment: Vec<BigInt>, weights: Vec<WeightVector>) -> Self {
        FixedPoint {
            name: name.into(),
            moment,
            weights,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn moment(&self) -> &[BigInt] {
        &self.moment
    }

    pub fn weights(&self) -> &[WeightVector] {
        &self.weights
    }
}

/// Fixed-point data of a rank-`r` torus action with discrete fixed set on
/// a manifold of dimension `2 * half_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointSet {
    rank: usize,
    half_dim: usize,
    points: Vec<FixedPoint>,
}

impl FixedPointSet {
    pub fn new(rank: usize, half_dim: usize, points: Vec<FixedPoint>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Invariant {
                path: "rank".to_string(),
                message: "rank must be at least 1".to_string(),
            });
        }
        if half_dim == 0 {
            return Err(Error::Invariant {
                path: "half_dim".to_string(),
                message: "half_dim must be at least 1".to_string(),
            });
        }
        if points.is_empty() {
            return Err(Error::Invariant {
                path: "points".to_string(),
                message: "point list is empty".to_string(),
            });
        }
        let mut seen = BTreeSet::new();
        for (i, p) in points.iter().enumerate() {
            let path = format!("points[{i}]");
            if !seen.insert(p.name.clone()) {
                return Err(Error::Invariant {
                    path: format!("{path}.name"),
                    message: format!("duplicate point name {:?}", p.name),
                });
            }
            if p.moment.len() != rank {
                return Err(Error::Invariant {
                    path: format!("{path}.moment"),
                    message: format!("expected {rank} entries, found {}", p.moment.len()),
                });
            }
            if p.weights.len() != half_dim {
                return Err(Error::Invariant {
                    path: format!("{path}.weights"),
                    message: format!("expected {half_dim} weights, found {}", p.weights.len()),
                });
            }
            for (j, w) in p.weights.iter().enumerate() {
                if w.len() != rank {
                    return Err(Error::Invariant {
                        path: format!("{path}.weights[{j}]"),
                        message: format!("expected {rank} entries, found {}", w.len()),
                    });
                }
            }
        }
        Ok(FixedPointSet {
            rank,
            half_dim,
            points,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &FixedPoint {
        &self.points[index]
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p.name == name)
    }

    /// Same data with every weight negated; moments unchanged.
    pub fn negated_weights(&self) -> FixedPointSet {
        FixedPointSet {
            rank: self.rank,
            half_dim: self.half_dim,
            points: self
                .points
                .iter()
                .map(|p| FixedPoint {
                    name: p.name.clone(),
                    moment: p.moment.clone(),
                    weights: p.weights.iter().map(WeightVector::negated).collect(),
                })
                .collect(),
        }
    }

    /// All weights of all points in dataset order.
    pub fn all_weights(&self) -> impl Iterator<Item = (&FixedPoint, usize, &WeightVector)> {
        self.points
            .iter()
            .flat_map(|p| p.weights.iter().enumerate().map(move |(j, w)| (p, j, w)))
    }
}

/// Connected fixed component: moment, normal-bundle weights, and the
/// characteristic numbers indexed by exponent tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    name: String,
    moment: Vec<BigInt>,
    weights: Vec<WeightVector>,
    char_numbers: BTreeMap<Vec<usize>, BigRational>,
}

impl Component {
    pub fn new(
        name: impl Into<String>,
        moment: Vec<BigInt>,
        weights: Vec<WeightVector>,
        char_numbers: BTreeMap<Vec<usize>, BigRational>,
    ) -> Self {
        Component {
            name: name.into(),
            moment,
            weights,
            char_numbers,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn moment(&self) -> &[BigInt] {
        &self.moment
    }

    pub fn weights(&self) -> &[WeightVector] {
        &self.weights
    }

    /// Half the codimension of the component.
    pub fn codim_half(&self) -> usize {
        self.weights.len()
    }

    pub fn char_numbers(&self) -> &BTreeMap<Vec<usize>, BigRational> {
        &self.char_numbers
    }

    /// Characteristic number at the exponent tuple, applying the defaults:
    /// omitted entries are zero, except the all-zeros entry of an isolated
    /// point (codim_half == half_dim) which defaults to one.
    pub fn char_number(&self, tuple: &[usize], half_dim: usize) -> BigRational {
        if let Some(v) = self.char_numbers.get(tuple) {
            return v.clone();
        }
        if self.codim_half() == half_dim && tuple.iter().all(|&n| n == 0) {
            return BigRational::one();
        }
        BigRational::zero()
    }

    /// Exponent tuples with a potentially nonzero characteristic number.
    pub fn support_tuples(&self, half_dim: usize) -> Vec<Vec<usize>> {
        let mut tuples: BTreeSet<Vec<usize>> = self.char_numbers.keys().cloned().collect();
        if self.codim_half() == half_dim {
            tuples.insert(vec![0; self.codim_half()]);
        }
        tuples.into_iter().collect()
    }
}

/// Fixed-component data for a rank-`r` action whose fixed set need not be
/// discrete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSet {
    rank: usize,
    half_dim: usize,
    components: Vec<Component>,
}

impl ComponentSet {
    pub fn new(rank: usize, half_dim: usize, components: Vec<Component>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Invariant {
                path: "rank".to_string(),
                message: "rank must be at least 1".to_string(),
            });
        }
        if half_dim == 0 {
            return Err(Error::Invariant {
                path: "half_dim".to_string(),
                message: "half_dim must be at least 1".to_string(),
            });
        }
        let mut seen = BTreeSet::new();
        for (i, c) in components.iter().enumerate() {
            let path = format!("components[{i}]");
            if !seen.insert(c.name.clone()) {
                return Err(Error::Invariant {
                    path: format!("{path}.name"),
                    message: format!("duplicate component name {:?}", c.name),
                });
            }
            if c.moment.len() != rank {
                return Err(Error::Invariant {
                    path: format!("{path}.moment"),
                    message: format!("expected {rank} entries, found {}", c.moment.len()),
                });
            }
            if c.weights.len() > half_dim {
                return Err(Error::Invariant {
                    path: format!("{path}.weights"),
                    message: format!(
                        "component has {} normal weights but half_dim is {half_dim}",
                        c.weights.len()
                    ),
                });
            }
            for (j, w) in c.weights.iter().enumerate() {
                if w.len() != rank {
                    return Err(Error::Invariant {
                        path: format!("{path}.weights[{j}]"),
                        message: format!("expected {rank} entries, found {}", w.len()),
                    });
                }
            }
            for tuple in c.char_numbers.keys() {
                if tuple.len() != c.weights.len() {
                    return Err(Error::Invariant {
                        path: format!("{path}.char_numbers"),
                        message: format!(
                            "tuple {:?} has length {}, expected {}",
                            tuple,
                            tuple.len(),
                            c.weights.len()
                        ),
                    });
                }
                if let Some(&bad) = tuple.iter().find(|&&n| n > half_dim) {
                    return Err(Error::Invariant {
                        path: format!("{path}.char_numbers"),
                        message: format!("tuple entry {bad} exceeds half_dim {half_dim}"),
                    });
                }
            }
        }
        Ok(ComponentSet {
            rank,
            half_dim,
            components,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }
}

/// Either dataset kind, as read from a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dataset {
    Points(FixedPointSet),
    Components(ComponentSet),
}

impl Dataset {
    pub fn rank(&self) -> usize {
        match self {
            Dataset::Points(d) => d.rank(),
            Dataset::Components(d) => d.rank(),
        }
    }

    pub fn half_dim(&self) -> usize {
        match self {
            Dataset::Points(d) => d.half_dim(),
            Dataset::Components(d) => d.half_dim(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Dataset::Points(_) => "points",
            Dataset::Components(_) => "components",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(entries: &[i64]) -> WeightVector {
        WeightVector::new(entries.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    fn m(entries: &[i64]) -> Vec<BigInt> {
        entries.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_weight_rejected() {
        assert!(matches!(
            WeightVector::new(vec![BigInt::zero(), BigInt::zero()]),
            Err(Error::Invariant { .. })
        ));
    }

    #[test]
    fn weight_count_enforced() {
        let p = FixedPoint::new("p", m(&[0]), vec![w(&[1])]);
        let err = FixedPointSet::new(1, 2, vec![p]).unwrap_err();
        assert!(matches!(err, Error::Invariant { ref path, .. } if path == "points[0].weights"));
    }

    #[test]
    fn duplicate_names_rejected() {
        let p = FixedPoint::new("p", m(&[0]), vec![w(&[1])]);
        let q = FixedPoint::new("p", m(&[1]), vec![w(&[-1])]);
        let err = FixedPointSet::new(1, 1, vec![p, q]).unwrap_err();
        assert!(matches!(err, Error::Invariant { ref path, .. } if path == "points[1].name"));
    }

    #[test]
    fn isolated_component_default_char_number() {
        let c = Component::new("q", m(&[0]), vec![w(&[1]), w(&[1])], BTreeMap::new());
        assert_eq!(c.char_number(&[0, 0], 2), BigRational::one());
        assert_eq!(c.char_number(&[1, 0], 2), BigRational::zero());
        let f = Component::new("F", m(&[1]), vec![w(&[-1])], BTreeMap::new());
        assert_eq!(f.char_number(&[0], 2), BigRational::zero());
    }
}
