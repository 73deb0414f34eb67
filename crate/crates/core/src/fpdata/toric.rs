use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fpdata::{FixedPoint, FixedPointSet, WeightVector};

/// Polytope vertex with its outgoing primitive integer edge directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricVertex {
    pub name: String,
    pub coords: Vec<BigRational>,
    pub edges: Vec<Vec<BigInt>>,
}

impl ToricVertex {
    pub fn from_ints(name: impl Into<String>, coords: &[i64], edges: &[&[i64]]) -> Self {
        ToricVertex {
            name: name.into(),
            coords: coords
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
            edges: edges
                .iter()
                .map(|e| e.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }
}

/// Ordered vertex list describing a Delzant polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantPolytope {
    pub dim: usize,
    pub vertices: Vec<ToricVertex>,
}

impl DelzantPolytope {
    /// Build the fixed-point dataset of the associated toric manifold: one
    /// point per vertex, moment at the vertex, weights the outgoing
    /// primitive edge directions. The edge vectors at each vertex must
    /// form a basis of the integer lattice and vertices must be integral.
    pub fn generate(&self) -> Result<FixedPointSet> {
        let n = self.dim;
        let mut points = Vec::with_capacity(self.vertices.len());
        for vertex in &self.vertices {
            if vertex.coords.len() != n {
                return Err(Error::Invariant {
                    path: format!("vertex {}", vertex.name),
                    message: format!("expected {n} coordinates, found {}", vertex.coords.len()),
                });
            }
            if vertex.edges.len() != n {
                return Err(Error::NotDelzant {
                    vertex: vertex.name.clone(),
                    detail: format!("expected {n} edge vectors, found {}", vertex.edges.len()),
                });
            }
            let mut moment = Vec::with_capacity(n);
            for c in &vertex.coords {
                if !c.denom().is_one() {
                    return Err(Error::NonIntegerVertex {
                        vertex: vertex.name.clone(),
                    });
                }
                moment.push(c.numer().clone());
            }
            for edge in &vertex.edges {
                if edge.len() != n {
                    return Err(Error::NotDelzant {
                        vertex: vertex.name.clone(),
                        detail: "edge vector of wrong length".to_string(),
                    });
                }
            }
            let det = determinant(&vertex.edges);
            if det.abs() != BigInt::one() {
                return Err(Error::NotDelzant {
                    vertex: vertex.name.clone(),
                    detail: format!("edge matrix has determinant {det}"),
                });
            }
            let weights = vertex
                .edges
                .iter()
                .map(|e| WeightVector::new(e.clone()).expect("unimodular edges are nonzero"))
                .collect();
            points.push(FixedPoint::new(vertex.name.clone(), moment, weights));
        }
        FixedPointSet::new(n, n, points)
    }
}

/// Dilated standard 2-simplex with vertices (0,0), (k,0), (0,k); the fixed
/// points are named p, q, r in that order.
pub fn simplex(dilation: u64) -> DelzantPolytope {
    let k = dilation as i64;
    DelzantPolytope {
        dim: 2,
        vertices: vec![
            ToricVertex::from_ints("p", &[0, 0], &[&[1, 0], &[0, 1]]),
            ToricVertex::from_ints("q", &[k, 0], &[&[-1, 0], &[-1, 1]]),
            ToricVertex::from_ints("r", &[0, k], &[&[1, -1], &[0, -1]]),
        ],
    }
}

/// Interval [0, k]; fixed points named p, q.
pub fn segment(dilation: u64) -> DelzantPolytope {
    let k = dilation as i64;
    DelzantPolytope {
        dim: 1,
        vertices: vec![
            ToricVertex::from_ints("p", &[0], &[&[1]]),
            ToricVertex::from_ints("q", &[k], &[&[-1]]),
        ],
    }
}

/// Cartesian product. Vertex names are joined with a dot; coordinates and
/// edge vectors are concatenated block-wise.
pub fn toric_product(a: &DelzantPolytope, b: &DelzantPolytope) -> DelzantPolytope {
    let dim = a.dim + b.dim;
    let mut vertices = Vec::with_capacity(a.vertices.len() * b.vertices.len());
    for va in &a.vertices {
        for vb in &b.vertices {
            let mut coords = va.coords.clone();
            coords.extend(vb.coords.iter().cloned());
            let mut edges = Vec::with_capacity(dim);
            for e in &va.edges {
                let mut ext = e.clone();
                ext.extend(std::iter::repeat_with(BigInt::zero).take(b.dim));
                edges.push(ext);
            }
            for e in &vb.edges {
                let mut ext: Vec<BigInt> =
                    std::iter::repeat_with(BigInt::zero).take(a.dim).collect();
                ext.extend(e.iter().cloned());
                edges.push(ext);
            }
            vertices.push(ToricVertex {
                name: format!("{}.{}", va.name, vb.name),
                coords,
                edges,
            });
        }
    }
    DelzantPolytope { dim, vertices }
}

/// Restrict a rank-`r` dataset along the circle generated by the integer
/// vector `x`: moments and weights become their pairings with `x`. Fails
/// with `NotGeneric` at the first weight orthogonal to `x`.
pub fn restrict_to_circle(fps: &FixedPointSet, x: &[BigInt]) -> Result<FixedPointSet> {
    if x.len() != fps.rank() {
        return Err(Error::RankMismatch {
            expected: fps.rank(),
            found: x.len(),
        });
    }
    for (p, j, w) in fps.all_weights() {
        if w.pair(x).is_zero() {
            return Err(Error::NotGeneric {
                point: p.name().to_string(),
                slot: j,
            });
        }
    }
    let points = fps
        .points()
        .iter()
        .map(|p| {
            let moment = vec![crate::exactalg::dot(x, p.moment())];
            let weights = p
                .weights()
                .iter()
                .map(|w| WeightVector::new(vec![w.pair(x)]).expect("genericity checked"))
                .collect();
            FixedPoint::new(p.name(), moment, weights)
        })
        .collect();
    FixedPointSet::new(1, fps.half_dim(), points)
}

/// Fraction-free (Bareiss) determinant of a square integer matrix given as
/// a list of rows.
fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}
