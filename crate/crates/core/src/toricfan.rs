//! Toric fans over regular subdivisions placed at height one.
//!
//! Cones are stored through their generator lists only; faces are derived on
//! demand. All tests here are exact integer linear algebra.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::lattice::{
    self, combinations, det, integer_solve, lexicographic_min, mat_mul, maximal_minor_gcd, rank,
    transpose, unimodular_inverse, IntMatrix,
};
use crate::subdivision::RegularSubdivision;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub generators: Vec<Vec<i64>>,
}

impl Cone {
    pub fn dim(&self) -> usize {
        rank(&self.generators)
    }

    /// Smooth: generators linearly independent and part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        let k = self.generators.len();
        k > 0 && rank(&self.generators) == k && maximal_minor_gcd(&self.generators) == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

/// Coordinates on the affine chart of a smooth maximal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricChart {
    pub cone: usize,
    pub generators: Vec<Vec<i64>>,
    /// Row `i` pairs to 1 with generator `i` and to 0 with the others.
    pub dual_basis: IntMatrix,
    pub labels: Vec<String>,
}

impl Fan {
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        for r in &rays {
            if r.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: r.len(),
                });
            }
            if lattice::content(r).abs() != 1 {
                return Err(Error::InvalidInput(format!("ray {r:?} is not primitive")));
            }
        }
        for c in &max_cones {
            if let Some(&i) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: rays.len(),
                });
            }
        }
        Ok(Self {
            rank,
            rays,
            max_cones,
        })
    }

    /// Rays `(a, 1)` over the used points, one maximal cone per cell.
    pub fn from_subdivision(s: &RegularSubdivision) -> Self {
        let used = s.used_points();
        let rays: Vec<Vec<i64>> = used
            .iter()
            .map(|&i| {
                let mut r = s.point(i).to_vec();
                r.push(1);
                r
            })
            .collect();
        let max_cones = s
            .cells()
            .iter()
            .map(|c| {
                c.points
                    .iter()
                    .map(|p| used.binary_search(p).expect("cell point is used"))
                    .collect()
            })
            .collect();
        Self {
            rank: s.dim() + 1,
            rays,
            max_cones,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone(&self, i: usize) -> Result<Cone> {
        let c = self.max_cones.get(i).ok_or(Error::UnknownCone {
            index: i,
            count: self.max_cones.len(),
        })?;
        Ok(Cone {
            generators: c.iter().map(|&r| self.rays[r].clone()).collect(),
        })
    }

    /// Maximal cones containing each ray.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        (0..self.rays.len())
            .map(|r| {
                (0..self.max_cones.len())
                    .filter(|&c| self.max_cones[c].contains(&r))
                    .collect()
            })
            .collect()
    }

    /// Integer `η` with `⟨η, ν⟩ = 1` on every ray, lexicographically smallest
    /// in absolute value; `None` when no integer solution exists.
    pub fn calabi_yau_certificate(&self) -> Option<Vec<i64>> {
        if self.rays.is_empty() {
            return None;
        }
        let ones = vec![1; self.rays.len()];
        let (x, kernel) = integer_solve(&self.rays, &ones, self.rank)?;
        Some(lexicographic_min(&x, &kernel))
    }

    pub fn is_smooth(&self) -> bool {
        (0..self.max_cones.len()).all(|i| self.cone(i).expect("in range").is_smooth())
    }

    /// True iff the union of the maximal cones is the cone spanned by all rays.
    ///
    /// Exact facet matching: every facet of a full-dimensional cone must
    /// either support the whole ray set or be shared with a cone lying on its
    /// other side. Works inside the linear span of the rays.
    pub fn has_convex_support(&self) -> bool {
        if self.max_cones.is_empty() || self.rays.is_empty() {
            return false;
        }
        let r = rank(&self.rays);
        let coords = spanning_columns(&self.rays, r);
        let project = |v: &Vec<i64>| -> Vec<i64> { coords.iter().map(|&c| v[c]).collect() };
        let rays: Vec<Vec<i64>> = self.rays.iter().map(project).collect();
        let cones: Vec<Vec<Vec<i64>>> = self
            .max_cones
            .iter()
            .map(|c| c.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>())
            .filter(|g| rank(g) == r)
            .collect();
        if cones.is_empty() {
            return false;
        }
        let facets: Vec<Vec<Facet>> = cones.iter().map(|g| facets(g, r)).collect();
        for (i, cone_facets) in facets.iter().enumerate() {
            for f in cone_facets {
                if rays.iter().all(|v| lattice::dot(&f.normal, v) >= 0) {
                    continue;
                }
                let s: Vec<i64> = (0..r)
                    .map(|k| f.generators.iter().map(|g| g[k]).sum())
                    .collect();
                let covered = (0..cones.len()).any(|j| {
                    j != i
                        && cones[j].iter().any(|g| lattice::dot(&f.normal, g) < 0)
                        && facets[j].iter().all(|h| lattice::dot(&h.normal, &s) >= 0)
                });
                if !covered {
                    return false;
                }
            }
        }
        true
    }

    pub fn chart(&self, i: usize) -> Result<ToricChart> {
        let cone = self.cone(i)?;
        if cone.generators.len() != self.rank || !cone.is_smooth() {
            return Err(Error::NonSmoothCone {
                generators: cone.generators,
            });
        }
        let v = transpose(&cone.generators);
        let dual_basis = unimodular_inverse(&v).expect("smooth cone");
        let labels = (0..self.rank).map(|j| format!("x{i}_{}", j + 1)).collect();
        Ok(ToricChart {
            cone: i,
            generators: cone.generators,
            dual_basis,
            labels,
        })
    }

    /// Integer matrix `M = (V_τ⁻¹ V_σ)ᵀ`: chart-τ coordinate `j` equals
    /// `∏_i x_i^{M[i][j]}` in chart-σ coordinates `x`.
    pub fn chart_transition(&self, sigma: usize, tau: usize) -> Result<IntMatrix> {
        let s = self.chart(sigma)?;
        let t = self.chart(tau)?;
        let v_sigma = transpose(&s.generators);
        Ok(transpose(&mat_mul(&t.dual_basis, &v_sigma)))
    }

    /// For a smooth full-dimensional cone, the matrix `g ∈ GL_n(ℤ)` sending the
    /// standard basis to its generators.
    pub fn octant_equivalence(&self, i: usize) -> Result<IntMatrix> {
        let chart = self.chart(i)?;
        Ok(transpose(&chart.generators))
    }

    /// `{"rays", "max_cones", "calabi_yau", "smooth", "convex_support"}`
    pub fn report(&self) -> Value {
        json!({
            "rays": self.rays,
            "max_cones": self.max_cones,
            "calabi_yau": self.calabi_yau_certificate(),
            "smooth": self.is_smooth(),
            "convex_support": self.has_convex_support(),
        })
    }
}

pub fn fan_from_subdivision(s: &RegularSubdivision) -> Fan {
    Fan::from_subdivision(s)
}

/// Column indices on which the rows have full rank `r`.
fn spanning_columns(rows: &IntMatrix, r: usize) -> Vec<usize> {
    let n = rows.first().map_or(0, Vec::len);
    combinations(n, r)
        .into_iter()
        .find(|cols| {
            let sub: IntMatrix = rows
                .iter()
                .map(|row| cols.iter().map(|&c| row[c]).collect())
                .collect();
            rank(&sub) == r
        })
        .unwrap_or_default()
}

#[derive(Debug, Clone)]
struct Facet {
    /// Inward normal.
    normal: Vec<i64>,
    generators: Vec<Vec<i64>>,
}

/// Facets of a full-dimensional cone in `ℤ^r`.
fn facets(gens: &[Vec<i64>], r: usize) -> Vec<Facet> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for subset in combinations(gens.len(), r.saturating_sub(1)) {
        let m: IntMatrix = subset.iter().map(|&i| gens[i].clone()).collect();
        if rank(&m) + 1 != r && r > 0 {
            continue;
        }
        let mut normal: Vec<i64> = (0..r)
            .map(|k| {
                let minor: IntMatrix = m
                    .iter()
                    .map(|row| (0..r).filter(|&c| c != k).map(|c| row[c]).collect())
                    .collect();
                if k % 2 == 0 {
                    det(&minor)
                } else {
                    -det(&minor)
                }
            })
            .collect();
        normal = lattice::primitive(&normal);
        let signs: Vec<i64> = gens.iter().map(|g| lattice::dot(&normal, g).signum()).collect();
        if signs.contains(&1) && signs.contains(&-1) {
            continue;
        }
        if signs.contains(&-1) {
            normal.iter_mut().for_each(|x| *x = -*x);
        }
        if !seen.insert(normal.clone()) {
            continue;
        }
        let on: Vec<Vec<i64>> = gens
            .iter()
            .filter(|g| lattice::dot(&normal, g) == 0)
            .cloned()
            .collect();
        out.push(Facet {
            normal,
            generators: on,
        });
    }
    out
}
