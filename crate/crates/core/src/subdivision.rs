//! Lattice polytopes (d ≤ 2), regular subdivisions and dual tropical curves.
//!
//! Lower faces of the lifted configuration are found by brute force over all
//! `(d+1)`-subsets of the lifted points, solved exactly. Ties are kept: a
//! lower face containing more than `d+1` points becomes a polygonal cell.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::lattice::{self, combinations, primitive, primitive_of_rational, rational_solve};
use crate::laurent::{ExponentVector, TropicalFunction};
use crate::rational::{self, int};
use crate::{Error, Rational, Result};

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    let (ax, ay) = (i128::from(a[0] - o[0]), i128::from(a[1] - o[1]));
    let (bx, by) = (i128::from(b[0] - o[0]), i128::from(b[1] - o[1]));
    ax * by - ay * bx
}

/// Convex hull of lattice points in dimension 1 or 2 together with all of
/// its lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    /// Hull vertices in counter-clockwise order (d = 2, full-dimensional) or
    /// `[min, max]` for segments.
    cycle: Vec<Vec<i64>>,
    lattice_points: Vec<Vec<i64>>,
}

impl LatticePolytope {
    pub fn from_points(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        match dim {
            1 => {
                let lo = points.iter().map(|p| p[0]).min().expect("nonempty");
                let hi = points.iter().map(|p| p[0]).max().expect("nonempty");
                let cycle: Vec<Vec<i64>> = if lo == hi {
                    vec![vec![lo]]
                } else {
                    vec![vec![lo], vec![hi]]
                };
                Ok(Self {
                    dim,
                    vertices: cycle.clone(),
                    cycle,
                    lattice_points: (lo..=hi).map(|a| vec![a]).collect(),
                })
            }
            2 => Ok(Self::hull_2d(points)),
            _ => Err(Error::UnsupportedDimension {
                operation: "lattice polytopes",
                supported: "1 or 2",
                dim,
            }),
        }
    }

    fn hull_2d(points: &[Vec<i64>]) -> Self {
        let mut pts: Vec<Vec<i64>> = points.to_vec();
        pts.sort();
        pts.dedup();
        let cycle = if pts.len() <= 2 {
            pts.clone()
        } else {
            // Andrew's monotone chain, strictly convex turns only.
            let mut lower: Vec<Vec<i64>> = Vec::new();
            for p in &pts {
                while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
                    lower.pop();
                }
                lower.push(p.clone());
            }
            let mut upper: Vec<Vec<i64>> = Vec::new();
            for p in pts.iter().rev() {
                while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
                    upper.pop();
                }
                upper.push(p.clone());
            }
            lower.pop();
            upper.pop();
            lower.extend(upper);
            lower
        };
        let mut vertices = cycle.clone();
        vertices.sort();
        let lattice_points = if cycle.len() >= 3 {
            let (x0, x1) = min_max(cycle.iter().map(|p| p[0]));
            let (y0, y1) = min_max(cycle.iter().map(|p| p[1]));
            let mut out = Vec::new();
            for x in x0..=x1 {
                for y in y0..=y1 {
                    let q = [x, y];
                    if (0..cycle.len()).all(|k| cross(&cycle[k], &cycle[(k + 1) % cycle.len()], &q) >= 0) {
                        out.push(q.to_vec());
                    }
                }
            }
            out
        } else if cycle.len() == 2 {
            let d = [cycle[1][0] - cycle[0][0], cycle[1][1] - cycle[0][1]];
            let g = lattice::content(&d);
            (0..=g)
                .map(|k| vec![cycle[0][0] + k * d[0] / g, cycle[0][1] + k * d[1] / g])
                .collect()
        } else {
            cycle.clone()
        };
        Self {
            dim: 2,
            vertices,
            cycle,
            lattice_points,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Vertices in boundary order (counter-clockwise in dimension 2).
    pub fn boundary_cycle(&self) -> &[Vec<i64>] {
        &self.cycle
    }

    /// All lattice points, lexicographically sorted.
    pub fn lattice_points(&self) -> &[Vec<i64>] {
        &self.lattice_points
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.cycle.len() > self.dim
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.lattice_points.binary_search(&p.to_vec()).is_ok()
    }

    /// Exact containment of a rational point (full-dimensional polytopes).
    pub fn contains_rational(&self, p: &[Rational]) -> bool {
        match self.dim {
            1 => {
                let lo = int(self.cycle[0][0]);
                let hi = int(self.cycle[self.cycle.len() - 1][0]);
                p[0] >= lo && p[0] <= hi
            }
            _ => {
                let n = self.cycle.len();
                n >= 3
                    && (0..n).all(|k| {
                        let a = &self.cycle[k];
                        let b = &self.cycle[(k + 1) % n];
                        let ax = int(b[0] - a[0]);
                        let ay = int(b[1] - a[1]);
                        let px = &p[0] - int(a[0]);
                        let py = &p[1] - int(a[1]);
                        !(ax * py - ay * px).is_negative()
                    })
            }
        }
    }

    /// Normalized lattice volume: length in d = 1, twice the area in d = 2.
    pub fn normalized_volume(&self) -> i64 {
        match self.dim {
            1 => self.cycle[self.cycle.len() - 1][0] - self.cycle[0][0],
            _ => polygon_twice_area(&self.cycle),
        }
    }
}

fn min_max(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

fn polygon_twice_area(cycle: &[Vec<i64>]) -> i64 {
    if cycle.len() < 3 {
        return 0;
    }
    let n = cycle.len();
    let s: i128 = (0..n)
        .map(|k| cross(&[0, 0], &cycle[k], &cycle[(k + 1) % n]))
        .sum();
    i64::try_from(s.abs()).expect("area overflow")
}

/// Heights on a finite set of lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lifting {
    heights: BTreeMap<ExponentVector, Rational>,
}

impl Lifting {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zero_on(points: &[ExponentVector]) -> Self {
        Self {
            heights: points.iter().map(|p| (p.clone(), Rational::zero())).collect(),
        }
    }

    /// Zero lifting on every lattice point of `p`.
    pub fn flat(p: &LatticePolytope) -> Self {
        Self {
            heights: p
                .lattice_points()
                .iter()
                .map(|a| (ExponentVector(a.clone()), Rational::zero()))
                .collect(),
        }
    }

    pub fn from_fn(points: &[Vec<i64>], h: impl Fn(&[i64]) -> Rational) -> Self {
        Self {
            heights: points
                .iter()
                .map(|a| (ExponentVector(a.clone()), h(a)))
                .collect(),
        }
    }

    pub fn set(&mut self, point: &[i64], h: Rational) {
        self.heights.insert(ExponentVector(point.to_vec()), h);
    }

    pub fn get(&self, point: &[i64]) -> Option<&Rational> {
        self.heights.get(&ExponentVector(point.to_vec()))
    }

    pub fn points(&self) -> Vec<Vec<i64>> {
        self.heights.keys().map(|e| e.0.clone()).collect()
    }

    pub fn heights(&self) -> &BTreeMap<ExponentVector, Rational> {
        &self.heights
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn shifted(&self, c: &Rational) -> Self {
        Self {
            heights: self
                .heights
                .iter()
                .map(|(e, h)| (e.clone(), h + c))
                .collect(),
        }
    }

    /// Tropical function `max_a (⟨a,x⟩ − h(a))` over the lifted points.
    pub fn tropical_function(&self, dim: usize) -> TropicalFunction {
        TropicalFunction::from_heights(dim, self.heights.clone())
    }

    /// `{"(a1,a2)": "p/q", ...}`
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .heights
            .iter()
            .map(|(e, h)| (e.to_string(), rational::to_json(h)))
            .collect();
        Value::Object(map)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("lifting must be a JSON object".into()))?;
        let mut heights = BTreeMap::new();
        for (k, h) in obj {
            heights.insert(parse_point_key(k)?, rational::from_json(h)?);
        }
        Ok(Self { heights })
    }
}

/// Parses keys such as `"(1,-2)"`, `"1,-2"` or `"3"`.
pub fn parse_point_key(key: &str) -> Result<ExponentVector> {
    let inner = key.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad lattice point key {key:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(ExponentVector)
}

/// A cell of a regular subdivision: the projection of one lower face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Indices into [`RegularSubdivision::points`], sorted.
    pub points: Vec<usize>,
    /// Polygon vertices in counter-clockwise order (or segment endpoints).
    pub boundary: Vec<usize>,
    /// Slope `c` of the affine function `a ↦ ⟨c,a⟩ + c₀` agreeing with the lifting on the cell.
    pub slope: Vec<Rational>,
    pub offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    pub cells: (usize, usize),
    /// Shared face as sorted point indices.
    pub face: Vec<usize>,
}

/// An edge of the subdivision between two polygon vertices (d = 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionEdge {
    pub endpoints: (usize, usize),
    /// One cell for boundary edges, two for interior ones.
    pub cells: Vec<usize>,
    pub lattice_length: i64,
}

#[derive(Debug, Clone)]
pub struct RegularSubdivision {
    dim: usize,
    polytope: LatticePolytope,
    points: Vec<Vec<i64>>,
    lifting: Lifting,
    cells: Vec<Cell>,
    adjacency: Vec<Adjacency>,
}

impl RegularSubdivision {
    pub fn new(polytope: &LatticePolytope, lifting: &Lifting) -> Result<Self> {
        let dim = polytope.dim();
        if dim > 2 {
            return Err(Error::UnsupportedDimension {
                operation: "regular subdivisions",
                supported: "1 or 2",
                dim,
            });
        }
        if !polytope.is_full_dimensional() {
            return Err(Error::DegeneratePolytope);
        }
        for p in lifting.points() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if !polytope.contains(&p) {
                return Err(Error::LiftingOutsidePolytope { point: p });
            }
        }
        for v in polytope.vertices() {
            if lifting.get(v).is_none() {
                return Err(Error::MissingVertex { vertex: v.clone() });
            }
        }
        let points = lifting.points();
        let heights: Vec<Rational> = points
            .iter()
            .map(|p| lifting.get(p).expect("lifted").clone())
            .collect();

        let mut found: BTreeMap<Vec<usize>, (Vec<Rational>, Rational)> = BTreeMap::new();
        for subset in combinations(points.len(), dim + 1) {
            let rows: Vec<Vec<Rational>> = subset
                .iter()
                .map(|&i| {
                    let mut r: Vec<Rational> = points[i].iter().map(|&a| int(a)).collect();
                    r.push(int(1));
                    r
                })
                .collect();
            let rhs: Vec<Rational> = subset.iter().map(|&i| heights[i].clone()).collect();
            let Some(sol) = rational_solve(rows, rhs) else {
                continue;
            };
            let (slope, offset) = (sol[..dim].to_vec(), sol[dim].clone());
            let gap = |i: usize| {
                let affine = points[i]
                    .iter()
                    .zip(&slope)
                    .fold(offset.clone(), |acc, (&a, c)| acc + int(a) * c);
                &heights[i] - affine
            };
            if (0..points.len()).any(|i| gap(i).is_negative()) {
                continue;
            }
            let on_face: Vec<usize> = (0..points.len()).filter(|&i| gap(i).is_zero()).collect();
            found.entry(on_face).or_insert((slope, offset));
        }

        let cells: Vec<Cell> = found
            .into_iter()
            .map(|(cell_points, (slope, offset))| {
                let coords: Vec<Vec<i64>> = cell_points.iter().map(|&i| points[i].clone()).collect();
                let hull = LatticePolytope::from_points(dim, &coords).expect("cell hull");
                let boundary = hull
                    .boundary_cycle()
                    .iter()
                    .map(|v| points.binary_search(v).expect("cell vertex is lifted"))
                    .collect();
                Cell {
                    points: cell_points,
                    boundary,
                    slope,
                    offset,
                }
            })
            .collect();

        let mut adjacency = Vec::new();
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                let a: BTreeSet<usize> = cells[i].points.iter().copied().collect();
                let face: Vec<usize> = cells[j]
                    .points
                    .iter()
                    .copied()
                    .filter(|p| a.contains(p))
                    .collect();
                if face.len() >= dim {
                    adjacency.push(Adjacency {
                        cells: (i, j),
                        face,
                    });
                }
            }
        }
        Ok(Self {
            dim,
            polytope: polytope.clone(),
            points,
            lifting: lifting.clone(),
            cells,
            adjacency,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.points[i]
    }

    pub fn lifting(&self) -> &Lifting {
        &self.lifting
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn adjacency(&self) -> &[Adjacency] {
        &self.adjacency
    }

    /// Shared face of two cells, in either order.
    pub fn shared_face(&self, i: usize, j: usize) -> Option<&[usize]> {
        let key = (i.min(j), i.max(j));
        self.adjacency
            .iter()
            .find(|a| a.cells == key)
            .map(|a| a.face.as_slice())
    }

    /// Cell point sets as lattice points.
    pub fn cell_coordinates(&self, cell: usize) -> Vec<Vec<i64>> {
        self.cells[cell]
            .points
            .iter()
            .map(|&i| self.points[i].clone())
            .collect()
    }

    /// Indices of points lying in at least one cell.
    pub fn used_points(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self
            .cells
            .iter()
            .flat_map(|c| c.points.iter().copied())
            .collect();
        used.into_iter().collect()
    }

    pub fn cell_volume(&self, cell: usize) -> i64 {
        let cycle: Vec<Vec<i64>> = self.cells[cell]
            .boundary
            .iter()
            .map(|&i| self.points[i].clone())
            .collect();
        match self.dim {
            1 => (cycle[1][0] - cycle[0][0]).abs(),
            _ => polygon_twice_area(&cycle),
        }
    }

    /// Cells containing a rational point (exact).
    pub fn locate(&self, p: &[Rational]) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&c| {
                let coords: Vec<Vec<i64>> = self.cells[c]
                    .boundary
                    .iter()
                    .map(|&i| self.points[i].clone())
                    .collect();
                let hull = LatticePolytope {
                    dim: self.dim,
                    vertices: coords.clone(),
                    cycle: coords,
                    lattice_points: Vec::new(),
                };
                hull.contains_rational(p)
            })
            .collect()
    }

    /// True iff every cell is a unimodular simplex.
    pub fn is_unimodular(&self) -> Result<bool> {
        let mut all = true;
        for cell in &self.cells {
            if cell.points.len() != self.dim + 1 {
                return Err(Error::NonSimplicialCell {
                    cell: cell.points.iter().map(|&i| self.points[i].clone()).collect(),
                });
            }
            let m: Vec<Vec<i64>> = cell
                .points
                .iter()
                .map(|&i| {
                    let mut r = self.points[i].clone();
                    r.push(1);
                    r
                })
                .collect();
            if lattice::det(&m).abs() != 1 {
                all = false;
            }
        }
        Ok(all)
    }

    /// Polygon edges of all cells (d = 2), sorted by endpoint indices.
    pub fn edges(&self) -> Vec<SubdivisionEdge> {
        if self.dim != 2 {
            return Vec::new();
        }
        let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (c, cell) in self.cells.iter().enumerate() {
            let n = cell.boundary.len();
            for k in 0..n {
                let (u, v) = (cell.boundary[k], cell.boundary[(k + 1) % n]);
                map.entry((u.min(v), u.max(v))).or_default().push(c);
            }
        }
        map.into_iter()
            .map(|((u, v), cells)| {
                let d: Vec<i64> = self.points[v]
                    .iter()
                    .zip(&self.points[u])
                    .map(|(a, b)| a - b)
                    .collect();
                SubdivisionEdge {
                    endpoints: (u, v),
                    cells,
                    lattice_length: lattice::content(&d).abs(),
                }
            })
            .collect()
    }

    pub fn boundary_edges(&self) -> Vec<SubdivisionEdge> {
        self.edges().into_iter().filter(|e| e.cells.len() == 1).collect()
    }

    pub fn interior_edges(&self) -> Vec<SubdivisionEdge> {
        self.edges().into_iter().filter(|e| e.cells.len() == 2).collect()
    }

    /// `{"points": [...], "lifting": {...}, "cells": [[indices]]}`
    pub fn to_json(&self) -> Value {
        json!({
            "points": self.points,
            "lifting": self.lifting.to_json(),
            "cells": self.cells.iter().map(|c| c.points.clone()).collect::<Vec<_>>(),
        })
    }

    pub fn dual_tropical_curve(&self) -> Result<DualTropicalCurve> {
        DualTropicalCurve::new(self)
    }
}

pub fn regular_subdivision(p: &LatticePolytope, h: &Lifting) -> Result<RegularSubdivision> {
    RegularSubdivision::new(p, h)
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CurveVertex {
    pub cell: usize,
    #[serde(with = "crate::rational::text_vec")]
    pub point: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BoundedEdge {
    pub cells: (usize, usize),
    /// Lattice points `α < β` spanning the dual interior edge.
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    /// Primitive direction from the first cell's vertex to the second's.
    pub direction: Vec<i64>,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Leg {
    pub cell: usize,
    #[serde(with = "crate::rational::text_vec")]
    pub base: Vec<Rational>,
    /// Primitive outward normal of the dual boundary edge.
    pub direction: Vec<i64>,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub weight: i64,
}

/// Corner locus of the tropical function of a planar regular subdivision.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DualTropicalCurve {
    pub vertices: Vec<CurveVertex>,
    pub bounded_edges: Vec<BoundedEdge>,
    pub legs: Vec<Leg>,
    /// Counter-clockwise vertex labels of each cell, indexed like `vertices`.
    pub cycles: Vec<Vec<Vec<i64>>>,
}

impl DualTropicalCurve {
    pub fn new(s: &RegularSubdivision) -> Result<Self> {
        if s.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                operation: "dual tropical curves",
                supported: "2",
                dim: s.dim(),
            });
        }
        let vertices: Vec<CurveVertex> = s
            .cells()
            .iter()
            .enumerate()
            .map(|(i, c)| CurveVertex {
                cell: i,
                point: c.slope.clone(),
            })
            .collect();
        let cycles = s
            .cells()
            .iter()
            .map(|c| c.boundary.iter().map(|&i| s.point(i).to_vec()).collect())
            .collect();
        let mut bounded_edges = Vec::new();
        let mut legs = Vec::new();
        for e in s.edges() {
            let (alpha, beta) = (s.point(e.endpoints.0).to_vec(), s.point(e.endpoints.1).to_vec());
            if let [i, j] = e.cells[..] {
                let (i, j) = (i.min(j), i.max(j));
                let diff: Vec<Rational> = s.cells()[j]
                    .slope
                    .iter()
                    .zip(&s.cells()[i].slope)
                    .map(|(a, b)| a - b)
                    .collect();
                bounded_edges.push(BoundedEdge {
                    cells: (i, j),
                    alpha,
                    beta,
                    direction: primitive_of_rational(&diff),
                    weight: e.lattice_length,
                });
            } else {
                let c = e.cells[0];
                let cell = &s.cells()[c];
                // orient the edge as it appears counter-clockwise in its cell
                let n = cell.boundary.len();
                let k = (0..n)
                    .find(|&k| {
                        let (u, v) = (cell.boundary[k], cell.boundary[(k + 1) % n]);
                        (u.min(v), u.max(v)) == e.endpoints
                    })
                    .expect("edge belongs to its cell");
                let (u, v) = (s.point(cell.boundary[k]), s.point(cell.boundary[(k + 1) % n]));
                let d = [v[0] - u[0], v[1] - u[1]];
                legs.push(Leg {
                    cell: c,
                    base: cell.slope.clone(),
                    direction: primitive(&[d[1], -d[0]]),
                    alpha,
                    beta,
                    weight: e.lattice_length,
                });
            }
        }
        Ok(Self {
            vertices,
            bounded_edges,
            legs,
            cycles,
        })
    }

    /// Every dual pair `{α, β}` (bounded edges then legs), with `α < β`.
    pub fn dual_pairs(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        self.bounded_edges
            .iter()
            .map(|e| (e.alpha.clone(), e.beta.clone()))
            .chain(self.legs.iter().map(|l| (l.alpha.clone(), l.beta.clone())))
            .collect()
    }

    /// Chamber labels: lattice points spanning some dual edge.
    pub fn labels(&self) -> Vec<Vec<i64>> {
        let set: BTreeSet<Vec<i64>> = self
            .dual_pairs()
            .into_iter()
            .flat_map(|(a, b)| [a, b])
            .collect();
        set.into_iter().collect()
    }

    pub fn are_adjacent(&self, alpha: &[i64], beta: &[i64]) -> bool {
        self.dual_pairs()
            .iter()
            .any(|(a, b)| (a == alpha && b == beta) || (a == beta && b == alpha))
    }

    /// Vertex coordinates as floats.
    pub fn vertex_points_f64(&self) -> Vec<[f64; 2]> {
        self.vertices
            .iter()
            .map(|v| [rational::to_f64(&v.point[0]), rational::to_f64(&v.point[1])])
            .collect()
    }
}
