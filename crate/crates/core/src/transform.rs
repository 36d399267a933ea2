//! SYZ transforms of Lagrangian sections.
//!
//! Semi-flat sections are sampled numerically. In 2d a section enters through
//! its integer fiber coordinates at the walls; in 3d through the integers
//! `n_{αβ}` attached to the dual edges of the tropical curve.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::fibration::SYZBase2D;
use crate::gluing::{CechLineBundle, ChartId, GluingUnit};
use crate::rational::{self, int};
use crate::subdivision::DualTropicalCurve;
use crate::{Error, Rational, Result};

pub type Evaluator = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Tensor grid with `points` samples per axis on `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub points: usize,
}

impl GridSpec {
    pub fn cube(n: usize, lo: f64, hi: f64, points: usize) -> Self {
        Self {
            lower: vec![lo; n],
            upper: vec![hi; n],
            points,
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn samples(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let m = self.points.max(1);
        let coord = |axis: usize, i: usize| {
            if m == 1 {
                0.5 * (self.lower[axis] + self.upper[axis])
            } else {
                self.lower[axis] + (self.upper[axis] - self.lower[axis]) * i as f64 / (m - 1) as f64
            }
        };
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut k| {
                (0..n)
                    .map(|axis| {
                        let i = k % m;
                        k /= m;
                        coord(axis, i)
                    })
                    .collect()
            })
            .collect()
    }
}

/// A section `x ↦ ξ(x)` of `ℝⁿ × Tⁿ → ℝⁿ` with its sampling grid.
pub struct NumericSection {
    pub dim: usize,
    pub evaluator: Evaluator,
    pub grid: GridSpec,
}

impl NumericSection {
    pub fn new(dim: usize, evaluator: Evaluator, grid: GridSpec) -> Result<Self> {
        if grid.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: grid.dim(),
            });
        }
        Ok(Self { dim, evaluator, grid })
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        let v = (self.evaluator)(x);
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if v.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFiniteEvaluation { point: x.to_vec() });
        }
        Ok(v)
    }
}

impl std::fmt::Debug for NumericSection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NumericSection")
            .field("dim", &self.dim)
            .field("grid", &self.grid)
            .finish_non_exhaustive()
    }
}

/// Sampled coefficients `A(x) = ξ(x)` of `d + 2πi Σ ξ_j(x) dy_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionField {
    pub points: Vec<Vec<f64>>,
    pub coefficients: Vec<Vec<f64>>,
}

pub fn semiflat_connection(s: &NumericSection) -> Result<ConnectionField> {
    let points = s.grid.samples();
    let coefficients = points.par_iter().map(|x| s.eval(x)).collect::<Result<Vec<_>>>()?;
    Ok(ConnectionField { points, coefficients })
}

/// Max over the grid of `|∂_k ξ_j − ∂_j ξ_k|` by central differences of step `h`.
pub fn curvature02_residual(s: &NumericSection, grid: &GridSpec, h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidInput(format!("step must be positive, got {h}")));
    }
    let n = s.dim;
    let per_point = grid
        .samples()
        .par_iter()
        .map(|x| {
            // jac[k][j] = ∂_k ξ_j
            let mut jac = Vec::with_capacity(n);
            for k in 0..n {
                let mut plus = x.clone();
                let mut minus = x.clone();
                plus[k] += h;
                minus[k] -= h;
                let (p, m) = (s.eval(&plus)?, s.eval(&minus)?);
                jac.push(p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<_>>());
            }
            let mut worst = 0f64;
            for j in 0..n {
                for k in 0..j {
                    worst = worst.max((jac[k][j] - jac[j][k]).abs());
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(per_point.into_iter().fold(0.0, f64::max))
}

/// A real polynomial potential `φ` in `n` variables; its gradient is a Lagrangian section.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialPotential {
    pub dim: usize,
    pub terms: Vec<(Vec<u32>, f64)>,
}

impl PolynomialPotential {
    /// Every monomial of total degree `2..=degree` with a coefficient in `[−1, 1]`.
    pub fn random<R: Rng>(rng: &mut R, dim: usize, degree: u32) -> Self {
        let mut terms = Vec::new();
        let mut exps = vec![0u32; dim];
        loop {
            let total: u32 = exps.iter().sum();
            if (2..=degree).contains(&total) {
                terms.push((exps.clone(), rng.gen_range(-1.0..=1.0)));
            }
            let mut i = 0;
            loop {
                if i == dim {
                    return Self { dim, terms };
                }
                exps[i] += 1;
                if exps[i] <= degree {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(&k, v)| v.powi(k as i32)).product::<f64>())
            .sum()
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| {
                self.terms
                    .iter()
                    .filter(|(e, _)| e[i] > 0)
                    .map(|(e, c)| {
                        let rest: f64 = e
                            .iter()
                            .zip(x)
                            .enumerate()
                            .map(|(j, (&k, v))| if j == i { v.powi(k as i32 - 1) } else { v.powi(k as i32) })
                            .product();
                        c * e[i] as f64 * rest
                    })
                    .sum()
            })
            .collect()
    }

    pub fn gradient_section(self, grid: GridSpec) -> Result<NumericSection> {
        let dim = self.dim;
        NumericSection::new(dim, Box::new(move |x| self.gradient(x)), grid)
    }
}

fn on_negative_axis(p: Complex64) -> bool {
    p.im == 0.0 && p.re < 0.0
}

/// Real part where the segment `p → q` meets the real axis, if it crosses strictly.
fn real_crossing(p: Complex64, q: Complex64) -> Option<f64> {
    if (p.im > 0.0 && q.im < 0.0) || (p.im < 0.0 && q.im > 0.0) {
        let t = p.im / (p.im - q.im);
        Some(p.re + t * (q.re - p.re))
    } else {
        None
    }
}

/// Signed crossings of the negative real axis; upper-to-lower (counter-clockwise) is `+1`.
pub fn winding_degree(path: &[Complex64]) -> Result<i64> {
    for (i, p) in path.iter().enumerate() {
        if p.norm() == 0.0 {
            return Err(Error::PathThroughPoint { point: "0".into() });
        }
        if on_negative_axis(*p) {
            return Err(Error::VertexOnCut { index: i });
        }
    }
    let mut total = 0;
    for w in path.windows(2) {
        if let Some(x) = real_crossing(w[0], w[1]) {
            if x == 0.0 {
                return Err(Error::PathThroughPoint { point: "0".into() });
            }
            if x < 0.0 {
                total += if w[0].im > 0.0 { 1 } else { -1 };
            }
        } else if w[0].im == 0.0 && w[1].im == 0.0 && w[0].re.signum() != w[1].re.signum() {
            return Err(Error::PathThroughPoint { point: "0".into() });
        }
    }
    Ok(total)
}

/// A polyline in `ℂ^×` with optional asymptotic rays and the cut `[a, b] ⊂ ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissiblePath2D {
    pub vertices: Vec<Complex64>,
    pub start_ray: Option<Complex64>,
    pub end_ray: Option<Complex64>,
    pub cut: [f64; 2],
}

impl AdmissiblePath2D {
    pub fn new(vertices: Vec<Complex64>, cut: [f64; 2]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput("path has no vertices".into()));
        }
        if !(cut[0] < cut[1]) {
            return Err(Error::InvalidInput(format!("cut [{}, {}] is not an interval", cut[0], cut[1])));
        }
        Ok(Self {
            vertices,
            start_ray: None,
            end_ray: None,
            cut,
        })
    }

    pub fn with_rays(mut self, start: Option<Complex64>, end: Option<Complex64>) -> Self {
        self.start_ray = start;
        self.end_ray = end;
        self
    }

    /// Vertices with the rays truncated far beyond every vertex and the cut.
    pub fn polyline(&self) -> Vec<Complex64> {
        let reach = self.vertices.iter().map(|v| v.norm()).fold(self.cut[1].abs(), f64::max);
        let far = 1e3 * (1.0 + reach);
        let mut out = Vec::with_capacity(self.vertices.len() + 2);
        if let Some(d) = self.start_ray.filter(|d| d.norm() > 0.0) {
            out.push(self.vertices[0] + d / d.norm() * far);
        }
        out.extend_from_slice(&self.vertices);
        if let Some(d) = self.end_ray.filter(|d| d.norm() > 0.0) {
            out.push(self.vertices[self.vertices.len() - 1] + d / d.norm() * far);
        }
        out
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let vertices = parse_points(v.get("path").ok_or_else(|| Error::InvalidInput("missing \"path\"".into()))?)?;
        let cut = v
            .get("cut")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .and_then(|a| Some([a[0].as_f64()?, a[1].as_f64()?]))
            .ok_or_else(|| Error::InvalidInput("\"cut\" must be [a, b]".into()))?;
        let ray = |key: &str| -> Result<Option<Complex64>> {
            match v.get(key) {
                None | Some(Value::Null) => Ok(None),
                Some(r) => parse_point(r).map(Some),
            }
        };
        Ok(Self::new(vertices, cut)?.with_rays(ray("start_ray")?, ray("end_ray")?))
    }
}

fn parse_point(v: &Value) -> Result<Complex64> {
    v.as_array()
        .filter(|a| a.len() == 2)
        .and_then(|a| Some(Complex64::new(a[0].as_f64()?, a[1].as_f64()?)))
        .ok_or_else(|| Error::InvalidInput(format!("expected [re, im], got {v}")))
}

fn parse_points(v: &Value) -> Result<Vec<Complex64>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput("\"path\" must be an array".into()))?
        .iter()
        .map(parse_point)
        .collect()
}

fn crossings_of_interval(poly: &[Complex64], a: f64, b: f64) -> Result<i64> {
    for (i, p) in poly.iter().enumerate() {
        if p.im == 0.0 && (p.re == a || p.re == b) {
            return Err(Error::PathThroughPoint { point: format!("{}", p.re) });
        }
        if p.im == 0.0 && a < p.re && p.re < b {
            return Err(Error::VertexOnCut { index: i });
        }
    }
    let mut total = 0;
    for (s, w) in poly.windows(2).enumerate() {
        if let Some(x) = real_crossing(w[0], w[1]) {
            if x == a || x == b {
                return Err(Error::PathThroughPoint { point: format!("{x}") });
            }
            if a < x && x < b {
                total += if w[0].im < 0.0 { 1 } else { -1 };
            }
        } else if w[0].im == 0.0 && w[1].im == 0.0 {
            let (lo, hi) = (w[0].re.min(w[1].re), w[0].re.max(w[1].re));
            if lo < b && hi > a {
                return Err(Error::DegenerateIntersection { segment: s });
            }
        }
    }
    Ok(total)
}

/// Signed crossings of `γ` with the cut; lower-to-upper is `+1`.
pub fn intersection_number_2d(path: &AdmissiblePath2D) -> Result<i64> {
    crossings_of_interval(&path.polyline(), path.cut[0], path.cut[1])
}

/// `ξ(s₁) = 0` and `ξ(s_{i+1}) = ξ(s_i) + γ·[r_i, r_{i+1}]` for sorted root moduli `r`.
pub fn wall_values_from_path(path: &AdmissiblePath2D, root_moduli: &[f64]) -> Result<Vec<i64>> {
    let poly = path.polyline();
    let mut out = Vec::with_capacity(root_moduli.len());
    let mut acc = 0;
    for (i, &r) in root_moduli.iter().enumerate() {
        if i > 0 {
            acc += crossings_of_interval(&poly, root_moduli[i - 1], r)?;
        }
        out.push(acc);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorLineBundle {
    pub bundle: CechLineBundle,
    /// Degree on the exceptional curve when the 2d base has two walls.
    pub degree: Option<i64>,
    /// `ξ(s_{i+1}) − ξ(s_i)` for each consecutive pair of walls (2d only).
    pub degrees: Vec<i64>,
    /// `(1+w)^{n_{αβ}}` comparing the chamber frames across each dual edge (3d only).
    pub wall_factors: Vec<(ChartId, ChartId, GluingUnit)>,
    pub structure_sheaf: bool,
}

impl MirrorLineBundle {
    fn new(
        bundle: CechLineBundle,
        degrees: Vec<i64>,
        degree: Option<i64>,
        wall_factors: Vec<(ChartId, ChartId, GluingUnit)>,
    ) -> Result<Self> {
        if !bundle.verify_cocycle() {
            return Err(Error::CocycleFailure {
                location: "returned bundle".into(),
            });
        }
        Ok(Self {
            structure_sheaf: bundle.is_trivial() && wall_factors.iter().all(|(_, _, g)| g.is_one()),
            bundle,
            degree,
            degrees,
            wall_factors,
        })
    }

    pub fn report(&self) -> Value {
        let mut r = self.bundle.report();
        let obj = r.as_object_mut().expect("object");
        obj.insert("cocycle".into(), json!(self.bundle.verify_cocycle()));
        obj.insert("structure_sheaf".into(), json!(self.structure_sheaf));
        if self.structure_sheaf {
            obj.insert("label".into(), json!("structure sheaf"));
        }
        let mut inv = serde_json::Map::new();
        if let Some(d) = self.degree {
            inv.insert("degree".into(), json!(d));
        }
        if !self.degrees.is_empty() {
            inv.insert("degrees".into(), json!(self.degrees));
        }
        obj.insert("invariants".into(), Value::Object(inv));
        if !self.wall_factors.is_empty() {
            let factors: Vec<Value> = self
                .wall_factors
                .iter()
                .map(|(a, b, g)| json!({"from": a.to_string(), "to": b.to_string(), "unit": g, "display": g.to_string()}))
                .collect();
            obj.insert("wall_factors".into(), json!(factors));
        }
        r
    }
}

/// Line bundle on the double-chamber cover `U_{i−1,i}` from the wall values.
pub fn syz_transform_2d(wall_values: &[i64], base: &SYZBase2D) -> Result<MirrorLineBundle> {
    let k = base.wall_count();
    if wall_values.len() != k {
        return Err(Error::WallCountMismatch {
            expected: k,
            found: wall_values.len(),
        });
    }
    let charts = (1..=k)
        .map(|i| ChartId::overlap(ChartId::Interval(i - 1), ChartId::Interval(i)))
        .collect();
    let degrees: Vec<i64> = wall_values.windows(2).map(|w| w[1] - w[0]).collect();
    let edges = degrees
        .iter()
        .enumerate()
        .map(|(i, d)| (i, i + 1, GluingUnit::one_plus_w(0, -d)))
        .collect();
    let bundle = CechLineBundle::new(charts, edges, Vec::new())?;
    let degree = (k == 2).then(|| degrees[0]);
    MirrorLineBundle::new(bundle, degrees, degree, Vec::new())
}

/// Integers `n_{αβ}` on the dual edges, keyed by the ordered pair.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TropicalSection3D {
    pub legs: BTreeMap<(Vec<i64>, Vec<i64>), Rational>,
}

impl TropicalSection3D {
    pub fn zero(curve: &DualTropicalCurve) -> Self {
        Self::constant(curve, &[0, 0])
    }

    /// `n_{αβ} = ⟨m, β − α⟩` for a constant integral slope `m`.
    pub fn constant(curve: &DualTropicalCurve, m: &[i64]) -> Self {
        let legs = curve
            .dual_pairs()
            .into_iter()
            .map(|(a, b)| {
                let n = m.iter().zip(b.iter().zip(&a)).map(|(mi, (bi, ai))| mi * (bi - ai)).sum::<i64>();
                ((a, b), int(n))
            })
            .collect();
        Self { legs }
    }

    /// `n_{αβ} = ⟨∇g(p), β − α⟩` with `p` the leg's base or the bounded edge's midpoint.
    pub fn from_gradient(curve: &DualTropicalCurve, grad: impl Fn(&[Rational]) -> Vec<Rational>) -> Self {
        let pair = |p: &[Rational], a: &[i64], b: &[i64]| {
            let g = grad(p);
            g.iter()
                .zip(b.iter().zip(a))
                .fold(Rational::zero(), |acc, (gi, (bi, ai))| acc + gi * int(bi - ai))
        };
        let mut legs = BTreeMap::new();
        for e in &curve.bounded_edges {
            let (p, q) = (&curve.vertices[e.cells.0].point, &curve.vertices[e.cells.1].point);
            let mid: Vec<Rational> = p.iter().zip(q).map(|(x, y)| (x + y) / int(2)).collect();
            legs.insert((e.alpha.clone(), e.beta.clone()), pair(&mid, &e.alpha, &e.beta));
        }
        for l in &curve.legs {
            legs.insert((l.alpha.clone(), l.beta.clone()), pair(&l.base, &l.alpha, &l.beta));
        }
        Self { legs }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut legs = self.legs.clone();
        for ((a, b), n) in &o.legs {
            if let Some(m) = legs.get_mut(&(a.clone(), b.clone())) {
                *m += n;
            } else if let Some(m) = legs.get_mut(&(b.clone(), a.clone())) {
                *m -= n;
            } else {
                legs.insert((a.clone(), b.clone()), n.clone());
            }
        }
        Self { legs }
    }

    /// `n` for the ordered pair, using antisymmetry if only the reverse is stored.
    pub fn get(&self, alpha: &[i64], beta: &[i64]) -> Option<Rational> {
        if alpha == beta {
            return Some(Rational::zero());
        }
        self.legs
            .get(&(alpha.to_vec(), beta.to_vec()))
            .cloned()
            .or_else(|| self.legs.get(&(beta.to_vec(), alpha.to_vec())).map(|n| -n))
    }

    /// `{"legs": [{"alpha", "beta", "n"}]}` with `n` an integer, float or `"p/q"`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let list = v
            .get("legs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("missing \"legs\" array".into()))?;
        let point = |e: &Value, key: &str| -> Result<Vec<i64>> {
            e.get(key)
                .and_then(Value::as_array)
                .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
                .ok_or_else(|| Error::InvalidInput(format!("leg needs integer \"{key}\"")))
        };
        let mut legs = BTreeMap::new();
        for e in list {
            let n = rational::from_json(e.get("n").ok_or_else(|| Error::InvalidInput("leg needs \"n\"".into()))?)?;
            legs.insert((point(e, "alpha")?, point(e, "beta")?), n);
        }
        Ok(Self { legs })
    }

    pub fn to_json(&self) -> Value {
        let legs: Vec<Value> = self
            .legs
            .iter()
            .map(|((a, b), n)| {
                let n = match rational::to_i64(n) {
                    Some(k) => json!(k),
                    None => rational::to_json(n),
                };
                json!({ "alpha": a, "beta": b, "n": n })
            })
            .collect();
        json!({ "legs": legs })
    }
}

fn invalid(constraint: &str, location: String) -> Error {
    Error::InvalidSection {
        constraint: constraint.into(),
        location,
    }
}

fn pair_name(a: &[i64], b: &[i64]) -> String {
    format!("leg {a:?}->{b:?}")
}

/// Integrality, antisymmetry, coverage of the dual edges and zero vertex sums.
pub fn validate_tropical_section(s: &TropicalSection3D, curve: &DualTropicalCurve) -> Result<()> {
    for ((a, b), n) in &s.legs {
        if !curve.are_adjacent(a, b) {
            return Err(invalid("leg set", format!("{} is not a dual edge", pair_name(a, b))));
        }
        if !n.is_integer() {
            return Err(invalid("integrality", format!("{} (n = {n})", pair_name(a, b))));
        }
        if let Some(m) = s.legs.get(&(b.clone(), a.clone())) {
            if *m != -n {
                return Err(invalid("antisymmetry", pair_name(a, b)));
            }
        }
    }
    for (a, b) in curve.dual_pairs() {
        if s.get(&a, &b).is_none() {
            return Err(invalid("coverage", format!("{} has no value", pair_name(&a, &b))));
        }
    }
    for (v, cycle) in curve.cycles.iter().enumerate() {
        let m = cycle.len();
        let sum = (0..m).fold(Rational::zero(), |acc, i| {
            acc + s.get(&cycle[i], &cycle[(i + 1) % m]).unwrap_or_default()
        });
        if !sum.is_zero() {
            return Err(invalid("vertex sum", format!("curve vertex {v} (sum = {sum})")));
        }
    }
    Ok(())
}

pub fn is_valid_tropical_section(s: &TropicalSection3D, curve: &DualTropicalCurve) -> bool {
    validate_tropical_section(s, curve).is_ok()
}

/// Line bundle on the cover `{U_{αβ}}`; chart `U_{αβ}` is framed by chamber `α`.
pub fn syz_transform_3d(s: &TropicalSection3D, curve: &DualTropicalCurve) -> Result<MirrorLineBundle> {
    validate_tropical_section(s, curve)?;
    let pairs = curve.dual_pairs();
    let n = |a: &[i64], b: &[i64]| -> i64 {
        let q = s.get(a, b).expect("validated coverage");
        rational::to_i64(&q).expect("validated integrality")
    };
    let shared = |i: usize, j: usize| -> Option<Vec<i64>> {
        let (p, q) = (&pairs[i], &pairs[j]);
        [&p.0, &p.1].into_iter().find(|c| **c == q.0 || **c == q.1).cloned()
    };
    let mut edges = Vec::new();
    let mut adjacent = BTreeSet::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if let Some(c) = shared(i, j) {
                let e = n(&pairs[i].0, &c) + n(&c, &pairs[j].0);
                edges.push((i, j, GluingUnit::one_plus_w(0, e)));
                adjacent.insert((i, j));
            }
        }
    }
    let mut two_cells = Vec::new();
    for &(i, j) in &adjacent {
        for k in j + 1..pairs.len() {
            if adjacent.contains(&(i, k)) && adjacent.contains(&(j, k)) {
                two_cells.push([i, j, k]);
            }
        }
    }
    let charts = pairs
        .iter()
        .map(|(a, b)| ChartId::overlap(ChartId::Label(a.clone()), ChartId::Label(b.clone())))
        .collect();
    let bundle = CechLineBundle::new(charts, edges, two_cells)?;
    if !bundle.verify_cocycle() {
        return Err(Error::CocycleFailure {
            location: "double-chamber cover".into(),
        });
    }
    let wall_factors = pairs
        .iter()
        .map(|(a, b)| {
            let g = GluingUnit::one_plus_w(0, n(a, b));
            (ChartId::Label(a.clone()), ChartId::Label(b.clone()), g)
        })
        .collect();
    MirrorLineBundle::new(bundle, Vec::new(), None, wall_factors)
}
