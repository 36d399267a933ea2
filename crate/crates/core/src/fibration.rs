//! The conic fibration `X = {xy = f(z)}` and its SYZ bases.
//!
//! In the one-variable case the fibration is `ρ = (log|z|, μ)` with
//! `μ = ½(|x|² − |y|²)`, the moment map of `(x, y, z) ↦ (e^{iθ}x, e^{−iθ}y, z)`.
//! The three-dimensional base is modeled combinatorially: amoeba raster,
//! chamber labels and the dual tropical curve.

use nalgebra::{DMatrix, Matrix6, SVD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::amoeba::{self, AmoebaRaster, ChamberLabeling};
use crate::laurent::LaurentPolynomial;
use crate::subdivision::{DualTropicalCurve, Lifting, RegularSubdivision};
use crate::{Error, Result};

/// Relative gap below which two root moduli count as equal.
pub const DISTINCT_GAP: f64 = 1e-9;
/// Tolerance for the on-hypersurface precondition of the 2d fibration map.
pub const HYPERSURFACE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ConicFibrationSpace {
    f: LaurentPolynomial,
}

impl ConicFibrationSpace {
    pub fn new(f: LaurentPolynomial) -> Self {
        Self { f }
    }

    pub fn polynomial(&self) -> &LaurentPolynomial {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    fn residual(&self, point: &[Complex64]) -> Result<(f64, f64)> {
        let d = self.f.dim();
        if point.len() != d + 2 {
            return Err(Error::DimensionMismatch {
                expected: d + 2,
                found: point.len(),
            });
        }
        if point[2..].iter().any(|z| z.norm() == 0.0) {
            return Err(Error::ZeroCoordinate);
        }
        let fz = self.f.eval(&point[2..]);
        Ok(((point[0] * point[1] - fz).norm(), fz.norm()))
    }

    /// `|xy − f(z)| < tol·(1 + |f(z)|)` for a point `(x, y, z₁, …)`.
    pub fn on_hypersurface(&self, point: &[Complex64], tol: f64) -> Result<bool> {
        let (r, fz) = self.residual(point)?;
        Ok(r < tol * (1.0 + fz))
    }
}

pub fn moment_map(x: Complex64, y: Complex64) -> f64 {
    0.5 * (x.norm_sqr() - y.norm_sqr())
}

/// The circle action `(e^{iθ}x, e^{−iθ}y, z)`.
pub fn circle_action(p: [Complex64; 3], theta: f64) -> [Complex64; 3] {
    let u = Complex64::from_polar(1.0, theta);
    [u * p[0], p[1] / u, p[2]]
}

/// `ρ(x, y, z) = (log|z|, μ(x, y))` for `d = 1`.
pub fn syz_fibration_2d(space: &ConicFibrationSpace, p: [Complex64; 3]) -> Result<[f64; 2]> {
    require_dim(space, 1)?;
    let (r, fz) = space.residual(&p)?;
    if r >= HYPERSURFACE_TOL * (1.0 + fz) {
        return Err(Error::OffHypersurface { residual: r });
    }
    Ok([p[2].norm().ln(), moment_map(p[0], p[1])])
}

fn require_dim(space: &ConicFibrationSpace, d: usize) -> Result<()> {
    if space.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: space.dim(),
        });
    }
    Ok(())
}

/// Roots of a one-variable Laurent polynomial in `ℂ^×` (eigenvalues of the
/// companion matrix).
pub fn roots(f: &LaurentPolynomial) -> Result<Vec<Complex64>> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.dim(),
        });
    }
    let terms = f.float_terms();
    let lo = terms.iter().map(|(e, _)| e[0]).min().expect("nonzero");
    let hi = terms.iter().map(|(e, _)| e[0]).max().expect("nonzero");
    let n = (hi - lo) as usize;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    for (e, v) in &terms {
        c[(e[0] - lo) as usize] = *v;
    }
    let lead = c[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let eig = m
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::RootFinding("Schur decomposition did not converge".into()))?;
    Ok(eig.iter().copied().collect())
}

/// Sorted moduli of the roots, gated by the distinctness test.
pub fn root_moduli(f: &LaurentPolynomial) -> Result<Vec<f64>> {
    let moduli: Vec<f64> = roots(f)?.iter().map(|r| r.norm()).collect();
    sort_and_check(moduli)
}

fn sort_and_check(mut moduli: Vec<f64>) -> Result<Vec<f64>> {
    for &m in &moduli {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidModulus { value: m });
        }
    }
    moduli.sort_by(f64::total_cmp);
    for w in moduli.windows(2) {
        if (w[1] - w[0]) <= DISTINCT_GAP * w[1] {
            return Err(Error::EqualModulusRoots {
                first: w[0],
                second: w[1],
            });
        }
    }
    Ok(moduli)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chamber2D {
    pub index: usize,
    /// `None` stands for `−∞` / `+∞`.
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SYZBase2D {
    pub root_moduli: Vec<f64>,
    pub walls: Vec<f64>,
    pub chambers: Vec<Chamber2D>,
    pub discriminant: Vec<[f64; 2]>,
}

impl SYZBase2D {
    pub fn from_moduli(moduli: &[f64]) -> Result<Self> {
        let moduli = sort_and_check(moduli.to_vec())?;
        let walls: Vec<f64> = moduli.iter().map(|m| m.ln()).collect();
        let k = walls.len();
        let chambers = (0..=k)
            .map(|i| Chamber2D {
                index: i,
                lower: i.checked_sub(1).map(|j| walls[j]),
                upper: walls.get(i).copied(),
            })
            .collect();
        Ok(Self {
            discriminant: walls.iter().map(|&s| [s, 0.0]).collect(),
            root_moduli: moduli,
            walls,
            chambers,
        })
    }

    pub fn wall_count(&self) -> usize {
        self.walls.len()
    }

    /// Index of the chamber containing `log|z| = s` (`None` on a wall).
    pub fn chamber_of(&self, s: f64) -> Option<usize> {
        if self.walls.contains(&s) {
            return None;
        }
        Some(self.walls.iter().filter(|&&w| w < s).count())
    }

    pub fn report(&self) -> Value {
        json!({
            "walls": self.walls,
            "root_moduli": self.root_moduli,
            "chambers": self.chambers,
            "discriminant": self.discriminant,
            "monodromy": MonodromyMatrix::counter_clockwise().0,
            "monodromy_orientation": "counter-clockwise",
        })
    }
}

/// Walls and chambers of the 2d base. Moduli are found numerically unless given.
pub fn base_2d(space: &ConicFibrationSpace, root_moduli: Option<&[f64]>) -> Result<SYZBase2D> {
    require_dim(space, 1)?;
    let expected = roots(space.polynomial())?.len();
    match root_moduli {
        Some(m) => {
            if m.len() != expected {
                return Err(Error::RootCountMismatch {
                    expected,
                    found: m.len(),
                });
            }
            SYZBase2D::from_moduli(m)
        }
        None => SYZBase2D::from_moduli(&root_moduli_of(space)?),
    }
}

fn root_moduli_of(space: &ConicFibrationSpace) -> Result<Vec<f64>> {
    root_moduli(space.polynomial())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyMatrix(pub [[i64; 2]; 2]);

impl MonodromyMatrix {
    /// Monodromy of a counter-clockwise loop around the discriminant.
    pub fn counter_clockwise() -> Self {
        Self([[1, 1], [0, 1]])
    }

    pub fn identity() -> Self {
        Self([[1, 0], [0, 1]])
    }

    pub fn det(&self) -> i64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        Self([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Self {
        let a = &self.0;
        Self([[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]])
    }

    /// `k`-fold loop; negative `k` runs clockwise.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { *self };
        (0..k.unsigned_abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }
}

pub fn monodromy_2d() -> MonodromyMatrix {
    MonodromyMatrix::counter_clockwise()
}

/// One real coordinate of a map `X → ℝ²` used to test fiber isotropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseCoordinate {
    LogAbsZ,
    Moment,
    RealZ,
    RealX,
}

impl BaseCoordinate {
    /// Gradient in real coordinates `(Re x, Im x, Re y, Im y, Re z, Im z)`.
    fn gradient(self, p: &[Complex64; 3]) -> [f64; 6] {
        let [x, y, z] = *p;
        match self {
            Self::LogAbsZ => {
                let n = z.norm_sqr();
                [0.0, 0.0, 0.0, 0.0, z.re / n, z.im / n]
            }
            Self::Moment => [x.re, x.im, -y.re, -y.im, 0.0, 0.0],
            Self::RealZ => [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            Self::RealX => [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        }
    }
}

/// The SYZ map `(log|z|, μ)`.
pub const SYZ_MAP: [BaseCoordinate; 2] = [BaseCoordinate::LogAbsZ, BaseCoordinate::Moment];

/// `ω(u, w)` for `ω = −(i/2)(dx∧dx̄ + dy∧dȳ + dz∧dz̄/|z|²)` in real coordinates.
pub fn symplectic_form(p: &[Complex64; 3], u: &[f64; 6], w: &[f64; 6]) -> f64 {
    let pair = |i: usize| u[i] * w[i + 1] - u[i + 1] * w[i];
    -(pair(0) + pair(2) + pair(4) / p[2].norm_sqr())
}

/// Max `|ω|` on the tangent plane of the fiber of `(log|z|, μ)` through `p`.
pub fn fiber_lagrangian_residual(space: &ConicFibrationSpace, p: [Complex64; 3], tol: f64) -> Result<f64> {
    fiber_residual_for(space, p, SYZ_MAP, tol)
}

/// As [`fiber_lagrangian_residual`] for another map `X → ℝ²`.
pub fn fiber_residual_for(
    space: &ConicFibrationSpace,
    p: [Complex64; 3],
    map: [BaseCoordinate; 2],
    tol: f64,
) -> Result<f64> {
    require_dim(space, 1)?;
    let (r, fz) = space.residual(&p)?;
    if r >= tol * (1.0 + fz) {
        return Err(Error::OffHypersurface { residual: r });
    }
    let [x, y, z] = p;
    // dF for F = xy − f(z): holomorphic partials y, x, −f'(z)
    let df = space
        .polynomial()
        .partial_derivative(0)
        .map_or(Complex64::new(0.0, 0.0), |d| d.eval(&[z]));
    let partials = [y, x, -df];
    let mut jac = Matrix6::<f64>::zeros();
    for (k, c) in partials.iter().enumerate() {
        // Re F: (Re c, −Im c), Im F: (Im c, Re c) per complex coordinate
        jac[(0, 2 * k)] = c.re;
        jac[(0, 2 * k + 1)] = -c.im;
        jac[(1, 2 * k)] = c.im;
        jac[(1, 2 * k + 1)] = c.re;
    }
    for (row, coord) in map.iter().enumerate() {
        let g = coord.gradient(&p);
        for (k, v) in g.iter().enumerate() {
            jac[(2 + row, k)] = *v;
        }
    }
    let svd = SVD::new(jac, false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sv = svd.singular_values;
    let top = sv.max();
    let rank = sv.iter().filter(|&&s| s > tol * top).count();
    if rank < 4 {
        return Err(Error::SingularFiber { rank, expected: 4 });
    }
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
    let basis: Vec<[f64; 6]> = order[..2]
        .iter()
        .map(|&i| std::array::from_fn(|k| v_t[(i, k)]))
        .collect();
    let norm = |v: &[f64; 6]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let value = symplectic_form(&p, &basis[0], &basis[1]) / (norm(&basis[0]) * norm(&basis[1]));
    Ok(value.abs())
}

/// Combinatorial 3d base: amoeba raster, chamber labels and the dual curve.
#[derive(Debug, Clone)]
pub struct SYZBase3D {
    pub subdivision: RegularSubdivision,
    pub curve: DualTropicalCurve,
    pub raster: AmoebaRaster,
    pub labeling: ChamberLabeling,
}

impl SYZBase3D {
    pub fn report(&self) -> Value {
        json!({
            "subdivision": self.subdivision.to_json(),
            "curve": self.curve,
            "amoeba": {
                "bbox": self.raster.bbox,
                "resolution": self.raster.resolution,
                "tol": self.raster.tol,
                "rows": self.raster.rows(),
            },
            "chambers": self.labeling.chambers,
            "walls": "amoeba x R",
        })
    }
}

/// Builds the 3d base; the lifting defaults to zero on every lattice point and
/// the box to the curve's vertices padded by 4.
pub fn base_3d(
    space: &ConicFibrationSpace,
    lifting: Option<&Lifting>,
    bbox: Option<[f64; 4]>,
    resolution: usize,
    tol: f64,
) -> Result<SYZBase3D> {
    require_dim(space, 2)?;
    let polytope = space.polynomial().newton_polytope()?;
    let lifting = lifting.cloned().unwrap_or_else(|| Lifting::flat(&polytope));
    let subdivision = RegularSubdivision::new(&polytope, &lifting)?;
    let curve = subdivision.dual_tropical_curve()?;
    let bbox = bbox.unwrap_or_else(|| amoeba::default_box(&curve, 4.0));
    let raster = amoeba::amoeba_raster(space.polynomial(), bbox, resolution, tol)?;
    let labeling = amoeba::chamber_labeling(&raster, space.polynomial())?;
    Ok(SYZBase3D {
        subdivision,
        curve,
        raster,
        labeling,
    })
}
