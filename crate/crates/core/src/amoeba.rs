//! Numerical amoebas of plane curves `{f = 0} ⊂ (ℂ^×)²`.
//!
//! Membership at `p` asks whether `min_θ |f(e^{p+iθ})|` drops below
//! `tol · max_a |c_a e^{⟨a,p⟩}|`. The minimum is searched on a 64×64 θ-grid
//! (exact roots-of-unity tables, since every phase is `2π·⟨a,j⟩/64`), then the
//! best grid points are polished by damped Gauss-Newton on `(Re f, Im f)`.
//!
//! Rasters flag a pixel when the amoeba may meet any point of it, not just its
//! centre: thin tentacles would otherwise be missed and complement components
//! would merge.

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPolynomial;
use crate::subdivision::DualTropicalCurve;
use crate::{Error, Result};

pub const THETA_GRID: usize = 64;
const REFINE_STARTS: usize = 4;
const REFINE_STEPS: usize = 20;

/// Terms of a plane Laurent polynomial prepared for repeated evaluation.
#[derive(Debug, Clone)]
struct Terms {
    exps: Vec<[i64; 2]>,
    log_abs: Vec<f64>,
    phase: Vec<f64>,
    /// Centroid of the exponents; the bound for a pixel is taken around it.
    centre: [f64; 2],
}

impl Terms {
    fn new(f: &LaurentPolynomial) -> Result<Self> {
        if f.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: f.dim(),
            });
        }
        let terms = f.float_terms();
        let n = terms.len() as f64;
        let exps: Vec<[i64; 2]> = terms.iter().map(|(e, _)| [e[0], e[1]]).collect();
        let centre = [
            exps.iter().map(|e| e[0] as f64).sum::<f64>() / n,
            exps.iter().map(|e| e[1] as f64).sum::<f64>() / n,
        ];
        Ok(Self {
            log_abs: terms.iter().map(|(_, c)| c.norm().ln()).collect(),
            phase: terms.iter().map(|(_, c)| c.arg()).collect(),
            exps,
            centre,
        })
    }

    /// Term moduli at `p`, scaled so the largest is 1.
    fn moduli(&self, p: [f64; 2]) -> Vec<f64> {
        let logs: Vec<f64> = self
            .exps
            .iter()
            .zip(&self.log_abs)
            .map(|(a, l)| l + a[0] as f64 * p[0] + a[1] as f64 * p[1])
            .collect();
        let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        logs.iter().map(|l| (l - top).exp()).collect()
    }

    /// `(index, ratio)` of the largest term and its share of the total modulus.
    fn dominance(&self, p: [f64; 2]) -> (usize, f64) {
        let m = self.moduli(p);
        let total: f64 = m.iter().sum();
        let (k, top) = m
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
        (k, top / total)
    }

    fn eval(&self, coeffs: &[Complex64], theta: [f64; 2]) -> (Complex64, [Complex64; 2]) {
        let mut g = Complex64::new(0.0, 0.0);
        let mut d = [Complex64::new(0.0, 0.0); 2];
        for (a, c) in self.exps.iter().zip(coeffs) {
            let v = c * Complex64::from_polar(1.0, a[0] as f64 * theta[0] + a[1] as f64 * theta[1]);
            g += v;
            d[0] += Complex64::i() * a[0] as f64 * v;
            d[1] += Complex64::i() * a[1] as f64 * v;
        }
        (g, d)
    }

    /// Approximate `min_θ |g(θ)|` with `g = Σ m_a e^{i(φ_a + ⟨a,θ⟩)}`.
    fn min_modulus(&self, m: &[f64], table: &[Complex64]) -> f64 {
        let coeffs: Vec<Complex64> = m
            .iter()
            .zip(&self.phase)
            .map(|(&r, &ph)| Complex64::from_polar(r, ph))
            .collect();
        let n = THETA_GRID as i64;
        let mut best: Vec<(f64, usize, usize)> = Vec::with_capacity(REFINE_STARTS + 1);
        for j1 in 0..THETA_GRID {
            for j2 in 0..THETA_GRID {
                let mut g = Complex64::new(0.0, 0.0);
                for (a, c) in self.exps.iter().zip(&coeffs) {
                    let k = (a[0] * j1 as i64 + a[1] * j2 as i64).rem_euclid(n) as usize;
                    g += c * table[k];
                }
                let v = g.norm();
                if best.len() < REFINE_STARTS || v < best[best.len() - 1].0 {
                    let pos = best.partition_point(|b| b.0 <= v);
                    best.insert(pos, (v, j1, j2));
                    best.truncate(REFINE_STARTS);
                }
            }
        }
        let step = TAU / THETA_GRID as f64;
        best.iter()
            .map(|&(v, j1, j2)| self.refine(&coeffs, [j1 as f64 * step, j2 as f64 * step], v))
            .fold(f64::INFINITY, f64::min)
    }

    /// Damped Gauss-Newton on the residual `(Re g, Im g)`.
    fn refine(&self, coeffs: &[Complex64], mut theta: [f64; 2], start: f64) -> f64 {
        let mut value = start;
        let mut damping = 1e-3;
        for _ in 0..REFINE_STEPS {
            let (g, d) = self.eval(coeffs, theta);
            value = value.min(g.norm());
            // J = [[Re d0, Re d1], [Im d0, Im d1]], r = (Re g, Im g)
            let (j00, j01, j10, j11) = (d[0].re, d[1].re, d[0].im, d[1].im);
            let a00 = j00 * j00 + j10 * j10;
            let a01 = j00 * j01 + j10 * j11;
            let a11 = j01 * j01 + j11 * j11;
            let b0 = -(j00 * g.re + j10 * g.im);
            let b1 = -(j01 * g.re + j11 * g.im);
            let mut improved = false;
            for _ in 0..8 {
                let (m00, m11) = (a00 * (1.0 + damping) + 1e-300, a11 * (1.0 + damping) + 1e-300);
                let det = m00 * m11 - a01 * a01;
                if det.abs() < f64::MIN_POSITIVE {
                    break;
                }
                let step = [(b0 * m11 - b1 * a01) / det, (m00 * b1 - a01 * b0) / det];
                let trial = [theta[0] + step[0], theta[1] + step[1]];
                let (gt, _) = self.eval(coeffs, trial);
                if gt.norm() < g.norm() {
                    theta = trial;
                    value = value.min(gt.norm());
                    damping = (damping * 0.3).max(1e-12);
                    improved = true;
                    break;
                }
                damping *= 10.0;
            }
            if !improved || value == 0.0 {
                break;
            }
        }
        value
    }
}

fn root_table() -> Vec<Complex64> {
    (0..THETA_GRID)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / THETA_GRID as f64))
        .collect()
}

/// Whether `p` lies in the amoeba of `f` up to relative tolerance `tol`.
pub fn amoeba_membership(f: &LaurentPolynomial, p: [f64; 2], tol: f64) -> Result<bool> {
    let terms = Terms::new(f)?;
    Ok(member_with_slack(&terms, p, &root_table(), &[0.0, 0.0], tol))
}

fn member_with_slack(terms: &Terms, p: [f64; 2], table: &[Complex64], half: &[f64; 2], tol: f64) -> bool {
    if terms.exps.len() < 2 {
        return false;
    }
    let m = terms.moduli(p);
    let slack: f64 = terms
        .exps
        .iter()
        .zip(&m)
        .map(|(a, &r)| {
            let w = (a[0] as f64 - terms.centre[0]).abs() * half[0]
                + (a[1] as f64 - terms.centre[1]).abs() * half[1];
            r * w.exp_m1()
        })
        .sum::<f64>()
        + tol;
    // |g| ≥ m_max − Σ others = 2 − Σ m
    let sum: f64 = m.iter().sum();
    if 2.0 - sum > slack {
        return false;
    }
    terms.min_modulus(&m, table) <= slack
}

/// Per-pixel amoeba flags over a box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmoebaRaster {
    /// `[x_min, x_max, y_min, y_max]`
    pub bbox: [f64; 4],
    pub resolution: usize,
    pub tol: f64,
    /// Row-major, row 0 at `y_min`.
    pub flags: Vec<bool>,
}

impl AmoebaRaster {
    pub fn pixel_size(&self) -> [f64; 2] {
        [
            (self.bbox[1] - self.bbox[0]) / self.resolution as f64,
            (self.bbox[3] - self.bbox[2]) / self.resolution as f64,
        ]
    }

    pub fn centre(&self, ix: usize, iy: usize) -> [f64; 2] {
        pixel_centre(&self.bbox, self.resolution, ix, iy)
    }

    pub fn flag(&self, ix: usize, iy: usize) -> bool {
        self.flags[iy * self.resolution + ix]
    }

    pub fn flagged_count(&self) -> usize {
        self.flags.iter().filter(|&&b| b).count()
    }

    /// Plain-text grey map (P2): amoeba black, complement white, top row = `y_max`.
    pub fn to_pgm(&self) -> String {
        let n = self.resolution;
        let mut out = format!("P2\n{n} {n}\n255\n");
        for iy in (0..n).rev() {
            let row: Vec<&str> = (0..n)
                .map(|ix| if self.flag(ix, iy) { "0" } else { "255" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Rows as strings of `#` (amoeba) and `.`, top row first.
    pub fn rows(&self) -> Vec<String> {
        (0..self.resolution)
            .rev()
            .map(|iy| {
                (0..self.resolution)
                    .map(|ix| if self.flag(ix, iy) { '#' } else { '.' })
                    .collect()
            })
            .collect()
    }

    /// 4-connected components of the unflagged pixels; `None` for amoeba pixels.
    pub fn complement_components(&self) -> (usize, Vec<Option<usize>>) {
        let n = self.resolution;
        let mut ids: Vec<Option<usize>> = vec![None; n * n];
        let mut count = 0;
        for start in 0..n * n {
            if self.flags[start] || ids[start].is_some() {
                continue;
            }
            ids[start] = Some(count);
            let mut queue = VecDeque::from([start]);
            while let Some(k) = queue.pop_front() {
                let (ix, iy) = (k % n, k / n);
                let mut push = |j: usize| {
                    if !self.flags[j] && ids[j].is_none() {
                        ids[j] = Some(count);
                        queue.push_back(j);
                    }
                };
                if ix > 0 {
                    push(k - 1);
                }
                if ix + 1 < n {
                    push(k + 1);
                }
                if iy > 0 {
                    push(k - n);
                }
                if iy + 1 < n {
                    push(k + n);
                }
            }
            count += 1;
        }
        (count, ids)
    }
}

fn pixel_centre(bbox: &[f64; 4], n: usize, ix: usize, iy: usize) -> [f64; 2] {
    [
        bbox[0] + (ix as f64 + 0.5) * (bbox[1] - bbox[0]) / n as f64,
        bbox[2] + (iy as f64 + 0.5) * (bbox[3] - bbox[2]) / n as f64,
    ]
}

pub const MIN_RESOLUTION: usize = 16;

/// Conservative raster: a pixel is flagged when the amoeba may meet it.
pub fn amoeba_raster(
    f: &LaurentPolynomial,
    bbox: [f64; 4],
    resolution: usize,
    tol: f64,
) -> Result<AmoebaRaster> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidInput(format!(
            "resolution must be at least {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    if !(bbox[1] > bbox[0] && bbox[3] > bbox[2]) || bbox.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!("empty or invalid box {bbox:?}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let terms = Terms::new(f)?;
    let table = root_table();
    let half = [
        0.5 * (bbox[1] - bbox[0]) / resolution as f64,
        0.5 * (bbox[3] - bbox[2]) / resolution as f64,
    ];
    let flags = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| {
            let p = pixel_centre(&bbox, resolution, k % resolution, k / resolution);
            member_with_slack(&terms, p, &table, &half, tol)
        })
        .collect();
    Ok(AmoebaRaster {
        bbox,
        resolution,
        tol,
        flags,
    })
}

/// Box around the curve's vertices padded by `margin` (at least `[-margin, margin]²`).
pub fn default_box(curve: &DualTropicalCurve, margin: f64) -> [f64; 4] {
    let pts = curve.vertex_points_f64();
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in pts {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    [x0 - margin, x1 + margin, y0 - margin, y1 + margin]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chamber {
    pub id: usize,
    pub label: Vec<i64>,
    pub representative: [f64; 2],
    pub pixels: usize,
}

/// Complement components labeled by their dominant monomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChamberLabeling {
    pub chambers: Vec<Chamber>,
    #[serde(skip)]
    pub pixel_components: Vec<Option<usize>>,
}

impl ChamberLabeling {
    /// Label of the component containing the pixel at `p`, if any.
    pub fn label_at(&self, raster: &AmoebaRaster, p: [f64; 2]) -> Option<&[i64]> {
        let n = raster.resolution as f64;
        let ix = ((p[0] - raster.bbox[0]) / (raster.bbox[1] - raster.bbox[0]) * n).floor();
        let iy = ((p[1] - raster.bbox[2]) / (raster.bbox[3] - raster.bbox[2]) * n).floor();
        if ix < 0.0 || iy < 0.0 || ix >= n || iy >= n {
            return None;
        }
        let k = iy as usize * raster.resolution + ix as usize;
        let id = self.pixel_components[k]?;
        Some(&self.chambers[id].label)
    }
}

/// Labels each complement component by the exponent whose monomial strictly
/// dominates the sum of the others at the component's most dominated pixel.
pub fn chamber_labeling(raster: &AmoebaRaster, f: &LaurentPolynomial) -> Result<ChamberLabeling> {
    let terms = Terms::new(f)?;
    let expected = f.newton_polytope()?.lattice_points().len();
    let (count, ids) = raster.complement_components();
    let mut best: Vec<Option<(f64, usize, [f64; 2])>> = vec![None; count];
    for (k, id) in ids.iter().enumerate() {
        let Some(id) = *id else { continue };
        let p = raster.centre(k % raster.resolution, k / raster.resolution);
        let (term, share) = terms.dominance(p);
        if best[id].is_none_or(|b| share > b.0) {
            best[id] = Some((share, term, p));
        }
    }
    let mut chambers = Vec::with_capacity(count);
    for (id, b) in best.into_iter().enumerate() {
        let (share, term, p) = b.expect("components are nonempty");
        if share <= 0.5 {
            return Err(Error::UnresolvedComponents {
                found: count,
                expected,
            });
        }
        chambers.push(Chamber {
            id,
            label: terms.exps[term].to_vec(),
            representative: p,
            pixels: ids.iter().filter(|&&c| c == Some(id)).count(),
        });
    }
    let distinct: BTreeSet<&Vec<i64>> = chambers.iter().map(|c| &c.label).collect();
    if distinct.len() != count || count != expected {
        return Err(Error::UnresolvedComponents {
            found: count,
            expected,
        });
    }
    Ok(ChamberLabeling {
        chambers,
        pixel_components: ids,
    })
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    };
    ((p[0] - a[0] - t * d[0]).powi(2) + (p[1] - a[1] - t * d[1]).powi(2)).sqrt()
}

fn ray_distance(p: [f64; 2], a: [f64; 2], d: [f64; 2]) -> f64 {
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).max(0.0);
    ((p[0] - a[0] - t * d[0]).powi(2) + (p[1] - a[1] - t * d[1]).powi(2)).sqrt()
}

/// Euclidean distance from `p` to the curve as a 1-complex.
pub fn tube_distance(curve: &DualTropicalCurve, p: [f64; 2]) -> f64 {
    let v = curve.vertex_points_f64();
    let mut best = v
        .iter()
        .map(|q| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt())
        .fold(f64::INFINITY, f64::min);
    for e in &curve.bounded_edges {
        best = best.min(segment_distance(p, v[e.cells.0], v[e.cells.1]));
    }
    for leg in &curve.legs {
        let d = [leg.direction[0] as f64, leg.direction[1] as f64];
        best = best.min(ray_distance(p, v[leg.cell], d));
    }
    best
}
