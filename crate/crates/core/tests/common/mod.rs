//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `(x, y)` lies in the amoeba of `1 + z₁ + z₂` iff `1, eˣ, eʸ` satisfy the triangle inequality.
pub fn triangle_oracle(x: f64, y: f64) -> bool {
    let (a, b, c) = (1.0, x.exp(), y.exp());
    a <= b + c && b <= a + c && c <= a + b
}

/// Brute-force Minkowski sum of two point sets.
pub fn minkowski(a: &[Vec<i64>], b: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    a.iter()
        .flat_map(|p| b.iter().map(move |q| p.iter().zip(q).map(|(x, y)| x + y).collect()))
        .collect()
}

/// Vertices of the convex hull of planar or linear points, by brute force:
/// a point is a vertex iff it is not a convex combination of two or three others.
pub fn hull_vertices(points: &BTreeSet<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    let pts: Vec<&Vec<i64>> = points.iter().collect();
    let in_segment = |p: &[i64], a: &[i64], b: &[i64]| {
        let d = a.len();
        if d == 1 {
            return a[0].min(b[0]) <= p[0] && p[0] <= a[0].max(b[0]);
        }
        let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        cross == 0
            && a[0].min(b[0]) <= p[0]
            && p[0] <= a[0].max(b[0])
            && a[1].min(b[1]) <= p[1]
            && p[1] <= a[1].max(b[1])
    };
    let in_triangle = |p: &[i64], a: &[i64], b: &[i64], c: &[i64]| {
        let area = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
        if area == 0 {
            return false;
        }
        let s = |u: &[i64], v: &[i64]| (v[0] - u[0]) * (p[1] - u[1]) - (v[1] - u[1]) * (p[0] - u[0]);
        let (d1, d2, d3) = (s(a, b), s(b, c), s(c, a));
        let neg = d1 < 0 || d2 < 0 || d3 < 0;
        let pos = d1 > 0 || d2 > 0 || d3 > 0;
        !(neg && pos)
    };
    let mut out = BTreeSet::new();
    'outer: for p in &pts {
        let others: Vec<&Vec<i64>> = pts.iter().filter(|q| **q != *p).copied().collect();
        for i in 0..others.len() {
            for j in i + 1..others.len() {
                if in_segment(p, others[i], others[j]) {
                    continue 'outer;
                }
                if p.len() == 2 {
                    for k in j + 1..others.len() {
                        if in_triangle(p, others[i], others[j], others[k]) {
                            continue 'outer;
                        }
                    }
                }
            }
        }
        out.insert((*p).clone());
    }
    out
}

/// Continuous argument along a polyline, starting in `(−π, π]`.
pub fn lifted_args(path: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(path.len());
    let mut acc = path[0].arg();
    out.push(acc);
    for w in path.windows(2) {
        let mut d = w[1].arg() - w[0].arg();
        while d > PI {
            d -= TAU;
        }
        while d < -PI {
            d += TAU;
        }
        acc += d;
        out.push(acc);
    }
    out
}

/// For a path with strictly increasing `|z|`: the sheet index `⌊θ/2π⌋` of the
/// lifted argument where the path meets the circle `|z| = r`.
pub fn sheet_at_radius(path: &[Complex64], r: f64) -> i64 {
    let args = lifted_args(path);
    for (i, w) in path.windows(2).enumerate() {
        let (r0, r1) = (w[0].norm(), w[1].norm());
        if r0 <= r && r <= r1 {
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if (w[0] + (w[1] - w[0]) * mid).norm() < r {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let q = w[0] + (w[1] - w[0]) * lo;
            let mut d = q.arg() - w[0].arg();
            while d > PI {
                d -= TAU;
            }
            while d < -PI {
                d += TAU;
            }
            let theta = args[i] + d;
            // sheets are cut along the positive real axis
            return (theta / TAU).floor() as i64;
        }
    }
    panic!("radius {r} not crossed");
}

/// Winding number of `g` around 0 along the circle `|w + 1| = ½`, trapezoid rule.
pub fn argument_principle(g: impl Fn(Complex64) -> Complex64, samples: usize) -> f64 {
    let centre = Complex64::new(-1.0, 0.0);
    let at = |k: usize| g(centre + Complex64::from_polar(0.5, TAU * k as f64 / samples as f64));
    let mut total = 0.0;
    for k in 0..samples {
        let mut d = at(k + 1).arg() - at(k).arg();
        while d > PI {
            d -= TAU;
        }
        while d < -PI {
            d += TAU;
        }
        total += d;
    }
    total / TAU
}

/// Radially increasing polyline from `r_min` past `r_max` with random small turns.
pub fn radial_path(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> Vec<Complex64> {
    let mut r = r_min;
    let mut theta: f64 = rng.gen_range(0.2..6.0);
    let mut out = vec![Complex64::from_polar(r, theta)];
    while r < r_max {
        r *= rng.gen_range(1.03..1.06);
        theta += rng.gen_range(-0.2..0.2);
        out.push(Complex64::from_polar(r, theta));
    }
    out
}

/// `ω(u, w) = −Im(ū·w)` on `(x, y)` plus the `dz∧dz̄/|z|²` term, on complex tangent vectors.
pub fn omega(z: Complex64, u: [Complex64; 3], w: [Complex64; 3]) -> f64 {
    let im = |a: Complex64, b: Complex64| (a.conj() * b).im;
    -(im(u[0], w[0]) + im(u[1], w[1]) + im(u[2], w[2]) / z.norm_sqr())
}

/// Closed-form tangent frame of the fiber of `(log|z|, μ)` through `(x, y, z)` on
/// `xy = f(z)`: the circle action and the rotation of `z` at fixed `μ`.
pub fn fiber_frame(x: Complex64, y: Complex64, z: Complex64, df: Complex64) -> [[Complex64; 3]; 2] {
    let i = Complex64::i();
    let t1 = [i * x, -i * y, Complex64::new(0.0, 0.0)];
    let c = i * z * df / (x * y);
    let (ax, ay) = (x.norm_sqr(), y.norm_sqr());
    let a = Complex64::new(ay * c.re / (ax + ay), 0.5 * c.im);
    let b = c - a;
    [t1, [a * x, b * y, i * z]]
}

pub fn frame_residual(z: Complex64, frame: &[[Complex64; 3]; 2]) -> f64 {
    let n = |v: &[Complex64; 3]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    omega(z, frame[0], frame[1]).abs() / (n(&frame[0]) * n(&frame[1]))
}

/// Radially increasing spiral: per step the angle turns by a fixed random fraction
/// of `acos(1/ratio)`, the largest turn keeping `|z|` monotone along each chord.
pub fn radial_spiral(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> Vec<Complex64> {
    let drift: f64 = rng.gen_range(-0.95..0.95);
    let mut r = r_min;
    let mut theta: f64 = rng.gen_range(0.2..6.0);
    let mut out = vec![Complex64::from_polar(r, theta)];
    while r < r_max {
        let ratio = rng.gen_range(1.001..1.004);
        r *= ratio;
        theta += drift * (1.0 / ratio).acos();
        out.push(Complex64::from_polar(r, theta));
    }
    out
}
