//! Wall-crossing units `c · w^a · (1+w)^k · u^m` and the corrected chart gluings.
//!
//! Units are kept in this normal form without ever expanding `(1+w)^k`, so
//! identities such as `w(1 + w⁻¹) = 1 + w` hold exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::lattice::{det, unimodular_inverse, IntMatrix};
use crate::rational::{self, int};
use crate::subdivision::DualTropicalCurve;
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GluingUnit {
    #[serde(with = "rational::text")]
    coeff: Rational,
    w_exp: i64,
    opw_exp: i64,
    monomial: Vec<i64>,
}

impl GluingUnit {
    pub fn new(coeff: Rational, w_exp: i64, opw_exp: i64, monomial: Vec<i64>) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::InvalidInput("unit coefficient must be nonzero".into()));
        }
        Ok(Self {
            coeff,
            w_exp,
            opw_exp,
            monomial,
        })
    }

    pub fn one(n: usize) -> Self {
        Self {
            coeff: int(1),
            w_exp: 0,
            opw_exp: 0,
            monomial: vec![0; n],
        }
    }

    /// The `j`-th chart coordinate among `n`.
    pub fn coordinate(n: usize, j: usize) -> Self {
        let mut u = Self::one(n);
        u.monomial[j] = 1;
        u
    }

    pub fn w_power(n: usize, a: i64) -> Self {
        Self { w_exp: a, ..Self::one(n) }
    }

    pub fn one_plus_w(n: usize, k: i64) -> Self {
        Self { opw_exp: k, ..Self::one(n) }
    }

    /// `(1 + w⁻¹)^k = w^{−k} (1+w)^k`.
    pub fn one_plus_w_inv(n: usize, k: i64) -> Self {
        Self {
            w_exp: -k,
            opw_exp: k,
            ..Self::one(n)
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn w_exp(&self) -> i64 {
        self.w_exp
    }

    pub fn opw_exp(&self) -> i64 {
        self.opw_exp
    }

    pub fn monomial(&self) -> &[i64] {
        &self.monomial
    }

    pub fn nvars(&self) -> usize {
        self.monomial.len()
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.w_exp == 0 && self.opw_exp == 0 && self.monomial.iter().all(|&e| e == 0)
    }

    /// No monomial part: `c · w^a · (1+w)^k`.
    pub fn is_scalar(&self) -> bool {
        self.monomial.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars(), o.nvars(), "units over different charts");
        Self {
            coeff: &self.coeff * &o.coeff,
            w_exp: self.w_exp + o.w_exp,
            opw_exp: self.opw_exp + o.opw_exp,
            monomial: self.monomial.iter().zip(&o.monomial).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let e = i32::try_from(k).expect("exponent fits in i32");
        Self {
            coeff: self.coeff.pow(e),
            w_exp: self.w_exp * k,
            opw_exp: self.opw_exp * k,
            monomial: self.monomial.iter().map(|a| a * k).collect(),
        }
    }

    /// Replaces every chart coordinate by its image under `g` (`w` is fixed).
    pub fn substitute(&self, g: &ChartGluing) -> Self {
        assert_eq!(self.nvars(), g.images.len(), "unit is not over the source chart");
        let scalar = Self {
            monomial: vec![0; g.target_dim()],
            ..self.clone()
        };
        self.monomial
            .iter()
            .zip(&g.images)
            .fold(scalar, |acc, (&e, img)| acc.mul(&img.pow(e)))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Display for GluingUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coeff.is_one() {
            parts.push(self.coeff.to_string());
        }
        let power = |base: &str, e: i64| match e {
            1 => base.to_string(),
            _ => format!("{base}^{e}"),
        };
        if self.w_exp != 0 {
            parts.push(power("w", self.w_exp));
        }
        if self.opw_exp != 0 {
            parts.push(power("(1+w)", self.opw_exp));
        }
        for (j, &e) in self.monomial.iter().enumerate() {
            if e != 0 {
                parts.push(power(&format!("u{}", j + 1), e));
            }
        }
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChartId {
    /// Chamber `U_i` of the 2d base.
    Interval(usize),
    /// Chamber labeled by a lattice point in the 3d base.
    Label(Vec<i64>),
    /// Double-chamber chart `U_{αβ}`.
    Overlap(Box<ChartId>, Box<ChartId>),
    /// The torus `(t₁, …, t_{d+1})` of the toric mirror.
    Torus,
}

impl ChartId {
    pub fn overlap(a: ChartId, b: ChartId) -> Self {
        Self::Overlap(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Interval(i) => write!(f, "U{i}"),
            Self::Label(v) => {
                let s: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "U({})", s.join(","))
            }
            Self::Overlap(a, b) => write!(f, "U[{a}|{b}]"),
            Self::Torus => f.write_str("T"),
        }
    }
}

impl Serialize for ChartId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `images[j]` is source coordinate `j` written in target coordinates; `w ↦ w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartGluing {
    pub source: ChartId,
    pub target: ChartId,
    pub images: Vec<GluingUnit>,
}

impl ChartGluing {
    pub fn new(source: ChartId, target: ChartId, images: Vec<GluingUnit>) -> Result<Self> {
        let n = images.len();
        if let Some(bad) = images.iter().find(|u| u.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.nvars(),
            });
        }
        let g = Self { source, target, images };
        let d = det(&g.monomial_matrix());
        if d.abs() != 1 {
            return Err(Error::NotInvertible { det: d });
        }
        Ok(g)
    }

    pub fn identity(chart: ChartId, n: usize) -> Self {
        Self {
            source: chart.clone(),
            target: chart,
            images: (0..n).map(|j| GluingUnit::coordinate(n, j)).collect(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.images.len()
    }

    pub fn target_dim(&self) -> usize {
        self.images.first().map_or(0, GluingUnit::nvars)
    }

    /// Row `j`: exponents of the target coordinates in the image of coordinate `j`.
    pub fn monomial_matrix(&self) -> IntMatrix {
        self.images.iter().map(|u| u.monomial.clone()).collect()
    }

    /// Coordinate images agree with the identity, ignoring chart names.
    pub fn is_identity(&self) -> bool {
        let n = self.images.len();
        self.images
            .iter()
            .enumerate()
            .all(|(j, u)| *u == GluingUnit::coordinate(n, j))
    }

    /// `self: A → B` followed by `next: B → C`.
    pub fn compose(&self, next: &ChartGluing) -> Result<ChartGluing> {
        if self.target != next.source {
            return Err(Error::ChartMismatch {
                expected: self.target.to_string(),
                found: next.source.to_string(),
            });
        }
        Ok(ChartGluing {
            source: self.source.clone(),
            target: next.target.clone(),
            images: self.images.iter().map(|u| u.substitute(next)).collect(),
        })
    }

    pub fn inverse(&self) -> Result<ChartGluing> {
        let m = self.monomial_matrix();
        let n = unimodular_inverse(&m).ok_or(Error::NotInvertible { det: det(&m) })?;
        let dim = self.images.len();
        // u_B = ∏_j (u_A,j / s_j)^{N[i][j]} with s_j the scalar part of image j
        let images = (0..dim)
            .map(|i| {
                let mut out = GluingUnit {
                    monomial: n[i].clone(),
                    ..GluingUnit::one(dim)
                };
                for (j, img) in self.images.iter().enumerate() {
                    let scalar = GluingUnit {
                        monomial: vec![0; dim],
                        ..img.clone()
                    };
                    out = out.mul(&scalar.pow(-n[i][j]));
                }
                out
            })
            .collect();
        Ok(ChartGluing {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }

    pub fn report(&self) -> Value {
        json!({
            "source": self.source.to_string(),
            "target": self.target.to_string(),
            "images": self.images,
        })
    }
}

pub fn compose(g1: &ChartGluing, g2: &ChartGluing) -> Result<ChartGluing> {
    g1.compose(g2)
}

/// `u_i ↦ u_{i+1}(1+w)` across wall `i` of a base with `walls` walls.
pub fn wall_crossing_2d(walls: usize, i: usize) -> Result<ChartGluing> {
    if i >= walls {
        return Err(Error::IndexOutOfRange { index: i, len: walls });
    }
    let image = GluingUnit::coordinate(1, 0).mul(&GluingUnit::one_plus_w(1, 1));
    Ok(ChartGluing {
        source: ChartId::Interval(i),
        target: ChartId::Interval(i + 1),
        images: vec![image],
    })
}

/// `u_{α,j} ↦ (1+w)^{β_j − α_j} u_{β,j}` between adjacent chambers.
pub fn wall_crossing_3d(curve: &DualTropicalCurve, alpha: &[i64], beta: &[i64]) -> Result<ChartGluing> {
    if alpha != beta && !curve.are_adjacent(alpha, beta) {
        return Err(Error::NonAdjacentLabels {
            alpha: alpha.to_vec(),
            beta: beta.to_vec(),
        });
    }
    Ok(label_gluing(alpha, beta))
}

fn label_gluing(alpha: &[i64], beta: &[i64]) -> ChartGluing {
    let n = alpha.len();
    let images = (0..n)
        .map(|j| GluingUnit::coordinate(n, j).mul(&GluingUnit::one_plus_w(n, beta[j] - alpha[j])))
        .collect();
    ChartGluing {
        source: ChartId::Label(alpha.to_vec()),
        target: ChartId::Label(beta.to_vec()),
        images,
    }
}

/// Composes a closed loop of gluings and tests for the identity.
pub fn verify_cocycle(gluings: &[ChartGluing]) -> Result<bool> {
    let (first, rest) = gluings.split_first().ok_or(Error::EmptyLoop)?;
    let composite = rest.iter().try_fold(first.clone(), |acc, g| acc.compose(g))?;
    if composite.source != composite.target {
        return Err(Error::OpenLoop {
            start: composite.source.to_string(),
            end: composite.target.to_string(),
        });
    }
    Ok(composite.is_identity())
}

/// The chart of `α` inside the torus `(t₁, …, t_{d+1})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToricIdentification {
    pub alpha: Vec<i64>,
    /// `u_{α,j} = t_j t_{d+1}^{−α_j}` as units over `t`.
    pub substitution: Vec<GluingUnit>,
    pub w: String,
    pub removed_hypersurface: String,
    /// Adjacent labels whose gluing became an identity in `t`.
    pub verified: Vec<Vec<i64>>,
}

fn toric_substitution(alpha: &[i64]) -> Vec<GluingUnit> {
    let d = alpha.len();
    (0..d)
        .map(|j| {
            let mut m = vec![0; d + 1];
            m[j] = 1;
            m[d] = -alpha[j];
            GluingUnit {
                monomial: m,
                ..GluingUnit::one(d + 1)
            }
        })
        .collect()
}

/// A chart-`α` unit rewritten over `t` using `(1+w) = t_{d+1}`; `w` factors stay.
fn to_torus(u: &GluingUnit, alpha: &[i64]) -> GluingUnit {
    let d = alpha.len();
    let sub = toric_substitution(alpha);
    let mut torus_scalar = GluingUnit {
        coeff: u.coeff.clone(),
        w_exp: u.w_exp,
        ..GluingUnit::one(d + 1)
    };
    torus_scalar.monomial[d] = u.opw_exp;
    u.monomial
        .iter()
        .zip(&sub)
        .fold(torus_scalar, |acc, (&e, s)| acc.mul(&s.pow(e)))
}

/// Checks that every gluing out of `α` is the identity in toric coordinates.
pub fn toric_identification(curve: &DualTropicalCurve, alpha: &[i64]) -> Result<ToricIdentification> {
    let labels = curve.labels();
    if !labels.iter().any(|l| l == alpha) {
        return Err(Error::InvalidInput(format!("{alpha:?} is not a chamber label")));
    }
    let d = alpha.len();
    let mut verified = Vec::new();
    for beta in labels.iter().filter(|b| curve.are_adjacent(alpha, b)) {
        let g = wall_crossing_3d(curve, alpha, beta)?;
        let lhs = toric_substitution(alpha);
        let rhs: Vec<GluingUnit> = g.images.iter().map(|img| to_torus(img, beta)).collect();
        if lhs != rhs {
            return Err(Error::CocycleFailure {
                location: format!("toric chart of {alpha:?} against {beta:?}"),
            });
        }
        verified.push(beta.clone());
    }
    Ok(ToricIdentification {
        alpha: alpha.to_vec(),
        substitution: toric_substitution(alpha),
        w: format!("t{} - 1", d + 1),
        removed_hypersurface: format!("t{} = 1", d + 1),
        verified,
    })
}

/// Toric chart `σ_i` of the A-type fan written over `(u_i, v)` with `v = 1+w`:
/// coordinates `(u_i⁻¹ v, u_i)`.
const A_CHART: [[i64; 2]; 2] = [[-1, 1], [1, 0]];

/// The 2d gluing with `(1+w)` read as the coordinate `v`, expressed as an
/// exponent matrix between consecutive toric charts (fan convention
/// `M[i][j]` = exponent of chart-`σ` coordinate `i` in chart-`τ` coordinate `j`).
pub fn stripped_transition_2d(g: &ChartGluing) -> Result<IntMatrix> {
    if g.images.len() != 1 || !g.images[0].coeff.is_one() || g.images[0].w_exp != 0 {
        return Err(Error::InvalidInput("not a one-variable (1+w)-type gluing".into()));
    }
    let img = &g.images[0];
    // (u_i, v) in terms of (u_{i+1}, v)
    let glue: IntMatrix = vec![vec![img.monomial[0], img.opw_exp], vec![0, 1]];
    let p: IntMatrix = A_CHART.iter().map(|r| r.to_vec()).collect();
    let glue_inv = unimodular_inverse(&glue).ok_or(Error::NotInvertible { det: det(&glue) })?;
    let p_inv = unimodular_inverse(&p).expect("unimodular chart");
    let r = crate::lattice::mat_mul(&crate::lattice::mat_mul(&p, &glue_inv), &p_inv);
    Ok(crate::lattice::transpose(&r))
}

/// Transition functions of a line bundle on a cover, with its 2-cells.
#[derive(Debug, Clone, PartialEq)]
pub struct CechLineBundle {
    pub charts: Vec<ChartId>,
    transitions: BTreeMap<(usize, usize), GluingUnit>,
    pub two_cells: Vec<[usize; 3]>,
}

impl CechLineBundle {
    /// `edges` give `g_{ij}` for `i → j`; reverse transitions are the inverses.
    pub fn new(charts: Vec<ChartId>, edges: Vec<(usize, usize, GluingUnit)>, two_cells: Vec<[usize; 3]>) -> Result<Self> {
        let n = charts.len();
        let mut transitions = BTreeMap::new();
        for (i, j, g) in edges {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange { index: i.max(j), len: n });
            }
            transitions.insert((j, i), g.inv());
            transitions.insert((i, j), g);
        }
        for c in &two_cells {
            for k in 0..3 {
                if !transitions.contains_key(&(c[k], c[(k + 1) % 3])) {
                    return Err(Error::InvalidInput(format!("2-cell {c:?} has a missing edge")));
                }
            }
        }
        Ok(Self {
            charts,
            transitions,
            two_cells,
        })
    }

    pub fn transition(&self, i: usize, j: usize) -> Option<&GluingUnit> {
        self.transitions.get(&(i, j))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (&(usize, usize), &GluingUnit)> {
        self.transitions.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.transitions.len() / 2
    }

    /// `g_ji = g_ij⁻¹` and `g_ij g_jk g_ki = 1` on every 2-cell.
    pub fn verify_cocycle(&self) -> bool {
        let inverse_ok = self
            .transitions
            .iter()
            .all(|(&(i, j), g)| self.transitions.get(&(j, i)).is_some_and(|h| g.mul(h).is_one()));
        inverse_ok
            && self.two_cells.iter().all(|&[a, b, c]| {
                let g = &self.transitions[&(a, b)];
                g.mul(&self.transitions[&(b, c)]).mul(&self.transitions[&(c, a)]).is_one()
            })
    }

    /// Every transition is the unit `1`.
    pub fn is_trivial(&self) -> bool {
        self.transitions.values().all(GluingUnit::is_one)
    }

    /// Tensor product on the same cover.
    pub fn tensor(&self, o: &Self) -> Result<Self> {
        if self.charts != o.charts || self.transitions.len() != o.transitions.len() {
            return Err(Error::InvalidInput("bundles live on different covers".into()));
        }
        let mut transitions = BTreeMap::new();
        for (k, g) in &self.transitions {
            let h = o
                .transitions
                .get(k)
                .ok_or_else(|| Error::InvalidInput("bundles live on different covers".into()))?;
            transitions.insert(*k, g.mul(h));
        }
        Ok(Self {
            charts: self.charts.clone(),
            transitions,
            two_cells: self.two_cells.clone(),
        })
    }

    pub fn report(&self) -> Value {
        let transitions: Vec<Value> = self
            .transitions
            .iter()
            .filter(|((i, j), _)| i < j)
            .map(|(&(i, j), g)| {
                json!({
                    "source": self.charts[i].to_string(),
                    "target": self.charts[j].to_string(),
                    "unit": g,
                    "display": g.to_string(),
                })
            })
            .collect();
        json!({
            "charts": self.charts.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "transitions": transitions,
            "two_cells": self.two_cells,
        })
    }
}

/// `{"pairs": [...]}`: both directions of every gluing between adjacent labels.
pub fn gluing_report_3d(curve: &DualTropicalCurve) -> Value {
    let mut pairs = Vec::new();
    for (a, b) in curve.dual_pairs() {
        pairs.push(label_gluing(&a, &b).report());
        pairs.push(label_gluing(&b, &a).report());
    }
    json!({ "pairs": pairs })
}

pub fn gluing_report_2d(walls: usize) -> Value {
    let mut pairs = Vec::new();
    for i in 0..walls {
        let g = wall_crossing_2d(walls, i).expect("index in range");
        let back = g.inverse().expect("unimodular");
        pairs.push(g.report());
        pairs.push(back.report());
    }
    json!({ "pairs": pairs })
}
