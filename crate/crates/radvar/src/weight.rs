//! Radial weight specifications.
//!
//! A weight w(x) = η(|x|) on the annulus Ω = {a < |x| < b} is described by a
//! finite list of pieces with pairwise-disjoint interiors; η ≡ 0 off the
//! pieces. Three piece kinds:
//!
//! * `Constant`  — η = c ≥ 0 on [lo, hi];
//! * `PowerBump` — η = m·χ(r)·(r-lo)^α on [lo, mid] and m·χ(r)·(hi-r)^α on
//!   [mid, hi], mid = (lo+hi)/2, where χ(r) = r^{1-d} when radial
//!   compensation is on (so r^{d-1}·η is a pure power of the distance to the
//!   zero) and χ ≡ 1 otherwise;
//! * `Tabulated` — positive-part linear interpolation of node values; node
//!   values below `ZERO_FLOOR` are treated as exact zeros, so the zero set is
//!   node-aligned.

use crate::error::{Error, Result};
use crate::params::ProblemParams;

/// Tabulated node values below this floor count as exact zeros.
pub const ZERO_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightPiece {
    Constant {
        value: f64,
        lo: f64,
        hi: f64,
    },
    PowerBump {
        m: f64,
        alpha: f64,
        lo: f64,
        hi: f64,
        /// Multiply by r^{1-d} so that r^{d-1} η is a pure power.
        radial_compensation: bool,
    },
    Tabulated {
        grid: Vec<f64>,
        values: Vec<f64>,
    },
}

impl WeightPiece {
    pub fn lo(&self) -> f64 {
        match self {
            WeightPiece::Constant { lo, .. } | WeightPiece::PowerBump { lo, .. } => *lo,
            WeightPiece::Tabulated { grid, .. } => grid[0],
        }
    }

    pub fn hi(&self) -> f64 {
        match self {
            WeightPiece::Constant { hi, .. } | WeightPiece::PowerBump { hi, .. } => *hi,
            WeightPiece::Tabulated { grid, .. } => *grid.last().unwrap(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            WeightPiece::Constant { value, lo, hi } => {
                if !value.is_finite() || *value < 0.0 {
                    return Err(Error::InvalidSpec(format!(
                        "constant piece value must be finite and >= 0, got {value}"
                    )));
                }
                check_interval(*lo, *hi)
            }
            WeightPiece::PowerBump { m, alpha, lo, hi, .. } => {
                if !m.is_finite() || *m <= 0.0 {
                    return Err(Error::InvalidSpec(format!(
                        "power bump amplitude must be finite and > 0, got {m}"
                    )));
                }
                if !alpha.is_finite() || *alpha <= 0.0 {
                    return Err(Error::InvalidSpec(format!(
                        "power bump exponent must be finite and > 0, got {alpha}"
                    )));
                }
                check_interval(*lo, *hi)
            }
            WeightPiece::Tabulated { grid, values } => {
                if grid.len() < 2 || grid.len() != values.len() {
                    return Err(Error::InvalidSpec(
                        "tabulated piece needs >= 2 nodes and matching value count".into(),
                    ));
                }
                if !grid.windows(2).all(|w| w[1] > w[0]) {
                    return Err(Error::InvalidSpec(
                        "tabulated grid must be strictly increasing".into(),
                    ));
                }
                if grid.iter().chain(values.iter()).any(|x| !x.is_finite()) {
                    return Err(Error::InvalidSpec(
                        "tabulated nodes and values must be finite".into(),
                    ));
                }
                check_interval(grid[0], *grid.last().unwrap())
            }
        }
    }

    /// η(r) for r inside this piece's interval; d is the space dimension
    /// (needed by the radial-compensation factor).
    pub fn eval(&self, r: f64, d: u32) -> f64 {
        match self {
            WeightPiece::Constant { value, .. } => *value,
            WeightPiece::PowerBump {
                m,
                alpha,
                lo,
                hi,
                radial_compensation,
            } => {
                let mid = 0.5 * (lo + hi);
                let dist = if r <= mid { r - lo } else { hi - r };
                if dist <= 0.0 {
                    return 0.0;
                }
                let chi = if *radial_compensation {
                    r.powi(1 - d as i32)
                } else {
                    1.0
                };
                m * chi * dist.powf(*alpha)
            }
            WeightPiece::Tabulated { grid, values } => {
                let j = cell_index(grid, r);
                let t = (r - grid[j]) / (grid[j + 1] - grid[j]);
                let v = floor_value(values[j]) * (1.0 - t) + floor_value(values[j + 1]) * t;
                v.max(0.0)
            }
        }
    }
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi <= lo {
        return Err(Error::InvalidSpec(format!(
            "piece interval must satisfy 0 <= lo < hi, got [{lo}, {hi}]"
        )));
    }
    Ok(())
}

fn floor_value(v: f64) -> f64 {
    if v < ZERO_FLOOR {
        0.0
    } else {
        v
    }
}

/// Index of the grid cell containing r (clamped to valid range).
fn cell_index(grid: &[f64], r: f64) -> usize {
    match grid.binary_search_by(|g| g.partial_cmp(&r).unwrap()) {
        Ok(j) => j.min(grid.len() - 2),
        Err(j) => j.saturating_sub(1).min(grid.len() - 2),
    }
}

/// A full radial weight: sorted pieces with disjoint interiors, the support
/// hull, and the dimension the pieces were built for.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialWeightSpec {
    pieces: Vec<WeightPiece>,
    dim: u32,
    support: (f64, f64),
}

impl RadialWeightSpec {
    /// Validates ordering, disjointness and support containment
    /// supp(η) ⊆ Ω̄ with b_supp < b strictly and a_supp > a strictly unless
    /// a = 0 (full ball, where the support may reach the center).
    pub fn new(mut pieces: Vec<WeightPiece>, params: &ProblemParams) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidSpec("weight needs at least one piece".into()));
        }
        for p in &pieces {
            p.validate()?;
        }
        pieces.sort_by(|x, y| x.lo().partial_cmp(&y.lo()).unwrap());
        for w in pieces.windows(2) {
            if w[1].lo() < w[0].hi() - 0.0 {
                return Err(Error::InvalidSpec(format!(
                    "piece interiors overlap near r = {}",
                    w[1].lo()
                )));
            }
        }
        let support = (pieces[0].lo(), pieces.last().unwrap().hi());
        let strict_inner = params.a > 0.0;
        if support.1 >= params.b
            || support.0 < params.a
            || (strict_inner && support.0 <= params.a)
        {
            return Err(Error::InvalidSpec(format!(
                "support [{}, {}] must lie inside the annulus ({}, {})",
                support.0, support.1, params.a, params.b
            )));
        }
        Ok(Self {
            pieces,
            dim: params.d,
            support,
        })
    }

    pub fn pieces(&self) -> &[WeightPiece] {
        &self.pieces
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Support hull [a_supp, b_supp] (η ≡ 0 outside; it may also vanish at
    /// points inside).
    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// Guard used by operations that combine a spec with problem parameters.
    pub fn check_params(&self, params: &ProblemParams) -> Result<()> {
        if params.d != self.dim {
            return Err(Error::DomainMismatch(format!(
                "weight was built for d = {}, problem has d = {}",
                self.dim, params.d
            )));
        }
        Ok(())
    }

    /// η(r). Zero off the pieces.
    pub fn eval(&self, r: f64) -> f64 {
        match self.piece_index_at(r) {
            Some(j) => self.pieces[j].eval(r, self.dim),
            None => 0.0,
        }
    }

    /// Index of the piece whose closed interval contains r.
    pub fn piece_index_at(&self, r: f64) -> Option<usize> {
        self.pieces
            .iter()
            .position(|p| p.lo() <= r && r <= p.hi())
    }

    /// Points in (lo, hi) where η may lose smoothness: piece edges, bump
    /// split midpoints, tabulated nodes. Sorted, deduplicated, exclusive of
    /// the endpoints. Integrals split here so every panel sees smooth data.
    pub fn breakpoints_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut pts = Vec::new();
        for p in &self.pieces {
            match p {
                WeightPiece::Constant { .. } => {
                    pts.push(p.lo());
                    pts.push(p.hi());
                }
                WeightPiece::PowerBump { lo: l, hi: h, .. } => {
                    pts.push(*l);
                    pts.push(0.5 * (l + h));
                    pts.push(*h);
                }
                WeightPiece::Tabulated { grid, .. } => pts.extend_from_slice(grid),
            }
        }
        pts.retain(|&t| t > lo && t < hi);
        pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        pts.dedup();
        pts
    }

    /// The same weight scaled by λ > 0 (amplitudes multiplied through).
    pub fn scaled(&self, lambda: f64) -> Self {
        assert!(lambda.is_finite() && lambda > 0.0);
        let pieces = self
            .pieces
            .iter()
            .map(|p| match p {
                WeightPiece::Constant { value, lo, hi } => WeightPiece::Constant {
                    value: value * lambda,
                    lo: *lo,
                    hi: *hi,
                },
                WeightPiece::PowerBump {
                    m,
                    alpha,
                    lo,
                    hi,
                    radial_compensation,
                } => WeightPiece::PowerBump {
                    m: m * lambda,
                    alpha: *alpha,
                    lo: *lo,
                    hi: *hi,
                    radial_compensation: *radial_compensation,
                },
                WeightPiece::Tabulated { grid, values } => WeightPiece::Tabulated {
                    grid: grid.clone(),
                    values: values.iter().map(|v| v * lambda).collect(),
                },
            })
            .collect();
        Self {
            pieces,
            dim: self.dim,
            support: self.support,
        }
    }

    /// ∫_{x0}^{x1} r^{d-1} η(r) dr in closed form ([x0, x1] may span pieces
    /// and gaps; gaps contribute 0). Exact because every piece kind makes
    /// r^{d-1} η piecewise (r - e)^α-polynomial.
    pub fn moment(&self, x0: f64, x1: f64) -> f64 {
        assert!(x1 >= x0);
        let mut total = 0.0;
        for p in &self.pieces {
            let lo = p.lo().max(x0);
            let hi = p.hi().min(x1);
            if hi > lo {
                total += piece_moment(p, self.dim, lo, hi);
            }
        }
        total
    }
}

/// One maximal sub-interval of [x0, x1] on which η has a single analytic
/// description. Produced by [`RadialWeightSpec::segments`]; consumed by the
/// quadrature module to pick exact vs adaptive integration routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Seg {
    /// η ≡ 0 (gap between pieces, outside support, or an all-zero stretch).
    Zero,
    /// η ≡ c > 0.
    Const { c: f64 },
    /// η = m · χ(r) · |r - e|^α, χ = r^{1-d} if compensated; `mirrored`
    /// means distance measured downward to e (right bump half).
    Bump {
        m: f64,
        alpha: f64,
        e: f64,
        mirrored: bool,
        compensated: bool,
    },
    /// η linear between (g0, v0) and (g1, v1), both values ≥ 0.
    Tab { g0: f64, g1: f64, v0: f64, v1: f64 },
}

impl RadialWeightSpec {
    /// Partition of [x0, x1] into analytically uniform segments.
    pub(crate) fn segments(&self, x0: f64, x1: f64) -> Vec<(f64, f64, Seg)> {
        let mut cuts = self.breakpoints_in(x0, x1);
        cuts.insert(0, x0);
        cuts.push(x1);
        let mut out = Vec::with_capacity(cuts.len());
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi <= lo {
                continue;
            }
            let mid = 0.5 * (lo + hi);
            let seg = match self.piece_index_at(mid) {
                None => Seg::Zero,
                Some(j) => match &self.pieces[j] {
                    WeightPiece::Constant { value, .. } => {
                        if *value < ZERO_FLOOR {
                            Seg::Zero
                        } else {
                            Seg::Const { c: *value }
                        }
                    }
                    WeightPiece::PowerBump {
                        m,
                        alpha,
                        lo: bl,
                        hi: bh,
                        radial_compensation,
                    } => {
                        let split = 0.5 * (bl + bh);
                        if mid <= split {
                            Seg::Bump {
                                m: *m,
                                alpha: *alpha,
                                e: *bl,
                                mirrored: false,
                                compensated: *radial_compensation,
                            }
                        } else {
                            Seg::Bump {
                                m: *m,
                                alpha: *alpha,
                                e: *bh,
                                mirrored: true,
                                compensated: *radial_compensation,
                            }
                        }
                    }
                    WeightPiece::Tabulated { grid, values } => {
                        let c = cell_index(grid, mid);
                        let (v0, v1) = (floor_value(values[c]), floor_value(values[c + 1]));
                        if v0 == 0.0 && v1 == 0.0 {
                            Seg::Zero
                        } else {
                            Seg::Tab {
                                g0: grid[c],
                                g1: grid[c + 1],
                                v0,
                                v1,
                            }
                        }
                    }
                },
            };
            out.push((lo, hi, seg));
        }
        out
    }
}

/// ∫_{x0}^{x1} r^{d-1} η_piece(r) dr with [x0, x1] inside the piece.
fn piece_moment(piece: &WeightPiece, d: u32, x0: f64, x1: f64) -> f64 {
    match piece {
        WeightPiece::Constant { value, .. } => {
            value * (x1.powi(d as i32) - x0.powi(d as i32)) / d as f64
        }
        WeightPiece::PowerBump {
            m,
            alpha,
            lo,
            hi,
            radial_compensation,
        } => {
            let mid = 0.5 * (lo + hi);
            let mut total = 0.0;
            // Left half: distance to lo; right half: distance to hi.
            let (l0, l1) = (x0.min(mid), x1.min(mid));
            if l1 > l0 {
                total += m * power_factor_moment(d, *radial_compensation, *lo, *alpha, false, l0, l1);
            }
            let (r0, r1) = (x0.max(mid), x1.max(mid));
            if r1 > r0 {
                total += m * power_factor_moment(d, *radial_compensation, *hi, *alpha, true, r0, r1);
            }
            total
        }
        WeightPiece::Tabulated { grid, values } => {
            let mut total = 0.0;
            for j in 0..grid.len() - 1 {
                let lo = grid[j].max(x0);
                let hi = grid[j + 1].min(x1);
                if hi <= lo {
                    continue;
                }
                let (g0, g1) = (grid[j], grid[j + 1]);
                let (v0, v1) = (floor_value(values[j]), floor_value(values[j + 1]));
                // η = A + B r on the cell.
                let b = (v1 - v0) / (g1 - g0);
                let a = v0 - b * g0;
                let di = d as i32;
                total += a * (hi.powi(di) - lo.powi(di)) / d as f64
                    + b * (hi.powi(di + 1) - lo.powi(di + 1)) / (d as f64 + 1.0);
            }
            total
        }
    }
}

/// ∫_{x0}^{x1} r^{d-1} χ(r) |r - e|^α dr where χ = r^{1-d} if compensated.
/// `mirrored` = distance measured downward from e (right bump half).
fn power_factor_moment(
    d: u32,
    compensated: bool,
    e: f64,
    alpha: f64,
    mirrored: bool,
    x0: f64,
    x1: f64,
) -> f64 {
    if compensated {
        // Integrand is |r - e|^α exactly.
        return if mirrored {
            ((e - x0).powf(alpha + 1.0) - (e - x1).powf(alpha + 1.0)) / (alpha + 1.0)
        } else {
            ((x1 - e).powf(alpha + 1.0) - (x0 - e).powf(alpha + 1.0)) / (alpha + 1.0)
        };
    }
    // r^{d-1} |r-e|^α, binomially expanded around e.
    let n = (d - 1) as i64;
    let mut total = 0.0;
    for k in 0..=n {
        let c = binomial(n, k) * e.powi((n - k) as i32);
        let q = alpha + k as f64 + 1.0;
        let sign = if mirrored && k % 2 == 1 { -1.0 } else { 1.0 };
        let term = if mirrored {
            ((e - x0).powf(q) - (e - x1).powf(q)) / q
        } else {
            ((x1 - e).powf(q) - (x0 - e).powf(q)) / q
        };
        total += sign * c * term;
    }
    total
}

fn binomial(n: i64, k: i64) -> f64 {
    let mut v = 1.0;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}
