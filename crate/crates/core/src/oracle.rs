//! Brute-force grid search for maskable states.
//!
//! Membership is decided directly from the definition: apply the operator,
//! take both partial traces and compare with the anchor's. Nothing here goes
//! through the affine-constraint analysis in [`crate::operator`], so the two
//! can be cross-checked against each other.

use rayon::prelude::*;

use std::collections::HashSet;

use crate::bloch::{sample_circle, AngleState};
use crate::error::{Error, Result};
use crate::linalg::{svd_three_columns, trace_out_a, trace_out_b, CMat2};
use crate::operator::{constraint_rank, extract_constraints, GeneralLinearOp, MaskableClass};
use crate::scalar::Real;

/// Axis-aligned rectangle in `(x, y)` angle space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect<T> {
    pub x0: T,
    pub x1: T,
    pub y0: T,
    pub y1: T,
}

impl<T: Real> Rect<T> {
    /// `[0, π] × [0, 2π)`.
    pub fn full() -> Self {
        Self {
            x0: T::zero(),
            x1: T::PI(),
            y0: T::zero(),
            y1: T::TAU(),
        }
    }
}

/// `U((x₀,y₀), δ) = {(x,y) : (x−x₀)² + (y−y₀)² < δ}`. Note that `δ` bounds
/// the squared distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighborhood<T> {
    pub center: (T, T),
    pub delta: T,
}

impl<T: Real> Neighborhood<T> {
    pub fn contains(&self, x: T, y: T) -> bool {
        let dx = x - self.center.0;
        let dy = y - self.center.1;
        dx * dx + dy * dy < self.delta
    }
}

/// Grid of `nx` polar nodes (both endpoints included) by `ny` azimuthal nodes
/// (upper endpoint excluded, as `y` is periodic).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub nx: usize,
    pub ny: usize,
    pub region: Rect<T>,
    pub neighborhood: Option<Neighborhood<T>>,
}

impl<T: Real> GridSpec<T> {
    pub fn new(nx: usize, ny: usize) -> Result<Self> {
        Self::with_region(nx, ny, Rect::full())
    }

    pub fn with_region(nx: usize, ny: usize, region: Rect<T>) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidInput("grid needs at least 2×2 nodes".into()));
        }
        if !(region.x0 >= T::zero() && region.x1 <= T::PI() && region.x0 < region.x1)
            || !(region.y0 >= T::zero() && region.y1 <= T::TAU() && region.y0 < region.y1)
        {
            return Err(Error::InvalidInput("grid region must lie in [0,π]×[0,2π]".into()));
        }
        Ok(Self {
            nx,
            ny,
            region,
            neighborhood: None,
        })
    }

    /// Restricts the grid to the nodes inside `U((x₀,y₀), δ)`.
    pub fn restricted_to(mut self, neighborhood: Neighborhood<T>) -> Self {
        self.neighborhood = Some(neighborhood);
        self
    }

    pub fn hx(&self) -> T {
        (self.region.x1 - self.region.x0) / T::from_usize(self.nx - 1).unwrap()
    }

    pub fn hy(&self) -> T {
        (self.region.y1 - self.region.y0) / T::from_usize(self.ny).unwrap()
    }

    /// The larger of the two node spacings.
    pub fn spacing(&self) -> T {
        self.hx().max(self.hy())
    }

    pub fn node(&self, i: usize, j: usize) -> (T, T) {
        let x = self.region.x0 + self.hx() * T::from_usize(i).unwrap();
        let y = self.region.y0 + self.hy() * T::from_usize(j).unwrap();
        (x.min(T::PI()), y)
    }

    fn in_region(&self, x: T, y: T) -> bool {
        self.neighborhood.is_none_or(|n| n.contains(x, y))
    }

    /// Number of nodes in the (possibly restricted) grid.
    pub fn node_count(&self) -> usize {
        if self.neighborhood.is_none() {
            return self.nx * self.ny;
        }
        (0..self.nx)
            .map(|i| {
                (0..self.ny)
                    .filter(|&j| {
                        let (x, y) = self.node(i, j);
                        self.in_region(x, y)
                    })
                    .count()
            })
            .sum()
    }
}

/// A grid node flagged by a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridNode<T> {
    pub i: usize,
    pub j: usize,
    pub state: AngleState<T>,
}

/// Distance between two reduced pairs: the larger Frobenius deviation.
pub fn pair_distance<T: Real>(a: &(CMat2<T>, CMat2<T>), b: &(CMat2<T>, CMat2<T>)) -> T {
    (a.0 - b.0).frobenius().max((a.1 - b.1).frobenius())
}

fn raw_pair<T: Real>(op: &GeneralLinearOp<T>, s: &AngleState<T>) -> (CMat2<T>, CMat2<T>) {
    let psi = op.apply(s);
    (trace_out_b(&psi), trace_out_a(&psi))
}

/// Every grid node whose raw reduced pair lies within `tol` of the anchor's.
/// Rows are scanned in parallel; the output is in row-major node order.
pub fn grid_scan<T: Real>(
    op: &GeneralLinearOp<T>,
    anchor: &AngleState<T>,
    grid: &GridSpec<T>,
    tol: T,
) -> Vec<GridNode<T>> {
    let reference = raw_pair(op, anchor);
    let rows: Vec<Vec<GridNode<T>>> = (0..grid.nx)
        .into_par_iter()
        .map(|i| {
            let mut hits = Vec::new();
            for j in 0..grid.ny {
                let (x, y) = grid.node(i, j);
                if !grid.in_region(x, y) {
                    continue;
                }
                let state = AngleState::new(x, y).expect("grid nodes lie in the angle domain");
                if pair_distance(&raw_pair(op, &state), &reference) <= tol {
                    hits.push(GridNode { i, j, state });
                }
            }
            hits
        })
        .collect();
    rows.into_iter().flatten().collect()
}

/// Tolerance proportional to grid spacing: `tol(h) = κ·h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolRule<T> {
    pub kappa: T,
}

impl<T: Real> TolRule<T> {
    /// `κ = 2‖U‖²_F`. With this choice the grid node nearest to any member
    /// of the maskable set is always flagged: the reduced pair moves by at
    /// most `2√2‖U‖²` per unit of `(x, y)` distance and the nearest node is
    /// within `h/√2`.
    pub fn for_operator(op: &GeneralLinearOp<T>) -> Self {
        Self {
            kappa: T::lit(2.0) * op.scale(),
        }
    }

    pub fn tol(&self, h: T) -> T {
        self.kappa * h
    }
}

/// Fraction of flagged nodes on `n × 2n` grids for each resolution `n`, with
/// the tolerance tied to the grid spacing.
///
/// Fractions are counted in the angle rectangle without the `sin x` area
/// weight; they indicate whether the masked set has zero measure, not the
/// measure itself.
pub fn masked_fraction_scaling<T: Real>(
    op: &GeneralLinearOp<T>,
    anchor: &AngleState<T>,
    resolutions: &[usize],
    rule: TolRule<T>,
    neighborhood: Option<Neighborhood<T>>,
) -> Result<Vec<(usize, T)>> {
    if rule.kappa.is_nan() || rule.kappa <= T::zero() {
        return Err(Error::InvalidInput("tolerance slope κ must be positive".into()));
    }
    if resolutions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("resolutions must be increasing".into()));
    }
    resolutions
        .iter()
        .map(|&n| {
            let mut grid = GridSpec::new(n, 2 * n)?;
            if let Some(nb) = neighborhood {
                grid = grid.restricted_to(nb);
            }
            let total = grid.node_count();
            if total == 0 {
                return Err(Error::InvalidInput(format!(
                    "neighborhood contains no nodes at resolution {n}"
                )));
            }
            let hits = grid_scan(op, anchor, &grid, rule.tol(grid.spacing())).len();
            let frac = T::from_usize(hits).unwrap() / T::from_usize(total).unwrap();
            Ok((n, frac))
        })
        .collect()
}

/// Outcome of cross-checking a classification against a grid scan.
#[derive(Debug, Clone, PartialEq)]
pub struct Agreement<T> {
    pub flagged: usize,
    pub nodes: usize,
    /// Analytic members checked for a flagged nearest node.
    pub samples: usize,
    /// Members whose nearest grid node was not flagged.
    pub missed: usize,
    /// Flagged nodes farther than `radius` from the analytic set.
    pub spurious: usize,
    /// Largest distance from a flagged node to the analytic set.
    pub worst_distance: T,
    /// Distance allowed by the tolerance and the constraint conditioning.
    pub radius: T,
    pub tol: T,
}

impl<T: Real> Agreement<T> {
    pub fn ok(&self) -> bool {
        self.missed == 0 && self.spurious == 0
    }
}

/// Compares `class` (the analytic maskable set of `anchor`) with a scan of
/// the full `grid` at tolerance `rule.tol(h)`.
///
/// Completeness: the node nearest each analytic member must be flagged,
/// which `TolRule::for_operator` guarantees. Soundness: a flagged node moves
/// every reduced-state entry by at most `tol`, so the stacked constraint
/// normals `N` satisfy `‖N(p − p₀)‖ ≤ √2·tol = τ`; with singular values `σ`
/// this confines `p` to within `√(δ² + 2δ)` of a circle (`δ = τ/σ₁`), within
/// `ρ + √(2ρ + ρ²)` of a line's sphere points (`ρ = τ/σ₂`), or within `τ/σ₃`
/// of a point.
pub fn oracle_agreement<T: Real>(
    op: &GeneralLinearOp<T>,
    anchor: &AngleState<T>,
    class: &MaskableClass<T>,
    grid: &GridSpec<T>,
    rule: TolRule<T>,
) -> Result<Agreement<T>> {
    if grid.neighborhood.is_some() || grid.region != Rect::full() {
        return Err(Error::InvalidInput("agreement needs a full-sphere grid".into()));
    }
    let h = grid.spacing();
    let tol = rule.tol(h);
    let hits = grid_scan(op, anchor, grid, tol);
    let flagged: HashSet<(usize, usize)> = hits.iter().map(|n| (n.i, n.j)).collect();

    let members: Vec<AngleState<T>> = match class {
        MaskableClass::Circle(c) => {
            let len = T::TAU() * c.radius();
            let k = (len / (h * T::lit(0.5))).ceil().to_usize().unwrap_or(0).max(8);
            sample_circle(c, k)
        }
        MaskableClass::PointPair(a, b) => vec![a.to_angles(), b.to_angles()],
        MaskableClass::SinglePoint(p) => vec![p.to_angles()],
        MaskableClass::FullSphere => {
            return Err(Error::InvariantViolation(
                "full-sphere class cannot be cross-checked".into(),
            ))
        }
    };
    let missed = members
        .iter()
        .filter(|s| !flagged.contains(&nearest_node(grid, s)))
        .count();

    let constraints = extract_constraints(op)?;
    let rows: Vec<[T; 3]> = constraints.iter().map(|c| c.normal.to_array()).collect();
    let (sigma, _) = svd_three_columns(&rows);
    let rank = constraint_rank(&constraints.map(|c| c.normal), T::geometry_eps() * op.scale()).rank;
    let tau = T::SQRT_2() * tol;
    let two = T::lit(2.0);
    let radius = match rank {
        1 => {
            let d = tau / sigma[0];
            (d * d + two * d).sqrt()
        }
        2 => {
            let r = tau / sigma[1];
            r + (two * r + r * r).sqrt()
        }
        _ => tau / sigma[2],
    };
    // Slack for rounding in the distance computation itself.
    let allowed = radius + T::lit(1e3) * T::epsilon();

    let mut worst = T::zero();
    let mut spurious = 0;
    for node in &hits {
        let d = class.distance_to(&node.state.to_bloch());
        worst = worst.max(d);
        if d > allowed {
            spurious += 1;
        }
    }
    Ok(Agreement {
        flagged: hits.len(),
        nodes: grid.node_count(),
        samples: members.len(),
        missed,
        spurious,
        worst_distance: worst,
        radius,
        tol,
    })
}

fn nearest_node<T: Real>(grid: &GridSpec<T>, s: &AngleState<T>) -> (usize, usize) {
    let i = ((s.x() - grid.region.x0) / grid.hx())
        .round()
        .to_usize()
        .unwrap_or(0)
        .min(grid.nx - 1);
    let j = ((s.y() - grid.region.y0) / grid.hy()).round().to_usize().unwrap_or(0) % grid.ny;
    (i, j)
}
