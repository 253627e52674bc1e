//! Surface-measure quadrature with optional ball exclusion.
//!
//! Worst-first adaptive subdivision of parameter cells with a 5-point
//! Gauss–Legendre rule per cell per axis: the cell with the largest
//! error estimate is split until the global estimate meets the
//! tolerance, the budget runs out, or the remaining error is frozen at
//! the roundoff floor. Cells near the excluded ball are refined
//! geometrically first; on curves the crossing parameters are bisected
//! to machine precision so cells end exactly on the sphere |y − c| = ε.
//! The leaf contributions are pairwise-summed in domain order, so the
//! result is a pure function of the inputs.

use super::{Patch, Rect, RectifiableSet};
use crate::vec3::Vec3;
use std::collections::BinaryHeap;

/// Gauss–Legendre nodes and weights of degree 5 on [−1, 1].
const GL_NODES: [f64; 5] = [
    -0.906179845938664,
    -0.5384693101056831,
    0.0,
    0.5384693101056831,
    0.906179845938664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.23692688505618908,
    0.47862867049936647,
    0.5688888888888889,
    0.47862867049936647,
    0.23692688505618908,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallFilter {
    /// Integrate over |y − c| > ε (truncated singular integrals).
    KeepOutside,
    /// Integrate over |y − c| ≤ ε (ball masses).
    KeepInside,
}

#[derive(Debug, Clone, Copy)]
pub struct Ball {
    pub center: Vec3,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Exclusion {
    pub ball: Ball,
    pub filter: BallFilter,
}

impl Exclusion {
    pub fn outside(center: Vec3, radius: f64) -> Exclusion {
        Exclusion {
            ball: Ball { center, radius },
            filter: BallFilter::KeepOutside,
        }
    }

    pub fn inside(center: Vec3, radius: f64) -> Exclusion {
        Exclusion {
            ball: Ball { center, radius },
            filter: BallFilter::KeepInside,
        }
    }

    fn keeps(&self, pos: &Vec3) -> bool {
        let d = pos.dist(&self.ball.center);
        match self.filter {
            BallFilter::KeepOutside => d > self.ball.radius,
            BallFilter::KeepInside => d <= self.ball.radius,
        }
    }
}

/// A quadrature node on the set, as seen by integrands.
#[derive(Debug, Clone, Copy)]
pub struct SurfacePoint {
    pub position: Vec3,
    pub normal: Vec3,
    pub param: [f64; 2],
    pub patch: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Absolute tolerance for the whole integral.
    pub abs_tol: f64,
    /// Cell budget; exceeding it returns the best estimate, unconverged.
    pub max_cells: usize,
    /// Dyadic depth cap per patch.
    pub max_depth: u32,
    /// Minimum dyadic depth before error estimates are trusted.
    pub min_depth: u32,
    /// Straddling cells split until image diameter < factor · ε.
    pub exclusion_diam_factor: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-9,
            max_cells: 1_000_000,
            max_depth: 44,
            min_depth: 2,
            exclusion_diam_factor: 1e-2,
        }
    }
}

impl QuadConfig {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        QuadConfig {
            abs_tol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Vec3,
    pub error_bound: f64,
    pub cells: usize,
    pub converged: bool,
}

/// ∫_{E ∖ B} integrand dℋⁿ (or over E ∩ B with `KeepInside`).
///
/// The integrand receives the surface point (position, oriented
/// normal, parameter); the Jacobian factor is applied by the engine.
pub fn integrate_measure<F>(
    set: &RectifiableSet,
    integrand: F,
    exclusion: Option<&Exclusion>,
    cfg: &QuadConfig,
) -> QuadResult
where
    F: Fn(&SurfacePoint) -> Vec3,
{
    let mut engine = Engine {
        set,
        integrand: &integrand,
        exclusion,
        cfg,
        pos_scale: set.diameter().max(1.0),
        cells: 0,
        budget_hit: false,
        leaves: Vec::new(),
        heap: BinaryHeap::new(),
        seq: 0,
    };
    engine.run()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CellClass {
    Free,
    Void,
    Straddle,
}

/// Evaluated cell: refined value, error estimate, split layout.
struct Leaf {
    patch: usize,
    rect: Rect,
    depth: u32,
    value: Vec3,
    err: f64,
    children: Vec<Rect>,
    /// No further splitting: roundoff floor, terminal mask, depth cap.
    frozen: bool,
    /// The exclusion ball may hide inside this cell; it must keep
    /// splitting until the ball is bracketed, and must not freeze.
    ball_unresolved: bool,
}

struct HeapEntry {
    err: f64,
    seq: u64,
    slot: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Max error first; FIFO among equal errors for determinism.
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

enum Evaluated {
    Void,
    /// Split without evaluating (unresolved geometry).
    Pieces(Vec<Rect>),
    Leaf(Leaf),
}

struct Engine<'a, F> {
    set: &'a RectifiableSet,
    integrand: &'a F,
    exclusion: Option<&'a Exclusion>,
    cfg: &'a QuadConfig,
    pos_scale: f64,
    cells: usize,
    budget_hit: bool,
    leaves: Vec<Leaf>,
    heap: BinaryHeap<HeapEntry>,
    seq: u64,
}

impl<'a, F> Engine<'a, F>
where
    F: Fn(&SurfacePoint) -> Vec3,
{
    fn run(&mut self) -> QuadResult {
        // Seed: every patch pre-split to min_depth.
        let mut pending: Vec<(usize, Rect, u32)> = Vec::new();
        for (idx, patch) in self.set.patches().iter().enumerate() {
            pending.push((idx, patch.domain, 0));
        }
        while let Some((patch, rect, depth)) = pending.pop() {
            if depth < self.cfg.min_depth {
                for c in self.split_layout(patch, rect) {
                    pending.push((patch, c, depth + 1));
                }
                continue;
            }
            self.admit(patch, rect, depth, &mut pending);
        }

        // Worst-first refinement. Frozen error (mask resolution,
        // roundoff floors) cannot be reduced; once it alone exceeds the
        // tolerance, further splitting cannot converge and only burns
        // budget.
        let mut total_err: f64 = self.leaves.iter().map(|l| l.err).sum();
        let mut frozen_err: f64 = self
            .leaves
            .iter()
            .filter(|l| l.frozen)
            .map(|l| l.err)
            .sum();
        while total_err > self.cfg.abs_tol
            && frozen_err <= self.cfg.abs_tol
            && self.cells <= self.cfg.max_cells
        {
            let slot = match self.heap.pop() {
                Some(entry) => {
                    if entry.err != self.leaves[entry.slot].err
                        || self.leaves[entry.slot].frozen
                    {
                        continue; // stale or frozen entry
                    }
                    entry.slot
                }
                None => break,
            };
            let parent_err = self.leaves[slot].err;
            let parent_depth = self.leaves[slot].depth;
            let children = std::mem::take(&mut self.leaves[slot].children);
            let patch = self.leaves[slot].patch;
            let ball_unresolved = self.leaves[slot].ball_unresolved;

            // Retire the parent leaf.
            self.leaves[slot].err = 0.0;
            self.leaves[slot].value = Vec3::ZERO;
            self.leaves[slot].rect.hi = self.leaves[slot].rect.lo;
            total_err -= parent_err;

            let mut pending: Vec<(usize, Rect, u32)> = children
                .into_iter()
                .map(|c| (patch, c, parent_depth + 1))
                .collect();
            let mut spawned: Vec<usize> = Vec::new();
            while let Some((p, rect, depth)) = pending.pop() {
                let before = self.leaves.len();
                self.admit(p, rect, depth, &mut pending);
                if self.leaves.len() > before {
                    spawned.push(before);
                }
            }
            let child_err: f64 = spawned.iter().map(|&i| self.leaves[i].err).sum();
            total_err += child_err;
            frozen_err += spawned
                .iter()
                .filter(|&&i| self.leaves[i].frozen)
                .map(|&i| self.leaves[i].err)
                .sum::<f64>();
            // Splitting stopped helping: the subtree sits on the
            // roundoff floor, so freeze it rather than churn the budget.
            if child_err >= 0.9 * parent_err && !ball_unresolved {
                for &i in &spawned {
                    if !self.leaves[i].frozen {
                        self.leaves[i].frozen = true;
                        frozen_err += self.leaves[i].err;
                    }
                }
            }
        }
        if self.cells > self.cfg.max_cells {
            self.budget_hit = true;
        }

        if std::env::var("JUMPLAB_QUAD_DEBUG").is_ok() {
            let mut by_depth = [0usize; 48];
            for l in &self.leaves {
                if l.rect.hi[0] > l.rect.lo[0] {
                    by_depth[l.depth.min(47) as usize] += 1;
                }
            }
            eprintln!("leaves={} cells={}", self.leaves.len(), self.cells);
            for (d, c) in by_depth.iter().enumerate() {
                if *c > 0 {
                    eprintln!("  depth {d}: {c}");
                }
            }
        }
        // Deterministic assembly in domain order.
        let mut order: Vec<usize> = (0..self.leaves.len()).collect();
        order.sort_by(|&i, &j| {
            let a = &self.leaves[i];
            let b = &self.leaves[j];
            (a.patch, a.rect.lo[0], a.rect.lo[1])
                .partial_cmp(&(b.patch, b.rect.lo[0], b.rect.lo[1]))
                .expect("finite cell bounds")
        });
        let values: Vec<Vec3> = order.iter().map(|&i| self.leaves[i].value).collect();
        let value = pairwise_sum(&values);
        let error_bound: f64 = order.iter().map(|&i| self.leaves[i].err).sum();
        QuadResult {
            value,
            error_bound,
            cells: self.cells,
            converged: error_bound <= self.cfg.abs_tol && !self.budget_hit,
        }
    }

    /// Evaluates one cell and files it: dropped, split further, or a leaf.
    fn admit(&mut self, patch: usize, rect: Rect, depth: u32, pending: &mut Vec<(usize, Rect, u32)>) {
        if self.cells > self.cfg.max_cells {
            self.budget_hit = true;
        }
        match self.evaluate_cell(patch, rect, depth) {
            Evaluated::Void => {}
            Evaluated::Pieces(pieces) => {
                if depth >= self.cfg.max_depth || self.budget_hit {
                    // Geometry unresolved at the cap: fall back to a
                    // masked leaf so the value stays defined.
                    if let Evaluated::Leaf(leaf) = self.force_leaf(patch, rect, depth) {
                        self.push_leaf(leaf);
                    }
                    return;
                }
                for c in pieces {
                    pending.push((patch, c, depth + 1));
                }
            }
            Evaluated::Leaf(leaf) => self.push_leaf(leaf),
        }
    }

    fn push_leaf(&mut self, leaf: Leaf) {
        let err = leaf.err;
        let frozen = leaf.frozen;
        self.leaves.push(leaf);
        if !frozen {
            self.seq += 1;
            self.heap.push(HeapEntry {
                err,
                seq: self.seq,
                slot: self.leaves.len() - 1,
            });
        }
    }

    fn evaluate_cell(&mut self, patch: usize, rect: Rect, depth: u32) -> Evaluated {
        self.cells += 1;
        let dim = self.patch(patch).dim();
        let samples = self.sample_grid(patch, rect, dim);
        let (class, diam) = self.classify(&samples);
        if class == CellClass::Void {
            return Evaluated::Void;
        }

        let mut ball_unresolved = false;
        if class == CellClass::Straddle && depth < self.cfg.max_depth && !self.budget_hit {
            if dim == 1 {
                let (a, b) = (rect.lo[0], rect.hi[0]);
                let roots = self.crossings_1d(patch, a, b, &samples);
                if !roots.is_empty() {
                    let mut cuts = vec![a];
                    cuts.extend(roots);
                    cuts.push(b);
                    let pieces = cuts
                        .windows(2)
                        .filter(|w| w[1] > w[0])
                        .map(|w| Rect::interval(w[0], w[1]))
                        .collect();
                    return Evaluated::Pieces(pieces);
                }
                // No crossing bracketed, so every sampled distance is on
                // one side (a crossing-split may park an endpoint exactly
                // on the sphere). All inside: the cell is covered by the
                // ball up to ulp slivers. All outside: the ball can still
                // hide between samples; KeepInside keeps hunting for it
                // geometrically, KeepOutside evaluates masked, where the
                // kernel peak at the ball forces the refinement that
                // reveals it.
                let ex = self.exclusion.expect("straddle requires an exclusion");
                let all_inside = samples
                    .iter()
                    .all(|p| p.dist(&ex.ball.center) - ex.ball.radius <= 0.0);
                match (ex.filter, all_inside) {
                    (BallFilter::KeepOutside, true) => return Evaluated::Void,
                    (BallFilter::KeepInside, false) => {
                        return Evaluated::Pieces(self.split_layout(patch, rect))
                    }
                    _ => ball_unresolved = true,
                }
            } else {
                let eps = self.exclusion.expect("straddle").ball.radius;
                if diam >= self.cfg.exclusion_diam_factor * eps {
                    return Evaluated::Pieces(self.split_layout(patch, rect));
                }
                // Terminal masked cell: the sphere cuts through it and a
                // plain estimator would demand splits forever. A fixed
                // 4×4 subgrid resolves the cut 16× finer; the coarse/fine
                // gap estimates the remaining first-order mask error.
                let (coarse, _) = self.leaf(patch, rect, dim);
                let mut fine = Vec3::ZERO;
                for sub in rect.subgrid(4) {
                    fine += self.leaf(patch, sub, dim).0;
                }
                self.cells += 15;
                return Evaluated::Leaf(Leaf {
                    patch,
                    rect,
                    depth,
                    value: fine,
                    err: (coarse - fine).norm() / 3.0,
                    children: Vec::new(),
                    frozen: true,
                    ball_unresolved: false,
                });
            }
        }

        let children = self.split_layout(patch, rect);
        let (coarse, _) = self.leaf(patch, rect, dim);
        let mut fine = Vec3::ZERO;
        let mut floor = 0.0f64;
        for c in &children {
            let (v, f) = self.leaf(patch, *c, dim);
            fine += v;
            floor += f;
        }
        let e = (coarse - fine).norm();
        // Differences at the amplified-roundoff floor are noise, not
        // signal; such leaves never earn further splits.
        let frozen = !ball_unresolved
            && (e <= floor.max(5e-16 * fine.norm()) || depth >= self.cfg.max_depth);
        Evaluated::Leaf(Leaf {
            patch,
            rect,
            depth,
            value: fine,
            err: e,
            children,
            frozen,
            ball_unresolved,
        })
    }

    /// Masked plain leaf for geometry left unresolved at the depth cap.
    fn force_leaf(&mut self, patch: usize, rect: Rect, depth: u32) -> Evaluated {
        let dim = self.patch(patch).dim();
        self.cells += 1;
        let (value, _) = self.leaf(patch, rect, dim);
        Evaluated::Leaf(Leaf {
            patch,
            rect,
            depth,
            value,
            err: value.norm() * 1e-2,
            children: Vec::new(),
            frozen: true,
            ball_unresolved: false,
        })
    }

    fn patch(&self, idx: usize) -> &Patch {
        &self.set.patches()[idx]
    }

    fn sample_grid(&self, patch: usize, rect: Rect, dim: usize) -> Vec<Vec3> {
        if dim == 1 {
            (0..=8)
                .map(|i| {
                    let s = rect.lo[0] + (rect.hi[0] - rect.lo[0]) * i as f64 / 8.0;
                    self.patch(patch).position(&[s, 0.0])
                })
                .collect()
        } else {
            let mut out = Vec::with_capacity(25);
            for i in 0..5 {
                for j in 0..5 {
                    let u = rect.lo[0] + (rect.hi[0] - rect.lo[0]) * i as f64 / 4.0;
                    let v = rect.lo[1] + (rect.hi[1] - rect.lo[1]) * j as f64 / 4.0;
                    out.push(self.patch(patch).position(&[u, v]));
                }
            }
            out
        }
    }

    /// Split layout: curves bisect; surfaces bisect the spatially long
    /// axis (pole-adjacent sphere cells are far wider in azimuthal
    /// parameter than their image warrants) or quarter when balanced.
    /// Spans are chord-path lengths, since closed coordinates return to
    /// their start point.
    fn split_layout(&self, patch: usize, rect: Rect) -> Vec<Rect> {
        if self.patch(patch).dim() == 1 {
            let mid = (rect.lo[0] + rect.hi[0]) / 2.0;
            return vec![
                Rect::interval(rect.lo[0], mid),
                Rect::interval(mid, rect.hi[0]),
            ];
        }
        let samples = self.sample_grid(patch, rect, 2);
        let mut span_u = 0.0f64;
        let mut span_v = 0.0f64;
        for k in 0..5 {
            let mut along_u = 0.0;
            let mut along_v = 0.0;
            for step in 0..4 {
                along_u += samples[(step + 1) * 5 + k].dist(&samples[step * 5 + k]);
                along_v += samples[k * 5 + step + 1].dist(&samples[k * 5 + step]);
            }
            span_u = span_u.max(along_u);
            span_v = span_v.max(along_v);
        }
        if span_u > 2.0 * span_v {
            rect.halves(0).to_vec()
        } else if span_v > 2.0 * span_u {
            rect.halves(1).to_vec()
        } else {
            rect.quadrants().to_vec()
        }
    }

    fn node(&self, patch: usize, t: [f64; 2]) -> (Vec3, Vec3) {
        let p = self.patch(patch);
        let pos = p.position(&t);
        if let Some(ex) = self.exclusion {
            if !ex.keeps(&pos) {
                return (Vec3::ZERO, pos);
            }
        }
        let sp = SurfacePoint {
            position: pos,
            normal: p.normal(&t, self.set.orientation()),
            param: t,
            patch,
        };
        ((self.integrand)(&sp).scale(p.jacobian(&t)), pos)
    }

    /// Quadrature sum plus the roundoff floor of the leaf: argument
    /// errors of size εmach·pos_scale pass through the integrand's
    /// spatial derivative and the parametric weights, so differences
    /// below slope·εmach·pos_scale·Δparam are noise.
    fn leaf(&self, patch: usize, rect: Rect, dim: usize) -> (Vec3, f64) {
        if dim == 1 {
            self.leaf_1d(patch, rect.lo[0], rect.hi[0])
        } else {
            self.leaf_2d(patch, rect)
        }
    }

    fn leaf_1d(&self, patch: usize, a: f64, b: f64) -> (Vec3, f64) {
        let half = (b - a) / 2.0;
        let mid = (a + b) / 2.0;
        let mut sum = Vec3::ZERO;
        let mut prev: Option<(Vec3, Vec3)> = None;
        let mut slope = 0.0f64;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            let (value, pos) = self.node(patch, [mid + half * x, 0.0]);
            sum += value.scale(w * half);
            if let Some((vp, pp)) = prev {
                let ds = pos.dist(&pp);
                if ds > 0.0 {
                    slope = slope.max((value - vp).norm() / ds);
                }
            }
            prev = Some((value, pos));
        }
        (sum, self.noise_floor(slope, b - a))
    }

    fn leaf_2d(&self, patch: usize, r: Rect) -> (Vec3, f64) {
        let hu = (r.hi[0] - r.lo[0]) / 2.0;
        let hv = (r.hi[1] - r.lo[1]) / 2.0;
        let mu = (r.lo[0] + r.hi[0]) / 2.0;
        let mv = (r.lo[1] + r.hi[1]) / 2.0;
        let mut sum = Vec3::ZERO;
        let mut values = [[Vec3::ZERO; 5]; 5];
        let mut positions = [[Vec3::ZERO; 5]; 5];
        for (i, (xu, wu)) in GL_NODES.iter().zip(GL_WEIGHTS).enumerate() {
            for (j, (xv, wv)) in GL_NODES.iter().zip(GL_WEIGHTS).enumerate() {
                let (value, pos) = self.node(patch, [mu + hu * xu, mv + hv * xv]);
                values[i][j] = value;
                positions[i][j] = pos;
                sum += value.scale(wu * wv * hu * hv);
            }
        }
        let mut slope = 0.0f64;
        for i in 0..5 {
            for j in 0..4 {
                let du = positions[j + 1][i].dist(&positions[j][i]);
                let dv = positions[i][j + 1].dist(&positions[i][j]);
                if du > 0.0 {
                    slope = slope.max((values[j + 1][i] - values[j][i]).norm() / du);
                }
                if dv > 0.0 {
                    slope = slope.max((values[i][j + 1] - values[i][j]).norm() / dv);
                }
            }
        }
        (sum, self.noise_floor(slope, r.measure()))
    }

    /// Conservative cell classification against the exclusion sphere.
    fn classify(&self, samples: &[Vec3]) -> (CellClass, f64) {
        let ex = match self.exclusion {
            Some(e) => e,
            None => return (CellClass::Free, 0.0),
        };
        let mut diam: f64 = 0.0;
        for (i, p) in samples.iter().enumerate() {
            for q in &samples[i + 1..] {
                diam = diam.max(p.dist(q));
            }
        }
        diam *= 1.5;
        // Any image point lies within half a sample-grid subcell of a
        // sample (diam/8 of the true diameter on the 5x5 / 9-point
        // grids); diam/4 on the inflated diameter keeps a 2x margin.
        let reach = diam / 4.0;
        let mut dmin = f64::INFINITY;
        let mut dmax = 0.0f64;
        for p in samples {
            let d = p.dist(&ex.ball.center);
            dmin = dmin.min(d);
            dmax = dmax.max(d);
        }
        let eps = ex.ball.radius;
        let all_out = dmin - reach > eps;
        let all_in = dmax + reach < eps;
        let class = match (ex.filter, all_out, all_in) {
            (BallFilter::KeepOutside, true, _) => CellClass::Free,
            (BallFilter::KeepOutside, _, true) => CellClass::Void,
            (BallFilter::KeepInside, true, _) => CellClass::Void,
            (BallFilter::KeepInside, _, true) => CellClass::Free,
            _ => CellClass::Straddle,
        };
        (class, diam)
    }

    fn noise_floor(&self, spatial_slope: f64, param_measure: f64) -> f64 {
        4.0 * f64::EPSILON * self.pos_scale * spatial_slope * param_measure
    }

    /// Parameters where |φ(s) − c| = ε inside (a, b), bisected between
    /// sign changes of the sampled distance function.
    fn crossings_1d(&self, patch: usize, a: f64, b: f64, samples: &[Vec3]) -> Vec<f64> {
        let ex = self.exclusion.expect("straddle requires an exclusion");
        let g = |s: f64| {
            self.patch(patch).position(&[s, 0.0]).dist(&ex.ball.center) - ex.ball.radius
        };
        let m = samples.len() - 1;
        let mut roots = Vec::new();
        let mut prev_s = a;
        let mut prev_g = samples[0].dist(&ex.ball.center) - ex.ball.radius;
        for i in 1..=m {
            let s = a + (b - a) * i as f64 / m as f64;
            let gi = samples[i].dist(&ex.ball.center) - ex.ball.radius;
            if prev_g == 0.0 {
                roots.push(prev_s);
            } else if prev_g * gi < 0.0 {
                let (mut lo, mut hi) = (prev_s, s);
                let mut glo = prev_g;
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let gm = g(mid);
                    if gm == 0.0 {
                        lo = mid;
                        break;
                    }
                    if glo * gm < 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        glo = gm;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
            prev_s = s;
            prev_g = gi;
        }
        roots.retain(|r| *r > a && *r < b);
        roots.dedup();
        roots
    }
}

fn pairwise_sum(values: &[Vec3]) -> Vec3 {
    match values.len() {
        0 => Vec3::ZERO,
        1 => values[0],
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

impl Rect {
    fn quadrants(&self) -> [Rect; 4] {
        let mu = (self.lo[0] + self.hi[0]) / 2.0;
        let mv = (self.lo[1] + self.hi[1]) / 2.0;
        [
            Rect::square(self.lo, [mu, mv]),
            Rect::square([mu, self.lo[1]], [self.hi[0], mv]),
            Rect::square([self.lo[0], mv], [mu, self.hi[1]]),
            Rect::square([mu, mv], self.hi),
        ]
    }

    fn halves(&self, axis: usize) -> [Rect; 2] {
        let mid = (self.lo[axis] + self.hi[axis]) / 2.0;
        let mut a = *self;
        let mut b = *self;
        a.hi[axis] = mid;
        b.lo[axis] = mid;
        [a, b]
    }

    fn subgrid(&self, k: usize) -> Vec<Rect> {
        let du = (self.hi[0] - self.lo[0]) / k as f64;
        let dv = (self.hi[1] - self.lo[1]) / k as f64;
        let mut out = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                out.push(Rect::square(
                    [self.lo[0] + i as f64 * du, self.lo[1] + j as f64 * dv],
                    [
                        self.lo[0] + (i + 1) as f64 * du,
                        self.lo[1] + (j + 1) as f64 * dv,
                    ],
                ));
            }
        }
        out
    }
}
