//! Grid-based cumulative quadrature, monotone interpolation/inversion and
//! bracketed root finding. Everything here is pure and reentrant; tables are
//! immutable after construction.

use crate::{Error, Result};

/// Absolute tolerance (in the abscissa) for inversion and root finding.
pub const INVERSION_TOL: f64 = 1e-12;

/// Ordered abscissa grid. Uniform spacing is detected and recorded because it
/// unlocks the higher-order cumulative quadrature.
#[derive(Debug, Clone)]
pub struct Grid {
    points: Vec<f64>,
    step: Option<f64>,
}

impl Grid {
    /// Grid of `n` equally spaced points covering `[start, end]`.
    pub fn uniform(start: f64, end: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewPoints { got: n });
        }
        if !(start.is_finite() && end.is_finite()) || end <= start {
            return Err(Error::NotIncreasing { index: 0 });
        }
        let h = (end - start) / (n - 1) as f64;
        let points = (0..n)
            .map(|i| {
                if i == n - 1 {
                    end
                } else {
                    start + h * i as f64
                }
            })
            .collect();
        Ok(Grid {
            points,
            step: Some(h),
        })
    }

    /// Grid from explicit points; must be finite and strictly increasing.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints { got: points.len() });
        }
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite { what: "grid point", index: i });
            }
            if i > 0 && *p <= points[i - 1] {
                return Err(Error::NotIncreasing { index: i });
            }
        }
        let step = detect_uniform_step(&points);
        Ok(Grid { points, step })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Never empty: construction requires at least two points.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> f64 {
        self.points[0]
    }

    pub fn end(&self) -> f64 {
        *self.points.last().unwrap()
    }

    /// Uniform step, if the grid is (numerically) equally spaced.
    pub fn step(&self) -> Option<f64> {
        self.step
    }

    /// Index `i` such that `points[i] <= x < points[i+1]`, clamped to the
    /// valid segment range `[0, len-2]`.
    pub(crate) fn segment_of(&self, x: f64) -> usize {
        let n = self.points.len();
        if let Some(h) = self.step {
            let i = ((x - self.points[0]) / h).floor();
            return (i.max(0.0) as usize).min(n - 2);
        }
        match self
            .points
            .binary_search_by(|p| p.partial_cmp(&x).unwrap())
        {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }
}

fn detect_uniform_step(points: &[f64]) -> Option<f64> {
    let n = points.len();
    let h = (points[n - 1] - points[0]) / (n - 1) as f64;
    let tol = 1e-9 * h;
    for w in points.windows(2) {
        if ((w[1] - w[0]) - h).abs() > tol {
            return None;
        }
    }
    Some(h)
}

/// Cumulative integral of `samples` over `grid`, anchored so that the value
/// at `xi = 0` is zero whenever the grid spans 0 (exactly zero when 0 is a
/// node). On uniform grids the composite trapezoid rule is sharpened with the
/// Euler-Maclaurin endpoint-derivative correction (globally O(h^4) for smooth
/// integrands); otherwise plain trapezoid.
///
/// Linear in the integrand and additive over subintervals at the nodes. For
/// an everywhere-nonnegative integrand the cumulative is additionally
/// rectified to be nondecreasing; the rectification only engages on segments
/// where the endpoint correction would otherwise push a vanishing increment
/// below zero (a kink in the data), where zero is the sharper answer.
pub fn cumulative_integral(grid: &Grid, samples: &[f64]) -> Result<Vec<f64>> {
    let pts = grid.points();
    if samples.len() != pts.len() {
        return Err(Error::LengthMismatch {
            expected: pts.len(),
            got: samples.len(),
        });
    }
    for (i, s) in samples.iter().enumerate() {
        if !s.is_finite() {
            return Err(Error::NonFinite { what: "sample", index: i });
        }
    }
    let n = pts.len();
    let mut cum = vec![0.0; n];
    let mut acc = 0.0;
    for i in 0..n - 1 {
        acc += 0.5 * (samples[i] + samples[i + 1]) * (pts[i + 1] - pts[i]);
        cum[i + 1] = acc;
    }
    if let Some(h) = grid.step() {
        if n >= 3 {
            // Endpoint-derivative correction. The interior derivative errors
            // telescope away, so only the derivative estimates at node 0 and
            // node k enter the cumulative value at node k.
            let deriv = |i: usize| -> f64 {
                if i == 0 {
                    (-3.0 * samples[0] + 4.0 * samples[1] - samples[2]) / (2.0 * h)
                } else if i == n - 1 {
                    (3.0 * samples[n - 1] - 4.0 * samples[n - 2] + samples[n - 3]) / (2.0 * h)
                } else {
                    (samples[i + 1] - samples[i - 1]) / (2.0 * h)
                }
            };
            let d0 = deriv(0);
            let c = h * h / 12.0;
            for (i, v) in cum.iter_mut().enumerate().skip(1) {
                *v -= c * (deriv(i) - d0);
            }
        }
    }
    if samples.iter().all(|&s| s >= 0.0) {
        for i in 1..n {
            if cum[i] < cum[i - 1] {
                cum[i] = cum[i - 1];
            }
        }
    }
    // Re-anchor at xi = 0 when the grid spans it.
    if pts[0] < 0.0 && pts[n - 1] > 0.0 {
        let i = grid.segment_of(0.0);
        let shift = if pts[i] == 0.0 {
            cum[i]
        } else if pts[i + 1] == 0.0 {
            cum[i + 1]
        } else {
            let t = (0.0 - pts[i]) / (pts[i + 1] - pts[i]);
            cum[i] + t * (cum[i + 1] - cum[i])
        };
        for v in cum.iter_mut() {
            *v -= shift;
        }
    }
    Ok(cum)
}

/// Linear interpolation of `values` on `grid`, clamped to the end values
/// outside the grid.
pub(crate) fn lerp(grid: &Grid, values: &[f64], x: f64) -> f64 {
    let pts = grid.points();
    if x <= pts[0] {
        return values[0];
    }
    if x >= pts[pts.len() - 1] {
        return values[values.len() - 1];
    }
    let i = grid.segment_of(x);
    let t = (x - pts[i]) / (pts[i + 1] - pts[i]);
    values[i] + t * (values[i + 1] - values[i])
}

/// Declared monotonicity of a [`MonotoneTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    NonDecreasing,
    StrictlyIncreasing,
}

/// Tabulated monotone function of one variable.
///
/// Strictly increasing tables are evaluated with the monotonicity-preserving
/// piecewise cubic of Fritsch and Carlson, which keeps the interpolant
/// strictly increasing and therefore invertible; nondecreasing tables (which
/// may contain flat segments) fall back to linear interpolation.
#[derive(Debug, Clone)]
pub struct MonotoneTable {
    grid: Grid,
    values: Vec<f64>,
    monotonicity: Monotonicity,
    /// Node derivatives of the cubic (strictly-increasing tables only).
    slopes: Option<Vec<f64>>,
}

impl MonotoneTable {
    /// Builds a table, enforcing the declared monotonicity exactly.
    pub fn new(grid: Grid, values: Vec<f64>, monotonicity: Monotonicity) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { what: "table value", index: i });
            }
        }
        for i in 1..values.len() {
            let ok = match monotonicity {
                Monotonicity::NonDecreasing => values[i] >= values[i - 1],
                Monotonicity::StrictlyIncreasing => values[i] > values[i - 1],
            };
            if !ok {
                return Err(Error::NotMonotone { index: i });
            }
        }
        let slopes = match monotonicity {
            Monotonicity::StrictlyIncreasing => Some(fritsch_carlson_slopes(grid.points(), &values)),
            Monotonicity::NonDecreasing => None,
        };
        Ok(MonotoneTable {
            grid,
            values,
            monotonicity,
            slopes,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    /// Tabulated value range `(min, max)`.
    pub fn value_range(&self) -> (f64, f64) {
        (self.values[0], *self.values.last().unwrap())
    }

    /// Evaluates the interpolant at `x`; outside the grid the nearest end
    /// value is returned.
    pub fn eval(&self, x: f64) -> f64 {
        let pts = self.grid.points();
        let n = pts.len();
        if x <= pts[0] {
            return self.values[0];
        }
        if x >= pts[n - 1] {
            return self.values[n - 1];
        }
        let i = self.grid.segment_of(x);
        match &self.slopes {
            None => {
                let t = (x - pts[i]) / (pts[i + 1] - pts[i]);
                self.values[i] + t * (self.values[i + 1] - self.values[i])
            }
            Some(slopes) => hermite(
                pts[i],
                pts[i + 1],
                self.values[i],
                self.values[i + 1],
                slopes[i],
                slopes[i + 1],
                x,
            ),
        }
    }

    /// Inverts a strictly increasing table: returns `x` with
    /// `|eval(x) - y| <= INVERSION_TOL * (1 + |y|)`.
    ///
    /// Nondecreasing tables are not invertible; out-of-range queries return
    /// [`Error::OutOfRange`] carrying the violated bounds.
    pub fn invert(&self, y: f64) -> Result<f64> {
        if self.monotonicity != Monotonicity::StrictlyIncreasing {
            return Err(Error::NotMonotone { index: 0 });
        }
        let (lo, hi) = self.value_range();
        if !(y >= lo && y <= hi) {
            return Err(Error::OutOfRange { value: y, min: lo, max: hi });
        }
        // Locate the segment by bisection on the node values.
        let i = match self
            .values
            .binary_search_by(|v| v.partial_cmp(&y).unwrap())
        {
            Ok(i) => return Ok(self.grid.points()[i]),
            Err(i) => i.saturating_sub(1).min(self.values.len() - 2),
        };
        let pts = self.grid.points();
        let slopes = self.slopes.as_ref().unwrap();
        let (xa, xb) = (pts[i], pts[i + 1]);
        let f = |x: f64| {
            hermite(xa, xb, self.values[i], self.values[i + 1], slopes[i], slopes[i + 1], x) - y
        };
        solve_on_segment(f, xa, xb, INVERSION_TOL * (1.0 + y.abs()))
    }
}

/// Cubic Hermite evaluation on `[xa, xb]`.
fn hermite(xa: f64, xb: f64, va: f64, vb: f64, ma: f64, mb: f64, x: f64) -> f64 {
    let h = xb - xa;
    let t = (x - xa) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    h00 * va + h10 * h * ma + h01 * vb + h11 * h * mb
}

/// Monotonicity-preserving node slopes (Fritsch-Carlson limiting).
fn fritsch_carlson_slopes(pts: &[f64], vals: &[f64]) -> Vec<f64> {
    let n = pts.len();
    let h: Vec<f64> = pts.windows(2).map(|w| w[1] - w[0]).collect();
    let d: Vec<f64> = vals
        .windows(2)
        .zip(&h)
        .map(|(w, h)| (w[1] - w[0]) / h)
        .collect();
    let mut m = vec![0.0; n];
    for i in 1..n - 1 {
        if d[i - 1] * d[i] <= 0.0 {
            m[i] = 0.0;
        } else {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    m[0] = end_slope(h[0], h.get(1).copied().unwrap_or(h[0]), d[0], d.get(1).copied().unwrap_or(d[0]));
    m[n - 1] = end_slope(
        h[n - 2],
        if n >= 3 { h[n - 3] } else { h[n - 2] },
        d[n - 2],
        if n >= 3 { d[n - 3] } else { d[n - 2] },
    );
    m
}

/// Shape-preserving one-sided end slope (three-point estimate, clamped).
fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

/// Newton iteration with a bisection safeguard on a bracketed segment where
/// `f` is monotone with `f(xa) <= 0 <= f(xb)`. Converges in both senses:
/// value residual within `val_tol` and abscissa within [`INVERSION_TOL`]
/// (the bisection fallback guarantees the latter even where the interpolant
/// is locally flat).
fn solve_on_segment(f: impl Fn(f64) -> f64, xa: f64, xb: f64, val_tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (xa, xb);
    let mut x = 0.5 * (lo + hi);
    let mut prev_width = hi - lo;
    for _ in 0..200 {
        let fx = f(x);
        let width = hi - lo;
        if fx.abs() <= val_tol && (width <= INVERSION_TOL || width <= 8.0 * x.abs() * f64::EPSILON)
        {
            return Ok(x);
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        // Newton step from a secant slope over the bracket, demoted to
        // bisection whenever the bracket stops contracting (flat regions
        // keep the residual tiny while the abscissa is still wide).
        let shrunk = (hi - lo) <= 0.75 * prev_width;
        prev_width = hi - lo;
        let df = (f(hi) - f(lo)) / (hi - lo);
        let newton = x - fx / df;
        x = if shrunk && df.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(x)
}

/// Root of a monotone function on a bracket `(lo, hi)` with
/// `f(lo) * f(hi) <= 0`, found by bisection with secant acceleration, to
/// absolute tolerance `tol` in the abscissa.
pub fn find_root_monotone(f: impl Fn(f64) -> f64, bracket: (f64, f64), tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo * f_hi > 0.0 {
        return Err(Error::NoSignChange { f_lo, f_hi });
    }
    let mut width = hi - lo;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        // Secant proposal, demoted to bisection when it stalls or escapes.
        let secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        let x = if secant.is_finite()
            && secant > lo
            && secant < hi
            && (hi - lo) < 0.75 * width
        {
            secant
        } else {
            0.5 * (lo + hi)
        };
        width = hi - lo;
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx * f_lo < 0.0 {
            hi = x;
            f_hi = fx;
        } else {
            lo = x;
            f_lo = fx;
        }
    }
    // Interpolate the final bracket for a best estimate.
    Ok(lo - f_lo * (hi - lo) / (f_hi - f_lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uniform_grid(a: f64, b: f64, n: usize) -> Grid {
        Grid::uniform(a, b, n).unwrap()
    }

    #[test]
    fn cumulative_of_zero_is_zero() {
        let g = uniform_grid(-1.0, 2.0, 41);
        let cum = cumulative_integral(&g, &vec![0.0; 41]).unwrap();
        assert!(cum.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn cumulative_of_one_is_identity_on_unit_interval() {
        let g = uniform_grid(0.0, 1.0, 101);
        let cum = cumulative_integral(&g, &vec![1.0; 101]).unwrap();
        for (p, v) in g.points().iter().zip(&cum) {
            assert!((p - v).abs() < 1e-14, "cumulative of 1 at {p} gave {v}");
        }
    }

    #[test]
    fn cumulative_anchors_at_zero_node() {
        let g = uniform_grid(-1.0, 1.0, 21); // 0 is a node
        let cum = cumulative_integral(&g, &[1.0; 21]).unwrap();
        assert_eq!(cum[10], 0.0);
        assert!((cum[0] - (-1.0)).abs() < 1e-14);
        assert!((cum[20] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cumulative_rejects_length_mismatch_and_nan() {
        let g = uniform_grid(0.0, 1.0, 4);
        assert!(matches!(
            cumulative_integral(&g, &[0.0; 3]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            cumulative_integral(&g, &[0.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn cumulative_fourth_order_on_smooth_integrand() {
        // int_0^x sin = 1 - cos x
        let err_at = |n: usize| -> f64 {
            let g = uniform_grid(0.0, 2.0, n);
            let s: Vec<f64> = g.points().iter().map(|x| x.sin()).collect();
            let cum = cumulative_integral(&g, &s).unwrap();
            g.points()
                .iter()
                .zip(&cum)
                .map(|(x, v)| (v - (1.0 - x.cos())).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err_at(101), err_at(201));
        let order = (e1 / e2).log2();
        assert!(order > 3.5, "observed order {order}, errors {e1:e} {e2:e}");
    }

    #[test]
    fn identity_table_inverts_trivially() {
        let g = uniform_grid(0.0, 1.0, 11);
        let vals = g.points().to_vec();
        let t = MonotoneTable::new(g, vals, Monotonicity::StrictlyIncreasing).unwrap();
        let x = t.invert(0.3).unwrap();
        assert!((x - 0.3).abs() < 1e-12);
    }

    #[test]
    fn invert_reports_violated_bound() {
        let g = uniform_grid(0.0, 1.0, 11);
        let vals = g.points().to_vec();
        let t = MonotoneTable::new(g, vals, Monotonicity::StrictlyIncreasing).unwrap();
        match t.invert(1.5) {
            Err(Error::OutOfRange { value, min, max }) => {
                assert_eq!(value, 1.5);
                assert_eq!((min, max), (0.0, 1.0));
            }
            other => panic!("expected OutOfRange, got {other:?}"),
        }
    }

    #[test]
    fn table_construction_enforces_monotonicity() {
        let g = uniform_grid(0.0, 1.0, 3);
        assert!(matches!(
            MonotoneTable::new(g.clone(), vec![0.0, 2.0, 1.0], Monotonicity::NonDecreasing),
            Err(Error::NotMonotone { index: 2 })
        ));
        assert!(matches!(
            MonotoneTable::new(g, vec![0.0, 1.0, 1.0], Monotonicity::StrictlyIncreasing),
            Err(Error::NotMonotone { index: 2 })
        ));
    }

    #[test]
    fn nondecreasing_table_with_flat_segment_evaluates_linearly() {
        let g = Grid::from_points(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let t = MonotoneTable::new(g, vec![0.0, 1.0, 1.0, 2.0], Monotonicity::NonDecreasing)
            .unwrap();
        assert_eq!(t.eval(1.5), 1.0);
        assert!((t.eval(2.5) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn root_of_linear_function() {
        let r = find_root_monotone(|x| x - 1.0, (0.0, 2.0), 1e-12).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn root_rejects_unbracketed_input() {
        assert!(matches!(
            find_root_monotone(|x| x + 10.0, (0.0, 2.0), 1e-12),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn grid_rejects_degenerate_input() {
        assert!(Grid::from_points(vec![0.0]).is_err());
        assert!(Grid::from_points(vec![0.0, 0.0]).is_err());
        assert!(Grid::from_points(vec![0.0, f64::NAN]).is_err());
        assert!(Grid::uniform(0.0, 0.0, 5).is_err());
    }

    proptest! {
        /// Linearity: cum(a f + b g) = a cum(f) + b cum(g) at every node.
        #[test]
        fn cumulative_is_linear(
            fs in prop::collection::vec(-10.0f64..10.0, 16),
            gs in prop::collection::vec(-10.0f64..10.0, 16),
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
        ) {
            let grid = uniform_grid(-0.5, 1.0, 16);
            let combo: Vec<f64> = fs.iter().zip(&gs).map(|(f, g)| a * f + b * g).collect();
            let cf = cumulative_integral(&grid, &fs).unwrap();
            let cg = cumulative_integral(&grid, &gs).unwrap();
            let cc = cumulative_integral(&grid, &combo).unwrap();
            for i in 0..16 {
                let want = a * cf[i] + b * cg[i];
                prop_assert!((cc[i] - want).abs() <= 1e-12 * (1.0 + want.abs()));
            }
        }

        /// Additivity over subintervals at nodes: cum(k) - cum(j) equals an
        /// independent re-integration over [x_j, x_k]. Exact on the plain
        /// trapezoid path (non-uniform grids); on uniform grids the
        /// endpoint-derivative correction is re-estimated from the
        /// restricted data, so the two agree to the correction scale.
        #[test]
        fn cumulative_is_additive_at_nodes(
            fs in prop::collection::vec(-10.0f64..10.0, 24),
            incs in prop::collection::vec(0.5f64..1.5, 23),
            j in 0usize..12,
            k in 12usize..24,
        ) {
            // Non-uniform grid: trapezoid path, exact additivity.
            let mut pts = vec![0.0];
            for d in &incs {
                pts.push(pts.last().unwrap() + d * 0.04);
            }
            let grid = Grid::from_points(pts).unwrap();
            let h_max = grid.points().windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
            let cum = cumulative_integral(&grid, &fs).unwrap();
            let sub = Grid::from_points(grid.points()[j..=k].to_vec()).unwrap();
            let sub_cum = cumulative_integral(&sub, &fs[j..=k]).unwrap();
            let want = sub_cum.last().unwrap() - sub_cum.first().unwrap();
            if grid.step().is_none() {
                prop_assert!(((cum[k] - cum[j]) - want).abs() <= 1e-12 * (1.0 + want.abs()));
            }

            // Uniform grid: additive up to the endpoint correction scale.
            let grid_u = uniform_grid(0.0, 1.0, 24);
            let h = grid_u.step().unwrap();
            let cum_u = cumulative_integral(&grid_u, &fs).unwrap();
            let sub_u = Grid::from_points(grid_u.points()[j..=k].to_vec()).unwrap();
            let sub_cum_u = cumulative_integral(&sub_u, &fs[j..=k]).unwrap();
            let want_u = sub_cum_u.last().unwrap() - sub_cum_u.first().unwrap();
            let f_scale = fs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            prop_assert!(((cum_u[k] - cum_u[j]) - want_u).abs() <= 2.0 * h * f_scale / 3.0 + 1e-12);
            let _ = h_max;
        }

        /// Inversion round trip on random strictly increasing tables.
        #[test]
        fn invert_composes_to_identity(
            incs in prop::collection::vec(0.01f64..1.0, 20),
            t in 0.0f64..1.0,
        ) {
            let mut vals = vec![0.0];
            for d in &incs {
                vals.push(vals.last().unwrap() + d);
            }
            let grid = uniform_grid(0.0, 2.0, vals.len());
            let table = MonotoneTable::new(grid, vals, Monotonicity::StrictlyIncreasing).unwrap();
            let x = 2.0 * t;
            let y = table.eval(x);
            let back = table.invert(y).unwrap();
            prop_assert!((table.eval(back) - y).abs() <= 1e-12 * (1.0 + y.abs()));
            prop_assert!((back - x).abs() <= 1e-10 * (1.0 + x.abs()));
        }
    }
}
