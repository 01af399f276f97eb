//! Transverse plane-wave pulse profiles: polarization, modulating envelopes,
//! the dimensionless vector potential they impress on an electron, and the
//! closed-form primitives available for the polynomial envelope.

use std::f64::consts::PI;

use crate::numerics::{lerp, Grid};
use crate::{Error, Result};

/// Carrier polarization. The intensity factor `p` is the period average of
/// the squared carrier: 1 for circular, 1/2 for linear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    Linear,
    Circular,
}

impl Polarization {
    pub fn intensity_factor(self) -> f64 {
        match self {
            Polarization::Linear => 0.5,
            Polarization::Circular => 1.0,
        }
    }
}

impl std::fmt::Display for Polarization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Polarization::Linear => write!(f, "linear"),
            Polarization::Circular => write!(f, "circular"),
        }
    }
}

/// Whether observables carry the oscillating carrier or its period average.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Exact carrier phase retained.
    Oscillatory,
    /// Carrier averaged out; only the envelope and the intensity factor
    /// survive. Default for all scenario work.
    EnvelopeAveraged,
}

/// Envelope sampled from a `(xi, w)` table; linear between nodes, zero
/// outside.
#[derive(Debug, Clone)]
pub struct SampledEnvelope {
    grid: Grid,
    w: Vec<f64>,
}

impl SampledEnvelope {
    pub fn new(xi: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        let grid = Grid::from_points(xi)?;
        if w.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: w.len(),
            });
        }
        for (i, v) in w.iter().enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::NonFinite { what: "envelope sample", index: i });
            }
        }
        Ok(SampledEnvelope { grid, w })
    }

    /// Parses the two-column CSV `xi_cm,w` (header required, strictly
    /// increasing `xi_cm`).
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == "xi_cm,w" => {}
            Some((_, h)) => {
                return Err(Error::InvalidCsv {
                    line: 1,
                    reason: format!("expected header `xi_cm,w`, got `{}`", h.trim()),
                })
            }
            None => {
                return Err(Error::InvalidCsv { line: 1, reason: "empty file".into() })
            }
        }
        let mut xi = Vec::new();
        let mut w = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split(',');
            let parse = |s: Option<&str>| -> Result<f64> {
                s.and_then(|v| v.trim().parse::<f64>().ok())
                    .ok_or(Error::InvalidCsv {
                        line: idx + 1,
                        reason: format!("expected two numeric columns, got `{line}`"),
                    })
            };
            xi.push(parse(cols.next())?);
            w.push(parse(cols.next())?);
            if cols.next().is_some() {
                return Err(Error::InvalidCsv {
                    line: idx + 1,
                    reason: "more than two columns".into(),
                });
            }
        }
        SampledEnvelope::new(xi, w).map_err(|e| match e {
            Error::NotIncreasing { index } => Error::InvalidCsv {
                line: index + 2,
                reason: "xi_cm not strictly increasing".into(),
            },
            other => other,
        })
    }
}

/// Modulating amplitude `w(xi)` of the pulse: zero for `xi <= 0`, compactly
/// supported, nonnegative.
#[derive(Debug, Clone)]
pub enum Envelope {
    /// `a_g exp(-(xi-center)^2 / 2 sigma)` hard-truncated to `[0, support_len]`.
    Gaussian {
        peak: f64,
        /// Variance-like width parameter (cm^2).
        sigma: f64,
        center: f64,
        support_len: f64,
    },
    /// `a_p [1/4 - ((xi-center)/support_len)^2]^2` on its support.
    Polynomial {
        peak: f64,
        support_len: f64,
        center: f64,
    },
    Sampled(SampledEnvelope),
}

impl Envelope {
    /// Support interval `(lo, hi)` outside of which `w = 0`.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Envelope::Gaussian { support_len, .. } => (0.0, *support_len),
            Envelope::Polynomial { support_len, center, .. } => {
                (center - 0.5 * support_len, center + 0.5 * support_len)
            }
            Envelope::Sampled(s) => (s.grid.start(), s.grid.end()),
        }
    }

    /// Phase of maximum intensity.
    pub fn peak_phase(&self) -> f64 {
        match self {
            Envelope::Gaussian { center, .. } | Envelope::Polynomial { center, .. } => *center,
            Envelope::Sampled(s) => {
                let mut best = (s.grid.start(), 0.0);
                for (x, w) in s.grid.points().iter().zip(&s.w) {
                    if *w > best.1 {
                        best = (*x, *w);
                    }
                }
                best.0
            }
        }
    }

    /// Envelope value; zero on and outside the support boundary, honoring
    /// `w(xi) = 0` for `xi <= 0`.
    pub fn value(&self, xi: f64) -> f64 {
        let (lo, hi) = self.support();
        if xi <= lo.max(0.0) || xi >= hi {
            return 0.0;
        }
        self.interior_value(xi)
    }

    /// Envelope sample used when building tables: at the support boundaries
    /// the one-sided limit is taken (weak-solution convention for the
    /// truncated front), elsewhere identical to [`Envelope::value`].
    pub(crate) fn sample(&self, xi: f64) -> f64 {
        let (lo, hi) = self.support();
        if xi < lo.max(0.0) || xi > hi {
            return 0.0;
        }
        self.interior_value(xi)
    }

    fn interior_value(&self, xi: f64) -> f64 {
        match self {
            Envelope::Gaussian { peak, sigma, center, .. } => {
                let d = xi - center;
                peak * (-d * d / (2.0 * sigma)).exp()
            }
            Envelope::Polynomial { peak, support_len, center } => {
                let u = (xi - center) / support_len;
                let v = 0.25 - u * u;
                if v <= 0.0 {
                    0.0
                } else {
                    peak * v * v
                }
            }
            Envelope::Sampled(s) => lerp(&s.grid, &s.w, xi).max(0.0),
        }
    }

    /// d w / d xi inside the support (one-sided at the boundaries).
    pub(crate) fn derivative(&self, xi: f64) -> f64 {
        let (lo, hi) = self.support();
        if xi < lo.max(0.0) || xi > hi {
            return 0.0;
        }
        match self {
            Envelope::Gaussian { peak, sigma, center, .. } => {
                let d = xi - center;
                -d / sigma * peak * (-d * d / (2.0 * sigma)).exp()
            }
            Envelope::Polynomial { peak, support_len, center } => {
                let u = (xi - center) / support_len;
                let v = 0.25 - u * u;
                if v <= 0.0 {
                    0.0
                } else {
                    -4.0 * peak * v * u / support_len
                }
            }
            Envelope::Sampled(s) => {
                let pts = s.grid.points();
                let i = s.grid.segment_of(xi.clamp(pts[0], pts[pts.len() - 1]));
                (s.w[i + 1] - s.w[i]) / (pts[i + 1] - pts[i])
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Envelope::Gaussian { peak, sigma, center, support_len } => {
                for (what, v) in [
                    ("gaussian peak amplitude", *peak),
                    ("gaussian width sigma", *sigma),
                    ("gaussian support length", *support_len),
                ] {
                    if !(v.is_finite() && v > 0.0) {
                        return Err(Error::NonPositive { what, value: v });
                    }
                }
                if !center.is_finite() {
                    return Err(Error::NonFinite { what: "gaussian center", index: 0 });
                }
                Ok(())
            }
            Envelope::Polynomial { peak, support_len, center } => {
                for (what, v) in [
                    ("polynomial peak amplitude", *peak),
                    ("polynomial support length", *support_len),
                ] {
                    if !(v.is_finite() && v > 0.0) {
                        return Err(Error::NonPositive { what, value: v });
                    }
                }
                if !center.is_finite() {
                    return Err(Error::NonFinite { what: "polynomial center", index: 0 });
                }
                Ok(())
            }
            Envelope::Sampled(_) => Ok(()), // validated on construction
        }
    }
}

/// A transverse plane-wave pulse: polarization, envelope, carrier wavelength
/// and evaluation mode. Immutable; all queries are pure.
#[derive(Debug, Clone)]
pub struct Pulse {
    pub polarization: Polarization,
    pub envelope: Envelope,
    /// Carrier wavelength (cm).
    pub wavelength: f64,
    pub mode: EvalMode,
}

impl Pulse {
    pub fn new(
        polarization: Polarization,
        envelope: Envelope,
        wavelength: f64,
        mode: EvalMode,
    ) -> Result<Self> {
        envelope.validate()?;
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::NonPositive { what: "wavelength", value: wavelength });
        }
        Ok(Pulse { polarization, envelope, wavelength, mode })
    }

    /// Non-fatal physical-regime warnings (slowly-varying-envelope budget).
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (lo, hi) = self.envelope.support();
        let len = hi - lo;
        if self.wavelength > len / 10.0 {
            out.push(format!(
                "wavelength {:.3e} cm exceeds a tenth of the support length {:.3e} cm; the envelope is not slowly varying",
                self.wavelength, len
            ));
        }
        out
    }

    /// Carrier wavenumber `k = 2 pi / wavelength` (cm^-1).
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// Envelope `w(xi)`.
    pub fn envelope_at(&self, xi: f64) -> f64 {
        self.envelope.value(xi)
    }

    /// Support of the envelope.
    pub fn support(&self) -> (f64, f64) {
        self.envelope.support()
    }

    /// Phase unit vector multiplying the envelope in the vector potential.
    fn phase_vector(&self, xi: f64) -> [f64; 2] {
        let kx = self.wavenumber() * xi;
        match self.polarization {
            Polarization::Linear => [kx.sin(), 0.0],
            Polarization::Circular => [kx.sin(), -kx.cos()],
        }
    }

    /// Carrier unit vector (the one multiplying the electric field).
    pub(crate) fn carrier_at(&self, xi: f64) -> [f64; 2] {
        self.carrier_vector(xi)
    }

    fn carrier_vector(&self, xi: f64) -> [f64; 2] {
        let kx = self.wavenumber() * xi;
        match self.polarization {
            Polarization::Linear => [kx.cos(), 0.0],
            Polarization::Circular => [kx.cos(), kx.sin()],
        }
    }

    /// Transverse momentum `u_perp` impressed on an electron initially at
    /// rest, equal to the dimensionless vector potential `e A_perp / m c^2`.
    ///
    /// Oscillatory mode carries the full phase; envelope-averaged mode keeps
    /// the magnitude `sqrt(p) w(xi)` with the phase suppressed.
    pub fn transverse_momentum(&self, xi: f64) -> [f64; 2] {
        if xi <= 0.0 {
            return [0.0, 0.0];
        }
        let w = self.envelope.value(xi);
        match self.mode {
            EvalMode::Oscillatory => {
                let e = self.phase_vector(xi);
                [w * e[0], w * e[1]]
            }
            EvalMode::EnvelopeAveraged => {
                [self.polarization.intensity_factor().sqrt() * w, 0.0]
            }
        }
    }

    /// Same as [`Pulse::transverse_momentum`] but with the one-sided limit at
    /// the support boundaries; used to sample tables.
    pub(crate) fn transverse_momentum_sample(&self, xi: f64) -> [f64; 2] {
        if xi < 0.0 {
            return [0.0, 0.0];
        }
        let w = self.envelope.sample(xi);
        match self.mode {
            EvalMode::Oscillatory => {
                let e = self.phase_vector(xi);
                [w * e[0], w * e[1]]
            }
            EvalMode::EnvelopeAveraged => {
                [self.polarization.intensity_factor().sqrt() * w, 0.0]
            }
        }
    }

    /// Longitudinal momentum `u_z = |u_perp|^2 / 2` (the ponderomotive
    /// drift), i.e. `(p/2) w^2` in envelope-averaged mode.
    pub fn longitudinal_momentum(&self, xi: f64) -> f64 {
        let u = self.transverse_momentum(xi);
        0.5 * (u[0] * u[0] + u[1] * u[1])
    }

    pub(crate) fn longitudinal_momentum_sample(&self, xi: f64) -> f64 {
        let u = self.transverse_momentum_sample(xi);
        0.5 * (u[0] * u[0] + u[1] * u[1])
    }

    /// Lorentz factor of the driven electron, `gamma = 1 + u_z`.
    pub fn gamma_factor(&self, xi: f64) -> f64 {
        1.0 + self.longitudinal_momentum(xi)
    }

    /// Derivative of the dimensionless vector potential, `d u_perp / d xi`.
    /// The electric field is `-(m c^2 / e)` times this.
    pub(crate) fn vector_potential_derivative(&self, xi: f64) -> [f64; 2] {
        if xi <= 0.0 {
            return [0.0, 0.0];
        }
        let w = self.envelope.value(xi);
        let dw = self.envelope.derivative(xi);
        match self.mode {
            EvalMode::Oscillatory => {
                let ep = self.phase_vector(xi);
                let eo = self.carrier_vector(xi);
                let k = self.wavenumber();
                [dw * ep[0] + k * w * eo[0], dw * ep[1] + k * w * eo[1]]
            }
            EvalMode::EnvelopeAveraged => {
                let p_sqrt = self.polarization.intensity_factor().sqrt();
                // Envelope magnitude of the field, k sqrt(p) w, plus the slow
                // envelope gradient carried by the first component.
                [p_sqrt * (self.wavenumber() * w + dw), 0.0]
            }
        }
    }

    /// Closed-form primitives of the envelope-averaged polynomial pulse:
    /// the accumulated drift `int_0^xi u_z` (cm) and its integral (cm^2).
    ///
    /// Only defined for the polynomial envelope. Above the support the drift
    /// stays constant and its integral continues linearly.
    pub fn polynomial_primitives(&self, xi: f64) -> Result<(f64, f64)> {
        let (peak, support_len, center) = match self.envelope {
            Envelope::Polynomial { peak, support_len, center } => (peak, support_len, center),
            _ => return Err(Error::UnsupportedEnvelope { op: "polynomial_primitives" }),
        };
        let p = self.polarization.intensity_factor();
        let shifted = xi - (center - 0.5 * support_len);
        let scale_drift = 0.5 * p * support_len * peak * peak;
        let scale_integral = scale_drift * support_len;
        if shifted <= 0.0 {
            return Ok((0.0, 0.0));
        }
        let y = (shifted / support_len).min(1.0);
        // int_0^y t^4 (t-1)^4 dt and its primitive, expanded.
        let y2 = y * y;
        let y3 = y2 * y;
        let y5 = y2 * y3;
        let y6 = y5 * y;
        let drift_poly =
            y5 * (1.0 / 5.0 - 2.0 * y / 3.0 + 6.0 * y2 / 7.0 - y3 / 2.0 + y2 * y2 / 9.0);
        let integral_poly =
            y6 * (1.0 / 30.0 - 2.0 * y / 21.0 + 3.0 * y2 / 28.0 - y3 / 18.0 + y2 * y2 / 90.0);
        let drift = scale_drift * drift_poly;
        let mut integral = scale_integral * integral_poly;
        if shifted > support_len {
            // Past the support the drift is the full-support constant.
            integral += (shifted - support_len) * drift;
        }
        Ok((drift, integral))
    }
}
