use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::quad::gl_panels;
use crate::{Error, Result};

/// Largest `|Im μ|` for the real-axis integral.
pub const DIRECT_MAX_IM: f64 = 15.0;
/// Validated box of the contour route.
pub const SCALED_MAX_RE: f64 = 3.0;
pub const SCALED_MAX_IM: f64 = 120.0;

/// Integrand is dropped once it falls this many e-folds below the scale of
/// the result.
const TAIL_EFOLDS: f64 = 42.0;
const MAX_PANEL_PHASE: f64 = FRAC_PI_4;
/// Vertical-segment panels whose scaled integrand stays below `e^{−50}` are
/// skipped.
const VERTICAL_CUTOFF: f64 = 50.0;

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("argument must be positive, got {x}")));
    }
    Ok(())
}

/// MacDonald function `K_μ(x) = ∫_0^∞ cosh(μs) e^{−x cosh s} ds` by
/// Gauss–Legendre panels on the real axis, refined until two successive
/// panel counts agree. Loses about `π|Im μ|/(2 ln 10)` digits to
/// cancellation, hence the cap on `|Im μ|`.
pub fn macdonald_k(mu: Complex64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    if !(mu.im.abs() <= DIRECT_MAX_IM) || !mu.re.is_finite() {
        return Err(Error::OutOfRange {
            what: "Im μ",
            value: mu.im,
            range: "[-15, 15]; larger orders need macdonald_k_scaled",
        });
    }
    let sigma = mu.re.abs();
    let y = mu.im.abs();
    // Peak of |cosh(μs)| e^{−x cosh s} over s ≥ 0.
    let log_peak = if sigma > x {
        let s = (sigma / x).asinh();
        sigma * s - x * s.cosh()
    } else {
        -x
    };
    let floor = log_peak - TAIL_EFOLDS - FRAC_PI_2 * y;
    let mut upper = 0.5;
    while sigma * upper - x * upper.cosh() > floor {
        upper += 0.25;
    }
    let f = |s: f64| {
        let e = mu * s;
        (e.exp() + (-e).exp()) * (0.5 * (-x * s.cosh()).exp())
    };
    let mut panels = ((upper * (y + sigma + 1.0)) / 2.0).ceil().max(8.0) as usize;
    let mut prev: Complex64 = gl_panels(f, 0.0, upper, panels);
    for _ in 0..10 {
        panels *= 2;
        let next: Complex64 = gl_panels(f, 0.0, upper, panels);
        // Rounding noise of the oscillating sum is set by the integrand peak.
        let floor = 64.0 * f64::EPSILON * log_peak.exp() * upper;
        if (next - prev).norm() <= (1e-14 * next.norm()).max(floor) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence {
        method: "MacDonald real-axis quadrature",
        iterations: panels,
        residual: prev.norm(),
    })
}

/// `e^{π|y|/2} K_μ(2a)` with `μ = σ + iy`, stored with the exponent removed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaledK {
    pub mu: Complex64,
    pub two_a: f64,
    pub scaled_value: Complex64,
    pub log_scale: f64,
}

impl ScaledK {
    /// The unscaled `K_μ(2a)`; underflows to zero for very large `|y|`.
    pub fn value(&self) -> Complex64 {
        self.scaled_value * (-self.log_scale).exp()
    }
}

/// Splits `[lo, hi]` so the phase changes by at most `π/4` per panel, given
/// a bound `rate(a, b)` on `|phase′|` over a subinterval.
fn phase_breaks(lo: f64, hi: f64, max_width: f64, rate: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let mut breaks = vec![lo];
    let mut s = lo;
    while s < hi {
        let mut w = max_width.min(hi - s);
        loop {
            let r = rate(s, s + w);
            if r * w <= MAX_PANEL_PHASE || w < 1e-6 {
                break;
            }
            w = (MAX_PANEL_PHASE / r).min(0.5 * w);
        }
        s = if hi - (s + w) < 1e-12 { hi } else { s + w };
        breaks.push(s);
    }
    breaks
}

fn gl_over(breaks: &[f64], f: impl Fn(f64) -> Complex64) -> Complex64 {
    breaks
        .windows(2)
        .map(|w| gl_panels(&f, w[0], w[1], 1))
        .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
}

/// `e^{πy/2} K_{σ+iy}(2a)` for `y ≥ 0` from the deformed contour: real tails
/// beyond `±A`, vertical segments at `±A`, and the segment `Im t = π/2`,
/// where the factor `e^{−πy/2}` is explicit.
fn scaled_upper(sigma: f64, y: f64, a: f64) -> Complex64 {
    let mu = Complex64::new(sigma, y);
    let two_a = 2.0 * a;
    let big_a = if y > two_a { (y / two_a).acosh() + 1.0 } else { 1.0 }.max(2.0);
    let lift = FRAC_PI_2 * y;
    let i = Complex64::new(0.0, 1.0);

    // Middle: ∫_{−A}^{A} e^{μs + iσπ/2 − 2ai sinh s} ds.
    let rot = Complex64::from_polar(1.0, FRAC_PI_2 * sigma);
    let middle_rate = |lo: f64, hi: f64| {
        let d = |s: f64| (y - two_a * s.cosh()).abs();
        let mut m = d(lo).max(d(hi));
        if lo < 0.0 && hi > 0.0 {
            m = m.max(d(0.0));
        }
        m + sigma.abs()
    };
    let middle_breaks = phase_breaks(-big_a, big_a, 0.5, middle_rate);
    let middle = gl_over(&middle_breaks, |s| {
        rot * Complex64::new(sigma * s, y * s - two_a * s.sinh()).exp()
    });

    // Vertical pieces t = ±A + iφ, φ ∈ [0, π/2], with e^{πy/2} folded in.
    let vertical_rate = |_: f64, _: f64| two_a * big_a.cosh() + y + sigma.abs();
    let vbreaks = phase_breaks(0.0, FRAC_PI_2, 0.25, vertical_rate);
    let g = |t: Complex64| (mu * t - two_a * t.cosh() + lift).exp();
    // The real part of the exponent is convex in φ, so a panel whose two
    // endpoints are negligible can be dropped.
    let vertical = |side: f64| {
        let expo = |phi: f64| side * sigma * big_a - y * phi - two_a * big_a.cosh() * phi.cos() + lift;
        vbreaks
            .windows(2)
            .filter(|w| expo(w[0]).max(expo(w[1])) > -VERTICAL_CUTOFF)
            .map(|w| gl_panels(|phi| g(Complex64::new(side * big_a, phi)) * i, w[0], w[1], 1))
            .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
    };
    let left = vertical(-1.0);
    let right = vertical(1.0);

    // Tails on the real axis: ∫_A^∞ e^{±μt − 2a cosh t + πy/2} dt.
    let start = two_a * big_a.cosh();
    let mut end = big_a;
    while two_a * end.cosh() - start - sigma.abs() * (end - big_a) < TAIL_EFOLDS {
        end += 0.05;
    }
    let tail_rate = |_: f64, hi: f64| y + two_a * hi.sinh() / 4.0 + sigma.abs();
    let tbreaks = phase_breaks(big_a, end, 0.25, tail_rate);
    let tail_right = gl_over(&tbreaks, |t| (mu * t - two_a * t.cosh() + lift).exp());
    let tail_left = gl_over(&tbreaks, |t| (-mu * t - two_a * t.cosh() + lift).exp());

    0.5 * (tail_left + left + middle - right + tail_right)
}

/// `e^{π|y|/2} K_μ(2a)` by contour deformation; free of the cancellation of
/// the real-axis integral for large `|Im μ|`.
pub fn macdonald_k_scaled(mu: Complex64, a: f64) -> Result<ScaledK> {
    check_x(a)?;
    if !(mu.re.abs() <= SCALED_MAX_RE) {
        return Err(Error::OutOfRange {
            what: "Re μ",
            value: mu.re,
            range: "[-3, 3]",
        });
    }
    if !(mu.im.abs() <= SCALED_MAX_IM) {
        return Err(Error::OutOfRange {
            what: "Im μ",
            value: mu.im,
            range: "[-120, 120]",
        });
    }
    let v = scaled_upper(mu.re, mu.im.abs(), a);
    Ok(ScaledK {
        mu,
        two_a: 2.0 * a,
        scaled_value: if mu.im < 0.0 { v.conj() } else { v },
        log_scale: FRAC_PI_2 * mu.im.abs(),
    })
}

/// Pólya's `𝔊(z, a) = ∫ e^{−a(e^u + e^{−u}) + zu} du = 2 K_z(2a)`, scaled.
pub fn polya_g(z: Complex64, a: f64) -> Result<ScaledK> {
    let mut k = macdonald_k_scaled(z, a)?;
    k.scaled_value *= 2.0;
    Ok(k)
}

/// `y log(y/a) − y − π/4`.
pub fn polya_phase(y: f64, a: f64) -> f64 {
    y * (y / a).ln() - y - FRAC_PI_4
}

/// Stationary-phase main term of `e^{πy/2} K_{σ+iy}(2a)`:
/// `√(π/2y) e^{iπσ/2} [(y/a)^σ e^{iΦ} + (y/a)^{−σ} e^{−iΦ}]`.
pub fn polya_asymptotic(sigma: f64, y: f64, a: f64) -> Result<Complex64> {
    check_x(a)?;
    if !(sigma.abs() <= 1.0) {
        return Err(Error::OutOfRange {
            what: "σ",
            value: sigma,
            range: "[-1, 1]",
        });
    }
    if !(y >= 5.0) {
        return Err(Error::OutOfRange {
            what: "y",
            value: y,
            range: "[5, ∞)",
        });
    }
    let phi = polya_phase(y, a);
    let r = (y / a).powf(sigma);
    let bracket = Complex64::from_polar(r, phi) + Complex64::from_polar(1.0 / r, -phi);
    Ok((PI / (2.0 * y)).sqrt() * Complex64::from_polar(1.0, FRAC_PI_2 * sigma) * bracket)
}

/// Size of the main term, `√(π/2y) ((y/a)^σ + (y/a)^{−σ})`; the natural
/// scale for relative errors of the oscillating estimate.
pub fn polya_envelope(sigma: f64, y: f64, a: f64) -> f64 {
    let r = (y / a).powf(sigma);
    (PI / (2.0 * y)).sqrt() * (r + 1.0 / r)
}

/// Relative residuals of the two recurrences at `(μ, x)`:
/// `(2μ/x)K_μ = K_{μ+1} − K_{μ−1}` and `−2K′_μ = K_{μ+1} + K_{μ−1}`, the
/// derivative taken by a five-point stencil.
pub fn recurrence_residuals(mu: Complex64, x: f64) -> Result<(f64, f64)> {
    let k = |m: Complex64, x: f64| macdonald_k(m, x);
    let k0 = k(mu, x)?;
    let kp = k(mu + 1.0, x)?;
    let km = k(mu - 1.0, x)?;
    let scale = kp.norm() + km.norm();
    let rec = (2.0 * mu / x * k0 - kp + km).norm() / scale;
    let h = 1e-3 * x.max(1.0);
    let d = (k(mu, x - 2.0 * h)? - 8.0 * k(mu, x - h)? + 8.0 * k(mu, x + h)? - k(mu, x + 2.0 * h)?) / (12.0 * h);
    let der = (-2.0 * d - kp - km).norm() / scale;
    Ok((rec, der))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn half_order_closed_form() {
        let want = (PI / 4.0).sqrt() * (-2.0f64).exp();
        assert!((macdonald_k(c(0.5, 0.0), 2.0).unwrap().re - want).abs() < 1e-14);
        assert!((want - 0.119_937_7).abs() < 1e-7);
        let s = macdonald_k_scaled(c(0.5, 0.0), 1.0).unwrap();
        assert!((s.value() - want).norm() < 1e-13);
    }

    #[test]
    fn even_in_order() {
        let a = macdonald_k(c(-0.3, 0.0), 1.7).unwrap();
        let b = macdonald_k(c(0.3, 0.0), 1.7).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn recurrence_at_complex_order() {
        let (rec, der) = recurrence_residuals(c(0.7, 0.4), 2.5).unwrap();
        assert!(rec < 1e-12 && der < 1e-10, "{rec} {der}");
    }

    #[test]
    fn routes_agree() {
        for (sigma, y, a) in [(0.0, 3.0, 1.0), (0.5, 7.5, 0.5), (-1.2, 10.0, PI), (2.25, 9.0, PI), (0.0, 0.0, 2.0)] {
            let direct = macdonald_k(c(sigma, y), 2.0 * a).unwrap();
            let scaled = macdonald_k_scaled(c(sigma, y), a).unwrap().value();
            assert!((direct - scaled).norm() < 1e-10 * direct.norm(), "{sigma} {y} {a}: {direct} {scaled}");
        }
    }

    #[test]
    fn imaginary_order_is_real() {
        for y in [1.0, 17.0, 60.0, 119.0] {
            let s = macdonald_k_scaled(c(0.0, y), PI).unwrap().scaled_value;
            assert!(s.im.abs() < 1e-10 * s.norm().max(1e-3), "y={y}: {s}");
        }
    }

    #[test]
    fn asymptotic_main_term() {
        // The main term drops a phase a²/y, so its error is of that order;
        // restoring the phase leaves an O(1/y²) remainder.
        let a = PI;
        for y in [20.0, 30.0, 40.0, 60.0, 100.0] {
            let k = macdonald_k_scaled(c(0.0, y), a).unwrap().scaled_value;
            let p = polya_asymptotic(0.0, y, a).unwrap();
            let env = polya_envelope(0.0, y, a);
            let rel = (k - p).norm() / env;
            assert!(rel < (a * a + 1.0) / y, "y={y}: {rel}");
            let shifted = env * (polya_phase(y, a) + a * a / y).cos();
            let rel = (k.re - shifted).abs() / env;
            assert!(rel < 20.0 / (y * y), "y={y}: {rel}");
        }
        let p = polya_asymptotic(0.6, 12.0, 1.0).unwrap();
        let q = polya_asymptotic(-0.6, 12.0, 1.0).unwrap();
        assert!((p.norm() - q.norm()).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(macdonald_k(c(0.0, 1.0), 0.0).is_err());
        assert!(macdonald_k(c(0.0, 16.0), 1.0).is_err());
        assert!(macdonald_k_scaled(c(3.5, 1.0), 1.0).is_err());
        assert!(macdonald_k_scaled(c(0.0, 121.0), 1.0).is_err());
    }
}
