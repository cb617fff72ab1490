//! Scalar quadrature rules on real parameter intervals with complex
//! integrands: adaptive Gauss-Kronrod, tanh-sinh and exp-sinh.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::complexmath::C64;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub(crate) struct QuadResult {
    pub value: C64,
    pub err: f64,
    /// Integral of `|f|`, the scale used by relative tolerances.
    pub abs: f64,
    pub evals: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: C64,
    err: f64,
    abs: f64,
}

fn gk15<F: FnMut(f64) -> C64>(f: &mut F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        rk += (f1 + f2) * WGK[j];
        abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            rg += (f1 + f2) * WG[j / 2];
        }
    }
    let value = rk * h;
    let err = ((rk - rg) * h).norm();
    Panel { a, b, value, err, abs: abs * h.abs() }
}

/// Adaptive G7K15 on `[a, b]`, bisecting the worst panel until the summed
/// error estimate is at most `tol` times the integral of `|f|`.
pub(crate) fn gauss_kronrod<F: FnMut(f64) -> C64>(mut f: F, a: f64, b: f64, tol: f64, max_panels: usize) -> Result<QuadResult> {
    let mut panels: Vec<Panel> = Vec::new();
    panels.push(gk15(&mut f, a, b));
    let mut evals = 15;
    loop {
        let mut value = C64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut abs = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            value += p.value;
            err += p.err;
            abs += p.abs;
            if p.err > panels[worst].err {
                worst = i;
            }
        }
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::QuadratureNonConvergence { err_estimate: f64::INFINITY, panels: panels.len() });
        }
        if err <= tol * abs || err == 0.0 {
            return Ok(QuadResult { value, err, abs, evals });
        }
        if panels.len() >= max_panels {
            return Err(Error::QuadratureNonConvergence { err_estimate: err / abs.max(f64::MIN_POSITIVE), panels: panels.len() });
        }
        let p = panels.swap_remove(worst);
        let m = 0.5 * (p.a + p.b);
        if m <= p.a.min(p.b) || m >= p.a.max(p.b) {
            return Err(Error::QuadratureNonConvergence { err_estimate: err / abs.max(f64::MIN_POSITIVE), panels: panels.len() + 1 });
        }
        panels.push(gk15(&mut f, p.a, m));
        panels.push(gk15(&mut f, m, p.b));
        evals += 30;
    }
}

const MAX_LEVEL: usize = 9;
const T_LIMIT: f64 = 7.0;

/// Double-exponential trapezoid sum over `t` on an automatically chosen
/// range. `node(t)` returns the weighted integrand `f(x(t)) x'(t)`, or
/// `None` when `x(t)` leaves the representable range.
fn de_sum<F: FnMut(f64) -> Option<C64>>(mut node: F, tol: f64) -> Result<QuadResult> {
    de_sum_n(|t| node(t).map(|v| [v]), tol).map(|[r]| r)
}

fn norms<const N: usize>(v: &[C64; N]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// [`de_sum`] for `N` integrands sharing the nodes; convergence is
/// judged on each component against its own scale.
fn de_sum_n<const N: usize, F: FnMut(f64) -> Option<[C64; N]>>(mut node: F, tol: f64) -> Result<[QuadResult; N]> {
    let h0 = 0.5;
    let zero = C64::new(0.0, 0.0);
    let mut evals = 0usize;
    let mut sum = node(0.0).unwrap_or([zero; N]);
    let mut abs = [0.0f64; N];
    for i in 0..N {
        abs[i] = sum[i].norm();
    }
    evals += 1;
    let mut bounds = [0.0f64; 2];
    for (side, sign) in [(0usize, -1.0f64), (1, 1.0)] {
        let mut small = 0;
        let mut k = 1;
        loop {
            let t = sign * k as f64 * h0;
            if t.abs() > T_LIMIT {
                break;
            }
            let Some(v) = node(t) else { break };
            evals += 1;
            for i in 0..N {
                sum[i] += v[i];
                abs[i] += v[i].norm();
            }
            bounds[side] = t;
            if (0..N).all(|i| v[i].norm() <= 1e-20 * abs[i]) {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
            k += 1;
        }
    }
    let mut h = h0;
    let mut est = sum.map(|v| v * h);
    let mut last_rel = f64::INFINITY;
    let mut last_diff = [f64::INFINITY; N];
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut t = bounds[0] + h;
        while t < bounds[1] {
            if let Some(v) = node(t) {
                for i in 0..N {
                    sum[i] += v[i];
                    abs[i] += v[i].norm();
                }
            }
            evals += 1;
            t += 2.0 * h;
        }
        let next = sum.map(|v| v * h);
        let mut diff = [0.0f64; N];
        let mut rel = 0.0f64;
        for i in 0..N {
            diff[i] = (next[i] - est[i]).norm();
            let scale = abs[i] * h;
            if diff[i] > 0.0 {
                rel = rel.max(diff[i] / scale.max(f64::MIN_POSITIVE));
            }
        }
        est = next;
        if est.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) || norms(&est).is_nan() {
            break;
        }
        if level >= 3 && rel <= tol {
            let mut out = [QuadResult { value: zero, err: 0.0, abs: 0.0, evals }; N];
            for i in 0..N {
                out[i] = QuadResult { value: est[i], err: diff[i].min(last_diff[i]), abs: abs[i] * h, evals };
            }
            return Ok(out);
        }
        last_rel = rel;
        last_diff = diff;
    }
    Err(Error::QuadratureNonConvergence { err_estimate: last_rel, panels: evals })
}

/// Integral over `[0, 1]` of a function with possible endpoint
/// singularities. The integrand receives `(x, 1 - x)`, both computed
/// without cancellation.
pub(crate) fn tanh_sinh<F: FnMut(f64, f64) -> C64>(mut f: F, tol: f64) -> Result<QuadResult> {
    de_sum(
        |t| {
            let q = FRAC_PI_2 * libm::sinh(t);
            let x = 1.0 / (1.0 + libm::exp(-2.0 * q));
            let y = 1.0 / (1.0 + libm::exp(2.0 * q));
            if x <= 0.0 || y <= 0.0 || x < 1e-300 || y < 1e-300 {
                return None;
            }
            let e = libm::exp(-2.0 * q.abs());
            let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
            let w = 0.5 * FRAC_PI_2 * libm::cosh(t) * sech2;
            Some(f(x, y) * w)
        },
        tol,
    )
}

/// Integrals over `[0, inf)` via `x = exp(pi/2 sinh t)` of `N`
/// integrands sharing the nodes.
pub(crate) fn exp_sinh<const N: usize, F: FnMut(f64) -> [C64; N]>(mut f: F, tol: f64) -> Result<[QuadResult; N]> {
    de_sum_n(
        |t| {
            let q = FRAC_PI_2 * libm::sinh(t);
            if !(-690.0..=690.0).contains(&q) {
                return None;
            }
            let x = libm::exp(q);
            let w = x * FRAC_PI_2 * libm::cosh(t);
            let v = f(x).map(|v| v * w);
            if v.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                return None;
            }
            Some(v)
        },
        tol,
    )
}
