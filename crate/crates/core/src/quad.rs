//! Quadrature helpers: adaptive Simpson for smooth integrands and a
//! composite trapezoid rule over uniformly sampled data.

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_rec(&f, a, b, fa, fm, fb, whole, tol, 60)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    // second disjunct: stop at the floating-point floor of the local scale
    if depth == 0
        || delta.abs() <= 15.0 * tol
        || delta.abs() <= 30.0 * f64::EPSILON * (left.abs() + right.abs())
    {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Composite trapezoid rule for samples on a uniform grid with spacing `dx`.
pub fn trapezoid(samples: &[f64], dx: f64) -> f64 {
    let n = samples.len();
    if n < 2 {
        return 0.0;
    }
    let interior: f64 = samples[1..n - 1].iter().sum();
    dx * (0.5 * (samples[0] + samples[n - 1]) + interior)
}
