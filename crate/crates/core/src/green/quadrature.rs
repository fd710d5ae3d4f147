//! Numeric evaluation of the potential kernel from its Fourier integral.

use std::f64::consts::PI;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("quadrature did not converge: last two orders differ by {difference:e} at order {order}")]
    NotConverged { order: usize, difference: f64 },
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

fn one_minus_cos(x: f64) -> f64 {
    let s = (0.5 * x).sin();
    2.0 * s * s
}

/// `(cos mα cos nβ − 1)/(2 − cos α − cos β)` computed without cancellation.
fn integrand(m: f64, n: f64, alpha: f64, beta: f64) -> f64 {
    let a = one_minus_cos(m * alpha);
    let b = one_minus_cos(n * beta);
    let num = a * b - a - b;
    num / (one_minus_cos(alpha) + one_minus_cos(beta))
}

fn tensor_rule(m: f64, n: f64, order: usize) -> f64 {
    let (x, w) = gauss_legendre(order);
    // Split the square along its diagonal and map each triangle from the unit
    // square with the origin blown up (α = πu, β = πuv and the mirror image).
    // The Jacobian π²u cancels the singularity at the origin.
    let mut sum = 0.0;
    for (i, &u) in x.iter().enumerate() {
        let mut inner = 0.0;
        for (j, &v) in x.iter().enumerate() {
            let (a, b) = (PI * u, PI * u * v);
            inner += w[j] * (integrand(m, n, a, b) + integrand(m, n, b, a));
        }
        sum += w[i] * u * inner;
    }
    // π² from the Jacobian against the 1/(2π²) prefactor
    0.5 * sum
}

/// `(1/2π²)∬_{[0,π]²} (cos mα cos nβ − 1)/(2 − cos α − cos β) dα dβ`.
///
/// The order doubles from `quadrature_order` until two successive results agree
/// to `1e-9`, up to order 4096.
pub fn potential_kernel_numeric(m: i64, n: i64, quadrature_order: usize) -> Result<f64, QuadratureError> {
    refine(m, n, quadrature_order, 4096)
}

fn refine(m: i64, n: i64, quadrature_order: usize, max_order: usize) -> Result<f64, QuadratureError> {
    let (mf, nf) = (m as f64, n as f64);
    let mut order = quadrature_order.max(4);
    let mut prev = tensor_rule(mf, nf, order);
    loop {
        let next_order = order * 2;
        let next = tensor_rule(mf, nf, next_order);
        let diff = (next - prev).abs();
        if diff < 1e-9 {
            return Ok(next);
        }
        if next_order >= max_order {
            return Err(QuadratureError::NotConverged {
                order: next_order,
                difference: diff,
            });
        }
        order = next_order;
        prev = next;
    }
}
