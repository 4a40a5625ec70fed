//! Gauss–Legendre rules and Legendre polynomials on the reference interval
//! `[-1, 1]`.

use crate::real::Real;

/// Evaluates `P_0(s) .. P_{out.len()-1}(s)` by the three-term recurrence.
pub fn legendre_all<T: Real>(s: T, out: &mut [T]) {
    if out.is_empty() {
        return;
    }
    out[0] = T::one();
    if out.len() > 1 {
        out[1] = s;
    }
    for m in 1..out.len().saturating_sub(1) {
        let mf = T::from_usize(m);
        out[m + 1] = ((mf + mf + T::one()) * s * out[m] - mf * out[m - 1]) / (mf + T::one());
    }
}

/// `P_m(s)` for a single degree.
pub fn legendre<T: Real>(m: usize, s: T) -> T {
    let mut buf = vec![T::zero(); m + 1];
    legendre_all(s, &mut buf);
    buf[m]
}

/// `P_n(x)` and `P_n'(x)` in f64, used only while building node tables.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for m in 1..n {
        let m = m as f64;
        let p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`; exact for polynomials of
/// degree `2n - 1`. Nodes are ascending and exactly antisymmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a quadrature rule needs at least one node");
        if n == 1 {
            return Self { nodes: vec![T::zero()], weights: vec![T::from_f64(2.0)] };
        }
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        for i in 0..n / 2 {
            // Newton from the Tricomi-style initial guess converges to the
            // i-th largest root.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..20 {
                let (p, dp) = legendre_with_derivative(n, x);
                x -= p / dp;
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            let (_, dp) = legendre_with_derivative(n, 0.0);
            nodes[n / 2] = 0.0;
            weights[n / 2] = 2.0 / (dp * dp);
        }
        Self {
            nodes: nodes.into_iter().map(T::from_f64).collect(),
            weights: weights.into_iter().map(T::from_f64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `(node, weight)` pairs mapped onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) * T::from_f64(0.5);
        let mid = a + half;
        self.nodes.iter().zip(&self.weights).map(move |(&s, &w)| (mid + half * s, half * w))
    }

    pub fn integrate(&self, a: T, b: T, f: impl Fn(T) -> T) -> T {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}
