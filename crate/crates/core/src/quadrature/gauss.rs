use crate::scalar::Real;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussRule<T> {
    pub fn new(k: usize) -> Self {
        let (nodes, weights) = gauss_legendre_rule(k);
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `f` over `[lo, hi]`.
    pub fn integrate<F: Fn(T) -> T>(&self, lo: T, hi: T, f: F) -> T {
        let w = hi - lo;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &wt)| wt * f(lo + w * x))
            .sum::<T>()
            * w
    }
}

/// `k`-point Gauss–Legendre rule mapped to `[0, 1]`; exact for polynomials of
/// degree `<= 2k - 1`. Nodes come from Newton iteration on `P_k`.
pub fn gauss_legendre_rule<T: Real>(k: usize) -> (Vec<T>, Vec<T>) {
    assert!(k >= 2, "Gauss-Legendre rule needs at least 2 nodes");
    let kf = k as f64;
    let mut nodes = vec![T::zero(); k];
    let mut weights = vec![T::zero(); k];
    let half = T::lit(0.5);
    for i in 0..k.div_ceil(2) {
        let mut x = T::lit((std::f64::consts::PI * (i as f64 + 0.75) / (kf + 0.5)).cos());
        let mut deriv = T::one();
        for _ in 0..100 {
            // three-term recurrence for P_k and P_{k-1}
            let mut p0 = T::one();
            let mut p1 = x;
            for j in 2..=k {
                let jf = T::from_count(j);
                let p2 = ((T::lit(2.0) * jf - T::one()) * x * p1 - (jf - T::one()) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            deriv = T::from_count(k) * (x * p1 - p0) / (x * x - T::one());
            let dx = p1 / deriv;
            x = x - dx;
            if dx.abs() <= T::epsilon() {
                break;
            }
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * deriv * deriv);
        // map [-1, 1] -> [0, 1]
        nodes[i] = half * (T::one() - x);
        nodes[k - 1 - i] = half * (T::one() + x);
        weights[i] = half * w;
        weights[k - 1 - i] = half * w;
    }
    (nodes, weights)
}

/// Splits `[lo, hi]` into panels refined dyadically toward the chosen ends.
///
/// With `levels = L` and grading toward `lo` only, the breakpoints are
/// `lo + (hi-lo)·2^{-j}` for `j = 0..=L`. Grading toward both ends splits at
/// the midpoint first.
pub fn graded_panels<T: Real>(
    lo: T,
    hi: T,
    levels: usize,
    toward_lo: bool,
    toward_hi: bool,
) -> Vec<(T, T)> {
    let half = T::lit(0.5);
    match (toward_lo, toward_hi) {
        (false, false) => vec![(lo, hi)],
        (true, true) => {
            let mid = half * (lo + hi);
            let mut panels = graded_panels(lo, mid, levels, true, false);
            panels.extend(graded_panels(mid, hi, levels, false, true));
            panels
        }
        (true, false) => {
            let w = hi - lo;
            let mut cuts: Vec<T> = (1..=levels)
                .rev()
                .map(|j| lo + w * half.powi(j as i32))
                .collect();
            cuts.insert(0, lo);
            cuts.push(hi);
            cuts.windows(2).map(|c| (c[0], c[1])).collect()
        }
        (false, true) => {
            let w = hi - lo;
            let mut cuts: Vec<T> = (1..=levels).map(|j| hi - w * half.powi(j as i32)).collect();
            cuts.insert(0, lo);
            cuts.push(hi);
            cuts.windows(2).map(|c| (c[0], c[1])).collect()
        }
    }
}

/// Applies `rule` on every panel and sums in panel order.
pub fn integrate_panels<T: Real, F: Fn(T) -> T>(panels: &[(T, T)], rule: &GaussRule<T>, f: F) -> T {
    panels.iter().map(|&(a, b)| rule.integrate(a, b, &f)).sum()
}
