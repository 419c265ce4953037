//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

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
// Gauss weights for the odd-indexed Kronrod nodes
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

pub const NODES_PER_PANEL: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_nodes: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_nodes: 10_000,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    Panel {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).abs(),
    }
}

/// Integrates `f` over `[a, b]`, bisecting the panel with the largest error
/// until the summed error meets the tolerance. Exceeding `max_nodes`
/// function evaluations is an error.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, settings: Settings) -> Result<Estimate> {
    let first = kronrod(&f, a, b);
    let mut nodes = NODES_PER_PANEL;
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::from([first]);
    loop {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature {
                nodes,
                estimate: value,
                error,
            });
        }
        if error <= settings.abs_tol.max(settings.rel_tol * value.abs()) {
            return Ok(Estimate {
                value,
                error,
                nodes,
            });
        }
        if nodes + 2 * NODES_PER_PANEL > settings.max_nodes {
            return Err(Error::Quadrature {
                nodes,
                estimate: value,
                error,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        nodes += 2 * NODES_PER_PANEL;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // resum to keep cancellation drift out of the running totals
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let e = integrate(|x| x.powi(9) - 3.0 * x * x, 0.0, 2.0, Settings::default()).unwrap();
        assert_relative_eq!(e.value, 102.4 - 8.0, epsilon = 1e-12);
        assert_eq!(e.nodes, 15);
    }

    #[test]
    fn peaked_integrand_converges() {
        // ∫_{-1}^{1} 1/(x² + 1e-4) dx = 2·100·atan(100)
        let e = integrate(|x| 1.0 / (x * x + 1e-4), -1.0, 1.0, Settings::default()).unwrap();
        assert_relative_eq!(e.value, 200.0 * 100f64.atan(), max_relative = 1e-11);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let s = Settings {
            max_nodes: 60,
            ..Settings::default()
        };
        let r = integrate(|x: f64| 1.0 / x.abs().sqrt(), -1.0, 1.0, s);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
