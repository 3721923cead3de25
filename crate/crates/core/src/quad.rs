//! Tanh-sinh (double exponential) quadrature at extended precision.
//!
//! Serves as the independent integration route for moments, orthogonality
//! inner products and the Stieltjes integral representation. The change of
//! variable x = tanh((pi/2) sinh(t)) clusters nodes double-exponentially at
//! the endpoints, so analytic integrands converge at roughly one digit per
//! node doubling and algebraic endpoint singularities are harmless.
//!
//! Nothing here touches the series-based special functions; agreement
//! between the two routes is meaningful evidence, not circularity.

use rug::Float;

use crate::error::{Error, Result};
use crate::prec::{ExtReal, PrecisionContext};

/// Guard bits added on top of the context precision for nodes and
/// accumulation.
const GUARD_BITS: u32 = 64;

/// Fixed tanh-sinh node/weight table for an interval, reusable across many
/// integrands on the same interval.
///
/// Nodes and weights cover the union of levels up to `level` (step
/// h = 2^-level), truncated where the weights underflow the working
/// precision.
#[derive(Debug, Clone)]
pub struct TanhSinhGrid {
    nodes: Vec<ExtReal>,
    weights: Vec<ExtReal>,
    level: u32,
    prec: u32,
}

impl TanhSinhGrid {
    /// Build the grid for [a, b] at the given refinement level.
    pub fn new(a: &ExtReal, b: &ExtReal, level: u32, ctx: &PrecisionContext) -> Self {
        let prec = ctx.bits() + GUARD_BITS;
        let center = Float::with_val(prec, &(a + b).0) / 2u32;
        let radius = Float::with_val(prec, &(b - a).0) / 2u32;
        let pi_half = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;

        // cap |t| so that tanh((pi/2) sinh t) stays strictly inside (-1, 1)
        // at working precision; nodes that round onto an endpoint would feed
        // endpoint singularities
        let t_max = (Float::with_val(prec, 2u32).ln() * (prec - 8) / 2u32 / &pi_half).asinh();

        let h = Float::with_val(prec, 1u32) >> level;
        let steps = (t_max.to_f64() / h.to_f64()).ceil() as i64;

        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for j in -steps..=steps {
            let t = Float::with_val(prec, j) * &h;
            let arg = Float::with_val(prec, t.clone().sinh() * &pi_half);
            let x = arg.clone().tanh();
            // w = h * (pi/2) cosh(t) / cosh^2((pi/2) sinh(t))
            let w = Float::with_val(prec, t.cosh() * &pi_half * &h) / arg.cosh().square();
            if w.is_zero() {
                continue;
            }
            let node = Float::with_val(prec, &center + &radius * x);
            if node == (a.0) || node == (b.0) {
                continue;
            }
            nodes.push(ExtReal(node));
            weights.push(ExtReal(w * &radius));
        }
        Self {
            nodes,
            weights,
            level,
            prec,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[ExtReal] {
        &self.nodes
    }

    pub fn weights(&self) -> &[ExtReal] {
        &self.weights
    }

    /// Apply the rule to an integrand.
    pub fn apply<F: Fn(&ExtReal) -> ExtReal>(&self, f: F) -> ExtReal {
        let mut acc = ExtReal(Float::new(self.prec));
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(x) * w;
        }
        acc
    }
}

/// Integrate `f` over [a, b], doubling the node density until two successive
/// levels agree to `ctx.series_tol()` relative.
///
/// Errors when the maximum refinement level is reached without convergence.
/// Integrands with endpoint singularities saturate before the full working
/// precision; integrate them through [`tanh_sinh_with_tol`] and an explicit
/// target instead.
pub fn tanh_sinh<F: Fn(&ExtReal) -> ExtReal>(
    f: F,
    a: &ExtReal,
    b: &ExtReal,
    ctx: &PrecisionContext,
) -> Result<ExtReal> {
    tanh_sinh_with_tol(f, a, b, &ctx.series_tol(), ctx)
}

/// [`tanh_sinh`] with an explicit relative convergence target.
pub fn tanh_sinh_with_tol<F: Fn(&ExtReal) -> ExtReal>(
    f: F,
    a: &ExtReal,
    b: &ExtReal,
    tol: &ExtReal,
    ctx: &PrecisionContext,
) -> Result<ExtReal> {
    let max_level = 14;
    let mut prev: Option<ExtReal> = None;
    for level in 4..=max_level {
        let grid = TanhSinhGrid::new(a, b, level, ctx);
        let val = grid.apply(&f);
        if let Some(p) = prev {
            let diff = (&val - &p).abs();
            if diff <= tol * val.abs() {
                return Ok(val.at_prec(ctx.bits()));
            }
        }
        prev = Some(val);
    }
    Err(Error::Convergence {
        max_terms: 1 << max_level,
        last_term: prev.map(|p| p.to_f64()).unwrap_or(f64::NAN),
    })
}
