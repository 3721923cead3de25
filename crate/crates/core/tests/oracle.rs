//! Quadrature cross-checks: every series-built quantity that has an
//! integral form is re-derived here by tanh-sinh quadrature, which shares
//! no code with the incomplete-gamma series path.

use truncfreud::moments::{moment, MomentTable};
use truncfreud::polyeval::{self, lambda_coefficient};
use truncfreud::prec::{ExtReal, PrecisionContext};
use truncfreud::quad::TanhSinhGrid;
use truncfreud::recurrence::gamma_from_moments;

fn ctx256() -> PrecisionContext {
    PrecisionContext::standard()
}

/// Accumulate INT_0^z x^(2n) e^(-x^4) dx for all n <= n_max in one sweep of
/// a fixed grid: per node, walk the powers with a running x^2.
fn even_moments_by_quadrature(
    z: &ExtReal,
    n_max: usize,
    level: u32,
    ctx: &PrecisionContext,
) -> Vec<ExtReal> {
    let grid = TanhSinhGrid::new(&ctx.zero(), z, level, ctx);
    let mut sums = vec![ctx.zero(); n_max + 1];
    for (x, w) in grid.nodes().iter().zip(grid.weights()) {
        let weighted = (-x.powi(4)).exp() * w;
        let x2 = x.square();
        let mut power = weighted.clone();
        for sum in sums.iter_mut() {
            *sum += &power;
            power = power * &x2;
        }
    }
    sums.into_iter().map(|s| s * 2u32).collect()
}

#[test]
fn series_moments_match_quadrature_to_1e30() {
    let ctx = ctx256();
    for zs in ["0.2", "0.5", "1", "1.5", "2.5"] {
        let z = ctx.real_from_str(zs).unwrap();
        let by_quad = even_moments_by_quadrature(&z, 40, 11, &ctx);
        for (n, want) in by_quad.iter().enumerate() {
            let got = moment(2 * n, &z, &ctx).unwrap();
            let rel = ((&got - want) / want).abs();
            assert!(
                rel < ctx.real(1e-30),
                "z = {zs}, n = {n}: relative {rel}"
            );
        }
    }
}

#[test]
fn quadrature_moment_table_agrees_with_series_table() {
    let ctx = ctx256();
    let z = ctx.real_from_str("1.3").unwrap();
    let series = MomentTable::from_series(&z, 12, &ctx).unwrap();
    let oracle = MomentTable::from_quadrature(&z, 12, &ctx).unwrap();
    for n in 0..=12 {
        let a = series.get(2 * n).unwrap();
        let b = oracle.get(2 * n).unwrap();
        let rel = ((a - b) / a).abs();
        assert!(rel < ctx.real(1e-40), "n = {n}: {rel}");
    }
}

#[test]
fn orthogonality_by_quadrature() {
    // <u, P_n P_m> vanishes off the diagonal and equals h_n on it
    let ctx = ctx256();
    let z = ctx.one();
    let n_top = 10usize;
    let seq = gamma_from_moments(&z, n_top + 1, &ctx).unwrap();
    let grid = TanhSinhGrid::new(&(-&z), &z, 11, &ctx);

    let mut inner = vec![vec![ctx.zero(); n_top + 1]; n_top + 1];
    for (x, w) in grid.nodes().iter().zip(grid.weights()) {
        let weighted = (-x.powi(4)).exp() * w;
        // all P_0..P_{n_top} at this node in one recurrence pass
        let mut values = Vec::with_capacity(n_top + 1);
        values.push(ctx.one());
        values.push(x.clone());
        for k in 1..n_top {
            let next = x * &values[k] - seq.gamma(k).unwrap() * &values[k - 1];
            values.push(next);
        }
        for n in 0..=n_top {
            for m in n..=n_top {
                inner[n][m] += &values[n] * &values[m] * &weighted;
            }
        }
    }

    for n in 0..=n_top {
        let h_n = seq.h(n).unwrap();
        let diag_rel = ((&inner[n][n] - h_n) / h_n).abs();
        assert!(diag_rel < ctx.real(1e-25), "diagonal n = {n}: {diag_rel}");
        for m in n + 1..=n_top {
            let scale = (seq.h(n).unwrap() * seq.h(m).unwrap()).sqrt();
            let off = (&inner[n][m] / scale).abs();
            assert!(off < ctx.real(1e-28), "off-diagonal ({n},{m}): {off}");
        }
    }
}

#[test]
fn derivative_expansion_drops_two_degrees() {
    // P_n' - n P_{n-1} expanded in the P-basis has no components on P_{n-1}
    // and P_{n-2}, and its P_{n-3} component is -(n gamma_{n-1} + 2 lambda_{n,n-2})
    let ctx = ctx256();
    let z = ctx.one();
    let seq = gamma_from_moments(&z, 12, &ctx).unwrap();
    let grid = TanhSinhGrid::new(&(-&z), &z, 11, &ctx);

    for n in [5usize, 8] {
        let mut comps = vec![ctx.zero(); n]; // components on P_0..P_{n-1}
        for (x, w) in grid.nodes().iter().zip(grid.weights()) {
            let weighted = (-x.powi(4)).exp() * w;
            let mut values = Vec::with_capacity(n + 1);
            values.push(ctx.one());
            values.push(x.clone());
            for k in 1..n {
                let next = x * &values[k] - seq.gamma(k).unwrap() * &values[k - 1];
                values.push(next);
            }
            let pe = polyeval::eval(n, x, &seq).unwrap();
            let rem = pe.dvalue - &values[n - 1] * n as i64;
            for (k, comp) in comps.iter_mut().enumerate() {
                *comp += &rem * &values[k] * &weighted;
            }
        }
        for (k, comp) in comps.iter_mut().enumerate() {
            *comp = &*comp / seq.h(k).unwrap();
        }
        let scale = ctx.int(n as i64); // leading coefficient of P_n'
        assert!(
            (&comps[n - 1] / &scale).abs() < ctx.real(1e-28),
            "n = {n}: P_(n-1) component {}",
            comps[n - 1]
        );
        assert!(
            (&comps[n - 2] / &scale).abs() < ctx.real(1e-28),
            "n = {n}: P_(n-2) component {}",
            comps[n - 2]
        );
        let want = -(seq.gamma(n - 1).unwrap() * n as i64
            + lambda_coefficient(n, &seq).unwrap() * 2u32);
        let rel = ((&comps[n - 3] - &want) / &want).abs();
        assert!(rel < ctx.real(1e-25), "n = {n}: P_(n-3) component off by {rel}");
    }
}

#[test]
fn gram_route_gamma_two_matches_init_formula() {
    // the closed form (u_4 u_0 - u_2^2)/(u_0 u_2) and the pairing route give
    // the same gamma_2
    let ctx = ctx256();
    let z = ctx.one();
    let (_, g2) = truncfreud::recurrence::gamma_init(&z, &ctx).unwrap();
    let seq = gamma_from_moments(&z, 4, &ctx).unwrap();
    let rel = ((seq.gamma(2).unwrap() - &g2) / &g2).abs();
    assert!(rel < ctx.real(1e-30), "rel = {rel}");
}
