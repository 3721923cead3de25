//! Seeded, configurable invariant suite.
//!
//! Bundles the identity and consistency checks that hold across the whole
//! family: moment recurrences, Hankel positivity, cross-route agreement of
//! the recurrence coefficients, the nonlinear difference identities, the
//! differential-difference identities on a seeded random grid, zero
//! location, interlacing, and the electrostatic equilibrium. The CLI
//! `verify` subcommand runs this suite and the test targets reuse it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::moments::{check_moment_expstep, check_moment_recurrence, MomentTable};
use crate::polyeval;
use crate::prec::{ExtReal, PrecisionContext};
use crate::recurrence::{
    check_fifth_order, check_laguerre_freud, gamma_from_moments, gamma_laguerre_freud,
};
use crate::zeros;

/// Parameters of one verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Truncation half-widths to test at (decimal strings keep the grid
    /// reproducible independent of binary precision).
    pub z_values: Vec<String>,
    /// Largest polynomial degree exercised.
    pub n_max: usize,
    /// Seed for the randomized (n, x) grids.
    pub seed: u64,
    /// Random samples per differential-difference identity and z.
    pub samples: usize,
    /// Normalized residual tolerance for identity checks; `None` takes
    /// 1e-20 (the residuals themselves sit far below at 256 bits).
    pub tol_identity: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            z_values: vec!["0.5".into(), "1".into(), "2".into()],
            n_max: 15,
            seed: 7,
            samples: 50,
            tol_identity: None,
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst observed quantity and where it occurred.
    pub detail: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>, detail: String) -> Self {
        Self {
            name: name.into(),
            passed: true,
            detail,
        }
    }

    fn fail(name: impl Into<String>, detail: String) -> Self {
        Self {
            name: name.into(),
            passed: false,
            detail,
        }
    }
}

struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: String::from("-"),
        }
    }

    fn update(&mut self, magnitude: &ExtReal, at: String) {
        let m = magnitude.abs().to_f64();
        if m > self.value {
            self.value = m;
            self.at = at;
        }
    }

    fn against(&self, tol: f64, name: &str) -> CheckResult {
        let detail = format!("worst {:.3e} at {} (tol {:.1e})", self.value, self.at, tol);
        if self.value <= tol {
            CheckResult::pass(name, detail)
        } else {
            CheckResult::fail(name, detail)
        }
    }
}

/// Run the full suite; results carry one line per check.
pub fn run_suite(cfg: &VerifyConfig, ctx: &PrecisionContext) -> Result<Vec<CheckResult>> {
    let tol = cfg.tol_identity.unwrap_or(1e-20);
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut w_moment = Worst::new();
    let mut w_expstep = Worst::new();
    let mut hankel_ok = true;
    let mut hankel_detail = String::from("all leading minors positive");
    let mut w_cross = Worst::new();
    let mut w_lf = Worst::new();
    let mut w_fifth = Worst::new();
    let mut w_structure = Worst::new();
    let mut w_ladder = Worst::new();
    let mut w_compat = Worst::new();
    let mut w_raising = Worst::new();
    let mut w_holonomic = Worst::new();
    let mut w_boundary = Worst::new();
    let mut w_equilibrium = Worst::new();
    let mut w_lambda = Worst::new();
    let mut zeros_ok = true;
    let mut zeros_detail = String::from("inside (-z, z), interlacing, polish < 1e-15");

    for zs in &cfg.z_values {
        let z = ctx.real_from_str(zs)?;
        let n_max = cfg.n_max.max(6);
        let seq = gamma_from_moments(&z, n_max + 4, ctx)?;
        let lf = gamma_laguerre_freud(&z, n_max + 4, ctx)?;

        // moment recurrences, tracked as residual over contract bound
        let table = MomentTable::from_series(&z, n_max + 8, ctx)?;
        for r in check_moment_recurrence(&table)? {
            let rel = if r.bound.is_zero() {
                r.residual.clone()
            } else {
                &r.residual / &r.bound
            };
            w_moment.update(&rel, format!("z={zs} n={}", r.n));
        }
        for n in 0..=n_max.min(20) {
            let r = check_moment_expstep(&table, n)?;
            let u = table.get(2 * n)?;
            w_expstep.update(&(&r / u), format!("z={zs} n={n}"));
        }

        // Hankel positivity through LDLT pivots, sizes up to 12
        if let Some(bad) = hankel_first_nonpositive(&table, 12)? {
            hankel_ok = false;
            hankel_detail = format!("non-positive minor of size {bad} at z={zs}");
        }

        // cross-route agreement
        let upto = n_max.min(lf.max_n()).min(seq.max_n());
        for n in 1..=upto {
            let a = seq.gamma(n)?;
            let b = lf.gamma(n)?;
            w_cross.update(&((a - b) / a), format!("z={zs} n={n}"));
        }

        // nonlinear difference identities on both routes
        for (route, s) in [("gram", &seq), ("lf", &lf)] {
            for r in check_laguerre_freud(s) {
                w_lf.update(&r.residual, format!("z={zs} {route} n={}", r.n));
            }
            for r in check_fifth_order(s) {
                w_fifth.update(&r.residual, format!("z={zs} {route} n={}", r.n));
            }
        }

        // subleading-coefficient bridge against explicit coefficient vectors
        for n in 2..=n_max.min(12) {
            let lam = polyeval::lambda_coefficient(n, &seq)?;
            let coeff = subleading_from_vectors(n, &seq)?;
            w_lambda.update(&((&lam - &coeff) / &lam), format!("z={zs} n={n}"));
        }

        // differential-difference identities on a seeded grid
        for _ in 0..cfg.samples {
            let n = rng.random_range(1..=n_max);
            let x = ctx.real(rng.random_range(-0.95..0.95)) * &z;
            let at = format!("z={zs} n={n} x={:.4}", x.to_f64());
            let r = polyeval::check_structure(n, &x, &seq)?;
            w_structure.update(&r, at.clone());
            let (rl, rc) = polyeval::ladder_check(n, &x, &seq)?;
            w_ladder.update(&rl, at.clone());
            w_compat.update(&rc, at.clone());
            if n >= 2 {
                let rr = polyeval::raising_check(n, &x, &seq)?;
                w_raising.update(&rr, at.clone());
            }
            match polyeval::holonomic_residual(n, &x, &seq) {
                Ok(rh) => w_holonomic.update(&rh, at.clone()),
                Err(crate::Error::Pole(_)) => {} // sampled a charge location
                Err(e) => return Err(e),
            }
        }

        // boundary identities for every degree
        for n in 1..=n_max {
            let (rp, rs) = polyeval::boundary_identities(n, &seq)?;
            w_boundary.update(&rp, format!("z={zs} n={n} (product)"));
            w_boundary.update(&rs, format!("z={zs} n={n} (square)"));
        }

        // zeros: location, symmetry, interlacing, polish, equilibrium
        let mut prev: Option<zeros::ZeroSet> = None;
        for n in 1..=n_max {
            let zset = zeros::zeros(n, &seq)?;
            for x in zset.all() {
                if !(x.abs() < z) {
                    zeros_ok = false;
                    zeros_detail = format!("zero outside (-z, z) at z={zs} n={n}");
                }
            }
            if zset.max_polish_move() >= &ctx.real(1e-15) {
                zeros_ok = false;
                zeros_detail = format!("polish moved more than 1e-15 at z={zs} n={n}");
            }
            if let Some(p) = &prev {
                for k in 0..p.all().len() {
                    if !(p.all()[k] > zset.all()[k] && p.all()[k] < zset.all()[k + 1]) {
                        zeros_ok = false;
                        zeros_detail = format!("interlacing broken at z={zs} n={n} k={k}");
                    }
                }
            }
            for r in zeros::equilibrium_residual(&zset, &seq)? {
                w_equilibrium.update(&r, format!("z={zs} n={n}"));
            }
            prev = Some(zset);
        }
    }

    out.push(w_moment.against(1.0, "moment recurrence (residual over bound)"));
    out.push(w_expstep.against(1e-40, "moment exp-step identity"));
    out.push(if hankel_ok {
        CheckResult::pass("hankel positivity", hankel_detail)
    } else {
        CheckResult::fail("hankel positivity", hankel_detail)
    });
    out.push(w_cross.against(1e-25, "cross-route gamma agreement"));
    out.push(w_lf.against(tol, "laguerre-freud identity"));
    out.push(w_fifth.against(tol, "fifth-order identity"));
    out.push(w_lambda.against(1e-25, "subleading coefficient bridge"));
    out.push(w_structure.against(tol, "structure relation"));
    out.push(w_ladder.against(tol, "ladder lowering"));
    out.push(w_compat.against(tol, "ladder compatibility"));
    out.push(w_raising.against(tol, "ladder raising"));
    out.push(w_holonomic.against(tol, "holonomic equation"));
    out.push(w_boundary.against(tol, "boundary identities"));
    out.push(w_equilibrium.against(1e-20, "electrostatic equilibrium"));
    out.push(if zeros_ok {
        CheckResult::pass("zero location and interlacing", zeros_detail)
    } else {
        CheckResult::fail("zero location and interlacing", zeros_detail)
    });
    Ok(out)
}

/// Smallest matrix size (1-based) whose leading principal minor of the
/// Hankel moment matrix fails to be positive, or None when all pivots up to
/// `max_size` are positive. Uses LDLT pivots: positive definiteness of every
/// leading block is equivalent to positive pivots.
fn hankel_first_nonpositive(table: &MomentTable, max_size: usize) -> Result<Option<usize>> {
    let ctx = table.ctx();
    let size = max_size.min(table.len().saturating_sub(0));
    // H[i][j] = u_{i+j}; odd entries vanish
    let at = |i: usize, j: usize| -> Result<ExtReal> {
        if (i + j) % 2 == 1 {
            Ok(ctx.zero())
        } else {
            Ok(table.get(i + j)?.clone())
        }
    };
    let mut a: Vec<Vec<ExtReal>> = Vec::with_capacity(size);
    for i in 0..size {
        let mut row = Vec::with_capacity(size);
        for j in 0..size {
            row.push(at(i, j)?);
        }
        a.push(row);
    }
    for k in 0..size {
        if !a[k][k].is_positive() {
            return Ok(Some(k + 1));
        }
        for i in k + 1..size {
            let factor = &a[i][k] / &a[k][k];
            for j in k..size {
                let sub = &factor * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    Ok(None)
}

/// Subleading coefficient of the monic polynomial built explicitly from the
/// recurrence, for the bridge check against the telescoped sum.
fn subleading_from_vectors(n: usize, seq: &crate::GammaSequence) -> Result<ExtReal> {
    let ctx = seq.ctx();
    let mut prev = vec![ctx.one()];
    let mut cur = vec![ctx.zero(), ctx.one()];
    for k in 1..n {
        let mut next = vec![ctx.zero(); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] = c.clone();
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= seq.gamma(k)? * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur[n - 2].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let ctx = PrecisionContext::standard();
        let cfg = VerifyConfig {
            z_values: vec!["1".into()],
            n_max: 8,
            seed: 7,
            samples: 10,
            tol_identity: None,
        };
        let results = run_suite(&cfg, &ctx).unwrap();
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn identical_seeds_reproduce_details() {
        let ctx = PrecisionContext::standard();
        let cfg = VerifyConfig {
            z_values: vec!["0.5".into()],
            n_max: 6,
            seed: 11,
            samples: 5,
            tol_identity: None,
        };
        let a = run_suite(&cfg, &ctx).unwrap();
        let b = run_suite(&cfg, &ctx).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.detail, y.detail);
        }
    }
}
