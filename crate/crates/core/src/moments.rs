//! Moments of the truncated quartic weight and the Stieltjes function.
//!
//! The even moments are incomplete gamma values,
//!
//! ```text
//! u_{2n}(z) = 2 INT_0^z x^(2n) e^(-x^4) dx = (1/2) iglo((2n+1)/4, z^4),
//! ```
//!
//! and all odd moments vanish by symmetry. Moments are always generated
//! directly from the incomplete-gamma series (or, for cross-checks, from
//! tanh-sinh quadrature), never by forward iteration of their four-term
//! recurrence; that recurrence
//!
//! ```text
//! 4 u_{2n+6} - 4 z^2 u_{2n+4} - (2n+3) u_{2n+2} + (2n+1) z^2 u_{2n} = 0
//! ```
//!
//! is demoted to a validation identity, as is the two-step form
//! 4 u_{2n+4} = (2n+1) u_{2n} - 2 z^(2n+1) e^(-z^4).

use crate::error::{Error, Result};
use crate::prec::{scale_of, ExtReal, PrecisionContext};
use crate::quad;
use crate::specfun;

/// How a moment table was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentSource {
    /// Incomplete-gamma series route.
    Series,
    /// Tanh-sinh quadrature route.
    Oracle,
}

/// Even moments u_0, u_2, ..., u_{2N} of the weight at one fixed z.
#[derive(Debug, Clone)]
pub struct MomentTable {
    z: ExtReal,
    even: Vec<ExtReal>,
    source: MomentSource,
    ctx: PrecisionContext,
}

impl MomentTable {
    /// Build u_0..u_{2n_max} from the incomplete-gamma series.
    pub fn from_series(z: &ExtReal, n_max: usize, ctx: &PrecisionContext) -> Result<Self> {
        if !z.is_positive() {
            return Err(Error::Domain(format!("moments require z > 0, got {z}")));
        }
        let even = (0..=n_max)
            .map(|n| moment(2 * n, z, ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            z: z.clone(),
            even,
            source: MomentSource::Series,
            ctx: ctx.clone(),
        })
    }

    /// Build u_0..u_{2n_max} by tanh-sinh quadrature of 2 INT_0^z x^(2n) e^(-x^4) dx.
    ///
    /// One fixed node table serves every order, so the cost is a single grid
    /// construction plus one dot product per moment.
    pub fn from_quadrature(z: &ExtReal, n_max: usize, ctx: &PrecisionContext) -> Result<Self> {
        if !z.is_positive() {
            return Err(Error::Domain(format!("moments require z > 0, got {z}")));
        }
        let grid = quad::TanhSinhGrid::new(&ctx.zero(), z, 10, ctx);
        let even = (0..=n_max)
            .map(|n| grid.apply(|x| x.powi(2 * n as i32) * (-x.powi(4)).exp()) * 2u32)
            .map(|v| v.at_prec(ctx.bits()))
            .collect();
        Ok(Self {
            z: z.clone(),
            even,
            source: MomentSource::Oracle,
            ctx: ctx.clone(),
        })
    }

    /// Assemble a table from externally supplied even moments.
    ///
    /// No identity is enforced here; [`check_moment_recurrence`] is the
    /// validator, and tests feed it deliberately perturbed tables.
    pub fn from_parts(
        z: &ExtReal,
        even: Vec<ExtReal>,
        source: MomentSource,
        ctx: &PrecisionContext,
    ) -> Self {
        Self {
            z: z.clone(),
            even,
            source,
            ctx: ctx.clone(),
        }
    }

    pub fn z(&self) -> &ExtReal {
        &self.z
    }

    pub fn source(&self) -> MomentSource {
        self.source
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    /// Number of stored even moments (orders 0, 2, ..., 2(len-1)).
    pub fn len(&self) -> usize {
        self.even.len()
    }

    pub fn is_empty(&self) -> bool {
        self.even.is_empty()
    }

    /// Moment of (even) order `order`.
    pub fn get(&self, order: usize) -> Result<&ExtReal> {
        if order % 2 != 0 {
            return Err(Error::Domain(format!(
                "moment table stores even orders only, asked for {order}"
            )));
        }
        self.even.get(order / 2).ok_or(Error::InsufficientTable {
            needed: order / 2 + 1,
            have: self.even.len(),
        })
    }

    /// All stored even moments in order.
    pub fn even_moments(&self) -> &[ExtReal] {
        &self.even
    }
}

/// Moment u_n(z); zero for odd n, (1/2) iglo((n+1)/4, z^4) for even n.
pub fn moment(n: usize, z: &ExtReal, ctx: &PrecisionContext) -> Result<ExtReal> {
    if !z.is_positive() {
        return Err(Error::Domain(format!("moment requires z > 0, got {z}")));
    }
    if n % 2 == 1 {
        return Ok(ctx.zero());
    }
    let a = ctx.frac(n as i64 + 1, 4);
    let x = z.powi(4);
    Ok(specfun::lower_incomplete_gamma(&a, &x, ctx)? / 2u32)
}

/// Derivative of u_n with respect to the truncation half-width:
/// d/dz u_n(z) = 2 z^n e^(-z^4). Rejects odd n.
pub fn moment_z_derivative(n: usize, z: &ExtReal, ctx: &PrecisionContext) -> Result<ExtReal> {
    if n % 2 == 1 {
        return Err(Error::Domain(format!(
            "z-derivative defined for even moments, got n = {n}"
        )));
    }
    if !z.is_positive() {
        return Err(Error::Domain(format!("requires z > 0, got {z}")));
    }
    let _ = ctx;
    Ok(z.powi(n as i32) * (-z.powi(4)).exp() * 2u32)
}

/// One row of the moment-recurrence check.
#[derive(Debug, Clone)]
pub struct MomentResidual {
    pub n: usize,
    /// 4 u_{2n+6} - 4 z^2 u_{2n+4} - (2n+3) u_{2n+2} + (2n+1) z^2 u_{2n}
    pub residual: ExtReal,
    /// 10 * series_tol * (largest contributing term)
    pub bound: ExtReal,
    pub ok: bool,
}

/// Residuals of the four-term moment recurrence over every n the table
/// supports. Requires at least four even moments.
pub fn check_moment_recurrence(table: &MomentTable) -> Result<Vec<MomentResidual>> {
    if table.len() < 4 {
        return Err(Error::InsufficientTable {
            needed: 4,
            have: table.len(),
        });
    }
    let z2 = table.z().square();
    let tol = table.ctx().series_tol() * 10u32;
    let mut out = Vec::with_capacity(table.len() - 3);
    for n in 0..=table.len() - 4 {
        let u0 = &table.even_moments()[n];
        let u2 = &table.even_moments()[n + 1];
        let u4 = &table.even_moments()[n + 2];
        let u6 = &table.even_moments()[n + 3];
        let k = 2 * n as i64;
        let t1 = u6 * 4u32;
        let t2 = &z2 * u4 * 4u32;
        let t3 = u2 * (k + 3);
        let t4 = &z2 * u0 * (k + 1);
        let residual = &t1 - &t2 - &t3 + &t4;
        let bound = &tol * scale_of(&[&t1, &t2, &t3, &t4]);
        let ok = residual.abs() <= bound;
        out.push(MomentResidual {
            n,
            residual,
            bound,
            ok,
        });
    }
    Ok(out)
}

/// Residual of the two-step identity 4 u_{2n+4} - (2n+1) u_{2n} + 2 z^(2n+1) e^(-z^4),
/// which pins the even moments against a pure exponential term.
pub fn check_moment_expstep(table: &MomentTable, n: usize) -> Result<ExtReal> {
    let u_n = table.get(2 * n)?;
    let u_n4 = table.get(2 * n + 4)?;
    let z = table.z();
    let e = (-z.powi(4)).exp();
    Ok(u_n4 * 4u32 - u_n * (2 * n as i64 + 1) + z.powi(2 * n as i32 + 1) * e * 2u32)
}

/// K-term asymptotic value of the moment ratio u_{2n}(z) / u^F_{2n}, where
/// u^F_{2n} = Gamma((2n+1)/4) / 2 is the full-line moment:
///
/// ```text
/// u_{2n}/u^F_{2n} ~ 1 - e^(-z^4) SUM_{k=0}^{K} z^(2(n-2k)-3) / Gamma((2n+1)/4 - k).
/// ```
///
/// A term whose gamma argument is non-positive terminates the sum at the
/// previous term, and each kept term must be smaller than its predecessor
/// (the asymptotic regime); otherwise the call errors.
pub fn freud_moment_ratio(
    n: usize,
    z: &ExtReal,
    k_max: usize,
    ctx: &PrecisionContext,
) -> Result<ExtReal> {
    if !z.is_positive() {
        return Err(Error::Domain(format!("requires z > 0, got {z}")));
    }
    let mut sum = ctx.zero();
    let mut prev_mag: Option<ExtReal> = None;
    for k in 0..=k_max {
        let a = ctx.frac(2 * n as i64 + 1, 4) - ctx.int(k as i64);
        if !a.is_positive() {
            break;
        }
        let g = specfun::complete_gamma(&a, ctx)?;
        let term = z.powi(2 * (n as i32 - 2 * k as i32) - 3) / g;
        let mag = term.abs();
        if let Some(p) = &prev_mag {
            if &mag >= p {
                return Err(Error::Domain(format!(
                    "asymptotic tail not decreasing at k = {k} for z = {z}"
                )));
            }
        }
        prev_mag = Some(mag);
        sum += term;
    }
    Ok(ctx.one() - (-z.powi(4)).exp() * sum)
}

/// Magnitude of the first term the ratio expansion leaves out, used as the
/// error yardstick in tests.
pub fn freud_moment_ratio_omitted(
    n: usize,
    z: &ExtReal,
    k_max: usize,
    ctx: &PrecisionContext,
) -> Option<ExtReal> {
    // find the first k not summed: either the gamma argument turned
    // non-positive before k_max, or k_max + 1
    let mut stop = k_max + 1;
    for k in 0..=k_max {
        let a = ctx.frac(2 * n as i64 + 1, 4) - ctx.int(k as i64);
        if !a.is_positive() {
            stop = k;
            break;
        }
    }
    let a = ctx.frac(2 * n as i64 + 1, 4) - ctx.int(stop as i64);
    let g = specfun::gamma_any(&a).ok()?;
    let term = z.powi(2 * (n as i32 - 2 * stop as i32) - 3) / g;
    Some((term * (-z.powi(4)).exp()).abs())
}

/// Truncated Stieltjes series S(t;z) = SUM_{n<N} u_{2n} / t^(2n+1), valid in
/// the regime |t| >= 2z where the tail is geometric with ratio <= 1/4.
#[derive(Debug, Clone)]
pub struct StieltjesTruncation {
    z: ExtReal,
    n_terms: usize,
    even: Vec<ExtReal>,
    ctx: PrecisionContext,
}

impl StieltjesTruncation {
    /// Prepare `n_terms` series coefficients at the given z (z = 0 yields the
    /// empty-support series, identically zero).
    pub fn new(z: &ExtReal, n_terms: usize, ctx: &PrecisionContext) -> Result<Self> {
        if z.is_negative() {
            return Err(Error::Domain(format!("requires z >= 0, got {z}")));
        }
        if n_terms == 0 {
            return Err(Error::Domain("need at least one series term".into()));
        }
        let even = if z.is_zero() {
            vec![ctx.zero(); n_terms + 2]
        } else {
            MomentTable::from_series(z, n_terms + 1, ctx)?
                .even_moments()
                .to_vec()
        };
        Ok(Self {
            z: z.clone(),
            n_terms,
            even,
            ctx: ctx.clone(),
        })
    }

    pub fn z(&self) -> &ExtReal {
        &self.z
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    /// Series coefficients u_0, u_2, ... backing this truncation.
    pub fn coefficients(&self) -> &[ExtReal] {
        &self.even
    }

    /// Last kept term evaluated on the boundary |t| = 2z of the working
    /// regime; the truncation is Cauchy there once this falls below the
    /// series tolerance relative to the value.
    pub fn boundary_tail_term(&self) -> ExtReal {
        if self.z.is_zero() {
            return self.ctx.zero();
        }
        let t = &self.z * 2u32;
        let n = self.n_terms - 1;
        (&self.even[n] / t.powi(2 * n as i32 + 1)).abs()
    }

    fn check_regime(&self, t: &ExtReal) -> Result<()> {
        if t.abs() < &self.z * 2u32 {
            return Err(Error::SeriesDivergence(format!(
                "|t| = {} is inside 2z = {}; series truncation unreliable there",
                t.abs(),
                &self.z * 2u32
            )));
        }
        Ok(())
    }

    /// Value of the truncated series at t.
    pub fn value(&self, t: &ExtReal) -> Result<ExtReal> {
        self.check_regime(t)?;
        let mut acc = self.ctx.zero();
        let t2 = t.square();
        // Horner from the top power
        for n in (0..self.n_terms).rev() {
            acc = acc / &t2 + &self.even[n];
        }
        Ok(acc / t)
    }

    /// Term-wise t-derivative of the truncated series.
    pub fn deriv_t(&self, t: &ExtReal) -> Result<ExtReal> {
        self.check_regime(t)?;
        let mut acc = self.ctx.zero();
        let t2 = t.square();
        for n in (0..self.n_terms).rev() {
            acc = acc / &t2 + &self.even[n] * (2 * n as i64 + 1);
        }
        Ok(-acc / t2)
    }

    /// Term-wise z-derivative, using d/dz u_{2n} = 2 z^(2n) e^(-z^4).
    pub fn deriv_z(&self, t: &ExtReal) -> Result<ExtReal> {
        self.check_regime(t)?;
        if self.z.is_zero() {
            return Ok(self.ctx.zero());
        }
        let mut acc = self.ctx.zero();
        let t2 = t.square();
        let z2 = self.z.square();
        for _ in 0..self.n_terms {
            acc = acc / &t2 * &z2 + self.ctx.one();
        }
        Ok(acc / t * (-self.z.powi(4)).exp() * 2u32)
    }
}

/// Value of the truncated Stieltjes series at `t`.
pub fn stieltjes_value(t: &ExtReal, trunc: &StieltjesTruncation) -> Result<ExtReal> {
    trunc.value(t)
}

/// Residuals of the two first-order ODEs satisfied by the Stieltjes function,
/// evaluated on the truncated series with `n_terms` coefficients.
///
/// In t, with phi = t^2 - z^2 and psi = 4t^3 phi - 2t:
///
/// ```text
/// r_t = phi dS/dt + (phi' + psi) S
///       - [ u_0 (4 t^2 phi - 1) + 4 u_2 phi + 4 u_4 ],
/// ```
///
/// and in z:
///
/// ```text
/// r_z = phi dS/dz - 2 t e^(-z^4).
/// ```
///
/// Both vanish up to the series truncation; the natural comparison scale is
/// 100 times the geometric tail bound from [`stieltjes_tail_bound`].
pub fn stieltjes_ode_residuals(
    t: &ExtReal,
    z: &ExtReal,
    n_terms: usize,
    ctx: &PrecisionContext,
) -> Result<(ExtReal, ExtReal)> {
    let trunc = StieltjesTruncation::new(z, n_terms, ctx)?;
    if z.is_zero() {
        return Ok((ctx.zero(), ctx.zero()));
    }
    let s = trunc.value(t)?;
    let st = trunc.deriv_t(t)?;
    let sz = trunc.deriv_z(t)?;
    let phi = t.square() - z.square();
    let psi = t.powi(3) * &phi * 4u32 - t * 2u32;
    let phi_prime = t * 2u32;

    let u0 = &trunc.even[0];
    let u2 = &trunc.even[1];
    let u4 = &trunc.even[2];
    let rhs = u0 * (t.square() * &phi * 4u32 - 1u32) + u2 * &phi * 4u32 + u4 * 4u32;
    let r_t = &phi * st + (phi_prime + psi) * s - rhs;
    let r_z = &phi * sz - t * (-z.powi(4)).exp() * 2u32;
    Ok((r_t, r_z))
}

/// Geometric tail bound for the truncated series at |t| >= 2z, scaled by the
/// largest coefficient magnitude appearing in the t-ODE.
pub fn stieltjes_tail_bound(t: &ExtReal, trunc: &StieltjesTruncation) -> Result<ExtReal> {
    trunc.check_regime(t)?;
    if trunc.z.is_zero() {
        return Ok(trunc.ctx.zero());
    }
    let n = trunc.n_terms - 1;
    let ratio = (trunc.z.square() / t.square()).abs();
    let tail_s =
        (&trunc.even[n + 1] / t.powi(2 * n as i32 + 3)).abs() / (trunc.ctx.one() - ratio);
    // the ODE multiplies S by phi' + psi ~ 4 t^5
    Ok(tail_s * t.powi(5).abs() * 4u32)
}
