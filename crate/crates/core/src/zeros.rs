//! Zeros of P_n(x;z), their electrostatic model, and their motion in z.
//!
//! Zeros are eigenvalues of the symmetric Jacobi matrix with zero diagonal
//! and off-diagonal entries sqrt(gamma_k). Sturm-sequence bisection brackets
//! each eigenvalue with guaranteed ordering, a single Newton step against
//! the recurrence evaluator ties the result to the polynomial itself, and
//! the exact +/- symmetry of the spectrum is enforced by construction
//! (negative zeros mirror positive ones; odd degrees own an exact zero at
//! the origin).

use crate::error::{Error, Result};
use crate::polyeval::{self, LadderCoefficients};
use crate::prec::{cmp_finite, scale_of, ExtReal, PrecisionContext};
use crate::recurrence::{gamma_from_moments, GammaSequence};

/// Symmetric tridiagonal realization of the three-term recurrence: zero
/// diagonal, off-diagonal sqrt(gamma_1) .. sqrt(gamma_{n-1}).
#[derive(Debug, Clone)]
pub struct JacobiMatrix {
    n: usize,
    off: Vec<ExtReal>,
}

impl JacobiMatrix {
    /// Build the n-by-n matrix from a coefficient sequence.
    pub fn from_sequence(n: usize, seq: &GammaSequence) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("matrix size must be positive".into()));
        }
        let mut off = Vec::with_capacity(n.saturating_sub(1));
        for k in 1..n {
            let gamma_k = seq.gamma(k)?;
            if !gamma_k.is_positive() {
                return Err(Error::PositivityLoss { index: k });
            }
            off.push(gamma_k.sqrt());
        }
        Ok(Self { n, off })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn off_diagonal(&self) -> &[ExtReal] {
        &self.off
    }

    /// Number of eigenvalues strictly below `lambda` (Sturm count via the
    /// LDLT pivot signs).
    pub fn count_below(&self, lambda: &ExtReal, ctx: &PrecisionContext) -> usize {
        let guard = ctx.two_pow(-2 * i64::from(ctx.bits()));
        let mut count = 0usize;
        let mut q = -lambda.clone();
        if q.is_negative() {
            count += 1;
        }
        for e in &self.off {
            let mut safe = q.clone();
            if safe.abs() < guard {
                safe = if safe.is_negative() { -&guard } else { guard.clone() };
            }
            q = -lambda - e.square() / safe;
            if q.is_negative() {
                count += 1;
            }
        }
        count
    }

    /// Upper bound on the spectral radius (Gershgorin).
    pub fn spectral_bound(&self, ctx: &PrecisionContext) -> ExtReal {
        let mut best = ctx.zero();
        for i in 0..self.n {
            let mut row = ctx.zero();
            if i > 0 {
                row += self.off[i - 1].abs();
            }
            if i < self.n - 1 {
                row += self.off[i].abs();
            }
            if row > best {
                best = row;
            }
        }
        best + ctx.one()
    }
}

/// Ordered zeros x_{n,1} < ... < x_{n,n} of P_n at one z.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    n: usize,
    z: ExtReal,
    xs: Vec<ExtReal>,
    max_polish_move: ExtReal,
}

impl ZeroSet {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn z(&self) -> &ExtReal {
        &self.z
    }

    /// Zeros in ascending order.
    pub fn all(&self) -> &[ExtReal] {
        &self.xs
    }

    /// k-th zero, 1-based ascending (x_{n,k}).
    pub fn get(&self, k: usize) -> Result<&ExtReal> {
        if k == 0 || k > self.n {
            return Err(Error::IndexRange {
                index: k,
                max: self.n,
            });
        }
        Ok(&self.xs[k - 1])
    }

    /// Largest displacement the Newton polish applied to any bisection
    /// eigenvalue.
    pub fn max_polish_move(&self) -> &ExtReal {
        &self.max_polish_move
    }
}

/// All zeros of P_n via Sturm bisection on the Jacobi matrix, one Newton
/// polish per zero, and exact symmetrization.
pub fn zeros(n: usize, seq: &GammaSequence) -> Result<ZeroSet> {
    let ctx = seq.ctx().clone();
    if n == 0 {
        return Ok(ZeroSet {
            n,
            z: seq.z().clone(),
            xs: Vec::new(),
            max_polish_move: ctx.zero(),
        });
    }
    let jm = JacobiMatrix::from_sequence(n, seq)?;
    let hi0 = jm.spectral_bound(&ctx);
    let eps = ctx.two_pow(-(i64::from(ctx.bits()) - 8)) * &hi0;

    // spectrum is symmetric about 0; bisect only the positive half
    let positive_count = n / 2;
    let mut positive = Vec::with_capacity(positive_count);
    for j in 0..positive_count {
        // eigenvalue with ascending index n - positive_count + j
        let target = n - positive_count + j;
        let mut lo = ctx.zero();
        let mut hi = hi0.clone();
        loop {
            let width = &hi - &lo;
            if width <= eps {
                break;
            }
            let mid = (&lo + &hi) / 2u32;
            if jm.count_below(&mid, &ctx) > target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        positive.push((&lo + &hi) / 2u32);
    }

    // one Newton step against the recurrence evaluator per zero
    let mut max_move = ctx.zero();
    for x in positive.iter_mut() {
        let pe = polyeval::eval(n, x, seq)?;
        if pe.dvalue.is_zero() {
            continue;
        }
        let step = pe.value / pe.dvalue;
        let moved = step.abs();
        if moved > max_move {
            max_move = moved;
        }
        *x = &*x - step;
    }
    positive.sort_by(cmp_finite);

    let mut xs = Vec::with_capacity(n);
    for x in positive.iter().rev() {
        xs.push(-x);
    }
    if n % 2 == 1 {
        xs.push(ctx.zero());
    }
    xs.extend(positive);

    Ok(ZeroSet {
        n,
        z: seq.z().clone(),
        xs,
        max_polish_move: max_move,
    })
}

/// Fixed charge locations of the electrostatic model: the degree-four
/// factor A_n(x) = x^4 + b_n x^2 + c_n splits into a real pair +/- eta and a
/// purely imaginary pair +/- i zeta:
///
/// ```text
/// eta  = sqrt((sqrt(b_n^2 - 4 c_n) - b_n)/2),
/// zeta = sqrt((sqrt(b_n^2 - 4 c_n) + b_n)/2).
/// ```
#[derive(Debug, Clone)]
pub struct ElectrostaticModel {
    n: usize,
    z: ExtReal,
    eta: ExtReal,
    zeta_im: ExtReal,
    ladder: LadderCoefficients,
}

impl ElectrostaticModel {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn z(&self) -> &ExtReal {
        &self.z
    }

    /// Positive real charge location eta_1 (eta_2 = -eta_1).
    pub fn eta(&self) -> &ExtReal {
        &self.eta
    }

    /// Imaginary part of zeta_1 = i * zeta_im (zeta_2 = -zeta_1).
    pub fn zeta_im(&self) -> &ExtReal {
        &self.zeta_im
    }

    pub fn ladder(&self) -> &LadderCoefficients {
        &self.ladder
    }

    /// A_n evaluated on the real axis.
    pub fn a_at(&self, x: &ExtReal) -> ExtReal {
        self.ladder.a_at(x)
    }

    /// A_n evaluated at a purely imaginary argument i*y (real-valued there).
    pub fn a_at_imag(&self, y: &ExtReal) -> ExtReal {
        y.powi(4) - &self.ladder.b * y.square() + &self.ladder.c
    }
}

/// Locate the four fixed charges for degree n. Errors with a structure
/// violation when the radicands do not produce one real and one imaginary
/// pair.
pub fn electrostatic_points(n: usize, seq: &GammaSequence) -> Result<ElectrostaticModel> {
    if n == 0 {
        return Err(Error::Domain("model defined for n >= 1".into()));
    }
    let ladder = polyeval::ladder_coefficients(n, seq)?;
    let disc2 = ladder.b.square() - &ladder.c * 4u32;
    if !disc2.is_positive() {
        return Err(Error::StructureViolation {
            n,
            what: format!("b^2 - 4c = {disc2} is not positive; zeros form a complex quartet"),
        });
    }
    let disc = disc2.sqrt();
    let eta2 = (&disc - &ladder.b) / 2u32;
    if !eta2.is_positive() {
        return Err(Error::StructureViolation {
            n,
            what: format!("eta radicand {eta2} is not positive; no real pair"),
        });
    }
    let zeta2 = (&disc + &ladder.b) / 2u32;
    if !zeta2.is_positive() {
        return Err(Error::StructureViolation {
            n,
            what: format!("zeta radicand {zeta2} is not positive; no imaginary pair"),
        });
    }
    Ok(ElectrostaticModel {
        n,
        z: seq.z().clone(),
        eta: eta2.sqrt(),
        zeta_im: zeta2.sqrt(),
        ladder,
    })
}

/// Normalized gradient residuals of the electrostatic equilibrium at each
/// zero x_k:
///
/// ```text
/// SUM_{j != k} 2/(x_k - x_j) - 4 x_k^3 - A_n'(x_k)/A_n(x_k)
///                            + phi'(x_k)/phi(x_k),
/// ```
///
/// which is the force balance for n unit charges in the external potential
/// x^4 + ln|A_n| - ln|phi|.
pub fn equilibrium_residual(zs: &ZeroSet, seq: &GammaSequence) -> Result<Vec<ExtReal>> {
    let n = zs.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let ctx = seq.ctx();
    let z = seq.z();
    let ladder = polyeval::ladder_coefficients(n, seq)?;
    let mut out = Vec::with_capacity(n);
    for (k, xk) in zs.all().iter().enumerate() {
        // accumulate mirror partners together: x_j and -x_j contribute exact
        // negations at the middle zero, and pairing them keeps the rounding
        // of the sum at the size of the net value rather than the terms
        let mut pair_sum = ctx.zero();
        let mut pair_scale = ctx.zero();
        let term = |j: usize| ctx.int(2) / (xk - &zs.all()[j]);
        for j in 0..=(n - 1) / 2 {
            let m = n - 1 - j;
            if j == m {
                if j != k {
                    let t = term(j);
                    pair_scale += t.abs();
                    pair_sum += t;
                }
            } else if k == j {
                let t = term(m);
                pair_scale += t.abs();
                pair_sum += t;
            } else if k == m {
                let t = term(j);
                pair_scale += t.abs();
                pair_sum += t;
            } else {
                let t = term(j);
                let u = term(m);
                pair_scale += t.abs() + u.abs();
                pair_sum += t + u;
            }
        }
        let cubic = xk.powi(3) * 4u32;
        let a_term = ladder.da_at(xk) / ladder.a_at(xk);
        let phi_term = if xk.is_zero() {
            ctx.zero()
        } else {
            xk * 2u32 / (xk.square() - z.square())
        };
        let residual = &pair_sum - &cubic - &a_term + &phi_term;
        let scale = scale_of(&[&pair_scale, &cubic, &a_term, &phi_term]);
        out.push(if scale.is_zero() {
            residual
        } else {
            residual / scale
        });
    }
    Ok(out)
}

/// Total external potential V_n(x;z) = x^4 + ln|A_n(x)| - ln|phi(x)| with
/// its long-range (x^4) and short-range (logarithmic) split.
#[derive(Debug, Clone)]
pub struct PotentialValue {
    pub total: ExtReal,
    pub v_long: ExtReal,
    pub v_short: ExtReal,
}

/// Evaluate the external potential away from its logarithmic poles at
/// +/- z and +/- eta.
pub fn potential_value(x: &ExtReal, n: usize, seq: &GammaSequence) -> Result<PotentialValue> {
    let ctx = seq.ctx();
    let z = seq.z();
    let model = electrostatic_points(n, seq)?;
    let floor = ctx.two_pow(-i64::from(ctx.bits() / 2));
    let phi = x.square() - z.square();
    if phi.abs() <= &floor * z.square().max(&x.square()) {
        return Err(Error::Pole(format!("potential pole at x = {x} (support endpoint)")));
    }
    let a = model.a_at(x);
    let a_scale = x.powi(4) + model.ladder.b.abs() * x.square() + model.ladder.c.abs();
    if a.abs() <= &floor * a_scale {
        return Err(Error::Pole(format!("potential pole at x = {x} (charge location)")));
    }
    let v_long = x.powi(4);
    let v_short = a.abs().ln() - phi.abs().ln();
    Ok(PotentialValue {
        total: &v_long + &v_short,
        v_long,
        v_short,
    })
}

/// Motion of the k-th zero (1-based, ascending) under the flow
///
/// ```text
/// dx/dz = (x/z) * A_n(z;z) / A_n(x;z),
/// ```
///
/// integrated by fixed-step classical RK4 from z0 to z1. Coefficients are
/// rebuilt from the moment route at every stage z (accuracy over speed).
/// Returns the sampled trajectory including both endpoints.
pub fn zero_dynamics_trace(
    n: usize,
    k: usize,
    z0: &ExtReal,
    z1: &ExtReal,
    steps: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<(ExtReal, ExtReal)>> {
    if k == 0 || k > n {
        return Err(Error::IndexRange { index: k, max: n });
    }
    if !z0.is_positive() || z1 <= z0 {
        return Err(Error::Domain(format!(
            "need 0 < z0 < z1, got z0 = {z0}, z1 = {z1}"
        )));
    }
    if steps == 0 {
        return Err(Error::Domain("need at least one step".into()));
    }

    let seq0 = gamma_from_moments(z0, n + 2, ctx)?;
    let mut x = zeros(n, &seq0)?.get(k)?.clone();
    let h = (z1 - z0) / steps as i64;
    let floor = ctx.two_pow(-i64::from(ctx.bits() / 2));

    let velocity = |x: &ExtReal, z: &ExtReal| -> Result<ExtReal> {
        let seq = gamma_from_moments(z, n + 2, ctx)?;
        let ladder = polyeval::ladder_coefficients(n, &seq)?;
        let denom = ladder.a_at(x);
        let scale = x.powi(4) + ladder.b.abs() * x.square() + ladder.c.abs();
        if denom.abs() <= &floor * scale {
            return Err(Error::Singularity {
                z: z.to_f64(),
                what: format!("A_{n}(x;z) vanished at x = {x}"),
            });
        }
        Ok(x / z * ladder.a_at(z) / denom)
    };

    let mut out = Vec::with_capacity(steps + 1);
    let mut z = z0.clone();
    out.push((z.clone(), x.clone()));
    let half = ctx.frac(1, 2);
    for _ in 0..steps {
        let z_mid = &z + &h * &half;
        let z_end = &z + &h;
        let k1 = velocity(&x, &z)?;
        let k2 = velocity(&(&x + &h * &k1 * &half), &z_mid)?;
        let k3 = velocity(&(&x + &h * &k2 * &half), &z_mid)?;
        let k4 = velocity(&(&x + &h * &k3), &z_end)?;
        x = &x + &h * (k1 + k2 * 2u32 + k3 * 2u32 + k4) / 6u32;
        z = z_end;
        out.push((z.clone(), x.clone()));
    }
    Ok(out)
}

/// Second-kind Chebyshev limit of the k-th zero: z cos(k pi / (n+1)).
///
/// The cosine form descends in k while zero sets ascend; comparators should
/// sort both sides.
pub fn chebyshev_limit(n: usize, k: usize, z: &ExtReal, ctx: &PrecisionContext) -> Result<ExtReal> {
    if k == 0 || k > n {
        return Err(Error::IndexRange { index: k, max: n });
    }
    let angle = ctx.pi() * k as i64 / (n as i64 + 1);
    Ok(z * angle.cos())
}
