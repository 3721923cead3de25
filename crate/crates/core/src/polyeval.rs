//! Evaluation of P_n(x;z) and the differential-difference identities the
//! family satisfies.
//!
//! Values come from the forward three-term recurrence; first and second
//! x-derivatives run in lockstep with it, so differentiation is exact in
//! exact arithmetic and residuals isolate identity errors from
//! differentiation errors. Throughout, phi(x;z) = x^2 - z^2 is the boundary
//! factor of the weight and residuals are normalized by the largest additive
//! term entering them ("scale"), which makes tolerances uniform in n, x
//! and z.

use crate::error::{Error, Result};
use crate::prec::{scale_of, ExtReal, PrecisionContext};
use crate::recurrence::GammaSequence;

/// Value and x-derivative of P_n at one point.
#[derive(Debug, Clone)]
pub struct PolyEval {
    pub n: usize,
    pub x: ExtReal,
    pub value: ExtReal,
    pub dvalue: ExtReal,
}

/// P_n(x), P_n'(x) and P_n''(x) by lockstep differentiation of the
/// recurrence P_{k+1} = x P_k - gamma_k P_{k-1}.
pub(crate) fn eval3(
    n: usize,
    x: &ExtReal,
    seq: &GammaSequence,
) -> Result<(ExtReal, ExtReal, ExtReal)> {
    let ctx = seq.ctx();
    if n > 0 && seq.max_n() < n - 1 {
        return Err(Error::IndexRange {
            index: n,
            max: seq.max_n() + 1,
        });
    }
    let mut p_prev = ctx.one();
    let mut p_cur = x.clone();
    let mut d_prev = ctx.zero();
    let mut d_cur = ctx.one();
    let mut s_prev = ctx.zero();
    let mut s_cur = ctx.zero();
    if n == 0 {
        return Ok((p_prev, d_prev, s_prev));
    }
    for k in 1..n {
        let gamma_k = seq.gamma(k)?;
        let p_next = x * &p_cur - gamma_k * &p_prev;
        let d_next = &p_cur + x * &d_cur - gamma_k * &d_prev;
        let s_next = &d_cur * 2u32 + x * &s_cur - gamma_k * &s_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        d_prev = std::mem::replace(&mut d_cur, d_next);
        s_prev = std::mem::replace(&mut s_cur, s_next);
    }
    Ok((p_cur, d_cur, s_cur))
}

/// Evaluate P_n and its x-derivative at `x`; the z is the one the sequence
/// was built at.
pub fn eval(n: usize, x: &ExtReal, seq: &GammaSequence) -> Result<PolyEval> {
    let (value, dvalue, _) = eval3(n, x, seq)?;
    Ok(PolyEval {
        n,
        x: x.clone(),
        value,
        dvalue,
    })
}

/// Subleading coefficient lambda_{n,n-2} of
/// P_n = x^n + lambda_{n,n-2} x^(n-2) + ..., obtained by telescoping:
/// lambda_{n,n-2} = -(gamma_1 + ... + gamma_{n-1}). Requires n >= 2.
pub fn lambda_coefficient(n: usize, seq: &GammaSequence) -> Result<ExtReal> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "subleading coefficient defined for n >= 2, got {n}"
        )));
    }
    let mut acc = seq.ctx().zero();
    for k in 1..n {
        acc += seq.gamma(k)?;
    }
    Ok(-acc)
}

fn phi(x: &ExtReal, z: &ExtReal) -> ExtReal {
    x.square() - z.square()
}

/// Coefficients of the structure relation
/// phi P_{n+1}' = (n+1) P_{n+2} + B_n P_n + C_n P_{n-2} + D_n P_{n-4}.
#[derive(Debug, Clone)]
pub struct StructureCoefficients {
    pub n: usize,
    pub b: ExtReal,
    pub c: ExtReal,
    pub d: ExtReal,
}

/// Assemble B_n, C_n, D_n from the recurrence coefficients:
///
/// ```text
/// B_n = 4 gamma_{n+1} [ gamma_{n+2}(gamma_{n+3}+gamma_{n+2}+gamma_{n+1}+gamma_n-z^2)
///                     + gamma_{n+1}(gamma_{n+2}+gamma_{n+1}+gamma_n-z^2)
///                     + gamma_n(gamma_{n+1}+gamma_n+gamma_{n-1}-z^2) - 1/2 - n/4 ],
/// C_n = 4 gamma_{n+1} gamma_n gamma_{n-1}
///         (gamma_{n+2}+gamma_{n+1}+gamma_n+gamma_{n-1}+gamma_{n-2}-z^2),
/// D_n = 4 gamma_{n+1} gamma_n gamma_{n-1} gamma_{n-2} gamma_{n-3}.
/// ```
///
/// C_n and D_n vanish for n < 2 and n < 4 through the gamma_0 = 0
/// convention. Needs the sequence through gamma_{n+3}.
pub fn structure_coefficients(n: usize, seq: &GammaSequence) -> Result<StructureCoefficients> {
    if seq.max_n() < n + 3 {
        return Err(Error::IndexRange {
            index: n + 3,
            max: seq.max_n(),
        });
    }
    let ctx = seq.ctx();
    let z2 = seq.z().square();
    let ga = |i: i64| seq.gamma_ext(i).expect("checked range");
    let ni = n as i64;
    let b = (&ga(ni + 2) * (ga(ni + 3) + ga(ni + 2) + ga(ni + 1) + ga(ni) - &z2)
        + &ga(ni + 1) * (ga(ni + 2) + ga(ni + 1) + ga(ni) - &z2)
        + &ga(ni) * (ga(ni + 1) + ga(ni) + ga(ni - 1) - &z2)
        - ctx.frac(1, 2)
        - ctx.frac(ni, 4))
        * ga(ni + 1)
        * 4u32;
    let c = ga(ni + 1)
        * ga(ni)
        * ga(ni - 1)
        * (ga(ni + 2) + ga(ni + 1) + ga(ni) + ga(ni - 1) + ga(ni - 2) - &z2)
        * 4u32;
    let d = ga(ni + 1) * ga(ni) * ga(ni - 1) * ga(ni - 2) * ga(ni - 3) * 4u32;
    Ok(StructureCoefficients { n, b, c, d })
}

/// Normalized residual of the structure relation at one point.
pub fn check_structure(n: usize, x: &ExtReal, seq: &GammaSequence) -> Result<ExtReal> {
    let sc = structure_coefficients(n, seq)?;
    let z = seq.z();
    let dn1 = eval3(n + 1, x, seq)?.1;
    let lhs = phi(x, z) * dn1;
    let t_next = eval3(n + 2, x, seq)?.0 * (n as i64 + 1);
    let t_b = &sc.b * eval3(n, x, seq)?.0;
    let t_c = if n >= 2 {
        &sc.c * eval3(n - 2, x, seq)?.0
    } else {
        seq.ctx().zero()
    };
    let t_d = if n >= 4 {
        &sc.d * eval3(n - 4, x, seq)?.0
    } else {
        seq.ctx().zero()
    };
    let residual = &lhs - &t_next - &t_b - &t_c - &t_d;
    let scale = scale_of(&[&lhs, &t_next, &t_b, &t_c, &t_d]);
    Ok(normalize(residual, scale, seq.ctx()))
}

fn normalize(residual: ExtReal, scale: ExtReal, ctx: &PrecisionContext) -> ExtReal {
    if scale.is_zero() {
        ctx.zero()
    } else {
        residual / scale
    }
}

/// Data of the first-order (ladder) relation
/// phi P_n' = 4 gamma_n A_n P_{n-1} - B_n P_n, with
/// A_n(x) = x^4 + b_n x^2 + c_n monic of degree four and
/// B_n(x) = x [ 4 gamma_n (gamma_{n+1}+gamma_n+gamma_{n-1} + phi) - n ].
#[derive(Debug, Clone)]
pub struct LadderCoefficients {
    pub n: usize,
    /// b_n = gamma_{n+1} + gamma_n - z^2
    pub b: ExtReal,
    /// c_n = gamma_n(gamma_{n+1}+gamma_n+gamma_{n-1}-z^2)
    ///     + gamma_{n+1}(gamma_{n+2}+gamma_{n+1}+gamma_n-z^2) - n/2 - 1/4
    pub c: ExtReal,
    z: ExtReal,
    gamma_n: ExtReal,
    sum3: ExtReal,
}

impl LadderCoefficients {
    /// A_n(x) = x^4 + b_n x^2 + c_n.
    pub fn a_at(&self, x: &ExtReal) -> ExtReal {
        x.powi(4) + &self.b * x.square() + &self.c
    }

    /// dA_n/dx = 4x^3 + 2 b_n x.
    pub fn da_at(&self, x: &ExtReal) -> ExtReal {
        x.powi(3) * 4u32 + &self.b * x * 2u32
    }

    /// B_n(x) = x [ 4 gamma_n (gamma_{n+1}+gamma_n+gamma_{n-1} + phi(x)) - n ].
    pub fn b_script_at(&self, x: &ExtReal) -> ExtReal {
        let inner = &self.gamma_n * (&self.sum3 + phi(x, &self.z)) * 4u32 - self.n as i64;
        x * inner
    }
}

/// Ladder data for index n; needs the sequence through gamma_{n+2}.
pub fn ladder_coefficients(n: usize, seq: &GammaSequence) -> Result<LadderCoefficients> {
    if n < 1 || seq.max_n() < n + 2 {
        return Err(Error::IndexRange {
            index: n + 2,
            max: seq.max_n(),
        });
    }
    let z2 = seq.z().square();
    let ga = |i: i64| seq.gamma_ext(i).expect("checked range");
    let ni = n as i64;
    let b = ga(ni + 1) + ga(ni) - &z2;
    let c = &ga(ni) * (ga(ni + 1) + ga(ni) + ga(ni - 1) - &z2)
        + &ga(ni + 1) * (ga(ni + 2) + ga(ni + 1) + ga(ni) - &z2)
        - seq.ctx().frac(ni, 2)
        - seq.ctx().frac(1, 4);
    Ok(LadderCoefficients {
        n,
        b,
        c,
        z: seq.z().clone(),
        gamma_n: ga(ni),
        sum3: ga(ni + 1) + ga(ni) + ga(ni - 1),
    })
}

/// Normalized residuals of the lowering relation and of the compatibility
/// condition B_n + B_{n+1} = 4x (A_n - x^2 phi) at one point.
pub fn ladder_check(n: usize, x: &ExtReal, seq: &GammaSequence) -> Result<(ExtReal, ExtReal)> {
    let ctx = seq.ctx();
    let z = seq.z();
    let lc = ladder_coefficients(n, seq)?;
    let lc_next = ladder_coefficients(n + 1, seq)?;
    let (p_n, d_n, _) = eval3(n, x, seq)?;
    let p_prev = eval3(n - 1, x, seq)?.0;

    let lhs = phi(x, z) * d_n;
    let t_a = seq.gamma(n)? * lc.a_at(x) * p_prev * 4u32;
    let t_b = lc.b_script_at(x) * p_n;
    let r_lower = &lhs - &t_a + &t_b;
    let r_lower = normalize(r_lower, scale_of(&[&lhs, &t_a, &t_b]), ctx);

    let s1 = lc.b_script_at(x);
    let s2 = lc_next.b_script_at(x);
    let s3 = (lc.a_at(x) - x.square() * phi(x, z)) * x * 4u32;
    let r_compat = &s1 + &s2 - &s3;
    let r_compat = normalize(r_compat, scale_of(&[&s1, &s2, &s3]), ctx);
    Ok((r_lower, r_compat))
}

/// Normalized residual of the raising relation
/// -phi P_{n-1}' + (B_n + 4x^3 phi) P_{n-1} = 4 A_{n-1} P_n.
pub fn raising_check(n: usize, x: &ExtReal, seq: &GammaSequence) -> Result<ExtReal> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "raising relation needs n >= 2, got {n}"
        )));
    }
    let ctx = seq.ctx();
    let z = seq.z();
    let lc = ladder_coefficients(n, seq)?;
    let lc_prev = ladder_coefficients(n - 1, seq)?;
    let (p_prev, d_prev, _) = eval3(n - 1, x, seq)?;
    let p_n = eval3(n, x, seq)?.0;
    let ph = phi(x, z);
    let t1 = -(&ph * d_prev);
    let t2 = (lc.b_script_at(x) + x.powi(3) * &ph * 4u32) * p_prev;
    let t3 = lc_prev.a_at(x) * p_n * 4u32;
    let residual = &t1 + &t2 - &t3;
    Ok(normalize(residual, scale_of(&[&t1, &t2, &t3]), ctx))
}

/// Normalized residual of the second-order holonomic equation
/// P_n'' + R P_n' + S P_n = 0 with rational coefficients
///
/// ```text
/// R = -2x [ (2x^2 phi - 1) A_n + phi (gamma_{n+1}+gamma_n+2x^2-z^2) ] / (phi A_n),
/// S = [ -A_n B_n (B_n + 4 phi x^3)
///       - 2x B_n phi (2x^2 - z^2 + gamma_n + gamma_{n+1})
///       + A_n phi (-n + 4 gamma_n (3x^2 - z^2 + gamma_{n-1}+gamma_n+gamma_{n+1}))
///       + 16 gamma_n A_n^2 A_{n-1} ] / (phi^2 A_n).
/// ```
///
/// Errors with a pole when evaluated where phi or A_n vanishes (the real
/// zeros of A_n are the fixed charge locations of the electrostatic model).
pub fn holonomic_residual(n: usize, x: &ExtReal, seq: &GammaSequence) -> Result<ExtReal> {
    if n < 1 {
        return Err(Error::Domain("holonomic check needs n >= 1".into()));
    }
    let ctx = seq.ctx();
    let z = seq.z();
    let lc = ladder_coefficients(n, seq)?;
    let lc_prev = if n >= 2 {
        Some(ladder_coefficients(n - 1, seq)?)
    } else {
        None
    };
    let ph = phi(x, z);
    let a_n = lc.a_at(x);

    let pole_floor = ctx.two_pow(-i64::from(ctx.bits() / 2));
    let phi_scale = x.square().max(&z.square());
    if ph.abs() <= &pole_floor * &phi_scale {
        return Err(Error::Pole(format!("phi vanishes at x = {x}")));
    }
    let a_scale = x.powi(4) + lc.b.abs() * x.square() + lc.c.abs();
    if a_n.abs() <= &pole_floor * &a_scale {
        return Err(Error::Pole(format!(
            "degree-four factor A_{n} vanishes at x = {x}"
        )));
    }

    let ga = |i: i64| seq.gamma_ext(i).expect("checked range");
    let ni = n as i64;
    let b_n = lc.b_script_at(x);
    let two_x2 = x.square() * 2u32;

    let r = -(x * ((&two_x2 * &ph - 1u32) * &a_n
        + &ph * (ga(ni + 1) + ga(ni) + &two_x2 - z.square()))
        * 2u32)
        / (&ph * &a_n);

    let a_prev = match &lc_prev {
        Some(lc) => lc.a_at(x),
        // A_0(x) carries the same closed form with the gamma_0 = 0 convention
        None => {
            let z2 = z.square();
            let b0 = ga(1) - &z2;
            let c0 = &ga(1) * (ga(2) + ga(1) - &z2) - ctx.frac(1, 4);
            x.powi(4) + b0 * x.square() + c0
        }
    };
    let s_num = -(&a_n * &b_n * (&b_n + x.powi(3) * &ph * 4u32))
        - &b_n * &ph * (x * 2u32) * (&two_x2 - z.square() + ga(ni) + ga(ni + 1))
        + &a_n
            * &ph
            * (ga(ni) * (x.square() * 3u32 - z.square() + ga(ni - 1) + ga(ni) + ga(ni + 1)) * 4u32
                - ni)
        + ga(ni) * a_n.square() * &a_prev * 16u32;
    let s = s_num / (ph.square() * &a_n);

    let (p, dp, d2p) = eval3(n, x, seq)?;
    let t1 = d2p;
    let t2 = r * dp;
    let t3 = s * p;
    let residual = &t1 + &t2 + &t3;
    Ok(normalize(residual, scale_of(&[&t1, &t2, &t3]), ctx))
}

/// Normalized residuals of the two endpoint identities
///
/// ```text
/// P_n(z;z) P_{n-1}(z;z) e^(-z^4)
///     = [ n/2 - 2 gamma_n (gamma_{n+1}+gamma_n+gamma_{n-1}) ] h_{n-1},
/// P_n(z;z)^2 e^(-z^4)
///     = h_n [ (2n+1) - 4 (gamma_{n+2} gamma_{n+1} + (gamma_n+gamma_{n+1})^2
///                         + gamma_n gamma_{n-1}) ] / (2z).
/// ```
pub fn boundary_identities(n: usize, seq: &GammaSequence) -> Result<(ExtReal, ExtReal)> {
    if n < 1 || seq.max_n() < n + 2 {
        return Err(Error::IndexRange {
            index: n + 2,
            max: seq.max_n(),
        });
    }
    let ctx = seq.ctx();
    let z = seq.z();
    let e = (-z.powi(4)).exp();
    let ga = |i: i64| seq.gamma_ext(i).expect("checked range");
    let ni = n as i64;

    let p_n = eval3(n, z, seq)?.0;
    let p_prev = eval3(n - 1, z, seq)?.0;

    let lhs_prod = &p_n * &p_prev * &e;
    let g_n = ctx.frac(ni, 2) - &ga(ni) * (ga(ni + 1) + ga(ni) + ga(ni - 1)) * 2u32;
    let rhs_prod = &g_n * seq.h(n - 1)?;
    let r_prod = &lhs_prod - &rhs_prod;
    let r_prod = normalize(r_prod, scale_of(&[&lhs_prod, &rhs_prod]), ctx);

    let lhs_sq = p_n.square() * &e;
    let bracket = ctx.int(2 * ni + 1)
        - (&ga(ni + 2) * &ga(ni + 1) + (ga(ni) + ga(ni + 1)).square() + &ga(ni) * &ga(ni - 1))
            * 4u32;
    let rhs_sq = seq.h(n)? * &bracket / (z * 2u32);
    let r_sq = &lhs_sq - &rhs_sq;
    let r_sq = normalize(r_sq, scale_of(&[&lhs_sq, &rhs_sq]), ctx);
    Ok((r_prod, r_sq))
}

/// The bracket on the right side of the squared endpoint identity; positive
/// whenever the identity holds, since the left side is a square.
pub fn boundary_square_bracket(n: usize, seq: &GammaSequence) -> Result<ExtReal> {
    let ga = |i: i64| seq.gamma_ext(i).expect("checked range");
    let ni = n as i64;
    if seq.max_n() < n + 2 {
        return Err(Error::IndexRange {
            index: n + 2,
            max: seq.max_n(),
        });
    }
    Ok(seq.ctx().int(2 * ni + 1)
        - (&ga(ni + 2) * &ga(ni + 1) + (ga(ni) + ga(ni + 1)).square() + &ga(ni) * &ga(ni - 1))
            * 4u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::gamma_from_moments;

    fn ctx() -> PrecisionContext {
        PrecisionContext::standard()
    }

    fn seq_at(z: &str, n: usize) -> GammaSequence {
        let ctx = ctx();
        let z = ctx.real_from_str(z).unwrap();
        gamma_from_moments(&z, n, &ctx).unwrap()
    }

    #[test]
    fn low_degree_closed_forms() {
        let ctx = ctx();
        let seq = seq_at("1", 8);
        let x = ctx.real_from_str("0.73").unwrap();
        // P_2 = x^2 - gamma_1
        let p2 = eval(2, &x, &seq).unwrap();
        let want = x.square() - seq.gamma(1).unwrap();
        assert!((p2.value - want).abs() < ctx.two_pow(-240));
        // P_1 = x, P_0 = 1
        assert!((eval(1, &x, &seq).unwrap().value - &x).is_zero());
        assert!((eval(0, &x, &seq).unwrap().value - ctx.one()).is_zero());
    }

    #[test]
    fn odd_degree_vanishes_at_origin() {
        let ctx = ctx();
        let seq = seq_at("1", 8);
        let p5 = eval(5, &ctx.zero(), &seq).unwrap();
        assert!(p5.value.is_zero());
    }

    #[test]
    fn parity_of_values_and_derivatives() {
        let ctx = ctx();
        let seq = seq_at("0.8", 22);
        for n in [3usize, 8, 15, 20] {
            let x = ctx.real_from_str("0.41").unwrap();
            let plus = eval(n, &x, &seq).unwrap();
            let minus = eval(n, &(-&x), &seq).unwrap();
            let sign = if n % 2 == 0 { 1i64 } else { -1 };
            assert!((&plus.value - &minus.value * sign).is_zero(), "n = {n}");
            // derivative has opposite parity
            assert!((&plus.dvalue + &minus.dvalue * sign).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn freud_limit_zero_of_degree_six() {
        // at z = 4 the largest zero of P_6 sits near its full-line position
        let ctx = ctx();
        let seq = seq_at("4", 9);
        let x = ctx.real_from_str("1.2914650").unwrap();
        let p = eval(6, &x, &seq).unwrap();
        // |P_6(x*)| <= |P_6'| * 1e-4 near a simple zero
        let bound = p.dvalue.abs() * ctx.real(1e-4);
        assert!(p.value.abs() < bound, "P_6 = {}", p.value);
    }

    #[test]
    fn lambda_telescopes() {
        let ctx = ctx();
        let seq = seq_at("1", 10);
        let l2 = lambda_coefficient(2, &seq).unwrap();
        assert!((l2 + seq.gamma(1).unwrap()).is_zero());
        let l5 = lambda_coefficient(5, &seq).unwrap();
        let want = ctx
            .real_from_str("-1.04513435260144551472604232532150191895864412")
            .unwrap();
        assert!(((&l5 - &want) / want).abs() < ctx.real(1e-40), "{l5}");
        assert!(lambda_coefficient(1, &seq).is_err());
    }

    #[test]
    fn lambda_pair_sum_identity() {
        // lambda_{n,n-2} - lambda_{n+2,n} = gamma_n + gamma_{n+1}
        let ctx = ctx();
        let seq = seq_at("1.3", 14);
        for n in 2..=11 {
            let lhs = lambda_coefficient(n, &seq).unwrap() - lambda_coefficient(n + 2, &seq).unwrap();
            let rhs = seq.gamma(n).unwrap() + seq.gamma(n + 1).unwrap();
            assert!((lhs - rhs).abs() < ctx.two_pow(-200), "n = {n}");
        }
    }

    #[test]
    fn structure_relation_random_points() {
        let ctx = ctx();
        let seq = seq_at("1", 16);
        let tol = ctx.identity_tol();
        for (n, xs) in [(4usize, "0.37"), (7, "0.9"), (5, "-0.62"), (9, "0.05")] {
            let x = ctx.real_from_str(xs).unwrap();
            let r = check_structure(n, &x, &seq).unwrap();
            assert!(r.abs() < tol, "n = {n}, x = {xs}: {r}");
        }
    }

    #[test]
    fn structure_at_boundary_drops_phi_side() {
        // at x = z the left side vanishes with phi; the degree-five
        // combination on the right must vanish on its own
        let ctx = ctx();
        let seq = seq_at("1", 16);
        let z = seq.z().clone();
        let sc = structure_coefficients(4, &seq).unwrap();
        let sum = eval3(6, &z, &seq).unwrap().0 * 5u32
            + &sc.b * eval3(4, &z, &seq).unwrap().0
            + &sc.c * eval3(2, &z, &seq).unwrap().0
            + &sc.d * eval3(0, &z, &seq).unwrap().0;
        let scale = eval3(6, &z, &seq).unwrap().0.abs() * 5u32;
        assert!((sum / scale).abs() < ctx.identity_tol());
    }

    #[test]
    fn d_coefficient_factorization() {
        let ctx = ctx();
        let seq = seq_at("1", 10);
        let sc = structure_coefficients(4, &seq).unwrap();
        let prod = seq.gamma(5).unwrap()
            * seq.gamma(4).unwrap()
            * seq.gamma(3).unwrap()
            * seq.gamma(2).unwrap()
            * seq.gamma(1).unwrap()
            * 4u32;
        assert!((sc.d - prod).is_zero());
        // D_n = 0 below n = 4
        let sc3 = structure_coefficients(3, &seq).unwrap();
        assert!(sc3.d.is_zero());
    }

    #[test]
    fn ladder_and_compatibility() {
        let ctx = ctx();
        let seq = seq_at("1.2", 12);
        let tol = ctx.identity_tol();
        let x = ctx.real_from_str("0.9").unwrap();
        let (r_lower, r_compat) = ladder_check(3, &x, &seq).unwrap();
        assert!(r_lower.abs() < tol, "r_lower = {r_lower}");
        assert!(r_compat.abs() < tol, "r_compat = {r_compat}");
    }

    #[test]
    fn b_script_vanishes_at_origin() {
        let ctx = ctx();
        let seq = seq_at("1.2", 8);
        let lc = ladder_coefficients(3, &seq).unwrap();
        assert!(lc.b_script_at(&ctx.zero()).is_zero());
    }

    #[test]
    fn raising_relation() {
        let ctx = ctx();
        let seq = seq_at("1", 12);
        let x = ctx.real_from_str("0.3").unwrap();
        let r = raising_check(4, &x, &seq).unwrap();
        assert!(r.abs() < ctx.identity_tol(), "r = {r}");
    }

    #[test]
    fn holonomic_equation_points() {
        let ctx = ctx();
        let tol = ctx.identity_tol();
        let seq = seq_at("1", 12);
        let r = holonomic_residual(5, &ctx.real_from_str("0.44").unwrap(), &seq).unwrap();
        assert!(r.abs() < tol, "r = {r}");
        let seq7 = seq_at("0.7", 12);
        let r = holonomic_residual(2, &ctx.real_from_str("0.1").unwrap(), &seq7).unwrap();
        assert!(r.abs() < tol, "r = {r}");
    }

    #[test]
    fn holonomic_pole_at_charge_location() {
        // the positive real zero of A_n is a pole of R and S
        let ctx = ctx();
        let seq = seq_at("1", 12);
        let lc = ladder_coefficients(5, &seq).unwrap();
        let disc = (lc.b.square() - &lc.c * 4u32).sqrt();
        let eta = ((&disc - &lc.b) / 2u32).sqrt();
        match holonomic_residual(5, &eta, &seq) {
            Err(Error::Pole(_)) => {}
            other => panic!("expected pole, got {other:?}"),
        }
        // and at the support endpoint phi = 0
        match holonomic_residual(5, seq.z(), &seq) {
            Err(Error::Pole(_)) => {}
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn boundary_identities_hold() {
        let ctx = ctx();
        let tol = ctx.identity_tol();
        for (zs, n) in [("1", 4usize), ("0.5", 1)] {
            let seq = seq_at(zs, n + 4);
            let (rp, rs) = boundary_identities(n, &seq).unwrap();
            assert!(rp.abs() < tol, "z = {zs} r_prod = {rp}");
            assert!(rs.abs() < tol, "z = {zs} r_sq = {rs}");
            let bracket = boundary_square_bracket(n, &seq).unwrap();
            assert!(bracket.is_positive(), "bracket must be positive");
        }
    }
}
