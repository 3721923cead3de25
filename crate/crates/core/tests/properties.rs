//! Randomized property checks over the whole family.

use proptest::prelude::*;

use truncfreud::moments::moment;
use truncfreud::polyeval::eval;
use truncfreud::prec::PrecisionContext;
use truncfreud::recurrence::gamma_from_moments;
use truncfreud::specfun::lower_incomplete_gamma;
use truncfreud::zeros::zeros;

fn ctx256() -> PrecisionContext {
    PrecisionContext::standard()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn incomplete_gamma_is_increasing_in_x(
        a_num in 1i64..=20,
        x1 in 0.01f64..20.0,
        dx in 0.01f64..10.0,
    ) {
        let ctx = ctx256();
        let a = ctx.frac(a_num, 4);
        let x1 = ctx.real(x1);
        let x2 = &x1 + ctx.real(dx);
        let lo = lower_incomplete_gamma(&a, &x1, &ctx).unwrap();
        let hi = lower_incomplete_gamma(&a, &x2, &ctx).unwrap();
        prop_assert!(hi > lo);
    }

    #[test]
    fn polynomial_parity(n in 1usize..=20, xf in -2.0f64..2.0, zf in 0.15f64..2.6) {
        let ctx = ctx256();
        let z = ctx.real(zf);
        let seq = gamma_from_moments(&z, n + 1, &ctx).unwrap();
        let x = ctx.real(xf);
        let plus = eval(n, &x, &seq).unwrap().value;
        let minus = eval(n, &(-&x), &seq).unwrap().value;
        let signed = if n % 2 == 0 { minus } else { -minus };
        // the recurrence maps -x to sign-flipped intermediates exactly
        prop_assert!((plus - signed).is_zero());
    }

    #[test]
    fn moments_positive_and_dominated(zf in 0.1f64..3.0, n in 0usize..=15) {
        let ctx = ctx256();
        let z = ctx.real(zf);
        let u_lo = moment(2 * n, &z, &ctx).unwrap();
        let u_hi = moment(2 * n + 2, &z, &ctx).unwrap();
        prop_assert!(u_lo.is_positive());
        prop_assert!(u_hi < z.square() * u_lo);
    }

    #[test]
    fn zero_sets_live_inside_support(zf in 0.15f64..2.6, n in 1usize..=12) {
        let ctx = ctx256();
        let z = ctx.real(zf);
        let seq = gamma_from_moments(&z, n + 1, &ctx).unwrap();
        let zs = zeros(n, &seq).unwrap();
        for (k, x) in zs.all().iter().enumerate() {
            prop_assert!(x.abs() < z);
            if k > 0 {
                prop_assert!(x > &zs.all()[k - 1], "zeros must be strictly increasing");
            }
        }
        // mirror symmetry holds bit for bit
        for (a, b) in zs.all().iter().zip(zs.all().iter().rev()) {
            prop_assert!((a + b).is_zero());
        }
    }

    #[test]
    fn interlacing(zf in 0.2f64..2.5, n in 2usize..=11) {
        let ctx = ctx256();
        let z = ctx.real(zf);
        let seq = gamma_from_moments(&z, n + 2, &ctx).unwrap();
        let small = zeros(n, &seq).unwrap();
        let large = zeros(n + 1, &seq).unwrap();
        for k in 0..n {
            prop_assert!(large.all()[k] < small.all()[k]);
            prop_assert!(small.all()[k] < large.all()[k + 1]);
        }
    }
}
