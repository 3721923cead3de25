//! Golden reference tables for zero and charge locations.
//!
//! Values are embedded as decimal strings with their comparison tolerances
//! so regression checks are self-describing. The charge table is trusted
//! only through n = 15: recomputation at higher working precision shows the
//! n = 16 and n = 17 rows drifting off the monotone trend (the forward
//! construction they came from loses digits with n), so those rows are
//! compared and reported rather than enforced.

/// One row of a largest-zeros table: z and the two largest zeros of P_n.
#[derive(Debug, Clone, Copy)]
pub struct ZeroRow {
    pub z: &'static str,
    pub second_largest: &'static str,
    pub largest: &'static str,
}

/// Two largest zeros of P_5(x;z).
pub const P5_ZEROS: &[ZeroRow] = &[
    ZeroRow { z: "0.2", second_largest: "0.107685", largest: "0.181230" },
    ZeroRow { z: "0.4", second_largest: "0.215105", largest: "0.362271" },
    ZeroRow { z: "0.6", second_largest: "0.320950", largest: "0.542169" },
    ZeroRow { z: "0.9", second_largest: "0.468896", largest: "0.803263" },
    ZeroRow { z: "1.2", second_largest: "0.584567", largest: "1.029070" },
    ZeroRow { z: "1.4", second_largest: "0.631505", largest: "1.130200" },
    ZeroRow { z: "1.5", second_largest: "0.644491", largest: "1.158470" },
];

/// Full-line limit row for P_5 (reached in practice by z = 4).
pub const P5_ZEROS_LIMIT: ZeroRow = ZeroRow {
    z: "inf",
    second_largest: "0.655248",
    largest: "1.180460",
};

/// Absolute tolerance for the P_5 rows.
pub const P5_TOL: f64 = 2e-6;

/// Two largest zeros of P_6(x;z).
pub const P6_ZEROS: &[ZeroRow] = &[
    ZeroRow { z: "0.3", second_largest: "0.1982974", largest: "0.2797096" },
    ZeroRow { z: "0.4", second_largest: "0.2642083", largest: "0.3728558" },
    ZeroRow { z: "0.65", second_largest: "0.4266802", largest: "0.6045856" },
    ZeroRow { z: "0.9", second_largest: "0.5795190", largest: "0.8310874" },
    ZeroRow { z: "1.2", second_largest: "0.7308850", largest: "1.0794365" },
    ZeroRow { z: "1.4", second_largest: "0.7984810", largest: "1.2066653" },
    ZeroRow { z: "1.5", second_largest: "0.8196970", largest: "1.2490734" },
];

/// Full-line limit row for P_6.
pub const P6_ZEROS_LIMIT: ZeroRow = ZeroRow {
    z: "inf",
    second_largest: "0.8415723",
    largest: "1.2914650",
};

/// Absolute tolerance for the P_6 rows.
pub const P6_TOL: f64 = 5e-7;

/// Surrogate for the z -> infinity rows and its tolerance.
pub const LIMIT_PROXY_Z: &str = "4";
pub const LIMIT_TOL: f64 = 1e-4;

/// One row of the fixed-charge table at z = 1: positive real charge eta_1
/// and the imaginary part of zeta_1.
#[derive(Debug, Clone, Copy)]
pub struct ChargeRow {
    pub n: usize,
    pub eta: &'static str,
    pub zeta_im: &'static str,
}

/// Charge locations eta_1(n, 1) and zeta_1(n, 1) for n = 1..17.
pub const CHARGES_Z1: &[ChargeRow] = &[
    ChargeRow { n: 1, eta: "1.10947", zeta_im: "0.870003" },
    ChargeRow { n: 2, eta: "1.19659", zeta_im: "0.975701" },
    ChargeRow { n: 3, eta: "1.27583", zeta_im: "1.07093" },
    ChargeRow { n: 4, eta: "1.34277", zeta_im: "1.14612" },
    ChargeRow { n: 5, eta: "1.3997", zeta_im: "1.2106" },
    ChargeRow { n: 6, eta: "1.44951", zeta_im: "1.26696" },
    ChargeRow { n: 7, eta: "1.49408", zeta_im: "1.31726" },
    ChargeRow { n: 8, eta: "1.53462", zeta_im: "1.3628" },
    ChargeRow { n: 9, eta: "1.57192", zeta_im: "1.40449" },
    ChargeRow { n: 10, eta: "1.60653", zeta_im: "1.44302" },
    ChargeRow { n: 11, eta: "1.6389", zeta_im: "1.47888" },
    ChargeRow { n: 12, eta: "1.66932", zeta_im: "1.51246" },
    ChargeRow { n: 13, eta: "1.69806", zeta_im: "1.54408" },
    ChargeRow { n: 14, eta: "1.72533", zeta_im: "1.57404" },
    ChargeRow { n: 15, eta: "1.75127", zeta_im: "1.60162" },
    ChargeRow { n: 16, eta: "1.77603", zeta_im: "1.63848" },
    ChargeRow { n: 17, eta: "1.79819", zeta_im: "1.55118" },
];

/// Absolute tolerance for the trusted charge rows.
pub const CHARGE_TOL: f64 = 5e-4;

/// Largest n whose charge row is enforced; higher rows are recomputed and
/// reported.
pub const CHARGE_TRUSTED_MAX_N: usize = 15;
