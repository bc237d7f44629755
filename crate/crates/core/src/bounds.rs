//! Closed-form evaluators for the displayed incidence bounds, computed in
//! high-precision binary floating point (well beyond 30 significant decimal
//! digits) since the fractional powers are irrational.
//!
//! Conventions, fixed once for all evaluators: logarithms are base 2, and
//! log arguments are clamped below at 2 so every formula is total and
//! positive. Any other base or clamp changes values by a constant factor
//! only, which is irrelevant for ratio monitoring.

use alloc::string::String;
use alloc::string::ToString;

use astro_float::{BigFloat, Consts, RoundingMode};

/// Working mantissa precision in bits (~96 decimal digits).
const PREC: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

/// Evaluator context holding the constants cache.
pub struct BoundEvaluator {
    cc: Consts,
}

impl Default for BoundEvaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl BoundEvaluator {
    pub fn new() -> Self {
        BoundEvaluator { cc: Consts::new().expect("constants cache") }
    }

    fn from_u64(&self, v: u64) -> BigFloat {
        BigFloat::from_u64(v, PREC)
    }

    fn powf(&mut self, base: &BigFloat, num: i64, den: u64) -> BigFloat {
        let e = BigFloat::from_i64(num, PREC).div(&BigFloat::from_u64(den, PREC), PREC, RM);
        base.pow(&e, PREC, RM, &mut self.cc)
    }

    fn pow_bf(&mut self, base: &BigFloat, e: &BigFloat) -> BigFloat {
        base.pow(e, PREC, RM, &mut self.cc)
    }

    /// `log2(max(2, x))`.
    fn clamped_log2(&mut self, x: &BigFloat) -> BigFloat {
        let two = self.from_u64(2);
        let arg = if x.cmp(&two).unwrap_or(0) < 0 { two } else { x.clone() };
        arg.log2(PREC, RM, &mut self.cc)
    }

    /// `m^{2/3} n^{2/3} + m^{6/11} n^{9/11} log2^beta(max(2, m^3/n)) + m + n`.
    ///
    /// `beta` is passed as a rational exponent `beta_num / beta_den`.
    pub fn bound_general(&mut self, m: u64, n: u64, beta_num: i64, beta_den: u64) -> BigFloat {
        assert!(m >= 1 && n >= 1, "bound_general needs m, n >= 1");
        let mf = self.from_u64(m);
        let nf = self.from_u64(n);
        let t1 = self.powf(&mf, 2, 3).mul(&self.powf(&nf, 2, 3), PREC, RM);
        let m_cubed = self.powf(&mf, 3, 1);
        let ratio = m_cubed.div(&nf, PREC, RM);
        let log_term = self.clamped_log2(&ratio);
        let beta =
            BigFloat::from_i64(beta_num, PREC).div(&BigFloat::from_u64(beta_den, PREC), PREC, RM);
        let log_pow = self.pow_bf(&log_term, &beta);
        let t2 = self
            .powf(&mf, 6, 11)
            .mul(&self.powf(&nf, 9, 11), PREC, RM)
            .mul(&log_pow, PREC, RM);
        t1.add(&t2, PREC, RM).add(&mf, PREC, RM).add(&nf, PREC, RM)
    }

    /// The quadric case: `bound_general` at the sharper `beta = 2/11`.
    pub fn bound_quadric(&mut self, m: u64, n: u64) -> BigFloat {
        self.bound_general(m, n, 2, 11)
    }

    /// `m^{2/3} n^{2/3} + m + n^{3/2} log2^kappa(max(2, n))`.
    pub fn bound_weak(&mut self, m: u64, n: u64, kappa: f64) -> BigFloat {
        assert!(m >= 1 && n >= 1, "bound_weak needs m, n >= 1");
        assert!(kappa >= 0.0, "bound_weak needs kappa >= 0");
        let mf = self.from_u64(m);
        let nf = self.from_u64(n);
        let t1 = self.powf(&mf, 2, 3).mul(&self.powf(&nf, 2, 3), PREC, RM);
        let log_n = self.clamped_log2(&nf);
        let kf = BigFloat::from_f64(kappa, PREC);
        let log_pow = self.pow_bf(&log_n, &kf);
        let t3 = self.powf(&nf, 3, 2).mul(&log_pow, PREC, RM);
        t1.add(&mf, PREC, RM).add(&t3, PREC, RM)
    }

    /// `n^4/k^3 + n^6 log2(k) / k^{11/2} + n^2/k`, for `k >= 3` (no clamp
    /// needed there).
    pub fn bound_ngek(&mut self, n: u64, k: u64) -> BigFloat {
        assert!(n >= 1 && k >= 3, "bound_ngek needs n >= 1 and k >= 3");
        let nf = self.from_u64(n);
        let kf = self.from_u64(k);
        let t1 = self.powf(&nf, 4, 1).div(&self.powf(&kf, 3, 1), PREC, RM);
        let log_k = kf.log2(PREC, RM, &mut self.cc);
        let t2 = self
            .powf(&nf, 6, 1)
            .mul(&log_k, PREC, RM)
            .div(&self.powf(&kf, 11, 2), PREC, RM);
        let t3 = self.powf(&nf, 2, 1).div(&kf, PREC, RM);
        t1.add(&t2, PREC, RM).add(&t3, PREC, RM)
    }

    /// Decimal rendering of a computed bound; the working precision keeps
    /// well over 30 significant digits.
    pub fn to_decimal_string(&mut self, x: &BigFloat) -> String {
        x.format(astro_float::Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "nan".to_string())
    }

    /// Lossy `f64` view for ratio monitoring.
    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        self.to_decimal_string(x).parse::<f64>().unwrap_or(f64::NAN)
    }
}
