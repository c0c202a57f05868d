//! Scalar abstraction shared by the link-budget, kinematics and power-control math.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the radio math is evaluated in: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("finite literal is representable")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Thermal noise power spectral density at 290 K, dBm/Hz.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

/// Width of one LTE resource block in Hz.
pub const RB_BANDWIDTH_HZ: f64 = 180_000.0;

/// Power ratio in dB to linear scale.
pub fn db_to_linear<T: Scalar>(db: T) -> T {
    T::lit(10.0).powf(db / T::lit(10.0))
}

/// Linear power ratio to dB. Zero maps to negative infinity.
pub fn linear_to_db<T: Scalar>(linear: T) -> T {
    T::lit(10.0) * linear.log10()
}

/// dBm to milliwatts.
pub fn dbm_to_mw<T: Scalar>(dbm: T) -> T {
    db_to_linear(dbm)
}

/// Milliwatts to dBm.
pub fn mw_to_dbm<T: Scalar>(mw: T) -> T {
    linear_to_db(mw)
}

/// Thermal noise over `bandwidth_hz` plus a receiver noise figure, in dBm.
pub fn thermal_noise_dbm<T: Scalar>(bandwidth_hz: T, noise_figure_db: T) -> T {
    T::lit(THERMAL_NOISE_DBM_PER_HZ) + linear_to_db(bandwidth_hz) + noise_figure_db
}

/// Thermal noise in a single resource block without noise figure (about -121.45 dBm).
pub fn rb_noise_dbm<T: Scalar>() -> T {
    thermal_noise_dbm(T::lit(RB_BANDWIDTH_HZ), T::zero())
}

/// Power sum of dBm values. An empty input yields negative infinity.
pub fn sum_dbm<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    mw_to_dbm(
        values
            .into_iter()
            .map(dbm_to_mw)
            .fold(T::zero(), |acc, v| acc + v),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rb_noise_matches_known_value() {
        let n: f64 = rb_noise_dbm();
        assert!((n - (-121.447_274_948_966_94)).abs() < 1e-9, "{n}");
        let n32: f32 = rb_noise_dbm();
        assert!((n32 + 121.447_27).abs() < 1e-3);
    }

    #[test]
    fn two_equal_contributions_add_three_db() {
        let s = sum_dbm([-95.0_f64, -95.0]);
        assert!((s - (-91.989_700_043_360_19)).abs() < 1e-9, "{s}");
    }

    #[test]
    fn empty_sum_is_negative_infinity() {
        let s = sum_dbm(std::iter::empty::<f64>());
        assert!(s.is_infinite() && s < 0.0);
    }

    #[test]
    fn dbm_round_trip() {
        for v in [-40.0_f64, -10.0, 0.0, 5.04, 23.0] {
            assert!((mw_to_dbm(dbm_to_mw(v)) - v).abs() < 1e-12);
        }
        assert!((dbm_to_mw(5.04_f64) - 3.191_537_855_1).abs() < 1e-6);
    }
}
