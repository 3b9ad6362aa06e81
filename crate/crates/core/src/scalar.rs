//! Scalar abstraction for metrics. Counting metrics are generic over any
//! [`Scalar`] so they can be evaluated in `f64` for reports or exactly in
//! [`Rational64`](num_rational::Rational64) for verification; statistics that
//! need square roots or `erfc` are bound on [`num_traits::Float`].

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug {}

impl<T: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug> Scalar for T {}

pub fn from_count<T: Scalar>(n: u64) -> T {
    T::from_u64(n).expect("count representable in scalar type")
}

/// `100 * num / den`, or `None` when the denominator is zero.
pub fn percentage<T: Scalar>(num: u64, den: u64) -> Option<T> {
    (den != 0).then(|| from_count::<T>(100) * from_count::<T>(num) / from_count::<T>(den))
}

/// Lossy conversion for display and serialization.
pub fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rounds to two decimals, the precision reports are printed at.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn exact_and_float_percentages_agree() {
        let exact: Rational64 = percentage(30, 48).unwrap();
        assert_eq!(exact, Rational64::new(125, 2));
        let float: f64 = percentage(30, 48).unwrap();
        assert_eq!(float, 62.5);
        assert_eq!(percentage::<f64>(1, 0), None);
        let f32_pct: f32 = percentage(22, 48).unwrap();
        assert!((f32_pct - 45.833_33).abs() < 1e-4);
    }
}
