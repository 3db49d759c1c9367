//! Exact rational helpers. Every ratio in the reconstruction bounds is carried
//! as `Ratio<i128>`; `n²` fits comfortably for any deck we can build.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rational = Ratio<i128>;

/// Nearest integer, ties rounded towards +∞.
pub fn round_half_up(x: &Rational) -> i128 {
    (x + Rational::new(1, 2)).floor().to_integer()
}

/// Distance from `x` to [`round_half_up`]`(x)`.
pub fn rounding_distance(x: &Rational) -> Rational {
    (x - Rational::from_integer(round_half_up(x))).abs()
}

/// `ceil(a / b)` for `b > 0`.
pub fn ceil_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    Integer::div_ceil(&a, &b)
}

/// `floor(a / b)` for `b > 0`.
pub fn floor_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    Integer::div_floor(&a, &b)
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom() == &1 || x.is_zero()
}

/// Serde adapters writing rationals as `"p/q"` (or `"p"` when integral).
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.collect_str(x),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| s.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_half_up(&Rational::new(5, 2)), 3);
        assert_eq!(round_half_up(&Rational::new(-5, 2)), -2);
        assert_eq!(round_half_up(&Rational::new(7, 3)), 2);
        assert_eq!(round_half_up(&Rational::new(-7, 3)), -2);
        assert_eq!(rounding_distance(&Rational::new(7, 3)), Rational::new(1, 3));
        assert_eq!(rounding_distance(&Rational::new(5, 2)), Rational::new(1, 2));
    }

    #[test]
    fn integer_division() {
        assert_eq!(ceil_div(149, 16), 10);
        assert_eq!(ceil_div(-3, 2), -1);
        assert_eq!(floor_div(-3, 2), -2);
        assert_eq!(floor_div(74, 32), 2);
    }
}
