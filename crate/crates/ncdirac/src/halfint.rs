//! Exact half-integer quantum numbers.
//!
//! j and j_z are stored as twice their value so that 3/2 is the integer 3;
//! this keeps quantum-number comparisons exact and avoids float equality.

use std::fmt;
use std::str::FromStr;

/// A half-integer stored as twice its value: `HalfInt::from_doubled(3)` is 3/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const fn from_doubled(twice_value: i32) -> Self {
        HalfInt(twice_value)
    }

    pub const fn from_int(value: i32) -> Self {
        HalfInt(2 * value)
    }

    /// Twice the value (the exact internal representation).
    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Parses "3/2", "-1/2", "2". Only halves are accepted as fractions.
impl FromStr for HalfInt {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(format!("half-integer denominator must be 2, got {s:?}"));
            }
            let n: i32 = num
                .trim()
                .parse()
                .map_err(|_| format!("invalid half-integer numerator in {s:?}"))?;
            if n % 2 == 0 {
                return Err(format!(
                    "{s:?} is an integer written as a fraction; write {}",
                    n / 2
                ));
            }
            Ok(HalfInt(n))
        } else {
            let n: i32 = s
                .parse()
                .map_err(|_| format!("invalid half-integer {s:?}"))?;
            Ok(HalfInt::from_int(n))
        }
    }
}
