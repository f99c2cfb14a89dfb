//! Fixed-point decimals backed by big integers.
//!
//! Values carry [`SCALE_DIGITS`] digits after the point; results are
//! printed with [`PRINT_DIGITS`] of them. Every exact input (a ratio of big
//! integers) is converted at the last step, so comparisons against constants
//! involving π and square roots are free of float noise.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub const SCALE_DIGITS: u32 = 60;
pub const PRINT_DIGITS: usize = 50;

const PI_DIGITS: &str = "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

fn scale() -> BigInt {
    BigInt::from(10u32).pow(SCALE_DIGITS)
}

/// `raw / 10^SCALE_DIGITS`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Fixed(BigInt::from(v) * scale())
    }

    /// num / den, rounded to nearest.
    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Fixed(round_div(&(num * scale()), den))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::from_ratio(q.numer(), q.denom())
    }

    /// √(num / den), truncated.
    pub fn sqrt_ratio(num: &BigInt, den: &BigInt) -> Self {
        assert!(
            !num.is_negative() && den.is_positive(),
            "sqrt of a negative ratio"
        );
        let s = scale();
        Fixed((num * &s * &s / den).sqrt())
    }

    pub fn pi() -> Self {
        let digits = &PI_DIGITS[..SCALE_DIGITS as usize + 1];
        Fixed(digits.parse().expect("pi digits"))
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.0.is_negative(), "sqrt of a negative value");
        Fixed((&self.0 * scale()).sqrt())
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        Fixed(round_div(&(&self.0 * &other.0), &scale()))
    }

    pub fn div(&self, other: &Fixed) -> Fixed {
        Fixed(round_div(&(&self.0 * scale()), &other.0))
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        Fixed(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        Fixed(&self.0 - &other.0)
    }

    pub fn abs(&self) -> Fixed {
        Fixed(self.0.abs())
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        // 17 significant digits are plenty for an f64
        let shift = BigInt::from(10u32).pow(SCALE_DIGITS - 20);
        (&self.0 / shift).to_f64().unwrap_or(f64::NAN) / 1e20
    }

    /// |self − target| ≤ tol·|target|, with `tol` given as a ratio.
    pub fn within_relative(&self, target: &Fixed, tol_num: i64, tol_den: i64) -> bool {
        let diff = self.sub(target).abs().0 * tol_den;
        diff <= target.0.abs() * tol_num
    }

    /// self / other as a fixed-point value.
    pub fn ratio_to(&self, other: &Fixed) -> Fixed {
        self.div(other)
    }
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    // r has the sign of den; round half away from the floor
    let twice: BigInt = &r * 2;
    let cmp = if den.is_positive() {
        twice.cmp(den)
    } else {
        den.cmp(&twice)
    };
    if cmp != Ordering::Less {
        q + 1
    } else {
        q
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.0.sign() == BigSign::Minus;
        let digits = self.0.abs().to_string();
        let width = SCALE_DIGITS as usize + 1;
        let padded = format!("{digits:0>width$}");
        let (int, frac) = padded.split_at(padded.len() - SCALE_DIGITS as usize);
        write!(
            f,
            "{}{}.{}",
            if neg { "-" } else { "" },
            int,
            &frac[..PRINT_DIGITS]
        )
    }
}
