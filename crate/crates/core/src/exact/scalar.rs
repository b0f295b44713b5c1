//! Arbitrary-precision rational scalar.
//!
//! `BigRational` keeps the fraction reduced with a positive denominator,
//! which is exactly the canonical form we need. Extension point: an
//! algebraic-number scalar would slot in here behind the same alias, but
//! is intentionally not built.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn from_i64(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Integer power with negative exponents allowed; `base` must be nonzero
/// when `exp < 0`.
pub fn pow_i(base: &Scalar, exp: i64) -> Scalar {
    if exp >= 0 {
        num::pow::Pow::pow(base.clone(), exp as u64)
    } else {
        num::pow::Pow::pow(base.clone().recip(), (-exp) as u64)
    }
}

/// Render as `p/q`, or just `p` for integers. Inverse of [`parse`].
pub fn to_frac_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parse `p/q` or `p` with optional sign, exactly.
pub fn parse(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Domain(format!("bad numerator in fraction '{text}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Domain(format!("bad denominator in fraction '{text}'")))?;
    if den.is_zero() {
        return Err(Error::Domain(format!("zero denominator in fraction '{text}'")));
    }
    Ok(Scalar::new(num, den))
}

/// True when the scalar is an integer.
pub fn is_integer(s: &Scalar) -> bool {
    s.denom().is_one()
}

pub fn is_zero(s: &Scalar) -> bool {
    Zero::is_zero(s)
}

pub fn to_i64(s: &Scalar) -> Option<i64> {
    if !is_integer(s) {
        return None;
    }
    use num::ToPrimitive;
    s.numer().to_i64()
}

pub fn is_nonneg_integer(s: &Scalar) -> bool {
    is_integer(s) && !s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for text in ["0", "5", "-3", "2/3", "-7/5", "10/4"] {
            let v = parse(text).unwrap();
            let back = parse(&to_frac_string(&v)).unwrap();
            assert_eq!(v, back);
        }
        // canonical form: reduced, positive denominator
        assert_eq!(to_frac_string(&parse("10/4").unwrap()), "5/2");
        assert_eq!(to_frac_string(&parse("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1/y").is_err());
    }

    #[test]
    fn integer_powers() {
        let half = ratio(1, 2);
        assert_eq!(pow_i(&half, 3), ratio(1, 8));
        assert_eq!(pow_i(&half, -2), from_i64(4));
        assert_eq!(pow_i(&half, 0), one());
    }
}
