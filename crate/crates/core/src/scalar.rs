//! Gaussian rationals: exact complex numbers with arbitrary-precision
//! rational real and imaginary parts.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Exact complex coefficient `re + im·i` over the rationals.
pub type GaussRational = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn real(num: i64, den: i64) -> GaussRational {
    Complex::new(rat(num, den), BigRational::zero())
}

pub fn from_rational(r: BigRational) -> GaussRational {
    Complex::new(r, BigRational::zero())
}

pub fn imag_unit() -> GaussRational {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn to_complex64(z: &GaussRational) -> Complex64 {
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `3`, `-3/2`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r` as an added term: `+ 1/4`, `- 3`.
pub fn fmt_signed(r: &BigRational) -> String {
    if r.is_negative() {
        format!("- {}", fmt_rational(&-r))
    } else {
        format!("+ {}", fmt_rational(r))
    }
}

/// Canonical text for a Gaussian rational: `3/2`, `-i`, `5/7i`, `(1/2-3i)`.
pub fn format_gauss(z: &GaussRational) -> String {
    let im_part = |im: &BigRational| -> String {
        if im.is_one() {
            "i".to_string()
        } else if (-im).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", fmt_rational(im))
        }
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => fmt_rational(&z.re),
        (true, false) => im_part(&z.im),
        (false, false) => {
            let im = im_part(&z.im);
            let sep = if im.starts_with('-') { "" } else { "+" };
            format!("({}{}{})", fmt_rational(&z.re), sep, im)
        }
    }
}

/// Parses a rational written as an integer, `p/q`, or a finite decimal
/// (`0.25`, `-1e-3` is not accepted). Decimals are converted exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int_part, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let mut n = BigInt::from_str(&digits).ok()?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(n, d));
    }
    BigInt::from_str(s).ok().map(BigRational::from_integer)
}

/// Inverse of [`format_gauss`].
pub fn parse_gauss(s: &str) -> Option<GaussRational> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        // split at the sign that starts the imaginary part
        let bytes = inner.as_bytes();
        let split = (1..bytes.len()).rev().find(|&k| bytes[k] == b'+' || bytes[k] == b'-')?;
        let re = parse_rational(&inner[..split])?;
        let im = parse_imag(&inner[split..])?;
        return Some(Complex::new(re, im));
    }
    if s.ends_with('i') {
        return parse_imag(s).map(|im| Complex::new(BigRational::zero(), im));
    }
    parse_rational(s).map(from_rational)
}

fn parse_imag(s: &str) -> Option<BigRational> {
    let body = s.strip_suffix('i')?;
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => parse_rational(body.strip_prefix('+').unwrap_or(body)),
    }
}

/// Largest magnitude of the real and imaginary parts.
pub fn max_abs_part(z: &GaussRational) -> BigRational {
    let re = z.re.abs();
    let im = z.im.abs();
    if re > im {
        re
    } else {
        im
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_each_shape() {
        assert_eq!(format_gauss(&real(3, 2)), "3/2");
        assert_eq!(format_gauss(&imag_unit()), "i");
        assert_eq!(format_gauss(&-imag_unit()), "-i");
        assert_eq!(format_gauss(&Complex::new(rat(1, 2), rat(-3, 1))), "(1/2-3i)");
        assert_eq!(format_gauss(&Complex::new(rat(0, 1), rat(5, 7))), "5/7i");
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("-4.5"), Some(rat(-9, 2)));
        assert_eq!(parse_rational("-.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn gauss_text_round_trips() {
        for z in [
            real(0, 1),
            real(-7, 3),
            imag_unit(),
            -imag_unit(),
            Complex::new(rat(-1, 2), rat(3, 4)),
            Complex::new(rat(2, 1), rat(-1, 1)),
        ] {
            assert_eq!(parse_gauss(&format_gauss(&z)), Some(z));
        }
    }
}

/// Serde adapter storing a [`BigRational`] as its `p/q` text.
pub mod serde_rational {
    use super::{fmt_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{text}`")))
    }
}
