//! Exact Gaussian-rational scalars: complex numbers with `BigRational` real
//! and imaginary parts. Cohomology ranks are rank-discontinuous, so nothing
//! in the invariant layer may depend on floating-point thresholds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::form::Scalar;

/// An element of ℚ(i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    /// re_num/re_den + (im_num/im_den)·i with nonzero denominators.
    pub fn from_fraction(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    /// Exact conversion of an f64 (dyadic rational) — used to lift
    /// optimizer output back into exact arithmetic.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        let r = BigRational::from_float(x)?;
        Some(GaussianRational {
            re: r,
            im: BigRational::zero(),
        })
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.mul(&inv))
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }

    pub fn to_complex_f64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Format as an exact fraction string, e.g. `-3/4+1/2i`.
    pub fn to_fraction_string(&self) -> String {
        fn frac(r: &BigRational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        if self.im.is_zero() {
            frac(&self.re)
        } else if self.re.is_zero() {
            format!("{}i", frac(&self.im))
        } else if self.im.is_positive() {
            format!("{}+{}i", frac(&self.re), frac(&self.im))
        } else {
            format!("{}{}i", frac(&self.re), frac(&self.im))
        }
    }

    /// Parse `p`, `p/q`, or a (dyadic-exact) JSON number into a real
    /// Gaussian rational.
    pub fn parse_real(text: &str) -> Option<Self> {
        let t = text.trim();
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(GaussianRational::real(BigRational::new(n, d)))
        } else {
            let n: BigInt = t.parse().ok()?;
            Some(GaussianRational::real(BigRational::from_integer(n)))
        }
    }
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }
    fn neg(&self) -> Self {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
    fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn div_int(&self, k: i64) -> Self {
        let d = BigRational::from_integer(BigInt::from(k));
        GaussianRational {
            re: &self.re / &d,
            im: &self.im / &d,
        }
    }
    fn from_int(n: i64) -> Self {
        GaussianRational::from_ints(n, 0)
    }
    fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic_round_trips() {
        let a = GaussianRational::from_fraction(1, 2, -3, 4);
        let b = GaussianRational::from_ints(2, 5);
        let prod = a.mul(&b);
        let back = prod.div(&b).unwrap();
        assert_eq!(back, a);
        assert!(a.mul(&a.inv().unwrap()) == GaussianRational::one());
    }

    #[test]
    fn formatting_and_parsing() {
        let a = GaussianRational::from_fraction(-3, 4, 1, 2);
        assert_eq!(a.to_fraction_string(), "-3/4+1/2i");
        assert_eq!(
            GaussianRational::parse_real("7/3").unwrap(),
            GaussianRational::from_fraction(7, 3, 0, 1)
        );
        assert_eq!(
            GaussianRational::parse_real("-5").unwrap(),
            GaussianRational::from_ints(-5, 0)
        );
        assert!(GaussianRational::parse_real("1/0").is_none());
    }

    #[test]
    fn dyadic_conversion_is_exact() {
        let x = 0.34375_f64; // 11/32
        let g = GaussianRational::from_f64_exact(x).unwrap();
        assert_eq!(g.re, BigRational::new(BigInt::from(11), BigInt::from(32)));
    }
}
