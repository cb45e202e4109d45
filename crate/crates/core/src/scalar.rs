//! Scalar abstraction. Everything in this crate is exact: the trait is
//! implemented for any ordered signed field-like type, in practice
//! `num_rational::Ratio<T>` for a signed integer `T`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed};
use std::fmt::{Debug, Display};
use std::str::FromStr;

/// Exact ordered field used for intersection numbers and witnesses.
pub trait Scalar:
    Clone + Ord + std::hash::Hash + Debug + Display + Signed + FromPrimitive + FromStr + Send + Sync + 'static
{
    /// `true` when the value is an integer.
    fn is_integral(&self) -> bool;
    /// Largest integer `<= self`, as `i128` (saturating).
    fn floor_i128(&self) -> i128;
    /// Numerator and denominator in lowest terms, as decimal strings.
    fn parts(&self) -> (String, String);

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits every scalar")
    }

    fn ratio(p: i64, q: i64) -> Self {
        Self::from_int(p) / Self::from_int(q)
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + std::hash::Hash
        + Signed
        + Debug
        + Display
        + FromPrimitive
        + FromStr
        + TryInto<i128>
        + Send
        + Sync
        + 'static,
    Ratio<T>: FromPrimitive + FromStr,
{
    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn floor_i128(&self) -> i128 {
        let f = self.floor().to_integer();
        match f.clone().try_into() {
            Ok(v) => v,
            Err(_) => {
                if f.is_negative() {
                    i128::MIN
                } else {
                    i128::MAX
                }
            }
        }
    }

    fn parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

/// Mixed-number rendering, e.g. `88 2/3`, `-1/2`, `56`.
pub fn mixed<S: Scalar>(x: &S) -> String {
    if x.is_integral() {
        return x.to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let whole = a.floor_i128();
    let frac = a - S::from_i128(whole).unwrap_or_else(S::zero);
    let sign = if neg { "-" } else { "" };
    if whole == 0 {
        format!("{sign}{frac}")
    } else {
        format!("{sign}{whole} {frac}")
    }
}

/// Rational literal `p` or `p/q`.
pub fn parse_scalar<S: Scalar>(s: &str) -> Option<S> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = S::from_str(p.trim()).ok()?;
            let q = S::from_str(q.trim()).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(p / q)
            }
        }
        None => S::from_str(s).ok(),
    }
}

/// Convert between scalar types through the exact numerator/denominator.
pub fn convert<A: Scalar, B: Scalar>(x: &A) -> B {
    let (p, q) = x.parts();
    let p: BigInt = p.parse().expect("integer numerator");
    let q: BigInt = q.parse().expect("integer denominator");
    let p = B::from_str(&p.to_string()).ok().expect("numerator fits target scalar");
    let q = B::from_str(&q.to_string()).ok().expect("denominator fits target scalar");
    p / q
}

/// Scale a non-zero vector to coprime integers, keeping signs.
/// The zero vector is returned unchanged.
pub fn primitive(v: &[crate::Rational]) -> Vec<crate::Rational> {
    use num_traits::{One, Zero};
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * crate::Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| crate::Rational::from_integer(x / &g)).collect()
}
