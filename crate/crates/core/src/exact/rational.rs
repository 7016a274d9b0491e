use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary-precision rational, always normalised.
pub type Rational = BigRational;

/// Complex number with rational parts.
pub type GaussianRational = Complex<Rational>;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator and denominator individually overflow f64
        let shift = x.numer().bits().max(x.denom().bits()) as i64 - 1000;
        if shift <= 0 {
            return f64::NAN;
        }
        let s = shift as usize;
        let n = (x.numer() >> s).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> s).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `p/q` formatting, with the denominator printed even when it is 1.
pub struct Pq<'a>(pub &'a Rational);

impl fmt::Display for Pq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// `a/b`, `a/b+c/d i` or `a/b-c/d i`.
pub struct PqComplex<'a>(pub &'a GaussianRational);

impl fmt::Display for PqComplex<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.0;
        if z.im.is_zero() {
            return write!(f, "{}", Pq(&z.re));
        }
        let sign = if z.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{} i", Pq(&z.re), sign, Pq(&z.im.abs()))
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.125` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Closest rational to `x` with denominator at most `max_denominator`
/// (continued fractions with a final semiconvergent).
pub fn rationalize(x: f64, max_denominator: u64) -> Result<Rational, ExactError> {
    if !x.is_finite() {
        return Err(ExactError::NonFinite(x));
    }
    if max_denominator == 0 {
        return Err(ExactError::Parse("max_denominator must be positive".into()));
    }
    let exact = Rational::from_float(x).expect("finite float");
    Ok(limit_denominator(&exact, &BigInt::from(max_denominator)))
}

pub fn limit_denominator(x: &Rational, max_den: &BigInt) -> Rational {
    if x.denom() <= max_den {
        return x.clone();
    }
    let negative = x.is_negative();
    let ax = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (ax.numer().clone(), ax.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if &q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if n.is_zero() || d.is_zero() {
            break;
        }
    }
    let k = (max_den - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    let best = if (&semi - &ax).abs() < (&conv - &ax).abs() {
        semi
    } else {
        conv
    };
    if negative {
        -best
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationalize_examples() {
        assert_eq!(rationalize(0.5, 10).unwrap(), rat(1, 2));
        assert_eq!(rationalize(3.181_818_181_8, 100).unwrap(), rat(35, 11));
        assert_eq!(rationalize(0.333_333_3, 10).unwrap(), rat(1, 3));
        assert_eq!(rationalize(-0.333_333_3, 10).unwrap(), rat(-1, 3));
        assert_eq!(rationalize(2.0, 1).unwrap(), int(2));
        assert!(rationalize(f64::NAN, 10).is_err());
        assert!(rationalize(f64::INFINITY, 10).is_err());
    }

    /// Brute force over every denominator.
    fn best_by_scan(x: f64, max_den: i64) -> Rational {
        let ex = Rational::from_float(x).unwrap();
        let mut best: Option<Rational> = None;
        for q in 1..=max_den {
            let p = (x * q as f64).round() as i64;
            for cand in [p - 1, p, p + 1] {
                let r = rat(cand, q);
                let better = match &best {
                    None => true,
                    Some(b) => (&r - &ex).abs() < (b - &ex).abs(),
                };
                if better {
                    best = Some(r);
                }
            }
        }
        best.unwrap()
    }

    proptest! {
        #[test]
        fn rationalize_is_best_approximation(x in -50.0f64..50.0, max_den in 1i64..200) {
            let ours = rationalize(x, max_den as u64).unwrap();
            let ex = Rational::from_float(x).unwrap();
            let brute = best_by_scan(x, max_den);
            prop_assert!(ours.denom() <= &BigInt::from(max_den));
            prop_assert_eq!((&ours - &ex).abs(), (&brute - &ex).abs());
        }

        #[test]
        fn field_laws(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000,
                      d in 1i64..1000, e in -1000i64..1000, f in 1i64..1000) {
            let (x, y, z) = (rat(a, b), rat(c, d), rat(e, f));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            let s = &x * &y + &z;
            prop_assert!(num_integer::Integer::gcd(s.numer(), s.denom()).is_one());
            prop_assert!(s.denom().is_positive());
        }
    }

    #[test]
    fn formatting_and_parsing() {
        assert_eq!(Pq(&int(3)).to_string(), "3/1");
        assert_eq!(Pq(&rat(-70, 22)).to_string(), "-35/11");
        assert_eq!(Pq(&Rational::zero()).to_string(), "0/1");
        assert_eq!(
            PqComplex(&gauss(rat(1, 2), rat(-3, 4))).to_string(),
            "1/2-3/4 i"
        );
        assert_eq!(parse_rational("35/11").unwrap(), rat(35, 11));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
