//! Exact scalars `a + b√n` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a + b√n`. When `n` is a perfect square the radical is folded into `a`,
/// so `b = 0` and equality stays componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
    n: u64,
}

fn square_root(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational, n: u64) -> Self {
        match square_root(n) {
            Some(r) => QuadScalar {
                a: a + b * BigRational::from_integer(BigInt::from(r)),
                b: BigRational::zero(),
                n,
            },
            None => QuadScalar { a, b, n },
        }
    }

    pub fn rational(a: BigRational, n: u64) -> Self {
        QuadScalar::new(a, BigRational::zero(), n)
    }

    pub fn from_int(a: i64, n: u64) -> Self {
        QuadScalar::rational(rat(a, 1), n)
    }

    pub fn from_ratio(num: i64, den: i64, n: u64) -> Self {
        QuadScalar::rational(rat(num, den), n)
    }

    pub fn zero(n: u64) -> Self {
        QuadScalar::from_int(0, n)
    }

    pub fn one(n: u64) -> Self {
        QuadScalar::from_int(1, n)
    }

    /// `√n`.
    pub fn sqrt_n(n: u64) -> Self {
        QuadScalar::new(BigRational::zero(), BigRational::one(), n)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "scalars over different radicands");
    }

    /// Exact sign of `a + b√n`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sa == sb || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a² with b²n
        let a2 = &self.a * &self.a;
        let b2n = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.n));
        match a2.cmp(&b2n) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.signum() != Ordering::Less
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        let norm = &self.a * &self.a
            - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.n));
        Ok(QuadScalar::new(&self.a / &norm, -&self.b / &norm, self.n))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * (self.n as f64).sqrt()
    }

    /// Parses `a`, `b√n`, `a+b√n`, `a-b√n` with rational `a`, `b`; the
    /// radicand written in the literal must equal `n` when present.
    pub fn parse(text: &str, n: u64) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad scalar literal {text:?}"));
        if t.is_empty() {
            return Err(bad());
        }
        let Some(root) = t.find('√') else {
            return Ok(QuadScalar::rational(parse_rational(&t).ok_or_else(bad)?, n));
        };
        let radicand: u64 = t[root + '√'.len_utf8()..].parse().map_err(|_| bad())?;
        if radicand != n {
            return Err(Error::Parse(format!("radicand {radicand} in {text:?}, expected {n}")));
        }
        let head = &t[..root];
        // split the rational part from the coefficient at the last top-level sign
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (a_text, b_text) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_text.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(a_text).ok_or_else(bad)?
        };
        let b = match b_text.trim_start_matches('+') {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            s => parse_rational(s).ok_or_else(bad)?,
        };
        Ok(QuadScalar::new(a, b, n))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p.parse().ok()?, q))
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = if self.b.abs().is_one() {
            String::new()
        } else {
            self.b.abs().to_string()
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{coeff}√{}", self.n)
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{coeff}√{}", self.a, self.n)
        }
    }
}

impl Add for &QuadScalar {
    type Output = QuadScalar;
    fn add(self, o: &QuadScalar) -> QuadScalar {
        self.check(o);
        QuadScalar { a: &self.a + &o.a, b: &self.b + &o.b, n: self.n }
    }
}

impl Sub for &QuadScalar {
    type Output = QuadScalar;
    fn sub(self, o: &QuadScalar) -> QuadScalar {
        self.check(o);
        QuadScalar { a: &self.a - &o.a, b: &self.b - &o.b, n: self.n }
    }
}

impl Mul for &QuadScalar {
    type Output = QuadScalar;
    fn mul(self, o: &QuadScalar) -> QuadScalar {
        self.check(o);
        let n = BigRational::from_integer(BigInt::from(self.n));
        QuadScalar {
            a: &self.a * &o.a + &self.b * &o.b * n,
            b: &self.a * &o.b + &self.b * &o.a,
            n: self.n,
        }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -&self.a, b: -&self.b, n: self.n }
    }
}

impl Add for QuadScalar {
    type Output = QuadScalar;
    fn add(self, o: QuadScalar) -> QuadScalar {
        &self + &o
    }
}

impl Sub for QuadScalar {
    type Output = QuadScalar;
    fn sub(self, o: QuadScalar) -> QuadScalar {
        &self - &o
    }
}

impl Mul for QuadScalar {
    type Output = QuadScalar;
    fn mul(self, o: QuadScalar) -> QuadScalar {
        &self * &o
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let r = QuadScalar::sqrt_n(2);
        assert_eq!(&r * &r, QuadScalar::from_int(2, 2));
        let x = QuadScalar::parse("1+√2", 2).unwrap();
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, QuadScalar::one(2));
        assert_eq!(y.to_string(), "-1+√2");
    }

    #[test]
    fn perfect_square_folds() {
        let r = QuadScalar::sqrt_n(4);
        assert_eq!(r, QuadScalar::from_int(2, 4));
        assert_eq!(QuadScalar::parse("1/2+3√9", 9).unwrap(), QuadScalar::from_ratio(19, 2, 9));
    }

    #[test]
    fn signs() {
        let s = |t: &str| QuadScalar::parse(t, 2).unwrap().signum();
        assert_eq!(s("3-2√2"), Ordering::Greater);
        assert_eq!(s("1-√2"), Ordering::Less);
        assert_eq!(s("-3+2√2"), Ordering::Less);
        assert_eq!(s("-1+√2"), Ordering::Greater);
        assert_eq!(s("0"), Ordering::Equal);
        assert_eq!(s("-√2"), Ordering::Less);
    }

    #[test]
    fn parse_display_round_trip() {
        for t in ["0", "1/2", "-3", "√6", "-√6", "2/3√6", "1+√6", "1/2-5/7√6", "-4+2√6"] {
            let x = QuadScalar::parse(t, 6).unwrap();
            assert_eq!(x.to_string(), t);
        }
        assert!(QuadScalar::parse("1+√5", 6).is_err());
        assert!(QuadScalar::parse("", 6).is_err());
        assert!(QuadScalar::parse("1/0", 6).is_err());
    }
}
