//! Dense univariate polynomials in `q` with exact integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// Ascending coefficients, no trailing zeros (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct CountPolynomial(Vec<i128>);

impl CountPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        CountPolynomial(coeffs)
    }

    pub fn zero() -> Self {
        CountPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        Self::term(1, k)
    }

    /// `c q^k`.
    pub fn term(c: i128, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `q - 1`.
    pub fn q_minus_one() -> Self {
        Self::new(vec![-1, 1])
    }

    /// `q^k - 1`.
    pub fn q_pow_minus_one(k: usize) -> Self {
        &Self::monomial(k) - &Self::one()
    }

    /// `q^k + 1`.
    pub fn q_pow_plus_one(k: usize) -> Self {
        &Self::monomial(k) + &Self::one()
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation; errors on overflow.
    pub fn eval(&self, q: i128) -> Result<i128> {
        let overflow = || Error::Invariant(format!("overflow evaluating {self} at q = {q}"));
        self.0.iter().rev().try_fold(0i128, |acc, &c| {
            acc.checked_mul(q).and_then(|x| x.checked_add(c)).ok_or_else(overflow)
        })
    }

    /// Quotient and remainder by a divisor with leading coefficient ±1.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let lead = d.leading();
        if lead != 1 && lead != -1 {
            return Err(Error::InvalidArgument(format!("divisor {d} is not monic up to sign")));
        }
        let dd = d.degree().expect("nonzero divisor");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0i128; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd] * lead;
            quot[i] = c;
            if c != 0 {
                for (j, &dj) in d.0.iter().enumerate() {
                    rem[i + j] = rem[i + j].checked_sub(c.checked_mul(dj).expect("coefficient overflow")).expect("coefficient overflow");
                }
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient, failing unless the division leaves no remainder.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("({self}) / ({d}) leaves remainder {r}")));
        }
        Ok(q)
    }

    /// Coefficients reversed: `q^deg p(1/q)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.0.iter().rev().copied().collect())
    }

    pub fn is_reciprocal(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Cyclotomic factorization: `(factors, cofactor)` where `factors` lists
    /// `(k, multiplicity)` for the k-th cyclotomic polynomial.
    pub fn cyclotomic_factors(&self) -> (Vec<(usize, usize)>, Self) {
        let mut rest = self.clone();
        let mut out = Vec::new();
        let Some(deg) = self.degree() else { return (out, rest) };
        // totient(k) >= sqrt(k / 2), so larger k cannot divide
        for k in 1..=2 * deg * deg + 2 {
            if totient(k) > rest.degree().unwrap_or(0) {
                continue;
            }
            let phi = cyclotomic(k);
            let mut m = 0;
            while let Ok((q, r)) = rest.div_rem(&phi) {
                if !r.is_zero() || rest.degree() == Some(0) {
                    break;
                }
                rest = q;
                m += 1;
            }
            if m > 0 {
                out.push((k, m));
            }
        }
        (out, rest)
    }

    /// Human-readable product of cyclotomic factors times the cofactor.
    pub fn factored(&self) -> String {
        if self.degree().unwrap_or(0) == 0 {
            return self.to_string();
        }
        let (factors, rest) = self.cyclotomic_factors();
        let mut parts = Vec::new();
        if rest != Self::one() {
            if rest == Self::constant(-1) {
                parts.push("-1".to_string());
            } else {
                parts.push(format!("({rest})"));
            }
        }
        for (k, m) in factors {
            let body = format!("({})", cyclotomic(k));
            parts.push(if m == 1 { body } else { format!("{body}^{m}") });
        }
        parts.join(" ")
    }
}

fn totient(k: usize) -> usize {
    (1..=k).filter(|&j| gcd(j, k) == 1).count()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The k-th cyclotomic polynomial, from `q^k - 1 = prod_{d | k} Phi_d`.
pub fn cyclotomic(k: usize) -> CountPolynomial {
    assert!(k >= 1);
    let mut p = CountPolynomial::q_pow_minus_one(k);
    for d in 1..k {
        if k % d == 0 {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic divisibility");
        }
    }
    p
}

impl fmt::Display for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{k}")?,
                _ => write!(f, "{a}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &CountPolynomial {
    type Output = CountPolynomial;
    fn add(self, o: &CountPolynomial) -> CountPolynomial {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = o.0.get(i).copied().unwrap_or(0);
                a.checked_add(b).expect("coefficient overflow")
            })
            .collect();
        CountPolynomial::new(v)
    }
}

impl Neg for &CountPolynomial {
    type Output = CountPolynomial;
    fn neg(self) -> CountPolynomial {
        CountPolynomial(self.0.iter().map(|&c| -c).collect())
    }
}

impl Sub for &CountPolynomial {
    type Output = CountPolynomial;
    fn sub(self, o: &CountPolynomial) -> CountPolynomial {
        self + &(-o)
    }
}

impl Mul for &CountPolynomial {
    type Output = CountPolynomial;
    fn mul(self, o: &CountPolynomial) -> CountPolynomial {
        if self.is_zero() || o.is_zero() {
            return CountPolynomial::zero();
        }
        let mut v = vec![0i128; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                let t = a.checked_mul(b).expect("coefficient overflow");
                v[i + j] = v[i + j].checked_add(t).expect("coefficient overflow");
            }
        }
        CountPolynomial::new(v)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CountPolynomial {
            type Output = CountPolynomial;
            fn $m(self, o: CountPolynomial) -> CountPolynomial {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Result of dividing out `(q - 1)^rank` and testing the quotient for
/// palindromic coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityReport {
    pub divisible: bool,
    pub reciprocal: bool,
    pub quotient: Option<CountPolynomial>,
}

pub fn reciprocity_report(p: &CountPolynomial, rank: usize) -> Result<ReciprocityReport> {
    let d = CountPolynomial::q_minus_one().pow(rank);
    let quotient = p.div_exact(&d)?;
    Ok(ReciprocityReport { divisible: true, reciprocal: quotient.is_reciprocal(), quotient: Some(quotient) })
}
