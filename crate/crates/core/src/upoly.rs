//! Dense univariate polynomials over `Z` in ascending coefficient order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial `Σ coeffs[i]·t^i` with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// `c·t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`, or `None` if some division is inexact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// `self mod t^n`
    pub fn truncate(&self, n: usize) -> IntPoly {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `(q, r)` with `self = q·d + r` over `Z[t]` when the quotient is integral.
    /// Returns `None` if a leading-coefficient division is inexact.
    pub fn div_rem_exact(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dl = d.leading()?.clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            for (i, b) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * b;
            }
            q[k] = c;
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Exact quotient `self / d`, `None` unless `d` divides `self` in `Z[t]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        match self.div_rem_exact(d)? {
            (q, r) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder of `self` by `d`: remainder of `lc(d)^{δ+1}·self`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let Some(dl) = d.leading() else {
            return self.clone();
        };
        let dd = d.coeffs.len() - 1;
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading().cloned().unwrap_or_default();
            // r <- lc(d)·r - lc(r)·t^{rd-dd}·d
            r = r.scale(dl).sub(&d.scale(&rl).shift(rd - dd));
        }
        r
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c).unwrap_or_default()
    }

    /// Primitive gcd over `Q[t]` (positive leading coefficient), via the
    /// primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    pub fn eval_zero(&self) -> BigInt {
        self.coeff(0)
    }
}

/// Ascending form in `t`: `1+2*t`, `1-t-2*t^2`, `-3*t^4`, `0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(p(&[1, 1]).mul(&p(&[1, -2])), p(&[1, -1, -2]));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[1, 2]).sub(&p(&[1, 2])), IntPoly::zero());
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, -1, -2]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[1, -2])));
        assert_eq!(a.div_exact(&p(&[1, 3])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
        assert_eq!(p(&[3, 4]).div_exact(&p(&[2])), None);
    }

    #[test]
    fn gcds() {
        let g = p(&[1, 1]);
        let a = g.mul(&p(&[1, -2]));
        let b = g.mul(&p(&[3, 0, 1])).scale(&BigInt::from(6));
        assert_eq!(a.gcd(&b), g);
        assert_eq!(p(&[1, 2]).gcd(&p(&[1, -1, -2])), IntPoly::one());
        assert_eq!(p(&[0, 2]).gcd(&IntPoly::zero()), p(&[0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 2]).to_string(), "1+2*t");
        assert_eq!(p(&[1, -1, -2]).to_string(), "1-t-2*t^2");
        assert_eq!(p(&[0, 0, 0, 0, -3]).to_string(), "-3*t^4");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
