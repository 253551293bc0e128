//! Exact univariate polynomial arithmetic over checked signed integers.
//!
//! Every inclusion-exclusion term and sum in this crate takes values in
//! [`Polynomial`]. Coefficients are fixed-width signed integers with checked
//! arithmetic: overflow is an error, never a silent wrap.

use std::fmt;

use num_traits::{CheckedNeg, PrimInt, Signed};

use crate::error::{Error, Result};

/// Coefficient scalar: a primitive signed integer with checked arithmetic.
///
/// Satisfied by `i8` through `i128` via the blanket impl. The crate-root
/// aliases fix the common widths: [`crate::IntPolynomial`] (`i64`) and
/// [`crate::WidePolynomial`] (`i128`).
pub trait Coeff:
    PrimInt + Signed + CheckedNeg + fmt::Display + fmt::Debug + Send + Sync + 'static
{
}

impl<T> Coeff for T where
    T: PrimInt + Signed + CheckedNeg + fmt::Display + fmt::Debug + Send + Sync + 'static
{
}

/// The sign of a summand: the `(-1)^{|I|}` factor, applied without ever
/// materializing a `-1` coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Parity sign of a set of the given cardinality.
    pub fn for_set_size(cardinality: u32) -> Sign {
        if cardinality % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Dense univariate polynomial with exact integer coefficients.
///
/// `coeffs[i]` holds the coefficient of `x^i`. Canonical form: the vector is
/// empty for the zero polynomial, otherwise its last entry is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Polynomial<C> {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// Builds a polynomial from coefficients in ascending degree order,
    /// restoring canonical form.
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(value: C) -> Self {
        Self::from_coeffs(vec![value])
    }

    /// `x^power` with coefficient one.
    pub fn monomial(power: usize) -> Self {
        let mut coeffs = vec![C::zero(); power + 1];
        coeffs[power] = C::one();
        Polynomial { coeffs }
    }

    /// `x^a (1+x)^b`, expanded exactly.
    pub fn monomial_times_binomial(a: usize, b: usize) -> Result<Self> {
        let mut row = vec![C::one()];
        for _ in 0..b {
            let mut next = vec![C::zero(); row.len() + 1];
            next[0] = row[0];
            for i in 1..row.len() {
                next[i] = row[i - 1].checked_add(&row[i]).ok_or(Error::Overflow)?;
            }
            next[row.len()] = row[row.len() - 1];
            row = next;
        }
        let mut coeffs = vec![C::zero(); a];
        coeffs.extend(row);
        Ok(Polynomial { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in ascending degree order (canonical form).
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `x^power`, zero beyond the stored degree.
    pub fn coeff(&self, power: usize) -> C {
        self.coeffs.get(power).copied().unwrap_or_else(C::zero)
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_signed_assign(other, Sign::Plus)?;
        Ok(out)
    }

    /// Adds (`Sign::Plus`) or subtracts (`Sign::Minus`) `other` in place.
    pub fn add_signed_assign(&mut self, other: &Self, sign: Sign) -> Result<()> {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), C::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let cur = self.coeffs[i];
            self.coeffs[i] = match sign {
                Sign::Plus => cur.checked_add(c),
                Sign::Minus => cur.checked_sub(c),
            }
            .ok_or(Error::Overflow)?;
        }
        self.normalize();
        Ok(())
    }

    /// Every coefficient multiplied by `+1` or `-1`.
    pub fn scale_signed(&self, sign: Sign) -> Result<Self> {
        match sign {
            Sign::Plus => Ok(self.clone()),
            Sign::Minus => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|c| c.checked_neg().ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Polynomial { coeffs })
            }
        }
    }

    /// The polynomial times `x^shift`.
    pub fn shifted(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); shift];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// Exact value at `point`, by Horner's rule.
    pub fn eval_at(&self, point: C) -> Result<C> {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(&point).ok_or(Error::Overflow)?;
            acc = acc.checked_add(c).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Machine-readable coefficient list, lowest degree first: `[0, -1, 1]`.
    pub fn coeff_list(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", items.join(", "))
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    /// Highest degree first, explicit signs: `x^6 - 4x^4 + 3x^3 + x^2 - x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for power in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[power];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            // Render the magnitude textually; |MIN| has no in-range negation.
            let digits = c.to_string();
            let magnitude = digits.strip_prefix('-').unwrap_or(&digits);
            match (power, magnitude == "1") {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{magnitude}x")?,
                (p, true) => write!(f, "x^{p}")?,
                (p, false) => write!(f, "{magnitude}x^{p}")?,
            }
        }
        Ok(())
    }
}
