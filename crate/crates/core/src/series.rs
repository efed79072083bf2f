//! Hilbert series of the form `N(z) / (1 - z)^d` with a Laurent-polynomial
//! numerator, and the h-vector data read off from them.
//!
//! Everything here is exact integer arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial `sum_i coeffs[i] * z^(valuation + i)` with integer
/// coefficients, kept in canonical form (no leading or trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    valuation: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(valuation: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { valuation, coeffs };
        p.canonicalize();
        p
    }

    pub fn from_i64s(valuation: i64, coeffs: &[i64]) -> Self {
        Self::new(valuation, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(exponent: i64, coeff: BigInt) -> Self {
        Self::new(exponent, vec![coeff])
    }

    fn canonicalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.valuation = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.valuation += lead as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the lowest term (0 for the zero polynomial).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Exponent of the highest term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.valuation + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^exponent`.
    pub fn coeff(&self, exponent: i64) -> BigInt {
        let i = exponent - self.valuation;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Coefficient reversal `z^(val + deg) * N(1/z)`, which keeps the support interval.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            valuation: self.valuation,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.valuation.min(other.valuation);
        let hi = self.degree().unwrap().max(other.degree().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + other.coeff(e)).collect();
        Self::new(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Substitutes `z -> z^k` for `k >= 1`.
    pub fn inflate(&self, k: u32) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let k = k as usize;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(self.valuation * k as i64, coeffs)
    }

    /// Inverse of [`inflate`](Self::inflate); `None` if some exponent is not a multiple of `k`.
    pub fn deflate(&self, k: u32) -> Option<Self> {
        if self.is_zero() || k == 1 {
            return Some(self.clone());
        }
        let k64 = k as i64;
        if self.valuation.rem_euclid(k64) != 0 {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / k as usize + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % k as usize == 0 {
                coeffs.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Self::new(self.valuation / k64, coeffs))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.valuation + i as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let var = if e == 1 { "z".to_string() } else { format!("z^{e}") };
            match e {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "{var}")?,
                _ => write!(f, "{a}*{var}")?,
            }
        }
        Ok(())
    }
}

/// Which degree convention a series (or an invariant) is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GradingTag {
    /// `deg y_ij = 1`: Gram entries have degree 2, maximal minors degree t.
    YGrading,
    /// All degrees halved: Gram entries have degree 1, maximal minors t/2.
    Rescaled,
}

impl fmt::Display for GradingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingTag::YGrading => write!(f, "YGrading"),
            GradingTag::Rescaled => write!(f, "Rescaled"),
        }
    }
}

/// `C(d - 1 + m, d - 1)`, the coefficient of `w^m` in `1 / (1 - w)^d`.
fn pole_coeff(d: u32, m: u64) -> BigInt {
    if d == 0 {
        return if m == 0 { BigInt::one() } else { BigInt::zero() };
    }
    binomial(BigInt::from(d as u64 - 1 + m), BigInt::from(d - 1))
}

/// A Hilbert series `numerator(z) / (1 - z^period)^dim`.
///
/// `period` is 1 for every series built directly; it becomes 2 only when a
/// `Rescaled` series is doubled back to `YGrading`, where the denominator
/// `(1 - z^2)^dim` cannot be rewritten over `(1 - z)^dim` with a polynomial
/// numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    numerator: LaurentPoly,
    dim: u32,
    grading: GradingTag,
    period: u32,
}

impl HilbertSeries {
    pub fn new(numerator: LaurentPoly, dim: u32, grading: GradingTag) -> Self {
        HilbertSeries {
            numerator,
            dim,
            grading,
            period: 1,
        }
    }

    /// A `YGrading` series over `(1 - z^2)^dim`, as for rings generated in degree two.
    pub fn over_squares(numerator: LaurentPoly, dim: u32) -> Self {
        HilbertSeries {
            numerator,
            dim,
            grading: GradingTag::YGrading,
            period: 2,
        }
    }

    /// `1 / (1 - z)^dim` in the given grading.
    pub fn polynomial_ring(dim: u32, grading: GradingTag) -> Self {
        Self::new(LaurentPoly::from_i64s(0, &[1]), dim, grading)
    }

    pub fn zero(dim: u32, grading: GradingTag) -> Self {
        Self::new(LaurentPoly::zero(), dim, grading)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn grading(&self) -> GradingTag {
        self.grading
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    /// Degree of the series as a rational function; `None` for the zero series.
    pub fn a_invariant(&self) -> Option<i64> {
        self.numerator
            .degree()
            .map(|deg| deg - (self.period * self.dim) as i64)
    }

    /// Hilbert function values `H(0), ..., H(max_degree)`.
    pub fn expand(&self, max_degree: u32) -> Result<Vec<BigInt>> {
        if self.numerator.valuation() < 0 {
            return Err(Error::NotNGraded(self.numerator.valuation()));
        }
        let period = self.period as i64;
        let values = (0..=max_degree as i64)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, c) in self.numerator.coeffs().iter().enumerate() {
                    let gap = i - self.numerator.valuation() - j as i64;
                    if gap < 0 || gap % period != 0 {
                        continue;
                    }
                    acc += c * pole_coeff(self.dim, (gap / period) as u64);
                }
                acc
            })
            .collect();
        Ok(values)
    }

    /// Degree shift `M(a)_i = M_(a+i)`, i.e. multiplication by `z^(-a)`.
    pub fn twist(&self, a: i64) -> Self {
        HilbertSeries {
            numerator: self.numerator.shift(-a),
            ..self.clone()
        }
    }

    /// Series of the graded canonical module of a Cohen-Macaulay object:
    /// `(-1)^dim * HS(1/z)`.
    pub fn dual(&self) -> Self {
        let numerator = match self.numerator.degree() {
            None => LaurentPoly::zero(),
            Some(deg) => {
                let val = (self.period * self.dim) as i64 - deg;
                let mut coeffs = self.numerator.coeffs().to_vec();
                coeffs.reverse();
                LaurentPoly::new(val, coeffs)
            }
        };
        HilbertSeries {
            numerator,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim || self.grading != other.grading || self.period != other.period
        {
            return Err(Error::Incompatible(format!(
                "dim {} / {} over period {} vs dim {} / {} over period {}",
                self.dim, self.grading, self.period, other.dim, other.grading, other.period
            )));
        }
        Ok(HilbertSeries {
            numerator: self.numerator.add(&other.numerator),
            ..self.clone()
        })
    }

    pub fn h_vector(&self) -> Result<HVectorProfile> {
        if self.period != 1 || self.numerator.is_zero() {
            return Err(Error::NoHVector(self.to_string()));
        }
        if self.numerator.valuation() != 0 {
            return Err(Error::NotNormalized(self.numerator.valuation()));
        }
        let h = self.numerator.coeffs().to_vec();
        Ok(HVectorProfile::from_h(h, self.a_invariant().unwrap()))
    }

    /// Passes from `YGrading` to `Rescaled` by substituting `z^2 -> z`.
    pub fn rescale_halve(&self) -> Result<Self> {
        if self.grading != GradingTag::YGrading {
            return Err(Error::NotRescalable(
                "series is already in Rescaled grading".into(),
            ));
        }
        // Odd Hilbert function values vanish iff the numerator is even and the
        // pole is in z^2 (or absent).
        if self.period == 1 && self.dim > 0 && !self.numerator.is_zero() {
            return Err(Error::NotRescalable(format!(
                "{self} has nonzero Hilbert function in odd degrees"
            )));
        }
        let numerator = self.numerator.deflate(2).ok_or_else(|| {
            Error::NotRescalable(format!("numerator {} has odd-degree terms", self.numerator))
        })?;
        Ok(HilbertSeries {
            numerator,
            dim: self.dim,
            grading: GradingTag::Rescaled,
            period: 1,
        })
    }

    /// Formal inverse of [`rescale_halve`](Self::rescale_halve).
    pub fn rescale_double(&self) -> Result<Self> {
        if self.grading != GradingTag::Rescaled {
            return Err(Error::NotRescalable(
                "only Rescaled series can be doubled".into(),
            ));
        }
        Ok(HilbertSeries {
            numerator: self.numerator.inflate(2),
            dim: self.dim,
            grading: GradingTag::YGrading,
            period: if self.dim == 0 { 1 } else { 2 },
        })
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pole = if self.period == 1 {
            "z".to_string()
        } else {
            format!("z^{}", self.period)
        };
        write!(
            f,
            "({}) / (1 - {pole})^{} [{}]",
            self.numerator, self.dim, self.grading
        )
    }
}

/// The h-vector of a normalized series with its shape flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVectorProfile {
    pub h: Vec<BigInt>,
    pub palindrome: bool,
    pub unimodal: bool,
    pub a_invariant: i64,
}

impl HVectorProfile {
    pub fn from_h(h: Vec<BigInt>, a_invariant: i64) -> Self {
        let palindrome = is_palindrome(&h);
        let unimodal = if palindrome {
            h[..=(h.len() - 1) / 2].windows(2).all(|w| w[0] <= w[1])
        } else {
            rises_then_falls(&h)
        };
        HVectorProfile {
            h,
            palindrome,
            unimodal,
            a_invariant,
        }
    }

    /// Tuple notation, e.g. `(1, 3, 21, 20, 21, 3, 1)`.
    pub fn tuple(&self) -> String {
        format_tuple(&self.h)
    }
}

pub fn format_tuple<T: fmt::Display>(values: &[T]) -> String {
    let inner: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("({})", inner.join(", "))
}

fn is_palindrome(h: &[BigInt]) -> bool {
    h.iter().eq(h.iter().rev())
}

fn rises_then_falls(h: &[BigInt]) -> bool {
    let mut i = 1;
    while i < h.len() && h[i - 1] <= h[i] {
        i += 1;
    }
    while i < h.len() && h[i - 1] >= h[i] {
        i += 1;
    }
    i >= h.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn series(val: i64, coeffs: &[i64], dim: u32) -> HilbertSeries {
        HilbertSeries::new(LaurentPoly::from_i64s(val, coeffs), dim, GradingTag::Rescaled)
    }

    #[test]
    fn canonical_form_trims_zeros() {
        let p = LaurentPoly::from_i64s(-2, &[0, 0, 3, 0, 4, 0]);
        assert_eq!(p.valuation(), 0);
        assert_eq!(p.coeffs(), big(&[3, 0, 4]).as_slice());
        assert_eq!(p.degree(), Some(2));
        assert!(LaurentPoly::from_i64s(5, &[0, 0]).is_zero());
        assert_eq!(LaurentPoly::from_i64s(5, &[0]), LaurentPoly::zero());
    }

    #[test]
    fn expand_examples() {
        assert_eq!(series(0, &[1, 1], 2).expand(3).unwrap(), big(&[1, 3, 5, 7]));
        assert_eq!(
            series(0, &[1, 9, 9, 1], 7).expand(3).unwrap(),
            big(&[1, 16, 100, 400])
        );
        for n in 1..6u32 {
            let s = HilbertSeries::polynomial_ring(n, GradingTag::YGrading);
            let n = n as i64;
            assert_eq!(s.expand(2).unwrap(), big(&[1, n, n * (n + 1) / 2]));
        }
        // dim 0: values are the numerator itself
        assert_eq!(series(0, &[2, 5], 0).expand(3).unwrap(), big(&[2, 5, 0, 0]));
    }

    #[test]
    fn expand_rejects_negative_valuation() {
        let s = series(-1, &[1], 3);
        assert_eq!(s.expand(2), Err(Error::NotNGraded(-1)));
    }

    #[test]
    fn twist_examples() {
        let s = series(0, &[1], 1).twist(-3);
        assert_eq!(s.numerator(), &LaurentPoly::from_i64s(3, &[1]));
        let s = series(0, &[1, 3, 6], 7);
        let t = s.twist(-1);
        assert_eq!(t.numerator(), &LaurentPoly::from_i64s(1, &[1, 3, 6]));
        assert_eq!(t.dim(), 7);
        assert_eq!(t.twist(1), s);
    }

    #[test]
    fn dual_examples() {
        let d = series(0, &[1, 3, 6], 7).dual();
        assert_eq!(d.numerator(), &LaurentPoly::from_i64s(5, &[6, 3, 1]));
        let d = HilbertSeries::polynomial_ring(4, GradingTag::YGrading).dual();
        assert_eq!(d.numerator(), &LaurentPoly::from_i64s(4, &[1]));
        let d = series(0, &[1, 9, 9, 1], 7).dual();
        assert_eq!(d.numerator(), &LaurentPoly::from_i64s(4, &[1, 9, 9, 1]));
    }

    #[test]
    fn h_vector_examples() {
        let p = series(0, &[1, 3, 21, 20, 21, 3, 1], 18).h_vector().unwrap();
        assert!(p.palindrome);
        assert!(!p.unimodal);
        assert_eq!(p.a_invariant, 6 - 18);
        assert_eq!(p.tuple(), "(1, 3, 21, 20, 21, 3, 1)");

        let p = series(0, &[1, 9, 9, 1], 7).h_vector().unwrap();
        assert!(p.palindrome && p.unimodal);

        let p = series(0, &[1], 5).h_vector().unwrap();
        assert!(p.palindrome && p.unimodal);
        assert_eq!(p.a_invariant, -5);
    }

    #[test]
    fn h_vector_needs_valuation_zero() {
        assert_eq!(
            series(2, &[1, 2], 3).h_vector(),
            Err(Error::NotNormalized(2))
        );
    }

    #[test]
    fn unimodality_of_non_palindromes() {
        let p = series(0, &[1, 3, 6, 10, 15], 18).h_vector().unwrap();
        assert!(!p.palindrome);
        assert!(p.unimodal);
        let p = series(0, &[1, 3, 2, 4], 3).h_vector().unwrap();
        assert!(!p.unimodal);
    }

    #[test]
    fn rescaling_second_veronese() {
        // K[y1^2, y1 y2, y2^2] in YGrading: (1 + z^2) / (1 - z^2)^2
        let y = HilbertSeries::over_squares(LaurentPoly::from_i64s(0, &[1, 0, 1]), 2);
        assert_eq!(y.expand(6).unwrap(), big(&[1, 0, 3, 0, 5, 0, 7]));
        let r = y.rescale_halve().unwrap();
        assert_eq!(r, series(0, &[1, 1], 2));
        assert_eq!(r.rescale_double().unwrap(), y);
        assert_eq!(y.a_invariant(), Some(-2));
        assert_eq!(r.a_invariant(), Some(-1));
    }

    #[test]
    fn halving_rejects_odd_support() {
        let s = HilbertSeries::polynomial_ring(2, GradingTag::YGrading);
        assert!(matches!(s.rescale_halve(), Err(Error::NotRescalable(_))));
        let s = HilbertSeries::over_squares(LaurentPoly::from_i64s(0, &[1, 1]), 2);
        assert!(matches!(s.rescale_halve(), Err(Error::NotRescalable(_))));
        assert!(series(0, &[1], 2).rescale_halve().is_err());
    }

    #[test]
    fn add_examples() {
        let r = series(0, &[1, 3, 6, 10, 15], 18);
        let p = series(2, &[15, 10, 6, 3, 1], 18);
        assert_eq!(r.add(&p).unwrap(), series(0, &[1, 3, 21, 20, 21, 3, 1], 18));
        assert_eq!(r.add(&HilbertSeries::zero(18, GradingTag::Rescaled)).unwrap(), r);
        assert_eq!(r.add(&p).unwrap(), p.add(&r).unwrap());
        assert!(matches!(
            r.add(&series(0, &[1], 17)),
            Err(Error::Incompatible(_))
        ));
    }

    #[test]
    fn display() {
        let s = series(0, &[1, -3, 1], 2);
        assert_eq!(s.to_string(), "(1 - 3*z + z^2) / (1 - z)^2 [Rescaled]");
    }
}
