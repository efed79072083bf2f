//! Closed-form invariants of the symmetric determinantal ring
//! `R = K[X]/I_{t+1}(X) = K[Y^T Y]`.
//!
//! Degrees are `YGrading` (`deg x_ij = 2`) unless a value says otherwise;
//! every a-invariant carries its grading tag.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::oracle::{hilbert_function, reconstruct_numerator, GeneratorLabel, OracleConfig};
use crate::polys::MatrixShape;
use crate::series::{GradingTag, HilbertSeries, LaurentPoly};

/// The ring `K[Y^T Y]` for a `t x n` matrix `Y`, with `1 <= t <= n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingSpec {
    t: u32,
    n: u32,
}

impl RingSpec {
    pub fn new(t: u32, n: u32) -> Result<Self> {
        if t == 0 || t >= n {
            return Err(Error::InvalidSpec { t, n });
        }
        Ok(RingSpec { t, n })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn shape(&self) -> MatrixShape {
        MatrixShape { t: self.t, n: self.n }
    }

    /// `n = t (mod 2)`: the non-Gorenstein parity.
    pub fn same_parity(&self) -> bool {
        (self.n - self.t).is_multiple_of(2)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={}, n={}", self.t, self.n)
    }
}

/// An a-invariant together with the grading it is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AInvariant {
    pub value: i64,
    pub grading: GradingTag,
}

impl AInvariant {
    pub fn y(value: i64) -> Self {
        AInvariant {
            value,
            grading: GradingTag::YGrading,
        }
    }

    /// Halves a `YGrading` value; odd values have no rescaled counterpart.
    pub fn rescaled(&self) -> Result<AInvariant> {
        match self.grading {
            GradingTag::Rescaled => Ok(*self),
            GradingTag::YGrading if self.value % 2 == 0 => Ok(AInvariant {
                value: self.value / 2,
                grading: GradingTag::Rescaled,
            }),
            GradingTag::YGrading => Err(Error::NotRescalable(format!(
                "a-invariant {} is odd",
                self.value
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalCase {
    /// `omega_R = p(-tn + t)`.
    PTwist,
    /// `omega_R = R(-tn)`.
    FreeTwist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalDescriptor {
    pub case: CanonicalCase,
    /// `YGrading` shift of the canonical module.
    pub twist: i64,
}

fn choose2(x: u32) -> u32 {
    x * x.saturating_sub(1) / 2
}

/// `C(n+1, 2) - C(n+1-t, 2)`.
pub fn krull_dim(spec: RingSpec) -> u32 {
    choose2(spec.n + 1) - choose2(spec.n + 1 - spec.t)
}

pub fn is_gorenstein(spec: RingSpec) -> bool {
    !spec.same_parity()
}

pub fn a_invariant_r(spec: RingSpec) -> AInvariant {
    let (t, n) = (spec.t as i64, spec.n as i64);
    if spec.same_parity() {
        AInvariant::y(-t * (n + 1))
    } else {
        AInvariant::y(-t * n)
    }
}

pub fn canonical_descriptor(spec: RingSpec) -> CanonicalDescriptor {
    let (t, n) = (spec.t as i64, spec.n as i64);
    if spec.same_parity() {
        CanonicalDescriptor {
            case: CanonicalCase::PTwist,
            twist: -t * n + t,
        }
    } else {
        CanonicalDescriptor {
            case: CanonicalCase::FreeTwist,
            twist: -t * n,
        }
    }
}

/// `(C(2,2) + C(3,2) z + ... + C(n,2) z^(n-2)) / (1 - z)^dim` for `n = t + 2`.
pub fn h_poly_codim3(spec: RingSpec) -> Result<HilbertSeries> {
    if spec.n != spec.t + 2 {
        return Err(Error::NotCodimThree {
            t: spec.t,
            n: spec.n,
        });
    }
    let coeffs = (2..=spec.n).map(|i| BigInt::from(choose2(i))).collect();
    Ok(HilbertSeries::new(
        LaurentPoly::new(0, coeffs),
        krull_dim(spec),
        GradingTag::Rescaled,
    ))
}

/// Numerator degree of `HS(R)` in the rescaled grading: `dim + a(R)/2`.
pub fn numerator_degree_r(spec: RingSpec) -> u32 {
    let a = a_invariant_r(spec)
        .rescaled()
        .expect("Gram generators have even degree")
        .value;
    (krull_dim(spec) as i64 + a) as u32
}

/// Reconstructs a rescaled series with known dimension and numerator degree
/// `k` from oracle values; one extra degree is used as a check when the
/// budget allows.
pub(crate) fn series_from_oracle(
    spec: RingSpec,
    label: GeneratorLabel,
    dim: u32,
    k: u32,
    budget: u32,
    cfg: &OracleConfig,
) -> Result<HilbertSeries> {
    if k > budget {
        return Err(Error::BudgetExceeded {
            required: k,
            budget,
        });
    }
    let top = (k + 1).min(budget);
    let table = hilbert_function(spec.shape(), label, top, cfg)?;
    if table.grading != GradingTag::Rescaled {
        return Err(Error::NoSemistandardGrading(spec.t));
    }
    let values = table.dimensions_big();
    let numerator = reconstruct_numerator(&values, dim, k)?;
    if numerator.coeff(k as i64).is_zero() {
        return Err(Error::InconsistentSeries(format!(
            "reconstructed numerator {numerator} has degree below {k}"
        )));
    }
    let series = HilbertSeries::new(numerator, dim, GradingTag::Rescaled);
    if series.expand(top)? != values {
        return Err(Error::InconsistentSeries(format!(
            "{series} does not reproduce the oracle values"
        )));
    }
    Ok(series)
}

/// Hilbert series of `R` in the rescaled grading: closed form in codimension
/// three, otherwise reconstructed from the oracle.
pub fn h_poly_r(spec: RingSpec, oracle_budget: u32, cfg: &OracleConfig) -> Result<HilbertSeries> {
    if spec.n == spec.t + 2 {
        return h_poly_codim3(spec);
    }
    series_from_oracle(
        spec,
        GeneratorLabel::GramOnly,
        krull_dim(spec),
        numerator_degree_r(spec),
        oracle_budget,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(t: u32, n: u32) -> RingSpec {
        RingSpec::new(t, n).unwrap()
    }

    fn numer(v: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(0, v)
    }

    #[test]
    fn spec_validation() {
        assert!(RingSpec::new(0, 3).is_err());
        assert_eq!(RingSpec::new(3, 3), Err(Error::InvalidSpec { t: 3, n: 3 }));
        assert!(RingSpec::new(2, 3).is_ok());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(krull_dim(spec(4, 6)), 18);
        assert_eq!(krull_dim(spec(2, 3)), 5);
        assert_eq!(krull_dim(spec(1, 2)), 2);
        for m in 1..8u32 {
            assert_eq!(krull_dim(spec(2 * m, 2 * m + 2)), 2 * m * m + 5 * m);
        }
    }

    #[test]
    fn gorenstein_examples() {
        assert!(is_gorenstein(spec(2, 3)));
        assert!(!is_gorenstein(spec(4, 6)));
        assert!(is_gorenstein(spec(1, 2)));
    }

    #[test]
    fn a_invariant_examples() {
        assert_eq!(a_invariant_r(spec(2, 4)), AInvariant::y(-10));
        assert_eq!(a_invariant_r(spec(2, 3)), AInvariant::y(-6));
        assert_eq!(a_invariant_r(spec(3, 5)), AInvariant::y(-18));
        assert_eq!(a_invariant_r(spec(2, 4)).rescaled().unwrap().value, -5);
        assert!(AInvariant::y(-3).rescaled().is_err());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical_descriptor(spec(4, 6)),
            CanonicalDescriptor { case: CanonicalCase::PTwist, twist: -20 }
        );
        assert_eq!(
            canonical_descriptor(spec(2, 3)),
            CanonicalDescriptor { case: CanonicalCase::FreeTwist, twist: -6 }
        );
        assert_eq!(
            canonical_descriptor(spec(1, 3)),
            CanonicalDescriptor { case: CanonicalCase::PTwist, twist: -2 }
        );
    }

    #[test]
    fn parity_consistency() {
        for n in 2..=13 {
            for t in 1..n {
                let s = spec(t, n);
                assert_eq!(
                    is_gorenstein(s),
                    canonical_descriptor(s).case == CanonicalCase::FreeTwist
                );
            }
        }
    }

    #[test]
    fn codim3_examples() {
        let s = h_poly_codim3(spec(2, 4)).unwrap();
        assert_eq!(s, HilbertSeries::new(numer(&[1, 3, 6]), 7, GradingTag::Rescaled));
        let s = h_poly_codim3(spec(4, 6)).unwrap();
        assert_eq!(s.numerator(), &numer(&[1, 3, 6, 10, 15]));
        assert_eq!(s.dim(), 18);
        let s = h_poly_codim3(spec(6, 8)).unwrap();
        assert_eq!(s.numerator(), &numer(&[1, 3, 6, 10, 15, 21, 28]));
        assert_eq!(s.dim(), 33);
        assert_eq!(
            h_poly_codim3(spec(2, 5)),
            Err(Error::NotCodimThree { t: 2, n: 5 })
        );
    }

    #[test]
    fn codim3_consistency() {
        for t in 1..=10 {
            let s = spec(t, t + 2);
            let hs = h_poly_codim3(s).unwrap();
            assert_eq!(hs.numerator().degree(), Some(t as i64));
            assert_eq!(
                hs.a_invariant().unwrap(),
                a_invariant_r(s).rescaled().unwrap().value
            );
        }
    }

    #[test]
    fn h_poly_r_examples() {
        let cfg = OracleConfig::default();
        assert_eq!(
            h_poly_r(spec(2, 4), 0, &cfg).unwrap().numerator(),
            &numer(&[1, 3, 6])
        );
        assert_eq!(
            h_poly_r(spec(2, 3), 4, &cfg).unwrap(),
            HilbertSeries::new(numer(&[1, 1, 1]), 5, GradingTag::Rescaled)
        );
        assert_eq!(
            h_poly_r(spec(1, 2), 4, &cfg).unwrap(),
            HilbertSeries::new(numer(&[1, 1]), 2, GradingTag::Rescaled)
        );
    }

    #[test]
    fn h_poly_r_refuses_small_budget() {
        let cfg = OracleConfig::default();
        assert_eq!(
            h_poly_r(spec(2, 3), 1, &cfg),
            Err(Error::BudgetExceeded { required: 2, budget: 1 })
        );
    }
}
