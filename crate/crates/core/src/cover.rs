//! Hilbert series of the cyclic cover `R~ = K[Y^T Y, maxminors(Y)] = R + p(t)`.
//!
//! In the same-parity case `omega_R = p(-tn + t)`, so the series of `p` is a
//! twist of the dual of `HS(R)`, and `HS(R~) = HS(R) + HS(p(t))`. In the
//! other parity there is no closed form for `HS(p)` and the series is
//! reconstructed from the oracle instead.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::oracle::{hilbert_function, GeneratorLabel, HilbertTable, OracleConfig};
use crate::polys::MatrixShape;
use crate::series::{GradingTag, HVectorProfile, HilbertSeries};
use crate::symdet::{h_poly_codim3, h_poly_r, krull_dim, series_from_oracle, RingSpec};

/// Rescaled a-invariant of the cover: `-tn/2`.
fn cover_a_rescaled(spec: RingSpec) -> i64 {
    -((spec.t() * spec.n()) as i64) / 2
}

fn check_gorenstein(spec: RingSpec, series: &HilbertSeries) -> Result<()> {
    let profile = series.h_vector()?;
    if !profile.palindrome {
        return Err(Error::InconsistentSeries(format!(
            "cover numerator {} is not palindromic",
            profile.tuple()
        )));
    }
    if profile.a_invariant != cover_a_rescaled(spec) {
        return Err(Error::InconsistentSeries(format!(
            "cover a-invariant {} differs from -tn/2 = {}",
            profile.a_invariant,
            cover_a_rescaled(spec)
        )));
    }
    Ok(())
}

/// `HS(R) + z^e * reverse(N_R) / (1 - z)^d` with `e = d - k - t(n-1)/2 - t/2`.
pub fn cover_series_closed(spec: RingSpec, hs_r: &HilbertSeries) -> Result<HilbertSeries> {
    let (t, n) = (spec.t(), spec.n());
    if t % 2 != 0 || !spec.same_parity() {
        return Err(Error::NotPTwist { t, n });
    }
    if hs_r.grading() != GradingTag::Rescaled || hs_r.period() != 1 {
        return Err(Error::InconsistentSeries(format!(
            "expected a Rescaled series over (1-z)^d, got {hs_r}"
        )));
    }
    let num = hs_r.numerator();
    let k = match num.degree() {
        Some(k) if num.valuation() == 0 => k,
        _ => {
            return Err(Error::InconsistentSeries(format!(
                "numerator {num} is not normalized"
            )))
        }
    };
    let d = hs_r.dim() as i64;
    if d != krull_dim(spec) as i64 {
        return Err(Error::InconsistentSeries(format!(
            "series has dimension {d}, ring has {}",
            krull_dim(spec)
        )));
    }
    let s = (t * (n - 1) / 2) as i64;
    let e = d - k - s - (t / 2) as i64;
    if e < 1 {
        return Err(Error::InconsistentSeries(format!(
            "p(t) would start in degree {e} < 1"
        )));
    }
    let p_twisted = HilbertSeries::new(num.reversed().shift(e), hs_r.dim(), GradingTag::Rescaled);
    let cover = hs_r.add(&p_twisted)?;
    check_gorenstein(spec, &cover)?;
    Ok(cover)
}

/// Hilbert series of the cover in the rescaled grading (`t` even).
pub fn cover_series(spec: RingSpec, oracle_budget: u32, cfg: &OracleConfig) -> Result<HilbertSeries> {
    if !spec.t().is_multiple_of(2) {
        return Err(Error::NoSemistandardGrading(spec.t()));
    }
    if spec.same_parity() {
        let hs_r = h_poly_r(spec, oracle_budget, cfg)?;
        return cover_series_closed(spec, &hs_r);
    }
    let d = krull_dim(spec);
    let k = d as i64 + cover_a_rescaled(spec);
    let k = u32::try_from(k).map_err(|_| {
        Error::InconsistentSeries(format!("negative numerator degree {k}"))
    })?;
    let series = series_from_oracle(spec, GeneratorLabel::GramPlusMinors, d, k, oracle_budget, cfg)?;
    check_gorenstein(spec, &series)?;
    Ok(series)
}

/// Oracle Hilbert function of the cover; `YGrading` for odd `t`, `Rescaled` otherwise.
pub fn cover_hilbert_table(shape: MatrixShape, max_degree: u32, cfg: &OracleConfig) -> Result<HilbertTable> {
    hilbert_function(shape, GeneratorLabel::GramPlusMinors, max_degree, cfg)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub spec: RingSpec,
    pub series: HilbertSeries,
    pub profile: HVectorProfile,
    /// `YGrading` a-invariant, `-tn`.
    pub a_invariant_y: i64,
    /// `h_m - h_(m+1)` for `t = 2m`, `n = t + 2`.
    pub gap: Option<BigInt>,
    /// Oracle dimensions compared against the series, if requested.
    pub oracle: Option<HilbertTable>,
}

impl CoverReport {
    /// Builds the report for any series accepted by [`cover_series`].
    pub fn new(spec: RingSpec, series: HilbertSeries) -> Result<Self> {
        let profile = series.h_vector()?;
        let gap = (spec.n() == spec.t() + 2).then(|| {
            let m = (spec.t() / 2) as usize;
            &profile.h[m] - &profile.h[m + 1]
        });
        Ok(CoverReport {
            spec,
            a_invariant_y: 2 * profile.a_invariant,
            series,
            profile,
            gap,
            oracle: None,
        })
    }

    /// Checks the series against oracle dimensions up to `max_degree` (rescaled).
    pub fn attach_oracle(&mut self, max_degree: u32, cfg: &OracleConfig) -> Result<()> {
        let table = hilbert_function(self.spec.shape(), GeneratorLabel::GramPlusMinors, max_degree, cfg)?;
        let expected = self.series.expand(max_degree)?;
        for ((deg, got), want) in table.values.iter().zip(&expected) {
            if BigInt::from(*got) != *want {
                return Err(Error::OracleMismatch {
                    degree: *deg,
                    expected: want.to_string(),
                    actual: got.to_string(),
                });
            }
        }
        self.oracle = Some(table);
        Ok(())
    }
}

/// The `2m x (2m+2)` family: closed-form cover series, gap `h_m - h_(m+1) = m - 1`,
/// unimodal exactly for `m <= 1`.
pub fn family_report(m: u32, with_oracle: bool, oracle_budget: u32, cfg: &OracleConfig) -> Result<CoverReport> {
    if m == 0 {
        return Err(Error::InvalidSpec { t: 0, n: 2 });
    }
    let spec = RingSpec::new(2 * m, 2 * m + 2)?;
    let hs_r = h_poly_codim3(spec)?;
    let series = cover_series_closed(spec, &hs_r)?;
    let mut report = CoverReport::new(spec, series)?;
    let gap = report.gap.as_ref().and_then(ToPrimitive::to_i64);
    if gap != Some(m as i64 - 1) {
        return Err(Error::InconsistentSeries(format!(
            "gap h_m - h_(m+1) = {gap:?}, expected {}",
            m as i64 - 1
        )));
    }
    if report.profile.unimodal != (m <= 1) {
        return Err(Error::InconsistentSeries(format!(
            "unimodal = {} for m = {m}",
            report.profile.unimodal
        )));
    }
    if report.a_invariant_y != -((spec.t() * spec.n()) as i64) {
        return Err(Error::InconsistentSeries(format!(
            "a-invariant {} differs from -tn",
            report.a_invariant_y
        )));
    }
    if with_oracle {
        report.attach_oracle(oracle_budget, cfg)?;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseCheck {
    pub n: u32,
    pub holds: bool,
    /// Oracle values `H(0..=budget)` of the `t = 1` cover.
    pub values: Vec<u64>,
}

/// For `t = 1` the cover `K[y_i y_j, y_i]` is all of `K[Y]`: its Hilbert
/// function must be `C(n - 1 + D, n - 1)`.
pub fn veronese_check(n: u32, budget: u32, cfg: &OracleConfig) -> Result<VeroneseCheck> {
    let shape = MatrixShape::new(1, n)?;
    let table = cover_hilbert_table(shape, budget, cfg)?;
    let polynomial_ring = HilbertSeries::polynomial_ring(n, GradingTag::YGrading).expand(budget)?;
    let values = table.dimensions();
    let holds = table.grading == GradingTag::YGrading
        && values.iter().zip(&polynomial_ring).all(|(v, p)| BigInt::from(*v) == *p);
    Ok(VeroneseCheck { n, holds, values })
}
