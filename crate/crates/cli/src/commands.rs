use std::fmt;

use num_bigint::BigInt;
use serde_json::Value;
use socover_core::cover::{cover_hilbert_table, cover_series, cover_series_closed, CoverReport};
use socover_core::oracle::{hilbert_function, jacobian_dim, GeneratorLabel, GeneratorSet, OracleConfig};
use socover_core::polys::{delta_identity_check, invariance_check, p_generators, MatrixShape, PrimeField};
use socover_core::series::{GradingTag, HilbertSeries};
use socover_core::symdet::{
    a_invariant_r, canonical_descriptor, h_poly_codim3, h_poly_r, is_gorenstein, krull_dim, CanonicalCase,
    RingSpec,
};
use socover_core::Error;

use crate::report::{
    int_value, int_values, DegreeCheck, HvectorReport, InvarianceReportOut, JacobianCheck, ScanReport, ScanRow,
    SeriesCheck, VerifyReport,
};
use crate::{Outcome, RunConfig, VERSION};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult = Result<Outcome, CliError>;

pub fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Usage(_) => 2,
        CliError::Core(e) => match e {
            Error::InvalidSpec { .. }
            | Error::InvalidShape { .. }
            | Error::InvalidPrime(_)
            | Error::NotCodimThree { .. }
            | Error::NotPTwist { .. }
            | Error::NoSemistandardGrading(_)
            | Error::BudgetExceeded { .. }
            | Error::AmbientGuard { .. }
            | Error::MultisetGuard { .. }
            | Error::TooFewValues { .. } => 2,
            _ => 1,
        },
    }
}

/// Primes used for the independent reference computation in `verify`.
const REFERENCE_PRIMES: [u64; 2] = [65521, 32003];

fn reference_config(cfg: &RunConfig) -> OracleConfig {
    let p = REFERENCE_PRIMES
        .into_iter()
        .find(|&p| p != cfg.prime())
        .expect("two distinct primes");
    OracleConfig {
        field: PrimeField::new(p).expect("reference primes are prime"),
        ..cfg.oracle
    }
}

pub fn hvector(t: u32, n: u32, max_deg: u32, cfg: &RunConfig) -> CliResult {
    let spec = RingSpec::new(t, n)?;
    let hs_r = h_poly_r(spec, cfg.oracle_budget, &cfg.oracle)?;
    let profile_r = hs_r.h_vector()?;
    let a_r = a_invariant_r(spec);
    let canonical = canonical_descriptor(spec);
    let canonical_module_r = match canonical.case {
        CanonicalCase::PTwist => format!("p({})", canonical.twist),
        CanonicalCase::FreeTwist => format!("R({})", canonical.twist),
    };
    let a_cover_y = -((t * n) as i64);

    let (grading, cover, cover_table) = if t.is_multiple_of(2) {
        let series = cover_series(spec, cfg.oracle_budget, &cfg.oracle)?;
        (GradingTag::Rescaled, Some(CoverReport::new(spec, series)?), None)
    } else {
        let table = cover_hilbert_table(spec.shape(), max_deg, &cfg.oracle)?;
        (GradingTag::YGrading, None, Some(table.dimensions()))
    };

    let report = HvectorReport {
        t,
        n,
        grading: grading.to_string(),
        dim: krull_dim(spec),
        h_vector: cover.as_ref().map(|c| int_values(&c.profile.h)),
        a_invariant_y: a_cover_y,
        a_invariant_rescaled: t.is_multiple_of(2).then_some(a_cover_y / 2),
        gorenstein_r: is_gorenstein(spec),
        palindrome: cover.as_ref().map(|c| c.profile.palindrome),
        unimodal: cover.as_ref().map(|c| c.profile.unimodal),
        gap: cover.as_ref().and_then(|c| c.gap.as_ref()).map(int_value),
        prime: cfg.prime(),
        seed: cfg.seed(),
        version: VERSION.to_string(),
        h_vector_r: Some(int_values(&profile_r.h)),
        a_invariant_r_y: a_r.value,
        a_invariant_r_rescaled: a_r.rescaled().ok().map(|a| a.value),
        canonical_module_r,
        palindrome_r: Some(profile_r.palindrome),
        unimodal_r: Some(profile_r.unimodal),
        cover_table_y: cover_table,
    };
    print!("{}", report.render(cfg.format));
    Ok(Outcome::Pass)
}

pub fn scan(m_min: u32, m_max: u32, oracle_deg: Option<u32>, cfg: &RunConfig) -> CliResult {
    if !(1 <= m_min && m_min <= m_max && m_max <= 8) {
        return Err(CliError::Usage(format!(
            "invalid range m_min={m_min}, m_max={m_max}: need 1 <= m_min <= m_max <= 8"
        )));
    }
    let mut rows = Vec::new();
    for m in m_min..=m_max {
        let spec = RingSpec::new(2 * m, 2 * m + 2)?;
        let series = cover_series_closed(spec, &h_poly_codim3(spec)?)?;
        let mut report = CoverReport::new(spec, series)?;
        let expected_gap = m as i64 - 1;
        let gap = report.gap.clone().unwrap_or_default();
        let mut ok = gap == BigInt::from(expected_gap)
            && report.profile.unimodal == (m <= 1)
            && report.a_invariant_y == -((spec.t() * spec.n()) as i64);
        if let Some(deg) = oracle_deg {
            match report.attach_oracle(deg, &cfg.oracle) {
                Ok(()) => {}
                Err(Error::OracleMismatch { degree, expected, actual }) => {
                    eprintln!("m={m}: oracle mismatch in degree {degree}: expected {expected}, got {actual}");
                    ok = false;
                }
                Err(e) => return Err(e.into()),
            }
        }
        rows.push(ScanRow {
            m,
            t: spec.t(),
            n: spec.n(),
            dim: report.series.dim(),
            h_vector: int_values(&report.profile.h),
            gap: int_value(&gap),
            unimodal: report.profile.unimodal,
            expected_gap,
            ok,
            oracle: report.oracle.as_ref().map(|t| t.dimensions()),
            prime: cfg.prime(),
            seed: cfg.seed(),
            version: VERSION.to_string(),
        });
    }
    let all_ok = rows.iter().all(|r| r.ok);
    let report = ScanReport {
        prime: cfg.prime(),
        seed: cfg.seed(),
        version: VERSION.to_string(),
        rows,
    };
    print!("{}", report.render(cfg.format));
    Ok(if all_ok { Outcome::Pass } else { Outcome::Mismatch })
}

fn compare(
    ring: &str,
    label: GeneratorLabel,
    shape: MatrixShape,
    max_deg: u32,
    reference: String,
    series: &HilbertSeries,
    cfg: &RunConfig,
) -> Result<SeriesCheck, CliError> {
    let table = hilbert_function(shape, label, max_deg, &cfg.oracle)?;
    if table.grading != series.grading() {
        return Err(CliError::Core(Error::Incompatible(format!(
            "oracle table is {}, reference series is {}",
            table.grading,
            series.grading()
        ))));
    }
    let expected = series.expand(max_deg)?;
    let degrees = table
        .values
        .iter()
        .zip(&expected)
        .map(|(&(degree, oracle), want)| DegreeCheck {
            degree,
            expected: int_value(want),
            oracle,
            ok: BigInt::from(oracle) == *want,
        })
        .collect();
    Ok(SeriesCheck {
        ring: ring.to_string(),
        grading: table.grading.to_string(),
        reference,
        series: Some(series.to_string()),
        degrees,
    })
}

pub fn verify(t: u32, n: u32, max_deg: u32, trials: usize, cfg: &RunConfig) -> CliResult {
    let spec = RingSpec::new(t, n)?;
    let shape = spec.shape();
    let reference = reference_config(cfg);
    let reconstructed = format!("reconstructed from the oracle at p={}", reference.field.modulus());

    let mut series = Vec::new();
    let (r_series, r_source) = if n == t + 2 {
        (h_poly_codim3(spec)?, "closed form".to_string())
    } else {
        (h_poly_r(spec, cfg.oracle_budget, &reference)?, reconstructed.clone())
    };
    series.push(compare("R", GeneratorLabel::GramOnly, shape, max_deg, r_source, &r_series, cfg)?);

    if t.is_multiple_of(2) {
        let closed = spec.same_parity() && n == t + 2;
        let source = if closed {
            "closed form".to_string()
        } else if spec.same_parity() {
            format!("closed form over HS(R) {reconstructed}")
        } else {
            reconstructed.clone()
        };
        let cover = cover_series(spec, cfg.oracle_budget, &reference)?;
        series.push(compare("cover", GeneratorLabel::GramPlusMinors, shape, max_deg, source, &cover, cfg)?);
    } else if t == 1 {
        let poly = HilbertSeries::polynomial_ring(n, GradingTag::YGrading);
        series.push(compare(
            "cover",
            GeneratorLabel::GramPlusMinors,
            shape,
            max_deg,
            "polynomial ring K[Y]".to_string(),
            &poly,
            cfg,
        )?);
    } else {
        eprintln!("cover series skipped: odd t={t} has no semistandard grading");
    }

    let dim = krull_dim(spec);
    let jacobian: Vec<JacobianCheck> = [GeneratorLabel::GramOnly, GeneratorLabel::GramPlusMinors]
        .into_iter()
        .map(|label| {
            let gens = GeneratorSet::new(shape, label, cfg.oracle.field);
            let rank = jacobian_dim(&gens, cfg.oracle.field, trials, cfg.seed());
            JacobianCheck {
                generators: format!("{label:?}"),
                jacobian_rank: rank,
                krull_dim: dim,
                ok: rank == dim as u64,
            }
        })
        .collect();

    let first_mismatch = series
        .iter()
        .find_map(|c| {
            c.degrees.iter().find(|d| !d.ok).map(|d| {
                format!(
                    "{} degree {}: expected {}, oracle gave {}",
                    c.ring,
                    d.degree,
                    plain_number(&d.expected),
                    d.oracle
                )
            })
        })
        .or_else(|| {
            jacobian.iter().find(|j| !j.ok).map(|j| {
                format!(
                    "jacobian {}: rank {} but dimension {}",
                    j.generators, j.jacobian_rank, j.krull_dim
                )
            })
        });

    let pass = first_mismatch.is_none();
    let report = VerifyReport {
        t,
        n,
        max_deg,
        pass,
        first_mismatch,
        series,
        jacobian,
        prime: cfg.prime(),
        reference_prime: reference.field.modulus(),
        seed: cfg.seed(),
        version: VERSION.to_string(),
    };
    print!("{}", report.render(cfg.format));
    Ok(if pass { Outcome::Pass } else { Outcome::Mismatch })
}

fn plain_number(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn invariance(t: u32, n: u32, samples: usize, cfg: &RunConfig) -> CliResult {
    let shape = MatrixShape::new(t, n)?;
    let field = cfg.oracle.field;
    let inv = invariance_check(shape, field, samples, cfg.seed())?;
    let delta_identity = delta_identity_check(t, field)?;
    let p_generators_factor = if t <= n {
        match p_generators(shape, field) {
            Ok(_) => Some(true),
            Err(Error::FactorizationFailed(cols)) => {
                eprintln!("factorization failed for columns {cols:?}");
                Some(false)
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let pass = inv.passed() && delta_identity && p_generators_factor != Some(false);
    let report = InvarianceReportOut {
        t,
        n,
        samples: inv.samples,
        so_fixed: inv.so_fixed,
        reflection_sign: inv.reflection_sign,
        failures: inv
            .failures
            .iter()
            .map(|f| {
                format!(
                    "seed {} {}: {:?}",
                    f.seed,
                    if f.reflected { "reflected" } else { "rotation" },
                    f.generator
                )
            })
            .collect(),
        delta_identity,
        p_generators_factor,
        pass,
        prime: cfg.prime(),
        seed: cfg.seed(),
        version: VERSION.to_string(),
    };
    print!("{}", report.render(cfg.format));
    Ok(if pass { Outcome::Pass } else { Outcome::Mismatch })
}
