//! Brute-force ground truth for Hilbert functions.
//!
//! The degree-`D` piece of the algebra generated by a set of homogeneous
//! polynomials is spanned by the products of generator multisets of total
//! degree `D`. We expand every such product in the ambient polynomial ring
//! and take the rank of the coefficient matrix over `F_p`.
//!
//! All generators here are homogeneous for the column grading `deg y_ij = e_j`,
//! so the coefficient matrix is block diagonal by column multidegree and the
//! rank is the sum of block ranks. Blocks are independent and are reduced in
//! parallel; the result does not depend on the worker count.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polys::{gram_generators, minor_generators, MatFp, MatrixShape, Monomial, PolyFp, PrimeField};
use crate::series::{GradingTag, LaurentPoly};

/// Ambient dimension up to which the dense rank routine is used.
pub const DENSE_AMBIENT_LIMIT: u128 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorLabel {
    /// Entries of `Y^T Y`.
    GramOnly,
    /// Entries of `Y^T Y` and the maximal minors of `Y`.
    GramPlusMinors,
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    shape: MatrixShape,
    label: GeneratorLabel,
    generators: Vec<PolyFp>,
    degrees: Vec<u32>,
    column_degrees: Vec<Vec<u8>>,
}

impl GeneratorSet {
    pub fn new(shape: MatrixShape, label: GeneratorLabel, field: PrimeField) -> Self {
        let mut gens = gram_generators(shape, field);
        if label == GeneratorLabel::GramPlusMinors {
            gens.extend(minor_generators(shape, field));
        }
        Self::from_polys(shape, label, gens).expect("generators are multihomogeneous")
    }

    /// Wraps arbitrary generators; each must be nonzero, homogeneous and
    /// homogeneous for the column grading.
    pub fn from_polys(shape: MatrixShape, label: GeneratorLabel, generators: Vec<PolyFp>) -> Result<Self> {
        let mut degrees = Vec::with_capacity(generators.len());
        let mut column_degrees = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != shape.nvars() {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} has {} variables, expected {}",
                    g.nvars(),
                    shape.nvars()
                )));
            }
            let d = g.homogeneous_degree().filter(|&d| d > 0).ok_or_else(|| {
                Error::DimensionMismatch(format!("generator {i} is not homogeneous of positive degree"))
            })?;
            let mut cols = g.terms().map(|(m, _)| column_degree(shape, m));
            let first = cols.next().unwrap();
            if cols.any(|c| c != first) {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} is not homogeneous in the column grading"
                )));
            }
            degrees.push(d);
            column_degrees.push(first);
        }
        Ok(GeneratorSet {
            shape,
            label,
            generators,
            degrees,
            column_degrees,
        })
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn label(&self) -> GeneratorLabel {
        self.label
    }

    pub fn generators(&self) -> &[PolyFp] {
        &self.generators
    }

    /// `YGrading` degrees of the generators.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn field(&self) -> PrimeField {
        self.generators[0].field()
    }

    /// True when every generator has even degree, so the Hilbert function can
    /// be reported in the halved grading.
    pub fn rescalable(&self) -> bool {
        self.degrees.iter().all(|d| d % 2 == 0)
    }

    /// Number of generator multisets of total degree `degree`.
    pub fn multiset_count(&self, degree: u32) -> u128 {
        let d = degree as usize;
        let mut count = vec![0u128; d + 1];
        count[0] = 1;
        for &g in &self.degrees {
            let g = g as usize;
            for i in g..=d {
                count[i] = count[i].saturating_add(count[i - g]);
            }
        }
        count[d]
    }
}

fn column_degree(shape: MatrixShape, m: &Monomial) -> Vec<u8> {
    let mut cols = vec![0u8; shape.n as usize];
    for (v, &e) in m.exponents().iter().enumerate() {
        cols[shape.column_of(v)] += e;
    }
    cols
}

/// `C(vars - 1 + degree, vars - 1)`: dimension of the degree piece of the polynomial ring.
pub fn ambient_dimension(vars: u32, degree: u32) -> u128 {
    binomial(vars as u128 - 1 + degree as u128, vars as u128 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub ambient: u128,
    pub multisets: u128,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            ambient: 500_000,
            multisets: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankMethod {
    /// Dense up to [`DENSE_AMBIENT_LIMIT`], sparse above.
    #[default]
    Auto,
    Dense,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub field: PrimeField,
    pub guard: SizeGuard,
    pub rank_method: RankMethod,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            field: PrimeField::default(),
            guard: SizeGuard::default(),
            rank_method: RankMethod::Auto,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn with_field(field: PrimeField) -> Self {
        OracleConfig {
            field,
            ..Default::default()
        }
    }
}

type SparseRow = Vec<(u32, u64)>;

/// Depth-first enumeration of nondecreasing generator index sequences, so each
/// product extends its prefix by one generator.
struct ProductWalk<'a> {
    set: &'a GeneratorSet,
    out: Vec<(Vec<u8>, PolyFp)>,
}

impl ProductWalk<'_> {
    fn visit(&mut self, start: usize, remaining: u32, prod: &PolyFp, cols: &mut Vec<u8>) {
        if remaining == 0 {
            self.out.push((cols.clone(), prod.clone()));
            return;
        }
        for g in start..self.set.generators.len() {
            let d = self.set.degrees[g];
            if d > remaining {
                continue;
            }
            for (c, e) in cols.iter_mut().zip(&self.set.column_degrees[g]) {
                *c += e;
            }
            let next = prod * &self.set.generators[g];
            self.visit(g, remaining - d, &next, cols);
            for (c, e) in cols.iter_mut().zip(&self.set.column_degrees[g]) {
                *c -= e;
            }
        }
    }
}

/// Dimension of the `YGrading` degree-`degree` piece of the algebra generated by `gens`.
pub fn graded_dimension(gens: &GeneratorSet, degree: u32, cfg: &OracleConfig) -> Result<u64> {
    let shape = gens.shape;
    let vars = shape.nvars() as u32;
    let ambient = ambient_dimension(vars, degree);
    if ambient > cfg.guard.ambient {
        return Err(Error::AmbientGuard {
            vars,
            degree,
            ambient,
            limit: cfg.guard.ambient,
        });
    }
    let count = gens.multiset_count(degree);
    if count > cfg.guard.multisets {
        return Err(Error::MultisetGuard {
            degree,
            count,
            limit: cfg.guard.multisets,
        });
    }
    if degree == 0 {
        return Ok(1);
    }
    if gens.field() != cfg.field {
        return Err(Error::Incompatible(format!(
            "generators over F_{}, oracle configured for F_{}",
            gens.field().modulus(),
            cfg.field.modulus()
        )));
    }

    let products: Vec<(Vec<u8>, PolyFp)> = (0..gens.generators.len())
        .into_par_iter()
        .flat_map_iter(|g| {
            let mut walk = ProductWalk { set: gens, out: Vec::new() };
            let d = gens.degrees[g];
            if d <= degree {
                let mut cols = gens.column_degrees[g].clone();
                walk.visit(g, degree - d, &gens.generators[g], &mut cols);
            }
            walk.out
        })
        .collect();

    let mut blocks: BTreeMap<Vec<u8>, Vec<PolyFp>> = BTreeMap::new();
    for (key, p) in products {
        blocks.entry(key).or_default().push(p);
    }

    let dense = match cfg.rank_method {
        RankMethod::Auto => ambient <= DENSE_AMBIENT_LIMIT,
        RankMethod::Dense => true,
        RankMethod::Sparse => false,
    };
    let field = cfg.field;
    let blocks: Vec<Vec<PolyFp>> = blocks.into_values().collect();
    let rank: usize = blocks
        .par_iter()
        .map(|rows| {
            let rows = index_rows(rows);
            if dense {
                dense_rank(field, &rows)
            } else {
                sparse_rank(field, rows)
            }
        })
        .sum();
    debug_assert!(rank as u128 <= ambient);
    Ok(rank as u64)
}

/// Coefficient rows over a column index of the monomials occurring in the block.
fn index_rows(polys: &[PolyFp]) -> Vec<SparseRow> {
    let mut monos: Vec<&Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    monos.sort_unstable();
    monos.dedup();
    let index: HashMap<&Monomial, u32> = monos.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
    polys
        .iter()
        .map(|p| {
            let mut row: SparseRow = p.terms().map(|(m, c)| (index[m], c)).collect();
            row.sort_unstable_by_key(|&(j, _)| j);
            row
        })
        .collect()
}

fn dense_rank(field: PrimeField, rows: &[SparseRow]) -> usize {
    let cols = rows
        .iter()
        .flat_map(|r| r.iter().map(|&(j, _)| j as usize + 1))
        .max()
        .unwrap_or(0);
    let mut m = MatFp::zeros(field, rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for &(j, c) in r {
            m[(i, j as usize)] = c;
        }
    }
    m.rank()
}

/// Incremental echelon form on sparse rows, shortest rows first.
fn sparse_rank(field: PrimeField, mut rows: Vec<SparseRow>) -> usize {
    rows.sort_by_key(Vec::len);
    let mut pivots: HashMap<u32, SparseRow> = HashMap::new();
    for mut row in rows {
        while let Some(&(lead, c)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = axpy(field, &row, field.neg(c), p),
                None => {
                    let inv = field.inv(c);
                    for e in row.iter_mut() {
                        e.1 = field.mul(e.1, inv);
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `x + a * y` on sorted sparse rows.
fn axpy(field: PrimeField, x: &SparseRow, a: u64, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, field.mul(a, y[j].1)));
            j += 1;
        } else {
            let v = field.add(x[i].1, field.mul(a, y[j].1));
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Graded dimensions of a generated algebra, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub shape: MatrixShape,
    pub label: GeneratorLabel,
    pub grading: GradingTag,
    pub values: Vec<(u32, u64)>,
    pub prime: u64,
    pub seed: u64,
}

impl HilbertTable {
    pub fn dimensions(&self) -> Vec<u64> {
        self.values.iter().map(|&(_, d)| d).collect()
    }

    pub fn dimensions_big(&self) -> Vec<BigInt> {
        self.values.iter().map(|&(_, d)| BigInt::from(d)).collect()
    }
}

/// Hilbert function for degrees `0..=max_degree`. When every generator has
/// even degree the table is in `Rescaled` degrees (`YGrading` degree `2D`).
pub fn hilbert_function(
    shape: MatrixShape,
    label: GeneratorLabel,
    max_degree: u32,
    cfg: &OracleConfig,
) -> Result<HilbertTable> {
    let gens = GeneratorSet::new(shape, label, cfg.field);
    hilbert_function_of(&gens, max_degree, cfg)
}

pub fn hilbert_function_of(gens: &GeneratorSet, max_degree: u32, cfg: &OracleConfig) -> Result<HilbertTable> {
    let (grading, step) = if gens.rescalable() {
        (GradingTag::Rescaled, 2)
    } else {
        (GradingTag::YGrading, 1)
    };
    let values = (0..=max_degree)
        .map(|d| graded_dimension(gens, step * d, cfg).map(|dim| (d, dim)))
        .collect::<Result<_>>()?;
    Ok(HilbertTable {
        shape: gens.shape,
        label: gens.label,
        grading,
        values,
        prime: cfg.field.modulus(),
        seed: cfg.seed,
    })
}

/// Recovers `h_0..h_k` from `H(0..)` via `h_i = sum_j (-1)^j C(d, j) H(i - j)`.
/// Values past `k` must give vanishing `h_i`.
pub fn reconstruct_numerator(values: &[BigInt], dim: u32, k: u32) -> Result<LaurentPoly> {
    let k = k as usize;
    if values.len() < k + 1 {
        return Err(Error::TooFewValues {
            have: values.len(),
            need: k + 1,
        });
    }
    let signed_binom: Vec<BigInt> = (0..=dim)
        .map(|j| {
            let b = binomial(BigInt::from(dim), BigInt::from(j));
            if j % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect();
    let h: Vec<BigInt> = (0..values.len())
        .map(|i| {
            (0..=i.min(dim as usize))
                .map(|j| &signed_binom[j] * &values[i - j])
                .sum()
        })
        .collect();
    if let Some((index, value)) = h.iter().enumerate().skip(k + 1).find(|(_, v)| !v.is_zero()) {
        return Err(Error::NonvanishingTail {
            index,
            value: value.to_string(),
        });
    }
    Ok(LaurentPoly::new(0, h[..=k].to_vec()))
}

/// Maximum rank of the Jacobian of `gens` over `trials` random points of `F_p^(tn)`.
pub fn jacobian_dim(gens: &GeneratorSet, field: PrimeField, trials: usize, seed: u64) -> u64 {
    let nvars = gens.shape.nvars();
    let jac: Vec<Vec<PolyFp>> = gens
        .generators
        .iter()
        .map(|g| {
            let g = if g.field() == field {
                g.clone()
            } else {
                PolyFp::from_terms(field, nvars, g.terms().map(|(m, c)| (m.clone(), c)))
            };
            (0..nvars).map(|v| g.derivative(v)).collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let point: Vec<u64> = (0..nvars).map(|_| field.random(&mut rng)).collect();
        let mut m = MatFp::zeros(field, jac.len(), nvars);
        for (i, row) in jac.iter().enumerate() {
            for (v, d) in row.iter().enumerate() {
                m[(i, v)] = d.eval(&point);
            }
        }
        best = best.max(m.rank());
    }
    best as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(t: u32, n: u32) -> MatrixShape {
        MatrixShape::new(t, n).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn graded_dimension_examples() {
        let cfg = OracleConfig::default();
        let g = GeneratorSet::new(shape(1, 2), GeneratorLabel::GramOnly, cfg.field);
        assert_eq!(graded_dimension(&g, 2, &cfg).unwrap(), 3);
        assert_eq!(graded_dimension(&g, 1, &cfg).unwrap(), 0);
        let g = GeneratorSet::new(shape(2, 3), GeneratorLabel::GramPlusMinors, cfg.field);
        assert_eq!(graded_dimension(&g, 2, &cfg).unwrap(), 9);
        assert_eq!(graded_dimension(&g, 4, &cfg).unwrap(), 36);
    }

    #[test]
    fn hilbert_function_examples() {
        let cfg = OracleConfig::default();
        let t = hilbert_function(shape(1, 2), GeneratorLabel::GramOnly, 3, &cfg).unwrap();
        assert_eq!(t.grading, GradingTag::Rescaled);
        assert_eq!(t.dimensions(), vec![1, 3, 5, 7]);
        let t = hilbert_function(shape(2, 4), GeneratorLabel::GramPlusMinors, 2, &cfg).unwrap();
        assert_eq!(t.dimensions(), vec![1, 16, 100]);
        let t = hilbert_function(shape(1, 3), GeneratorLabel::GramPlusMinors, 2, &cfg).unwrap();
        assert_eq!(t.grading, GradingTag::YGrading);
        assert_eq!(t.dimensions(), vec![1, 3, 6]);
        assert_eq!(t.values[0], (0, 1));
    }

    #[test]
    fn dense_and_sparse_agree() {
        let base = OracleConfig::default();
        for (t, n, label, deg) in [
            (2, 3, GeneratorLabel::GramPlusMinors, 6),
            (2, 4, GeneratorLabel::GramOnly, 6),
            (3, 4, GeneratorLabel::GramPlusMinors, 5),
        ] {
            let g = GeneratorSet::new(shape(t, n), label, base.field);
            let dense = OracleConfig { rank_method: RankMethod::Dense, ..base };
            let sparse = OracleConfig { rank_method: RankMethod::Sparse, ..base };
            assert_eq!(
                graded_dimension(&g, deg, &dense).unwrap(),
                graded_dimension(&g, deg, &sparse).unwrap()
            );
        }
    }

    #[test]
    fn guards() {
        let cfg = OracleConfig {
            guard: SizeGuard { ambient: 100, multisets: 200_000 },
            ..Default::default()
        };
        let g = GeneratorSet::new(shape(2, 3), GeneratorLabel::GramOnly, cfg.field);
        let err = graded_dimension(&g, 4, &cfg).unwrap_err();
        assert_eq!(
            err,
            Error::AmbientGuard { vars: 6, degree: 4, ambient: 126, limit: 100 }
        );
        assert!(err.to_string().contains("126"));
        let cfg = OracleConfig {
            guard: SizeGuard { ambient: 1 << 40, multisets: 10 },
            ..Default::default()
        };
        assert!(matches!(
            graded_dimension(&g, 4, &cfg),
            Err(Error::MultisetGuard { count: 21, .. })
        ));
    }

    #[test]
    fn multiset_counts() {
        let f = PrimeField::default();
        let g = GeneratorSet::new(shape(2, 3), GeneratorLabel::GramPlusMinors, f);
        // 9 generators of degree 2: multisets of size 2
        assert_eq!(g.multiset_count(4), 45);
        assert_eq!(g.multiset_count(3), 0);
        let g = GeneratorSet::new(shape(3, 4), GeneratorLabel::GramPlusMinors, f);
        // 10 quadrics, 4 cubics: degree 6 = three quadrics or two cubics
        assert_eq!(g.multiset_count(6), 220 + 10);
    }

    #[test]
    fn from_polys_rejects_bad_generators() {
        let f = PrimeField::default();
        let s = shape(1, 2);
        let x = s.var(f, 0, 0);
        let y = s.var(f, 0, 1);
        let inhom = &x + &(&x * &y);
        assert!(GeneratorSet::from_polys(s, GeneratorLabel::GramOnly, vec![inhom]).is_err());
        let mixed = &x + &y;
        assert!(GeneratorSet::from_polys(s, GeneratorLabel::GramOnly, vec![mixed]).is_err());
    }

    #[test]
    fn reconstruct_examples() {
        assert_eq!(
            reconstruct_numerator(&big(&[1, 16, 100, 400]), 7, 3).unwrap(),
            LaurentPoly::from_i64s(0, &[1, 9, 9, 1])
        );
        assert_eq!(
            reconstruct_numerator(&big(&[1, 3, 5]), 2, 1).unwrap(),
            LaurentPoly::from_i64s(0, &[1, 1])
        );
        assert_eq!(
            reconstruct_numerator(&big(&[1, 1, 1]), 1, 0).unwrap(),
            LaurentPoly::from_i64s(0, &[1])
        );
        assert!(matches!(
            reconstruct_numerator(&big(&[1, 3, 5]), 1, 1),
            Err(Error::NonvanishingTail { index: 2, .. })
        ));
        assert!(matches!(
            reconstruct_numerator(&big(&[1]), 2, 1),
            Err(Error::TooFewValues { have: 1, need: 2 })
        ));
    }

    #[test]
    fn jacobian_examples() {
        let f = PrimeField::default();
        let g = GeneratorSet::new(shape(1, 2), GeneratorLabel::GramOnly, f);
        assert_eq!(jacobian_dim(&g, f, 5, 1), 2);
        let g = GeneratorSet::new(shape(2, 3), GeneratorLabel::GramOnly, f);
        assert_eq!(jacobian_dim(&g, f, 5, 1), 5);
        let g = GeneratorSet::new(shape(2, 4), GeneratorLabel::GramPlusMinors, f);
        assert_eq!(jacobian_dim(&g, f, 5, 1), 7);
    }
}
