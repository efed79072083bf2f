//! The concrete polynomials of the orthogonal-invariant setting: entries of
//! `Y^T Y`, maximal minors of `Y`, the ideal generators built from the
//! first `t` rows of `Y^T Y`, and the group action `Y -> M Y`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::matrix::MatFp;
use super::poly::{Monomial, PolyFp};
use crate::error::{Error, Result};

/// Size of the generic matrix `Y`: `t` rows, `n` columns.
///
/// Unlike [`RingSpec`](crate::symdet::RingSpec) this allows `t >= n`, which the
/// polynomial identities need (e.g. square `Y`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatrixShape {
    pub t: u32,
    pub n: u32,
}

impl MatrixShape {
    pub fn new(t: u32, n: u32) -> Result<Self> {
        if t == 0 || n == 0 {
            return Err(Error::InvalidShape { t, n });
        }
        Ok(MatrixShape { t, n })
    }

    pub fn nvars(&self) -> usize {
        (self.t * self.n) as usize
    }

    /// Index of `y_ij` (0-based row `i`, column `j`).
    pub fn var_index(&self, i: usize, j: usize) -> usize {
        i * self.n as usize + j
    }

    pub fn var(&self, field: PrimeField, i: usize, j: usize) -> PolyFp {
        PolyFp::var(field, self.nvars(), self.var_index(i, j))
    }

    /// Column of a variable index.
    pub fn column_of(&self, var: usize) -> usize {
        var % self.n as usize
    }

    fn entries(&self, field: PrimeField) -> Vec<Vec<PolyFp>> {
        (0..self.t as usize)
            .map(|i| (0..self.n as usize).map(|j| self.var(field, i, j)).collect())
            .collect()
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Laplace expansion along the last row, memoized on the column set.
/// The row set is always the first `|cols|` rows.
struct MinorCache<'a> {
    entries: &'a [Vec<PolyFp>],
    memo: HashMap<u64, PolyFp>,
    field: PrimeField,
    nvars: usize,
}

impl<'a> MinorCache<'a> {
    fn new(entries: &'a [Vec<PolyFp>], field: PrimeField, nvars: usize) -> Self {
        assert!(entries.first().map_or(0, Vec::len) <= 64, "at most 64 columns");
        MinorCache {
            entries,
            memo: HashMap::new(),
            field,
            nvars,
        }
    }

    fn minor(&mut self, cols: &[usize]) -> PolyFp {
        if cols.is_empty() {
            return PolyFp::constant(self.field, self.nvars, 1);
        }
        let key = cols.iter().fold(0u64, |acc, &c| acc | 1 << c);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let row = cols.len() - 1;
        let mut acc = PolyFp::zero(self.field, self.nvars);
        let mut rest = Vec::with_capacity(row);
        for (idx, &c) in cols.iter().enumerate() {
            let a = &self.entries[row][c];
            if a.is_zero() {
                continue;
            }
            rest.clear();
            rest.extend(cols.iter().copied().filter(|&x| x != c));
            let sub = self.minor(&rest);
            let term = a * &sub;
            acc = if (row + idx).is_multiple_of(2) {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        self.memo.insert(key, acc.clone());
        acc
    }
}

/// Maximal minors of a `k x n` polynomial matrix (`k <= n`), indexed by column
/// subsets in lexicographic order.
pub fn maximal_minors(entries: &[Vec<PolyFp>]) -> Vec<(Vec<usize>, PolyFp)> {
    let first = &entries[0][0];
    let (field, nvars) = (first.field(), first.nvars());
    let (k, n) = (entries.len(), entries[0].len());
    let mut cache = MinorCache::new(entries, field, nvars);
    combinations(n, k)
        .into_iter()
        .map(|cols| {
            let m = cache.minor(&cols);
            (cols, m)
        })
        .collect()
}

/// Determinant of a square polynomial matrix by memoized Laplace expansion.
pub fn determinant_laplace(entries: &[Vec<PolyFp>]) -> PolyFp {
    assert!(entries.iter().all(|r| r.len() == entries.len()), "square matrix");
    maximal_minors(entries).pop().expect("nonempty").1
}

/// Entries `(Y^T Y)_jk = sum_i y_ij y_ik` for `j <= k`, in lexicographic `(j, k)` order.
pub fn gram_generators(shape: MatrixShape, field: PrimeField) -> Vec<PolyFp> {
    let (t, n) = (shape.t as usize, shape.n as usize);
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for j in 0..n {
        for k in j..n {
            let terms = (0..t).map(|i| {
                let mut e = vec![0u8; shape.nvars()];
                e[shape.var_index(i, j)] += 1;
                e[shape.var_index(i, k)] += 1;
                (Monomial::from_exponents(e), 1)
            });
            out.push(PolyFp::from_terms(field, shape.nvars(), terms));
        }
    }
    out
}

/// The `C(n, t)` maximal minors of `Y`, by column subsets in lexicographic order.
pub fn minor_generators(shape: MatrixShape, field: PrimeField) -> Vec<PolyFp> {
    if shape.t > shape.n {
        return Vec::new();
    }
    maximal_minors(&shape.entries(field))
        .into_iter()
        .map(|(_, m)| m)
        .collect()
}

/// Applies `y_ij -> sum_k M_ik y_kj` and expands.
pub fn substitute_linear(poly: &PolyFp, m: &MatFp, shape: MatrixShape) -> Result<PolyFp> {
    let t = shape.t as usize;
    if m.rows() != t || m.cols() != t {
        return Err(Error::DimensionMismatch(format!(
            "substitution matrix is {}x{}, expected {t}x{t}",
            m.rows(),
            m.cols()
        )));
    }
    if poly.nvars() != shape.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial has {} variables, shape {}x{} has {}",
            poly.nvars(),
            shape.t,
            shape.n,
            shape.nvars()
        )));
    }
    let field = poly.field();
    let nvars = shape.nvars();
    let images: Vec<PolyFp> = (0..nvars)
        .map(|v| {
            let (i, j) = (v / shape.n as usize, shape.column_of(v));
            let terms = (0..t).map(|k| (Monomial::var(nvars, shape.var_index(k, j)), m[(i, k)]));
            PolyFp::from_terms(field, nvars, terms)
        })
        .collect();
    let mut powers: HashMap<(usize, u8), PolyFp> = HashMap::new();
    let mut out = PolyFp::zero(field, nvars);
    for (mono, c) in poly.terms() {
        let mut term = PolyFp::constant(field, nvars, c);
        for (v, &e) in mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = powers
                .entry((v, e))
                .or_insert_with(|| images[v].pow(e as u32));
            term = &term * p;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Cayley transform `(I - S)(I + S)^-1` of a skew-symmetric `S`; lands in `SO_t`.
pub fn cayley_from_skew(s: &MatFp) -> Result<MatFp> {
    let f = s.field();
    if !s.is_square() {
        return Err(Error::DimensionMismatch("skew matrix must be square".into()));
    }
    let neg_t = {
        let t = s.transpose();
        MatFp::zeros(f, t.rows(), t.cols()).sub(&t)?
    };
    if neg_t != *s {
        return Err(Error::DimensionMismatch("matrix is not skew-symmetric".into()));
    }
    let id = MatFp::identity(f, s.rows());
    let plus = id.add(s)?.inverse()?;
    id.sub(s)?.mul(&plus)
}

/// Deterministic sample from `SO_t(F_p)` via the Cayley transform of a
/// random skew-symmetric matrix drawn from a ChaCha stream seeded by `seed`.
pub fn cayley_so(t: u32, field: PrimeField, seed: u64) -> MatFp {
    let t = t as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut s = MatFp::zeros(field, t, t);
        for i in 0..t {
            for j in i + 1..t {
                let x = field.random(&mut rng);
                s[(i, j)] = x;
                s[(j, i)] = field.neg(x);
            }
        }
        match cayley_from_skew(&s) {
            Ok(m) => return m,
            Err(Error::Singular) => continue,
            Err(e) => unreachable!("cayley transform of a skew matrix: {e}"),
        }
    }
}

/// `diag(-1, 1, ..., 1) * M` for orthogonal `M`.
pub fn reflect(m: &MatFp) -> Result<MatFp> {
    if !m.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let f = m.field();
    let mut out = m.clone();
    for j in 0..m.cols() {
        out[(0, j)] = f.neg(m[(0, j)]);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    Gram { j: usize, k: usize },
    Minor { columns: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceFailure {
    pub seed: u64,
    pub reflected: bool,
    pub generator: GeneratorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InvarianceReport {
    pub samples: usize,
    /// Samples whose `SO_t` matrix fixed every generator.
    pub so_fixed: usize,
    /// Samples whose reflected matrix fixed the Gram entries and negated the minors.
    pub reflection_sign: usize,
    pub failures: Vec<InvarianceFailure>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.so_fixed == self.samples && self.reflection_sign == self.samples
    }
}

struct InvariantSet {
    shape: MatrixShape,
    gram: Vec<(GeneratorKind, PolyFp)>,
    minors: Vec<(GeneratorKind, PolyFp)>,
}

impl InvariantSet {
    fn new(shape: MatrixShape, field: PrimeField) -> Self {
        let n = shape.n as usize;
        let pairs = (0..n).flat_map(|j| (j..n).map(move |k| (j, k)));
        let gram = pairs
            .zip(gram_generators(shape, field))
            .map(|((j, k), g)| (GeneratorKind::Gram { j, k }, g))
            .collect();
        let minors = combinations(n, shape.t as usize)
            .into_iter()
            .zip(minor_generators(shape, field))
            .map(|(columns, m)| (GeneratorKind::Minor { columns }, m))
            .collect();
        InvariantSet { shape, gram, minors }
    }

    /// Generators that fail `g(MY) = g(Y)` (Gram) or `mu(MY) = det(M) mu(Y)` (minors).
    fn violations(&self, m: &MatFp) -> Result<Vec<GeneratorKind>> {
        let det = m.determinant()?;
        let mut bad = Vec::new();
        for (kind, g) in &self.gram {
            if substitute_linear(g, m, self.shape)? != *g {
                bad.push(kind.clone());
            }
        }
        for (kind, mu) in &self.minors {
            if substitute_linear(mu, m, self.shape)? != mu.scale(det) {
                bad.push(kind.clone());
            }
        }
        Ok(bad)
    }
}

/// Gram entries and maximal minors under `Y -> M Y` for one explicit
/// orthogonal `M`: returns the generators that misbehave.
pub fn invariance_for_matrix(
    shape: MatrixShape,
    field: PrimeField,
    m: &MatFp,
) -> Result<Vec<GeneratorKind>> {
    if !m.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    InvariantSet::new(shape, field).violations(m)
}

/// Samples `M` from `SO_t` with seeds `seed, seed + 1, ...` and checks every
/// generator under `M` and under `reflect(M)`.
pub fn invariance_check(
    shape: MatrixShape,
    field: PrimeField,
    samples: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    let set = InvariantSet::new(shape, field);
    let mut report = InvarianceReport {
        samples,
        ..Default::default()
    };
    for s in 0..samples as u64 {
        let sample_seed = seed.wrapping_add(s);
        let m = cayley_so(shape.t, field, sample_seed);
        let bad = set.violations(&m)?;
        if bad.is_empty() && m.determinant()? == 1 {
            report.so_fixed += 1;
        }
        report.failures.extend(bad.into_iter().map(|generator| InvarianceFailure {
            seed: sample_seed,
            reflected: false,
            generator,
        }));
        let r = reflect(&m)?;
        let bad = set.violations(&r)?;
        if bad.is_empty() && r.determinant()? == field.modulus() - 1 {
            report.reflection_sign += 1;
        }
        report.failures.extend(bad.into_iter().map(|generator| InvarianceFailure {
            seed: sample_seed,
            reflected: true,
            generator,
        }));
    }
    Ok(report)
}

/// `det(Y'^T Y') = det(Y')^2` for a square `t x t` matrix of indeterminates.
pub fn delta_identity_check(t: u32, field: PrimeField) -> Result<bool> {
    let shape = MatrixShape::new(t, t)?;
    let y = shape.entries(field);
    let t = t as usize;
    let gram: Vec<Vec<PolyFp>> = (0..t)
        .map(|j| {
            (0..t)
                .map(|k| {
                    (0..t).fold(PolyFp::zero(field, shape.nvars()), |acc, i| {
                        &acc + &(&y[i][j] * &y[i][k])
                    })
                })
                .collect()
        })
        .collect();
    let delta = determinant_laplace(&y);
    Ok(determinant_laplace(&gram) == delta.pow(2))
}

/// `Delta = det` of the first `t` columns of `Y`.
pub fn delta(shape: MatrixShape, field: PrimeField) -> Result<PolyFp> {
    if shape.t > shape.n {
        return Err(Error::InvalidShape {
            t: shape.t,
            n: shape.n,
        });
    }
    let y = shape.entries(field);
    let t = shape.t as usize;
    let square: Vec<Vec<PolyFp>> = y.iter().map(|row| row[..t].to_vec()).collect();
    Ok(determinant_laplace(&square))
}

/// Maximal minors of the first `t` rows of `Y^T Y`, each checked to equal
/// `Delta` times the matching maximal minor of `Y`.
pub fn p_generators(shape: MatrixShape, field: PrimeField) -> Result<Vec<PolyFp>> {
    if shape.t > shape.n {
        return Err(Error::InvalidShape {
            t: shape.t,
            n: shape.n,
        });
    }
    let (t, n) = (shape.t as usize, shape.n as usize);
    let y = shape.entries(field);
    let rows: Vec<Vec<PolyFp>> = (0..t)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..t).fold(PolyFp::zero(field, shape.nvars()), |acc, k| {
                        &acc + &(&y[k][a] * &y[k][b])
                    })
                })
                .collect()
        })
        .collect();
    let d = delta(shape, field)?;
    let y_minors = maximal_minors(&y);
    maximal_minors(&rows)
        .into_iter()
        .zip(y_minors)
        .map(|((cols, p), (_, mu))| {
            if p == &d * &mu {
                Ok(p)
            } else {
                Err(Error::FactorizationFailed(cols))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn shape(t: u32, n: u32) -> MatrixShape {
        MatrixShape::new(t, n).unwrap()
    }

    #[test]
    fn gram_examples() {
        let f = PrimeField::default();
        let s = shape(2, 3);
        let g = gram_generators(s, f);
        assert_eq!(g.len(), 6);
        let y11 = s.var(f, 0, 0);
        let y21 = s.var(f, 1, 0);
        assert_eq!(g[0], &y11.pow(2) + &y21.pow(2));
        assert!(g.iter().all(|p| p.homogeneous_degree() == Some(2)));

        let s = shape(1, 2);
        let (a, b) = (s.var(f, 0, 0), s.var(f, 0, 1));
        assert_eq!(gram_generators(s, f), vec![a.pow(2), &a * &b, b.pow(2)]);

        let g = gram_generators(shape(3, 3), f);
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|p| p.num_terms() == 3));
    }

    #[test]
    fn minor_examples() {
        let f = PrimeField::default();
        let s = shape(2, 3);
        let m = minor_generators(s, f);
        assert_eq!(m.len(), 3);
        let expect = &(&s.var(f, 0, 0) * &s.var(f, 1, 1)) - &(&s.var(f, 0, 1) * &s.var(f, 1, 0));
        assert_eq!(m[0], expect);

        let s = shape(1, 3);
        let m = minor_generators(s, f);
        assert_eq!(m, (0..3).map(|j| s.var(f, 0, j)).collect::<Vec<_>>());

        let m = minor_generators(shape(3, 3), f);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].num_terms(), 6);
        assert_eq!(m[0].homogeneous_degree(), Some(3));
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn substitution_examples() {
        let f = f7();
        let s = shape(2, 3);
        let minors = minor_generators(s, f);
        let id = MatFp::identity(f, 2);
        assert_eq!(substitute_linear(&minors[0], &id, s).unwrap(), minors[0]);

        let flip = MatFp::diagonal(f, &[-1, 1]);
        assert_eq!(substitute_linear(&minors[0], &flip, s).unwrap(), -&minors[0]);

        let m = MatFp::from_rows(f, &[vec![0, 6], vec![1, 0]]);
        let y11 = s.var(f, 0, 0);
        assert_eq!(
            substitute_linear(&y11, &m, s).unwrap(),
            s.var(f, 1, 0).scale(6)
        );

        let bad = MatFp::identity(f, 3);
        assert!(matches!(
            substitute_linear(&y11, &bad, s),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn cayley_examples() {
        let f = f7();
        let s = MatFp::from_rows(f, &[vec![0, 1], vec![-1, 0]]);
        let m = cayley_from_skew(&s).unwrap();
        assert_eq!(m, MatFp::from_rows(f, &[vec![0, 6], vec![1, 0]]));
        assert!(m.is_orthogonal());
        assert_eq!(m.determinant().unwrap(), 1);

        for seed in 0..5 {
            assert_eq!(cayley_so(1, f, seed), MatFp::identity(f, 1));
        }
        let f101 = PrimeField::new(101).unwrap();
        let m = cayley_so(3, f101, 42);
        assert!(m.is_orthogonal());
        assert_eq!(m.determinant().unwrap(), 1);
        assert_eq!(cayley_so(3, f101, 42), m);
    }

    #[test]
    fn reflect_examples() {
        let f = f7();
        assert_eq!(
            reflect(&MatFp::identity(f, 2)).unwrap(),
            MatFp::diagonal(f, &[-1, 1])
        );
        let m = MatFp::from_rows(f, &[vec![0, 6], vec![1, 0]]);
        let r = reflect(&m).unwrap();
        assert_eq!(r.determinant().unwrap(), 6);
        assert_eq!(reflect(&r).unwrap(), m);
        let not_orth = MatFp::from_rows(f, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(reflect(&not_orth), Err(Error::NotOrthogonal));
    }

    #[test]
    fn explicit_invariance() {
        let f = f7();
        let s = shape(2, 3);
        let m = MatFp::from_rows(f, &[vec![0, 6], vec![1, 0]]);
        assert!(invariance_for_matrix(s, f, &m).unwrap().is_empty());
        let r = reflect(&m).unwrap();
        assert!(invariance_for_matrix(s, f, &r).unwrap().is_empty());
        // and the minors really do change sign under r
        let mu = &minor_generators(s, f)[0];
        assert_eq!(substitute_linear(mu, &r, s).unwrap(), -mu);

        let rep = invariance_check(shape(1, 3), f, 3, 0).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.so_fixed, 3);
    }

    #[test]
    fn a_non_orthogonal_matrix_is_caught() {
        let f = f7();
        let s = shape(2, 2);
        let set = InvariantSet::new(s, f);
        let shear = MatFp::from_rows(f, &[vec![1, 1], vec![0, 1]]);
        let bad = set.violations(&shear).unwrap();
        assert!(bad.iter().any(|k| matches!(k, GeneratorKind::Gram { .. })));
        // det 1, so minors are still fixed
        assert!(!bad.iter().any(|k| matches!(k, GeneratorKind::Minor { .. })));
    }

    #[test]
    fn delta_identity_small() {
        let f = PrimeField::default();
        for t in 1..=3 {
            assert!(delta_identity_check(t, f).unwrap());
        }
    }

    #[test]
    fn p_generator_examples() {
        let f = PrimeField::default();
        let s = shape(1, 2);
        let (a, b) = (s.var(f, 0, 0), s.var(f, 0, 1));
        assert_eq!(p_generators(s, f).unwrap(), vec![a.pow(2), &a * &b]);
        let p = p_generators(shape(2, 3), f).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.iter().all(|q| q.homogeneous_degree() == Some(4)));
        assert_eq!(p_generators(shape(2, 4), f).unwrap().len(), 6);
    }
}
