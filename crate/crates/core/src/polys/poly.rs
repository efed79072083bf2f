use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::PrimeField;

/// Exponent vector over the variables `y_ij` in row-major order.
///
/// Ordering is lexicographic on the exponent sequence; it is only used to
/// keep terms in a canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u8>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

/// Sparse polynomial over `F_p` with terms kept in a `BTreeMap`, so equality
/// is structural and iteration order is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFp {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl PolyFp {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        PolyFp {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u64) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn var(field: PrimeField, nvars: usize, index: usize) -> Self {
        Self::from_terms(field, nvars, [(Monomial::var(nvars, index), 1)])
    }

    /// Sums the given terms; coefficients are reduced mod p and zeros dropped.
    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, c % field.modulus());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Common total degree of all terms; `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.field.modulus();
        if c == 0 {
            return Self::zero(self.field, self.nvars);
        }
        PolyFp {
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), self.field.mul(a, c)))
                .collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(self.field, self.nvars, 1);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        let f = self.field;
        self.terms.iter().fold(0, |acc, (m, &c)| {
            let v = m
                .0
                .iter()
                .zip(point)
                .filter(|(e, _)| **e > 0)
                .fold(c, |v, (&e, &x)| f.mul(v, f.pow(x, e as u64)));
            f.add(acc, v)
        })
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = self.field;
        let terms = self.terms.iter().filter_map(|(m, &c)| {
            let e = m.0[var];
            if e == 0 {
                return None;
            }
            let mut d = m.clone();
            d.0[var] -= 1;
            Some((d, f.mul(c, e as u64 % f.modulus())))
        });
        Self::from_terms(f, self.nvars, terms)
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
    }
}

impl Add for &PolyFp {
    type Output = PolyFp;

    fn add(self, rhs: &PolyFp) -> PolyFp {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Neg for &PolyFp {
    type Output = PolyFp;

    fn neg(self) -> PolyFp {
        self.scale(self.field.modulus() - 1)
    }
}

impl Sub for &PolyFp {
    type Output = PolyFp;

    fn sub(self, rhs: &PolyFp) -> PolyFp {
        self + &(-rhs)
    }
}

impl Mul for &PolyFp {
    type Output = PolyFp;

    fn mul(self, rhs: &PolyFp) -> PolyFp {
        self.check_compatible(rhs);
        let mut out = PolyFp::zero(self.field, self.nvars);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &rhs.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }
}
