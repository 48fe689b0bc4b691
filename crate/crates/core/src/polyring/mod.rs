//! Exact sparse multivariate polynomials over the integers, divided
//! difference operators, and the Schubert / Grothendieck polynomial bases.
//!
//! Coefficients are arbitrary-precision signed integers; there is no floating
//! point anywhere. Variables are `x_1, x_2, ...`; a monomial stores its
//! exponent vector with trailing zeros trimmed, so polynomials are stable
//! under enlarging the variable set.
//!
//! The pinned monomial order is lexicographic with `x_1` most significant.
//! In this order the exponent vector of the lexicographically *smallest*
//! monomial of a Schubert polynomial is the Lehmer code of its permutation;
//! basis expansion peels that code-leading term off layer by layer. The
//! convention ledger (top seed `prod x_i^{n-i}`, descending recursions via
//! the operators `del_i` and `pi_i`) is validated by the delta-expansion,
//! bottom-component and duality test suites rather than assumed.

mod schubert;

pub use schubert::{
    apply_divided_word, default_degree_cap, expand_grothendieck, expand_schubert,
    grothendieck_poly, grothendieck_poly_from_top, schubert_poly, schubert_poly_from_top,
    stable_product_expand, PolyBasis,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with trailing zeros trimmed; ordered lexicographically
/// with `x_1` most significant.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    pub fn one() -> Self {
        Monomial::default()
    }

    /// The variable `x_i` (1-based).
    pub fn var(i: usize) -> Self {
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps.get(i - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = vec![0; n];
        for (k, e) in exps.iter_mut().enumerate() {
            *e = self.exps.get(k).copied().unwrap_or(0) + other.exps.get(k).copied().unwrap_or(0);
        }
        Monomial::new(exps)
    }

    /// Exponents with positions `i` and `i+1` (1-based) replaced.
    fn with_pair(&self, i: usize, a: u32, b: u32) -> Self {
        let n = self.exps.len().max(i + 1);
        let mut exps = vec![0; n];
        exps[..self.exps.len()].copy_from_slice(&self.exps);
        exps[i - 1] = a;
        exps[i] = b;
        Monomial::new(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let n = self.exps.len().max(other.exps.len());
        for k in 0..n {
            let a = self.exps.get(k).copied().unwrap_or(0);
            let b = other.exps.get(k).copied().unwrap_or(0);
            match a.cmp(&b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", k + 1)?;
            } else {
                write!(f, "x{}^{}", k + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with `BigInt` coefficients; no zero coefficient is
/// ever stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(Monomial::one(), BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::monomial(Monomial::one(), c.into())
    }

    /// The variable `x_i` (1-based).
    pub fn var(i: usize) -> Self {
        Poly::monomial(Monomial::var(i), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// Number of variables actually used.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.exps.len()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).min().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (m, k) in &other.terms {
            self.add_term(m.clone(), k * c);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Poly::zero();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Action of `s_i`: exchanges the variables `x_i` and `x_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.with_pair(i, m.exp(i + 1), m.exp(i)), c.clone());
        }
        out
    }

    /// Divided difference `del_i f = (f - s_i f) / (x_i - x_{i+1})`.
    ///
    /// Computed monomial by monomial, so the division is exact by
    /// construction: `del_i(x^p y^q)` with `p > q` in the pair `(x_i,
    /// x_{i+1})` contributes the geometric band `sum x^{p-1-t} y^{q+t}`.
    pub fn divided_difference(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let p = m.exp(i);
            let q = m.exp(i + 1);
            if p == q {
                continue;
            }
            if p > q {
                for t in 0..(p - q) {
                    out.add_term(m.with_pair(i, p - 1 - t, q + t), c.clone());
                }
            } else {
                for t in 0..(q - p) {
                    out.add_term(m.with_pair(i, p + t, q - 1 - t), -c.clone());
                }
            }
        }
        out
    }

    /// Isobaric divided difference `pi_i f = del_i((1 - x_{i+1}) f)`.
    pub fn isobaric_difference(&self, i: usize) -> Poly {
        let mut shifted = self.clone();
        for (m, c) in &self.terms {
            shifted.add_term(m.mul(&Monomial::var(i + 1)), -c.clone());
        }
        shifted.divided_difference(i)
    }

    /// Splits into homogeneous layers keyed by total degree.
    pub fn homogeneous_layers(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// The homogeneous layer of lowest total degree.
    pub fn bottom_layer(&self) -> Poly {
        let d = self.min_degree();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.is_empty() || self.min_degree() == self.total_degree()
    }

    /// Lexicographically smallest monomial (the code-leading term).
    pub fn lex_min(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    /// Canonical serialization: terms sorted descending in the pinned
    /// monomial order, big integers as decimal strings.
    pub fn to_canonical(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| PolyTerm {
                exponents: m.exps.clone(),
                coefficient: c.to_string(),
            })
            .collect()
    }

    pub fn from_canonical(terms: &[PolyTerm]) -> Poly {
        let mut out = Poly::zero();
        for t in terms {
            out.add_term(
                Monomial::new(t.exponents.clone()),
                t.coefficient.parse().expect("decimal integer"),
            );
        }
        out
    }
}

/// Wire form of a single term: exponent vector plus decimal coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.sign() == num_bigint::Sign::Minus;
            let abs = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == BigInt::one() {
                write!(f, "{m:?}")?;
            } else {
                write!(f, "{abs}*{m:?}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
