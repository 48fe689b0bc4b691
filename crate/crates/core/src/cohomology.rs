//! The cohomology ring of the complete flag variety in the Schubert basis.
//!
//! Classes are indexed in the paper's dimension convention: the coefficient
//! sits on `[X_w]` with `deg [X_w] = 2(l(w_o) - l(w))`, the fundamental
//! class is `[X_{w_o}]` and the point class is `[X_id]`. The polynomial
//! engine works in codimension indices; the translation `w -> w_o w`
//! happens at this module's boundary, and expansion terms landing outside
//! `S_n` are discarded (they are classes vanishing on the flag variety).

use crate::error::{Error, Result};
use crate::polyring::{expand_schubert, schubert_poly, Poly};
use crate::weyl::{Permutation, Weight};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Finitely supported integer combination of Schubert classes `[X_w]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    window: usize,
    terms: BTreeMap<Permutation, BigInt>,
}

impl CohClass {
    pub fn zero(window: usize) -> Self {
        CohClass {
            window,
            terms: BTreeMap::new(),
        }
    }

    /// The Schubert class `[X_w]`.
    pub fn schubert(w: &Permutation) -> Self {
        let mut c = CohClass::zero(w.window());
        c.add_term(w.clone(), BigInt::one());
        c
    }

    /// The opposite Schubert class `[X^w] = [X_{w_o w}]`.
    pub fn opposite(w: &Permutation) -> Self {
        let wo = Permutation::longest_element(w.window());
        CohClass::schubert(&wo.compose(w).expect("equal windows"))
    }

    /// The fundamental class `[X_{w_o}]`, the multiplicative identity.
    pub fn unit(window: usize) -> Self {
        CohClass::schubert(&Permutation::longest_element(window))
    }

    /// The point class `[X_id]`.
    pub fn point(window: usize) -> Self {
        CohClass::schubert(&Permutation::identity(window))
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Permutation) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, w: Permutation, c: BigInt) {
        debug_assert_eq!(w.window(), self.window);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.window != other.window {
            return Err(Error::WindowMismatch(self.window, other.window));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return CohClass::zero(self.window);
        }
        CohClass {
            window: self.window,
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Terms sorted by (length, one-line notation): the canonical order.
    pub fn sorted_terms(&self) -> Vec<(&Permutation, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(w, _)| (w.length(), w.images().to_vec()));
        v
    }

    pub fn to_wire(&self) -> CohClassWire {
        CohClassWire {
            window: self.window,
            convention: "dimension".to_string(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| ClassTerm {
                    perm: w.images().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

/// Canonical JSON form: `{window, convention, terms}` with terms sorted by
/// (length, lex) and coefficients as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohClassWire {
    pub window: usize,
    pub convention: String,
    pub terms: Vec<ClassTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTerm {
    pub perm: Vec<usize>,
    pub coeff: String,
}

/// The polynomial representative of a class in codimension indices.
fn to_codim_poly(a: &CohClass) -> Poly {
    let wo = Permutation::longest_element(a.window);
    let mut p = Poly::zero();
    for (w, c) in &a.terms {
        p.add_scaled(&schubert_poly(&wo.compose(w).expect("windows")), c);
    }
    p
}

/// Reads a Schubert-basis expansion back into dimension indices, dropping
/// permutations that do not fit in the window.
fn from_codim_expansion(
    window: usize,
    expansion: BTreeMap<Permutation, BigInt>,
) -> Result<CohClass> {
    let wo = Permutation::longest_element(window);
    let mut out = CohClass::zero(window);
    for (u, c) in expansion {
        if u.natural_window() <= window {
            out.add_term(wo.compose(&u.embed(window)?)?, c);
        }
    }
    Ok(out)
}

/// Cup product, computed by multiplying Schubert polynomials of the
/// codimension indices and expanding.
pub fn cup(a: &CohClass, b: &CohClass) -> Result<CohClass> {
    if a.window() != b.window() {
        return Err(Error::WindowMismatch(a.window(), b.window()));
    }
    let prod = to_codim_poly(a).mul(&to_codim_poly(b));
    from_codim_expansion(a.window(), expand_schubert(&prod))
}

/// Poincare pairing: the coefficient of the point class in the cup product.
pub fn pairing(a: &CohClass, b: &CohClass) -> Result<BigInt> {
    Ok(cup(a, b)?.coeff(&Permutation::identity(a.window())))
}

/// The structure constant `a_{vw}^x` of `[X_v] cup [X_w]`; non-negativity
/// is a theorem and is enforced.
pub fn structure_constant(v: &Permutation, w: &Permutation, x: &Permutation) -> Result<BigInt> {
    let c = cup(&CohClass::schubert(v), &CohClass::schubert(w))?.coeff(x);
    if c.sign() == num_bigint::Sign::Minus {
        return Err(Error::Positivity {
            witness: format!("a[{v:?},{w:?}]^{x:?}"),
            coeff: c.to_string(),
        });
    }
    Ok(c)
}

/// Chevalley formula, directly: `c_1(L_lambda) cup [X_w] = sum
/// (lambda_i - lambda_j) [X_{w s_ij}]` over the Schubert divisors of `X_w`.
/// No polynomial arithmetic is involved.
pub fn chevalley_cup(lambda: &Weight, w: &Permutation) -> CohClass {
    let mut out = CohClass::zero(w.window());
    for (v, (i, j)) in w.covers_with_transpositions() {
        let c = lambda.entries()[i - 1] - lambda.entries()[j - 1];
        out.add_term(v, BigInt::from(c));
    }
    out
}

/// Linear extension of the Chevalley operator to a class.
pub fn chevalley_cup_class(lambda: &Weight, a: &CohClass) -> CohClass {
    let mut out = CohClass::zero(a.window());
    for (w, c) in &a.terms {
        let step = chevalley_cup(lambda, w);
        for (v, k) in &step.terms {
            out.add_term(v.clone(), k * c);
        }
    }
    out
}

/// `c_1(L_lambda) = sum_i (lambda_i - lambda_{i+1}) [X^{s_i}]`.
pub fn c1_class(lambda: &Weight, window: usize) -> CohClass {
    let wo = Permutation::longest_element(window);
    let mut out = CohClass::zero(window);
    for i in 1..window {
        let c = lambda.entries()[i - 1] - lambda.entries()[i];
        out.add_term(wo.times_simple_right(i), BigInt::from(c));
    }
    out
}

/// Divisor of the canonical section `p_{w lambda}` restricted to `X_w`:
/// coefficient `lambda_i - lambda_j` on each Schubert divisor `X_{w s_ij}`.
/// Requires `lambda` dominant; with `lambda = rho` every coefficient is
/// positive, so the zero locus is the whole boundary.
pub fn divisor_of_section(
    lambda: &Weight,
    w: &Permutation,
) -> Result<BTreeMap<Permutation, i64>> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.entries().to_vec()));
    }
    Ok(w.covers_with_transpositions()
        .into_iter()
        .map(|(v, (i, j))| (v, lambda.entries()[i - 1] - lambda.entries()[j - 1]))
        .collect())
}

/// A canonical divisor of `X_w`: coefficient `-(j - i + 1)` on each
/// Schubert divisor `X_{w s_ij}`.
pub fn canonical_divisor(w: &Permutation) -> BTreeMap<Permutation, i64> {
    w.covers_with_transpositions()
        .into_iter()
        .map(|(v, (i, j))| (v, -((j - i + 1) as i64)))
        .collect()
}

/// Positivity type of the homogeneous line bundle `L_lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    Ample,
    GloballyGenerated,
    Neither,
}

/// Ample iff regular dominant, globally generated iff dominant.
pub fn line_bundle_positivity(lambda: &Weight) -> Positivity {
    if lambda.is_regular_dominant() {
        Positivity::Ample
    } else if lambda.is_dominant() {
        Positivity::GloballyGenerated
    } else {
        Positivity::Neither
    }
}

/// True iff `L_lambda` restricts trivially to `X_w`: `lambda_i =
/// lambda_{i+1}` whenever `s_i <= w`.
pub fn pic_kernel_check(w: &Permutation, lambda: &Weight) -> bool {
    w.support()
        .into_iter()
        .all(|i| lambda.entries()[i - 1] == lambda.entries()[i])
}

/// The class of the diagonal of `X x X` in the basis `[X_w x X^v]`:
/// the identity matrix, entry `1` exactly on the pairs `(w, w)`.
pub fn diagonal_class(window: usize) -> BTreeMap<(Permutation, Permutation), BigInt> {
    Permutation::all(window)
        .into_iter()
        .map(|w| ((w.clone(), w), BigInt::one()))
        .collect()
}

/// Pairing contraction of the diagonal class against `[X^w x X_v]`,
/// computed through the engine's pairing; equals `delta_{wv}`.
pub fn diagonal_contraction(w: &Permutation, v: &Permutation) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for u in Permutation::all(w.window()) {
        let first = pairing(&CohClass::schubert(&u), &CohClass::opposite(w))?;
        if first.is_zero() {
            continue;
        }
        let second = pairing(&CohClass::opposite(&u), &CohClass::schubert(v))?;
        acc += first * second;
    }
    Ok(acc)
}
