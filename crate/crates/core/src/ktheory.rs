//! The Grothendieck ring of the complete flag variety.
//!
//! Classes live in one of two tagged bases: `O_w` (structure sheaves of
//! Schubert varieties) and `I_w` (structure sheaves twisted down by the
//! boundary). The two are exchanged by summation over Bruhat intervals,
//! with Moebius signs in one direction. Products are computed through
//! Grothendieck polynomials in codimension indices and truncated to the
//! window; the Euler characteristic is the coefficient sum in the `O`
//! basis, which is what the vanishing theorems collapse it to.
//!
//! Line bundles act in two steps: an anti-effective weight multiplies by
//! the polynomial `prod (1 - x_i)^{-lambda_i}`, and an effective weight
//! acts as the exact integer inverse of the opposite operator, which is
//! unitriangular with unit diagonal with respect to Bruhat order. The
//! duality involution, the `I_w(rho)` transition and the K-Chevalley
//! formula are all assembled from these two actions.

use crate::error::{Error, Result};
use crate::polyring::{default_degree_cap, expand_grothendieck, grothendieck_poly, Poly};
use crate::weyl::{Permutation, Weight};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// Basis tag for K-classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KBasis {
    O,
    I,
}

/// Finitely supported integer combination in a tagged K-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    window: usize,
    basis: KBasis,
    terms: BTreeMap<Permutation, BigInt>,
}

impl KClass {
    pub fn zero(window: usize, basis: KBasis) -> Self {
        KClass {
            window,
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// `O_w`, the K-class of the Schubert variety `X_w`.
    pub fn o_class(w: &Permutation) -> Self {
        Self::basis_element(w, KBasis::O)
    }

    /// `I_w`, the class of the boundary-twisted structure sheaf.
    pub fn i_class(w: &Permutation) -> Self {
        Self::basis_element(w, KBasis::I)
    }

    /// `O^w = O_{w_o w}`, the opposite Schubert class.
    pub fn o_opposite(w: &Permutation) -> Self {
        let wo = Permutation::longest_element(w.window());
        Self::basis_element(&wo.compose(w).expect("windows"), KBasis::O)
    }

    /// `I^w = I_{w_o w}`.
    pub fn i_opposite(w: &Permutation) -> Self {
        let wo = Permutation::longest_element(w.window());
        Self::basis_element(&wo.compose(w).expect("windows"), KBasis::I)
    }

    fn basis_element(w: &Permutation, basis: KBasis) -> Self {
        let mut c = KClass::zero(w.window(), basis);
        c.add_term(w.clone(), BigInt::one());
        c
    }

    /// The ring unit `O_{w_o} = [O_X]`.
    pub fn unit(window: usize) -> Self {
        Self::o_class(&Permutation::longest_element(window))
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn basis(&self) -> KBasis {
        self.basis
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
        let other = convert(other, self.basis);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return KClass::zero(self.window, self.basis);
        }
        KClass {
            window: self.window,
            basis: self.basis,
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    pub fn sorted_terms(&self) -> Vec<(&Permutation, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(w, _)| (w.length(), w.images().to_vec()));
        v
    }

    pub fn to_wire(&self) -> KClassWire {
        KClassWire {
            window: self.window,
            basis: match self.basis {
                KBasis::O => "O".to_string(),
                KBasis::I => "I".to_string(),
            },
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| crate::cohomology::ClassTerm {
                    perm: w.images().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

/// Canonical JSON form: `{window, basis, terms}`, terms sorted by
/// (length, lex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClassWire {
    pub window: usize,
    pub basis: String,
    pub terms: Vec<crate::cohomology::ClassTerm>,
}

/// All `v <= w`, sorted.
fn interval_below(w: &Permutation) -> Vec<Permutation> {
    Permutation::all(w.window())
        .into_iter()
        .filter(|v| Permutation::bruhat_leq(v, w).expect("windows"))
        .collect()
}

/// Basis conversion: `O_w = sum_{v <= w} I_v` and `I_w = sum_{v <= w}
/// (-1)^{l(w) - l(v)} O_v`, extended linearly. The two conversion matrices
/// are mutually inverse; the signed one is the Moebius function of the
/// Bruhat order.
pub fn convert(a: &KClass, target: KBasis) -> KClass {
    if a.basis == target {
        return a.clone();
    }
    let mut out = KClass::zero(a.window, target);
    for (w, c) in &a.terms {
        for v in interval_below(w) {
            let coeff = match target {
                // I_w expressed in O: Moebius signs
                KBasis::O => {
                    if (w.length() - v.length()) % 2 == 0 {
                        c.clone()
                    } else {
                        -c.clone()
                    }
                }
                // O_w expressed in I: plain interval sum
                KBasis::I => c.clone(),
            };
            out.add_term(v, coeff);
        }
    }
    out
}

/// The codimension-index Grothendieck polynomial representing a class.
pub fn to_codim_poly(a: &KClass) -> Poly {
    let in_o = convert(a, KBasis::O);
    let wo = Permutation::longest_element(a.window);
    let mut p = Poly::zero();
    for (w, c) in &in_o.terms {
        p.add_scaled(&grothendieck_poly(&wo.compose(w).expect("windows")), c);
    }
    p
}

/// Expands a codimension-index polynomial back into an `O`-basis class,
/// truncating permutations that leave the window.
pub fn class_from_codim_poly(window: usize, f: &Poly) -> Result<KClass> {
    let expansion = expand_grothendieck(f, default_degree_cap(window.max(2)))?;
    let wo = Permutation::longest_element(window);
    let mut out = KClass::zero(window, KBasis::O);
    for (u, c) in expansion {
        if u.natural_window() <= window {
            out.add_term(wo.compose(&u.embed(window)?)?, c);
        }
    }
    Ok(out)
}

/// Product in the Grothendieck ring, returned in the `O` basis.
pub fn multiply(a: &KClass, b: &KClass) -> Result<KClass> {
    if a.window != b.window {
        return Err(Error::WindowMismatch(a.window, b.window));
    }
    let prod = to_codim_poly(a).mul(&to_codim_poly(b));
    class_from_codim_poly(a.window, &prod)
}

/// Euler characteristic: the coefficient sum in the `O` basis
/// (`chi(O_w) = 1` for every `w`).
pub fn chi(a: &KClass) -> BigInt {
    convert(a, KBasis::O).terms.values().sum()
}

/// Euler characteristic of a codimension-index polynomial in window `n`.
pub fn chi_codim_poly(window: usize, f: &Poly) -> Result<BigInt> {
    Ok(chi(&class_from_codim_poly(window, f)?))
}

/// The duality pairing `(a, b) -> chi(a . b)`.
pub fn duality_pairing(a: &KClass, b: &KClass) -> Result<BigInt> {
    Ok(chi(&multiply(a, b)?))
}

/// Recomputes the `O`-coefficients of `a` as `chi(a . I^w)`; the dual-basis
/// theorem says this must reproduce the stored coefficients.
pub fn expand_by_duality(a: &KClass) -> Result<BTreeMap<Permutation, BigInt>> {
    let mut out = BTreeMap::new();
    for w in Permutation::all(a.window) {
        let c = duality_pairing(a, &KClass::i_opposite(&w))?;
        if !c.is_zero() {
            out.insert(w, c);
        }
    }
    Ok(out)
}

/// Structure constant `c_{vw}^x` of `O_v . O_w`, with the alternating-sign
/// theorem `(-1)^{l(v)+l(w)+l(x)+l(w_o)} c >= 0` enforced.
pub fn structure_constant_k(v: &Permutation, w: &Permutation, x: &Permutation) -> Result<BigInt> {
    let c = multiply(&KClass::o_class(v), &KClass::o_class(w))?.coeff(x);
    check_sign_pattern(v, w, x, &c)?;
    Ok(c)
}

/// Checks the alternating-sign constraint holding for one constant.
pub fn check_sign_pattern(
    v: &Permutation,
    w: &Permutation,
    x: &Permutation,
    c: &BigInt,
) -> Result<()> {
    let wo_len = v.window() * (v.window() - 1) / 2;
    let parity = (v.length() + w.length() + x.length() + wo_len) % 2;
    let signed = if parity == 0 { c.clone() } else { -c.clone() };
    if signed.sign() == num_bigint::Sign::Minus {
        return Err(Error::SignPattern {
            witness: format!("c[{v:?},{w:?}]^{x:?}"),
            coeff: c.to_string(),
        });
    }
    Ok(())
}

/// Richardson class `[O_{X_w^v}] = O_w . O^v`; zero iff `v` is not below
/// `w`, and of Euler characteristic one otherwise.
pub fn richardson_class(v: &Permutation, w: &Permutation) -> Result<KClass> {
    multiply(&KClass::o_class(w), &KClass::o_opposite(v))
}

// Line-bundle operator matrices in the O-basis, cached per (window, weight).
struct OpMatrix {
    perms: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    // cols[j] = sparse expansion of L . O_{perms[j]}
    cols: Vec<Vec<(usize, BigInt)>>,
}

static OP_MATRICES: Lazy<RwLock<HashMap<(usize, Vec<i64>), Arc<OpMatrix>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Multiplication by `prod_i (1 - x_i)^{nu_i}` in codimension indices: the
/// action of the anti-effective line bundle `[L_{-nu}]`, `nu >= 0`.
fn anti_effective_poly(nu: &[i64]) -> Poly {
    let mut f = Poly::one();
    for (k, &e) in nu.iter().enumerate() {
        debug_assert!(e >= 0);
        let factor = Poly::one().sub(&Poly::var(k + 1));
        for _ in 0..e {
            f = f.mul(&factor);
        }
    }
    f
}

fn anti_effective_apply(a: &KClass, nu: &[i64]) -> Result<KClass> {
    let f = to_codim_poly(a).mul(&anti_effective_poly(nu));
    class_from_codim_poly(a.window, &f)
}

/// Basis order used for triangular solves: any linear extension of Bruhat
/// order works; (length, one-line) is used everywhere for determinism.
fn basis_order(window: usize) -> Vec<Permutation> {
    let mut perms = Permutation::all(window);
    perms.sort_by_key(|w| (w.length(), w.images().to_vec()));
    perms
}

fn op_matrix(window: usize, nu: &[i64]) -> Result<Arc<OpMatrix>> {
    let key = (window, nu.to_vec());
    if let Some(m) = OP_MATRICES.read().expect("lock").get(&key) {
        return Ok(Arc::clone(m));
    }
    let perms = basis_order(window);
    let index: HashMap<Permutation, usize> = perms
        .iter()
        .enumerate()
        .map(|(k, w)| (w.clone(), k))
        .collect();
    let mut cols = Vec::with_capacity(perms.len());
    for (j, v) in perms.iter().enumerate() {
        let image = anti_effective_apply(&KClass::o_class(v), nu)?;
        let mut col = Vec::with_capacity(image.support_size());
        for (x, c) in &image.terms {
            // Unitriangularity with respect to Bruhat order is the
            // correctness certificate for the integer inverse.
            if !Permutation::bruhat_leq(x, v)? {
                return Err(Error::Unitriangular(format!("entry ({x:?}, {v:?})")));
            }
            col.push((index[x], c.clone()));
        }
        if image.coeff(v) != BigInt::one() {
            return Err(Error::Unitriangular(format!("diagonal at {v:?}")));
        }
        col.sort_by_key(|(i, _)| *i);
        let _ = j;
        cols.push(col);
    }
    let m = Arc::new(OpMatrix {
        perms,
        index,
        cols,
    });
    OP_MATRICES
        .write()
        .expect("lock")
        .entry(key)
        .or_insert_with(|| Arc::clone(&m));
    Ok(m)
}

/// Solves `M y = b` for the unitriangular operator matrix `M` of the
/// anti-effective weight `nu`; this is the exact action of `[L_{nu}]`.
fn effective_apply(b: &KClass, nu: &[i64]) -> Result<KClass> {
    let m = op_matrix(b.window, nu)?;
    let k = m.perms.len();
    let mut resid: Vec<BigInt> = vec![BigInt::zero(); k];
    for (w, c) in &b.terms {
        resid[m.index[w]] = c.clone();
    }
    let mut y: Vec<BigInt> = vec![BigInt::zero(); k];
    for j in (0..k).rev() {
        if resid[j].is_zero() {
            continue;
        }
        let c = resid[j].clone();
        for (i, entry) in &m.cols[j] {
            resid[*i] -= entry * &c;
        }
        // the unit diagonal entry (j, j) just cleared resid[j]
        debug_assert!(resid[j].is_zero());
        y[j] = c;
    }
    if resid.iter().any(|r| !r.is_zero()) {
        return Err(Error::Unitriangular("nonzero residual".to_string()));
    }
    let mut out = KClass::zero(b.window, KBasis::O);
    for (j, c) in y.into_iter().enumerate() {
        out.add_term(m.perms[j].clone(), c);
    }
    Ok(out)
}

/// Multiplication by the line-bundle class `[L_lambda]`, for an arbitrary
/// integer weight: the anti-effective part acts by exact polynomial
/// multiplication, the effective part by the integer inverse of the
/// opposite unitriangular operator.
pub fn line_bundle_mult(lambda: &Weight, a: &KClass) -> Result<KClass> {
    if lambda.len() != a.window {
        return Err(Error::WindowMismatch(lambda.len(), a.window));
    }
    let pos: Vec<i64> = lambda.entries().iter().map(|&e| e.max(0)).collect();
    let neg: Vec<i64> = lambda.entries().iter().map(|&e| (-e).max(0)).collect();
    let a_o = convert(a, KBasis::O);
    let lowered = if neg.iter().any(|&e| e > 0) {
        anti_effective_apply(&a_o, &neg)?
    } else {
        a_o
    };
    if pos.iter().any(|&e| e > 0) {
        effective_apply(&lowered, &pos)
    } else {
        Ok(lowered)
    }
}

/// The class `[L_lambda]` itself.
pub fn line_bundle_class(lambda: &Weight) -> Result<KClass> {
    line_bundle_mult(lambda, &KClass::unit(lambda.len()))
}

/// K-Chevalley: the expansion of `[L_lambda] . O_w` for dominant `lambda`.
/// All coefficients are non-negative, the support lies below `w` and the
/// coefficient at `w` is one; violations abort.
pub fn k_chevalley(lambda: &Weight, w: &Permutation) -> Result<BTreeMap<Permutation, BigInt>> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.entries().to_vec()));
    }
    let image = line_bundle_mult(lambda, &KClass::o_class(w))?;
    for (v, c) in &image.terms {
        if c.sign() == num_bigint::Sign::Minus {
            return Err(Error::Positivity {
                witness: format!("[L_{lambda:?}] . O_{w:?} at {v:?}"),
                coeff: c.to_string(),
            });
        }
        if !Permutation::bruhat_leq(v, w)? {
            return Err(Error::IdentityFailed(format!(
                "K-Chevalley support {v:?} not below {w:?}"
            )));
        }
    }
    if image.coeff(w) != BigInt::one() {
        return Err(Error::IdentityFailed(format!(
            "K-Chevalley diagonal at {w:?} is {}",
            image.coeff(w)
        )));
    }
    Ok(image.terms)
}

/// Expansion of `O_lambda . O_w` where `O_lambda := 1 - [L_{-lambda}]` is
/// the class of the zero scheme of a section of `L_lambda`. The support is
/// strictly below `w` and the coefficient at `v` has sign
/// `(-1)^{l(w)-l(v)-1}` or vanishes.
pub fn o_lambda_mult(lambda: &Weight, w: &Permutation) -> Result<BTreeMap<Permutation, BigInt>> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.entries().to_vec()));
    }
    let ow = KClass::o_class(w);
    let lowered = line_bundle_mult(&lambda.negate(), &ow)?;
    let image = ow.sub(&lowered)?;
    for (v, c) in &image.terms {
        if !(Permutation::bruhat_leq(v, w)? && v != w) {
            return Err(Error::IdentityFailed(format!(
                "O_lambda support {v:?} not strictly below {w:?}"
            )));
        }
        let parity = (w.length() - v.length() + 1) % 2;
        let signed = if parity == 0 { c.clone() } else { -c.clone() };
        if signed.sign() == num_bigint::Sign::Minus {
            return Err(Error::SignPattern {
                witness: format!("O_lambda . O_{w:?} at {v:?}"),
                coeff: c.to_string(),
            });
        }
    }
    Ok(image.terms)
}

/// Duality involution: `O_w -> (-1)^{l(w_o) - l(w)} [L_rho] . I_w`,
/// extended additively. Involutive, multiplicative, and sends `[L_lambda]`
/// to `[L_{-lambda}]`.
pub fn dualize(a: &KClass) -> Result<KClass> {
    let n = a.window;
    let rho = Weight::rho(n);
    let wo_len = n * (n - 1) / 2;
    let in_o = convert(a, KBasis::O);
    let mut out = KClass::zero(n, KBasis::O);
    for (w, c) in &in_o.terms {
        let tw = line_bundle_mult(&rho, &convert(&KClass::i_class(w), KBasis::O))?;
        let sign = if (wo_len - w.length()) % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        for (v, k) in &tw.terms {
            out.add_term(v.clone(), k * &sign * c);
        }
    }
    Ok(out)
}

/// Transition coefficients `h_w^v` of `I_w(rho) := [L_rho] . I_w` in the
/// `O` basis: non-negative, supported below `w`, unit at `w`; the inverse
/// relation `O_w = sum (-1)^{l(w)-l(v)} h_w^v I_v(rho)` is checked by the
/// test suites.
pub fn i_rho_transition(w: &Permutation) -> Result<BTreeMap<Permutation, BigInt>> {
    let rho = Weight::rho(w.window());
    let image = line_bundle_mult(&rho, &convert(&KClass::i_class(w), KBasis::O))?;
    for (v, c) in &image.terms {
        if c.sign() == num_bigint::Sign::Minus {
            return Err(Error::Positivity {
                witness: format!("h[{w:?}]^{v:?}"),
                coeff: c.to_string(),
            });
        }
        if !Permutation::bruhat_leq(v, w)? {
            return Err(Error::IdentityFailed(format!(
                "h[{w:?}]^{v:?} nonzero outside the interval"
            )));
        }
    }
    if image.coeff(w) != BigInt::one() {
        return Err(Error::IdentityFailed(format!("h[{w:?}]^{w:?} != 1")));
    }
    Ok(image.terms)
}

/// Report of the diagonal-class identities.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub window: usize,
    pub functional_samples: usize,
    pub interval_pairs_checked: usize,
    pub pass: bool,
}

/// Checks the two diagonal identities: (a) every class equals
/// `sum_w chi(a . I^w) O_w` (on deterministic pseudo-random probes); (b)
/// the Richardson refinement: contracting `sum_x O_x (x) I^x` against
/// `(O^v (x) O_w)` is supported on the interval `[v, w]`, i.e.
/// `O_x . O^v = 0` unless `v <= x` and `I^x . O_w = 0` unless `x <= w`.
pub fn diagonal_identities(
    window: usize,
    pairs: &[(Permutation, Permutation)],
    samples: usize,
    seed: u64,
) -> Result<DiagonalReport> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let perms = Permutation::all(window);
    for _ in 0..samples {
        let mut a = KClass::zero(window, KBasis::O);
        for w in &perms {
            let c: i64 = rng.gen_range(-3..=3);
            a.add_term(w.clone(), BigInt::from(c));
        }
        let recovered = expand_by_duality(&a)?;
        if recovered != a.terms {
            return Err(Error::IdentityFailed(format!(
                "duality expansion failed on {:?}",
                a.to_wire()
            )));
        }
    }
    for (v, w) in pairs {
        for x in &perms {
            let left = multiply(&KClass::o_class(x), &KClass::o_opposite(v))?;
            if Permutation::bruhat_leq(v, x)? != !left.is_zero() {
                return Err(Error::IdentityFailed(format!(
                    "O_{x:?} . O^{v:?} vanishing mismatch"
                )));
            }
            if !Permutation::bruhat_leq(x, w)? {
                let right = multiply(&KClass::i_opposite(x), &KClass::o_class(w))?;
                if !right.is_zero() {
                    return Err(Error::IdentityFailed(format!(
                        "I^{x:?} . O_{w:?} nonzero outside interval"
                    )));
                }
            }
        }
    }
    Ok(DiagonalReport {
        window,
        functional_samples: samples,
        interval_pairs_checked: pairs.len(),
        pass: true,
    })
}

/// Dense integer export of a line-bundle operator matrix in the `O` basis,
/// keyed by the sorted permutation list.
pub fn operator_matrix_wire(window: usize, lambda: &Weight) -> Result<serde_json::Value> {
    let perms = basis_order(window);
    let mut rows = vec![vec!["0".to_string(); perms.len()]; perms.len()];
    for (j, v) in perms.iter().enumerate() {
        let image = line_bundle_mult(lambda, &KClass::o_class(v))?;
        for (i, x) in perms.iter().enumerate() {
            rows[i][j] = image.coeff(x).to_string();
        }
    }
    Ok(serde_json::json!({
        "window": window,
        "weight": lambda.entries(),
        "basis": "O",
        "perms": perms.iter().map(|w| w.images().to_vec()).collect::<Vec<_>>(),
        "matrix": rows,
    }))
}
