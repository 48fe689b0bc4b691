//! Grassmannian and partial-flag specializations.
//!
//! Schubert varieties in `Gr(d, n)` are indexed three ways: by strictly
//! increasing multi-indices, by partitions in a `d x (n-d)` box (area =
//! dimension; the dual, weakly decreasing view has area = codimension),
//! and by minimal coset representatives in the symmetric group. The
//! dictionaries here are mutually inverse bijections.
//!
//! Littlewood-Richardson coefficients are computed by pulling classes back
//! to the complete flag variety (multiplying the maximal-representative
//! classes there) rather than by a tableau rule. `K(P^n)` gets a standalone
//! Hilbert-polynomial model: a class is its Hilbert polynomial, decomposed
//! exactly in the binomial basis.

use crate::cohomology::{chevalley_cup, cup, CohClass};
use crate::error::{Error, Result};
use crate::ktheory::{multiply, KClass};
use crate::weyl::{coset_rep, Composition, CosetMode, Permutation, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A Schubert index in `Gr(d, n)`: strictly increasing values in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GrassIndex {
    d: usize,
    n: usize,
    indices: Vec<usize>,
}

impl GrassIndex {
    pub fn new(indices: Vec<usize>, d: usize, n: usize) -> Result<Self> {
        if indices.len() != d
            || d == 0
            || d > n
            || indices.iter().any(|&i| i == 0 || i > n)
            || indices.windows(2).any(|p| p[0] >= p[1])
        {
            return Err(Error::MalformedIndex(format!(
                "indices {indices:?} for Gr({d},{n})"
            )));
        }
        Ok(GrassIndex { d, n, indices })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Dimension of the Schubert variety: `sum (i_j - j)`.
    pub fn dim(&self) -> usize {
        self.indices
            .iter()
            .enumerate()
            .map(|(k, &i)| i - (k + 1))
            .sum()
    }

    /// Containment order: `J <= I` iff `j_k <= i_k` for all `k`.
    pub fn contains(&self, other: &GrassIndex) -> Result<bool> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::MalformedIndex(format!(
                "shape mismatch Gr({},{}) vs Gr({},{})",
                self.d, self.n, other.d, other.n
            )));
        }
        Ok(other
            .indices
            .iter()
            .zip(&self.indices)
            .all(|(j, i)| j <= i))
    }

    /// The partition `lambda_j = i_j - j` (dimension convention).
    pub fn to_partition(&self) -> Partition {
        Partition {
            d: self.d,
            n: self.n,
            parts: self
                .indices
                .iter()
                .enumerate()
                .map(|(k, &i)| i - (k + 1))
                .collect(),
        }
    }

    /// The minimal coset representative: `w(k) = i_k` for `k <= d`, the
    /// remaining values ascending.
    pub fn to_min_rep(&self) -> Permutation {
        let mut images = self.indices.clone();
        let mut used = vec![false; self.n + 1];
        for &i in &self.indices {
            used[i] = true;
        }
        images.extend((1..=self.n).filter(|&v| !used[v]));
        Permutation::new(images).expect("valid by construction")
    }

    /// The maximal coset representative, `min . w_{0,P}`.
    pub fn to_max_rep(&self) -> Permutation {
        let ctype = self.parabolic();
        coset_rep(&self.to_min_rep(), &ctype, CosetMode::Maximal).expect("valid composition")
    }

    pub fn parabolic(&self) -> Composition {
        let parts = if self.d == self.n {
            vec![self.d]
        } else {
            vec![self.d, self.n - self.d]
        };
        Composition::new(parts, self.n).expect("valid")
    }

    /// Recovers the index from any permutation in its coset.
    pub fn from_permutation(w: &Permutation, d: usize) -> Result<Self> {
        let n = w.window();
        let mut indices: Vec<usize> = w.images()[..d].to_vec();
        indices.sort_unstable();
        GrassIndex::new(indices, d, n)
    }

    /// All indices of `Gr(d, n)`, sorted.
    pub fn all(d: usize, n: usize) -> Vec<GrassIndex> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=d).collect();
        loop {
            out.push(GrassIndex {
                d,
                n,
                indices: current.clone(),
            });
            // next strictly increasing d-subset of 1..=n
            let mut k = d;
            while k > 0 && current[k - 1] == n - (d - k) {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            current[k - 1] += 1;
            for t in k..d {
                current[t] = current[t - 1] + 1;
            }
        }
        out.sort();
        out
    }
}

/// A partition with at most `d` parts of size at most `n - d`, stored
/// weakly increasing (area = dimension of the Schubert variety). The dual,
/// weakly decreasing view has area equal to the codimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    d: usize,
    n: usize,
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>, d: usize, n: usize) -> Result<Self> {
        if parts.len() != d
            || parts.windows(2).any(|p| p[0] > p[1])
            || parts.iter().any(|&p| p > n - d)
        {
            return Err(Error::MalformedIndex(format!(
                "partition {parts:?} for Gr({d},{n})"
            )));
        }
        Ok(Partition { d, n, parts })
    }

    /// Builds from the dual (weakly decreasing, codimension) view.
    pub fn from_dual(mut dual: Vec<usize>, d: usize, n: usize) -> Result<Self> {
        if dual.len() > d {
            return Err(Error::MalformedIndex(format!(
                "dual partition {dual:?} has more than {d} parts"
            )));
        }
        dual.resize(d, 0);
        if dual.windows(2).any(|p| p[0] < p[1]) || dual.iter().any(|&p| p > n - d) {
            return Err(Error::MalformedIndex(format!(
                "dual partition {dual:?} for Gr({d},{n})"
            )));
        }
        // position-wise complement in the box
        let parts: Vec<usize> = dual.iter().map(|&p| n - d - p).collect();
        Partition::new(parts, d, n)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn area(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The dual partition `(n - i_d, n-1 - i_{d-1}, ..., n-d+1 - i_1)` in
    /// its weakly decreasing presentation; its area is the codimension.
    pub fn dual_decreasing(&self) -> Vec<usize> {
        self.parts.iter().map(|&p| self.n - self.d - p).collect()
    }

    pub fn to_index(&self) -> GrassIndex {
        GrassIndex {
            d: self.d,
            n: self.n,
            indices: self
                .parts
                .iter()
                .enumerate()
                .map(|(k, &p)| p + k + 1)
                .collect(),
        }
    }
}

/// Containment poset of the Schubert varieties of `Gr(d, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassPoset {
    pub elements: Vec<GrassIndex>,
    pub covers: Vec<(GrassIndex, GrassIndex)>,
}

/// Full containment poset with covers (`J` covered by `I` iff `J <= I`
/// with dimension one less; the order is graded by dimension).
pub fn grass_poset(d: usize, n: usize) -> Result<GrassPoset> {
    if d == 0 || d > n {
        return Err(Error::IndexOutOfRange(d, n));
    }
    let elements = GrassIndex::all(d, n);
    let mut covers = Vec::new();
    for i in &elements {
        for j in &elements {
            if j.dim() + 1 == i.dim() && i.contains(j)? {
                covers.push((j.clone(), i.clone()));
            }
        }
    }
    covers.sort();
    Ok(GrassPoset { elements, covers })
}

impl GrassPoset {
    pub fn to_dot(&self, name: &str) -> String {
        let label = |i: &GrassIndex| {
            i.indices
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut s = String::new();
        s.push_str(&format!("digraph \"{name}\" {{\n  rankdir=BT;\n"));
        let mut elements = self.elements.clone();
        elements.sort_by_key(|i| (i.dim(), i.indices.clone()));
        for i in &elements {
            s.push_str(&format!("  \"{}\";\n", label(i)));
        }
        for (j, i) in &self.covers {
            s.push_str(&format!("  \"{}\" -> \"{}\";\n", label(j), label(i)));
        }
        s.push_str("}\n");
        s
    }
}

/// Divisor Pieri rule in cohomology: `c_1(L) cup [X_I] = sum_{J <ic I} [X_J]`
/// with unit coefficients on the covers of `I`.
pub fn pieri_divisor_cohomology(i: &GrassIndex) -> Result<BTreeMap<GrassIndex, BigInt>> {
    let mut out = BTreeMap::new();
    for j in GrassIndex::all(i.d, i.n) {
        if j.dim() + 1 == i.dim() && i.contains(&j)? {
            out.insert(j, BigInt::one());
        }
    }
    Ok(out)
}

/// Divisor of the Pluecker coordinate restricted to `X_I`: the reduced sum
/// of the Schubert divisors, refining the cohomological Pieri rule.
pub fn plucker_divisor(i: &GrassIndex) -> Result<BTreeMap<GrassIndex, BigInt>> {
    pieri_divisor_cohomology(i)
}

/// K-Pieri modes on the Grassmannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KPieriMode {
    /// `[L] . O_I = sum_{J <= I} O_J`
    LineBundle,
    /// `[L^{-1}] . O_I = sum_{J <= I} mu(J, I) O_J`, the Moebius inverse of
    /// the line-bundle rule in the containment order
    LineBundleInverse,
    /// `O_{omega_d} . O_I = (1 - [L^{-1}]) . O_I = sum_{J < I} -mu(J, I) O_J`
    Divisor,
}

/// Moebius function of the containment order on `Gr(d, n)` indices. This is
/// not `(-1)^{area difference}` in general: it vanishes on intervals that
/// are longer chains, e.g. on three-element chains.
pub fn containment_mobius(j: &GrassIndex, i: &GrassIndex) -> Result<i64> {
    if !i.contains(j)? {
        return Ok(0);
    }
    let interval: Vec<GrassIndex> = GrassIndex::all(i.d, i.n)
        .into_iter()
        .filter(|z| i.contains(z).expect("shape") && z.contains(j).expect("shape"))
        .collect();
    let mut by_dim = interval;
    by_dim.sort_by_key(GrassIndex::dim);
    let mut mu: BTreeMap<GrassIndex, i64> = BTreeMap::new();
    for z in &by_dim {
        if z == j {
            mu.insert(z.clone(), 1);
            continue;
        }
        let acc: i64 = mu
            .iter()
            .filter(|(y, _)| z.contains(y).expect("shape"))
            .map(|(_, m)| m)
            .sum();
        mu.insert(z.clone(), -acc);
    }
    Ok(mu[i])
}

pub fn k_pieri(i: &GrassIndex, mode: KPieriMode) -> Result<BTreeMap<GrassIndex, BigInt>> {
    let mut out = BTreeMap::new();
    for j in GrassIndex::all(i.d, i.n) {
        if !i.contains(&j)? {
            continue;
        }
        let coeff = match mode {
            KPieriMode::LineBundle => BigInt::one(),
            KPieriMode::LineBundleInverse => BigInt::from(containment_mobius(&j, i)?),
            KPieriMode::Divisor => {
                if j == *i {
                    continue;
                }
                -BigInt::from(containment_mobius(&j, i)?)
            }
        };
        if !coeff.is_zero() {
            out.insert(j, coeff);
        }
    }
    Ok(out)
}

/// Which cohomology theory a Grassmannian product is computed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    H,
    K,
}

/// Littlewood-Richardson coefficients of `Gr(d, n)`, computed by
/// multiplying the maximal-representative classes in the complete flag
/// variety and reading coefficients back off maximal representatives.
/// In cohomology the constants are non-negative; in K-theory they follow
/// the alternating-sign pattern. Both are enforced.
pub fn lr_coefficients(
    lambda: &Partition,
    mu: &Partition,
    theory: Theory,
) -> Result<BTreeMap<Partition, BigInt>> {
    if lambda.d != mu.d || lambda.n != mu.n {
        return Err(Error::MalformedIndex(
            "partitions live in different Grassmannians".to_string(),
        ));
    }
    let (d, n) = (lambda.d, lambda.n);
    let wl = lambda.to_index().to_max_rep();
    let wm = mu.to_index().to_max_rep();
    let ctype = Composition::new(vec![d, n - d], n)?;
    let mut out = BTreeMap::new();
    match theory {
        Theory::H => {
            let prod = cup(&CohClass::schubert(&wl), &CohClass::schubert(&wm))?;
            for (x, c) in prod.terms() {
                if coset_rep(x, &ctype, CosetMode::Maximal)? != *x {
                    return Err(Error::IdentityFailed(format!(
                        "product term {x:?} is not a maximal representative"
                    )));
                }
                if c.is_negative() {
                    return Err(Error::Positivity {
                        witness: format!("LR at {x:?}"),
                        coeff: c.to_string(),
                    });
                }
                let nu = GrassIndex::from_permutation(x, d)?.to_partition();
                out.insert(nu, c.clone());
            }
        }
        Theory::K => {
            let prod = multiply(&KClass::o_class(&wl), &KClass::o_class(&wm))?;
            for (x, c) in prod.terms() {
                if coset_rep(x, &ctype, CosetMode::Maximal)? != *x {
                    return Err(Error::IdentityFailed(format!(
                        "product term {x:?} is not a maximal representative"
                    )));
                }
                crate::ktheory::check_sign_pattern(&wl, &wm, x, c)?;
                let nu = GrassIndex::from_permutation(x, d)?.to_partition();
                out.insert(nu, c.clone());
            }
        }
    }
    Ok(out)
}

/// Pullback comparison: the Chevalley product `c_1(L_{chi_d}) cup
/// [X_{maxrep(I)}]` in the complete flag variety, reindexed.
pub fn pieri_via_flag(i: &GrassIndex) -> Result<BTreeMap<GrassIndex, BigInt>> {
    let w = i.to_max_rep();
    let lam = Weight::fundamental(i.d, i.n)?;
    let ctype = i.parabolic();
    let prod = chevalley_cup(&lam, &w);
    let mut out = BTreeMap::new();
    for (x, c) in prod.terms() {
        if c.is_zero() {
            continue;
        }
        if coset_rep(x, &ctype, CosetMode::Maximal)? != *x {
            return Err(Error::IdentityFailed(format!(
                "Chevalley term {x:?} is not a maximal representative"
            )));
        }
        out.insert(GrassIndex::from_permutation(x, i.d)?, c.clone());
    }
    Ok(out)
}

/// Singularity type of the Schubert varieties of the incidence variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IncidenceKind {
    Nonsingular,
    Singular { locus: (usize, usize) },
}

/// The Schubert variety `I_{i,j}` of the incidence variety of
/// (line, hyperplane) pairs is singular exactly for `1 < j < i < n`, with
/// singular locus `I_{j-1, i+1}`.
pub fn incidence_singularity(i: usize, j: usize, n: usize) -> Result<IncidenceKind> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange(i.max(j), n));
    }
    if 1 < j && j < i && i < n {
        Ok(IncidenceKind::Singular {
            locus: (j - 1, i + 1),
        })
    } else {
        Ok(IncidenceKind::Nonsingular)
    }
}

/// Exact univariate polynomial with rational coefficients; the carrier of
/// Hilbert polynomials. Coefficients ascend by degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPoly {
    coeffs: Vec<BigRational>,
}

impl HilbertPoly {
    pub fn zero() -> Self {
        HilbertPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        HilbertPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(BigInt::from(t));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &t + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        HilbertPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        HilbertPoly::from_coeffs(self.coeffs.iter().map(|k| k * c).collect())
    }

    /// Substitution `t -> t - shift`.
    pub fn shift(&self, shift: i64) -> Self {
        // Horner in the shifted variable: p(t - s) built from the top down.
        let s = BigRational::from_integer(BigInt::from(shift));
        let mut acc = HilbertPoly::zero();
        for c in self.coeffs.iter().rev() {
            // acc = acc * (t - s) + c
            let mut next = vec![BigRational::zero(); acc.coeffs.len() + 1];
            for (k, a) in acc.coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * &s;
            }
            next[0] += c;
            acc = HilbertPoly::from_coeffs(next);
        }
        acc
    }

    /// Wire form: exact numerator/denominator strings, ascending degree.
    pub fn to_wire(&self) -> Vec<(String, String)> {
        self.coeffs
            .iter()
            .map(|c| (c.numer().to_string(), c.denom().to_string()))
            .collect()
    }
}

/// The binomial coefficient `binom(a, k)` in the polynomial convention,
/// defined for any integer `a`.
pub fn binomial_int(a: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= a - BigInt::from(t as i64);
        den *= BigInt::from((t + 1) as i64);
    }
    // binomials of integer arguments are integers; the division is exact
    &num / &den
}

/// The Hilbert-polynomial model of `K(P^n)`: classes are identified with
/// integer-valued polynomials of degree at most `n`; the basis element `j`
/// is the Hilbert polynomial `binom(t + j, j)` of the `j`-dimensional
/// linear subspace. Multiplication is not defined in the model; only
/// decomposition and the Euler characteristic are.
#[derive(Clone, Copy, Debug)]
pub struct ProjectiveKModel {
    n: usize,
}

pub fn projective_k_model(n: usize) -> ProjectiveKModel {
    ProjectiveKModel { n }
}

impl ProjectiveKModel {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `binom(t + j, j)`, the Hilbert polynomial of `[O_{P^j}]`.
    pub fn basis_hilbert(&self, j: usize) -> Result<HilbertPoly> {
        if j > self.n {
            return Err(Error::IndexOutOfRange(j, self.n));
        }
        // expand prod_{m=1}^{j} (t + m) / j!
        let mut coeffs = vec![BigRational::one()];
        for m in 1..=j {
            let mut next = vec![BigRational::zero(); coeffs.len() + 1];
            let shift = BigRational::from_integer(BigInt::from(m as i64));
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] += c * &shift;
            }
            coeffs = next;
        }
        let fact: BigInt = (1..=j as i64).map(BigInt::from).product();
        let inv = BigRational::new(BigInt::one(), fact);
        Ok(HilbertPoly::from_coeffs(
            coeffs.into_iter().map(|c| c * &inv).collect(),
        ))
    }

    /// `chi(O_{P^j}(k)) = binom(k + j, j)`, in the polynomial convention.
    pub fn euler(&self, j: usize, k: i64) -> Result<BigInt> {
        if j > self.n {
            return Err(Error::IndexOutOfRange(j, self.n));
        }
        Ok(binomial_int(&BigInt::from(k + j as i64), j))
    }

    /// Expands `p` exactly in the binomial basis: `p = sum c_j binom(t+j, j)`
    /// with integer `c_j`. Errors if the degree exceeds `n` or a step is
    /// non-integral.
    pub fn decompose(&self, p: &HilbertPoly) -> Result<Vec<BigInt>> {
        if let Some(deg) = p.degree() {
            if deg > self.n {
                return Err(Error::DegreeTooLarge(deg, self.n));
            }
        }
        let mut out = vec![BigInt::zero(); self.n + 1];
        let mut rem = p.clone();
        while let Some(d) = rem.degree() {
            // leading coefficient of binom(t+d, d) is 1/d!
            let fact: BigInt = (1..=d as i64).map(BigInt::from).product();
            let c = rem.coeffs[d].clone() * BigRational::from_integer(fact);
            if !c.is_integer() {
                return Err(Error::NonIntegralDecomposition(d));
            }
            let ci = c.to_integer();
            rem = rem.add(
                &self
                    .basis_hilbert(d)?
                    .scale(&-BigRational::from_integer(ci.clone())),
            );
            if rem.degree().map_or(false, |nd| nd >= d) {
                return Err(Error::NonIntegralDecomposition(d));
            }
            out[d] = ci;
        }
        Ok(out)
    }

    /// Reassembles a Hilbert polynomial from binomial-basis coefficients.
    pub fn compose(&self, coeffs: &[BigInt]) -> Result<HilbertPoly> {
        let mut acc = HilbertPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(
                    &self
                        .basis_hilbert(j)?
                        .scale(&BigRational::from_integer(c.clone())),
                );
            }
        }
        Ok(acc)
    }

    /// Euler characteristic of a class in the model: the value at zero.
    pub fn chi(&self, p: &HilbertPoly) -> BigInt {
        let v = p.eval_int(0);
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    /// Multiplies a class by an integer combination `sum_k a_k [O(-k)]` of
    /// line-bundle powers: twisting by `O(-k)` shifts the Hilbert
    /// polynomial by `t -> t - k`.
    pub fn twist_combination(&self, combo: &[(i64, BigInt)], p: &HilbertPoly) -> HilbertPoly {
        let mut acc = HilbertPoly::zero();
        for (k, a) in combo {
            acc = acc.add(
                &p.shift(*k)
                    .scale(&BigRational::from_integer(a.clone())),
            );
        }
        acc
    }

    /// The combination representing `[O_{P^j}] = (1 - [O(-1)])^{n-j}`.
    pub fn subspace_as_twists(&self, j: usize) -> Result<Vec<(i64, BigInt)>> {
        if j > self.n {
            return Err(Error::IndexOutOfRange(j, self.n));
        }
        let e = self.n - j;
        Ok((0..=e)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                (
                    k as i64,
                    BigInt::from(sign) * binomial_int(&BigInt::from(e as i64), k),
                )
            })
            .collect())
    }
}
