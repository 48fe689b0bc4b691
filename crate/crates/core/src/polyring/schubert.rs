//! Schubert and Grothendieck polynomials and basis expansion.
//!
//! Both families are pinned by the top seed `S_{w_o} = G_{w_o} = x_1^{n-1}
//! x_2^{n-2} ... x_{n-1}` and the descending recursions `S_{w s_i} = del_i
//! S_w`, `G_{w s_i} = pi_i G_w` along `l(w s_i) = l(w) - 1`.
//!
//! Construction walks the other way: a permutation whose Lehmer code is
//! weakly decreasing (a dominant permutation) has `S_w = G_w = x^{code}`,
//! and a strict ascent in the code can always be traded for a length-raising
//! right multiplication by `s_i`, so every `S_w` is a short chain of
//! divided differences below a dominant monomial. The chain stays inside the
//! variables supporting the code, which keeps large-window permutations
//! cheap and makes stability under `S_n -> S_{n+1}` a non-issue: the memo
//! key is the trimmed code itself.

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::weyl::Permutation;
use num_bigint::BigInt;
use num_traits::One;
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// Which polynomial family a product is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyBasis {
    Schubert,
    Grothendieck,
}

type Memo = Lazy<RwLock<HashMap<Vec<u32>, Arc<Poly>>>>;
static SCHUBERT: Memo = Lazy::new(|| RwLock::new(HashMap::new()));
static GROTHENDIECK: Memo = Lazy::new(|| RwLock::new(HashMap::new()));

fn trim(mut code: Vec<u32>) -> Vec<u32> {
    while code.last() == Some(&0) {
        code.pop();
    }
    code
}

fn is_weakly_decreasing(code: &[u32]) -> bool {
    code.windows(2).all(|p| p[0] >= p[1])
}

/// First strict ascent of the code, with the ascended code: trading
/// `(c_i, c_{i+1})` with `c_i < c_{i+1}` for `(c_{i+1}+1, c_i)` is the code
/// of `w s_i`, one step longer.
fn ascend(code: &[u32]) -> Option<(usize, Vec<u32>)> {
    for k in 0..code.len().saturating_sub(1) {
        if code[k] < code[k + 1] {
            let mut up = code.to_vec();
            up[k] = code[k + 1] + 1;
            up[k + 1] = code[k];
            return Some((k + 1, up));
        }
    }
    None
}

fn by_code(code: Vec<u32>, memo: &Memo, descend: fn(&Poly, usize) -> Poly) -> Arc<Poly> {
    if let Some(p) = memo.read().expect("memo poisoned").get(&code) {
        return Arc::clone(p);
    }
    let poly = match ascend(&code) {
        None => {
            debug_assert!(is_weakly_decreasing(&code));
            Poly::monomial(Monomial::new(code.clone()), BigInt::one())
        }
        Some((i, parent)) => descend(&by_code(trim(parent), memo, descend), i),
    };
    let arc = Arc::new(poly);
    memo.write()
        .expect("memo poisoned")
        .entry(code)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

/// The Schubert polynomial `S_w`; homogeneous of degree `l(w)`, independent
/// of the window `w` is presented in.
pub fn schubert_poly(w: &Permutation) -> Arc<Poly> {
    by_code(trim(w.code()), &SCHUBERT, |f, i| f.divided_difference(i))
}

/// The Grothendieck polynomial `G_w`; its bottom homogeneous layer is `S_w`.
pub fn grothendieck_poly(w: &Permutation) -> Arc<Poly> {
    by_code(trim(w.code()), &GROTHENDIECK, |f, i| {
        f.isobaric_difference(i)
    })
}

fn staircase(ambient: usize) -> Poly {
    let exps: Vec<u32> = (1..ambient).rev().map(|k| k as u32).collect();
    Poly::monomial(Monomial::new(exps), BigInt::one())
}

fn from_top(w: &Permutation, ambient: usize, descend: fn(&Poly, usize) -> Poly) -> Result<Poly> {
    let embedded = w.embed(ambient)?;
    let chain = embedded
        .inverse()
        .compose(&Permutation::longest_element(ambient))?;
    let mut f = staircase(ambient);
    // w_o = w s_{a_1} ... s_{a_m} for a reduced word of w^{-1} w_o; walking
    // the chain back down applies the word innermost-last letter first.
    for &a in chain.reduced_word().iter().rev() {
        f = descend(&f, a);
    }
    Ok(f)
}

/// `S_w` computed by the defining descent from the top seed of `S_ambient`.
/// Independent route used to pin window stability and chain independence.
pub fn schubert_poly_from_top(w: &Permutation, ambient: usize) -> Result<Poly> {
    from_top(w, ambient, |f, i| f.divided_difference(i))
}

/// `G_w` computed by the defining descent from the top seed.
pub fn grothendieck_poly_from_top(w: &Permutation, ambient: usize) -> Result<Poly> {
    from_top(w, ambient, |f, i| f.isobaric_difference(i))
}

/// Applies the composite divided difference along a word, last letter
/// innermost: `apply(f, (a_1, ..., a_m)) = del_{a_1}(... del_{a_m}(f))`.
/// For homogeneous `f` of degree `l(w)` the constant term of the composite
/// along a reduced word of `w` is the Schubert coefficient of `f` at `w`.
pub fn apply_divided_word(f: &Poly, word: &[usize]) -> Poly {
    let mut g = f.clone();
    for &a in word.iter().rev() {
        g = g.divided_difference(a);
    }
    g
}

fn expand_homogeneous_layer(layer: &Poly, out: &mut BTreeMap<Permutation, BigInt>) {
    // Greedy peeling of the code-leading (lex-smallest) monomial: S_w has
    // unit coefficient there and every other monomial of S_w is lex-larger,
    // so the minimum is strictly increasing and the loop terminates.
    let mut rem = layer.clone();
    while let Some((m, c)) = rem.lex_min() {
        let (m, c) = (m.clone(), c.clone());
        let w = Permutation::from_code(m.exps());
        let sw = schubert_poly(&w);
        debug_assert_eq!(sw.lex_min().map(|(lm, _)| lm), Some(&m));
        rem.add_scaled(&sw, &-&c);
        let entry = out.entry(w.clone()).or_default();
        *entry += &c;
        if num_traits::Zero::is_zero(entry) {
            out.remove(&w);
        }
    }
}

/// Expands `f` in the Schubert basis. Always finite: layers are peeled
/// independently and each subtraction raises the lex-minimal monomial.
pub fn expand_schubert(f: &Poly) -> BTreeMap<Permutation, BigInt> {
    let mut out = BTreeMap::new();
    for layer in f.homogeneous_layers().values() {
        expand_homogeneous_layer(layer, &mut out);
    }
    out
}

/// Expands `f` in the Grothendieck basis, iterating from the bottom degree:
/// the lowest homogeneous layer is a Schubert-basis combination of the same
/// degree, and subtracting the matching `sum c_w G_w` strictly raises the
/// bottom. The total-degree cap converts a convention violation (which would
/// loop forever) into a diagnosable error; nothing partial is returned.
pub fn expand_grothendieck(f: &Poly, degree_cap: u32) -> Result<BTreeMap<Permutation, BigInt>> {
    let mut out = BTreeMap::new();
    let mut rem = f.clone();
    while !rem.is_zero() {
        if rem.min_degree() > degree_cap {
            return Err(Error::DegreeCapExceeded(degree_cap));
        }
        let mut layer_coeffs = BTreeMap::new();
        expand_homogeneous_layer(&rem.bottom_layer(), &mut layer_coeffs);
        for (w, c) in layer_coeffs {
            rem.add_scaled(&grothendieck_poly(&w), &-&c);
            out.insert(w, c);
        }
    }
    Ok(out)
}

/// Default expansion cap for classes presented in window `n`.
pub fn default_degree_cap(window: usize) -> u32 {
    (2 * window * window) as u32
}

/// Expands the product of two basis polynomials over a common ambient
/// window grown adaptively: the expansion is computed at the smallest
/// ambient holding both factors and re-checked one window higher; the two
/// must agree (the polynomials, hence the constants, are stable).
pub fn stable_product_expand(
    u: &Permutation,
    v: &Permutation,
    basis: PolyBasis,
) -> Result<BTreeMap<Permutation, BigInt>> {
    let ambient = u.natural_window().max(v.natural_window()).max(1);
    let expand_at = |m: usize| -> Result<BTreeMap<Permutation, BigInt>> {
        let (ue, ve) = (u.embed(m)?, v.embed(m)?);
        match basis {
            PolyBasis::Schubert => {
                let prod = schubert_poly(&ue).mul(&schubert_poly(&ve));
                Ok(expand_schubert(&prod))
            }
            PolyBasis::Grothendieck => {
                let prod = grothendieck_poly(&ue).mul(&grothendieck_poly(&ve));
                let cap = default_degree_cap(2 * m);
                expand_grothendieck(&prod, cap)
            }
        }
    };
    let base = expand_at(ambient)?;
    let grown = expand_at(ambient + 1)?;
    if base != grown {
        return Err(Error::IdentityFailed(format!(
            "stable expansion changed between ambient {ambient} and {}",
            ambient + 1
        )));
    }
    Ok(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn schubert_base_cases() {
        assert_eq!(*schubert_poly(&Permutation::identity(3)), Poly::one());
        // S_{w_o} = x1^{n-1} x2^{n-2} ... x_{n-1}
        let wo = Permutation::longest_element(4);
        assert_eq!(
            *schubert_poly(&wo),
            Poly::monomial(Monomial::new(vec![3, 2, 1]), BigInt::one())
        );
        assert_eq!(*schubert_poly(&p(&[2, 1, 3])), x(1));
        assert_eq!(*schubert_poly(&p(&[1, 3, 2])), x(1).add(&x(2)));
        assert_eq!(*schubert_poly(&p(&[3, 1, 2])), x(1).mul(&x(1)));
    }

    #[test]
    fn grothendieck_base_cases() {
        assert_eq!(*grothendieck_poly(&Permutation::identity(3)), Poly::one());
        // G_{s_2} = x1 + x2 - x1 x2
        let g = grothendieck_poly(&p(&[1, 3, 2]));
        assert_eq!(*g, x(1).add(&x(2)).sub(&x(1).mul(&x(2))));
        // G_{w_o} is the plain staircase
        let wo = Permutation::longest_element(3);
        assert_eq!(
            *grothendieck_poly(&wo),
            Poly::monomial(Monomial::new(vec![2, 1]), BigInt::one())
        );
    }

    #[test]
    fn descent_recursion_holds() {
        // S_{w s_i} = del_i S_w and G_{w s_i} = pi_i G_w on all of S_4
        for w in Permutation::all(4) {
            for i in 1..4 {
                if !w.has_ascent(i) {
                    let child = w.times_simple_right(i);
                    assert_eq!(
                        *schubert_poly(&child),
                        schubert_poly(&w).divided_difference(i)
                    );
                    assert_eq!(
                        *grothendieck_poly(&child),
                        grothendieck_poly(&w).isobaric_difference(i)
                    );
                }
            }
        }
    }

    #[test]
    fn schubert_is_homogeneous_of_length_degree() {
        for w in Permutation::all(4) {
            let s = schubert_poly(&w);
            assert!(s.is_homogeneous());
            assert_eq!(s.total_degree() as usize, w.length());
        }
    }

    #[test]
    fn bottom_layer_of_grothendieck_is_schubert() {
        for w in Permutation::all(4) {
            assert_eq!(grothendieck_poly(&w).bottom_layer(), *schubert_poly(&w));
        }
    }

    #[test]
    fn code_leading_term_is_lex_min_with_unit_coefficient() {
        for w in Permutation::all(4) {
            let s = schubert_poly(&w);
            let (m, c) = s.lex_min().unwrap();
            assert_eq!(m.exps(), &trim(w.code())[..]);
            assert!(c.is_one());
        }
    }

    #[test]
    fn expansion_delta() {
        for w in Permutation::all(4) {
            let exp = expand_schubert(&schubert_poly(&w));
            assert_eq!(exp.len(), 1);
            let (v, c) = exp.into_iter().next().unwrap();
            assert_eq!(v, w.embed(w.natural_window()).unwrap());
            assert!(c.is_one());
            let gexp = expand_grothendieck(&grothendieck_poly(&w), 32).unwrap();
            assert_eq!(gexp.len(), 1);
        }
    }

    #[test]
    fn expansion_examples() {
        // x1^2 = S_{(3,1,2)}
        let e = expand_schubert(&x(1).mul(&x(1)));
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(&p(&[3, 1, 2])), Some(&BigInt::one()));
        // x1 + x2 = S_{(1,3,2)}
        let e = expand_schubert(&x(1).add(&x(2)));
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(&p(&[1, 3, 2])), Some(&BigInt::one()));
        // G-expansion of x1^2 also has no tail
        let e = expand_grothendieck(&x(1).mul(&x(1)), 32).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(&p(&[3, 1, 2])), Some(&BigInt::one()));
    }

    #[test]
    fn grothendieck_square_leaves_window_two() {
        // G_{s_1}^2 = x1^2 = G_{(3,1,2)}: the expansion lives outside S_2
        let s1 = p(&[2, 1]);
        let e = stable_product_expand(&s1, &s1, PolyBasis::Grothendieck).unwrap();
        assert_eq!(e.len(), 1);
        let (w, _) = e.into_iter().next().unwrap();
        assert_eq!(w, p(&[3, 1, 2]));
        assert!(w.natural_window() > 2);
    }

    #[test]
    fn stable_product_unit() {
        let id = Permutation::identity(3);
        let v = p(&[2, 3, 1]);
        let e = stable_product_expand(&id, &v, PolyBasis::Schubert).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(&v), Some(&BigInt::one()));
    }

    #[test]
    fn stable_product_s1_s2() {
        // Monk: S_{s_1} S_{s_2} = x_1^2 + x_1 x_2 = S_{(3,1,2)} + S_{(2,3,1)}
        let s1 = p(&[2, 1, 3]);
        let s2 = p(&[1, 3, 2]);
        let e = stable_product_expand(&s1, &s2, PolyBasis::Schubert).unwrap();
        let expected: BTreeMap<Permutation, BigInt> = [
            (p(&[2, 3, 1]), BigInt::one()),
            (p(&[3, 1, 2]), BigInt::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(e, expected);
        // and S_{s_1}^2 = S_{(3,1,2)} alone: x_1^2 is itself a basis element
        let sq = stable_product_expand(&s1, &s1, PolyBasis::Schubert).unwrap();
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.get(&p(&[3, 1, 2])), Some(&BigInt::one()));
        // G-basis bottom-degree layer agrees with the S-basis result
        let g = stable_product_expand(&s1, &s2, PolyBasis::Grothendieck).unwrap();
        for (w, c) in &e {
            assert_eq!(g.get(w), Some(c));
        }
    }

    #[test]
    fn from_top_agrees_with_code_construction() {
        for w in Permutation::all(4) {
            let direct = schubert_poly(&w);
            for ambient in 4..=5 {
                assert_eq!(schubert_poly_from_top(&w, ambient).unwrap(), *direct);
                assert_eq!(
                    grothendieck_poly_from_top(&w, ambient).unwrap(),
                    *grothendieck_poly(&w)
                );
            }
        }
    }

    #[test]
    fn word_extraction_matches_expansion() {
        // constant term of the composite divided difference along a reduced
        // word equals the expansion coefficient
        let f = schubert_poly(&p(&[3, 1, 2]))
            .scale(&BigInt::from(2))
            .add(&schubert_poly(&p(&[2, 3, 1])).scale(&BigInt::from(-5)));
        for w in Permutation::all(3) {
            if w.length() != 2 {
                continue;
            }
            let got = apply_divided_word(&f, &w.reduced_word()).constant_term();
            let exp = expand_schubert(&f);
            let want = exp
                .get(&w.embed(w.natural_window()).unwrap())
                .cloned()
                .unwrap_or_else(BigInt::zero);
            assert_eq!(got, want, "at {w:?}");
        }
    }

    #[test]
    fn degree_cap_is_a_hard_error() {
        let f = grothendieck_poly(&p(&[1, 3, 2]));
        assert_eq!(
            expand_grothendieck(&f.mul(&f), 1).unwrap_err(),
            Error::DegreeCapExceeded(1)
        );
    }

    #[test]
    fn operator_relations_hold_on_probes() {
        // del_i^2 = 0, braid relations, pi idempotence; deterministic probes
        let probes = [
            x(1).mul(&x(1)).mul(&x(2)).add(&x(3).mul(&x(4))),
            x(2).mul(&x(3)).sub(&x(1).scale(&BigInt::from(7))),
            schubert_poly(&p(&[3, 1, 4, 2])).as_ref().clone(),
        ];
        for f in &probes {
            for i in 1..4 {
                let d = f.divided_difference(i);
                assert!(d.divided_difference(i).is_zero(), "del^2 != 0");
                let pi = f.isobaric_difference(i);
                assert_eq!(pi.isobaric_difference(i), pi, "pi not idempotent");
            }
            for i in 1..3 {
                let lhs = f
                    .divided_difference(i)
                    .divided_difference(i + 1)
                    .divided_difference(i);
                let rhs = f
                    .divided_difference(i + 1)
                    .divided_difference(i)
                    .divided_difference(i + 1);
                assert_eq!(lhs, rhs, "del braid failed");
                let lhs = f
                    .isobaric_difference(i)
                    .isobaric_difference(i + 1)
                    .isobaric_difference(i);
                let rhs = f
                    .isobaric_difference(i + 1)
                    .isobaric_difference(i)
                    .isobaric_difference(i + 1);
                assert_eq!(lhs, rhs, "pi braid failed");
            }
            // commuting far-apart operators
            let lhs = f.divided_difference(1).divided_difference(3);
            let rhs = f.divided_difference(3).divided_difference(1);
            assert_eq!(lhs, rhs);
        }
    }
}
