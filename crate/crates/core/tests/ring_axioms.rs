//! Ring axioms and cross-module consistency, exact, at desk scale.

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schubert_core::cohomology::{cup, CohClass};
use schubert_core::ktheory::{chi, convert, multiply, KBasis, KClass};
use schubert_core::oracle::mobius_recursive;
use schubert_core::weyl::Permutation;

fn random_coh(n: usize, rng: &mut ChaCha8Rng) -> CohClass {
    let mut c = CohClass::zero(n);
    let perms = Permutation::all(n);
    for _ in 0..3 {
        let w = perms.choose(rng).unwrap().clone();
        c.add_term(w, BigInt::from(rng.gen_range(-4i64..=4)));
    }
    c
}

fn random_k(n: usize, rng: &mut ChaCha8Rng) -> KClass {
    let mut c = KClass::zero(n, KBasis::O);
    let perms = Permutation::all(n);
    for _ in 0..3 {
        let w = perms.choose(rng).unwrap().clone();
        c.add_term(w, BigInt::from(rng.gen_range(-4i64..=4)));
    }
    c
}

#[test]
fn cohomology_is_commutative_and_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=4 {
        for _ in 0..8 {
            let a = random_coh(n, &mut rng);
            let b = random_coh(n, &mut rng);
            let c = random_coh(n, &mut rng);
            assert_eq!(cup(&a, &b).unwrap(), cup(&b, &a).unwrap());
            let ab_c = cup(&cup(&a, &b).unwrap(), &c).unwrap();
            let a_bc = cup(&a, &cup(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            let unit = CohClass::unit(n);
            assert_eq!(cup(&unit, &a).unwrap(), a);
        }
    }
}

#[test]
fn ktheory_is_commutative_and_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=4 {
        for _ in 0..6 {
            let a = random_k(n, &mut rng);
            let b = random_k(n, &mut rng);
            let c = random_k(n, &mut rng);
            assert_eq!(multiply(&a, &b).unwrap(), multiply(&b, &a).unwrap());
            let ab_c = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            let unit = KClass::unit(n);
            assert_eq!(multiply(&unit, &a).unwrap(), a);
        }
    }
}

#[test]
fn chi_is_additive_and_multiplicative_with_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..8 {
        let a = random_k(3, &mut rng);
        let b = random_k(3, &mut rng);
        assert_eq!(chi(&a.add(&b).unwrap()), chi(&a) + chi(&b));
    }
    assert_eq!(chi(&KClass::unit(4)), BigInt::one());
}

#[test]
fn basis_change_matrices_are_mutually_inverse_and_moebius() {
    // Entries of the I->O matrix are the recursive Moebius oracle values;
    // composing the two conversions is the identity. Full scan at n <= 4.
    for n in 2..=4 {
        let perms = Permutation::all(n);
        for w in &perms {
            let io = convert(&KClass::i_class(w), KBasis::O);
            for v in &perms {
                let entry = io.coeff(v);
                let mu = if Permutation::bruhat_leq(v, w).unwrap() {
                    BigInt::from(mobius_recursive(v, w).unwrap())
                } else {
                    BigInt::from(0)
                };
                assert_eq!(entry, mu, "matrix entry ({v:?}, {w:?})");
            }
            let round = convert(&io, KBasis::I);
            assert_eq!(round, KClass::i_class(w));
            let other = convert(&convert(&KClass::o_class(w), KBasis::I), KBasis::O);
            assert_eq!(other, KClass::o_class(w));
        }
    }
}

#[test]
fn bruhat_prefix_dominance_projects_to_grassmannians() {
    // v <= w forces sorted-prefix dominance at every d: the Grassmannian
    // projections are order-preserving
    for n in 2..=5 {
        let perms = Permutation::all(n);
        for v in &perms {
            for w in &perms {
                if !Permutation::bruhat_leq(v, w).unwrap() {
                    continue;
                }
                for d in 1..n {
                    let mut vp: Vec<usize> = v.images()[..d].to_vec();
                    let mut wp: Vec<usize> = w.images()[..d].to_vec();
                    vp.sort_unstable();
                    wp.sort_unstable();
                    assert!(
                        vp.iter().zip(&wp).all(|(a, b)| a <= b),
                        "prefix dominance fails at v={v:?} w={w:?} d={d}"
                    );
                }
            }
        }
    }
}
