//! The sorted-prefix Bruhat comparison against the subword
//! characterization, exhaustively through S_5.

use schubert_core::weyl::Permutation;
use std::collections::BTreeSet;

#[test]
fn sorted_prefix_criterion_matches_subword_property_through_s5() {
    for n in 2..=5 {
        for w in Permutation::all(n) {
            let word = w.reduced_word();
            let mut reachable: BTreeSet<Permutation> = BTreeSet::new();
            for mask in 0u32..(1 << word.len()) {
                let mut acc = Permutation::identity(n);
                for (k, &a) in word.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        acc = acc.times_simple_right(a);
                    }
                }
                reachable.insert(acc);
            }
            for v in Permutation::all(n) {
                assert_eq!(
                    reachable.contains(&v),
                    Permutation::bruhat_leq(&v, &w).unwrap(),
                    "mismatch at n={n} v={v:?} w={w:?}"
                );
            }
        }
    }
}

#[test]
fn core_types_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<Permutation>();
    check::<schubert_core::weyl::Weight>();
    check::<schubert_core::weyl::BruhatPoset>();
    check::<schubert_core::polyring::Poly>();
    check::<schubert_core::cohomology::CohClass>();
    check::<schubert_core::ktheory::KClass>();
    check::<schubert_core::grassmann::GrassIndex>();
    check::<schubert_core::grassmann::HilbertPoly>();
}
