//! Pairwise baseline: test every unordered pair.
//!
//! Used as the independent oracle for the pattern table and as the benchmark
//! comparator. Nothing here touches [`crate::zeta`].

use rayon::prelude::*;

use crate::error::BaselineError;
use crate::pauli::{anticommutes, symplectic_anticommutes, to_symplectic, SparsePauliString};

/// Default `m` limit for [`list_edges`].
pub const DEFAULT_EDGE_LIMIT: usize = 2000;

/// Pair count and the number of pair tests performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairwiseResult {
    pub total_anti_pairs: u64,
    pub pair_tests: u64,
}

/// Exact number of anticommuting unordered pairs, by conflict-parity merges.
pub fn pairwise_count(strings: &[SparsePauliString]) -> u64 {
    pairwise_count_instrumented(strings).total_anti_pairs
}

/// [`pairwise_count`] with the pair-test counter. Rows are split across the
/// rayon pool; the sums are order-independent.
pub fn pairwise_count_instrumented(strings: &[SparsePauliString]) -> PairwiseResult {
    let (total_anti_pairs, pair_tests) = (0..strings.len())
        .into_par_iter()
        .map(|i| {
            let p = &strings[i];
            let rest = &strings[i + 1..];
            let anti = rest.iter().filter(|q| anticommutes(p, q)).count() as u64;
            (anti, rest.len() as u64)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    PairwiseResult {
        total_anti_pairs,
        pair_tests,
    }
}

/// Same count through the binary symplectic form.
pub fn pairwise_count_symplectic(strings: &[SparsePauliString]) -> u64 {
    let encoded: Vec<_> = strings.iter().map(to_symplectic).collect();
    (0..encoded.len())
        .into_par_iter()
        .map(|i| {
            encoded[i + 1..]
                .iter()
                .filter(|b| symplectic_anticommutes(&encoded[i], b))
                .count() as u64
        })
        .sum()
}

/// First anticommuting pair in lexicographic `(i, j)` order.
pub fn pairwise_witness(strings: &[SparsePauliString]) -> Option<(usize, usize)> {
    (0..strings.len()).find_map(|i| {
        (i + 1..strings.len())
            .find(|&j| anticommutes(&strings[i], &strings[j]))
            .map(|j| (i, j))
    })
}

/// Every anticommuting pair in lexicographic order. Debugging aid for small inputs.
pub fn list_edges(
    strings: &[SparsePauliString],
    max_m: usize,
) -> Result<Vec<(usize, usize)>, BaselineError> {
    if strings.len() > max_m {
        return Err(BaselineError::TooLarge {
            m: strings.len(),
            max_m,
        });
    }
    let mut edges = Vec::new();
    for i in 0..strings.len() {
        for j in i + 1..strings.len() {
            if anticommutes(&strings[i], &strings[j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliLetter::{self, *};

    fn s(raw: &[(i64, PauliLetter)]) -> SparsePauliString {
        SparsePauliString::normalize(raw.iter().copied()).unwrap()
    }

    fn worked() -> Vec<SparsePauliString> {
        vec![s(&[(0, X), (1, Y)]), s(&[(0, Y), (1, Z)]), s(&[(0, Y)])]
    }

    fn xyz() -> Vec<SparsePauliString> {
        vec![s(&[(0, X)]), s(&[(0, Y)]), s(&[(0, Z)])]
    }

    #[test]
    fn counts() {
        assert_eq!(pairwise_count(&worked()), 1);
        assert_eq!(pairwise_count(&vec![s(&[(0, X), (2, Z)]); 5]), 0);
        assert_eq!(pairwise_count(&xyz()), 3);
        assert_eq!(pairwise_count_symplectic(&xyz()), 3);
        assert_eq!(pairwise_count(&[]), 0);
    }

    #[test]
    fn pair_tests_counter() {
        let r = pairwise_count_instrumented(&vec![SparsePauliString::identity(); 10]);
        assert_eq!(r.pair_tests, 45);
        assert_eq!(r.total_anti_pairs, 0);
    }

    #[test]
    fn witnesses() {
        assert_eq!(pairwise_witness(&worked()), Some((0, 2)));
        assert_eq!(pairwise_witness(&[s(&[(0, X), (1, X)]), s(&[(0, Z), (1, Z)])]), None);
        assert_eq!(pairwise_witness(&[s(&[(0, X)]), s(&[(0, Z)])]), Some((0, 1)));
    }

    #[test]
    fn edges() {
        assert_eq!(list_edges(&worked(), DEFAULT_EDGE_LIMIT).unwrap(), vec![(0, 2)]);
        assert!(list_edges(&vec![s(&[(1, Z)]); 4], DEFAULT_EDGE_LIMIT).unwrap().is_empty());
        assert_eq!(
            list_edges(&xyz(), DEFAULT_EDGE_LIMIT).unwrap(),
            vec![(0, 1), (0, 2), (1, 2)]
        );
        assert_eq!(
            list_edges(&xyz(), 2),
            Err(BaselineError::TooLarge { m: 3, max_m: 2 })
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn string() -> impl Strategy<Value = SparsePauliString> {
            let letter = prop_oneof![Just(X), Just(Y), Just(Z)];
            proptest::collection::btree_map(0u32..10, letter, 0..=6)
                .prop_map(|m| SparsePauliString::from_sorted(m.into_iter().collect()).unwrap())
        }

        proptest! {
            #[test]
            fn routes_agree(strings in proptest::collection::vec(string(), 0..50)) {
                let merge = pairwise_count(&strings);
                prop_assert_eq!(merge, pairwise_count_symplectic(&strings));
                let edges = list_edges(&strings, DEFAULT_EDGE_LIMIT).unwrap();
                prop_assert_eq!(merge, edges.len() as u64);
                prop_assert_eq!(pairwise_witness(&strings), edges.first().copied());
            }
        }
    }
}
