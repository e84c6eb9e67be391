//! Bundled constraint systems for the two worked middle-group
//! resolutions: the cyclic extension grid whose unique solution is
//! Z_{n^2}, and the 4x4 commuting grid whose unique solution is
//! Z + Z_n. Both feed the `grid` solver and the CLI case runner.

use std::collections::BTreeMap;

use crate::grid::{DiagramSpec, Edge};
use crate::group::FgAbelianGroup;
use crate::IntMatrix;

fn known(g: FgAbelianGroup) -> Option<FgAbelianGroup> {
    Some(g)
}

fn edge(from: &str, to: &str, matrix: Option<IntMatrix>) -> Edge {
    Edge {
        from: from.into(),
        to: to.into(),
        matrix,
    }
}

fn scalar(c: i64) -> Option<IntMatrix> {
    Some(IntMatrix::from_i64_rows(&[&[c]]))
}

/// Constraint system for the degree-one endomorphism-group middle: the
/// unknown is cyclic (a quotient of Z along an exact row whose first map
/// is not determined) and sits in 0 -> Z_n -> X -> Z_n -> 0.
pub fn cyclic_middle(n: u64) -> DiagramSpec {
    let ni = n as i64;
    let mut nodes: BTreeMap<String, Option<FgAbelianGroup>> = BTreeMap::new();
    nodes.insert("0".into(), known(FgAbelianGroup::trivial()));
    nodes.insert("row_a".into(), known(FgAbelianGroup::free(1)));
    nodes.insert("row_b".into(), known(FgAbelianGroup::free(1)));
    nodes.insert("sub".into(), known(FgAbelianGroup::cyclic(ni)));
    nodes.insert("quot".into(), known(FgAbelianGroup::cyclic(ni)));
    nodes.insert("X".into(), None);

    let mut spec = DiagramSpec::new(nodes);
    spec.edges = vec![
        edge("row_b", "X", None),
        edge("sub", "X", None),
        edge("X", "quot", None),
    ];
    spec.exact_paths = vec![
        // row with an undetermined first map: only surjectivity onto X
        vec!["row_a".into(), "row_b".into(), "X".into(), "0".into()],
        vec![
            "0".into(),
            "sub".into(),
            "X".into(),
            "quot".into(),
            "0".into(),
        ],
    ];
    spec
}

/// The full 4x4 commuting grid with exact rows and columns around the
/// unknown: rows (0,Z_n,Z_n), (Z,X,Z_n), (Z,Z,0), (Z_n,Z_n,0) with the
/// marked multiplication-by-n in the first column.
pub fn rank_one_middle(n: u64) -> DiagramSpec {
    let ni = n as i64;
    let zn = || FgAbelianGroup::cyclic(ni);
    let z = || FgAbelianGroup::free(1);

    let mut nodes: BTreeMap<String, Option<FgAbelianGroup>> = BTreeMap::new();
    nodes.insert("0".into(), known(FgAbelianGroup::trivial()));
    nodes.insert("a2".into(), known(zn()));
    nodes.insert("a3".into(), known(zn()));
    nodes.insert("b1".into(), known(z()));
    nodes.insert("X".into(), None);
    nodes.insert("b3".into(), known(zn()));
    nodes.insert("c1".into(), known(z()));
    nodes.insert("c2".into(), known(z()));
    nodes.insert("d1".into(), known(zn()));
    nodes.insert("d2".into(), known(zn()));

    let mut spec = DiagramSpec::new(nodes);
    spec.edges = vec![
        // known maps of the grid
        edge("a2", "a3", scalar(1)),
        edge("a3", "b3", scalar(1)),
        edge("b1", "c1", scalar(ni)),
        edge("c1", "c2", scalar(1)),
        edge("c1", "d1", scalar(1)),
        edge("c2", "d2", scalar(1)),
        edge("d1", "d2", scalar(1)),
        // existential maps around the unknown
        edge("b1", "X", None),
        edge("X", "b3", None),
        edge("a2", "X", None),
        edge("X", "c2", None),
    ];
    spec.exact_paths = vec![
        // rows
        vec!["0".into(), "0".into(), "a2".into(), "a3".into(), "0".into()],
        vec!["0".into(), "b1".into(), "X".into(), "b3".into(), "0".into()],
        vec!["0".into(), "c1".into(), "c2".into(), "0".into(), "0".into()],
        vec!["0".into(), "d1".into(), "d2".into(), "0".into(), "0".into()],
        // columns
        vec![
            "0".into(),
            "0".into(),
            "b1".into(),
            "c1".into(),
            "d1".into(),
            "0".into(),
        ],
        vec![
            "0".into(),
            "a2".into(),
            "X".into(),
            "c2".into(),
            "d2".into(),
            "0".into(),
        ],
        vec![
            "0".into(),
            "a3".into(),
            "b3".into(),
            "0".into(),
            "0".into(),
            "0".into(),
        ],
    ];
    spec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{normalize, solve, Constraint};
    use crate::Int;

    #[test]
    fn cyclic_middle_resolves_to_n_squared() {
        for n in [2u64, 3, 5] {
            let outcome = solve(&cyclic_middle(n)).unwrap();
            let unique = outcome.unique_class().expect("unique class");
            assert!(
                unique
                    .group
                    .is_isomorphic(&FgAbelianGroup::cyclic((n * n) as i64)),
                "n = {n}: got {}",
                unique.group
            );
        }
    }

    #[test]
    fn cyclic_middle_normalization_shape() {
        let normalized = normalize(&cyclic_middle(3)).unwrap();
        assert!(normalized.unreduced.is_empty());
        let mut quotient_of_z = 0;
        let mut ses = 0;
        for c in &normalized.constraints {
            match c {
                Constraint::QuotientOf { of } => {
                    assert!(of.is_isomorphic(&FgAbelianGroup::free(1)));
                    quotient_of_z += 1;
                }
                Constraint::ShortExact { sub, quotient } => {
                    assert!(sub.is_isomorphic(&FgAbelianGroup::cyclic(3)));
                    assert!(quotient.is_isomorphic(&FgAbelianGroup::cyclic(3)));
                    ses += 1;
                }
            }
        }
        assert_eq!((quotient_of_z, ses), (1, 1));
    }

    #[test]
    fn rank_one_middle_resolves_to_z_plus_zn() {
        for n in [2u64, 3, 5] {
            let outcome = solve(&rank_one_middle(n)).unwrap();
            let unique = outcome.unique_class().expect("unique class");
            assert!(
                unique
                    .group
                    .is_isomorphic(&FgAbelianGroup::of(1, &[n as i64])),
                "n = {n}: got {}",
                unique.group
            );
            for w in &unique.witnesses {
                assert!(w.is_exact());
            }
        }
    }

    #[test]
    fn rank_one_normalization_reduces_both_paths_through_x() {
        let normalized = normalize(&rank_one_middle(5)).unwrap();
        assert!(normalized.unreduced.is_empty());
        let ses: Vec<_> = normalized
            .constraints
            .iter()
            .filter_map(|c| match c {
                Constraint::ShortExact { sub, quotient } => Some((sub, quotient)),
                _ => None,
            })
            .collect();
        assert_eq!(ses.len(), 2);
        // row: 0 -> Z -> X -> Z_n -> 0, column: 0 -> Z_n -> X -> Z -> 0
        let keys: Vec<_> = ses
            .iter()
            .map(|(s, q)| (s.canonical_key(), q.canonical_key()))
            .collect();
        assert!(keys.contains(&((1, vec![]), (0, vec![Int::from(5)]))));
        assert!(keys.contains(&((0, vec![Int::from(5)]), (1, vec![]))));
    }
}
