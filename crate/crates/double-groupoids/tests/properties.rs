//! Property tests: id-relabelling invariance, arbitrary subset flags,
//! single-entry table mutations, and document round trips over the
//! fixture pool.

use std::collections::BTreeSet;

use double_groupoids::{
    check_subgroupoid, components, fixtures, parse, serialize, transitivity_flags,
    validate_groupoid, ArrowId, GroupoidError, StructureDocument,
};

use proptest::prelude::*;

fn prefix_strategy() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{0,6}\\.".prop_map(|s| s)
}

proptest! {
    /// Relabelling every id with a prefix preserves validity, component
    /// count and the transitivity flags.
    #[test]
    fn relabelling_preserves_structure(prefix in prefix_strategy(), pick in 0usize..4) {
        let g = match pick {
            0 => fixtures::cyclic(4),
            1 => fixtures::symmetric3(),
            2 => fixtures::interval(),
            _ => fixtures::disjoint_union(&fixtures::cyclic(2), &fixtures::interval()).unwrap(),
        };
        let h = fixtures::prefixed(&g, &prefix);
        prop_assert_eq!(h.object_count(), g.object_count());
        prop_assert_eq!(h.arrow_count(), g.arrow_count());
        prop_assert_eq!(components(&h).len(), components(&g).len());
        prop_assert_eq!(transitivity_flags(&h), transitivity_flags(&g));
    }

    /// check_subgroupoid never panics on arbitrary arrow subsets, its
    /// flags are internally consistent, and wide normality implies the
    /// conjugation condition.
    #[test]
    fn subset_flags_are_consistent(mask in 0u32..64) {
        let g = fixtures::symmetric3();
        let arrows: BTreeSet<ArrowId> = g
            .arrow_ids()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect();
        let objects: BTreeSet<_> = g.objects().iter().cloned().collect();
        let w = check_subgroupoid(&g, &objects, &arrows).unwrap();
        if !w.is_subgroupoid {
            prop_assert!(!w.is_normal && !w.is_non_wide_normal);
            prop_assert!(!w.failures.is_empty());
        }
        if w.is_normal {
            prop_assert!(w.is_subgroupoid && w.is_wide);
            prop_assert!(w.is_non_wide_normal);
        }
        // determinism
        let w2 = check_subgroupoid(&g, &objects, &arrows).unwrap();
        prop_assert_eq!(w, w2);
    }

    /// Any single-entry corruption of a valid group table violates some
    /// axiom: a quasigroup with identity and associativity is a group, so
    /// a repeated row entry must trip one of the checked laws.
    #[test]
    fn single_entry_mutations_are_rejected(entry in 0usize..16, wrong in 0usize..4) {
        let g = fixtures::cyclic(4);
        let mut raw = g.to_raw();
        let (_, _, old) = raw.compose[entry].clone();
        let replacement = ArrowId::new(format!("g{wrong}"));
        prop_assume!(replacement != old);
        raw.compose[entry].2 = replacement;
        match validate_groupoid(&raw) {
            Err(GroupoidError::Axioms(report)) => {
                prop_assert!(report.total() > 0);
            }
            other => {
                return Err(TestCaseError::fail(format!(
                    "mutation accepted: {other:?}"
                )));
            }
        }
    }

    /// Serialization round trip over the whole fixture pool.
    #[test]
    fn document_round_trip(pick in 0usize..7) {
        let doc: StructureDocument = match pick {
            0 => fixtures::generate("cyclic", &["6"]).unwrap(),
            1 => fixtures::generate("symmetric", &["3"]).unwrap(),
            2 => fixtures::generate("interval", &[]).unwrap(),
            3 => fixtures::generate("disjoint-union", &["cyclic:3", "interval"]).unwrap(),
            4 => fixtures::generate("conj-xmod", &["cyclic:6", "3"]).unwrap(),
            5 => fixtures::generate("shell", &["cyclic:2"]).unwrap(),
            _ => fixtures::generate("commshell", &["interval"]).unwrap(),
        };
        let text = serialize(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize(&back), text);
    }
}
