
use ltlearn::reductions::*;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn sets(max_elem: usize, count: usize) -> impl Strategy<Value = Vec<BTreeSet<usize>>> {
    prop::collection::vec(prop::collection::btree_set(1..=max_elem, 0..=max_elem), 1..=count)
}

/// Minimum found by trying element subsets in every order: no pruning, no bit tricks.
fn slow_min<F: Fn(&BTreeSet<usize>) -> bool>(width: usize, ok: F) -> Option<usize> {
    let all: Vec<BTreeSet<usize>> = (0u32..1 << width)
        .map(|m| (0..width).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    all.into_iter().filter(|s| ok(s)).map(|s| s.len()).min()
}

proptest! {
    #[test]
    fn setcover_optimum(n in 1usize..=6, family in sets(6, 6)) {
        let family: Vec<_> = family.into_iter().map(|s| s.into_iter().filter(|&e| e <= n).collect()).collect();
        let inst = SetCoverInstance::new(n, family.clone()).unwrap();
        let want = slow_min(family.len(), |chosen| {
            let union: BTreeSet<usize> = chosen.iter().flat_map(|&i| family[i].iter().copied()).collect();
            union.len() == n
        });
        prop_assert_eq!(solve_setcover_bruteforce(&inst).unwrap(), want);
        prop_assert_eq!(inst.has_cover(), want.is_some());
        let s = setcover_to_sample(&inst);
        prop_assert!(s.words().all(|w| w.len() == family.len() + 1));
        prop_assert_eq!(s.negatives().len(), n + 1);
    }

    #[test]
    fn hittingset_optimum(l in 1usize..=6, family in sets(6, 6)) {
        let family: Vec<BTreeSet<usize>> = family.into_iter().map(|s| s.into_iter().filter(|&e| e <= l).collect()).collect();
        let inst = HittingSetInstance::new(l, family.clone()).unwrap();
        let want = slow_min(l, |h| family.iter().all(|c| c.iter().any(|e| h.contains(&(e - 1)))));
        prop_assert_eq!(solve_hittingset_bruteforce(&inst).unwrap(), want);
        prop_assert_eq!(hittingset_to_sample(&inst).is_ok(), want.is_some());
    }

    #[test]
    fn sets_files_round_trip(family in sets(9, 5), bound in 9usize..12) {
        let text = format_sets("ground", bound, &family);
        let back = parse_sets(&text).unwrap();
        prop_assert_eq!(back.bound, Some(bound));
        prop_assert_eq!(back.sets, family);
    }
}

#[test]
fn metadata_lines() {
    let m = Metadata {
        kind: "set-cover".into(),
        optimum: Some(2),
        seed: Some(7),
        extra: vec![("separator_size".into(), "10".into())],
    };
    assert_eq!(m.to_string(), "kind: set-cover\noptimum: 2\nseed: 7\nseparator_size: 10\n");
}
