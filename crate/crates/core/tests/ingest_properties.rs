mod common;

use citenv::ingest::{merge_indices, parse_citation_csv, CitationMatrix, JournalId};
use common::matrix_from_cells;
use proptest::prelude::*;

fn cells() -> impl Strategy<Value = Vec<(usize, usize, u64)>> {
    prop::collection::vec((0usize..12, 0usize..12, 1u64..500), 1..60)
}

fn same_cells(a: &CitationMatrix, b: &CitationMatrix) -> bool {
    a.cells().eq(b.cells())
}

fn ids(m: &CitationMatrix) -> Vec<JournalId> {
    m.journal_ids().cloned().collect()
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(cells in cells()) {
        let m = matrix_from_cells(2005, &cells);
        let back = parse_citation_csv(m.to_csv_string().as_bytes(), 2005).unwrap();
        prop_assert!(same_cells(&m, &back));
    }

    #[test]
    fn merge_commutes(a in cells(), b in cells()) {
        let (a, b) = (matrix_from_cells(2005, &a), matrix_from_cells(2005, &b));
        let ab = merge_indices(&a, &b).unwrap();
        let ba = merge_indices(&b, &a).unwrap();
        prop_assert!(same_cells(&ab, &ba));
        prop_assert_eq!(ids(&ab), ids(&ba));
    }

    #[test]
    fn merge_associates(a in cells(), b in cells(), c in cells()) {
        let (a, b, c) = (matrix_from_cells(2005, &a), matrix_from_cells(2005, &b), matrix_from_cells(2005, &c));
        let left = merge_indices(&merge_indices(&a, &b).unwrap(), &c).unwrap();
        let right = merge_indices(&a, &merge_indices(&b, &c).unwrap()).unwrap();
        prop_assert!(same_cells(&left, &right));
        prop_assert_eq!(ids(&left), ids(&right));
    }

    #[test]
    fn merge_journal_count_identity(a in cells(), b in cells()) {
        let (a, b) = (matrix_from_cells(2005, &a), matrix_from_cells(2005, &b));
        let overlap = a.journal_ids().filter(|id| b.contains(id)).count();
        let merged = merge_indices(&a, &b).unwrap();
        prop_assert_eq!(merged.len(), a.len() + b.len() - overlap);
    }

    #[test]
    fn marginals_agree(cells in cells()) {
        let m = matrix_from_cells(2005, &cells);
        let (mut cited, mut citing) = (0, 0);
        for id in m.journal_ids() {
            let t = m.totals(id).unwrap();
            cited += t.cited;
            citing += t.citing;
        }
        prop_assert_eq!(cited, m.total());
        prop_assert_eq!(citing, m.total());
    }

    #[test]
    fn profiles_sum_to_totals(cells in cells()) {
        let m = matrix_from_cells(2005, &cells);
        let all = ids(&m);
        for id in &all {
            let t = m.totals(id).unwrap();
            prop_assert_eq!(m.row_profile(id, &all).unwrap().iter().sum::<u64>(), t.citing);
            prop_assert_eq!(m.col_profile(id, &all).unwrap().iter().sum::<u64>(), t.cited);
        }
    }
}
