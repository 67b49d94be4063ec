//! Exact tangency tables over embedded arcs and the combinatorial
//! normal-embedding test.

use serde::Serialize;

use crate::exact::{arc_tord, ExactError, MonoArc};
use crate::par::Exec;
use crate::realization::PairEmbedding;
use crate::table::TordTable;

/// Exact table over arbitrary arcs of one dimension.
pub fn tord_table_of(arcs: &[&MonoArc], exec: Exec) -> Result<TordTable, ExactError> {
    let n = arcs.len();
    let rows = exec.map_range(n, |i| {
        (i + 1..n).map(|j| arc_tord(arcs[i], arcs[j])).collect::<Result<Vec<_>, _>>()
    });
    let mut t = TordTable::new(n);
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row?.into_iter().enumerate() {
            t.set(i, i + 1 + off, v);
        }
    }
    Ok(t)
}

/// Table over all arcs of `E`, `T` arcs first, then `T′` arcs in order.
pub fn oracle_tord_table(e: &PairEmbedding) -> Result<TordTable, ExactError> {
    oracle_tord_table_with(e, Exec::default())
}

pub fn oracle_tord_table_with(e: &PairEmbedding, exec: Exec) -> Result<TordTable, ExactError> {
    let arcs: Vec<&MonoArc> = e.all_arcs().map(|a| &a.coords).collect();
    if let Some(a) = arcs.iter().find(|a| a.dim() != e.dim) {
        return Err(ExactError::Dimension(e.dim, a.dim()));
    }
    tord_table_of(&arcs, exec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CneVerdict {
    pub passes: bool,
    /// Up to [`CNE_REPORTED`] violating positions `(i, k, j)`, `i < k < j`.
    pub failures: Vec<(usize, usize, usize)>,
}

pub const CNE_REPORTED: usize = 16;

/// `tord(i, j) = min(tord(i, k), tord(k, j))` for every `i < k < j` of
/// `order` (positions index into `order`).
pub fn check_cne(t: &TordTable, order: &[usize]) -> CneVerdict {
    let n = order.len();
    let mut failures = Vec::new();
    let mut passes = true;
    for i in 0..n {
        for j in i + 2..n {
            let outer = t.get(order[i], order[j]);
            for k in i + 1..j {
                if outer != t.get(order[i], order[k]).min(t.get(order[k], order[j])) {
                    passes = false;
                    if failures.len() < CNE_REPORTED {
                        failures.push((i, k, j));
                    }
                }
            }
        }
    }
    CneVerdict { passes, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExtRational;

    fn table3(a: i64, b: i64, c: i64) -> TordTable {
        // Values for (0,1), (1,2), (0,2).
        let mut t = TordTable::new(3);
        t.set(0, 1, ExtRational::int(a));
        t.set(1, 2, ExtRational::int(b));
        t.set(0, 2, ExtRational::int(c));
        t
    }

    #[test]
    fn cne_examples() {
        assert!(check_cne(&table3(2, 3, 2), &[0, 1, 2]).passes);
        // The middle arc is farther from both ends than they are from each other.
        let v = check_cne(&table3(1, 1, 3), &[0, 1, 2]);
        assert!(!v.passes);
        assert_eq!(v.failures, vec![(0, 1, 2)]);
        // Reordering puts the close pair side by side.
        assert!(check_cne(&table3(1, 1, 3), &[0, 2, 1]).passes);
    }

    #[test]
    fn model_pair_table() {
        let e = crate::realization::model_pair(ExtRational::int(2), ExtRational::int(2), crate::exact::qi(1)).unwrap();
        let t = oracle_tord_table(&e).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.get(0, 2), ExtRational::int(2));
        assert!(t.is_ultrametric());
        let seq = oracle_tord_table_with(&e, Exec::Sequential).unwrap();
        assert_eq!(seq, t);
    }
}
