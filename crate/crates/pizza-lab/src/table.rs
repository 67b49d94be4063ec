//! Symmetric tables of tangency orders.

use serde::{Deserialize, Serialize};

use crate::exact::{ExtRational, Inf, Q};

/// Symmetric `n × n` table of exponents with `∞` on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TordTable {
    n: usize,
    values: Vec<ExtRational>,
}

impl TordTable {
    pub fn new(n: usize) -> Self {
        TordTable { n, values: vec![Inf; n * n] }
    }

    /// Builds a table from a row-major square matrix.
    pub fn from_rows(rows: &[Vec<ExtRational>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(TordTable { n, values: rows.concat() })
    }

    /// The ultrametric closure of consecutive values: entry `(i, j)` is the
    /// minimum of `consecutive[k − 1]` over `i < k ≤ j`.
    pub fn from_consecutive(consecutive: &[Q]) -> Self {
        let n = consecutive.len() + 1;
        let mut t = TordTable::new(n);
        for i in 0..n {
            let mut m = Inf;
            for j in i + 1..n {
                m = m.min(ExtRational::Fin(consecutive[j - 1]));
                t.set(i, j, m);
            }
        }
        t
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> ExtRational {
        self.values[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExtRational) {
        self.values[i * self.n + j] = v;
        self.values[j * self.n + i] = v;
    }

    pub fn rows(&self) -> Vec<Vec<ExtRational>> {
        self.values.chunks(self.n.max(1)).map(<[_]>::to_vec).take(self.n).collect()
    }

    /// Restriction to the given indices, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> TordTable {
        let mut t = TordTable::new(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                t.set(a, b, self.get(i, j));
            }
        }
        t
    }

    /// Triples violating the sharpened strong triangle inequality: among
    /// the three mutual values, the two smallest must coincide.
    pub fn ultrametric_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.n {
            if self.get(i, i) != Inf {
                bad.push((i, i, i));
            }
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let mut v = [self.get(i, j), self.get(j, k), self.get(i, k)];
                    v.sort();
                    if v[0] != v[1] {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    pub fn is_ultrametric(&self) -> bool {
        self.ultrametric_violations().is_empty()
    }

    /// Graphviz dendrogram: leaves are the named points, each inner node
    /// groups the points pairwise at tangency order at least its label.
    /// Meaningful for ultrametric tables.
    pub fn dendrogram_dot(&self, names: &[String]) -> String {
        let mut out = String::from("graph tord {\n  node [shape=plaintext];\n");
        for (i, name) in names.iter().enumerate().take(self.n) {
            out.push_str(&format!("  a{i} [label=\"{}\"];\n", name.replace('"', "'")));
        }
        let mut levels: Vec<ExtRational> =
            (0..self.n).flat_map(|i| (i + 1..self.n).map(move |j| (i, j))).map(|(i, j)| self.get(i, j)).collect();
        levels.sort();
        levels.dedup();
        // Current clusters: (node id, members).
        let mut clusters: Vec<(String, Vec<usize>)> = (0..self.n).map(|i| (format!("a{i}"), vec![i])).collect();
        let mut next = 0;
        for &t in levels.iter().rev() {
            let mut merged: Vec<(String, Vec<usize>)> = Vec::new();
            let mut used = vec![false; clusters.len()];
            for a in 0..clusters.len() {
                if used[a] {
                    continue;
                }
                used[a] = true;
                let mut group = vec![a];
                for b in a + 1..clusters.len() {
                    if !used[b] && self.get(clusters[a].1[0], clusters[b].1[0]) >= t {
                        used[b] = true;
                        group.push(b);
                    }
                }
                if group.len() == 1 {
                    merged.push(clusters[a].clone());
                    continue;
                }
                let id = format!("c{next}");
                next += 1;
                out.push_str(&format!("  {id} [shape=ellipse, label=\"{t}\"];\n"));
                let mut members = Vec::new();
                for &g in &group {
                    out.push_str(&format!("  {id} -- {};\n", clusters[g].0));
                    members.extend(&clusters[g].1);
                }
                merged.push((id, members));
            }
            clusters = merged;
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn min_rule_closure() {
        let t = TordTable::from_consecutive(&[qi(2), qi(3)]);
        assert_eq!(t.get(0, 2), ExtRational::int(2));
        assert_eq!(t.get(1, 2), ExtRational::int(3));
        assert_eq!(t.get(1, 1), Inf);
        assert!(t.is_ultrametric());
    }

    #[test]
    fn detects_non_ultrametric_triples() {
        let mut t = TordTable::new(3);
        t.set(0, 1, ExtRational::int(3));
        t.set(1, 2, ExtRational::int(1));
        t.set(0, 2, ExtRational::int(2));
        assert_eq!(t.ultrametric_violations(), vec![(0, 1, 2)]);
    }

    #[test]
    fn dendrogram_groups_by_level() {
        let t = TordTable::from_consecutive(&[qi(2), qi(3)]);
        let dot = t.dendrogram_dot(&["x".into(), "y".into(), "z".into()]);
        assert!(dot.contains("c0 [shape=ellipse, label=\"3\"]") && dot.contains("c0 -- a1") && dot.contains("c0 -- a2"), "{dot}");
        assert!(dot.contains("c1 -- a0") && dot.contains("c1 -- c0"), "{dot}");
    }
}
