//! Integral simplicial homology through Smith normal forms of boundary maps.
//!
//! Boundary matrices are first reduced sparsely using unit pivots, which
//! handles almost all of a typical complex; whatever is left goes through a
//! dense Smith normal form.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::simplicial::{Simplex, SimplicialComplex};

/// `Z^betti ⊕ Z/t1 ⊕ Z/t2 ⊕ ...`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_owned()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Homology groups `H_0 .. H_dim`; empty for the empty complex.
pub fn homology(k: &SimplicialComplex) -> Vec<HomologyGroup> {
    let d = k.dimension();
    if d < 0 {
        return Vec::new();
    }
    let d = d as usize;
    let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); d + 1];
    for s in k.faces() {
        by_dim[s.len() - 1].push(s);
    }
    // invariants[k] = nonzero invariant factors of the boundary C_k -> C_{k-1}
    let mut invariants: Vec<Vec<u64>> = vec![Vec::new(); d + 2];
    for dim in 1..=d {
        let rows: HashMap<&Simplex, usize> = by_dim[dim - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut entries = Vec::new();
        for (c, s) in by_dim[dim].iter().enumerate() {
            for (i, &v) in s.vertices().iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                entries.push((rows[&s.without(v)], c, sign));
            }
        }
        invariants[dim] = invariant_factors(by_dim[dim - 1].len(), by_dim[dim].len(), &entries);
    }
    (0..=d)
        .map(|dim| {
            let rank_out = invariants[dim].len();
            let rank_in = invariants[dim + 1].len();
            HomologyGroup {
                betti: by_dim[dim].len() - rank_out - rank_in,
                torsion: invariants[dim + 1]
                    .iter()
                    .copied()
                    .filter(|&t| t > 1)
                    .collect(),
            }
        })
        .collect()
}

/// Nonzero diagonal entries of the Smith normal form, ascending.
pub fn invariant_factors(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Vec<u64> {
    let mut col_data: Vec<BTreeMap<usize, i128>> = vec![BTreeMap::new(); cols];
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    for &(r, c, v) in entries {
        if v == 0 {
            continue;
        }
        let e = col_data[c].entry(r).or_insert(0);
        *e += i128::from(v);
        if *e == 0 {
            col_data[c].remove(&r);
            row_cols[r].remove(&c);
        } else {
            row_cols[r].insert(c);
        }
    }

    let mut units = 0usize;
    loop {
        let mut pivoted = false;
        for c in 0..cols {
            loop {
                let pivot = col_data[c]
                    .iter()
                    .filter(|(_, v)| v.abs() == 1)
                    .map(|(&r, &v)| (row_cols[r].len(), r, v))
                    .min();
                let Some((_, r, a)) = pivot else { break };
                let pivot_col = std::mem::take(&mut col_data[c]);
                let others: Vec<usize> = row_cols[r].iter().copied().filter(|&o| o != c).collect();
                for o in others {
                    let factor = col_data[o][&r] * a;
                    for (&pr, &pv) in &pivot_col {
                        let e = col_data[o].entry(pr).or_insert(0);
                        *e -= factor * pv;
                        if *e == 0 {
                            col_data[o].remove(&pr);
                            row_cols[pr].remove(&o);
                        } else {
                            row_cols[pr].insert(o);
                        }
                    }
                }
                for &pr in pivot_col.keys() {
                    row_cols[pr].remove(&c);
                }
                units += 1;
                pivoted = true;
            }
        }
        if !pivoted {
            break;
        }
    }

    let live_cols: Vec<usize> = (0..cols).filter(|&c| !col_data[c].is_empty()).collect();
    let live_rows: Vec<usize> = (0..rows).filter(|&r| !row_cols[r].is_empty()).collect();
    let mut factors = vec![1u64; units];
    if !live_cols.is_empty() {
        let row_pos: HashMap<usize, usize> =
            live_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut dense = vec![vec![0i128; live_cols.len()]; live_rows.len()];
        for (j, &c) in live_cols.iter().enumerate() {
            for (&r, &v) in &col_data[c] {
                dense[row_pos[&r]][j] = v;
            }
        }
        factors.extend(dense_smith(dense));
    }
    factors.sort_unstable();
    factors
}

fn dense_smith(mut m: Vec<Vec<i128>>) -> Vec<u64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&m, t, t..rows, t..cols) else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                // A smaller remainder appeared in the pivot row or column.
                let (pi, pj) = min_nonzero(&m, t, t..rows, t..t + 1)
                    .into_iter()
                    .chain(min_nonzero(&m, t, t..t + 1, t..cols))
                    .min_by_key(|&(i, j)| m[i][j].abs())
                    .unwrap();
                m.swap(t, pi);
                for row in m.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(u64::try_from(m[t][t].abs()).expect("invariant factor overflow"));
    }
    diag
}

fn min_nonzero(
    m: &[Vec<i128>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = m[i][j].abs();
            if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}
