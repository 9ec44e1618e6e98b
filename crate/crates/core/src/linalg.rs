//! Sparse exact linear algebra over the Gaussian rationals: incremental row
//! echelon forms, independence, span membership and nullspaces.
//!
//! Pivots are always the smallest key of a row, which makes results
//! deterministic for a fixed input order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::GaussRat;

pub type SparseVec<K> = BTreeMap<K, GaussRat>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &GaussRat, x: &SparseVec<K>) {
    for (k, v) in x {
        let term = a * v;
        match y.get_mut(k) {
            Some(slot) => {
                *slot += &term;
                if slot.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !term.is_zero() {
                    y.insert(k.clone(), term);
                }
            }
        }
    }
}

fn scaled<K: Ord>(v: SparseVec<K>, c: &GaussRat) -> SparseVec<K> {
    v.into_iter().map(|(k, x)| (k, &x * c)).collect()
}

/// Rows kept in echelon form keyed by pivot, each with the combination of
/// inserted vectors that produced it.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the rows, folding the row combinations into
    /// `tag` so that the residual equals Σ tag_i v_i whenever `v` does.
    fn reduce_tracked(&self, mut v: SparseVec<K>, mut tag: SparseVec<usize>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(c) => v.range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded)).next().map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            if let Some((row, row_tag)) = self.rows.get(&key) {
                let factor = -(&v[&key]);
                axpy(&mut v, &factor, row);
                axpy(&mut tag, &factor, row_tag);
                // the pivot entry is gone; everything added is larger
            }
            cursor = Some(key);
        }
        (v, tag)
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        self.reduce_tracked(v.clone(), SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts the next vector (index = number of earlier insertions).
    /// Returns `Ok(())` if it was independent, otherwise `Err(relation)`
    /// where `relation` is a combination of inserted vectors summing to
    /// zero, with coefficient 1 on the new vector.
    pub fn insert(&mut self, v: SparseVec<K>) -> Result<(), SparseVec<usize>> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut tag = SparseVec::new();
        tag.insert(idx, GaussRat::one());
        let (res, tag) = self.reduce_tracked(v, tag);
        let Some((pivot, lead)) = res.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Err(tag);
        };
        let inv = lead.inv().expect("pivot entry is nonzero");
        self.rows.insert(pivot, (scaled(res, &inv), scaled(tag, &inv)));
        Ok(())
    }
}

/// Indices of a maximal independent subset, chosen greedily in order.
pub fn independent_subset<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> Vec<usize> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if ech.insert(v.clone()).is_ok() {
            out.push(i);
        }
    }
    out
}

pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    independent_subset(vectors).len()
}

/// A basis of the relations Σ c_i v_i = 0, in reduced row echelon form.
pub fn nullspace<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut ech = Echelon::new();
    let mut relations = Vec::new();
    for v in vectors {
        if let Err(rel) = ech.insert(v.clone()) {
            relations.push(rel);
        }
    }
    rref(relations)
}

/// Reduced row echelon form of a list of vectors (zero rows dropped), rows
/// ordered by pivot.
pub fn rref<K: Ord + Clone>(vectors: Vec<SparseVec<K>>) -> Vec<SparseVec<K>> {
    let mut ech = Echelon::new();
    for v in vectors {
        let _ = ech.insert(v);
    }
    let pivots: Vec<K> = ech.rows.keys().cloned().collect();
    let mut rows: Vec<SparseVec<K>> = ech.rows.into_values().map(|(r, _)| r).collect();
    // back-substitute so each pivot column is a unit vector
    for i in (0..rows.len()).rev() {
        for j in 0..i {
            if let Some(c) = rows[j].get(&pivots[i]).cloned() {
                let row_i = rows[i].clone();
                axpy(&mut rows[j], &-c, &row_i);
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().filter(|(_, c)| *c != 0).map(|&(k, c)| (k, GaussRat::from_int(c))).collect()
    }

    #[test]
    fn rank_and_relations() {
        let vs = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (1, 4), (2, 2)]), v(&[(2, 5)])];
        assert_eq!(rank(&vs), 3);
        assert_eq!(independent_subset(&vs), vec![0, 1, 3]);
        let null = nullspace(&vs);
        assert_eq!(null.len(), 1);
        // v2 = v0 + 2 v1
        assert_eq!(null[0], v(&[(0, 1), (1, 2), (2, -1)]).into_iter().map(|(k, c)| (k as usize, c)).collect());
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        e.insert(v(&[(3, 1), (5, 1)])).unwrap();
        assert!(e.contains(&v(&[(3, 2), (5, 2)])));
        assert!(!e.contains(&v(&[(5, 1)])));
    }

    #[test]
    fn rref_is_reduced() {
        let rows = rref(vec![v(&[(0, 2), (1, 2)]), v(&[(1, 3)])]);
        assert_eq!(rows, vec![v(&[(0, 1)]), v(&[(1, 1)])]);
    }
}
