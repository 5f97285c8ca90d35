//! Exact linear algebra over [`Scalar`]: sparse echelon spaces and dense nullspaces.

use std::collections::BTreeMap;

use crate::exactfield::Scalar;

/// Sparse vector keyed by an ordered basis label.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Scalar, x: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, c) in x {
        let t = a * c;
        match y.get_mut(k) {
            Some(v) => {
                *v += &t;
                if v.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    y.insert(k.clone(), t);
                }
            }
        }
    }
}

pub fn scale_vec<K: Ord + Clone>(x: &SparseVec<K>, a: &Scalar) -> SparseVec<K> {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(k, c)| (k.clone(), c * a)).collect()
}

/// A subspace kept in reduced row echelon form; pivots are the smallest keys.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Remainder of `v` modulo the space.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let hits: Vec<(K, Scalar)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(*k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let mut r = v.clone();
        for (k, c) in hits {
            axpy(&mut r, &-&c, &self.rows[&k]);
        }
        r
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((p, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let r = scale_vec(&r, &c.inv().expect("nonzero pivot"));
        for row in self.rows.values_mut() {
            if let Some(x) = row.get(&p).cloned() {
                axpy(row, &-&x, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, y) in other.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Scalar::zero(); ncols];
        x[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = -&a[r][free];
        }
        out.push(x);
    }
    out
}

pub fn rank(m: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, ncols).len()
}

/// Solves `sum_j x_j cols[j] = target`, if solvable.
pub fn solve_columns<K: Ord + Clone>(cols: &[SparseVec<K>], target: &SparseVec<K>) -> Option<Vec<Scalar>> {
    let mut keys: Vec<K> = cols.iter().flat_map(|c| c.keys().cloned()).collect();
    keys.extend(target.keys().cloned());
    keys.sort();
    keys.dedup();
    let n = cols.len();
    let mut m: Vec<Vec<Scalar>> = keys
        .iter()
        .map(|k| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c.get(k).cloned().unwrap_or_default()).collect();
            row.push(target.get(k).cloned().unwrap_or_default());
            row
        })
        .collect();
    let pivots = rref(&mut m, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[(u32, i64)]) -> SparseVec<u32> {
        xs.iter().map(|&(k, c)| (k, Scalar::from_int(c))).collect()
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 2)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.dim(), 2);
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn nullspace_basic() {
        let m = vec![vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(3)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for x in ns {
            let s = &(&x[0] + &(&x[1] * &Scalar::from_int(2))) + &(&x[2] * &Scalar::from_int(3));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)])];
        let x = solve_columns(&cols, &v(&[(0, 2), (1, 5)])).unwrap();
        assert_eq!(x, vec![Scalar::from_int(2), Scalar::from_int(3)]);
        assert!(solve_columns(&cols, &v(&[(2, 1)])).is_none());
    }
}
