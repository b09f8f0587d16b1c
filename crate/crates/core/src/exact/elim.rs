//! Sparse Gauss-Jordan elimination.
//!
//! Rows are bucketed by leading column. Within a bucket the pivot is the row
//! whose leading entry has the smallest height, which keeps intermediate
//! rationals small on the structured matrices this crate produces.

use std::collections::BTreeMap;

use super::matrix::Rref;
use super::sparse::{axpy, get, SparseVec};

pub fn rref(cols: usize, rows: Vec<SparseVec>) -> Rref {
    let mut buckets: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    for r in rows.into_iter().filter(|r| !r.is_empty()) {
        buckets.entry(r[0].0).or_default().push(r);
    }

    let mut basis: Vec<SparseVec> = Vec::new();
    let mut pivots = Vec::new();
    while let Some((c, mut group)) = buckets.pop_first() {
        let best = group
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| (r[0].1.height(), r.len()))
            .map(|(i, _)| i)
            .expect("bucket is never empty");
        let piv = group.swap_remove(best);
        let inv = piv[0].1.recip().expect("leading entry is nonzero");
        let piv: SparseVec = piv.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
        for r in group {
            let f = -&r[0].1;
            let reduced = axpy(&r, &f, &piv);
            if let Some(&(lead, _)) = reduced.first() {
                buckets.entry(lead).or_default().push(reduced);
            }
        }
        basis.push(piv);
        pivots.push(c);
    }

    for i in (0..basis.len()).rev() {
        let p = pivots[i];
        let (head, tail) = basis.split_at_mut(i);
        let piv = &tail[0];
        for row in head.iter_mut() {
            let c = get(row, p);
            if !c.is_zero() {
                *row = axpy(row, &-c, piv);
            }
        }
    }

    Rref {
        cols,
        rows: basis,
        pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::super::matrix::RatMatrix;
    use crate::exact::{rat, Rational};
    use proptest::prelude::*;

    /// Fraction-free (Bareiss) elimination over i128, an independent rank oracle.
    fn bareiss_rank(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<i128>> = m
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..rows {
                for k in c + 1..cols {
                    a[r][k] = (a[r][k] * a[rank][c] - a[r][c] * a[rank][k]) / prev;
                }
                a[r][c] = 0;
            }
            prev = a[rank][c];
            rank += 1;
        }
        rank
    }

    fn to_rat(m: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_rows(
            m.iter()
                .map(|r| r.iter().map(|&x| Rational::integer(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_three_six_by_four() {
        // Rows 4..6 are combinations of rows 1..3.
        let base = [vec![1, 2, 0, -1], vec![0, 1, 3, 2], vec![2, 0, 1, 1]];
        let mut rows = base.to_vec();
        rows.push(vec![3, 3, 4, 2]);
        rows.push(vec![1, -2, 1, 2]);
        rows.push(vec![2, 5, 3, 0]);
        assert_eq!(bareiss_rank(&rows), 3);
        let m = to_rat(&rows);
        assert_eq!(m.rank(), 3);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Rational::is_zero));
    }

    #[test]
    fn rref_is_reduced() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(2, 3), rat(1, 1), rat(0, 1)],
            vec![rat(4, 3), rat(2, 1), rat(1, 5)],
        ])
        .unwrap();
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.rows[0], vec![(0, rat(1, 1)), (1, rat(3, 2))]);
        assert_eq!(r.rows[1], vec![(2, rat(1, 1))]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_matches_bareiss(m in small_matrix()) {
            prop_assert_eq!(to_rat(&m).rank(), bareiss_rank(&m));
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            let a = to_rat(&m);
            let k = a.kernel();
            prop_assert_eq!(a.rank() + k.len(), a.cols());
            for v in &k {
                prop_assert!(a.mul_vec(v).unwrap().iter().all(Rational::is_zero));
            }
        }

        #[test]
        fn solve_reproduces_rhs(m in small_matrix(), x in proptest::collection::vec(-5i64..6, 6)) {
            let a = to_rat(&m);
            let x: Vec<Rational> = x[..a.cols()].iter().map(|&v| Rational::integer(v)).collect();
            let b = a.mul_vec(&x).unwrap();
            let y = a.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul_vec(&y).unwrap(), b);
        }

        #[test]
        fn product_is_associative(
            a in proptest::collection::vec(-3i64..4, 9),
            b in proptest::collection::vec(-3i64..4, 9),
            c in proptest::collection::vec(-3i64..4, 9),
        ) {
            let mk = |v: &[i64]| to_rat(&v.chunks(3).map(<[i64]>::to_vec).collect::<Vec<_>>());
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn product_matches_naive(
            a in proptest::collection::vec(-4i64..5, 12),
            b in proptest::collection::vec(-4i64..5, 8),
        ) {
            let ad: Vec<Vec<i64>> = a.chunks(4).map(<[i64]>::to_vec).collect();
            let bd: Vec<Vec<i64>> = b.chunks(2).map(<[i64]>::to_vec).collect();
            let naive: Vec<Vec<i64>> = (0..3)
                .map(|i| (0..2).map(|j| (0..4).map(|k| ad[i][k] * bd[k][j]).sum()).collect())
                .collect();
            prop_assert_eq!(&to_rat(&ad) * &to_rat(&bd), to_rat(&naive));
        }
    }
}
