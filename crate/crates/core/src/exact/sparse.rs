//! Sorted sparse vectors of rationals.

use super::rational::Rational;

/// Sorted by index, no zero values.
pub type SparseVec = Vec<(usize, Rational)>;

/// Sorts, merges duplicates and drops zeros.
pub fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (j, x) in v {
        match out.last_mut() {
            Some((k, y)) if *k == j => *y += &x,
            _ => out.push((j, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub fn from_dense(v: Vec<Rational>) -> SparseVec {
    v.into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

pub fn to_dense(v: &[(usize, Rational)], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; len];
    for (j, x) in v {
        out[*j] = x.clone();
    }
    out
}

pub fn get(v: &[(usize, Rational)], j: usize) -> Rational {
    match v.binary_search_by_key(&j, |e| e.0) {
        Ok(p) => v[p].1.clone(),
        Err(_) => Rational::ZERO,
    }
}

/// `a + c * b`.
pub fn axpy(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    if c.is_zero() || b.is_empty() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let ja = a.get(i).map_or(usize::MAX, |e| e.0);
        let jb = b.get(k).map_or(usize::MAX, |e| e.0);
        if ja < jb {
            out.push(a[i].clone());
            i += 1;
        } else if jb < ja {
            out.push((jb, c * &b[k].1));
            k += 1;
        } else {
            let s = &a[i].1 + &(c * &b[k].1);
            if !s.is_zero() {
                out.push((ja, s));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

/// Dense scatter buffer for accumulating linear combinations of sparse rows.
pub struct Accumulator {
    vals: Vec<Rational>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Accumulator {
    pub fn new(len: usize) -> Self {
        Accumulator {
            vals: vec![Rational::ZERO; len],
            touched: Vec::new(),
            mark: vec![false; len],
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, row: &[(usize, Rational)]) {
        for (j, x) in row {
            if !self.mark[*j] {
                self.mark[*j] = true;
                self.touched.push(*j);
            }
            self.vals[*j] += &(c * x);
        }
    }

    /// Returns the accumulated vector and resets the buffer.
    pub fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &j in &self.touched {
            self.mark[j] = false;
            let x = std::mem::take(&mut self.vals[j]);
            if !x.is_zero() {
                out.push((j, x));
            }
        }
        self.touched.clear();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn axpy_cancels() {
        let a = vec![(0, rat(1, 1)), (2, rat(2, 1))];
        let b = vec![(2, rat(1, 1)), (3, rat(1, 2))];
        assert_eq!(axpy(&a, &rat(-2, 1), &b), vec![(0, rat(1, 1)), (3, rat(-1, 1))]);
    }

    #[test]
    fn normalize_merges() {
        let v = vec![(3, rat(1, 1)), (1, rat(2, 1)), (3, rat(-1, 1))];
        assert_eq!(normalize(v), vec![(1, rat(2, 1))]);
    }
}
