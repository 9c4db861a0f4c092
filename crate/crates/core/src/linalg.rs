//! Exact Gaussian elimination over the Gaussian rationals.

use num_traits::Zero;

use crate::gaussian::GaussianRational;

/// Row-reduced basis of a span, remembering how each pivot row is made
/// from the original vectors.
#[derive(Debug, Clone)]
pub struct Span {
    dim: usize,
    count: usize,
    rows: Vec<(usize, Vec<GaussianRational>, Vec<GaussianRational>)>,
}

impl Span {
    pub fn new(vectors: &[Vec<GaussianRational>]) -> Self {
        let dim = vectors.first().map_or(0, Vec::len);
        let count = vectors.len();
        let mut span = Span { dim, count, rows: Vec::new() };
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), dim, "vectors of unequal length");
            let mut combo = vec![GaussianRational::zero(); count];
            combo[i] = GaussianRational::from(1);
            let (rest, combo) = span.reduce(v.clone(), combo);
            if let Some(p) = rest.iter().position(|x| !x.is_zero()) {
                let inv = rest[p].inv().expect("nonzero pivot");
                let rest: Vec<_> = rest.iter().map(|x| x * &inv).collect();
                let combo: Vec<_> = combo.iter().map(|x| x * &inv).collect();
                span.rows.push((p, rest, combo));
            }
        }
        span
    }

    fn reduce(
        &self,
        mut v: Vec<GaussianRational>,
        mut combo: Vec<GaussianRational>,
    ) -> (Vec<GaussianRational>, Vec<GaussianRational>) {
        for (p, row, rc) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &(&f * r);
            }
            for (x, r) in combo.iter_mut().zip(rc) {
                *x -= &(&f * r);
            }
        }
        (v, combo)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.count
    }

    /// Coefficients `c` with `Σ c_i v_i = target`, if `target` is in the span.
    /// Unique when the vectors are independent.
    pub fn solve(&self, target: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(target.len(), self.dim, "target of wrong length");
        let zero = vec![GaussianRational::zero(); self.count];
        let (rest, combo) = self.reduce(target.to_vec(), zero);
        rest.iter().all(Zero::is_zero).then(|| combo.iter().map(|x| -x).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<GaussianRational> {
        xs.iter().map(|&x| GaussianRational::from(x)).collect()
    }

    #[test]
    fn solve_and_rank() {
        let s = Span::new(&[v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 2, 1])]);
        assert_eq!(s.rank(), 2);
        assert!(!s.is_independent());
        let s = Span::new(&[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.solve(&v(&[2, 5, 3])), Some(v(&[2, 3])));
        assert_eq!(s.solve(&v(&[1, 0, 0])), None);
    }
}
