use super::matrix::QVector;
use crate::rational::Rational;

/// Incrementally maintained row space in reduced echelon form.
///
/// Every stored row has a leading 1 in its pivot column and zeros in the
/// pivot columns of all other stored rows.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &QVector) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(v.entries()).iter().all(Rational::is_zero)
    }

    /// Adds `v`; returns whether the rank went up.
    pub fn insert(&mut self, v: &QVector) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = self.reduce(v.entries());
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        p.sort_unstable();
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracks_rank() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(&QVector::from_ints(&[1, 1, 0])));
        assert!(!s.insert(&QVector::from_ints(&[2, 2, 0])));
        assert!(s.insert(&QVector::from_ints(&[0, 1, -1])));
        assert!(s.contains(&QVector::from_ints(&[1, 2, -1])));
        assert!(!s.contains(&QVector::from_ints(&[0, 0, 1])));
        assert_eq!(s.rank(), 2);
        assert_eq!(s.pivot_columns(), vec![0, 1]);
    }
}
