use super::{ExactMatrix, Rational};

/// A subspace of `Q^n` with a basis normalized so that the basis restricted to
/// `coord_rows` is the identity. Coordinates of a member vector are then read
/// off directly from those positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: ExactMatrix,
    coord_rows: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: ExactMatrix::zeros(ambient, 0),
            coord_rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: ExactMatrix::identity(ambient),
            coord_rows: (0..ambient).collect(),
        }
    }

    /// Column span of `generators`.
    pub fn span(generators: &ExactMatrix) -> Self {
        let rref = generators.transpose().rref();
        let d = rref.pivots.len();
        let rows = rref.reduced.block(0, 0, d, generators.rows());
        Subspace {
            basis: rows.transpose(),
            coord_rows: rref.pivots,
        }
    }

    pub fn span_of(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        Self::span(&ExactMatrix::from_columns(ambient, vectors))
    }

    /// Null space of `m`.
    pub fn kernel(m: &ExactMatrix) -> Self {
        let rref = m.rref();
        let n = m.cols();
        let mut is_pivot = vec![false; n];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        Subspace {
            basis: m.kernel_basis(),
            coord_rows: (0..n).filter(|&c| !is_pivot[c]).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.coord_rows.iter().map(|&r| v[r].clone()).collect();
        if self.basis.mul_vec(&c) == v {
            Some(c)
        } else {
            None
        }
    }

    /// Coordinates of every column of `m`, as the columns of the result.
    pub fn coordinates_matrix(&self, m: &ExactMatrix) -> Option<ExactMatrix> {
        let c = m.select_rows(&self.coord_rows);
        if &self.basis * &c == *m {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    fn complement_rows(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient()];
        for &r in &self.coord_rows {
            used[r] = true;
        }
        (0..self.ambient()).filter(|&r| !used[r]).collect()
    }

    /// Projection `Q^n -> Q^n / S` in complement coordinates, and the section
    /// sending each complement coordinate back to its unit vector.
    pub fn quotient_maps(&self) -> (ExactMatrix, ExactMatrix) {
        let n = self.ambient();
        let comp = self.complement_rows();
        // x - B x[coord_rows], restricted to complement rows.
        let reduce = &ExactMatrix::identity(n)
            - &(&self.basis * &ExactMatrix::identity(n).select_rows(&self.coord_rows));
        let proj = reduce.select_rows(&comp);
        let mut lift = ExactMatrix::zeros(n, comp.len());
        for (j, &r) in comp.iter().enumerate() {
            lift.set(r, j, Rational::one());
        }
        (proj, lift)
    }
}

/// Incrementally maintained reduced row echelon basis of a row space.
///
/// Rows are inserted one at a time; dependent rows are dropped. Useful when a
/// linear system is generated piecewise and only its solution space matters.
#[derive(Debug, Clone)]
pub struct RowReducer {
    width: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(width: usize) -> Self {
        RowReducer {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(Rational::is_zero)
    }

    /// Returns true when the row was independent of those already present.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip().expect("nonzero");
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Basis of `{x : r . x = 0 for every inserted row r}` as a subspace whose
    /// coordinates are the free (non-pivot) positions.
    pub fn solution_space(&self) -> Subspace {
        let mut is_pivot = vec![false; self.width];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.width).filter(|&c| !is_pivot[c]).collect();
        let mut basis = ExactMatrix::zeros(self.width, free.len());
        for (t, &f) in free.iter().enumerate() {
            basis.set(f, t, Rational::one());
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    basis.set(p, t, -&row[f]);
                }
            }
        }
        Subspace {
            basis,
            coord_rows: free,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[i64]) -> Vec<Rational> {
        e.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn span_coordinates() {
        let s = Subspace::span_of(3, &[v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        let x = v(&[3, 5, 2]);
        let c = s.coordinates(&x).unwrap();
        assert_eq!(s.basis().mul_vec(&c), x);
        assert!(!s.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn quotient_kills_subspace() {
        let s = Subspace::span_of(3, &[v(&[1, -1, 0])]);
        let (proj, lift) = s.quotient_maps();
        assert_eq!(proj.shape(), (2, 3));
        assert!(proj.mul_vec(&v(&[1, -1, 0])).iter().all(Rational::is_zero));
        assert!((&proj * &lift).is_identity());
    }

    #[test]
    fn reducer_matches_kernel() {
        let rows = [v(&[1, 2, 3, 4]), v(&[2, 4, 6, 8]), v(&[0, 1, 0, 1])];
        let mut r = RowReducer::new(4);
        for row in &rows {
            r.insert(row.clone());
        }
        assert_eq!(r.rank(), 2);
        let m = ExactMatrix::from_rows(4, rows.to_vec());
        let sol = r.solution_space();
        assert_eq!(sol.basis(), &m.kernel_basis());
        assert!((&m * sol.basis()).is_zero());
    }
}
