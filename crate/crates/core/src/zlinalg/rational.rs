use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{IntMatrix, ZlinalgError};

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, ZlinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ZlinalgError::DimensionMismatch(
                "rows of unequal length".into(),
            ));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let data = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| BigRational::from(m.get(i, j).clone())))
            .collect();
        QMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigRational::from(BigInt::from(x))))
            .collect();
        QMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigRational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, ZlinalgError> {
        if self.cols != other.rows {
            return Err(ZlinalgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, ZlinalgError> {
        if v.len() != self.cols {
            return Err(ZlinalgError::DimensionMismatch(format!(
                "{}x{} * {}-vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect())
    }

    /// Reduced row echelon form; returns the reduced matrix together with the
    /// pivot column of each nonzero row.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one vector per free
    /// column, in free-column order.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![BigRational::zero(); self.cols];
            x[free] = BigRational::one();
            for (c, slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    x[c] = -r.get(*row, free).clone();
                }
            }
            basis.push(x);
        }
        basis
    }
}

impl std::fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Witness returned when a subspace fails to be invariant under a linear
/// map: the offending basis vector together with its image.
pub type InvarianceWitness = (Vec<BigRational>, Vec<BigRational>);

/// A rational subspace of `Q^ambient`, stored with a canonical basis: the
/// nonzero rows of the reduced row echelon form of any spanning set. Two
/// subspaces are equal as sets exactly when their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    /// RREF rows, each of length `ambient`.
    basis: Vec<Vec<BigRational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![BigRational::zero(); ambient];
                v[i] = BigRational::one();
                v
            })
            .collect();
        Subspace { ambient, basis }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<BigRational>]) -> Result<Self, ZlinalgError> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(ZlinalgError::DimensionMismatch(
                "spanning vector of wrong length".into(),
            ));
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        let m = QMatrix::from_rows(vectors.to_vec())?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Ok(Subspace { ambient, basis })
    }

    pub fn span_int(ambient: usize, vectors: &[Vec<BigInt>]) -> Result<Self, ZlinalgError> {
        let rational: Vec<Vec<BigRational>> = vectors
            .iter()
            .map(|v| v.iter().cloned().map(BigRational::from).collect())
            .collect();
        Subspace::span(ambient, &rational)
    }

    /// Kernel of a matrix, as a subspace of `Q^cols`.
    pub fn kernel_of(m: &QMatrix) -> Self {
        Subspace::span(m.cols(), &m.kernel()).expect("kernel vectors have ambient length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool, ZlinalgError> {
        Ok(self.coords_in_basis(v)?.is_some())
    }

    /// Coordinates of `v` on the stored basis, or `None` when `v` lies
    /// outside the subspace.
    pub fn coords_in_basis(
        &self,
        v: &[BigRational],
    ) -> Result<Option<Vec<BigRational>>, ZlinalgError> {
        if v.len() != self.ambient {
            return Err(ZlinalgError::DimensionMismatch(format!(
                "vector of length {} in ambient {}",
                v.len(),
                self.ambient
            )));
        }
        // RREF rows have unit pivots with zeros above and below, so the only
        // candidate coordinate on row i is v[pivot_i].
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("stored basis rows are nonzero");
            let c = residual[p].clone();
            if !c.is_zero() {
                for (r, b) in residual.iter_mut().zip(row) {
                    *r -= &c * b;
                }
            }
            coords.push(c);
        }
        if residual.iter().all(Zero::is_zero) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, ZlinalgError> {
        if self.ambient != other.ambient {
            return Err(ZlinalgError::DimensionMismatch(
                "subspaces of different ambient dimension".into(),
            ));
        }
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ZlinalgError> {
        if self.ambient != other.ambient {
            return Err(ZlinalgError::DimensionMismatch(
                "subspaces of different ambient dimension".into(),
            ));
        }
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vectors)
    }

    /// Intersection, computed from the kernel of the stacked coefficient
    /// matrix `[B1^T | -B2^T]`: a kernel vector `(s, t)` satisfies
    /// `B1^T s = B2^T t`, and those common values span the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ZlinalgError> {
        if self.ambient != other.ambient {
            return Err(ZlinalgError::DimensionMismatch(
                "subspaces of different ambient dimension".into(),
            ));
        }
        let d1 = self.basis.len();
        let d2 = other.basis.len();
        if d1 == 0 || d2 == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let mut m = QMatrix::zero(self.ambient, d1 + d2);
        for (j, b) in self.basis.iter().enumerate() {
            for (i, x) in b.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        for (j, b) in other.basis.iter().enumerate() {
            for (i, x) in b.iter().enumerate() {
                m.set(i, d1 + j, -x.clone());
            }
        }
        let mut vectors = Vec::new();
        for k in m.kernel() {
            let mut v = vec![BigRational::zero(); self.ambient];
            for (j, b) in self.basis.iter().enumerate() {
                if k[j].is_zero() {
                    continue;
                }
                for (slot, x) in v.iter_mut().zip(b) {
                    *slot += &k[j] * x;
                }
            }
            vectors.push(v);
        }
        Subspace::span(self.ambient, &vectors)
    }

    /// Check that the subspace is mapped into itself by `v -> m * v`.
    /// On failure returns a witness basis vector and its image.
    pub fn invariant_under(
        &self,
        m: &QMatrix,
    ) -> Result<Result<(), InvarianceWitness>, ZlinalgError> {
        if m.rows() != self.ambient || m.cols() != self.ambient {
            return Err(ZlinalgError::DimensionMismatch(format!(
                "{}x{} matrix on ambient {}",
                m.rows(),
                m.cols(),
                self.ambient
            )));
        }
        for b in &self.basis {
            let image = m.mul_vec(b)?;
            if !self.contains(&image)? {
                return Ok(Err((b.clone(), image)));
            }
        }
        Ok(Ok(()))
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Subspace dim {} in Q^{} [", self.basis.len(), self.ambient)?;
        for b in &self.basis {
            let row: Vec<String> = b.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rref_and_rank() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
        // Rows below the rank are zero.
        assert!(r.row(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_annihilates() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn subspace_equality_is_span_equality() {
        let a = Subspace::span(3, &[qv(&[1, 1, 0]), qv(&[0, 0, 1])]).unwrap();
        let b = Subspace::span(3, &[qv(&[2, 2, 2]), qv(&[0, 0, -5]), qv(&[1, 1, 3])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn contains_and_coords() {
        let s = Subspace::span(3, &[qv(&[1, 0, 1]), qv(&[0, 1, 1])]).unwrap();
        assert!(s.contains(&qv(&[2, 3, 5])).unwrap());
        assert!(!s.contains(&qv(&[1, 0, 0])).unwrap());
        let c = s.coords_in_basis(&qv(&[2, 3, 5])).unwrap().unwrap();
        // Reconstruct from the basis.
        let mut v = vec![BigRational::zero(); 3];
        for (ci, b) in c.iter().zip(s.basis()) {
            for i in 0..3 {
                v[i] += ci * &b[i];
            }
        }
        assert_eq!(v, qv(&[2, 3, 5]));
    }

    #[test]
    fn intersection_of_planes_in_q3() {
        let a = Subspace::span(3, &[qv(&[1, 0, 0]), qv(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[qv(&[0, 1, 0]), qv(&[0, 0, 1])]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Subspace::span(3, &[qv(&[0, 1, 0])]).unwrap());
        let s = a.sum(&b).unwrap();
        assert_eq!(s, Subspace::full(3));
        // dim(A) + dim(B) = dim(A+B) + dim(A∩B)
        assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
    }

    #[test]
    fn intersection_with_zero() {
        let a = Subspace::span(2, &[qv(&[1, 0])]).unwrap();
        let z = Subspace::zero(2);
        assert_eq!(a.intersect(&z).unwrap(), z);
    }

    #[test]
    fn invariance_witness() {
        let s = Subspace::span(2, &[qv(&[1, 0])]).unwrap();
        let rot = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let scale = QMatrix::from_i64(&[&[3, 0], &[0, 7]]);
        assert!(s.invariant_under(&scale).unwrap().is_ok());
        let witness = s.invariant_under(&rot).unwrap().unwrap_err();
        assert_eq!(witness.0, qv(&[1, 0]));
        assert_eq!(witness.1, qv(&[0, 1]));
    }
}
