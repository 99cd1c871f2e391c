use nalgebra::DMatrix;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Dense symmetric matrix of dimension 2..=12, stored as its packed lower
/// triangle. Setting `(i, j)` sets `(j, i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    lower: Vec<f64>,
}

impl SymMatrix {
    pub const MAX_DIM: usize = 12;

    pub fn zeros(n: usize) -> Self {
        assert!((2..=Self::MAX_DIM).contains(&n), "SymMatrix dimension {n} outside 2..=12");
        SymMatrix { n, lower: vec![0.0; n * (n + 1) / 2] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut s = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            s.set(i, i, v);
        }
        s
    }

    /// Builds from a full row-major matrix, reading only the lower triangle.
    pub fn from_lower_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut s = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                s.set(i, j, f(i, j));
            }
        }
        s
    }

    /// Builds from row vectors; fails unless the rows form a square
    /// symmetric matrix.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, String> {
        let n = rows.len();
        if !(2..=Self::MAX_DIM).contains(&n) {
            return Err(format!("dimension {n} outside 2..=12"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err("rows are not square".into());
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(format!("entry ({i},{j}) differs from ({j},{i})"));
                }
            }
        }
        Ok(Self::from_lower_fn(n, |i, j| rows[i][j]))
    }

    fn index(i: usize, j: usize) -> usize {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        r * (r + 1) / 2 + c
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n);
        self.lower[Self::index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(i < self.n && j < self.n);
        self.lower[Self::index(i, j)] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += self.get(i, j).powi(2);
            }
        }
        s.sqrt()
    }

    /// `|self - reference|_F / |reference|_F` (absolute when the reference is zero).
    pub fn relative_frobenius_error(&self, reference: &SymMatrix) -> f64 {
        assert_eq!(self.n, reference.n);
        let diff = SymMatrix {
            n: self.n,
            lower: self.lower.iter().zip(&reference.lower).map(|(a, b)| a - b).collect(),
        };
        let scale = reference.frobenius_norm();
        if scale == 0.0 {
            diff.frobenius_norm()
        } else {
            diff.frobenius_norm() / scale
        }
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn is_finite(&self) -> bool {
        self.lower.iter().all(|v| v.is_finite())
    }
}

impl std::ops::Neg for &SymMatrix {
    type Output = SymMatrix;

    fn neg(self) -> SymMatrix {
        SymMatrix { n: self.n, lower: self.lower.iter().map(|v| -v).collect() }
    }
}

impl Serialize for SymMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(deserializer)?;
        SymMatrix::from_rows(&rows).map_err(de::Error::custom)
    }
}
