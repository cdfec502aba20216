use crate::scalar_ring::Polynomial;

/// Sparse matrix over F2[U], stored column by column with rows ascending.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, Polynomial)>>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.cols[i].push((i, Polynomial::one()));
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Polynomial> {
        let column = &self.cols[col];
        column
            .binary_search_by_key(&row, |(r, _)| *r)
            .ok()
            .map(|i| &column[i].1)
    }

    /// Adds `p` to entry `(row, col)`.
    pub fn add_to(&mut self, row: usize, col: usize, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        let column = &mut self.cols[col];
        match column.binary_search_by_key(&row, |(r, _)| *r) {
            Ok(i) => {
                column[i].1 += p;
                if column[i].1.is_zero() {
                    column.remove(i);
                }
            }
            Err(i) => column.insert(i, (row, p.clone())),
        }
    }

    pub fn set(&mut self, row: usize, col: usize, p: Polynomial) {
        let column = &mut self.cols[col];
        match column.binary_search_by_key(&row, |(r, _)| *r) {
            Ok(i) => {
                if p.is_zero() {
                    column.remove(i);
                } else {
                    column[i].1 = p;
                }
            }
            Err(i) => {
                if !p.is_zero() {
                    column.insert(i, (row, p));
                }
            }
        }
    }

    /// Nonzero entries of column `col` as `(row, value)`.
    pub fn column(&self, col: usize) -> &[(usize, Polynomial)] {
        &self.cols[col]
    }

    /// All nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, p)| (*r, c, p)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(
            self.n_cols(),
            rhs.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = PolyMatrix::zeros(self.rows, rhs.n_cols());
        for (j, col) in rhs.cols.iter().enumerate() {
            let mut acc: Vec<Polynomial> = vec![Polynomial::zero(); self.rows];
            let mut touched = false;
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    acc[*i] += &(a * b);
                    touched = true;
                }
            }
            if touched {
                out.cols[j] = acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .collect();
            }
        }
        out
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.n_cols()), (rhs.rows, rhs.n_cols()));
        let mut out = self.clone();
        for (r, c, p) in rhs.entries() {
            out.add_to(r, c, p);
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.n_cols(), self.rows);
        for (r, c, p) in self.entries() {
            // entries arrive column-major, so each output column stays sorted
            out.cols[r].push((c, p.clone()));
        }
        out
    }

    /// Entrywise map, dropping entries that become zero.
    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.rows, self.n_cols());
        for (c, col) in self.cols.iter().enumerate() {
            out.cols[c] = col
                .iter()
                .map(|(r, p)| (*r, f(p)))
                .filter(|(_, p)| !p.is_zero())
                .collect();
        }
        out
    }

    /// Largest degree among the entries, if any entry is nonzero.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries().filter_map(|(_, _, p)| p.degree()).max()
    }
}
