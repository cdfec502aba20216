//! Dense linear algebra over F2 on packed bit vectors.
//!
//! Everything windowed (truncated models of C^-, C^infinity, C^+) ends up here.
//! The central object is [`Reducer`], an incrementally built echelon basis in
//! which every row's pivot is its lowest set bit. Rows optionally carry a tag
//! vector recording which inserted vectors they were built from, which gives
//! kernels and coordinates without a second elimination.

use std::ops::BitXorAssign;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first set bit at position `>= from`.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from / 64;
        let mut w = self.words[wi] & (!0u64 << (from % 64));
        loop {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        let mut next = self.next_one(0);
        std::iter::from_fn(move || {
            let cur = next?;
            next = self.next_one(cur + 1);
            Some(cur)
        })
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &BitVec) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }
}

impl BitXorAssign<&BitVec> for BitVec {
    fn bitxor_assign(&mut self, rhs: &BitVec) {
        debug_assert_eq!(self.len, rhs.len);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: BitVec,
    tag: BitVec,
}

/// Incremental echelon basis of a subspace of F2^`dim`.
#[derive(Clone, Debug)]
pub struct Reducer {
    dim: usize,
    tag_dim: usize,
    rows: Vec<Row>,
    pivot_row: Vec<Option<usize>>,
}

impl Reducer {
    /// `tag_dim` is the length of the tag vectors supplied on insertion
    /// (0 when coordinates are not needed).
    pub fn new(dim: usize, tag_dim: usize) -> Self {
        Reducer {
            dim,
            tag_dim,
            rows: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis, accumulating row tags into `tag`.
    pub fn reduce_tagged(&self, v: &mut BitVec, tag: &mut BitVec) {
        let mut from = 0;
        while let Some(p) = v.next_one(from) {
            if let Some(r) = self.pivot_row[p] {
                let row = &self.rows[r];
                *v ^= &row.vec;
                *tag ^= &row.tag;
            }
            from = p + 1;
        }
    }

    pub fn reduce(&self, v: &mut BitVec) {
        let mut from = 0;
        while let Some(p) = v.next_one(from) {
            if let Some(r) = self.pivot_row[p] {
                *v ^= &self.rows[r].vec;
            }
            from = p + 1;
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Inserts `v` with the given tag. Returns `None` if `v` was independent,
    /// otherwise the accumulated tag of the dependency (the combination of
    /// earlier tags plus `tag` that reduces to zero).
    pub fn insert_tagged(&mut self, mut v: BitVec, mut tag: BitVec) -> Option<BitVec> {
        debug_assert_eq!(v.len(), self.dim);
        debug_assert_eq!(tag.len(), self.tag_dim);
        self.reduce_tagged(&mut v, &mut tag);
        match v.next_one(0) {
            Some(p) => {
                self.pivot_row[p] = Some(self.rows.len());
                self.rows.push(Row { vec: v, tag });
                None
            }
            None => Some(tag),
        }
    }

    /// Inserts `v` untagged; returns whether it was independent.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let tag = BitVec::zeros(self.tag_dim);
        self.insert_tagged(v, tag).is_none()
    }
}

/// Basis of the kernel of the linear map whose `j`-th column is `columns[j]`,
/// each kernel vector expressed in F2^`columns.len()`.
pub fn nullspace(dim: usize, columns: &[BitVec]) -> Vec<BitVec> {
    let n = columns.len();
    let mut red = Reducer::new(dim, n);
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if let Some(dep) = red.insert_tagged(col.clone(), BitVec::unit(n, j)) {
            kernel.push(dep);
        }
    }
    kernel
}

pub fn rank(dim: usize, vectors: &[BitVec]) -> usize {
    let mut red = Reducer::new(dim, 0);
    vectors.iter().filter(|v| red.insert((*v).clone())).count()
}

/// Whether the square matrix with the given rows is invertible over F2.
pub fn is_invertible(rows: &[BitVec]) -> bool {
    rows.iter().all(|r| r.len() == rows.len()) && rank(rows.len(), rows) == rows.len()
}

/// A quotient `span(reps) + sub / sub` with a chosen basis `reps`.
///
/// Used for homology: `sub` is the boundary space and `reps` are cycles that
/// are independent modulo boundaries.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub_rank: usize,
    reps: Vec<BitVec>,
    red: Reducer,
}

impl Quotient {
    /// Builds the quotient; candidates dependent modulo `sub` (or on earlier
    /// candidates) are dropped.
    pub fn new(dim: usize, sub: &[BitVec], candidates: impl IntoIterator<Item = BitVec>) -> Self {
        let candidates: Vec<BitVec> = candidates.into_iter().collect();
        let mut red = Reducer::new(dim, candidates.len());
        for b in sub {
            red.insert(b.clone());
        }
        let sub_rank = red.rank();
        let mut reps = Vec::new();
        for c in candidates {
            // Tag by position in `reps`, so reserve the slot first.
            let tag = BitVec::unit(red.tag_dim, reps.len());
            if red.insert_tagged(c.clone(), tag).is_none() {
                reps.push(c);
            }
        }
        Quotient {
            sub_rank,
            reps,
            red,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn sub_rank(&self) -> usize {
        self.sub_rank
    }

    pub fn reps(&self) -> &[BitVec] {
        &self.reps
    }

    /// Coordinates of `v` in the basis `reps` modulo `sub`, or `None` if `v`
    /// is not in `span(reps) + sub`.
    pub fn coordinates(&self, v: &BitVec) -> Option<Vec<bool>> {
        let mut w = v.clone();
        let mut tag = BitVec::zeros(self.red.tag_dim);
        self.red.reduce_tagged(&mut w, &mut tag);
        if !w.is_zero() {
            return None;
        }
        Some((0..self.reps.len()).map(|i| tag.get(i)).collect())
    }

    /// Whether `v` lies in `sub`.
    pub fn is_trivial(&self, v: &BitVec) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(|&b| !b))
    }
}
