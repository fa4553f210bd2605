//! Dense GF(2) row reduction over packed `u64` words.
//!
//! Columns are ordered; a row's pivot is its lowest set column. Rows are
//! inserted incrementally and each remembers which inserted rows it is a
//! combination of, so membership queries return an explicit selection.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut row = Self::zeros(len);
        for i in indices {
            row.flip(i);
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index at or after `from`.
    pub fn first_set_from(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut w = from / 64;
        let mut word = self.words[w] & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                let i = w * 64 + word.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        let mut next = self.first_set_from(0);
        std::iter::from_fn(move || {
            let cur = next?;
            next = self.first_set_from(cur + 1);
            Some(cur)
        })
    }

    fn grow(&mut self, len: usize) {
        if len > self.len {
            self.words.resize(len.div_ceil(64), 0);
            self.len = len;
        }
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    row: BitRow,
    combo: BitRow,
}

/// Incremental Gaussian elimination with combination tracking.
#[derive(Clone, Debug)]
pub struct Eliminator {
    ncols: usize,
    /// `pivot_of[col]` indexes into `pivots`.
    pivot_of: Vec<Option<usize>>,
    pivots: Vec<Pivot>,
    inserted: usize,
}

impl Eliminator {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivot_of: vec![None; ncols],
            pivots: Vec::new(),
            inserted: 0,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduce `row` against the current pivots. Returns the residue and the
    /// combination of inserted rows that was subtracted.
    fn reduce(&self, mut row: BitRow) -> (BitRow, BitRow) {
        assert_eq!(row.len(), self.ncols, "row width mismatch");
        let mut combo = BitRow::zeros(self.inserted);
        let mut pos = 0;
        while let Some(col) = row.first_set_from(pos) {
            match self.pivot_of[col] {
                Some(p) => {
                    let pivot = &self.pivots[p];
                    row.xor_assign(&pivot.row);
                    let mut c = pivot.combo.clone();
                    c.grow(self.inserted);
                    combo.xor_assign(&c);
                }
                None => {
                    // Residue has a new leading column; the rest stays unreduced.
                    return (row, combo);
                }
            }
            pos = col + 1;
        }
        (row, combo)
    }

    /// Insert a row; returns `true` when it was independent of the earlier rows.
    pub fn insert(&mut self, row: BitRow) -> bool {
        let (residue, mut combo) = self.reduce(row);
        let index = self.inserted;
        self.inserted += 1;
        combo.grow(self.inserted);
        combo.flip(index);
        match residue.first_set_from(0) {
            Some(col) => {
                self.pivot_of[col] = Some(self.pivots.len());
                self.pivots.push(Pivot {
                    row: residue,
                    combo,
                });
                true
            }
            None => false,
        }
    }

    /// Express `target` as a sum of inserted rows, if possible.
    pub fn solve(&self, target: &BitRow) -> Option<BitRow> {
        let mut row = target.clone();
        let mut combo = BitRow::zeros(self.inserted);
        let mut pos = 0;
        while let Some(col) = row.first_set_from(pos) {
            let p = self.pivot_of[col]?;
            let pivot = &self.pivots[p];
            row.xor_assign(&pivot.row);
            let mut c = pivot.combo.clone();
            c.grow(self.inserted);
            combo.xor_assign(&c);
            pos = col + 1;
        }
        Some(combo)
    }

    pub fn contains(&self, target: &BitRow) -> bool {
        self.solve(target).is_some()
    }
}

/// Basis of the relations among `rows`: selections of row indices summing to zero.
pub fn relations(ncols: usize, rows: &[BitRow]) -> Vec<BitRow> {
    let mut elim = Eliminator::new(ncols);
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let (residue, mut combo) = elim.reduce(row.clone());
        if residue.is_zero() {
            combo.grow(rows.len());
            combo.flip(i);
            out.push(combo);
        }
        elim.insert(row.clone());
    }
    out
}

/// Rank of a list of rows of equal width.
pub fn rank(ncols: usize, rows: impl IntoIterator<Item = BitRow>) -> usize {
    let mut elim = Eliminator::new(ncols);
    for row in rows {
        elim.insert(row);
    }
    elim.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(bits: &[u8]) -> BitRow {
        BitRow::from_indices(
            bits.len(),
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(i, _)| i),
        )
    }

    #[test]
    fn first_set_crosses_words() {
        let r = BitRow::from_indices(200, [3, 64, 130]);
        assert_eq!(r.first_set_from(0), Some(3));
        assert_eq!(r.first_set_from(4), Some(64));
        assert_eq!(r.first_set_from(65), Some(130));
        assert_eq!(r.first_set_from(131), None);
        assert_eq!(r.ones().collect::<Vec<_>>(), vec![3, 64, 130]);
    }

    #[test]
    fn dependent_rows_do_not_raise_rank() {
        let mut e = Eliminator::new(3);
        assert!(e.insert(row(&[1, 1, 0])));
        assert!(e.insert(row(&[0, 1, 1])));
        assert!(!e.insert(row(&[1, 0, 1])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.inserted(), 3);
    }

    #[test]
    fn relations_span_the_kernel() {
        let rows = [
            row(&[1, 1, 0]),
            row(&[0, 1, 1]),
            row(&[1, 0, 1]),
            row(&[1, 1, 0]),
        ];
        let rels = relations(3, &rows);
        assert_eq!(rels.len(), 2);
        for r in &rels {
            let mut sum = BitRow::zeros(3);
            for i in r.ones() {
                sum.xor_assign(&rows[i]);
            }
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn solve_returns_combination() {
        let mut e = Eliminator::new(4);
        e.insert(row(&[1, 1, 0, 0]));
        e.insert(row(&[0, 1, 1, 0]));
        e.insert(row(&[0, 0, 0, 1]));
        let sol = e.solve(&row(&[1, 0, 1, 1])).unwrap();
        assert_eq!(sol.ones().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(e.solve(&row(&[0, 0, 1, 1])).is_none());
        assert!(e.solve(&row(&[0, 0, 0, 0])).unwrap().is_zero());
    }
}
