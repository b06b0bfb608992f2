//! Dense bit-packed matrices over GF(2).
//!
//! Rows are stored as runs of `u64` words. Elimination is done in place and
//! always picks the lowest available column as the next pivot, so results are
//! deterministic.

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

/// Reduced row echelon form: `matrix` is fully reduced and `pivots[r]` is the
/// pivot column of row `r` for `r < pivots.len()`. Rows past the rank are zero.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        BitMatrix { rows, cols, stride, words: vec![0; rows * stride] }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<usize>]) -> Self {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for &c in row {
                m.flip(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols);
        self.words[row * self.stride + col / WORD] >> (col % WORD) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols);
        let w = &mut self.words[row * self.stride + col / WORD];
        let bit = 1u64 << (col % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn flip(&mut self, row: usize, col: usize) {
        assert!(row < self.rows && col < self.cols);
        self.words[row * self.stride + col / WORD] ^= 1u64 << (col % WORD);
    }

    pub fn row_words(&self, row: usize) -> &[u64] {
        &self.words[row * self.stride..(row + 1) * self.stride]
    }

    pub fn row_is_zero(&self, row: usize) -> bool {
        self.row_words(row).iter().all(|&w| w == 0)
    }

    /// Column indices of the set bits in `row`, ascending.
    pub fn row_ones(&self, row: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.row_words(row).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.flip(c, r);
            }
        }
        t
    }

    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        let (s, d) = (src * self.stride, dst * self.stride);
        for k in from_word..self.stride {
            self.words[d + k] ^= self.words[s + k];
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.words.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn into_rref(mut self) -> Echelon {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(rank, p);
            let from_word = col / WORD;
            for r in 0..self.rows {
                if r != rank && self.get(r, col) {
                    self.xor_row_into(rank, r, from_word);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Echelon { matrix: self, pivots }
    }

    pub fn rank(&self) -> usize {
        self.clone().into_rref().pivots.len()
    }

    /// Basis of the right null space `{v : A v = 0}`, one vector per free
    /// column, each given as its sorted support.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        self.clone().into_rref().kernel()
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let cols = self.matrix.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::with_capacity(cols - self.pivots.len());
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v: Vec<usize> =
                self.pivots.iter().enumerate().filter(|&(r, _)| self.matrix.get(r, free)).map(|(_, &p)| p).collect();
            v.push(free);
            v.sort_unstable();
            out.push(v);
        }
        out
    }
}
