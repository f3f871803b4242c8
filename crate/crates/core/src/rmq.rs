//! Sparse-table range-minimum index.

/// Answers "index of the minimum on `[i, j]`" in O(1) after O(n log n) setup.
#[derive(Debug, Clone)]
pub struct RangeMinIndex {
    values: Vec<f64>,
    table: Vec<Vec<u32>>,
}

impl RangeMinIndex {
    pub fn new(values: &[f64]) -> Self {
        let n = values.len();
        let mut table: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        let mut width = 1;
        while 2 * width <= n {
            let prev = table.last().unwrap();
            let row: Vec<u32> = (0..=n - 2 * width)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + width]);
                    if values[b as usize] < values[a as usize] {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            table.push(row);
            width *= 2;
        }
        RangeMinIndex {
            values: values.to_vec(),
            table,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Leftmost index of the minimum over the inclusive range `[i, j]`.
    pub fn argmin(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j < self.values.len(), "bad range [{i}, {j}]");
        let level = (usize::BITS - 1 - (j - i + 1).leading_zeros()) as usize;
        let a = self.table[level][i];
        let b = self.table[level][j + 1 - (1 << level)];
        if self.values[b as usize] < self.values[a as usize] {
            b as usize
        } else {
            a as usize
        }
    }

    pub fn min(&self, i: usize, j: usize) -> f64 {
        self.values[self.argmin(i, j)]
    }
}
