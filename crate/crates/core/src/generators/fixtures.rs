//! Small hand-checkable paths.

use crate::path::SampledPath;

/// `(0,0) (1/4,2) (1/2,1) (3/4,3) (1,0)`: two leaves, branch at 1, root at 0.
pub fn p0() -> SampledPath {
    SampledPath::from_pairs(&[(0.0, 0.0), (0.25, 2.0), (0.5, 1.0), (0.75, 3.0), (1.0, 0.0)])
        .unwrap()
}

/// `(0,1) (1/2,0) (1,2)`: violates the root condition at both ends.
pub fn p1() -> SampledPath {
    SampledPath::from_pairs(&[(0.0, 1.0), (0.5, 0.0), (1.0, 2.0)]).unwrap()
}

pub fn monotone() -> SampledPath {
    SampledPath::from_pairs(&[(0.0, 0.0), (1.0, 1.0)]).unwrap()
}

/// `teeth` unit teeth: `0 -> 1 -> 0 -> ... -> 0`.
pub fn zigzag(teeth: usize) -> SampledPath {
    let values = (0..=2 * teeth).map(|k| (k % 2) as f64).collect();
    SampledPath::uniform(values).unwrap()
}
