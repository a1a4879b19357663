//! Shared base-matrix fixtures for unit tests.
//!
//! The optimized 4x8 and 8x16 matrices are frozen reference designs for
//! rate-1/2 ensembles; their thresholds and degree data are pinned in the
//! tests that use them.

use crate::proto::BaseMatrix;

/// Rate-1/4 example template (3 checks, 4 variables).
pub fn example_3x4() -> BaseMatrix {
    BaseMatrix::from_rows(&[&[1, 1, 1, 0], &[1, 1, 1, 1], &[0, 1, 1, 1]])
}

/// Regular (3,6) ensemble as a one-check protograph.
pub fn regular_3_6() -> BaseMatrix {
    BaseMatrix::from_rows(&[&[3, 3]])
}

/// Optimized rate-1/2 design, 4 checks by 8 variables.
pub fn opt_4x8() -> BaseMatrix {
    BaseMatrix::from_rows(&[
        &[1, 2, 2, 3, 4, 1, 1, 0],
        &[0, 1, 0, 0, 5, 0, 0, 1],
        &[1, 0, 0, 0, 3, 0, 4, 1],
        &[1, 0, 1, 0, 6, 1, 0, 0],
    ])
}

/// Optimized rate-1/2 design, 8 checks by 16 variables.
pub fn opt_8x16() -> BaseMatrix {
    BaseMatrix::from_rows(&[
        &[1, 2, 0, 0, 1, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 1],
        &[0, 1, 0, 0, 0, 1, 0, 0, 2, 2, 1, 0, 0, 0, 1, 1],
        &[0, 3, 1, 2, 1, 0, 0, 0, 4, 0, 0, 3, 2, 2, 0, 3],
        &[0, 5, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 1, 0, 0],
        &[1, 3, 1, 1, 1, 2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        &[1, 5, 0, 0, 0, 3, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        &[0, 4, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1],
        &[0, 5, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0],
    ])
}

/// Rate-1/2 template produced by splitting a 12-socket partition pair.
pub fn split_2x4() -> BaseMatrix {
    BaseMatrix::from_rows(&[&[1, 1, 1, 3], &[1, 2, 2, 1]])
}
