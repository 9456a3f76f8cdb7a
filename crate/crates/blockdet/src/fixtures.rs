//! Small matrices with known block structure, shared by tests, benches and
//! docs. Handy as CLI input too (`blockdet gen` covers the general case).

use crate::matrix::Matrix;

/// 7x7 integer matrix whose digraph is a chain of three blocks
/// {1,2,3}, {2,4,5,6}, {6,7} glued at the cut-vertices 2 and 6.
/// Loops sit at vertices 2 (weight 5), 6 (-4) and 7 (3).
pub fn block_chain_7x7() -> Matrix {
    Matrix::from_i64_rows(&[
        &[0, 3, 2, 0, 0, 0, 0],
        &[-7, 5, -1, 1, -8, 0, 0],
        &[2, -1, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, -3, 0],
        &[0, 12, 0, 0, 0, 1, 0],
        &[0, 0, 0, 1, 1, -4, 2],
        &[0, 0, 0, 0, 0, 20, 3],
    ])
}

/// 8x8 extension of [`block_chain_7x7`] with one more block {6,8} attached at
/// vertex 6, so the cut-indices become T(2) = 2 and T(6) = 3.
pub fn block_star_8x8() -> Matrix {
    Matrix::from_i64_rows(&[
        &[0, 3, 2, 0, 0, 0, 0, 0],
        &[-7, 5, -1, 1, -8, 0, 0, 0],
        &[2, -1, 0, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, -3, 0, 0],
        &[0, 12, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 1, -4, 2, -2],
        &[0, 0, 0, 0, 0, 20, 3, 0],
        &[0, 0, 0, 0, 0, -2, 0, 10],
    ])
}

/// 3x3 matrix whose digraph is a path of two 2-vertex blocks sharing the
/// cut-vertex 2 (loop weight 2).
pub fn two_block_path_3x3() -> Matrix {
    Matrix::from_i64_rows(&[&[1, 1, 0], &[1, 2, 1], &[0, 1, 3]])
}
