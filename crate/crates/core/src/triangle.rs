use alloc::vec;
use alloc::vec::Vec;

/// Dense upper-triangular table over fencepost pairs `0 <= i <= j <= n`,
/// stored diagonal by diagonal (all spans of width 0, then width 1, ...) so the
/// width-major chart schedule walks memory sequentially.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Triangle<T> {
    n: usize,
    cells: Vec<T>,
}

/// Number of cells for sentence length `n`.
pub(crate) const fn triangle_len(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Offset of `(i, j)`: diagonals `0..w` hold `n + 1 - v` cells each.
#[inline(always)]
pub(crate) const fn triangle_index(n: usize, i: usize, j: usize) -> usize {
    let w = j - i;
    w * (n + 1) - w * (w.wrapping_sub(1)) / 2 + i
}

impl<T: Copy> Triangle<T> {
    pub(crate) fn new(n: usize, fill: T) -> Self {
        Triangle { n, cells: vec![fill; triangle_len(n)] }
    }

    /// Zero-sized table, for item kinds an algorithm does not use.
    pub(crate) fn unused(fill: T) -> Self {
        Triangle { n: 0, cells: vec![fill] }
    }

    #[inline(always)]
    pub(crate) fn get(&self, i: usize, j: usize) -> T {
        debug_assert!(i <= j && j <= self.n);
        self.cells[triangle_index(self.n, i, j)]
    }

    #[inline(always)]
    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        debug_assert!(i <= j && j <= self.n);
        &mut self.cells[triangle_index(self.n, i, j)]
    }
}
