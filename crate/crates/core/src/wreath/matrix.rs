use std::fmt;

use crate::finsemi::{FiniteSemigroup, PartialTransformation};

const ZERO_ROW: u32 = u32::MAX;
/// Largest dimension and group order that fit the packed row encoding.
pub const MAX_DIM: usize = 0xFFFF;

/// Square matrix over `G⁰` with at most one non-zero entry per row.
///
/// Row `r` is packed as `col << 16 | g`, or `u32::MAX` for a zero row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowMonomialMatrix {
    rows: Box<[u32]>,
}

impl RowMonomialMatrix {
    pub fn zero(dim: usize) -> Self {
        RowMonomialMatrix { rows: vec![ZERO_ROW; dim].into_boxed_slice() }
    }

    /// Row `r` is `Some((column, group element))` or `None`.
    pub fn from_rows(rows: impl IntoIterator<Item = Option<(usize, usize)>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| match r {
                None => ZERO_ROW,
                Some((c, g)) => {
                    assert!(c < MAX_DIM && g <= MAX_DIM, "entry out of packed range");
                    ((c as u32) << 16) | g as u32
                }
            })
            .collect();
        RowMonomialMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn row(&self, r: usize) -> Option<(usize, usize)> {
        let v = self.rows[r];
        (v != ZERO_ROW).then_some(((v >> 16) as usize, (v & 0xFFFF) as usize))
    }

    pub fn rows(&self) -> impl Iterator<Item = Option<(usize, usize)>> + '_ {
        (0..self.dim()).map(|r| self.row(r))
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<usize> {
        self.row(r).filter(|&(col, _)| col == c).map(|(_, g)| g)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&v| v == ZERO_ROW)
    }

    /// Matrix product, entries multiplied in `group`.
    pub fn mul(&self, other: &Self, group: &FiniteSemigroup) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        let rows = self
            .rows
            .iter()
            .map(|&v| {
                if v == ZERO_ROW {
                    return ZERO_ROW;
                }
                let w = other.rows[(v >> 16) as usize];
                if w == ZERO_ROW {
                    ZERO_ROW
                } else {
                    let g = group.mul((v & 0xFFFF) as usize, (w & 0xFFFF) as usize) as u32;
                    (w & 0xFFFF_0000) | g
                }
            })
            .collect();
        RowMonomialMatrix { rows }
    }

    /// Underlying partial map on row indices.
    pub fn projection(&self) -> PartialTransformation {
        PartialTransformation::new(self.rows().map(|r| r.map(|(c, _)| c)))
    }

    /// Applies `f` to every non-zero entry.
    pub fn map_entries(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_rows(self.rows().map(|r| r.map(|(c, g)| (c, f(g)))))
    }

    /// `diag(d) · self`: row `r` multiplied on the left by `d[r]`.
    pub fn left_diagonal(&self, d: &[usize], group: &FiniteSemigroup) -> Self {
        Self::from_rows(self.rows().enumerate().map(|(r, x)| x.map(|(c, g)| (c, group.mul(d[r], g)))))
    }

    /// Square block `(i, j)` of size `b`, read from a flattened block matrix.
    pub fn block(&self, i: usize, j: usize, b: usize) -> Self {
        Self::from_rows((0..b).map(|r| {
            self.row(i * b + r)
                .filter(|&(c, _)| c / b == j)
                .map(|(c, g)| (c % b, g))
        }))
    }

    /// Flattens a `p × p` block matrix given by `(block row, block column,
    /// block)` triples with `b × b` blocks.
    pub fn from_blocks(p: usize, b: usize, blocks: &[(usize, usize, &RowMonomialMatrix)]) -> Self {
        let mut rows = vec![None; p * b];
        for &(i, j, m) in blocks {
            for (r, x) in m.rows().enumerate() {
                rows[i * b + r] = x.map(|(c, g)| (j * b + c, g));
            }
        }
        Self::from_rows(rows)
    }

    /// Non-zero blocks of a flattened block matrix as `(row, column, block)`.
    pub fn nonzero_blocks(&self, b: usize) -> Vec<(usize, usize, RowMonomialMatrix)> {
        let p = self.dim() / b;
        let mut out = Vec::new();
        for i in 0..p {
            if let Some(j) = (0..b).find_map(|r| self.row(i * b + r).map(|(c, _)| c / b)) {
                out.push((i, j, self.block(i, j, b)));
            }
        }
        out
    }

    /// Each block row meets at most one block column.
    pub fn is_block_row_monomial(&self, b: usize) -> bool {
        let p = self.dim() / b;
        (0..p).all(|i| {
            let mut cols = (0..b).filter_map(|r| self.row(i * b + r).map(|(c, _)| c / b));
            match cols.next() {
                None => true,
                Some(j) => cols.all(|c| c == j),
            }
        })
    }

    pub fn to_text(&self) -> String {
        self.rows()
            .map(|r| match r {
                None => "-".to_string(),
                Some((c, g)) => format!("{c}:{g}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for RowMonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text())
    }
}
