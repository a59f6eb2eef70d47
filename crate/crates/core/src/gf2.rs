//! Dense GF(2) elimination on bit-packed rows.

use crate::bitrow::BitRow;

/// Rank of the matrix whose rows are given. All rows must share one length.
pub fn rank(rows: &[BitRow]) -> usize {
    let mut rows: Vec<BitRow> = rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    let Some(ncols) = rows.first().map(BitRow::len) else {
        return 0;
    };
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rank of a small matrix whose rows fit in a `u64`.
pub fn rank_u64(rows: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut r = 0;
    for &row in rows {
        let mut v = row;
        for b in (0..64).rev() {
            if v >> b & 1 == 0 {
                continue;
            }
            if basis[b] == 0 {
                basis[b] = v;
                r += 1;
                break;
            }
            v ^= basis[b];
        }
    }
    r
}
