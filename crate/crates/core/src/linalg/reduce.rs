use nalgebra::DMatrix;

/// Reduced row echelon form: row `k` has a unit entry in column `pivots[k]`
/// and every other row is zero there.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rows: DMatrix<f64>,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination visiting columns in `column_order`, with partial
/// pivoting inside each column. Candidates with `|a| ≤ pivot_tol·max|A|` are
/// not used as pivots; afterwards entries before a row's pivot (in column
/// order) and entries below `cleanup·max|row|` are zeroed.
pub fn reduce_rows(rows: &DMatrix<f64>, column_order: &[usize], pivot_tol: f64, cleanup: f64) -> RowReduction {
    let (r, c) = rows.shape();
    debug_assert_eq!(column_order.len(), c);
    let mut a = rows.clone();
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut pivots = Vec::new();
    let mut next = 0;
    if scale > 0.0 {
        for &col in column_order {
            if next == r {
                break;
            }
            let (best, val) = (next..r)
                .map(|i| (i, a[(i, col)]))
                .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
                .expect("nonempty range");
            if val.abs() <= pivot_tol * scale {
                continue;
            }
            a.swap_rows(best, next);
            let inv = 1.0 / val;
            a.row_mut(next).scale_mut(inv);
            a[(next, col)] = 1.0;
            for i in 0..r {
                if i != next {
                    let f = a[(i, col)];
                    if f != 0.0 {
                        for j in 0..c {
                            let v = a[(next, j)];
                            a[(i, j)] -= f * v;
                        }
                        a[(i, col)] = 0.0;
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
    }
    let mut out = a.rows(0, next).into_owned();
    let mut rank_in_order = vec![0; c];
    for (k, &col) in column_order.iter().enumerate() {
        rank_in_order[col] = k;
    }
    for (k, &p) in pivots.iter().enumerate() {
        for j in 0..c {
            if rank_in_order[j] < rank_in_order[p] {
                out[(k, j)] = 0.0;
            }
        }
        let big = out.row(k).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for j in 0..c {
            if out[(k, j)].abs() < cleanup * big {
                out[(k, j)] = 0.0;
            }
        }
        for (k2, &p2) in pivots.iter().enumerate() {
            out[(k, p2)] = if k2 == k { 1.0 } else { 0.0 };
        }
        debug_assert_eq!(out[(k, p)], 1.0);
    }
    RowReduction { rows: out, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_reversed_columns() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let red = reduce_rows(&a, &[1, 0], 1e-12, 0.0);
        assert_eq!(red.pivots, vec![1, 0]);
        assert_eq!(red.rows, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
    }

    #[test]
    fn zero_row_dropped() {
        let a = DMatrix::from_row_slice(1, 3, &[0.0, 0.0, 0.0]);
        let red = reduce_rows(&a, &[0, 1, 2], 1e-12, 0.0);
        assert!(red.pivots.is_empty());
        assert_eq!(red.rows.nrows(), 0);
    }

    #[test]
    fn distinct_leading_monomials() {
        // columns (1, x, x²); rows x + x² and x²; grevlex-descending is x², x, 1
        let a = DMatrix::from_row_slice(2, 3, &[0.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
        let red = reduce_rows(&a, &[2, 1, 0], 1e-12, 0.0);
        let mut p = red.pivots.clone();
        p.sort();
        assert_eq!(p, vec![1, 2]);
        for k in 0..2 {
            let nonzero: Vec<usize> = (0..3).filter(|&j| red.rows[(k, j)] != 0.0).collect();
            assert_eq!(nonzero, vec![red.pivots[k]]);
        }
    }
}
