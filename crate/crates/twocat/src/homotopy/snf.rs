//! Smith normal form over the integers, with enough bookkeeping to decide
//! membership in the row lattice of the original matrix.

/// Diagonalisation result. `diag` holds the invariant factors (positive,
/// each dividing the next), `right` the accumulated column transform `V`
/// with `U * M * V = diag`, so `v` lies in the row lattice of `M` exactly
/// when `v * V` is a diagonal combination.
#[derive(Clone, Debug)]
pub struct Snf {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<i128>,
    right: Vec<Vec<i128>>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Invariant factors different from 1, i.e. the torsion part of the
    /// cokernel.
    pub fn torsion(&self) -> Vec<i128> {
        self.diag.iter().copied().filter(|&d| d != 1).collect()
    }

    /// Free rank of the cokernel.
    pub fn coker_free_rank(&self) -> usize {
        self.cols - self.diag.len()
    }

    /// True when the cokernel is the trivial group.
    pub fn coker_trivial(&self) -> bool {
        self.coker_free_rank() == 0 && self.torsion().is_empty()
    }

    /// Whether `v` is an integer combination of the matrix rows.
    pub fn in_row_lattice(&self, v: &[i128]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        let mut w = vec![0i128; self.cols];
        for (j, wj) in w.iter_mut().enumerate() {
            for (i, &vi) in v.iter().enumerate() {
                *wj += vi * self.right[i][j];
            }
        }
        for (j, &wj) in w.iter().enumerate() {
            match self.diag.get(j) {
                Some(&d) => {
                    if wj % d != 0 {
                        return false;
                    }
                }
                None => {
                    if wj != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A canonical coordinate vector for `v` modulo the row lattice: two
    /// vectors get the same residue exactly when their difference is an
    /// integer combination of the matrix rows. Useful for classifying many
    /// vectors without a quadratic number of membership tests.
    pub fn row_lattice_residue(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        let mut w = vec![0i128; self.cols];
        for (j, wj) in w.iter_mut().enumerate() {
            for (i, &vi) in v.iter().enumerate() {
                *wj += vi * self.right[i][j];
            }
        }
        for (j, wj) in w.iter_mut().enumerate() {
            if let Some(&d) = self.diag.get(j) {
                *wj = wj.rem_euclid(d);
            }
        }
        w
    }
}

/// Computes the Smith normal form by Euclidean pivoting. Row operations are
/// free (they keep the row lattice); column operations are mirrored into the
/// accumulated `V`.
// Row and column reductions address two rows at once; index loops keep the
// matrix coordinates visible.
#[allow(clippy::needless_range_loop)]
pub fn smith_normal_form(rows: usize, cols: usize, entries: &[i128]) -> Snf {
    assert_eq!(entries.len(), rows * cols);
    let mut m: Vec<Vec<i128>> = (0..rows)
        .map(|i| entries[i * cols..(i + 1) * cols].to_vec())
        .collect();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let swap_cols = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in v.iter_mut() {
            row.swap(a, b);
        }
    };
    let add_col =
        |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, src: usize, dst: usize, k: i128| {
            for row in m.iter_mut() {
                row[dst] += k * row[src];
            }
            for row in v.iter_mut() {
                row[dst] += k * row[src];
            }
        };
    let negate_col = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, a: usize| {
        for row in m.iter_mut() {
            row[a] = -row[a];
        }
        for row in v.iter_mut() {
            row[a] = -row[a];
        }
    };

    let mut t = 0;
    while t < rows && t < cols {
        // Find the entry of least absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        if pj != t {
            swap_cols(&mut m, &mut v, t, pj);
        }
        if m[t][t] < 0 {
            negate_col(&mut m, &mut v, t);
        }

        // Clear the pivot row and column by Euclidean steps; a nonzero
        // remainder becomes the new, strictly smaller pivot.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t].div_euclid(m[t][t]);
                    for j in 0..cols {
                        m[i][j] -= q * m[t][j];
                    }
                    if m[i][t] != 0 {
                        m.swap(t, i);
                        if m[t][t] < 0 {
                            negate_col(&mut m, &mut v, t);
                        }
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j].div_euclid(m[t][t]);
                    add_col(&mut m, &mut v, t, j, -q);
                    if m[t][j] != 0 {
                        swap_cols(&mut m, &mut v, t, j);
                        if m[t][t] < 0 {
                            negate_col(&mut m, &mut v, t);
                        }
                        dirty = true;
                    }
                }
            }
        }

        // Divisibility: the pivot must divide everything that remains.
        let d = m[t][t];
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j] % d != 0);
        if let Some((i, _)) = offender {
            for j in 0..cols {
                let x = m[i][j];
                m[t][j] += x;
            }
            continue; // redo this pivot with the merged row
        }
        t += 1;
    }

    let diag: Vec<i128> = (0..t).map(|i| m[i][i]).collect();
    debug_assert!(diag.iter().all(|&d| d > 0));
    debug_assert!(diag.windows(2).all(|w| w[1] % w[0] == 0));
    Snf {
        rows,
        cols,
        diag,
        right: v,
    }
}
