//! Integer Smith normal form and homology of finite chain complexes. All
//! arithmetic is exact over i128 with overflow checks; an overflow is a hard
//! error, never a silent wrap.

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i128>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub rank: usize,
    /// Nonzero diagonal entries `d₁ | d₂ | …`, positive.
    pub invariant_factors: Vec<i128>,
}

fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("smith normal form"))
}

fn checked_sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow("smith normal form"))
}

/// Row-style Smith normal form by pivoting on minimal entries.
#[allow(clippy::needless_range_loop)] // rows are indexed in pairs
pub fn smith_normal_form(mut m: Matrix) -> Result<SnfResult> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut factors = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        // minimal nonzero entry of the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if m[i][j] != 0
                    && pivot.is_none_or(|(pi, pj): (usize, usize)| {
                        m[i][j].abs() < m[pi][pj].abs()
                    })
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if m[i][k] != 0 {
                    let q = m[i][k] / m[k][k];
                    for j in k..cols {
                        m[i][j] = checked_sub(m[i][j], checked_mul(q, m[k][j])?)?;
                    }
                    if m[i][k] != 0 {
                        // remainder left: bring the smaller entry to the pivot
                        m.swap(k, i);
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if m[k][j] != 0 {
                    let q = m[k][j] / m[k][k];
                    for row in m.iter_mut().skip(k) {
                        row[j] = checked_sub(row[j], checked_mul(q, row[k])?)?;
                    }
                    if m[k][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(k, j);
                        }
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let d = m[k][k];
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if m[i][j] % d != 0 {
                        for col in k..cols {
                            let add = m[i][col];
                            m[k][col] = m[k][col]
                                .checked_add(add)
                                .ok_or(Error::Overflow("smith normal form"))?;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        factors.push(m[k][k].abs());
        k += 1;
    }
    Ok(SnfResult {
        rank: factors.len(),
        invariant_factors: factors,
    })
}

/// One reduced homology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Orders of the finite cyclic summands (invariant factors > 1).
    pub torsion: Vec<i128>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Reduced integral homology of a chain complex given by its cell counts per
/// dimension and the boundary matrices `∂_d` (rows: (d−1)-cells, columns:
/// d-cells) for `d = 1..=top`. The augmentation over dimension 0 is implied.
pub fn reduced_homology_of_complex(
    cells_per_dim: &[usize],
    boundaries: &[Matrix],
) -> Result<Vec<HomologyGroup>> {
    let top = cells_per_dim.len();
    if top == 0 {
        return Ok(Vec::new());
    }
    assert_eq!(boundaries.len() + 1, top, "need one boundary matrix per positive dimension");
    let mut ranks = vec![0usize; top + 1];
    let mut torsions: Vec<Vec<i128>> = vec![Vec::new(); top + 1];
    // rank of the augmentation map ε : C₀ → ℤ
    ranks[0] = usize::from(cells_per_dim[0] > 0);
    for (d, matrix) in boundaries.iter().enumerate() {
        let snf = smith_normal_form(matrix.clone())?;
        ranks[d + 1] = snf.rank;
        torsions[d + 1] = snf
            .invariant_factors
            .into_iter()
            .filter(|&f| f > 1)
            .collect();
    }
    let mut out = Vec::with_capacity(top);
    for d in 0..top {
        // rank H̃_d = C_d − rank ∂_d − rank ∂_{d+1}
        let rank = cells_per_dim[d] - ranks[d] - ranks[d + 1];
        out.push(HomologyGroup {
            rank,
            torsion: torsions[d + 1].clone(),
        });
    }
    Ok(out)
}
