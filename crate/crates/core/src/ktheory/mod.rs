//! The stable matrix of a finite system, Smith normal form over the integers,
//! and `K₀`, `K₁` of the associated algebra.
//!
//! The map `Id − [π_r]` sends the indicator of a regular atom `a` to
//! `χ_a − Σ_{ℓ∈Δ_a} χ_{θ_ℓ(a)}`. Its cokernel is `K₀` and its kernel is `K₁`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dynamics::System;

/// Errors of the K-theory layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KError {
    /// Only the finite backend has a finite atom basis.
    #[error("K-theory needs the finite backend; quotient the system first")]
    UnsupportedBackend,
}

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    /// Number of rows.
    pub rows: usize,
    /// Number of columns.
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    /// The `rows × cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    /// The identity of size `n`.
    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    /// Build from small entries; all rows must have `cols` entries.
    pub fn from_rows(rows: usize, cols: usize, data: &[&[i64]]) -> IntMatrix {
        assert_eq!(data.len(), rows);
        let entries = data
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        IntMatrix { rows, cols, entries }
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    /// Matrix product.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += &self.entries[i][k] * &other.entries[k][j];
                }
            }
        }
        out
    }

    /// Whether only diagonal entries can be nonzero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    /// Determinant of a square matrix, by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<_> = row.iter().map(|x| alloc::format!("{x:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The stable matrix: rows are all atoms, one column per regular atom `a`,
/// equal to `e_a − Σ_{ℓ∈Δ_a} χ_{θ_ℓ(a)}`.
pub fn stable_matrix(sys: &System) -> Result<IntMatrix, KError> {
    if !sys.is_finite() {
        return Err(KError::UnsupportedBackend);
    }
    let n = sys.atom_count();
    let regular: Vec<usize> = sys.regular_atoms().atom_set().iter().copied().collect();
    let mut m = IntMatrix::zeros(n, regular.len());
    for (c, &a) in regular.iter().enumerate() {
        m.entries[a][c] += 1;
        for l in 0..sys.label_count() {
            for &b in sys.atom_image(l, a) {
                m.entries[b][c] -= 1;
            }
        }
    }
    Ok(m)
}

/// A Smith decomposition `U·M·V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Left unimodular factor.
    pub u: IntMatrix,
    /// Diagonal with nonnegative entries, each dividing the next.
    pub d: IntMatrix,
    /// Right unimodular factor.
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.entries[i][i].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in &mut m.entries {
        row.swap(a, b);
    }
}

/// `row[dst] -= q·row[src]`.
fn row_sub(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols {
        let v = &m.entries[src][j] * q;
        m.entries[dst][j] -= v;
    }
}

fn col_sub(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for row in &mut m.entries {
        let v = &row[src] * q;
        row[dst] -= v;
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
///
/// Every call checks `U·M·V = D`, the divisibility chain and `|det U| = |det V| = 1`.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block, first in row-then-column order
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d.entries[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.entries[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.entries.swap(t, pi);
            u.entries.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = d.entries[i][t].div_floor(&d.entries[t][t]);
                if !q.is_zero() {
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                }
                clean &= d.entries[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = d.entries[t][j].div_floor(&d.entries[t][t]);
                if !q.is_zero() {
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                }
                clean &= d.entries[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let p = d.entries[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.entries[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_sub(&mut d, t, i, &one);
                    row_sub(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d.entries[t][t].is_negative() {
            for j in 0..cols {
                d.entries[t][j] = -&d.entries[t][j];
            }
            for j in 0..rows {
                u.entries[t][j] = -&u.entries[t][j];
            }
        }
    }
    let snf = Snf { u, d, v };
    assert!(snf.u.mul(m).mul(&snf.v) == snf.d, "U·M·V ≠ D");
    assert!(snf.d.is_diagonal());
    let diag = snf.diagonal();
    for w in diag.windows(2) {
        assert!(!w[0].is_negative() && (w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0]))));
    }
    assert!(snf.u.det().abs().is_one() && snf.v.det().abs().is_one(), "factor not unimodular");
    snf
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    /// Free rank.
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(alloc::format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// `K₀` and `K₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGroups {
    /// `K₀ = Coker(Id − [π_r])`.
    pub k0: AbelianGroup,
    /// `K₁ = Ker(Id − [π_r])`.
    pub k1: AbelianGroup,
}

/// K-groups from a stable matrix with `rows` atoms and `cols` regular atoms.
pub fn k_groups_of(m: &IntMatrix) -> KGroups {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let torsion: Vec<BigInt> = snf.diagonal().into_iter().filter(|x| *x > BigInt::one()).collect();
    let k1 = AbelianGroup { rank: m.cols - r, torsion: Vec::new() };
    assert_eq!(k1.rank + r, m.cols);
    KGroups { k0: AbelianGroup { rank: m.rows - r, torsion }, k1 }
}

/// `K₀` and `K₁` of a finite system.
pub fn k_groups(sys: &System) -> Result<KGroups, KError> {
    Ok(k_groups_of(&stable_matrix(sys)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fixtures::*;

    #[test]
    fn stable_matrices() {
        assert_eq!(stable_matrix(&s2()).unwrap(), IntMatrix::from_rows(1, 1, &[&[-1]]));
        assert_eq!(stable_matrix(&s3()).unwrap(), IntMatrix::from_rows(1, 1, &[&[0]]));
        assert_eq!(stable_matrix(&s1()).unwrap(), IntMatrix::from_rows(2, 1, &[&[0], &[-1]]));
        assert_eq!(stable_matrix(&s4()), Err(KError::UnsupportedBackend));
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&IntMatrix::from_rows(1, 1, &[&[-1]]));
        assert_eq!(s.diagonal(), [BigInt::one()]);
        let s = smith_normal_form(&IntMatrix::from_rows(2, 2, &[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), [BigInt::from(1), BigInt::from(6)]);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).d, z);
        let s = smith_normal_form(&IntMatrix::from_rows(3, 2, &[&[4, 6], &[6, 9], &[2, 8]]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn examples() {
        let g = k_groups(&s2()).unwrap();
        assert_eq!((g.k0.rank, g.k1.rank), (0, 0));
        assert!(g.k0.torsion.is_empty());
        let g = k_groups(&s3()).unwrap();
        assert_eq!((g.k0.rank, g.k1.rank), (1, 1));
        // S1: coker of (0,-1)ᵀ in Z² is Z
        let g = k_groups(&s1()).unwrap();
        assert_eq!((g.k0.rank, g.k1.rank), (1, 0));
        assert_eq!(g.k0.to_string(), "Z");
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::from_rows(2, 2, &[&[2, 1], &[7, 4]]).det(), BigInt::one());
        assert_eq!(IntMatrix::from_rows(3, 3, &[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).det(), BigInt::from(-2));
    }
}
