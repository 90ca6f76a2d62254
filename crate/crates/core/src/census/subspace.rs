//! Subspaces of `F_p^n` as canonical reduced row-echelon bases, enumerated
//! cell by cell (one cell per pivot pattern).

use crate::error::{Error, Result};
use crate::ffield::{FpMatrix, PrimeField};

/// Largest ambient dimension the enumerators accept.
pub const MAX_ENUM_DIM: usize = 7;

/// A `k`-dimensional subspace of `F_p^n`, stored by its RREF basis, so two
/// values are equal iff they are the same subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    k: usize,
    n: usize,
    basis: FpMatrix,
}

impl Subspace {
    /// The span of the rows of `m`; rows must be independent.
    pub fn from_spanning_rows(m: &FpMatrix) -> Result<Self> {
        let (rref, pivots) = m.rref();
        if pivots.len() != m.rows() {
            return Err(Error::Domain(format!(
                "{} rows span only a {}-dimensional space",
                m.rows(),
                pivots.len()
            )));
        }
        Ok(Subspace {
            k: m.rows(),
            n: m.cols(),
            basis: rref,
        })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.k)
            .map(|r| (0..self.n).find(|&c| self.basis.raw(r, c) != 0).expect("rank k"))
            .collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows: Vec<Vec<i64>> = (0..self.k)
            .map(|r| self.basis.row(r).iter().map(|&x| x as i64).collect())
            .collect();
        rows.push(v.iter().map(|&x| x as i64).collect());
        FpMatrix::from_rows(self.basis.field(), &rows)
            .map(|m| m.rank() == self.k)
            .unwrap_or(false)
    }
}

fn check_params(k: usize, n: usize, field: PrimeField) -> Result<()> {
    if k > n || n > MAX_ENUM_DIM {
        return Err(Error::Domain(format!(
            "subspace enumeration needs 0 <= k <= n <= {MAX_ENUM_DIM}, got k={k}, n={n}"
        )));
    }
    if field.modulus() > 7 {
        return Err(Error::Domain(format!(
            "subspace enumeration supports p in {{2,3,5,7}}, got {}",
            field.modulus()
        )));
    }
    Ok(())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn pivot_patterns(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            if n - c < k - cur.len() {
                break;
            }
            cur.push(c);
            rec(c + 1, k, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, n, &mut Vec::new(), &mut out);
    out
}

/// Positions `(row, col)` free in the RREF cell with the given pivots:
/// right of the row's pivot and not in a pivot column.
fn free_positions(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &c) in pivots.iter().enumerate() {
        for j in c + 1..n {
            if !pivots.contains(&j) {
                out.push((r, j));
            }
        }
    }
    out
}

/// Advances the entries of `data` at `idx` as a little-endian base-`p`
/// counter. Returns `false` after wrapping back to all zeros.
#[inline]
pub(crate) fn odometer_step(data: &mut [u32], idx: &[usize], p: u32) -> bool {
    for &i in idx {
        data[i] += 1;
        if data[i] < p {
            return true;
        }
        data[i] = 0;
    }
    false
}

/// Streams every `k`-dimensional subspace of `F_p^n` exactly once.
pub fn enum_subspaces(k: usize, n: usize, field: PrimeField) -> Result<SubspaceIter> {
    check_params(k, n, field)?;
    let mut patterns = pivot_patterns(k, n);
    patterns.reverse();
    Ok(SubspaceIter {
        field,
        k,
        n,
        patterns,
        current: None,
    })
}

pub struct SubspaceIter {
    field: PrimeField,
    k: usize,
    n: usize,
    /// Remaining pivot patterns, popped from the back.
    patterns: Vec<Vec<usize>>,
    current: Option<(Vec<u32>, Vec<usize>, bool)>,
}

impl SubspaceIter {
    fn start_cell(&mut self) -> bool {
        let Some(pivots) = self.patterns.pop() else {
            return false;
        };
        let mut data = vec![0u32; self.k * self.n];
        for (r, &c) in pivots.iter().enumerate() {
            data[r * self.n + c] = 1;
        }
        let idx = free_positions(&pivots, self.n)
            .into_iter()
            .map(|(r, c)| r * self.n + c)
            .collect();
        self.current = Some((data, idx, true));
        true
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            if self.current.is_none() && !self.start_cell() {
                return None;
            }
            let p = self.field.modulus();
            let (data, idx, fresh) = self.current.as_mut().unwrap();
            if *fresh || odometer_step(data, idx, p) {
                *fresh = false;
                let basis = FpMatrix::from_raw(self.field, self.k, self.n, data.clone())
                    .expect("shape matches");
                return Some(Subspace {
                    k: self.k,
                    n: self.n,
                    basis,
                });
            }
            self.current = None;
        }
    }
}

/// Walks the 2-planes in the RREF cell with pivots `(a, b)`: the first basis
/// row `u` has `u_a = 1`, `u_b = 0`; the second `v` has `v_b = 1` and leading
/// zeros. `on_u` runs once per `u` and its result is handed to every `v`.
pub(crate) fn walk_plane_cell<U>(
    field: PrimeField,
    n: usize,
    (a, b): (usize, usize),
    mut on_u: impl FnMut(&[u32]) -> U,
    mut on_v: impl FnMut(&U, &[u32], &[u32]),
) {
    let p = field.modulus();
    let mut u = vec![0u32; n];
    let mut v = vec![0u32; n];
    u[a] = 1;
    v[b] = 1;
    let u_free: Vec<usize> = (a + 1..n).filter(|&j| j != b).collect();
    let v_free: Vec<usize> = (b + 1..n).collect();
    loop {
        let state = on_u(&u);
        loop {
            on_v(&state, &u, &v);
            if !odometer_step(&mut v, &v_free, p) {
                break;
            }
        }
        if !odometer_step(&mut u, &u_free, p) {
            break;
        }
    }
}

/// Pivot pairs of the 2-plane cells of `F_p^n`.
pub(crate) fn plane_cells(n: usize) -> Vec<(usize, usize)> {
    pivot_patterns(2, n).into_iter().map(|c| (c[0], c[1])).collect()
}

/// Calls `f` on the normalized representative of every line of `F_p^n`
/// (first nonzero entry equal to 1) whose first `skip` coordinates vanish.
pub(crate) fn for_each_line(field: PrimeField, n: usize, skip: usize, mut f: impl FnMut(&[u32])) {
    let p = field.modulus();
    for lead in skip..n {
        let mut v = vec![0u32; n];
        v[lead] = 1;
        let free: Vec<usize> = (lead + 1..n).collect();
        loop {
            f(&v);
            if !odometer_step(&mut v, &free, p) {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::gaussian_binomial;
    use num_bigint::BigInt;
    use std::collections::HashSet;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn planes_of_f2_7() {
        assert_eq!(enum_subspaces(2, 7, field(2)).unwrap().count(), 2667);
    }

    #[test]
    fn zero_space_and_lines() {
        let zero: Vec<_> = enum_subspaces(0, 4, field(3)).unwrap().collect();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].dim(), 0);

        let lines: Vec<_> = enum_subspaces(1, 3, field(2)).unwrap().collect();
        assert_eq!(lines.len(), 7);
        let reps: HashSet<Vec<u32>> = lines.iter().map(|l| l.basis().row(0).to_vec()).collect();
        let expected: HashSet<Vec<u32>> = (1u32..8)
            .map(|m| (0..3).map(|i| (m >> (2 - i)) & 1).collect())
            .collect();
        assert_eq!(reps, expected);
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        for p in [2u64, 3, 5] {
            for n in 0..=7 {
                for k in 0..=n {
                    let expected = gaussian_binomial(k, n).unwrap().eval(p);
                    // Keep the p = 5 sweep to cells below ~10^6 subspaces.
                    if expected > BigInt::from(2_000_000) {
                        continue;
                    }
                    let got = enum_subspaces(k, n, field(p)).unwrap().count();
                    assert_eq!(BigInt::from(got), expected, "k={k} n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn enumeration_is_duplicate_free_and_canonical() {
        let f = field(3);
        let all: Vec<_> = enum_subspaces(2, 4, f).unwrap().collect();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            let again = Subspace::from_spanning_rows(s.basis()).unwrap();
            assert_eq!(&again, s);
        }
        // A different spanning set of the same plane canonicalizes identically.
        let m = FpMatrix::from_rows(f, &[vec![1, 1, 0, 2], vec![2, 0, 1, 1]]).unwrap();
        let s = Subspace::from_spanning_rows(&m).unwrap();
        let m2 = FpMatrix::from_rows(f, &[vec![0, 2, 2, 0], vec![1, 1, 0, 2]]).unwrap();
        assert_eq!(Subspace::from_spanning_rows(&m2).unwrap(), s);
        assert!(set.contains(&s));
        assert!(s.contains(&[0, 1, 1, 0]));
        assert!(!s.contains(&[1, 0, 0, 0]));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(enum_subspaces(3, 2, field(2)).is_err());
        assert!(enum_subspaces(2, 8, field(2)).is_err());
        assert!(enum_subspaces(2, 5, field(11)).is_err());
    }

    #[test]
    fn plane_cells_cover_the_grassmannian() {
        let f = field(3);
        let mut n_planes = 0;
        for cell in plane_cells(6) {
            walk_plane_cell(f, 6, cell, |_| (), |_, _, _| n_planes += 1);
        }
        assert_eq!(n_planes, enum_subspaces(2, 6, f).unwrap().count());
    }

    #[test]
    fn lines_helper() {
        let mut all = 0;
        for_each_line(field(5), 4, 0, |_| all += 1);
        assert_eq!(all, 156);
        let mut tail = 0;
        for_each_line(field(5), 4, 1, |v| {
            assert_eq!(v[0], 0);
            tail += 1;
        });
        assert_eq!(tail, 31);
    }
}
