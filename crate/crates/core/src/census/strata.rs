//! Point-count version of the three-case decomposition of the fiber over a
//! rank-4 form.

use serde::{Deserialize, Serialize};

use super::count::{count_isotropic_planes, row_times, vanishes};
use super::subspace::{for_each_line, plane_cells, walk_plane_cell, MAX_ENUM_DIM};
use crate::error::{Error, Result};
use crate::ffield::SkewForm;

/// Per-case line counts and per-line fiber sizes for a rank-4 form, in the
/// basis where it is standard: `ω(e1,e3) = ω(e2,e4) = 1`, hyperplane
/// `Hp = <e2,...,e7>`, `F = <e3,...,e7>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataCensus {
    pub p: u32,
    /// Lines `D ⊂ Hp` inside `ker ω`.
    pub case1_lines: u64,
    /// Lines inside `ker(ω|Hp)` but not `ker ω`.
    pub case2_lines: u64,
    /// Remaining lines of `P Hp`.
    pub case3_lines: u64,
    /// Isotropic planes `T ⊄ Hp` with `T ∩ Hp = D`, for each case-1 line.
    pub case1_fiber: u64,
    pub case2_fiber: u64,
    pub case3_fiber: u64,
    /// Isotropic planes inside `Hp`.
    pub g2h_count: u64,
    /// `Σ lines * fiber + g2h_count`.
    pub total: u64,
    /// `count_isotropic_planes` on the original form.
    pub direct: u64,
}

/// Stratifies the isotropic planes of a rank-4 form on `F_p^n`.
///
/// The form is first moved to standard position by its congruence normal
/// form; `direct` is counted on the form as given.
pub fn stratify_rank4_fiber(form: &SkewForm) -> Result<StrataCensus> {
    let n = form.dim();
    if n > MAX_ENUM_DIM {
        return Err(Error::Domain(format!("strata census needs n <= {MAX_ENUM_DIM}")));
    }
    let nf = form.congruence_normal_form();
    if nf.rank != 4 {
        return Err(Error::RankMismatch {
            expected: 4,
            found: nf.rank,
        });
    }
    let std = form.congruent(&nf.basis)?;
    let field = std.field();
    let p = field.modulus();
    let m = std.matrix().data();

    // Planes with pivot in column 0 leave Hp = {x_0 = 0}; their second RREF
    // row v spans T ∩ Hp and is already the normalized line representative.
    let code = |v: &[u32]| v.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize);
    let mut per_line = vec![0u64; (p as usize).pow(n as u32)];
    let mut g2h = 0u64;
    for cell in plane_cells(n) {
        let leaves_hyperplane = cell.0 == 0;
        walk_plane_cell(
            field,
            n,
            cell,
            |u| row_times(u, m, n, p),
            |w, _, v| {
                if vanishes(w, v, p) {
                    if leaves_hyperplane {
                        per_line[code(v)] += 1;
                    } else {
                        g2h += 1;
                    }
                }
            },
        );
    }

    let mut lines = [0u64; 3];
    let mut fibers: [Option<u64>; 3] = [None; 3];
    let mut uniform = [true; 3];
    for_each_line(field, n, 1, |v| {
        let image = row_times(v, m, n, p);
        let case = if image.iter().all(|&x| x == 0) {
            0
        } else if image[1..].iter().all(|&x| x == 0) {
            1
        } else {
            2
        };
        lines[case] += 1;
        let here = per_line[code(v)];
        match fibers[case] {
            None => fibers[case] = Some(here),
            Some(seen) if seen != here => uniform[case] = false,
            _ => {}
        }
    });
    const NAMES: [&str; 3] = ["case-1", "case-2", "case-3"];
    for case in 0..3 {
        if !uniform[case] {
            return Err(Error::NonUniformFiber { case: NAMES[case] });
        }
    }
    let fiber = |c: usize| fibers[c].unwrap_or(0);
    let total = (0..3).map(|c| lines[c] * fiber(c)).sum::<u64>() + g2h;
    Ok(StrataCensus {
        p,
        case1_lines: lines[0],
        case2_lines: lines[1],
        case3_lines: lines[2],
        case1_fiber: fiber(0),
        case2_fiber: fiber(1),
        case3_fiber: fiber(2),
        g2h_count: g2h,
        total,
        direct: count_isotropic_planes(form),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{FpMatrix, PrimeField};
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    #[test]
    fn standard_form_over_f2() {
        let f = PrimeField::new(2).unwrap();
        let s = stratify_rank4_fiber(&SkewForm::standard(f, 7, 4).unwrap()).unwrap();
        assert_eq!((s.case1_lines, s.case2_lines, s.case3_lines), (7, 8, 48));
        assert_eq!((s.case1_fiber, s.case2_fiber, s.case3_fiber), (32, 0, 16));
        assert_eq!(s.g2h_count, 395);
        assert_eq!(s.total, 1387);
        assert_eq!(s.direct, 1387);
    }

    #[test]
    fn moved_form_stratifies_the_same() {
        let f = PrimeField::new(3).unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(4);
        let std = SkewForm::standard(f, 7, 4).unwrap();
        let reference = stratify_rank4_fiber(&std).unwrap();
        for _ in 0..3 {
            let basis = FpMatrix::random_invertible(f, 7, &mut rng);
            let moved = std.congruent(&basis).unwrap();
            assert_eq!(stratify_rank4_fiber(&moved).unwrap(), reference);
        }
        assert_eq!(reference.case1_lines, 13);
        assert_eq!(reference.case1_fiber, 243);
        assert_eq!(reference.case3_fiber, 81);
    }

    #[test]
    fn rejects_other_ranks() {
        let f = PrimeField::new(3).unwrap();
        let six = SkewForm::standard(f, 7, 6).unwrap();
        assert_eq!(
            stratify_rank4_fiber(&six),
            Err(Error::RankMismatch { expected: 4, found: 6 })
        );
    }
}
