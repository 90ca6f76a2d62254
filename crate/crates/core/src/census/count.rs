//! Brute-force plane counts. Every 2-plane of `F_p^n` is visited; `ω(u, v)`
//! is evaluated on its RREF basis.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::subspace::{plane_cells, walk_plane_cell, MAX_ENUM_DIM};
use super::wspace::WSpace;
use crate::ffield::{PrimeField, SkewForm};

type Row = [u32; MAX_ENUM_DIM];

/// `uᵀ M` reduced mod `p`, for a row-major `n × n` matrix `M`.
#[inline]
pub(crate) fn row_times(u: &[u32], m: &[u32], n: usize, p: u32) -> Row {
    let mut w = [0u32; MAX_ENUM_DIM];
    for (i, &ui) in u.iter().enumerate() {
        if ui == 0 {
            continue;
        }
        let row = &m[i * n..(i + 1) * n];
        for j in 0..n {
            w[j] += ui * row[j];
        }
    }
    for x in w.iter_mut().take(n) {
        *x %= p;
    }
    w
}

#[inline]
pub(crate) fn vanishes(w: &Row, v: &[u32], p: u32) -> bool {
    let mut acc = 0u32;
    for (a, b) in w.iter().zip(v) {
        acc += a * b;
    }
    acc % p == 0
}

fn assert_dim(n: usize) {
    assert!(
        n <= MAX_ENUM_DIM,
        "plane census supports n <= {MAX_ENUM_DIM}, got {n}"
    );
}

/// Number of 2-planes `T ⊂ F_p^n` with `ω|_T = 0`.
///
/// # Panics
/// If `n > 7`.
pub fn count_isotropic_planes(form: &SkewForm) -> u64 {
    let n = form.dim();
    assert_dim(n);
    let f = form.field();
    let p = f.modulus();
    let m = form.matrix().data();
    plane_cells(n)
        .into_par_iter()
        .map(|cell| {
            let mut count = 0u64;
            walk_plane_cell(
                f,
                n,
                cell,
                |u| row_times(u, m, n, p),
                |w, _, v| {
                    if vanishes(w, v, p) {
                        count += 1;
                    }
                },
            );
            count
        })
        .sum()
}

/// Number of 2-planes of `F_p^n`.
pub fn count_planes(field: PrimeField, n: usize) -> u64 {
    assert_dim(n);
    plane_cells(n)
        .into_par_iter()
        .map(|cell| {
            let mut count = 0u64;
            walk_plane_cell(field, n, cell, |_| (), |_, _, _| count += 1);
            count
        })
        .sum()
}

/// `#P^(d-1)(F_p) = (p^d - 1)/(p - 1)`.
pub(crate) fn projective_points(p: u32, d: usize) -> u64 {
    (0..d).map(|i| (p as u64).pow(i as u32)).sum()
}

/// The `G(2,V)` side of the incidence census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneSide {
    /// Planes isotropic for every form.
    pub common_isotropic: u64,
    /// `Σ_T #P(ker(W -> Λ²T*))`.
    pub incidence: u64,
}

/// For each plane `T` evaluates every form on `T`. The restriction map
/// `W -> Λ²T* ≅ F_p` has a kernel of dimension `m` on common isotropic
/// planes and `m - 1` elsewhere.
pub fn plane_side(field: PrimeField, forms: &[SkewForm]) -> PlaneSide {
    let n = forms.first().map_or(0, SkewForm::dim);
    assert_dim(n);
    let p = field.modulus();
    let m = forms.len();
    let mats: Vec<&[u32]> = forms.iter().map(|w| w.matrix().data()).collect();
    let full = projective_points(p, m);
    let hyper = projective_points(p, m.saturating_sub(1));
    let (common, incidence) = plane_cells(n)
        .into_par_iter()
        .map(|cell| {
            let (mut common, mut incidence) = (0u64, 0u64);
            walk_plane_cell(
                field,
                n,
                cell,
                |u| mats.iter().map(|mat| row_times(u, mat, n, p)).collect::<Vec<_>>(),
                |ws, _, v| {
                    if ws.iter().all(|w| vanishes(w, v, p)) {
                        common += 1;
                        incidence += full;
                    } else {
                        incidence += hyper;
                    }
                },
            );
            (common, incidence)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    PlaneSide {
        common_isotropic: common,
        incidence,
    }
}

/// Number of planes isotropic for every form in `W` (`#X_W(F_p)`).
pub fn count_xw(w: &WSpace) -> u64 {
    plane_side(w.field(), w.forms()).common_isotropic
}

/// Number of points of `PW` of rank at most 4 (`#Y_W(F_p)`).
pub fn count_yw(w: &WSpace) -> u64 {
    w.form_ranks().iter().filter(|&&r| r <= 4).count() as u64
}

/// How `Σ_{ω ∈ PW} #{isotropic T}` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormCount {
    /// Brute-force plane census for every form of `PW`.
    Exhaustive,
    /// Brute-force census for the first form of each rank, reused for the
    /// other forms of that rank. Used at `p = 5`, where `PW` has 19531 points.
    FirstOfEachRank,
}

/// The `PW` side of the incidence census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSide {
    /// Forms of rank at most 4.
    pub low_rank: u64,
    /// `Σ_ω count_isotropic_planes(ω)`.
    pub incidence: u64,
    /// Rank -> number of forms of that rank.
    pub rank_histogram: BTreeMap<usize, u64>,
    /// Rank -> set of observed fiber counts.
    pub fibers: BTreeMap<usize, BTreeSet<u64>>,
}

pub fn form_side(w: &WSpace, strategy: FormCount) -> FormSide {
    let forms = w.projective_forms();
    let ranks: Vec<usize> = forms.par_iter().map(SkewForm::rank).collect();
    let counts: Vec<u64> = match strategy {
        FormCount::Exhaustive => forms.par_iter().map(count_isotropic_planes).collect(),
        FormCount::FirstOfEachRank => {
            let mut by_rank = BTreeMap::new();
            forms
                .iter()
                .zip(&ranks)
                .map(|(form, &r)| *by_rank.entry(r).or_insert_with(|| count_isotropic_planes(form)))
                .collect()
        }
    };
    let mut side = FormSide {
        low_rank: 0,
        incidence: 0,
        rank_histogram: BTreeMap::new(),
        fibers: BTreeMap::new(),
    };
    for (&r, &c) in ranks.iter().zip(&counts) {
        if r <= 4 {
            side.low_rank += 1;
        }
        side.incidence += c;
        *side.rank_histogram.entry(r).or_default() += 1;
        side.fibers.entry(r).or_default().insert(c);
    }
    side
}

/// `#H(F_p)` computed through both projections: `(via_planes, via_forms)`.
pub fn count_h(w: &WSpace, strategy: FormCount) -> (u64, u64) {
    let planes = plane_side(w.field(), w.forms());
    let forms = form_side(w, strategy);
    (planes.incidence, forms.incidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::subspace::enum_subspaces;
    use crate::ffield::FpMatrix;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Reference count through the generic subspace stream and `evaluate`.
    fn isotropic_by_stream(form: &SkewForm) -> u64 {
        enum_subspaces(2, form.dim(), form.field())
            .unwrap()
            .filter(|t| {
                let b = t.basis();
                form.evaluate(b.row(0), b.row(1)).unwrap().is_zero()
            })
            .count() as u64
    }

    #[test]
    fn fiber_counts_over_f2() {
        let f = field(2);
        assert_eq!(count_isotropic_planes(&SkewForm::standard(f, 7, 4).unwrap()), 1387);
        assert_eq!(count_isotropic_planes(&SkewForm::standard(f, 7, 6).unwrap()), 1323);
        assert_eq!(count_isotropic_planes(&SkewForm::zero(f, 7)), 2667);
        assert_eq!(count_planes(f, 7), 2667);
    }

    #[test]
    fn fast_walk_agrees_with_stream() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
        for p in [2, 3, 5] {
            let f = field(p);
            for n in [3, 4, 5] {
                for _ in 0..5 {
                    let w = SkewForm::random(f, n, &mut rng);
                    assert_eq!(count_isotropic_planes(&w), isotropic_by_stream(&w));
                }
            }
        }
        let f = field(2);
        for _ in 0..10 {
            let w = SkewForm::random(f, 7, &mut rng);
            assert_eq!(count_isotropic_planes(&w), isotropic_by_stream(&w));
        }
    }

    #[test]
    fn count_depends_only_on_rank() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(8);
        for p in [2, 3] {
            let f = field(p);
            let mut by_rank: BTreeMap<usize, BTreeSet<u64>> = BTreeMap::new();
            let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
            while seen.values().filter(|&&c| c >= 10).count() < 2 {
                let w = SkewForm::random(f, 7, &mut rng);
                let r = w.rank();
                if r < 4 {
                    continue;
                }
                *seen.entry(r).or_default() += 1;
                by_rank.entry(r).or_default().insert(count_isotropic_planes(&w));
            }
            for (r, counts) in by_rank {
                assert_eq!(counts.len(), 1, "p={p} rank={r}: {counts:?}");
            }
        }
    }

    #[test]
    fn congruence_preserves_count() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(9);
        let f = field(3);
        for _ in 0..20 {
            let w = SkewForm::random(f, 7, &mut rng);
            let basis = FpMatrix::random_invertible(f, 7, &mut rng);
            let moved = w.congruent(&basis).unwrap();
            assert_eq!(count_isotropic_planes(&w), count_isotropic_planes(&moved));
        }
    }

    #[test]
    fn degenerate_forms_leave_every_plane_common() {
        let f = field(2);
        let zeros = vec![SkewForm::zero(f, 7); 7];
        let side = plane_side(f, &zeros);
        assert_eq!(side.common_isotropic, 2667);
        assert_eq!(side.incidence, 2667 * 127);
    }
}
