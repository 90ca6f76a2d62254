//! Both computations of the incidence class `[H]` and the relation they
//! force between `[X_W]` and `[Y_W]`.
//!
//! `H ⊂ G(2,V) × PW` is the incidence variety of pairs `(T, ω)` with
//! `ω|_T = 0`. Projecting to `G(2,V)` gives one expression for `[H]` in
//! terms of `[X_W]`; projecting to `PW` gives another in terms of `[Y_W]`
//! and the two fiber classes over rank-4 and rank-6 forms.

use crate::classes::{grassmannian_class, proj};
use crate::error::{Error, Result};
use crate::lring::{MotElem, Poly, Symbol, RELATION_DEGREE};

/// `L^4 + L^2 + 1`.
pub fn even_factor() -> Poly {
    Poly::from_i64s(&[1, 0, 1, 0, 1])
}

/// Fiber of `H -> PW` over a rank-4 form, kept as its strata.
///
/// Coordinates put `ω` in the block form with `ω(e1,e3) = ω(e2,e4) = 1`,
/// `F = <e3..e7>` and the hyperplane `Hp = F ⊕ <e2>`. Isotropic planes not
/// inside `Hp` meet it in a line `D`, sorted into three cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFourStrata {
    /// Lines `D ⊂ ker ω`: `[P ker ω] = [P^2]`.
    pub case1_lines: Poly,
    /// Lines in `ker(ω|Hp)` but not in `ker ω`: `[P^3] - [P^2]`.
    pub case2_lines: Poly,
    /// All other lines of `P Hp`: `[P^5] - [P^3]`.
    pub case3_lines: Poly,
    /// `[P^5] - [P^4]`.
    pub case1_fiber: Poly,
    /// Empty fiber.
    pub case2_fiber: Poly,
    /// `[P^4] - [P^3]`.
    pub case3_fiber: Poly,
    /// Isotropic planes inside `F`, where `ω` vanishes: `[G(2,5)]`.
    pub planes_in_f: Poly,
    /// Isotropic planes in `Hp` meeting `F` in a line: `[P ker(ω|Hp)] * L^4`.
    pub planes_meeting_f: Poly,
}

impl RankFourStrata {
    pub fn new() -> Self {
        RankFourStrata {
            case1_lines: proj(2),
            case2_lines: proj(3) - proj(2),
            case3_lines: proj(5) - proj(3),
            case1_fiber: proj(5) - proj(4),
            case2_fiber: Poly::zero(),
            case3_fiber: proj(4) - proj(3),
            planes_in_f: grassmannian_class(2, 5),
            planes_meeting_f: proj(3) * (proj(4) - proj(3)),
        }
    }

    /// `[U]`: isotropic planes meeting the hyperplane in exactly a line.
    pub fn u_class(&self) -> Poly {
        &self.case1_lines * &self.case1_fiber
            + &self.case2_lines * &self.case2_fiber
            + &self.case3_lines * &self.case3_fiber
    }

    /// Isotropic planes contained in the hyperplane.
    pub fn hyperplane_class(&self) -> Poly {
        &self.planes_in_f + &self.planes_meeting_f
    }

    pub fn total(&self) -> Poly {
        self.u_class() + self.hyperplane_class()
    }
}

impl Default for RankFourStrata {
    fn default() -> Self {
        Self::new()
    }
}

/// Fiber class over a rank-4 form, assembled from its strata:
/// `[P^5](L^4 + L^2 + 1) + L^6`.
pub fn fiber_class_rank4() -> Poly {
    RankFourStrata::new().total()
}

/// Fiber class over a rank-6 form: `[P^5](L^4 + L^2 + 1)`.
pub fn fiber_class_rank6() -> Poly {
    proj(5) * even_factor()
}

/// `[H] = [G(2,7)] [P^5] + [X_W] L^6`, from the projection to `G(2,V)`:
/// the fiber over `T` is `P(ker(W -> Λ²T*))`, a `P^6` on `X_W` and a `P^5`
/// elsewhere.
pub fn incidence_class_via_grassmannian() -> MotElem {
    let scalar = grassmannian_class(2, 7) * proj(5);
    let on_xw = proj(6) - proj(5);
    MotElem::new(scalar, [(Symbol::XW, on_xw)])
}

/// The terms of `[H] = [Y_W] * fiber4 + ([P^6] - [Y_W]) * fiber6`.
pub fn pfaffian_side_terms() -> Vec<MotElem> {
    let fiber4 = fiber_class_rank4();
    let fiber6 = fiber_class_rank6();
    let yw = MotElem::symbol(Symbol::YW);
    let complement = &MotElem::scalar(proj(6)) - &yw;
    vec![yw.scale(&fiber4), complement.scale(&fiber6)]
}

/// `[H] = [Y_W] L^6 + [P^6][P^5](L^4 + L^2 + 1)`, from the projection to `PW`.
pub fn incidence_class_via_pfaffian_side() -> MotElem {
    pfaffian_side_terms()
        .iter()
        .fold(MotElem::zero(), |acc, t| &acc + t)
}

/// Difference of the two `[H]` computations. Must be exactly
/// `([X_W] - [Y_W]) L^6`.
pub fn derive_theorem() -> Result<MotElem> {
    let diff = &incidence_class_via_grassmannian() - &incidence_class_via_pfaffian_side();
    check_relation_shape(&diff)?;
    Ok(diff)
}

fn check_relation_shape(diff: &MotElem) -> Result<()> {
    if !diff.scalar_part().is_zero() {
        return Err(Error::DerivationMismatch(format!(
            "scalar parts differ by {}",
            diff.scalar_part()
        )));
    }
    let l6 = Poly::monomial(1, RELATION_DEGREE);
    let xw = diff.sym_coeff(Symbol::XW);
    let yw = diff.sym_coeff(Symbol::YW);
    if xw != l6 || yw != -&l6 {
        return Err(Error::DerivationMismatch(format!(
            "expected (L^6)·[X] + (-L^6)·[Y], got {diff}"
        )));
    }
    if !diff.is_zero_mod_relation() {
        return Err(Error::DerivationMismatch(
            "difference does not reduce to zero".into(),
        ));
    }
    Ok(())
}

/// `([X_W] - [Y_W]) (L^2 - 1)(L - 1) L^7` reduces to zero.
pub fn check_weaker_annihilator() -> bool {
    let factor = Poly::from_i64s(&[-1, 0, 1]) * Poly::from_i64s(&[-1, 1]) * Poly::monomial(1, 7);
    let x_minus_y = &MotElem::symbol(Symbol::XW) - &MotElem::symbol(Symbol::YW);
    x_minus_y.scale(&factor).is_zero_mod_relation()
}
