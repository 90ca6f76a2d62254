//! Point counts over `F_p` that check every class formula independently.
//!
//! All counts come from walking the RREF cells of `G(k,n)(F_p)` and testing
//! each plane directly. Work is split across rayon workers by pivot pattern
//! and merged by integer summation, so results do not depend on the worker
//! count.

mod count;
mod strata;
mod subspace;
mod wspace;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use count::{
    count_h, count_isotropic_planes, count_planes, count_xw, count_yw, form_side, plane_side,
    FormCount, FormSide, PlaneSide,
};
pub use strata::{stratify_rank4_fiber, StrataCensus};
pub use subspace::{enum_subspaces, pivot_patterns, Subspace, SubspaceIter, MAX_ENUM_DIM};
pub use wspace::{sample_generic_w, WSpace, MAX_DRAWS, W_DIM};

use crate::classes::grassmannian_class;
use crate::error::{Error, Result};
use crate::ffield::{PrimeField, SkewForm};
use crate::lring::{MotElem, Poly};
use crate::pfaffian::{
    fiber_class_rank4, fiber_class_rank6, incidence_class_via_grassmannian,
    incidence_class_via_pfaffian_side, RankFourStrata,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

/// Outcome of one seeded census run.
///
/// Serializes as
/// `{"prime": p, "seed": s, "counts": {..}, "checks": {name: "pass"|"fail"|"skipped"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub prime: u32,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
    pub checks: BTreeMap<String, CheckStatus>,
}

/// Names of every check a report carries.
pub const CHECK_NAMES: [&str; 10] = [
    "grassmannian_count",
    "fiber_rank4",
    "fiber_rank6",
    "strata_rank4",
    "genericity",
    "fiber_uniformity",
    "h_two_ways",
    "h_grassmannian_side",
    "h_pfaffian_side",
    "xw_equals_yw",
];

/// Checks that need a sampled `W`; skipped when sampling fails.
const W_CHECKS: [&str; 6] = [
    "genericity",
    "fiber_uniformity",
    "h_two_ways",
    "h_grassmannian_side",
    "h_pfaffian_side",
    "xw_equals_yw",
];

impl CensusReport {
    /// No check failed. Skipped checks do not count as failures.
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&c| c != CheckStatus::Fail)
    }

    pub fn skipped(&self) -> bool {
        self.checks.values().any(|&c| c == CheckStatus::Skipped)
    }

    pub fn check(&self, name: &str) -> Option<CheckStatus> {
        self.checks.get(name).copied()
    }

    pub fn count(&self, name: &str) -> Option<u64> {
        self.counts.get(name).copied()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Allow `p = 5` (about 12.7M planes per pass).
    pub full: bool,
}

/// Runs `f` on a rayon pool with `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::Domain("thread count must be positive".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn eval_u64(p: &Poly, q: u32) -> BigInt {
    p.eval(q as u64)
}

fn eq(count: u64, expected: &BigInt) -> bool {
    &BigInt::from(count) == expected
}

/// Seed-independent part of a report.
fn field_checks(field: PrimeField) -> (BTreeMap<String, u64>, BTreeMap<String, CheckStatus>) {
    let q = field.modulus();
    let mut counts = BTreeMap::new();
    let mut checks = BTreeMap::new();

    let planes = count_planes(field, 7);
    counts.insert("grassmannian".into(), planes);
    checks.insert(
        "grassmannian_count".into(),
        CheckStatus::from_bool(eq(planes, &eval_u64(&grassmannian_class(2, 7), q))),
    );

    let standard = |r| SkewForm::standard(field, 7, r).expect("even rank <= 7");
    let f4 = count_isotropic_planes(&standard(4));
    let f6 = count_isotropic_planes(&standard(6));
    counts.insert("fiber_rank4".into(), f4);
    counts.insert("fiber_rank6".into(), f6);
    counts.insert("fiber_rank2".into(), count_isotropic_planes(&standard(2)));
    checks.insert(
        "fiber_rank4".into(),
        CheckStatus::from_bool(eq(f4, &eval_u64(&fiber_class_rank4(), q))),
    );
    checks.insert(
        "fiber_rank6".into(),
        CheckStatus::from_bool(eq(f6, &eval_u64(&fiber_class_rank6(), q))),
    );

    let strata_ok = match stratify_rank4_fiber(&standard(4)) {
        Ok(s) => {
            counts.insert("strata_case1_lines".into(), s.case1_lines);
            counts.insert("strata_case2_lines".into(), s.case2_lines);
            counts.insert("strata_case3_lines".into(), s.case3_lines);
            counts.insert("strata_case1_fiber".into(), s.case1_fiber);
            counts.insert("strata_case2_fiber".into(), s.case2_fiber);
            counts.insert("strata_case3_fiber".into(), s.case3_fiber);
            counts.insert("strata_g2h".into(), s.g2h_count);
            strata_matches_formula(&s)
        }
        Err(_) => false,
    };
    checks.insert("strata_rank4".into(), CheckStatus::from_bool(strata_ok));
    (counts, checks)
}

/// Compares a strata census with the symbolic strata evaluated at `p`.
pub fn strata_matches_formula(s: &StrataCensus) -> bool {
    let sym = RankFourStrata::new();
    let q = s.p;
    eq(s.case1_lines, &eval_u64(&sym.case1_lines, q))
        && eq(s.case2_lines, &eval_u64(&sym.case2_lines, q))
        && eq(s.case3_lines, &eval_u64(&sym.case3_lines, q))
        && eq(s.case1_fiber, &eval_u64(&sym.case1_fiber, q))
        && eq(s.case2_fiber, &eval_u64(&sym.case2_fiber, q))
        && eq(s.case3_fiber, &eval_u64(&sym.case3_fiber, q))
        && eq(s.g2h_count, &eval_u64(&sym.hyperplane_class(), q))
        && s.total == s.direct
        && eq(s.total, &eval_u64(&sym.total(), q))
}

/// Value of a class-module element at `L = q`, `[X_W] = x`, `[Y_W] = y`.
fn specialize(e: &MotElem, q: u32, x: u64, y: u64) -> BigInt {
    use crate::lring::Symbol;
    let q = q as u64;
    e.scalar_part().eval(q)
        + e.sym_coeff(Symbol::XW).eval(q) * BigInt::from(x)
        + e.sym_coeff(Symbol::YW).eval(q) * BigInt::from(y)
}

/// Census of one sampled `W`: counts and checks that depend on the seed.
fn w_checks(
    w: &WSpace,
    strategy: FormCount,
    counts: &mut BTreeMap<String, u64>,
    checks: &mut BTreeMap<String, CheckStatus>,
) {
    let q = w.field().modulus();
    let planes = plane_side(w.field(), w.forms());
    let forms = form_side(w, strategy);
    let (x, y) = (planes.common_isotropic, forms.low_rank);
    counts.insert("x_w".into(), x);
    counts.insert("y_w".into(), y);
    counts.insert("h_via_planes".into(), planes.incidence);
    counts.insert("h_via_forms".into(), forms.incidence);
    for (r, n) in &forms.rank_histogram {
        counts.insert(format!("pw_rank{r}"), *n);
    }

    let f4 = eval_u64(&fiber_class_rank4(), q);
    let f6 = eval_u64(&fiber_class_rank6(), q);
    let uniform = forms.fibers.iter().all(|(&r, seen)| {
        let expected = match r {
            4 => &f4,
            6 => &f6,
            _ => return false,
        };
        seen.len() == 1 && seen.iter().all(|&c| eq(c, expected))
    });
    checks.insert("genericity".into(), CheckStatus::from_bool(w.is_generic()));
    checks.insert("fiber_uniformity".into(), CheckStatus::from_bool(uniform));
    checks.insert(
        "h_two_ways".into(),
        CheckStatus::from_bool(planes.incidence == forms.incidence),
    );
    let grass = specialize(&incidence_class_via_grassmannian(), q, x, y);
    let pfaff = specialize(&incidence_class_via_pfaffian_side(), q, x, y);
    checks.insert(
        "h_grassmannian_side".into(),
        CheckStatus::from_bool(eq(planes.incidence, &grass)),
    );
    checks.insert(
        "h_pfaffian_side".into(),
        CheckStatus::from_bool(eq(forms.incidence, &pfaff)),
    );
    checks.insert("xw_equals_yw".into(), CheckStatus::from_bool(x == y));
}

/// Full census at one prime, one report per seed.
///
/// `p = 5` requires `opts.full`. At `p = 5` the `PW` side counts the first
/// form of each rank and reuses it (see [`FormCount::FirstOfEachRank`]);
/// smaller primes count every form. A seed whose sampling exhausts
/// [`MAX_DRAWS`] yields a report with its `W` checks marked skipped.
pub fn verify_suite(field: PrimeField, seeds: &[u64], opts: SuiteOptions) -> Result<Vec<CensusReport>> {
    let q = field.modulus();
    if ![2, 3, 5].contains(&q) {
        return Err(Error::Domain(format!("census suite supports p in {{2,3,5}}, got {q}")));
    }
    if q == 5 && !opts.full {
        return Err(Error::Domain("p = 5 census needs the full option".into()));
    }
    let strategy = if q == 5 {
        FormCount::FirstOfEachRank
    } else {
        FormCount::Exhaustive
    };
    let (base_counts, base_checks) = field_checks(field);
    let mut reports = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let mut counts = base_counts.clone();
        let mut checks = base_checks.clone();
        match sample_generic_w(field, seed) {
            Ok(w) => w_checks(&w, strategy, &mut counts, &mut checks),
            Err(Error::GenericityExhausted { .. }) => {
                for name in W_CHECKS {
                    checks.insert(name.into(), CheckStatus::Skipped);
                }
            }
            Err(e) => return Err(e),
        }
        reports.push(CensusReport {
            prime: q,
            seed,
            counts,
            checks,
        });
    }
    Ok(reports)
}
