//! Seven-dimensional spaces of alternating forms on `F_p^7`.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use super::subspace::odometer_step;
use crate::error::{Error, Result};
use crate::ffield::{FpMatrix, PrimeField, SkewForm};

/// Dimension of `V` and of `W`.
pub const W_DIM: usize = 7;

/// Draws attempted by [`sample_generic_w`] before giving up.
pub const MAX_DRAWS: u32 = 64;

/// A space `W` spanned by linearly independent alternating forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WSpace {
    field: PrimeField,
    forms: Vec<SkewForm>,
    /// No nonzero form in `W` has rank at most 2.
    generic: bool,
}

impl WSpace {
    /// Checks that the forms share one field and dimension and are linearly
    /// independent, then scans `PW` for rank-2 forms.
    pub fn new(forms: Vec<SkewForm>) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::Domain("W needs at least one form".into()))?;
        let (field, n) = (first.field(), first.dim());
        for w in &forms {
            if w.field() != field {
                return Err(Error::Domain("forms live over different fields".into()));
            }
            if w.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.dim(),
                });
            }
        }
        if !independent(&forms) {
            return Err(Error::Domain("forms are linearly dependent".into()));
        }
        let mut out = WSpace {
            field,
            forms,
            generic: false,
        };
        out.generic = out.form_ranks().iter().all(|&r| r > 2);
        Ok(out)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn forms(&self) -> &[SkewForm] {
        &self.forms
    }

    pub fn is_generic(&self) -> bool {
        self.generic
    }

    /// One form per point of `PW`: `Σ β_k ω_k` over coefficient vectors `β`
    /// whose first nonzero entry is 1. There are `(p^m - 1)/(p - 1)`.
    pub fn projective_forms(&self) -> Vec<SkewForm> {
        let f = self.field;
        let p = f.modulus();
        let m = self.forms.len();
        let n = self.forms[0].dim();
        let uppers: Vec<Vec<u32>> = self.forms.iter().map(SkewForm::upper).collect();
        let len = uppers[0].len();
        let mut out = Vec::new();
        for lead in 0..m {
            let mut beta = vec![0u32; m];
            beta[lead] = 1;
            let free: Vec<usize> = (lead + 1..m).collect();
            loop {
                let mut acc = vec![0u32; len];
                for (b, up) in beta.iter().zip(&uppers) {
                    if *b == 0 {
                        continue;
                    }
                    for (a, x) in acc.iter_mut().zip(up) {
                        *a = f.add(*a, f.mul(*b, *x));
                    }
                }
                out.push(SkewForm::from_upper(f, n, &acc).expect("length matches"));
                if !odometer_step(&mut beta, &free, p) {
                    break;
                }
            }
        }
        out
    }

    /// Ranks of the forms of [`WSpace::projective_forms`], in the same order.
    pub fn form_ranks(&self) -> Vec<usize> {
        self.projective_forms().iter().map(SkewForm::rank).collect()
    }
}

fn independent(forms: &[SkewForm]) -> bool {
    let rows: Vec<u32> = forms.iter().flat_map(SkewForm::upper).collect();
    let cols = rows.len() / forms.len();
    FpMatrix::from_raw(forms[0].field(), forms.len(), cols, rows)
        .map(|m| m.rank() == forms.len())
        .unwrap_or(false)
}

/// Seeded sampling of a generic `W` on `F_p^7`: seven random alternating
/// forms, redrawn until they are independent and `PW` has no form of rank
/// at most 2. The generator is `Xoshiro256PlusPlus::seed_from_u64(seed)`.
pub fn sample_generic_w(field: PrimeField, seed: u64) -> Result<WSpace> {
    if ![2, 3, 5].contains(&field.modulus()) {
        return Err(Error::Domain(format!(
            "generic W sampling supports p in {{2,3,5}}, got {}",
            field.modulus()
        )));
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let forms: Vec<SkewForm> = (0..W_DIM)
            .map(|_| SkewForm::random(field, W_DIM, &mut rng))
            .collect();
        if !independent(&forms) {
            continue;
        }
        let w = WSpace::new(forms)?;
        if w.is_generic() {
            return Ok(w);
        }
    }
    Err(Error::GenericityExhausted {
        prime: field.modulus(),
        seed,
        attempts: MAX_DRAWS,
    })
}
