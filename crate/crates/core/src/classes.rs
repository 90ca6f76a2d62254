//! Classes of cellular varieties as polynomials in `L`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lring::Poly;

/// `[A^n] = L^n`.
pub fn affine_class(n: usize) -> Poly {
    Poly::monomial(1, n)
}

/// `[P^n] = 1 + L + ... + L^n`; `n = -1` is the empty space.
pub fn projective_class(n: i64) -> Result<Poly> {
    if n < -1 {
        return Err(Error::Domain(format!("P^{n} is undefined (need n >= -1)")));
    }
    Ok(Poly::from_i64s(&vec![1; (n + 1) as usize]))
}

/// `[P^n]` for `n >= 0`.
pub(crate) fn proj(n: usize) -> Poly {
    Poly::from_i64s(&vec![1; n + 1])
}

/// `[G(k,n)]` via `[G(k,n)] = [G(k,n-1)] + L^(n-k) [G(k-1,n-1)]`.
///
/// Base cases: `G(0,n) = 1`, `G(k,k) = 1`, `G(k,n) = 0` for `k > n`, and
/// `G(1,n) = [P^(n-1)]`.
pub fn grassmannian_class(k: usize, n: usize) -> Poly {
    let mut memo = HashMap::new();
    grassmannian_memo(k, n, &mut memo)
}

fn grassmannian_memo(k: usize, n: usize, memo: &mut HashMap<(usize, usize), Poly>) -> Poly {
    if k > n {
        return Poly::zero();
    }
    if k == 0 || k == n {
        return Poly::one();
    }
    if k == 1 {
        return proj(n - 1);
    }
    if let Some(p) = memo.get(&(k, n)) {
        return p.clone();
    }
    let inside = grassmannian_memo(k, n - 1, memo);
    let meeting = grassmannian_memo(k - 1, n - 1, memo).shift(n - k);
    let out = inside + meeting;
    memo.insert((k, n), out.clone());
    out
}

/// The two-case closed form for `[G(2,n)]`, `n >= 4`:
/// `[P^(n-2)] * Σ_{j<=(n-2)/2} L^(2j)` for even `n`,
/// `[P^(n-1)] * Σ_{j<=(n-3)/2} L^(2j)` for odd `n`.
pub fn grassmannian_closed_form_g2(n: usize) -> Result<Poly> {
    if n < 4 {
        return Err(Error::Domain(format!(
            "closed form for G(2,{n}) needs n >= 4"
        )));
    }
    let (proj_dim, top) = if n % 2 == 0 {
        (n - 2, (n - 2) / 2)
    } else {
        (n - 1, (n - 3) / 2)
    };
    let even_powers = (0..=top).fold(Poly::zero(), |acc, j| acc + Poly::monomial(1, 2 * j));
    Ok(proj(proj_dim) * even_powers)
}

/// Gaussian binomial `Π_{i<k} (L^(n-i) - 1) / (L^(k-i) - 1)`, dividing after
/// each numerator factor. Zero when `k > n`.
pub fn gaussian_binomial(k: usize, n: usize) -> Result<Poly> {
    if k > n {
        return Ok(Poly::zero());
    }
    let minus_one = Poly::constant(-1);
    let mut acc = Poly::one();
    // Dividing by L^(i+1)-1 after multiplying by L^(n-k+i+1)-1 keeps every
    // partial product a Gaussian binomial [n-k+i+1, i+1], so each step is exact.
    for i in 0..k {
        let num = affine_class(n - k + i + 1) + &minus_one;
        let den = affine_class(i + 1) + &minus_one;
        acc = (acc * num).div_exact(&den)?;
    }
    Ok(acc)
}
