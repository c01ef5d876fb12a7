//! Sign constants as printed in the source tables.
//!
//! These are transcriptions, not derivations. The verifier compares each of
//! them against the value the exact engine computes and reports mismatches.

fn parity(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `c_n` of the Frobenius–Stickelberger formula.
///
/// For `n ≤ g-1` it is `(-1)^{g+1+(n-1)(n-2)(n-3)/2}`; for `n ≥ g` it is
/// read from the table indexed by `g mod 4` and `n mod 4`.
pub fn c_n(g: usize, n: usize) -> i64 {
    let (gi, ni) = (g as i64, n as i64);
    if n + 1 <= g {
        return parity(gi + 1 + (ni - 1) * (ni - 2) * (ni - 3) / 2);
    }
    const TABLE: [[i64; 4]; 4] = [
        // g ≡ 0; columns n ≡ 1, 2, 3, 0
        [-1, 1, -1, 1],
        [1, 1, -1, -1],
        [-1, -1, -1, -1],
        [-1, 1, 1, -1],
    ];
    TABLE[g % 4][(n + 3) % 4]
}

/// `c'_n` of the Kiepert formula, by `g mod 4`.
pub fn c_prime_n(g: usize, n: usize) -> i64 {
    let ni = n as i64;
    match g % 4 {
        1 => parity(ni - 1),
        2 => -parity(ni * (ni - 1) / 2),
        3 => -1,
        _ => parity(ni * (ni + 1) / 2),
    }
}

/// `ε_n` of the Hankel (Cantor) formula, by `g mod 4` and `n mod 8`.
pub fn epsilon_n(g: usize, n: usize) -> i64 {
    const TABLE: [[i64; 8]; 4] = [
        // g ≡ 0; columns n ≡ 1, ..., 7, 0
        [-1, 1, -1, -1, -1, 1, 1, 1],
        [1, 1, -1, 1, 1, 1, 1, -1],
        [-1, -1, 1, 1, -1, -1, 1, 1],
        [-1, 1, -1, 1, -1, 1, -1, 1],
    ];
    TABLE[g % 4][(n + 7) % 8]
}

/// Sign `s` in `ψ_n = s (2y)^{n(n-1)/2}` for `1 ≤ n ≤ g+1`.
pub fn small_psi_sign(g: usize, n: usize) -> i64 {
    let (gi, ni) = (g as i64, n as i64);
    if n <= g {
        parity(gi + 1 + (ni - 1) * (ni * ni - 2) / 2)
    } else if g % 4 == 0 {
        1
    } else {
        -1
    }
}

/// `(r, s)` for the Hankel formula: `r` counts the columns `(x^k)'` in the
/// Kiepert matrix, `s = n - 1 - r` the columns `(y x^k)'`.
pub fn cantor_r_s(g: usize, n: usize) -> (usize, usize) {
    let r = ((n + g).saturating_sub(1) / 2).min(n.saturating_sub(1));
    (r, n.saturating_sub(1) - r)
}

/// `c'_n (-1)^{s + r(r-1)/2}`, which the closing identity equates with `ε_n`.
pub fn epsilon_from_c_prime(g: usize, n: usize) -> i64 {
    let (r, s) = cantor_r_s(g, n);
    let (r, s) = (r as i64, s as i64);
    c_prime_n(g, n) * parity(s + r * (r - 1) / 2)
}

/// Coefficient of `v_g^g` in `S_♯(v)` on the curve limit.
pub fn sharp_schur_sign(g: usize) -> i64 {
    let g = g as i64;
    -parity((g - 1) * (g - 2) * (g - 3) / 2)
}

/// Coefficient of `2 v_g^{2g-1}` in `S_♭(2v)`.
pub fn flat_schur_sign(g: usize) -> i64 {
    let g = g as i64;
    -parity(g * (g - 1) * (g - 2) / 2)
}

/// Sign relating the leading `v_g^{g-n}` coefficient of `S_{♮^{n+1}}` to
/// `S_{♮^n}`.
pub fn recursion_sign(g: usize, n: usize) -> i64 {
    let k = g as i64 - n as i64;
    parity(k * (k - 1) / 2)
}

/// Sign in `σ(u) = ± S(u) + (λ-terms)`.
pub fn schur_limit_sign(g: usize) -> i64 {
    let g = g as i64;
    parity(g * (g - 1) * (g - 3) / 2)
}

/// Leading coefficient of `σ_♯(v)` along the curve as printed.
pub fn sigma_sharp_sign(g: usize) -> i64 {
    let g = g as i64;
    parity((g - 2) * (g - 3) / 2)
}

/// `σ` is odd for `g ≡ 1, 2 (mod 4)` and even otherwise.
pub fn sigma_parity(g: usize) -> i64 {
    if matches!(g % 4, 1 | 2) {
        -1
    } else {
        1
    }
}

/// Sign in `σ_♭(2u)/σ_♯(u)^4 = ± 2y(u)`.
pub fn y_formula_sign(g: usize) -> i64 {
    parity(g as i64)
}

/// Sign in `± σ_♭(u+v)σ_♭(u-v)/(σ_♯(u)²σ_♯(v)²) = x(v) - x(u)`.
pub fn addition_sign(g: usize) -> i64 {
    parity(g as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let row = |g| (1..=8).map(|n| epsilon_n(g, n)).collect::<Vec<_>>();
        assert_eq!(row(5), vec![1, 1, -1, 1, 1, 1, 1, -1]);
        assert_eq!(row(4), vec![-1, 1, -1, -1, -1, 1, 1, 1]);
        let crow = |g: usize| (g..g + 4).map(|n| (n % 4, c_n(g, n))).collect::<Vec<_>>();
        assert!(crow(3).contains(&(3, 1)));
        assert_eq!(c_n(2, 2), -1);
        assert_eq!(cantor_r_s(1, 3), (1, 1));
        assert_eq!(cantor_r_s(3, 3), (2, 0));
        assert_eq!(cantor_r_s(2, 5), (3, 1));
    }
}
