//! Exact sums of roots of unity, computed in `Q[x] / Φ_N(x)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::functions::rat;

type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Exact division of integer polynomials with a monic divisor.
fn div_monic(num: &[i64], den: &[i64]) -> Poly {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quot = vec![0; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    trim(quot)
}

fn rem_monic(num: &[i64], den: &[i64]) -> Poly {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let c = *rem.last().unwrap();
        let shift = rem.len() - 1 - dd;
        for (j, &d) in den.iter().enumerate() {
            rem[shift + j] -= c * d;
        }
        rem.pop();
    }
    if rem.is_empty() {
        rem.push(0);
    }
    trim(rem)
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = div_monic(&p, &cyclotomic_polynomial(d));
    }
    p
}

/// `(1/N) Σ_{j<N} ω^{j n}` for a primitive `N`-th root of unity `ω`, exactly.
pub fn root_of_unity_average(big_n: usize, n: i64) -> BigRational {
    let phi = cyclotomic_polynomial(big_n);
    let mut sum = vec![0i64; big_n];
    for j in 0..big_n as i64 {
        sum[(j * n).rem_euclid(big_n as i64) as usize] += 1;
    }
    let reduced = rem_monic(&sum, &phi);
    assert!(
        reduced.len() == 1,
        "a sum over a full set of roots of unity is rational"
    );
    let value = rat(reduced[0], big_n as i64);
    if value.is_zero() {
        BigRational::zero()
    } else {
        value
    }
}
