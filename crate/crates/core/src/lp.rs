//! Exact rational feasibility for `A x = b, x >= 0`.
//!
//! Phase-one simplex on a dense tableau with Bland's rule, so it terminates
//! without degeneracy handling. Everything is `BigRational`; no tolerances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Returns a basic feasible point of `A x = b, x >= 0`, or `None` when the
/// system is infeasible. `a` is row-major with `b.len()` rows.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = b.len();
    let n = a.first().map_or(0, Vec::len);
    debug_assert!(a.iter().all(|r| r.len() == n));
    let width = n + m + 1;
    let rhs = width - 1;

    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r = Vec::with_capacity(width);
        for x in row {
            r.push(if flip { -x.clone() } else { x.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Objective row: reduced costs of the sum of artificials.
    let mut cost = vec![Rational::zero(); width];
    for r in &t {
        for j in 0..n {
            cost[j] -= &r[j];
        }
        cost[rhs] -= &r[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[rhs] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so an entering column always
        // has a positive entry.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (x, y) in r.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
