//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use super::poly::Rational;

/// Solves `rows * u = rhs`, returning one solution with free unknowns set to zero.
///
/// `rows` is a dense matrix with `ncols` columns; `None` means inconsistent.
pub fn solve(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, ncols: usize) -> Option<Vec<Rational>> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..ncols {
                    let delta = &rows[r][k] * &f;
                    rows[i][k] -= delta;
                }
                let delta = &rhs[r] * &f;
                rhs[i] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rhs[i].clone();
    }
    Some(sol)
}
