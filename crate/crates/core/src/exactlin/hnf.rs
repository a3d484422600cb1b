use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::RatMatrix;
use super::rat::{is_integer, Rat};
use super::LinAlgError;

/// Column Hermite normal form.
///
/// The result is lower triangular in echelon sense: each pivot is positive, entries to the
/// left of a pivot in its row lie in `[0, pivot)`, and trailing columns are zero when the
/// input is rank deficient. The ℤ-span of the columns is unchanged.
pub fn hnf(m: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
    if !m.entries().iter().all(is_integer) {
        return Err(LinAlgError::NonInteger);
    }
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> =
        (0..cols).map(|j| (0..rows).map(|i| m[(i, j)].numer().clone()).collect()).collect();

    let mut c = 0;
    for i in 0..rows {
        if c == cols {
            break;
        }
        loop {
            let smallest = (c..cols)
                .filter(|&j| !a[j][i].is_zero())
                .min_by(|&x, &y| a[x][i].abs().cmp(&a[y][i].abs()));
            let Some(s) = smallest else { break };
            a.swap(c, s);
            let mut done = true;
            for j in c + 1..cols {
                if a[j][i].is_zero() {
                    continue;
                }
                let q = a[j][i].div_floor(&a[c][i]);
                axpy(&mut a, j, c, &q);
                if !a[j][i].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[c][i].is_zero() {
            continue;
        }
        if a[c][i].is_negative() {
            for x in a[c].iter_mut() {
                *x = -&*x;
            }
        }
        for j in 0..c {
            let q = a[j][i].div_floor(&a[c][i]);
            if !q.is_zero() {
                axpy(&mut a, j, c, &q);
            }
        }
        c += 1;
    }

    let mut out = RatMatrix::zeros(rows, cols);
    for (j, col) in a.into_iter().enumerate() {
        for (i, x) in col.into_iter().enumerate() {
            out[(i, j)] = Rat::from_integer(x);
        }
    }
    Ok(out)
}

/// column `dst` -= q · column `src`
fn axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let s = a[src].clone();
    for (x, y) in a[dst].iter_mut().zip(&s) {
        *x -= q * y;
    }
}

/// Whether the columns of two rational bases span the same ℤ-lattice.
pub fn same_lattice(a: &RatMatrix, b: &RatMatrix) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let den = super::rat::lcm_denominators(a.entries().iter().chain(b.entries()));
    let s = Rat::from_integer(den);
    match (hnf(&a.scale(&s)), hnf(&b.scale(&s))) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}
