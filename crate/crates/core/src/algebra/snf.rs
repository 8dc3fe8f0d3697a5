use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u · m · w = d` with `u`, `w` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub w: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }
}

/// Smith normal form with transforms.
///
/// Pivot rule: the nonzero entry of smallest absolute value in the active
/// submatrix, ties broken by lowest row then lowest column.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut w = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                return finish(d, u, w);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            w.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(&pivot);
                let neg = -q;
                d.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(&pivot);
                let neg = -q;
                d.add_col_multiple(j, t, &neg);
                w.add_col_multiple(j, t, &neg);
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(d, u, w)
}

fn finish(d: IntMatrix, u: IntMatrix, w: IntMatrix) -> SnfResult {
    SnfResult { d, u, w }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec())).unwrap()
    }

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(&(&r.u * a) * &r.w, r.d, "U·M·W must equal D");
        assert_eq!(r.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(r.w.determinant().unwrap().abs(), BigInt::one());
        let diag = r.diagonal();
        for (k, x) in diag.iter().enumerate() {
            assert!(!x.is_negative());
            if let Some(next) = diag.get(k + 1) {
                assert!(x.is_zero() && next.is_zero() || !x.is_zero() && next.is_multiple_of(x));
            }
        }
        for i in 0..r.d.rows() {
            for j in 0..r.d.cols() {
                if i != j {
                    assert!(r.d.get(i, j).is_zero());
                }
            }
        }
        r
    }

    #[test]
    fn counterexample_presentation() {
        let r = check(&m(&[&[42, 105], &[105, 42]]));
        assert_eq!(r.diagonal(), vec![BigInt::from(21), BigInt::from(441)]);
    }

    #[test]
    fn identity_is_fixed() {
        let r = check(&IntMatrix::identity(2));
        assert_eq!(r.d, IntMatrix::identity(2));
    }

    #[test]
    fn rectangular_and_singular() {
        let r = check(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            r.diagonal(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let r = check(&m(&[&[1, 2], &[2, 4], &[3, 6]]));
        assert_eq!(r.diagonal(), vec![BigInt::one(), BigInt::zero()]);
        let r = check(&m(&[&[0, 0, 0]]));
        assert_eq!(r.diagonal(), vec![BigInt::zero()]);
    }

    #[test]
    fn empty_matrix() {
        let r = smith_normal_form(&IntMatrix::zeros(0, 0));
        assert!(r.diagonal().is_empty());
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is diagonal but not in Smith form
        let r = check(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(r.diagonal(), vec![BigInt::one(), BigInt::from(6)]);
    }
}
