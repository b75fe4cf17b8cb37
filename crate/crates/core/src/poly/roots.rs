//! Counting roots in `Q_p` by Hensel recursion on residue classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::ZPoly;

/// Number of distinct roots of `f` in `Q_p`; `None` unless `f` is squarefree
/// over `Q`.
pub fn count_qp_roots(f: &ZPoly, p: u64) -> Option<usize> {
    if !f.is_squarefree() {
        return None;
    }
    if f.degree() == Some(0) {
        return Some(0);
    }
    // Roots of the monic associate are lc times those of f and lie in Z_p.
    Some(count_in_disc(&f.primitive_part().monic_associate(), p))
}

/// Roots in `Z_p` of a squarefree integer polynomial.
fn count_in_disc(f: &ZPoly, p: u64) -> usize {
    let f = strip_p(f, p);
    let fp = f.mod_p(p);
    if fp.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let dfp = fp.derivative();
    let pb = BigInt::from(p);
    fp.roots()
        .into_iter()
        .map(|r| {
            if dfp.eval(r) != 0 {
                1
            } else {
                // f(r + p x) collects the roots in r + pZ_p.
                let sub = f.compose(&ZPoly::new(vec![BigInt::from(r), pb.clone()]));
                count_in_disc(&sub, p)
            }
        })
        .sum()
}

/// Divide out the largest power of `p` dividing every coefficient.
fn strip_p(f: &ZPoly, p: u64) -> ZPoly {
    let pb = BigInt::from(p);
    let mut c = f.coeffs().to_vec();
    while !c.is_empty() && c.iter().all(|a| a.is_multiple_of(&pb)) {
        for a in c.iter_mut() {
            *a /= &pb;
        }
        if c.iter().all(Zero::is_zero) {
            break;
        }
    }
    ZPoly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn simple_counts() {
        // x^2 - 2 has roots in Q_7 (3^2 = 2 mod 7), none in Q_5.
        assert_eq!(count_qp_roots(&z(&[-2, 0, 1]), 7), Some(2));
        assert_eq!(count_qp_roots(&z(&[-2, 0, 1]), 5), Some(0));
        // x^2 - 3 is ramified at 3: no roots.
        assert_eq!(count_qp_roots(&z(&[-3, 0, 1]), 3), Some(0));
        // x^2 - 9*7: sqrt(63) = 3 sqrt(7), and 7 = 1 mod 3 is a square.
        assert_eq!(count_qp_roots(&z(&[-63, 0, 1]), 3), Some(2));
        assert_eq!(count_qp_roots(&z(&[1, 0, 1]).mul(&z(&[1, 0, 1])), 5), None);
    }

    #[test]
    fn non_monic() {
        // 3x - 1 has the root 1/3 in Q_3.
        assert_eq!(count_qp_roots(&z(&[-1, 3]), 3), Some(1));
        // 9x^2 - 7: roots +-sqrt(7)/3 in Q_3.
        assert_eq!(count_qp_roots(&z(&[-7, 0, 9]), 3), Some(2));
    }

    #[test]
    fn clustered_roots_separate() {
        // (x - 1)(x - 1 - 27)(x + 5) at p = 3: two roots share a residue class.
        let f = z(&[-1, 1]).mul(&z(&[-28, 1])).mul(&z(&[5, 1]));
        assert_eq!(count_qp_roots(&f, 3), Some(3));
        // (x^2 - 3^5) has no root in Q_3 even though it vanishes mod 3^5 at 0.
        assert_eq!(count_qp_roots(&z(&[-243, 0, 1]), 3), Some(0));
    }
}
