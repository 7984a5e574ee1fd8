//! Cellular homology of real projective space, used as an independent
//! cross-check: C_2(R^n) is homotopy equivalent to RP^{n-1}, so the k = 2
//! column of any Hilbert table must reproduce these dimensions.
//!
//! RP^m has one cell in each dimension 0..=m and the boundary map on the
//! degree-i cell is multiplication by 1 + (-1)^i, i.e. alternately 0 and 2.
//! The ranks below are computed by actually reducing that scalar in the
//! coefficient field; nothing about the answer is hard-coded.

use confstab_core::hilbert::Coefficients;

/// dim H_i(RP^{n-1}; coeff) for i = 0..=n-1.
pub fn rp_homology(n: u32, coeff: Coefficients) -> Vec<u64> {
    assert!(n >= 2, "RP^(n-1) needs n >= 2");
    let m = n - 1;

    // Boundary scalar out of the degree-i cell, i = 1..=m.
    let boundary = |i: u32| -> u64 {
        if i.is_multiple_of(2) {
            2
        } else {
            0
        }
    };
    // Rank of the 1x1 boundary matrix over the coefficient field.
    let rank = |i: u32| -> u64 {
        if i < 1 || i > m {
            return 0;
        }
        let scalar = boundary(i);
        let vanishes = match coeff {
            Coefficients::Fp(p) => scalar % u64::from(p.get()) == 0,
            Coefficients::Rational => scalar == 0,
        };
        if vanishes {
            0
        } else {
            1
        }
    };

    (0..=m).map(|i| 1 - rank(i) - rank(i + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use confstab_core::ops::Prime;

    fn fp(p: u32) -> Coefficients {
        Coefficients::Fp(Prime::new(p).unwrap())
    }

    #[test]
    fn rp3_mod_3_has_bottom_and_top_classes() {
        assert_eq!(rp_homology(4, fp(3)), vec![1, 0, 0, 1]);
    }

    #[test]
    fn rp4_mod_3_is_a_point() {
        assert_eq!(rp_homology(5, fp(3)), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn rp2_rationally_is_a_point() {
        assert_eq!(rp_homology(3, Coefficients::Rational), vec![1, 0, 0]);
    }

    #[test]
    fn even_n_top_class_survives_over_every_odd_prime_and_q() {
        for n in [4u32, 6, 8] {
            for coeff in [fp(3), fp(5), fp(7), Coefficients::Rational] {
                let dims = rp_homology(n, coeff);
                assert_eq!(dims[0], 1);
                assert_eq!(dims[(n - 1) as usize], 1);
                assert!(dims[1..(n - 1) as usize].iter().all(|d| *d == 0));
            }
        }
    }
}
