//! Closed-form reference values used to cross-check the main computations.
//!
//! Everything here is derived by elementary counting or classical dimension
//! formulas, entirely independently of the matrix pipeline, so agreement
//! between the two paths is genuine evidence of correctness.

/// Prime factorization as (prime, exponent) pairs, smallest prime first.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factorize(n) {
        out = out / p * (p - 1);
    }
    out
}

/// Order of the group of determinant-one 2x2 matrices over Z/n:
/// n^3 * prod over primes p | n of (1 - p^-2).
pub fn sl2_order(n: u64) -> u64 {
    assert!(n >= 2, "level must be at least 2");
    let mut out = n * n * n;
    for (p, _) in factorize(n) {
        out = out / (p * p) * (p * p - 1);
    }
    out
}

/// Order of the group of invertible 2x2 matrices over Z/n:
/// determinant is a surjection onto the units, so this is phi(n) * sl2_order(n).
pub fn gl2_order(n: u64) -> u64 {
    euler_phi(n) * sl2_order(n)
}

/// Order of the determinant-one group modulo its center {1, -1}.
/// The center has order 2 except at n = 2 where -1 = 1.
pub fn psl2_order(n: u64) -> u64 {
    if n == 2 {
        sl2_order(2)
    } else {
        sl2_order(n) / 2
    }
}

/// Dimension of the space of level-one cusp forms of the given even weight.
pub fn cusp_form_dimension(weight: u32) -> u32 {
    assert!(weight.is_multiple_of(2), "cusp form weight must be even");
    if weight < 4 {
        return 0;
    }
    if weight % 12 == 2 {
        weight / 12 - 1
    } else {
        weight / 12
    }
}

/// Expected first-cohomology dimension for the symmetric-power module of
/// degree k with rational coefficients: twice the cusp-form dimension in
/// weight k + 2, plus one for the boundary (Eisenstein) class.  Odd degrees
/// carry no invariant vectors at all and give zero; degree zero is the
/// trivial module, whose first cohomology vanishes because the group is
/// generated by elements of finite order.
pub fn eichler_shimura_expected(k: u32) -> usize {
    if k == 0 || k % 2 == 1 {
        return 0;
    }
    (2 * cusp_form_dimension(k + 2) + 1) as usize
}

/// Expected degree-one dimension for the level-N function module with
/// rational coefficients: 1 + |PSL2(Z/N)| / 6.  The level cover retracts
/// onto a wedge of circles whose fundamental group is free of this rank
/// (an Euler-characteristic count over the quotient of the index-6 image
/// of the two standard torsion elements), and degree one of a free group
/// has one dimension per free generator.
pub fn euler_expected(n: u64) -> usize {
    let o = psl2_order(n);
    assert!(o.is_multiple_of(6), "torsion subgroup index must be integral");
    (1 + o / 6) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_table() {
        let expected = [1u64, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), e, "phi({})", i + 1);
        }
    }

    #[test]
    fn group_order_table() {
        assert_eq!(sl2_order(2), 6);
        assert_eq!(sl2_order(3), 24);
        assert_eq!(sl2_order(4), 48);
        assert_eq!(sl2_order(5), 120);
        assert_eq!(sl2_order(6), 144);
        assert_eq!(sl2_order(8), 384);
        assert_eq!(sl2_order(10), 720);
        assert_eq!(sl2_order(12), 1152);
        assert_eq!(gl2_order(2), 6);
        assert_eq!(gl2_order(3), 48);
        assert_eq!(gl2_order(4), 96);
        assert_eq!(gl2_order(5), 480);
        assert_eq!(gl2_order(8), 1536);
        assert_eq!(gl2_order(12), 4608);
    }

    #[test]
    fn psl2_order_table() {
        assert_eq!(psl2_order(2), 6);
        assert_eq!(psl2_order(3), 12);
        assert_eq!(psl2_order(4), 24);
        assert_eq!(psl2_order(5), 60);
    }

    #[test]
    fn cusp_dimension_table() {
        // Weight:    4  6  8  10 12 14 16 18 20 22 24 26
        let expected = [0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 1];
        for (i, &e) in expected.iter().enumerate() {
            let w = 4 + 2 * i as u32;
            assert_eq!(cusp_form_dimension(w), e, "weight {}", w);
        }
    }

    #[test]
    fn symmetric_power_expectations() {
        assert_eq!(eichler_shimura_expected(0), 0);
        assert_eq!(eichler_shimura_expected(2), 1);
        assert_eq!(eichler_shimura_expected(4), 1);
        assert_eq!(eichler_shimura_expected(6), 1);
        assert_eq!(eichler_shimura_expected(8), 1);
        assert_eq!(eichler_shimura_expected(10), 3);
        assert_eq!(eichler_shimura_expected(12), 1);
        for odd in [1u32, 3, 5, 7, 9, 11] {
            assert_eq!(eichler_shimura_expected(odd), 0, "odd degree {}", odd);
        }
    }

    #[test]
    fn function_module_expectations() {
        assert_eq!(euler_expected(2), 2);
        assert_eq!(euler_expected(3), 3);
        assert_eq!(euler_expected(4), 5);
        assert_eq!(euler_expected(5), 11);
    }
}
