//! Property tests for the structural invariants of the numerical core.

use proptest::prelude::*;
use randzeros::ensembles::ClosedFormFamily;
use randzeros::numerics::{integrate_adaptive, Interval, Poly};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Product rule holds coefficientwise on random inputs of degree up
    /// to 20.
    #[test]
    fn polynomial_product_rule(
        a in proptest::collection::vec(-10.0f64..10.0, 1..21),
        b in proptest::collection::vec(-10.0f64..10.0, 1..21),
    ) {
        let p = Poly::new(a);
        let q = Poly::new(b);
        let lhs = (&p * &q).derivative();
        let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
        let scale = lhs.max_coeff().max(rhs.max_coeff()).max(1.0);
        prop_assert_eq!(lhs.degree(), rhs.degree());
        for (l, r) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((l - r).abs() <= 1e-12 * scale);
        }
    }

    /// Splitting the integration interval changes the result by at most
    /// twice the tolerance.
    #[test]
    fn quadrature_additive_under_splitting(
        split in -0.9f64..2.4,
        freq in 0.5f64..4.0,
    ) {
        let f = move |x: f64| (freq * x).cos() * (-0.3 * x * x).exp();
        let tol = 1e-9;
        let whole = integrate_adaptive(f, Interval::new(-1.0, 2.5), tol).unwrap();
        let left = integrate_adaptive(f, Interval::new(-1.0, split), tol).unwrap();
        let right = integrate_adaptive(f, Interval::new(split, 2.5), tol).unwrap();
        prop_assert!((whole.value - left.value - right.value).abs() <= 2.0 * tol);
    }

    /// The iid-coefficient density satisfies the inversion symmetry
    /// rho(t) = rho(1/t)/t^2 away from the origin.
    #[test]
    fn iid_density_inversion(n in 1usize..30, t in 0.05f64..20.0) {
        let f = ClosedFormFamily::Kac { n };
        let lhs = f.density(t).unwrap();
        let rhs = f.density(1.0 / t).unwrap() / (t * t);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.max(1.0));
    }

    /// Decimal serialization at 17 significant digits round-trips f64
    /// bit-exactly (the CSV encoding contract).
    #[test]
    fn seventeen_digit_round_trip(x in proptest::num::f64::NORMAL) {
        let text = format!("{x:.16e}");
        let back: f64 = text.parse().unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits());
    }
}
