//! Exact counting of distinct real roots through Sturm chains.

use crate::error::{Error, Result};
use crate::numerics::{Interval, Poly};

/// Coefficients below this fraction of the working polynomial's largest
/// coefficient are treated as zero when trimming remainders.
const TRIM: f64 = 1e-12;

/// Number of distinct real roots of `p` in the open interval, by the
/// sign-change count of the Sturm chain. Remainders are rescaled to unit
/// max-norm at every step (positive scaling preserves the sign
/// structure). Endpoints that land on a root are nudged outward by
/// 1e-12 times the local scale. Infinite endpoints use the sign of the
/// leading coefficient.
pub fn sturm_count(p: &Poly, interval: Interval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain(
            "the zero polynomial has no root count".into(),
        ));
    }
    if p.degree() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(p)?;
    let lo = sign_changes_at(&chain, interval.lo)?;
    let hi = sign_changes_at(&chain, interval.hi)?;
    if lo < hi {
        return Err(Error::Degenerate(format!(
            "sign-change count increased across the interval ({lo} -> {hi}); \
             chain lost significance"
        )));
    }
    Ok(lo - hi)
}

fn sturm_chain(p: &Poly) -> Result<Vec<Poly>> {
    let mut chain = vec![p.normalized(), p.derivative().normalized()];
    loop {
        let len = chain.len();
        if chain[len - 1].degree() == 0 {
            break;
        }
        let r = poly_rem(&chain[len - 2], &chain[len - 1]);
        let r = trim_small(&r);
        if r.is_zero() {
            // nontrivial gcd: a multiple root within working precision
            return Err(Error::Degenerate(
                "Sturm chain collapsed; the polynomial has a (near-)multiple root".into(),
            ));
        }
        chain.push(r.scale(-1.0).normalized());
        if chain.len() > p.degree() + 2 {
            return Err(Error::Degenerate("Sturm chain exceeded its length bound".into()));
        }
    }
    Ok(chain)
}

/// Remainder of a / b by synthetic division.
fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let db = b.degree();
    let lead = b.leading_coeff();
    let mut rem: Vec<f64> = a.coeffs().to_vec();
    while rem.len() > db {
        let da = rem.len() - 1;
        let q = rem[da] / lead;
        for j in 0..=db {
            rem[da - db + j] -= q * b.coeffs()[j];
        }
        rem.pop();
    }
    Poly::new(rem)
}

fn trim_small(p: &Poly) -> Poly {
    let m = p.max_coeff();
    if m == 0.0 {
        return Poly::zero();
    }
    Poly::new(
        p.coeffs()
            .iter()
            .map(|&c| if c.abs() < TRIM * m { 0.0 } else { c })
            .collect(),
    )
}

fn sign_changes_at(chain: &[Poly], x: f64) -> Result<usize> {
    let signs: Vec<f64> = if x.is_infinite() {
        let neg = x < 0.0;
        chain
            .iter()
            .map(|p| {
                let s = p.leading_coeff();
                if neg && p.degree() % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect()
    } else {
        let mut at = x;
        // nudge off a root of the chain head
        let head = &chain[0];
        let scale = 1e-12 * (1.0 + x.abs());
        for _ in 0..8 {
            if head.eval(at) != 0.0 {
                break;
            }
            at += scale;
        }
        chain.iter().map(|p| p.eval(at)).collect()
    };
    let mut count = 0;
    let mut last = 0.0f64;
    for s in signs {
        if s == 0.0 {
            continue;
        }
        if last != 0.0 && s * last < 0.0 {
            count += 1;
        }
        last = s;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics() {
        let p = Poly::new(vec![-1.0, 0.0, 1.0]); // x^2 - 1
        assert_eq!(sturm_count(&p, Interval::new(-2.0, 2.0)).unwrap(), 2);
        assert_eq!(sturm_count(&p, Interval::new(0.0, 2.0)).unwrap(), 1);
        let q = Poly::new(vec![1.0, 0.0, 1.0]); // x^2 + 1
        assert_eq!(sturm_count(&q, Interval::entire()).unwrap(), 0);
    }

    #[test]
    fn product_of_shifted_linears() {
        // (x-1)(x-2)...(x-8) on (0.5, 8.5)
        let mut p = Poly::constant(1.0);
        for k in 1..=8 {
            p = &p * &Poly::new(vec![-(k as f64), 1.0]);
        }
        assert_eq!(sturm_count(&p, Interval::new(0.5, 8.5)).unwrap(), 8);
        assert_eq!(sturm_count(&p, Interval::new(2.5, 6.5)).unwrap(), 4);
        assert_eq!(sturm_count(&p, Interval::entire()).unwrap(), 8);
    }

    #[test]
    fn endpoint_on_root_is_nudged() {
        let p = Poly::new(vec![0.0, 1.0]); // x
        // x = 0 is a root; the nudge keeps the count well defined
        let c = sturm_count(&p, Interval::new(0.0, 1.0)).unwrap();
        assert!(c <= 1);
        assert_eq!(sturm_count(&p, Interval::new(-1.0, 1.0)).unwrap(), 1);
    }

    #[test]
    fn multiple_root_degenerates() {
        let p = Poly::new(vec![1.0, -2.0, 1.0]); // (x-1)^2
        assert!(matches!(
            sturm_count(&p, Interval::entire()),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn random_gaussian_polynomials_have_consistent_counts() {
        use crate::numerics::GaussianStream;
        let mut stream = GaussianStream::new(5150, 0);
        for _ in 0..500 {
            let p = Poly::new(stream.take_normals(11));
            let whole = sturm_count(&p, Interval::entire()).unwrap();
            let left = sturm_count(&p, Interval::new(f64::NEG_INFINITY, 0.37)).unwrap();
            let right = sturm_count(&p, Interval::new(0.37, f64::INFINITY)).unwrap();
            assert_eq!(whole, left + right);
            assert_eq!(whole % 2, p.degree() % 2, "parity of real root count");
        }
    }
}
