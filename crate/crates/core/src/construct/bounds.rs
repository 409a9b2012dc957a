//! The three binomial-coefficient inequalities used by the probabilistic
//! estimates, evaluated exactly.
//!
//! 1. C(a,b) ≤ (ea/b)^b
//! 2. C(a−x,b)/C(a,b) ≤ ((a−b)/a)^x ≤ e^{−bx/a}   (for 0 ≤ x < b, b+x < a)
//! 3. C(a−x,b−x)/C(a,b) ≤ (b/a)^x
//!
//! Purely rational comparisons are decided in exact arithmetic. Where e
//! appears, a 30-digit rational bound replaces it on the side that makes the
//! check sufficient: a lower bound when e is on the large side, an upper
//! bound when e^{−·} is. The slack of both inequalities dwarfs 10⁻³⁰ on any
//! admissible input, so the verdicts are exact in practice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("need 1 <= b <= a, got a={a}, b={b}")]
    BadAB { a: u64, b: u64 },
    #[error("need x < b and b + x < a, got a={a}, b={b}, x={x}")]
    BadX { a: u64, b: u64, x: u64 },
}

/// Verdicts and exact ratios for the three inequalities.
#[derive(Clone, Debug)]
pub struct BinomialBounds {
    pub holds1: bool,
    pub holds2: bool,
    pub holds3: bool,
    /// C(a−x,b)/C(a,b)
    pub ratio2: BigRational,
    /// ((a−b)/a)^x
    pub bound2: BigRational,
    /// C(a−x,b−x)/C(a,b)
    pub ratio3: BigRational,
    /// (b/a)^x
    pub bound3: BigRational,
}

impl BinomialBounds {
    pub fn all_hold(&self) -> bool {
        self.holds1 && self.holds2 && self.holds3
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// 30-digit rational bounds on e.
fn e_bounds() -> (BigRational, BigRational) {
    let denom = BigInt::from(10u8).pow(30);
    let lo: BigInt = "2718281828459045235360287471352".parse().expect("digits of e");
    let hi = &lo + 1;
    (
        BigRational::new(lo, denom.clone()),
        BigRational::new(hi, denom),
    )
}

/// Evaluate the three inequalities at (a, b, x).
pub fn binomial_bounds(a: u64, b: u64, x: u64) -> Result<BinomialBounds, BoundsError> {
    if b == 0 || b > a {
        return Err(BoundsError::BadAB { a, b });
    }
    if !(x < b && b + x < a) {
        return Err(BoundsError::BadX { a, b, x });
    }
    let (e_lo, e_hi) = e_bounds();
    let big = |v: u64| BigInt::from(v);
    let rat = |v: u64| BigRational::from(BigInt::from(v));

    // (1)  C(a,b)·b^b <= (e_lo·a)^b  implies  C(a,b) <= (ea/b)^b
    let lhs1 = BigRational::from(binomial(a, b) * big(b).pow(b as u32));
    let rhs1 = (e_lo * rat(a)).pow(b as i32);
    let holds1 = lhs1 <= rhs1;

    // (2a) C(a−x,b)·a^x <= C(a,b)·(a−b)^x, all integers
    let ratio2 = BigRational::new(binomial(a - x, b), binomial(a, b));
    let bound2 = BigRational::new(big(a - b).pow(x as u32), big(a).pow(x as u32));
    let holds2a = ratio2 <= bound2;
    // (2b) ((a−b)/a)^x <= e^{−bx/a}; for x >= 1 take the x-th root and then
    // the a-th power: e_hi^b·(a−b)^a <= a^a suffices. x = 0 is 1 <= 1.
    let holds2b = if x == 0 {
        true
    } else {
        let lhs = e_hi.pow(b as i32) * BigRational::from(big(a - b).pow(a as u32));
        lhs <= BigRational::from(big(a).pow(a as u32))
    };

    // (3) C(a−x,b−x)·a^x <= C(a,b)·b^x, all integers
    let ratio3 = BigRational::new(binomial(a - x, b - x), binomial(a, b));
    let bound3 = BigRational::new(big(b).pow(x as u32), big(a).pow(x as u32));
    let holds3 = ratio3 <= bound3;

    Ok(BinomialBounds {
        holds1,
        holds2: holds2a && holds2b,
        holds3,
        ratio2,
        bound2,
        ratio3,
        bound3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(5, 6), BigInt::from(0));
        assert_eq!(binomial(200, 100).to_string().len(), 59); // 9.05e58
    }

    #[test]
    fn x_zero_gives_equalities() {
        let r = binomial_bounds(10, 3, 0).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.ratio2, BigRational::one());
        assert_eq!(r.bound2, BigRational::one());
        assert_eq!(r.ratio3, BigRational::one());
        assert_eq!(r.bound3, BigRational::one());
    }

    #[test]
    fn small_cases_hold_exactly() {
        // frozen from exact rational evaluation
        assert!(binomial_bounds(10, 3, 2).unwrap().all_hold());
        assert!(binomial_bounds(100, 10, 5).unwrap().all_hold());
        assert!(binomial_bounds(7, 3, 1).unwrap().all_hold());
    }

    #[test]
    fn preconditions_are_enforced() {
        assert_eq!(
            binomial_bounds(10, 0, 0).unwrap_err(),
            BoundsError::BadAB { a: 10, b: 0 }
        );
        assert_eq!(
            binomial_bounds(10, 3, 3).unwrap_err(),
            BoundsError::BadX { a: 10, b: 3, x: 3 }
        );
        // b + x = a violates b + x < a
        assert_eq!(
            binomial_bounds(5, 3, 2).unwrap_err(),
            BoundsError::BadX { a: 5, b: 3, x: 2 }
        );
    }

    #[test]
    fn random_triples_always_hold() {
        use rand::RngExt;
        let mut rng = crate::rng::rng_for(99, 0);
        let mut tested = 0;
        while tested < 300 {
            let a = rng.random_range(2..=120u64);
            let b = rng.random_range(1..a);
            let upper = b.min(a - b);
            if upper == 0 {
                continue;
            }
            let x = rng.random_range(0..upper);
            if !(x < b && b + x < a) {
                continue;
            }
            let r = binomial_bounds(a, b, x).unwrap();
            assert!(r.all_hold(), "a={a} b={b} x={x}");
            assert!(r.ratio2 <= r.bound2);
            assert!(r.ratio3 <= r.bound3);
            tested += 1;
        }
    }
}
