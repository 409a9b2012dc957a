//! Feasibility of the three "n large enough" side conditions, evaluated in
//! the log domain so that the doubly exponential ranges involved neither
//! overflow nor underflow.
//!
//! 1. n^ε > (g−3)·k^{g−1}
//! 2. e^{−n^{1+2ε}/(2t²)}·q·(et)^{2n/t} < 1
//! 3. q·(e·k·r^k)^{2n}·(1 − 1/r²)^{n^{1+ε}/4} < 1
//!
//! At desk scale these fail by enormous margins; the report says where they
//! start holding via a doubling search over n.

use std::fmt;

use super::ConstructionParams;

/// The numbers the three conditions depend on.
#[derive(Clone, Copy, Debug)]
pub struct LargenessParams {
    pub k: usize,
    pub q: usize,
    pub g: usize,
    pub epsilon: f64,
    pub t: u64,
    pub r: usize,
    pub n: usize,
}

impl From<&ConstructionParams> for LargenessParams {
    fn from(p: &ConstructionParams) -> Self {
        LargenessParams {
            k: p.k,
            q: p.q,
            g: p.g,
            epsilon: p.epsilon,
            t: p.t,
            r: p.r,
            n: p.n,
        }
    }
}

/// One condition: whether it holds at the given n, the log-domain margin
/// (positive iff it holds), and the doubling-search point where it holds.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub name: &'static str,
    pub holds: bool,
    /// Log-domain slack at the given n; positive iff the condition holds.
    pub margin: f64,
    /// First n of the doubling sequence 1, 2, 4, … at which the condition
    /// holds (as an exact power of two in an f64), or None up to 2^200.
    pub minimal_n: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub conditions: [ConditionReport; 3],
}

impl FeasibilityReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            write!(
                f,
                "condition={} holds={} margin={:.6e} minimal_n=",
                c.name, c.holds, c.margin
            )?;
            match c.minimal_n {
                Some(n) if n <= 2f64.powi(53) => writeln!(f, "{n}")?,
                Some(n) => writeln!(f, "{n:e}")?,
                None => writeln!(f, "none")?,
            }
        }
        Ok(())
    }
}

/// Margin of condition 1 at n: ε·ln n − ln((g−3)·k^{g−1}).
fn margin1(p: &LargenessParams, n: f64) -> f64 {
    let rhs_log = if p.g <= 3 {
        f64::NEG_INFINITY // (g−3)·k^{g−1} = 0
    } else {
        ((p.g - 3) as f64).ln() + (p.g - 1) as f64 * (p.k as f64).ln()
    };
    p.epsilon * n.ln() - rhs_log
}

/// Margin of condition 2 at n: n^{1+2ε}/(2t²) − ln q − (2n/t)(1 + ln t).
fn margin2(p: &LargenessParams, n: f64) -> f64 {
    let t = p.t as f64;
    let power = ((1.0 + 2.0 * p.epsilon) * n.ln()).exp();
    let ln_q = (p.q as f64).ln(); // q = 0 gives −inf: the product is 0 < 1
    power / (2.0 * t * t) - ln_q - (2.0 * n / t) * (1.0 + t.ln())
}

/// Margin of condition 3 at n:
/// −ln q − 2n(1 + ln k + k·ln r) − (n^{1+ε}/4)·ln(1 − 1/r²).
fn margin3(p: &LargenessParams, n: f64) -> f64 {
    let r = p.r as f64;
    let ln_q = (p.q as f64).ln();
    let ln_decay = (1.0 - 1.0 / (r * r)).ln(); // r = 1 gives −inf: bound is 0
    let growth = 2.0 * n * (1.0 + (p.k as f64).ln() + p.k as f64 * r.ln());
    let power = ((1.0 + p.epsilon) * n.ln()).exp();
    if ln_decay == f64::NEG_INFINITY {
        return f64::INFINITY;
    }
    -ln_q - growth - power / 4.0 * ln_decay
}

/// Log-domain margin of condition `index` (0, 1 or 2) at an arbitrary n,
/// positive iff the condition holds there. Exposed so that reported
/// doubling points can be re-verified even when they exceed `usize`.
pub fn condition_margin(p: &LargenessParams, index: usize, n: f64) -> f64 {
    match index {
        0 => margin1(p, n),
        1 => margin2(p, n),
        2 => margin3(p, n),
        _ => panic!("condition index out of range"),
    }
}

fn condition(name: &'static str, p: &LargenessParams, margin: fn(&LargenessParams, f64) -> f64) -> ConditionReport {
    let at_n = margin(p, p.n as f64);
    let holds = at_n > 0.0;
    let mut minimal_n = None;
    let mut n = 1f64;
    while n <= 2f64.powi(200) {
        if margin(p, n) > 0.0 {
            minimal_n = Some(n);
            break;
        }
        n *= 2.0;
    }
    ConditionReport {
        name,
        holds,
        margin: at_n,
        minimal_n,
    }
}

/// Evaluate the three largeness conditions at the given parameters and find
/// the doubling point of each.
pub fn feasibility_report(p: &LargenessParams) -> FeasibilityReport {
    FeasibilityReport {
        conditions: [
            condition("n^eps > (g-3)k^(g-1)", p, margin1),
            condition("exp(-n^(1+2eps)/2t^2) q (et)^(2n/t) < 1", p, margin2),
            condition("q (e k r^k)^(2n) (1-1/r^2)^(n^(1+eps)/4) < 1", p, margin3),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(n: usize) -> LargenessParams {
        LargenessParams {
            k: 3,
            q: 3,
            g: 5,
            epsilon: 0.04,
            t: 4,
            r: 1,
            n,
        }
    }

    #[test]
    fn condition1_fails_at_desk_scale() {
        // 100^0.04 ≈ 1.2 < (5−3)·3^4 = 162
        let report = feasibility_report(&base(100));
        let c1 = &report.conditions[0];
        assert!(!c1.holds);
        assert!(c1.margin < 0.0);
        // the doubling point re-verifies: fails at n/2, holds at n
        let min = c1.minimal_n.expect("within the search range");
        assert!(margin1(&base(100), min) > 0.0);
        assert!(margin1(&base(100), min / 2.0) <= 0.0);
        // roughly 162^25, astronomically large
        assert!(min > 1e50);
    }

    #[test]
    fn condition1_with_g3_always_holds() {
        let p = LargenessParams { g: 3, ..base(1) };
        let report = feasibility_report(&p);
        assert!(report.conditions[0].holds);
        assert_eq!(report.conditions[0].minimal_n, Some(1.0));
    }

    #[test]
    fn condition2_fails_small_holds_eventually() {
        let report = feasibility_report(&base(200));
        let c2 = &report.conditions[1];
        assert!(!c2.holds);
        let min = c2.minimal_n.expect("found by doubling");
        assert!(margin2(&base(200), min) > 0.0);
        assert!(margin2(&base(200), min / 2.0) <= 0.0);
    }

    #[test]
    fn condition3_trivial_at_r_1_and_real_at_r_2() {
        // r = 1: the (1 − 1/r²) factor is zero, the condition always holds
        let report = feasibility_report(&base(10));
        assert!(report.conditions[2].holds);
        assert_eq!(report.conditions[2].minimal_n, Some(1.0));
        // r = 2: fails at small n, holds at some doubling point
        let p = LargenessParams { r: 2, ..base(10) };
        let report = feasibility_report(&p);
        let c3 = &report.conditions[2];
        assert!(!c3.holds);
        let min = c3.minimal_n.expect("found by doubling");
        assert!(margin3(&p, min) > 0.0);
        assert!(margin3(&p, min / 2.0) <= 0.0);
    }

    #[test]
    fn q_zero_makes_conditions_2_and_3_trivial() {
        let p = LargenessParams {
            k: 1,
            q: 0,
            ..base(10)
        };
        let report = feasibility_report(&p);
        assert!(report.conditions[1].holds);
        assert!(report.conditions[2].holds);
    }
}
