//! Exact move counts.
//!
//! The recurrences start from `f_0 = g_0 = h_0 = 0` and for arity `m`:
//!
//! ```text
//! f_n = 2·g_{n-1} + 1
//! g_n = 2·g_{n-1} + (m-1)·h_{n-1} + m
//! h_n = 2·g_{n-1} + m·h_{n-1} + m + 1
//! ```
//!
//! For `m ≥ 2`, `f_n = ⌊(R − m + 2)·τⁿ / 2R⌋` with `R = √((m+2)² − 8)` and
//! `τ = (m + 2 + R)/2`; [`count_f_closed`] evaluates that floor exactly in
//! Q(√D).

mod quadratic;

pub use quadratic::QuadraticValue;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("the closed form needs arity at least 2, got {0}")]
    UnsupportedArity(usize),
}

/// Moves of the straightforward binary solver: (4ⁿ − 1)/3.
pub fn count_t(n: u32) -> BigUint {
    let four_pow = BigUint::one() << (2 * n as usize);
    (four_pow - 1u32) / 3u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FghCounts {
    pub f: BigUint,
    pub g: BigUint,
    pub h: BigUint,
}

/// f, g and h for height `n` and arity `m`, by the recurrences.
pub fn count_fgh(n: u32, m: usize) -> FghCounts {
    assert!(m >= 1, "arity must be at least 1");
    let mut g = BigUint::zero();
    let mut h = BigUint::zero();
    let mut f = BigUint::zero();
    let m_big = BigUint::from(m);
    for _ in 0..n {
        f = &g * 2u32 + 1u32;
        let next_g = &g * 2u32 + &h * (&m_big - 1u32) + &m_big;
        let next_h = &g * 2u32 + &h * &m_big + &m_big + 1u32;
        g = next_g;
        h = next_h;
    }
    FghCounts { f, g, h }
}

/// f_n from the floor closed form, evaluated exactly.
pub fn count_f_closed(n: u32, m: usize) -> Result<BigUint, CountError> {
    if m < 2 {
        return Err(CountError::UnsupportedArity(m));
    }
    let d = QuadraticValue::discriminant(m);
    // (R − m + 2)/(2R) = 1/2 − (m − 2)/(2D)·√D
    let coefficient = QuadraticValue::new(
        BigRational::new(BigInt::one(), BigInt::from(2u32)),
        BigRational::new(-(BigInt::from(m) - 2u32), &d * 2u32),
        d,
    );
    let value = &coefficient * &QuadraticValue::tau(m).pow(n);
    let floor = value.floor();
    Ok(floor
        .to_biguint()
        .expect("the closed form is nonnegative for m >= 2"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub n: u32,
    /// Only defined for binary trees.
    pub t: Option<BigUint>,
    pub f: BigUint,
    pub g: BigUint,
    pub h: BigUint,
}

/// Rows `0..=n_max` of the count table for arity `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub m: usize,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn new(n_max: u32, m: usize) -> Self {
        assert!(m >= 1, "arity must be at least 1");
        let mut rows = Vec::with_capacity(n_max as usize + 1);
        let (mut f, mut g, mut h) = (BigUint::zero(), BigUint::zero(), BigUint::zero());
        let m_big = BigUint::from(m);
        for n in 0..=n_max {
            if n > 0 {
                let next_f = &g * 2u32 + 1u32;
                let next_g = &g * 2u32 + &h * (&m_big - 1u32) + &m_big;
                let next_h = &g * 2u32 + &h * &m_big + &m_big + 1u32;
                (f, g, h) = (next_f, next_g, next_h);
            }
            rows.push(CountRow {
                n,
                t: (m == 2).then(|| count_t(n)),
                f: f.clone(),
                g: g.clone(),
                h: h.clone(),
            });
        }
        Self { m, rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn t_values() {
        assert_eq!(count_t(0), big(0));
        assert_eq!(count_t(1), big(1));
        assert_eq!(count_t(3), big(21));
        assert_eq!(count_t(4), big(85));
        let mut t = big(0);
        for n in 0..40 {
            assert_eq!(count_t(n), t);
            t = t * 4u32 + 1u32;
        }
    }

    #[test]
    fn fgh_values() {
        let c = count_fgh(3, 2);
        assert_eq!(c.f, big(19));
        let c2 = count_fgh(2, 2);
        assert_eq!((c2.f, c2.g, c2.h), (big(5), big(9), big(13)));
        assert_eq!(
            count_fgh(1, 2),
            FghCounts {
                f: big(1),
                g: big(2),
                h: big(3)
            }
        );
        assert_eq!(count_fgh(3, 2).g, big(33));
        assert_eq!(count_fgh(3, 2).h, big(47));
        assert_eq!(count_fgh(3, 1).f, big(7));
        assert_eq!(
            count_fgh(0, 5),
            FghCounts {
                f: big(0),
                g: big(0),
                h: big(0)
            }
        );
        assert_eq!(count_fgh(2, 3).f, big(7));
    }

    #[test]
    fn f_satisfies_second_order_recurrence() {
        for m in 1..=6usize {
            let f: Vec<_> = (0..30).map(|n| count_fgh(n, m).f).collect();
            assert_eq!((f[0].clone(), f[1].clone()), (big(0), big(1)));
            for n in 2..30 {
                // f_n = (m+2) f_{n-1} - 2 f_{n-2} + m - 1
                let lhs = &f[n] + &f[n - 2] * 2u32;
                let rhs = &f[n - 1] * (m as u32 + 2) + (m as u32 - 1);
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn h_identity_for_binary() {
        for n in 1..40 {
            let now = count_fgh(n, 2);
            let before = count_fgh(n - 1, 2);
            assert_eq!(&now.h + &before.g * 2u32 + 1u32, &now.g * 2u32, "n={n}");
        }
    }

    #[test]
    fn shifted_f_is_half_trace_of_tau_powers() {
        // p_n = f_n + 1 = (τⁿ + τ̂ⁿ)/2, and p_n = 4p_{n-1} - 2p_{n-2}.
        let tau = QuadraticValue::tau(2);
        let tau_hat = QuadraticValue::tau_hat(2);
        let half = BigRational::new(1.into(), 2.into());
        let p: Vec<_> = (0..50).map(|n| count_fgh(n, 2).f + 1u32).collect();
        assert_eq!((p[0].clone(), p[1].clone()), (big(1), big(2)));
        for n in 2..50 {
            assert_eq!(&p[n] + &p[n - 2] * 2u32, &p[n - 1] * 4u32);
        }
        for (n, p_n) in p.iter().enumerate() {
            let sum = (&tau.pow(n as u32) + &tau_hat.pow(n as u32)).scale(&half);
            let expected = BigRational::from_integer(BigInt::from(p_n.clone()));
            assert_eq!(sum.to_rational(), Some(expected), "n={n}");
        }
    }

    #[test]
    fn unary_is_classic_hanoi() {
        for n in 0..=30u32 {
            assert_eq!(count_fgh(n, 1).f, (BigUint::one() << n as usize) - 1u32);
        }
    }

    #[test]
    fn f_beats_t_from_height_three() {
        for n in 1..=2 {
            assert_eq!(count_fgh(n, 2).f, count_t(n));
        }
        for n in 3..=20 {
            assert!(count_fgh(n, 2).f < count_t(n));
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_f_closed(3, 2), Ok(big(19)));
        assert_eq!(count_f_closed(0, 2), Ok(big(0)));
        assert_eq!(count_f_closed(4, 3), Ok(big(163)));
        assert_eq!(count_f_closed(5, 1), Err(CountError::UnsupportedArity(1)));
        assert_eq!(count_f_closed(5, 0), Err(CountError::UnsupportedArity(0)));
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for n in 0..=64 {
            assert_eq!(count_f_closed(n, 2).unwrap(), count_fgh(n, 2).f, "n={n}");
        }
        for m in 3..=6 {
            for n in 0..=32 {
                assert_eq!(
                    count_f_closed(n, m).unwrap(),
                    count_fgh(n, m).f,
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn table_rows() {
        let table = CountTable::new(3, 2);
        let row = &table.rows[3];
        assert_eq!(row.t, Some(big(21)));
        assert_eq!(
            (row.f.clone(), row.g.clone(), row.h.clone()),
            (big(19), big(33), big(47))
        );
        assert_eq!(table.rows[2].t, Some(big(5)));
        assert_eq!(CountTable::new(4, 3).rows[4].t, None);
        for m in 1..=5 {
            let table = CountTable::new(20, m);
            for row in &table.rows {
                let c = count_fgh(row.n, m);
                assert_eq!((&row.f, &row.g, &row.h), (&c.f, &c.g, &c.h));
            }
            for w in table.rows.windows(2) {
                assert!(w[0].f <= w[1].f && w[0].g <= w[1].g && w[0].h <= w[1].h);
            }
        }
    }
}
