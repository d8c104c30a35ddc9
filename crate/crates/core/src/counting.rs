//! Counting `m × n` boolean matrices that avoid `[[0,1],[1,0]]`.
//!
//! `c_{m,n}` has a closed form for each fixed `m`; the forms for `m = 2..=5`
//! are evaluated here in exact rational arithmetic (the power terms have
//! negative exponents for small `n`) and compared against exhaustive counts.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::boolmat::columns_compatible;
use crate::error::{Error, Result};
use crate::subset::MAX_INDEX;

/// Exact rationals; no floating point is used anywhere in counting.
pub type ExactRational = BigRational;

/// Largest `m · n` brute force will scan by default (2^25 matrices).
pub const DEFAULT_GUARD_BITS: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountSource {
    ClosedFormula,
    BruteForce,
}

impl fmt::Display for CountSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountSource::ClosedFormula => "closed_formula",
            CountSource::BruteForce => "brute_force",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
    pub source: CountSource,
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `(1 / denominator) · Π factors(n) · base^(n - offset)`, each factor a
/// polynomial with coefficients in ascending degree.
struct ClosedFormula {
    denominator: u64,
    factors: &'static [&'static [u64]],
    base: u64,
    offset: i64,
}

const FORMULAS: [ClosedFormula; 4] = [
    // (3 + n) 3^(n-1)
    ClosedFormula {
        denominator: 1,
        factors: &[&[3, 1]],
        base: 3,
        offset: 1,
    },
    // (1/3) (2 + n)(96 + 31n + n^2) 4^(n-3)
    ClosedFormula {
        denominator: 3,
        factors: &[&[2, 1], &[96, 31, 1]],
        base: 4,
        offset: 3,
    },
    ClosedFormula {
        denominator: 36,
        factors: &[&[2812500, 3963450, 1862971, 339300, 21265, 510, 4]],
        base: 5,
        offset: 7,
    },
    ClosedFormula {
        denominator: 350,
        factors: &[&[
            4571242905600,
            9431397663120,
            7249916118636,
            2618093085240,
            466294991825,
            41039857215,
            1926425298,
            50381010,
            729825,
            5415,
            16,
        ]],
        base: 6,
        offset: 13,
    },
];

impl ClosedFormula {
    fn evaluate(&self, n: usize) -> ExactRational {
        let x = BigInt::from(n);
        let poly = |coeffs: &[u64]| -> BigInt {
            coeffs
                .iter()
                .rev()
                .fold(BigInt::zero(), |acc, &c| acc * &x + BigInt::from(c))
        };
        let product = self
            .factors
            .iter()
            .fold(BigInt::one(), |acc, f| acc * poly(f));
        let exponent = n as i64 - self.offset;
        let power = BigInt::from(self.base).pow(exponent.unsigned_abs() as u32);
        let scale = if exponent >= 0 {
            ExactRational::from_integer(power)
        } else {
            ExactRational::new(BigInt::one(), power)
        };
        ExactRational::new(product, BigInt::from(self.denominator)) * scale
    }
}

/// The closed formula for `c_{m,n}` as an exact rational, before the
/// integrality check.
pub fn closed_value(m: usize, n: usize) -> Result<ExactRational> {
    if !(2..=5).contains(&m) {
        return Err(Error::UnsupportedRows { m });
    }
    if n == 0 {
        return Err(Error::InvalidRank { n, max: MAX_INDEX });
    }
    Ok(FORMULAS[m - 2].evaluate(n))
}

/// `c_{m,n}` from the closed formula for `2 ≤ m ≤ 5`. Fails if the
/// formula does not land on a positive integer.
pub fn closed_count(m: usize, n: usize) -> Result<CountResult> {
    let value = closed_value(m, n)?;
    if !value.is_integer() || !value.is_positive() {
        return Err(Error::NonIntegralCount {
            m,
            n,
            value: value.to_string(),
        });
    }
    let value = value.to_integer().to_biguint().expect("positive integer");
    Ok(CountResult {
        m,
        n,
        value,
        source: CountSource::ClosedFormula,
    })
}

/// `c_{m,n}` by exhaustive search over all `2^{mn}` matrices.
///
/// Columns are fixed left to right. A column that clashes with an earlier one
/// rejects every matrix sharing that prefix at once, so each of the `2^{mn}`
/// matrices is either counted at a leaf or discarded with its subtree.
pub fn brute_count(m: usize, n: usize, guard_bits: usize) -> Result<CountResult> {
    for dim in [m, n] {
        if dim == 0 || dim > MAX_INDEX {
            return Err(Error::InvalidRank {
                n: dim,
                max: MAX_INDEX,
            });
        }
    }
    if m * n > guard_bits {
        return Err(Error::GuardExceeded {
            what: "brute-force matrix bits",
            requested: m * n,
            limit: guard_bits,
        });
    }
    let columns: u32 = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let total: u64 = (0..=columns)
        .into_par_iter()
        .map(|first| {
            let mut prefix = Vec::with_capacity(n);
            prefix.push(first);
            count_columns(n, columns, &mut prefix)
        })
        .sum();
    Ok(CountResult {
        m,
        n,
        value: BigUint::from(total),
        source: CountSource::BruteForce,
    })
}

fn count_columns(n: usize, max_column: u32, prefix: &mut Vec<u32>) -> u64 {
    if prefix.len() == n {
        return 1;
    }
    let mut total = 0;
    for col in 0..=max_column {
        if prefix
            .iter()
            .all(|&earlier| columns_compatible(earlier, col))
        {
            prefix.push(col);
            total += count_columns(n, max_column, prefix);
            prefix.pop();
        }
    }
    total
}

/// `|D_n| = c_{n,n}` for `1 ≤ n ≤ 5`.
pub fn dn_cardinality(n: usize) -> Result<CountResult> {
    match n {
        0 => Err(Error::InvalidRank { n, max: MAX_INDEX }),
        1 => Ok(CountResult {
            m: 1,
            n: 1,
            value: BigUint::from(2u32),
            source: CountSource::ClosedFormula,
        }),
        2..=5 => closed_count(n, n),
        _ => Err(Error::UnsupportedRows { m: n }),
    }
}

/// `(m, n)` with `2 ≤ m ≤ 5` and `m · n ≤ guard_bits`, row-major.
pub fn formula_grid(guard_bits: usize) -> Vec<(usize, usize)> {
    (2..=5)
        .flat_map(|m| (1..=guard_bits / m).map(move |n| (m, n)))
        .collect()
}

impl CountResult {
    pub fn as_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }
}
