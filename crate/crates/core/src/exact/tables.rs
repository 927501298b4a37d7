//! Per-conductor tables: the cyclotomic polynomial, reduced powers of the
//! primitive root, and the unit group. Built once and shared process-wide.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

/// Integer data describing the field `Q(ζ_n)` in the power basis
/// `1, ζ, …, ζ^(φ(n)-1)`.
#[derive(Debug)]
pub struct FieldTables {
    pub n: u32,
    pub phi: usize,
    /// Coefficients of Φ_n, lowest degree first (monic, length φ+1).
    pub cyclotomic_poly: Vec<i64>,
    /// `powers[k]` is ζ^k reduced modulo Φ_n, for `0 <= k < n`.
    pub powers: Vec<Vec<i64>>,
    /// Residues `a` in `[1, n)` with `gcd(a, n) = 1` (just `[0]` for n = 1).
    pub units: Vec<u32>,
}

fn registry() -> &'static RwLock<HashMap<u32, Arc<FieldTables>>> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Arc<FieldTables>>>> = OnceLock::new();
    TABLES.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Returns the (memoized) tables for conductor `n`.
pub fn tables(n: u32) -> Arc<FieldTables> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(t) = registry().read().expect("table lock poisoned").get(&n) {
        return Arc::clone(t);
    }
    let built = Arc::new(build(n));
    let mut map = registry().write().expect("table lock poisoned");
    Arc::clone(map.entry(n).or_insert(built))
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|a| a.gcd(&n) == 1).count()
}

/// Φ_n by exact division of x^n - 1 by Φ_d for the proper divisors d.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_poly(d);
        num = poly_exact_div(&num, &div);
    }
    num
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = *den.last().unwrap();
    debug_assert_eq!(lead, 1);
    let qlen = rem.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn build(n: u32) -> FieldTables {
    let poly = cyclotomic_poly(n);
    let phi = poly.len() - 1;
    let mut powers: Vec<Vec<i64>> = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by ζ and reduce the overflow term with Φ_n
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] -= top * poly[j];
            }
        }
    }
    let units = if n == 1 {
        vec![0]
    } else {
        (1..n).filter(|a| a.gcd(&n) == 1).collect()
    };
    FieldTables {
        n,
        phi,
        cyclotomic_poly: poly,
        powers,
        units,
    }
}
