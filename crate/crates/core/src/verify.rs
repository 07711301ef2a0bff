//! Self-check suites run by `keller selftest`.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;

use crate::characters::{char_product, enumerate_characters, phi, CharValue};
use crate::error::Result;
use crate::mpnum::{BigComplex, BigFloat, PrecisionContext};
use crate::oracle::{agrees, relative_error, residual_exact};
use crate::recursion::residual;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Count, complete multiplicativity, orthogonality, zero pattern and
/// closure for every modulus `1..=k_max`.
pub fn character_suite(k_max: u64) -> Result<Vec<Check>> {
    let ctx = PrecisionContext::new(256)?;
    let tol = BigFloat::one().ldexp(-200);
    let mut roots: HashMap<CharValue, BigComplex> = HashMap::new();

    let mut count_bad = Vec::new();
    let mut mult_bad = Vec::new();
    let mut orth_bad = Vec::new();
    let mut zero_bad = Vec::new();
    let mut closure_bad = Vec::new();

    for k in 1..=k_max {
        let group = enumerate_characters(k)?;
        if group.len() as u64 != phi(k) {
            count_bad.push(k);
        }
        let tables: BTreeSet<Vec<CharValue>> = group.iter().map(|c| c.table().to_vec()).collect();
        for chi in &group {
            let t = chi.table();
            let multiplicative = (0..k).all(|m| {
                (0..k).all(|n| t[(m * n % k) as usize] == t[m as usize].mul(t[n as usize]))
            });
            if !multiplicative {
                mult_bad.push(chi.name());
            }
            if (0..k).any(|n| t[n as usize].is_zero() != (n.gcd(&k) > 1)) {
                zero_bad.push(chi.name());
            }
            if !chi.is_principal() {
                let mut sum = BigComplex::zero();
                for v in t {
                    let z = roots
                        .entry(*v)
                        .or_insert_with(|| v.to_complex(&ctx).expect("valid root"));
                    sum = sum.add(z, &ctx);
                }
                if sum.re.abs() > tol || sum.im.abs() > tol {
                    orth_bad.push(chi.name());
                }
            }
        }
        if k <= 30 {
            for a in &group {
                for b in &group {
                    let p = char_product(a, b)?;
                    if !tables.contains(p.table()) {
                        closure_bad.push(format!("{} * {}", a.name(), b.name()));
                    }
                }
            }
        }
    }

    let report = |name: &str, bad: Vec<String>| {
        let detail = if bad.is_empty() {
            format!("k <= {k_max}")
        } else {
            format!("failures: {}", bad.join(", "))
        };
        Check::new(name, bad.is_empty(), detail)
    };
    Ok(vec![
        report("count equals phi(k)", count_bad.iter().map(|k| k.to_string()).collect()),
        report("complete multiplicativity", mult_bad),
        report("orthogonality of non-principal characters", orth_bad),
        report("zero exactly where gcd(n, k) > 1", zero_bad),
        report("closure under pointwise product (k <= 30)", closure_bad),
    ])
}

/// Every character table mod `k`, found by exhaustive search over
/// assignments of `phi(k)`-th roots of unity to the units.
pub fn brute_force_tables(k: u64) -> BTreeSet<Vec<CharValue>> {
    let units: Vec<u64> = (0..k).filter(|n| n.gcd(&k) == 1).collect();
    let order = units.len() as u64;
    let total = order.pow(units.len() as u32);
    let mut found = BTreeSet::new();
    for code in 0..total {
        let mut table = vec![CharValue::Zero; k as usize];
        let mut c = code;
        for &u in &units {
            table[u as usize] = CharValue::root((c % order) as i64, order);
            c /= order;
        }
        if k > 1 && table[1] != CharValue::ONE {
            continue;
        }
        if k == 1 {
            table[0] = CharValue::root((code % order) as i64, order);
            if table[0] != CharValue::ONE {
                continue;
            }
        }
        let ok = (0..k).all(|m| {
            (0..k).all(|n| table[(m * n % k) as usize] == table[m as usize].mul(table[n as usize]))
        });
        if ok {
            found.insert(table);
        }
    }
    found
}

pub fn brute_force_suite(moduli: &[u64]) -> Result<Vec<Check>> {
    moduli
        .iter()
        .map(|&k| {
            let want = brute_force_tables(k);
            let got: BTreeSet<Vec<CharValue>> = enumerate_characters(k)?
                .iter()
                .map(|c| c.table().to_vec())
                .collect();
            Ok(Check::new(
                format!("brute-force character set mod {k}"),
                want == got,
                format!("{} enumerated, {} by exhaustive search", got.len(), want.len()),
            ))
        })
        .collect()
}

/// Multiprecision residual against the exact Gaussian-rational oracle.
pub fn oracle_suite(moduli: &[u64], n_max: usize, s_list: &[u32], rel_bits: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &k in moduli {
        let group = enumerate_characters(k)?;
        let mut worst = 0f64;
        let mut bad = Vec::new();
        for chi in &group {
            for n in 1..=n_max {
                for &s in s_list {
                    let exact = residual_exact(n, s, chi)?;
                    let approx = residual(n, s, chi)?;
                    worst = worst.max(relative_error(&approx, &exact));
                    if !agrees(&approx, &exact, rel_bits) {
                        bad.push(format!("{} n={n} s={s}", chi.name()));
                    }
                }
            }
        }
        let detail = if bad.is_empty() {
            format!("worst relative error {worst:.3e}")
        } else {
            format!("failures: {}", bad.join(", "))
        };
        out.push(Check::new(
            format!("exact residual oracle mod {k} (2^-{rel_bits} relative)"),
            bad.is_empty(),
            detail,
        ));
    }
    Ok(out)
}
