//! Dirichlet characters with exact root-of-unity values.
//!
//! The unit group `(Z/k)*` is split by the Chinese remainder theorem into
//! prime-power components. Each odd prime power is cyclic and uses its
//! smallest primitive root. `2^a` uses no generator for `a = 1`, `3` for
//! `a = 2`, and the pair `(2^a - 1, 5)` for `a >= 3`.
//!
//! A character is fixed by one exponent `t_i` per generator `g_i` of order
//! `o_i`, with `chi(g_i) = e^(2 pi i t_i / o_i)`. Characters are labelled by
//! mixed-radix counting over `(t_1, t_2, ...)`, the last exponent varying
//! fastest, starting from label 1 for the principal character.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::mpnum::{root_of_unity, BigComplex, PrecisionContext};

/// Largest modulus with a dense character table.
pub const MAX_MODULUS: u64 = 10_000;

/// A character value: zero, or the root of unity `e^(2 pi i a/m)` in lowest
/// terms (`1` is stored as `a = 0, m = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CharValue {
    Zero,
    Root { a: u64, m: u64 },
}

impl CharValue {
    pub const ONE: CharValue = CharValue::Root { a: 0, m: 1 };

    /// `e^(2 pi i a/m)`, reduced. Panics on `m = 0`.
    pub fn root(a: i64, m: u64) -> Self {
        assert!(m > 0, "root of unity with zero order");
        let a = a.rem_euclid(m as i64) as u64;
        let g = a.gcd(&m);
        CharValue::Root { a: a / g, m: m / g }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CharValue::Zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// True unless the value is a non-real root of unity.
    pub fn is_real(&self) -> bool {
        match *self {
            CharValue::Zero => true,
            CharValue::Root { m, .. } => m <= 2,
        }
    }

    pub fn mul(self, other: Self) -> Self {
        match (self, other) {
            (CharValue::Root { a: a1, m: m1 }, CharValue::Root { a: a2, m: m2 }) => {
                let l = m1.lcm(&m2);
                let a = (a1 * (l / m1) + a2 * (l / m2)) % l;
                CharValue::root(a as i64, l)
            }
            _ => CharValue::Zero,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root { a, m } => CharValue::root(-(a as i64), m),
        }
    }

    pub fn to_complex(&self, ctx: &PrecisionContext) -> Result<BigComplex> {
        match *self {
            CharValue::Zero => Ok(BigComplex::zero()),
            CharValue::Root { a, m } => root_of_unity(a as i64, m, ctx),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub g: u64,
    pub order: u64,
}

/// One CRT factor `q = p^e` of the modulus with its cyclic generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitComponent {
    pub prime: u64,
    pub power: u32,
    pub q: u64,
    pub generators: Vec<Generator>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupStructure {
    pub modulus: u64,
    pub components: Vec<UnitComponent>,
}

impl UnitGroupStructure {
    /// Generators of all components in label order.
    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.components.iter().flat_map(|c| c.generators.iter())
    }

    pub fn orders(&self) -> Vec<u64> {
        self.generators().map(|g| g.order).collect()
    }

    pub fn order(&self) -> u64 {
        self.generators().map(|g| g.order).product()
    }
}

/// Euler's totient.
pub fn phi(k: u64) -> u64 {
    factorize(k)
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            let mut e = 0;
            while k % p == 0 {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn check_modulus(k: u64) -> Result<()> {
    if k == 0 {
        return domain("modulus must be positive");
    }
    if k > MAX_MODULUS {
        return Err(Error::UnsupportedModulus {
            modulus: k,
            cap: MAX_MODULUS,
        });
    }
    Ok(())
}

/// CRT decomposition of `(Z/k)*` with explicit generators.
pub fn unit_group(k: u64) -> Result<UnitGroupStructure> {
    check_modulus(k)?;
    let components = factorize(k)
        .into_iter()
        .map(|(p, e)| {
            let q = p.pow(e);
            let generators = if p == 2 {
                match e {
                    1 => vec![],
                    2 => vec![Generator { g: 3, order: 2 }],
                    _ => vec![
                        Generator { g: q - 1, order: 2 },
                        Generator {
                            g: 5,
                            order: q / 4,
                        },
                    ],
                }
            } else {
                let order = (p - 1) * p.pow(e - 1);
                let ell: Vec<u64> = factorize(order).into_iter().map(|(l, _)| l).collect();
                let g = (2..q)
                    .find(|&g| g % p != 0 && ell.iter().all(|&l| pow_mod(g, order / l, q) != 1))
                    .expect("odd prime powers have primitive roots");
                vec![Generator { g, order }]
            };
            UnitComponent {
                prime: p,
                power: e,
                q,
                generators,
            }
        })
        .collect();
    Ok(UnitGroupStructure {
        modulus: k,
        components,
    })
}

/// A Dirichlet character modulo `k` with its dense value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    label: u64,
    exponents: Vec<u64>,
    orders: Vec<u64>,
    table: Vec<CharValue>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self) -> u64 {
        self.label
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Values at residues `0..k`.
    pub fn table(&self) -> &[CharValue] {
        &self.table
    }

    /// `chi(n)` for any integer `n`.
    pub fn eval(&self, n: i64) -> CharValue {
        self.table[n.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn eval_u64(&self, n: u64) -> CharValue {
        self.table[(n % self.modulus) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&t| t == 0)
    }

    /// True when every value is real (`0` or `±1`).
    pub fn is_real(&self) -> bool {
        self.table.iter().all(CharValue::is_real)
    }

    /// Short identifier, e.g. `chi_2 mod 5`.
    pub fn name(&self) -> String {
        format!("chi_{} mod {}", self.label, self.modulus)
    }
}

/// `chi(n)`, with `n` reduced modulo the character's modulus.
pub fn chi_eval(chi: &DirichletCharacter, n: i64) -> CharValue {
    chi.eval(n)
}

/// The modulus-1 character, equal to 1 everywhere (including at 0, since
/// `gcd(0, 1) = 1`). With it the recursion reduces to the zeta-function form.
pub fn keller_one() -> DirichletCharacter {
    DirichletCharacter {
        modulus: 1,
        label: 1,
        exponents: vec![],
        orders: vec![],
        table: vec![CharValue::ONE],
    }
}

fn label_of(exponents: &[u64], orders: &[u64]) -> u64 {
    exponents
        .iter()
        .zip(orders)
        .fold(0, |acc, (&t, &o)| acc * o + t)
        + 1
}

fn exponents_of(label: u64, orders: &[u64]) -> Vec<u64> {
    let mut idx = label - 1;
    let mut out = vec![0; orders.len()];
    for (slot, &o) in out.iter_mut().zip(orders).rev() {
        *slot = idx % o;
        idx /= o;
    }
    out
}

/// Pointwise product of two characters of the same modulus.
pub fn char_product(
    a: &DirichletCharacter,
    b: &DirichletCharacter,
) -> Result<DirichletCharacter> {
    if a.modulus != b.modulus {
        return domain(format!(
            "cannot multiply characters of moduli {} and {}",
            a.modulus, b.modulus
        ));
    }
    let exponents: Vec<u64> = a
        .exponents
        .iter()
        .zip(&b.exponents)
        .zip(&a.orders)
        .map(|((x, y), o)| (x + y) % o)
        .collect();
    Ok(DirichletCharacter {
        modulus: a.modulus,
        label: label_of(&exponents, &a.orders),
        exponents,
        orders: a.orders.clone(),
        table: a.table.iter().zip(&b.table).map(|(x, y)| x.mul(*y)).collect(),
    })
}

/// All `phi(k)` characters modulo `k`, in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterGroup {
    structure: UnitGroupStructure,
    characters: Vec<DirichletCharacter>,
}

impl CharacterGroup {
    pub fn modulus(&self) -> u64 {
        self.structure.modulus
    }

    pub fn structure(&self) -> &UnitGroupStructure {
        &self.structure
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// The character with `label` (1-based).
    pub fn get(&self, label: u64) -> Option<&DirichletCharacter> {
        label
            .checked_sub(1)
            .and_then(|i| self.characters.get(i as usize))
    }

    pub fn principal(&self) -> &DirichletCharacter {
        &self.characters[0]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DirichletCharacter> {
        self.characters.iter()
    }
}

impl<'a> IntoIterator for &'a CharacterGroup {
    type Item = &'a DirichletCharacter;
    type IntoIter = std::slice::Iter<'a, DirichletCharacter>;

    fn into_iter(self) -> Self::IntoIter {
        self.characters.iter()
    }
}

/// Enumerates every character modulo `k`.
pub fn enumerate_characters(k: u64) -> Result<CharacterGroup> {
    let structure = unit_group(k)?;
    let orders = structure.orders();

    // Discrete logs: residue mod k -> exponent of each generator.
    let mut logs: Vec<Option<Vec<u64>>> = vec![None; k as usize];
    let comp_logs: Vec<Vec<Option<Vec<u64>>>> =
        structure.components.iter().map(component_logs).collect();
    for (n, slot) in logs.iter_mut().enumerate() {
        let n = n as u64;
        if n.gcd(&k) != 1 {
            continue;
        }
        let mut v = Vec::with_capacity(orders.len());
        for (c, table) in structure.components.iter().zip(&comp_logs) {
            let e = table[(n % c.q) as usize]
                .as_ref()
                .expect("unit residues have logs");
            v.extend_from_slice(e);
        }
        *slot = Some(v);
    }

    let total: u64 = orders.iter().product();
    let common = orders.iter().fold(1u64, |l, &o| l.lcm(&o));
    let characters = (1..=total)
        .map(|label| {
            let exponents = exponents_of(label, &orders);
            let table = logs
                .iter()
                .map(|log| match log {
                    None => CharValue::Zero,
                    Some(e) => {
                        let a = e
                            .iter()
                            .zip(&exponents)
                            .zip(&orders)
                            .map(|((&ei, &ti), &oi)| (ei * ti % oi) * (common / oi))
                            .sum::<u64>()
                            % common;
                        CharValue::root(a as i64, common)
                    }
                })
                .collect();
            DirichletCharacter {
                modulus: k,
                label,
                exponents,
                orders: orders.clone(),
                table,
            }
        })
        .collect();
    Ok(CharacterGroup {
        structure,
        characters,
    })
}

/// Logs of every unit modulo `c.q` with respect to the component's
/// generators, by enumerating all generator-power products once.
fn component_logs(c: &UnitComponent) -> Vec<Option<Vec<u64>>> {
    let mut table = vec![None; c.q as usize];
    let orders: Vec<u64> = c.generators.iter().map(|g| g.order).collect();
    let count: u64 = orders.iter().product();
    for idx in 0..count {
        let e = exponents_of(idx + 1, &orders);
        let r = c
            .generators
            .iter()
            .zip(&e)
            .fold(1 % c.q, |acc, (g, &ei)| acc * pow_mod(g.g, ei, c.q) % c.q);
        table[r as usize] = Some(e);
    }
    table
}

/// One row of a character table export: `(label, n, kind, a, m)`.
///
/// Zero values carry `a = 0, m = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTableRow {
    pub label: u64,
    pub n: u64,
    pub kind: String,
    pub a: u64,
    pub m: u64,
}

pub fn table_rows(group: &CharacterGroup) -> Vec<CharTableRow> {
    group
        .iter()
        .flat_map(|chi| {
            chi.table().iter().enumerate().map(move |(n, v)| {
                let (kind, a, m) = match *v {
                    CharValue::Zero => ("zero", 0, 0),
                    CharValue::Root { a, m } => ("root", a, m),
                };
                CharTableRow {
                    label: chi.label(),
                    n: n as u64,
                    kind: kind.to_string(),
                    a,
                    m,
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> CharValue {
        CharValue::root(1, 4)
    }
    fn minus_i() -> CharValue {
        CharValue::root(3, 4)
    }
    fn minus_one() -> CharValue {
        CharValue::root(1, 2)
    }

    /// Brute-force multiplicative order.
    fn order_mod(g: u64, q: u64) -> u64 {
        let mut x = g % q;
        let mut k = 1;
        while x != 1 {
            x = x * g % q;
            k += 1;
        }
        k
    }

    #[test]
    fn unit_group_examples() {
        let s5 = unit_group(5).unwrap();
        assert_eq!(s5.components.len(), 1);
        assert_eq!(s5.components[0].generators, vec![Generator { g: 2, order: 4 }]);
        assert_eq!(order_mod(2, 5), 4);

        let s4 = unit_group(4).unwrap();
        assert_eq!(s4.components[0].generators, vec![Generator { g: 3, order: 2 }]);

        let s8 = unit_group(8).unwrap();
        assert_eq!(
            s8.components[0].generators,
            vec![Generator { g: 7, order: 2 }, Generator { g: 5, order: 2 }]
        );
        assert_eq!(order_mod(7, 8), 2);
        assert_eq!(order_mod(5, 8), 2);

        assert!(unit_group(2).unwrap().components[0].generators.is_empty());
        assert!(matches!(unit_group(0), Err(Error::Domain(_))));
        assert!(matches!(
            unit_group(10_001),
            Err(Error::UnsupportedModulus { .. })
        ));
    }

    #[test]
    fn generators_have_stated_orders() {
        for k in 1..=300 {
            let s = unit_group(k).unwrap();
            assert_eq!(s.order(), phi(k), "k={k}");
            for c in &s.components {
                for g in &c.generators {
                    assert_eq!(order_mod(g.g, c.q), g.order, "k={k} q={} g={}", c.q, g.g);
                }
            }
        }
    }

    #[test]
    fn characters_mod_5_match_reference_table() {
        let grp = enumerate_characters(5).unwrap();
        let one = CharValue::ONE;
        let z = CharValue::Zero;
        let want = [
            [z, one, one, one, one],
            [z, one, i(), minus_i(), minus_one()],
            [z, one, minus_one(), minus_one(), one],
            [z, one, minus_i(), i(), minus_one()],
        ];
        for (chi, row) in grp.iter().zip(want.iter()) {
            assert_eq!(chi.table(), row, "{}", chi.name());
        }
    }

    #[test]
    fn mod_4_and_mod_9() {
        let g4 = enumerate_characters(4).unwrap();
        assert_eq!(g4.len(), 2);
        assert_eq!(g4.get(2).unwrap().eval(3), minus_one());

        let g9 = enumerate_characters(9).unwrap();
        assert_eq!(g9.len(), 6);
        assert_eq!(g9.get(2).unwrap().eval(2), CharValue::root(1, 6));
        let complex: Vec<u64> = g9.iter().filter(|c| !c.is_real()).map(|c| c.label()).collect();
        assert_eq!(complex, vec![2, 3, 5, 6]);
    }

    #[test]
    fn eval_reduces_modulo() {
        let g5 = enumerate_characters(5).unwrap();
        let chi2 = g5.get(2).unwrap();
        assert_eq!(chi_eval(chi2, 3), minus_i());
        assert_eq!(chi_eval(chi2, 8), minus_i());
        assert_eq!(chi_eval(chi2, -2), minus_i());
        for chi in &g5 {
            assert_eq!(chi.eval(10), CharValue::Zero);
        }
    }

    #[test]
    fn keller_one_is_constant() {
        let k = keller_one();
        assert_eq!(k.modulus(), 1);
        assert_eq!(phi(1), 1);
        assert_eq!(k.eval(6), CharValue::ONE);
        assert_eq!(k.eval(0), CharValue::ONE);
        assert_eq!(enumerate_characters(1).unwrap().characters(), &[k]);
    }

    #[test]
    fn products() {
        let g5 = enumerate_characters(5).unwrap();
        let c = |l| g5.get(l).unwrap();
        assert_eq!(&char_product(c(2), c(4)).unwrap(), c(1));
        assert_eq!(&char_product(c(2), c(2)).unwrap(), c(3));
        for j in 1..=4 {
            assert_eq!(&char_product(c(1), c(j)).unwrap(), c(j));
        }
        let g4 = enumerate_characters(4).unwrap();
        assert!(char_product(c(1), g4.get(1).unwrap()).is_err());
    }

    #[test]
    fn char_value_algebra() {
        assert_eq!(i().mul(i()), minus_one());
        assert_eq!(i().mul(minus_i()), CharValue::ONE);
        assert_eq!(CharValue::root(2, 6).mul(CharValue::root(1, 2)), CharValue::root(5, 6));
        assert_eq!(i().conj(), minus_i());
        assert_eq!(CharValue::Zero.mul(i()), CharValue::Zero);
        assert_eq!(CharValue::root(4, 8), minus_one());
    }

    #[test]
    fn export_rows() {
        let rows = table_rows(&enumerate_characters(5).unwrap());
        assert_eq!(rows.len(), 20);
        assert_eq!(
            rows[7],
            CharTableRow {
                label: 2,
                n: 2,
                kind: "root".into(),
                a: 1,
                m: 4
            }
        );
        assert_eq!(rows[0].kind, "zero");
    }
}
