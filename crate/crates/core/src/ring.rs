//! Finite rings with tabulated (or modular) arithmetic.
//!
//! Every ring is immutable after construction and cheap to clone. Elements
//! are plain indices into the ring's element table; the canonical element
//! order is index order.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::error::{Error, Result};
use crate::oracle;
use crate::poly::{self, Poly};

/// Default cap on the number of elements of a tabulated structure.
pub const DEFAULT_MAX_ELEMS: usize = 4096;

/// Element cap, overridable through `RINGSOLVE_MAX_ELEMS`.
pub fn max_elements() -> usize {
    std::env::var("RINGSOLVE_MAX_ELEMS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MAX_ELEMS)
}

pub(crate) fn check_size(size: u128) -> Result<usize> {
    let cap = max_elements();
    if size > cap as u128 {
        Err(Error::TooLarge { size, cap })
    } else {
        Ok(size as usize)
    }
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// Index of an element within its ring (or group) table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Elem {
    fn from(i: usize) -> Self {
        Elem(i as u32)
    }
}

/// How a ring was described at construction time.
#[derive(Clone, Debug)]
pub enum RingRep {
    ZMod(u64),
    /// `Z/p^n [X] / (f)`, with `f` monic, coefficients lowest degree first.
    PolyQuotient { p: u64, n: u32, f: Poly },
    Product(Vec<FiniteRing>),
    Table,
}

enum Arith {
    ZMod(u64),
    Table { add: Vec<u32>, mul: Vec<u32> },
}

struct RingData {
    id: u64,
    label: String,
    rep: RingRep,
    size: usize,
    arith: Arith,
    neg: Vec<u32>,
    zero: Elem,
    one: Elem,
    characteristic: u64,
    commutative: bool,
    names: Vec<String>,
    lookup: HashMap<String, u32>,
    inverses: OnceLock<Vec<Option<u32>>>,
}

/// A finite ring with identity.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.0.label, self.0.size)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label)
    }
}

fn normalize_name(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

impl FiniteRing {
    pub fn id(&self) -> u64 {
        self.0.id
    }

    /// Spec string describing the ring; re-parseable for built-in families.
    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn rep(&self) -> &RingRep {
        &self.0.rep
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn zero(&self) -> Elem {
        self.0.zero
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    pub fn is_commutative(&self) -> bool {
        self.0.commutative
    }

    /// The modulus when the ring is literally `Z/m`.
    pub fn modulus(&self) -> Option<u64> {
        match self.0.arith {
            Arith::ZMod(m) => Some(m),
            Arith::Table { .. } => None,
        }
    }

    /// Same object, or the same spec label and size.
    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.label == other.0.label && self.0.size == other.0.size)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.size as u32).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::ZMod(m) => {
                let s = a.0 as u64 + b.0 as u64;
                Elem(if s >= *m { s - m } else { s } as u32)
            }
            Arith::Table { add, .. } => Elem(add[a.index() * self.0.size + b.index()]),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::ZMod(m) => Elem((a.0 as u64 * b.0 as u64 % m) as u32),
            Arith::Table { mul, .. } => Elem(mul[a.index() * self.0.size + b.index()]),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn is_zero(&self, a: Elem) -> bool {
        a == self.0.zero
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Additive multiple `k * a`.
    pub fn times(&self, a: Elem, mut k: u64) -> Elem {
        if let Arith::ZMod(m) = self.0.arith {
            return Elem(((a.0 as u128 * (k % m) as u128) % m as u128) as u32);
        }
        let mut acc = self.zero();
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// The image of the integer `k` under `Z -> R`.
    pub fn from_int(&self, k: i64) -> Elem {
        let c = self.characteristic() as i128;
        self.times(self.one(), (k as i128).rem_euclid(c) as u64)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Order of `a` in the additive group.
    pub fn additive_order(&self, a: Elem) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.zero() {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    fn inverse_table(&self) -> &Vec<Option<u32>> {
        self.0.inverses.get_or_init(|| {
            if let Arith::ZMod(m) = self.0.arith {
                return (0..m)
                    .map(|a| arith::inv_mod(a, m).map(|x| x as u32))
                    .collect();
            }
            let n = self.size();
            let mut inv = vec![None; n];
            for a in self.elements() {
                if inv[a.index()].is_some() {
                    continue;
                }
                for b in self.elements() {
                    if self.mul(a, b) == self.one() && self.mul(b, a) == self.one() {
                        inv[a.index()] = Some(b.0);
                        inv[b.index()] = Some(a.0);
                        break;
                    }
                }
            }
            inv
        })
    }

    /// Two-sided multiplicative inverse.
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse_table()[a.index()].map(Elem)
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.mul(a, a) == a).collect()
    }

    /// Least `n >= 1` with `x^n = 0`, or `None` when `x` is not nilpotent.
    pub fn nilpotency(&self, x: Elem) -> Option<u32> {
        let mut p = x;
        for n in 1..=self.size() as u32 {
            if p == self.zero() {
                return Some(n);
            }
            p = self.mul(p, x);
        }
        None
    }

    /// Some `q` with `b * q = a`.
    pub fn divide(&self, a: Elem, b: Elem) -> Option<Elem> {
        if let Arith::ZMod(m) = self.0.arith {
            return arith::div_mod(a.0 as u64, b.0 as u64, m).map(|q| Elem(q as u32));
        }
        if let Some(inv) = self.inverse(b) {
            return Some(self.mul(inv, a));
        }
        self.elements().find(|&q| self.mul(b, q) == a)
    }

    pub fn divides(&self, b: Elem, a: Elem) -> bool {
        self.divide(a, b).is_some()
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.0.names[a.index()]
    }

    /// Parse an element name: the ring's own names, `#index`, or an integer `k`
    /// meaning `k * 1`.
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let key = normalize_name(text);
        if let Some(&i) = self.0.lookup.get(&key) {
            return Ok(Elem(i));
        }
        if let Some(idx) = key.strip_prefix('#') {
            if let Ok(i) = idx.parse::<usize>() {
                if i < self.size() {
                    return Ok(Elem(i as u32));
                }
            }
        }
        if let Ok(k) = key.parse::<i64>() {
            return Ok(self.from_int(k));
        }
        Err(Error::InvalidArgument(format!(
            "'{text}' is not an element of {}",
            self.label()
        )))
    }

    /// Coefficients of an element of a polynomial quotient ring.
    pub fn poly_coeffs(&self, a: Elem) -> Option<Vec<u64>> {
        match &self.0.rep {
            RingRep::PolyQuotient { p, n, f } => {
                let q = p.pow(*n);
                let r = f.degree().unwrap_or(0);
                let mut k = a.0 as u64;
                Some(
                    (0..r)
                        .map(|_| {
                            let c = k % q;
                            k /= q;
                            c
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }
}

/// Builder for rings given by full tables; computes negation, identities and
/// characteristic.
pub(crate) struct TableSpec {
    pub label: String,
    pub rep: RingRep,
    pub size: usize,
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
    pub names: Vec<String>,
    pub commutative: bool,
}

impl TableSpec {
    /// Assemble without axiom checks; callers guarantee the tables form a ring.
    pub(crate) fn finish(self) -> Result<FiniteRing> {
        let n = self.size;
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| self.add[z * n + x] as usize == x))
            .ok_or(Error::NotARing {
                axiom: "additive-identity",
                detail: "no element z with z + x = x for all x".into(),
            })?;
        let one = (0..n)
            .find(|&u| {
                (0..n).all(|x| self.mul[u * n + x] as usize == x && self.mul[x * n + u] as usize == x)
            })
            .ok_or(Error::NotARing {
                axiom: "multiplicative-identity",
                detail: "no two-sided identity".into(),
            })?;
        let mut neg = vec![u32::MAX; n];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| self.add[a * n + b] as usize == zero) {
                neg[a] = b as u32;
            } else {
                return Err(Error::NotARing {
                    axiom: "additive-inverse",
                    detail: format!("element #{a} has no additive inverse"),
                });
            }
        }
        let mut characteristic = 1u64;
        let mut x = one;
        while x != zero {
            x = self.add[x * n + one] as usize;
            characteristic += 1;
            if characteristic > n as u64 {
                return Err(Error::NotARing {
                    axiom: "additive-associativity",
                    detail: "multiples of 1 never reach 0".into(),
                });
            }
        }
        Ok(assemble(
            self.label,
            self.rep,
            n,
            Arith::Table {
                add: self.add,
                mul: self.mul,
            },
            neg,
            Elem(zero as u32),
            Elem(one as u32),
            characteristic,
            self.commutative,
            self.names,
        ))
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    label: String,
    rep: RingRep,
    size: usize,
    arith: Arith,
    neg: Vec<u32>,
    zero: Elem,
    one: Elem,
    characteristic: u64,
    commutative: bool,
    names: Vec<String>,
) -> FiniteRing {
    let lookup = names
        .iter()
        .enumerate()
        .map(|(i, s)| (normalize_name(s), i as u32))
        .collect();
    FiniteRing(Arc::new(RingData {
        id: fresh_id(),
        label,
        rep,
        size,
        arith,
        neg,
        zero,
        one,
        characteristic,
        commutative,
        names,
        lookup,
        inverses: OnceLock::new(),
    }))
}

/// `Z/m`.
pub fn build_zmod(m: u64) -> Result<FiniteRing> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "Z/m needs m >= 2, got {m}"
        )));
    }
    let size = check_size(m as u128)?;
    let neg = (0..m).map(|a| ((m - a) % m) as u32).collect();
    Ok(assemble(
        format!("Z/{m}"),
        RingRep::ZMod(m),
        size,
        Arith::ZMod(m),
        neg,
        Elem(0),
        Elem(1),
        m,
        true,
        (0..m).map(|a| a.to_string()).collect(),
    ))
}

/// `Z/p^n [X] / (f)` for a monic `f` of degree at least 1.
///
/// `f` lists coefficients lowest degree first and must end in `1`. Elements
/// are residue polynomials of degree `< deg f`; element index is the base
/// `p^n` number whose digits are the coefficients, constant term least
/// significant.
pub fn build_poly_quotient(p: u64, n: u32, f: &[u64]) -> Result<FiniteRing> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("exponent n must be >= 1".into()));
    }
    let q = p
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidParameter("p^n overflows".into()))?;
    if f.len() < 2 || f.last() != Some(&1) {
        return Err(Error::InvalidParameter(
            "modulus polynomial must be monic of degree >= 1".into(),
        ));
    }
    let fpoly = Poly::new(f.to_vec(), q);
    let r = f.len() - 1;
    let size128 = (q as u128)
        .checked_pow(r as u32)
        .ok_or(Error::TooLarge {
            size: u128::MAX,
            cap: max_elements(),
        })?;
    let size = check_size(size128)?;
    let digits = |mut k: usize| -> Vec<u64> {
        (0..r)
            .map(|_| {
                let c = (k as u64) % q;
                k /= q as usize;
                c
            })
            .collect()
    };
    let index = |c: &[u64]| -> u32 {
        c.iter()
            .rev()
            .fold(0u64, |acc, &d| acc * q + d) as u32
    };
    let polys: Vec<Poly> = (0..size).map(|k| Poly::new(digits(k), q)).collect();
    let mut add = vec![0u32; size * size];
    let mut mul = vec![0u32; size * size];
    for a in 0..size {
        for b in 0..size {
            add[a * size + b] = index(&polys[a].add(&polys[b]).padded(r));
            mul[a * size + b] = index(&polys[a].mul(&polys[b]).rem_monic(&fpoly).padded(r));
        }
    }
    let names = (0..size)
        .map(|k| {
            let c = digits(k);
            format!(
                "[{}]",
                c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    TableSpec {
        label: format!("Z/{q}[X]/({fpoly})"),
        rep: RingRep::PolyQuotient { p, n, f: fpoly },
        size,
        add,
        mul,
        names,
        commutative: true,
    }
    .finish()
}

/// The Galois ring `GR(p^n, r)` as `Z/p^n [X] / (f)`, where `f` is the first
/// monic irreducible polynomial of degree `r` over `Z/p` with its
/// coefficients read in `Z/p^n`.
pub fn build_galois_ring(q: u64, r: u32) -> Result<FiniteRing> {
    let (p, n) = arith::prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    if r == 0 {
        return Err(Error::InvalidParameter("degree r must be >= 1".into()));
    }
    check_size((q as u128).saturating_pow(r))?;
    if r == 1 {
        return build_zmod(q).map(|ring| relabel(ring, format!("GR({q},1)")));
    }
    let g = poly::first_irreducible(p, r as usize);
    let ring = build_poly_quotient(p, n, &g.padded(r as usize + 1))?;
    Ok(relabel(ring, format!("GR({q},{r})")))
}

pub(crate) fn relabel(ring: FiniteRing, label: String) -> FiniteRing {
    match Arc::try_unwrap(ring.0) {
        Ok(mut data) => {
            data.label = label;
            FiniteRing(Arc::new(data))
        }
        Err(shared) => {
            let d = &*shared;
            let arith = match &d.arith {
                Arith::ZMod(m) => Arith::ZMod(*m),
                Arith::Table { add, mul } => Arith::Table {
                    add: add.clone(),
                    mul: mul.clone(),
                },
            };
            assemble(
                label,
                d.rep.clone(),
                d.size,
                arith,
                d.neg.clone(),
                d.zero,
                d.one,
                d.characteristic,
                d.commutative,
                d.names.clone(),
            )
        }
    }
}

/// `Z/m [x_1..x_k] / (x_1^{d_1}, .., x_k^{d_k})`. Elements are written as
/// coefficient vectors over the monomials in mixed-radix order (first
/// variable's exponent least significant).
pub fn build_monomial_quotient(m: u64, vars: &[String], degrees: &[u32]) -> Result<FiniteRing> {
    if m < 2 || vars.is_empty() || vars.len() != degrees.len() || degrees.contains(&0) {
        return Err(Error::InvalidParameter(
            "need m >= 2 and one positive degree per variable".into(),
        ));
    }
    let monomials: usize = degrees.iter().map(|&d| d as usize).product();
    let size = check_size((m as u128).saturating_pow(monomials as u32))?;
    let mono_exps: Vec<Vec<u32>> = (0..monomials)
        .map(|mut k| {
            degrees
                .iter()
                .map(|&d| {
                    let e = (k % d as usize) as u32;
                    k /= d as usize;
                    e
                })
                .collect()
        })
        .collect();
    let mono_index = |e: &[u32]| -> Option<usize> {
        let mut idx = 0;
        for (i, (&x, &d)) in e.iter().zip(degrees).enumerate().rev() {
            if x >= d {
                return None;
            }
            let _ = i;
            idx = idx * d as usize + x as usize;
        }
        Some(idx)
    };
    let coeffs = |mut k: usize| -> Vec<u64> {
        (0..monomials)
            .map(|_| {
                let c = k as u64 % m;
                k /= m as usize;
                c
            })
            .collect()
    };
    let index = |c: &[u64]| -> u32 { c.iter().rev().fold(0u64, |acc, &d| acc * m + d) as u32 };
    let all: Vec<Vec<u64>> = (0..size).map(coeffs).collect();
    let mut add = vec![0u32; size * size];
    let mut mul = vec![0u32; size * size];
    for a in 0..size {
        for b in 0..size {
            let s: Vec<u64> = (0..monomials).map(|i| (all[a][i] + all[b][i]) % m).collect();
            add[a * size + b] = index(&s);
            let mut prod = vec![0u64; monomials];
            for i in 0..monomials {
                if all[a][i] == 0 {
                    continue;
                }
                for j in 0..monomials {
                    if all[b][j] == 0 {
                        continue;
                    }
                    let e: Vec<u32> = mono_exps[i]
                        .iter()
                        .zip(&mono_exps[j])
                        .map(|(x, y)| x + y)
                        .collect();
                    if let Some(t) = mono_index(&e) {
                        prod[t] = (prod[t] + all[a][i] * all[b][j]) % m;
                    }
                }
            }
            mul[a * size + b] = index(&prod);
        }
    }
    let names = all
        .iter()
        .map(|c| {
            format!(
                "[{}]",
                c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    let ideal = vars
        .iter()
        .zip(degrees)
        .map(|(v, d)| format!("{v}^{d}"))
        .collect::<Vec<_>>()
        .join(",");
    TableSpec {
        label: format!("Z/{m}[{}]/({ideal})", vars.join(",")),
        rep: RingRep::Table,
        size,
        add,
        mul,
        names,
        commutative: true,
    }
    .finish()
}

/// Upper-triangular 2x2 matrices over `Z/m`; non-commutative. Element
/// `(a,b,c)` stands for `[[a,b],[0,c]]`.
pub fn build_upper_triangular(m: u64) -> Result<FiniteRing> {
    if m < 2 {
        return Err(Error::InvalidParameter("need m >= 2".into()));
    }
    let size = check_size((m as u128).pow(3))?;
    let dec = |k: usize| -> [u64; 3] {
        let k = k as u64;
        [k % m, (k / m) % m, k / (m * m)]
    };
    let enc = |t: [u64; 3]| -> u32 { (t[0] + m * t[1] + m * m * t[2]) as u32 };
    let mut add = vec![0u32; size * size];
    let mut mul = vec![0u32; size * size];
    for x in 0..size {
        for y in 0..size {
            let [a, b, c] = dec(x);
            let [d, e, f] = dec(y);
            add[x * size + y] = enc([(a + d) % m, (b + e) % m, (c + f) % m]);
            // [[a,b],[0,c]] * [[d,e],[0,f]] = [[ad, ae+bf],[0,cf]]
            mul[x * size + y] = enc([a * d % m, (a * e + b * f) % m, c * f % m]);
        }
    }
    let names = (0..size)
        .map(|k| {
            let [a, b, c] = dec(k);
            format!("({a},{b},{c})")
        })
        .collect();
    TableSpec {
        label: format!("UT(Z/{m})"),
        rep: RingRep::Table,
        size,
        add,
        mul,
        names,
        commutative: false,
    }
    .finish()
}

/// Direct product; element index is mixed radix with the first factor least
/// significant.
pub fn build_product(rings: &[FiniteRing]) -> Result<FiniteRing> {
    let Some(first) = rings.first() else {
        return Err(Error::InvalidParameter("empty product".into()));
    };
    if rings.len() == 1 {
        return Ok(first.clone());
    }
    if rings.iter().any(|r| r.is_commutative() != first.is_commutative()) {
        return Err(Error::InvalidParameter(
            "product factors must agree on commutativity".into(),
        ));
    }
    let size128 = rings
        .iter()
        .try_fold(1u128, |acc, r| acc.checked_mul(r.size() as u128))
        .unwrap_or(u128::MAX);
    let size = check_size(size128)?;
    let decode = |mut k: usize| -> Vec<Elem> {
        rings
            .iter()
            .map(|r| {
                let e = Elem((k % r.size()) as u32);
                k /= r.size();
                e
            })
            .collect()
    };
    let encode = |c: &[Elem]| -> u32 {
        c.iter()
            .zip(rings)
            .rev()
            .fold(0usize, |acc, (e, r)| acc * r.size() + e.index()) as u32
    };
    let comps: Vec<Vec<Elem>> = (0..size).map(decode).collect();
    let mut add = vec![0u32; size * size];
    let mut mul = vec![0u32; size * size];
    let mut buf = vec![Elem(0); rings.len()];
    for a in 0..size {
        for b in 0..size {
            for (i, r) in rings.iter().enumerate() {
                buf[i] = r.add(comps[a][i], comps[b][i]);
            }
            add[a * size + b] = encode(&buf);
            for (i, r) in rings.iter().enumerate() {
                buf[i] = r.mul(comps[a][i], comps[b][i]);
            }
            mul[a * size + b] = encode(&buf);
        }
    }
    let names = comps
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(rings).map(|(e, r)| r.name(*e)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let label = rings
        .iter()
        .map(|r| {
            if matches!(r.rep(), RingRep::Product(_)) {
                format!("({})", r.label())
            } else {
                r.label().to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" x ");
    TableSpec {
        label,
        rep: RingRep::Product(rings.to_vec()),
        size,
        add,
        mul,
        names,
        commutative: first.is_commutative(),
    }
    .finish()
}

/// Ring from explicit addition and multiplication tables, validated by the
/// exhaustive axiom checker.
pub fn build_table_ring(
    add: &[Vec<u32>],
    mul: &[Vec<u32>],
    commutative: bool,
) -> Result<FiniteRing> {
    build_table_ring_labeled(add, mul, commutative, None, "table".into())
}

pub(crate) fn build_table_ring_labeled(
    add: &[Vec<u32>],
    mul: &[Vec<u32>],
    commutative: bool,
    names: Option<Vec<String>>,
    label: String,
) -> Result<FiniteRing> {
    let n = add.len();
    if n == 0 || mul.len() != n || add.iter().chain(mul).any(|row| row.len() != n) {
        return Err(Error::InvalidParameter(
            "tables must be square and of equal size".into(),
        ));
    }
    check_size(n as u128)?;
    let flat = |t: &[Vec<u32>]| -> Vec<u32> { t.iter().flatten().copied().collect() };
    let (fa, fm) = (flat(add), flat(mul));
    oracle::check_ring_tables(n, &fa, &fm, commutative)?;
    let names = match names {
        Some(v) if v.len() == n => v,
        _ => (0..n).map(|i| format!("#{i}")).collect(),
    };
    TableSpec {
        label,
        rep: RingRep::Table,
        size: n,
        add: fa,
        mul: fm,
        names,
        commutative,
    }
    .finish()
}
