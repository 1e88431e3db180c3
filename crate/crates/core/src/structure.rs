//! Structure of finite commutative rings: locality, the idempotent base and
//! local decomposition, chain-ring data, Teichmüller sets, canonical orders of
//! k-generated local rings, and Galois-ring representations.

use std::cmp::Ordering;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::{monic_polys, Poly};
use crate::ring::{Elem, FiniteRing, RingRep, TableSpec};

fn require_commutative(r: &FiniteRing) -> Result<()> {
    if r.is_commutative() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} is not commutative",
            r.label()
        )))
    }
}

fn require_local(r: &FiniteRing) -> Result<()> {
    if is_local(r)? {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} is not local", r.label())))
    }
}

/// A commutative ring is local iff its only idempotents are 0 and 1.
pub fn is_local(r: &FiniteRing) -> Result<bool> {
    require_commutative(r)?;
    Ok(r.idempotents().len() == 2)
}

/// The smallest ideal containing `gens`: all finite sums of products `g * r`.
pub fn ideal_generated(r: &FiniteRing, gens: &[Elem]) -> Vec<Elem> {
    let mut products: Vec<Elem> = gens
        .iter()
        .flat_map(|&g| r.elements().map(move |x| (g, x)))
        .map(|(g, x)| r.mul(g, x))
        .collect();
    products.sort();
    products.dedup();
    let mut member = vec![false; r.size()];
    member[r.zero().index()] = true;
    let mut list = vec![r.zero()];
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for &p in &products {
            let s = r.add(a, p);
            if !member[s.index()] {
                member[s.index()] = true;
                list.push(s);
            }
        }
        i += 1;
    }
    list.sort();
    list
}

/// The idempotent base: primitive idempotents, i.e. non-trivial idempotents
/// that are not a sum of two orthogonal non-trivial idempotents. `{1}` for a
/// local ring.
pub fn base(r: &FiniteRing) -> Result<Vec<Elem>> {
    require_commutative(r)?;
    let nontrivial: Vec<Elem> = r
        .idempotents()
        .into_iter()
        .filter(|&e| e != r.zero() && e != r.one())
        .collect();
    if nontrivial.is_empty() {
        return Ok(vec![r.one()]);
    }
    let decomposable = |e: Elem| {
        nontrivial.iter().any(|&f| {
            nontrivial
                .iter()
                .any(|&g| r.mul(f, g) == r.zero() && r.add(f, g) == e)
        })
    };
    Ok(nontrivial.iter().copied().filter(|&e| !decomposable(e)).collect())
}

/// A local summand `eR` of a commutative ring with its embedding and
/// projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub e: Elem,
    pub ring: FiniteRing,
    embed: Vec<Elem>,
    project: Vec<Elem>,
}

impl Summand {
    /// `eR -> R`, the inclusion.
    pub fn embed(&self, x: Elem) -> Elem {
        self.embed[x.index()]
    }

    /// `R -> eR`, `r -> e * r`.
    pub fn project(&self, r: Elem) -> Elem {
        self.project[r.index()]
    }
}

fn build_summand(r: &FiniteRing, e: Elem) -> Result<Summand> {
    if e == r.one() {
        let id: Vec<Elem> = r.elements().collect();
        return Ok(Summand {
            e,
            ring: r.clone(),
            embed: id.clone(),
            project: id,
        });
    }
    let mut embed: Vec<Elem> = r.elements().map(|x| r.mul(e, x)).collect();
    embed.sort();
    embed.dedup();
    let mut local_index = vec![u32::MAX; r.size()];
    for (i, &x) in embed.iter().enumerate() {
        local_index[x.index()] = i as u32;
    }
    let n = embed.len();
    let mut add = vec![0u32; n * n];
    let mut mul = vec![0u32; n * n];
    for (i, &a) in embed.iter().enumerate() {
        for (j, &b) in embed.iter().enumerate() {
            add[i * n + j] = local_index[r.add(a, b).index()];
            mul[i * n + j] = local_index[r.mul(a, b).index()];
        }
    }
    let ring = TableSpec {
        label: format!("summand({};{})", r.label(), r.name(e)),
        rep: RingRep::Table,
        size: n,
        add,
        mul,
        names: embed.iter().map(|&x| r.name(x).to_string()).collect(),
        commutative: true,
    }
    .finish()?;
    let project = r
        .elements()
        .map(|x| Elem(local_index[r.mul(e, x).index()]))
        .collect();
    Ok(Summand {
        e,
        ring,
        embed,
        project,
    })
}

/// Local summands `eR` for `e` in the base, in table order of `e`.
pub fn decompose_local(r: &FiniteRing) -> Result<Vec<Summand>> {
    base(r)?.into_iter().map(|e| build_summand(r, e)).collect()
}

/// Maximal ideal and residue field of a local ring.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub maximal_ideal: Vec<Elem>,
    /// Residue field size `q = |R| / |m|`.
    pub q: usize,
    /// `residue[r]` is the index of the class `r + m`; classes are numbered in
    /// table order of their first element.
    pub residue: Vec<usize>,
    /// First element of each residue class.
    pub class_reps: Vec<Elem>,
}

impl LocalData {
    pub fn contains(&self, x: Elem) -> bool {
        self.maximal_ideal.binary_search(&x).is_ok()
    }
}

pub fn local_data(r: &FiniteRing) -> Result<LocalData> {
    require_local(r)?;
    let maximal_ideal: Vec<Elem> = r.elements().filter(|&x| !r.is_unit(x)).collect();
    let mut residue = vec![usize::MAX; r.size()];
    let mut class_reps = Vec::new();
    for x in r.elements() {
        if residue[x.index()] != usize::MAX {
            continue;
        }
        let c = class_reps.len();
        class_reps.push(x);
        for &y in &maximal_ideal {
            residue[r.add(x, y).index()] = c;
        }
    }
    Ok(LocalData {
        q: r.size() / maximal_ideal.len(),
        maximal_ideal,
        residue,
        class_reps,
    })
}

/// Generator and valuation data of a chain ring.
#[derive(Clone, Debug)]
pub struct ChainData {
    /// Generator of the maximal ideal; `0` for fields.
    pub pi: Elem,
    /// Nilpotency of `pi`; `1` for fields.
    pub n: u32,
    pub q: usize,
    /// `pi^(n-1)`, the generator of the minimal ideal (`1` for fields).
    pub pi_top: Elem,
    valuation: Vec<u32>,
}

impl ChainData {
    /// Largest `t` with `x` in `pi^t R`; `n` for zero.
    pub fn valuation(&self, x: Elem) -> u32 {
        self.valuation[x.index()]
    }
}

/// Present iff the ring is local with principal maximal ideal.
pub fn chain_data(r: &FiniteRing) -> Result<Option<ChainData>> {
    require_commutative(r)?;
    if !is_local(r)? {
        return Ok(None);
    }
    let ld = local_data(r)?;
    let m = &ld.maximal_ideal;
    if m.len() == 1 {
        let mut valuation = vec![0; r.size()];
        valuation[r.zero().index()] = 1;
        return Ok(Some(ChainData {
            pi: r.zero(),
            n: 1,
            q: ld.q,
            pi_top: r.one(),
            valuation,
        }));
    }
    let Some(pi) = m.iter().copied().find(|&p| {
        let mut ideal: Vec<Elem> = r.elements().map(|x| r.mul(p, x)).collect();
        ideal.sort();
        ideal.dedup();
        &ideal == m
    }) else {
        return Ok(None);
    };
    let n = r
        .nilpotency(pi)
        .ok_or_else(|| Error::Internal("maximal ideal element is not nilpotent".into()))?;
    let mut valuation = vec![0u32; r.size()];
    let mut power = pi;
    for t in 1..=n {
        for x in r.elements() {
            let y = r.mul(power, x);
            valuation[y.index()] = valuation[y.index()].max(t);
        }
        power = r.mul(power, pi);
    }
    Ok(Some(ChainData {
        pi,
        n,
        q: ld.q,
        pi_top: r.pow(pi, (n - 1) as u64),
        valuation,
    }))
}

/// Shortest generating tuple of the maximal ideal, first in table order among
/// tuples of that length.
pub fn minimal_generators_maximal_ideal(r: &FiniteRing) -> Result<Vec<Elem>> {
    let ld = local_data(r)?;
    let m = &ld.maximal_ideal;
    if m.len() == 1 {
        return Ok(Vec::new());
    }
    let candidates: Vec<Elem> = m.iter().copied().filter(|&x| x != r.zero()).collect();
    for k in 1..=candidates.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let gens: Vec<Elem> = idx.iter().map(|&i| candidates[i]).collect();
            if &ideal_generated(r, &gens) == m {
                return Ok(gens);
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    Err(Error::Internal("maximal ideal has no generating tuple".into()))
}

/// Advance `idx` (strictly increasing, entries `< n`) to the next
/// combination in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for pos in (0..k).rev() {
        if idx[pos] < n - k + pos {
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `{ r : r^q = r }`, in table order.
pub fn teichmuller_set(r: &FiniteRing) -> Result<Vec<Elem>> {
    let ld = local_data(r)?;
    Ok(r.elements().filter(|&x| r.pow(x, ld.q as u64) == x).collect())
}

/// Multiplicative order of the residue of a unit `a`.
fn residue_order(r: &FiniteRing, ld: &LocalData, a: Elem) -> Option<u64> {
    let one = ld.residue[r.one().index()];
    if ld.contains(a) {
        return None;
    }
    let mut x = a;
    for k in 1..=ld.q as u64 {
        if ld.residue[x.index()] == one {
            return Some(k);
        }
        x = r.mul(x, a);
    }
    None
}

/// Default order parameters: the first element with primitive residue, and
/// the first shortest generating tuple of the maximal ideal.
pub fn canonical_params(r: &FiniteRing) -> Result<(Elem, Vec<Elem>)> {
    let ld = local_data(r)?;
    let alpha = if ld.q == 2 {
        r.one()
    } else {
        r.elements()
            .find(|&a| residue_order(r, &ld, a) == Some(ld.q as u64 - 1))
            .ok_or_else(|| Error::Internal("residue field has no primitive element".into()))?
    };
    Ok((alpha, minimal_generators_maximal_ideal(r)?))
}

/// Total order on a local ring from parameters `(alpha, pis)`.
///
/// Every element has a unique expression `sum a_e * pi^e` over exponent
/// tuples `e` in `prod [0, n_i)` (lexicographic, first exponent most
/// significant) with coefficients `a_e` in the Teichmüller set. Elements are
/// compared by the Teichmüller ranks of their coefficients.
#[derive(Clone, Debug)]
pub struct RingOrder {
    pub alpha: Elem,
    pub pis: Vec<Elem>,
    /// Teichmüller set in rank order: `0`, then lifts of `alpha^0 .. alpha^(q-2)`.
    pub gamma: Vec<Elem>,
    pub exponents: Vec<Vec<u32>>,
    pub monomials: Vec<Elem>,
    keys: Vec<Vec<u32>>,
    order: Vec<Elem>,
    rank: Vec<usize>,
}

impl RingOrder {
    /// Elements from smallest to largest.
    pub fn elements(&self) -> &[Elem] {
        &self.order
    }

    pub fn rank(&self, x: Elem) -> usize {
        self.rank[x.index()]
    }

    pub fn less(&self, a: Elem, b: Elem) -> bool {
        self.rank(a) < self.rank(b)
    }

    pub fn cmp(&self, a: Elem, b: Elem) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }

    /// Coefficient of each monomial in the canonical expression of `x`.
    pub fn representation(&self, x: Elem) -> Vec<Elem> {
        self.keys[x.index()]
            .iter()
            .map(|&k| self.gamma[k as usize])
            .collect()
    }

    /// Table order, for rings where no structured order is needed.
    pub fn table_order(r: &FiniteRing) -> RingOrder {
        let order: Vec<Elem> = r.elements().collect();
        RingOrder {
            alpha: r.one(),
            pis: Vec::new(),
            gamma: Vec::new(),
            exponents: Vec::new(),
            monomials: Vec::new(),
            keys: vec![Vec::new(); r.size()],
            rank: (0..r.size()).collect(),
            order,
        }
    }
}

pub fn canonical_order(r: &FiniteRing, alpha: Elem, pis: &[Elem]) -> Result<RingOrder> {
    let ld = local_data(r)?;
    let q = ld.q;
    if q > 2 && residue_order(r, &ld, alpha) != Some(q as u64 - 1) {
        return Err(Error::InvalidParameter(format!(
            "{} does not map to a primitive element of the residue field",
            r.name(alpha)
        )));
    }
    if q == 2 && ld.contains(alpha) {
        return Err(Error::InvalidParameter("alpha must be a unit".into()));
    }
    if pis.iter().any(|&p| !ld.contains(p)) || ideal_generated(r, pis) != ld.maximal_ideal {
        return Err(Error::InvalidParameter(
            "pi tuple does not generate the maximal ideal".into(),
        ));
    }
    let teich: Vec<Elem> = r.elements().filter(|&x| r.pow(x, q as u64) == x).collect();
    let lift = |x: Elem| -> Elem {
        *teich
            .iter()
            .find(|&&t| ld.residue[t.index()] == ld.residue[x.index()])
            .expect("Teichmüller set meets every residue class")
    };
    let mut gamma = vec![r.zero()];
    let mut power = r.one();
    for _ in 0..q - 1 {
        gamma.push(lift(power));
        power = r.mul(power, alpha);
    }
    let mut gamma_rank = vec![u32::MAX; r.size()];
    for (i, &g) in gamma.iter().enumerate() {
        gamma_rank[g.index()] = i as u32;
    }

    let nil: Vec<u32> = pis
        .iter()
        .map(|&p| {
            r.nilpotency(p)
                .ok_or_else(|| Error::Internal("generator is not nilpotent".into()))
        })
        .collect::<Result<_>>()?;
    let mut exponents: Vec<Vec<u32>> = vec![Vec::new()];
    for &ni in &nil {
        exponents = exponents
            .into_iter()
            .flat_map(|e| {
                (0..ni).map(move |x| {
                    let mut e = e.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    let monomials: Vec<Elem> = exponents
        .iter()
        .map(|e| {
            e.iter()
                .zip(pis)
                .fold(r.one(), |acc, (&k, &p)| r.mul(acc, r.pow(p, k as u64)))
        })
        .collect();
    // suffix[pos] marks the ideal generated by monomials after pos
    let mut suffix: Vec<Vec<bool>> = Vec::with_capacity(monomials.len());
    for pos in 0..monomials.len() {
        let ideal = ideal_generated(r, &monomials[pos + 1..]);
        let mut mark = vec![false; r.size()];
        for x in ideal {
            mark[x.index()] = true;
        }
        suffix.push(mark);
    }

    let mut keys = Vec::with_capacity(r.size());
    for x in r.elements() {
        let mut rem = x;
        let mut key = Vec::with_capacity(monomials.len());
        for (pos, &mono) in monomials.iter().enumerate() {
            let a = gamma
                .iter()
                .copied()
                .find(|&a| suffix[pos][r.sub(rem, r.mul(a, mono)).index()])
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "no Teichmüller coefficient for {} at monomial {pos}",
                        r.name(x)
                    ))
                })?;
            rem = r.sub(rem, r.mul(a, mono));
            key.push(gamma_rank[a.index()]);
        }
        if rem != r.zero() {
            return Err(Error::Internal("canonical expression leaves a remainder".into()));
        }
        keys.push(key);
    }
    let mut order: Vec<Elem> = r.elements().collect();
    order.sort_by(|a, b| keys[a.index()].cmp(&keys[b.index()]));
    let mut rank = vec![0; r.size()];
    for (i, &x) in order.iter().enumerate() {
        rank[x.index()] = i;
    }
    Ok(RingOrder {
        alpha,
        pis: pis.to_vec(),
        gamma,
        exponents,
        monomials,
        keys,
        order,
        rank,
    })
}

/// `(p, n, r)` with characteristic `p^n` and `|R| = p^(nr)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisParams {
    pub p: u64,
    pub n: u32,
    pub r: u32,
}

/// Present iff the ring is local with maximal ideal `pR`.
pub fn is_galois_ring(r: &FiniteRing) -> Result<Option<GaloisParams>> {
    require_commutative(r)?;
    if !is_local(r)? {
        return Ok(None);
    }
    let Some((p, n)) = arith::prime_power(r.characteristic()) else {
        return Ok(None);
    };
    let ld = local_data(r)?;
    let pe = r.from_int(p as i64);
    let mut pr: Vec<Elem> = r.elements().map(|x| r.mul(pe, x)).collect();
    pr.sort();
    pr.dedup();
    if pr != ld.maximal_ideal {
        return Ok(None);
    }
    let mut size = r.size() as u64;
    let mut log = 0;
    while size > 1 {
        size /= p;
        log += 1;
    }
    Ok(Some(GaloisParams { p, n, r: log / n }))
}

/// Explicit isomorphism `R = Z/p^n [X] / (f)`.
#[derive(Clone, Debug)]
pub struct GaloisRep {
    pub params: GaloisParams,
    /// Monic of degree `r` over `Z/p^n`, reducing to `g` mod `p`.
    pub f: Poly,
    /// Monic irreducible over `Z/p` with `g(alpha) = 0` in the residue field.
    pub g: Poly,
    pub alpha: Elem,
    pub beta: Elem,
    iota: Vec<Vec<u64>>,
    inverse: Vec<Elem>,
}

impl GaloisRep {
    /// Coefficients (degree `< r`, lowest first) of the `h` with `h(beta) = a`.
    pub fn iota(&self, a: Elem) -> &[u64] {
        &self.iota[a.index()]
    }

    /// Element `h(beta)` for coefficients of `h` reduced mod `(f, p^n)`.
    pub fn iota_inv(&self, coeffs: &[u64]) -> Elem {
        let q = self.f.modulus();
        let r = self.params.r as usize;
        let h = Poly::new(coeffs.to_vec(), q).rem_monic(&self.f).padded(r);
        let idx = h.iter().rev().fold(0usize, |acc, &c| acc * q as usize + c as usize);
        self.inverse[idx]
    }
}

fn eval_int_poly(r: &FiniteRing, coeffs: &[u64], x: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(r.zero(), |acc, &c| r.add(r.mul(acc, x), r.from_int(c as i64)))
}

pub fn galois_representation(r: &FiniteRing) -> Result<GaloisRep> {
    let params = is_galois_ring(r)?
        .ok_or_else(|| Error::Precondition(format!("{} is not a Galois ring", r.label())))?;
    let GaloisParams { p, n, r: deg } = params;
    let q = p.pow(n);
    let ld = local_data(r)?;
    let (alpha, _) = canonical_params(r)?;
    let g = (1..=deg as usize)
        .flat_map(|d| monic_polys(p, d))
        .find(|g| ld.contains(eval_int_poly(r, g.coeffs(), alpha)))
        .ok_or_else(|| Error::Internal("no minimal polynomial for alpha".into()))?;
    if g.degree() != Some(deg as usize) {
        return Err(Error::Internal(format!(
            "minimal polynomial {g} of alpha has degree other than {deg}"
        )));
    }
    let mut fc: Vec<u64> = g.padded(deg as usize + 1);
    for c in fc.iter_mut().take(deg as usize) {
        *c = (q - p + *c) % q;
    }
    let f = Poly::new(fc, q);
    let beta = r
        .elements()
        .find(|&b| eval_int_poly(r, &f.padded(deg as usize + 1), b) == r.zero())
        .ok_or_else(|| Error::Internal(format!("{f} has no root in {}", r.label())))?;
    let count = r.size();
    let mut iota: Vec<Option<Vec<u64>>> = vec![None; count];
    let mut inverse = Vec::with_capacity(count);
    for idx in 0..count {
        let mut k = idx as u64;
        let h: Vec<u64> = (0..deg)
            .map(|_| {
                let c = k % q;
                k /= q;
                c
            })
            .collect();
        let a = eval_int_poly(r, &h, beta);
        if iota[a.index()].replace(h).is_some() {
            return Err(Error::Internal("evaluation at beta is not injective".into()));
        }
        inverse.push(a);
    }
    let iota = iota
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("evaluation at beta is not surjective".into()))?;
    Ok(GaloisRep {
        params,
        f,
        g,
        alpha,
        beta,
        iota,
        inverse,
    })
}
