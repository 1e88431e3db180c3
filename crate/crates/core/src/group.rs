//! Finite abelian groups and their cyclic decomposition.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::oracle;
use crate::ring::{check_size, Elem, FiniteRing};

#[derive(Clone, Debug)]
pub enum GroupRep {
    Cyclic(u64),
    Product(Vec<AbelianGroup>),
    Table,
}

struct GroupData {
    label: String,
    rep: GroupRep,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    zero: Elem,
    names: Vec<String>,
    lookup: HashMap<String, u32>,
}

/// A finite abelian group `(G, +, e)` stored as an addition table.
#[derive(Clone)]
pub struct AbelianGroup(Arc<GroupData>);

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({}, {} elements)", self.0.label, self.0.size)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label)
    }
}

impl AbelianGroup {
    fn assemble(
        label: String,
        rep: GroupRep,
        size: usize,
        add: Vec<u32>,
        names: Vec<String>,
    ) -> Result<Self> {
        let zero = (0..size)
            .find(|&z| (0..size).all(|x| add[z * size + x] as usize == x))
            .ok_or(Error::NotAGroup {
                axiom: "identity",
                detail: "no neutral element".into(),
            })?;
        let mut neg = vec![0u32; size];
        for (a, slot) in neg.iter_mut().enumerate() {
            *slot = (0..size)
                .find(|&b| add[a * size + b] as usize == zero)
                .ok_or(Error::NotAGroup {
                    axiom: "inverse",
                    detail: format!("element #{a} has no inverse"),
                })? as u32;
        }
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.replace(' ', ""), i as u32))
            .collect();
        Ok(AbelianGroup(Arc::new(GroupData {
            label,
            rep,
            size,
            add,
            neg,
            zero: Elem(zero as u32),
            names,
            lookup,
        })))
    }

    /// `Z/l`.
    pub fn cyclic(l: u64) -> Result<Self> {
        if l < 1 {
            return Err(Error::InvalidParameter("cyclic group order must be >= 1".into()));
        }
        let n = check_size(l as u128)?;
        let add = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        Self::assemble(
            format!("Z/{l}"),
            GroupRep::Cyclic(l),
            n,
            add,
            (0..n).map(|a| a.to_string()).collect(),
        )
    }

    /// Direct product, first factor least significant in the element index.
    pub fn product(groups: &[AbelianGroup]) -> Result<Self> {
        match groups {
            [] => Err(Error::InvalidParameter("empty product".into())),
            [g] => Ok(g.clone()),
            _ => {
                let size128 = groups
                    .iter()
                    .try_fold(1u128, |acc, g| acc.checked_mul(g.size() as u128))
                    .unwrap_or(u128::MAX);
                let n = check_size(size128)?;
                let decode = |mut k: usize| -> Vec<Elem> {
                    groups
                        .iter()
                        .map(|g| {
                            let e = Elem((k % g.size()) as u32);
                            k /= g.size();
                            e
                        })
                        .collect()
                };
                let encode = |c: &[Elem]| -> u32 {
                    c.iter()
                        .zip(groups)
                        .rev()
                        .fold(0usize, |acc, (e, g)| acc * g.size() + e.index())
                        as u32
                };
                let comps: Vec<Vec<Elem>> = (0..n).map(decode).collect();
                let mut add = vec![0u32; n * n];
                for a in 0..n {
                    for b in 0..n {
                        let s: Vec<Elem> = groups
                            .iter()
                            .enumerate()
                            .map(|(i, g)| g.add(comps[a][i], comps[b][i]))
                            .collect();
                        add[a * n + b] = encode(&s);
                    }
                }
                let names = comps
                    .iter()
                    .map(|c| {
                        let parts: Vec<&str> =
                            c.iter().zip(groups).map(|(e, g)| g.name(*e)).collect();
                        format!("({})", parts.join(","))
                    })
                    .collect();
                let label = groups
                    .iter()
                    .map(|g| g.label().to_string())
                    .collect::<Vec<_>>()
                    .join(" x ");
                Self::assemble(label, GroupRep::Product(groups.to_vec()), n, add, names)
            }
        }
    }

    /// Group from an explicit addition table, validated exhaustively.
    pub fn from_table(add: &[Vec<u32>]) -> Result<Self> {
        Self::from_table_labeled(add, "table".into())
    }

    pub(crate) fn from_table_labeled(add: &[Vec<u32>], label: String) -> Result<Self> {
        let n = add.len();
        if n == 0 || add.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParameter("addition table must be square".into()));
        }
        check_size(n as u128)?;
        let flat: Vec<u32> = add.iter().flatten().copied().collect();
        oracle::check_group_table(n, &flat)?;
        Self::assemble(label, GroupRep::Table, n, flat, (0..n).map(|i| format!("#{i}")).collect())
    }

    /// The additive group `(R, +)` of a ring, with the ring's element names.
    pub fn additive(ring: &FiniteRing) -> Self {
        let n = ring.size();
        let mut add = vec![0u32; n * n];
        for a in ring.elements() {
            for b in ring.elements() {
                add[a.index() * n + b.index()] = ring.add(a, b).0;
            }
        }
        let names = ring.elements().map(|e| ring.name(e).to_string()).collect();
        Self::assemble(format!("({},+)", ring.label()), GroupRep::Table, n, add, names)
            .expect("ring addition is a group")
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn rep(&self) -> &GroupRep {
        &self.0.rep
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn zero(&self) -> Elem {
        self.0.zero
    }

    pub fn same_group(&self, other: &AbelianGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.label == other.0.label && self.0.size == other.0.size)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.size as u32).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.add[a.index() * self.0.size + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    /// Integer multiple `k * a`; negative `k` allowed.
    pub fn times(&self, a: Elem, k: i64) -> Elem {
        let o = self.order(a) as i64;
        let mut k = k.rem_euclid(o) as u64;
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

    pub fn order(&self, a: Elem) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.zero() {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.elements().fold(1, |acc, g| arith::lcm(acc, self.order(g)))
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.0.names[a.index()]
    }

    /// Element by name, `#index`, or integer literal `k` (meaning `k` times the
    /// first generator of a cyclic group).
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let key: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if key == "e" {
            return Ok(self.zero());
        }
        if let Some(&i) = self.0.lookup.get(&key) {
            return Ok(Elem(i));
        }
        if let Some(i) = key.strip_prefix('#').and_then(|s| s.parse::<usize>().ok()) {
            if i < self.size() {
                return Ok(Elem(i as u32));
            }
        }
        if let (GroupRep::Cyclic(_), Ok(k)) = (&self.0.rep, key.parse::<i64>()) {
            return Ok(self.times(Elem(1), k));
        }
        Err(Error::InvalidArgument(format!(
            "'{text}' is not an element of {}",
            self.label()
        )))
    }
}

/// `G = <g_1> + .. + <g_k>` with `l_1 | l_2 | .. | l_k`, plus the coordinate
/// tuple of every element.
#[derive(Clone, Debug)]
pub struct CyclicDecomposition {
    pub generators: Vec<Elem>,
    pub orders: Vec<u64>,
    /// `coords[g]` lists `c_i` with `g = sum c_i g_i`, `0 <= c_i < l_i`.
    pub coords: Vec<Vec<u64>>,
}

impl CyclicDecomposition {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// Cyclic decomposition of the group with the given addition, choosing
/// elements by `priority` (a permutation of all element indices).
///
/// Picks the first element of maximal order, grows a subgroup meeting its
/// span trivially until no element can be added, and recurses on it.
pub(crate) fn decompose_additive(
    size: usize,
    zero: Elem,
    add: &dyn Fn(Elem, Elem) -> Elem,
    priority: &[Elem],
) -> Result<CyclicDecomposition> {
    let order = |a: Elem| -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != zero {
            x = add(x, a);
            k += 1;
        }
        k
    };
    // span(K ∪ {x}) for a subgroup K given as a membership vector
    let extend = |k: &[bool], x: Elem| -> Vec<bool> {
        let mut out = vec![false; size];
        let members: Vec<Elem> = (0..size).filter(|&i| k[i]).map(Elem::from).collect();
        let mut t = zero;
        loop {
            for &m in &members {
                out[add(m, t).index()] = true;
            }
            t = add(t, x);
            if t == zero {
                break;
            }
        }
        out
    };

    let mut gens = Vec::new();
    let mut orders = Vec::new();
    let mut current: Vec<bool> = vec![true; size];
    loop {
        let members: Vec<Elem> = priority.iter().copied().filter(|e| current[e.index()]).collect();
        if members.len() <= 1 {
            break;
        }
        let (mut g, mut lg) = (members[0], order(members[0]));
        for &x in &members[1..] {
            let o = order(x);
            if o > lg {
                g = x;
                lg = o;
            }
        }
        let mut cyclic = vec![false; size];
        cyclic[zero.index()] = true;
        let cyc = extend(&cyclic, g);
        let mut k = vec![false; size];
        k[zero.index()] = true;
        for &x in &members {
            if k[x.index()] {
                continue;
            }
            let cand = extend(&k, x);
            if (0..size).all(|i| !(cand[i] && cyc[i]) || i == zero.index()) {
                k = cand;
            }
        }
        let ksize = k.iter().filter(|&&b| b).count();
        if ksize as u64 * lg != members.len() as u64 {
            return Err(Error::Internal(format!(
                "complement of a maximal cyclic subgroup has {ksize} elements, expected {}",
                members.len() as u64 / lg
            )));
        }
        gens.push(g);
        orders.push(lg);
        current = k;
    }
    gens.reverse();
    orders.reverse();

    let mut coords: Vec<Option<Vec<u64>>> = vec![None; size];
    let mut tuple = vec![0u64; gens.len()];
    loop {
        let mut x = zero;
        for (i, &c) in tuple.iter().enumerate() {
            for _ in 0..c {
                x = add(x, gens[i]);
            }
        }
        if coords[x.index()].replace(tuple.clone()).is_some() {
            return Err(Error::Internal("cyclic coordinates are not unique".into()));
        }
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                let coords = coords
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Internal("cyclic coordinates do not cover G".into()))?;
                return Ok(CyclicDecomposition {
                    generators: gens,
                    orders,
                    coords,
                });
            }
            tuple[pos] += 1;
            if tuple[pos] < orders[pos] {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// Invariant-factor decomposition of `G` using table order as priority.
pub fn group_decompose_cyclic(g: &AbelianGroup) -> Result<CyclicDecomposition> {
    let priority: Vec<Elem> = g.elements().collect();
    decompose_additive(g.size(), g.zero(), &|a, b| g.add(a, b), &priority)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_poly_quotient, build_zmod};

    #[test]
    fn cyclic_group_has_one_generator() {
        let g = AbelianGroup::cyclic(6).unwrap();
        let d = group_decompose_cyclic(&g).unwrap();
        assert_eq!(d.orders, vec![6]);
        assert_eq!(g.order(d.generators[0]), 6);
    }

    #[test]
    fn klein_four_from_f4() {
        let f4 = build_poly_quotient(2, 1, &[1, 1, 1]).unwrap();
        let d = group_decompose_cyclic(&AbelianGroup::additive(&f4)).unwrap();
        assert_eq!(d.orders, vec![2, 2]);
    }

    #[test]
    fn invariant_factors_of_z2_x_z4() {
        let g = AbelianGroup::product(&[
            AbelianGroup::cyclic(2).unwrap(),
            AbelianGroup::cyclic(4).unwrap(),
        ])
        .unwrap();
        let d = group_decompose_cyclic(&g).unwrap();
        assert_eq!(d.orders, vec![2, 4]);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn z6_x_z4_is_z2_x_z12() {
        let g = AbelianGroup::product(&[
            AbelianGroup::cyclic(6).unwrap(),
            AbelianGroup::cyclic(4).unwrap(),
        ])
        .unwrap();
        let d = group_decompose_cyclic(&g).unwrap();
        assert_eq!(d.orders, vec![2, 12]);
    }

    #[test]
    fn coordinates_are_a_homomorphism() {
        let z12 = build_zmod(12).unwrap();
        let g = AbelianGroup::additive(&z12);
        let d = group_decompose_cyclic(&g).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let s = g.add(a, b);
                for i in 0..d.rank() {
                    assert_eq!(
                        (d.coords[a.index()][i] + d.coords[b.index()][i]) % d.orders[i],
                        d.coords[s.index()][i]
                    );
                }
            }
        }
    }

    #[test]
    fn trivial_group() {
        let g = AbelianGroup::cyclic(1).unwrap();
        let d = group_decompose_cyclic(&g).unwrap();
        assert!(d.generators.is_empty());
        assert_eq!(d.coords, vec![Vec::<u64>::new()]);
    }
}
