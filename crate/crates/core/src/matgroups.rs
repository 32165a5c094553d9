//! Finite matrix groups inside GL2 over cyclotomic fields, abstract
//! (table- or function-backed) finite groups, and the standard group
//! theoretic utilities the rest of the crate leans on.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::cyclotomic::CycNum;
use crate::descriptor::{CoxeterFamily, GroupDescriptor, Sl2Type};
use crate::mat2::Mat2;
use crate::{Error, Result};

/// Hard cap on closure enumeration.
pub const CLOSURE_CAP: usize = 10_000;
/// Multiplication tables are materialised below this size. All group
/// algorithms in the crate make a near-linear number of products, so the
/// quadratic table only pays off for small groups that are hit repeatedly.
const TABLE_CAP: usize = 96;

/// Minimal interface shared by matrix-backed and abstract groups. Elements
/// are indices 0..size.
pub trait GroupOps: Sync {
    fn size(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generators(&self) -> Vec<usize>;
    /// Canonical bytes used for deterministic tie-breaking.
    fn element_key(&self, a: usize) -> Vec<u8>;
}

/// A finite subgroup of GL2 with exact cyclotomic entries, closed under
/// multiplication and inverse.
pub struct MatGroup {
    pub level: u32,
    /// all elements stored lifted to the common level
    pub elems: Vec<Mat2>,
    pub gens: Vec<usize>,
    pub descriptor: Option<GroupDescriptor>,
    /// structural hash buckets over the canonical coefficient vectors
    index: HashMap<u64, Vec<u32>>,
    mul_table: OnceLock<Option<Vec<u16>>>,
    inv_table: OnceLock<Vec<u32>>,
}

fn hash_mat_at_level(m: &Mat2) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    for e in m.entries() {
        for c in e.coeffs() {
            let n = c.numer();
            (n.sign() == num_bigint::Sign::Minus).hash(&mut h);
            for d in n.iter_u64_digits() {
                d.hash(&mut h);
            }
            for d in c.denom().iter_u64_digits() {
                d.hash(&mut h);
            }
        }
    }
    h.finish()
}

/// Rewrite every entry of a matrix at the given level.
fn lift_mat(m: &Mat2, level: u32) -> Mat2 {
    Mat2::new(
        m.a.at_level(level),
        m.b.at_level(level),
        m.c.at_level(level),
        m.d.at_level(level),
    )
}

impl MatGroup {
    /// Closure of a generating set of matrices.
    pub fn from_generators(gen_mats: Vec<Mat2>, descriptor: Option<GroupDescriptor>) -> Result<MatGroup> {
        let mut level = 1u64;
        for g in &gen_mats {
            level = level.lcm(&(g.level() as u64));
        }
        let level = level as u32;
        let gen_mats: Vec<Mat2> = gen_mats.iter().map(|g| lift_mat(g, level)).collect();
        let mut elems = vec![lift_mat(&Mat2::identity(), level)];
        let mut index: HashMap<u64, Vec<u32>> = HashMap::new();
        index
            .entry(hash_mat_at_level(&elems[0]))
            .or_default()
            .push(0);
        let lookup = |index: &HashMap<u64, Vec<u32>>, elems: &[Mat2], m: &Mat2| -> Option<u32> {
            index
                .get(&hash_mat_at_level(m))
                .and_then(|bucket| bucket.iter().find(|&&i| elems[i as usize] == *m).copied())
        };
        let mut gens = Vec::new();
        for g in &gen_mats {
            if g.det().is_zero() {
                return Err(Error::invalid("group generator must be invertible"));
            }
            let id = match lookup(&index, &elems, g) {
                Some(i) => i,
                None => {
                    let i = elems.len() as u32;
                    index.entry(hash_mat_at_level(g)).or_default().push(i);
                    elems.push(g.clone());
                    i
                }
            };
            gens.push(id as usize);
        }
        let mut cursor = 0usize;
        while cursor < elems.len() {
            let x = elems[cursor].clone();
            for g in &gen_mats {
                let y = x.mul(g);
                if lookup(&index, &elems, &y).is_none() {
                    if elems.len() >= CLOSURE_CAP {
                        return Err(Error::CapExceeded(format!(
                            "group closure exceeded {CLOSURE_CAP} elements"
                        )));
                    }
                    index
                        .entry(hash_mat_at_level(&y))
                        .or_default()
                        .push(elems.len() as u32);
                    elems.push(y);
                }
            }
            cursor += 1;
        }
        Ok(MatGroup {
            level,
            elems,
            gens,
            descriptor,
            index,
            mul_table: OnceLock::new(),
            inv_table: OnceLock::new(),
        })
    }

    /// Build from a known-complete element list (verified closed under
    /// products of generators by the index structure).
    fn from_elements(
        level: u32,
        elems: Vec<Mat2>,
        gen_mats: &[Mat2],
        descriptor: Option<GroupDescriptor>,
    ) -> Result<MatGroup> {
        let mut index: HashMap<u64, Vec<u32>> = HashMap::new();
        let mut ordered = vec![lift_mat(&Mat2::identity(), level)];
        index
            .entry(hash_mat_at_level(&ordered[0]))
            .or_default()
            .push(0);
        let lookup = |index: &HashMap<u64, Vec<u32>>, ordered: &[Mat2], m: &Mat2| -> Option<u32> {
            index
                .get(&hash_mat_at_level(m))
                .and_then(|b| b.iter().find(|&&i| ordered[i as usize] == *m).copied())
        };
        for e in elems {
            let e = lift_mat(&e, level);
            if lookup(&index, &ordered, &e).is_none() {
                index
                    .entry(hash_mat_at_level(&e))
                    .or_default()
                    .push(ordered.len() as u32);
                ordered.push(e);
            }
        }
        let mut gens = Vec::new();
        for g in gen_mats {
            let g = lift_mat(g, level);
            let i = lookup(&index, &ordered, &g)
                .ok_or_else(|| Error::Inconsistent("generator missing from element set".into()))?;
            gens.push(i as usize);
        }
        let g = MatGroup {
            level,
            elems: ordered,
            gens,
            descriptor,
            index,
            mul_table: OnceLock::new(),
            inv_table: OnceLock::new(),
        };
        // closure sanity: products of elements with generators stay inside
        // (full check for small groups, deterministic sample for large)
        let stride = if g.size() <= 600 { 1 } else { g.size() / 97 + 1 };
        let mut i = 0;
        while i < g.size() {
            for &s in &g.gens {
                let prod = g.elems[i].mul(&g.elems[s]);
                if g.index_of(&prod).is_none() {
                    return Err(Error::Inconsistent(
                        "element set is not closed under multiplication".into(),
                    ));
                }
            }
            i += stride;
        }
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        // fast path: the matrix is already written at the group level, as is
        // the case for any product of stored elements
        if m.entries().iter().all(|e| e.level() == self.level) {
            return self.index.get(&hash_mat_at_level(m)).and_then(|bucket| {
                bucket
                    .iter()
                    .find(|&&i| self.elems[i as usize] == *m)
                    .map(|&i| i as usize)
            });
        }
        let candidate = if self.level % m.level() == 0 {
            lift_mat(m, self.level)
        } else {
            // entries may sit at an inflated level after arithmetic
            let reduced = m.min_level();
            if self.level % reduced.level() != 0 {
                return None;
            }
            lift_mat(&reduced, self.level)
        };
        self.index
            .get(&hash_mat_at_level(&candidate))
            .and_then(|bucket| {
                bucket
                    .iter()
                    .find(|&&i| self.elems[i as usize] == candidate)
                    .map(|&i| i as usize)
            })
    }

    pub fn mat(&self, i: usize) -> &Mat2 {
        &self.elems[i]
    }

    fn table(&self) -> Option<&Vec<u16>> {
        self.mul_table
            .get_or_init(|| {
                let n = self.size();
                if n > TABLE_CAP {
                    return None;
                }
                let mut t = vec![0u16; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let prod = self.elems[i].mul(&self.elems[j]);
                        t[i * n + j] = self.index_of(&prod).expect("closure") as u16;
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    /// All pseudo-reflections in the group.
    pub fn pseudo_reflections(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&i| self.elems[i].is_pseudo_reflection())
            .collect()
    }

    /// Subgroup generated by all pseudo-reflections.
    pub fn reflection_subgroup(&self) -> Vec<usize> {
        subgroup_closure(self, &self.pseudo_reflections())
    }

    /// Indices of the diagonal elements.
    pub fn diagonal_subset(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&i| self.elems[i].is_diagonal())
            .collect()
    }

    /// An abelian subgroup of index two, if one is visible (the diagonal
    /// part of an imprimitive-style group; diagonal matrices commute, so no
    /// further check is needed). Used as a character table fast path.
    pub fn abelian_index2(&self) -> Option<Vec<usize>> {
        let d = self.diagonal_subset();
        if d.len() * 2 == self.size() {
            Some(d)
        } else {
            None
        }
    }

    pub fn subgroup_from_mats(&self, mats: &[Mat2]) -> Result<Vec<usize>> {
        let mut idx = Vec::new();
        for m in mats {
            idx.push(self.index_of(m).ok_or_else(|| {
                Error::invalid("matrix does not belong to the ambient group")
            })?);
        }
        Ok(subgroup_closure(self, &idx))
    }

    /// Build a standalone group on a subset (must be a subgroup).
    pub fn subgroup_group(&self, indices: &[usize]) -> Result<MatGroup> {
        let mats: Vec<Mat2> = indices.iter().map(|&i| self.elems[i].clone()).collect();
        let gens = small_generating_set(self, indices);
        let gen_mats: Vec<Mat2> = gens.iter().map(|&i| self.elems[i].clone()).collect();
        MatGroup::from_elements(self.level, mats, &gen_mats, None)
    }
}

impl GroupOps for MatGroup {
    fn size(&self) -> usize {
        self.elems.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.table() {
            return t[a * self.size() + b] as usize;
        }
        let prod = self.elems[a].mul(&self.elems[b]);
        self.index_of(&prod).expect("group closure")
    }

    fn inv(&self, a: usize) -> usize {
        let tab = self.inv_table.get_or_init(|| {
            (0..self.size())
                .map(|i| {
                    let m = self.elems[i].inv().expect("group element invertible");
                    self.index_of(&m).expect("closure under inverse") as u32
                })
                .collect()
        });
        tab[a] as usize
    }

    fn generators(&self) -> Vec<usize> {
        if self.gens.is_empty() && self.size() > 1 {
            (0..self.size()).collect()
        } else {
            self.gens.clone()
        }
    }

    fn element_key(&self, a: usize) -> Vec<u8> {
        self.elems[a].key_at(self.level)
    }
}

// ---- abstract groups ----

enum MulImpl {
    Table { n: usize, t: Vec<u32> },
    Fun(Arc<dyn Fn(usize, usize) -> usize + Send + Sync>),
}

/// A finite group backed by a multiplication table or closure.
pub struct AbstractGroup {
    pub size: usize,
    mul_impl: MulImpl,
    inv: Vec<u32>,
    pub identity: usize,
    pub gens: Vec<usize>,
    pub labels: Option<Vec<String>>,
    /// Optional hint: an abelian subgroup of index two (character fast path).
    pub abelian_index2: Option<Vec<usize>>,
}

impl AbstractGroup {
    pub fn from_table(n: usize, t: Vec<u32>, identity: usize, gens: Vec<usize>) -> Result<Self> {
        assert_eq!(t.len(), n * n);
        for i in 0..n {
            if t[identity * n + i] != i as u32 || t[i * n + identity] != i as u32 {
                return Err(Error::Inconsistent("identity fails in table".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for i in 0..n {
            for j in 0..n {
                if t[i * n + j] == identity as u32 {
                    inv[i] = j as u32;
                }
            }
            if inv[i] == u32::MAX {
                return Err(Error::Inconsistent("missing inverse in table".into()));
            }
        }
        // associativity: exhaustive up to 200, deterministic sample above
        if n <= 200 {
            for a in 0..n {
                for b in 0..n {
                    let ab = t[a * n + b] as usize;
                    for c in 0..n {
                        let bc = t[b * n + c] as usize;
                        if t[ab * n + c] != t[a * n + bc] {
                            return Err(Error::Inconsistent("table not associative".into()));
                        }
                    }
                }
            }
        } else {
            let mut s = 0x9e3779b97f4a7c15u64;
            for _ in 0..5000 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                let a = (s >> 33) as usize % n;
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                let b = (s >> 33) as usize % n;
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                let c = (s >> 33) as usize % n;
                let ab = t[a * n + b] as usize;
                let bc = t[b * n + c] as usize;
                if t[ab * n + c] != t[a * n + bc] {
                    return Err(Error::Inconsistent("table not associative".into()));
                }
            }
        }
        Ok(AbstractGroup {
            size: n,
            mul_impl: MulImpl::Table { n, t },
            inv,
            identity,
            gens,
            labels: None,
            abelian_index2: None,
        })
    }

    pub fn from_fn(
        size: usize,
        f: Arc<dyn Fn(usize, usize) -> usize + Send + Sync>,
        identity: usize,
        gens: Vec<usize>,
    ) -> Result<Self> {
        let mut inv = vec![u32::MAX; size];
        for i in 0..size {
            if f(identity, i) != i || f(i, identity) != i {
                return Err(Error::Inconsistent("identity fails".into()));
            }
        }
        for i in 0..size {
            for j in 0..size {
                if f(i, j) == identity {
                    inv[i] = j as u32;
                    break;
                }
            }
            if inv[i] == u32::MAX {
                return Err(Error::Inconsistent("missing inverse".into()));
            }
        }
        Ok(AbstractGroup {
            size,
            mul_impl: MulImpl::Fun(f),
            inv,
            identity,
            gens,
            labels: None,
            abelian_index2: None,
        })
    }
}

impl GroupOps for AbstractGroup {
    fn size(&self) -> usize {
        self.size
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_impl {
            MulImpl::Table { n, t } => t[a * n + b] as usize,
            MulImpl::Fun(f) => f(a, b),
        }
    }

    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    fn generators(&self) -> Vec<usize> {
        if self.gens.is_empty() && self.size > 1 {
            (0..self.size).collect()
        } else {
            self.gens.clone()
        }
    }

    fn element_key(&self, a: usize) -> Vec<u8> {
        (a as u64).to_le_bytes().to_vec()
    }
}

// ---- generic utilities ----

pub fn element_order(g: &dyn GroupOps, x: usize) -> u64 {
    let id = g.identity();
    let mut y = x;
    let mut k = 1u64;
    while y != id {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

pub fn power(g: &dyn GroupOps, x: usize, e: i64) -> usize {
    let id = g.identity();
    let base = if e < 0 { g.inv(x) } else { x };
    let mut e = e.unsigned_abs();
    let mut acc = id;
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = g.mul(acc, sq);
        }
        sq = g.mul(sq, sq);
        e >>= 1;
    }
    acc
}

pub fn group_exponent(g: &dyn GroupOps) -> u64 {
    let mut e = 1u64;
    for x in 0..g.size() {
        e = e.lcm(&element_order(g, x));
    }
    e
}

/// Sorted element list of the subgroup generated by `gens`.
pub fn subgroup_closure(g: &dyn GroupOps, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.size()];
    seen[g.identity()] = true;
    let mut out = vec![g.identity()];
    let mut cursor = 0;
    while cursor < out.len() {
        let x = out[cursor];
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        cursor += 1;
    }
    out.sort_unstable();
    out
}

/// Greedy small generating set for a subgroup given by its sorted elements.
pub fn small_generating_set(g: &dyn GroupOps, elements: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut current = vec![g.identity()];
    // order candidates by decreasing element order, then key
    let mut cands: Vec<usize> = elements.to_vec();
    cands.sort_by_cached_key(|&x| {
        (
            std::cmp::Reverse(element_order(g, x)),
            g.element_key(x),
        )
    });
    for &c in &cands {
        if current.binary_search(&c).is_ok() {
            continue;
        }
        gens.push(c);
        current = subgroup_closure(g, &gens);
        if current.len() == elements.len() {
            break;
        }
    }
    gens
}

pub fn is_abelian_subset(g: &dyn GroupOps, elements: &[usize]) -> bool {
    for (i, &x) in elements.iter().enumerate() {
        for &y in elements.iter().skip(i + 1) {
            if g.mul(x, y) != g.mul(y, x) {
                return false;
            }
        }
    }
    true
}

pub fn is_normal(g: &dyn GroupOps, sub_sorted: &[usize]) -> bool {
    for &s in &g.generators() {
        let si = g.inv(s);
        for &x in sub_sorted {
            let y = g.mul(g.mul(s, x), si);
            if sub_sorted.binary_search(&y).is_err() {
                return false;
            }
        }
    }
    true
}

pub fn center(g: &dyn GroupOps) -> Vec<usize> {
    let gens = g.generators();
    (0..g.size())
        .filter(|&x| gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect()
}

pub fn commutator_subgroup(g: &dyn GroupOps) -> Vec<usize> {
    let gens = g.generators();
    let mut seed = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            seed.push(c);
        }
    }
    normal_closure(g, &seed)
}

pub fn normal_closure(g: &dyn GroupOps, seed: &[usize]) -> Vec<usize> {
    let gens = g.generators();
    let mut current = subgroup_closure(g, seed);
    loop {
        let mut extra = Vec::new();
        for &s in &gens {
            let si = g.inv(s);
            for &x in &current {
                let y = g.mul(g.mul(s, x), si);
                if current.binary_search(&y).is_err() {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return current;
        }
        let mut all = current.clone();
        all.extend(extra);
        current = subgroup_closure(g, &all);
    }
}

/// Quotient by a normal subgroup: the coset table plus the projection map.
pub fn quotient(g: &dyn GroupOps, normal_sorted: &[usize]) -> Result<(AbstractGroup, Vec<usize>)> {
    if !is_normal(g, normal_sorted) {
        return Err(Error::invalid("subgroup is not normal"));
    }
    let n = g.size();
    let mut coset = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &h in normal_sorted {
            coset[g.mul(x, h)] = id;
        }
        reps.push(x);
    }
    let q = reps.len();
    let mut table = vec![0u32; q * q];
    for i in 0..q {
        for j in 0..q {
            table[i * q + j] = coset[g.mul(reps[i], reps[j])] as u32;
        }
    }
    let identity = coset[g.identity()];
    let gens: Vec<usize> = {
        let mut v: Vec<usize> = g.generators().iter().map(|&s| coset[s]).collect();
        v.sort_unstable();
        v.dedup();
        v.retain(|&x| x != identity);
        if v.is_empty() && q > 1 {
            (0..q).filter(|&x| x != identity).collect()
        } else {
            v
        }
    };
    let ab = AbstractGroup::from_table(q, table, identity, gens)?;
    Ok((ab, coset))
}

/// Abelianization invariant factors (ascending divisibility chain).
pub fn abelianization(g: &dyn GroupOps) -> Result<Vec<u64>> {
    let comm = commutator_subgroup(g);
    let (q, _) = quotient(g, &comm)?;
    let all: Vec<usize> = (0..q.size).collect();
    abelian_invariants(&q, &all)
}

/// Basis of an abelian subgroup: elements with orders, largest first,
/// forming a direct-sum decomposition per prime then recombined by CRT.
pub fn abelian_basis(g: &dyn GroupOps, elements: &[usize]) -> Result<Vec<(usize, u64)>> {
    let total: u64 = elements.len() as u64;
    let primes = crate::cyclotomic::prime_factors(total);
    let id = g.identity();
    // one pass for the orders; commutativity is implied when the basis walk
    // below succeeds, and generator pairs are checked directly
    let orders: std::collections::HashMap<usize, u64> = elements
        .iter()
        .map(|&x| (x, element_order(g, x)))
        .collect();
    for (i, &x) in elements.iter().enumerate() {
        for &y in elements.iter().skip(i + 1).take(8) {
            if g.mul(x, y) != g.mul(y, x) {
                return Err(Error::invalid("subset is not abelian"));
            }
        }
    }
    let mut per_prime: Vec<Vec<(usize, u64)>> = Vec::new();
    for &(p, _) in &primes {
        // Sylow p-subgroup of the abelian group
        let sylow: Vec<usize> = elements
            .iter()
            .copied()
            .filter(|&x| {
                let o = orders[&x];
                crate::cyclotomic::prime_factors(o).iter().all(|&(q, _)| q == p)
            })
            .collect();
        let mut basis: Vec<(usize, u64)> = Vec::new();
        // coordinates of the subgroup generated so far
        let mut span: HashMap<usize, Vec<u64>> = HashMap::new();
        span.insert(id, vec![]);
        while span.len() < sylow.len() {
            // pick element with maximal coset order
            let mut best: Option<(usize, u64)> = None;
            for &y in &sylow {
                if span.contains_key(&y) {
                    continue;
                }
                let mut t = 1u64;
                let mut z = y;
                while !span.contains_key(&z) {
                    z = power(g, z, p as i64);
                    t *= p;
                }
                if best.map_or(true, |(_, bt)| t > bt) {
                    best = Some((y, t));
                }
            }
            let (y, t) = best.expect("abelian basis search");
            // adjust so that y^t = 1: y^t lies in the current span
            let z = power(g, y, t as i64);
            let coords = span.get(&z).expect("span coordinate").clone();
            let mut y_adj = y;
            for (i, &(b, bord)) in basis.iter().enumerate() {
                let e = coords[i];
                if e == 0 {
                    continue;
                }
                // solve s*t = e mod bord
                if e % t != 0 {
                    return Err(Error::Inconsistent(
                        "abelian basis adjustment failed".into(),
                    ));
                }
                let s = (e / t) % bord;
                y_adj = g.mul(y_adj, power(g, b, -(s as i64)));
            }
            debug_assert_eq!(power(g, y_adj, t as i64), id);
            // extend span coordinates
            let mut new_span: HashMap<usize, Vec<u64>> = HashMap::new();
            for (elt, coords) in &span {
                let mut acc = *elt;
                for k in 0..t {
                    let mut c = coords.clone();
                    c.push(k);
                    new_span.insert(acc, c);
                    acc = g.mul(acc, y_adj);
                }
            }
            span = new_span;
            basis.push((y_adj, t));
        }
        if !basis.is_empty() {
            basis.sort_by_key(|&(_, o)| std::cmp::Reverse(o));
            per_prime.push(basis);
        }
    }
    // recombine across primes: i-th largest together
    let maxlen = per_prime.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out: Vec<(usize, u64)> = Vec::new();
    for i in 0..maxlen {
        let mut elt = id;
        let mut ord = 1u64;
        for b in &per_prime {
            if let Some(&(x, o)) = b.get(i) {
                elt = g.mul(elt, x);
                ord *= o;
            }
        }
        out.push((elt, ord));
    }
    Ok(out)
}

/// Invariant factors of an abelian subgroup, ascending.
pub fn abelian_invariants(g: &dyn GroupOps, elements: &[usize]) -> Result<Vec<u64>> {
    let basis = abelian_basis(g, elements)?;
    let mut v: Vec<u64> = basis.iter().map(|&(_, o)| o).filter(|&o| o > 1).collect();
    v.sort_unstable();
    Ok(v)
}

// ---- conjugacy classes ----

#[derive(Clone, Debug)]
pub struct Classes {
    pub class_of: Vec<u32>,
    pub reps: Vec<usize>,
    pub sizes: Vec<u64>,
    pub inverse_class: Vec<u32>,
    pub rep_orders: Vec<u64>,
}

impl Classes {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// Conjugacy classes with the reproducible ordering: identity first, then by
/// increasing element order, class size, canonical representative key.
pub fn conjugacy_classes(g: &dyn GroupOps) -> Classes {
    let n = g.size();
    let gens = g.generators();
    let mut class_of = vec![u32::MAX; n];
    let mut raw_classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let cid = raw_classes.len() as u32;
        let mut orbit = vec![x];
        class_of[x] = cid;
        let mut cursor = 0;
        while cursor < orbit.len() {
            let y = orbit[cursor];
            for &s in &gens {
                let z = g.mul(g.mul(s, y), g.inv(s));
                if class_of[z] == u32::MAX {
                    class_of[z] = cid;
                    orbit.push(z);
                }
            }
            cursor += 1;
        }
        raw_classes.push(orbit);
    }
    // choose representatives and sort classes
    let mut meta: Vec<(usize, usize, u64, Vec<u8>)> = raw_classes
        .iter()
        .enumerate()
        .map(|(ci, orbit)| {
            let rep = *orbit
                .iter()
                .min_by_key(|&&e| g.element_key(e))
                .expect("nonempty class");
            (ci, orbit.len(), element_order(g, rep), g.element_key(rep))
        })
        .collect();
    let id = g.identity();
    meta.sort_by(|a, b| {
        let a_ident = raw_classes[a.0].contains(&id);
        let b_ident = raw_classes[b.0].contains(&id);
        b_ident
            .cmp(&a_ident)
            .then(a.2.cmp(&b.2))
            .then(a.1.cmp(&b.1))
            .then(a.3.cmp(&b.3))
    });
    let mut remap = vec![0u32; raw_classes.len()];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut rep_orders = Vec::new();
    for (new_id, (old_id, size, order, _)) in meta.iter().enumerate() {
        remap[*old_id] = new_id as u32;
        let rep = *raw_classes[*old_id]
            .iter()
            .min_by_key(|&&e| g.element_key(e))
            .unwrap();
        reps.push(rep);
        sizes.push(*size as u64);
        rep_orders.push(*order);
    }
    let class_of: Vec<u32> = class_of.iter().map(|&c| remap[c as usize]).collect();
    let inverse_class: Vec<u32> = reps.iter().map(|&r| class_of[g.inv(r)]).collect();
    Classes {
        class_of,
        reps,
        sizes,
        inverse_class,
        rep_orders,
    }
}

// ---- builders ----

/// The fixed copy of each finite subgroup of SL2.
pub fn sl2_generators(t: Sl2Type) -> Result<Vec<Mat2>> {
    let one = CycNum::one;
    match t {
        Sl2Type::A(0) => Ok(vec![]),
        Sl2Type::A(k) => {
            let z = CycNum::root(k + 1)?;
            Ok(vec![Mat2::diag(z.clone(), z.inv()?)])
        }
        Sl2Type::D(k) => {
            if k < 3 {
                return Err(Error::invalid("D-type index must be at least 3"));
            }
            let n = k - 2;
            let s = CycNum::root(2 * n)?;
            let i4 = CycNum::root(4)?;
            Ok(vec![
                Mat2::diag(s.clone(), s.inv()?),
                Mat2::anti_diag(i4.clone(), i4),
            ])
        }
        Sl2Type::E6 => {
            let i4 = CycNum::root(4)?;
            let qi = Mat2::diag(i4.clone(), i4.neg());
            let qj = Mat2::anti_diag(one(), CycNum::from_int(-1));
            // omega = -(1 + i + j + k)/2, an order-3 unit quaternion
            let h = crate::cyclotomic::rat(-1, 2);
            let omega = quaternion(&h, &h, &h, &h);
            Ok(vec![qi, qj, omega])
        }
        Sl2Type::E7 => {
            let mut gens = sl2_generators(Sl2Type::E6)?;
            let z8 = CycNum::root(8)?;
            gens.push(Mat2::diag(z8.clone(), z8.inv()?));
            Ok(gens)
        }
        Sl2Type::E8 => {
            let mut gens = sl2_generators(Sl2Type::E6)?;
            // q = (phi + phi^{-1} i + j)/2 with phi the golden ratio,
            // an order-10 unit icosian
            let z5 = CycNum::root(5)?;
            let sqrt5 = z5
                .clone()
                .sub(&z5.pow(2).unwrap())
                .sub(&z5.pow(3).unwrap())
                .add(&z5.pow(4).unwrap());
            let quarter = crate::cyclotomic::rat(1, 4);
            let a = sqrt5.add(&CycNum::one()).scale(&quarter); // phi/2
            let b = sqrt5.sub(&CycNum::one()).scale(&quarter); // phi^{-1}/2
            let c = CycNum::from_rat(crate::cyclotomic::rat(1, 2));
            let q = quaternion_c(&a, &b, &c, &CycNum::zero());
            gens.push(q);
            Ok(gens)
        }
    }
}

fn quaternion(a: &crate::cyclotomic::Rat, b: &crate::cyclotomic::Rat, c: &crate::cyclotomic::Rat, d: &crate::cyclotomic::Rat) -> Mat2 {
    quaternion_c(
        &CycNum::from_rat(a.clone()),
        &CycNum::from_rat(b.clone()),
        &CycNum::from_rat(c.clone()),
        &CycNum::from_rat(d.clone()),
    )
}

/// Quaternion a + bi + cj + dk as a 2x2 matrix over Q(zeta_4, ...).
fn quaternion_c(a: &CycNum, b: &CycNum, c: &CycNum, d: &CycNum) -> Mat2 {
    let i4 = CycNum::root(4).unwrap();
    Mat2::new(
        a.add(&b.mul(&i4)),
        c.add(&d.mul(&i4)),
        c.neg().add(&d.mul(&i4)),
        a.sub(&b.mul(&i4)),
    )
}

pub fn build_sl2_subgroup(t: Sl2Type) -> Result<MatGroup> {
    let g = MatGroup::from_generators(sl2_generators(t)?, Some(GroupDescriptor::Sl2(t)))?;
    if g.size() as u64 != t.order() {
        return Err(Error::Inconsistent(format!(
            "SL2 subgroup {} has order {}, expected {}",
            t.render(),
            g.size(),
            t.order()
        )));
    }
    Ok(g)
}

/// Canonical generators of the subgroup G2 inside our fixed copy of G1.
fn embedded_g2_generators(fam: &CoxeterFamily) -> Result<Vec<Mat2>> {
    Ok(match fam {
        CoxeterFamily::TypeA { b, d, .. } => {
            if *d == 1 {
                vec![]
            } else {
                // G2 = <rho^b>, the order-d subgroup of the cyclic G1
                let z = CycNum::root(d * b)?;
                let rho = Mat2::diag(z.clone(), z.inv()?);
                let mut p = Mat2::identity();
                for _ in 0..*b {
                    p = p.mul(&rho);
                }
                vec![p]
            }
        }
        CoxeterFamily::B { n, .. } => {
            let s = CycNum::root(2 * n)?;
            vec![Mat2::diag(s.clone(), s.inv()?)]
        }
        CoxeterFamily::D { .. } | CoxeterFamily::E6 { .. } | CoxeterFamily::E7 { .. } | CoxeterFamily::E8 { .. } => {
            return Err(Error::invalid("split families have G2 = G1"))
        }
        CoxeterFamily::Cd { n, .. } => {
            // inside D(2n): sigma^2 and tau
            let s = CycNum::root(2 * (2 * n - 2))?;
            let i4 = CycNum::root(4)?;
            let sigma = Mat2::diag(s.clone(), s.inv()?);
            vec![sigma.mul(&sigma), Mat2::anti_diag(i4.clone(), i4)]
        }
        CoxeterFamily::Bt { n, .. } => {
            let s = CycNum::root(2 * (2 * n + 1))?;
            let sigma = Mat2::diag(s.clone(), s.inv()?);
            vec![sigma.mul(&sigma)]
        }
        CoxeterFamily::F41 { .. } => sl2_generators(Sl2Type::E6)?,
        CoxeterFamily::G21 { .. } => {
            let all = sl2_generators(Sl2Type::E6)?;
            vec![all[0].clone(), all[1].clone()]
        }
    })
}

/// Build a group from any descriptor.
pub fn build_group(d: &GroupDescriptor) -> Result<MatGroup> {
    match d {
        GroupDescriptor::Sl2(t) => build_sl2_subgroup(*t),
        GroupDescriptor::ShephardTodd(k) => {
            let cox = GroupDescriptor::st_to_coxeter(*k)?;
            let mut g = build_group(&cox)?;
            g.descriptor = Some(d.clone());
            Ok(g)
        }
        GroupDescriptor::Abelian { m, n, c } => {
            let g1 = Mat2::diag(CycNum::root(*m)?, CycNum::one());
            let g2 = Mat2::diag(CycNum::root_pow(m * n, *c as i64), CycNum::root(*n)?);
            let g = MatGroup::from_generators(vec![g1, g2], Some(d.clone()))?;
            if g.size() as u64 != (*m as u64) * (*n as u64) {
                return Err(Error::Inconsistent(format!(
                    "Ab({m},{n},{c}) has order {}, expected {}",
                    g.size(),
                    m * n
                )));
            }
            Ok(g)
        }
        GroupDescriptor::Imprimitive { n, p } => {
            let np = n * p;
            let z = CycNum::root(np)?;
            let diag1 = Mat2::diag(z.clone(), z.inv()?);
            let diag2 = Mat2::diag(CycNum::root(*n)?, CycNum::one());
            let swap = Mat2::anti_diag(CycNum::one(), CycNum::one());
            let g = MatGroup::from_generators(vec![diag1, diag2, swap], Some(d.clone()))?;
            let expected = 2 * (*n as u64) * (*n as u64) * (*p as u64);
            if g.size() as u64 != expected {
                return Err(Error::Inconsistent(format!(
                    "G({np},{p},2) has order {}, expected {expected}",
                    g.size()
                )));
            }
            Ok(g)
        }
        GroupDescriptor::Coxeter { z1, z2, .. } => {
            let fam = d.coxeter_family()?;
            let (g1t, _) = family_types(&fam);
            let g1 = build_sl2_subgroup(g1t)?;
            let b = z1 / z2;
            let a = *z2;
            build_fibre_product(&g1, &fam, a, b, d)
        }
    }
}

pub fn family_types(fam: &CoxeterFamily) -> (Sl2Type, Sl2Type) {
    match fam {
        CoxeterFamily::TypeA { b, d, .. } => (Sl2Type::A(d * b - 1), Sl2Type::A(d - 1)),
        CoxeterFamily::B { n, .. } => (Sl2Type::D(n + 2), Sl2Type::A(2 * n - 1)),
        CoxeterFamily::D { n, .. } => (Sl2Type::D(*n), Sl2Type::D(*n)),
        CoxeterFamily::Cd { n, .. } => (Sl2Type::D(2 * n), Sl2Type::D(n + 1)),
        CoxeterFamily::Bt { n, .. } => (Sl2Type::D(2 * n + 3), Sl2Type::A(2 * n)),
        CoxeterFamily::E6 { .. } => (Sl2Type::E6, Sl2Type::E6),
        CoxeterFamily::E7 { .. } => (Sl2Type::E7, Sl2Type::E7),
        CoxeterFamily::E8 { .. } => (Sl2Type::E8, Sl2Type::E8),
        CoxeterFamily::F41 { .. } => (Sl2Type::E7, Sl2Type::E6),
        CoxeterFamily::G21 { .. } => (Sl2Type::E6, Sl2Type::D(4)),
    }
}

/// The coset character phi : G1 -> mu_b with kernel G2: returns per-element
/// exponents k with phi(x) = zeta_b^k, plus the chosen coset generator.
pub fn coset_character(g1: &MatGroup, fam: &CoxeterFamily, b: u32) -> Result<(Vec<u32>, usize)> {
    if b == 1 {
        return Ok((vec![0; g1.size()], g1.identity()));
    }
    let g2_mats = embedded_g2_generators(fam)?;
    let g2 = g1.subgroup_from_mats(&g2_mats)?;
    if g1.size() != g2.len() * b as usize {
        return Err(Error::Inconsistent(format!(
            "G2 has index {} in G1, expected {b}",
            g1.size() / g2.len()
        )));
    }
    if !is_normal(g1, &g2) {
        return Err(Error::Inconsistent("G2 is not normal in G1".into()));
    }
    let (q, proj) = quotient(g1, &g2)?;
    if q.size != b as usize {
        return Err(Error::Inconsistent("quotient size mismatch".into()));
    }
    // candidates with full coset order; prefer g1^b = +-I, then minimal key
    let neg = Mat2::scalar(&CycNum::from_int(-1));
    let neg_idx = g1.index_of(&neg);
    let mut best: Option<(bool, Vec<u8>, usize)> = None;
    for x in 0..g1.size() {
        if element_order(&q, proj[x]) != b as u64 {
            continue;
        }
        let xb = power(g1, x, b as i64);
        let pm = xb == g1.identity() || Some(xb) == neg_idx;
        let key = g1.element_key(x);
        let cand = (!pm, key, x);
        if best.as_ref().map_or(true, |b0| (&cand.0, &cand.1) < (&b0.0, &b0.1)) {
            best = Some(cand);
        }
    }
    let (_, _, gen) = best.ok_or_else(|| Error::Inconsistent("quotient is not cyclic".into()))?;
    // exponent of each coset as a power of the generator coset
    let mut coset_exp = vec![u32::MAX; q.size];
    let mut cur = q.identity;
    for k in 0..b {
        coset_exp[cur] = k;
        cur = q.mul(cur, proj[gen]);
    }
    if coset_exp.iter().any(|&e| e == u32::MAX) {
        return Err(Error::Inconsistent("coset generator does not generate".into()));
    }
    let exps: Vec<u32> = (0..g1.size()).map(|x| coset_exp[proj[x]]).collect();
    Ok((exps, gen))
}

fn build_fibre_product(
    g1: &MatGroup,
    fam: &CoxeterFamily,
    a: u32,
    b: u32,
    d: &GroupDescriptor,
) -> Result<MatGroup> {
    let (exps, gen) = coset_character(g1, fam, b)?;
    let ab = a * b;
    if (g1.size() as u64) * (a as u64) > 2 * CLOSURE_CAP as u64 {
        return Err(Error::CapExceeded(format!(
            "fibre product would exceed {CLOSURE_CAP} elements"
        )));
    }
    let level = (g1.level as u64).lcm(&(ab as u64)) as u32;
    let mut elems = Vec::new();
    for x in 0..g1.size() {
        let k = exps[x];
        for t in 0..a {
            let e = (k + b * t) % ab;
            let zeta = CycNum::root_pow(ab, e as i64);
            elems.push(g1.mat(x).scale(&zeta));
        }
    }
    // generators: G2 generators (phi = 1), the scalar zeta_a, and the lift of
    // the coset generator
    let mut gen_mats: Vec<Mat2> = Vec::new();
    if b > 1 {
        for m in embedded_g2_generators(fam)? {
            gen_mats.push(m);
        }
    } else {
        for &gidx in &g1.gens {
            gen_mats.push(g1.mat(gidx).clone());
        }
    }
    if a > 1 {
        gen_mats.push(Mat2::scalar(&CycNum::root(a)?));
    }
    if b > 1 {
        let lift = g1.mat(gen).scale(&CycNum::root_pow(ab, exps[gen] as i64));
        gen_mats.push(lift);
    }
    let g = MatGroup::from_elements(level, elems, &gen_mats, Some(d.clone()))?;
    // the generators must span
    let span = subgroup_closure(&g, &g.gens);
    if span.len() != g.size() {
        return Err(Error::Inconsistent(
            "fibre product generators do not span".into(),
        ));
    }
    Ok(g)
}

/// Expected order of a descriptor group.
pub fn descriptor_order(d: &GroupDescriptor) -> Result<u64> {
    Ok(match d {
        GroupDescriptor::Sl2(t) => t.order(),
        GroupDescriptor::Abelian { m, n, .. } => (*m as u64) * (*n as u64),
        GroupDescriptor::Imprimitive { n, p } => 2 * (*n as u64) * (*n as u64) * (*p as u64),
        GroupDescriptor::ShephardTodd(k) => {
            descriptor_order(&GroupDescriptor::st_to_coxeter(*k)?)?
        }
        GroupDescriptor::Coxeter { z2, g1, .. } => {
            let fam = d.coxeter_family()?;
            // the pair (-1, -I) is identified exactly when -I lies in G1 and
            // phi(-I) = (-1)^a
            let identified = match fam {
                CoxeterFamily::TypeA { a, b, d } => {
                    let db = d * b;
                    if db % 2 == 1 {
                        false
                    } else if a % 2 == 0 {
                        d % 2 == 0
                    } else {
                        b % 2 == 0 && d % 2 == 1
                    }
                }
                _ => true,
            };
            let full = (*z2 as u64) * g1.order();
            if identified {
                full / 2
            } else {
                full
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_orders() {
        assert_eq!(build_sl2_subgroup(Sl2Type::A(1)).unwrap().size(), 2);
        assert_eq!(build_sl2_subgroup(Sl2Type::D(4)).unwrap().size(), 8);
        assert_eq!(build_sl2_subgroup(Sl2Type::E6).unwrap().size(), 24);
        assert_eq!(build_sl2_subgroup(Sl2Type::E7).unwrap().size(), 48);
        assert_eq!(build_sl2_subgroup(Sl2Type::E8).unwrap().size(), 120);
    }

    #[test]
    fn d4_is_quaternion_type() {
        let g = build_sl2_subgroup(Sl2Type::D(4)).unwrap();
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.count(), 5);
        let c = center(&g);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn e7_classes_and_abelianization() {
        let g = build_sl2_subgroup(Sl2Type::E7).unwrap();
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.count(), 8);
        assert_eq!(abelianization(&g).unwrap(), vec![2]);
    }

    #[test]
    fn coxeter_b_order() {
        // B_n^m with m=1, n=2 has order 4mn = 8
        let d = GroupDescriptor::parse("Cox(4,2;D4,A3)").unwrap();
        let g = build_group(&d).unwrap();
        assert_eq!(g.size(), 8);
        assert_eq!(descriptor_order(&d).unwrap(), 8);
    }

    #[test]
    fn abelian_order() {
        let d = GroupDescriptor::parse("Ab(2,2,0)").unwrap();
        let g = build_group(&d).unwrap();
        assert_eq!(g.size(), 4);
    }

    #[test]
    fn imprimitive_small() {
        let d = GroupDescriptor::parse("G(1,1,2)").unwrap();
        let g = build_group(&d).unwrap();
        assert_eq!(g.size(), 2);
        let d2 = GroupDescriptor::parse("G(2,1,2)").unwrap();
        let g2 = build_group(&d2).unwrap();
        assert_eq!(g2.size(), 8);
    }

    #[test]
    fn pseudo_reflections_in_sl2_are_absent() {
        for t in [Sl2Type::A(3), Sl2Type::D(4), Sl2Type::E6] {
            let g = build_sl2_subgroup(t).unwrap();
            assert!(g.pseudo_reflections().is_empty());
        }
    }

    #[test]
    fn pseudo_reflections_of_abelian() {
        // Ab(3,1,0) = diag(zeta3, 1): the two nontrivial powers fix a line
        let d = GroupDescriptor::parse("Ab(3,1,0)").unwrap();
        let g = build_group(&d).unwrap();
        assert_eq!(g.pseudo_reflections().len(), 2);
    }

    #[test]
    fn kernel_of_determinant() {
        let d = GroupDescriptor::parse("G(2,1,2)").unwrap();
        let g = build_group(&d).unwrap();
        let sl: Vec<usize> = (0..g.size())
            .filter(|&i| g.mat(i).det().is_one())
            .collect();
        assert_eq!(sl.len(), 4);
        assert!(is_normal(&g, &sl));
    }

    #[test]
    fn class_equation() {
        for desc in ["Cox(4,2;D4,A3)", "G(4,2,2)", "SL2:E6"] {
            let g = build_group(&GroupDescriptor::parse(desc).unwrap()).unwrap();
            let classes = conjugacy_classes(&g);
            let total: u64 = classes.sizes.iter().sum();
            assert_eq!(total, g.size() as u64);
            assert_eq!(classes.sizes[0], 1);
        }
    }

    #[test]
    fn st_groups_build() {
        let g4 = build_group(&GroupDescriptor::ShephardTodd(4)).unwrap();
        assert_eq!(g4.size(), 24);
        let g13 = build_group(&GroupDescriptor::ShephardTodd(13)).unwrap();
        assert_eq!(g13.size(), 96);
    }

    #[test]
    fn abelian_invariants_examples() {
        let g = build_group(&GroupDescriptor::parse("Ab(2,2,0)").unwrap()).unwrap();
        let all: Vec<usize> = (0..g.size()).collect();
        assert_eq!(abelian_invariants(&g, &all).unwrap(), vec![2, 2]);
        let g6 = build_group(&GroupDescriptor::parse("Ab(6,1,0)").unwrap()).unwrap();
        let all6: Vec<usize> = (0..g6.size()).collect();
        assert_eq!(abelian_invariants(&g6, &all6).unwrap(), vec![6]);
    }

    #[test]
    fn quotient_of_b21() {
        let g = build_group(&GroupDescriptor::parse("Cox(4,2;D4,A3)").unwrap()).unwrap();
        let sl: Vec<usize> = (0..g.size())
            .filter(|&i| g.mat(i).det().is_one())
            .collect();
        let (q, _) = quotient(&g, &sl).unwrap();
        assert_eq!(q.size, g.size() / sl.len());
    }
}
