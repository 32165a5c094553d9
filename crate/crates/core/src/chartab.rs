//! Exact character tables of finite groups.
//!
//! Three construction paths share one output type: a direct formula for
//! abelian groups, extension/induction from an abelian subgroup of index
//! two, and the class-matrix eigenvector method computed modulo a prime
//! p = 1 mod exp(G) and lifted exactly to cyclotomic integers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{CycNum, Rat};
use crate::fp::{self, Fp, MatFp};
use crate::matgroups::{
    abelian_basis, conjugacy_classes, is_abelian_subset, Classes, GroupOps, MatGroup,
};
use crate::{Error, Result};

#[derive(Clone)]
pub struct CharTable {
    pub order: u64,
    pub classes: Classes,
    pub dims: Vec<u64>,
    /// values[chi][class]
    pub values: Vec<Vec<CycNum>>,
}

impl CharTable {
    pub fn num_chars(&self) -> usize {
        self.dims.len()
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        (0..self.num_chars())
            .find(|&i| self.values[i].iter().all(|v| v.is_one()))
            .expect("trivial character present")
    }

    /// Character value at a group element.
    pub fn value_at(&self, chi: usize, element: usize) -> &CycNum {
        &self.values[chi][self.classes.class_of[element] as usize]
    }

    /// One-dimensional characters, by index.
    pub fn linear_chars(&self) -> Vec<usize> {
        (0..self.num_chars()).filter(|&i| self.dims[i] == 1).collect()
    }
}

/// Exact inner product (1/|G|) sum |C| x(C) conj(y(C)).
pub fn inner_product(table: &CharTable, x: &[CycNum], y: &[CycNum]) -> Result<Rat> {
    if x.len() != table.classes.count() || y.len() != table.classes.count() {
        return Err(Error::invalid("class vector length mismatch"));
    }
    let mut acc = CycNum::zero();
    for l in 0..x.len() {
        let term = x[l].mul(&y[l].conj());
        acc = acc.add(&term.scale(&Rat::from_integer(table.classes.sizes[l].into())));
    }
    let acc = acc.scale(&Rat::new(1.into(), table.order.into()));
    acc.as_rational()
        .ok_or_else(|| Error::Inconsistent("inner product is not rational".into()))
}

/// Non-negative integer inner product of two characters.
pub fn multiplicity(table: &CharTable, x: &[CycNum], y: &[CycNum]) -> Result<u64> {
    let r = inner_product(table, x, y)?;
    if !r.denom().is_one() || r.numer().is_negative() {
        return Err(Error::Inconsistent(format!(
            "character multiplicity is not a non-negative integer: {r}"
        )));
    }
    r.numer()
        .to_string()
        .parse()
        .map_err(|_| Error::Inconsistent("multiplicity overflow".into()))
}

/// Values of a character on a list of elements of the ambient group.
pub fn restrict(table: &CharTable, chi: usize, elements: &[usize]) -> Vec<CycNum> {
    elements
        .iter()
        .map(|&e| table.value_at(chi, e).clone())
        .collect()
}

/// True iff chi(h) = chi(1) for all h in the subgroup.
pub fn is_trivial_on(table: &CharTable, chi: usize, elements: &[usize]) -> bool {
    let dim = CycNum::from_int(table.dims[chi] as i64);
    elements.iter().all(|&e| *table.value_at(chi, e) == dim)
}

/// The 2-dimensional trace character of a matrix group, per class.
pub fn standard_character(g: &MatGroup, classes: &Classes) -> Vec<CycNum> {
    classes.reps.iter().map(|&r| g.mat(r).trace()).collect()
}

/// Character table of a matrix group, using the diagonal-subgroup fast path
/// when available.
pub fn character_table_mat(g: &MatGroup) -> Result<CharTable> {
    character_table(g, g.abelian_index2())
}

/// Character table of any finite group.
pub fn character_table(g: &dyn GroupOps, abelian_index2: Option<Vec<usize>>) -> Result<CharTable> {
    if g.size() > 10_000 {
        return Err(Error::CapExceeded(
            "character tables are capped at order 10000".into(),
        ));
    }
    let classes = conjugacy_classes(g);
    let all: Vec<usize> = (0..g.size()).collect();
    let mut table = if is_abelian_subset(g, &all) {
        abelian_table(g, classes)?
    } else if let Some(h) = abelian_index2 {
        index_two_table(g, classes, &h)?
    } else {
        dixon_table(g, classes)?
    };
    sort_rows(&mut table);
    validate(&table)?;
    Ok(table)
}

fn sort_rows(t: &mut CharTable) {
    // any fixed total order gives reproducible row labels; the stored forms
    // are deterministic, so raw per-level bytes are enough and avoid lifting
    let mut order: Vec<usize> = (0..t.num_chars()).collect();
    let keys: Vec<(u64, Vec<u8>)> = (0..t.num_chars())
        .map(|i| {
            let mut bytes = Vec::new();
            for v in &t.values[i] {
                bytes.extend_from_slice(&v.level().to_le_bytes());
                v.key_bytes_at(v.level(), &mut bytes);
            }
            (t.dims[i], bytes)
        })
        .collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    t.dims = order.iter().map(|&i| t.dims[i]).collect();
    t.values = order.iter().map(|&i| t.values[i].clone()).collect();
}

fn validate(t: &CharTable) -> Result<()> {
    if t.num_chars() != t.classes.count() {
        return Err(Error::Inconsistent(
            "character count differs from class count".into(),
        ));
    }
    let sum: u64 = t.dims.iter().map(|d| d * d).sum();
    if sum != t.order {
        return Err(Error::Inconsistent(format!(
            "sum of squared dimensions {sum} != group order {}",
            t.order
        )));
    }
    let k = t.num_chars();
    if k <= 48 {
        for i in 0..k {
            for j in i..k {
                let ip = inner_product(t, &t.values[i], &t.values[j])?;
                let expect = if i == j { Rat::one() } else { Rat::zero() };
                if ip != expect {
                    return Err(Error::Inconsistent(format!(
                        "row orthogonality fails at ({i},{j}): {ip}"
                    )));
                }
            }
        }
    } else {
        // spot checks on large tables; the constructions are exact
        let step = k / 8 + 1;
        let mut i = 0;
        while i < k {
            let ip = inner_product(t, &t.values[i], &t.values[i])?;
            if ip != Rat::one() {
                return Err(Error::Inconsistent(format!("row norm fails at {i}")));
            }
            let j = (i + step) % k;
            if j != i {
                let ip = inner_product(t, &t.values[i], &t.values[j])?;
                if ip != Rat::zero() {
                    return Err(Error::Inconsistent(format!(
                        "row orthogonality fails at ({i},{j})"
                    )));
                }
            }
            i += step;
        }
    }
    Ok(())
}

// ---- abelian groups ----

pub(crate) struct AbelianChars {
    pub basis: Vec<(usize, u64)>,
    /// coordinates of every element in the basis (indexed by ambient index)
    pub coords: Vec<Vec<u64>>,
    pub exponent: u64,
}

impl AbelianChars {
    /// Exponent of the character `tuple` at element x, modulo the exponent.
    pub fn chi_exp(&self, tuple: &[u64], x: usize) -> u64 {
        let c = &self.coords[x];
        let mut expo = 0u64;
        for (i, &(_, ord)) in self.basis.iter().enumerate() {
            expo = (expo + tuple[i] * c[i] % ord * (self.exponent / ord)) % self.exponent;
        }
        expo
    }

    pub fn all_tuples(&self) -> Vec<Vec<u64>> {
        let mut tuples = vec![vec![0u64; self.basis.len()]];
        for (i, &(_, ord)) in self.basis.iter().enumerate() {
            let cur = tuples.clone();
            tuples = Vec::new();
            for t in cur {
                for v in 0..ord {
                    let mut t2 = t.clone();
                    t2[i] = v;
                    tuples.push(t2);
                }
            }
        }
        tuples
    }
}

pub(crate) fn abelian_coordinates(g: &dyn GroupOps, elements: &[usize]) -> Result<AbelianChars> {
    let basis = abelian_basis(g, elements)?;
    let mut coords_map: Vec<Option<Vec<u64>>> = vec![None; g.size()];
    coords_map[g.identity()] = Some(vec![0u64; basis.len()]);
    let mut frontier = vec![g.identity()];
    for (i, &(b, ord)) in basis.iter().enumerate() {
        let mut next = frontier.clone();
        for &e in &frontier {
            let mut acc = e;
            for k in 1..ord {
                acc = g.mul(acc, b);
                let mut c = coords_map[e].clone().unwrap();
                c[i] = k;
                coords_map[acc] = Some(c);
                next.push(acc);
            }
        }
        frontier = next;
    }
    let mut coords = vec![Vec::new(); g.size()];
    for &e in elements {
        coords[e] = coords_map[e]
            .clone()
            .ok_or_else(|| Error::Inconsistent("abelian coordinates incomplete".into()))?;
    }
    let exponent = basis.iter().fold(1u64, |acc, &(_, o)| acc.lcm(&o));
    Ok(AbelianChars {
        basis,
        coords,
        exponent: exponent.max(1),
    })
}

fn abelian_table(g: &dyn GroupOps, classes: Classes) -> Result<CharTable> {
    let all: Vec<usize> = (0..g.size()).collect();
    let ac = abelian_coordinates(g, &all)?;
    let powers = root_powers(ac.exponent as u32);
    let mut values = Vec::new();
    for t in ac.all_tuples() {
        let row: Vec<CycNum> = classes
            .reps
            .iter()
            .map(|&r| powers[ac.chi_exp(&t, r) as usize].clone())
            .collect();
        values.push(row);
    }
    let dims = vec![1; values.len()];
    Ok(CharTable {
        order: g.size() as u64,
        classes,
        dims,
        values,
    })
}

// ---- abelian subgroup of index two ----

fn index_two_table(g: &dyn GroupOps, classes: Classes, h: &[usize]) -> Result<CharTable> {
    let n = g.size();
    if h.len() * 2 != n {
        return Err(Error::invalid("subgroup is not of index two"));
    }
    let ac = abelian_coordinates(g, h)?;
    let e_h = ac.exponent as u32;
    let mut in_h = vec![false; n];
    for &x in h {
        in_h[x] = true;
    }
    let t = (0..n).find(|&x| !in_h[x]).expect("index two");
    let t_inv = g.inv(t);
    let t_sq = g.mul(t, t);
    let powers = root_powers(e_h);
    let powers2 = root_powers(2 * e_h);
    let conj_tuple = |tuple: &[u64]| -> Vec<u64> {
        ac.basis
            .iter()
            .map(|&(b, ord)| {
                let bc = g.mul(g.mul(t_inv, b), t);
                let v = ac.chi_exp(tuple, bc);
                debug_assert_eq!(v % (ac.exponent / ord), 0);
                v / (ac.exponent / ord)
            })
            .collect()
    };
    let mut dims = Vec::new();
    let mut values: Vec<Vec<CycNum>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for tup in ac.all_tuples() {
        if seen.contains(&tup) {
            continue;
        }
        let conj = conj_tuple(&tup);
        if conj == tup {
            // psi extends in two ways; lambda(t)^2 = psi(t^2)
            seen.insert(tup.clone());
            let w = ac.chi_exp(&tup, t_sq);
            for sign in 0..2u32 {
                let mu = powers2[w as usize]
                    .mul(&CycNum::from_int(if sign == 0 { 1 } else { -1 }));
                let row: Vec<CycNum> = classes
                    .reps
                    .iter()
                    .map(|&r| {
                        if in_h[r] {
                            powers[ac.chi_exp(&tup, r) as usize].clone()
                        } else {
                            let hpart = g.mul(t_inv, r);
                            mu.mul(&powers[ac.chi_exp(&tup, hpart) as usize])
                        }
                    })
                    .collect();
                dims.push(1);
                values.push(row);
            }
        } else {
            seen.insert(tup.clone());
            seen.insert(conj.clone());
            let row: Vec<CycNum> = classes
                .reps
                .iter()
                .map(|&r| {
                    if in_h[r] {
                        powers[ac.chi_exp(&tup, r) as usize]
                            .add(&powers[ac.chi_exp(&conj, r) as usize])
                    } else {
                        CycNum::zero()
                    }
                })
                .collect();
            dims.push(2);
            values.push(row);
        }
    }
    Ok(CharTable {
        order: n as u64,
        classes,
        dims,
        values,
    })
}

/// Probe hook: exponent of the abelian coordinate system of a subgroup.
pub fn abelian_coordinates_pub(g: &dyn GroupOps, elements: &[usize]) -> Result<u64> {
    Ok(abelian_coordinates(g, elements)?.exponent)
}

/// Cached powers 1, zeta, ..., zeta^(n-1) of the distinguished n-th root.
fn root_powers(n: u32) -> Vec<CycNum> {
    let zeta = CycNum::root(n).expect("positive order");
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = CycNum::one();
    for _ in 0..n {
        out.push(cur.clone());
        cur = cur.mul(&zeta);
    }
    out
}

// ---- class-matrix eigenvector method with exact lift ----

fn dixon_table(g: &dyn GroupOps, classes: Classes) -> Result<CharTable> {
    let n = g.size() as u64;
    let k = classes.count();
    let exponent = classes
        .rep_orders
        .iter()
        .fold(1u64, |acc, &o| acc.lcm(&o));
    let isqrt = (n as f64).sqrt() as u64 + 1;
    let p = fp::find_prime(exponent, (2 * isqrt).max(2 * exponent).max(100));
    let f = Fp::new(p);
    let mut class_elems: Vec<Vec<usize>> = vec![Vec::new(); k];
    for x in 0..g.size() {
        class_elems[classes.class_of[x] as usize].push(x);
    }
    let power_class: Vec<Vec<usize>> = (0..k)
        .map(|l| {
            let rep = classes.reps[l];
            let ord = classes.rep_orders[l] as usize;
            let mut v = Vec::with_capacity(ord);
            let mut cur = g.identity();
            for _ in 0..ord {
                v.push(classes.class_of[cur] as usize);
                cur = g.mul(cur, rep);
            }
            v
        })
        .collect();
    // split the class-function space into simultaneous eigenspaces
    let mut subspaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut e = vec![0u64; k];
            e[i] = 1;
            e
        })
        .collect()];
    for ci in 1..k {
        if subspaces.iter().all(|s| s.len() == 1) {
            break;
        }
        // class matrix M[j][l] = #{ x in C_ci : x^-1 z_l in C_j }
        let mut m = MatFp::zero(k, k);
        for &x in &class_elems[ci] {
            let xi = g.inv(x);
            for l in 0..k {
                let y = g.mul(xi, classes.reps[l]);
                let j = classes.class_of[y] as usize;
                let v = f.add(m.at(j, l), 1);
                m.set(j, l, v);
            }
        }
        let mut next = Vec::new();
        for basis in subspaces.into_iter() {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            next.extend(split_subspace(&f, &m, basis));
        }
        subspaces = next;
    }
    if subspaces.len() != k || subspaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Inconsistent(
            "class matrices failed to split the class functions".into(),
        ));
    }
    // normalise omega vectors: entry at the identity class (index 0) is 1
    let mut omegas: Vec<Vec<u64>> = Vec::with_capacity(k);
    for s in subspaces {
        let v = &s[0];
        if v[0] == 0 {
            return Err(Error::Inconsistent(
                "omega vector vanishes at identity".into(),
            ));
        }
        let inv = f.inv(v[0]);
        omegas.push(v.iter().map(|&x| f.mul(x, inv)).collect());
    }
    // dimensions
    let n_mod = n % p;
    let mut dims = Vec::with_capacity(k);
    for w in &omegas {
        let mut s = 0u64;
        for l in 0..k {
            let li = classes.inverse_class[l] as usize;
            let t = f.mul(w[l], w[li]);
            s = f.add(s, f.mul(t, f.inv(classes.sizes[l] % p)));
        }
        let d2 = f.mul(n_mod, f.inv(s));
        let d = (1..=2 * isqrt)
            .find(|&d| f.mul(d % p, d % p) == d2)
            .ok_or_else(|| Error::Inconsistent("character dimension not found".into()))?;
        dims.push(d);
    }
    // character values mod p, then exact lift through the power maps
    let omega_e = {
        let gen = f.primitive_root();
        f.pow(gen, (p - 1) / exponent)
    };
    let mut values = Vec::with_capacity(k);
    for (w, &d) in omegas.iter().zip(dims.iter()) {
        let chi_p: Vec<u64> = (0..k)
            .map(|l| f.mul(f.mul(d % p, w[l]), f.inv(classes.sizes[l] % p)))
            .collect();
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let ord = classes.rep_orders[l];
            let zd = f.pow(omega_e, exponent / ord);
            let zd_inv = f.inv(zd);
            let ord_inv = f.inv(ord % p);
            let mut val = CycNum::zero();
            for t in 0..ord {
                let mut s = 0u64;
                for j in 0..ord {
                    let c = chi_p[power_class[l][j as usize]];
                    s = f.add(s, f.mul(c, f.pow(zd_inv, j * t % exponent)));
                }
                let a = f.mul(s, ord_inv);
                let signed = if a > p / 2 {
                    a as i64 - p as i64
                } else {
                    a as i64
                };
                if signed != 0 {
                    val = val.add(
                        &CycNum::root_pow(ord as u32, t as i64)
                            .scale(&Rat::from_integer(signed.into())),
                    );
                }
            }
            row.push(val);
        }
        values.push(row);
    }
    Ok(CharTable {
        order: n,
        classes,
        dims,
        values,
    })
}

/// Split a subspace into eigenspaces of the class matrix m.
fn split_subspace(f: &Fp, m: &MatFp, basis: Vec<Vec<u64>>) -> Vec<Vec<Vec<u64>>> {
    let d = basis.len();
    let k = basis[0].len();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|j| {
                    let mut s = 0u64;
                    for l in 0..k {
                        let mv = m.at(j, l);
                        if mv != 0 && b[l] != 0 {
                            s = f.add(s, f.mul(mv, b[l]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    // express images in the basis: rref of [basis columns | image columns]
    let mut aug: Vec<Vec<u64>> = (0..k)
        .map(|row| {
            let mut v = Vec::with_capacity(2 * d);
            for b in &basis {
                v.push(b[row]);
            }
            for im in &images {
                v.push(im[row]);
            }
            v
        })
        .collect();
    let pivots = fp::rref(f, &mut aug);
    let mut r = MatFp::zero(d, d);
    for (row, &pc) in pivots.iter().enumerate() {
        if pc < d {
            for j in 0..d {
                r.set(pc, j, aug[row][d + j]);
            }
        }
    }
    let cp = fp::charpoly(f, &r);
    let roots = fp::roots_of_split_poly(f, &cp);
    if roots.len() <= 1 {
        return vec![basis];
    }
    let mut out = Vec::new();
    for lambda in roots {
        let es = fp::eigenspace(f, &r, lambda);
        if es.is_empty() {
            continue;
        }
        let sub: Vec<Vec<u64>> = es
            .iter()
            .map(|coef| {
                (0..k)
                    .map(|c| {
                        let mut s = 0u64;
                        for (i, b) in basis.iter().enumerate() {
                            if coef[i] != 0 && b[c] != 0 {
                                s = f.add(s, f.mul(coef[i], b[c]));
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        out.push(sub);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::{GroupDescriptor, Sl2Type};
    use crate::matgroups::{build_group, build_sl2_subgroup};

    fn table_of(desc: &str) -> CharTable {
        let g = build_group(&GroupDescriptor::parse(desc).unwrap()).unwrap();
        character_table_mat(&g).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = build_group(&GroupDescriptor::parse("SL2:A0").unwrap()).unwrap();
        let t = character_table_mat(&g).unwrap();
        assert_eq!(t.num_chars(), 1);
        assert!(t.values[0][0].is_one());
    }

    #[test]
    fn d4_dims() {
        let g = build_sl2_subgroup(Sl2Type::D(4)).unwrap();
        let t = character_table_mat(&g).unwrap();
        let mut dims = t.dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn e8_dims() {
        let g = build_sl2_subgroup(Sl2Type::E8).unwrap();
        let t = character_table_mat(&g).unwrap();
        let mut dims = t.dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
        let sq: u64 = t.dims.iter().map(|d| d * d).sum();
        assert_eq!(sq, 120);
    }

    #[test]
    fn e7_dixon_dims() {
        let g = build_sl2_subgroup(Sl2Type::E7).unwrap();
        let t = character_table_mat(&g).unwrap();
        let mut dims = t.dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn column_orthogonality_small() {
        let t = table_of("Cox(4,2;D4,A3)");
        let k = t.num_chars();
        for l in 0..k {
            for l2 in 0..k {
                let mut acc = CycNum::zero();
                for chi in 0..k {
                    acc = acc.add(&t.values[chi][l].mul(&t.values[chi][l2].conj()));
                }
                if l == l2 {
                    let central = t.order / t.classes.sizes[l];
                    assert_eq!(acc, CycNum::from_int(central as i64));
                } else {
                    assert!(acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn standard_char_decomposes() {
        // V tensor V contains the trivial exactly once for SL2 groups
        let g = build_sl2_subgroup(Sl2Type::D(4)).unwrap();
        let t = character_table_mat(&g).unwrap();
        let v = standard_character(&g, &t.classes);
        let vv: Vec<CycNum> = v.iter().map(|x| x.mul(x)).collect();
        let triv: Vec<CycNum> = vec![CycNum::one(); t.classes.count()];
        assert_eq!(multiplicity(&t, &vv, &triv).unwrap(), 1);
        let mut total = 0;
        for chi in 0..t.num_chars() {
            let m = multiplicity(&t, &v, &t.values[chi]).unwrap();
            total += m * t.dims[chi];
        }
        assert_eq!(total, 2);
    }

    #[test]
    fn restriction_to_center() {
        // the 2-dim character of D4 restricted to {+-I} takes values (2, -2)
        let g = build_sl2_subgroup(Sl2Type::D(4)).unwrap();
        let t = character_table_mat(&g).unwrap();
        let two_dim = (0..t.num_chars()).find(|&i| t.dims[i] == 2).unwrap();
        let minus = g
            .index_of(&crate::mat2::Mat2::scalar(&CycNum::from_int(-1)))
            .unwrap();
        let vals = restrict(&t, two_dim, &[0, minus]);
        assert_eq!(vals[0], CycNum::from_int(2));
        assert_eq!(vals[1], CycNum::from_int(-2));
        assert!(!is_trivial_on(&t, two_dim, &[0, minus]));
        assert!(is_trivial_on(&t, t.trivial_index(), &[0, minus]));
    }

    #[test]
    fn trivial_restriction_edge_cases() {
        let g = build_sl2_subgroup(Sl2Type::D(5)).unwrap();
        let t = character_table_mat(&g).unwrap();
        for chi in 0..t.num_chars() {
            let vals = restrict(&t, chi, &[0]);
            assert_eq!(vals[0], CycNum::from_int(t.dims[chi] as i64));
            assert!(is_trivial_on(&t, chi, &[0]));
        }
    }

    #[test]
    fn imprimitive_fast_path_matches_dixon() {
        let g = build_group(&GroupDescriptor::parse("G(6,2,2)").unwrap()).unwrap();
        let fast = character_table(&g, g.abelian_index2()).unwrap();
        let slow = character_table(&g, None).unwrap();
        assert_eq!(fast.dims, slow.dims);
        for i in 0..fast.num_chars() {
            assert_eq!(fast.values[i], slow.values[i], "row {i} differs");
        }
    }

    #[test]
    fn regular_character_contains_trivial_once() {
        let t = table_of("G(4,2,2)");
        let reg: Vec<CycNum> = (0..t.classes.count())
            .map(|l| {
                if l == 0 {
                    CycNum::from_int(t.order as i64)
                } else {
                    CycNum::zero()
                }
            })
            .collect();
        let triv: Vec<CycNum> = vec![CycNum::one(); t.classes.count()];
        assert_eq!(multiplicity(&t, &reg, &triv).unwrap(), 1);
    }
}
