//! Finite directed multigraphs with dimension-labelled vertices, the
//! translation-quiver presentations `(Z x Delta_H)^ev` and their quotients by
//! an automorphism, isomorphism testing via canonical forms, and DOT/JSON
//! output.

use serde::Serialize;

use crate::chartab::{self, CharTable};
use crate::cyclotomic::CycNum;
use crate::descriptor::Sl2Type;
use crate::mat2::Mat2;
use crate::matgroups::{self, MatGroup};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Vertex {
    pub id: String,
    pub dim: u64,
}

/// A finite quiver: labelled vertices and an arrow multiplicity matrix.
#[derive(Clone, Debug)]
pub struct Quiver {
    pub vertices: Vec<Vertex>,
    /// arrows[i][j] = number of arrows i -> j
    pub arrows: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn new(vertices: Vec<Vertex>, arrows: Vec<Vec<u32>>) -> Self {
        assert_eq!(vertices.len(), arrows.len());
        for row in &arrows {
            assert_eq!(row.len(), vertices.len());
        }
        Quiver { vertices, arrows }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arrow_count(&self) -> u64 {
        self.arrows
            .iter()
            .flat_map(|r| r.iter())
            .map(|&m| m as u64)
            .sum()
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let n = self.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && (self.arrows[v][w] > 0 || self.arrows[w][v] > 0) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Full subquiver on the kept vertices (in the given order).
    pub fn subquiver(&self, keep: &[usize]) -> Quiver {
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let arrows = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.arrows[i][j]).collect())
            .collect();
        Quiver { vertices, arrows }
    }

    /// Deterministic DOT rendering; multiplicities above one become edge
    /// labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{} [label=\"{}:{}\"];\n", i, v.id, v.dim));
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                let m = self.arrows[i][j];
                if m == 1 {
                    s.push_str(&format!("  v{i} -> v{j};\n"));
                } else if m > 1 {
                    s.push_str(&format!("  v{i} -> v{j} [label=\"{m}\"];\n"));
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "vertices": self.vertices.iter().enumerate().map(|(i, v)| serde_json::json!({
                "id": i, "label": v.id, "dim": v.dim,
            })).collect::<Vec<_>>(),
            "arrows": (0..self.len()).flat_map(|i| {
                let row = &self.arrows[i];
                (0..self.len()).filter_map(move |j| {
                    if row[j] > 0 { Some(serde_json::json!([i, j, row[j]])) } else { None }
                })
            }).collect::<Vec<_>>(),
        })
    }

    fn dim_classes(&self, scaled: bool) -> Vec<u64> {
        let mut dims: Vec<u64> = self.vertices.iter().map(|v| v.dim).collect();
        if scaled {
            let g = dims.iter().fold(0u64, |a, &b| {
                num_integer::Integer::gcd(&a, &b)
            });
            if g > 1 {
                for d in dims.iter_mut() {
                    *d /= g;
                }
            }
        }
        dims
    }
}

/// Quiver isomorphism preserving dimension labels and arrow multiplicities.
pub fn is_isomorphic(q1: &Quiver, q2: &Quiver) -> bool {
    iso_impl(q1, q2, false)
}

/// Isomorphism with dimension labels compared up to a global scale factor
/// (used when one side carries induced dimensions).
pub fn is_isomorphic_scaled(q1: &Quiver, q2: &Quiver) -> bool {
    iso_impl(q1, q2, true)
}

fn iso_impl(q1: &Quiver, q2: &Quiver, scaled: bool) -> bool {
    if q1.len() != q2.len() || q1.arrow_count() != q2.arrow_count() {
        return false;
    }
    canonical_form(q1, scaled) == canonical_form(q2, scaled)
}

/// Canonical form by individualisation-refinement: repeatedly refine the
/// vertex colouring by (dim label, multiset of coloured in/out arrow
/// multiplicities), then split the first non-singleton cell on each choice of
/// distinguished vertex, keeping the lexicographically smallest encoding.
pub fn canonical_form(q: &Quiver, scaled: bool) -> Vec<u8> {
    let n = q.len();
    if n == 0 {
        return vec![];
    }
    let dims = q.dim_classes(scaled);
    let initial: Vec<u64> = {
        let mut ds: Vec<u64> = dims.clone();
        ds.sort_unstable();
        ds.dedup();
        dims.iter()
            .map(|d| ds.binary_search(d).unwrap() as u64)
            .collect()
    };
    let mut best: Option<Vec<u8>> = None;
    canon_search(q, &dims, initial, &mut best, 0);
    best.expect("canonical search yields a form")
}

fn refine(q: &Quiver, colour: &mut Vec<u64>) {
    let n = q.len();
    loop {
        let mut sig: Vec<(u64, Vec<(u64, u32, u32)>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<(u64, u32, u32)> = (0..n)
                .filter(|&w| q.arrows[v][w] > 0 || q.arrows[w][v] > 0)
                .map(|w| (colour[w], q.arrows[v][w], q.arrows[w][v]))
                .collect();
            nb.sort_unstable();
            sig.push((colour[v], nb));
        }
        let mut uniq: Vec<&(u64, Vec<(u64, u32, u32)>)> = sig.iter().collect();
        uniq.sort();
        uniq.dedup();
        let new_colour: Vec<u64> = sig
            .iter()
            .map(|s| uniq.binary_search(&s).unwrap() as u64)
            .collect();
        if new_colour == *colour {
            return;
        }
        *colour = new_colour;
    }
}

fn canon_search(q: &Quiver, dims: &[u64], mut colour: Vec<u64>, best: &mut Option<Vec<u8>>, depth: usize) {
    let n = q.len();
    refine(q, &mut colour);
    // find the first non-singleton cell (by colour value)
    let mut cell: Option<u64> = None;
    for c in 0..n as u64 {
        let count = colour.iter().filter(|&&x| x == c).count();
        if count > 1 {
            cell = Some(c);
            break;
        }
        if count == 0 {
            break;
        }
    }
    match cell {
        None => {
            // discrete colouring: emit encoding in colour order
            let mut perm: Vec<usize> = (0..n).collect();
            perm.sort_by_key(|&v| colour[v]);
            let mut enc = Vec::with_capacity(n * (2 * n + 8));
            for &v in &perm {
                enc.extend_from_slice(&dims[v].to_le_bytes());
                for &w in &perm {
                    enc.push(q.arrows[v][w].min(255) as u8);
                    enc.push(q.arrows[w][v].min(255) as u8);
                }
            }
            if best.as_ref().map_or(true, |b| enc < *b) {
                *best = Some(enc);
            }
        }
        Some(c) => {
            if depth > 24 {
                // quivers in this crate are small; bail out rather than loop
                panic!("canonical labelling recursion too deep");
            }
            let members: Vec<usize> = (0..n).filter(|&v| colour[v] == c).collect();
            for v in members {
                let mut next = colour.clone();
                // individualise v: give it a fresh colour just below its cell
                for x in next.iter_mut() {
                    if *x >= c {
                        *x += 1;
                    }
                }
                next[v] = c;
                canon_search(q, dims, next, best, depth + 1);
            }
        }
    }
}

/// The McKay quiver data of a subgroup of SL2: doubled extended Dynkin
/// diagram with an even/odd vertex parity when -I lies in the group.
pub struct DeltaH {
    pub group: MatGroup,
    pub table: CharTable,
    pub quiver: Quiver,
    /// parity[i] = true when -I acts trivially on character i (even vertex)
    pub parity: Option<Vec<bool>>,
}

impl DeltaH {
    pub fn vertex_count(&self) -> usize {
        self.quiver.len()
    }
}

/// McKay quiver of a matrix group with respect to its 2-dimensional
/// inclusion representation.
pub fn mckay_quiver_of_table(g: &MatGroup, t: &CharTable) -> Result<Quiver> {
    let v = chartab::standard_character(g, &t.classes);
    let k = t.num_chars();
    let mut arrows = vec![vec![0u32; k]; k];
    for a in 0..k {
        let prod: Vec<CycNum> = t.values[a]
            .iter()
            .zip(v.iter())
            .map(|(x, y)| x.mul(y))
            .collect();
        for b in 0..k {
            let m = chartab::multiplicity(t, &prod, &t.values[b])?;
            arrows[a][b] = m as u32;
        }
    }
    let vertices = (0..k)
        .map(|i| Vertex {
            id: format!("x{i}"),
            dim: t.dims[i],
        })
        .collect();
    Ok(Quiver::new(vertices, arrows))
}

/// Build Delta_H for a subgroup of SL2.
pub fn build_delta_h(t: Sl2Type) -> Result<DeltaH> {
    let group = matgroups::build_sl2_subgroup(t)?;
    delta_h_of_group(group)
}

/// Build Delta_H from an explicitly given SL2 subgroup.
pub fn delta_h_of_group(group: MatGroup) -> Result<DeltaH> {
    let table = chartab::character_table_mat(&group)?;
    let quiver = mckay_quiver_of_table(&group, &table)?;
    let minus = group.index_of(&Mat2::scalar(&CycNum::from_int(-1)));
    let parity = minus.map(|m| {
        (0..table.num_chars())
            .map(|chi| *table.value_at(chi, m) == CycNum::from_int(table.dims[chi] as i64))
            .collect()
    });
    Ok(DeltaH {
        group,
        table,
        quiver,
        parity,
    })
}

/// The vertex permutation induced by tensoring with a one-dimensional
/// character.
pub fn char_automorphism(d: &DeltaH, chi: usize) -> Result<Vec<usize>> {
    if d.table.dims[chi] != 1 {
        return Err(Error::invalid(
            "character automorphisms need a one-dimensional character",
        ));
    }
    let k = d.table.num_chars();
    let mut perm = vec![usize::MAX; k];
    for a in 0..k {
        let prod: Vec<CycNum> = d.table.values[a]
            .iter()
            .zip(d.table.values[chi].iter())
            .map(|(x, y)| x.mul(y))
            .collect();
        let b = (0..k)
            .find(|&b| d.table.values[b] == prod)
            .ok_or_else(|| Error::Inconsistent("character twist is not irreducible".into()))?;
        perm[a] = b;
    }
    Ok(perm)
}

/// The vertex permutation induced by conjugation with an overgroup element g:
/// the image of a character is chi(g . g^-1).
pub fn outer_automorphism(d: &DeltaH, conj: &Mat2) -> Result<Vec<usize>> {
    let h = &d.group;
    let gi = conj.inv()?;
    // conjugated class representatives
    let k = d.table.num_chars();
    let mapped: Vec<usize> = d
        .table
        .classes
        .reps
        .iter()
        .map(|&r| {
            let m = conj.mul(h.mat(r)).mul(&gi);
            h.index_of(&m)
                .ok_or_else(|| Error::invalid("conjugation does not normalise the subgroup"))
        })
        .collect::<Result<_>>()?;
    let mut perm = vec![usize::MAX; k];
    for a in 0..k {
        let twisted: Vec<CycNum> = mapped
            .iter()
            .map(|&x| d.table.value_at(a, x).clone())
            .collect();
        let b = (0..k)
            .find(|&b| d.table.values[b] == twisted)
            .ok_or_else(|| Error::Inconsistent("conjugation twist is not irreducible".into()))?;
        perm[a] = b;
    }
    Ok(perm)
}

/// Check that a permutation is a quiver automorphism of Delta_H.
pub fn is_quiver_automorphism(d: &DeltaH, perm: &[usize]) -> bool {
    let q = &d.quiver;
    let n = q.len();
    (0..n).all(|i| {
        q.vertices[i].dim == q.vertices[perm[i]].dim
            && (0..n).all(|j| q.arrows[i][j] == q.arrows[perm[i]][perm[j]])
    })
}

/// Source of a translation-quiver quotient: either Z x Delta_H or
/// (Z/N) x Delta_H, restricted to the even part when -I is present.
#[derive(Clone, Copy, Debug)]
pub enum ZSource {
    Z,
    ZMod(u32),
}

/// Quotient of the even part of (Z or Z/N) x Delta_H by the automorphism
/// [+shift] x rho. The group generated must act freely on vertices.
pub fn quotient(d: &DeltaH, source: ZSource, shift: u32, rho: &[usize]) -> Result<Quiver> {
    if shift == 0 {
        return Err(Error::invalid("shift must be positive for a finite quotient"));
    }
    if !is_quiver_automorphism(d, rho) {
        return Err(Error::invalid("rho is not a quiver automorphism of Delta_H"));
    }
    let k = d.table.num_chars();
    let even = |j: i64, lam: usize| -> bool {
        match &d.parity {
            None => true,
            Some(par) => (j.rem_euclid(2) == 0) == par[lam],
        }
    };
    // orbit representatives have j in 0..shift
    match source {
        ZSource::Z => {}
        ZSource::ZMod(n) => {
            if n == 0 || n % shift != 0 {
                return Err(Error::invalid("Z/N source needs shift | N"));
            }
            // freeness of the cyclic group generated by [+shift] x rho
            let times = n / shift;
            let mut rho_pow: Vec<usize> = (0..k).collect();
            for t in 1..=times {
                rho_pow = rho_pow.iter().map(|&x| rho[x]).collect();
                let jshift = (t * shift) % n;
                if jshift == 0 && t != times {
                    // intermediate power fixes the Z-coordinate: need rho^t free
                    if (0..k).any(|x| rho_pow[x] == x) {
                        return Err(Error::invalid(
                            "automorphism does not act freely on the quotient source",
                        ));
                    }
                }
            }
            if rho_pow.iter().enumerate().any(|(i, &x)| x != i) {
                return Err(Error::invalid(
                    "automorphism order does not divide N/shift: action is not free",
                ));
            }
        }
    }
    let rho_inv = {
        let mut inv = vec![0usize; k];
        for (i, &x) in rho.iter().enumerate() {
            inv[x] = i;
        }
        inv
    };
    let mut ids = Vec::new();
    let mut lookup = std::collections::HashMap::new();
    for j in 0..shift {
        for lam in 0..k {
            if even(j as i64, lam) {
                lookup.insert((j, lam), ids.len());
                ids.push((j, lam));
            }
        }
    }
    let n = ids.len();
    let mut arrows = vec![vec![0u32; n]; n];
    for (idx, &(j, lam)) in ids.iter().enumerate() {
        for mu in 0..k {
            let mult = d.quiver.arrows[lam][mu];
            if mult == 0 {
                continue;
            }
            // arrow (j, lam) -> (j + 1, mu); wrap via rho^{-1} at j = shift-1
            let (tj, tmu) = if j + 1 < shift {
                (j + 1, mu)
            } else {
                (0, rho_inv[mu])
            };
            let tidx = *lookup
                .get(&(tj, tmu))
                .ok_or_else(|| Error::Inconsistent("arrow leaves the even part".into()))?;
            arrows[idx][tidx] += mult;
        }
    }
    let vertices = ids
        .iter()
        .map(|&(j, lam)| Vertex {
            id: format!("{}j{}", d.quiver.vertices[lam].id, j),
            dim: d.quiver.vertices[lam].dim,
        })
        .collect();
    Ok(Quiver::new(vertices, arrows))
}

/// Hard-coded doubled extended Dynkin diagrams, the expected McKay quivers of
/// the finite subgroups of SL2.
pub fn doubled_extended_dynkin(t: Sl2Type) -> Quiver {
    let (dims, edges): (Vec<u64>, Vec<(usize, usize)>) = match t {
        Sl2Type::A(0) => (vec![1], vec![(0, 0)]),
        Sl2Type::A(1) => {
            // two vertices, double arrows in both directions
            let vertices = vec![
                Vertex { id: "a0".into(), dim: 1 },
                Vertex { id: "a1".into(), dim: 1 },
            ];
            let arrows = vec![vec![0, 2], vec![2, 0]];
            return Quiver::new(vertices, arrows);
        }
        Sl2Type::A(k) => {
            let n = (k + 1) as usize;
            let dims = vec![1u64; n];
            let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
            (dims, edges)
        }
        Sl2Type::D(k) => {
            // chain of (k-3) twos with two ones at each end
            let n = (k - 2) as usize; // order 4n
            let chain = n - 1;
            let mut dims = vec![1u64, 1];
            dims.extend(std::iter::repeat(2).take(chain));
            dims.extend([1, 1]);
            let mut edges = vec![(0, 2), (1, 2)];
            for i in 0..chain.saturating_sub(1) {
                edges.push((2 + i, 3 + i));
            }
            let last = 1 + chain;
            edges.push((last, last + 1));
            edges.push((last, last + 2));
            (dims, edges)
        }
        Sl2Type::E6 => (
            vec![3, 2, 2, 2, 1, 1, 1],
            vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)],
        ),
        Sl2Type::E7 => (
            vec![1, 2, 3, 4, 3, 2, 1, 2],
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)],
        ),
        Sl2Type::E8 => (
            vec![1, 2, 3, 4, 5, 6, 4, 2, 3],
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (5, 8),
            ],
        ),
    };
    let n = dims.len();
    let vertices = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| Vertex {
            id: format!("e{i}"),
            dim: d,
        })
        .collect();
    let mut arrows = vec![vec![0u32; n]; n];
    for (a, b) in edges {
        if a == b {
            arrows[a][b] += 2;
        } else {
            arrows[a][b] += 1;
            arrows[b][a] += 1;
        }
    }
    Quiver::new(vertices, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_loop_dot() {
        let q = Quiver::new(vec![], vec![]);
        assert_eq!(q.to_dot(), "digraph {\n}\n");
        let q1 = Quiver::new(
            vec![Vertex { id: "v".into(), dim: 1 }],
            vec![vec![1]],
        );
        let dot = q1.to_dot();
        assert!(dot.contains("v0 -> v0;"));
    }

    #[test]
    fn iso_reflexive_and_negative() {
        let a1 = doubled_extended_dynkin(Sl2Type::A(1));
        assert!(is_isomorphic(&a1, &a1));
        // 2-cycle vs 2 loops: degree sequences differ
        let two_cycle = Quiver::new(
            vec![
                Vertex { id: "a".into(), dim: 1 },
                Vertex { id: "b".into(), dim: 1 },
            ],
            vec![vec![0, 1], vec![1, 0]],
        );
        let two_loops = Quiver::new(
            vec![
                Vertex { id: "a".into(), dim: 1 },
                Vertex { id: "b".into(), dim: 1 },
            ],
            vec![vec![1, 0], vec![0, 1]],
        );
        assert!(!is_isomorphic(&two_cycle, &two_loops));
        let e8 = doubled_extended_dynkin(Sl2Type::E8);
        let d8 = doubled_extended_dynkin(Sl2Type::D(8));
        assert!(!is_isomorphic(&e8, &d8));
    }

    #[test]
    fn iso_under_relabelling() {
        let e6 = doubled_extended_dynkin(Sl2Type::E6);
        // permuted copy
        let perm = [3usize, 0, 5, 6, 2, 1, 4];
        let n = e6.len();
        let vertices: Vec<Vertex> = (0..n)
            .map(|i| Vertex {
                id: format!("p{i}"),
                dim: e6.vertices[perm[i]].dim,
            })
            .collect();
        let mut arrows = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                arrows[i][j] = e6.arrows[perm[i]][perm[j]];
            }
        }
        let shuffled = Quiver::new(vertices, arrows);
        assert!(is_isomorphic(&e6, &shuffled));
    }

    #[test]
    fn delta_h_vertex_degrees() {
        for t in [Sl2Type::A(1), Sl2Type::D(4), Sl2Type::E6] {
            let d = build_delta_h(t).unwrap();
            let q = &d.quiver;
            // in-degree = out-degree at every vertex, and neighbours weighted
            // by dims reproduce 2*dim
            for i in 0..q.len() {
                let outd: u32 = q.arrows[i].iter().sum();
                let ind: u32 = (0..q.len()).map(|j| q.arrows[j][i]).sum();
                assert_eq!(outd, ind);
                let weighted: u64 = (0..q.len())
                    .map(|j| q.arrows[i][j] as u64 * q.vertices[j].dim)
                    .sum();
                assert_eq!(weighted, 2 * q.vertices[i].dim);
            }
        }
    }

    #[test]
    fn delta_h_matches_expected_shapes() {
        for t in [
            Sl2Type::A(1),
            Sl2Type::A(2),
            Sl2Type::A(3),
            Sl2Type::D(4),
            Sl2Type::D(5),
            Sl2Type::E6,
            Sl2Type::E7,
            Sl2Type::E8,
        ] {
            let d = build_delta_h(t).unwrap();
            let expected = doubled_extended_dynkin(t);
            assert!(
                is_isomorphic(&d.quiver, &expected),
                "McKay quiver of {} does not match",
                t.render()
            );
        }
    }

    #[test]
    fn parity_is_bipartite() {
        for t in [Sl2Type::A(3), Sl2Type::D(5), Sl2Type::E7] {
            let d = build_delta_h(t).unwrap();
            let par = d.parity.as_ref().unwrap();
            for i in 0..d.quiver.len() {
                for j in 0..d.quiver.len() {
                    if d.quiver.arrows[i][j] > 0 {
                        assert_ne!(par[i], par[j], "arrow within a parity class");
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_of_a1_by_swap() {
        // Z x Delta(A1) even part, quotient by [+1] x swap: one vertex, two
        // loops
        let d = build_delta_h(Sl2Type::A(1)).unwrap();
        // swap = character automorphism by the sign character
        let sign = d
            .table
            .linear_chars()
            .into_iter()
            .find(|&c| c != d.table.trivial_index())
            .unwrap();
        let rho = char_automorphism(&d, sign).unwrap();
        let q = quotient(&d, ZSource::Z, 1, &rho).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.arrows[0][0], 2);
    }

    #[test]
    fn quotient_periodic_fold() {
        // quotient of Z x Delta by [+N] x id equals the even part of
        // (Z/N) x Delta
        let d = build_delta_h(Sl2Type::D(4)).unwrap();
        let id: Vec<usize> = (0..d.quiver.len()).collect();
        let q = quotient(&d, ZSource::Z, 4, &id).unwrap();
        assert_eq!(q.len(), 4 * d.quiver.len() / 2);
        // every vertex keeps in-degree = out-degree
        for i in 0..q.len() {
            let outd: u32 = q.arrows[i].iter().sum();
            let ind: u32 = (0..q.len()).map(|j| q.arrows[j][i]).sum();
            assert_eq!(outd, ind);
        }
    }

    #[test]
    fn char_automorphism_of_cycle() {
        // A3: a faithful character rotates the 4-cycle
        let d = build_delta_h(Sl2Type::A(3)).unwrap();
        let faithful = d
            .table
            .linear_chars()
            .into_iter()
            .find(|&c| {
                let m = crate::matgroups::element_order(&d.group, d.group.gens[0]);
                d.table.value_at(c, d.group.gens[0]).order_as_root() == Some(m as u32)
            })
            .unwrap();
        let rho = char_automorphism(&d, faithful).unwrap();
        // rho is a 4-cycle
        let mut x = 0usize;
        let mut steps = 0;
        loop {
            x = rho[x];
            steps += 1;
            if x == 0 {
                break;
            }
        }
        assert_eq!(steps, 4);
    }

    #[test]
    fn outer_automorphism_inverts_cycle() {
        // A3 inside D4: conjugation by tau inverts the rotation subgroup
        let d = build_delta_h(Sl2Type::A(3)).unwrap();
        let i4 = CycNum::root(4).unwrap();
        let tau = Mat2::anti_diag(i4.clone(), i4);
        let rho = outer_automorphism(&d, &tau).unwrap();
        // rho^2 = id and rho is not the identity
        assert!(rho.iter().enumerate().any(|(i, &x)| i != x));
        for i in 0..rho.len() {
            assert_eq!(rho[rho[i]], i);
        }
    }

    #[test]
    fn dot_of_doubled_a2() {
        let q = doubled_extended_dynkin(Sl2Type::A(2));
        assert_eq!(q.len(), 3);
        assert_eq!(q.arrow_count(), 6);
    }
}
