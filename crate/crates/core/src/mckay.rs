//! McKay quivers of pairs (G, eta): direct character-theoretic computation,
//! twisted quivers through explicit central extensions, the translation
//! quiver quotient formulas per classification family, and the partition of
//! the cover's McKay quiver into twisted components.

use crate::chartab::{self, CharTable};
use crate::cohomology::{
    cocycle_extension, h2_oracle, scholium_extension, standard_block_indices, CentralExtension,
};
use crate::cyclotomic::CycNum;
use crate::descriptor::{CoxeterFamily, GroupDescriptor, Sl2Type};
use crate::mat2::Mat2;
use crate::matgroups::{build_group, build_sl2_subgroup, GroupOps, MatGroup};
use crate::quiver::{
    self, delta_h_of_group, is_isomorphic_scaled, mckay_quiver_of_table, DeltaH, Quiver, Vertex,
    ZSource,
};
use crate::{Error, Result};

/// McKay quiver of a matrix group with respect to the inclusion
/// representation.
pub fn mckay_quiver(g: &MatGroup) -> Result<Quiver> {
    let t = chartab::character_table_mat(g)?;
    mckay_quiver_of_table(g, &t)
}

/// Twisted McKay quiver: the standard-central-character block of the
/// extension's McKay quiver with respect to the pulled-back two-dimensional
/// representation.
pub fn mckay_twisted(ext: &CentralExtension) -> Result<Quiver> {
    let hint = ext.group.abelian_index2.clone();
    let t = chartab::character_table(&ext.group, hint)?;
    twisted_from_table(ext, &t)
}

pub fn twisted_from_table(ext: &CentralExtension, t: &CharTable) -> Result<Quiver> {
    let block = standard_block_indices(t, ext.center_gen, ext.center_order);
    // completeness: the block carries the full regular multiplicity
    let total: u64 = block.iter().map(|&i| t.dims[i] * t.dims[i]).sum();
    if total != ext.base_order {
        return Err(Error::Inconsistent(format!(
            "twisted block dimension count {total} != base order {}",
            ext.base_order
        )));
    }
    let v_class: Vec<CycNum> = t
        .classes
        .reps
        .iter()
        .map(|&r| ext.v_trace[r].clone())
        .collect();
    let k = block.len();
    let mut arrows = vec![vec![0u32; k]; k];
    for (ai, &a) in block.iter().enumerate() {
        let prod: Vec<CycNum> = t.values[a]
            .iter()
            .zip(v_class.iter())
            .map(|(x, y)| x.mul(y))
            .collect();
        for (bi, &b) in block.iter().enumerate() {
            arrows[ai][bi] = chartab::multiplicity(t, &prod, &t.values[b])? as u32;
        }
    }
    let vertices = block
        .iter()
        .enumerate()
        .map(|(i, &b)| Vertex {
            id: format!("w{i}"),
            dim: t.dims[b],
        })
        .collect();
    Ok(Quiver::new(vertices, arrows))
}

/// A second-cohomology class in one of the families where the machinery has
/// an explicit representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaSpec {
    Trivial,
    /// split family (2m,2m;G1,G1): a character of G1 trivial on -I with
    /// chi^m = 1, referenced by its row in the character table of G1
    EasyChar { chi: usize },
    /// B family, m odd: the unique nontrivial class
    HardB,
    /// CD family, n even and m odd
    HardCdIv,
    /// CD family, n odd and m even
    HardCdV,
}

/// Enumerate the classes of H^2(G,k*) for a classification family, one
/// explicit recipe per class.
pub fn enumerate_classes(d: &GroupDescriptor) -> Result<Vec<EtaSpec>> {
    let fam = match d {
        GroupDescriptor::Coxeter { .. } => d.coxeter_family()?,
        GroupDescriptor::ShephardTodd(k) => GroupDescriptor::st_to_coxeter(*k)?.coxeter_family()?,
        _ => {
            return Err(Error::Unsupported(
                "class recipes exist for classification rows; use the oracle".into(),
            ))
        }
    };
    let mut out = vec![EtaSpec::Trivial];
    match fam {
        CoxeterFamily::D { m, n: _ }
        | CoxeterFamily::E6 { m }
        | CoxeterFamily::E7 { m }
        | CoxeterFamily::E8 { m } => {
            let (g1t, _) = split_family_types(&fam)?;
            let g1 = build_sl2_subgroup(g1t)?;
            let t = chartab::character_table_mat(&g1)?;
            let minus = g1
                .index_of(&Mat2::scalar(&CycNum::from_int(-1)))
                .expect("-I in SL2 subgroup");
            for chi in t.linear_chars() {
                if chi == t.trivial_index() {
                    continue;
                }
                if !t.value_at(chi, minus).is_one() {
                    continue;
                }
                let e = char_order(&t, chi)?;
                if m as u64 % e == 0 {
                    out.push(EtaSpec::EasyChar { chi });
                }
            }
        }
        CoxeterFamily::B { m, .. } => {
            if m % 2 == 1 {
                out.push(EtaSpec::HardB);
            }
        }
        CoxeterFamily::Cd { m, n } => {
            if n % 2 == 0 && m % 2 == 1 {
                out.push(EtaSpec::HardCdIv);
            } else if n % 2 == 1 && m % 2 == 0 {
                out.push(EtaSpec::HardCdV);
            }
        }
        CoxeterFamily::TypeA { .. } => {
            return Err(Error::Unsupported(
                "cyclic-over-cyclic classes come from the oracle".into(),
            ))
        }
        _ => {}
    }
    Ok(out)
}

fn split_family_types(fam: &CoxeterFamily) -> Result<(Sl2Type, u32)> {
    Ok(match fam {
        CoxeterFamily::D { m, n } => (Sl2Type::D(*n), *m),
        CoxeterFamily::E6 { m } => (Sl2Type::E6, *m),
        CoxeterFamily::E7 { m } => (Sl2Type::E7, *m),
        CoxeterFamily::E8 { m } => (Sl2Type::E8, *m),
        _ => return Err(Error::invalid("not a split family")),
    })
}

/// Multiplicative order of a linear character.
fn char_order(t: &CharTable, chi: usize) -> Result<u64> {
    let mut e = 1u64;
    for v in &t.values[chi] {
        let o = v
            .order_as_root()
            .ok_or_else(|| Error::Inconsistent("linear character value not a root".into()))?;
        e = num_integer::Integer::lcm(&e, &(o as u64));
    }
    Ok(e)
}

/// Exponent table of a linear character relative to zeta_e.
fn char_exponents(t: &CharTable, chi: usize, e: u64, g: &MatGroup) -> Result<Vec<u64>> {
    let mut exps = Vec::with_capacity(g.size());
    let mut powers = Vec::with_capacity(e as usize);
    let mut cur = CycNum::one();
    let zeta = CycNum::root(e as u32)?;
    for _ in 0..e {
        powers.push(cur.clone());
        cur = cur.mul(&zeta);
    }
    for x in 0..g.size() {
        let v = t.value_at(chi, x);
        let t0 = powers
            .iter()
            .position(|p| p == v)
            .ok_or_else(|| Error::Inconsistent("character value is not in mu_e".into()))?;
        exps.push(t0 as u64);
    }
    Ok(exps)
}

/// The distinguished scalar matrix zeta_k * I.
fn scalar_root(k: u32) -> Result<Mat2> {
    Ok(Mat2::scalar(&CycNum::root(k)?))
}

/// Standard generators sigma, tau of our fixed binary dihedral D(k).
fn dihedral_gens(k: u32) -> Result<(Mat2, Mat2)> {
    let n = k - 2;
    let s = CycNum::root(2 * n)?;
    let i4 = CycNum::root(4)?;
    Ok((
        Mat2::diag(s.clone(), s.inv()?),
        Mat2::anti_diag(i4.clone(), i4),
    ))
}

/// Build the extension realizing a class directly (the diamond-lemma model).
pub fn twisted_extension(d: &GroupDescriptor, eta: &EtaSpec) -> Result<CentralExtension> {
    let fam = match d {
        GroupDescriptor::Coxeter { .. } => d.coxeter_family()?,
        GroupDescriptor::ShephardTodd(k) => GroupDescriptor::st_to_coxeter(*k)?.coxeter_family()?,
        _ => return Err(Error::Unsupported("twisted extensions need a family".into())),
    };
    match (eta, &fam) {
        (EtaSpec::Trivial, _) => Err(Error::invalid(
            "the trivial class needs no extension; use the plain McKay quiver",
        )),
        (EtaSpec::EasyChar { chi }, _) => {
            let (g1t, m) = split_family_types(&fam)?;
            let g1 = build_sl2_subgroup(g1t)?;
            let t = chartab::character_table_mat(&g1)?;
            let e = char_order(&t, *chi)?;
            let exps = char_exponents(&t, *chi, e, &g1)?;
            scholium_extension(&g1, &scalar_root(2 * m)?, m, exps, e as u32)
        }
        (EtaSpec::HardB, CoxeterFamily::B { m, n }) => {
            // H = mu_2m <sigma>, g = zeta_4m tau, chi(zeta_2m) = -1,
            // chi(sigma) = zeta_2n
            let (sigma, tau) = dihedral_gens(n + 2)?;
            let h = MatGroup::from_generators(
                vec![scalar_root(2 * m)?, sigma.clone()],
                None,
            )?;
            let e = 2 * n;
            let chi = prescribe_character(
                &h,
                &[(scalar_root(2 * m)?, *n as u64), (sigma, 1)],
                e as u64,
            )?;
            let g_lift = scalar_root(4 * m)?.mul(&tau);
            scholium_extension(&h, &g_lift, 2, chi, e)
        }
        (EtaSpec::HardCdIv, CoxeterFamily::Cd { m, n }) => {
            // H = mu_2m D_{n+1} inside D_{2n}; g = zeta_4m sigma tau;
            // chi = chi_1^m chi_2 with chi_2(sigma^2) = -1, chi_2(tau) = i
            let (sigma, tau) = dihedral_gens(2 * n)?;
            let sigma2 = sigma.mul(&sigma);
            let h = MatGroup::from_generators(
                vec![scalar_root(2 * m)?, sigma2.clone(), tau.clone()],
                None,
            )?;
            let chi = prescribe_character(
                &h,
                &[
                    (scalar_root(2 * m)?, 2),
                    (sigma2, 2),
                    (tau.clone(), 1),
                ],
                4,
            )?;
            let g_lift = scalar_root(4 * m)?.mul(&sigma).mul(&tau);
            scholium_extension(&h, &g_lift, 2, chi, 4)
        }
        (EtaSpec::HardCdV, CoxeterFamily::Cd { m, n }) => {
            // H = <zeta_4m sigma tau, sigma^2>; g = tau;
            // chi = chi_1^{m/2} chi_2: chi(w) = i, chi(sigma^2) = -1
            let (sigma, tau) = dihedral_gens(2 * n)?;
            let w = scalar_root(4 * m)?.mul(&sigma).mul(&tau);
            let sigma2 = sigma.mul(&sigma);
            let h = MatGroup::from_generators(vec![w.clone(), sigma2.clone()], None)?;
            let chi = prescribe_character(&h, &[(w, 1), (sigma2, 2)], 4)?;
            scholium_extension(&h, &tau, 2, chi, 4)
        }
        _ => Err(Error::invalid("class recipe does not match the family")),
    }
}

/// Extend prescribed generator exponents to a character of the whole group,
/// verifying consistency.
fn prescribe_character(h: &MatGroup, gens: &[(Mat2, u64)], e: u64) -> Result<Vec<u64>> {
    let mut exps = vec![u64::MAX; h.size()];
    exps[h.identity()] = 0;
    let gen_data: Vec<(usize, u64)> = gens
        .iter()
        .map(|(m, t)| {
            h.index_of(m)
                .map(|i| (i, *t))
                .ok_or_else(|| Error::invalid("prescribed generator outside the subgroup"))
        })
        .collect::<Result<_>>()?;
    let mut frontier = vec![h.identity()];
    while let Some(x) = frontier.pop() {
        for &(s, t) in &gen_data {
            let y = h.mul(s, x);
            let v = (exps[x] + t) % e;
            if exps[y] == u64::MAX {
                exps[y] = v;
                frontier.push(y);
            } else if exps[y] != v {
                return Err(Error::invalid(
                    "prescribed exponents are inconsistent on the subgroup",
                ));
            }
        }
    }
    if exps.iter().any(|&v| v == u64::MAX) {
        return Err(Error::invalid("prescribed generators do not span"));
    }
    // full homomorphism check
    for a in 0..h.size() {
        for b in 0..h.size() {
            if (exps[a] + exps[b]) % e != exps[h.mul(a, b)] {
                return Err(Error::Inconsistent(
                    "prescribed character is not a homomorphism".into(),
                ));
            }
        }
    }
    Ok(exps)
}

/// The quotient-formula side: (Z x Delta_H)^ev / <[+shift] x rho>, with the
/// shift, base diagram and automorphism selected per family and class. All
/// admissible readings of the automorphism are materialised and must agree
/// up to isomorphism; the first is returned.
pub fn quotient_formula(d: &GroupDescriptor, eta: &EtaSpec) -> Result<Quiver> {
    let fam = match d {
        GroupDescriptor::Coxeter { .. } => Some(d.coxeter_family()?),
        GroupDescriptor::ShephardTodd(k) => {
            Some(GroupDescriptor::st_to_coxeter(*k)?.coxeter_family()?)
        }
        _ => None,
    };
    match (eta, &fam) {
        (EtaSpec::Trivial, None) => match d {
            GroupDescriptor::Abelian { m, n, c } => Ok(abelian_torus_quiver(*m, *n, *c)),
            _ => Err(Error::Unsupported(
                "no quotient formula for this descriptor".into(),
            )),
        },
        (EtaSpec::Trivial, Some(fam)) => {
            // (Z x Delta_{G1})^ev / <[+a] x rho>, rho the character
            // automorphism of the coset character G1 -> mu_b
            let GroupDescriptor::Coxeter { z1, z2, .. } = normalize_cox(d)? else {
                unreachable!()
            };
            let (g1t, _) = crate::matgroups::family_types(fam);
            let g1 = build_sl2_subgroup(g1t)?;
            let b = z1 / z2;
            let (exps, _) = crate::matgroups::coset_character(&g1, fam, b)?;
            let delta = delta_h_of_group(g1)?;
            let candidates = linear_chars_with_exponents(&delta, &exps, b)?;
            let mut quivers = Vec::new();
            for chi in candidates {
                let rho = quiver::char_automorphism(&delta, chi)?;
                quivers.push(quiver::quotient(&delta, ZSource::Z, z2, &rho)?);
            }
            agree_and_first(quivers)
        }
        (EtaSpec::EasyChar { chi }, Some(fam)) => {
            let (g1t, m) = split_family_types(fam)?;
            let g1 = build_sl2_subgroup(g1t)?;
            let t = chartab::character_table_mat(&g1)?;
            let e = char_order(&t, *chi)?;
            // H = ker chi; rho = conjugation by g1 with chi(g1) = zeta_e and
            // g1^e = -I
            let ker: Vec<usize> = (0..g1.size())
                .filter(|&x| t.value_at(*chi, x).is_one())
                .collect();
            let hgrp = g1.subgroup_group(&ker)?;
            let delta = delta_h_of_group(hgrp)?;
            let minus = g1
                .index_of(&Mat2::scalar(&CycNum::from_int(-1)))
                .expect("-I present");
            let zeta_e = CycNum::root(e as u32)?;
            let mut cands: Vec<usize> = Vec::new();
            let mut fallback: Vec<usize> = Vec::new();
            for x in 0..g1.size() {
                if crate::matgroups::power(&g1, x, e as i64) != minus {
                    continue;
                }
                let v = t.value_at(*chi, x);
                if *v == zeta_e {
                    cands.push(x);
                } else if v.order_as_root() == Some(e as u32) {
                    fallback.push(x);
                }
            }
            if cands.is_empty() {
                cands = fallback;
            }
            let g1_elt = *cands
                .iter()
                .min_by_key(|&&x| g1.element_key(x))
                .ok_or_else(|| Error::Inconsistent("no suitable coset generator".into()))?;
            let shift = 2 * m as u64 / e;
            let rho_fwd = quiver::outer_automorphism(&delta, g1.mat(g1_elt))?;
            let rho_bwd = quiver::outer_automorphism(&delta, &g1.mat(g1_elt).inv()?)?;
            let quivers = vec![
                quiver::quotient(&delta, ZSource::Z, shift as u32, &rho_fwd)?,
                quiver::quotient(&delta, ZSource::Z, shift as u32, &rho_bwd)?,
            ];
            agree_and_first(quivers)
        }
        (EtaSpec::HardB, Some(CoxeterFamily::B { m, n })) => {
            // (Z x Delta_{A_{2n-1}})^ev / <[+m] x rho1 rho2>
            let a_sub = build_sl2_subgroup(Sl2Type::A(2 * n - 1))?;
            let delta = delta_h_of_group(a_sub)?;
            let (_, tau) = dihedral_gens(n + 2)?;
            let rho2 = quiver::outer_automorphism(&delta, &tau)?;
            // rho1: character automorphism of a faithful character
            let faithful = faithful_linear_chars(&delta)?;
            let mut quivers = Vec::new();
            for chi in faithful {
                let rho1 = quiver::char_automorphism(&delta, chi)?;
                for rho in [compose(&rho1, &rho2), compose(&rho2, &rho1)] {
                    quivers.push(quiver::quotient(&delta, ZSource::Z, *m, &rho)?);
                }
            }
            agree_and_first(quivers)
        }
        (EtaSpec::HardCdIv, Some(CoxeterFamily::Cd { m, n })) => {
            // (Z x Delta_{D_{n+1}})^ev / <[+m] x rho1 rho2>; rho1 from the
            // order-4 character with kernel the rotation subgroup
            let (sigma, _) = dihedral_gens(2 * n)?;
            let dsub = build_sl2_subgroup(Sl2Type::D(n + 1))?;
            let delta = delta_h_of_group(dsub)?;
            let rho2 = quiver::outer_automorphism(&delta, &sigma)?;
            let mut quivers = Vec::new();
            for chi in order_four_chars(&delta)? {
                let rho1 = quiver::char_automorphism(&delta, chi)?;
                for rho in [compose(&rho1, &rho2), compose(&rho2, &rho1)] {
                    quivers.push(quiver::quotient(&delta, ZSource::Z, *m, &rho)?);
                }
            }
            agree_and_first(quivers)
        }
        (EtaSpec::HardCdV, Some(CoxeterFamily::Cd { m, n })) => {
            // (Z x Delta_{D_{n+1}})^ev / <[+m] x rho1 rho2>; rho1 from a
            // quadratic character with dihedral kernel
            let (sigma, _) = dihedral_gens(2 * n)?;
            let dsub = build_sl2_subgroup(Sl2Type::D(n + 1))?;
            let delta = delta_h_of_group(dsub)?;
            let rho2 = quiver::outer_automorphism(&delta, &sigma)?;
            let mut quivers = Vec::new();
            for chi in dihedral_kernel_quadratic_chars(&delta)? {
                let rho1 = quiver::char_automorphism(&delta, chi)?;
                for rho in [compose(&rho1, &rho2), compose(&rho2, &rho1)] {
                    quivers.push(quiver::quotient(&delta, ZSource::Z, *m, &rho)?);
                }
            }
            agree_and_first(quivers)
        }
        _ => Err(Error::invalid("class recipe does not match the family")),
    }
}

fn normalize_cox(d: &GroupDescriptor) -> Result<GroupDescriptor> {
    match d {
        GroupDescriptor::Coxeter { .. } => Ok(d.clone()),
        GroupDescriptor::ShephardTodd(k) => GroupDescriptor::st_to_coxeter(*k),
        _ => Err(Error::invalid("not a Goursat datum")),
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // apply b first, then a
    b.iter().map(|&x| a[x]).collect()
}

fn agree_and_first(quivers: Vec<Quiver>) -> Result<Quiver> {
    let first = quivers
        .first()
        .ok_or_else(|| Error::Inconsistent("no admissible automorphism reading".into()))?;
    for q in quivers.iter().skip(1) {
        if !quiver::is_isomorphic(first, q) {
            return Err(Error::Inconsistent(
                "automorphism readings give non-isomorphic quotients".into(),
            ));
        }
    }
    Ok(quivers.into_iter().next().unwrap())
}

/// Linear characters of Delta_H's group whose exponent table matches the
/// coset character or its inverse.
fn linear_chars_with_exponents(d: &DeltaH, exps: &[u32], b: u32) -> Result<Vec<usize>> {
    let t = &d.table;
    let mut out = Vec::new();
    for chi in t.linear_chars() {
        let matches_fwd = (0..d.group.size())
            .all(|x| *t.value_at(chi, x) == CycNum::root_pow(b, exps[x] as i64));
        let matches_bwd = (0..d.group.size())
            .all(|x| *t.value_at(chi, x) == CycNum::root_pow(b, -(exps[x] as i64)));
        if matches_fwd || matches_bwd {
            out.push(chi);
        }
    }
    if out.is_empty() {
        return Err(Error::Inconsistent(
            "coset character not found among linear characters".into(),
        ));
    }
    Ok(out)
}

/// Faithful linear characters of a cyclic Delta_H group.
fn faithful_linear_chars(d: &DeltaH) -> Result<Vec<usize>> {
    let n = d.group.size() as u64;
    let t = &d.table;
    let out: Vec<usize> = t
        .linear_chars()
        .into_iter()
        .filter(|&chi| char_order(t, chi).map(|e| e == n).unwrap_or(false))
        .collect();
    if out.is_empty() {
        return Err(Error::Inconsistent("no faithful linear character".into()));
    }
    Ok(out)
}

/// Order-4 linear characters (kernel is the rotation subgroup of an even
/// binary dihedral).
fn order_four_chars(d: &DeltaH) -> Result<Vec<usize>> {
    let t = &d.table;
    let out: Vec<usize> = t
        .linear_chars()
        .into_iter()
        .filter(|&chi| char_order(t, chi).map(|e| e == 4).unwrap_or(false))
        .collect();
    if out.is_empty() {
        return Err(Error::Inconsistent("no order-four linear character".into()));
    }
    Ok(out)
}

/// Quadratic characters whose kernel is a binary dihedral (not cyclic)
/// subgroup of index two.
fn dihedral_kernel_quadratic_chars(d: &DeltaH) -> Result<Vec<usize>> {
    let t = &d.table;
    let g = &d.group;
    let mut out = Vec::new();
    for chi in t.linear_chars() {
        if char_order(t, chi)? != 2 {
            continue;
        }
        let ker: Vec<usize> = (0..g.size())
            .filter(|&x| t.value_at(chi, x).is_one())
            .collect();
        // dihedral kernel: contains a non-diagonal element
        if ker.iter().any(|&x| !g.mat(x).is_diagonal()) {
            out.push(chi);
        }
    }
    if out.is_empty() {
        return Err(Error::Inconsistent(
            "no quadratic character with dihedral kernel".into(),
        ));
    }
    Ok(out)
}

/// The quotient (Z + Z)/L presentation of the McKay quiver of the diagonal
/// group Ab(m, n, c).
pub fn abelian_torus_quiver(m: u32, n: u32, c: u32) -> Quiver {
    let (m, n, c) = (m as i64, n as i64, c as i64);
    let red = |i: i64, j: i64| -> (i64, i64) {
        let q = i.div_euclid(m);
        let i2 = i - q * m;
        let j2 = (j + q * c).rem_euclid(n);
        (i2, j2)
    };
    let idx = |i: i64, j: i64| -> usize {
        let (a, b) = red(i, j);
        (a * n + b) as usize
    };
    let total = (m * n) as usize;
    let mut arrows = vec![vec![0u32; total]; total];
    for i in 0..m {
        for j in 0..n {
            let from = idx(i, j);
            arrows[from][idx(i + 1, j)] += 1;
            arrows[from][idx(i, j + 1)] += 1;
        }
    }
    let vertices = (0..total)
        .map(|v| Vertex {
            id: format!("t{v}"),
            dim: 1,
        })
        .collect();
    Quiver::new(vertices, arrows)
}

/// Partition check: every class of H^2(G,k*) contributes a connected block
/// carrying the full regular multiplicity, and the blocks are indexed by the
/// classes.
pub struct PartitionReport {
    pub ok: bool,
    pub component_count: usize,
    pub vertex_counts: Vec<usize>,
    pub h2_order: u64,
}

pub fn verify_partition(g: &MatGroup) -> Result<PartitionReport> {
    let out = h2_oracle(g)?;
    let mut ok = true;
    let mut vertex_counts = Vec::new();
    for class in &out.classes {
        let quiver = if class.cocycle.is_zero() {
            mckay_quiver(g)?
        } else {
            let ext = cocycle_extension(g, &class.cocycle)?;
            mckay_twisted(&ext)?
        };
        vertex_counts.push(quiver.len());
        if quiver.is_empty() || !quiver.is_connected() {
            ok = false;
        }
    }
    Ok(PartitionReport {
        ok,
        component_count: out.classes.len(),
        vertex_counts,
        h2_order: out.h2.order(),
    })
}

/// Convenience: check direct twisted computation against the quotient
/// formula for one class.
pub fn twisted_matches_formula(d: &GroupDescriptor, eta: &EtaSpec) -> Result<bool> {
    let direct = match eta {
        EtaSpec::Trivial => mckay_quiver(&build_group(d)?)?,
        _ => mckay_twisted(&twisted_extension(d, eta)?)?,
    };
    let formula = quotient_formula(d, eta)?;
    Ok(is_isomorphic_scaled(&direct, &formula))
}

/// The number of irreducible characters of an extension with the standard
/// central character, without materialising arrows.
pub fn twisted_vertex_count(ext: &CentralExtension) -> Result<usize> {
    let hint = ext.group.abelian_index2.clone();
    let t = chartab::character_table(&ext.group, hint)?;
    Ok(standard_block_indices(&t, ext.center_gen, ext.center_order).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::doubled_extended_dynkin;

    #[test]
    fn trivial_group_quiver() {
        let g = build_group(&GroupDescriptor::parse("SL2:A0").unwrap()).unwrap();
        let q = mckay_quiver(&g).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.arrows[0][0], 2);
    }

    #[test]
    fn sl2_quivers_are_doubled_dynkin() {
        for t in [Sl2Type::A(2), Sl2Type::D(4), Sl2Type::E8] {
            let g = build_sl2_subgroup(t).unwrap();
            let q = mckay_quiver(&g).unwrap();
            assert!(quiver::is_isomorphic(&q, &doubled_extended_dynkin(t)));
        }
    }

    #[test]
    fn untwisted_formula_b_family() {
        for desc in ["Cox(4,2;D4,A3)", "Cox(8,4;D4,A3)", "Cox(4,2;D5,A5)"] {
            let d = GroupDescriptor::parse(desc).unwrap();
            assert!(
                twisted_matches_formula(&d, &EtaSpec::Trivial).unwrap(),
                "untwisted mismatch for {desc}"
            );
        }
    }

    #[test]
    fn untwisted_formula_across_rows() {
        for desc in [
            "Cox(8,4;A3,A1)",
            "Cox(2,2;D4,D4)",
            "Cox(4,2;D4,D3)",
            "Cox(4,1;D5,A2)",
            "Cox(2,2;E6,E6)",
            "Cox(6,2;E6,D4)",
        ] {
            let d = GroupDescriptor::parse(desc).unwrap();
            assert!(
                twisted_matches_formula(&d, &EtaSpec::Trivial).unwrap(),
                "untwisted mismatch for {desc}"
            );
        }
    }

    #[test]
    fn abelian_torus_matches_direct() {
        for (m, n, c) in [(2, 2, 0), (3, 2, 0), (4, 3, 2), (5, 1, 3)] {
            let d = GroupDescriptor::Abelian { m, n, c };
            let g = build_group(&d).unwrap();
            let direct = mckay_quiver(&g).unwrap();
            let torus = abelian_torus_quiver(m, n, c);
            assert!(
                quiver::is_isomorphic(&direct, &torus),
                "torus mismatch for Ab({m},{n},{c})"
            );
        }
    }

    #[test]
    fn twisted_klein_four() {
        // Ab(2,2,0) with the nontrivial class: one vertex with two loops
        let d = GroupDescriptor::parse("Ab(2,2,0)").unwrap();
        let g = build_group(&d).unwrap();
        let out = h2_oracle(&g).unwrap();
        let cl = out.classes.iter().find(|c| c.order == 2).unwrap();
        let ext = cocycle_extension(&g, &cl.cocycle).unwrap();
        let q = mckay_twisted(&ext).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.arrows[0][0], 2);
    }

    #[test]
    fn partition_of_klein_four() {
        let d = GroupDescriptor::parse("Ab(2,2,0)").unwrap();
        let g = build_group(&d).unwrap();
        let report = verify_partition(&g).unwrap();
        assert!(report.ok);
        assert_eq!(report.component_count, 2);
        let mut counts = report.vertex_counts.clone();
        counts.sort_unstable();
        assert_eq!(counts, vec![1, 4]);
    }

    #[test]
    fn partition_of_b11() {
        // |H^2| = 2 for the order-4 group (4,2;D3,A1)
        let d = GroupDescriptor::parse("Cox(4,2;D3,A1)").unwrap();
        let g = build_group(&d).unwrap();
        let report = verify_partition(&g).unwrap();
        assert!(report.ok);
        assert_eq!(report.component_count, 2);
    }

    #[test]
    fn twisted_b_family_small() {
        // B_2^1 = (4,2;D4,A3), m = 1 odd: nontrivial class
        let d = GroupDescriptor::parse("Cox(4,2;D4,A3)").unwrap();
        assert!(twisted_matches_formula(&d, &EtaSpec::HardB).unwrap());
    }

    #[test]
    fn twisted_easy_family_small() {
        // (4,4;D4,D4): characters of D4 trivial on -I with chi^2 = 1
        let d = GroupDescriptor::parse("Cox(4,4;D4,D4)").unwrap();
        let classes = enumerate_classes(&d).unwrap();
        let easy: Vec<&EtaSpec> = classes
            .iter()
            .filter(|c| matches!(c, EtaSpec::EasyChar { .. }))
            .collect();
        assert_eq!(easy.len(), 3);
        for eta in easy {
            assert!(twisted_matches_formula(&d, eta).unwrap());
        }
    }

    #[test]
    fn twisted_cd_iv_small() {
        // CD_2^1 = (4,2;D4,D3): n = 2 even, m = 1 odd
        let d = GroupDescriptor::parse("Cox(4,2;D4,D3)").unwrap();
        let classes = enumerate_classes(&d).unwrap();
        assert!(classes.contains(&EtaSpec::HardCdIv));
        assert!(twisted_matches_formula(&d, &EtaSpec::HardCdIv).unwrap());
    }

    #[test]
    fn twisted_cd_v_small() {
        // CD_3^2 = (8,4;D6,D4): n = 3 odd, m = 2 even
        let d = GroupDescriptor::parse("Cox(8,4;D6,D4)").unwrap();
        let classes = enumerate_classes(&d).unwrap();
        assert!(classes.contains(&EtaSpec::HardCdV));
        assert!(twisted_matches_formula(&d, &EtaSpec::HardCdV).unwrap());
    }
}
