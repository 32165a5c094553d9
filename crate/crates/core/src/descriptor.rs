//! Descriptors for the finite subgroups of GL2 handled by the toolkit, with
//! the textual grammar used by the CLI and JSON formats:
//! `SL2:E8`, `Cox(4,2;D4,A3)`, `Ab(2,2,0)`, `G(6,2,2)`, `ST13`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Finite subgroups of SL2 named by their Dynkin type.
/// `A(k)` is cyclic of order k+1 (k = 0 allowed, the trivial group);
/// `D(k)`, k >= 3, is binary dihedral of order 4(k-2);
/// `E6`, `E7`, `E8` are the binary tetrahedral, octahedral and icosahedral
/// groups of orders 24, 48, 120.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sl2Type {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl Sl2Type {
    pub fn order(&self) -> u64 {
        match self {
            Sl2Type::A(k) => *k as u64 + 1,
            Sl2Type::D(k) => 4 * (*k as u64 - 2),
            Sl2Type::E6 => 24,
            Sl2Type::E7 => 48,
            Sl2Type::E8 => 120,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Sl2Type::A(k) => format!("A{k}"),
            Sl2Type::D(k) => format!("D{k}"),
            Sl2Type::E6 => "E6".into(),
            Sl2Type::E7 => "E7".into(),
            Sl2Type::E8 => "E8".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Sl2Type> {
        let s = s.trim();
        match s {
            "E6" => return Ok(Sl2Type::E6),
            "E7" => return Ok(Sl2Type::E7),
            "E8" => return Ok(Sl2Type::E8),
            _ => {}
        }
        if let Some(k) = s.strip_prefix('A') {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::invalid(format!("bad A-type index '{k}'")))?;
            return Ok(Sl2Type::A(k));
        }
        if let Some(k) = s.strip_prefix('D') {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::invalid(format!("bad D-type index '{k}'")))?;
            if k < 3 {
                return Err(Error::invalid("D-type index must be at least 3"));
            }
            return Ok(Sl2Type::D(k));
        }
        Err(Error::invalid(format!("unknown SL2 type '{s}'")))
    }
}

/// A finite subgroup of GL2, in one of the supported parameterisations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupDescriptor {
    /// A finite subgroup of SL2.
    Sl2(Sl2Type),
    /// Goursat datum (Z1, Z2; G1, G2) with Z1 = ab, Z2 = a and
    /// phi : G1 -> mu_b having kernel G2.
    Coxeter {
        z1: u32,
        z2: u32,
        g1: Sl2Type,
        g2: Sl2Type,
    },
    /// Diagonal group generated by diag(zeta_m, 1) and diag(zeta_mn^c, zeta_n),
    /// of order m*n.
    Abelian { m: u32, n: u32, c: u32 },
    /// Imprimitive reflection group G(np, p, 2).
    Imprimitive { n: u32, p: u32 },
    /// Primitive reflection group, Shephard-Todd numbering 4..=22.
    ShephardTodd(u8),
}

/// Named rows of the Goursat classification table for finite subgroups of
/// GL2 (nonabelian families plus the cyclic-over-cyclic A row).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxeterFamily {
    /// (ab, a; A_{db-1}, A_{d-1}): cyclic G1 of order db, kernel of order d,
    /// cyclic quotient of order b.
    TypeA { a: u32, b: u32, d: u32 },
    /// B_n^m = (4m, 2m; D_{n+2}, A_{2n-1})
    B { m: u32, n: u32 },
    /// D_n^m = (2m, 2m; D_n, D_n)
    D { m: u32, n: u32 },
    /// CD_n^m = (4m, 2m; D_{2n}, D_{n+1})
    Cd { m: u32, n: u32 },
    /// BT_n^a = (4a, a; D_{2n+3}, A_{2n}) with a odd
    Bt { a: u32, n: u32 },
    /// E6^m = (2m, 2m; E6, E6)
    E6 { m: u32 },
    /// E7^m
    E7 { m: u32 },
    /// E8^m
    E8 { m: u32 },
    /// F41^m = (4m, 2m; E7, E6)
    F41 { m: u32 },
    /// G21^m = (6m, 2m; E6, D4)
    G21 { m: u32 },
}

impl GroupDescriptor {
    pub fn render(&self) -> String {
        match self {
            GroupDescriptor::Sl2(t) => format!("SL2:{}", t.render()),
            GroupDescriptor::Coxeter { z1, z2, g1, g2 } => {
                format!("Cox({z1},{z2};{},{})", g1.render(), g2.render())
            }
            GroupDescriptor::Abelian { m, n, c } => format!("Ab({m},{n},{c})"),
            GroupDescriptor::Imprimitive { n, p } => format!("G({},{},2)", n * p, p),
            GroupDescriptor::ShephardTodd(k) => format!("ST{k}"),
        }
    }

    pub fn parse(text: &str) -> Result<GroupDescriptor> {
        let s = text.trim();
        if let Some(t) = s.strip_prefix("SL2:") {
            return Ok(GroupDescriptor::Sl2(Sl2Type::parse(t)?));
        }
        if let Some(rest) = s.strip_prefix("Cox(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse {
                pos: s.len(),
                msg: "missing ')'".into(),
            })?;
            let (zs, gs) = inner.split_once(';').ok_or_else(|| Error::Parse {
                pos: s.len(),
                msg: "expected 'Cox(Z1,Z2;G1,G2)'".into(),
            })?;
            let z: Vec<&str> = zs.split(',').collect();
            let g: Vec<&str> = gs.split(',').collect();
            if z.len() != 2 || g.len() != 2 {
                return Err(Error::Parse {
                    pos: s.len(),
                    msg: "expected 'Cox(Z1,Z2;G1,G2)'".into(),
                });
            }
            let z1 = parse_u32(z[0])?;
            let z2 = parse_u32(z[1])?;
            let desc = GroupDescriptor::Coxeter {
                z1,
                z2,
                g1: Sl2Type::parse(g[0])?,
                g2: Sl2Type::parse(g[1])?,
            };
            desc.coxeter_family()?;
            return Ok(desc);
        }
        if let Some(rest) = s.strip_prefix("Ab(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse {
                pos: s.len(),
                msg: "missing ')'".into(),
            })?;
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse {
                    pos: s.len(),
                    msg: "expected 'Ab(m,n,c)'".into(),
                });
            }
            let (m, n, c) = (parse_u32(parts[0])?, parse_u32(parts[1])?, parse_u32(parts[2])?);
            if m == 0 || n == 0 {
                return Err(Error::invalid("Ab(m,n,c) needs m,n >= 1"));
            }
            if c >= m {
                return Err(Error::invalid("Ab(m,n,c) needs 0 <= c < m"));
            }
            return Ok(GroupDescriptor::Abelian { m, n, c });
        }
        if let Some(rest) = s.strip_prefix("G(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse {
                pos: s.len(),
                msg: "missing ')'".into(),
            })?;
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 || parts[2].trim() != "2" {
                return Err(Error::Parse {
                    pos: s.len(),
                    msg: "expected 'G(np,p,2)'".into(),
                });
            }
            let np = parse_u32(parts[0])?;
            let p = parse_u32(parts[1])?;
            if p == 0 || np == 0 || np % p != 0 {
                return Err(Error::invalid("G(np,p,2) needs p | np, both positive"));
            }
            return Ok(GroupDescriptor::Imprimitive { n: np / p, p });
        }
        if let Some(k) = s.strip_prefix("ST") {
            let k: u8 = k.parse().map_err(|_| Error::Parse {
                pos: s.len(),
                msg: "bad Shephard-Todd label".into(),
            })?;
            if !(4..=22).contains(&k) {
                return Err(Error::invalid("Shephard-Todd label must be in 4..=22"));
            }
            return Ok(GroupDescriptor::ShephardTodd(k));
        }
        Err(Error::Parse {
            pos: 0,
            msg: format!("unrecognised group descriptor '{s}'"),
        })
    }

    /// The Goursat datum of a Shephard-Todd label, through the type column:
    /// each primitive reflection group is of the form X^m for a nonabelian
    /// family X.
    pub fn st_to_coxeter(label: u8) -> Result<GroupDescriptor> {
        // (family, m); family determines (b, G1, G2) and a = 2m.
        let (fam, m): (char, u32) = match label {
            4 => ('G', 1),
            5 => ('6', 3),
            6 => ('G', 2),
            7 => ('6', 6),
            8 => ('F', 2),
            9 => ('7', 4),
            10 => ('F', 6),
            11 => ('7', 12),
            12 => ('F', 1),
            13 => ('7', 2),
            14 => ('F', 3),
            15 => ('7', 6),
            16 => ('8', 5),
            17 => ('8', 10),
            18 => ('8', 15),
            19 => ('8', 30),
            20 => ('8', 3),
            21 => ('8', 6),
            22 => ('8', 2),
            _ => return Err(Error::invalid("Shephard-Todd label must be in 4..=22")),
        };
        let a = 2 * m;
        Ok(match fam {
            'G' => GroupDescriptor::Coxeter {
                z1: 3 * a,
                z2: a,
                g1: Sl2Type::E6,
                g2: Sl2Type::D(4),
            },
            'F' => GroupDescriptor::Coxeter {
                z1: 2 * a,
                z2: a,
                g1: Sl2Type::E7,
                g2: Sl2Type::E6,
            },
            '6' => GroupDescriptor::Coxeter {
                z1: a,
                z2: a,
                g1: Sl2Type::E6,
                g2: Sl2Type::E6,
            },
            '7' => GroupDescriptor::Coxeter {
                z1: a,
                z2: a,
                g1: Sl2Type::E7,
                g2: Sl2Type::E7,
            },
            '8' => GroupDescriptor::Coxeter {
                z1: a,
                z2: a,
                g1: Sl2Type::E8,
                g2: Sl2Type::E8,
            },
            _ => unreachable!(),
        })
    }

    /// Match a Coxeter datum against the classification table rows.
    pub fn coxeter_family(&self) -> Result<CoxeterFamily> {
        let GroupDescriptor::Coxeter { z1, z2, g1, g2 } = self else {
            return Err(Error::invalid("not a Coxeter datum"));
        };
        let (z1, z2) = (*z1, *z2);
        if z2 == 0 || z1 % z2 != 0 {
            return Err(Error::invalid("Coxeter datum needs Z2 | Z1"));
        }
        let b = z1 / z2;
        let a = z2;
        let fam = match (b, g1, g2) {
            // the quotient G1/G2 must be cyclic of order b for phi to exist
            (_, Sl2Type::A(x), Sl2Type::A(y)) if *x + 1 == b * (*y + 1) => CoxeterFamily::TypeA {
                a,
                b,
                d: *y + 1,
            },
            (2, Sl2Type::D(j), Sl2Type::A(l)) if *j >= 3 && *l == 2 * (*j - 2) - 1 => {
                if a % 2 != 0 {
                    return Err(Error::invalid("B-family needs even Z2"));
                }
                CoxeterFamily::B { m: a / 2, n: *j - 2 }
            }
            (1, Sl2Type::D(j), Sl2Type::D(l)) if j == l => {
                if a % 2 != 0 {
                    return Err(Error::invalid("D-family needs even Z2"));
                }
                CoxeterFamily::D { m: a / 2, n: *j }
            }
            (2, Sl2Type::D(j), Sl2Type::D(l)) if *j % 2 == 0 && *l == *j / 2 + 1 => {
                if a % 2 != 0 {
                    return Err(Error::invalid("CD-family needs even Z2"));
                }
                CoxeterFamily::Cd { m: a / 2, n: *j / 2 }
            }
            (4, Sl2Type::D(j), Sl2Type::A(l)) if *j >= 5 && *j % 2 == 1 && *l == *j - 3 => {
                if a % 2 != 1 {
                    return Err(Error::invalid("BT-family needs odd Z2"));
                }
                CoxeterFamily::Bt { a, n: (*j - 3) / 2 }
            }
            (1, Sl2Type::E6, Sl2Type::E6) => {
                if a % 2 != 0 {
                    return Err(Error::invalid("E-family needs even Z2"));
                }
                CoxeterFamily::E6 { m: a / 2 }
            }
            (1, Sl2Type::E7, Sl2Type::E7) => {
                if a % 2 != 0 {
                    return Err(Error::invalid("E-family needs even Z2"));
                }
                CoxeterFamily::E7 { m: a / 2 }
            }
            (1, Sl2Type::E8, Sl2Type::E8) => {
                if a % 2 != 0 {
                    return Err(Error::invalid("E-family needs even Z2"));
                }
                CoxeterFamily::E8 { m: a / 2 }
            }
            (2, Sl2Type::E7, Sl2Type::E6) => {
                if a % 2 != 0 {
                    return Err(Error::invalid("F41-family needs even Z2"));
                }
                CoxeterFamily::F41 { m: a / 2 }
            }
            (3, Sl2Type::E6, Sl2Type::D(4)) => {
                if a % 2 != 0 {
                    return Err(Error::invalid("G21-family needs even Z2"));
                }
                CoxeterFamily::G21 { m: a / 2 }
            }
            _ => {
                return Err(Error::invalid(format!(
                    "Goursat datum ({z1},{z2};{},{}) matches no classification row",
                    g1.render(),
                    g2.render()
                )))
            }
        };
        Ok(fam)
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("bad integer '{s}'"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trip() {
        for s in ["SL2:E8", "Cox(4,2;D4,A3)", "Ab(2,2,0)", "G(6,2,2)", "ST13"] {
            let d = GroupDescriptor::parse(s).unwrap();
            assert_eq!(d.render(), s);
        }
    }

    #[test]
    fn family_recognition() {
        let b = GroupDescriptor::parse("Cox(4,2;D4,A3)").unwrap();
        assert_eq!(b.coxeter_family().unwrap(), CoxeterFamily::B { m: 1, n: 2 });
        let cd = GroupDescriptor::parse("Cox(4,2;D4,D3)").unwrap();
        assert_eq!(cd.coxeter_family().unwrap(), CoxeterFamily::Cd { m: 1, n: 2 });
        let bt = GroupDescriptor::parse("Cox(4,1;D5,A2)").unwrap();
        assert_eq!(bt.coxeter_family().unwrap(), CoxeterFamily::Bt { a: 1, n: 1 });
        let ta = GroupDescriptor::parse("Cox(8,4;A3,A1)").unwrap();
        assert_eq!(
            ta.coxeter_family().unwrap(),
            CoxeterFamily::TypeA { a: 4, b: 2, d: 2 }
        );
    }

    #[test]
    fn st_examples() {
        let st13 = GroupDescriptor::st_to_coxeter(13).unwrap();
        assert_eq!(st13.render(), "Cox(4,4;E7,E7)");
        let st7 = GroupDescriptor::st_to_coxeter(7).unwrap();
        assert_eq!(st7.render(), "Cox(12,12;E6,E6)");
        let st4 = GroupDescriptor::st_to_coxeter(4).unwrap();
        assert_eq!(st4.render(), "Cox(6,2;E6,D4)");
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(GroupDescriptor::parse("Cox(4,2;E8,E7)").is_err());
        assert!(GroupDescriptor::parse("Ab(2,2,5)").is_err());
        assert!(GroupDescriptor::parse("ST3").is_err());
    }
}
