//! Log terminality of plane curve germ configurations with standard
//! coefficients: the Platonic-triple tests, the eight-case classifier, and
//! an independent discrepancy-sequence oracle following the blowup
//! schedules case by case.

use crate::cyclotomic::{rat, rat_int, Rat};
use crate::{Error, Result};
use num_traits::One;

/// Simple singularity vocabulary for the support of the boundary divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingType {
    Empty,
    Smooth,
    /// A(j): j odd = two smooth branches with contact (j+1)/2;
    /// j even = one cuspidal branch.
    A(u32),
    /// D(j), j >= 4: j even = tangent pair plus a transversal branch;
    /// j odd = cusp plus a transversal branch.
    D(u32),
    E6,
    E7,
    E8,
}

/// A type-tagged germ configuration with per-branch ramification indices.
///
/// Branch order conventions:
/// - `A(2k-1)`: (e1, e2) on the two smooth branches;
/// - `A(2k)`: (e1) on the cusp;
/// - `D(2k+2)`: (e1, e2, e3) with e3 on the branch not tangential to the
///   other two;
/// - `D(2k+3)`: (e1, e3) with e1 on the cusp (the singular component) and e3
///   on the transversal smooth branch;
/// - `E7`: (e1, e2) with e1 on the cusp and e2 on its tangent line;
/// - `Smooth`, `E6`, `E8`: a single index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamGerm {
    pub sing_type: SingType,
    pub indices: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    LogTerminal,
    NotLogTerminal,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    /// Which of the eight classifier cases matched (1..=8), when the germ is
    /// log terminal.
    pub case: u32,
    /// For the odd D case: set when the index-two condition on the singular
    /// component disagrees with the discrepancy conditions actually used.
    pub statement_mismatch: bool,
}

#[derive(Clone, Debug)]
pub struct DiscrepancySeq {
    pub values: Vec<Rat>,
}

impl DiscrepancySeq {
    pub fn all_above_minus_one(&self) -> bool {
        let minus_one = -Rat::one();
        self.values.iter().all(|v| *v > minus_one)
    }
}

impl RamGerm {
    pub fn new(sing_type: SingType, indices: Vec<u64>) -> Result<RamGerm> {
        let g = RamGerm { sing_type, indices };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.indices.iter().any(|&e| e == 0) {
            return Err(Error::invalid("ramification indices must be positive"));
        }
        let want = match self.sing_type {
            SingType::Empty => 0,
            SingType::Smooth | SingType::E6 | SingType::E8 => 1,
            SingType::A(j) => {
                if j < 1 {
                    return Err(Error::invalid("A-type germ needs index >= 1"));
                }
                if j % 2 == 1 {
                    2
                } else {
                    1
                }
            }
            SingType::D(j) => {
                if j < 4 {
                    return Err(Error::invalid("D-type germ needs index >= 4"));
                }
                if j % 2 == 0 {
                    3
                } else {
                    2
                }
            }
            SingType::E7 => 2,
        };
        if self.indices.len() != want {
            return Err(Error::invalid(format!(
                "germ type expects {want} branch indices, got {}",
                self.indices.len()
            )));
        }
        Ok(())
    }

    /// Ramification indices written with multiplicity: a branch contributes
    /// its index once per sheet of the tangent cone (a cusp counts twice, the
    /// E6/E8 branch three times).
    pub fn indices_with_multiplicity(&self) -> Vec<u64> {
        match self.sing_type {
            SingType::Empty => vec![],
            SingType::Smooth => self.indices.clone(),
            SingType::A(j) if j % 2 == 1 => self.indices.clone(),
            SingType::A(_) => vec![self.indices[0], self.indices[0]],
            SingType::D(j) if j % 2 == 0 => self.indices.clone(),
            SingType::D(_) => vec![self.indices[0], self.indices[0], self.indices[1]],
            SingType::E6 | SingType::E8 => vec![self.indices[0]; 3],
            SingType::E7 => vec![self.indices[0], self.indices[0], self.indices[1]],
        }
    }

    /// Parse `A3`, `D5`, `E6`, `smooth`, `empty` with a comma list of indices.
    pub fn parse(type_str: &str, indices: &[u64]) -> Result<RamGerm> {
        let t = type_str.trim();
        let sing = match t {
            "smooth" => SingType::Smooth,
            "empty" => SingType::Empty,
            "E6" => SingType::E6,
            "E7" => SingType::E7,
            "E8" => SingType::E8,
            _ => {
                if let Some(j) = t.strip_prefix('A') {
                    SingType::A(j.parse().map_err(|_| Error::invalid("bad A index"))?)
                } else if let Some(j) = t.strip_prefix('D') {
                    SingType::D(j.parse().map_err(|_| Error::invalid("bad D index"))?)
                } else {
                    return Err(Error::invalid(format!("unknown germ type '{t}'")));
                }
            }
        };
        RamGerm::new(sing, indices.to_vec())
    }
}

/// Platonic triple test: 1/a + 1/b + 1/c > 1 by exact rational comparison.
pub fn is_platonic(a: u64, b: u64, c: u64) -> Result<bool> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::invalid("Platonic test needs positive integers"));
    }
    let s = rat(1, a as i64) + rat(1, b as i64) + rat(1, c as i64);
    Ok(s > Rat::one())
}

/// Discrepancy along the exceptional curve of the first blowup:
/// 1 - sum_i (1 - 1/e_i) over the indices written with multiplicity.
pub fn first_blowup_discrepancy(indices: &[u64]) -> Rat {
    let mut a = rat_int(1);
    for &e in indices {
        a -= Rat::one() - rat(1, e as i64);
    }
    a
}

/// The first-blowup criterion: the discrepancy exceeds -1 iff the point has
/// multiplicity at most 3 and, at multiplicity 3, the indices form a Platonic
/// triple.
pub fn first_blowup_ok(indices: &[u64]) -> bool {
    let m = indices.len();
    if m <= 2 {
        return true;
    }
    if m > 3 {
        return false;
    }
    is_platonic(indices[0], indices[1], indices[2]).unwrap()
}

/// The eight-case log terminality classifier.
pub fn logterm_classify(g: &RamGerm) -> Result<Classification> {
    g.validate()?;
    let lt = |v: bool, case: u32, mismatch: bool| Classification {
        verdict: if v {
            Verdict::LogTerminal
        } else {
            Verdict::NotLogTerminal
        },
        case,
        statement_mismatch: mismatch,
    };
    Ok(match g.sing_type {
        SingType::Empty | SingType::Smooth => lt(true, 1, false),
        SingType::A(j) if j % 2 == 1 => {
            let k = (j as u64 + 1) / 2;
            lt(is_platonic(g.indices[0], g.indices[1], k)?, 2, false)
        }
        SingType::A(j) => {
            let k = j as u64 / 2;
            let e1 = g.indices[0];
            let ok = is_platonic(e1, e1, k)? && is_platonic(2, e1, 2 * k + 1)?;
            lt(ok, 3, false)
        }
        SingType::D(j) if j % 2 == 0 => {
            let k = (j as u64 - 2) / 2;
            let (e1, e2, e3) = (g.indices[0], g.indices[1], g.indices[2]);
            lt(is_platonic(e1, e2, k * e3)?, 4, false)
        }
        SingType::D(j) => {
            let k = (j as u64 - 3) / 2;
            let (e1, e3) = (g.indices[0], g.indices[1]);
            let ok = is_platonic(e1, e1, k * e3)? && is_platonic(2, e1, (2 * k + 1) * e3)?;
            // the statement-level condition is just e1 = 2 on the singular
            // component; report when the two disagree
            let stmt = e1 == 2;
            lt(ok, 5, stmt != ok)
        }
        // an index-1 branch has coefficient zero and leaves the support:
        // the E cases degenerate to a smooth branch, a bare cusp, or nothing
        SingType::E6 => lt(g.indices[0] <= 2, 6, false),
        SingType::E7 => {
            let (e1, e2) = (g.indices[0], g.indices[1]);
            let ok = if e1 == 1 {
                true // only the smooth tangent line remains
            } else if e2 == 1 {
                // bare ordinary cusp
                is_platonic(e1, e1, 1)? && is_platonic(2, e1, 3)?
            } else {
                e1 == 2 && e2 == 2
            };
            lt(ok, 7, false)
        }
        SingType::E8 => lt(g.indices[0] <= 2, 8, false),
    })
}

/// Discrepancy sequence along the case-by-case blowup schedule; the verdict
/// (all entries greater than -1) must agree with the classifier everywhere.
pub fn discrepancy_oracle(g: &RamGerm) -> Result<DiscrepancySeq> {
    g.validate()?;
    let b = |e: u64| Rat::one() - rat(1, e as i64); // 1 - 1/e
    let ri = |x: u64| rat_int(x as i64);
    let values: Vec<Rat> = match g.sing_type {
        SingType::Empty => vec![rat_int(1)],
        SingType::Smooth => vec![rat_int(1) - b(g.indices[0])],
        SingType::A(j) if j % 2 == 1 => {
            // two smooth branches of contact k: k blowups separate them
            let k = (j as u64 + 1) / 2;
            let (e1, e2) = (g.indices[0], g.indices[1]);
            (1..=k)
                .map(|t| ri(t) - ri(t) * b(e1) - ri(t) * b(e2))
                .collect()
        }
        SingType::A(j) => {
            // cusp: the odd-D schedule with a trivial transversal branch
            let k = j as u64 / 2;
            let e1 = g.indices[0];
            odd_d_schedule(k, e1, 1)
        }
        SingType::D(j) if j % 2 == 0 => {
            let k = (j as u64 - 2) / 2;
            let (e1, e2, e3) = (g.indices[0], g.indices[1], g.indices[2]);
            (1..=k)
                .map(|t| ri(t) - ri(t) * b(e1) - ri(t) * b(e2) - b(e3))
                .collect()
        }
        SingType::D(j) => {
            let k = (j as u64 - 3) / 2;
            odd_d_schedule(k, g.indices[0], g.indices[1])
        }
        SingType::E6 => {
            let bb = b(g.indices[0]);
            vec![
                rat_int(1) - ri(3) * bb.clone(),
                rat_int(2) - ri(4) * bb.clone(),
                rat_int(4) - ri(8) * bb,
            ]
        }
        SingType::E7 => {
            let (b1, b2) = (b(g.indices[0]), b(g.indices[1]));
            vec![
                rat_int(1) - ri(2) * b1.clone() - b2.clone(),
                rat_int(2) - ri(3) * b1.clone() - ri(2) * b2.clone(),
                rat_int(4) - ri(6) * b1 - ri(3) * b2,
            ]
        }
        SingType::E8 => {
            let bb = b(g.indices[0]);
            vec![
                rat_int(1) - ri(3) * bb.clone(),
                rat_int(2) - ri(5) * bb.clone(),
                rat_int(4) - ri(9) * bb.clone(),
                rat_int(7) - ri(15) * bb,
            ]
        }
    };
    Ok(DiscrepancySeq { values })
}

/// Blowup schedule for a cusp of type A_{2k} with index e1 together with a
/// transversal branch of index e3 (e3 = 1 gives the bare cusp):
/// a_j = j - 2j(1 - 1/e1) - (1 - 1/e3) for j <= k, then the two extra
/// blowups a_{k+1} and a_{k+2}.
fn odd_d_schedule(k: u64, e1: u64, e3: u64) -> Vec<Rat> {
    let b = |e: u64| Rat::one() - rat(1, e as i64);
    let ri = |x: u64| rat_int(x as i64);
    let (b1, b3) = (b(e1), b(e3));
    let mut out: Vec<Rat> = (1..=k)
        .map(|j| ri(j) - ri(2 * j) * b1.clone() - b3.clone())
        .collect();
    out.push(ri(k + 1) - ri(2 * k + 1) * b1.clone() - b3.clone());
    out.push(ri(2 * k + 2) - ri(4 * k + 2) * b1 - ri(2) * b3);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_examples() {
        assert!(is_platonic(2, 3, 5).unwrap());
        assert!(!is_platonic(2, 3, 6).unwrap());
        // degenerate case: a 1 always wins
        assert!(is_platonic(1, 7, 9).unwrap());
        assert!(is_platonic(1, 1000, 1000).unwrap());
        assert!(is_platonic(2, 2, 1000).unwrap());
        assert!(is_platonic(2, 3, 3).unwrap());
        assert!(!is_platonic(2, 4, 4).unwrap());
        assert!(!is_platonic(3, 3, 3).unwrap());
        assert!(is_platonic(0, 1, 1).is_err());
    }

    #[test]
    fn first_blowup_examples() {
        assert_eq!(first_blowup_discrepancy(&[2, 2]), rat_int(0));
        assert_eq!(first_blowup_discrepancy(&[2, 2, 2]), rat(-1, 2));
        // (2,3,7): 1 - (1/2 + 2/3 + 6/7) = -43/42 < -1
        assert_eq!(first_blowup_discrepancy(&[2, 3, 7]), rat(-43, 42));
        assert!(!first_blowup_ok(&[2, 3, 7]));
        assert!(first_blowup_ok(&[2, 3, 5]));
        assert!(!first_blowup_ok(&[2, 2, 2, 2]));
    }

    #[test]
    fn classifier_examples() {
        // D4 germ with indices (2,2,2): {2,2,2} is Platonic
        let g = RamGerm::new(SingType::D(4), vec![2, 2, 2]).unwrap();
        assert_eq!(logterm_classify(&g).unwrap().verdict, Verdict::LogTerminal);
        // E7 with all indices 2
        let g = RamGerm::new(SingType::E7, vec![2, 2]).unwrap();
        assert_eq!(logterm_classify(&g).unwrap().verdict, Verdict::LogTerminal);
        let g = RamGerm::new(SingType::E7, vec![2, 3]).unwrap();
        assert_eq!(
            logterm_classify(&g).unwrap().verdict,
            Verdict::NotLogTerminal
        );
        // A13 (k = 7) with indices (2,3): {2,3,7} fails
        let g = RamGerm::new(SingType::A(13), vec![2, 3]).unwrap();
        assert_eq!(
            logterm_classify(&g).unwrap().verdict,
            Verdict::NotLogTerminal
        );
        // multiplicity <= 1 is always log terminal
        for e in [1u64, 2, 17] {
            let g = RamGerm::new(SingType::Smooth, vec![e]).unwrap();
            assert_eq!(logterm_classify(&g).unwrap().verdict, Verdict::LogTerminal);
        }
    }

    #[test]
    fn oracle_case_examples() {
        // even D with k=2, e = (2,2,2): {2,2,4} Platonic, so log terminal
        let g = RamGerm::new(SingType::D(6), vec![2, 2, 2]).unwrap();
        let seq = discrepancy_oracle(&g).unwrap();
        assert!(seq.all_above_minus_one());
        assert_eq!(
            logterm_classify(&g).unwrap().verdict,
            Verdict::LogTerminal
        );
        // E7 proof values at e1 = e3 = 2: a3 = 4 - 6/2 - 3/2 = -1/2
        let g = RamGerm::new(SingType::E7, vec![2, 2]).unwrap();
        let seq = discrepancy_oracle(&g).unwrap();
        assert_eq!(seq.values[2], rat(-1, 2));
        assert!(seq.all_above_minus_one());
    }

    #[test]
    fn cusp_degenerates_to_odd_d_with_unit_index() {
        // the A_{2k} schedule equals the odd D schedule with e3 = 1
        for k in 1..=6u32 {
            for e1 in 1..=6u64 {
                let cusp = RamGerm::new(SingType::A(2 * k), vec![e1]).unwrap();
                let dgerm = RamGerm::new(SingType::D(2 * k + 3), vec![e1, 1]).unwrap();
                assert_eq!(
                    discrepancy_oracle(&cusp).unwrap().values,
                    discrepancy_oracle(&dgerm).unwrap().values
                );
            }
        }
    }

    #[test]
    fn classifier_matches_oracle_exhaustively() {
        let mut count = 0u32;
        let mut check = |g: &RamGerm| {
            let c = logterm_classify(g).unwrap();
            let s = discrepancy_oracle(g).unwrap();
            assert_eq!(
                c.verdict == Verdict::LogTerminal,
                s.all_above_minus_one(),
                "disagreement on {g:?} ({:?})",
                s.values
            );
            count += 1;
        };
        let idx = 1..=8u64;
        for k in 1..=8u32 {
            for e1 in idx.clone() {
                check(&RamGerm::new(SingType::A(2 * k), vec![e1]).unwrap());
                for e2 in idx.clone() {
                    check(&RamGerm::new(SingType::A(2 * k - 1), vec![e1, e2]).unwrap());
                    check(&RamGerm::new(SingType::D(2 * k + 3), vec![e1, e2]).unwrap());
                    for e3 in idx.clone() {
                        check(&RamGerm::new(SingType::D(2 * k + 2), vec![e1, e2, e3]).unwrap());
                    }
                }
            }
        }
        for e in idx.clone() {
            check(&RamGerm::new(SingType::E6, vec![e]).unwrap());
            check(&RamGerm::new(SingType::E8, vec![e]).unwrap());
            check(&RamGerm::new(SingType::Smooth, vec![e]).unwrap());
            for e2 in idx.clone() {
                check(&RamGerm::new(SingType::E7, vec![e, e2]).unwrap());
            }
        }
        assert!(count > 4000, "sweep covered {count} germs");
    }

    #[test]
    fn monotonicity_in_indices() {
        // increasing any index never turns NotLogTerminal into LogTerminal
        let types: Vec<(SingType, usize)> = vec![
            (SingType::A(5), 2),
            (SingType::A(6), 1),
            (SingType::D(6), 3),
            (SingType::D(7), 2),
            (SingType::E6, 1),
            (SingType::E7, 2),
            (SingType::E8, 1),
        ];
        for (t, arity) in types {
            let combos: Vec<Vec<u64>> = match arity {
                1 => (1..=6).map(|a| vec![a]).collect(),
                2 => (1..=6)
                    .flat_map(|a| (1..=6).map(move |b| vec![a, b]))
                    .collect(),
                _ => (1..=5)
                    .flat_map(|a| {
                        (1..=5).flat_map(move |b| (1..=5).map(move |c| vec![a, b, c]))
                    })
                    .collect(),
            };
            for base in combos {
                let v0 = logterm_classify(&RamGerm::new(t, base.clone()).unwrap())
                    .unwrap()
                    .verdict;
                for pos in 0..base.len() {
                    let mut bumped = base.clone();
                    bumped[pos] += 1;
                    let v1 = logterm_classify(&RamGerm::new(t, bumped).unwrap())
                        .unwrap()
                        .verdict;
                    if v0 == Verdict::NotLogTerminal {
                        assert_eq!(v1, Verdict::NotLogTerminal);
                    }
                }
            }
        }
    }

    #[test]
    fn trace_rendering_parses() {
        let g = RamGerm::parse("D4", &[2, 2, 2]).unwrap();
        assert_eq!(g.sing_type, SingType::D(4));
        assert!(RamGerm::parse("D3", &[2, 2]).is_err());
        assert!(RamGerm::parse("A2", &[2, 2]).is_err());
    }
}
