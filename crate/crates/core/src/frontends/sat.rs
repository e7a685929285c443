//! Bounded-occurrence 3-SAT to MaxCover.
//!
//! Clauses are split into `k` contiguous groups, the first `m mod k` one
//! clause longer. Left part `V_i` lists the assignments to the variables of
//! group `i` that satisfy all of its clauses. For each nonempty set `J` of
//! groups, `S_J` holds the variables whose clauses fall in exactly the groups
//! of `J`, and right part `W_J` lists all assignments to `S_J`. An assignment
//! in `V_i` is adjacent to one in `W_J` when they agree on `S_J` (`i ∈ J`), or
//! always (`i ∉ J`). Parts with empty `S_J` are left out.
//!
//! Assignments are ordered lexicographically with `false < true`, the
//! smallest variable first.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::maxcover::MaxCoverInstance;

use super::{FrontEnd, FrontendError};

/// Cap on the assignments enumerated for one part.
pub const PART_CAP: u128 = 1 << 20;

/// CNF with at most three literals per clause and each variable in at most
/// three clauses. Variables are `1..=vars`; literal `-x` negates `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf3 {
    vars: usize,
    clauses: Vec<Vec<i64>>,
}

impl Cnf3 {
    pub fn new(vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self, FrontendError> {
        let mut occurrences = vec![0usize; vars + 1];
        for (c, clause) in clauses.iter().enumerate() {
            if clause.len() > 3 {
                return Err(FrontendError::ClauseWidth {
                    clause: c,
                    width: clause.len(),
                });
            }
            let mut seen = Vec::with_capacity(3);
            for &lit in clause {
                let x = lit.unsigned_abs() as usize;
                if lit == 0 || x > vars {
                    return Err(FrontendError::LiteralRange { literal: lit, vars });
                }
                if !seen.contains(&x) {
                    seen.push(x);
                    occurrences[x] += 1;
                }
            }
        }
        if let Some(x) = (1..=vars).find(|&x| occurrences[x] > 3) {
            return Err(FrontendError::OccurrenceBound {
                variable: x,
                count: occurrences[x],
            });
        }
        Ok(Cnf3 { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    /// `assignment[x - 1]` is the value of variable `x`.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatInstance {
    pub instance: MaxCoverInstance,
    /// Clause index range of each group.
    pub groups: Vec<Range<usize>>,
    /// Sorted variables of each group.
    pub group_vars: Vec<Vec<usize>>,
    /// Group set `J` of each right part, in `(|J|, lexicographic)` order.
    pub right_sets: Vec<Vec<usize>>,
    /// `S_J` of each right part.
    pub right_vars: Vec<Vec<usize>>,
    /// Satisfying assignments of each group, in left-part order.
    pub assignments: Vec<Vec<Vec<bool>>>,
    /// Number of `J` with `1 <= |J| <= 3` whose `S_J` was empty.
    pub omitted: usize,
}

impl SatInstance {
    /// The full assignment picked by a labeling, if its parts agree.
    pub fn decode(&self, labeling: &[usize], vars: usize) -> Option<Vec<bool>> {
        let mut value: Vec<Option<bool>> = vec![None; vars];
        for (i, &x) in labeling.iter().enumerate() {
            for (&var, &b) in self.group_vars[i].iter().zip(&self.assignments[i][x]) {
                match value[var - 1] {
                    Some(prev) if prev != b => return None,
                    _ => value[var - 1] = Some(b),
                }
            }
        }
        value.into_iter().collect()
    }
}

fn contiguous_groups(m: usize, k: usize) -> Vec<Range<usize>> {
    let (base, extra) = (m / k, m % k);
    let mut start = 0;
    (0..k)
        .map(|i| {
            let len = base + usize::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

fn bits(index: usize, len: usize) -> Vec<bool> {
    (0..len).map(|p| index >> (len - 1 - p) & 1 == 1).collect()
}

pub fn sat_to_maxcover(phi: &Cnf3, k: usize) -> Result<FrontEnd<SatInstance>, FrontendError> {
    if k == 0 {
        return Err(FrontendError::TooFewParts { min: 1, got: 0 });
    }
    let groups = contiguous_groups(phi.clauses().len(), k);
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); phi.vars() + 1];
    for (g, range) in groups.iter().enumerate() {
        for clause in &phi.clauses()[range.clone()] {
            for &lit in clause {
                let x = lit.unsigned_abs() as usize;
                if occurs[x].last() != Some(&g) {
                    occurs[x].push(g);
                }
            }
        }
    }
    if let Some(x) = (1..=phi.vars()).find(|&x| occurs[x].is_empty()) {
        return Err(FrontendError::UnusedVariable(x));
    }
    let group_vars: Vec<Vec<usize>> = (0..k)
        .map(|g| {
            (1..=phi.vars())
                .filter(|&x| occurs[x].contains(&g))
                .collect()
        })
        .collect();

    let mut assignments = Vec::with_capacity(k);
    for (g, vars) in group_vars.iter().enumerate() {
        let needed = 1u128.checked_shl(vars.len() as u32).unwrap_or(u128::MAX);
        if needed > PART_CAP {
            return Err(FrontendError::CapExceeded {
                what: "group assignments",
                needed,
                cap: PART_CAP,
            });
        }
        let pos: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(p, &x)| (x, p)).collect();
        let sat: Vec<Vec<bool>> = (0..needed as usize)
            .map(|a| bits(a, vars.len()))
            .filter(|a| {
                phi.clauses()[groups[g].clone()].iter().all(|c| {
                    c.iter()
                        .any(|&l| a[pos[&(l.unsigned_abs() as usize)]] == (l > 0))
                })
            })
            .collect();
        if sat.is_empty() {
            return Ok(FrontEnd::DecidedNo(format!(
                "clause group {g} is unsatisfiable"
            )));
        }
        assignments.push(sat);
    }

    let mut by_set: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for (x, occ) in occurs.iter().enumerate().skip(1) {
        by_set.entry((occ.len(), occ.clone())).or_default().push(x);
    }
    let possible: usize = (1..=3.min(k))
        .map(|s| crate::combinatorics::binomial(k, s) as usize)
        .sum();
    let omitted = possible - by_set.len();
    let (right_sets, right_vars): (Vec<Vec<usize>>, Vec<Vec<usize>>) =
        by_set.into_iter().map(|((_, j), vars)| (j, vars)).unzip();
    for vars in &right_vars {
        let needed = 1u128 << vars.len();
        if needed > PART_CAP {
            return Err(FrontendError::CapExceeded {
                what: "right-part assignments",
                needed,
                cap: PART_CAP,
            });
        }
    }

    let v_parts = assignments.iter().map(Vec::len).collect();
    let w_parts = right_vars.iter().map(|v| 1usize << v.len()).collect();
    let provenance = format!(
        "sat_to_maxcover(n={}, m={}, k={k}, omitted_empty_parts={omitted})",
        phi.vars(),
        phi.clauses().len()
    );
    let instance = MaxCoverInstance::from_fn(v_parts, w_parts, provenance, |v, w| {
        let set = &right_sets[w.part];
        if !set.contains(&v.part) {
            return true;
        }
        let a = &assignments[v.part][v.index];
        let vars = &group_vars[v.part];
        let b = bits(w.index, right_vars[w.part].len());
        right_vars[w.part]
            .iter()
            .zip(&b)
            .all(|(x, &bw)| a[vars.binary_search(x).unwrap()] == bw)
    })?;
    Ok(FrontEnd::Instance(SatInstance {
        instance,
        groups,
        group_vars,
        right_sets,
        right_vars,
        assignments,
        omitted,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcover::{maxcover_value, projection_profile, MaxCoverGraph};
    use crate::rational::Rational;

    #[test]
    fn contradiction() {
        let phi = Cnf3::new(1, vec![vec![1], vec![-1]]).unwrap();
        let FrontEnd::Instance(s) = sat_to_maxcover(&phi, 2).unwrap() else {
            panic!()
        };
        assert_eq!(s.assignments, vec![vec![vec![true]], vec![vec![false]]]);
        assert_eq!(s.right_sets, vec![vec![0, 1]]);
        assert_eq!(s.instance.w_parts(), &[2]);
        assert_eq!(
            maxcover_value(&s.instance, 100).unwrap().value,
            Rational::zero()
        );
        assert!(projection_profile(&s.instance, 100)
            .unwrap()
            .is_pseudo_projection());
        assert_eq!(s.omitted, 2);
    }

    #[test]
    fn two_units() {
        let phi = Cnf3::new(2, vec![vec![1], vec![2]]).unwrap();
        let FrontEnd::Instance(s) = sat_to_maxcover(&phi, 2).unwrap() else {
            panic!()
        };
        let sol = maxcover_value(&s.instance, 100).unwrap();
        assert!(sol.value.is_one());
        assert_eq!(s.decode(&sol.labeling, 2), Some(vec![true, true]));
    }

    #[test]
    fn groups_are_contiguous() {
        assert_eq!(contiguous_groups(5, 2), vec![0..3, 3..5]);
        assert_eq!(contiguous_groups(2, 3), vec![0..1, 1..2, 2..2]);
    }

    #[test]
    fn validation() {
        assert_eq!(
            Cnf3::new(4, vec![vec![1, 2, 3, 4]]).unwrap_err(),
            FrontendError::ClauseWidth {
                clause: 0,
                width: 4
            }
        );
        assert_eq!(
            Cnf3::new(1, vec![vec![1]; 4]).unwrap_err(),
            FrontendError::OccurrenceBound {
                variable: 1,
                count: 4
            }
        );
        assert_eq!(
            Cnf3::new(1, vec![vec![2]]).unwrap_err(),
            FrontendError::LiteralRange {
                literal: 2,
                vars: 1
            }
        );
        let phi = Cnf3::new(2, vec![vec![1]]).unwrap();
        assert_eq!(
            sat_to_maxcover(&phi, 1).unwrap_err(),
            FrontendError::UnusedVariable(2)
        );
    }

    #[test]
    fn unsatisfiable_group_is_decided() {
        let phi = Cnf3::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert!(matches!(
            sat_to_maxcover(&phi, 1).unwrap(),
            FrontEnd::DecidedNo(_)
        ));
    }
}
