use super::{check_cap, TeamError};
use crate::bits::{Team, TeamSet, WorldSet};
use crate::kripke::KripkeFrame;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftKind {
    /// `t R° s`: every world of `t` sees one of `s` and every world of `s`
    /// is seen from `t`.
    Lift,
    /// `t ⊇∘R° s`: some subteam of `t` is `R°`-related to `s`.
    SupersetLift,
}

/// A relation on teams, tabulated row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedRelation {
    pub kind: LiftKind,
    rows: Vec<TeamSet>,
}

impl LiftedRelation {
    pub fn n_worlds(&self) -> usize {
        self.rows[0].n_worlds()
    }

    pub fn related(&self, t: Team, s: Team) -> bool {
        self.rows[t.code()].contains_team(s)
    }

    /// All `s` with `t` related to `s`.
    pub fn row(&self, t: Team) -> &TeamSet {
        &self.rows[t.code()]
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.rows.len()).all(|t| self.rows[t].contains(t))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.rows.len()).all(|t| {
            self.rows[t]
                .iter()
                .all(|s| self.rows[s].is_subset(&self.rows[t]))
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.rows.len()).all(|t| {
            self.rows[t]
                .iter()
                .all(|s| s == t || !self.rows[s].contains(t))
        })
    }
}

/// The lifted relation `R°` on teams.
pub fn lift_relation(f: &KripkeFrame) -> Result<LiftedRelation, TeamError> {
    check_cap(f.len())?;
    let n = f.len();
    let rows = (0..1usize << n)
        .map(|tc| {
            let t = WorldSet(tc as u64);
            TeamSet::from_fn(n, |s| {
                t.iter().all(|w| f.successors(w).intersects(s))
                    && s.iter().all(|v| f.predecessors(v).intersects(t))
            })
        })
        .collect();
    Ok(LiftedRelation {
        kind: LiftKind::Lift,
        rows,
    })
}

/// The composition `⊇∘R°`, computed from the `R°` table.
pub fn compose_superset_lift(f: &KripkeFrame) -> Result<LiftedRelation, TeamError> {
    let lift = lift_relation(f)?;
    let n = f.len();
    let rows = (0..1usize << n)
        .map(|tc| {
            WorldSet(tc as u64)
                .subsets()
                .fold(TeamSet::empty(n), |acc, r| acc.union(lift.row(r)))
        })
        .collect();
    Ok(LiftedRelation {
        kind: LiftKind::SupersetLift,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_team_lifts_only_to_itself() {
        let f = KripkeFrame::from_order(3, &[(0, 1), (0, 2)]).unwrap();
        let l = lift_relation(&f).unwrap();
        for s in 0..8u64 {
            assert_eq!(l.related(WorldSet::EMPTY, WorldSet(s)), s == 0);
        }
        for t in 0..8u64 {
            let t = WorldSet(t);
            assert!(l.related(t, f.image(t)));
        }
    }

    #[test]
    fn identity_frame_lift_is_equality() {
        let f = KripkeFrame::discrete(3);
        let l = lift_relation(&f).unwrap();
        for t in 0..8u64 {
            for s in 0..8u64 {
                assert_eq!(l.related(WorldSet(t), WorldSet(s)), t == s);
            }
        }
    }

    #[test]
    fn superset_lift_is_image_inclusion() {
        let f = KripkeFrame::from_order(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let c = compose_superset_lift(&f).unwrap();
        assert!(c.is_reflexive() && c.is_transitive());
        for t in 0..16u64 {
            for s in 0..16u64 {
                let (t, s) = (WorldSet(t), WorldSet(s));
                assert_eq!(c.related(t, s), s.is_subset(f.image(t)));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = KripkeFrame::discrete(13);
        assert!(matches!(lift_relation(&f), Err(TeamError::CapExceeded { .. })));
    }
}
