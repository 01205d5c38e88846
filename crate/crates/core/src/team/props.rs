use super::{ExtentAlgebra, Extent, StandardSemantics, TeamError, TeamEvaluator};
use crate::bits::{Team, WorldSet};
use crate::formula::{formulas_up_to, Formula, Signature, Substitution};
use crate::kripke::{enumerate_frames, enumerate_models, KripkeFrame, KripkeModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    /// `t ⊨ φ` iff `{w} ⊨ φ` for every `w ∈ t`.
    Flat,
    /// Closed under subteams.
    Downward,
    /// Satisfied by the empty team.
    EmptyTeam,
    /// Closed under unions of teams.
    UnionClosed,
    /// Closed under `⊇∘R°`.
    Persistent,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Flat,
        Property::Downward,
        Property::EmptyTeam,
        Property::UnionClosed,
        Property::Persistent,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyWitness {
    Flat { team: Team },
    Downward { team: Team, sub: Team },
    EmptyTeam,
    UnionClosed { left: Team, right: Team },
    Persistent { team: Team, to: Team },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub property: Property,
    pub counterexample: Option<PropertyWitness>,
}

impl PropertyCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks a property of an extent over `m`, exhaustively.
pub fn check_extent_property(m: &KripkeModel, e: &Extent, which: Property) -> PropertyCheck {
    let n = m.len();
    let teams = || (0..1u64 << n).map(WorldSet);
    let counterexample = match which {
        Property::EmptyTeam => (!e.contains(0)).then_some(PropertyWitness::EmptyTeam),
        Property::Flat => teams()
            .find(|&t| e.contains_team(t) != t.iter().all(|w| e.contains_team(WorldSet::singleton(w))))
            .map(|team| PropertyWitness::Flat { team }),
        Property::Downward => e.teams().find_map(|team| {
            team.iter()
                .map(|w| team - WorldSet::singleton(w))
                .find(|&sub| !e.contains_team(sub))
                .map(|sub| PropertyWitness::Downward { team, sub })
        }),
        Property::UnionClosed => e.teams().find_map(|left| {
            e.teams()
                .find(|&right| !e.contains_team(left | right))
                .map(|right| PropertyWitness::UnionClosed { left, right })
        }),
        Property::Persistent => e.teams().find_map(|team| {
            m.frame()
                .image(team)
                .subsets()
                .find(|&to| !e.contains_team(to))
                .map(|to| PropertyWitness::Persistent { team, to })
        }),
    };
    PropertyCheck {
        property: which,
        counterexample,
    }
}

pub fn check_property(m: &KripkeModel, f: &Formula, which: Property) -> Result<PropertyCheck, TeamError> {
    let e = TeamEvaluator::new(m)?.extent(f)?;
    Ok(check_extent_property(m, &e, which))
}

/// Outcome of gluing two refuting models together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpReport {
    pub union_model: KripkeModel,
    pub union_team: Team,
    /// `t1 ∪ t2 ⊨ Δ` in the union.
    pub delta_holds: bool,
    /// `t1 ∪ t2 ⊭ φ \\/ ψ` in the union.
    pub disjunction_refuted: bool,
}

impl DpReport {
    pub fn confirmed(&self) -> bool {
        self.delta_holds && self.disjunction_refuted
    }
}

/// Given `t1 ⊨ Δ, t1 ⊭ φ` in `m1` and `t2 ⊨ Δ, t2 ⊭ ψ` in `m2`, evaluates
/// `Δ` and `φ \\/ ψ` at `t1 ∪ t2` in the disjoint union.
pub fn dp_disjoint_union_harness(
    m1: &KripkeModel,
    t1: Team,
    m2: &KripkeModel,
    t2: Team,
    delta: &[Formula],
    phi: &Formula,
    psi: &Formula,
) -> Result<DpReport, TeamError> {
    if !delta.iter().all(Formula::is_standard) {
        return Err(TeamError::NotStandard);
    }
    let mut e1 = TeamEvaluator::new(m1)?;
    let mut e2 = TeamEvaluator::new(m2)?;
    for d in delta {
        if !e1.eval(t1, d)? || !e2.eval(t2, d)? {
            return Err(TeamError::Precondition("a side does not satisfy the premises".into()));
        }
    }
    if e1.eval(t1, phi)? {
        return Err(TeamError::Precondition("first team satisfies the left disjunct".into()));
    }
    if e2.eval(t2, psi)? {
        return Err(TeamError::Precondition("second team satisfies the right disjunct".into()));
    }
    let union_model = m1.disjoint_union(m2)?;
    let union_team = t1 | WorldSet(t2.0 << m1.len());
    let mut eu = TeamEvaluator::new(&union_model)?;
    let mut delta_holds = true;
    for d in delta {
        delta_holds &= eu.eval(union_team, d)?;
    }
    let disjunction_refuted = !eu.eval(union_team, &Formula::gor(phi.clone(), psi.clone()))?;
    Ok(DpReport {
        union_model,
        union_team,
        delta_holds,
        disjunction_refuted,
    })
}

/// Frame classes for soundness checks.
#[derive(Clone, Copy)]
pub enum FramePredicate {
    All,
    /// `R` is the identity.
    Classical,
    /// Rooted frames.
    Rooted,
    /// Exactly one maximal point.
    UniqueTop,
    Custom(fn(&KripkeFrame) -> bool),
}

impl FramePredicate {
    pub fn accepts(&self, f: &KripkeFrame) -> bool {
        match self {
            FramePredicate::All => true,
            FramePredicate::Classical => f.is_discrete(),
            FramePredicate::Rooted => f.root().is_some(),
            FramePredicate::UniqueTop => f.endpoints().len() == 1,
            FramePredicate::Custom(p) => p(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessFailure {
    pub schema: usize,
    pub instance: Formula,
    pub model: KripkeModel,
    pub team: Team,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub frames_checked: usize,
    pub instances_checked: usize,
    pub failure: Option<SoundnessFailure>,
}

impl SoundnessReport {
    pub fn valid(&self) -> bool {
        self.failure.is_none()
    }
}

fn substitutions(atoms: &[crate::formula::Atom], images: &[Formula], sig: &Signature) -> Vec<Substitution> {
    let mut maps: Vec<Vec<(crate::formula::Atom, Formula)>> = vec![vec![]];
    for &a in atoms {
        maps = maps
            .into_iter()
            .flat_map(|m| {
                images.iter().map(move |img| {
                    let mut m = m.clone();
                    m.push((a, img.clone()));
                    m
                })
            })
            .collect();
    }
    maps.into_iter()
        .map(|m| Substitution::new(m, sig).expect("images come from the signature"))
        .collect()
}

/// Team validity of every standard instance of `schemas` on every frame of
/// at most `model_cap` points accepted by `predicate`. Substitution images
/// are the standard formulas over `sig` of depth at most `subst_depth`.
pub fn check_intermediate_soundness(
    schemas: &[Formula],
    sig: &Signature,
    predicate: FramePredicate,
    subst_depth: usize,
    model_cap: usize,
) -> Result<SoundnessReport, TeamError> {
    if !schemas.iter().all(Formula::is_standard) {
        return Err(TeamError::NotStandard);
    }
    super::check_cap(model_cap)?;
    let images = formulas_up_to(sig, subst_depth, true);
    let instances: Vec<(usize, Formula)> = schemas
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            substitutions(&s.atoms(), &images, sig)
                .into_iter()
                .map(move |sub| (i, sub.apply(s)))
        })
        .collect();
    let mut frames_checked = 0;
    let frames = enumerate_frames(model_cap, false)?;
    for frame in frames.iter().filter(|f| predicate.accepts(f)) {
        frames_checked += 1;
        let models = enumerate_models(frame.len(), sig, false)?
            .into_iter()
            .filter(|m| m.frame() == frame);
        for m in models {
            let sem = StandardSemantics::new(&m)?;
            for (i, inst) in &instances {
                let e = sem.extent(inst);
                if let Some(c) = (0..e.universe()).find(|&c| !e.contains(c)) {
                    return Ok(SoundnessReport {
                        frames_checked,
                        instances_checked: instances.len(),
                        failure: Some(SoundnessFailure {
                            schema: *i,
                            instance: inst.clone(),
                            model: m.clone(),
                            team: WorldSet(c as u64),
                        }),
                    });
                }
            }
        }
    }
    Ok(SoundnessReport {
        frames_checked,
        instances_checked: instances.len(),
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn sig1() -> Signature {
        Signature::standard(1)
    }

    #[test]
    fn global_disjunction_is_not_union_closed() {
        let sig = Signature::standard(2);
        let m = KripkeModel::new(
            KripkeFrame::discrete(2),
            sig.clone(),
            vec![WorldSet::singleton(0), WorldSet::singleton(1)],
        )
        .unwrap();
        let c = check_property(&m, &parse("p \\\\/ q", &sig).unwrap(), Property::UnionClosed).unwrap();
        assert_eq!(
            c.counterexample,
            Some(PropertyWitness::UnionClosed {
                left: WorldSet::singleton(0),
                right: WorldSet::singleton(1)
            })
        );
    }

    #[test]
    fn disjunction_property_harness() {
        let sig = Signature::standard(2);
        let m1 = KripkeModel::new(KripkeFrame::discrete(1), sig.clone(), vec![WorldSet::EMPTY, WorldSet::singleton(0)]).unwrap();
        let m2 = KripkeModel::new(KripkeFrame::discrete(1), sig.clone(), vec![WorldSet::singleton(0), WorldSet::EMPTY]).unwrap();
        let (p, q) = (Formula::atom(0), Formula::atom(1));
        let t = WorldSet::singleton(0);
        let r = dp_disjoint_union_harness(&m1, t, &m2, t, &[], &p, &q).unwrap();
        assert!(r.confirmed());
        let r = dp_disjoint_union_harness(&m1, t, &m2, t, &[Formula::lor(p.clone(), q.clone())], &p, &q).unwrap();
        assert!(r.confirmed());
        assert!(dp_disjoint_union_harness(&m1, t, &m2, t, &[], &q, &p).is_err());
    }

    #[test]
    fn kc_sound_on_unique_top_frames() {
        let s = sig1();
        let kc = parse("~p \\/ ~~p", &s).unwrap();
        let r = check_intermediate_soundness(&[kc], &s, FramePredicate::UniqueTop, 1, 3).unwrap();
        assert!(r.valid(), "{:?}", r.failure);
        assert!(r.frames_checked > 0);
    }

    #[test]
    fn dne_sound_on_classical_frames_only() {
        let s = sig1();
        let dne = parse("~~p -> p", &s).unwrap();
        let r = check_intermediate_soundness(std::slice::from_ref(&dne), &s, FramePredicate::Classical, 1, 3).unwrap();
        assert!(r.valid());
        let r = check_intermediate_soundness(&[dne], &s, FramePredicate::All, 1, 3).unwrap();
        let fail = r.failure.unwrap();
        assert_eq!(fail.model.frame(), &KripkeFrame::chain(2));
    }
}
