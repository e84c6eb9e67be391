//! Exact-diagram constraint solver: a commuting diagram of known groups
//! and maps with exactness assertions and a single unknown node is
//! reduced to short exact and quotient constraints around the unknown,
//! then solved by extension enumeration and structural filtering.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::FgAbelianGroup;
use crate::hom::GroupHom;
use crate::homalg::{extension_middles_bounded, ExtensionClass, DEFAULT_ENUMERATION_BOUND};
use crate::Int;

#[derive(Clone)]
pub struct Edge {
    pub from: String,
    pub to: String,
    /// Present for known maps between known nodes; edges touching the
    /// unknown are existential and carry no matrix.
    pub matrix: Option<crate::IntMatrix>,
}

#[derive(Clone)]
pub struct DiagramSpec {
    /// `None` marks the single unknown node.
    pub nodes: BTreeMap<String, Option<FgAbelianGroup>>,
    pub edges: Vec<Edge>,
    /// Node paths asserted exact at every interior node.
    pub exact_paths: Vec<Vec<String>>,
    /// Extra markers: the unknown is a quotient of these known nodes.
    pub quotient_of: Vec<String>,
    /// Extra marker: the exponent of the unknown divides this.
    pub exponent_divides: Option<Int>,
    /// Enumeration bound handed to the extension search.
    pub enumeration_bound: u64,
}

impl DiagramSpec {
    pub fn new(nodes: BTreeMap<String, Option<FgAbelianGroup>>) -> Self {
        Self {
            nodes,
            edges: Vec::new(),
            exact_paths: Vec::new(),
            quotient_of: Vec::new(),
            exponent_divides: None,
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
        }
    }

    pub fn unknown_id(&self) -> Result<&str> {
        let mut found = None;
        for (id, g) in &self.nodes {
            if g.is_none() {
                if found.is_some() {
                    return Err(Error::InvalidDiagram("more than one unknown node".into()));
                }
                found = Some(id.as_str());
            }
        }
        found.ok_or_else(|| Error::InvalidDiagram("no unknown node".into()))
    }

    fn group(&self, id: &str) -> Result<Option<&FgAbelianGroup>> {
        self.nodes
            .get(id)
            .map(Option::as_ref)
            .ok_or_else(|| Error::InvalidDiagram(format!("unknown node id `{id}`")))
    }

    /// The map a -> b when determined: an explicit edge matrix, or the
    /// zero map when either endpoint is trivial.
    fn resolve_map(&self, a: &str, b: &str) -> Result<Option<GroupHom>> {
        let (Some(ga), Some(gb)) = (self.group(a)?, self.group(b)?) else {
            return Ok(None);
        };
        for e in &self.edges {
            if e.from == a && e.to == b {
                if let Some(m) = &e.matrix {
                    return Ok(Some(GroupHom::new(ga.clone(), gb.clone(), m.clone())?));
                }
            }
        }
        if ga.is_trivial() || gb.is_trivial() {
            return Ok(Some(GroupHom::zero(ga, gb)));
        }
        Ok(None)
    }

    /// Structural checks: single unknown, known maps well-defined,
    /// known-only squares commute, fully-known exact paths really exact.
    pub fn validate(&self) -> Result<()> {
        let unknown = self.unknown_id()?.to_string();
        let mut known_homs: Vec<(String, String, GroupHom)> = Vec::new();
        for e in &self.edges {
            let from = self.group(&e.from)?;
            let to = self.group(&e.to)?;
            match (&e.matrix, from, to) {
                (Some(m), Some(ga), Some(gb)) => {
                    let hom = GroupHom::new(ga.clone(), gb.clone(), m.clone())?;
                    known_homs.push((e.from.clone(), e.to.clone(), hom));
                }
                (Some(_), _, _) => {
                    return Err(Error::InvalidDiagram(format!(
                        "edge {} -> {} touches the unknown but carries a matrix",
                        e.from, e.to
                    )));
                }
                (None, Some(ga), Some(gb)) => {
                    if !ga.is_trivial() && !gb.is_trivial() {
                        return Err(Error::InvalidDiagram(format!(
                            "edge {} -> {} joins known nodes but has no matrix",
                            e.from, e.to
                        )));
                    }
                }
                (None, _, _) => {}
            }
        }
        // commuting squares over known maps
        for (a_from, a_to, a) in &known_homs {
            for (b_from, b_to, b) in &known_homs {
                if b_from != a_to {
                    continue;
                }
                for (c_from, c_to, c) in &known_homs {
                    if c_from != a_from || (c_from, c_to) == (a_from, a_to) {
                        continue;
                    }
                    for (d_from, d_to, d) in &known_homs {
                        if d_from != c_to || d_to != b_to {
                            continue;
                        }
                        if b.compose(a) != d.compose(c) {
                            return Err(Error::InvalidDiagram(format!(
                                "square {a_from} -> {a_to} -> {b_to} vs {c_from} -> {c_to} -> {d_to} does not commute"
                            )));
                        }
                    }
                }
            }
        }
        // fully-known exact paths must actually be exact
        for (pi, path) in self.exact_paths.iter().enumerate() {
            if path.contains(&unknown) {
                continue;
            }
            let mut maps = Vec::new();
            let mut complete = true;
            for w in path.windows(2) {
                match self.resolve_map(&w[0], &w[1])? {
                    Some(h) => maps.push(h),
                    None => {
                        complete = false;
                        break;
                    }
                }
            }
            if !complete {
                continue;
            }
            for k in 1..path.len() - 1 {
                if !crate::hom::exact_at(&maps[k - 1], &maps[k]) {
                    return Err(Error::InvalidDiagram(format!(
                        "known path {pi} fails exactness at `{}`",
                        path[k]
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Constraint {
    /// The unknown X sits in 0 -> sub -> X -> quotient -> 0.
    ShortExact {
        sub: FgAbelianGroup,
        quotient: FgAbelianGroup,
    },
    /// Some known group surjects onto the unknown.
    QuotientOf { of: FgAbelianGroup },
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::ShortExact { sub, quotient } => {
                write!(f, "0 -> {sub} -> X -> {quotient} -> 0")
            }
            Constraint::QuotientOf { of } => write!(f, "X is a quotient of {of}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub constraints: Vec<Constraint>,
    /// Paths through the unknown that could not be reduced, with the
    /// reason.
    pub unreduced: Vec<String>,
}

/// Reduce every exact path through the unknown to a short exact or
/// quotient constraint, using kernels and cokernels of the known maps.
pub fn normalize(spec: &DiagramSpec) -> Result<Normalized> {
    spec.validate()?;
    let unknown = spec.unknown_id()?.to_string();
    let mut constraints = Vec::new();
    let mut unreduced = Vec::new();

    for (pi, path) in spec.exact_paths.iter().enumerate() {
        let positions: Vec<usize> = path
            .iter()
            .enumerate()
            .filter(|(_, id)| **id == unknown)
            .map(|(i, _)| i)
            .collect();
        if positions.is_empty() {
            continue;
        }
        if positions.len() > 1 {
            unreduced.push(format!("path {pi}: unknown appears more than once"));
            continue;
        }
        let i = positions[0];
        if i == 0 || i == path.len() - 1 {
            unreduced.push(format!(
                "path {pi}: unknown sits at an endpoint, no exactness constrains it"
            ));
            continue;
        }

        let pred = spec
            .group(&path[i - 1])?
            .expect("neighbor of the unique unknown is known")
            .clone();
        let succ = spec
            .group(&path[i + 1])?
            .expect("neighbor of the unique unknown is known")
            .clone();

        // incoming subgroup: pred modulo the image of the previous map
        let sub: Option<FgAbelianGroup> = if pred.is_trivial() {
            Some(FgAbelianGroup::trivial())
        } else if i >= 2 {
            spec.resolve_map(&path[i - 2], &path[i - 1])?
                .map(|m| m.cokernel().0)
        } else {
            None
        };

        if succ.is_trivial() {
            // exactness at X forces pred -> X surjective
            match sub {
                Some(sub) => constraints.push(Constraint::ShortExact {
                    sub,
                    quotient: FgAbelianGroup::trivial(),
                }),
                None => constraints.push(Constraint::QuotientOf { of: pred }),
            }
            continue;
        }

        // outgoing quotient: kernel of the next known map
        let quotient: Option<FgAbelianGroup> = if i + 2 < path.len() {
            spec.resolve_map(&path[i + 1], &path[i + 2])?
                .map(|m| m.kernel().0)
        } else {
            None
        };

        match (sub, quotient) {
            (Some(sub), Some(quotient)) => {
                constraints.push(Constraint::ShortExact { sub, quotient });
            }
            (None, _) => unreduced.push(format!(
                "path {pi}: the map into `{}` is not determined",
                path[i - 1]
            )),
            (_, None) => unreduced.push(format!(
                "path {pi}: the map out of `{}` is not determined",
                path[i + 1]
            )),
        }
    }

    for id in &spec.quotient_of {
        let g = spec
            .group(id)?
            .ok_or_else(|| {
                Error::InvalidDiagram(format!("quotient-of marker `{id}` names the unknown"))
            })?
            .clone();
        constraints.push(Constraint::QuotientOf { of: g });
    }

    Ok(Normalized {
        constraints,
        unreduced,
    })
}

#[derive(Clone)]
pub struct SolvedClass {
    pub group: FgAbelianGroup,
    /// One witnessing extension per short exact constraint, in
    /// constraint order.
    pub witnesses: Vec<ExtensionClass>,
}

pub struct SolveOutcome {
    pub normalized: Normalized,
    /// Surviving isomorphism classes, sorted by canonical form. Empty
    /// means the constraint system is inconsistent.
    pub classes: Vec<SolvedClass>,
}

impl SolveOutcome {
    pub fn is_inconsistent(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn unique_class(&self) -> Option<&SolvedClass> {
        if self.classes.len() == 1 {
            Some(&self.classes[0])
        } else {
            None
        }
    }
}

/// Intersect the candidate middle sets of all short exact constraints,
/// then filter by quotient and exponent constraints. Every surviving
/// class is re-verified against each constraint independently.
pub fn solve(spec: &DiagramSpec) -> Result<SolveOutcome> {
    let normalized = normalize(spec)?;
    let ses: Vec<(&FgAbelianGroup, &FgAbelianGroup)> = normalized
        .constraints
        .iter()
        .filter_map(|c| match c {
            Constraint::ShortExact { sub, quotient } => Some((sub, quotient)),
            Constraint::QuotientOf { .. } => None,
        })
        .collect();
    if ses.is_empty() {
        return Err(Error::NoCandidateConstraint);
    }

    let mut survivors: Option<BTreeMap<(usize, Vec<Int>), SolvedClass>> = None;
    for (sub, quotient) in &ses {
        let middles = extension_middles_bounded(quotient, sub, spec.enumeration_bound)?;
        let mut this: BTreeMap<(usize, Vec<Int>), ExtensionClass> = BTreeMap::new();
        for (group, class) in middles {
            this.insert(group.canonical_key(), class);
        }
        survivors = Some(match survivors {
            None => this
                .into_iter()
                .map(|(k, class)| {
                    let group = class.middle.clone();
                    (
                        k,
                        SolvedClass {
                            group: FgAbelianGroup::with_torsion(
                                group.rank(),
                                group.invariant_factors(),
                            ),
                            witnesses: vec![class],
                        },
                    )
                })
                .collect(),
            Some(mut prev) => {
                let mut next = BTreeMap::new();
                for (k, class) in this {
                    if let Some(mut sc) = prev.remove(&k) {
                        sc.witnesses.push(class);
                        next.insert(k, sc);
                    }
                }
                next
            }
        });
    }
    let mut classes: Vec<SolvedClass> = survivors.unwrap().into_values().collect();

    for c in &normalized.constraints {
        if let Constraint::QuotientOf { of } = c {
            classes.retain(|sc| of.surjects_onto(&sc.group));
        }
    }
    if let Some(bound) = &spec.exponent_divides {
        classes.retain(|sc| match sc.group.exponent() {
            Some(e) => bound.is_multiple_of(&e),
            None => false,
        });
    }

    // independent re-verification of every surviving witness
    for sc in &classes {
        for w in &sc.witnesses {
            assert!(
                w.is_exact(),
                "solver kept a witness failing the exactness re-check"
            );
            assert!(
                w.middle.is_isomorphic(&sc.group),
                "solver kept a witness with the wrong middle"
            );
        }
    }

    Ok(SolveOutcome {
        normalized,
        classes,
    })
}
