//! Algebraic decision procedures on `(G, T0, T1)` alone.
//!
//! Three layers:
//!
//! 1. [`strong_connectivity_criterion`] — `BD(G, T0, T1)` is strongly
//!    connected iff both connection sets are nonempty and `⟨T1⁻¹·T0⟩ = G`.
//! 2. [`predict_connectivities`] — strongly connected Bi-Cayley digraphs are
//!    maximally connected: `κ = λ = δ = min(|T0|, |T1|)`.
//! 3. [`find_super_lambda_witness`] — when the digraph is strongly connected
//!    and neither a directed nor a symmetric cycle, it fails to be super-λ
//!    exactly when a subgroup/coset witness exists for one of five
//!    conditions. The witness directly names a strict arc fragment
//!    `A = H×{0} ∪ (t0·H)×{1}` whose boundary attains λ.
//!
//! Every containment in the conditions is evaluated non-strictly by default;
//! [`WitnessSearchOptions::strict_subsets`] switches the clauses that could
//! be read as proper containment to proper-subset checks for comparison runs.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::digraph::{build_bicayley, BiCayleySpec, Digraph};
use crate::error::{Error, Result};
use crate::group::{ElementSet, Subgroup};

/// `|T0| ≥ 1`, `|T1| ≥ 1` and `⟨T1⁻¹·T0⟩ = G`.
pub fn strong_connectivity_criterion(spec: &BiCayleySpec) -> bool {
    if spec.t0.is_empty() || spec.t1.is_empty() {
        return false;
    }
    let g = &spec.group;
    let seed = g
        .product_set(&g.inverse_set(&spec.t1).expect("validated set"), &spec.t0)
        .expect("validated sets");
    let generated = g.generated_subgroup(&seed).expect("validated set");
    generated.len() == g.order()
}

/// `(κ, λ, δ)` for a strongly connected instance, `None` otherwise.
/// All three equal `min(|T0|, |T1|)`.
pub fn predict_connectivities(spec: &BiCayleySpec) -> Option<(usize, usize, usize)> {
    if strong_connectivity_criterion(spec) {
        let d = spec.min_degree();
        Some((d, d, d))
    } else {
        None
    }
}

/// Why the super-λ characterization does not apply to an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeExclusion {
    None,
    DirectedCycle,
    SymmetricCycle,
}

impl fmt::Display for ShapeExclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeExclusion::None => "none",
            ShapeExclusion::DirectedCycle => "directed-cycle",
            ShapeExclusion::SymmetricCycle => "symmetric-cycle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplicabilityVerdict {
    pub strongly_connected: bool,
    pub shape_exclusion: ShapeExclusion,
    pub theorem_applicable: bool,
}

/// Gate for the super-λ characterization: strongly connected and neither a
/// directed cycle nor a symmetric cycle.
pub fn applicability(spec: &BiCayleySpec) -> ApplicabilityVerdict {
    applicability_of(spec, &build_bicayley(spec))
}

/// Same as [`applicability`] without rebuilding an already-built digraph.
pub fn applicability_of(spec: &BiCayleySpec, x: &Digraph) -> ApplicabilityVerdict {
    let strongly_connected = strong_connectivity_criterion(spec);
    let shape_exclusion = if !strongly_connected {
        ShapeExclusion::None
    } else if x.is_directed_cycle() {
        ShapeExclusion::DirectedCycle
    } else if x.is_symmetric_cycle() {
        ShapeExclusion::SymmetricCycle
    } else {
        ShapeExclusion::None
    };
    ApplicabilityVerdict {
        strongly_connected,
        shape_exclusion,
        theorem_applicable: strongly_connected && shape_exclusion == ShapeExclusion::None,
    }
}

/// The five witness conditions, named by where the superatom's boundary
/// surplus sits: on the `T0` side (one or two excluded elements), on the
/// `T1` side (one or two), or one on each side. Serialized tags follow the
/// report format: `1a`, `1b`, `2a`, `2b`, `3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessCondition {
    #[serde(rename = "1a")]
    T0SurplusOne,
    #[serde(rename = "1b")]
    T0SurplusTwo,
    #[serde(rename = "2a")]
    T1SurplusOne,
    #[serde(rename = "2b")]
    T1SurplusTwo,
    #[serde(rename = "3")]
    MixedSurplus,
}

impl WitnessCondition {
    pub fn tag(&self) -> &'static str {
        match self {
            WitnessCondition::T0SurplusOne => "1a",
            WitnessCondition::T0SurplusTwo => "1b",
            WitnessCondition::T1SurplusOne => "2a",
            WitnessCondition::T1SurplusTwo => "2b",
            WitnessCondition::MixedSurplus => "3",
        }
    }
}

impl fmt::Display for WitnessCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A constructive certificate that an instance is not super-λ: the subgroup
/// `H`, the coset representative `t0`, the excluded connection elements, and
/// the strict fragment `H×{0} ∪ (t0·H)×{1}` they predict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperLambdaWitness {
    pub condition: WitnessCondition,
    #[serde(rename = "H")]
    pub subgroup: ElementSet,
    pub t0: usize,
    #[serde(rename = "excluded_T0")]
    pub excluded_t0: Vec<usize>,
    #[serde(rename = "excluded_T1")]
    pub excluded_t1: Vec<usize>,
    pub predicted_superatom: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct WitnessSearchOptions {
    /// Evaluate the containments that allow a proper-subset reading as
    /// proper subsets. Off by default; the oracle-equivalence suite is the
    /// arbiter of which reading matches brute force.
    pub strict_subsets: bool,
}

struct ConditionContext<'a> {
    spec: &'a BiCayleySpec,
    h: &'a Subgroup,
    strict: bool,
}

impl ConditionContext<'_> {
    fn g(&self) -> &Arc<crate::group::FiniteGroup> {
        &self.spec.group
    }

    /// `{x⁻¹·t : t ∈ set}` for a single left factor.
    fn left_inv_times(&self, x: usize, set: &ElementSet) -> ElementSet {
        let g = self.g();
        ElementSet::new(set.iter().map(|t| g.mul(g.inv(x), t)))
    }

    /// `{t⁻¹·x : t ∈ set}` for a single right factor.
    fn inv_set_times(&self, set: &ElementSet, x: usize) -> ElementSet {
        let g = self.g();
        ElementSet::new(set.iter().map(|t| g.mul(g.inv(t), x)))
    }

    /// Containment in `H`; `strict_clause` marks clauses that become
    /// proper-subset checks in strict mode.
    fn contained(&self, set: &ElementSet, strict_clause: bool) -> bool {
        let inside = set.iter().all(|x| self.h.contains(x));
        if inside && strict_clause && self.strict {
            set.len() < self.h.len()
        } else {
            inside
        }
    }

    fn outside(&self, x: usize) -> bool {
        !self.h.contains(x)
    }
}

fn predicted_superatom(spec: &BiCayleySpec, h: &Subgroup, t0: usize) -> Vec<usize> {
    let g = &spec.group;
    let n = g.order();
    let mut vertices: Vec<usize> = h.members().to_vec();
    vertices.extend(h.members().iter().map(|&x| n + g.mul(t0, x)));
    vertices.sort_unstable();
    vertices
}

/// Search for a super-λ failure witness in deterministic order: subgroups of
/// size δ first, then (for even δ) subgroups of size δ/2, each list ordered
/// lexicographically; within a subgroup the conditions are tried in tag
/// order with `t0` ascending and excluded elements ascending. Returns the
/// first witness found, or `None` when no condition is satisfiable.
///
/// Errors with a domain error when the instance is outside the
/// characterization's hypotheses (not strongly connected, or cycle-shaped).
pub fn find_super_lambda_witness(
    spec: &BiCayleySpec,
    options: WitnessSearchOptions,
) -> Result<Option<SuperLambdaWitness>> {
    let verdict = applicability(spec);
    if !verdict.theorem_applicable {
        return Err(Error::Domain(format!(
            "super-λ characterization does not apply: strongly_connected={}, shape_exclusion={}",
            verdict.strongly_connected, verdict.shape_exclusion
        )));
    }
    let delta = spec.min_degree();
    let subgroups = spec.group.all_subgroups()?;
    let t0s: Vec<usize> = spec.t0.iter().collect();
    let t1s: Vec<usize> = spec.t1.iter().collect();

    let half = delta.is_multiple_of(2).then_some(delta / 2);
    let passes: Vec<(usize, &[WitnessCondition])> = {
        use WitnessCondition::*;
        let mut p: Vec<(usize, &[WitnessCondition])> = vec![(delta, &[T0SurplusOne, T1SurplusOne])];
        if let Some(h) = half {
            p.push((h, &[T0SurplusTwo, T1SurplusTwo, MixedSurplus]));
        }
        p
    };

    for (size, conditions) in passes {
        for h in subgroups.iter().filter(|h| h.len() == size) {
            for &condition in conditions {
                let ctx = ConditionContext {
                    spec,
                    h,
                    strict: options.strict_subsets,
                };
                if let Some(witness) = try_condition(&ctx, condition, &t0s, &t1s) {
                    return Ok(Some(witness));
                }
            }
        }
    }
    Ok(None)
}

fn try_condition(
    ctx: &ConditionContext<'_>,
    condition: WitnessCondition,
    t0s: &[usize],
    t1s: &[usize],
) -> Option<SuperLambdaWitness> {
    let spec = ctx.spec;
    let h = ctx.h;
    let make = |t0: usize, ex0: Vec<usize>, ex1: Vec<usize>| SuperLambdaWitness {
        condition,
        subgroup: h.carrier().clone(),
        t0,
        excluded_t0: ex0,
        excluded_t1: ex1,
        predicted_superatom: predicted_superatom(spec, h, t0),
    };

    match condition {
        // T1⁻¹·t0 ⊆ H, t0⁻¹·(T0 ∖ {t0'}) ⊆ H, t0⁻¹·t0' ∉ H
        WitnessCondition::T0SurplusOne => {
            for &t0 in t0s {
                if !ctx.contained(&ctx.inv_set_times(&spec.t1, t0), false) {
                    continue;
                }
                for &ex in t0s.iter().filter(|&&ex| ex != t0) {
                    if ctx.contained(&ctx.left_inv_times(t0, &spec.t0.without(&[ex])), true)
                        && ctx.outside(spec.group.mul(spec.group.inv(t0), ex))
                    {
                        return Some(make(t0, vec![ex], vec![]));
                    }
                }
            }
        }
        // |H| = δ/2 variant with two excluded elements on the T0 side
        WitnessCondition::T0SurplusTwo => {
            for &t0 in t0s {
                if !ctx.contained(&ctx.inv_set_times(&spec.t1, t0), false) {
                    continue;
                }
                let others: Vec<usize> = t0s.iter().copied().filter(|&x| x != t0).collect();
                for (i, &ex1) in others.iter().enumerate() {
                    for &ex2 in &others[i + 1..] {
                        let rest = spec.t0.without(&[ex1, ex2]);
                        if ctx.contained(&ctx.left_inv_times(t0, &rest), true)
                            && ctx.outside(spec.group.mul(spec.group.inv(t0), ex1))
                            && ctx.outside(spec.group.mul(spec.group.inv(t0), ex2))
                        {
                            return Some(make(t0, vec![ex1, ex2], vec![]));
                        }
                    }
                }
            }
        }
        // t0⁻¹·T0 ⊆ H, (T1 ∖ {t1'})⁻¹·t0 ⊆ H, t1'⁻¹·t0 ∉ H
        WitnessCondition::T1SurplusOne => {
            for &t0 in t0s {
                if !ctx.contained(&ctx.left_inv_times(t0, &spec.t0), true) {
                    continue;
                }
                for &ex in t1s {
                    if ctx.contained(&ctx.inv_set_times(&spec.t1.without(&[ex]), t0), true)
                        && ctx.outside(spec.group.mul(spec.group.inv(ex), t0))
                    {
                        return Some(make(t0, vec![], vec![ex]));
                    }
                }
            }
        }
        // |H| = δ/2 variant with two excluded elements on the T1 side
        WitnessCondition::T1SurplusTwo => {
            for &t0 in t0s {
                if !ctx.contained(&ctx.left_inv_times(t0, &spec.t0), true) {
                    continue;
                }
                for (i, &ex1) in t1s.iter().enumerate() {
                    for &ex2 in &t1s[i + 1..] {
                        let rest = spec.t1.without(&[ex1, ex2]);
                        if ctx.contained(&ctx.inv_set_times(&rest, t0), true)
                            && ctx.outside(spec.group.mul(spec.group.inv(ex1), t0))
                            && ctx.outside(spec.group.mul(spec.group.inv(ex2), t0))
                        {
                            return Some(make(t0, vec![], vec![ex1, ex2]));
                        }
                    }
                }
            }
        }
        // |H| = δ/2, one excluded element on each side
        WitnessCondition::MixedSurplus => {
            for &t0 in t0s {
                for &ex0 in t0s.iter().filter(|&&ex| ex != t0) {
                    if !(ctx.contained(&ctx.left_inv_times(t0, &spec.t0.without(&[ex0])), true)
                        && ctx.outside(spec.group.mul(spec.group.inv(t0), ex0)))
                    {
                        continue;
                    }
                    for &ex1 in t1s {
                        if ctx.contained(&ctx.inv_set_times(&spec.t1.without(&[ex1]), t0), true)
                            && ctx.outside(spec.group.mul(spec.group.inv(ex1), t0))
                        {
                            return Some(make(t0, vec![ex0], vec![ex1]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// `true` iff no witness exists. Same domain restrictions as the search.
pub fn is_super_lambda_algebraic(
    spec: &BiCayleySpec,
    options: WitnessSearchOptions,
) -> Result<bool> {
    Ok(find_super_lambda_witness(spec, options)?.is_none())
}

/// Re-check a witness from first principles: the subgroup really is one of
/// the right size, every membership clause holds (non-strict reading), and
/// the predicted fragment is strict with boundary exactly δ in the built
/// digraph. `false` means the witness does not certify anything — callers
/// treat that as a property violation.
pub fn validate_witness(spec: &BiCayleySpec, witness: &SuperLambdaWitness) -> Result<bool> {
    let g = &spec.group;
    let h = match g.subgroup_from_set(&witness.subgroup) {
        Ok(h) => h,
        Err(_) => return Ok(false),
    };
    let delta = spec.min_degree();
    let expected_size = match witness.condition {
        WitnessCondition::T0SurplusOne | WitnessCondition::T1SurplusOne => Some(delta),
        _ => delta.is_multiple_of(2).then_some(delta / 2),
    };
    if expected_size != Some(h.len()) {
        return Ok(false);
    }
    if !spec.t0.contains(witness.t0)
        || !witness.excluded_t0.iter().all(|&x| spec.t0.contains(x))
        || !witness.excluded_t1.iter().all(|&x| spec.t1.contains(x))
    {
        return Ok(false);
    }

    let ctx = ConditionContext {
        spec,
        h: &h,
        strict: false,
    };
    let t0 = witness.t0;
    let clauses_hold = match witness.condition {
        WitnessCondition::T0SurplusOne => match witness.excluded_t0[..] {
            [ex] => {
                ex != t0
                    && ctx.contained(&ctx.inv_set_times(&spec.t1, t0), false)
                    && ctx.contained(&ctx.left_inv_times(t0, &spec.t0.without(&[ex])), false)
                    && ctx.outside(g.mul(g.inv(t0), ex))
            }
            _ => false,
        },
        WitnessCondition::T0SurplusTwo => match witness.excluded_t0[..] {
            [ex1, ex2] => {
                ex1 != ex2
                    && ex1 != t0
                    && ex2 != t0
                    && ctx.contained(&ctx.inv_set_times(&spec.t1, t0), false)
                    && ctx.contained(
                        &ctx.left_inv_times(t0, &spec.t0.without(&[ex1, ex2])),
                        false,
                    )
                    && ctx.outside(g.mul(g.inv(t0), ex1))
                    && ctx.outside(g.mul(g.inv(t0), ex2))
            }
            _ => false,
        },
        WitnessCondition::T1SurplusOne => match witness.excluded_t1[..] {
            [ex] => {
                ctx.contained(&ctx.left_inv_times(t0, &spec.t0), false)
                    && ctx.contained(&ctx.inv_set_times(&spec.t1.without(&[ex]), t0), false)
                    && ctx.outside(g.mul(g.inv(ex), t0))
            }
            _ => false,
        },
        WitnessCondition::T1SurplusTwo => match witness.excluded_t1[..] {
            [ex1, ex2] => {
                ex1 != ex2
                    && ctx.contained(&ctx.left_inv_times(t0, &spec.t0), false)
                    && ctx.contained(&ctx.inv_set_times(&spec.t1.without(&[ex1, ex2]), t0), false)
                    && ctx.outside(g.mul(g.inv(ex1), t0))
                    && ctx.outside(g.mul(g.inv(ex2), t0))
            }
            _ => false,
        },
        WitnessCondition::MixedSurplus => {
            match (&witness.excluded_t0[..], &witness.excluded_t1[..]) {
                ([ex0], [ex1]) => {
                    *ex0 != t0
                        && ctx.contained(&ctx.left_inv_times(t0, &spec.t0.without(&[*ex0])), false)
                        && ctx.outside(g.mul(g.inv(t0), *ex0))
                        && ctx.contained(&ctx.inv_set_times(&spec.t1.without(&[*ex1]), t0), false)
                        && ctx.outside(g.mul(g.inv(*ex1), t0))
                }
                _ => false,
            }
        }
    };
    if !clauses_hold {
        return Ok(false);
    }

    let fragment = predicted_superatom(spec, &h, t0);
    if fragment != witness.predicted_superatom {
        return Ok(false);
    }
    let x = build_bicayley(spec);
    let size = fragment.len();
    if size < 2 || size > x.vertex_count() - 2 {
        return Ok(false);
    }
    let boundary = crate::connectivity::arc_boundary_out(&x, &fragment)?.len();
    Ok(boundary == delta)
}
