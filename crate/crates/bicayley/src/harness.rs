//! Batch sweeps over group catalogs and connection sets.
//!
//! Each instance runs a pipeline of cross-checks: the algebraic
//! strong-connectivity criterion against BFS, the predicted `κ = λ = δ`
//! against flow values, the algebraic super-λ decision against the
//! brute-force oracle, superatom structure, fragment algebra, and the
//! right-translation automorphisms. Mathematical disagreement is never an
//! exception — it is recorded on the instance as a falsification with full
//! reproduction data, and the sweep carries on. `run_sweep` fans instances
//! out across a worker pool (capped by the `BICAYLEY_WORKERS` environment
//! variable) and merges records in enumeration order, so sweep output is
//! deterministic for a fixed configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::connectivity::{
    arc_connectivity, check_fragment_algebra, sweep_positive_fragments, verify_superatom_structure,
    vertex_connectivity, AlgebraOutcome, ConnectivityReport, Fragment, FragmentKind, LambdaSweep,
    DEFAULT_ORACLE_THRESHOLD,
};
use crate::criteria::{
    applicability_of, find_super_lambda_witness, predict_connectivities, validate_witness,
    ApplicabilityVerdict, SuperLambdaWitness, WitnessSearchOptions,
};
use crate::digraph::{build_bicayley, is_arc_automorphism, right_translation, BiCayleySpec};
use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup};

/// Cap on fragment-algebra pairs examined per instance.
const ALGEBRA_PAIR_CAP: usize = 1_000;

/// Exhaustive sweeps above this group order are refused unless forced.
pub const EXHAUSTIVE_ORDER_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Exhaustive,
    Sampled,
}

impl FromStr for SweepMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SweepMode::Exhaustive),
            "sampled" => Ok(SweepMode::Sampled),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode {other:?} (expected exhaustive or sampled)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Connectivity,
    Superlambda,
    Automorphism,
    SuperatomStructure,
    FragmentAlgebra,
}

impl CheckKind {
    pub fn all() -> BTreeSet<CheckKind> {
        BTreeSet::from([
            CheckKind::Connectivity,
            CheckKind::Superlambda,
            CheckKind::Automorphism,
            CheckKind::SuperatomStructure,
            CheckKind::FragmentAlgebra,
        ])
    }

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Connectivity => "connectivity",
            CheckKind::Superlambda => "superlambda",
            CheckKind::Automorphism => "automorphism",
            CheckKind::SuperatomStructure => "superatom_structure",
            CheckKind::FragmentAlgebra => "fragment_algebra",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connectivity" => Ok(CheckKind::Connectivity),
            "superlambda" => Ok(CheckKind::Superlambda),
            "automorphism" => Ok(CheckKind::Automorphism),
            "superatom_structure" => Ok(CheckKind::SuperatomStructure),
            "fragment_algebra" => Ok(CheckKind::FragmentAlgebra),
            other => Err(Error::InvalidArgument(format!("unknown check {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub group_descriptors: Vec<String>,
    pub mode: SweepMode,
    pub sample_count: usize,
    pub rng_seed: u64,
    /// Exhaustive oracles run only when the digraph has at most this many
    /// vertices; larger instances get algebraic verdicts flagged unconfirmed.
    pub oracle_threshold: usize,
    pub output_dir: Option<PathBuf>,
    pub checks: BTreeSet<CheckKind>,
    pub strict_subsets: bool,
    pub force_exhaustive: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            group_descriptors: Vec::new(),
            mode: SweepMode::Exhaustive,
            sample_count: 100,
            rng_seed: 0,
            oracle_threshold: DEFAULT_ORACLE_THRESHOLD,
            output_dir: None,
            checks: CheckKind::all(),
            strict_subsets: false,
            force_exhaustive: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.mode == SweepMode::Sampled && self.sample_count == 0 {
            return Err(Error::InvalidArgument(
                "sampled mode needs sample_count >= 1".into(),
            ));
        }
        if self.oracle_threshold < 4 {
            return Err(Error::InvalidArgument(
                "oracle threshold must be >= 4".into(),
            ));
        }
        Ok(())
    }

    pub fn from_json_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidArgument(format!("bad config file: {e}")))
    }

    fn witness_options(&self) -> WitnessSearchOptions {
        WitnessSearchOptions {
            strict_subsets: self.strict_subsets,
        }
    }
}

/// splitmix64: tiny, seedable, and stable across platforms and builds, which
/// keeps seeded sweeps byte-reproducible.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform nonempty subset of `0..n` by rejection sampling.
    fn nonempty_mask(&mut self, n: usize) -> u64 {
        let full = (1u64 << n) - 1;
        loop {
            let mask = self.next_u64() & full;
            if mask != 0 {
                return mask;
            }
        }
    }
}

fn mask_set(mask: u64) -> ElementSet {
    ElementSet::new((0..64).filter(|&i| mask >> i & 1 == 1))
}

/// Expand the configured group catalog into concrete `(G, T0, T1)` specs.
/// Exhaustive mode yields all `(2^|G|-1)^2` nonempty pairs in ascending
/// bitmask order; sampled mode draws `sample_count` pairs per group from the
/// seeded generator (duplicates allowed).
pub fn enumerate_specs(config: &SweepConfig) -> Result<Vec<BiCayleySpec>> {
    config.validate()?;
    let mut rng = SplitMix64::new(config.rng_seed);
    let mut specs = Vec::new();
    for descriptor in &config.group_descriptors {
        let group = Arc::new(FiniteGroup::from_descriptor(descriptor)?);
        let n = group.order();
        if n > 62 {
            return Err(Error::ResourceLimit(format!(
                "connection-set enumeration supports order <= 62, got {n}"
            )));
        }
        match config.mode {
            SweepMode::Exhaustive => {
                if n > EXHAUSTIVE_ORDER_CAP && !config.force_exhaustive {
                    return Err(Error::ResourceLimit(format!(
                        "exhaustive sweep over order {n} means (2^{n}-1)^2 instances; \
                         pass force_exhaustive to insist"
                    )));
                }
                let full = (1u64 << n) - 1;
                for t0_mask in 1..=full {
                    for t1_mask in 1..=full {
                        specs.push(BiCayleySpec::new(
                            group.clone(),
                            mask_set(t0_mask),
                            mask_set(t1_mask),
                        )?);
                    }
                }
            }
            SweepMode::Sampled => {
                for _ in 0..config.sample_count {
                    let t0 = mask_set(rng.nonempty_mask(n));
                    let t1 = mask_set(rng.nonempty_mask(n));
                    specs.push(BiCayleySpec::new(group.clone(), t0, t1)?);
                }
            }
        }
    }
    Ok(specs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub construct_us: u64,
    pub connectivity_us: u64,
    pub algebraic_us: u64,
    pub oracle_us: u64,
    pub structure_us: u64,
}

/// Everything the pipeline learned about one instance. Falsifications mean
/// a mathematical cross-check failed; a clean sweep has none anywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub group_label: String,
    pub t0: Vec<usize>,
    pub t1: Vec<usize>,
    pub applicability: ApplicabilityVerdict,
    pub delta_plus: Option<usize>,
    pub delta_minus: Option<usize>,
    pub delta: Option<usize>,
    pub predicted_kappa: Option<usize>,
    pub predicted_lambda: Option<usize>,
    pub predicted_delta: Option<usize>,
    pub computed_kappa: Option<usize>,
    pub computed_lambda: Option<usize>,
    pub algebraic_super_lambda: Option<bool>,
    pub oracle_super_lambda: Option<bool>,
    pub oracle_confirmed: bool,
    pub witness: Option<SuperLambdaWitness>,
    pub report: Option<ConnectivityReport>,
    pub check_outcomes: Vec<CheckOutcome>,
    pub falsifications: Vec<String>,
    pub timings: PhaseTimings,
}

impl InstanceRecord {
    pub fn theorem_applicable(&self) -> bool {
        self.applicability.theorem_applicable
    }

    pub fn is_falsified(&self) -> bool {
        !self.falsifications.is_empty()
    }
}

struct Pipeline<'a> {
    spec: &'a BiCayleySpec,
    config: &'a SweepConfig,
    record: InstanceRecord,
    sweep: Option<LambdaSweep>,
}

impl<'a> Pipeline<'a> {
    fn enabled(&self, check: CheckKind) -> bool {
        self.config.checks.contains(&check)
    }

    fn skip(&mut self, check: CheckKind, reason: &str) {
        self.record.check_outcomes.push(CheckOutcome {
            check,
            status: CheckStatus::Skipped,
            detail: reason.to_string(),
        });
    }

    fn pass(&mut self, check: CheckKind, detail: String) {
        self.record.check_outcomes.push(CheckOutcome {
            check,
            status: CheckStatus::Passed,
            detail,
        });
    }

    fn fail(&mut self, check: CheckKind, detail: String) {
        self.record
            .falsifications
            .push(format!("{check}: {detail}"));
        self.record.check_outcomes.push(CheckOutcome {
            check,
            status: CheckStatus::Failed,
            detail,
        });
    }
}

/// Run the full check pipeline on one instance. Never panics on
/// mathematical disagreement; resource limits degrade individual checks to
/// skipped outcomes.
pub fn run_instance(spec: &BiCayleySpec, config: &SweepConfig) -> InstanceRecord {
    let started = Instant::now();
    let x = build_bicayley(spec);
    let (delta_plus, delta_minus, delta) = x.min_degrees();
    let verdict = applicability_of(spec, &x);

    let record = InstanceRecord {
        group_label: spec.group.label().to_string(),
        t0: spec.t0.members().to_vec(),
        t1: spec.t1.members().to_vec(),
        applicability: verdict,
        delta_plus: Some(delta_plus),
        delta_minus: Some(delta_minus),
        delta: Some(delta),
        predicted_kappa: None,
        predicted_lambda: None,
        predicted_delta: None,
        computed_kappa: None,
        computed_lambda: None,
        algebraic_super_lambda: None,
        oracle_super_lambda: None,
        oracle_confirmed: false,
        witness: None,
        report: None,
        check_outcomes: Vec::new(),
        falsifications: Vec::new(),
        timings: PhaseTimings::default(),
    };
    let mut p = Pipeline {
        spec,
        config,
        record,
        sweep: None,
    };

    // The criterion/BFS agreement is the pipeline's foundation; check it
    // unconditionally.
    if x.is_strongly_connected() != verdict.strongly_connected {
        p.record.falsifications.push(format!(
            "strong-connectivity criterion says {} but BFS says {} on {}",
            verdict.strongly_connected,
            !verdict.strongly_connected,
            spec.fingerprint()
        ));
    }
    p.record.timings.construct_us = started.elapsed().as_micros() as u64;

    let oracle_allowed = x.vertex_count() <= config.oracle_threshold;
    connectivity_phase(&mut p, &x, oracle_allowed);
    superlambda_phase(&mut p, &x, oracle_allowed);
    structure_phase(&mut p, &x);
    algebra_phase(&mut p, &x);
    automorphism_phase(&mut p, &x);
    build_report(&mut p);
    p.record
}

fn connectivity_phase(p: &mut Pipeline<'_>, x: &crate::digraph::Digraph, oracle_allowed: bool) {
    if !p.enabled(CheckKind::Connectivity) {
        p.skip(CheckKind::Connectivity, "check disabled");
        return;
    }
    if !p.record.applicability.strongly_connected {
        p.skip(CheckKind::Connectivity, "not strongly connected");
        return;
    }
    let t = Instant::now();
    let predicted = predict_connectivities(p.spec).expect("strongly connected");
    p.record.predicted_kappa = Some(predicted.0);
    p.record.predicted_lambda = Some(predicted.1);
    p.record.predicted_delta = Some(predicted.2);

    let kappa = vertex_connectivity(x);
    let lambda = arc_connectivity(x);
    match (kappa, lambda) {
        (Ok(kappa), Ok(lambda)) => {
            p.record.computed_kappa = Some(kappa);
            p.record.computed_lambda = Some(lambda);
            if (kappa, lambda) != (predicted.0, predicted.1) {
                p.fail(
                    CheckKind::Connectivity,
                    format!(
                        "predicted κ=λ={} but flow computed κ={kappa}, λ={lambda} on {}",
                        predicted.0,
                        p.spec.fingerprint()
                    ),
                );
            } else {
                let mut detail = format!("κ = λ = δ = {kappa}");
                if oracle_allowed {
                    match sweep_positive_fragments(x, p.config.oracle_threshold) {
                        Ok(sweep) => {
                            if sweep.lambda != lambda {
                                p.fail(
                                    CheckKind::Connectivity,
                                    format!(
                                        "flow λ={lambda} but subset oracle found {} on {}",
                                        sweep.lambda,
                                        p.spec.fingerprint()
                                    ),
                                );
                                p.record.timings.connectivity_us = t.elapsed().as_micros() as u64;
                                return;
                            }
                            detail.push_str(", oracle agrees");
                            p.sweep = Some(sweep);
                        }
                        Err(e) => detail.push_str(&format!(", oracle unavailable ({e})")),
                    }
                }
                p.pass(CheckKind::Connectivity, detail);
            }
        }
        (kappa, lambda) => {
            let e = kappa.err().or(lambda.err()).expect("one side failed");
            p.fail(
                CheckKind::Connectivity,
                format!("flow computation failed on a strongly connected instance: {e}"),
            );
        }
    }
    p.record.timings.connectivity_us = t.elapsed().as_micros() as u64;
}

fn superlambda_phase(p: &mut Pipeline<'_>, x: &crate::digraph::Digraph, oracle_allowed: bool) {
    if !p.enabled(CheckKind::Superlambda) {
        p.skip(CheckKind::Superlambda, "check disabled");
        return;
    }
    if !p.record.applicability.theorem_applicable {
        let reason = if p.record.applicability.strongly_connected {
            format!("excluded shape: {}", p.record.applicability.shape_exclusion)
        } else {
            "not strongly connected".to_string()
        };
        p.skip(CheckKind::Superlambda, &reason);
        return;
    }

    let t = Instant::now();
    let witness = match find_super_lambda_witness(p.spec, p.config.witness_options()) {
        Ok(w) => w,
        // resource limits (e.g. subgroup enumeration above its bound) degrade
        // the check to skipped; anything else is a genuine failure
        Err(Error::ResourceLimit(detail)) => {
            p.skip(CheckKind::Superlambda, &format!("resource limit: {detail}"));
            return;
        }
        Err(e) => {
            p.fail(
                CheckKind::Superlambda,
                format!("witness search failed: {e}"),
            );
            return;
        }
    };
    p.record.algebraic_super_lambda = Some(witness.is_none());
    if let Some(w) = &witness {
        match validate_witness(p.spec, w) {
            Ok(true) => {}
            Ok(false) => p.fail(
                CheckKind::Superlambda,
                format!(
                    "witness failed validation: {w:?} on {}",
                    p.spec.fingerprint()
                ),
            ),
            Err(e) => p.fail(
                CheckKind::Superlambda,
                format!("witness validation error: {e}"),
            ),
        }
    }
    p.record.witness = witness;
    p.record.timings.algebraic_us = t.elapsed().as_micros() as u64;

    if !oracle_allowed {
        p.pass(
            CheckKind::Superlambda,
            format!(
                "algebraic verdict super_λ={} unconfirmed (oracle threshold {})",
                p.record.algebraic_super_lambda.unwrap(),
                p.config.oracle_threshold
            ),
        );
        return;
    }
    let t = Instant::now();
    if p.sweep.is_none() {
        match sweep_positive_fragments(x, p.config.oracle_threshold) {
            Ok(sweep) => p.sweep = Some(sweep),
            Err(e) => {
                p.skip(CheckKind::Superlambda, &format!("oracle unavailable: {e}"));
                return;
            }
        }
    }
    let sweep = p.sweep.as_ref().expect("just populated");
    let oracle_verdict = sweep.strict_min_size.is_none();
    p.record.oracle_super_lambda = Some(oracle_verdict);
    p.record.oracle_confirmed = true;
    p.record.timings.oracle_us += t.elapsed().as_micros() as u64;

    let algebraic = p.record.algebraic_super_lambda.unwrap();
    if algebraic != oracle_verdict {
        p.fail(
            CheckKind::Superlambda,
            format!(
                "algebraic verdict super_λ={algebraic} but oracle says {oracle_verdict} on {}",
                p.spec.fingerprint()
            ),
        );
    } else {
        p.pass(
            CheckKind::Superlambda,
            format!("super_λ={algebraic}, oracle agrees"),
        );
    }
}

fn positive_superatoms(p: &Pipeline<'_>) -> Vec<Fragment> {
    match &p.sweep {
        Some(sweep) => sweep
            .superatoms()
            .into_iter()
            .map(|vertices| Fragment {
                vertices,
                kind: FragmentKind::Positive,
                boundary_size: sweep.lambda,
            })
            .collect(),
        None => Vec::new(),
    }
}

fn structure_phase(p: &mut Pipeline<'_>, x: &crate::digraph::Digraph) {
    if !p.enabled(CheckKind::SuperatomStructure) {
        p.skip(CheckKind::SuperatomStructure, "check disabled");
        return;
    }
    if !p.record.applicability.theorem_applicable {
        p.skip(
            CheckKind::SuperatomStructure,
            "characterization not applicable",
        );
        return;
    }
    if !p.record.oracle_confirmed {
        p.skip(CheckKind::SuperatomStructure, "oracle did not run");
        return;
    }
    if p.record.oracle_super_lambda == Some(true) {
        p.skip(
            CheckKind::SuperatomStructure,
            "super-λ instance has no superatoms",
        );
        return;
    }
    let t = Instant::now();
    let superatoms = positive_superatoms(p);
    let mut problems = Vec::new();
    for fragment in &superatoms {
        if let Err(e) = verify_superatom_structure(p.spec, x, fragment) {
            problems.push(e.to_string());
        }
    }
    // distinct positive superatoms must be pairwise disjoint and cover V
    let mut seen = vec![0usize; x.vertex_count()];
    for fragment in &superatoms {
        for &v in &fragment.vertices {
            seen[v] += 1;
        }
    }
    if seen.iter().any(|&c| c > 1) {
        problems.push("positive λ-superatoms overlap".to_string());
    }
    if seen.contains(&0) {
        problems.push("positive λ-superatoms do not cover the vertex set".to_string());
    }
    p.record.timings.structure_us += t.elapsed().as_micros() as u64;
    if problems.is_empty() {
        p.pass(
            CheckKind::SuperatomStructure,
            format!(
                "{} superatom(s) verified, pairwise disjoint, covering",
                superatoms.len()
            ),
        );
    } else {
        p.fail(
            CheckKind::SuperatomStructure,
            format!("{} on {}", problems.join("; "), p.spec.fingerprint()),
        );
    }
}

fn algebra_phase(p: &mut Pipeline<'_>, x: &crate::digraph::Digraph) {
    if !p.enabled(CheckKind::FragmentAlgebra) {
        p.skip(CheckKind::FragmentAlgebra, "check disabled");
        return;
    }
    let Some(sweep) = &p.sweep else {
        p.skip(CheckKind::FragmentAlgebra, "oracle did not run");
        return;
    };
    let t = Instant::now();
    let lambda = sweep.lambda;
    let fragments: Vec<Fragment> = sweep
        .fragments()
        .into_iter()
        .map(|vertices| Fragment {
            vertices,
            kind: FragmentKind::Positive,
            boundary_size: lambda,
        })
        .collect();
    let mut checked = 0usize;
    let mut violations = Vec::new();
    'outer: for i in 0..fragments.len() {
        for j in (i + 1)..fragments.len() {
            if checked >= ALGEBRA_PAIR_CAP {
                break 'outer;
            }
            match check_fragment_algebra(x, &fragments[i], &fragments[j]) {
                Ok(AlgebraOutcome::Inapplicable) => {}
                Ok(AlgebraOutcome::Holds) => checked += 1,
                Ok(AlgebraOutcome::Violated) => {
                    checked += 1;
                    violations.push(format!(
                        "{:?} and {:?}",
                        fragments[i].vertices, fragments[j].vertices
                    ));
                }
                Err(e) => violations.push(format!("check error: {e}")),
            }
        }
    }
    p.record.timings.structure_us += t.elapsed().as_micros() as u64;
    if violations.is_empty() {
        p.pass(
            CheckKind::FragmentAlgebra,
            format!("{checked} applicable pair(s) closed"),
        );
    } else {
        p.fail(
            CheckKind::FragmentAlgebra,
            format!(
                "fragment algebra violated for {} pair(s): {} on {}",
                violations.len(),
                violations.join(", "),
                p.spec.fingerprint()
            ),
        );
    }
}

fn automorphism_phase(p: &mut Pipeline<'_>, x: &crate::digraph::Digraph) {
    if !p.enabled(CheckKind::Automorphism) {
        p.skip(CheckKind::Automorphism, "check disabled");
        return;
    }
    let g = &p.spec.group;
    let n = g.order();
    let mut problems = Vec::new();
    for a in 0..n {
        let perm = match right_translation(p.spec, a) {
            Ok(perm) => perm,
            Err(e) => {
                problems.push(format!("translation by {a} failed: {e}"));
                continue;
            }
        };
        match is_arc_automorphism(x, &perm) {
            Ok(true) => {}
            Ok(false) => problems.push(format!("right translation by {a} is not an automorphism")),
            Err(e) => problems.push(format!("automorphism check errored for {a}: {e}")),
        }
    }
    // fiber transitivity: translation by g1⁻¹·g2 carries (g1,i) to (g2,i)
    'outer: for g1 in 0..n {
        for g2 in 0..n {
            let a = g.mul(g.inv(g1), g2);
            let perm = right_translation(p.spec, a).expect("valid element");
            if perm[g1] != g2 || perm[n + g1] != n + g2 {
                problems.push(format!(
                    "translation by {g1}⁻¹·{g2} does not carry ({g1},i) to ({g2},i)"
                ));
                break 'outer;
            }
        }
    }
    if problems.is_empty() {
        p.pass(
            CheckKind::Automorphism,
            format!("{n} right translation(s) verified, fiber-transitive"),
        );
    } else {
        p.fail(
            CheckKind::Automorphism,
            format!("{} on {}", problems.join("; "), p.spec.fingerprint()),
        );
    }
}

fn build_report(p: &mut Pipeline<'_>) {
    let (Some(kappa), Some(lambda)) = (p.record.computed_kappa, p.record.computed_lambda) else {
        return;
    };
    let super_lambda = if p.record.applicability.theorem_applicable {
        p.record
            .algebraic_super_lambda
            .or(p.record.oracle_super_lambda)
    } else {
        None
    };
    let witnesses = if super_lambda == Some(false) {
        if p.record.oracle_confirmed {
            positive_superatoms(p)
                .into_iter()
                .map(|f| f.vertices)
                .collect()
        } else {
            p.record
                .witness
                .iter()
                .map(|w| w.predicted_superatom.clone())
                .collect()
        }
    } else {
        Vec::new()
    };
    p.record.report = Some(ConnectivityReport {
        kappa,
        lambda,
        delta: p.record.delta.unwrap_or(0),
        delta_plus: p.record.delta_plus.unwrap_or(0),
        delta_minus: p.record.delta_minus.unwrap_or(0),
        super_lambda,
        oracle_confirmed: p.record.oracle_confirmed,
        witnesses,
    });
}

fn worker_count(total: usize) -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = std::env::var("BICAYLEY_WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(available);
    cap.min(available).max(1).min(total.max(1))
}

/// Run every configured instance, fanning out across a worker pool.
/// Records come back in enumeration order regardless of completion order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<InstanceRecord>> {
    let specs = enumerate_specs(config)?;
    let workers = worker_count(specs.len());
    if workers <= 1 || specs.len() <= 1 {
        return Ok(specs.iter().map(|s| run_instance(s, config)).collect());
    }
    let chunk_size = specs.len().div_ceil(workers);
    let mut records = Vec::with_capacity(specs.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .chunks(chunk_size)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|s| run_instance(s, config))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            records.extend(handle.join().expect("sweep worker panicked"));
        }
    });
    Ok(records)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateTimings {
    pub construct_us: u64,
    pub connectivity_us: u64,
    pub algebraic_us: u64,
    pub oracle_us: u64,
    pub structure_us: u64,
}

/// Category counts (the five buckets are disjoint and sum to `total`),
/// falsification tally, and the empirical super-λ fraction among
/// characterization-applicable instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub total: usize,
    pub not_strongly_connected: usize,
    pub cycle_excluded: usize,
    pub super_lambda: usize,
    pub not_super_lambda: usize,
    pub unconfirmed: usize,
    pub falsifications: usize,
    pub applicable: usize,
    pub applicable_super_lambda: usize,
    pub super_lambda_fraction: Option<f64>,
    pub timings: AggregateTimings,
}

pub fn summarize(records: &[InstanceRecord]) -> SummaryReport {
    let mut summary = SummaryReport {
        total: records.len(),
        not_strongly_connected: 0,
        cycle_excluded: 0,
        super_lambda: 0,
        not_super_lambda: 0,
        unconfirmed: 0,
        falsifications: 0,
        applicable: 0,
        applicable_super_lambda: 0,
        super_lambda_fraction: None,
        timings: AggregateTimings::default(),
    };
    let mut with_verdict = 0usize;
    for record in records {
        summary.falsifications += record.falsifications.len();
        summary.timings.construct_us += record.timings.construct_us;
        summary.timings.connectivity_us += record.timings.connectivity_us;
        summary.timings.algebraic_us += record.timings.algebraic_us;
        summary.timings.oracle_us += record.timings.oracle_us;
        summary.timings.structure_us += record.timings.structure_us;

        if !record.applicability.strongly_connected {
            summary.not_strongly_connected += 1;
            continue;
        }
        if record.applicability.shape_exclusion != crate::criteria::ShapeExclusion::None {
            summary.cycle_excluded += 1;
            continue;
        }
        summary.applicable += 1;
        if let Some(verdict) = record.algebraic_super_lambda {
            with_verdict += 1;
            if verdict {
                summary.applicable_super_lambda += 1;
            }
        }
        match (record.oracle_confirmed, record.oracle_super_lambda) {
            (true, Some(true)) => summary.super_lambda += 1,
            (true, Some(false)) => summary.not_super_lambda += 1,
            _ => summary.unconfirmed += 1,
        }
    }
    if with_verdict > 0 {
        summary.super_lambda_fraction =
            Some(summary.applicable_super_lambda as f64 / with_verdict as f64);
    }
    summary
}
