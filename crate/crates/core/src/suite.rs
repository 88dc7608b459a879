//! Property suites with machine-readable verdicts.
//!
//! Each suite draws from its own random stream, so running one suite alone
//! gives the same records as running it inside `all`. Records are sorted by
//! check id and carry no timing unless asked, which makes reports
//! byte-identical for identical inputs and seed.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::eicat::{FiniteEICategory, Obj};
use crate::json::{category_digest, digest, module_to_json};
use crate::nakayama::{
    adjunction_check, counit, in_kernel, inverse_nakayama, locally_self_injective_audit, nakayama,
    nakayama_map, unit,
};
use crate::random::ModuleSampler;
use crate::repmod::{
    find_isomorphism, free_module, is_injective, is_projective, CatModule, ChainComplex, HomSpace,
    Side,
};
use crate::resolve::{injective_resolution, resolution_step, verify_resolution};

/// Every anchor a record may cite.
pub const ANCHORS: &[&str] = &[
    "plumbing",
    "ei-category",
    "graded-hom",
    "duality",
    "idempotent-duality",
    "projectives",
    "fd-injectives",
    "adjunction",
    "equivalence-on-injectives",
    "projective-resolution-step",
    "injective-resolution",
    "monomorphism-torsion",
    "kernel",
    "locally-self-injective",
    "nakayama-exact",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Yoneda,
    NakayamaProjInj,
    Adjunction,
    Counit,
    Resolution,
    MonoTorsion,
    Kernel,
    SelfInjectiveAudit,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Axioms,
        Suite::Yoneda,
        Suite::NakayamaProjInj,
        Suite::Adjunction,
        Suite::Counit,
        Suite::Resolution,
        Suite::MonoTorsion,
        Suite::Kernel,
        Suite::SelfInjectiveAudit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Yoneda => "yoneda",
            Suite::NakayamaProjInj => "nakayama-proj-inj",
            Suite::Adjunction => "adjunction",
            Suite::Counit => "counit",
            Suite::Resolution => "resolution",
            Suite::MonoTorsion => "mono-torsion",
            Suite::Kernel => "kernel",
            Suite::SelfInjectiveAudit => "self-injective-audit",
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `"all"` or one suite name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    All,
    One(Suite),
}

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteSelection::All => Suite::ALL.to_vec(),
            SuiteSelection::One(s) => vec![s],
        }
    }
}

impl fmt::Display for SuiteSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteSelection::All => f.write_str("all"),
            SuiteSelection::One(s) => s.fmt(f),
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(SuiteSelection::All);
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| SuiteSelection::One(x))
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!(
                    "unknown suite {s:?}; expected all or one of {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A documented gap between the truncation and the infinite category.
    ExpectedFail,
    /// Preconditions of the property do not hold for this category.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: &'static str,
    pub inputs_digest: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub category_digest: String,
    pub passed: bool,
    pub counts: Counts,
    pub records: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub expected_fail: usize,
    pub skipped: usize,
}

impl SuiteReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub adjunction_pairs: usize,
    pub resolution_samples: usize,
    pub kernel_samples: usize,
    pub exact_sequences: usize,
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            adjunction_pairs: 20,
            resolution_samples: 10,
            kernel_samples: 10,
            exact_sequences: 5,
            timing: false,
        }
    }
}

struct Recorder<'a> {
    cat: &'a Arc<FiniteEICategory>,
    suite: Suite,
    records: Vec<CheckRecord>,
}

impl<'a> Recorder<'a> {
    fn push(
        &mut self,
        name: String,
        anchor: &'static str,
        inputs: &[&CatModule],
        verdict: Verdict,
        detail: impl Into<String>,
        witness: Option<Value>,
    ) {
        let inputs_digest = if inputs.is_empty() {
            category_digest(self.cat)
        } else {
            digest(&Value::Array(
                inputs.iter().map(|m| module_to_json(m, None)).collect(),
            ))
        };
        self.records.push(CheckRecord {
            id: format!("{}/{}", self.suite, name),
            anchor,
            inputs_digest,
            verdict,
            detail: detail.into(),
            witness,
        });
    }

    fn check(
        &mut self,
        name: String,
        anchor: &'static str,
        inputs: &[&CatModule],
        ok: bool,
        detail: impl Into<String>,
        witness: Option<Value>,
    ) {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self.push(name, anchor, inputs, verdict, detail, witness);
    }

    fn id(&self, i: Obj) -> &str {
        self.cat.object_id(i)
    }
}

pub fn run_suites(
    cat: &Arc<FiniteEICategory>,
    selection: SuiteSelection,
    config: &SuiteConfig,
) -> SuiteReport {
    let start = Instant::now();
    let mut records = Vec::new();
    let structural = cat.validate();
    for suite in selection.suites() {
        let mut rec = Recorder {
            cat,
            suite,
            records: Vec::new(),
        };
        if suite != Suite::Axioms && !structural.is_ok() {
            rec.push(
                "category".into(),
                "plumbing",
                &[],
                Verdict::Skipped,
                "category fails validation",
                None,
            );
        } else {
            let mut sampler = ModuleSampler::for_stream(config.seed, suite.stream());
            run_one(&mut rec, &mut sampler, config);
        }
        records.extend(rec.records);
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let mut counts = Counts::default();
    for r in &records {
        match r.verdict {
            Verdict::Pass => counts.pass += 1,
            Verdict::Fail => counts.fail += 1,
            Verdict::ExpectedFail => counts.expected_fail += 1,
            Verdict::Skipped => counts.skipped += 1,
        }
    }
    SuiteReport {
        suite: selection.to_string(),
        seed: config.seed,
        category_digest: category_digest(cat),
        passed: counts.fail == 0,
        counts,
        records,
        elapsed_ms: config.timing.then(|| start.elapsed().as_millis()),
    }
}

fn run_one(rec: &mut Recorder, sampler: &mut ModuleSampler, config: &SuiteConfig) {
    match rec.suite {
        Suite::Axioms => axioms(rec),
        Suite::Yoneda => yoneda(rec, sampler),
        Suite::NakayamaProjInj => nakayama_proj_inj(rec),
        Suite::Adjunction => adjunction(rec, sampler, config.adjunction_pairs),
        Suite::Counit => counit_suite(rec),
        Suite::Resolution => resolution(rec, sampler, config.resolution_samples),
        Suite::MonoTorsion => mono_torsion(rec),
        Suite::Kernel => kernel(rec, sampler, config.kernel_samples),
        Suite::SelfInjectiveAudit => audit(rec, sampler, config.exact_sequences),
    }
}

fn axioms(rec: &mut Recorder) {
    let report = rec.cat.validate();
    let messages = report.messages();
    rec.check(
        "validate".into(),
        "ei-category",
        &[],
        report.is_ok(),
        format!(
            "{} objects, {} morphisms, {} violations",
            rec.cat.num_objects(),
            rec.cat.num_morphisms(),
            messages.len()
        ),
        (!messages.is_empty()).then(|| json!(messages)),
    );
}

fn yoneda(rec: &mut Recorder, sampler: &mut ModuleSampler) {
    let cat = rec.cat.clone();
    let modules: Vec<CatModule> = (0..3).map(|_| sampler.module(&cat, Side::Left)).collect();
    for (k, v) in modules.iter().enumerate() {
        let mut mismatches = Vec::new();
        for i in cat.objects() {
            let free = free_module(&cat, Side::Left, i);
            let h = HomSpace::new(&free, v).expect("same category");
            if h.dim() != v.dim(i) {
                mismatches.push(json!({"object": rec.id(i), "hom": h.dim(), "dim": v.dim(i)}));
            }
        }
        rec.check(
            format!("free-hom-{k:02}"),
            "graded-hom",
            &[v],
            mismatches.is_empty(),
            "dim Hom(free at i, V) = dim V(i) at every object",
            (!mismatches.is_empty()).then(|| json!(mismatches)),
        );
    }
    for (a, v) in modules.iter().enumerate() {
        for (b, w) in modules.iter().enumerate() {
            let d1 = HomSpace::new(v, w).expect("same category").dim();
            let d2 = HomSpace::new(&w.dualize(), &v.dualize())
                .expect("same category")
                .dim();
            rec.check(
                format!("dual-hom-{a:02}-{b:02}"),
                "duality",
                &[v, w],
                d1 == d2,
                format!("dim Hom(V, W) = {d1}, dim Hom(DW, DV) = {d2}"),
                None,
            );
        }
    }
}

fn nakayama_proj_inj(rec: &mut Recorder) {
    let cat = rec.cat.clone();
    for i in cat.objects() {
        let name = rec.id(i).to_string();
        let free = free_module(&cat, Side::Left, i);
        let cofree = free_module(&cat, Side::Right, i).dualize();
        rec.check(
            format!("{name}/free-is-projective"),
            "projectives",
            &[&free],
            is_projective(&free),
            "free module splits off its canonical cover",
            None,
        );
        rec.check(
            format!("{name}/cofree-is-injective"),
            "fd-injectives",
            &[&cofree],
            is_injective(&cofree),
            "dual of a free right module is injective",
            None,
        );
        let nu = nakayama(&free).expect("left module");
        let iso = find_isomorphism(&nu, &cofree).expect("same category");
        rec.check(
            format!("{name}/nakayama-of-free"),
            "idempotent-duality",
            &[&free],
            iso.is_some(),
            "explicit isomorphism from nu(free) to the cofree module",
            Some(json!({"dims": nu.dims()})),
        );
        let inv = inverse_nakayama(&cofree).expect("left module");
        let iso = find_isomorphism(&inv, &free).expect("same category");
        rec.check(
            format!("{name}/inverse-of-cofree"),
            "idempotent-duality",
            &[&cofree],
            iso.is_some(),
            "explicit isomorphism from inverse nu(cofree) to the free module",
            Some(json!({"dims": inv.dims()})),
        );
    }
}

fn adjunction(rec: &mut Recorder, sampler: &mut ModuleSampler, pairs: usize) {
    let cat = rec.cat.clone();
    for k in 0..pairs {
        let v = sampler.module(&cat, Side::Left);
        let u = sampler.module(&cat, Side::Left);
        let check = adjunction_check(&v, &u).expect("left modules");
        rec.check(
            format!("pair-{k:02}"),
            "adjunction",
            &[&v, &u],
            check.passed(),
            format!(
                "dim Hom(nu V, U) = {}, dim Hom(V, inverse nu U) = {}",
                check.hom_nu_v_u, check.hom_v_nu_inv_u
            ),
            Some(json!({
                "bijective": check.bijective,
                "triangle_nu": check.triangle_nu,
                "triangle_inverse": check.triangle_nu_inv,
            })),
        );
    }
}

fn counit_suite(rec: &mut Recorder) {
    let cat = rec.cat.clone();
    for i in cat.objects() {
        let name = rec.id(i).to_string();
        let cofree = free_module(&cat, Side::Right, i).dualize();
        let eps = counit(&cofree).expect("left module");
        rec.check(
            format!("{name}/counit"),
            "equivalence-on-injectives",
            &[&cofree],
            eps.is_isomorphism(),
            "counit at an injective module is an isomorphism",
            Some(json!({"ranks": eps.ranks()})),
        );
        let free = free_module(&cat, Side::Left, i);
        let eta = unit(&free).expect("left module");
        rec.check(
            format!("{name}/unit"),
            "equivalence-on-injectives",
            &[&free],
            eta.is_isomorphism(),
            "unit at a projective module is an isomorphism",
            Some(json!({"ranks": eta.ranks()})),
        );
    }
}

fn resolution(rec: &mut Recorder, sampler: &mut ModuleSampler, samples: usize) {
    let cat = rec.cat.clone();
    for k in 0..samples {
        let w = sampler.module(&cat, Side::Right);
        let step = resolution_step(&w, None).expect("right module, default set");
        rec.check(
            format!("step-{k:02}"),
            "projective-resolution-step",
            &[&w],
            step.passed(),
            "exact, kernel avoids maximal objects, bijective there",
            Some(json!({
                "exact": step.exactness().is_exact(),
                "kernel_avoids_maximal": step.kernel_avoids_maximal(),
                "bijective_at_maximal": step.bijective_at_maximal(),
                "kernel_dims": step.kernel.dims(),
            })),
        );
    }
    for k in 0..samples {
        let u = sampler.module(&cat, Side::Left);
        let res = injective_resolution(&u).expect("left module");
        let cert = verify_resolution(&res.complex);
        rec.check(
            format!("injective-{k:02}"),
            "injective-resolution",
            &[&u],
            cert.passed(),
            format!(
                "length {:?}, closure size {}",
                res.length(),
                cert.closure_size
            ),
            (!cert.passed()).then(|| json!(cert.failures())),
        );
    }
}

fn mono_torsion(rec: &mut Recorder) {
    let cat = rec.cat.clone();
    let non_mono: Vec<String> = cat
        .non_monomorphisms()
        .into_iter()
        .map(|f| cat.morphism_id(f).to_string())
        .collect();
    let torsion: Vec<Value> = cat
        .objects()
        .filter_map(|i| {
            free_module(&cat, Side::Left, i)
                .torsion_witness()
                .map(|f| json!({"free_at": cat.object_id(i), "morphism": cat.morphism_id(f)}))
        })
        .collect();
    let all_mono = non_mono.is_empty();
    let torsion_free = torsion.is_empty();
    rec.check(
        "biconditional".into(),
        "monomorphism-torsion",
        &[],
        all_mono == torsion_free,
        format!(
            "all morphisms mono: {all_mono}; all free left modules torsion-free: {torsion_free}"
        ),
        Some(json!({"non_monomorphisms": non_mono, "torsion_witnesses": torsion})),
    );
}

/// Objects whose free modules are torsion-free and a top object above all
/// others: the setting in which vanishing at the top forces `ν V = 0`.
fn kernel_applies(cat: &FiniteEICategory) -> Option<Obj> {
    let all: Vec<Obj> = cat.objects().collect();
    let top = cat.maximal_objects(&all);
    if top.len() != 1 || !all.iter().all(|&i| cat.leq(i, top[0])) {
        return None;
    }
    cat.non_monomorphisms().is_empty().then_some(top[0])
}

fn kernel(rec: &mut Recorder, sampler: &mut ModuleSampler, samples: usize) {
    let cat = rec.cat.clone();
    for i in cat.objects() {
        let free = free_module(&cat, Side::Left, i);
        let inside = in_kernel(&free).expect("left module");
        rec.check(
            format!("free-{}", rec.id(i)),
            "kernel",
            &[&free],
            !inside,
            "free modules are not killed by nu",
            None,
        );
    }
    let Some(top) = kernel_applies(&cat) else {
        rec.push(
            "vanishing-at-top".into(),
            "kernel",
            &[],
            Verdict::Skipped,
            "needs a top object above all others and only monomorphisms",
            None,
        );
        return;
    };
    for k in 0..samples {
        let v = sampler.module_vanishing_at_top(&cat, Side::Left);
        let inside = in_kernel(&v).expect("left module");
        rec.check(
            format!("vanishing-at-top-{k:02}"),
            "kernel",
            &[&v],
            inside && v.dim(top) == 0,
            "module vanishing at the top object is killed by nu",
            Some(json!({"dims": v.dims()})),
        );
    }
}

fn audit(rec: &mut Recorder, sampler: &mut ModuleSampler, sequences: usize) {
    let cat = rec.cat.clone();
    let report = locally_self_injective_audit(&cat);
    let witnesses: Vec<String> = report
        .witnesses()
        .into_iter()
        .map(|i| cat.object_id(i).to_string())
        .collect();
    if report.verdict() {
        rec.check(
            "verdict".into(),
            "locally-self-injective",
            &[],
            true,
            "every free left module is injective",
            None,
        );
    } else {
        rec.push(
            "verdict".into(),
            "locally-self-injective",
            &[],
            Verdict::ExpectedFail,
            "free modules at the listed objects are not injective; truncations and other \
             categories with maximal objects need not be locally self-injective",
            Some(json!({"non_injective_free_at": witnesses})),
        );
    }
    for k in 0..sequences {
        let name = format!("exact-{k:02}");
        if !report.verdict() {
            rec.push(
                name,
                "nakayama-exact",
                &[],
                Verdict::Skipped,
                "exactness of nu is only claimed when the audit passes",
                None,
            );
            continue;
        }
        let ses = sampler.short_exact_sequence(&cat, Side::Left);
        let image = apply_nakayama(&ses);
        let inputs: Vec<&CatModule> = ses.terms().iter().collect();
        rec.check(
            name,
            "nakayama-exact",
            &inputs,
            image.is_exact(),
            "nu maps the short exact sequence to an exact sequence",
            Some(json!({"dims": image.terms().iter().map(|t| t.dims().to_vec()).collect::<Vec<_>>()})),
        );
    }
}

fn apply_nakayama(c: &ChainComplex) -> ChainComplex {
    let maps: Vec<_> = c
        .maps()
        .iter()
        .map(|m| nakayama_map(m).expect("left modules"))
        .collect();
    let mut terms: Vec<CatModule> = maps.iter().map(|m| m.source().clone()).collect();
    terms.push(maps.last().expect("nonempty").target().clone());
    ChainComplex::new(terms, maps).expect("functor preserves composability")
}
