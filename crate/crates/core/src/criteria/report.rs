//! End-to-end analysis of one imaginary quadratic field.

use super::{cor14_check, lemma19_rank, prop31_check, thm11_check, thm12_check, thm26_check};
use super::{GroupKind, Verdict};
use crate::classgroup::{
    d_subgroup_order, general_class_group, quad_class_group, Certification, ClassGroup,
    ClassGroupOptions, Policy,
};
use crate::cubic::{enumerate_cubic_fields, hasse_count_check, layer_field, CubicField};
use crate::error::{IflError, Result};
use crate::kernel::int::{kronecker, normalize_quadratic_discriminant};
use crate::lambda::{lambda_invariant, LambdaResult};
use crate::units::e_of_f;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub disc: i64,
    pub p: u64,
    pub levels: u32,
    pub policy: Option<Policy>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub p: u64,
    pub levels: u32,
    pub policy: Option<Policy>,
    pub seed: u64,
    pub budget: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { p: 3, levels: 1, policy: None, seed: 1, budget: 1_000_000 }
    }
}

impl AnalyzeOptions {
    pub fn request(&self, disc: i64) -> Request {
        Request { disc, p: self.p, levels: self.levels, policy: self.policy, seed: self.seed }
    }
}

/// A pipeline step: a value, or the reason there is none.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step<T> {
    pub value: Option<T>,
    pub error: Option<String>,
}

impl<T> Step<T> {
    fn from(r: Result<T>) -> Self {
        match r {
            Ok(v) => Step { value: Some(v), error: None },
            Err(e) => Step { value: None, error: Some(e.to_string()) },
        }
    }

    fn skipped(why: &str) -> Self {
        Step { value: None, error: Some(why.to_string()) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub invariants: Vec<u64>,
    pub sylow: Vec<u64>,
    pub certification: Certification,
    pub factor_base: usize,
    pub relations: usize,
    pub trials: u64,
}

impl GroupSummary {
    fn of(g: &ClassGroup, p: u64) -> Self {
        Self {
            invariants: g.group.invariants_u64(),
            sylow: g.group.sylow_p(p).invariants_u64(),
            certification: g.certification.clone(),
            factor_base: g.factor_base.len(),
            relations: g.relations.len(),
            trials: g.trials,
        }
    }

    fn sylow_order(&self) -> u64 {
        self.sylow.iter().product()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EfSummary {
    pub e: u32,
    pub precision: u32,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerReport {
    pub level: u32,
    pub degree: usize,
    pub poly: String,
    pub class_group: Step<GroupSummary>,
    pub d_order: Step<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaFStatus {
    ProvenZero,
    Bounded,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaF {
    pub status: LambdaFStatus,
    pub bound: Option<u32>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    pub poly: String,
    pub form: [i64; 4],
    pub disc: i64,
    pub disc_matches: bool,
    pub class_group: Step<GroupSummary>,
    pub e_f: Step<EfSummary>,
    pub layers: Vec<LayerReport>,
    pub lambda_f: LambdaF,
}

impl FieldReport {
    pub fn a_f(&self) -> Option<&[u64]> {
        self.class_group.value.as_ref().map(|g| g.sylow.as_slice())
    }

    pub fn d_orders(&self) -> Vec<Option<u64>> {
        self.layers.iter().map(|l| l.d_order.value).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    /// `p` does not split in `k`.
    pub c1: bool,
    /// `p` divides `h(k)`.
    pub c2: bool,
    /// `A(k)` is cyclic.
    pub c3: bool,
    pub p_ramified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub field_disc: i64,
    pub class_group_k: Vec<u64>,
    pub a_k: Vec<u64>,
    pub conditions: Conditions,
    pub lambda_k: Step<LambdaResult>,
    /// `p lambda(k) - p + 1`: the rank the free case would force on `X(K_inf)`.
    pub hypothetical_lambda_big_k: Option<u64>,
    pub cubic_fields: usize,
    pub hasse_count_ok: bool,
    pub fields: Vec<FieldReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldVerdicts {
    pub poly: String,
    pub thm11: Verdict,
    pub thm12: Verdict,
    pub thm26: Verdict,
    pub prop31: Verdict,
    pub cor14: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnyField {
    pub thm11: Verdict,
    pub thm12: Verdict,
    pub thm26: Verdict,
    pub prop31: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub in_scope: bool,
    pub per_field: Vec<FieldVerdicts>,
    pub any_field: AnyField,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationInfo {
    pub class_group_k: Certification,
    pub class_groups: BTreeMap<String, Certification>,
    pub lambda_twist: Option<String>,
    pub lambda_steps: Vec<(u32, u32)>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub request: Request,
    pub invariants: Invariants,
    pub verdicts: Verdicts,
    pub certification: CertificationInfo,
    pub timings: BTreeMap<String, f64>,
    pub version: String,
}

impl CriterionReport {
    /// JSON with keys in sorted order.
    pub fn to_canonical_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&serde_json::to_value(self)?)?)
    }

    pub fn to_pretty_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&serde_json::to_value(self)?)?)
    }

    pub fn csv_header() -> &'static str {
        "D,F,A(k),lambda(k),A(F),e(F),D(F_n),lambda(F),thm11,thm12,thm26,prop31,cor14"
    }

    /// One row per `(D, F)`.
    pub fn csv_rows(&self) -> Vec<String> {
        let inv = &self.invariants;
        let lk = opt(inv.lambda_k.value.as_ref().map(|l| l.lambda));
        let mut rows = Vec::new();
        for (f, v) in inv.fields.iter().zip(&self.verdicts.per_field) {
            let d: Vec<String> = f.d_orders().iter().map(|d| opt(*d)).collect();
            rows.push(
                [
                    self.request.disc.to_string(),
                    f.poly.clone(),
                    group(&inv.a_k),
                    lk.clone(),
                    f.a_f().map(group).unwrap_or_else(|| "?".into()),
                    opt(f.e_f.value.as_ref().map(|e| e.e)),
                    d.join(" "),
                    match f.lambda_f.status {
                        LambdaFStatus::ProvenZero => "0".into(),
                        LambdaFStatus::Bounded => format!("<={}", opt(f.lambda_f.bound)),
                        LambdaFStatus::Unknown => "?".into(),
                    },
                    v.thm11.label().into(),
                    v.thm12.label().into(),
                    v.thm26.label().into(),
                    v.prop31.label().into(),
                    v.cor14.label().into(),
                ]
                .map(|s| csv_field(&s))
                .join(","),
            );
        }
        rows
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let inv = &self.invariants;
        out.push_str(&format!(
            "k = Q(sqrt {})  Cl(k) = {}  A(k) = {}  lambda(k) = {}\n",
            inv.field_disc,
            group(&inv.class_group_k),
            group(&inv.a_k),
            inv.lambda_k
                .value
                .as_ref()
                .map(|l| l.lambda.to_string())
                .unwrap_or_else(|| format!("? ({})", inv.lambda_k.error.clone().unwrap_or_default()))
        ));
        for (f, v) in inv.fields.iter().zip(&self.verdicts.per_field) {
            out.push_str(&format!("F: {}\n", f.poly));
            out.push_str(&format!(
                "  A(F) = {}  e(F) = {}  |D(F_n)| = [{}]  lambda(F) = {}\n",
                f.a_f().map(group).unwrap_or_else(|| "?".into()),
                opt(f.e_f.value.as_ref().map(|e| e.e)),
                f.d_orders().iter().map(|d| opt(*d)).collect::<Vec<_>>().join(", "),
                match f.lambda_f.status {
                    LambdaFStatus::ProvenZero => "0".to_string(),
                    LambdaFStatus::Bounded => format!("<= {}", opt(f.lambda_f.bound)),
                    LambdaFStatus::Unknown => "?".to_string(),
                }
            ));
            for (name, vv) in [
                ("thm11", &v.thm11),
                ("thm12", &v.thm12),
                ("thm26", &v.thm26),
                ("prop31", &v.prop31),
                ("cor14", &v.cor14),
            ] {
                out.push_str(&format!("  {name:<7}{:<15}{}\n", vv.label(), detail(vv)));
            }
        }
        for n in &self.verdicts.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

fn detail(v: &Verdict) -> &str {
    match v {
        Verdict::Fires { instance } => instance,
        Verdict::DoesNotFire { reason } | Verdict::Inapplicable { reason } => reason,
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "?".into())
}

fn group(inv: &[u64]) -> String {
    if inv.is_empty() {
        "1".into()
    } else {
        inv.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("+")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Runs the whole pipeline for `Q(sqrt disc)`.
pub fn analyze(disc: i64, opts: &AnalyzeOptions) -> Result<CriterionReport> {
    let total = Instant::now();
    let p = opts.p;
    if p != 3 {
        return Err(IflError::Unsupported("the analysis is implemented for p = 3".into()));
    }
    let d = normalize_quadratic_discriminant(disc)
        .ok_or_else(|| IflError::InvalidInput(format!("{disc} is not a fundamental discriminant")))?;
    if d >= 0 {
        return Err(IflError::InvalidInput("k must be imaginary quadratic".into()));
    }
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let cl = quad_class_group(d)?;
    let a_k = cl.sylow_p(p).invariants_u64();
    timings.insert("class_group_k".to_string(), t.elapsed().as_secs_f64());
    let conditions = Conditions {
        c1: kronecker(d, p) != 1,
        c2: !a_k.is_empty(),
        c3: a_k.len() <= 1,
        p_ramified: kronecker(d, p) == 0,
    };
    let in_scope = conditions.c1 && conditions.c2;
    let request = opts.request(disc);
    let mut notes = Vec::new();

    let (lambda_k, fields, cubic_count, hasse_ok) = if in_scope {
        let t = Instant::now();
        let lambda_k = Step::from(lambda_invariant(d, p));
        timings.insert("lambda_k".to_string(), t.elapsed().as_secs_f64());
        let t = Instant::now();
        let cubics = enumerate_cubic_fields(d)?;
        timings.insert("cubic_fields".to_string(), t.elapsed().as_secs_f64());
        let hasse = hasse_count_check(cubics.len(), a_k.len() as u32);
        let results: Vec<(FieldReport, f64)> = cubics
            .par_iter()
            .map(|cf| {
                let t = Instant::now();
                let r = analyze_field(cf, d, opts);
                (r, t.elapsed().as_secs_f64())
            })
            .collect();
        let mut fields = Vec::new();
        for (r, secs) in results {
            timings.insert(format!("field {}", r.poly), secs);
            fields.push(r);
        }
        fields.sort_by(|a, b| a.poly.cmp(&b.poly));
        (lambda_k, fields, cubics.len(), hasse)
    } else {
        let why = "out of scope of the criteria";
        (Step::skipped(why), vec![], 0, true)
    };

    let lk = lambda_k.value.as_ref().map(|l| l.lambda);
    let mut per_field = Vec::new();
    for f in &fields {
        per_field.push(field_verdicts(f, lk, &conditions, p)?);
    }
    let any_field = if in_scope {
        AnyField {
            thm11: aggregate(&fields, &per_field, |v| &v.thm11),
            thm12: aggregate(&fields, &per_field, |v| &v.thm12),
            thm26: aggregate(&fields, &per_field, |v| &v.thm26),
            prop31: aggregate(&fields, &per_field, |v| &v.prop31),
        }
    } else {
        let mut why = Vec::new();
        if !conditions.c1 {
            why.push(format!("{p} splits in k"));
        }
        if !conditions.c2 {
            why.push(format!("{p} does not divide h(k)"));
        }
        let v = Verdict::Inapplicable { reason: format!("out of scope of the criteria: {}", why.join(", ")) };
        AnyField { thm11: v.clone(), thm12: v.clone(), thm26: v.clone(), prop31: v }
    };
    if lk == Some(2) {
        notes.push(
            "lambda(k) = 2 with p non-split: Okano's criterion applies (cited, not recomputed)".into(),
        );
    }
    for f in &fields {
        if f.lambda_f.status == LambdaFStatus::Bounded {
            notes.push(format!("F = {}: {}", f.poly, f.lambda_f.note));
        }
    }
    if !hasse_ok {
        notes.push("number of cubic fields does not match (3^r - 1)/2".into());
    }
    let hypothetical = lk.and_then(|l| lemma19_rank(l as u64, p, GroupKind::Free).ok());

    let mut class_groups = BTreeMap::new();
    for f in &fields {
        if let Some(g) = &f.class_group.value {
            class_groups.insert(f.poly.clone(), g.certification.clone());
        }
        for l in &f.layers {
            if l.level > 0 {
                if let Some(g) = &l.class_group.value {
                    class_groups.insert(l.poly.clone(), g.certification.clone());
                }
            }
        }
    }
    let mut cert_notes = vec![
        "lambda(k) uses the pinned twist of the Stickelberger series; which p-adic L-branch this labels is left open".to_string(),
    ];
    if class_groups.values().any(|c| matches!(c, Certification::Heuristic(_))) {
        cert_notes.push(
            "heuristic class groups: the factor base or the saturation step is not proven complete".into(),
        );
    }
    let certification = CertificationInfo {
        class_group_k: Certification::Exact,
        class_groups,
        lambda_twist: lambda_k.value.as_ref().map(|l| format!("{:?}", l.twist).to_lowercase()),
        lambda_steps: lambda_k.value.as_ref().map(|l| l.steps.clone()).unwrap_or_default(),
        notes: cert_notes,
    };
    timings.insert("total".to_string(), total.elapsed().as_secs_f64());
    Ok(CriterionReport {
        request,
        invariants: Invariants {
            field_disc: d,
            class_group_k: cl.invariants_u64(),
            a_k,
            conditions,
            lambda_k,
            hypothetical_lambda_big_k: hypothetical,
            cubic_fields: cubic_count,
            hasse_count_ok: hasse_ok,
            fields,
        },
        verdicts: Verdicts { in_scope, per_field, any_field, notes },
        certification,
        timings,
        version: VERSION.to_string(),
    })
}

fn class_group_options(opts: &AnalyzeOptions) -> ClassGroupOptions {
    ClassGroupOptions { policy: opts.policy, seed: opts.seed, budget: opts.budget, bound: None }
}

fn analyze_field(cf: &CubicField, d: i64, opts: &AnalyzeOptions) -> FieldReport {
    let p = opts.p;
    let k = &cf.field;
    let poly = k.poly().to_string();
    let fd = k.discriminant().to_i64().unwrap_or(0);
    let cg = general_class_group(k, &class_group_options(opts));
    let class_group = match &cg {
        Ok(g) => Step { value: Some(GroupSummary::of(g, p)), error: None },
        Err(e) => Step::skipped(&e.to_string()),
    };
    let e_f = Step::from(e_of_f(k).map(|e| EfSummary {
        e: e.e,
        precision: e.precision,
        unit: k.format_element(&e.unit),
    }));
    let mut layers = Vec::new();
    for n in 0..=opts.levels {
        layers.push(layer_report(cf, n, cg.as_ref().ok(), opts));
    }
    let d_orders: Vec<Option<u64>> = layers.iter().map(|l| l.d_order.value).collect();
    let a_order = class_group.value.as_ref().map(|g| g.sylow_order());
    let e = e_f.value.as_ref().map(|e| e.e);
    let proven = match (a_order, e) {
        (Some(a), Some(e)) => prop31_check(a, e, &d_orders).map(|v| v.fires()).unwrap_or(false),
        _ => false,
    };
    let lambda_f = if proven {
        LambdaF {
            status: LambdaFStatus::ProvenZero,
            bound: Some(0),
            note: "|D(F_n)| attains |A(F)| 3^(e(F)-1)".into(),
        }
    } else {
        let ranks: Vec<Option<usize>> = layers
            .iter()
            .map(|l| l.class_group.value.as_ref().map(|g| g.sylow.len()))
            .collect();
        match ranks.windows(2).find_map(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }) {
            Some(r) => LambdaF {
                status: LambdaFStatus::Bounded,
                bound: Some(r as u32),
                note: format!("3-ranks of A(F_n) stable at {r}: lambda(F) <= {r} (Fukuda)"),
            },
            None => LambdaF {
                status: LambdaFStatus::Unknown,
                bound: None,
                note: "no stabilisation among computed layers".into(),
            },
        }
    };
    let f = cf.form;
    FieldReport {
        poly,
        form: [f.a, f.b, f.c, f.d],
        disc: fd,
        disc_matches: fd == d,
        class_group,
        e_f,
        layers,
        lambda_f,
    }
}

fn layer_report(cf: &CubicField, n: u32, base: Option<&ClassGroup>, opts: &AnalyzeOptions) -> LayerReport {
    let p = opts.p;
    let layer = match layer_field(&cf.field, n, p) {
        Ok(l) => l,
        Err(e) => {
            return LayerReport {
                level: n,
                degree: cf.field.degree() * p.pow(n) as usize,
                poly: String::new(),
                class_group: Step::skipped(&e.to_string()),
                d_order: Step::skipped(&e.to_string()),
            }
        }
    };
    let computed;
    let cg = if n == 0 {
        base.ok_or_else(|| IflError::Computation("class group of F unavailable".into()))
    } else {
        computed = general_class_group(&layer.field, &class_group_options(opts));
        computed.as_ref().map_err(|e| IflError::Computation(e.to_string()))
    };
    let (class_group, d_order) = match cg {
        Ok(g) => (
            Step { value: Some(GroupSummary::of(g, p)), error: None },
            Step::from(d_subgroup_order(&layer, g, p)),
        ),
        Err(e) => (Step::skipped(&e.to_string()), Step::skipped(&e.to_string())),
    };
    LayerReport {
        level: n,
        degree: layer.field.degree(),
        poly: layer.field.poly().to_string(),
        class_group,
        d_order,
    }
}

fn field_verdicts(f: &FieldReport, lk: Option<u32>, c: &Conditions, p: u64) -> Result<FieldVerdicts> {
    let lf = (f.lambda_f.status == LambdaFStatus::ProvenZero).then_some(0u32);
    let thm11 = match (lk, lf) {
        (Some(lk), Some(lf)) => thm11_check(lk, lf, p),
        (None, _) => Verdict::Inapplicable { reason: "lambda(k) unavailable".into() },
        (Some(lk), None) if lk < 2 => thm11_check(lk, 0, p),
        _ => Verdict::Inapplicable { reason: "lambda(F) not determined".into() },
    };
    let d_orders = f.d_orders();
    let thm12 = thm12_check(&d_orders);
    let thm26 = match lk {
        Some(lk) => thm26_check(lk, lf, p),
        None => Verdict::Inapplicable { reason: "lambda(k) unavailable".into() },
    };
    let a = f.class_group.value.as_ref().map(|g| g.sylow_order());
    let e = f.e_f.value.as_ref().map(|e| e.e);
    let prop31 = match (a, e) {
        (Some(a), Some(e)) => prop31_check(a, e, &d_orders)?,
        (None, _) => Verdict::Inapplicable { reason: "A(F) unavailable".into() },
        (_, None) => Verdict::Inapplicable {
            reason: format!("e(F) unavailable: {}", f.e_f.error.clone().unwrap_or_default()),
        },
    };
    let cor14 = match (e, lk) {
        (Some(e), Some(lk)) if c.c1 && c.c2 => cor14_check(e, lk, c.c3)?,
        _ => Verdict::Inapplicable { reason: "needs e(F), lambda(k) and (C1)-(C3)".into() },
    };
    Ok(FieldVerdicts { poly: f.poly.clone(), thm11, thm12, thm26, prop31, cor14 })
}

/// Fires if some `F` fires; otherwise the first non-inapplicable outcome.
fn aggregate(fields: &[FieldReport], vs: &[FieldVerdicts], get: impl Fn(&FieldVerdicts) -> &Verdict) -> Verdict {
    for (f, v) in fields.iter().zip(vs) {
        if let Verdict::Fires { instance } = get(v) {
            return Verdict::Fires { instance: format!("F = {}: {instance}", f.poly) };
        }
    }
    for (f, v) in fields.iter().zip(vs) {
        if let Verdict::DoesNotFire { reason } = get(v) {
            return Verdict::DoesNotFire { reason: format!("F = {}: {reason}", f.poly) };
        }
    }
    Verdict::Inapplicable { reason: "no field F gives an applicable criterion".into() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_scope() {
        // 3 splits in Q(sqrt -23)
        let r = analyze(-23, &AnalyzeOptions { levels: 0, ..Default::default() }).unwrap();
        assert!(!r.verdicts.in_scope);
        assert!(r.invariants.fields.is_empty());
        assert_eq!(r.verdicts.any_field.thm12.label(), "inapplicable");
    }

    #[test]
    fn level_zero_report_round_trips() {
        let r = analyze(-211, &AnalyzeOptions { levels: 0, ..Default::default() }).unwrap();
        let inv = &r.invariants;
        assert_eq!(inv.a_k, vec![3]);
        assert_eq!(inv.lambda_k.value.as_ref().unwrap().lambda, 2);
        assert_eq!(inv.fields.len(), 1);
        let f = &inv.fields[0];
        assert!(f.disc_matches);
        assert_eq!(f.a_f(), Some(&[][..]));
        assert_eq!(f.e_f.value.as_ref().unwrap().e, 2);
        assert_eq!(f.d_orders(), vec![Some(1)]);
        let s = r.to_canonical_json().unwrap();
        let back: CriterionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_canonical_json().unwrap(), s);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["certification", "invariants", "request", "timings", "verdicts", "version"]);
        assert_eq!(r.csv_rows().len(), 1);
    }
}
