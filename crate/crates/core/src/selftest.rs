//! Golden cases and seeded oracle comparisons run by `upq selftest`.
//!
//! A golden file is `{"group": ..., "cases": [{"name", "op", "input", "expect"}]}`.
//! Every key of `expect` must equal the same key of the evaluated output.

use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::datum::{datum_from_mu, enumerate_data, mu_from_datum, Block, LambdaDatum};
use crate::error::{Error, Result};
use crate::lambda_map::{compute_lambda_a, compute_lambda_u, is_unitarily_small, project_dominant};
use crate::oracle::{self, OracleBudget};
use crate::rational::HalfRational;
use crate::screening::{
    bottom_layer, certificate_case_a, dirac_test, fundamental_partition, good_range_cuts, hull_check, interlaced,
    screen, segments_of_partition, CertificateKind, Level,
};
use crate::theta::{lkt_family, InfChar, ThetaDatum};
use crate::weights::{KTypeWeight, Signature, Vector};

const EMBEDDED: &[(&str, &str)] = &[
    ("u74-six-blocks.json", include_str!("../golden/u74-six-blocks.json")),
    ("u63-parallelograms.json", include_str!("../golden/u63-parallelograms.json")),
    ("u54-large-nu.json", include_str!("../golden/u54-large-nu.json")),
    ("u54-segments.json", include_str!("../golden/u54-segments.json")),
    ("u11-lkt-family.json", include_str!("../golden/u11-lkt-family.json")),
    ("trivial-reps.json", include_str!("../golden/trivial-reps.json")),
    ("case-a-u43.json", include_str!("../golden/case-a-u43.json")),
    ("enumeration.json", include_str!("../golden/enumeration.json")),
];

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenCase {
    pub name: String,
    pub op: String,
    pub input: Value,
    pub expect: serde_json::Map<String, Value>,
}

#[derive(Debug, Clone)]
pub struct GoldenGroup {
    pub name: String,
    /// File the group was read from.
    pub source: String,
    pub cases: Vec<GoldenCase>,
}

#[derive(Deserialize)]
struct GoldenFile {
    group: String,
    cases: Vec<GoldenCase>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub group: String,
    pub source: String,
    pub case: String,
    pub message: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({}) / {}: {}", self.group, self.source, self.case, self.message)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Summary {
    /// `(group, cases run)` for every group that passed.
    pub passed: Vec<(String, usize)>,
    pub failure: Option<Failure>,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn parse_group(source: &str, text: &str) -> std::result::Result<GoldenGroup, Failure> {
    let file: GoldenFile = serde_json::from_str(text).map_err(|e| Failure {
        group: "?".into(),
        source: source.into(),
        case: "?".into(),
        message: format!("cannot parse golden file: {e}"),
    })?;
    Ok(GoldenGroup { name: file.group, source: source.into(), cases: file.cases })
}

pub fn embedded_groups() -> Vec<GoldenGroup> {
    EMBEDDED.iter().map(|(src, text)| parse_group(src, text).expect("embedded golden files parse")).collect()
}

/// Reads every `*.json` in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> std::result::Result<Vec<GoldenGroup>, Failure> {
    let io_fail = |source: String, e: std::io::Error| Failure {
        group: "?".into(),
        source,
        case: "?".into(),
        message: e.to_string(),
    };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| io_fail(dir.display().to_string(), e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|e| io_fail(p.display().to_string(), e))?;
            parse_group(&p.display().to_string(), &text)
        })
        .collect()
}

/// Runs golden groups, then the property suites, stopping at the first failure.
/// `filter` selects groups whose name contains it.
pub fn run(groups: &[GoldenGroup], filter: Option<&str>) -> Summary {
    let keep = |name: &str| filter.is_none_or(|f| name.contains(f));
    let mut summary = Summary::default();
    for g in groups.iter().filter(|g| keep(&g.name)) {
        for case in &g.cases {
            if let Err(message) = check_case(case) {
                summary.failure =
                    Some(Failure { group: g.name.clone(), source: g.source.clone(), case: case.name.clone(), message });
                return summary;
            }
        }
        summary.passed.push((g.name.clone(), g.cases.len()));
    }
    for (name, suite) in PROPERTY_SUITES {
        if !keep(name) {
            continue;
        }
        match suite(OracleBudget::new(6, 200, 0x5eed)) {
            Ok(n) => summary.passed.push((name.to_string(), n)),
            Err((case, message)) => {
                summary.failure = Some(Failure { group: name.to_string(), source: "built-in".into(), case, message });
                return summary;
            }
        }
    }
    summary
}

pub fn check_case(case: &GoldenCase) -> std::result::Result<(), String> {
    let out = evaluate(&case.op, &case.input).map_err(|e| format!("evaluation failed: {e}"))?;
    for (key, want) in &case.expect {
        match out.get(key) {
            Some(got) if got == want => {}
            Some(got) => return Err(format!("{key}: expected {want}, got {got}")),
            None => return Err(format!("{key}: not produced by op {}", case.op)),
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct MuInput {
    p: usize,
    q: usize,
    mu: String,
}

impl MuInput {
    fn parts(&self) -> Result<(Signature, KTypeWeight)> {
        let sig = Signature::new(self.p, self.q)?;
        let mu: KTypeWeight = self.mu.parse()?;
        mu.check_signature(sig)?;
        Ok((sig, mu))
    }
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

fn ranges(rs: &[Range<usize>]) -> Value {
    rs.iter().map(|r| json!([r.start, r.end])).collect()
}

fn field<T: for<'de> Deserialize<'de>>(input: &Value, key: &str) -> Result<T> {
    from_value(input.get(key).ok_or_else(|| Error::Parse(format!("missing field {key}")))?)
}

fn level(name: &str) -> Result<Level> {
    from_value(&Value::String(name.into()))
}

fn theta(input: &Value) -> Result<ThetaDatum> {
    let td: ThetaDatum = from_value(input)?;
    td.check()?;
    Ok(td)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Evaluates one golden operation.
pub fn evaluate(op: &str, input: &Value) -> Result<Value> {
    Ok(match op {
        "lambda_a" => {
            let (sig, mu) = from_value::<MuInput>(input)?.parts()?;
            let res = compute_lambda_a(&mu, sig)?;
            let datum = datum_from_mu(&mu, sig)?;
            json!({
                "lambda_a": res.lambda_a,
                "merged_sorted": res.merged_sorted,
                "level_sets": ranges(&res.level_sets),
                "blocks": datum.blocks,
            })
        }
        "lambda_u" => {
            let (sig, mu) = from_value::<MuInput>(input)?.parts()?;
            json!({
                "lambda_u": compute_lambda_u(&mu, sig)?,
                "unitarily_small": is_unitarily_small(&mu, sig)?,
            })
        }
        "project" => {
            let d: Vector = field(input, "d")?;
            let res = project_dominant(&d);
            json!({"value": res.value, "level_sets": ranges(&res.level_sets)})
        }
        "mu_from_datum" => {
            let p: usize = field(input, "p")?;
            let q: usize = field(input, "q")?;
            let blocks: Vec<Block> = field(input, "blocks")?;
            let d = LambdaDatum::new(Signature::new(p, q)?, blocks)?;
            json!({"mu": mu_from_datum(&d)?})
        }
        "bottom_layer" => {
            let (sig, mu) = from_value::<MuInput>(input)?.parts()?;
            let d = datum_from_mu(&mu, sig)?;
            let [a, b]: [usize; 2] = field(input, "range")?;
            let lvl = level(&field::<String>(input, "level")?)?;
            json!({"holds": bottom_layer(&d, a..b, lvl)?})
        }
        "fundamental_partition" => {
            let (sig, mu) = from_value::<MuInput>(input)?.parts()?;
            let d = datum_from_mu(&mu, sig)?;
            json!({"groups": ranges(&fundamental_partition(&d).groups)})
        }
        "screen" => {
            let report = screen(&theta(input)?)?;
            let case_b: Vec<&KTypeWeight> = report
                .certificates
                .iter()
                .filter(|c| c.kind == CertificateKind::CaseB_SemiSpherical)
                .flat_map(|c| &c.witness_ktypes)
                .collect();
            let mut out = to_json(&report);
            out["case_b_weights"] = to_json(&case_b);
            out
        }
        "case_a" => {
            let td = theta(input)?;
            let certs = certificate_case_a(&td)?;
            let witnesses: Vec<&Vec<KTypeWeight>> = certs.iter().map(|c| &c.witness_ktypes).collect();
            json!({
                "inf_char": crate::theta::assemble_inf_char(&td),
                "witnesses": witnesses,
                "certificates": certs,
            })
        }
        "segments" => {
            let td = theta(input)?;
            let parts: Vec<[usize; 2]> = field(input, "parts")?;
            let parts: Vec<Range<usize>> = parts.iter().map(|[a, b]| *a..*b).collect();
            let segs = segments_of_partition(&td, &parts);
            json!({
                "segments": segs,
                "interlaced": interlaced(&segs),
                "good_cuts": good_range_cuts(&td),
            })
        }
        "lkt_family" => {
            let family = lkt_family(&theta(input)?)?;
            let mus: Vec<&KTypeWeight> = family.iter().map(|e| &e.mu).collect();
            json!({"mus": mus, "family": family})
        }
        "dirac" => {
            let (sig, mu) = from_value::<MuInput>(input)?.parts()?;
            let lam = InfChar::new(field(input, "inf_char")?);
            let lvl = level(&field::<String>(input, "level")?)?;
            let (violated, best) = dirac_test(&mu, &lam, sig, lvl)?;
            json!({"violated": violated, "best_norm_sq": best})
        }
        "enumerate_count" => {
            let p: usize = field(input, "p")?;
            let q: usize = field(input, "q")?;
            let bound: HalfRational = field(input, "bound")?;
            json!({"count": enumerate_data(Signature::new(p, q)?, bound, false)?.len()})
        }
        other => return Err(Error::Parse(format!("unknown golden op {other:?}"))),
    })
}

type SuiteResult = std::result::Result<usize, (String, String)>;
type Suite = fn(OracleBudget) -> SuiteResult;

const PROPERTY_SUITES: &[(&str, Suite)] = &[
    ("prop-projection", prop_projection),
    ("prop-hull", prop_hull),
    ("prop-roundtrip", prop_roundtrip),
    ("prop-partitions", prop_partitions),
];

fn prop_projection(b: OracleBudget) -> SuiteResult {
    let mut rng = b.rng();
    for i in 0..b.max_samples {
        let n = 1 + i % b.max_n.min(oracle::PROJECT_GUARD);
        let d = oracle::random_rational_vector(&mut rng, n);
        let fast = project_dominant(&d).value;
        let slow = oracle::oracle_project(&d).map_err(|e| (format!("{d:?}"), e.to_string()))?;
        if fast != slow {
            return Err((format!("{d:?}"), format!("pooling gave {fast:?}, oracle gave {slow:?}")));
        }
    }
    Ok(b.max_samples)
}

fn prop_hull(b: OracleBudget) -> SuiteResult {
    let mut rng = b.rng();
    for i in 0..b.max_samples {
        let n = 1 + i % b.max_n.min(oracle::HULL_GUARD);
        let (x, center) = oracle::random_hull_probe(&mut rng, n);
        let label = format!("x={x:?} center={center:?}");
        let fast = hull_check(&InfChar::new(x.clone()), &center).map_err(|e| (label.clone(), e.to_string()))?;
        let slow = oracle::oracle_hull(&x, &center).map_err(|e| (label.clone(), e.to_string()))?;
        if fast != slow {
            return Err((label, format!("majorization gave {fast}, subset sums gave {slow}")));
        }
    }
    Ok(b.max_samples)
}

fn prop_roundtrip(b: OracleBudget) -> SuiteResult {
    let mut rng = b.rng();
    for _ in 0..b.max_samples {
        let sig = oracle::random_signature(&mut rng, b.max_n);
        let mu = oracle::random_dominant_mu(&mut rng, sig, -4, 4);
        let label = format!("{sig} {mu}");
        let d = datum_from_mu(&mu, sig).map_err(|e| (label.clone(), e.to_string()))?;
        let back = mu_from_datum(&d).map_err(|e| (label.clone(), e.to_string()))?;
        if back != mu {
            return Err((label, format!("round trip gave {back}")));
        }
    }
    Ok(b.max_samples)
}

fn prop_partitions(b: OracleBudget) -> SuiteResult {
    let mut rng = b.rng();
    let mut run = 0;
    for _ in 0..b.max_samples {
        let td = oracle::random_theta_datum(&mut rng, b.max_n);
        if td.blocks().len() > oracle::PARTITION_GUARD {
            continue;
        }
        let label = serde_json::to_string(&td).expect("serializable");
        let cuts = good_range_cuts(&td);
        let good = oracle::oracle_good_partitions(&td).map_err(|e| (label.clone(), e.to_string()))?;
        if good.len() != 1 << cuts.len() {
            return Err((label, format!("{} good cuts but {} good partitions", cuts.len(), good.len())));
        }
        run += 1;
    }
    Ok(run)
}
