use std::path::Path;

use girard_lab::digraph::{
    build_gamma_rc, parse_digraph, random_digraph, validate, ColoredDigraph,
};
use girard_lab::involution::audit_involution;
use girard_lab::newton::{
    classical_newton_residual, verify_theorem2, verify_theorem2_with, verify_theorem3, EllForm,
    NewtonCase,
};
use girard_lab::powersum::{
    goodword_count, goodwords_oracle, powersum_bernoulli, powersum_direct, powersum_stirling,
    theorem1_lhs, theorem1_rhs, verify_lemma21, PowerSumInstance,
};
use num_bigint::BigInt;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{Outcome, RunReport};
use crate::{GraphSource, Method};

pub const SEED_ENV: &str = "GIRARD_LAB_SEED";

const PREFACTOR_NOTE: &str =
    "the Stirling power-sum formula is evaluated without a 1/(m+1) prefactor; \
with that prefactor the value at m = n = 1 would be 1/2 instead of 1";
const AGGREGATION_NOTE: &str = "for r <= n the walk-free term is r * sum over |S| = r of l_{r,S}; \
the single term r * l_{r,C} vanishes whenever the color count differs from r";
const LITERAL_NOTE: &str =
    "literal r * l_{r,C} form requested; it is expected to hold only when the color count equals r";
const Y_SIGN_NOTE: &str = "for r <= n the Y term enters as r * (-1)^r * Y; the unsigned r * Y leaves a nonzero residual for odd r";

fn resolve_seed(seed: Option<u64>) -> Result<u64, String> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_ENV}={v:?} is not an unsigned integer")),
        Err(_) => Ok(0),
    }
}

fn parse_csv(text: &str) -> Result<Vec<BigInt>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| format!("{:?} is not an integer", s.trim()))
        })
        .collect()
}

fn join(values: &[BigInt]) -> String {
    values
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn theorem1(m: u32, r: u32) -> Outcome {
    let Some(inst) = PowerSumInstance::new(m, r) else {
        return Outcome::Usage("--m and --r must be at least 1".into());
    };
    if m > 30 {
        return Outcome::Usage("--m must be at most 30".into());
    }
    let mut report = RunReport::start("verify theorem1");
    report.param("m", m).param("r", r);
    report.trials = 1;
    let lhs = theorem1_lhs(inst);
    let rhs = theorem1_rhs(inst);
    let oracle = goodwords_oracle(inst);
    report.detail(format!("left side: {} terms", lhs.num_terms()));
    report.detail(format!("good words: {}", goodword_count(inst)));
    for (name, other) in [("rhs", &rhs), ("good_words", &oracle)] {
        let residual = &lhs - other;
        if !residual.is_zero() {
            report
                .failures
                .push(json!({"check": format!("lhs - {name}"), "residual": residual.to_string()}));
        }
    }
    report.finish()
}

enum Graphs {
    File(ColoredDigraph),
    Random(Vec<(u64, ColoredDigraph)>),
}

fn load_graphs(source: &GraphSource, report: &mut RunReport) -> Result<Graphs, Outcome> {
    if let Some(path) = &source.graph {
        report.param("graph", path.display().to_string());
        return load_graph_file(path).map(Graphs::File);
    }
    if source.n == 0 || source.k == 0 || source.k > 64 {
        return Err(Outcome::Usage(
            "--n must be positive and --k within 1..=64".into(),
        ));
    }
    if !(source.density > 0.0 && source.density <= 1.0) {
        return Err(Outcome::Usage("--density must lie in (0, 1]".into()));
    }
    if source.weight_bound == 0 {
        return Err(Outcome::Usage("--weight-bound must be positive".into()));
    }
    let seed = resolve_seed(source.seed).map_err(Outcome::Usage)?;
    report.seed = Some(seed);
    report
        .param("n", source.n)
        .param("k", source.k)
        .param("density", source.density)
        .param("weight_bound", source.weight_bound)
        .param("random", true);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs = (0..source.trials)
        .map(|_| {
            let s = rng.next_u64();
            (
                s,
                random_digraph(source.n, source.k, source.density, source.weight_bound, s),
            )
        })
        .collect();
    Ok(Graphs::Random(graphs))
}

fn load_graph_file(path: &Path) -> Result<ColoredDigraph, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::BadGraph(format!("cannot read {}: {e}", path.display())))?;
    let g =
        parse_digraph(&text).map_err(|e| Outcome::BadGraph(format!("{}: {e}", path.display())))?;
    let violations = validate(&g);
    if !violations.is_empty() {
        return Err(Outcome::BadGraph(format!(
            "{}: {}",
            path.display(),
            violations.join("; ")
        )));
    }
    Ok(g)
}

fn graph_list(graphs: Graphs) -> Vec<(Option<u64>, ColoredDigraph)> {
    match graphs {
        Graphs::File(g) => vec![(None, g)],
        Graphs::Random(v) => v.into_iter().map(|(s, g)| (Some(s), g)).collect(),
    }
}

pub fn theorem2(source: &GraphSource, r: usize, literal: bool) -> Outcome {
    if r == 0 {
        return Outcome::Usage("--r must be at least 1".into());
    }
    let mut report = RunReport::start("verify theorem2");
    report.param("r", r).param("literal_ell", literal);
    let graphs = match load_graphs(source, &mut report) {
        Ok(g) => graph_list(g),
        Err(o) => return o,
    };
    let form = if literal {
        EllForm::Literal
    } else {
        EllForm::Aggregated
    };
    for (trial, (graph_seed, g)) in graphs.iter().enumerate() {
        report.trials += 1;
        if r > g.k() {
            report.note("vacuous: r exceeds color count");
        }
        let result = verify_theorem2_with(g, r, form);
        if result.case == NewtonCase::RAtMostN && g.k() != r {
            report.note(if literal {
                LITERAL_NOTE
            } else {
                AGGREGATION_NOTE
            });
        }
        report.detail(format!(
            "trial {trial}: n={} k={} case={} residual={} alternate={}",
            g.n(),
            g.k(),
            case_name(result.case),
            result.residual,
            result.alternate_residual
        ));
        if !result.passed() {
            report.failures.push(json!({
                "trial": trial,
                "graph_seed": graph_seed,
                "case": case_name(result.case),
                "residual": result.residual.to_string(),
            }));
        }
    }
    report.finish()
}

fn case_name(case: NewtonCase) -> &'static str {
    match case {
        NewtonCase::RExceedsN => "r>n",
        NewtonCase::RAtMostN => "r<=n",
    }
}

pub fn theorem3(r: usize, n: usize) -> Outcome {
    if r == 0 || n == 0 {
        return Outcome::Usage("--r and --n must be at least 1".into());
    }
    if r > 64 {
        return Outcome::Usage("--r must be at most 64".into());
    }
    let mut report = RunReport::start("verify theorem3");
    report.param("r", r).param("n", n);
    report.trials = 1;
    let symbolic = verify_theorem3(r, n);
    let graph = verify_theorem2(&build_gamma_rc(n, r), r);
    if symbolic.case == NewtonCase::RAtMostN {
        report.note(Y_SIGN_NOTE);
    }
    report.detail(format!(
        "case {}: {} nonzero terms",
        case_name(symbolic.case),
        symbolic.breakdown.len()
    ));
    report.detail(format!("residual: {}", symbolic.residual));
    if !symbolic.passed() {
        report
            .failures
            .push(json!({"check": "symbolic residual", "residual": symbolic.residual.to_string()}));
    }
    if symbolic.breakdown != graph.breakdown {
        let gap = &symbolic.breakdown_total() - &graph.breakdown_total();
        report
            .failures
            .push(json!({"check": "self-loop graph agreement", "difference": gap.to_string()}));
    }
    report.finish()
}

pub fn newton_girard(
    n: usize,
    r: usize,
    roots: Option<&str>,
    trials: u64,
    seed: Option<u64>,
) -> Outcome {
    if n == 0 || r == 0 {
        return Outcome::Usage("--n and --r must be at least 1".into());
    }
    let mut report = RunReport::start("verify newton-girard");
    report.param("n", n).param("r", r);
    let samples: Vec<Vec<BigInt>> = match roots {
        Some(text) => match parse_csv(text) {
            Ok(v) if v.len() == n => vec![v],
            Ok(v) => {
                return Outcome::Usage(format!("--roots has {} entries but --n is {n}", v.len()))
            }
            Err(e) => return Outcome::Usage(e),
        },
        None => {
            let seed = match resolve_seed(seed) {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e),
            };
            report.seed = Some(seed);
            report.param("random", true);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials)
                .map(|_| {
                    (0..n)
                        .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
                        .collect()
                })
                .collect()
        }
    };
    for (trial, sample) in samples.iter().enumerate() {
        report.trials += 1;
        let residual = classical_newton_residual(sample, r);
        report.detail(format!(
            "trial {trial}: roots=[{}] residual={residual}",
            join(sample)
        ));
        if residual != BigInt::from(0) {
            report.failures.push(
                json!({"trial": trial, "roots": join(sample), "residual": residual.to_string()}),
            );
        }
    }
    report.finish()
}

pub fn lemma21(alpha: u32, c: Option<&str>, m: usize, trials: u64, seed: Option<u64>) -> Outcome {
    if alpha == 0 {
        return Outcome::Usage("--alpha must be at least 1".into());
    }
    let mut report = RunReport::start("verify lemma21");
    report.param("alpha", alpha);
    let samples: Vec<Vec<BigInt>> = match c {
        Some(text) => match parse_csv(text) {
            Ok(v) => vec![v],
            Err(e) => return Outcome::Usage(e),
        },
        None => {
            if m == 0 {
                return Outcome::Usage("--m must be at least 1".into());
            }
            let seed = match resolve_seed(seed) {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e),
            };
            report.seed = Some(seed);
            report.param("m", m).param("random", true);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials)
                .map(|_| {
                    (0..m)
                        .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
                        .collect()
                })
                .collect()
        }
    };
    for (trial, sample) in samples.iter().enumerate() {
        report.trials += 1;
        match verify_lemma21(alpha, sample) {
            Ok(true) => {}
            Ok(false) => report
                .failures
                .push(json!({"trial": trial, "c": join(sample)})),
            Err(e) => report
                .failures
                .push(json!({"trial": trial, "c": join(sample), "error": e.to_string()})),
        }
    }
    report.finish()
}

pub fn involution_audit(source: &GraphSource, r: usize) -> Outcome {
    if r == 0 {
        return Outcome::Usage("--r must be at least 1".into());
    }
    let mut report = RunReport::start("involution audit");
    report.param("r", r);
    let graphs = match load_graphs(source, &mut report) {
        Ok(g) => graph_list(g),
        Err(o) => return o,
    };
    for (trial, (graph_seed, g)) in graphs.iter().enumerate() {
        report.trials += 1;
        if r > g.k() {
            report.note("vacuous: r exceeds color count");
        }
        let audit = audit_involution(g, r);
        if audit.case == NewtonCase::RAtMostN && g.k() != r {
            report.note(AGGREGATION_NOTE);
        }
        report.detail(format!(
            "trial {trial}: {} pairs, {} BAD, {} GOOD in {} groups, total={}",
            audit.pair_count,
            audit.bad_count,
            audit.good_count,
            audit.good_groups.len(),
            audit.total
        ));
        if !audit.passed() {
            report.failures.push(json!({
                "trial": trial,
                "graph_seed": graph_seed,
                "involution_failures": audit.involution_failures.len(),
                "good_count_ok": audit.good_count_ok(),
                "total": audit.total.to_string(),
                "theorem_residual": audit.theorem_residual.to_string(),
            }));
        }
    }
    report.finish()
}

pub fn powersum(m: u32, n: u32, method: Method) -> Outcome {
    if m == 0 || n == 0 {
        return Outcome::Usage("--m and --n must be at least 1".into());
    }
    let mut report = RunReport::start("powersum");
    let method_name = match method {
        Method::Stirling => "stirling",
        Method::Bernoulli => "bernoulli",
        Method::Direct => "direct",
        Method::All => "all",
    };
    report
        .param("m", m)
        .param("n", n)
        .param("method", method_name);
    report.trials = 1;
    let direct = powersum_direct(m, n);
    let mut values: Vec<(&str, String)> = Vec::new();
    if matches!(method, Method::Stirling | Method::All) {
        report.note(PREFACTOR_NOTE);
        match powersum_stirling(m, n) {
            Ok(v) => values.push(("stirling", v.to_string())),
            Err(e) => values.push(("stirling", format!("error: {e}"))),
        }
    }
    if matches!(method, Method::Bernoulli | Method::All) {
        // the Bernoulli form sums to n - 1
        let v = powersum_bernoulli(m, n)
            + num_rational::BigRational::from_integer(num_traits::pow(BigInt::from(n), m as usize));
        values.push(("bernoulli", v.to_string()));
    }
    if matches!(method, Method::Direct | Method::All) {
        values.push(("direct", direct.to_string()));
    }
    let expected = direct.to_string();
    for (name, value) in &values {
        report.detail(format!("{name}: {value}"));
        if *value != expected {
            report
                .failures
                .push(json!({"method": name, "value": value, "direct": expected}));
        }
    }
    report.finish()
}
