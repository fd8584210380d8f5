use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Experiment, Params};
use super::dot::export_dot;
use super::{CliError, Command};
use crate::geometry::{
    cofinal_positive_path, connectivity_survey, r_components, ray_swamp_candidate, tree_swamp_certificate,
    verify_maxima_ray, verify_separation, RPath, SeparationVerdict, SurveyVerdict,
};
use crate::group::{Ball, Element, EnumConfig, GroupKind};
use crate::order::verify_order_axioms;
use crate::regular::{
    connectivity_radius, quasigeodesic_check, regular_interpolation, verify_cone_dfa, DfaVerdict, LanguageSample,
};
use crate::word::Word;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

/// Result of one command, before it is written out.
pub struct Outcome {
    pub exit: i32,
    pub verdict: String,
    pub result: Value,
    pub summary: Vec<String>,
    pub certificate: Option<Value>,
    pub dot: Option<String>,
}

impl Outcome {
    fn new(exit: i32, verdict: impl Into<String>, result: impl Serialize) -> Outcome {
        Outcome {
            exit,
            verdict: verdict.into(),
            result: serde_json::to_value(result).expect("reports serialize"),
            summary: Vec::new(),
            certificate: None,
            dot: None,
        }
    }

    fn line(mut self, text: impl Into<String>) -> Outcome {
        self.summary.push(text.into());
        self
    }
}

fn pass_fail(pass: bool) -> (i32, &'static str) {
    if pass {
        (EXIT_PASS, "PASS")
    } else {
        (EXIT_FAIL, "FAIL")
    }
}

pub fn run_command(command: Command, e: &Experiment, p: &Params, cfg: &EnumConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Axioms => {
            let report = verify_order_axioms(e.order()?, p.radius.unwrap_or(4), cfg)?;
            let (exit, verdict) = pass_fail(report.pass());
            let line = format!("{} elements, {} closure pairs checked", report.elements, report.closure_pairs);
            Ok(Outcome::new(exit, verdict, &report).line(line))
        }
        Command::Ray => {
            let report = verify_maxima_ray(e.order()?, p.radius.unwrap_or(5), cfg)?;
            let (exit, verdict) = pass_fail(report.pass());
            let line = format!("maxima: {}", report.maxima.join(", "));
            Ok(Outcome::new(exit, verdict, &report).line(line))
        }
        Command::Components => {
            let (r, radius) = (p.r.unwrap_or(1), p.radius.unwrap_or(4));
            let report = r_components(e.order()?, r, radius, cfg)?;
            let line = format!("{} positive elements in {} classes at width {r}", report.positives, report.count());
            Ok(Outcome::new(EXIT_PASS, format!("{} components", report.count()), &report).line(line))
        }
        Command::Swamp => swamp(e, p, cfg),
        Command::Survey => {
            let o = e.order()?;
            let radii = p.radii.clone().unwrap_or_else(|| vec![2, 4, 6]);
            let report = connectivity_survey(o, p.r.unwrap_or(1), &radii, cfg)?;
            let exit = match report.verdict {
                SurveyVerdict::PrietoConsistent | SurveyVerdict::HuchaCertified => EXIT_PASS,
                SurveyVerdict::Evidence | SurveyVerdict::Mixed => EXIT_UNKNOWN,
            };
            let mut out = Outcome::new(exit, report.message.clone(), &report).line(format!("counts {:?}", report.counts));
            out.certificate = report.certificate.as_ref().map(|c| serde_json::to_value(c).expect("serializes"));
            Ok(out)
        }
        Command::CofinalPath => cofinal_path(e, p, cfg),
        Command::DfaVerify => {
            let radius = p.radius.unwrap_or(4);
            let report = verify_cone_dfa(e.dfa()?, &e.model, radius, p.lmax.unwrap_or(4 * radius), cfg)?;
            let exit = match report.verdict {
                DfaVerdict::Pass => EXIT_PASS,
                DfaVerdict::Fail => EXIT_FAIL,
                DfaVerdict::Unknown => EXIT_UNKNOWN,
            };
            let line = report
                .counterexample
                .clone()
                .unwrap_or_else(|| format!("{} accepted elements, {} membership", report.in_set.len(), report.membership));
            Ok(Outcome::new(exit, format!("{:?}", report.verdict).to_uppercase(), &report).line(line))
        }
        Command::DfaPath => dfa_path(e, p, cfg),
        Command::DfaQg => {
            let report = quasigeodesic_check(
                e.dfa()?,
                &e.model,
                p.lambda.unwrap_or(1.0),
                p.c.unwrap_or(0.0),
                p.lmax.unwrap_or(8),
                cfg,
            )?;
            let (exit, verdict) = pass_fail(report.verdict == DfaVerdict::Pass);
            let line = match &report.violation {
                Some(v) => format!("word {} prefixes {}..{} at distance {}", v.word, v.i, v.j, v.distance),
                None => format!("{} accepted words checked", report.words_checked),
            };
            Ok(Outcome::new(exit, verdict, &report).line(line))
        }
        Command::ExportDot => {
            let (r, radius) = (p.r.unwrap_or(1), p.radius.unwrap_or(2));
            let dot = export_dot(e.order()?, radius, r, cfg)?;
            let nodes = dot.lines().filter(|l| l.contains("[sign=")).count();
            let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
            let mut out = Outcome::new(EXIT_PASS, "exported", json!({ "nodes": nodes, "edges": edges }))
                .line(format!("{nodes} nodes, {edges} edges"));
            out.dot = Some(dot);
            Ok(out)
        }
    }
}

fn swamp(e: &Experiment, p: &Params, cfg: &EnumConfig) -> Result<Outcome, CliError> {
    let o = e.order()?;
    let r = p.r.unwrap_or(1);
    let tree = matches!(e.model.kind(), GroupKind::Free(k) if *k >= 2);
    let (cert, path) = if tree {
        let cert = tree_swamp_certificate(o, r, p.search_radius.unwrap_or(r + 8), cfg)?;
        (cert, None)
    } else {
        let radius = p.radius.unwrap_or(r + 4);
        let cert = ray_swamp_candidate(o, r, radius, cfg)?;
        let outcome = verify_separation(&cert, &e.model, radius, cfg)?;
        (cert, outcome.path)
    };
    let exit = match cert.verdict {
        SeparationVerdict::CertifiedTree | SeparationVerdict::CertifiedExhaustive => EXIT_PASS,
        SeparationVerdict::NotSeparating => EXIT_FAIL,
        SeparationVerdict::Evidence => EXIT_UNKNOWN,
    };
    let line = format!(
        "center {}, |S| = {}, witnesses {} and {}",
        cert.center,
        cert.swamp.len(),
        cert.witnesses.0,
        cert.witnesses.1
    );
    let mut out = Outcome::new(exit, cert.verdict.tag(), json!({ "certificate": &cert, "avoiding_path": &path })).line(line);
    if let Some(path) = &path {
        out = out.line(format!("avoiding path: {}", path.words().join(" ")));
    }
    out.certificate = Some(serde_json::to_value(&cert).expect("serializes"));
    Ok(out)
}

fn parse(e: &Experiment, s: &str) -> Result<Element, CliError> {
    e.model.parse_element(s).map_err(|err| CliError::Usage(format!("{s:?}: {err}")))
}

fn cofinal_path(e: &Experiment, p: &Params, cfg: &EnumConfig) -> Result<Outcome, CliError> {
    let o = e.order()?;
    let pairs: Vec<(Element, Element)> = match (&p.from, &p.to) {
        (Some(g), Some(h)) => vec![(parse(e, g)?, parse(e, h)?)],
        (None, None) => {
            let ball = Ball::enumerate(&e.model, p.radius.unwrap_or(4), cfg)?;
            let pos: Vec<&Element> = ball.elements().filter(|g| o.sign(g).is_positive()).collect();
            if pos.is_empty() {
                return Err(CliError::Usage("no positive elements in the ball".into()));
            }
            let mut rng = StdRng::seed_from_u64(p.seed.unwrap_or(0));
            (0..p.samples.unwrap_or(50))
                .map(|_| {
                    let g = pos[rng.gen_range(0..pos.len())].clone();
                    let h = pos[rng.gen_range(0..pos.len())].clone();
                    (g, h)
                })
                .collect()
        }
        _ => return Err(CliError::Usage("give both \"from\" and \"to\", or neither".into())),
    };
    let mut paths: Vec<RPath> = Vec::new();
    let mut all_positive = true;
    for (g, h) in &pairs {
        let path = cofinal_positive_path(o, g, h, cfg)?;
        all_positive &= path.is_valid(&e.model) && path.points.iter().all(|q| o.sign(q).is_positive());
        paths.push(path);
    }
    let (exit, verdict) = pass_fail(all_positive);
    let longest = paths.iter().map(RPath::len).max().unwrap_or(0);
    let line = format!("{} positive paths, longest has {longest} points", paths.len());
    Ok(Outcome::new(exit, verdict, json!({ "paths": paths })).line(line))
}

fn dfa_path(e: &Experiment, p: &Params, cfg: &EnumConfig) -> Result<Outcome, CliError> {
    let d = e.dfa()?;
    let words: Vec<Word> = match &p.word {
        Some(w) => vec![w.parse().map_err(|err| CliError::Usage(format!("{w:?}: {err}")))?],
        None => LanguageSample::enumerate(d, &e.model, p.lmax.unwrap_or(8), cfg)?.words,
    };
    let bound = connectivity_radius(d);
    let mut max_gap = 0;
    let mut paths = Vec::new();
    for w in &words {
        let path = regular_interpolation(d, &e.model, w)?;
        max_gap = max_gap.max(path.max_gap(&e.model));
        paths.push(json!({ "word": w.to_string(), "path": path }));
    }
    let (exit, verdict) = pass_fail(max_gap <= bound);
    let line = format!("{} words, largest gap {max_gap}, bound {bound}", words.len());
    Ok(Outcome::new(exit, verdict, json!({ "bound": bound, "max_gap": max_gap, "paths": paths })).line(line))
}
