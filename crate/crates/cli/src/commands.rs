use ageprofile::algebra::{e_regularity, search_zero_divisors, tournament_identity, AgeBasis};
use ageprofile::decomposition::{
    canonical_decomposition, predict_growth_degree, presentation_decomposition,
};
use ageprofile::incidence::{build_incidence, incidence_rank, KantorCase};
use ageprofile::profile::{
    check_basic_inequality, check_monotone, profile_sequence, MonotoneReport,
};
use ageprofile::series::{classify_growth, fit_rational, format_poly, FitOutcome, GrowthClass};
use ageprofile::tournament::classify;
use ageprofile::{Decomposition, Denominator, Presentation, RelStruct, Source, TruncatedSeries};
use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};

use crate::input::{dump_structure, load};
use crate::{AlgebraCheck, Format};

/// Tab-separated key/value rows, the same data as a JSON record, and
/// whether the command's check passed.
pub struct Report {
    rows: Vec<(String, String)>,
    record: Map<String, Value>,
    raw: Option<String>,
    pub pass: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut record = Map::new();
        record.insert("command".into(), json!(command));
        Report {
            rows: Vec::new(),
            record,
            raw: None,
            pass: true,
        }
    }

    fn row(&mut self, key: impl Into<String>, value: impl ToString) {
        self.rows.push((key.into(), value.to_string()));
    }

    fn field(&mut self, key: &str, value: Value) {
        self.record.insert(key.into(), value);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut s = String::new();
                for (k, v) in &self.rows {
                    s.push_str(k);
                    s.push('\t');
                    s.push_str(v);
                    s.push('\n');
                }
                if let Some(raw) = &self.raw {
                    s.push_str(raw);
                }
                s
            }
            Format::Record => {
                let mut record = self.record.clone();
                record.insert("pass".into(), json!(self.pass));
                if let Some(raw) = &self.raw {
                    record.insert("text".into(), json!(raw));
                }
                format!("{}\n", Value::Object(record))
            }
        }
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<T>()
                .ok()
                .with_context(|| format!("{what}: cannot parse {p:?}"))
        })
        .collect()
}

const DEFAULT_WINDOW: usize = 8;

fn window_for(source: &Source, max_n: Option<usize>) -> usize {
    let n = max_n.unwrap_or(DEFAULT_WINDOW);
    match source.max_size() {
        Some(m) => n.min(m),
        None => n,
    }
}

pub fn profile(arg: &str, max_n: Option<usize>) -> Result<Report> {
    let input = load(arg)?;
    let window = window_for(&input.source, max_n);
    let seq = profile_sequence(&input.source, &input.label, window)?;
    let basic = check_basic_inequality(&seq);
    let monotone = check_monotone(&seq, input.source.is_infinite());
    let mut r = Report::new("profile");
    r.row("n", "phi");
    for (n, v) in seq.values.iter().enumerate() {
        r.row(n.to_string(), v);
    }
    r.field("input", json!(input.label));
    r.field("values", json!(seq.values));
    r.field("basic_inequality_violations", json!(basic));
    r.field(
        "monotone_violations",
        match &monotone {
            MonotoneReport::NotApplicable => Value::Null,
            MonotoneReport::Checked(v) => json!(v),
        },
    );
    r.pass = basic.is_empty() && monotone.passed();
    Ok(r)
}

pub fn series(
    arg: &str,
    max_n: usize,
    denominator: Option<&str>,
    denominator_poly: Option<&str>,
    margin: usize,
) -> Result<Report> {
    let input = load(arg)?;
    let window = window_for(&input.source, Some(max_n));
    let seq = profile_sequence(&input.source, &input.label, window)?;
    let series = TruncatedSeries::from_profile(&seq.values)?;
    let mut r = Report::new("series");
    r.row("series", &series);
    r.field("input", json!(input.label));
    r.field("series", json!(series.coeffs));
    let den = match (denominator, denominator_poly) {
        (Some(d), _) => Some(Denominator::Product(parse_list(d, "--denominator")?)),
        (None, Some(p)) => Some(Denominator::Poly(parse_list(p, "--denominator-poly")?)),
        (None, None) => None,
    };
    let Some(den) = den else {
        let growth = classify_growth(&series);
        r.row("growth", &growth);
        r.field("growth", json!(growth.to_string()));
        if let GrowthClass::Polynomial { fitted, .. } = &growth {
            r.row("fitted", fitted);
            r.field("fitted", json!(fitted.to_string()));
        }
        return Ok(r);
    };
    r.row("denominator", &den);
    r.field("denominator", json!(den.to_string()));
    match fit_rational(&series, &den, margin)? {
        FitOutcome::Fit { numerator } => {
            r.row("result", "FIT");
            r.row("numerator", format_poly(&numerator));
            r.field("numerator", json!(numerator));
        }
        FitOutcome::Fail { start, residuals } => {
            r.row("result", "FAIL");
            r.row("residuals_from", start);
            r.row("residuals", join(&residuals));
            r.field("residuals_from", json!(start));
            r.field("residuals", json!(residuals));
            r.pass = false;
        }
    }
    Ok(r)
}

fn decomposition_rows(r: &mut Report, d: &Decomposition) {
    r.row("block", "size\tmembers");
    let mut blocks = Vec::new();
    for (i, b) in d.blocks.iter().enumerate() {
        r.row(i.to_string(), format!("{}\t{}", b.size, join(&b.members)));
        blocks.push(json!({"size": b.size.to_string(), "members": b.members}));
    }
    r.row("blocks", d.blocks.len());
    r.row("infinite_blocks", d.infinite_blocks());
    r.row("finite_total", d.finite_total());
    r.field("blocks", json!(blocks));
    r.field("infinite_blocks", json!(d.infinite_blocks()));
    r.field("finite_total", json!(d.finite_total()));
    if let Ok(degree) = predict_growth_degree(d) {
        r.row("growth_degree", degree);
        r.field("growth_degree", json!(degree));
    }
}

pub fn decompose(arg: &str) -> Result<Report> {
    let input = load(arg)?;
    let mut r = Report::new("decompose");
    r.field("input", json!(input.label));
    match &input.source {
        Source::Finite(s) => {
            r.field("basis", json!("structure"));
            decomposition_rows(&mut r, &canonical_decomposition(s)?);
        }
        Source::Presented(Presentation::LexSum(p)) => {
            r.field("basis", json!("presentation"));
            decomposition_rows(&mut r, &presentation_decomposition(p)?);
        }
        Source::Presented(Presentation::Multichain(p)) => {
            // the largest truncation the subset table accepts
            let per_slice = p.slice_count().max(1);
            let positions = (20usize.saturating_sub(p.finite_size()) / per_slice).clamp(1, 4);
            let (t, _) = p.truncation(positions);
            r.row("truncation_positions", positions);
            r.field(
                "basis",
                json!(format!("truncation to {positions} positions")),
            );
            decomposition_rows(&mut r, &canonical_decomposition(&t)?);
        }
    }
    Ok(r)
}

pub fn algebra(
    arg: &str,
    check: AlgebraCheck,
    max_degree: usize,
    budget: usize,
) -> Result<Report> {
    let input = load(arg)?;
    let mut r = Report::new("algebra");
    r.field("input", json!(input.label));
    r.field("max_degree", json!(max_degree));
    match check {
        AlgebraCheck::ERegular => {
            let basis = AgeBasis::from_source(&input.source, &input.label, max_degree + 1)?;
            r.field("check", json!("e-regular"));
            r.row("n", "dim_n\tdim_next\trank\tregular");
            let mut rows = Vec::new();
            for n in 0..=max_degree {
                let e = e_regularity(&basis, n)?;
                r.row(
                    n.to_string(),
                    format!("{}\t{}\t{}\t{}", e.dim_n, e.dim_next, e.rank, e.regular()),
                );
                rows.push(
                    json!({"n": n, "dim_n": e.dim_n, "dim_next": e.dim_next, "rank": e.rank}),
                );
                r.pass &= e.regular();
            }
            r.field("degrees", json!(rows));
        }
        AlgebraCheck::ZeroDivisors => {
            let basis = AgeBasis::from_source(&input.source, &input.label, max_degree)?;
            let report = search_zero_divisors(&basis, max_degree, budget)?;
            r.field("check", json!("zero-divisors"));
            r.row("candidates_checked", report.candidates_checked);
            let pairs: Vec<String> = report
                .degree_pairs
                .iter()
                .map(|(a, b)| format!("{a}+{b}"))
                .collect();
            r.row("degree_pairs", pairs.join(","));
            r.field("candidates_checked", json!(report.candidates_checked));
            r.field("degree_pairs", json!(report.degree_pairs));
            match report.witness {
                None => {
                    r.row("result", "none found");
                    r.field("witness", Value::Null);
                }
                Some((u, v)) => {
                    r.row("result", "witness");
                    r.row("u", &u);
                    r.row("v", &v);
                    r.field("witness", json!({"u": u.to_string(), "v": v.to_string()}));
                    r.pass = false;
                }
            }
        }
        AlgebraCheck::TournamentIdentity => {
            let basis = AgeBasis::from_source(&input.source, &input.label, max_degree)?;
            r.field("check", json!("tournament-identity"));
            r.row("n", "factorial\tacyclic_coefficient\tholds");
            let mut rows = Vec::new();
            for n in 0..=max_degree {
                let t = tournament_identity(&basis, n)?;
                let acyclic = t
                    .acyclic_coefficient
                    .as_ref()
                    .map_or("-".to_string(), ToString::to_string);
                r.row(
                    n.to_string(),
                    format!("{}\t{}\t{}", t.factorial, acyclic, t.holds),
                );
                rows.push(json!({"n": n, "factorial": t.factorial.to_string(), "acyclic_coefficient": acyclic, "holds": t.holds}));
                r.pass &= t.holds;
            }
            r.field("degrees", json!(rows));
        }
    }
    r.row("result", if r.pass { "PASS" } else { "FAIL" });
    Ok(r)
}

fn case_status(c: &KantorCase) -> &'static str {
    match (c.full_row_rank(), c.hypothesis) {
        (true, _) => "FULL",
        (false, true) => "DEFICIENT",
        (false, false) => "DEFICIENT (hypothesis 2n+k<=m unmet)",
    }
}

pub fn incidence(
    m: Option<usize>,
    n: Option<usize>,
    k: Option<usize>,
    sweep: Option<usize>,
    dump: bool,
) -> Result<Report> {
    let mut r = Report::new("incidence");
    let cases: Vec<KantorCase> = match (sweep, m, n, k) {
        (Some(s), ..) => {
            if dump {
                bail!("--dump needs a single --m/--n/--k case");
            }
            let mut all = Vec::new();
            for m in 0..=s {
                all.extend(ageprofile::incidence::kantor_sweep(m)?);
            }
            all
        }
        (None, Some(m), Some(n), Some(k)) => vec![incidence_rank(m, n, k)?],
        _ => bail!("give --m, --n and --k, or --sweep"),
    };
    r.row("m", "n\tk\trank\trows\tstatus");
    let mut records = Vec::new();
    for c in &cases {
        r.row(
            c.m.to_string(),
            format!(
                "{}\t{}\t{}\t{}\t{}",
                c.n,
                c.k,
                c.rank,
                c.rows,
                case_status(c)
            ),
        );
        records.push(json!({
            "m": c.m, "n": c.n, "k": c.k, "rank": c.rank, "rows": c.rows,
            "hypothesis": c.hypothesis, "full_row_rank": c.full_row_rank(),
        }));
        if c.hypothesis && !c.full_row_rank() {
            r.pass = false;
        }
    }
    r.field("cases", json!(records));
    if dump {
        let c = &cases[0];
        r.raw = Some(build_incidence(c.m, c.n, c.k)?.dump());
    }
    Ok(r)
}

pub fn tournament(arg: &str, window: usize) -> Result<Report> {
    let input = load(arg)?;
    let report = classify(&input.source, window)?;
    let mut r = Report::new("tournament");
    r.field("input", json!(input.label));
    r.row("regime", &report.regime);
    r.field("regime", json!(report.regime.to_string()));
    if let ageprofile::TournamentRegime::Polynomial { degree } = report.regime {
        r.field("degree", json!(degree));
    }
    if let Some(components) = &report.components {
        let text: Vec<String> = components
            .iter()
            .map(|c| format!("{{{}}}", join(c)))
            .collect();
        r.row("components", text.join(" "));
        r.field("components", json!(components));
    }
    if !report.truncation_components.is_empty() {
        r.row("truncation_components", join(&report.truncation_components));
        r.field("truncation_components", json!(report.truncation_components));
    }
    r.row("profile", join(&report.profile));
    r.field("profile", json!(report.profile));
    Ok(r)
}

pub fn dump(arg: &str, truncate: usize) -> Result<Report> {
    let input = load(arg)?;
    let structure: RelStruct = match input.source {
        Source::Finite(s) => s,
        Source::Presented(Presentation::LexSum(p)) => p.truncation(truncate).0,
        Source::Presented(Presentation::Multichain(p)) => p.truncation(truncate).0,
    };
    let mut r = Report::new("dump");
    r.field("input", json!(input.label));
    r.raw = Some(dump_structure(&structure)?);
    Ok(r)
}
