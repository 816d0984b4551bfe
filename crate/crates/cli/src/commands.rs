//! Command implementations. Each returns a Report; rendering and exit
//! codes live elsewhere.

use etalab::eta::{
    eta_full, eta_via_hurwitz, partial_sum, tail_approx, tail_remainder, zeta_strip, TailIndex,
    TailMethod,
};
use etalab::mp::{format_fixed, format_sci};
use etalab::probe::{
    decay_fit, digit_rounded_error, eps_scaled, exchange_report, f_sequence, lemma1_ratios,
    locate_zero, uniform_bound_scan, zeros_in_range, ProbeSeries, Schedule,
};
use etalab::{BigComplex, BigReal, EtaError};

use crate::config::RunConfig;
use crate::error::{usage, Result};
use crate::parse::{parse_bracket, parse_complex_literal, parse_n_spec, parse_offsets};
use crate::report::Report;

/// Default schedules per command, in n-spec notation.
const DIGIT_BLOCK_NS: &str = "1e8,1e10,1e12,1e14";
const PROBE_NS: &str = "1e2:1e8";
const EXCHANGE_NS: &str = "1e2:1e6";
const EVAL_PARTIAL_N: u64 = 10_000;
const UNIFORM_T_MAX: u64 = 100;

fn parse_s(cfg: &RunConfig) -> Result<BigComplex> {
    parse_complex_literal(&cfg.s_literal, cfg.precision)
}

fn parse_sigma(cfg: &RunConfig, default: &str) -> Result<(String, BigReal)> {
    let tok = cfg.sigma.clone().unwrap_or_else(|| default.to_string());
    let v = BigReal::parse_decimal(&tok, cfg.precision)
        .map_err(|e| usage(format!("sigma: {e}")))?;
    Ok((tok, v))
}

fn schedule_from(cfg: &RunConfig, default: &str) -> Result<Schedule> {
    let spec = cfg.n_schedule.as_deref().unwrap_or(default);
    let ns = parse_n_spec(spec)?;
    let idx: Result<Vec<TailIndex>> = ns
        .into_iter()
        .map(|n| TailIndex::new(n).map_err(Into::into))
        .collect();
    Ok(Schedule::new(idx?)?)
}

fn indices_from(cfg: &RunConfig, default: &str) -> Result<Vec<TailIndex>> {
    let spec = cfg.n_schedule.as_deref().unwrap_or(default);
    let ns = parse_n_spec(spec)?;
    ns.into_iter()
        .map(|n| TailIndex::new(n).map_err(Into::into))
        .collect()
}

fn fixed(x: &BigReal, cfg: &RunConfig) -> String {
    format_fixed(x, cfg.digits)
}

fn sci(x: &BigReal) -> String {
    format_sci(x, 5)
}

/// Matching leading fractional digits of two fixed-format strings;
/// 0 when sign or integer part differ.
pub fn agreement_digits(a: &str, b: &str) -> usize {
    let (Some((ai, af)), Some((bi, bf))) = (a.split_once('.'), b.split_once('.')) else {
        return 0;
    };
    if ai != bi {
        return 0;
    }
    af.bytes()
        .zip(bf.bytes())
        .take_while(|(x, y)| x == y)
        .count()
}

/// eta, zeta and a partial sum at one point, plus a dual-route
/// agreement note for eta.
pub fn cmd_eval(cfg: &RunConfig) -> Result<Report> {
    let s = parse_s(cfg)?;
    let n = match cfg.n_schedule.as_deref() {
        None => EVAL_PARTIAL_N,
        Some(spec) => *parse_n_spec(spec)?
            .first()
            .expect("parse_n_spec rejects empty lists"),
    };
    let idx = TailIndex::new(n)?;
    let mut report = Report::new("eval", cfg.precision.bits(), vec!["quantity", "re", "im"]);
    let mut first_err: Option<EtaError> = None;
    let mut any_ok = false;
    let quantities: Vec<(String, std::result::Result<BigComplex, EtaError>)> = vec![
        ("eta".to_string(), eta_full(&s, cfg.precision).map(|r| r.value)),
        (
            "zeta".to_string(),
            zeta_strip(&s, cfg.precision).map(|r| r.value),
        ),
        (
            format!("eta_n({n})"),
            partial_sum(&s, idx, cfg.precision).map(|r| r.value),
        ),
    ];
    for (label, outcome) in quantities {
        match outcome {
            Ok(v) => {
                any_ok = true;
                report.push_row(vec![label, fixed(v.re(), cfg), fixed(v.im(), cfg)]);
            }
            Err(e) => {
                report.push_note(format!("{label}: {e}"));
                report.push_row(vec![label, "-".into(), "-".into()]);
                first_err.get_or_insert(e);
            }
        }
    }
    if let Some(e) = first_err {
        if !any_ok {
            return Err(e.into());
        }
    }
    match (eta_full(&s, cfg.precision), eta_via_hurwitz(&s, cfg.precision)) {
        (Ok(direct), Ok(via)) => {
            let agree = agreement_digits(
                &fixed(direct.value.re(), cfg),
                &fixed(via.value.re(), cfg),
            )
            .min(agreement_digits(
                &fixed(direct.value.im(), cfg),
                &fixed(via.value.im(), cfg),
            ));
            report.push_note(format!(
                "dual-route agreement: {agree} of {} digits",
                cfg.digits
            ));
        }
        (_, Err(e)) | (Err(e), _) => report.push_note(format!("dual-route agreement: {e}")),
    }
    Ok(report)
}

/// The tail and its closed-form approximation side by side, one row per
/// component, with the length of the agreeing digit prefix.
pub fn cmd_digits(cfg: &RunConfig) -> Result<Report> {
    let s = parse_s(cfg)?;
    let ns = indices_from(cfg, DIGIT_BLOCK_NS)?;
    let mut report = Report::new(
        "digits",
        cfg.precision.bits(),
        vec!["n", "part", "tail", "approx", "agree"],
    );
    for idx in ns {
        let r = tail_remainder(&s, idx, cfg.precision, TailMethod::HurwitzPair)?;
        let t = tail_approx(&s, idx, cfg.precision)?;
        for (part, rv, tv) in [("re", r.value.re(), t.re()), ("im", r.value.im(), t.im())] {
            let r_str = fixed(rv, cfg);
            let t_str = fixed(tv, cfg);
            let agree = agreement_digits(&r_str, &t_str);
            report.push_row(vec![
                idx.get().to_string(),
                part.into(),
                r_str,
                t_str,
                agree.to_string(),
            ]);
        }
    }
    Ok(report)
}

/// Componentwise relative errors of the tail approximation after both
/// quantities are rounded to the printed digit count, plus a decay fit.
pub fn cmd_table1(cfg: &RunConfig) -> Result<Report> {
    let s = parse_s(cfg)?;
    let ns = indices_from(cfg, DIGIT_BLOCK_NS)?;
    let mut report = Report::new(
        "table1",
        cfg.precision.bits(),
        vec!["n", "eps-r", "eps-i"],
    );
    let mut pts_r = Vec::new();
    let mut pts_i = Vec::new();
    for idx in &ns {
        let (eps_r, eps_i) =
            digit_rounded_error(&s, *idx, cfg.digits as u32, cfg.precision)?;
        report.push_row(vec![idx.get().to_string(), sci(&eps_r), sci(&eps_i)]);
        pts_r.push((idx.get(), eps_r));
        pts_i.push((idx.get(), eps_i));
    }
    if ns.len() >= 3 {
        let (slope_r, _) = decay_fit(&pts_r, cfg.precision)?;
        let (slope_i, _) = decay_fit(&pts_i, cfg.precision)?;
        report.push_row(vec![
            "fit-slope".into(),
            format_fixed(&slope_r, 4),
            format_fixed(&slope_i, 4),
        ]);
    }
    Ok(report)
}

fn series_rows(report: &mut Report, series: &ProbeSeries, with_label: bool, cfg: &RunConfig) {
    for row in &series.rows {
        let mut cells = vec![row.n.get().to_string()];
        if with_label {
            cells.push(series.label.clone());
        }
        if row.undefined {
            cells.extend(["-".into(), "-".into(), "undefined".into()]);
        } else {
            cells.push(fixed(row.quantity.re(), cfg));
            cells.push(fixed(row.quantity.im(), cfg));
            cells.push(sci(&row.deviation));
        }
        report.push_row(cells);
    }
}

fn slope_note(report: &mut Report, series: &ProbeSeries, cfg: &RunConfig) {
    let pts: Vec<(u64, BigReal)> = series
        .rows
        .iter()
        .filter(|r| !r.undefined && !r.deviation.is_zero())
        .map(|r| (r.n.get(), r.deviation.clone()))
        .collect();
    if pts.len() >= 3 {
        if let Ok((slope, _)) = decay_fit(&pts, cfg.precision) {
            report.push_note(format!(
                "{} decay slope: {}",
                series.label,
                format_fixed(&slope, 4)
            ));
        }
    }
}

/// Consecutive-tail ratios against their limit, both neighbours.
pub fn cmd_probe_lemma1(cfg: &RunConfig) -> Result<Report> {
    let s = parse_s(cfg)?;
    let sched = schedule_from(cfg, PROBE_NS)?;
    let (prev, next) = lemma1_ratios(&s, &sched, cfg.precision)?;
    let mut report = Report::new(
        "probe-lemma1",
        cfg.precision.bits(),
        vec!["n", "series", "re", "im", "deviation"],
    );
    // n-major interleave keeps both neighbours of one index adjacent.
    for i in 0..sched.indices().len() {
        for series in [&prev, &next] {
            let row = &series.rows[i];
            let mut cells = vec![row.n.get().to_string(), series.label.clone()];
            if row.undefined {
                cells.extend(["-".into(), "-".into(), "undefined".into()]);
            } else {
                cells.push(fixed(row.quantity.re(), cfg));
                cells.push(fixed(row.quantity.im(), cfg));
                cells.push(sci(&row.deviation));
            }
            report.push_row(cells);
        }
    }
    slope_note(&mut report, &prev, cfg);
    slope_note(&mut report, &next, cfg);
    Ok(report)
}

/// The sign-corrected first-term-to-tail ratio against its limit 2.
pub fn cmd_probe_f_seq(cfg: &RunConfig) -> Result<Report> {
    let s = parse_s(cfg)?;
    let sched = schedule_from(cfg, PROBE_NS)?;
    let series = f_sequence(&s, &sched, cfg.precision)?;
    let mut report = Report::new(
        "probe-f-seq",
        cfg.precision.bits(),
        vec!["n", "re", "im", "deviation"],
    );
    series_rows(&mut report, &series, false, cfg);
    slope_note(&mut report, &series, cfg);
    Ok(report)
}

/// The approximation error rescaled by (n+0.5)^s.
pub fn cmd_probe_eps_scaled(cfg: &RunConfig) -> Result<Report> {
    let s = parse_s(cfg)?;
    let sched = schedule_from(cfg, PROBE_NS)?;
    let series = eps_scaled(&s, &sched, cfg.precision)?;
    let mut report = Report::new(
        "probe-eps-scaled",
        cfg.precision.bits(),
        vec!["n", "re", "im", "magnitude"],
    );
    series_rows(&mut report, &series, false, cfg);
    slope_note(&mut report, &series, cfg);
    Ok(report)
}

/// Sup of |R_n| along a horizontal segment against the bound n^(-sigma).
pub fn cmd_probe_uniform(cfg: &RunConfig) -> Result<Report> {
    let (sigma_tok, sigma) = parse_sigma(cfg, "0.5")?;
    let ns = indices_from(cfg, "100")?;
    if ns.len() != 1 {
        return Err(usage("the uniform scan takes a single n"));
    }
    let t_grid: Vec<BigReal> = (0..=UNIFORM_T_MAX)
        .map(|t| BigReal::from_u64(t, cfg.precision))
        .collect();
    let scan = uniform_bound_scan(&sigma, &t_grid, ns[0], cfg.precision)?;
    let mut report = Report::new(
        "probe-uniform",
        cfg.precision.bits(),
        vec!["sigma", "n", "sup", "at-t", "bound", "verdict"],
    );
    report.push_row(vec![
        sigma_tok,
        ns[0].get().to_string(),
        sci(&scan.sup_tail),
        format_fixed(&scan.at_t, 1),
        sci(&scan.bound),
        if scan.pass { "PASS" } else { "FAIL" }.into(),
    ]);
    report.push_note(format!("grid: t = 0..{UNIFORM_T_MAX} step 1"));
    Ok(report)
}

/// Iterated-limit table around a located critical-line zero: partial-sum
/// and tail ratios, the growth factor, and the reflection factor.
pub fn cmd_probe_exchange(cfg: &RunConfig) -> Result<Report> {
    let (sigma_tok, sigma) = parse_sigma(cfg, "0.75")?;
    let bracket_spec = cfg.zero_bracket.as_deref().unwrap_or("14:15");
    let (lo, hi) = parse_bracket(bracket_spec, cfg.precision)?;
    let offsets_spec = cfg.offsets.as_deref().unwrap_or("0,0.001,0.01,0.1");
    let offsets = parse_offsets(offsets_spec, cfg.precision)?;
    let sched = schedule_from(cfg, EXCHANGE_NS)?;
    let zero = locate_zero((&lo, &hi), cfg.precision)?;
    let values: Vec<BigReal> = offsets.iter().map(|(_, v)| v.clone()).collect();
    let table = exchange_report(&sigma, &zero.t0, &sched, &values, cfg.precision)?;
    let mut report = Report::new(
        "probe-exchange",
        cfg.precision.bits(),
        vec![
            "n",
            "delta-t",
            "partial-re",
            "partial-im",
            "tail-re",
            "tail-im",
            "growth-mag",
            "lambda-re",
            "lambda-im",
            "coincidence",
            "flagged",
        ],
    );
    for (i, row) in table.rows.iter().enumerate() {
        let delta_tok = offsets[i % offsets.len()].0.clone();
        report.push_row(vec![
            row.n.get().to_string(),
            delta_tok,
            fixed(row.partial_ratio.re(), cfg),
            fixed(row.partial_ratio.im(), cfg),
            fixed(row.tail_ratio.re(), cfg),
            fixed(row.tail_ratio.im(), cfg),
            sci(&row.growth.abs(cfg.precision)),
            fixed(row.lambda.re(), cfg),
            fixed(row.lambda.im(), cfg),
            row.coincidence.as_ref().map_or("-".into(), sci),
            if row.flagged { "yes" } else { "no" }.into(),
        ]);
    }
    report.push_note(format!(
        "sigma = {sigma_tok}, t0 = {}, residual = {}",
        fixed(&zero.t0, cfg),
        sci(&zero.residual)
    ));
    Ok(report)
}

/// Critical-line zeros in a range, with certified residuals.
pub fn cmd_zeros(cfg: &RunConfig) -> Result<Report> {
    let spec = cfg
        .zero_bracket
        .as_deref()
        .ok_or_else(|| usage("zeros needs --zero-bracket lo:hi"))?;
    let (lo, hi) = parse_bracket(spec, cfg.precision)?;
    let found = zeros_in_range(&lo, &hi, cfg.precision)?;
    let mut report = Report::new(
        "zeros",
        cfg.precision.bits(),
        vec!["t", "residual", "bracket-lo", "bracket-hi"],
    );
    let count = found.len();
    for z in found {
        report.push_row(vec![
            fixed(&z.t0, cfg),
            sci(&z.residual),
            format_fixed(&z.bracket.0, 4),
            format_fixed(&z.bracket.1, 4),
        ]);
    }
    report.push_note(format!(
        "{count} zero(s) in [{}, {}]",
        format_fixed(&lo, 4),
        format_fixed(&hi, 4)
    ));
    Ok(report)
}
