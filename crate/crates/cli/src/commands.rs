use qpower::format::{game_to_json, parse_game, parse_rescaling, LoadedGame, RescalingSpec};
use qpower::manipulation::{
    build_manipulation_game_with_limit, sincere_outcome, Profile, ScoringRule,
};
use qpower::rational::{format_rational, int};
use qpower::report::{Report, ReportValue};
use qpower::rescaling::{
    check_recursion, self_duality_witness, Normalized, RecursionForm, SizeWeights,
};
use qpower::simulate::{
    bargaining_exact, bargaining_montecarlo, estimate_awards, estimate_qbar, exact_query_cdf,
    SimConfig,
};
use qpower::{
    banzhaf, q_star, q_star_allocation, q_star_marginal, qbar, semivalue, shapley, Game,
    RescalingFamily, SimpleGame,
};

use crate::error::CliError;
use crate::output::{read_input, write_report, write_rows};
use crate::{AnalyzeArgs, CheckArgs, ManipArgs, Mode, SimulateArgs, Table4Args};

const SIMPLE_DEFAULT: &[&str] = &[
    "qbar",
    "qstar",
    "individual",
    "semivalue",
    "shapley",
    "banzhaf",
];
const TU_DEFAULT: &[&str] = &["qstar", "individual", "semivalue", "shapley", "banzhaf"];

fn load_rescaling(arg: &str, report: &mut Report) -> Result<RescalingSpec, CliError> {
    if let Ok(family) = RescalingFamily::by_name(arg) {
        return Ok(RescalingSpec::Family(family));
    }
    let (text, digest) = read_input(arg.as_ref())?;
    report.input_digests.push(digest);
    Ok(parse_rescaling(&text)?)
}

fn load_game(path: &std::path::Path, report: &mut Report) -> Result<LoadedGame, CliError> {
    let (text, digest) = read_input(path)?;
    report.input_digests.push(digest);
    Ok(parse_game(&text)?)
}

fn simple_only<'a>(game: &'a LoadedGame, measure: &str) -> Result<&'a SimpleGame, CliError> {
    game.as_simple()
        .ok_or_else(|| CliError::Usage(format!("measure `{measure}` needs a simple game")))
}

fn push_labels(report: &mut Report, game: &SimpleGame) {
    if let Some(labels) = game.labels() {
        let pairs: Vec<String> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| format!("{i}={l}"))
            .collect();
        report.note(format!("players: {}", pairs.join(", ")));
    }
}

fn measure_into<G: Game + qpower::measures::Restrict>(
    report: &mut Report,
    game: &G,
    loaded: &LoadedGame,
    spec: &RescalingSpec,
    measure: &str,
) -> Result<(), CliError> {
    let n = game.player_count();
    match measure {
        "qbar" => report.push_exact("qbar", &qbar(simple_only(loaded, measure)?)?),
        "qstar" => report.push_exact("qstar", &q_star(game, &spec.row(n)?)?),
        "individual" => {
            report.push_allocation("qstar_individual", &q_star_allocation(game, &spec.row(n)?)?)
        }
        "marginal" => {
            let family = spec.family().ok_or_else(|| {
                CliError::Usage("`marginal` needs a rescaling family, not a single row".into())
            })?;
            for i in 0..n {
                report.push(ReportValue::exact(
                    "qstar_marginal",
                    Some(i),
                    &q_star_marginal(game, family, i)?,
                ));
            }
        }
        "semivalue" => report.push_allocation("semivalue", &semivalue(game, &spec.row(n)?)?),
        "shapley" => report.push_allocation("shapley", &shapley(game)?),
        "banzhaf" => report.push_allocation("banzhaf", &banzhaf(game)?),
        "profile" => {
            let profile = simple_only(loaded, measure)?.size_profile()?;
            for (k, &w) in profile.winning_counts.iter().enumerate() {
                report.push_exact(&format!("winning_size_{k}"), &int(w as i64));
            }
        }
        "classify" => {
            let c = simple_only(loaded, measure)?.classify()?;
            let flags = [
                ("monotone", c.monotone),
                ("proper", c.proper),
                ("strong", c.strong),
                ("self_dual", c.self_dual),
                ("empty", c.empty),
                ("trivial", c.trivial),
            ];
            for (name, flag) in flags {
                report.push(ReportValue::text(name, None, flag.to_string()));
            }
        }
        other => return Err(CliError::Usage(format!("unknown measure `{other}`"))),
    }
    Ok(())
}

pub fn analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let mut report = Report::new("analyze");
    let loaded = load_game(&args.game, &mut report)?;
    let spec = load_rescaling(&args.rescaling, &mut report)?;
    report.note(format!("rescaling: {}", spec.label()));
    let defaults = if loaded.as_simple().is_some() {
        SIMPLE_DEFAULT
    } else {
        TU_DEFAULT
    };
    let measures: Vec<String> = match &args.measures {
        Some(list) => list
            .iter()
            .map(|m| m.trim().to_string())
            .filter(|m| !m.is_empty())
            .collect(),
        None => defaults.iter().map(|m| m.to_string()).collect(),
    };
    for m in &measures {
        match &loaded {
            LoadedGame::Simple(g) => measure_into(&mut report, g, &loaded, &spec, m)?,
            LoadedGame::Tu(g) => measure_into(&mut report, g, &loaded, &spec, m)?,
        }
    }
    if let Some(g) = loaded.as_simple() {
        push_labels(&mut report, g);
    }
    write_report(&report, &args.out)
}

pub fn table4(args: &Table4Args) -> Result<(), CliError> {
    let rows = qpower::table4()?;
    let mut header = Report::new("table4");
    let flagged: Vec<&str> = rows
        .iter()
        .filter(|r| !r.qstar0_agrees || !r.coleman_agrees)
        .map(|r| r.label.as_str())
        .collect();
    if !flagged.is_empty() {
        header.note(format!(
            "printed values differ from exact computation on: {}",
            flagged.join(", ")
        ));
    }
    write_rows(&header, &rows, &args.out)
}

pub fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let mut report = Report::new("simulate");
    let loaded = load_game(&args.game, &mut report)?;
    let game = simple_only(&loaded, "simulate")?;
    let spec = load_rescaling(&args.rescaling, &mut report)?;
    let n = game.n();
    let cfg = SimConfig::new(args.trials, args.seed)
        .with_workers(args.workers)
        .with_max_rounds(args.max_rounds);
    report.seed = Some(args.seed);
    report.trials = Some(args.trials);
    match args.mode {
        Mode::Query => {
            let est = estimate_qbar(game, &cfg)?;
            report.push_estimates("qbar", &est);
            for (t, &c) in est.stop_time_counts.iter().flatten().enumerate() {
                report.push_exact(&format!("stop_time_count_{t}"), &int(c as i64));
            }
            if args.exact {
                report.push_exact("qbar_exact", &qbar(game)?);
                for (k, p) in exact_query_cdf(game)?.iter().enumerate() {
                    report.push_exact(&format!("cdf_exact_{k}"), p);
                }
            }
        }
        Mode::Awards => {
            let row = spec.row(n)?;
            let est = estimate_awards(game, &row, &cfg)?;
            report.push_estimates("award", &est);
            if args.normalize {
                let c = row.c_norm();
                if c == int(0) {
                    return Err(qpower::Error::NormalizationUndefined.into());
                }
                for (i, e) in est.estimates.iter().enumerate() {
                    let scaled = qpower::simulate::Estimate {
                        mean: &e.mean / &c,
                        value: e.value / qpower::rational::to_f64(&c),
                        std_error: e.std_error / qpower::rational::to_f64(&c),
                    };
                    report.push(ReportValue::estimate("award_normalized", Some(i), &scaled));
                }
                report.note(format!("normalized by c_n = {}", format_rational(&c)));
            }
            if args.exact {
                report.push_allocation("qstar_individual", &q_star_allocation(game, &row)?);
            }
        }
        Mode::Bargain => {
            let row = spec.row(n)?;
            if args.exact {
                let b = bargaining_exact(game, &row)?;
                report.trials = None;
                report.seed = None;
                report.push_allocation("r", &b.r);
                report.push_allocation("pi", &b.pi);
            } else {
                let b = bargaining_montecarlo(game, &row, &cfg)?;
                report.push_estimates("r", &b.r);
                report.push_estimates("pi", &b.pi);
                if b.r.capped_trials > 0 {
                    report.note(format!(
                        "{} trials hit the cap of {} rounds and were left out of pi",
                        b.r.capped_trials, args.max_rounds
                    ));
                }
            }
        }
    }
    report.note(format!("rescaling: {}", spec.label()));
    write_report(&report, &args.out)
}

pub fn manip(args: &ManipArgs) -> Result<(), CliError> {
    let profile: Profile = args.profile.parse()?;
    let rule: ScoringRule = args.alpha.parse()?;
    let game = build_manipulation_game_with_limit(&profile, &rule, args.max_deviators)?;
    let n = game.n();
    let row = RescalingFamily::uniform().row(n)?;
    let mut report = Report::new("manip");
    report.note(format!("profile {profile}, alpha {rule}"));
    report.push(ReportValue::text(
        "sincere_outcome",
        None,
        sincere_outcome(&profile, &rule).to_string(),
    ));
    let minimal: Vec<String> = game
        .minimal_winning_coalitions()?
        .iter()
        .map(|s| {
            format!(
                "{{{}}}",
                s.players()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    report.push(ReportValue::text(
        "minimal_winning",
        None,
        minimal.join(" "),
    ));
    report.push_exact("qbar", &qbar(&game)?);
    report.push_exact("qstar0", &q_star(&game, &row)?);
    report.push_allocation("qstar0_individual", &q_star_allocation(&game, &row)?);
    if let Some(path) = &args.emit_game {
        std::fs::write(path, game_to_json(&game))?;
    }
    write_report(&report, &args.out)
}

pub fn check(args: &CheckArgs) -> Result<bool, CliError> {
    let family = RescalingFamily::by_name(&args.family)?;
    let mut report = Report::new("check");
    if args.form == "self_dual" {
        let witness = self_duality_witness(&family, args.n_max)?;
        match witness {
            None => report.push(ReportValue::text("self_dual", None, "holds")),
            Some((n, k)) => {
                report.push(ReportValue::text("self_dual", None, "fails"));
                let row = family.row(n)?;
                report.push(ReportValue::text(
                    "counterexample",
                    None,
                    format!(
                        "n={n} k={k}: mu_n({k}) = {} but mu_n({}) = {}",
                        format_rational(&row.mu(k)),
                        n - k,
                        format_rational(&row.mu(n - k))
                    ),
                ));
            }
        }
        write_report(&report, &args.out)?;
        return Ok(witness.is_none());
    }
    let form: RecursionForm = args.form.parse()?;
    let normalized = Normalized(family.clone());
    let weights: &dyn SizeWeights = if args.normalized {
        &normalized
    } else {
        &family
    };
    let result = check_recursion(weights, form, args.n_max)?;
    report.note(format!(
        "{} under {} for n < {}",
        result.family,
        form.name(),
        args.n_max
    ));
    report.push_exact("checked", &int(result.checked as i64));
    report.push(ReportValue::text(
        form.name(),
        None,
        if result.holds() { "holds" } else { "fails" },
    ));
    for v in &result.violations {
        report.push(ReportValue::text(
            "counterexample",
            None,
            format!(
                "n={} k={}: {} != {}",
                v.n,
                v.k,
                format_rational(&v.lhs),
                format_rational(&v.rhs)
            ),
        ));
    }
    write_report(&report, &args.out)?;
    if let Some(v) = result.first_violation() {
        eprintln!(
            "qpower: {} fails, first counterexample (n={}, k={})",
            form.name(),
            v.n,
            v.k
        );
    }
    Ok(result.holds())
}
