use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Result};
use bcorder::bscbec::{classify_pair, d_curve, BscBecPair, PairTag};
use bcorder::channels::detect_c_symmetry;
use bcorder::classify::{
    test_degraded, test_essentially_less_noisy, test_essentially_more_capable, test_less_noisy, test_more_capable,
    ClassVerdict, Outcome,
};
use bcorder::probcore::binary_entropy;
use bcorder::regions::{
    fixed9, frontier_distance, outer_bound_eq_ob, outer_bound_vx, superposition_region, theorem1_region,
    theorem2_region, RegionFrontier, SweepConfig,
};
use bcorder::verify::{self, VerifyOptions};
use serde::Serialize;

use crate::args::{
    ClassifyArgs, Command, DcurveArgs, Format, OutputArgs, PhaseMapArgs, RegionArgs, SymmetryArgs, VerifyArgs,
};
use crate::input::{load_any, load_pair, parse_class, parse_probs, Named};
use crate::svg::{Plot, Rect, Series, PALETTE};

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Classify(a) => classify(a),
        Command::Dcurve(a) => dcurve(a),
        Command::PhaseMap(a) => phase_map(a),
        Command::Region(a) => region(a),
        Command::Symmetry(a) => symmetry(a),
        Command::VerifyPaper(a) => verify_paper(a),
    }
}

fn format_of(out: &OutputArgs, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = out.format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("format {f:?} is not available for this command");
    }
    Ok(f)
}

fn emit(out: &OutputArgs, content: &str) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct Directed {
    ordering: &'static str,
    stronger: String,
    weaker: String,
    verdict: ClassVerdict,
}

#[derive(Serialize)]
struct ClassifyReport {
    channel1: String,
    channel2: String,
    finest: String,
    verdicts: Vec<Directed>,
}

const ORDERINGS: [&str; 5] =
    ["degraded", "less noisy", "more capable", "essentially less noisy", "essentially more capable"];

fn classify(args: ClassifyArgs) -> Result<ExitCode> {
    let format = format_of(&args.output, Format::Text, &[Format::Text, Format::Json])?;
    let (a, b) = load_pair(&args.channels)?;
    let class = match &args.class {
        Some(spec) => Some(parse_class(spec, a.dmc.input_size(), args.grid)?),
        None => None,
    };
    let mut verdicts = Vec::new();
    for (s, w) in [(&a, &b), (&b, &a)] {
        let mut run = |ordering: &'static str, verdict: ClassVerdict| {
            verdicts.push(Directed { ordering, stronger: s.name.clone(), weaker: w.name.clone(), verdict })
        };
        run(ORDERINGS[0], test_degraded(&s.dmc, &w.dmc)?);
        run(ORDERINGS[1], test_less_noisy(&s.dmc, &w.dmc, args.grid)?);
        run(ORDERINGS[2], test_more_capable(&s.dmc, &w.dmc, args.grid)?);
        run(ORDERINGS[3], test_essentially_less_noisy(&s.dmc, &w.dmc, args.grid)?);
        if let Some(class) = &class {
            run(ORDERINGS[4], test_essentially_more_capable(&s.dmc, &w.dmc, class, args.grid, args.seed)?);
        }
    }
    let finest = finest(&verdicts, &a, &b, args.class.as_deref());
    let report = ClassifyReport { channel1: a.name.clone(), channel2: b.name.clone(), finest, verdicts };
    let text = match format {
        Format::Json => json(&report),
        _ => classify_text(&report),
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn finest(verdicts: &[Directed], a: &Named, b: &Named, class: Option<&str>) -> String {
    for ordering in ORDERINGS {
        let holding: Vec<&Directed> = verdicts.iter().filter(|d| d.ordering == ordering && d.verdict.holds()).collect();
        match holding.as_slice() {
            [] => continue,
            [_, _] => return format!("{ordering} in both directions ({} and {} are equivalent here)", a.name, b.name),
            [d] => {
                return match ordering {
                    "degraded" => format!("degraded ({} degraded w.r.t. {})", d.weaker, d.stronger),
                    "essentially less noisy" => {
                        format!("essentially less noisy ({}), sufficient class: uniform", d.stronger)
                    }
                    "essentially more capable" => {
                        format!("essentially more capable ({}), candidate class: {}", d.stronger, class.unwrap_or("?"))
                    }
                    _ => format!("{ordering} ({})", d.stronger),
                }
            }
            _ => unreachable!("two directions per ordering"),
        }
    }
    "no ordering found".into()
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Holds => "holds",
        Outcome::Fails => "fails",
        Outcome::Inconclusive => "inconclusive",
    }
}

fn classify_text(r: &ClassifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "receiver 1: {}", r.channel1);
    let _ = writeln!(s, "receiver 2: {}", r.channel2);
    for d in &r.verdicts {
        let _ = write!(s, "{:<26} {} over {}: {}", d.ordering, d.stronger, d.weaker, outcome_word(d.verdict.outcome));
        if let Some(w) = &d.verdict.witness {
            let _ = write!(s, "  witness {}", serde_json::to_string(w).expect("serializable"));
        }
        if d.verdict.outcome == Outcome::Inconclusive {
            let _ = write!(s, "  ({})", d.verdict.diagnostics.notes.join("; "));
        }
        s.push('\n');
    }
    let _ = writeln!(s, "finest: {}", r.finest);
    s
}

#[derive(Serialize)]
struct CurveJson {
    p: f64,
    e: f64,
    points: Vec<(f64, f64)>,
}

fn dcurve(args: DcurveArgs) -> Result<ExitCode> {
    let format = format_of(&args.output, Format::Csv, &[Format::Csv, Format::Svg, Format::Json])?;
    let pair = BscBecPair::new(args.p, args.e)?;
    let points = d_curve(&pair, args.samples)?;
    let text = match format {
        Format::Json => json(&CurveJson { p: args.p, e: args.e, points }),
        Format::Svg => {
            let mut plot = Plot::new(
                &format!("I(X;Y1) - I(X;Y2) for BSC({}) and BEC({})", args.p, args.e),
                "P(X=1)",
                "D(x) [bits]",
            );
            plot.series.push(Series { name: "D(x)".into(), points, color: PALETTE[0].into() });
            plot.fit();
            plot.render()
        }
        _ => {
            let mut s = String::from("x,D\n");
            for (x, d) in points {
                let _ = writeln!(s, "{},{}", fixed9(x), fixed9(d));
            }
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn tag_name(t: PairTag) -> &'static str {
    match t {
        PairTag::DegradedBscSide => "DegradedBscSide",
        PairTag::LessNoisyBecSide => "LessNoisyBecSide",
        PairTag::MoreCapableBecSide => "MoreCapableBecSide",
        PairTag::EssentiallyLessNoisyBscSide => "EssentiallyLessNoisyBscSide",
    }
}

const TAG_COLORS: [(PairTag, &str); 4] = [
    (PairTag::DegradedBscSide, "#c6dbef"),
    (PairTag::LessNoisyBecSide, "#c7e9c0"),
    (PairTag::MoreCapableBecSide, "#fdd0a2"),
    (PairTag::EssentiallyLessNoisyBscSide, "#dadaeb"),
];

#[derive(Serialize)]
struct Cell {
    p: f64,
    e: f64,
    class: &'static str,
    boundary: bool,
}

fn phase_map(args: PhaseMapArgs) -> Result<ExitCode> {
    let format = format_of(&args.output, Format::Csv, &[Format::Csv, Format::Svg, Format::Json])?;
    let n = args.resolution;
    if n < 2 {
        bail!("resolution must be at least 2 per axis");
    }
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (p, e) = (0.5 * i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64);
            let c = classify_pair(&BscBecPair::new(p, e)?);
            cells.push(Cell { p, e, class: tag_name(c.tag), boundary: c.boundary });
        }
    }
    let text = match format {
        Format::Json => json(&cells),
        Format::Svg => phase_svg(&cells, n),
        _ => {
            let mut s = String::from("p,e,class\n");
            for c in &cells {
                let _ = writeln!(s, "{},{},{}", fixed9(c.p), fixed9(c.e), c.class);
            }
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn phase_svg(cells: &[Cell], n: usize) -> String {
    let mut plot = Plot::new("BSC(p) vs BEC(e) regimes", "p", "e");
    plot.x_range = (0.0, 0.5);
    plot.y_range = (0.0, 1.0);
    let (dp, de) = (0.5 / (n - 1) as f64, 1.0 / (n - 1) as f64);
    for c in cells {
        let color = TAG_COLORS.iter().find(|(t, _)| tag_name(*t) == c.class).map_or("#ffffff", |(_, col)| col);
        plot.rects.push(Rect {
            x0: (c.p - dp / 2.0).max(0.0),
            y0: (c.e - de / 2.0).max(0.0),
            x1: (c.p + dp / 2.0).min(0.5),
            y1: (c.e + de / 2.0).min(1.0),
            color: color.into(),
        });
    }
    plot.swatches = TAG_COLORS.iter().map(|(t, c)| (tag_name(*t).to_string(), c.to_string())).collect();
    let xs: Vec<f64> = (0..=200).map(|k| 0.5 * k as f64 / 200.0).collect();
    type Curve = (&'static str, fn(f64) -> f64);
    let curves: [Curve; 3] = [
        ("e = 2p", |p| 2.0 * p),
        ("e = 4p(1-p)", |p| 4.0 * p * (1.0 - p)),
        ("e = H(p)", |p| binary_entropy(p).unwrap_or(f64::NAN)),
    ];
    for (k, (name, f)) in curves.iter().enumerate() {
        plot.series.push(Series {
            name: name.to_string(),
            points: xs.iter().map(|&p| (p, f(p))).filter(|q| q.1 <= 1.0).collect(),
            color: PALETTE[k].into(),
        });
    }
    plot.render()
}

#[derive(Serialize)]
struct NamedFrontier {
    name: String,
    frontier: RegionFrontier,
}

#[derive(Serialize)]
struct Distance {
    a: String,
    b: String,
    distance: f64,
    within_tolerance: bool,
}

#[derive(Serialize)]
struct RegionReport {
    grid_step: f64,
    tolerance: f64,
    series: Vec<NamedFrontier>,
    distances: Vec<Distance>,
}

fn region(args: RegionArgs) -> Result<ExitCode> {
    let format = format_of(&args.output, Format::Csv, &[Format::Csv, Format::Svg, Format::Json])?;
    if args.grid < 2 {
        bail!("--grid must be at least 2");
    }
    let (a, b) = load_pair(&args.channels)?;
    let n = a.dmc.input_size();
    let cfg = SweepConfig { divisions: args.grid, ternary_samples: args.ternary, seed: args.seed };
    let marginal = args.marginal.as_deref().map(|m| parse_probs(m, n)).transpose()?;
    let which: Vec<&str> = args.which.split(',').map(str::trim).filter(|w| !w.is_empty()).collect();
    if which.is_empty() {
        bail!("--which needs at least one frontier");
    }
    let needs_class = which.iter().any(|w| matches!(*w, "theorem1" | "theorem2"));
    let class = if needs_class { parse_class(&args.class, n, args.grid)? } else { Vec::new() };
    let mut series = Vec::new();
    for w in &which {
        let frontier = match *w {
            "ib" => superposition_region(&a.dmc, &b.dmc, marginal.as_ref(), &cfg)?,
            "theorem1" => theorem1_region(&a.dmc, &b.dmc, &class, &cfg)?,
            "theorem2" => theorem2_region(&a.dmc, &b.dmc, &class, &cfg)?,
            "ob" => outer_bound_eq_ob(&a.dmc, &b.dmc, &cfg)?,
            "vx" => outer_bound_vx(&a.dmc, &b.dmc, &cfg)?,
            other => bail!("unknown frontier '{other}' (use ib, theorem1, theorem2, ob, vx)"),
        };
        series.push(NamedFrontier { name: w.to_string(), frontier });
    }
    let tolerance = args.tol.unwrap_or(2.0 * cfg.step());
    let mut distances = Vec::new();
    for i in 0..series.len() {
        for j in i + 1..series.len() {
            let d = frontier_distance(&series[i].frontier, &series[j].frontier);
            distances.push(Distance {
                a: series[i].name.clone(),
                b: series[j].name.clone(),
                distance: d,
                within_tolerance: d <= tolerance,
            });
        }
    }
    for d in &distances {
        eprintln!(
            "distance {} vs {}: {:.6} ({} tolerance {})",
            d.a,
            d.b,
            d.distance,
            if d.within_tolerance { "within" } else { "beyond" },
            tolerance
        );
    }
    for s in &series {
        if let Some(shift) = s.frontier.sweep.ternary_shift {
            eprintln!("{}: three-letter pass moved the frontier by {shift:.6}", s.name);
        }
    }
    let report = RegionReport { grid_step: cfg.step(), tolerance, series, distances };
    let text = match format {
        Format::Json => json(&report),
        Format::Svg => region_svg(&report, &a, &b),
        _ => region_csv(&report),
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn region_csv(r: &RegionReport) -> String {
    if let [only] = r.series.as_slice() {
        return only.frontier.to_csv();
    }
    let mut s = String::from("series,r1,r2\n");
    for f in &r.series {
        for p in &f.frontier.points {
            let _ = writeln!(s, "{},{},{}", f.name, fixed9(p.r1), fixed9(p.r2));
        }
    }
    s
}

fn region_svg(r: &RegionReport, a: &Named, b: &Named) -> String {
    let mut plot = Plot::new(&format!("Rate regions: {} (R1) and {} (R2)", a.name, b.name), "R1 [bits]", "R2 [bits]");
    for (k, f) in r.series.iter().enumerate() {
        plot.series.push(Series {
            name: f.name.clone(),
            points: f.frontier.boundary().iter().map(|p| (p.r1, p.r2)).collect(),
            color: PALETTE[k % PALETTE.len()].into(),
        });
    }
    plot.fit();
    plot.render()
}

#[derive(Serialize)]
struct SymmetryEntry {
    channel: String,
    c_symmetric: bool,
    generator: Option<Vec<usize>>,
}

fn symmetry(args: SymmetryArgs) -> Result<ExitCode> {
    let format = format_of(&args.output, Format::Text, &[Format::Text, Format::Json])?;
    let mut entries = Vec::new();
    for c in load_any(&args.channels)? {
        let w = detect_c_symmetry(&c.dmc)?;
        entries.push(SymmetryEntry { channel: c.name, c_symmetric: w.is_some(), generator: w.map(|w| w.generator) });
    }
    let text = match format {
        Format::Json => json(&entries),
        _ => {
            let mut s = String::new();
            for e in &entries {
                match &e.generator {
                    Some(g) => {
                        let _ = writeln!(s, "{}: c-symmetric, output permutation {:?}", e.channel, g);
                    }
                    None => {
                        let _ = writeln!(s, "{}: not c-symmetric", e.channel);
                    }
                }
            }
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_paper(args: VerifyArgs) -> Result<ExitCode> {
    let format = format_of(&args.output, Format::Text, &[Format::Text, Format::Json])?;
    if args.list {
        emit(&args.output, &(verify::check_names().join("\n") + "\n"))?;
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(t) = args.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            bail!("tolerance must be a nonnegative number");
        }
    }
    let opts = VerifyOptions {
        seed: args.seed,
        tolerance: args.tolerance,
        checks: if args.check.is_empty() { None } else { Some(args.check.clone()) },
    };
    let report = verify::run(&opts)?;
    let text = match format {
        Format::Json => report.to_json(),
        _ => report.to_table(),
    };
    emit(&args.output, &text)?;
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
