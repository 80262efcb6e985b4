use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use bcorder::channels::{bec, bsc, split_input_pair, Dmc};
use bcorder::probcore::Dist;
use bcorder::simplex;
use serde::Deserialize;

use crate::args::ChannelArgs;

/// A channel and the name it is reported under.
#[derive(Debug, Clone)]
pub struct Named {
    pub name: String,
    pub dmc: Dmc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LooseFile {
    input_size: usize,
    output_labels: Vec<String>,
    rows: Vec<Vec<f64>>,
}

pub fn load_channel(path: &Path, normalize: bool) -> Result<Dmc> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if !normalize {
        return serde_json::from_str(&text).with_context(|| format!("invalid channel file {}", path.display()));
    }
    let f: LooseFile =
        serde_json::from_str(&text).with_context(|| format!("invalid channel file {}", path.display()))?;
    if f.input_size != f.rows.len() {
        bail!("{}: input_size {} but {} rows", path.display(), f.input_size, f.rows.len());
    }
    Ok(Dmc::normalized(f.rows, f.output_labels)?)
}

fn side(
    file: &Option<std::path::PathBuf>,
    param: Option<f64>,
    make: fn(f64) -> bcorder::Result<Dmc>,
    label: &str,
    which: usize,
    normalize: bool,
) -> Result<Option<Named>> {
    match (file, param) {
        (Some(_), Some(_)) => bail!("receiver {which} given both as a file and as {label}"),
        (Some(path), None) => Ok(Some(Named { name: format!("channel {which}"), dmc: load_channel(path, normalize)? })),
        (None, Some(v)) => Ok(Some(Named { name: format!("{label} side"), dmc: make(v)? })),
        (None, None) => Ok(None),
    }
}

/// Receivers 1 and 2 as selected on the command line.
pub fn load_pair(args: &ChannelArgs) -> Result<(Named, Named)> {
    let mut found = load_any(args)?;
    if found.len() != 2 {
        bail!("two channels are needed: use --bsc/--channel1 with --bec/--channel2, or --builtin");
    }
    let b = found.pop().expect("two channels");
    let a = found.pop().expect("two channels");
    if a.dmc.input_size() != b.dmc.input_size() {
        bail!("input alphabets differ: {} vs {}", a.dmc.input_size(), b.dmc.input_size());
    }
    Ok((a, b))
}

/// Whatever channels were given, in receiver order.
pub fn load_any(args: &ChannelArgs) -> Result<Vec<Named>> {
    if let Some(name) = &args.builtin {
        if args.bsc.is_some() || args.bec.is_some() || args.channel1.is_some() || args.channel2.is_some() {
            bail!("--builtin cannot be combined with other channel sources");
        }
        return match name.as_str() {
            "paper6vi" => {
                let (y1, y2) = split_input_pair();
                Ok(vec![Named { name: "Y1".into(), dmc: y1 }, Named { name: "Y2".into(), dmc: y2 }])
            }
            other => Err(anyhow!("unknown built-in channel pair '{other}' (available: paper6vi)")),
        };
    }
    let first = side(&args.channel1, args.bsc, bsc, "BSC", 1, args.normalize)?;
    let second = side(&args.channel2, args.bec, bec, "BEC", 2, args.normalize)?;
    let out: Vec<Named> = first.into_iter().chain(second).collect();
    if out.is_empty() {
        bail!("no channel given");
    }
    Ok(out)
}

pub fn parse_probs(s: &str, n: usize) -> Result<Dist> {
    let probs = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| anyhow!("not a probability: '{t}'")))
        .collect::<Result<Vec<f64>>>()?;
    if probs.len() != n {
        bail!("distribution '{s}' has {} entries, the input alphabet has {n}", probs.len());
    }
    Ok(Dist::new(probs)?)
}

/// Parses a class spec: members separated by `;`, each `uniform`,
/// `uniform` followed by support digits, `full`, or explicit probabilities.
pub fn parse_class(spec: &str, n: usize, divisions: usize) -> Result<Vec<Dist>> {
    let mut out = Vec::new();
    for member in spec.split(';').map(str::trim).filter(|m| !m.is_empty()) {
        match member {
            "uniform" => out.push(Dist::uniform(n)),
            "full" => {
                let d = simplex::effective_divisions(n, divisions);
                for p in simplex::grid(n, d) {
                    out.push(Dist::normalized(p)?);
                }
            }
            m if m.starts_with("uniform") => {
                let support = m["uniform".len()..]
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| anyhow!("bad class member '{m}'")))
                    .collect::<Result<Vec<usize>>>()?;
                if let Some(bad) = support.iter().find(|&&i| i >= n) {
                    bail!("class member '{m}' uses input {bad}, the input alphabet has {n}");
                }
                out.push(Dist::uniform_on(n, &support)?);
            }
            m => out.push(parse_probs(m, n)?),
        }
    }
    if out.is_empty() {
        bail!("empty class");
    }
    Ok(out)
}
