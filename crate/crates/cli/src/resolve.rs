use std::path::Path;

use anyhow::{bail, Context, Result};
use hyperramsey::randlab::Event;
use hyperramsey::{catalog, Hypergraph};

/// A catalog name or the path of a hypergraph file (text or JSON).
pub fn hypergraph(arg: &str) -> Result<Hypergraph> {
    let arg = arg.trim();
    if let Some(h) = catalog::get(arg) {
        return Ok(h);
    }
    let path = Path::new(arg);
    if !path.exists() {
        bail!("{arg:?} is neither a catalog name nor an existing file (see `hyperramsey catalog`)");
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {arg}"))?;
    Hypergraph::parse(&text).with_context(|| format!("cannot parse {arg}"))
}

/// Comma-separated list of names or paths.
pub fn tuple(arg: &str) -> Result<Vec<Hypergraph>> {
    let parts: Vec<&str> = arg.split(',').filter(|s| !s.trim().is_empty()).collect();
    if parts.is_empty() {
        bail!("empty hypergraph list");
    }
    parts.into_iter().map(hypergraph).collect()
}

/// `contains:F`, `arrows:F1,F2,...` or `contain:S:Q1,Q2,...`.
pub fn event(arg: &str) -> Result<Event> {
    let (kind, rest) = arg
        .split_once(':')
        .with_context(|| format!("bad event {arg:?}; expected contains:F, arrows:F1,F2 or contain:S:Q1,Q2"))?;
    match kind {
        "contains" => Ok(Event::ContainsCopy(hypergraph(rest)?)),
        "arrows" => Ok(Event::ArrowsTuple(tuple(rest)?)),
        "contain" => {
            let (s, qs) = rest
                .split_once(':')
                .with_context(|| format!("bad event {arg:?}; expected contain:S:Q1,Q2,..."))?;
            let s = s
                .parse()
                .with_context(|| format!("bad source count {s:?} in {arg:?}"))?;
            Ok(Event::ContainmentHolds { s, qs: tuple(qs)? })
        }
        other => bail!("unknown event kind {other:?}; expected contains, arrows or contain"),
    }
}

pub fn event_uniformity(event: &Event) -> usize {
    match event {
        Event::ContainsCopy(f) => f.r(),
        Event::ArrowsTuple(ts) => ts[0].r(),
        Event::ContainmentHolds { qs, .. } => qs[0].r(),
    }
}

pub fn usize_list(arg: &str) -> Result<Vec<usize>> {
    arg.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .with_context(|| format!("bad integer {s:?} in {arg:?}"))
        })
        .collect()
}

/// Comma-separated probabilities, or `start:stop:step`.
pub fn p_grid(arg: &str) -> Result<Vec<f64>> {
    let parse = |s: &str| -> Result<f64> {
        s.trim()
            .parse()
            .with_context(|| format!("bad probability {s:?} in {arg:?}"))
    };
    if let [a, b, step] = arg.split(':').collect::<Vec<_>>()[..] {
        let (a, b, step) = (parse(a)?, parse(b)?, parse(step)?);
        if !(step > 0.0) {
            bail!("grid step must be positive");
        }
        let count = ((b - a) / step + 1e-9).floor() as usize;
        return Ok((0..=count).map(|k| (a + k as f64 * step).min(b)).collect());
    }
    arg.split(',').map(parse).collect()
}
