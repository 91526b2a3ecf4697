use std::fmt::Write;

use serde::Serialize;

use monogamy_core::measures::{log2_1p, negativity};
use monogamy_core::roof::{cren, crenoa, BoundDirection, BoundedValue, RoofOptions};
use monogamy_core::states::{RandomStream, StateSpec};

use crate::error::Result;
use crate::fmt_f64;

/// Slack allowed in the printed ordering N ≤ Ñ ≤ Ñₐ.
pub const ORDERING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutMeasures {
    pub cut: Vec<usize>,
    pub negativity: f64,
    pub log_negativity: f64,
    pub cren: BoundedValue,
    pub crenoa: BoundedValue,
    pub lcren: BoundedValue,
    pub lcrenoa: BoundedValue,
    /// N ≤ Ñ ≤ Ñₐ within [`ORDERING_TOL`]. Only guaranteed when both roof
    /// values are exact.
    pub ordering_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateDescription {
    pub spec: StateSpec,
    pub pure: bool,
    pub fingerprint: String,
    pub cuts: Vec<CutMeasures>,
}

/// Evaluates the six measures on each cut. Random families draw from
/// stream 0 of the spec's seed (0 when absent).
pub fn describe_state(spec: &StateSpec, cuts: &[Vec<usize>], opts: &RoofOptions) -> Result<StateDescription> {
    let stream = RandomStream::new(spec.seed.unwrap_or(0), 0);
    let state = spec.realize(&stream)?;
    let rho = state.to_density();
    let default_cut = [vec![0]];
    let cuts = if cuts.is_empty() { &default_cut[..] } else { cuts };
    let measures = cuts
        .iter()
        .enumerate()
        .map(|(k, cut)| {
            let opts = opts.clone().with_rng(stream.fork(k as u64));
            let n = negativity(&rho, cut)?;
            let lo = cren(&rho, cut, &opts)?.without_witness();
            let hi = crenoa(&rho, cut, &opts)?.without_witness();
            Ok(CutMeasures {
                cut: rho.dims().proper_subset(cut)?,
                negativity: n,
                log_negativity: log2_1p(n),
                ordering_holds: n <= lo.value + ORDERING_TOL && lo.value <= hi.value + ORDERING_TOL,
                lcren: lo.map_increasing(log2_1p),
                lcrenoa: hi.map_increasing(log2_1p),
                cren: lo,
                crenoa: hi,
            })
        })
        .collect::<Result<_>>()?;
    Ok(StateDescription {
        spec: spec.clone(),
        pure: state.is_pure(),
        fingerprint: state.fingerprint(),
        cuts: measures,
    })
}

fn tag(d: BoundDirection) -> &'static str {
    d.as_str()
}

/// Plain-text table, one block per cut.
pub fn render_table(desc: &StateDescription) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "state {} dims {:?} {} fingerprint {}",
        serde_json::to_value(desc.spec.family).expect("family serializes").as_str().unwrap_or("?"),
        desc.spec.dims.local(),
        if desc.pure { "pure" } else { "mixed" },
        desc.fingerprint
    );
    for c in &desc.cuts {
        let _ = writeln!(out, "cut {:?}", c.cut);
        let rows: [(&str, f64, &str); 6] = [
            ("N", c.negativity, "exact"),
            ("E_N", c.log_negativity, "exact"),
            ("CREN", c.cren.value, tag(c.cren.direction)),
            ("CRENoA", c.crenoa.value, tag(c.crenoa.direction)),
            ("LCREN", c.lcren.value, tag(c.lcren.direction)),
            ("LCRENoA", c.lcrenoa.value, tag(c.lcrenoa.direction)),
        ];
        for (name, v, t) in rows {
            let _ = writeln!(out, "  {name:<8} {:>24}  {t}", fmt_f64(v));
        }
        let _ = writeln!(
            out,
            "  ordering N <= CREN <= CRENoA: {}",
            if c.ordering_holds { "ok" } else { "FAILS" }
        );
    }
    out
}
