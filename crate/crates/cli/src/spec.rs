use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use graphalg::graphs::{parse_graphs, CorpusSpec};
use graphalg::params::{AbelianGroup, GroupSubset, Parameter};
use graphalg::scalar::parse_rational;
use graphalg::{LabeledGraph, ParameterQ, QuantumGraphQ, WeightedGraphQ};
use serde_json::Value;

/// Read a JSON file; syntax errors carry line and column.
pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{}: invalid JSON", path.display()))
}

pub fn read_weighted(path: &Path) -> Result<WeightedGraphQ> {
    WeightedGraphQ::from_json(&read_json(path)?).with_context(|| format!("{}: bad weighted graph", path.display()))
}

pub fn read_quantum(path: &Path) -> Result<QuantumGraphQ> {
    QuantumGraphQ::from_json(&read_json(path)?).with_context(|| format!("{}: bad quantum graph", path.display()))
}

pub fn read_graphs(path: &Path) -> Result<Vec<LabeledGraph>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graphs(&text).with_context(|| format!("{}", path.display()))
}

/// `hom:H.json`, `inj:H.json`, `t:H.json`, `chr:5/2`, `tut:3,-1`,
/// `flo:Z2xZ3:S.json` or `flo:Z4:nonzero`, `perf`, `eul`, `expt`.
pub fn parse_param(spec: &str) -> Result<ParameterQ> {
    let spec = spec.replace('\u{2212}', "-");
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n.trim(), Some(r.trim())),
        None => (spec.trim(), None),
    };
    let arg = |what: &str| rest.with_context(|| format!("parameter `{name}` needs {what}"));
    let param = match name {
        "hom" => Parameter::Hom(read_weighted(Path::new(arg("a weighted graph file")?))?),
        "inj" => Parameter::Inj(read_weighted(Path::new(arg("a weighted graph file")?))?),
        "t" => Parameter::Density(read_weighted(Path::new(arg("a weighted graph file")?))?),
        "chr" => Parameter::Chr(parse_rational(arg("a point x")?)?),
        "tut" => {
            let point = arg("a point q,v")?;
            let (q, v) = point.split_once(',').context("tut point must be `q,v`")?;
            Parameter::Tut(parse_rational(q)?, parse_rational(v)?)
        }
        "flo" => {
            let (group, subset) = arg("a group and a subset")?
                .split_once(':')
                .context("flo needs `GROUP:SUBSET`")?;
            let group = AbelianGroup::parse(group.trim())?;
            let subset = match subset.trim() {
                "nonzero" => GroupSubset::nonzero(&group),
                file => GroupSubset::from_json(&group, &read_json(Path::new(file))?)
                    .with_context(|| format!("{file}: bad subset"))?,
            };
            Parameter::Flo(group, subset)
        }
        "perf" | "eul" | "expt" if rest.is_some() => bail!("parameter `{name}` takes no argument"),
        "perf" => Parameter::Perf,
        "eul" => Parameter::Eul,
        "expt" => Parameter::Expt,
        other => bail!("unknown parameter `{other}`"),
    };
    Ok(param)
}

#[derive(clap::Args, Debug, Clone)]
pub struct CorpusArgs {
    /// Number of labeled nodes.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Largest node count.
    #[arg(long, default_value_t = 4)]
    pub max_nodes: usize,
    /// Largest edge multiplicity.
    #[arg(long)]
    pub multiplicity: Option<u32>,
    /// Largest edge count.
    #[arg(long)]
    pub max_edges: Option<usize>,
    /// Simple graphs with nonadjacent labeled nodes only.
    #[arg(long)]
    pub simple: bool,
    /// Labeled nodes pairwise nonadjacent.
    #[arg(long)]
    pub independent_labels: bool,
    /// Allow loops.
    #[arg(long)]
    pub loops: bool,
}

impl CorpusArgs {
    pub fn spec(&self) -> CorpusSpec {
        let mut s = CorpusSpec::new(self.k, self.max_nodes);
        if let Some(m) = self.multiplicity {
            s = s.multiplicity(m);
        }
        if let Some(e) = self.max_edges {
            s = s.edges_at_most(e);
        }
        if self.simple {
            s = s.simple();
        }
        if self.independent_labels {
            s = s.independent_labels();
        }
        if self.loops {
            s = s.loops();
        }
        s
    }
}
