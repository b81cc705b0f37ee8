//! Machine-readable summary of both computations.

use serde::{Deserialize, Serialize};

use crate::atoms::{AtomCombo, AtomTable};
use crate::error::Result;
use crate::msp::{self, MspGraph};
use crate::props::{self, RowTotal};
use crate::rational::{format, rat, Rational};
use crate::tables::Tables;

pub const SIGN_CONVENTION: &str =
    "cosection-localized class equals the FJRW virtual class up to the sign (-1)^epsilon(gamma); not applied";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub delta: String,
    pub coeff: String,
    pub total: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeSpinJson {
    pub scale: String,
    pub prop1: String,
    pub prop2: String,
    pub prop3: String,
    pub prop4_s3: String,
    pub prop4_mixed: String,
    pub g4: String,
    pub g5: String,
    pub max_group_pushforward: String,
    pub table2: Vec<RowJson>,
    pub table3: Vec<RowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub id: usize,
    pub aut: u32,
    pub edges: Vec<String>,
    pub contribution: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MspJson {
    pub graphs: Vec<GraphJson>,
    pub partial_sum: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub theta_three_spin: String,
    pub theta_msp: String,
    pub theta_max_group: String,
    pub agree: bool,
    pub sign_convention: String,
    pub three_spin: ThreeSpinJson,
    pub msp: MspJson,
}

fn rows(rs: &[RowTotal]) -> Vec<RowJson> {
    rs.iter()
        .map(|r| RowJson { delta: r.label.to_string(), coeff: format(&r.coeff), total: format(&r.total) })
        .collect()
}

/// One graph with its contribution, atoms resolved where known.
#[derive(Clone, Debug)]
pub struct GraphLine {
    pub graph: MspGraph,
    pub contribution: AtomCombo,
}

pub fn graph_lines(atoms: &AtomTable) -> Result<Vec<GraphLine>> {
    msp::catalog_graphs()
        .into_iter()
        .map(|g| Ok(GraphLine { contribution: msp::graph_contribution(&g, atoms)?, graph: g }))
        .collect()
}

/// Sum of the contributions of every graph without the invariant's own vertex.
pub fn partial_sum(lines: &[GraphLine]) -> AtomCombo {
    lines
        .iter()
        .filter(|l| l.contribution.atom_coeff(crate::atoms::Atom::Theta).is_zero())
        .fold(AtomCombo::zero(), |acc, l| acc.add(&l.contribution))
}

fn graph_json(l: &GraphLine) -> GraphJson {
    GraphJson {
        id: l.graph.id,
        aut: l.graph.aut_order,
        edges: l.graph.edges.iter().map(|e| format(&e.d)).collect(),
        contribution: l.contribution.to_string(),
    }
}

pub struct Computed {
    pub report: Report,
    pub theta_three_spin: Rational,
    pub theta_msp: Rational,
}

pub fn build(t: &Tables) -> Result<Computed> {
    let b = props::breakdown(t)?;
    let theta_msp = msp::solve_theta()?;
    let max_group = props::theta_max_group(t)?;
    let lines = graph_lines(&AtomTable::standard())?;
    let report = Report {
        theta_three_spin: format(&b.theta),
        theta_msp: format(&theta_msp),
        theta_max_group: format(&max_group),
        agree: b.theta == theta_msp,
        sign_convention: SIGN_CONVENTION.to_string(),
        three_spin: ThreeSpinJson {
            scale: format(&rat(1, 1728)),
            prop1: format(&b.prop1),
            prop2: format(&b.prop2),
            prop3: format(&b.prop3),
            prop4_s3: format(&b.prop4_s3),
            prop4_mixed: format(&b.prop4_mixed),
            g4: format(&b.g4),
            g5: format(&b.g5),
            max_group_pushforward: props::max_group_pushforward(t)?.to_string(),
            table2: rows(&b.table2),
            table3: rows(&b.table3),
        },
        msp: MspJson { graphs: lines.iter().map(graph_json).collect(), partial_sum: partial_sum(&lines).to_string() },
    };
    Ok(Computed { report, theta_three_spin: b.theta, theta_msp })
}

impl Report {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Plain-text rendering, one labeled value per line.
    pub fn to_text(&self) -> String {
        let ts = &self.three_spin;
        let mut out = vec![
            format!("theta three-spin  {}", self.theta_three_spin),
            format!("theta msp         {}", self.theta_msp),
            format!("theta max-group   {}", self.theta_max_group),
            format!("agree             {}", self.agree),
            format!("sign convention   {}", self.sign_convention),
            String::new(),
            format!("prop1             {}", ts.prop1),
            format!("prop2             {}", ts.prop2),
            format!("prop3             {}", ts.prop3),
            format!("st_*(S^3)         {}", ts.prop4_s3),
            format!("mixed S^2 term    {}", ts.prop4_mixed),
            format!("deg S*T^2         {}", ts.g4),
            format!("deg T^3           {}", ts.g5),
            format!("st_*(virt)        {}", ts.max_group_pushforward),
        ];
        for (name, table) in [("table 2", &ts.table2), ("table 3", &ts.table3)] {
            out.push(String::new());
            out.push(format!("{name}: delta, coeff, total"));
            for r in table {
                out.push(format!("  {:<16}{:>8}{:>10}", r.delta, r.coeff, r.total));
            }
        }
        out.push(String::new());
        out.push("msp graphs".to_string());
        for g in &self.msp.graphs {
            out.push(format!("  {}", graph_text(g)));
        }
        out.push(format!("  sum of graphs 1-7: {}", self.msp.partial_sum));
        out.join("\n") + "\n"
    }
}

pub fn graph_text(g: &GraphJson) -> String {
    format!("{}  aut={}  edges=[{}]  {}", g.id, g.aut, g.edges.join(", "), g.contribution)
}

pub fn graphs_json(atoms: &AtomTable) -> Result<Vec<GraphJson>> {
    Ok(graph_lines(atoms)?.iter().map(graph_json).collect())
}
