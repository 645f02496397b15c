use std::fmt::Write;

use crate::bnp::SolveReport;
use crate::instance::Color;

/// Outcome of one `solve` run, printable as a human-readable block or as a
/// flat `key=value` document. Vertex and color ids are 1-based on output.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub status: String,
    pub weight: Option<u64>,
    pub assignment: Option<Vec<Color>>,
    pub nodes: u64,
    pub columns: u64,
    pub pricing_calls: u64,
    pub lp_solves: u64,
    pub wall_time: f64,
    /// Seed and configuration, echoed verbatim.
    pub echo: Vec<(String, String)>,
}

impl ResultRecord {
    pub fn from_report(report: &SolveReport, echo: Vec<(String, String)>) -> Self {
        let coloring = report.status.coloring();
        ResultRecord {
            status: report.status.name().to_string(),
            weight: coloring.map(|c| c.weight),
            assignment: coloring.map(|c| c.assignment.clone()),
            nodes: report.nodes,
            columns: report.columns_generated,
            pricing_calls: report.pricing_calls,
            lp_solves: report.lp_solves,
            wall_time: report.wall_time.as_secs_f64(),
            echo,
        }
    }

    /// An instance rejected before search because some list is empty.
    pub fn trivially_infeasible(echo: Vec<(String, String)>) -> Self {
        ResultRecord {
            status: "infeasible".into(),
            weight: None,
            assignment: None,
            nodes: 0,
            columns: 0,
            pricing_calls: 0,
            lp_solves: 0,
            wall_time: 0.0,
            echo,
        }
    }

    pub fn same_modulo_time(&self, other: &ResultRecord) -> bool {
        ResultRecord {
            wall_time: 0.0,
            ..self.clone()
        } == ResultRecord {
            wall_time: 0.0,
            ..other.clone()
        }
    }

    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "status={}", self.status);
        if let Some(w) = self.weight {
            let _ = writeln!(out, "weight={w}");
        }
        let _ = writeln!(out, "nodes={}", self.nodes);
        let _ = writeln!(out, "columns={}", self.columns);
        let _ = writeln!(out, "pricing_calls={}", self.pricing_calls);
        let _ = writeln!(out, "lp_solves={}", self.lp_solves);
        let _ = writeln!(out, "wall_time={:.6}", self.wall_time);
        for (k, v) in &self.echo {
            let _ = writeln!(out, "{k}={v}");
        }
        if let Some(a) = &self.assignment {
            for (v, j) in a.iter().enumerate() {
                let _ = writeln!(out, "v.{}={}", v + 1, j + 1);
            }
        }
        out
    }

    pub fn to_human(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("status".into(), self.status.clone()),
            ("weight".into(), self.weight.map_or("-".into(), |w| w.to_string())),
            ("nodes".into(), self.nodes.to_string()),
            ("columns".into(), self.columns.to_string()),
            ("pricing calls".into(), self.pricing_calls.to_string()),
            ("lp solves".into(), self.lp_solves.to_string()),
            ("time".into(), format!("{:.3}s", self.wall_time)),
        ];
        rows.extend(self.echo.iter().cloned());
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<24}{v}");
        }
        if let Some(a) = &self.assignment {
            out.push_str("assignment\n");
            for (v, j) in a.iter().enumerate() {
                let _ = writeln!(out, "  {} -> {}", v + 1, j + 1);
            }
        }
        out
    }
}
