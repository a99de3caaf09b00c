//! Figure data as CSV tables plus matplotlib scripts that draw them.
//!
//! Every table starts with `#` metadata lines (tool version, model
//! descriptor, grid) followed by a header row and rows of 17-significant-digit
//! decimals.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::dynamics::h1_k;
use crate::error::{domain, Result};
use crate::melnikov::{fig1_default_grid, fig1_value};
use crate::models::{Coupling, Curvature, ModelParams};
use crate::scattering::{beta_grid, fig_curve};

pub const TOOL_VERSION: &str = concat!("flrw-splitting ", env!("CARGO_PKG_VERSION"));

/// Intervals of the default energy grid on `[−¼, 0]`.
pub const FIG1_INTERVALS: usize = 40;
/// Grid nodes per axis of the contour figure.
pub const FIG2_NODES: usize = 400;
pub const FIG2_LEVELS: [f64; 8] = [-0.2, -0.15, -0.1, -0.05, 0.0, 0.05, 0.1, 0.2];
/// `β` step of the determinant curves.
pub const BETA_STEP: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// A table whose metadata starts with the tool version.
    pub fn new(meta: Vec<String>, columns: &[&str]) -> Self {
        let mut all = vec![format!("tool: {TOOL_VERSION}")];
        all.extend(meta);
        Table {
            meta: all,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for m in &self.meta {
            writeln!(out, "# {m}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    /// Parse the output of [`Table::to_csv`].
    pub fn from_csv(text: &str) -> Result<Table> {
        let mut meta = Vec::new();
        let mut lines = text.lines();
        let header = loop {
            match lines.next() {
                Some(l) if l.starts_with('#') => {
                    meta.push(l.trim_start_matches('#').trim().to_string())
                }
                Some(l) => break l,
                None => return domain("CSV has no header row"),
            }
        };
        let columns: Vec<String> = header.split(',').map(str::to_string).collect();
        let mut rows = Vec::new();
        for (i, l) in lines.enumerate() {
            let row = l
                .split(',')
                .map(|c| c.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| crate::Error::Domain(format!("CSV row {}: {e}", i + 1)))?;
            if row.len() != columns.len() {
                return domain(format!(
                    "CSV row {} has {} cells, expected {}",
                    i + 1,
                    row.len(),
                    columns.len()
                ));
            }
            rows.push(row);
        }
        Ok(Table {
            meta,
            columns,
            rows,
        })
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

/// 17 significant digits, which round-trips every `f64`.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

/// One output file of a figure.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

/// The curvature of the overlap against the orbit energy.
pub fn fig1_table(intervals: usize) -> Result<Table> {
    let grid = fig1_default_grid(intervals);
    let values = grid
        .par_iter()
        .map(|&h| fig1_value(h))
        .collect::<Result<Vec<_>>>()?;
    let p = ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.0)?;
    let mut t = Table::new(
        vec![
            format!("model: {}", p.to_json()),
            format!("grid: h in [-0.25, 0], {intervals} intervals"),
            "energy: E = U^2/2 - u^2/2 + u^4/4".into(),
        ],
        &["h", "d2nu0_dtau2"],
    );
    t.rows = grid.iter().zip(values).map(|(&h, v)| vec![h, v]).collect();
    Ok(t)
}

/// A chain of contour points at one level.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub level: f64,
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

/// Grid edge carrying a contour point: `(i, j, 0)` joins node `(i, j)` to
/// `(i + 1, j)`, `(i, j, 1)` joins it to `(i, j + 1)`.
type EdgeId = (usize, usize, u8);

/// Marching-squares contours of `f` on an `n × n` node grid over
/// `[lo, hi]²`. Saddle cells are split according to the centre value.
pub fn contour<F: Fn(f64, f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    n: usize,
    level: f64,
) -> Vec<Polyline> {
    let h = (hi - lo) / (n - 1) as f64;
    let coord = |i: usize| lo + h * i as f64;
    let vals: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| f(coord(i), coord(j))).collect())
        .collect();
    let above = |i: usize, j: usize| vals[i][j] >= level;
    let point = |e: EdgeId| -> [f64; 2] {
        let (i, j, dir) = e;
        let (i2, j2) = if dir == 0 { (i + 1, j) } else { (i, j + 1) };
        let (a, b) = (vals[i][j], vals[i2][j2]);
        let s = (level - a) / (b - a);
        let x = coord(i) + s * (coord(i2) - coord(i));
        let y = coord(j) + s * (coord(j2) - coord(j));
        [x, y]
    };

    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            // Corners counter-clockwise from (i, j); edges bottom, right, top, left.
            let corners = [
                above(i, j),
                above(i + 1, j),
                above(i + 1, j + 1),
                above(i, j + 1),
            ];
            let edges: [EdgeId; 4] = [(i, j, 0), (i + 1, j, 1), (i, j + 1, 0), (i, j, 1)];
            let crossing: Vec<usize> = (0..4)
                .filter(|&k| corners[k] != corners[(k + 1) % 4])
                .collect();
            match crossing.len() {
                0 => {}
                2 => segments.push((edges[crossing[0]], edges[crossing[1]])),
                4 => {
                    let centre =
                        0.25 * (vals[i][j] + vals[i + 1][j] + vals[i + 1][j + 1] + vals[i][j + 1]);
                    // Pair each edge with the neighbour that keeps the centre's side connected.
                    if (centre >= level) == corners[0] {
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => unreachable!("a cell has an even number of sign changes"),
            }
        }
    }

    let mut incident: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        incident.entry(*a).or_default().push(k);
        incident.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    let walk = |start_seg: usize, from: EdgeId, used: &mut Vec<bool>| -> (Vec<EdgeId>, bool) {
        let mut chain = vec![from];
        let mut seg = start_seg;
        let mut at = from;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            chain.push(next);
            at = next;
            match incident[&at].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => {
                    let closed = at == from && chain.len() > 2;
                    return (chain, closed);
                }
            }
        }
    };
    // Open chains first, from their loose ends, so no chain is cut in two.
    for pass in 0..2 {
        for k in 0..segments.len() {
            if used[k] {
                continue;
            }
            let (a, b) = segments[k];
            let start = if pass == 1 || incident[&a].len() == 1 {
                a
            } else if incident[&b].len() == 1 {
                b
            } else {
                continue;
            };
            let (chain, closed) = walk(k, start, &mut used);
            out.push(Polyline {
                level,
                points: chain.into_iter().map(point).collect(),
                closed,
            });
        }
    }
    out
}

/// Level sets of `H₁ = ½U² − ¼(1 − u²)²` on `[−2, 2]²`, one row per point.
/// The `curve` column numbers the polylines within the table.
pub fn fig2_table(nodes: usize, levels: &[f64]) -> Result<Table> {
    if nodes < 2 || levels.is_empty() {
        return domain("contour grid needs at least two nodes and one level");
    }
    let p = ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.0)?;
    let lines: Vec<Vec<Polyline>> = levels
        .par_iter()
        .map(|&c| contour(|u, pu| h1_k(1.0, u, pu), -2.0, 2.0, nodes, c))
        .collect();
    let mut t = Table::new(
        vec![
            format!("model: {}", p.to_json()),
            format!("grid: (u, U) in [-2, 2]^2, {nodes} x {nodes} nodes"),
            "function: H1 = U^2/2 - (1 - u^2)^2/4".into(),
            "equilibria: centre (0, 0); saddles (-1, 0), (1, 0)".into(),
        ],
        &["level", "curve", "u", "U"],
    );
    for (id, pl) in lines.into_iter().flatten().enumerate() {
        for q in &pl.points {
            t.rows.push(vec![pl.level, id as f64, q[0], q[1]]);
        }
    }
    Ok(t)
}

fn determinant_table(coupling: Coupling, lo: f64, hi: f64) -> Result<Table> {
    let n = ((hi - lo) / BETA_STEP).round() as usize;
    let grid = beta_grid(lo, hi, n);
    let rows = fig_curve(coupling, &grid)?;
    let (p, continuation) = match coupling {
        Coupling::Minimal => (
            ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.0)?,
            "beta = phi",
        ),
        Coupling::Conformal => (
            ModelParams::unit_scalar(Curvature::Positive, Coupling::Conformal, 1.0)?,
            "beta^2 = 2 + phi^2, continued to phi^2 < 0 below sqrt(2)",
        ),
    };
    let mut t = Table::new(
        vec![
            format!("model: {}", p.to_json()),
            format!("grid: beta in [{lo}, {hi}], {n} intervals; {continuation}"),
            "columns: detM = 16 beta^4 |A|^2, A2 = |A|^2, scaled = |A|^2 sinh^2(pi beta)".into(),
        ],
        &["beta", "detM", "A2", "scaled"],
    );
    t.rows = rows
        .iter()
        .map(|r| vec![r.beta, r.det_m, r.a2, r.scaled])
        .collect();
    Ok(t)
}

/// Minimal coupling, `β ∈ [0.1, 5]`.
pub fn fig3_table() -> Result<Table> {
    determinant_table(Coupling::Minimal, 0.1, 5.0)
}

/// Conformal coupling, `β ∈ [0, 5]`; the first row is the `β = 0` anchor.
pub fn fig4_table() -> Result<Table> {
    determinant_table(Coupling::Conformal, 0.0, 5.0)
}

const SCRIPT_HEAD: &str = "import sys\n\
import numpy as np\n\
import matplotlib\n\
matplotlib.use(\"Agg\")\n\
import matplotlib.pyplot as plt\n\
\n";

pub fn plot_script(which: u8) -> Result<String> {
    let body = match which {
        1 => "d = np.genfromtxt(\"fig1.csv\", delimiter=\",\", comments=\"#\", names=True)\n\
fig, ax = plt.subplots()\n\
ax.plot(d[\"h\"], d[\"d2nu0_dtau2\"], \"o-\", ms=3)\n\
ax.axhline(-64 / 15, ls=\":\", c=\"gray\")\n\
ax.set_xlabel(\"h\")\n\
ax.set_ylabel(r\"$\\partial_\\tau^2 \\nu_0|_{\\tau=0}$\")\n\
fig.savefig(\"fig1.png\", dpi=150)\n",
        2 => "d = np.genfromtxt(\"fig2.csv\", delimiter=\",\", comments=\"#\", names=True)\n\
fig, ax = plt.subplots(figsize=(6, 6))\n\
for c in np.unique(d[\"curve\"]):\n\
    m = d[\"curve\"] == c\n\
    lw = 1.6 if d[\"level\"][m][0] == 0 else 0.8\n\
    ax.plot(d[\"u\"][m], d[\"U\"][m], \"k-\", lw=lw)\n\
ax.plot([-1, 1], [0, 0], \"rx\")\n\
ax.plot([0], [0], \"bo\")\n\
ax.set_xlim(-2, 2)\n\
ax.set_ylim(-2, 2)\n\
ax.set_aspect(\"equal\")\n\
ax.set_xlabel(\"u\")\n\
ax.set_ylabel(\"U\")\n\
fig.savefig(\"fig2.png\", dpi=150)\n",
        3 | 4 => {
            return Ok(format!(
                "{SCRIPT_HEAD}d = np.genfromtxt(\"fig{which}.csv\", delimiter=\",\", comments=\"#\", names=True)\n\
fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))\n\
a.semilogy(d[\"beta\"][d[\"detM\"] > 0], d[\"detM\"][d[\"detM\"] > 0])\n\
a.set_xlabel(r\"$\\beta$\")\n\
a.set_ylabel(r\"$\\det M$\")\n\
b.plot(d[\"beta\"], d[\"scaled\"])\n\
b.set_xlabel(r\"$\\beta$\")\n\
b.set_ylabel(r\"$|A|^2 \\sinh^2(\\pi\\beta)$\")\n\
fig.tight_layout()\n\
fig.savefig(\"fig{which}.png\", dpi=150)\n"
            ))
        }
        _ => return domain(format!("no figure {which}; expected 1 to 4")),
    };
    Ok(format!("{SCRIPT_HEAD}{body}"))
}

/// The CSV and the plot script of one figure.
pub fn figure(which: u8) -> Result<Vec<Artifact>> {
    let table = match which {
        1 => fig1_table(FIG1_INTERVALS)?,
        2 => fig2_table(FIG2_NODES, &FIG2_LEVELS)?,
        3 => fig3_table()?,
        4 => fig4_table()?,
        _ => return domain(format!("no figure {which}; expected 1 to 4")),
    };
    Ok(vec![
        Artifact {
            file_name: format!("fig{which}.csv"),
            contents: table.to_csv(),
        },
        Artifact {
            file_name: format!("plot_fig{which}.py"),
            contents: plot_script(which)?,
        },
    ])
}

pub const FIG1_SNAPSHOT: &str = include_str!("../snapshots/fig1.csv");
pub const FIG3_SNAPSHOT: &str = include_str!("../snapshots/fig3.csv");
pub const FIG4_SNAPSHOT: &str = include_str!("../snapshots/fig4.csv");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, -64.0 / 15.0, 1e-300, 5e-324, 0.0, -0.0, 1.0 / 3.0] {
            let s = format_number(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
    }

    #[test]
    fn table_round_trip() {
        let mut t = Table::new(vec!["x: 1".into()], &["a", "b"]);
        t.rows = vec![vec![1.0, 2.5], vec![-0.1, 1e-20]];
        let back = Table::from_csv(&t.to_csv()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.column("b").unwrap(), vec![2.5, 1e-20]);
    }

    #[test]
    fn circle_contour_is_closed() {
        let lines = contour(|x, y| x * x + y * y, -2.0, 2.0, 101, 1.0);
        assert_eq!(lines.len(), 1);
        assert!(lines[0].closed);
        for q in &lines[0].points {
            assert!(((q[0] * q[0] + q[1] * q[1]).sqrt() - 1.0).abs() < 2e-3);
        }
    }

    #[test]
    fn open_contour_reaches_boundary() {
        let lines = contour(|x, _| x, -1.0, 1.0, 11, 0.25);
        assert_eq!(lines.len(), 1);
        assert!(!lines[0].closed);
        assert_eq!(lines[0].points.len(), 11);
        for q in &lines[0].points {
            assert!((q[0] - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn saddle_cell_keeps_branches_apart() {
        // x·y has a saddle at the origin; a level just above zero gives two hyperbola branches.
        let lines = contour(|x, y| x * y, -1.0, 1.0, 20, 0.01);
        assert_eq!(lines.len(), 2);
        for l in &lines {
            assert!(l.points.iter().all(|q| q[0] * q[1] > 0.0));
        }
    }

    #[test]
    fn energy_levels_inside_separatrix_are_closed() {
        for c in [-0.2, -0.1, -0.05] {
            let lines = contour(|u, pu| h1_k(1.0, u, pu), -2.0, 2.0, 200, c);
            assert!(lines
                .iter()
                .any(|l| l.closed && l.points.iter().all(|q| q[0].abs() < 1.0)));
        }
    }

    #[test]
    fn unknown_figure() {
        assert!(figure(5).is_err());
        assert!(plot_script(0).is_err());
    }
}
