//! Result tables and their text and CSV renderings.

use std::fmt::Write as _;

/// One reported number.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    /// Row group, e.g. `LN(0.5) exponential:0.1`; empty for single-group tables.
    pub group: String,
    pub statistic: String,
    pub value: f64,
    pub se: Option<f64>,
    /// Per-cell settings appended to the table's echo in CSV output.
    pub echo: String,
}

/// How the text rendering lays out the cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// One line per cell: statistic, value, s.e.
    Long,
    /// One line per group, one column per statistic.
    Pivot,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    pub title: String,
    pub layout: Layout,
    pub value_label: String,
    /// Settings shared by every cell, as `key=value` pairs.
    pub echo: Vec<(String, String)>,
    pub cells: Vec<Cell>,
    /// Decimal places in the text rendering.
    pub precision: usize,
}

pub const CSV_HEADER: [&str; 4] = ["statistic", "value", "se", "config-echo"];

impl ReportTable {
    pub fn new(title: impl Into<String>, layout: Layout, value_label: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            layout,
            value_label: value_label.into(),
            echo: Vec::new(),
            cells: Vec::new(),
            precision: 4,
        }
    }

    pub fn echo(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.echo.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, cell: Cell) {
        self.cells.push(cell);
    }

    fn echo_string(&self) -> String {
        self.echo
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// CSV with columns `statistic,value,se,config-echo`; numbers are written
    /// in their shortest exact form.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        let shared = self.echo_string();
        for c in &self.cells {
            let mut echo = shared.clone();
            for part in [
                (!c.group.is_empty()).then(|| format!("row={}", c.group)),
                (!c.echo.is_empty()).then(|| c.echo.clone()),
            ]
            .into_iter()
            .flatten()
            {
                if !echo.is_empty() {
                    echo.push(';');
                }
                echo.push_str(&part);
            }
            let se = c.se.map(|s| s.to_string()).unwrap_or_default();
            w.write_record([c.statistic.as_str(), &c.value.to_string(), &se, &echo])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    /// Aligned plain text, preceded by `# key: value` lines for the echo.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# {}", self.title).unwrap();
        for (k, v) in &self.echo {
            writeln!(out, "# {k}: {v}").unwrap();
        }
        let rows = match self.layout {
            Layout::Long => self.long_rows(),
            Layout::Pivot => self.pivot_rows(),
        };
        out.push_str(&align(&rows));
        out
    }

    fn number(&self, v: f64) -> String {
        if v.is_finite() {
            format!("{v:.*}", self.precision)
        } else {
            v.to_string()
        }
    }

    fn long_rows(&self) -> Vec<Vec<String>> {
        let with_group = self.cells.iter().any(|c| !c.group.is_empty());
        let with_echo = self.cells.iter().any(|c| !c.echo.is_empty());
        let mut header = Vec::new();
        if with_group {
            header.push("row".to_string());
        }
        header.extend([
            "statistic".to_string(),
            self.value_label.clone(),
            "se".to_string(),
        ]);
        if with_echo {
            header.push("detail".to_string());
        }
        let mut rows = vec![header];
        for c in &self.cells {
            let mut row = Vec::new();
            if with_group {
                row.push(c.group.clone());
            }
            row.push(c.statistic.clone());
            row.push(self.number(c.value));
            row.push(c.se.map_or("-".to_string(), |s| self.number(s)));
            if with_echo {
                row.push(c.echo.clone());
            }
            rows.push(row);
        }
        rows
    }

    fn pivot_rows(&self) -> Vec<Vec<String>> {
        let mut groups: Vec<&str> = Vec::new();
        let mut stats: Vec<&str> = Vec::new();
        for c in &self.cells {
            if !groups.contains(&c.group.as_str()) {
                groups.push(&c.group);
            }
            if !stats.contains(&c.statistic.as_str()) {
                stats.push(&c.statistic);
            }
        }
        let mut header = vec![String::new()];
        header.extend(stats.iter().map(|s| s.to_string()));
        let mut rows = vec![header];
        for g in &groups {
            let mut row = vec![g.to_string()];
            for s in &stats {
                let cell = self
                    .cells
                    .iter()
                    .find(|c| c.group == *g && c.statistic == *s);
                row.push(cell.map_or("-".to_string(), |c| self.number(c.value)));
            }
            rows.push(row);
        }
        rows
    }
}

// First column left-aligned, the rest right-aligned.
fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|i| {
            rows.iter()
                .filter_map(|r| r.get(i))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let pad = widths[i] - cell.chars().count();
            if i == 0 {
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
            } else {
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_table(layout: Layout) -> ReportTable {
        let mut t = ReportTable::new("demo", layout, "power");
        t.echo("n", 100).echo("seed", 7);
        for (g, s, v) in [
            ("W(1)", "KS", 0.1),
            ("W(1)", "S1(a=5)", 0.095),
            ("LN(0.5)", "KS", 0.77),
        ] {
            t.push(Cell {
                group: g.into(),
                statistic: s.into(),
                value: v,
                se: Some(0.004),
                echo: String::new(),
            });
        }
        t
    }

    #[test]
    fn csv_has_fixed_columns() {
        let csv = sample_table(Layout::Pivot).to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "statistic,value,se,config-echo");
        assert_eq!(lines.next().unwrap(), "KS,0.1,0.004,n=100;seed=7;row=W(1)");
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = ReportTable::new("q", Layout::Long, "p");
        t.push(Cell {
            group: "Beta(0.5,1)".into(),
            statistic: "KS".into(),
            value: 0.5,
            se: None,
            echo: String::new(),
        });
        let csv = t.to_csv();
        let mut r = csv::Reader::from_reader(csv.as_bytes());
        let rec = r.records().next().unwrap().unwrap();
        assert_eq!(&rec[3], "row=Beta(0.5,1)");
        assert_eq!(&rec[2], "");
    }

    #[test]
    fn pivot_text_is_aligned() {
        let text = sample_table(Layout::Pivot).to_text();
        let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].ends_with("S1(a=5)"));
        assert!(lines[2].starts_with("LN(0.5)"));
        assert!(lines[2].ends_with('-'));
        assert_eq!(lines[1].len(), lines[0].len());
    }
}
