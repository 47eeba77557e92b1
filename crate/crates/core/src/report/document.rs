//! Report documents and their JSON, TSV and text renderings.

use serde::Serialize;
use serde_json::Value;

use super::config::{Format, RunConfig};
use crate::fields::Verdict;

pub const SCHEMA: &str = "qfaudit-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Printed in the source tables or text.
    Published,
    /// Rebuilt from exact ingredients.
    Recomputed,
    /// Computed here from published inputs.
    Derived,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Recomputed => "recomputed",
            Provenance::Derived => "derived",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub value: String,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Item {
    pub section: String,
    pub id: String,
    pub verdict: Verdict,
    pub quantities: Vec<Quantity>,
    pub notes: Vec<String>,
    pub details: Value,
}

impl Item {
    pub fn new(section: &str, id: impl Into<String>, verdict: Verdict) -> Self {
        Item { section: section.into(), id: id.into(), verdict, quantities: Vec::new(), notes: Vec::new(), details: Value::Null }
    }

    pub fn quantity(mut self, name: &str, value: impl ToString, provenance: Provenance) -> Self {
        self.quantities.push(Quantity { name: name.into(), value: value.to_string(), provenance });
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn details(mut self, v: impl Serialize) -> Self {
        self.details = serde_json::to_value(v).unwrap_or(Value::Null);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub inconclusive: usize,
    pub fail: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: String,
    pub command: Vec<String>,
    pub config: RunConfig,
    pub items: Vec<Item>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: Vec<String>, config: &RunConfig, items: Vec<Item>) -> Self {
        let count = |v| items.iter().filter(|i| i.verdict == v).count();
        let summary = Summary {
            pass: count(Verdict::Pass),
            inconclusive: count(Verdict::Inconclusive),
            fail: count(Verdict::Fail),
            verdict: items.iter().map(|i| i.verdict).max().unwrap_or(Verdict::Pass),
        };
        Report {
            schema: SCHEMA,
            tool: format!("qfaudit {}", env!("CARGO_PKG_VERSION")),
            command,
            config: config.clone(),
            items,
            summary,
            timing_ms: None,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn item(&self, id: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Tsv => self.to_tsv(),
            Format::Text => self.to_text(),
        }
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let esc = |s: &str| s.replace(['\t', '\n'], " ");
        let mut out = String::from("section\tid\tkind\tname\tvalue\tprovenance\n");
        for it in &self.items {
            out += &format!("{}\t{}\tverdict\t\t{}\t\n", it.section, esc(&it.id), it.verdict);
            for q in &it.quantities {
                out += &format!("{}\t{}\tquantity\t{}\t{}\t{}\n", it.section, esc(&it.id), esc(&q.name), esc(&q.value), q.provenance.as_str());
            }
            for n in &it.notes {
                out += &format!("{}\t{}\tnote\t\t{}\t\n", it.section, esc(&it.id), esc(n));
            }
        }
        let s = &self.summary;
        out += &format!("summary\t\tverdict\t\t{}\t\n", s.verdict);
        out += &format!("summary\t\tcounts\t\tpass={} inconclusive={} fail={}\t\n", s.pass, s.inconclusive, s.fail);
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} :: {}\n", self.tool, self.command.join(" "));
        let mut section = "";
        for it in &self.items {
            if it.section != section {
                section = &it.section;
                out += &format!("\n== {section} ==\n");
            }
            out += &format!("[{:<12}] {}\n", it.verdict.to_string(), it.id);
            for q in &it.quantities {
                out += &format!("    {:<28} {}  ({})\n", q.name, q.value, q.provenance.as_str());
            }
            for n in &it.notes {
                out += &format!("    note: {n}\n");
            }
        }
        let s = &self.summary;
        out += &format!("\n{}: {} pass, {} inconclusive, {} fail\n", s.verdict, s.pass, s.inconclusive, s.fail);
        out
    }
}
