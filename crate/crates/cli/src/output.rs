//! Table export document and the four output formats. The JSON document is
//! fully typed so that parse → serialize round-trips byte-identically, with
//! records sorted by height and canonical key order.

use asl_core::engine::SLTable;
use asl_core::loop_algebra::LoopElement;
use asl_core::root_system::ExtendedRoot;
use asl_core::Letter;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Tex,
    Plain,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "tex" => Ok(Format::Tex),
            "plain" => Ok(Format::Plain),
            other => Err(format!("unknown format {other:?} (json|csv|tex|plain)")),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Meta {
    pub rank: usize,
    pub order: Vec<Letter>,
    pub max_height: usize,
    pub tool_version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootJson {
    pub k: usize,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<Letter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<Letter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

impl From<&ExtendedRoot> for RootJson {
    fn from(root: &ExtendedRoot) -> Self {
        match root {
            ExtendedRoot::Real(real) => RootJson {
                k: real.k,
                kind: "real".to_string(),
                i: Some(real.i),
                j: Some(real.j),
                r: None,
            },
            ExtendedRoot::Imaginary { k, r } => RootJson {
                k: *k,
                kind: "imaginary".to_string(),
                i: None,
                j: None,
                r: Some(*r),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BracketingJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<u8>,
    pub t_power: u32,
    pub leading_coefficient: String,
}

impl From<&LoopElement> for BracketingJson {
    fn from(b: &LoopElement) -> Self {
        let (kind, row, col) = match b.single_unit_direction() {
            Some((p, q)) => ("matrix_unit".to_string(), Some(p), Some(q)),
            None => ("diagonal".to_string(), None, None),
        };
        BracketingJson {
            kind,
            row,
            col,
            t_power: b.t_power().unwrap_or(0),
            leading_coefficient: b.leading_coefficient().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootRecord {
    pub root: RootJson,
    pub height: usize,
    pub word: Vec<Letter>,
    pub word_compact: String,
    pub bracketing: BracketingJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableDoc {
    pub meta: Meta,
    pub roots: Vec<RootRecord>,
}

impl TableDoc {
    pub fn from_table(table: &SLTable) -> TableDoc {
        let rank = table.rank();
        let roots = table
            .extended_roots()
            .iter()
            .map(|ext| {
                let word = table.word(ext).expect("extended root within table");
                let bracketing = table.bracketing(word).expect("stored word has bracketing");
                RootRecord {
                    root: RootJson::from(ext),
                    height: ext.height(rank),
                    word: word.letters().to_vec(),
                    word_compact: word.compact(rank),
                    bracketing: BracketingJson::from(bracketing),
                }
            })
            .collect();
        TableDoc {
            meta: Meta {
                rank,
                order: table.alphabet().order().to_vec(),
                max_height: table.max_height(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            },
            roots,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => self.to_csv(),
            Format::Tex => self.to_tex(),
            Format::Plain => self.to_plain(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::from(
            "k,type,i,j,r,height,word_compact,t_power,leading_coefficient\n",
        );
        for rec in &self.roots {
            let opt = |v: Option<u8>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                rec.root.k,
                rec.root.kind,
                opt(rec.root.i),
                opt(rec.root.j),
                rec.root.r.map(|x| x.to_string()).unwrap_or_default(),
                rec.height,
                rec.word_compact,
                rec.bracketing.t_power,
                rec.bracketing.leading_coefficient,
            ));
        }
        out
    }

    fn to_tex(&self) -> String {
        let mut out = String::from("\\begin{array}{ll}\n");
        for rec in &self.roots {
            out.push_str(&format!(
                "\\mathrm{{SL}}({}) & {} \\\\\n",
                root_tex(&rec.root),
                rec.word_compact
            ));
        }
        out.push_str("\\end{array}\n");
        out
    }

    fn to_plain(&self) -> String {
        let mut out = String::new();
        for rec in &self.roots {
            out.push_str(&format!("{}: {}\n", root_plain(&rec.root), rec.word_compact));
        }
        out
    }
}

fn delta_prefix(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "δ".to_string(),
        _ => format!("{k}δ"),
    }
}

pub fn root_plain(root: &RootJson) -> String {
    if root.kind == "imaginary" {
        format!("{}[{}]", delta_prefix(root.k.max(1)), root.r.unwrap_or(0))
    } else {
        let i = root.i.unwrap_or(0);
        let j = root.j.unwrap_or(0);
        let arch = if i == j {
            format!("α_{i}")
        } else {
            format!("α_{{{i}→{j}}}")
        };
        if root.k == 0 {
            arch
        } else {
            format!("{}+{}", delta_prefix(root.k), arch)
        }
    }
}

fn root_tex(root: &RootJson) -> String {
    if root.kind == "imaginary" {
        let k = root.k.max(1);
        let d = if k == 1 { "\\delta".to_string() } else { format!("{k}\\delta") };
        format!("({d}, {})", root.r.unwrap_or(0))
    } else {
        let i = root.i.unwrap_or(0);
        let j = root.j.unwrap_or(0);
        let arch = if i == j {
            format!("\\alpha_{{{i}}}")
        } else {
            format!("\\alpha_{{{i} \\to {j}}}")
        };
        match root.k {
            0 => arch,
            1 => format!("\\delta+{arch}"),
            k => format!("{k}\\delta+{arch}"),
        }
    }
}

/// Canonical JSON rendering used everywhere: pretty, stable field order,
/// trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Renders a report-like serializable value in the requested format. The
/// plain/csv/tex fallbacks go through the JSON value tree so every report
/// type gets all four formats.
pub fn render_report<T: Serialize>(value: &T, format: Format) -> String {
    match format {
        Format::Json => to_json(value),
        Format::Plain => {
            let v = serde_json::to_value(value).expect("serializable");
            let mut out = String::new();
            plain_value(&v, "", &mut out);
            out
        }
        Format::Csv => {
            let v = serde_json::to_value(value).expect("serializable");
            let mut out = String::from("key,value\n");
            let mut rows = Vec::new();
            flatten_value(&v, "", &mut rows);
            for (k, val) in rows {
                out.push_str(&format!("{k},{}\n", csv_escape(&val)));
            }
            out
        }
        Format::Tex => {
            let v = serde_json::to_value(value).expect("serializable");
            let mut rows = Vec::new();
            flatten_value(&v, "", &mut rows);
            let mut out = String::from("\\begin{array}{ll}\n");
            for (k, val) in rows {
                out.push_str(&format!(
                    "\\texttt{{{}}} & \\texttt{{{}}} \\\\\n",
                    tex_escape(&k),
                    tex_escape(&val)
                ));
            }
            out.push_str("\\end{array}\n");
            out
        }
    }
}

fn scalar_to_string(v: &serde_json::Value) -> Option<String> {
    match v {
        serde_json::Value::Null => Some(String::new()),
        serde_json::Value::Bool(b) => Some(b.to_string()),
        serde_json::Value::Number(n) => Some(n.to_string()),
        serde_json::Value::String(s) => Some(s.clone()),
        serde_json::Value::Array(items) => {
            if items
                .iter()
                .any(|i| matches!(i, serde_json::Value::Array(_) | serde_json::Value::Object(_)))
            {
                return None;
            }
            let scalars: Option<Vec<String>> = items.iter().map(scalar_to_string).collect();
            scalars.map(|s| s.join(" "))
        }
        serde_json::Value::Object(_) => None,
    }
}

fn plain_value(v: &serde_json::Value, indent: &str, out: &mut String) {
    match v {
        serde_json::Value::Object(map) => {
            for (key, val) in map {
                match scalar_to_string(val) {
                    Some(s) => out.push_str(&format!("{indent}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{indent}{key}:\n"));
                        plain_value(val, &format!("{indent}  "), out);
                    }
                }
            }
        }
        serde_json::Value::Array(items) => {
            for (idx, item) in items.iter().enumerate() {
                match scalar_to_string(item) {
                    Some(s) => out.push_str(&format!("{indent}[{idx}] {s}\n")),
                    None => {
                        out.push_str(&format!("{indent}[{idx}]\n"));
                        plain_value(item, &format!("{indent}  "), out);
                    }
                }
            }
        }
        other => {
            let s = scalar_to_string(other).unwrap_or_default();
            out.push_str(&format!("{indent}{s}\n"));
        }
    }
}

fn flatten_value(v: &serde_json::Value, prefix: &str, rows: &mut Vec<(String, String)>) {
    match v {
        serde_json::Value::Object(map) => {
            for (key, val) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten_value(val, &path, rows);
            }
        }
        serde_json::Value::Array(items) => match scalar_to_string(v) {
            Some(s) => rows.push((prefix.to_string(), s)),
            None => {
                for (idx, item) in items.iter().enumerate() {
                    flatten_value(item, &format!("{prefix}[{idx}]"), rows);
                }
            }
        },
        other => {
            rows.push((
                prefix.to_string(),
                scalar_to_string(other).unwrap_or_default(),
            ));
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn tex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}")
        .replace('_', "\\_")
        .replace('{', "\\{")
        .replace('}', "\\}")
        .replace('→', "\\to ")
        .replace('δ', "\\delta ")
        .replace('α', "\\alpha ")
}
