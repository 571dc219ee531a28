use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true).map_err(|_| format!("unknown format '{s}' (text, csv, json)"))
    }
}

/// Ordered by severity so that combining outcomes keeps the worst.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Usage,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Usage => 2,
        }
    }
}

/// What a run produced: text for stdout, diagnostics for stderr, exit status.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: Vec<String>,
}

impl Outcome {
    pub fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            status: Status::Usage,
            stdout: String::new(),
            stderr: vec![msg.into()],
        }
    }

    pub fn merge(&mut self, other: Outcome) {
        self.status = self.status.max(other.status);
        self.stdout.push_str(&other.stdout);
        self.stderr.extend(other.stderr);
    }

    pub fn finish(self) -> ExitCode {
        print!("{}", self.stdout);
        let _ = std::io::stdout().flush();
        for line in &self.stderr {
            eprintln!("{line}");
        }
        ExitCode::from(self.status.code())
    }
}

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Quotes a CSV field when it needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// Left-aligned columns for the text format.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let fmt_row = |cells: Vec<String>| {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{}\n", line.join("  ").trim_end())
    };
    let mut s = fmt_row(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        s.push_str(&fmt_row(r.clone()));
    }
    s
}
