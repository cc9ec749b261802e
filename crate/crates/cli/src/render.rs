//! Text, JSON and CSV rendering. Everything is written in input order so
//! output does not depend on scheduling.

use std::fmt::Display;
use std::io::{self, Write};

use serde::Serialize;

use conductors::verify::{GroupPrimeSummary, Status, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn from_flags(json: bool, csv: bool) -> Self {
        if json {
            Format::Json
        } else if csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}

pub struct Output<W: Write> {
    w: W,
    format: Format,
}

pub fn join<T: Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Checked => "checked",
        Status::NotApplicable => "not-applicable",
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

impl<W: Write> Output<W> {
    pub fn new(w: W, format: Format) -> Self {
        Output { w, format }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.w.flush()
    }

    fn json<T: Serialize + ?Sized>(&mut self, doc: &T) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut self.w, doc)?;
        writeln!(self.w)
    }

    fn csv(&mut self, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
        let mut wr = csv::Writer::from_writer(&mut self.w);
        wr.write_record(header)?;
        for r in rows {
            wr.write_record(r)?;
        }
        wr.flush()
    }

    fn aligned(&mut self, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
        let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
        for r in rows {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    s.push_str(&format!("{c:<w$}  "));
                }
            }
            s
        };
        writeln!(self.w, "{}", line(header.to_vec()))?;
        for r in rows {
            writeln!(self.w, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }

    /// A flat table; `doc` is what JSON mode serializes.
    pub fn table<T: Serialize + ?Sized>(
        &mut self,
        header: &[&str],
        rows: Vec<Vec<String>>,
        doc: &T,
    ) -> io::Result<()> {
        match self.format {
            Format::Text => self.aligned(header, &rows),
            Format::Csv => self.csv(header, &rows),
            Format::Json => self.json(doc),
        }
    }

    pub fn summaries(&mut self, sums: &[GroupPrimeSummary]) -> io::Result<()> {
        match self.format {
            Format::Json => self.json(sums),
            Format::Csv => {
                let rows: Vec<Vec<String>> = sums
                    .iter()
                    .flat_map(|s| {
                        s.reports.iter().map(|r| {
                            vec![
                                s.group.clone(),
                                s.prime.to_string(),
                                r.check_name.clone(),
                                status_word(r.status).to_string(),
                                r.pass.to_string(),
                                r.records.len().to_string(),
                                r.failures().count().to_string(),
                            ]
                        })
                    })
                    .collect();
                self.csv(
                    &["group", "prime", "check", "status", "pass", "records", "failures"],
                    &rows,
                )
            }
            Format::Text => {
                for s in sums {
                    let records: usize = s.reports.iter().map(|r| r.records.len()).sum();
                    writeln!(
                        self.w,
                        "{} p={}: {} ({} checks, {} records)",
                        s.group,
                        s.prime,
                        verdict(s.pass),
                        s.reports.len(),
                        records
                    )?;
                    for r in s.reports.iter().filter(|r| !r.pass) {
                        self.report_failures(r)?;
                    }
                }
                let passed = sums.iter().filter(|s| s.pass).count();
                writeln!(self.w, "{passed} of {} (group, prime) pairs passed", sums.len())
            }
        }
    }

    fn report_failures(&mut self, r: &VerificationReport) -> io::Result<()> {
        writeln!(self.w, "  {} FAIL", r.check_name)?;
        for f in r.failures() {
            writeln!(
                self.w,
                "    {}: {} != {}{}",
                f.character,
                f.lhs,
                f.rhs,
                f.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()
            )?;
        }
        Ok(())
    }

    pub fn reports(&mut self, reports: &[VerificationReport]) -> io::Result<()> {
        match self.format {
            Format::Json => self.json(reports),
            Format::Csv => {
                let rows: Vec<Vec<String>> = reports
                    .iter()
                    .flat_map(|r| {
                        r.records.iter().map(|x| {
                            vec![
                                r.group.clone(),
                                r.prime.to_string(),
                                r.check_name.clone(),
                                status_word(r.status).to_string(),
                                x.character.clone(),
                                x.lhs.to_string(),
                                x.rhs.to_string(),
                                x.pass.to_string(),
                                x.detail.clone().unwrap_or_default(),
                            ]
                        })
                    })
                    .collect();
                self.csv(
                    &[
                        "group",
                        "prime",
                        "check",
                        "status",
                        "character",
                        "lhs",
                        "rhs",
                        "pass",
                        "detail",
                    ],
                    &rows,
                )
            }
            Format::Text => {
                for r in reports {
                    writeln!(
                        self.w,
                        "{} p={} {}: {}",
                        r.group,
                        r.prime,
                        r.check_name,
                        if r.status == Status::NotApplicable {
                            "not-applicable"
                        } else {
                            verdict(r.pass)
                        }
                    )?;
                    if r.status == Status::NotApplicable {
                        continue;
                    }
                    for x in &r.records {
                        writeln!(
                            self.w,
                            "  {:<8} {:>4} {:>4}  {}  {}",
                            x.character,
                            x.lhs,
                            x.rhs,
                            if x.pass { "ok" } else { "FAIL" },
                            x.detail.as_deref().unwrap_or("")
                        )?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(format: Format) -> String {
        let mut out = Output::new(Vec::new(), format);
        let rows = vec![
            vec!["A5".to_string(), "5, 5".to_string()],
            vec!["S3".into(), "1".into()],
        ];
        out.table(&["group", "c"], rows, &["doc"]).unwrap();
        String::from_utf8(out.w).unwrap()
    }

    #[test]
    fn formats() {
        assert_eq!(render(Format::Text), "group  c\nA5     5, 5\nS3     1\n");
        assert_eq!(render(Format::Csv), "group,c\nA5,\"5, 5\"\nS3,1\n");
        assert_eq!(render(Format::Json).trim(), "[\n  \"doc\"\n]");
        assert_eq!(Format::from_flags(false, true), Format::Csv);
    }
}
