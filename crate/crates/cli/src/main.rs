use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use aquiver::homological::{ext_dim_with, label_table};
use aquiver::json::{
    bars_document, interval_json, matrix_json, parse_orientation, tame_document, tame_json, Content, Document,
};
use aquiver::{
    ar_ending_at, ar_starting_at, decompose, hom_space_dim, proj_presentation, ARAnswer, Error, Family, Field,
    Interval, Morphism, Orientation, TameRep,
};

#[derive(Parser)]
#[command(name = "aquiver", version, about = "Representations of continuous type-A quivers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coefficient field: `Q` or `Fp:<p>`.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    field: Field,
    /// Compact machine-readable JSON only.
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Human-readable output (the default).
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Split a representation into interval modules.
    Decompose { file: PathBuf },
    /// Dimension of Hom(M_I, M_J).
    Hom { orientation: PathBuf, i: String, j: String },
    /// Dimension of Ext(M_V, M_W).
    Ext { orientation: PathBuf, v: String, w: String },
    /// Minimal projective presentation of an interval module.
    Present { orientation: PathBuf, interval: String },
    /// Table of indecomposable projectives with symbolic positions.
    Projectives {
        orientation: PathBuf,
        /// List the injectives instead.
        #[arg(long)]
        injective: bool,
    },
    /// Almost split sequence ending or starting at an interval module.
    Ar {
        orientation: PathBuf,
        interval: String,
        #[arg(long, conflicts_with = "starting", required_unless_present = "starting")]
        ending: bool,
        #[arg(long)]
        starting: bool,
    },
    /// Random change of basis in every cell.
    Scramble {
        file: PathBuf,
        /// Required: output must be reproducible.
        #[arg(long)]
        seed: u64,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "Q" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("Fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| format!("expected Q or Fp:<p>, got {s:?}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn orientation(path: &Path) -> anyhow::Result<Orientation> {
    let text = read(path)?;
    parse_orientation(&text).with_context(|| path.display().to_string())
}

fn interval(s: &str) -> anyhow::Result<Interval> {
    Interval::parse(s).with_context(|| format!("bad interval {s:?}"))
}

struct Output {
    json: bool,
    text: String,
}

impl Output {
    fn new(json: bool) -> Output {
        Output {
            json,
            text: String::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        if !self.json {
            self.text.push_str(s.as_ref());
            self.text.push('\n');
        }
    }

    fn value(&mut self, v: &Value) {
        let s = if self.json {
            serde_json::to_string(v)
        } else {
            serde_json::to_string_pretty(v)
        };
        self.text.push_str(&s.expect("JSON values serialize"));
        self.text.push('\n');
    }
}

fn morphism_json(f: &Morphism) -> Value {
    json!({
        "source": tame_json(f.source()),
        "target": tame_json(f.target()),
        "cells": f.cells().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

fn single(o: &Orientation, bar: &Interval, field: Field) -> TameRep {
    TameRep::from_intervals(o, std::slice::from_ref(bar), field)
}

fn at_most_one(what: &str, d: usize) -> anyhow::Result<usize> {
    if d > 1 {
        return Err(Error::Internal(format!("{what} has dimension {d}")).into());
    }
    Ok(d)
}

fn run(cli: Cli) -> anyhow::Result<String> {
    let field = cli.global.field;
    let mut out = Output::new(cli.global.json);
    match cli.command {
        Command::Decompose { file } => {
            let text = read(&file)?;
            let doc = Document::parse(&text, field).with_context(|| file.display().to_string())?;
            let bars = match &doc.content {
                Content::Bars(bars) => {
                    decompose(&TameRep::from_bars(&doc.orientation, bars, doc.field.unwrap_or(field)))
                }
                Content::Tame(v) => decompose(v),
            };
            if bars.is_empty() {
                out.line("no bars");
            }
            for (bar, m) in bars.iter() {
                out.line(format!("{bar} x{m}"));
            }
            out.line("");
            out.value(&bars_document(&doc.orientation, &bars));
        }
        Command::Hom {
            orientation: path,
            i,
            j,
        } => {
            let o = orientation(&path)?;
            let (i, j) = (interval(&i)?, interval(&j)?);
            let d = at_most_one(
                &format!("Hom({i}, {j})"),
                hom_space_dim(&single(&o, &i, field), &single(&o, &j, field))?,
            )?;
            if out.json {
                out.value(&json!({ "hom": d }));
            } else {
                out.line(d.to_string());
            }
        }
        Command::Ext {
            orientation: path,
            v,
            w,
        } => {
            let o = orientation(&path)?;
            let (v, w) = (interval(&v)?, interval(&w)?);
            let pres = proj_presentation(&o, &v, field)?;
            let d = at_most_one(&format!("Ext({v}, {w})"), ext_dim_with(&pres, &single(&o, &w, field))?)?;
            if out.json {
                out.value(&json!({ "ext": d }));
            } else {
                out.line(d.to_string());
            }
        }
        Command::Present {
            orientation: path,
            interval: bar,
        } => {
            let o = orientation(&path)?;
            let bar = interval(&bar)?;
            let pres = proj_presentation(&o, &bar, field)?;
            let names = |labels: &[aquiver::Label]| labels.iter().map(|l| l.to_string()).collect::<Vec<_>>();
            out.line(format!("P_1 = {}", names(&pres.p1).join(" + ")));
            out.line(format!("P_0 = {}", names(&pres.p0).join(" + ")));
            out.line("");
            let labels = |labels: &[aquiver::Label]| {
                labels
                    .iter()
                    .map(|l| json!({ "label": l.to_string(), "support": l.support(&o).as_ref().map(interval_json) }))
                    .collect::<Vec<_>>()
            };
            out.value(&json!({
                "interval": interval_json(&bar),
                "p1": labels(&pres.p1),
                "p0": labels(&pres.p0),
                "signs": pres.signs.iter().map(|&(i, j, s)| json!([i, j, s])).collect::<Vec<_>>(),
                "map": morphism_json(&pres.map),
            }));
        }
        Command::Projectives {
            orientation: path,
            injective,
        } => {
            let o = orientation(&path)?;
            let table = label_table(
                &o,
                if injective {
                    Family::Injective
                } else {
                    Family::Projective
                },
            );
            if out.json {
                let rows: Vec<Value> = table
                    .rows
                    .iter()
                    .map(|(support, label)| json!({ "support": support, "label": label }))
                    .collect();
                out.value(&json!({ "order": table.header, "rows": rows }));
            } else {
                out.text.push_str(&table.to_string());
            }
        }
        Command::Ar {
            orientation: path,
            interval: bar,
            ending,
            ..
        } => {
            let o = orientation(&path)?;
            let bar = interval(&bar)?;
            let answer = if ending {
                ar_ending_at(&o, &bar)?
            } else {
                ar_starting_at(&o, &bar)?
            };
            out.line(answer.tag());
            let sequence = match &answer {
                ARAnswer::Exists(seq) => {
                    out.line(format!(
                        "0 -> {} -> {} + {} -> {} -> 0",
                        seq.left, seq.middle[0], seq.middle[1], seq.right
                    ));
                    json!({
                        "left": interval_json(&seq.left),
                        "middle": seq.middle.iter().map(interval_json).collect::<Vec<_>>(),
                        "right": interval_json(&seq.right),
                        "f": morphism_json(&seq.f),
                        "g": morphism_json(&seq.g),
                    })
                }
                _ => Value::Null,
            };
            out.line("");
            out.value(&json!({ "answer": answer.tag(), "sequence": sequence }));
        }
        Command::Scramble { file, seed } => {
            let text = read(&file)?;
            let doc = Document::parse(&text, field).with_context(|| file.display().to_string())?;
            out.value(&tame_document(&doc.rep(field).scramble(seed)));
        }
    }
    Ok(out.text)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_internal() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use anyhow::anyhow;

    #[test]
    fn field_flag() {
        assert_eq!(parse_field("Q"), Ok(Field::Rational));
        assert_eq!(parse_field("Fp:7"), Ok(Field::Prime(7)));
        assert!(parse_field("Fp:8").is_err());
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn internal_errors_exit_three() {
        assert_eq!(exit_code(&Error::Internal("x".into()).into()), 3);
        assert_eq!(exit_code(&anyhow!(Error::Parse("x".into())).context("file")), 2);
        assert_eq!(exit_code(&anyhow!("io")), 2);
    }
}
