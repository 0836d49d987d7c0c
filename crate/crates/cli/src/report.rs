//! Rendered command output in the three supported formats.

use serde::Serialize;
use serde_json::Value;

use deglab::exactlin::format_rational;
use deglab::ProjPoint;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Text,
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub svg: Option<String>,
    /// Whether the command's own check passed (`demo`).
    pub ok: bool,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, text: String) -> CliResult<Self> {
        let json = serde_json::to_value(value).map_err(|e| CliError::computation(format!("serializing: {e}")))?;
        Ok(Report {
            json,
            text,
            svg: None,
            ok: true,
        })
    }

    pub fn with_svg(mut self, svg: String) -> Self {
        self.svg = Some(svg);
        self
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)
                    .map_err(|e| CliError::computation(format!("serializing: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.text.clone()),
            Format::Svg => self
                .svg
                .clone()
                .ok_or_else(|| CliError::validation("this command has no SVG output")),
        }
    }
}

fn number(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// `(x : y : z)` with exact rationals, or decimals with an imaginary part
/// where it is nonzero.
pub fn point_text(p: &ProjPoint) -> String {
    let coords: Vec<String> = match p {
        ProjPoint::Exact(v) => v.iter().map(format_rational).collect(),
        ProjPoint::Numeric(_) => p
            .normalized()
            .iter()
            .map(|z| {
                if z.im.abs() < 1e-12 {
                    number(z.re)
                } else {
                    format!(
                        "{}{}{}i",
                        number(z.re),
                        if z.im < 0.0 { "-" } else { "+" },
                        number(z.im.abs())
                    )
                }
            })
            .collect(),
    };
    format!("({})", coords.join(" : "))
}
