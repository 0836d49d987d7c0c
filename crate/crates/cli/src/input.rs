//! JSON inputs. One permissive document type covers every command; each
//! command checks the fields it needs before computing anything. Report
//! fields that are not inputs are ignored, so reports can be fed back in.

use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use deglab::config::PointConfig;
use deglab::exactlin::{Mat, Rational, RationalRepr};
use deglab::locus::{LocusComponent, RankOneFamily, SpanCoefficients};
use deglab::pencil::MatrixTuple;
use deglab::ProjPoint;

use crate::error::{CliError, CliResult};

#[derive(Debug, Default, Deserialize)]
pub struct Document {
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub matrices: Option<Vec<Mat>>,
    #[serde(default)]
    pub family: Option<FamilyInput>,
    #[serde(default)]
    pub coefficients: Option<Mat>,
    #[serde(default)]
    pub points: Option<Vec<ProjPoint>>,
    #[serde(default)]
    pub labels: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    pub components: Option<Vec<LocusComponent>>,
    #[serde(default)]
    pub a1: Option<Mat>,
    #[serde(default)]
    pub a2: Option<Mat>,
}

/// `E_j = w_j k_jᵀ`; without images the family is symmetric (`w_j = k_j`).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyInput {
    #[serde(default)]
    pub images: Option<Vec<Vec<RationalRepr>>>,
    pub normals: Vec<Vec<RationalRepr>>,
}

/// Reads `-` as stdin, text starting with `{` as inline JSON and anything
/// else as a file path.
pub fn read_source(source: &str) -> CliResult<String> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') {
        return Ok(source.to_string());
    }
    if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::validation(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(Path::new(source)).map_err(|e| CliError::validation(format!("reading {source}: {e}")))
}

pub fn parse_document(text: &str) -> CliResult<Document> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::validation(format!("at `{path}`: {}", e.into_inner()))
    })
}

fn rationals(v: Vec<Vec<RationalRepr>>, what: &str) -> CliResult<Vec<Vec<Rational>>> {
    v.into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .map(RationalRepr::into_rational)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::validation(format!("{what}[{i}]: {e}")))
        })
        .collect()
}

pub enum Operators {
    Tuple(MatrixTuple),
    Span {
        family: RankOneFamily,
        coefficients: SpanCoefficients,
    },
}

impl Operators {
    pub fn tuple(&self) -> CliResult<MatrixTuple> {
        match self {
            Operators::Tuple(t) => Ok(t.clone()),
            Operators::Span { family, coefficients } => Ok(deglab::locus::span_tuple(family, coefficients)?),
        }
    }
}

impl Document {
    /// `matrices`, or `family` with optional `coefficients` (identity by default).
    pub fn operators(&self) -> CliResult<Operators> {
        match (&self.matrices, &self.family) {
            (Some(_), Some(_)) => Err(CliError::validation("give either `matrices` or `family`, not both")),
            (None, None) => Err(CliError::validation("missing field `matrices` (or `family`)")),
            (Some(ms), None) => {
                let t = MatrixTuple::new(ms.clone()).map_err(|e| CliError::validation(format!("matrices: {e}")))?;
                self.check_m(t.m())?;
                Ok(Operators::Tuple(t))
            }
            (None, Some(f)) => {
                let normals = rationals(f.normals.clone(), "family.normals")?;
                let family = match &f.images {
                    Some(images) => RankOneFamily::from_vectors(&rationals(images.clone(), "family.images")?, &normals),
                    None => RankOneFamily::symmetric(&normals),
                }
                .map_err(|e| CliError::validation(format!("family: {e}")))?;
                self.check_m(family.m())?;
                let coefficients = match &self.coefficients {
                    Some(a) => SpanCoefficients::new(a.clone()),
                    None => SpanCoefficients::identity(family.len()),
                };
                if coefficients.a.rows() == 0 || coefficients.a.cols() != family.len() {
                    return Err(CliError::validation(format!(
                        "coefficients need {} columns, one per family member",
                        family.len()
                    )));
                }
                Ok(Operators::Span { family, coefficients })
            }
        }
    }

    fn check_m(&self, m: usize) -> CliResult<()> {
        match self.m {
            Some(want) if want != m => Err(CliError::validation(format!(
                "`m` is {want} but the operators are {m}x{m}"
            ))),
            _ => Ok(()),
        }
    }

    /// `points` (with optional `labels`), or the points of a locus report.
    pub fn point_config(&self) -> CliResult<PointConfig> {
        let points = match (&self.points, &self.components) {
            (Some(p), _) => p.clone(),
            (None, Some(cs)) => cs
                .iter()
                .map(|c| {
                    c.point()
                        .cloned()
                        .ok_or_else(|| CliError::validation("locus has positive-dimensional components"))
                })
                .collect::<CliResult<_>>()?,
            (None, None) => return Err(CliError::validation("missing field `points` (or `components`)")),
        };
        let pc = PointConfig::new(points).map_err(|e| CliError::validation(format!("points: {e}")))?;
        match &self.labels {
            Some(l) => pc
                .with_labels(l.clone())
                .map_err(|e| CliError::validation(format!("labels: {e}"))),
            None => Ok(pc),
        }
    }

    pub fn fiber_pair(&self) -> CliResult<(Mat, Mat)> {
        match (&self.a1, &self.a2) {
            (Some(a), Some(b)) => Ok((a.clone(), b.clone())),
            _ => Err(CliError::validation("missing field `a1` or `a2`")),
        }
    }
}
