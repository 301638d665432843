//! JSON input for `hopf-check`.
//!
//! ```json
//! {
//!   "hopf": {"kind": "cyclic", "n": 3},
//!   "base": {"kind": "self"},
//!   "dynamical": {"kind": "klein"},
//!   "pbw": {"lie": {"kind": "sl2_borel"}, "max_degree": 3, "order": 3}
//! }
//! ```
//!
//! Hopf kinds: `cyclic {n}`, `sweedler`, `truncated_uh {vars, cap}`,
//! `tensor {left, right}` and `explicit`. An explicit algebra lists
//! `mult[i][j]` (the vector `e_i e_j`), `unit`, `comult[i]` (the matrix of
//! `Δ(e_i)`), `counit`, `antipode[i]` (the vector `S(e_i)`) and optionally
//! `degrees` with `cap`.
//!
//! Base kinds: `self`, `factor {index}` (requires a `tensor` Hopf algebra),
//! `trivial` and `explicit` with `mult`, `unit`, `action[x][l]` (the vector
//! `e_x ▷ ℓ_l`) and `coaction[l]` (the matrix of `δ(ℓ_l)`).
//!
//! Scalars are integers or strings such as `"-3/4"`. Everything except
//! `hopf` is optional; the base defaults to `self`.

use crate::base::{base_reduction, check_base_algebra, self_base, BaseAlgebra};
use crate::dynassoc::{check_dynamical_associativity, klein_example, trivial_base};
use crate::finhopf::{FinHopf, Vector};
use crate::pbw::{associativity_failure, LieData, PbwAlgebra};
use crate::report::Report;
use dynquant_scalars::rational::parse_q;
use dynquant_scalars::{Matrix, Q};
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn value(&self) -> Result<Q, String> {
        match self {
            Scalar::Int(n) => Ok(Q::from_integer((*n).into())),
            Scalar::Text(s) => parse_q(s).map_err(|e| format!("bad scalar {s:?}: {e}")),
        }
    }
}

fn vector(v: &[Scalar]) -> Result<Vector, String> {
    v.iter().map(Scalar::value).collect()
}

fn matrix(rows: &[Vec<Scalar>]) -> Result<Matrix<Q>, String> {
    let rows: Vec<Vector> = rows.iter().map(|r| vector(r)).collect::<Result<_, _>>()?;
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err("ragged matrix".into());
    }
    Ok(Matrix::from_rows(rows))
}

fn table(t: &[Vec<Vec<Scalar>>]) -> Result<Vec<Vec<Vector>>, String> {
    t.iter().map(|r| r.iter().map(|v| vector(v)).collect()).collect()
}

/// Columns given as a list of images.
fn columns(images: &[Vec<Scalar>], rows: usize) -> Result<Matrix<Q>, String> {
    let cols: Vec<Vector> = images.iter().map(|v| vector(v)).collect::<Result<_, _>>()?;
    if cols.iter().any(|c| c.len() != rows) {
        return Err(format!("expected vectors of length {rows}"));
    }
    Ok(Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone()))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HopfSpec {
    Cyclic {
        n: usize,
    },
    Sweedler,
    TruncatedUh {
        vars: usize,
        cap: usize,
    },
    Tensor {
        left: Box<HopfSpec>,
        right: Box<HopfSpec>,
    },
    Explicit {
        #[serde(default)]
        name: Option<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        comult: Vec<Vec<Vec<Scalar>>>,
        counit: Vec<Scalar>,
        antipode: Vec<Vec<Scalar>>,
        #[serde(default)]
        degrees: Option<Vec<usize>>,
        #[serde(default)]
        cap: Option<usize>,
    },
}

impl HopfSpec {
    pub fn build(&self) -> Result<FinHopf, String> {
        Ok(match self {
            HopfSpec::Cyclic { n } if *n == 0 => return Err("cyclic group of order 0".into()),
            HopfSpec::Cyclic { n } => FinHopf::cyclic(*n),
            HopfSpec::Sweedler => FinHopf::sweedler(),
            HopfSpec::TruncatedUh { vars, .. } if *vars == 0 => return Err("truncated U(h) needs at least one variable".into()),
            HopfSpec::TruncatedUh { vars, cap } => FinHopf::truncated_uh(*vars, *cap),
            HopfSpec::Tensor { left, right } => FinHopf::tensor(&left.build()?, &right.build()?),
            HopfSpec::Explicit {
                name,
                mult,
                unit,
                comult,
                counit,
                antipode,
                degrees,
                cap,
            } => {
                let unit = vector(unit)?;
                let grading = match (degrees, cap) {
                    (Some(d), Some(c)) => Some((d.clone(), *c)),
                    (None, None) => None,
                    _ => return Err("degrees and cap go together".into()),
                };
                FinHopf::new(
                    name.as_deref().unwrap_or("explicit"),
                    table(mult)?,
                    unit.clone(),
                    comult.iter().map(|m| matrix(m)).collect::<Result<_, _>>()?,
                    vector(counit)?,
                    columns(antipode, unit.len())?,
                    grading,
                )?
            }
        })
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseSpec {
    #[default]
    #[serde(rename = "self")]
    SelfBase,
    Factor {
        index: usize,
    },
    Trivial,
    Explicit {
        #[serde(default)]
        name: Option<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        action: Vec<Vec<Vec<Scalar>>>,
        coaction: Vec<Vec<Vec<Scalar>>>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DynamicalSpec {
    /// The built-in `Q[Z/2 × Z/2]` example; replaces the Hopf and base
    /// algebras with `Q[Z/2]` over itself.
    Klein {
        #[serde(default)]
        plain_flip: bool,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LieSpec {
    Abelian { dim: usize },
    Sl2Borel,
    Explicit { bracket: Vec<Vec<Vec<Scalar>>> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PbwSpec {
    pub lie: LieSpec,
    pub max_degree: usize,
    pub order: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfCheckSpec {
    pub hopf: HopfSpec,
    #[serde(default)]
    pub base: BaseSpec,
    #[serde(default)]
    pub dynamical: Option<DynamicalSpec>,
    #[serde(default)]
    pub pbw: Option<PbwSpec>,
}

impl HopfCheckSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid hopf-check input: {e}"))
    }

    fn base(&self, h: &FinHopf) -> Result<BaseAlgebra, String> {
        match &self.base {
            BaseSpec::SelfBase => Ok(self_base(h)),
            BaseSpec::Trivial => Ok(trivial_base(h)),
            BaseSpec::Factor { index } => match &self.hopf {
                HopfSpec::Tensor { left, right } if *index < 2 => Ok(base_reduction(&left.build()?, &right.build()?, *index)),
                HopfSpec::Tensor { .. } => Err(format!("factor index {index} out of range")),
                _ => Err("a factor base needs a tensor product Hopf algebra".into()),
            },
            BaseSpec::Explicit {
                name,
                mult,
                unit,
                action,
                coaction,
            } => {
                let unit = vector(unit)?;
                let action = action.iter().map(|a| columns(a, unit.len())).collect::<Result<_, _>>()?;
                let coaction = coaction.iter().map(|m| matrix(m)).collect::<Result<_, _>>()?;
                BaseAlgebra::new(
                    name.as_deref().unwrap_or("explicit"),
                    h,
                    table(mult)?,
                    unit,
                    action,
                    coaction,
                    None,
                )
            }
        }
    }

    /// Builds every object and runs the checks. Construction problems are
    /// returned as `Err`; failed axioms appear in the report.
    pub fn run(&self) -> Result<Report, String> {
        let h = self.hopf.build()?;
        let l = self.base(&h)?;
        let mut rep = Report::default();
        rep.merge("Hopf axioms: ", h.check_axioms());
        rep.merge("base algebra: ", check_base_algebra(&h, &l));
        if let Some(DynamicalSpec::Klein { plain_flip }) = &self.dynamical {
            let (kh, kl, a) = klein_example();
            let a = if *plain_flip { a.with_tau(a.flip(&kl)) } else { a };
            rep.merge("dynamical: ", check_dynamical_associativity(&kh, &kl, &a));
        }
        if let Some(p) = &self.pbw {
            let lie = match &p.lie {
                LieSpec::Abelian { dim } => LieData::abelian(*dim),
                LieSpec::Sl2Borel => LieData::sl2_borel(),
                LieSpec::Explicit { bracket } => LieData::new("explicit", table(bracket)?)?,
            };
            let alg = PbwAlgebra::new(lie, p.order);
            let fail = associativity_failure(&alg, p.max_degree)
                .map(|(f, g, h, t)| format!("(f∗g)∗h != f∗(g∗h) at t^{t} for f = {f}, g = {g}, h = {h}"));
            rep.push("PBW star product: associativity", fail);
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_specs() {
        let s = HopfCheckSpec::parse(r#"{"hopf": {"kind": "cyclic", "n": 3}}"#).unwrap();
        assert!(s.run().unwrap().passed());
        let s = HopfCheckSpec::parse(
            r#"{"hopf": {"kind": "tensor", "left": {"kind": "cyclic", "n": 2}, "right": {"kind": "cyclic", "n": 2}},
                "base": {"kind": "factor", "index": 1},
                "dynamical": {"kind": "klein"},
                "pbw": {"lie": {"kind": "sl2_borel"}, "max_degree": 2, "order": 2}}"#,
        )
        .unwrap();
        let r = s.run().unwrap();
        assert!(r.passed(), "{:?}", r.lines());
    }

    #[test]
    fn explicit_matches_builtin() {
        // Q[Z/2] written out by hand
        let text = r#"{
            "hopf": {"kind": "explicit",
                     "mult": [[[1,0],[0,1]], [[0,1],[1,0]]],
                     "unit": [1, 0],
                     "comult": [[[1,0],[0,0]], [[0,0],[0,1]]],
                     "counit": [1, 1],
                     "antipode": [[1,0],[0,1]]},
            "base": {"kind": "explicit",
                     "mult": [[[1,0],[0,1]], [[0,1],[1,0]]],
                     "unit": [1, 0],
                     "action": [[[1,0],[0,1]], [[1,0],[0,1]]],
                     "coaction": [[[1,0],[0,0]], [["0","0"],["0","1"]]]}
        }"#;
        let r = HopfCheckSpec::parse(text).unwrap().run().unwrap();
        assert!(r.passed(), "{:?}", r.lines());
    }

    #[test]
    fn bad_inputs_are_errors() {
        assert!(HopfCheckSpec::parse(r#"{"hopf": {"kind": "quaternion"}}"#).is_err());
        let s = HopfCheckSpec::parse(r#"{"hopf": {"kind": "cyclic", "n": 2}, "base": {"kind": "factor", "index": 0}}"#).unwrap();
        assert!(s.run().is_err());
        let s = HopfCheckSpec::parse(
            r#"{"hopf": {"kind": "explicit", "mult": [], "unit": [1], "comult": [], "counit": [1], "antipode": [[1]]}}"#,
        )
        .unwrap();
        assert!(s.run().is_err());
    }

    #[test]
    fn broken_flip_is_reported() {
        let s =
            HopfCheckSpec::parse(r#"{"hopf": {"kind": "cyclic", "n": 2}, "dynamical": {"kind": "klein", "plain_flip": true}}"#)
                .unwrap();
        let r = s.run().unwrap();
        assert!(r.failure("dynamical: shifted associativity").is_some());
    }
}
