//! Job configuration: flat `key = value` lines with nested lists. The
//! grammar is in `docs/config.md`.

use dynquant::{LeviDatum, RootSystem};
use dynquant_scalars::rational::parse_q;
use dynquant_scalars::Q;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Atom(String),
    List(Vec<Value>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(a) => write!(f, "{a}"),
            Value::List(xs) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

const KEYS: &[&str] = &[
    "algebra",
    "levi",
    "reps",
    "lambda",
    "samples",
    "seed",
    "depth",
    "t_order",
    "lambda0",
    "lambda1",
    "blocks",
    "basis_blocks",
    "elements",
    "invariants",
    "sections",
    "shift",
    "input",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Open,
    Close,
    Comma,
    Atom(&'a str),
}

fn tokenize(s: &str) -> Result<Vec<Tok<'_>>, String> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'[' => {
                out.push(Tok::Open);
                i += 1;
            }
            b']' => {
                out.push(Tok::Close);
                i += 1;
            }
            b',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            b'"' => {
                let end = s[i + 1..].find('"').ok_or("unterminated string")?;
                out.push(Tok::Atom(&s[i + 1..i + 1 + end]));
                i += end + 2;
            }
            _ => {
                let start = i;
                while i < bytes.len() && !b" \t[],\"".contains(&bytes[i]) {
                    i += 1;
                }
                out.push(Tok::Atom(&s[start..i]));
            }
        }
    }
    Ok(out)
}

fn parse_value(toks: &[Tok<'_>], pos: &mut usize) -> Result<Value, String> {
    match toks.get(*pos) {
        Some(Tok::Atom(a)) => {
            *pos += 1;
            Ok(Value::Atom(a.to_string()))
        }
        Some(Tok::Open) => {
            *pos += 1;
            let mut items = Vec::new();
            if toks.get(*pos) == Some(&Tok::Close) {
                *pos += 1;
                return Ok(Value::List(items));
            }
            loop {
                items.push(parse_value(toks, pos)?);
                match toks.get(*pos) {
                    Some(Tok::Comma) => *pos += 1,
                    Some(Tok::Close) => {
                        *pos += 1;
                        return Ok(Value::List(items));
                    }
                    _ => return Err("expected ',' or ']'".into()),
                }
            }
        }
        Some(t) => Err(format!("unexpected {t:?}")),
        None => Err("missing value".into()),
    }
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Parsed `key = value` pairs, each with its line number.
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, (usize, Value)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let n = n + 1;
            let line = strip_comment(line).trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once('=').ok_or(format!("line {n}: expected `key = value`"))?;
            let key = key.trim();
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_') {
                return Err(format!("line {n}: invalid key {key:?}"));
            }
            if !KEYS.contains(&key) {
                return Err(format!("line {n}: unknown key `{key}`"));
            }
            let toks = tokenize(rest).map_err(|e| format!("line {n}, field `{key}`: {e}"))?;
            let mut pos = 0;
            let value = parse_value(&toks, &mut pos).map_err(|e| format!("line {n}, field `{key}`: {e}"))?;
            if pos != toks.len() {
                return Err(format!("line {n}, field `{key}`: trailing input after value"));
            }
            if let Some((first, _)) = entries.get(key) {
                return Err(format!("line {n}: `{key}` already set on line {first}"));
            }
            entries.insert(key.to_string(), (n, value));
        }
        Ok(RawConfig { entries })
    }

    /// Sets or replaces a value from a command-line flag.
    pub fn set(&mut self, key: &str, value: Value) {
        self.entries.insert(key.to_string(), (0, value));
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn get<'a>(&'a self, key: &'a str) -> Option<(Field<'a>, &'a Value)> {
        self.entries.get(key).map(|(line, v)| (Field { key, line: *line }, v))
    }

    fn required<'a>(&'a self, key: &'a str) -> Result<(Field<'a>, &'a Value), String> {
        self.get(key).ok_or(format!("field `{key}`: required for this command"))
    }
}

/// Where a value came from, for diagnostics.
#[derive(Clone, Copy)]
struct Field<'a> {
    key: &'a str,
    line: usize,
}

impl Field<'_> {
    fn err(&self, msg: impl fmt::Display) -> String {
        if self.line == 0 {
            format!("flag --{}: {msg}", self.key.replace('_', "-"))
        } else {
            format!("line {}, field `{}`: {msg}", self.line, self.key)
        }
    }

    fn atom<'v>(&self, v: &'v Value) -> Result<&'v str, String> {
        match v {
            Value::Atom(a) => Ok(a),
            Value::List(_) => Err(self.err("expected a single value, found a list")),
        }
    }

    fn list<'v>(&self, v: &'v Value) -> Result<&'v [Value], String> {
        match v {
            Value::List(xs) => Ok(xs),
            Value::Atom(a) => Err(self.err(format!("expected a list, found `{a}`"))),
        }
    }

    fn int(&self, v: &Value) -> Result<i64, String> {
        let a = self.atom(v)?;
        a.parse().map_err(|_| self.err(format!("`{a}` is not an integer")))
    }

    fn count(&self, v: &Value) -> Result<usize, String> {
        let a = self.atom(v)?;
        a.parse()
            .map_err(|_| self.err(format!("`{a}` is not a non-negative integer")))
    }

    fn rational(&self, v: &Value) -> Result<Q, String> {
        let a = self.atom(v)?;
        parse_q(a).map_err(|_| self.err(format!("`{a}` is not a rational number")))
    }

    fn ints(&self, v: &Value) -> Result<Vec<i64>, String> {
        self.list(v)?.iter().map(|x| self.int(x)).collect()
    }

    fn rationals(&self, v: &Value) -> Result<Vec<Q>, String> {
        self.list(v)?.iter().map(|x| self.rational(x)).collect()
    }

    fn weights(&self, v: &Value, rank: usize) -> Result<Vec<Vec<i64>>, String> {
        self.list(v)?
            .iter()
            .map(|w| {
                let w = self.ints(w)?;
                if w.len() != rank {
                    return Err(self.err(format!("highest weight {w:?} needs {rank} coordinates")));
                }
                if w.iter().any(|&x| x < 0) {
                    return Err(self.err(format!("highest weight {w:?} is not dominant")));
                }
                Ok(w)
            })
            .collect()
    }
}

/// How `λ` is supplied.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaSpec {
    Symbolic,
    Samples,
    Point(Vec<Q>),
}

/// A basis element `e_i ⊗ e^j` of the block with the given highest weight.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementRef {
    pub highest: Vec<i64>,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ElementsSpec {
    /// Basis of the `l`-invariants within `basis_blocks`.
    Invariant(Vec<Vec<i64>>),
    List(Vec<ElementRef>),
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub rs: RootSystem,
    pub levi: LeviDatum,
    raw: RawConfig,
}

impl JobConfig {
    /// Validates `algebra` and `levi`; the remaining fields are read on
    /// demand by each command.
    pub fn new(raw: RawConfig) -> Result<Self, String> {
        let (f, v) = raw.required("algebra")?;
        let name = f.atom(v)?;
        let n: usize = name
            .strip_prefix("sl")
            .and_then(|x| x.parse().ok())
            .ok_or(f.err(format!("`{name}` is not of the form sl<N>")))?;
        let rs = RootSystem::sl(n).map_err(|e| f.err(e))?;
        let retained = match raw.get("levi") {
            None => vec![],
            Some((f, v)) => f
                .ints(v)?
                .into_iter()
                .map(|k| {
                    if k < 1 || k as usize > rs.rank() {
                        Err(f.err(format!("simple root index {k} out of range 1..={}", rs.rank())))
                    } else {
                        Ok(k as usize - 1)
                    }
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        let levi = LeviDatum::new(&rs, &retained).map_err(|e| format!("field `levi`: {e}"))?;
        Ok(JobConfig { rs, levi, raw })
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        JobConfig::new(RawConfig::parse(text)?)
    }

    pub fn reps(&self, count: usize) -> Result<Vec<Vec<i64>>, String> {
        let (f, v) = self.raw.required("reps")?;
        let ws = f.weights(v, self.rs.rank())?;
        if ws.len() != count {
            return Err(f.err(format!("this command takes {count} representation(s), found {}", ws.len())));
        }
        Ok(ws)
    }

    pub fn lambda(&self, default: LambdaSpec) -> Result<LambdaSpec, String> {
        let Some((f, v)) = self.raw.get("lambda") else {
            return Ok(default);
        };
        match v {
            Value::Atom(a) if a == "symbolic" => Ok(LambdaSpec::Symbolic),
            Value::Atom(a) if a == "samples" => Ok(LambdaSpec::Samples),
            Value::Atom(a) => Err(f.err(format!("expected `symbolic`, `samples` or a point, found `{a}`"))),
            Value::List(_) => {
                let p = f.rationals(v)?;
                if p.len() != self.levi.r() {
                    return Err(f.err(format!("a point of c* has {} coordinates", self.levi.r())));
                }
                Ok(LambdaSpec::Point(p))
            }
        }
    }

    pub fn samples(&self) -> Result<usize, String> {
        match self.raw.get("samples") {
            None => Ok(5),
            Some((f, v)) => match f.count(v)? {
                0 => Err(f.err("need at least one sample")),
                n => Ok(n),
            },
        }
    }

    pub fn seed(&self) -> Result<u64, String> {
        match self.raw.get("seed") {
            None => Ok(0),
            Some((f, v)) => {
                let a = f.atom(v)?;
                a.parse().map_err(|_| f.err(format!("`{a}` is not a seed")))
            }
        }
    }

    pub fn depth(&self) -> Result<Option<usize>, String> {
        self.raw.get("depth").map(|(f, v)| f.count(v)).transpose()
    }

    pub fn t_order(&self) -> Result<usize, String> {
        match self.raw.get("t_order") {
            None => Ok(2),
            Some((f, v)) => f.count(v),
        }
    }

    fn point(&self, key: &str) -> Result<Option<Vec<Q>>, String> {
        match self.raw.get(key) {
            None => Ok(None),
            Some((f, v)) => {
                let p = f.rationals(v)?;
                if p.len() != self.levi.r() {
                    return Err(f.err(format!("a point of c* has {} coordinates", self.levi.r())));
                }
                Ok(Some(p))
            }
        }
    }

    /// The path `λ(t)/t = λ0/t + λ1`; `λ1` defaults to zero.
    pub fn path(&self) -> Result<(Vec<Q>, Vec<Q>), String> {
        let l0 = self.point("lambda0")?.ok_or("field `lambda0`: required for this command")?;
        let l1 = self
            .point("lambda1")?
            .unwrap_or_else(|| vec![Q::from_integer(0.into()); self.levi.r()]);
        Ok((l0, l1))
    }

    pub fn shift(&self) -> Result<Option<Vec<Q>>, String> {
        self.point("shift")
    }

    pub fn blocks(&self) -> Result<Option<Vec<Vec<i64>>>, String> {
        self.raw.get("blocks").map(|(f, v)| f.weights(v, self.rs.rank())).transpose()
    }

    fn element_list(&self, key: &str) -> Result<Vec<ElementRef>, String> {
        let (f, v) = self.raw.required(key)?;
        f.list(v)?
            .iter()
            .map(|e| {
                let parts = f.list(e)?;
                if parts.len() != 3 {
                    return Err(f.err(format!("element `{e}` is not [highest, row, col]")));
                }
                let highest = f.weights(&Value::List(vec![parts[0].clone()]), self.rs.rank())?.remove(0);
                Ok(ElementRef {
                    highest,
                    row: f.count(&parts[1])?,
                    col: f.count(&parts[2])?,
                })
            })
            .collect()
    }

    pub fn elements(&self) -> Result<ElementsSpec, String> {
        match self.raw.get("elements") {
            Some((_, Value::List(_))) => {
                if self.raw.has("basis_blocks") {
                    return Err("field `basis_blocks`: only used with `elements = invariant`".into());
                }
                Ok(ElementsSpec::List(self.element_list("elements")?))
            }
            Some((f, Value::Atom(a))) if a != "invariant" => Err(f.err(format!("expected `invariant` or a list, found `{a}`"))),
            _ => {
                let (f, v) = self.raw.required("basis_blocks")?;
                Ok(ElementsSpec::Invariant(f.weights(v, self.rs.rank())?))
            }
        }
    }

    pub fn invariants(&self) -> Result<Vec<ElementRef>, String> {
        self.element_list("invariants")
    }

    pub fn sections(&self) -> Result<Vec<ElementRef>, String> {
        self.element_list("sections")
    }
}

/// `hopf-check` reads only `input`, so it skips the Lie-theoretic fields.
pub fn input_path(raw: &RawConfig) -> Result<String, String> {
    let (f, v) = raw.required("input")?;
    Ok(f.atom(v)?.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_lists_and_comments() {
        let c = RawConfig::parse(
            "# job\nalgebra = sl3   # comment\nreps = [[1, 0], [0,1]]\nlambda0 = [3/2]\ninput = \"a b#c.json\"\n",
        )
        .unwrap();
        assert_eq!(c.entries["reps"].1.to_string(), "[[1, 0], [0, 1]]");
        assert_eq!(input_path(&c).unwrap(), "a b#c.json");
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        let e = RawConfig::parse("algebra = sl2\nreps = [[1], [1]\n").unwrap_err();
        assert!(e.starts_with("line 2, field `reps`"), "{e}");
        let e = RawConfig::parse("algebra = sl2\ncolour = red\n").unwrap_err();
        assert_eq!(e, "line 2: unknown key `colour`");
        let e = RawConfig::parse("algebra = sl2\nalgebra = sl3\n").unwrap_err();
        assert_eq!(e, "line 2: `algebra` already set on line 1");
        let e = JobConfig::parse("algebra = sl3\nlevi = [3]\n").unwrap_err();
        assert!(e.contains("out of range"), "{e}");
        let e = JobConfig::parse("algebra = gl3\n").unwrap_err();
        assert!(e.contains("sl<N>"), "{e}");
        let j = JobConfig::parse("algebra = sl2\nreps = [[1], [-1]]\n").unwrap();
        assert!(j.reps(2).unwrap_err().contains("not dominant"));
    }

    #[test]
    fn defaults_and_typed_fields() {
        let j =
            JobConfig::parse("algebra = sl3\nlevi = [1]\nreps = [[1,0],[1,0],[1,0]]\nlambda = samples\nsamples = 6\n").unwrap();
        assert_eq!(j.levi.retained(), &[0]);
        assert_eq!(j.reps(3).unwrap().len(), 3);
        assert_eq!(j.lambda(LambdaSpec::Symbolic).unwrap(), LambdaSpec::Samples);
        assert_eq!(j.samples().unwrap(), 6);
        assert_eq!(j.seed().unwrap(), 0);
        assert_eq!(j.t_order().unwrap(), 2);
        let j = JobConfig::parse("algebra = sl2\nelements = [[[2], 0, 1]]\nlambda0 = [5/2]\n").unwrap();
        assert_eq!(
            j.elements().unwrap(),
            ElementsSpec::List(vec![ElementRef {
                highest: vec![2],
                row: 0,
                col: 1
            }])
        );
        assert_eq!(j.path().unwrap().1, vec![Q::from_integer(0.into())]);
    }
}
