//! The structured job format: one JSON object with `n`, `d` and named point lists.
//!
//! ```json
//! {"command": "verify-tiling", "n": 3, "d": 2,
//!  "A": [[0,0],[1,0],[0,2]], "B": [[0,0],[1,2],[2,1]]}
//! ```
//!
//! `command` may be omitted when the sets present make it unambiguous. For
//! `d = 1` points may be written as plain integers.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};

use super::Command;

/// Names of the point lists a job may carry.
pub const SET_NAMES: [&str; 4] = ["A", "B", "S", "points"];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JobOptions {
    /// Enumeration and search bound on group size.
    pub bound: Option<u64>,
    /// Reject coordinates outside `[0, n)` instead of reducing them.
    pub strict: bool,
    /// Inclusive range of moduli tried when no `n` is given.
    pub scan_n: Option<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub n: Option<u64>,
    pub d: usize,
    /// Raw integer coordinates, as given.
    pub sets: BTreeMap<String, Vec<Vec<i64>>>,
    pub options: JobOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl InputError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            line: None,
            column: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> Self {
        InputError {
            line: None,
            column: None,
            field: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.column, &self.field) {
            (Some(l), Some(c), _) => write!(f, "line {l}, column {c}: {}", self.message),
            (_, _, Some(field)) => write!(f, "field `{field}`: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for InputError {}

impl JobSpec {
    pub fn set(&self, name: &str) -> Option<&Vec<Vec<i64>>> {
        self.sets.get(name)
    }

    /// The canonical text of this job; `parse_input` of it yields the same job.
    pub fn emit(&self) -> String {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::from(self.command.name()));
        if let Some(n) = self.n {
            obj.insert("n".into(), Value::from(n));
        }
        obj.insert("d".into(), Value::from(self.d));
        for (name, pts) in &self.sets {
            obj.insert(name.clone(), Value::from(pts.clone()));
        }
        if let Some(b) = self.options.bound {
            obj.insert("bound".into(), Value::from(b));
        }
        if self.options.strict {
            obj.insert("strict".into(), Value::from(true));
        }
        if let Some((lo, hi)) = self.options.scan_n {
            obj.insert("scan_n".into(), Value::from(vec![lo, hi]));
        }
        serde_json::to_string(&Value::Object(obj)).expect("JSON values always serialize")
    }
}

fn uint(obj: &Map<String, Value>, key: &str) -> Result<Option<u64>, InputError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(Some)
            .ok_or_else(|| InputError::field(key, format!("expected a nonnegative integer, found {v}"))),
    }
}

fn point(v: &Value, field: &str) -> Result<Vec<i64>, InputError> {
    match v {
        Value::Number(_) => v
            .as_i64()
            .map(|x| vec![x])
            .ok_or_else(|| InputError::field(field, format!("{v} is not a 64-bit integer"))),
        Value::Array(coords) => coords
            .iter()
            .enumerate()
            .map(|(j, c)| {
                c.as_i64()
                    .ok_or_else(|| InputError::field(format!("{field}[{j}]"), format!("{c} is not a 64-bit integer")))
            })
            .collect(),
        other => Err(InputError::field(field, format!("expected an integer or an integer array, found {other}"))),
    }
}

fn infer(sets: &BTreeMap<String, Vec<Vec<i64>>>) -> Result<Command, InputError> {
    let has = |k: &str| sets.contains_key(k);
    match (has("A"), has("B"), has("S"), has("points")) {
        (true, true, false, false) => Ok(Command::VerifyTiling),
        (true, false, true, false) => Ok(Command::VerifySpectral),
        (false, false, false, true) => Ok(Command::ConstructComplement),
        (true, false, false, false) => Ok(Command::ConstructSpectrum),
        _ => Err(InputError::general(
            "cannot infer the command from the sets given; name it on the command line or in `command`",
        )),
    }
}

/// Parses a job. `command` and `options` from the command line override the file.
///
/// Returns the job with any normalization warnings.
pub fn parse_input(
    text: &str,
    command: Option<Command>,
    options: &JobOptions,
) -> Result<(JobSpec, Vec<String>), InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError {
        line: Some(e.line()),
        column: Some(e.column()),
        field: None,
        message: e.to_string(),
    })?;
    let Value::Object(obj) = value else {
        return Err(InputError::general("input must be a JSON object"));
    };
    let known = ["command", "n", "d", "bound", "strict", "scan_n"];
    if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str()) && !SET_NAMES.contains(&k.as_str())) {
        return Err(InputError::field(k.clone(), "unknown field"));
    }

    let n = uint(&obj, "n")?;
    if n == Some(0) {
        return Err(InputError::field("n", "modulus must be at least 1"));
    }
    let mut sets = BTreeMap::new();
    for name in SET_NAMES {
        match obj.get(name) {
            None => {}
            Some(Value::Array(items)) => {
                let pts = items
                    .iter()
                    .enumerate()
                    .map(|(i, v)| point(v, &format!("{name}[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                sets.insert(name.to_string(), pts);
            }
            Some(other) => return Err(InputError::field(name, format!("expected a list of points, found {other}"))),
        }
    }
    let d = match uint(&obj, "d")? {
        Some(0) => return Err(InputError::field("d", "dimension must be at least 1")),
        Some(d) => d as usize,
        None => sets.values().flatten().next().map_or(1, Vec::len),
    };
    for (name, pts) in &sets {
        for (i, p) in pts.iter().enumerate() {
            if p.len() != d {
                return Err(InputError::field(
                    format!("{name}[{i}]"),
                    format!("expected {d} coordinates, found {}", p.len()),
                ));
            }
        }
    }

    let mut opts = JobOptions {
        bound: uint(&obj, "bound")?,
        strict: obj.get("strict").and_then(Value::as_bool).unwrap_or(false),
        scan_n: match obj.get("scan_n") {
            None => None,
            Some(v) => {
                let pair: Option<Vec<u64>> = v.as_array().and_then(|a| a.iter().map(Value::as_u64).collect());
                match pair.as_deref() {
                    Some(&[lo, hi]) if 1 <= lo && lo <= hi => Some((lo, hi)),
                    _ => return Err(InputError::field("scan_n", "expected [lo, hi] with 1 ≤ lo ≤ hi")),
                }
            }
        },
    };
    opts.strict |= options.strict;
    opts.bound = options.bound.or(opts.bound);
    opts.scan_n = options.scan_n.or(opts.scan_n);

    let command = match command {
        Some(c) => c,
        None => match obj.get("command") {
            Some(Value::String(s)) => {
                Command::from_name(s).ok_or_else(|| InputError::field("command", format!("unknown command `{s}`")))?
            }
            Some(other) => return Err(InputError::field("command", format!("expected a string, found {other}"))),
            None => infer(&sets)?,
        },
    };

    let job = JobSpec {
        command,
        n,
        d,
        sets,
        options: opts,
    };
    let warnings = validate(&job)?;
    Ok((job, warnings))
}

fn require(job: &JobSpec, name: &str) -> Result<(), InputError> {
    if job.sets.contains_key(name) {
        Ok(())
    } else {
        Err(InputError::field(name, format!("required by {}", job.command.name())))
    }
}

fn require_n(job: &JobSpec) -> Result<u64, InputError> {
    job.n
        .ok_or_else(|| InputError::field("n", format!("required by {}", job.command.name())))
}

fn validate(job: &JobSpec) -> Result<Vec<String>, InputError> {
    use Command::*;
    let needs: &[&str] = match job.command {
        VerifyTiling => &["A", "B"],
        VerifySpectral => &["A", "S"],
        ConstructSpectrum | SearchComplement | SearchSpectrum => &["A"],
        ConstructComplement => &["points"],
        Classes | Check1d | Selftest => &[],
    };
    for name in needs {
        require(job, name)?;
    }
    match job.command {
        VerifyTiling | VerifySpectral | ConstructSpectrum | SearchSpectrum | Classes => {
            require_n(job)?;
        }
        SearchComplement if job.options.scan_n.is_none() => {
            require_n(job)?;
        }
        Check1d => {
            if job.d != 1 {
                return Err(InputError::field("d", "check-1d works on integers (d = 1)"));
            }
            if !job.sets.contains_key("A") && !job.sets.contains_key("points") {
                return Err(InputError::field("A", "required by check-1d"));
            }
        }
        _ => {}
    }

    let mut warnings = Vec::new();
    let group_sets = matches!(job.command, VerifyTiling | VerifySpectral | ConstructSpectrum | SearchSpectrum)
        || (job.command == SearchComplement && job.n.is_some());
    for (name, pts) in &job.sets {
        let mut seen = std::collections::BTreeSet::new();
        for (i, p) in pts.iter().enumerate() {
            let key: Vec<i64> = match (group_sets && name != "points", job.n) {
                (true, Some(n)) => {
                    if p.iter().any(|&c| c < 0 || c as u64 >= n) {
                        if job.options.strict {
                            return Err(InputError::field(
                                format!("{name}[{i}]"),
                                format!("coordinate outside [0, {n}) in strict mode"),
                            ));
                        }
                        warnings.push(format!("{name}[{i}] = {p:?} reduced mod {n}"));
                    }
                    p.iter().map(|&c| c.rem_euclid(n as i64)).collect()
                }
                _ => p.clone(),
            };
            if !seen.insert(key.clone()) {
                return Err(InputError::field(format!("{name}[{i}]"), format!("duplicate point {key:?}")));
            }
        }
    }
    Ok(warnings)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<(JobSpec, Vec<String>), InputError> {
        parse_input(text, None, &JobOptions::default())
    }

    #[test]
    fn simplex_pair_is_a_tiling_job() {
        let (job, warnings) = parse(r#"{"n":3, "d":2, "A":[[0,0],[1,0],[0,2]], "B":[[0,0],[1,2],[2,1]]}"#).unwrap();
        assert_eq!(job.command, Command::VerifyTiling);
        assert_eq!((job.n, job.d), (Some(3), 2));
        assert!(warnings.is_empty());
    }

    #[test]
    fn zero_modulus_is_rejected() {
        let e = parse(r#"{"n":0, "A":[0]}"#).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("n"));
    }

    #[test]
    fn plain_integers_become_one_vectors() {
        let (job, _) = parse(r#"{"n":6, "A":[0,1,5]}"#).unwrap();
        assert_eq!(job.d, 1);
        assert_eq!(job.set("A").unwrap(), &vec![vec![0], vec![1], vec![5]]);
        assert_eq!(job.command, Command::ConstructSpectrum);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse("{\"n\": 3,\n \"A\": [0, 1,]}").unwrap_err();
        assert_eq!(e.line, Some(2));
        assert!(e.to_string().starts_with("line 2"));
    }

    #[test]
    fn field_diagnostics() {
        let e = parse(r#"{"n":3, "d":2, "A":[[0,0],[1]], "B":[[0,0]]}"#).unwrap_err();
        assert_eq!(e.to_string(), "field `A[1]`: expected 2 coordinates, found 1");
        let e = parse(r#"{"n":3, "A":[0,1], "B":["x"]}"#).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("B[0]"));
        let e = parse(r#"{"n":3, "A":[0], "C":[1]}"#).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("C"));
    }

    #[test]
    fn out_of_range_coordinates() {
        let (_, warnings) = parse(r#"{"n":6, "A":[0,7,-1]}"#).unwrap();
        assert_eq!(warnings.len(), 2);
        let strict = JobOptions {
            strict: true,
            ..JobOptions::default()
        };
        let e = parse_input(r#"{"n":6, "A":[0,7]}"#, None, &strict).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("A[1]"));
    }

    #[test]
    fn duplicates_after_reduction_are_rejected() {
        let e = parse(r#"{"n":6, "A":[0,6]}"#).unwrap_err();
        assert!(e.message.contains("duplicate"));
        // Points in Z^d are not reduced.
        assert!(parse(r#"{"points":[[0,0],[6,0],[0,1]]}"#).is_ok());
    }

    #[test]
    fn missing_sets_and_modulus() {
        let e = parse_input(r#"{"n":6, "A":[0,1]}"#, Some(Command::VerifyTiling), &JobOptions::default()).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("B"));
        let e = parse(r#"{"A":[0,1], "B":[0,2]}"#).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("n"));
        assert!(parse(r#"{"B":[0,1]}"#).is_err());
    }

    #[test]
    fn command_line_overrides_file() {
        let opts = JobOptions {
            bound: Some(99),
            ..JobOptions::default()
        };
        let (job, _) = parse_input(r#"{"command":"classes","n":4,"bound":7}"#, Some(Command::Classes), &opts).unwrap();
        assert_eq!(job.options.bound, Some(99));
    }

    #[test]
    fn emit_is_stable() {
        let (job, _) = parse(r#"{"n":6, "A":[0,1,5], "scan_n":[2,9]}"#).unwrap();
        let once = job.emit();
        let (again, _) = parse(&once).unwrap();
        assert_eq!(again, job);
        assert_eq!(again.emit(), once);
    }
}
