//! Text formats: algebra files with exact sparse structure constants, and
//! verification reports.
//!
//! Every rational is written as an integer pair `num, den` with `den > 0` and
//! the pair reduced. Sparse entries are sorted lexicographically by their
//! indices, so serializing a parsed canonical file reproduces it byte for byte.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::exact::{BilinearMap, CoproductMap, LinearMap, Scalar, TensorElement2, Vector};
use crate::report::{CheckRecord, Outcome, VerificationReport};
use crate::structures::{BialgebraParts, Flavor, HomBialgebra, HomModule};

pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_WINDOW: i32 = 8;

/// An algebra together with named elements and modules over it.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub algebra: HomBialgebra,
    pub twists: Vec<(String, TensorElement2)>,
    pub rmatrices: Vec<(String, TensorElement2)>,
    pub modules: Vec<HomModule>,
}

impl AlgebraFile {
    pub fn new(algebra: HomBialgebra) -> Self {
        AlgebraFile {
            algebra,
            twists: Vec::new(),
            rmatrices: Vec::new(),
            modules: Vec::new(),
        }
    }

    pub fn twist(&self, name: &str) -> Result<&TensorElement2> {
        self.twists
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }
}

/// `[i₁, …, i_N, num, den]`.
#[derive(Clone, Debug, PartialEq)]
struct Entry<const N: usize> {
    idx: [usize; N],
    q: Scalar,
}

impl<const N: usize> Serialize for Entry<N> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut v: Vec<Value> = self.idx.iter().map(|&i| Value::from(i)).collect();
        v.push(Value::Number(big_number(&self.q.numer())));
        v.push(Value::Number(big_number(&self.q.denom())));
        v.serialize(s)
    }
}

impl<'de, const N: usize> Deserialize<'de> for Entry<N> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<Number>::deserialize(d)?;
        if raw.len() != N + 2 {
            return Err(D::Error::custom(format!(
                "entry needs {} indices and a numerator/denominator pair, got {} numbers",
                N,
                raw.len()
            )));
        }
        let mut idx = [0; N];
        for (slot, n) in idx.iter_mut().zip(&raw) {
            *slot = n.as_u64().ok_or_else(|| {
                D::Error::custom(format!("index {n} is not a non-negative integer"))
            })? as usize;
        }
        let num = integer(&raw[N]).map_err(D::Error::custom)?;
        let den = integer(&raw[N + 1]).map_err(D::Error::custom)?;
        let q = Scalar::from_big(num, den).ok_or_else(|| D::Error::custom("zero denominator"))?;
        Ok(Entry { idx, q })
    }
}

fn big_number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("integers are valid numbers")
}

fn integer(n: &Number) -> std::result::Result<BigInt, String> {
    let s = n.to_string();
    let digits = s.strip_prefix('-').unwrap_or(&s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!(
            "{s} is not an integer; rationals are written as integer pairs"
        ));
    }
    BigInt::from_str(&s).map_err(|e| e.to_string())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedElement {
    name: String,
    element: Vec<Entry<2>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    name: String,
    basis: Vec<String>,
    /// `(h, m, target)`: `e_h · f_m` has this coefficient at `f_target`.
    action: Vec<Entry<3>>,
    alpha: Vec<Entry<2>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format_version: u32,
    name: String,
    dim: usize,
    basis: Vec<String>,
    flavor: String,
    #[serde(default = "default_window", skip_serializing_if = "is_default_window")]
    window: i32,
    /// `(row, col, target)`: `e_row e_col` has this coefficient at `e_target`.
    mult: Vec<Entry<3>>,
    /// `(row, col, target)`: `Δ(e_target)` has this coefficient at `e_row ⊗ e_col`.
    comult: Vec<Entry<3>>,
    unit: Vec<Entry<1>>,
    counit: Vec<Entry<1>>,
    /// `(row, col)` matrix entries.
    alpha: Vec<Entry<2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    antipode: Option<Vec<Entry<2>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    twists: Vec<NamedElement>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    rmatrices: Vec<NamedElement>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    modules: Vec<RawModule>,
}

fn default_window() -> i32 {
    DEFAULT_WINDOW
}

fn is_default_window(w: &i32) -> bool {
    *w == DEFAULT_WINDOW
}

fn sorted<const N: usize>(mut v: Vec<Entry<N>>) -> Vec<Entry<N>> {
    v.retain(|e| !e.q.is_zero());
    v.sort_by_key(|a| a.idx);
    v
}

fn matrix_entries(m: &LinearMap) -> Vec<Entry<2>> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for (c, q) in m.row(r).iter().enumerate() {
            out.push(Entry {
                idx: [r, c],
                q: q.clone(),
            });
        }
    }
    sorted(out)
}

fn vector_entries(v: &[Scalar]) -> Vec<Entry<1>> {
    sorted(
        v.iter()
            .enumerate()
            .map(|(i, q)| Entry {
                idx: [i],
                q: q.clone(),
            })
            .collect(),
    )
}

fn bilinear_entries(m: &BilinearMap) -> Vec<Entry<3>> {
    sorted(
        m.entries()
            .map(|(i, j, k, q)| Entry {
                idx: [i, j, k],
                q: q.clone(),
            })
            .collect(),
    )
}

fn tensor_entries(t: &TensorElement2) -> Vec<Entry<2>> {
    sorted(
        t.iter()
            .map(|(k, q)| Entry {
                idx: [k[0] as usize, k[1] as usize],
                q: q.clone(),
            })
            .collect(),
    )
}

impl From<&AlgebraFile> for RawFile {
    fn from(f: &AlgebraFile) -> Self {
        let h = &f.algebra;
        let named = |v: &[(String, TensorElement2)]| {
            v.iter()
                .map(|(n, t)| NamedElement {
                    name: n.clone(),
                    element: tensor_entries(t),
                })
                .collect()
        };
        RawFile {
            format_version: FORMAT_VERSION,
            name: h.name().to_string(),
            dim: h.dim(),
            basis: h.basis().to_vec(),
            flavor: h.flavor().to_string(),
            window: h.window(),
            mult: bilinear_entries(h.product()),
            comult: sorted(
                h.coproduct()
                    .entries()
                    .map(|(i, j, k, q)| Entry {
                        idx: [j, k, i],
                        q: q.clone(),
                    })
                    .collect(),
            ),
            unit: vector_entries(h.unit().coords()),
            counit: vector_entries(h.counit()),
            alpha: matrix_entries(h.alpha()),
            antipode: h.antipode().map(matrix_entries),
            twists: named(&f.twists),
            rmatrices: named(&f.rmatrices),
            modules: f
                .modules
                .iter()
                .map(|m| RawModule {
                    name: m.name.clone(),
                    basis: m.basis().to_vec(),
                    action: bilinear_entries(m.action()),
                    alpha: matrix_entries(m.alpha()),
                })
                .collect(),
        }
    }
}

fn check_range<const N: usize>(what: &str, entries: &[Entry<N>], bounds: [usize; N]) -> Result<()> {
    for e in entries {
        if e.idx.iter().zip(&bounds).any(|(i, b)| i >= b) {
            return Err(Error::Parse(format!(
                "{what}: index {:?} out of range {:?}",
                e.idx, bounds
            )));
        }
    }
    Ok(())
}

fn dense_matrix(what: &str, entries: &[Entry<2>], n: usize) -> Result<LinearMap> {
    check_range(what, entries, [n, n])?;
    let mut rows = vec![vec![Scalar::zero(); n]; n];
    for e in entries {
        rows[e.idx[0]][e.idx[1]] += &e.q;
    }
    LinearMap::from_rows(rows)
}

fn dense_vector(what: &str, entries: &[Entry<1>], n: usize) -> Result<Vec<Scalar>> {
    check_range(what, entries, [n])?;
    let mut v = vec![Scalar::zero(); n];
    for e in entries {
        v[e.idx[0]] += &e.q;
    }
    Ok(v)
}

fn tensor(what: &str, entries: &[Entry<2>], n: usize) -> Result<TensorElement2> {
    check_range(what, entries, [n, n])?;
    TensorElement2::from_terms([n, n], entries.iter().map(|e| (e.idx, e.q.clone())))
}

fn unique_names<'a>(what: &str, names: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Parse(format!("duplicate {what} name `{n}`")));
        }
    }
    Ok(())
}

impl TryFrom<RawFile> for AlgebraFile {
    type Error = Error;

    fn try_from(raw: RawFile) -> Result<Self> {
        if raw.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {}",
                raw.format_version
            )));
        }
        let n = raw.dim;
        if raw.basis.len() != n {
            return Err(Error::Parse(format!(
                "dim is {n} but {} basis names are given",
                raw.basis.len()
            )));
        }
        if !(0..=64).contains(&raw.window) {
            return Err(Error::Parse(format!("window {} out of range", raw.window)));
        }
        let flavor = Flavor::from_str(&raw.flavor)?;
        check_range("mult", &raw.mult, [n, n, n])?;
        check_range("comult", &raw.comult, [n, n, n])?;
        let product = BilinearMap::from_entries(
            n,
            n,
            n,
            raw.mult
                .iter()
                .map(|e| (e.idx[0], e.idx[1], e.idx[2], e.q.clone())),
        )?;
        let coproduct = CoproductMap::from_entries(
            n,
            raw.comult
                .iter()
                .map(|e| (e.idx[2], e.idx[0], e.idx[1], e.q.clone())),
        )?;
        let parts = BialgebraParts {
            name: raw.name,
            basis: raw.basis,
            flavor,
            product,
            unit: Vector::new(dense_vector("unit", &raw.unit, n)?),
            coproduct,
            counit: dense_vector("counit", &raw.counit, n)?,
            alpha: dense_matrix("alpha", &raw.alpha, n)?,
            antipode: raw
                .antipode
                .as_deref()
                .map(|a| dense_matrix("antipode", a, n))
                .transpose()?,
        };
        let algebra = HomBialgebra::with_window(parts, raw.window).map_err(|e| match e {
            Error::AlphaNotInvertible => e,
            other => Error::Parse(other.to_string()),
        })?;
        unique_names("twist", raw.twists.iter().map(|t| t.name.as_str()))?;
        unique_names("rmatrix", raw.rmatrices.iter().map(|t| t.name.as_str()))?;
        unique_names("module", raw.modules.iter().map(|t| t.name.as_str()))?;
        let named = |v: Vec<NamedElement>, what: &str| -> Result<Vec<(String, TensorElement2)>> {
            v.into_iter()
                .map(|t| {
                    Ok((
                        t.name.clone(),
                        tensor(&format!("{what} {}", t.name), &t.element, n)?,
                    ))
                })
                .collect()
        };
        let twists = named(raw.twists, "twist")?;
        let rmatrices = named(raw.rmatrices, "rmatrix")?;
        let modules = raw
            .modules
            .into_iter()
            .map(|m| {
                let d = m.basis.len();
                let what = format!("module {}", m.name);
                check_range(&what, &m.action, [n, d, d])?;
                let action = BilinearMap::from_entries(
                    n,
                    d,
                    d,
                    m.action
                        .iter()
                        .map(|e| (e.idx[0], e.idx[1], e.idx[2], e.q.clone())),
                )?;
                let alpha = dense_matrix(&what, &m.alpha, d)?;
                HomModule::new(m.name, m.basis, action, alpha, raw.window)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraFile {
            algebra,
            twists,
            rmatrices,
            modules,
        })
    }
}

/// Parses an algebra file. Structural problems (bad JSON, out-of-range indices,
/// zero denominators, unknown version) are [`Error::Parse`]; axioms are not checked.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    AlgebraFile::try_from(raw)
}

/// The canonical text of an algebra file.
pub fn write_algebra(file: &AlgebraFile) -> String {
    let value = serde_json::to_value(RawFile::from(file)).expect("plain data serializes");
    let mut out = String::new();
    pretty(&value, 0, &mut out);
    out.push('\n');
    out
}

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Objects one key per line; arrays of scalars on one line; other arrays one item per line.
fn pretty(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(depth + 1), Value::String(key.clone()));
                pretty(val, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !items.iter().all(is_leaf) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                pretty(item, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&item.to_string());
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Machine-readable form of a [`VerificationReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub format_version: u32,
    pub command: String,
    pub passed: usize,
    pub failed: usize,
    pub notes: usize,
    pub checks: Vec<CheckRecord>,
}

impl ReportFile {
    pub fn new(command: impl Into<String>, report: &VerificationReport) -> Self {
        let notes = report
            .checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Note { .. }))
            .count();
        ReportFile {
            format_version: FORMAT_VERSION,
            command: command.into(),
            passed: report.passed(),
            failed: report.failed(),
            notes,
            checks: report.checks.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Parses a report and checks that the totals match the records.
    pub fn parse(text: &str) -> Result<Self> {
        let r: ReportFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let report = VerificationReport {
            checks: r.checks.clone(),
        };
        let rebuilt = ReportFile::new(r.command.clone(), &report);
        if (rebuilt.passed, rebuilt.failed, rebuilt.notes) != (r.passed, r.failed, r.notes) {
            return Err(Error::Parse(
                "report totals do not match its records".into(),
            ));
        }
        Ok(r)
    }

    pub fn report(&self) -> VerificationReport {
        VerificationReport {
            checks: self.checks.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::group_algebra;

    #[test]
    fn entries_are_integer_pairs() {
        let e: Entry<2> = serde_json::from_str("[1, 0, -6, 4]").unwrap();
        assert_eq!(e.idx, [1, 0]);
        assert_eq!(e.q, Scalar::new(-3, 2));
        assert_eq!(serde_json::to_string(&e).unwrap(), "[1,0,-3,2]");
        assert!(serde_json::from_str::<Entry<2>>("[1, 0, 0.5, 1]").is_err());
        assert!(serde_json::from_str::<Entry<2>>("[1, 0, 1, 0]").is_err());
        assert!(serde_json::from_str::<Entry<2>>("[1, 0, 1]").is_err());
    }

    #[test]
    fn big_coefficients_survive() {
        let text = "[0, 123456789012345678901234567891, 2]";
        let e: Entry<1> = serde_json::from_str(text).unwrap();
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            "[0,123456789012345678901234567891,2]"
        );
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let file = AlgebraFile::new(group_algebra(3));
        let text = write_algebra(&file);
        assert_eq!(write_algebra(&parse_algebra(&text).unwrap()), text);
        assert!(text.contains("\"mult\": [\n    [0, 0, 0, 1, 1],"));
        assert!(!text.contains("window"));
    }

    #[test]
    fn parse_canonicalizes() {
        let file = AlgebraFile::new(group_algebra(2));
        let canonical = write_algebra(&file);
        let mut raw: Value = serde_json::from_str(&canonical).unwrap();
        let mult = raw["mult"].as_array_mut().unwrap();
        mult.reverse();
        mult.push(serde_json::json!([0, 0, 0, 0, 5]));
        let shuffled = serde_json::to_string(&raw).unwrap();
        assert_eq!(write_algebra(&parse_algebra(&shuffled).unwrap()), canonical);
    }

    #[test]
    fn structural_errors_are_parse_errors() {
        let canonical = write_algebra(&AlgebraFile::new(group_algebra(2)));
        let bad = [
            canonical.replace("\"format_version\": 1", "\"format_version\": 9"),
            canonical.replace("\"dim\": 2", "\"dim\": 3"),
            canonical.replace("[1, 1, 0, 1, 1]", "[1, 2, 0, 1, 1]"),
            canonical.replace("\"flavor\": \"plain\"", "\"flavor\": \"odd\""),
            canonical.replace("\"name\"", "\"nom\""),
            "not json".to_string(),
        ];
        for text in bad {
            assert!(
                matches!(parse_algebra(&text), Err(Error::Parse(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn report_totals_are_checked() {
        let mut rep = VerificationReport::new();
        rep.push(CheckRecord::pass("a", "x"));
        rep.push(CheckRecord::fail("b", "y", "boom"));
        rep.push(CheckRecord::note("c", "z", "fyi"));
        let file = ReportFile::new("verify", &rep);
        assert_eq!((file.passed, file.failed, file.notes), (1, 1, 1));
        let text = file.to_text();
        assert_eq!(ReportFile::parse(&text).unwrap(), file);
        let tampered = text.replace("\"failed\": 1", "\"failed\": 0");
        assert!(ReportFile::parse(&tampered).is_err());
    }
}
