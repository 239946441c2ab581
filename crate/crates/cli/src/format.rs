//! The JSON interchange format.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "dim": 2,
//!   "basis_names": ["1", "ε"],
//!   "mul": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]],
//!   "bimodule": { "dim": 1, "basis_names": ["u"], "left": ..., "right": ... },
//!   "maps": [{ "name": "delta", "source": "A", "target": "U", "matrix": [["0", "1"]] }],
//!   "elements": [{ "name": "p", "vector": ["1", "0"] }],
//!   "subspaces": [{ "name": "I", "basis": [["0", "1"]] }]
//! }
//! ```
//!
//! `mul[i][j]` holds the coordinates of `e_i e_j`, `left[i][j]` those of
//! `e_i·u_j` and `right[j][i]` those of `u_j·e_i`. A map matrix has
//! `dim(target)` rows and `dim(source)` columns, where a space is `A`, `U` or
//! `T` (for `T(A,U) = A ⊕ U`). Scalars are strings `"n"` or `"p/q"`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{Map, Value};

use modext_core::{Algebra, Bimodule, Matrix, Rational, Subspace};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    /// JSON path such as `$.mul[1][0][1]`; empty for syntax errors.
    pub path: String,
    /// 1-based line and column, for syntax errors.
    pub position: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some((line, col)) => write!(f, "line {line}, column {col}: {}", self.message),
            None => write!(f, "at {}: {}", self.path, self.message),
        }
    }
}

impl std::error::Error for FormatError {}

fn err(path: &str, message: impl Into<String>) -> FormatError {
    FormatError {
        path: path.to_string(),
        position: None,
        message: message.into(),
    }
}

/// A rational written as `"n"` or `"p/q"` with `q ≠ 0`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let int = |t: &str| -> Result<BigInt, String> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid rational {s:?}: expected \"n\" or \"p/q\""));
        }
        BigInt::from_str(t).map_err(|e| format!("invalid rational {s:?}: {e}"))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((p, q)) => {
            if q.starts_with('-') {
                return Err(format!("invalid rational {s:?}: denominator must be positive"));
            }
            let (p, q) = (int(p)?, int(q)?);
            if q.is_zero() {
                return Err(format!("invalid rational {s:?}: zero denominator"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    A,
    U,
    T,
}

impl Space {
    fn parse(s: &str) -> Option<Space> {
        match s {
            "A" => Some(Space::A),
            "U" => Some(Space::U),
            "T" => Some(Space::T),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Space::A => "A",
            Space::U => "U",
            Space::T => "T",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBimodule {
    pub basis_names: Vec<String>,
    /// Flattened `left[i][j][k]`.
    pub left: Vec<Rational>,
    /// Flattened `right[j][i][k]`.
    pub right: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub name: String,
    pub source: Space,
    pub target: Space,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedElement {
    pub name: String,
    pub vector: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSubspace {
    pub name: String,
    /// Spanning vectors as written in the file.
    pub basis: Vec<Vec<Rational>>,
}

/// A parsed file. Shapes are checked; algebraic axioms are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub basis_names: Vec<String>,
    /// Flattened `mul[i][j][k]`.
    pub mul: Vec<Rational>,
    pub bimodule: Option<RawBimodule>,
    pub maps: Vec<NamedMap>,
    pub elements: Vec<NamedElement>,
    pub subspaces: Vec<NamedSubspace>,
}

impl AlgebraFile {
    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn module_dim(&self) -> Option<usize> {
        self.bimodule.as_ref().map(|b| b.basis_names.len())
    }

    pub fn space_dim(&self, s: Space) -> Option<usize> {
        match s {
            Space::A => Some(self.dim()),
            Space::U => self.module_dim(),
            Space::T => self.module_dim().map(|n| n + self.dim()),
        }
    }

    pub fn map(&self, name: &str) -> Option<&NamedMap> {
        self.maps.iter().find(|m| m.name == name)
    }

    pub fn element(&self, name: &str) -> Option<&NamedElement> {
        self.elements.iter().find(|m| m.name == name)
    }

    pub fn subspace(&self, name: &str) -> Option<&NamedSubspace> {
        self.subspaces.iter().find(|m| m.name == name)
    }

    /// The algebra without validation, for diagnostics.
    pub fn algebra_unchecked(&self) -> Algebra {
        Algebra::new_unchecked(self.basis_names.clone(), self.mul.clone())
    }

    pub fn bimodule_unchecked(&self) -> Option<Bimodule> {
        self.bimodule.as_ref().map(|b| {
            Bimodule::new_unchecked(self.dim(), b.basis_names.clone(), b.left.clone(), b.right.clone())
        })
    }

    pub fn algebra(&self) -> modext_core::Result<Algebra> {
        Algebra::new(self.basis_names.clone(), self.mul.clone())
    }

    pub fn bimodule(&self, a: &Algebra) -> modext_core::Result<Option<Bimodule>> {
        self.bimodule
            .as_ref()
            .map(|b| Bimodule::new(a, b.basis_names.clone(), b.left.clone(), b.right.clone()))
            .transpose()
    }

    pub fn subspace_of(&self, name: &str) -> Option<Subspace> {
        self.subspace(name)
            .map(|s| Subspace::span(self.dim(), s.basis.iter().cloned()))
    }

    pub fn from_parts(
        algebra: &Algebra,
        bimodule: Option<&Bimodule>,
        maps: Vec<NamedMap>,
    ) -> AlgebraFile {
        AlgebraFile {
            basis_names: algebra.basis_names().to_vec(),
            mul: algebra.structure_constants().to_vec(),
            bimodule: bimodule.map(|u| RawBimodule {
                basis_names: u.basis_names().to_vec(),
                left: u.left_tensor().to_vec(),
                right: u.right_tensor().to_vec(),
            }),
            maps,
            elements: Vec::new(),
            subspaces: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<AlgebraFile, FormatError> {
        let value: Value = serde_json::from_str(text).map_err(|e| FormatError {
            path: String::new(),
            position: Some((e.line(), e.column())),
            message: e.to_string(),
        })?;
        Parser.file(&value)
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("format_version".into(), Value::String(FORMAT_VERSION.into()));
        root.insert("dim".into(), Value::from(self.dim()));
        root.insert("basis_names".into(), names_value(&self.basis_names));
        root.insert("mul".into(), tensor_value(&self.mul, self.dim(), self.dim(), self.dim()));
        if let Some(b) = &self.bimodule {
            let n = b.basis_names.len();
            let mut bm = Map::new();
            bm.insert("dim".into(), Value::from(n));
            bm.insert("basis_names".into(), names_value(&b.basis_names));
            bm.insert("left".into(), tensor_value(&b.left, self.dim(), n, n));
            bm.insert("right".into(), tensor_value(&b.right, n, self.dim(), n));
            root.insert("bimodule".into(), Value::Object(bm));
        }
        if !self.maps.is_empty() {
            let maps = self
                .maps
                .iter()
                .map(|m| {
                    let mut o = Map::new();
                    o.insert("name".into(), Value::String(m.name.clone()));
                    o.insert("source".into(), Value::String(m.source.as_str().into()));
                    o.insert("target".into(), Value::String(m.target.as_str().into()));
                    o.insert("matrix".into(), matrix_value(&m.matrix));
                    Value::Object(o)
                })
                .collect();
            root.insert("maps".into(), Value::Array(maps));
        }
        if !self.elements.is_empty() {
            let els = self
                .elements
                .iter()
                .map(|e| {
                    let mut o = Map::new();
                    o.insert("name".into(), Value::String(e.name.clone()));
                    o.insert("vector".into(), vector_value(&e.vector));
                    Value::Object(o)
                })
                .collect();
            root.insert("elements".into(), Value::Array(els));
        }
        if !self.subspaces.is_empty() {
            let ss = self
                .subspaces
                .iter()
                .map(|s| {
                    let mut o = Map::new();
                    o.insert("name".into(), Value::String(s.name.clone()));
                    o.insert(
                        "basis".into(),
                        Value::Array(s.basis.iter().map(|v| vector_value(v)).collect()),
                    );
                    Value::Object(o)
                })
                .collect();
            root.insert("subspaces".into(), Value::Array(ss));
        }
        Value::Object(root)
    }

    /// Canonical text: fixed key order, scalar arrays on one line, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        write_value(&mut out, &self.to_value(), 0);
        out.push('\n');
        out
    }
}

pub fn rational_value(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn vector_value(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_value).collect())
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_value(m.row(r))).collect())
}

fn names_value(names: &[String]) -> Value {
    Value::Array(names.iter().map(|s| Value::String(s.clone())).collect())
}

fn tensor_value(t: &[Rational], a: usize, b: usize, c: usize) -> Value {
    Value::Array(
        (0..a)
            .map(|i| {
                Value::Array(
                    (0..b)
                        .map(|j| vector_value(&t[(i * b + j) * c..(i * b + j + 1) * c]))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Pretty-printer that keeps arrays of scalars on a single line.
pub fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

struct Parser;

impl Parser {
    fn object<'a>(&self, v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, FormatError> {
        v.as_object().ok_or_else(|| err(path, "expected an object"))
    }

    fn array<'a>(&self, v: &'a Value, path: &str) -> Result<&'a Vec<Value>, FormatError> {
        v.as_array().ok_or_else(|| err(path, "expected an array"))
    }

    fn field<'a>(&self, o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, FormatError> {
        o.get(key)
            .ok_or_else(|| err(path, format!("missing field {key:?}")))
    }

    fn string<'a>(&self, v: &'a Value, path: &str) -> Result<&'a str, FormatError> {
        v.as_str().ok_or_else(|| err(path, "expected a string"))
    }

    fn count(&self, v: &Value, path: &str) -> Result<usize, FormatError> {
        v.as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| err(path, "expected a nonnegative integer"))
    }

    fn rational(&self, v: &Value, path: &str) -> Result<Rational, FormatError> {
        let s = v
            .as_str()
            .ok_or_else(|| err(path, "expected a rational string such as \"3\" or \"-1/2\""))?;
        parse_rational(s).map_err(|m| err(path, m))
    }

    fn vector(&self, v: &Value, len: usize, path: &str) -> Result<Vec<Rational>, FormatError> {
        let items = self.array(v, path)?;
        if items.len() != len {
            return Err(err(path, format!("expected {len} entries, found {}", items.len())));
        }
        items
            .iter()
            .enumerate()
            .map(|(i, x)| self.rational(x, &format!("{path}[{i}]")))
            .collect()
    }

    fn tensor(&self, v: &Value, a: usize, b: usize, c: usize, path: &str) -> Result<Vec<Rational>, FormatError> {
        let outer = self.array(v, path)?;
        if outer.len() != a {
            return Err(err(path, format!("expected {a} entries, found {}", outer.len())));
        }
        let mut flat = Vec::with_capacity(a * b * c);
        for (i, row) in outer.iter().enumerate() {
            let p = format!("{path}[{i}]");
            let inner = self.array(row, &p)?;
            if inner.len() != b {
                return Err(err(&p, format!("expected {b} entries, found {}", inner.len())));
            }
            for (j, cell) in inner.iter().enumerate() {
                flat.extend(self.vector(cell, c, &format!("{p}[{j}]"))?);
            }
        }
        Ok(flat)
    }

    fn names(&self, o: &Map<String, Value>, path: &str) -> Result<Vec<String>, FormatError> {
        let p = format!("{path}.basis_names");
        let dim = self.count(self.field(o, "dim", path)?, &format!("{path}.dim"))?;
        let names: Vec<String> = self
            .array(self.field(o, "basis_names", path)?, &p)?
            .iter()
            .enumerate()
            .map(|(i, v)| self.string(v, &format!("{p}[{i}]")).map(str::to_string))
            .collect::<Result<_, _>>()?;
        if names.len() != dim {
            return Err(err(&p, format!("dim is {dim} but {} names are given", names.len())));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(err(&format!("{p}[{i}]"), format!("duplicate basis name {n:?}")));
            }
        }
        Ok(names)
    }

    fn unique_name(&self, o: &Map<String, Value>, path: &str, seen: &mut Vec<String>) -> Result<String, FormatError> {
        let p = format!("{path}.name");
        let name = self.string(self.field(o, "name", path)?, &p)?.to_string();
        if seen.contains(&name) {
            return Err(err(&p, format!("duplicate name {name:?}")));
        }
        seen.push(name.clone());
        Ok(name)
    }

    fn file(&self, v: &Value) -> Result<AlgebraFile, FormatError> {
        let root = self.object(v, "$")?;
        const KNOWN: [&str; 8] = [
            "format_version",
            "dim",
            "basis_names",
            "mul",
            "bimodule",
            "maps",
            "elements",
            "subspaces",
        ];
        if let Some(k) = root.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(err(&format!("$.{k}"), "unknown field"));
        }
        let version = self.string(self.field(root, "format_version", "$")?, "$.format_version")?;
        if version != FORMAT_VERSION {
            return Err(err(
                "$.format_version",
                format!("unsupported version {version:?}, expected {FORMAT_VERSION:?}"),
            ));
        }
        let basis_names = self.names(root, "$")?;
        let m = basis_names.len();
        let mul = self.tensor(self.field(root, "mul", "$")?, m, m, m, "$.mul")?;

        let bimodule = match root.get("bimodule") {
            None | Some(Value::Null) => None,
            Some(b) => {
                let o = self.object(b, "$.bimodule")?;
                let names = self.names(o, "$.bimodule")?;
                let n = names.len();
                let left = self.tensor(self.field(o, "left", "$.bimodule")?, m, n, n, "$.bimodule.left")?;
                let right = self.tensor(self.field(o, "right", "$.bimodule")?, n, m, n, "$.bimodule.right")?;
                Some(RawBimodule {
                    basis_names: names,
                    left,
                    right,
                })
            }
        };
        let mut file = AlgebraFile {
            basis_names,
            mul,
            bimodule,
            maps: Vec::new(),
            elements: Vec::new(),
            subspaces: Vec::new(),
        };

        let mut seen = Vec::new();
        for (idx, item) in self.list(root, "maps")?.iter().enumerate() {
            let path = format!("$.maps[{idx}]");
            let o = self.object(item, &path)?;
            let name = self.unique_name(o, &path, &mut seen)?;
            let space = |key: &str| -> Result<(Space, usize), FormatError> {
                let p = format!("{path}.{key}");
                let s = self.string(self.field(o, key, &path)?, &p)?;
                let space = Space::parse(s).ok_or_else(|| err(&p, format!("unknown space {s:?}, expected A, U or T")))?;
                let dim = file
                    .space_dim(space)
                    .ok_or_else(|| err(&p, format!("space {s} needs a bimodule section")))?;
                Ok((space, dim))
            };
            let (source, cols) = space("source")?;
            let (target, rows) = space("target")?;
            let mp = format!("{path}.matrix");
            let rows_v = self.array(self.field(o, "matrix", &path)?, &mp)?;
            if rows_v.len() != rows {
                return Err(err(&mp, format!("expected {rows} rows, found {}", rows_v.len())));
            }
            let data = rows_v
                .iter()
                .enumerate()
                .map(|(r, row)| self.vector(row, cols, &format!("{mp}[{r}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let matrix = Matrix::from_rows(cols, data).map_err(|e| err(&mp, e.to_string()))?;
            file.maps.push(NamedMap {
                name,
                source,
                target,
                matrix,
            });
        }

        let mut seen = Vec::new();
        for (idx, item) in self.list(root, "elements")?.iter().enumerate() {
            let path = format!("$.elements[{idx}]");
            let o = self.object(item, &path)?;
            let name = self.unique_name(o, &path, &mut seen)?;
            let vector = self.vector(self.field(o, "vector", &path)?, m, &format!("{path}.vector"))?;
            file.elements.push(NamedElement { name, vector });
        }

        let mut seen = Vec::new();
        for (idx, item) in self.list(root, "subspaces")?.iter().enumerate() {
            let path = format!("$.subspaces[{idx}]");
            let o = self.object(item, &path)?;
            let name = self.unique_name(o, &path, &mut seen)?;
            let bp = format!("{path}.basis");
            let basis = self
                .array(self.field(o, "basis", &path)?, &bp)?
                .iter()
                .enumerate()
                .map(|(i, v)| self.vector(v, m, &format!("{bp}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            file.subspaces.push(NamedSubspace { name, basis });
        }
        Ok(file)
    }

    fn list<'a>(&self, root: &'a Map<String, Value>, key: &str) -> Result<&'a [Value], FormatError> {
        match root.get(key) {
            None | Some(Value::Null) => Ok(&[]),
            Some(v) => self.array(v, &format!("$.{key}")).map(Vec::as_slice),
        }
    }
}
