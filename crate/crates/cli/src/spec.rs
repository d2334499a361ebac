//! Surface spec files.
//!
//! A spec is a list of `key = value` lines. `#` starts a comment. Graph
//! patches give `f[i,j]` coefficients of `x^i y^j` (or `x^i z^j` for a
//! `y = f(x, z)` graph); parametrised germs give `x0[i,j]`, `x1[i,j]`,
//! `x2[i,j]` instead. Coefficients are exact rationals `p` or `p/q`.

use std::collections::BTreeMap;
use std::fmt;

use umbilic_core::deform::{Family, Perturbation};
use umbilic_core::surface::{Ambient, GraphAxis, MongePatch, Parametrisation, DEFAULT_ORDER};
use umbilic_core::{qi, JetPoly, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Monomial exponents `(i, j)` mapped to their coefficients.
pub type Terms = BTreeMap<(u32, u32), Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Graph { axis: GraphAxis, f: Terms },
    Parametrised([Terms; 3]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub name: Option<String>,
    pub ambient: Ambient,
    pub order: u32,
    pub surface: SurfaceKind,
    /// Search disk radius for `deform`.
    pub radius: Option<Scalar>,
    /// Location tolerance for `deform`.
    pub tolerance: Option<Scalar>,
    /// Perturbation directions with their magnitudes, in file order.
    pub family: Vec<((u32, u32), Vec<Scalar>)>,
}

impl SurfaceSpec {
    pub fn patch(&self) -> Option<MongePatch> {
        match &self.surface {
            SurfaceKind::Graph { axis, f } => Some(
                MongePatch::new(self.ambient, *axis, jet(f)).expect("checked at parse time").with_order(self.order),
            ),
            SurfaceKind::Parametrised(_) => None,
        }
    }

    pub fn parametrisation(&self) -> Parametrisation {
        match &self.surface {
            SurfaceKind::Graph { .. } => self.patch().expect("graph").parametrisation(),
            SurfaceKind::Parametrised(comps) => {
                Parametrisation::new(self.ambient, [jet(&comps[0]), jet(&comps[1]), jet(&comps[2])])
            }
        }
    }

    pub fn family(&self) -> Option<Family> {
        (!self.family.is_empty()).then(|| Family { directions: self.family.clone() })
    }

    /// Spec of a graph patch, with its terms read off `f`.
    pub fn from_patch(name: Option<String>, p: &MongePatch) -> Self {
        SurfaceSpec {
            name,
            ambient: p.ambient,
            order: p.order(),
            surface: SurfaceKind::Graph { axis: p.axis, f: terms_of(p.f()) },
            radius: None,
            tolerance: None,
            family: Vec::new(),
        }
    }

    pub fn from_parametrisation(name: Option<String>, x: &Parametrisation) -> Self {
        SurfaceSpec {
            name,
            ambient: x.ambient,
            order: DEFAULT_ORDER,
            surface: SurfaceKind::Parametrised(x.comps.clone().map(|c| terms_of(&c))),
            radius: None,
            tolerance: None,
            family: Vec::new(),
        }
    }
}

fn jet(t: &Terms) -> JetPoly {
    JetPoly::from_terms(t.iter().map(|(&(i, j), c)| (i, j, c.clone())), JetPoly::EXACT)
}

fn terms_of(p: &JetPoly) -> Terms {
    p.terms().map(|(i, j, c)| ((i, j), c.clone())).collect()
}

/// Canonical form: fixed key order, terms by degree then by falling power
/// of the first variable, zero coefficients dropped.
impl fmt::Display for SurfaceSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(out, "name = {}", name)?;
        }
        writeln!(out, "ambient = {}", self.ambient.name())?;
        if let SurfaceKind::Graph { axis, .. } = &self.surface {
            writeln!(out, "graph = {}", axis.name())?;
        }
        writeln!(out, "order = {}", self.order)?;
        let write_terms = |out: &mut fmt::Formatter<'_>, key: &str, t: &Terms| -> fmt::Result {
            let mut keys: Vec<_> = t.iter().filter(|(_, c)| **c != qi(0)).collect();
            keys.sort_by_key(|((i, j), _)| (i + j, std::cmp::Reverse(*i)));
            for ((i, j), c) in keys {
                writeln!(out, "{}[{},{}] = {}", key, i, j, c)?;
            }
            Ok(())
        };
        match &self.surface {
            SurfaceKind::Graph { f, .. } => write_terms(out, "f", f)?,
            SurfaceKind::Parametrised(comps) => {
                for (k, c) in comps.iter().enumerate() {
                    write_terms(out, &format!("x{}", k), c)?;
                }
            }
        }
        if let Some(r) = &self.radius {
            writeln!(out, "radius = {}", r)?;
        }
        if let Some(t) = &self.tolerance {
            writeln!(out, "tolerance = {}", t)?;
        }
        for ((i, j), mags) in &self.family {
            let list: Vec<String> = mags.iter().map(|m| m.to_string()).collect();
            writeln!(out, "perturb[{},{}] = {}", i, j, list.join(", "))?;
        }
        Ok(())
    }
}

/// A span of the current line, for error positions.
#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Cursor {
    line: usize,
}

impl Cursor {
    fn err(&self, at: Token<'_>, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: at.column, message: message.into() }
    }
}

fn trimmed(start: usize, s: &str) -> Token<'_> {
    let lead = s.len() - s.trim_start().len();
    Token { text: s.trim(), column: start + lead + 1 }
}

/// Parses `p` or `p/q` with an optional sign.
fn rational(c: &Cursor, tok: Token<'_>, what: &str) -> Result<Scalar, ParseError> {
    let s = tok.text;
    if s.is_empty() {
        return Err(c.err(tok, format!("missing value in {}", what)));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(c.err(tok, format!("decimal value '{}' in {}; write an exact rational p/q", s, what)));
    }
    let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    let (num, den) = body.split_once('/').unwrap_or((body, "1"));
    let digits = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(c.err(tok, format!("malformed rational '{}' in {}", s, what)));
    }
    if den.bytes().all(|b| b == b'0') {
        return Err(c.err(tok, format!("zero denominator in {}", what)));
    }
    let neg = s.starts_with('-');
    let v: Scalar = format!("{}{}/{}", if neg { "-" } else { "" }, num, den).parse().expect("validated rational");
    Ok(v)
}

fn uint(c: &Cursor, tok: Token<'_>) -> Result<u32, ParseError> {
    tok.text.parse().map_err(|_| c.err(tok, format!("expected a non-negative integer, found '{}'", tok.text)))
}

/// Splits `head[i,j]` into `head` and the exponents.
fn indexed<'a>(c: &Cursor, key: Token<'a>) -> Result<Option<(&'a str, u32, u32)>, ParseError> {
    let Some(open) = key.text.find('[') else {
        return Ok(None);
    };
    let head = &key.text[..open];
    let inner = key.text[open + 1..]
        .strip_suffix(']')
        .ok_or_else(|| c.err(key, format!("unterminated index in '{}'", key.text)))?;
    let (i, j) = inner
        .split_once(',')
        .ok_or_else(|| c.err(key, format!("expected two exponents in '{}'", key.text)))?;
    let exp = |s: &str| {
        s.trim().parse::<u32>().map_err(|_| c.err(key, format!("bad exponent '{}' in '{}'", s.trim(), key.text)))
    };
    Ok(Some((head, exp(i)?, exp(j)?)))
}

/// Parses a spec file. Errors carry 1-based line and column numbers.
pub fn parse(text: &str) -> Result<SurfaceSpec, ParseError> {
    let mut name = None;
    let mut ambient = None;
    let mut axis = None;
    let mut order = None;
    let mut radius = None;
    let mut tolerance = None;
    let mut family: Vec<((u32, u32), Vec<Scalar>)> = Vec::new();
    // (head, i, j) -> (coefficient, line, column) for the degree check at the end
    let mut terms: Vec<(String, u32, u32, Scalar, usize, usize)> = Vec::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();

    for (k, raw) in text.lines().enumerate() {
        let c = Cursor { line: k + 1 };
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(eq) = body.find('=') else {
            let tok = trimmed(0, body);
            return Err(c.err(tok, "expected 'key = value'"));
        };
        let key = trimmed(0, &body[..eq]);
        let value = trimmed(eq + 1, &body[eq + 1..]);
        if key.text.is_empty() {
            return Err(c.err(key, "missing key before '='"));
        }
        let canonical: String = key.text.chars().filter(|ch| !ch.is_whitespace()).collect();
        if let Some(first) = seen.insert(canonical.clone(), c.line) {
            return Err(c.err(key, format!("duplicate key '{}' (first given on line {})", canonical, first)));
        }
        if let Some((head, i, j)) = indexed(&c, key)? {
            let what = format!("{}[{},{}] = {}", head, i, j, value.text);
            match head {
                "f" | "x0" | "x1" | "x2" => {
                    let v = rational(&c, value, &what)?;
                    terms.push((head.to_string(), i, j, v, c.line, key.column));
                }
                "perturb" => {
                    let mut mags = Vec::new();
                    let mut offset = value.column - 1;
                    for part in value.text.split(',') {
                        mags.push(rational(&c, trimmed(offset, part), &what)?);
                        offset += part.len() + 1;
                    }
                    family.push(((i, j), mags));
                }
                _ => return Err(c.err(key, format!("unknown indexed key '{}'", head))),
            }
            continue;
        }
        match key.text {
            "name" => {
                if value.text.is_empty() || value.text.contains(char::is_whitespace) {
                    return Err(c.err(value, "name must be a single non-empty word"));
                }
                name = Some(value.text.to_string());
            }
            "ambient" => {
                ambient = Some(match value.text {
                    "euclidean" => Ambient::Euclidean,
                    "minkowski" => Ambient::Minkowski,
                    other => {
                        return Err(c.err(value, format!("ambient must be euclidean or minkowski, found '{}'", other)))
                    }
                })
            }
            "graph" => {
                axis = Some(match value.text {
                    "z" => GraphAxis::Z,
                    "y" => GraphAxis::Y,
                    other => return Err(c.err(value, format!("graph must be z or y, found '{}'", other))),
                })
            }
            "order" => {
                let n = uint(&c, value)?;
                if n < 2 {
                    return Err(c.err(value, "order must be at least 2"));
                }
                order = Some((n, c.line, value.column));
            }
            "radius" => {
                let r = rational(&c, value, "radius")?;
                if r <= qi(0) {
                    return Err(c.err(value, "radius must be positive"));
                }
                radius = Some(r);
            }
            "tolerance" => {
                let t = rational(&c, value, "tolerance")?;
                if t <= qi(0) {
                    return Err(c.err(value, "tolerance must be positive"));
                }
                tolerance = Some(t);
            }
            other => return Err(c.err(key, format!("unknown key '{}'", other))),
        }
    }

    let end = || ParseError { line: text.lines().count().max(1), column: 1, message: String::new() };
    let ambient = ambient.ok_or_else(|| ParseError { message: "missing 'ambient'".into(), ..end() })?;
    let (order, order_pos) = match order {
        Some((n, line, column)) => (n, Some((line, column))),
        None => (DEFAULT_ORDER, None),
    };
    let graph_terms = terms.iter().any(|t| t.0 == "f");
    let param_terms = terms.iter().any(|t| t.0 != "f");
    if graph_terms && param_terms {
        let t = terms.iter().find(|t| t.0 != "f").expect("present");
        return Err(ParseError { line: t.4, column: t.5, message: "cannot mix f[..] with x0/x1/x2 terms".into() });
    }
    for (head, i, j, _, line, column) in &terms {
        if i + j > order {
            let (ol, _) = order_pos.unwrap_or((0, 0));
            let source = if ol > 0 { format!("order {} on line {}", order, ol) } else { format!("default order {}", order) };
            return Err(ParseError {
                line: *line,
                column: *column,
                message: format!("term {}[{},{}] has degree {} above {}", head, i, j, i + j, source),
            });
        }
    }

    let surface = if param_terms {
        if axis.is_some() {
            return Err(ParseError { message: "'graph' given for a parametrised surface".into(), ..end() });
        }
        let mut comps: [Terms; 3] = Default::default();
        for (head, i, j, v, ..) in terms {
            let k = (head.as_bytes()[1] - b'0') as usize;
            comps[k].insert((i, j), v);
        }
        for c in &mut comps {
            c.retain(|_, v| *v != qi(0));
        }
        SurfaceKind::Parametrised(comps)
    } else {
        let axis = axis.ok_or_else(|| ParseError { message: "missing 'graph'".into(), ..end() })?;
        let mut f = Terms::new();
        for (_, i, j, v, line, column) in terms {
            if i + j == 0 && v != qi(0) {
                return Err(ParseError { line, column, message: "f[0,0] must be zero: the patch passes through the origin".into() });
            }
            if v != qi(0) {
                f.insert((i, j), v);
            }
        }
        SurfaceKind::Graph { axis, f }
    };
    Ok(SurfaceSpec { name, ambient, order, surface, radius, tolerance, family })
}

/// Perturbation of a single member, for reports.
pub fn describe(p: &Perturbation) -> String {
    if p.terms.is_empty() {
        return String::from("0");
    }
    let power = |x: &str, e: u32| match e {
        0 => String::new(),
        1 => format!("*{}", x),
        _ => format!("*{}^{}", x, e),
    };
    let parts: Vec<String> = p.terms.iter().map(|(i, j, c)| format!("{}{}{}", c, power("u", *i), power("v", *j))).collect();
    parts.join(" + ")
}
