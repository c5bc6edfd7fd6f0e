//! The problem file format.
//!
//! One `key = value` per line; blank lines and text after `#` are ignored,
//! as is whitespace around keys, values and separators.
//!
//! ```text
//! kind = transform        kind = linear
//! n = 4                   p = 2
//! Y = 0, 1                n = 2
//! f = 0 0 2 2             W = 1 0
//!                         f = 0 0; 1 0
//! ```
//!
//! `Y` lists points of `[0, n)` separated by commas, `W` lists spanning rows
//! separated by `;` (empty for `{0}`), and `f` is the image list or the
//! matrix rows. `f` may be omitted when only the subset matters.

use std::collections::BTreeMap;

use ureg_core::balance::Universe;
use ureg_core::{
    Error, FFMatrix, InvariantSetPair, InvariantSubspacePair, PrimeField, Subspace, Transformation,
};

use crate::error::{CliError, Result};

#[derive(Debug, Clone)]
pub enum Element {
    Transform(InvariantSetPair),
    Linear(InvariantSubspacePair),
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub universe: Universe,
    pub element: Option<Element>,
}

impl ProblemFile {
    /// The element, which commands other than `semigroup` require.
    pub fn element(&self) -> Result<&Element> {
        self.element
            .as_ref()
            .ok_or_else(|| CliError::parse_global("missing key `f`"))
    }
}

const KEYS: [&str; 6] = ["kind", "n", "y", "f", "p", "w"];

pub fn parse(text: &str) -> Result<ProblemFile> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| {
            CliError::parse(line, format!("expected `key = value`, found `{content}`"))
        })?;
        let key = key.trim().to_ascii_lowercase();
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::parse(line, format!("unknown key `{}`", key)));
        }
        if let Some((first, _)) = entries.get(&key) {
            return Err(CliError::parse(
                line,
                format!("duplicate key `{key}` (first set on line {first})"),
            ));
        }
        entries.insert(key, (line, value.trim().to_string()));
    }

    let (kind_line, kind) = required(&entries, "kind")?;
    match kind {
        "transform" => parse_transform(&entries),
        "linear" => parse_linear(&entries),
        other => Err(CliError::parse(
            kind_line,
            format!("kind must be `transform` or `linear`, found `{other}`"),
        )),
    }
}

fn required<'a>(
    entries: &'a BTreeMap<String, (usize, String)>,
    key: &str,
) -> Result<(usize, &'a str)> {
    entries
        .get(key)
        .map(|(line, v)| (*line, v.as_str()))
        .ok_or_else(|| CliError::parse_global(format!("missing key `{key}`")))
}

fn reject<'a>(
    entries: &BTreeMap<String, (usize, String)>,
    keys: impl IntoIterator<Item = &'a str>,
    kind: &str,
) -> Result<()> {
    for key in keys {
        if let Some((line, _)) = entries.get(key) {
            return Err(CliError::parse(
                *line,
                format!("key `{key}` does not apply to kind {kind}"),
            ));
        }
    }
    Ok(())
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token.trim().parse().map_err(|_| {
        CliError::parse(
            line,
            format!("{what}: `{}` is not a non-negative integer", token.trim()),
        )
    })
}

fn numbers<T: std::str::FromStr>(
    line: usize,
    text: &str,
    sep: Option<char>,
    what: &str,
) -> Result<Vec<T>> {
    let tokens: Vec<&str> = match sep {
        Some(c) => text.split(c).collect(),
        None => text.split_whitespace().collect(),
    };
    tokens.iter().map(|t| number(line, t, what)).collect()
}

/// Lifts a validation failure from the core into a parse error on `line`,
/// keeping invariance violations distinct.
fn at_line(line: usize, e: Error) -> CliError {
    match e {
        Error::InvarianceViolated(_) => CliError::Core(e),
        other => CliError::parse(line, other.to_string()),
    }
}

fn parse_transform(entries: &BTreeMap<String, (usize, String)>) -> Result<ProblemFile> {
    reject(entries, ["p", "w"], "transform")?;
    let (n_line, n) = required(entries, "n")?;
    let n: usize = number(n_line, n, "n")?;
    if n == 0 {
        return Err(CliError::parse(n_line, "n must be positive"));
    }
    let (y_line, y) = required(entries, "y")?;
    let y: Vec<usize> = if y.is_empty() {
        Vec::new()
    } else {
        numbers(y_line, y, Some(','), "Y")?
    };
    if y.is_empty() {
        return Err(CliError::parse(y_line, "Y must be nonempty"));
    }
    let mut sorted = y.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(CliError::parse(y_line, format!("Y lists {} twice", w[0])));
    }
    if let Some(&x) = sorted.iter().find(|&&x| x >= n) {
        return Err(CliError::parse(
            y_line,
            format!("Y contains {x}, outside [0, {n})"),
        ));
    }

    let element = match entries.get("f") {
        None => None,
        Some((f_line, f)) => {
            let images: Vec<usize> = numbers(*f_line, f, None, "f")?;
            if images.len() != n {
                return Err(CliError::parse(
                    *f_line,
                    format!("f has {} images, expected n = {n}", images.len()),
                ));
            }
            let f = Transformation::new(images).map_err(|e| at_line(*f_line, e))?;
            let pair = InvariantSetPair::new(f, sorted.iter().copied())
                .map_err(|e| at_line(*f_line, e))?;
            Some(Element::Transform(pair))
        }
    };
    Ok(ProblemFile {
        universe: Universe::Transform { n, y: sorted },
        element,
    })
}

fn rows(line: usize, text: &str, field: PrimeField, n: usize, what: &str) -> Result<Vec<Vec<u32>>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let p = field.modulus();
    text.split(';')
        .map(|row| {
            let row: Vec<u32> = numbers(line, row, None, what)?;
            if row.len() != n {
                return Err(CliError::parse(
                    line,
                    format!("{what} has a row of length {}, expected n = {n}", row.len()),
                ));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= p) {
                return Err(CliError::parse(
                    line,
                    format!("{what} entry {v} is not reduced mod {p}"),
                ));
            }
            Ok(row)
        })
        .collect()
}

fn parse_linear(entries: &BTreeMap<String, (usize, String)>) -> Result<ProblemFile> {
    reject(entries, ["y"], "linear")?;
    let (p_line, p) = required(entries, "p")?;
    let p: u32 = number(p_line, p, "p")?;
    let field = PrimeField::new(p).map_err(|e| at_line(p_line, e))?;
    let (n_line, n) = required(entries, "n")?;
    let n: usize = number(n_line, n, "n")?;
    if n == 0 {
        return Err(CliError::parse(n_line, "n must be positive"));
    }
    let (w_line, w) = required(entries, "w")?;
    let w = Subspace::span(field, n, &rows(w_line, w, field, n, "W")?)
        .map_err(|e| at_line(w_line, e))?;

    let element = match entries.get("f") {
        None => None,
        Some((f_line, f)) => {
            let f_rows = rows(*f_line, f, field, n, "f")?;
            if f_rows.len() != n {
                return Err(CliError::parse(
                    *f_line,
                    format!("f has {} rows, expected n = {n}", f_rows.len()),
                ));
            }
            let f = FFMatrix::from_rows(field, n, &f_rows).map_err(|e| at_line(*f_line, e))?;
            let pair = InvariantSubspacePair::new(w.clone(), f).map_err(|e| at_line(*f_line, e))?;
            Some(Element::Linear(pair))
        }
    };
    Ok(ProblemFile {
        universe: Universe::Linear { w },
        element,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> u8 {
        parse(text).unwrap_err().exit_code()
    }

    #[test]
    fn transform_file() {
        let p = parse("# example\nkind = transform\n n=4\nY = 0, 1\nf = 0 0 2 2  # map\n").unwrap();
        assert_eq!(
            p.universe,
            Universe::Transform {
                n: 4,
                y: vec![0, 1]
            }
        );
        let Element::Transform(pair) = p.element().unwrap() else {
            panic!()
        };
        assert_eq!(pair.map().images(), &[0, 0, 2, 2]);
    }

    #[test]
    fn linear_file() {
        let p = parse("kind=linear\np=2\nn=2\nW=1 0\nf=0 0 ; 1 0\n").unwrap();
        let Element::Linear(pair) = p.element().unwrap() else {
            panic!()
        };
        assert_eq!(pair.subspace().dim(), 1);
        assert_eq!(pair.map().row(1), &[1, 0]);

        let p = parse("kind = linear\np = 3\nn = 2\nW =\nf = 1 2; 0 0\n").unwrap();
        let Universe::Linear { w } = p.universe else {
            panic!()
        };
        assert!(w.is_zero());
    }

    #[test]
    fn keys_may_be_lowercase_and_f_optional() {
        let p = parse("kind = transform\nn = 3\ny = 2\n").unwrap();
        assert!(p.element.is_none());
        assert_eq!(p.element().unwrap_err().exit_code(), 3);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        assert_eq!(code(""), 3);
        assert_eq!(
            code("kind = transform\nn = 4\nY = 0\nY = 1\nf = 0 0 0 0"),
            3
        );
        assert_eq!(code("kind = transform\nn = 4\nY = 0\nf = 0 0 0"), 3);
        assert_eq!(code("kind = transform\nn = 4\nY = 0\nf = 0 0 0 9"), 3);
        assert_eq!(code("kind = transform\nn = 4\nY = 0, 0\nf = 0 0 0 0"), 3);
        assert_eq!(code("kind = transform\nn = 4\nY =\nf = 0 0 0 0"), 3);
        assert_eq!(
            code("kind = transform\nn = 4\nY = 0\nf = 0 0 0 0\ncolour = red"),
            3
        );
        assert_eq!(
            code("kind = transform\nn = 4\nY = 0\np = 2\nf = 0 0 0 0"),
            3
        );
        assert_eq!(code("kind = set\nn = 1"), 3);
        assert_eq!(
            code("kind = linear\np = 4\nn = 2\nW = 1 0\nf = 1 0; 0 1"),
            3
        );
        assert_eq!(
            code("kind = linear\np = 2\nn = 2\nW = 1 0\nf = 1 0; 0 2"),
            3
        );
        assert_eq!(code("kind = linear\np = 2\nn = 2\nW = 1 0\nf = 1 0"), 3);
        assert_eq!(
            code("kind = linear\np = 2\nn = 2\nW = 1 0 1\nf = 1 0; 0 1"),
            3
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse("kind = transform\n\nn = x\n").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
    }

    #[test]
    fn invariance_violations_are_distinct() {
        assert_eq!(code("kind = transform\nn = 3\nY = 0\nf = 1 0 0"), 4);
        assert_eq!(
            code("kind = linear\np = 2\nn = 2\nW = 1 0\nf = 0 1; 0 0"),
            4
        );
    }
}
