//! Line-oriented text format for programs.
//!
//! ```text
//! obdd-program 1
//! kind: deterministic
//! n: 3
//! order: 1,2,3
//! stable: true
//! initial: 1
//! accept: 1
//! level 1 2 2
//! on0 map 1 2
//! on1 map 2 1
//! ...
//! ```
//!
//! Node indices are one-based. `level j a b` opens the transition from a
//! level of `a` nodes to one of `b` nodes; each symbol is then a `map` (one
//! target per source), a `relation` (a `{…}` target set per source), or a
//! `stochastic`/`unitary` header followed by `b` `row` lines of `a` entries.
//! Reals are written with 17 significant digits, complex entries as `re,im`.
//! `#` starts a comment.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::obdd::{LevelTransition, ObddProgram, ProgramKind, Transition, VariableOrder};

pub const HEADER: &str = "obdd-program 1";

pub fn encode_program(p: &ObddProgram) -> String {
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = usize>| it.map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    // writes to a String cannot fail
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "kind: {}", p.kind());
    let _ = writeln!(out, "n: {}", p.n());
    let _ = writeln!(out, "order: {}", join(&mut p.order().one_based().into_iter()));
    let _ = writeln!(out, "stable: {}", p.is_stable());
    let _ = writeln!(out, "initial: {}", p.initial() + 1);
    let _ = writeln!(out, "accept: {}", join(&mut p.accept().iter().map(|a| a + 1)));
    for (j, level) in p.levels().iter().enumerate() {
        let _ = writeln!(
            out,
            "level {} {} {}",
            j + 1,
            level.source_width(),
            level.target_width()
        );
        for (bit, t) in [(0, &level.on0), (1, &level.on1)] {
            encode_transition(&mut out, bit, t);
        }
    }
    out
}

fn encode_transition(out: &mut String, bit: u8, t: &Transition) {
    match t {
        Transition::Map { targets, .. } => {
            let cells: Vec<String> = targets.iter().map(|d| (d + 1).to_string()).collect();
            let _ = writeln!(out, "on{bit} map {}", cells.join(" "));
        }
        Transition::Relation { targets, .. } => {
            let cells: Vec<String> = targets
                .iter()
                .map(|set| {
                    let inner: Vec<String> = set.iter().map(|d| (d + 1).to_string()).collect();
                    format!("{{{}}}", inner.join(","))
                })
                .collect();
            let _ = writeln!(out, "on{bit} relation {}", cells.join(" "));
        }
        Transition::Stochastic(m) => {
            let _ = writeln!(out, "on{bit} stochastic");
            for r in m.row_iter() {
                let cells: Vec<String> = r.iter().map(|x| format!("{x:.16e}")).collect();
                let _ = writeln!(out, "row {}", cells.join(" "));
            }
        }
        Transition::Unitary(m) => {
            let _ = writeln!(out, "on{bit} unitary");
            for r in m.row_iter() {
                let cells: Vec<String> = r.iter().map(|z| format!("{:.16e},{:.16e}", z.re, z.im)).collect();
                let _ = writeln!(out, "row {}", cells.join(" "));
            }
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(Error::parse(
                self.last + 1,
                format!("unexpected end of document, expected {what}"),
            )),
        }
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, line) = self.next(key)?;
        match line.split_once(':') {
            Some((k, v)) if k.trim() == key => Ok((n, v.trim())),
            _ => Err(Error::parse(n, format!("expected `{key}: …`"))),
        }
    }
}

fn number<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{s}`")))
}

fn one_based(line: usize, s: &str, what: &str) -> Result<usize> {
    let v: usize = number(line, s, what)?;
    v.checked_sub(1)
        .ok_or_else(|| Error::parse(line, format!("{what} must be at least 1")))
}

fn list(line: usize, s: &str, what: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| one_based(line, x, what)).collect()
}

pub fn decode_program(text: &str) -> Result<ObddProgram> {
    let mut lines = Lines::new(text);
    let (n0, header) = lines.next("header")?;
    if header != HEADER {
        return Err(Error::parse(n0, format!("expected header `{HEADER}`")));
    }
    let (ln, kind) = lines.field("kind")?;
    let kind: ProgramKind = kind
        .parse()
        .map_err(|_| Error::parse(ln, format!("unknown kind `{kind}`")))?;
    let (ln, n) = lines.field("n")?;
    let n: usize = number(ln, n, "n")?;
    let (ln, order) = lines.field("order")?;
    let order =
        VariableOrder::new(list(ln, order, "order entry")?).map_err(|e| Error::parse(ln, e.to_string()))?;
    if order.len() != n {
        return Err(Error::parse(
            ln,
            format!("order has {} entries, n is {n}", order.len()),
        ));
    }
    let (ln, stable) = lines.field("stable")?;
    let stable: bool = number(ln, stable, "stable flag")?;
    let (ln, initial) = lines.field("initial")?;
    let initial = one_based(ln, initial, "initial node")?;
    let (ln, accept) = lines.field("accept")?;
    let accept = list(ln, accept, "accepting node")?;

    let mut levels = Vec::with_capacity(n);
    for j in 1..=n {
        let (ln, line) = lines.next("a level")?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [tag, idx, from, to] = parts.as_slice() else {
            return Err(Error::parse(ln, "expected `level j from to`"));
        };
        if *tag != "level" || number::<usize>(ln, idx, "level index")? != j {
            return Err(Error::parse(ln, format!("expected `level {j} …`")));
        }
        let from: usize = number(ln, from, "source width")?;
        let to: usize = number(ln, to, "target width")?;
        let on0 = decode_transition(&mut lines, 0, from, to)?;
        let on1 = decode_transition(&mut lines, 1, from, to)?;
        levels.push(LevelTransition::new(on0, on1));
    }
    if let Some((ln, _)) = lines.inner.next() {
        return Err(Error::parse(ln, "trailing content after the last level"));
    }
    ObddProgram::new(kind, order, levels, initial, accept, stable)
}

fn decode_transition(lines: &mut Lines<'_>, bit: u8, from: usize, to: usize) -> Result<Transition> {
    let (ln, line) = lines.next(&format!("on{bit}"))?;
    let (tag, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    if tag != format!("on{bit}") {
        return Err(Error::parse(ln, format!("expected `on{bit} …`")));
    }
    let rest = rest.trim();
    let (shape, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let cells: Vec<&str> = body.split_whitespace().collect();
    let check_count = |got: usize| {
        if got == from {
            Ok(())
        } else {
            Err(Error::parse(ln, format!("expected {from} entries, found {got}")))
        }
    };
    match shape {
        "map" => {
            check_count(cells.len())?;
            let targets = cells
                .iter()
                .map(|c| one_based(ln, c, "target"))
                .collect::<Result<_>>()?;
            Ok(Transition::Map { targets, width: to })
        }
        "relation" => {
            check_count(cells.len())?;
            let targets = cells
                .iter()
                .map(|c| {
                    let inner = c
                        .strip_prefix('{')
                        .and_then(|c| c.strip_suffix('}'))
                        .ok_or_else(|| Error::parse(ln, format!("expected `{{…}}`, found `{c}`")))?;
                    list(ln, inner, "target")
                })
                .collect::<Result<_>>()?;
            Ok(Transition::Relation { targets, width: to })
        }
        "stochastic" => {
            let rows = matrix_rows(lines, to, from, |ln, s| number::<f64>(ln, s, "entry"))?;
            Ok(Transition::Stochastic(DMatrix::from_row_iterator(to, from, rows)))
        }
        "unitary" => {
            let rows = matrix_rows(lines, to, from, |ln, s| {
                let (re, im) = s
                    .split_once(',')
                    .ok_or_else(|| Error::parse(ln, format!("expected `re,im`, found `{s}`")))?;
                Ok(Complex64::new(
                    number(ln, re, "real part")?,
                    number(ln, im, "imaginary part")?,
                ))
            })?;
            Ok(Transition::Unitary(DMatrix::from_row_iterator(to, from, rows)))
        }
        other => Err(Error::parse(ln, format!("unknown transition shape `{other}`"))),
    }
}

fn matrix_rows<T>(
    lines: &mut Lines<'_>,
    rows: usize,
    cols: usize,
    entry: impl Fn(usize, &str) -> Result<T>,
) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (ln, line) = lines.next("a matrix row")?;
        let Some(body) = line.strip_prefix("row") else {
            return Err(Error::parse(ln, "expected `row …`"));
        };
        let cells: Vec<&str> = body.split_whitespace().collect();
        if cells.len() != cols {
            return Err(Error::parse(
                ln,
                format!("expected {cols} entries, found {}", cells.len()),
            ));
        }
        for c in cells {
            out.push(entry(ln, c)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::parse_bits;
    use crate::constructions::*;

    #[test]
    fn round_trips() {
        let programs = [
            build_det_mod(3, 6).unwrap(),
            build_nobdd_noto_fingerprint(4, 6).unwrap(),
            build_quantum_partialmod(1, 4).unwrap(),
            build_det_partialmod(1, 5)
                .unwrap()
                .lift_to_probabilistic()
                .unwrap(),
            build_det_notpal(5).unwrap(),
            build_det_eqs(4, 5).unwrap(),
        ];
        for p in programs {
            let text = encode_program(&p);
            let q = decode_program(&text).unwrap();
            assert_eq!(p, q, "{text}");
        }
    }

    #[test]
    fn quantum_round_trip_simulates_identically() {
        let p = build_quantum_partialmod(1, 4).unwrap();
        let q = decode_program(&encode_program(&p)).unwrap();
        let x = parse_bits("1111").unwrap();
        assert!((p.simulate(&x).unwrap() - q.simulate(&x).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn bad_column_names_level() {
        let p = build_det_mod(2, 4).unwrap().lift_to_probabilistic().unwrap();
        let text = encode_program(&p);
        // halve one entry of the first row of level 2
        let mut seen = 0;
        let doctored: Vec<String> = text
            .lines()
            .map(|l| {
                if l.starts_with("level 2") {
                    seen = 1;
                } else if seen == 1 && l.starts_with("row") {
                    seen = 2;
                    return "row 5.0000000000000000e-1 0.0000000000000000e0".to_string();
                }
                l.to_string()
            })
            .collect();
        let err = decode_program(&doctored.join("\n")).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("level 2"), "{msg}");
        assert!(msg.contains("sums to 0.5"), "{msg}");
    }

    #[test]
    fn parse_errors_carry_lines() {
        let cases = [
            ("", 1),
            ("obdd-program 2", 1),
            ("obdd-program 1\nkind: classical", 2),
            ("obdd-program 1\nkind: deterministic\nn: 1\norder: 1\nstable: false\ninitial: 1\naccept: 1\nlevel 1 1 2\non0 map 3 1", 9),
        ];
        for (text, line) in cases {
            match decode_program(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                Err(Error::InvalidProgram(_)) if line == 9 => {}
                other => panic!("{text}: {other:?}"),
            }
        }
        let commented = "# a comment\nobdd-program 1\nkind: deterministic\nn: 1\norder: 1\nstable: true\n\
                         initial: 1\naccept: 1\nlevel 1 1 1 # trailing\non0 map 1\non1 map 1\n";
        assert_eq!(decode_program(commented).unwrap().n(), 1);
    }
}
