//! The function families: evaluators, count profiles, the EQS marker/value
//! split and the truth-table text format.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::bits::{bits_from_mask, format_bits, mask_from_bits, ones_in_window, parse_bits};
use crate::error::{Error, Result};

/// Largest input length for which full truth tables are materialized.
pub const TABLE_CAP: usize = 24;

/// Value of a possibly partial Boolean function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Zero,
    One,
    Undefined,
}

impl Outcome {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::One
        } else {
            Outcome::Zero
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Outcome::Zero => '0',
            Outcome::One => '1',
            Outcome::Undefined => '*',
        }
    }

    pub fn is_defined(self) -> bool {
        self != Outcome::Undefined
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionName {
    PartialMod,
    Mod,
    NotO,
    NotOk,
    NotSquare,
    NotPower,
    Eqs,
    NotEqs,
    NotPal,
}

impl FunctionName {
    pub const ALL: [FunctionName; 9] = [
        FunctionName::PartialMod,
        FunctionName::Mod,
        FunctionName::NotO,
        FunctionName::NotOk,
        FunctionName::NotSquare,
        FunctionName::NotPower,
        FunctionName::Eqs,
        FunctionName::NotEqs,
        FunctionName::NotPal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionName::PartialMod => "PartialMOD",
            FunctionName::Mod => "MOD",
            FunctionName::NotO => "NotO",
            FunctionName::NotOk => "NotOk",
            FunctionName::NotSquare => "NotSQUARE",
            FunctionName::NotPower => "NotPOWER",
            FunctionName::Eqs => "EQS",
            FunctionName::NotEqs => "NotEQS",
            FunctionName::NotPal => "NotPAL",
        }
    }

    pub fn takes_k(self) -> bool {
        matches!(
            self,
            FunctionName::PartialMod
                | FunctionName::Mod
                | FunctionName::NotOk
                | FunctionName::Eqs
                | FunctionName::NotEqs
        )
    }
}

impl fmt::Display for FunctionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        FunctionName::ALL
            .into_iter()
            .find(|f| f.as_str().to_ascii_lowercase() == key)
            .ok_or_else(|| Error::param(format!("unknown function `{s}`")))
    }
}

/// A fully enumerated function, indexed by input mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    values: Arc<[Outcome]>,
}

impl TruthTable {
    pub fn new(n: usize, values: Vec<Outcome>) -> Result<Self> {
        if n == 0 || n > TABLE_CAP {
            return Err(Error::param(format!("table arity {n} outside 1..={TABLE_CAP}")));
        }
        if values.len() != 1 << n {
            return Err(Error::param(format!(
                "table for {n} inputs needs {} rows, got {}",
                1u64 << n,
                values.len()
            )));
        }
        Ok(TruthTable {
            n,
            values: values.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Outcome] {
        &self.values
    }

    /// One line per input, `<bitstring> <0|1|*>`, inputs in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity((self.n + 3) << self.n);
        for lex in 0..1u64 << self.n {
            // lexicographic order puts ν₁ in the most significant position
            let bits: Vec<bool> = (0..self.n).map(|i| lex >> (self.n - 1 - i) & 1 == 1).collect();
            let v = self.values[mask_from_bits(&bits) as usize];
            out.push_str(&format_bits(&bits));
            out.push(' ');
            out.push(v.symbol());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut rows: HashMap<u64, Outcome> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(bits), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::parse(line_no, "expected `<bitstring> <0|1|*>`"));
            };
            let bits = parse_bits(bits).map_err(|e| Error::parse(line_no, e.to_string()))?;
            match n {
                None => {
                    if bits.is_empty() || bits.len() > TABLE_CAP {
                        return Err(Error::parse(line_no, "bad input length"));
                    }
                    n = Some(bits.len());
                }
                Some(n) if n != bits.len() => {
                    return Err(Error::parse(
                        line_no,
                        format!("input has {} bits, expected {n}", bits.len()),
                    ))
                }
                _ => {}
            }
            let value = match value {
                "0" => Outcome::Zero,
                "1" => Outcome::One,
                "*" => Outcome::Undefined,
                other => return Err(Error::parse(line_no, format!("bad value `{other}`"))),
            };
            if rows.insert(mask_from_bits(&bits), value).is_some() {
                return Err(Error::parse(line_no, "duplicate input"));
            }
        }
        let n = n.ok_or_else(|| Error::parse(0, "empty truth table"))?;
        if rows.len() != 1 << n {
            return Err(Error::parse(
                0,
                format!("table lists {} of {} inputs", rows.len(), 1u64 << n),
            ));
        }
        let values = (0..1u64 << n).map(|m| rows[&m]).collect();
        TruthTable::new(n, values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Family {
    PartialMod { k: usize },
    Mod { k: usize },
    NotO,
    NotOk { k: usize },
    NotSquare,
    NotPower,
    Eqs { k: usize },
    NotEqs { k: usize },
    NotPal,
    Table(TruthTable),
}

/// A (possibly partial) Boolean function on `n` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSpec {
    family: Family,
    n: usize,
}

/// Outcome as a function of the number of ones among the first `window` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricProfile {
    pub window: usize,
    /// `outcomes[c]` is the value on inputs with `c` ones in the window.
    pub outcomes: Vec<Outcome>,
}

/// Value bits of the first `k` input bits, routed by their marker bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkerValueSplit {
    /// Value bits whose marker is 0.
    pub alpha: Vec<bool>,
    /// Value bits whose marker is 1.
    pub beta: Vec<bool>,
}

fn check_eqs_k(k: usize, n: usize) -> Result<()> {
    if k < 4 || !k.is_multiple_of(4) || k > n {
        return Err(Error::param(format!(
            "EQS needs k divisible by 4 with 4 <= k <= n (k={k}, n={n})"
        )));
    }
    Ok(())
}

/// Routes the value bits among the first `k` bits of `input` by marker.
pub fn split_marker_value(input: &[bool], k: usize) -> Result<MarkerValueSplit> {
    check_eqs_k(k, input.len())?;
    let mut split = MarkerValueSplit {
        alpha: Vec::with_capacity(k / 2),
        beta: Vec::with_capacity(k / 2),
    };
    for pair in input[..k].chunks_exact(2) {
        if pair[0] {
            split.beta.push(pair[1]);
        } else {
            split.alpha.push(pair[1]);
        }
    }
    Ok(split)
}

fn eqs_mask(mask: u64, k: usize) -> bool {
    // α and β are equal iff they have the same length and the same bits in order
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for i in 0..k / 2 {
        let marker = mask >> (2 * i) & 1 == 1;
        let value = mask >> (2 * i + 1) & 1 == 1;
        if marker {
            b.push(value);
        } else {
            a.push(value);
        }
    }
    a == b
}

impl FunctionSpec {
    /// Builds a named family member; `k` is required exactly for the
    /// parameterized families.
    pub fn new(name: FunctionName, k: Option<usize>, n: usize) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::param(format!("n={n} outside 1..=64")));
        }
        let need_k = || k.ok_or_else(|| Error::param(format!("{name} needs a parameter k")));
        if !name.takes_k() && k.is_some() {
            return Err(Error::param(format!("{name} takes no parameter k")));
        }
        let family = match name {
            FunctionName::PartialMod => {
                let k = need_k()?;
                if k > 62 {
                    return Err(Error::param("PartialMOD needs k <= 62"));
                }
                Family::PartialMod { k }
            }
            FunctionName::Mod => {
                let k = need_k()?;
                if !(k > 1 && 2 * k <= n) {
                    return Err(Error::param(format!("MOD needs 1 < k <= n/2 (k={k}, n={n})")));
                }
                Family::Mod { k }
            }
            FunctionName::NotO => Family::NotO,
            FunctionName::NotOk => {
                let k = need_k()?;
                if !(k > 1 && k % 2 == 0 && k <= n) {
                    return Err(Error::param(format!(
                        "NotOk needs even k with 1 < k <= n (k={k}, n={n})"
                    )));
                }
                Family::NotOk { k }
            }
            FunctionName::NotSquare => Family::NotSquare,
            FunctionName::NotPower => Family::NotPower,
            FunctionName::Eqs => {
                let k = need_k()?;
                check_eqs_k(k, n)?;
                Family::Eqs { k }
            }
            FunctionName::NotEqs => {
                let k = need_k()?;
                check_eqs_k(k, n)?;
                Family::NotEqs { k }
            }
            FunctionName::NotPal => Family::NotPal,
        };
        Ok(FunctionSpec { family, n })
    }

    pub fn from_table(table: TruthTable) -> Self {
        FunctionSpec {
            n: table.n(),
            family: Family::Table(table),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<FunctionName> {
        Some(match self.family {
            Family::PartialMod { .. } => FunctionName::PartialMod,
            Family::Mod { .. } => FunctionName::Mod,
            Family::NotO => FunctionName::NotO,
            Family::NotOk { .. } => FunctionName::NotOk,
            Family::NotSquare => FunctionName::NotSquare,
            Family::NotPower => FunctionName::NotPower,
            Family::Eqs { .. } => FunctionName::Eqs,
            Family::NotEqs { .. } => FunctionName::NotEqs,
            Family::NotPal => FunctionName::NotPal,
            Family::Table(_) => return None,
        })
    }

    pub fn k(&self) -> Option<usize> {
        match self.family {
            Family::PartialMod { k }
            | Family::Mod { k }
            | Family::NotOk { k }
            | Family::Eqs { k }
            | Family::NotEqs { k } => Some(k),
            _ => None,
        }
    }

    pub fn eval(&self, input: &[bool]) -> Outcome {
        assert_eq!(input.len(), self.n, "input length must match arity");
        self.eval_mask(mask_from_bits(input))
    }

    /// Evaluates the input packed as a mask (`νᵢ` at bit `i - 1`).
    pub fn eval_mask(&self, mask: u64) -> Outcome {
        let n = self.n;
        let ones = || ones_in_window(mask, n);
        match &self.family {
            Family::PartialMod { k } => {
                let modulus = 1u64 << (k + 1);
                let r = ones() as u64 % modulus;
                if r == 0 {
                    Outcome::One
                } else if r == modulus / 2 {
                    Outcome::Zero
                } else {
                    Outcome::Undefined
                }
            }
            Family::Mod { k } => Outcome::from_bool(ones() % k == 0),
            Family::NotO => Outcome::from_bool(2 * ones() != n),
            Family::NotOk { k } => Outcome::from_bool(2 * ones_in_window(mask, *k) != *k),
            Family::NotSquare => {
                let (o, z) = (ones(), n - ones());
                Outcome::from_bool(z * z != o)
            }
            Family::NotPower => {
                let (o, z) = (ones() as u64, (n - ones()) as u32);
                Outcome::from_bool(1u64.checked_shl(z) != Some(o))
            }
            Family::Eqs { k } => Outcome::from_bool(eqs_mask(mask, *k)),
            Family::NotEqs { k } => Outcome::from_bool(!eqs_mask(mask, *k)),
            Family::NotPal => {
                let pal = (0..n / 2).all(|i| (mask >> i & 1) == (mask >> (n - 1 - i) & 1));
                Outcome::from_bool(!pal)
            }
            Family::Table(t) => t.values()[mask as usize],
        }
    }

    pub fn truth_table(&self) -> Result<TruthTable> {
        if let Family::Table(t) = &self.family {
            return Ok(t.clone());
        }
        if self.n > TABLE_CAP {
            return Err(Error::CapExceeded {
                what: "truth-table arity",
                value: self.n as u64,
                cap: TABLE_CAP as u64,
            });
        }
        let values = (0..1u64 << self.n).map(|m| self.eval_mask(m)).collect();
        TruthTable::new(self.n, values)
    }

    /// True if no input maps to `*`.
    pub fn is_total(&self) -> bool {
        match &self.family {
            Family::PartialMod { k } => *k == 0,
            Family::Table(t) => t.values().iter().all(|v| v.is_defined()),
            _ => true,
        }
    }

    /// The count-to-outcome map when the function depends on its input only
    /// through the number of ones (in its first `window` bits).
    pub fn count_profile(&self) -> Option<SymmetricProfile> {
        let window = match &self.family {
            Family::PartialMod { .. }
            | Family::Mod { .. }
            | Family::NotO
            | Family::NotSquare
            | Family::NotPower => self.n,
            Family::NotOk { k } => *k,
            Family::Eqs { .. } | Family::NotEqs { .. } | Family::NotPal => return None,
            Family::Table(t) => {
                let mut seen: Vec<Option<Outcome>> = vec![None; t.n() + 1];
                for (mask, &v) in t.values().iter().enumerate() {
                    let c = (mask as u64).count_ones() as usize;
                    match seen[c] {
                        None => seen[c] = Some(v),
                        Some(prev) if prev != v => return None,
                        _ => {}
                    }
                }
                return Some(SymmetricProfile {
                    window: t.n(),
                    outcomes: seen.into_iter().map(|v| v.expect("every count occurs")).collect(),
                });
            }
        };
        let outcomes = (0..=window)
            .map(|c| self.eval_mask(if c == 0 { 0 } else { u64::MAX >> (64 - c) }))
            .collect();
        Some(SymmetricProfile { window, outcomes })
    }

    /// Evaluates a bit string written `ν₁…νₙ`.
    pub fn eval_str(&self, s: &str) -> Result<Outcome> {
        let bits = parse_bits(s)?;
        if bits.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: bits.len(),
            });
        }
        Ok(self.eval(&bits))
    }

    /// Iterator over all inputs as bit vectors, in mask order.
    pub fn inputs(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        (0..1u64 << self.n.min(TABLE_CAP)).map(move |m| bits_from_mask(m, self.n))
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.family, self.name(), self.k()) {
            (Family::Table(_), _, _) => write!(f, "table_{}", self.n),
            (_, Some(name), Some(k)) => write!(f, "{name}^{k}_{}", self.n),
            (_, Some(name), None) => write!(f, "{name}_{}", self.n),
            _ => unreachable!(),
        }
    }
}

/// Shorthand for [`FunctionSpec::new`].
pub fn make_function(name: FunctionName, k: Option<usize>, n: usize) -> Result<FunctionSpec> {
    FunctionSpec::new(name, k, n)
}
