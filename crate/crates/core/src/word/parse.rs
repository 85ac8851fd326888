//! Plain-text word specs:
//!
//! ```text
//! fibonacci
//! constant:b
//! mechanical:alpha=0.3819660113,rho=0,one=b
//! mechanical:alpha=silver
//! perturbed:fibonacci;flips=2,17,90
//! ```

use std::fmt;
use std::str::FromStr;

use super::{Decimal, Letter, Slope, WordError, WordSpec};

fn err(column: usize, message: impl Into<String>) -> WordError {
    WordError::Parse { column: column + 1, message: message.into() }
}

/// Re-anchors errors from a sub-parser at `offset` within the full text.
fn shift(e: WordError, offset: usize) -> WordError {
    match e {
        WordError::Parse { column, message } => WordError::Parse { column: column + offset, message },
        other => err(offset, other.to_string()),
    }
}

fn parse_at(s: &str, offset: usize) -> Result<WordSpec, WordError> {
    let (kind, body) = match s.split_once(':') {
        Some((k, b)) => (k, Some(b)),
        None => (s, None),
    };
    let body_at = offset + kind.len() + 1;
    match (kind, body) {
        ("fibonacci", None) => Ok(WordSpec::Fibonacci),
        ("constant", Some(b)) => match b {
            "a" => Ok(WordSpec::Constant(Letter::A)),
            "b" => Ok(WordSpec::Constant(Letter::B)),
            _ => Err(err(body_at, format!("expected letter a or b, found {b:?}"))),
        },
        ("mechanical", Some(b)) => parse_mechanical(b, body_at),
        ("perturbed", Some(b)) => {
            let Some((base, flips)) = b.rsplit_once(";flips=") else {
                return Err(err(body_at, "expected <base>;flips=<positions>"));
            };
            let base = parse_at(base, body_at)?;
            let flips_at = body_at + b.len() - flips.len();
            let mut positions = Vec::new();
            let mut col = flips_at;
            for item in flips.split(',').filter(|_| !flips.is_empty()) {
                let p = item.parse::<u64>().map_err(|_| err(col, format!("bad flip position {item:?}")))?;
                if p == 0 {
                    return Err(err(col, "flip positions start at 1"));
                }
                positions.push(p);
                col += item.len() + 1;
            }
            WordSpec::perturbed(base, positions).map_err(|e| shift(e, flips_at))
        }
        ("fibonacci", Some(_)) => Err(err(offset + kind.len(), "fibonacci takes no parameters")),
        ("constant" | "mechanical" | "perturbed", None) => {
            Err(err(offset + kind.len(), format!("{kind} needs parameters after ':'")))
        }
        _ => Err(err(offset, format!("unknown word kind {kind:?}"))),
    }
}

fn parse_mechanical(body: &str, offset: usize) -> Result<WordSpec, WordError> {
    let mut alpha = None;
    let mut rho = Decimal::ZERO;
    let mut one = Letter::B;
    let mut col = offset;
    for field in body.split(',') {
        let Some((key, value)) = field.split_once('=') else {
            return Err(err(col, format!("expected key=value, found {field:?}")));
        };
        let value_at = col + key.len() + 1;
        match key {
            "alpha" => alpha = Some(value.parse::<Slope>().map_err(|e| shift(e, value_at))?),
            "rho" => rho = value.parse::<Decimal>().map_err(|e| shift(e, value_at))?,
            "one" => {
                one = match value {
                    "a" => Letter::A,
                    "b" => Letter::B,
                    _ => return Err(err(value_at, format!("one must be a or b, found {value:?}"))),
                }
            }
            _ => return Err(err(col, format!("unknown mechanical parameter {key:?}"))),
        }
        col += field.len() + 1;
    }
    let alpha = alpha.ok_or_else(|| err(offset, "mechanical word needs alpha=<value>"))?;
    WordSpec::mechanical(alpha, rho, one).map_err(|e| shift(e, offset))
}

impl FromStr for WordSpec {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_at(s.trim(), 0)
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSpec::Constant(l) => write!(f, "constant:{l}"),
            WordSpec::Fibonacci => f.write_str("fibonacci"),
            WordSpec::Mechanical(m) => {
                write!(f, "mechanical:alpha={},rho={},one={}", m.alpha(), m.rho(), m.one())
            }
            WordSpec::Perturbed { base, flips } => {
                let flips: Vec<String> = flips.iter().map(u64::to_string).collect();
                write!(f, "perturbed:{base};flips={}", flips.join(","))
            }
        }
    }
}
