//! `1/2 e1 e2* + v3`: sums of optionally scaled products of vertex, edge
//! and ghost-edge names, separated by whitespace.

use num_rational::BigRational;
use num_traits::One;

use super::{Lpa, LpaElement, LpaError};

fn err(text: &str, reason: impl Into<String>) -> LpaError {
    LpaError::Parse { text: text.to_string(), reason: reason.into() }
}

fn parse_scalar(tok: &str) -> Option<BigRational> {
    if !tok.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
        return None;
    }
    tok.parse::<BigRational>().ok()
}

fn factor(lpa: &Lpa, tok: &str, whole: &str) -> Result<LpaElement, LpaError> {
    let g = lpa.graph();
    if let Some(name) = tok.strip_suffix('*') {
        let e = g.edge_ix(name).ok_or_else(|| err(whole, format!("unknown edge {name:?}")))?;
        return Ok(lpa.ghost(e));
    }
    if let Some(v) = g.vertex_ix(tok) {
        return Ok(lpa.vertex(v));
    }
    if let Some(e) = g.edge_ix(tok) {
        return Ok(lpa.edge(e));
    }
    Err(err(whole, format!("unknown vertex or edge {tok:?}")))
}

pub(crate) fn parse(lpa: &Lpa, text: &str) -> Result<LpaElement, LpaError> {
    let mut total = lpa.zero();
    let mut sign = BigRational::one();
    let mut term: Option<(BigRational, Vec<LpaElement>)> = None;

    let flush = |total: &mut LpaElement, term: Option<(BigRational, Vec<LpaElement>)>| {
        if let Some((c, fs)) = term {
            *total = total.add(&lpa.product(fs.iter()).scale(&c));
        }
    };

    for tok in text.split_whitespace() {
        match tok {
            "+" | "-" => {
                if term.is_none() && tok == "+" {
                    return Err(err(text, "operator without left operand"));
                }
                flush(&mut total, term.take());
                sign = if tok == "-" { -BigRational::one() } else { BigRational::one() };
            }
            "0" if term.is_none() => {
                term = Some((BigRational::from_integer(0.into()), vec![]));
            }
            _ => {
                let (c, fs) = term.get_or_insert_with(|| (sign.clone(), vec![]));
                if fs.is_empty() && parse_scalar(tok).is_some() {
                    *c *= parse_scalar(tok).expect("checked");
                } else if let Some(rest) = tok.strip_prefix('-').filter(|r| !r.is_empty() && fs.is_empty()) {
                    *c = -c.clone();
                    fs.push(factor(lpa, rest, text)?);
                } else {
                    fs.push(factor(lpa, tok, text)?);
                }
            }
        }
    }
    if term.is_none() {
        return if text.trim().is_empty() { Err(err(text, "empty input")) } else { Err(err(text, "dangling operator")) };
    }
    flush(&mut total, term);
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn lpa() -> Lpa {
        Lpa::new(
            &Graph::from_names(&["v1", "v2", "v3"], &[("e1", "v1", "v2"), ("e2", "v3", "v2"), ("e3", "v2", "v3")])
                .unwrap(),
        )
    }

    #[test]
    fn round_trip() {
        let a = lpa();
        let x = a.parse("1/2 e1 e2* + v3").unwrap();
        assert_eq!(a.to_text(&x), "v3 + 1/2 e1 e2*");
        assert_eq!(a.parse(&a.to_text(&x)).unwrap(), x);
        let y = a.parse("-e1 - 2/3 e3*").unwrap();
        assert_eq!(a.to_text(&y), "-2/3 e3* - e1");
        assert_eq!(a.parse(&a.to_text(&y)).unwrap(), y);
    }

    #[test]
    fn products_reduce() {
        let a = lpa();
        assert!(a.parse("e1 e1").unwrap().is_zero());
        assert_eq!(a.parse("e1* e1").unwrap(), a.vertex(1));
        assert!(a.parse("0").unwrap().is_zero());
        assert_eq!(a.parse("2 v1 - v1").unwrap(), a.vertex(0));
    }

    #[test]
    fn errors() {
        let a = lpa();
        assert!(a.parse("").is_err());
        assert!(a.parse("x").is_err());
        assert!(a.parse("v1 +").is_err());
        assert!(a.parse("+ v1").is_err());
        assert!(a.parse("q*").is_err());
    }
}
