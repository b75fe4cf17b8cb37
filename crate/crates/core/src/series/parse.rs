use crate::error::{Error, Result};

/// Parse a list of `coeff*T^k` terms into `(coeff, k)` pairs. Terms are
/// separated by commas or written as a signed sum.
///
/// Accepted term shapes: `c*T^k`, `c*T`, `T^k`, `T`, `-T^k` and a bare
/// integer `c` (degree zero). Repeated degrees are summed by the caller.
pub fn parse_terms(text: &str) -> Result<Vec<(i128, usize)>> {
    let mut out = Vec::new();
    for raw in text.split(',') {
        let chunk: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        for term in split_sum(&chunk) {
            out.push(parse_term(term)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("no terms in series literal {text:?}")));
    }
    Ok(out)
}

/// Split `a+b-c` before each sign that is not part of an exponent or factor.
fn split_sum(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'^' | b'*' | b'+' | b'-') {
            parts.push(&s[start..i]);
            start = i;
        }
    }
    parts.push(&s[start..]);
    parts.into_iter().filter(|t| !t.is_empty()).collect()
}

fn parse_term(term: &str) -> Result<(i128, usize)> {
    let bad = || Error::Parse(format!("malformed series term {term:?}"));
    let term = term.strip_prefix('+').filter(|t| !t.is_empty()).unwrap_or(term);
    let Some(t_pos) = term.find(['T', 't']) else {
        return Ok((term.parse().map_err(|_| bad())?, 0));
    };
    let (head, tail) = term.split_at(t_pos);
    let coeff = match head.strip_suffix('*').unwrap_or(head) {
        "" | "+" => 1,
        "-" => -1,
        c => c.parse().map_err(|_| bad())?,
    };
    let exp = match &tail[1..] {
        "" => 1,
        e => e.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
    };
    Ok((coeff, exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_shapes() {
        assert_eq!(parse_terms("1*T^0, 3*T^2").unwrap(), vec![(1, 0), (3, 2)]);
        assert_eq!(parse_terms("T, -T^3, 5, -2*T").unwrap(), vec![(1, 1), (-1, 3), (5, 0), (-2, 1)]);
        assert_eq!(parse_terms(" 7 * T ^ 4 ").unwrap(), vec![(7, 4)]);
        assert_eq!(parse_terms("3 + T^2 - 2*T").unwrap(), vec![(3, 0), (1, 2), (-2, 1)]);
        assert_eq!(parse_terms("-3*T^0 + -1*T").unwrap(), vec![(-3, 0), (-1, 1)]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("").is_err());
        assert!(parse_terms("3*X^2").is_err());
        assert!(parse_terms("3*T2").is_err());
        assert!(parse_terms("a*T^2").is_err());
    }
}
