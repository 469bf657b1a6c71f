//! Text syntax for points, rationals, symbol declarations and equations.
//!
//! A coordinate is a signed sum of terms, each term a rational (`3`, `-2/5`),
//! a symbol (`r2`) or a rational times a symbol (`1/2*r2`). Equations use the
//! same syntax with the variables `y1`, …, `yn` on either side of one `=`.

use std::fmt;

use affine_orbit::{Int, Rational, SymBasis, SymPoint};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = Result<T, ParseError>;

fn err<T>(msg: impl Into<String>) -> Parsed<T> {
    Err(ParseError(msg.into()))
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(Int),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
}

fn tokenize(text: &str) -> Parsed<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("ascii digits")));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return err(format!("unexpected character {other:?} in {text:?}")),
        }
    }
    Ok(out)
}

/// Parses a signed sum of terms into a coefficient vector of length `width`;
/// slot 0 holds the constant and `resolve` maps names to the other slots.
fn parse_linear(
    text: &str,
    width: usize,
    resolve: &dyn Fn(&str) -> Option<usize>,
) -> Parsed<Vec<Rational>> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return err("empty expression");
    }
    let mut coeffs = vec![Rational::zero(); width];
    let mut pos = 0;
    let mut first = true;
    while pos < tokens.len() {
        let mut negative = false;
        match tokens[pos] {
            Token::Plus => pos += 1,
            Token::Minus => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            _ => return err(format!("expected + or - in {text:?}")),
        }
        first = false;

        let mut value: Option<Rational> = None;
        if let Some(Token::Int(num)) = tokens.get(pos) {
            pos += 1;
            let mut r = Rational::from_integer(num.clone());
            if tokens.get(pos) == Some(&Token::Slash) {
                match tokens.get(pos + 1) {
                    Some(Token::Int(den)) if !den.is_zero() => {
                        r = Rational::new(num.clone(), den.clone());
                        pos += 2;
                    }
                    _ => return err(format!("bad denominator in {text:?}")),
                }
            }
            value = Some(r);
            if tokens.get(pos) == Some(&Token::Star) {
                pos += 1;
                if !matches!(tokens.get(pos), Some(Token::Ident(_))) {
                    return err(format!("expected a name after * in {text:?}"));
                }
            }
        }
        let slot = match tokens.get(pos) {
            Some(Token::Ident(name)) => {
                pos += 1;
                resolve(name).ok_or_else(|| ParseError(format!("unknown name {name:?}")))?
            }
            _ if value.is_some() => 0,
            _ => return err(format!("expected a number or a name in {text:?}")),
        };
        let mut term = value.unwrap_or_else(|| Rational::from_integer(Int::from(1)));
        if negative {
            term = -term;
        }
        coeffs[slot] += term;
    }
    Ok(coeffs)
}

pub fn parse_rational(text: &str) -> Parsed<Rational> {
    let v = parse_linear(text, 1, &|_| None)?;
    Ok(v.into_iter().next().expect("width 1"))
}

/// `name=value` declarations (or bare names) for the symbol basis.
pub fn parse_basis(decls: &[String]) -> Parsed<SymBasis> {
    let mut names = Vec::new();
    let mut values = Vec::new();
    for decl in decls {
        match decl.split_once('=') {
            Some((name, value)) => {
                let v: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| ParseError(format!("bad value in --sym {decl:?}")))?;
                names.push(name.trim().to_string());
                values.push(v);
            }
            None => names.push(decl.trim().to_string()),
        }
    }
    let basis = if values.is_empty() {
        SymBasis::new(names)
    } else if values.len() == names.len() {
        SymBasis::with_values(names.into_iter().zip(values))
    } else {
        return err("give values for all symbols or for none");
    };
    basis.map_err(|e| ParseError(e.to_string()))
}

/// A comma-separated point with exactly `n` coordinates.
pub fn parse_point(text: &str, n: usize, basis: &SymBasis) -> Parsed<SymPoint> {
    let width = basis.k() + 1;
    let coords = text
        .split(',')
        .map(|c| parse_linear(c, width, &|name| basis.index_of(name)))
        .collect::<Parsed<Vec<_>>>()?;
    if coords.len() != n {
        return err(format!("expected {n} coordinates, got {}", coords.len()));
    }
    SymPoint::new(basis.clone(), coords).map_err(|e| ParseError(e.to_string()))
}

fn variable_index(name: &str, n: usize) -> Option<usize> {
    let i: usize = name.strip_prefix('y')?.parse().ok()?;
    (1..=n).contains(&i).then_some(i)
}

/// `lhs = rhs` over `y1..yn`, returned as `(h, r)` meaning `<h, y> = r`.
pub fn parse_equation(text: &str, n: usize) -> Parsed<(Vec<Rational>, Rational)> {
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| ParseError(format!("equation {text:?} has no '='")))?;
    if rhs.contains('=') {
        return err(format!("equation {text:?} has more than one '='"));
    }
    let resolve = |name: &str| variable_index(name, n);
    let l = parse_linear(lhs, n + 1, &resolve)?;
    let r = parse_linear(rhs, n + 1, &resolve)?;
    let h: Vec<Rational> = (1..=n).map(|i| &l[i] - &r[i]).collect();
    Ok((h, &r[0] - &l[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(Int::from(p), Int::from(d))
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("2/5").unwrap(), q(2, 5));
        assert_eq!(parse_rational("-3").unwrap(), q(-3, 1));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), q(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn points() {
        let p = parse_point("1/5, 0", 2, &SymBasis::rational()).unwrap();
        assert_eq!(p.coords(), &[vec![q(1, 5)], vec![q(0, 1)]]);

        let b = parse_basis(&["r2=1.41421356".to_string()]).unwrap();
        let p = parse_point("r2, 1 + r2", 2, &b).unwrap();
        assert_eq!(p.coords(), &[vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]]);

        let p = parse_point("-1/2*r2 - 3 + r2", 1, &b).unwrap();
        assert_eq!(p.coords(), &[vec![q(-3, 1), q(1, 2)]]);

        assert!(parse_point("1/5", 2, &SymBasis::rational()).is_err());
        assert!(parse_point("pi", 1, &b).is_err());
        assert!(parse_point("1 2", 1, &b).is_err());
        assert!(parse_point("2*", 1, &b).is_err());
    }

    #[test]
    fn equations() {
        assert_eq!(parse_equation("y2 = 1/5", 2).unwrap(), (vec![q(0, 1), q(1, 1)], q(1, 5)));
        assert_eq!(
            parse_equation("y1 = y2 + 1", 2).unwrap(),
            (vec![q(1, 1), q(-1, 1)], q(1, 1))
        );
        assert_eq!(parse_equation("2*y1 - 1 = 0", 1).unwrap(), (vec![q(2, 1)], q(1, 1)));
        assert!(parse_equation("y3 = 0", 2).is_err());
        assert!(parse_equation("y1", 2).is_err());
        assert!(parse_equation("y1 = 0 = 1", 2).is_err());
    }

    #[test]
    fn symbol_declarations() {
        assert_eq!(parse_basis(&["a".into(), "b".into()]).unwrap().k(), 2);
        assert!(parse_basis(&["a=1.5".into(), "b".into()]).is_err());
        assert!(parse_basis(&["a=x".into()]).is_err());
        assert!(parse_basis(&["a".into(), "a".into()]).is_err());
    }
}
