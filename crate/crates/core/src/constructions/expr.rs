use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ConstructionError;

/// Every shipped game family with its parameters.
///
/// Serializes as `{"construction": <kebab-name>, "params": {...}}` and
/// parses from expressions like `copies(pairs(3),3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "construction", content = "params", rename_all = "kebab-case")]
pub enum Construction {
    OddComposite { p: usize, q: usize },
    Pairs { b: usize },
    PairsImplicit { b: usize },
    EvenGeneral { a: usize, b: usize },
    Torus { q: usize, d: usize },
    Copies { base: Box<Construction>, c: usize },
    Superset { base: Box<Construction>, r: usize },
    ProductTorus { d: usize },
    Affine { n: usize, bases: Vec<Vec<usize>> },
    Cycle { n: usize },
    Complete { n: usize },
    Circulant { n: usize, bases: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq)]
enum Arg {
    Int(usize),
    List(Vec<usize>),
    Game(Construction),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> ConstructionError {
        ConstructionError::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ConstructionError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(&f) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn int(&mut self) -> Result<usize, ConstructionError> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits.parse().map_err(|_| self.err("expected an integer"))
    }

    fn list(&mut self) -> Result<Vec<usize>, ConstructionError> {
        let close = match self.peek() {
            Some('[') => ']',
            Some('{') => '}',
            _ => return Err(self.err("expected a list")),
        };
        self.pos += 1;
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected ',' or end of list")),
            }
        }
    }

    fn arg(&mut self) -> Result<Arg, ConstructionError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.int().map(Arg::Int),
            Some('[') | Some('{') => self.list().map(Arg::List),
            Some(c) if c.is_ascii_alphabetic() => self.expr().map(Arg::Game),
            _ => Err(self.err("expected an argument")),
        }
    }

    fn expr(&mut self) -> Result<Construction, ConstructionError> {
        let name = self
            .take_while(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
            .to_ascii_lowercase()
            .replace('_', "-");
        if name.is_empty() {
            return Err(self.err("expected a construction name"));
        }
        self.expect('(')?;
        let mut args = Vec::new();
        if self.peek() != Some(')') {
            loop {
                args.push(self.arg()?);
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(')')?;
        build_from_args(&name, args)
    }
}

fn build_from_args(name: &str, args: Vec<Arg>) -> Result<Construction, ConstructionError> {
    use Arg::*;
    let bad = || ConstructionError::Parse(format!("bad arguments for {name}: {args:?}"));
    let c = match (name, args.as_slice()) {
        ("odd-composite" | "odd", [Int(p), Int(q)]) => Construction::OddComposite { p: *p, q: *q },
        ("pairs", [Int(b)]) => Construction::Pairs { b: *b },
        ("pairs-implicit", [Int(b)]) => Construction::PairsImplicit { b: *b },
        ("even-general" | "even", [Int(a), Int(b)]) => Construction::EvenGeneral { a: *a, b: *b },
        ("torus", [Int(q), Int(d)]) => Construction::Torus { q: *q, d: *d },
        ("copies", [Game(base), Int(c)]) => Construction::Copies {
            base: Box::new(base.clone()),
            c: *c,
        },
        ("superset", [Game(base), Int(r)]) => Construction::Superset {
            base: Box::new(base.clone()),
            r: *r,
        },
        ("product-torus" | "product", [Int(d)]) => Construction::ProductTorus { d: *d },
        ("affine", [Int(n)]) => Construction::Affine {
            n: *n,
            bases: super::affine::default_bases(*n)
                .ok_or_else(|| ConstructionError::Parse(format!("no default base sets for affine({n})")))?,
        },
        ("affine", [Int(n), rest @ ..]) if !rest.is_empty() => Construction::Affine {
            n: *n,
            bases: lists(rest).ok_or_else(bad)?,
        },
        ("cycle", [Int(n)]) => Construction::Cycle { n: *n },
        ("complete", [Int(n)]) => Construction::Complete { n: *n },
        ("circulant", [Int(n), rest @ ..]) if !rest.is_empty() => Construction::Circulant {
            n: *n,
            bases: lists(rest).ok_or_else(bad)?,
        },
        (
            "odd-composite" | "odd" | "pairs" | "pairs-implicit" | "even-general" | "even" | "torus" | "copies"
            | "superset" | "product-torus" | "product" | "affine" | "cycle" | "complete" | "circulant",
            _,
        ) => return Err(bad()),
        _ => return Err(ConstructionError::Unknown(name.to_string())),
    };
    Ok(c)
}

fn lists(args: &[Arg]) -> Option<Vec<Vec<usize>>> {
    args.iter()
        .map(|a| match a {
            Arg::List(v) => Some(v.clone()),
            _ => None,
        })
        .collect()
}

impl FromStr for Construction {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, ConstructionError> {
        let mut p = Parser { src: s, pos: 0 };
        let c = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(c)
    }
}

fn write_lists(f: &mut fmt::Formatter<'_>, bases: &[Vec<usize>]) -> fmt::Result {
    for b in bases {
        write!(f, ",[")?;
        for (i, x) in b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")?;
    }
    Ok(())
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::OddComposite { p, q } => write!(f, "odd-composite({p},{q})"),
            Construction::Pairs { b } => write!(f, "pairs({b})"),
            Construction::PairsImplicit { b } => write!(f, "pairs-implicit({b})"),
            Construction::EvenGeneral { a, b } => write!(f, "even-general({a},{b})"),
            Construction::Torus { q, d } => write!(f, "torus({q},{d})"),
            Construction::Copies { base, c } => write!(f, "copies({base},{c})"),
            Construction::Superset { base, r } => write!(f, "superset({base},{r})"),
            Construction::ProductTorus { d } => write!(f, "product-torus({d})"),
            Construction::Affine { n, bases } => {
                write!(f, "affine({n}")?;
                if super::affine::default_bases(*n).as_ref() != Some(bases) {
                    write_lists(f, bases)?;
                }
                write!(f, ")")
            }
            Construction::Cycle { n } => write!(f, "cycle({n})"),
            Construction::Complete { n } => write!(f, "complete({n})"),
            Construction::Circulant { n, bases } => {
                write!(f, "circulant({n}")?;
                write_lists(f, bases)?;
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in [
            "pairs(3)",
            "odd-composite(3,5)",
            "even-general(2,3)",
            "torus(3,2)",
            "copies(pairs(3),3)",
            "superset(copies(pairs(3),3),4)",
            "product-torus(1)",
            "affine(11)",
            "affine(7,[0,1,3])",
            "cycle(5)",
            "complete(4)",
            "circulant(8,[0,1,3])",
        ] {
            let c: Construction = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert_eq!(
            "torus( 3 , 1 )".parse::<Construction>().unwrap(),
            Construction::Torus { q: 3, d: 1 }
        );
        assert_eq!(
            "odd(3,3)".parse::<Construction>().unwrap().to_string(),
            "odd-composite(3,3)"
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "bogus(3)".parse::<Construction>(),
            Err(ConstructionError::Unknown(_))
        ));
        assert!("pairs(3".parse::<Construction>().is_err());
        assert!("pairs(3,4)".parse::<Construction>().is_err());
        assert!("pairs(3) x".parse::<Construction>().is_err());
        assert!("affine(17)".parse::<Construction>().is_err());
    }

    #[test]
    fn json_shape() {
        let c: Construction = "copies(pairs(3),3)".parse().unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            text,
            r#"{"construction":"copies","params":{"base":{"construction":"pairs","params":{"b":3}},"c":3}}"#
        );
        assert_eq!(serde_json::from_str::<Construction>(&text).unwrap(), c);
    }
}
