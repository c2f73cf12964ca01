use std::fmt;

use super::CharclassError;

/// Catalog manifolds that may appear as leaves of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Sphere(u32),
    Torus(u32),
    RealProjective(u32),
    ComplexProjective(u32),
    SpecialUnitary(u32),
    /// The Wu manifold `SU(3)/SO(3)`.
    Wu,
    /// Degree `d` hypersurface in `CP^3`.
    SigmaD(u32),
    Point,
}

impl Atom {
    pub fn dimension(&self) -> u32 {
        match *self {
            Atom::Sphere(n) | Atom::Torus(n) | Atom::RealProjective(n) => n,
            Atom::ComplexProjective(n) => 2 * n,
            Atom::SpecialUnitary(n) => n * n - 1,
            Atom::Wu => 5,
            Atom::SigmaD(_) => 4,
            Atom::Point => 0,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Sphere(n) => write!(f, "S({n})"),
            Atom::Torus(n) => write!(f, "T({n})"),
            Atom::RealProjective(n) => write!(f, "RP({n})"),
            Atom::ComplexProjective(n) => write!(f, "CP({n})"),
            Atom::SpecialUnitary(n) => write!(f, "SU({n})"),
            Atom::Wu => write!(f, "Wu"),
            Atom::SigmaD(d) => write!(f, "SigmaD({d})"),
            Atom::Point => write!(f, "Point"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldExpr {
    Atom(Atom),
    Product(Box<ManifoldExpr>, Box<ManifoldExpr>),
    DisjointUnion(Box<ManifoldExpr>, Box<ManifoldExpr>),
    Reversed(Box<ManifoldExpr>),
}

impl ManifoldExpr {
    pub fn dimension(&self) -> u32 {
        match self {
            ManifoldExpr::Atom(a) => a.dimension(),
            ManifoldExpr::Product(a, b) => a.dimension() + b.dimension(),
            ManifoldExpr::DisjointUnion(a, _) => a.dimension(),
            ManifoldExpr::Reversed(a) => a.dimension(),
        }
    }

    /// Flattens into a signed list of connected products.
    pub fn components(&self) -> Vec<Component> {
        match self {
            ManifoldExpr::Atom(Atom::Point) => vec![Component {
                reversed: false,
                atoms: Vec::new(),
            }],
            ManifoldExpr::Atom(a) => vec![Component {
                reversed: false,
                atoms: vec![*a],
            }],
            ManifoldExpr::DisjointUnion(a, b) => {
                let mut out = a.components();
                out.extend(b.components());
                out
            }
            ManifoldExpr::Reversed(a) => a
                .components()
                .into_iter()
                .map(|c| Component {
                    reversed: !c.reversed,
                    ..c
                })
                .collect(),
            ManifoldExpr::Product(a, b) => {
                let (ca, cb) = (a.components(), b.components());
                let mut out = Vec::with_capacity(ca.len() * cb.len());
                for x in &ca {
                    for y in &cb {
                        let mut atoms = x.atoms.clone();
                        atoms.extend_from_slice(&y.atoms);
                        out.push(Component {
                            reversed: x.reversed ^ y.reversed,
                            atoms,
                        });
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldExpr::Atom(a) => write!(f, "{a}"),
            ManifoldExpr::Product(a, b) => {
                let wrap = |e: &ManifoldExpr| match e {
                    ManifoldExpr::DisjointUnion(..) => format!("({e})"),
                    _ => e.to_string(),
                };
                write!(f, "{} * {}", wrap(a), wrap(b))
            }
            ManifoldExpr::DisjointUnion(a, b) => write!(f, "{a} + {b}"),
            ManifoldExpr::Reversed(a) => match **a {
                ManifoldExpr::Atom(_) | ManifoldExpr::Reversed(_) => write!(f, "-{a}"),
                _ => write!(f, "-({a})"),
            },
        }
    }
}

/// A product of atoms with an orientation sign; `Point` factors are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub reversed: bool,
    pub atoms: Vec<Atom>,
}

impl Component {
    pub fn dimension(&self) -> u32 {
        self.atoms.iter().map(Atom::dimension).sum()
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = if self.atoms.is_empty() {
            "Point".to_string()
        } else {
            self.atoms
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" * ")
        };
        if self.reversed {
            write!(f, "-({body})")
        } else {
            write!(f, "{body}")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(u64),
    LParen,
    RParen,
    Plus,
    Star,
    Minus,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("'{n}'"),
            Tok::Int(v) => format!("'{v}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Star => "'*'".into(),
            Tok::Minus => "'-'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, CharclassError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'+' => out.push((start, Tok::Plus)),
            b'*' => out.push((start, Tok::Star)),
            b'-' => out.push((start, Tok::Minus)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = text[start..i].parse().map_err(|_| CharclassError::Parse {
                    pos: start,
                    expected: vec!["integer that fits in 64 bits".into()],
                    found: text[start..i].to_string(),
                })?;
                out.push((start, Tok::Int(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(CharclassError::Parse {
                    pos: start,
                    expected: vec!["atom".into(), "'('".into(), "'-'".into()],
                    found: format!("'{ch}'"),
                });
            }
        }
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, CharclassError> {
        let (pos, tok) = self.peek();
        Err(CharclassError::Parse {
            pos: *pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        })
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<usize, CharclassError> {
        if self.peek().1 == tok {
            Ok(self.bump().0)
        } else {
            self.fail(&[name])
        }
    }

    fn expr(&mut self) -> Result<ManifoldExpr, CharclassError> {
        let mut lhs = self.term()?;
        while self.peek().1 == Tok::Plus {
            let pos = self.bump().0;
            let rhs = self.term()?;
            let (l, r) = (lhs.dimension(), rhs.dimension());
            if l != r {
                return Err(CharclassError::DimensionMismatch {
                    pos,
                    left: l,
                    right: r,
                });
            }
            lhs = ManifoldExpr::DisjointUnion(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ManifoldExpr, CharclassError> {
        let mut lhs = self.factor()?;
        while self.peek().1 == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            lhs = ManifoldExpr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ManifoldExpr, CharclassError> {
        match self.peek().1.clone() {
            Tok::Minus => {
                self.bump();
                Ok(ManifoldExpr::Reversed(Box::new(self.factor()?)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Name(_) => self.atom(),
            _ => self.fail(&["atom", "'('", "'-'"]),
        }
    }

    fn atom(&mut self) -> Result<ManifoldExpr, CharclassError> {
        let (pos, tok) = self.bump();
        let Tok::Name(name) = tok else {
            unreachable!("atom() called on a non-name token")
        };
        let ctor: fn(u32) -> Atom = match name.as_str() {
            "Wu" => return Ok(ManifoldExpr::Atom(Atom::Wu)),
            "Point" => return Ok(ManifoldExpr::Atom(Atom::Point)),
            "S" => Atom::Sphere,
            "T" => Atom::Torus,
            "RP" => Atom::RealProjective,
            "CP" => Atom::ComplexProjective,
            "SU" => Atom::SpecialUnitary,
            "SigmaD" => Atom::SigmaD,
            _ => return Err(CharclassError::UnknownAtom { pos, name }),
        };
        self.expect(Tok::LParen, "'('")?;
        let (ipos, itok) = self.peek().clone();
        let value = match itok {
            Tok::Int(v) if v >= 1 && v <= u64::from(MAX_PARAMETER) => v as u32,
            _ => return self.fail(&[&format!("integer parameter in 1..={MAX_PARAMETER}")]),
        };
        self.bump();
        self.expect(Tok::RParen, "')'")?;
        if name == "SU" && value < 2 {
            return Err(CharclassError::Parse {
                pos: ipos,
                expected: vec!["SU parameter >= 2".into()],
                found: format!("'{value}'"),
            });
        }
        Ok(ManifoldExpr::Atom(ctor(value)))
    }
}

/// Largest parameter accepted by an atom.
pub const MAX_PARAMETER: u32 = 64;

/// Parses `expr := term {'+' term}`, `term := factor {'*' factor}`,
/// `factor := '-' factor | '(' expr ')' | atom`.
pub fn parse_manifold_expr(text: &str) -> Result<ManifoldExpr, CharclassError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if p.peek().1 != Tok::End {
        return p.fail(&["'+'", "'*'", "end of input"]);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_dimension() {
        let e = parse_manifold_expr("RP(3) * S(1)").unwrap();
        assert_eq!(e.dimension(), 4);
        assert!(matches!(e, ManifoldExpr::Product(..)));
    }

    #[test]
    fn union_of_unequal_dimensions() {
        let err = parse_manifold_expr("SU(3) + -(Wu)").unwrap_err();
        assert_eq!(
            err,
            CharclassError::DimensionMismatch {
                pos: 6,
                left: 8,
                right: 5
            }
        );
    }

    #[test]
    fn negative_parameter_rejected() {
        let err = parse_manifold_expr("CP(-1)").unwrap_err();
        assert!(
            matches!(err, CharclassError::Parse { pos: 3, .. }),
            "{err:?}"
        );
        assert!(parse_manifold_expr("CP(0)").is_err());
    }

    #[test]
    fn unknown_name_and_stray_bytes() {
        assert_eq!(
            parse_manifold_expr("S(2) * K3").unwrap_err(),
            CharclassError::UnknownAtom {
                pos: 7,
                name: "K3".into()
            }
        );
        assert!(matches!(
            parse_manifold_expr("S(2) # S(2)"),
            Err(CharclassError::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            parse_manifold_expr("S(2) S(2)"),
            Err(CharclassError::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            parse_manifold_expr(""),
            Err(CharclassError::Parse { pos: 0, .. })
        ));
    }

    #[test]
    fn whitespace_insensitive_and_precedence() {
        let a = parse_manifold_expr("CP(2)*S(1)+-CP(2)*S(1)").unwrap();
        let b = parse_manifold_expr("  (CP(2) * S(1)) + (-(CP(2)) * S(1)) ").unwrap();
        assert_eq!(a, b);
        let comps = a.components();
        assert_eq!(comps.len(), 2);
        assert!(!comps[0].reversed && comps[1].reversed);
    }

    #[test]
    fn components_distribute_products() {
        let e = parse_manifold_expr("-(S(1) + T(1)) * (S(2) + -T(2))").unwrap();
        let comps = e.components();
        assert_eq!(comps.len(), 4);
        assert_eq!(comps.iter().filter(|c| c.reversed).count(), 2);
        assert!(comps.iter().all(|c| c.dimension() == 3));
    }

    #[test]
    fn points_drop_out_of_products() {
        let e = parse_manifold_expr("Point * S(2) * Point").unwrap();
        assert_eq!(e.components()[0].atoms, vec![Atom::Sphere(2)]);
        assert_eq!(
            parse_manifold_expr("Point").unwrap().components()[0].atoms,
            vec![]
        );
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "RP(3) * S(1)",
            "-(CP(2) + SigmaD(3))",
            "Wu + -Wu",
            "(S(1) + T(1)) * SU(2)",
        ] {
            let e = parse_manifold_expr(text).unwrap();
            assert_eq!(parse_manifold_expr(&e.to_string()).unwrap(), e, "{text}");
        }
    }
}
