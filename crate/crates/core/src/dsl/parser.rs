use num_traits::Zero;

use crate::scalar::{GaussianRational as GR, Rational};

use super::lexer::{lex, Tok, Token};
use super::{DslError, OperatorExpr, SeqLit, SymExpr};

pub fn parse(src: &str) -> Result<OperatorExpr, DslError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.sum()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses a bare symbol expression in `z`.
pub fn parse_symbol(src: &str) -> Result<SymExpr, DslError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.sexpr()?;
    p.expect_eof()?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, DslError> {
        let t = &self.toks[self.pos];
        Err(DslError::parse(t.line, t.col, message))
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Eof => "end of input".into(),
            t => format!("{t:?}"),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), DslError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}, found {}", self.describe()))
        }
    }

    fn expect_eof(&self) -> Result<(), DslError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.err(format!("unexpected {}", self.describe()))
        }
    }

    // ---- operator level ----

    fn sum(&mut self) -> Result<OperatorExpr, DslError> {
        let first = self.expr()?;
        if *self.peek() != Tok::DirectSum {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::DirectSum {
            self.bump();
            parts.push(self.expr()?);
        }
        Ok(OperatorExpr::DirectSum(parts))
    }

    fn expr(&mut self) -> Result<OperatorExpr, DslError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = OperatorExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = OperatorExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<OperatorExpr, DslError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = OperatorExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<OperatorExpr, DslError> {
        if let Some(c) = self.try_scalar_prefix()? {
            return Ok(OperatorExpr::Scale(c, Box::new(self.factor()?)));
        }
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                Ok(OperatorExpr::Neg(Box::new(self.factor()?)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => self.atom(&name),
            _ => self.err(format!("expected an operator, found {}", self.describe())),
        }
    }

    /// `scalar '*'` at the start of a factor, or nothing (position restored).
    fn try_scalar_prefix(&mut self) -> Result<Option<GR>, DslError> {
        let save = self.pos;
        let c = match self.peek() {
            Tok::Num(_) | Tok::Imag(_) => self.scalar().ok(),
            Tok::Ident(s) if s == "i" => self.scalar().ok(),
            Tok::LParen => self.paren_scalar(),
            _ => None,
        };
        match c {
            Some(c) if *self.peek() == Tok::Star => {
                self.bump();
                Ok(Some(c))
            }
            Some(_) if !matches!(self.toks[save].tok, Tok::LParen) => {
                self.err("a scalar must be followed by '*' and an operator")
            }
            _ => {
                self.pos = save;
                Ok(None)
            }
        }
    }

    fn atom(&mut self, name: &str) -> Result<OperatorExpr, DslError> {
        match name {
            "T" => {
                self.bump();
                self.expect(Tok::LParen, "'(' after T")?;
                let s = self.sexpr()?;
                self.expect(Tok::RParen, "')' closing T(")?;
                Ok(OperatorExpr::Toeplitz(s))
            }
            "I" => {
                self.bump();
                Ok(OperatorExpr::Identity)
            }
            "FR" => {
                self.bump();
                self.expect(Tok::LBrace, "'{' after FR")?;
                let mut pairs = vec![self.pair()?];
                while *self.peek() == Tok::Semi {
                    self.bump();
                    pairs.push(self.pair()?);
                }
                self.expect(Tok::RBrace, "'}' closing FR{")?;
                Ok(OperatorExpr::FiniteRank(pairs))
            }
            "M" => {
                self.bump();
                self.expect(Tok::LBrack, "'[' after M")?;
                let mut rows = vec![self.bracket_scalars()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    rows.push(self.bracket_scalars()?);
                }
                self.expect(Tok::RBrack, "']' closing the matrix")?;
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return self.err("matrix literal must be square");
                }
                Ok(OperatorExpr::Matrix(rows))
            }
            other => self.err(format!("unknown operator '{other}'")),
        }
    }

    fn pair(&mut self) -> Result<(SeqLit, SeqLit), DslError> {
        let u = self.seq()?;
        self.expect(Tok::Pipe, "'|' between the two sequences")?;
        let v = self.seq()?;
        Ok((u, v))
    }

    fn seq(&mut self) -> Result<SeqLit, DslError> {
        let Tok::Ident(name) = self.peek().clone() else {
            return self.err(format!("expected a sequence, found {}", self.describe()));
        };
        match name.as_str() {
            "fin" => {
                self.bump();
                Ok(SeqLit::Fin(self.bracket_scalars()?))
            }
            "geo" => {
                self.bump();
                self.expect(Tok::LParen, "'(' after geo")?;
                let r = self.scalar()?;
                let mut start = 0;
                if *self.peek() == Tok::Semi {
                    self.bump();
                    start = self.index()?;
                }
                self.expect(Tok::RParen, "')' closing geo(")?;
                Ok(SeqLit::Geo(r, start))
            }
            "e" => {
                self.bump();
                Ok(SeqLit::Unit(self.index()?))
            }
            s if s.len() > 1 && s.starts_with('e') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                let k = s[1..].parse().or_else(|_| self.err("unit-vector index too large"))?;
                self.bump();
                Ok(SeqLit::Unit(k))
            }
            other => self.err(format!("unknown sequence '{other}'")),
        }
    }

    fn index(&mut self) -> Result<usize, DslError> {
        match self.peek().clone() {
            Tok::Num(r) if r.is_integer() => {
                let k = usize::try_from(r.to_integer()).or_else(|_| self.err("index too large"))?;
                self.bump();
                Ok(k)
            }
            _ => self.err(format!("expected a nonnegative integer, found {}", self.describe())),
        }
    }

    fn bracket_scalars(&mut self) -> Result<Vec<GR>, DslError> {
        self.expect(Tok::LBrack, "'['")?;
        let mut out = Vec::new();
        if *self.peek() != Tok::RBrack {
            out.push(self.scalar()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                out.push(self.scalar()?);
            }
        }
        self.expect(Tok::RBrack, "']'")?;
        Ok(out)
    }

    // ---- scalars ----

    /// A signed real or imaginary literal: `-3/4`, `1/2i`, `i`.
    fn signed_part(&mut self) -> Option<GR> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let v = match self.peek().clone() {
            Tok::Num(r) => GR::real(r),
            Tok::Imag(r) => GR::new(Rational::from_integer(0.into()), r),
            Tok::Ident(s) if s == "i" => GR::i(),
            _ => return None,
        };
        self.bump();
        Some(if neg { -v } else { v })
    }

    /// `x`, `-x`, or the parenthesized forms `(x)`, `(x+yi)`, `(x-yi)`.
    fn scalar(&mut self) -> Result<GR, DslError> {
        if *self.peek() == Tok::LParen {
            if let Some(c) = self.paren_scalar() {
                return Ok(c);
            }
        }
        let save = self.pos;
        match self.signed_part() {
            Some(c) => Ok(c),
            None => {
                self.pos = save;
                self.err(format!("expected a scalar, found {}", self.describe()))
            }
        }
    }

    /// Parenthesized scalar literal, or `None` with the position restored.
    fn paren_scalar(&mut self) -> Option<GR> {
        let save = self.pos;
        let parsed = (|| {
            if self.bump() != Tok::LParen {
                return None;
            }
            let mut c = self.signed_part()?;
            if matches!(self.peek(), Tok::Plus | Tok::Minus) {
                let neg = self.bump() == Tok::Minus;
                let d = match self.peek().clone() {
                    Tok::Num(r) => GR::real(r),
                    Tok::Imag(r) => GR::new(Rational::from_integer(0.into()), r),
                    Tok::Ident(s) if s == "i" => GR::i(),
                    _ => return None,
                };
                // exactly one real and one imaginary part
                if c.im.is_zero() == d.im.is_zero() {
                    return None;
                }
                self.bump();
                c = if neg { &c - &d } else { &c + &d };
            }
            if self.bump() != Tok::RParen {
                return None;
            }
            Some(c)
        })();
        if parsed.is_none() {
            self.pos = save;
        }
        parsed
    }

    // ---- symbol expressions ----

    fn sexpr(&mut self) -> Result<SymExpr, DslError> {
        let mut lhs = self.sterm()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = SymExpr::Add(Box::new(lhs), Box::new(self.sterm()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = SymExpr::Sub(Box::new(lhs), Box::new(self.sterm()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn sterm(&mut self) -> Result<SymExpr, DslError> {
        let mut lhs = self.sunary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = SymExpr::Mul(Box::new(lhs), Box::new(self.sunary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = SymExpr::Div(Box::new(lhs), Box::new(self.sunary()?));
                }
                Tok::Num(_) | Tok::Imag(_) | Tok::Ident(_) | Tok::LParen => {
                    lhs = SymExpr::Mul(Box::new(lhs), Box::new(self.spower()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn sunary(&mut self) -> Result<SymExpr, DslError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(SymExpr::Neg(Box::new(self.sunary()?)));
        }
        self.spower()
    }

    fn spower(&mut self) -> Result<SymExpr, DslError> {
        let base = self.sprimary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let k = self.index()? as i64;
        Ok(SymExpr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn sprimary(&mut self) -> Result<SymExpr, DslError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "z" => {
                self.bump();
                Ok(SymExpr::Z)
            }
            Tok::Ident(s) if s == "i" => {
                self.bump();
                Ok(SymExpr::Const(GR::i()))
            }
            Tok::Num(r) => {
                self.bump();
                Ok(SymExpr::Const(GR::real(r)))
            }
            Tok::Imag(r) => {
                self.bump();
                Ok(SymExpr::Const(GR::new(Rational::from_integer(0.into()), r)))
            }
            Tok::LParen => {
                if let Some(c) = self.paren_scalar() {
                    return Ok(SymExpr::Const(c));
                }
                self.bump();
                let e = self.sexpr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(s) => self.err(format!("unknown name '{s}' in a symbol (only z is allowed)")),
            _ => self.err(format!("expected z, a number or '(', found {}", self.describe())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse("T(z)").unwrap(), OperatorExpr::Toeplitz(SymExpr::Z));
        let e = parse("T(z^2) (++) M[[0,1,0],[0,0,1],[0,0,0]]").unwrap();
        assert!(matches!(e, OperatorExpr::DirectSum(ref p) if p.len() == 2));
        match parse("T(z") {
            Err(DslError::Parse { line, col, .. }) => assert_eq!((line, col), (1, 4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scalars_and_sequences() {
        let e = parse("(1/2-1/2i) * FR{e0|geo(1/2;2); fin[1,(-2),3/4i]|e3}").unwrap();
        let OperatorExpr::Scale(c, inner) = e else { panic!() };
        assert_eq!(c, GR::from_parts(1, 2, -1, 2));
        let OperatorExpr::FiniteRank(pairs) = *inner else { panic!() };
        assert_eq!(pairs[0], (SeqLit::Unit(0), SeqLit::Geo(GR::ratio(1, 2), 2)));
        assert_eq!(pairs[1].0, SeqLit::Fin(vec![GR::one(), GR::from_int(-2), GR::from_parts(0, 1, 3, 4)]));
    }

    #[test]
    fn symbol_syntax() {
        let s = parse_symbol("2z^-1(z-1/2)").unwrap();
        let want = SymExpr::Mul(
            Box::new(SymExpr::Mul(
                Box::new(SymExpr::Const(GR::from_int(2))),
                Box::new(SymExpr::Pow(Box::new(SymExpr::Z), -1)),
            )),
            Box::new(SymExpr::Sub(Box::new(SymExpr::Z), Box::new(SymExpr::Const(GR::ratio(1, 2))))),
        );
        assert_eq!(s, want);
        assert_eq!(parse_symbol("(3/2+1/2i)").unwrap(), SymExpr::Const(GR::from_parts(3, 2, 1, 2)));
    }

    #[test]
    fn printer_round_trip() {
        for src in [
            "T(z^3)",
            "T(z) * T(z^-1) - I",
            "(2) * T((z - 1/2)^2/(z - 3)) (++) M[[0,1],[0,0]]",
            "-(T(z) + FR{e0|e0}) * (-1/2i) * T(z - (1+i))",
            "(T(z) (++) M[[1]]) (++) I",
            "T(-z - -(1/3)*z^2)",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{src} -> {printed}");
        }
    }
}
