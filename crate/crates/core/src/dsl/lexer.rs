use crate::scalar::{parse_rational, Rational};

use super::DslError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// `3`, `3/4` (no spaces inside).
    Num(Rational),
    /// `3i`, `3/4i`.
    Imag(Rational),
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Pipe,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    /// `(++)`.
    DirectSum,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: tl, col: tc });
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if chars[i..].starts_with(&['(', '+', '+', ')']) {
            push(&mut out, Tok::DirectSum);
            i += 4;
            col += 4;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value = parse_rational(&text)
                .ok_or_else(|| DslError::parse(tl, tc, format!("invalid number '{text}'")))?;
            let imaginary = i < chars.len()
                && chars[i] == 'i'
                && !chars.get(i + 1).is_some_and(|n| n.is_ascii_alphanumeric() || *n == '_');
            if imaginary {
                i += 1;
            }
            col += i - start;
            push(&mut out, if imaginary { Tok::Imag(value) } else { Tok::Num(value) });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '|' => Tok::Pipe,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            other => return Err(DslError::parse(tl, tc, format!("unexpected character '{other}'"))),
        };
        push(&mut out, tok);
        i += 1;
        col += 1;
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn literals() {
        assert_eq!(toks("1/2"), vec![Tok::Num(rat(1, 2)), Tok::Eof]);
        assert_eq!(toks("1/2i"), vec![Tok::Imag(rat(1, 2)), Tok::Eof]);
        assert_eq!(toks("1 / 2"), vec![Tok::Num(rat(1, 1)), Tok::Slash, Tok::Num(rat(2, 1)), Tok::Eof]);
        assert_eq!(toks("(++)"), vec![Tok::DirectSum, Tok::Eof]);
        assert_eq!(toks("e3"), vec![Tok::Ident("e3".into()), Tok::Eof]);
    }

    #[test]
    fn positions() {
        let t = lex("T(z\n  + 1").unwrap();
        assert_eq!((t[3].line, t[3].col), (2, 3));
        assert_eq!((t.last().unwrap().line, t.last().unwrap().col), (2, 6));
    }
}
