//! `verb(arg, ...)` expressions over workspace names and integer literals.

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Name(String),
    Int(usize),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    /// 1-based column of the first character.
    pub column: usize,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'')
}

impl Parser<'_> {
    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.chars().count(), |&(i, _)| self.src[..i].chars().count()) + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error<T>(&self, expected: &str) -> CliResult<T> {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        Err(CliError::Parse { column: self.column(), message: format!("expected {expected}, found {found}") })
    }

    fn expr(&mut self) -> CliResult<Expr> {
        self.skip_ws();
        let column = self.column();
        let start = self.pos;
        while self.peek().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("a name, number or call");
        }
        let word: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        self.skip_ws();
        if self.peek() == Some('(') {
            self.pos += 1;
            let mut args = Vec::new();
            self.skip_ws();
            if self.peek() == Some(')') {
                self.pos += 1;
                return Ok(Expr { kind: ExprKind::Call(word, args), column });
            }
            loop {
                args.push(self.expr()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.error("',' or ')'"),
                }
            }
            return Ok(Expr { kind: ExprKind::Call(word, args), column });
        }
        if word.chars().all(|c| c.is_ascii_digit()) {
            return match word.parse() {
                Ok(n) => Ok(Expr { kind: ExprKind::Int(n), column }),
                Err(_) => Err(CliError::Parse { column, message: format!("integer {word} is too large") }),
            };
        }
        Ok(Expr { kind: ExprKind::Name(word), column })
    }
}

pub fn parse(src: &str) -> CliResult<Expr> {
    let mut p = Parser { chars: src.char_indices().collect(), pos: 0, src };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return p.error("end of input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_calls() {
        let e = parse("simples(tensor(kxk, M2))").unwrap();
        let ExprKind::Call(verb, args) = e.kind else { panic!() };
        assert_eq!(verb, "simples");
        assert_eq!(args[0].column, 9);
        let ExprKind::Call(_, inner) = &args[0].kind else { panic!() };
        assert_eq!(inner[1], Expr { kind: ExprKind::Name("M2".into()), column: 21 });
    }

    #[test]
    fn integers_and_empty_calls() {
        assert_eq!(parse(" 12 ").unwrap().kind, ExprKind::Int(12));
        assert_eq!(parse("f()").unwrap().kind, ExprKind::Call("f".into(), vec![]));
    }

    #[test]
    fn errors_carry_columns() {
        match parse("kernel(id(Q)").unwrap_err() {
            CliError::Parse { column, message } => {
                assert_eq!(column, 13);
                assert!(message.contains("')'"), "{message}");
            }
            e => panic!("{e}"),
        }
        assert!(matches!(parse("tensor(a,,b)"), Err(CliError::Parse { column: 10, .. })));
        assert!(matches!(parse("a b"), Err(CliError::Parse { column: 3, .. })));
        assert!(matches!(parse(""), Err(CliError::Parse { column: 1, .. })));
    }
}
