//! Tokens and the syntax tree of problem files.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn error(self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(Q),
    Sym(char),
    Newline,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(q) => format!("number `{q}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of file".into(),
    }
}

/// Splits source text into tokens. Line breaks inside brackets are ignored.
fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut depth: Vec<(char, Pos)> = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            if depth.is_empty() {
                out.push(Token { tok: Tok::Newline, pos });
            }
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
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(word), pos });
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
            col += i - start;
            let value = parse_rational(&text)
                .ok_or_else(|| pos.error(format!("malformed rational `{text}` (zero denominator)")))?;
            out.push(Token { tok: Tok::Number(value), pos });
            continue;
        }
        match c {
            '(' | '[' | '{' => depth.push((c, pos)),
            ')' | ']' | '}' => {
                let open = match c {
                    ')' => '(',
                    ']' => '[',
                    _ => '{',
                };
                match depth.pop() {
                    Some((o, _)) if o == open => {}
                    Some((o, p)) => {
                        return Err(pos.error(format!("`{c}` does not match `{o}` opened at {}:{}", p.line, p.column)))
                    }
                    None => return Err(pos.error(format!("unmatched `{c}`"))),
                }
            }
            '=' | ',' | ':' | '+' | '-' | '*' | '^' => {}
            '/' => return Err(pos.error("`/` is only allowed inside a rational literal such as 3/2")),
            _ => return Err(pos.error(format!("unexpected character `{c}`"))),
        }
        out.push(Token { tok: Tok::Sym(c), pos });
        i += 1;
        col += 1;
    }
    if let Some((o, p)) = depth.pop() {
        return Err(p.error(format!("`{o}` is never closed")));
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, column: col } });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Q),
    Name(String, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Reads `a-b-c` style names (suite names) back out of an expression.
    pub fn as_dashed_name(&self) -> Option<String> {
        match self {
            Expr::Name(s, _) => Some(s.clone()),
            Expr::Sub(a, b) => Some(format!("{}-{}", a.as_dashed_name()?, b.as_dashed_name()?)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Expr(Expr, Pos),
    List(Vec<Value>, Pos),
    /// `(i, j, ..): value`
    Entry(Vec<u64>, Box<Value>, Pos),
    /// `name{ key = value, .. }` or `name{ (i, ..): value, .. }`
    Block { name: String, fields: Vec<(String, Value, Pos)>, entries: Vec<(Vec<u64>, Value, Pos)>, pos: Pos },
}

impl Value {
    pub fn pos(&self) -> Pos {
        match self {
            Value::Expr(_, p) | Value::List(_, p) | Value::Entry(_, _, p) => *p,
            Value::Block { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    /// `poly`, `apoly`, `diffop` for named definitions, else the key itself.
    pub keyword: String,
    pub name: Option<String>,
    pub value: Value,
    pub pos: Pos,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let t = self.peek();
        t.pos.error(format!("expected {wanted}, found {}", describe(&t.tok)))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<Pos> {
        let pos = self.peek().pos;
        if self.eat(c) {
            Ok(pos)
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => Ok((s, self.next().pos)),
            _ => Err(self.unexpected("a name")),
        }
    }

    fn natural(&mut self) -> Result<u64> {
        let t = self.peek().clone();
        if let Tok::Number(q) = &t.tok {
            if q.is_integer() && *q.numer() >= BigInt::from(0) {
                if let Ok(v) = u64::try_from(q.numer()) {
                    self.next();
                    return Ok(v);
                }
            }
        }
        Err(self.unexpected("a non-negative integer"))
    }

    fn statements(&mut self) -> Result<Vec<Statement>> {
        let mut out = Vec::new();
        loop {
            while self.peek().tok == Tok::Newline {
                self.next();
            }
            if self.peek().tok == Tok::Eof {
                return Ok(out);
            }
            let (keyword, pos) = self.ident()?;
            let name = match keyword.as_str() {
                "poly" | "apoly" | "diffop" => Some(self.ident()?.0),
                _ => None,
            };
            self.expect('=')?;
            let value = self.value()?;
            match self.peek().tok {
                Tok::Newline | Tok::Eof => {}
                _ => return Err(self.unexpected("end of line")),
            }
            out.push(Statement { keyword, name, value, pos });
        }
    }

    fn value(&mut self) -> Result<Value> {
        let pos = self.peek().pos;
        if self.peek().tok == Tok::Sym('[') {
            self.next();
            let mut items = Vec::new();
            if !self.eat(']') {
                loop {
                    items.push(self.list_item()?);
                    if self.eat(']') {
                        break;
                    }
                    self.expect(',')?;
                    if self.eat(']') {
                        break;
                    }
                }
            }
            return Ok(Value::List(items, pos));
        }
        if let (Tok::Ident(name), Tok::Sym('{')) = (self.peek().tok.clone(), self.peek_at(1).clone()) {
            self.next();
            self.next();
            return self.block(name, pos);
        }
        Ok(Value::Expr(self.sum()?, pos))
    }

    fn list_item(&mut self) -> Result<Value> {
        let save = self.at;
        let pos = self.peek().pos;
        if let Some(idx) = self.try_index_tuple() {
            let value = self.value()?;
            return Ok(Value::Entry(idx, Box::new(value), pos));
        }
        self.at = save;
        self.value()
    }

    /// `(n, n, ..) :` with backtracking on failure.
    fn try_index_tuple(&mut self) -> Option<Vec<u64>> {
        let save = self.at;
        let parsed = (|| -> Result<Vec<u64>> {
            self.expect('(')?;
            let mut idx = vec![self.natural()?];
            while self.eat(',') {
                idx.push(self.natural()?);
            }
            self.expect(')')?;
            self.expect(':')?;
            Ok(idx)
        })();
        match parsed {
            Ok(idx) => Some(idx),
            Err(_) => {
                self.at = save;
                None
            }
        }
    }

    fn block(&mut self, name: String, pos: Pos) -> Result<Value> {
        let mut fields = Vec::new();
        let mut entries = Vec::new();
        if !self.eat('}') {
            loop {
                let item_pos = self.peek().pos;
                if let Some(idx) = self.try_index_tuple() {
                    entries.push((idx, self.value()?, item_pos));
                } else if self.peek().tok == Tok::Sym('(') {
                    return Err(self.unexpected("an index tuple such as (1,2):"));
                } else {
                    let (key, _) = self.ident()?;
                    self.expect('=')?;
                    fields.push((key, self.value()?, item_pos));
                }
                if self.eat('}') {
                    break;
                }
                self.expect(',')?;
                if self.eat('}') {
                    break;
                }
            }
        }
        Ok(Value::Block { name, fields, entries, pos })
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.natural()?;
            let e = u32::try_from(e).map_err(|_| self.unexpected("a smaller exponent"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().tok.clone() {
            Tok::Number(q) => {
                self.next();
                Ok(Expr::Num(q))
            }
            Tok::Ident(s) => {
                let pos = self.next().pos;
                Ok(Expr::Name(s, pos))
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

pub fn parse_statements(src: &str) -> Result<Vec<Statement>> {
    Parser { toks: lex(src)?, at: 0 }.statements()
}

/// Parses a standalone expression (used for command-line arguments).
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.sum()?;
    match p.peek().tok {
        Tok::Eof | Tok::Newline => Ok(e),
        _ => Err(p.unexpected("end of expression")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn rational_literals() {
        assert_eq!(parse_expr("3/2").unwrap(), Expr::Num(frac(3, 2)));
        let err = parse_statements("dim = 2\npoly f = 3/0 * x1\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, column: 10, message: "malformed rational `3/0` (zero denominator)".into() });
        assert!(matches!(parse_expr("x1/2"), Err(Error::Parse { column: 3, .. })));
    }

    #[test]
    fn precedence() {
        let e = parse_expr("-x1^2 + 2*x2").unwrap();
        let x1 = Expr::Name("x1".into(), Pos { line: 1, column: 2 });
        let x2 = Expr::Name("x2".into(), Pos { line: 1, column: 11 });
        let expected = Expr::Add(
            Box::new(Expr::Neg(Box::new(Expr::Pow(Box::new(x1), 2)))),
            Box::new(Expr::Mul(Box::new(Expr::Num(q(2))), Box::new(x2))),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn blocks_lists_and_entries() {
        let src = "structure = lcs{\n  alpha = form1{ (1): 1 },\n  omega = form2{ (1,2): 1 + x1 }\n}\nchecks = [jacobi-axioms, prop1]\n";
        let st = parse_statements(src).unwrap();
        assert_eq!(st.len(), 2);
        match &st[0].value {
            Value::Block { name, fields, .. } => {
                assert_eq!(name, "lcs");
                assert_eq!(fields.len(), 2);
                match &fields[1].1 {
                    Value::Block { entries, .. } => assert_eq!(entries[0].0, vec![1, 2]),
                    other => panic!("{other:?}"),
                }
            }
            other => panic!("{other:?}"),
        }
        match &st[1].value {
            Value::List(items, _) => match &items[0] {
                Value::Expr(e, _) => assert_eq!(e.as_dashed_name().unwrap(), "jacobi-axioms"),
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn entry_lists_and_parenthesized_expressions() {
        let st = parse_statements("x = [(0,1,1): 1, (1 + x1)*x2]").unwrap();
        match &st[0].value {
            Value::List(items, _) => {
                assert!(matches!(items[0], Value::Entry(..)));
                assert!(matches!(items[1], Value::Expr(..)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_positions() {
        let err = parse_statements("dim = 2\npoly f = x1 +\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_statements("structure = lcs{ alpha = 1 ").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 16, .. }), "{err:?}");
        let err = parse_statements("dim = 2 3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 9, .. }));
    }
}
