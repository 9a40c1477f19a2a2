//! Recursive-descent parser for the species DSL.
//!
//! ```text
//! program    := definition* expr? ;
//! definition := name '=' expr ';'
//! expr       := term (('+' | '-') term)*
//! term       := factor (('*' | '.') factor)*
//! factor     := primary ("'" | '^' nat | '(' expr ')')*
//! primary    := nat | atom | name
//!             | 'point' '(' expr ')' | 'cart' '(' expr ',' expr ')'
//!             | 'conn' '(' expr ')' | 'set' '(' expr ')' | 'inv' '(' expr ')'
//!             | 'restrict' '(' expr ',' nat ')' | '(' expr ')'
//! ```
//!
//! A parenthesised argument after any factor is composition, so both `E(A)`
//! and `(E - E_2)(H)` are accepted. `#` starts a comment that runs to the end of the line.

use super::{Environment, SpeciesError, SpeciesExpr};
use crate::cycleindex::Atom;

const KEYWORDS: [&str; 6] = ["point", "cart", "conn", "set", "inv", "restrict"];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// The atom named by a DSL identifier, if any.
pub(crate) fn atom_from_ident(s: &str) -> Option<Atom> {
    Some(match s {
        "Zero" => Atom::Zero,
        "One" => Atom::One,
        "X" => Atom::X,
        "E" => Atom::E,
        "Eplus" | "E_plus" => Atom::EPlus,
        "L" => Atom::L,
        "Lplus" | "L_plus" => Atom::LPlus,
        "C" => Atom::C,
        "S" => Atom::S,
        "Der" => Atom::Der,
        _ => {
            let digits = s.strip_prefix("E_")?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            Atom::En(digits.parse().ok()?)
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Sym(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, SpeciesError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
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
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: start_line, col: start_col });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            let n = s.parse().map_err(|_| SpeciesError::Parse {
                line: start_line,
                col: start_col,
                message: format!("number {s} is too large"),
            })?;
            out.push(Token { tok: Tok::Nat(n), line: start_line, col: start_col });
            continue;
        }
        if "+-*.'^(),=;".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line, col });
            i += 1;
            col += 1;
            continue;
        }
        return Err(SpeciesError::Parse { line, col, message: format!("unexpected character {c:?}") });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SpeciesError> {
        let t = self.peek();
        Err(SpeciesError::Parse { line: t.line, col: t.col, message: message.into() })
    }

    fn describe(&self) -> String {
        match &self.peek().tok {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Nat(n) => format!("'{n}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpeciesError> {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected '{c}', found {}", self.describe()))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, SpeciesError> {
        match self.peek().tok {
            Tok::Nat(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.error(format!("expected a natural number, found {}", self.describe())),
        }
    }

    fn expr(&mut self) -> Result<SpeciesExpr, SpeciesError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = SpeciesExpr::sum(acc, self.term()?);
            } else if self.eat('-') {
                acc = SpeciesExpr::difference(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SpeciesExpr, SpeciesError> {
        let mut acc = self.factor()?;
        while self.eat('*') || self.eat('.') {
            acc = SpeciesExpr::product(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SpeciesExpr, SpeciesError> {
        let mut acc = self.primary()?;
        loop {
            if self.eat('\'') {
                acc = SpeciesExpr::derivative(acc);
            } else if self.eat('(') {
                let inner = self.expr()?;
                self.expect(')')?;
                acc = SpeciesExpr::compose(acc, inner);
            } else if self.eat('^') {
                let k = self.nat()?;
                let k = u32::try_from(k).or_else(|_| self.error("exponent too large"))?;
                acc = SpeciesExpr::power(acc, k);
            } else {
                return Ok(acc);
            }
        }
    }

    fn primary(&mut self) -> Result<SpeciesExpr, SpeciesError> {
        let token = self.peek().clone();
        match token.tok {
            Tok::Nat(n) => {
                self.bump();
                Ok(SpeciesExpr::Const(n))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(ref s) if is_keyword(s) => {
                let kw = s.clone();
                self.bump();
                self.expect('(')?;
                let a = self.expr()?;
                let e = match kw.as_str() {
                    "point" => SpeciesExpr::pointing(a),
                    "conn" => SpeciesExpr::connected(a),
                    "set" => SpeciesExpr::assembly(a),
                    "inv" => SpeciesExpr::inverse(a),
                    "cart" => {
                        self.expect(',')?;
                        SpeciesExpr::cartesian(a, self.expr()?)
                    }
                    "restrict" => {
                        self.expect(',')?;
                        let n = self.nat()?;
                        SpeciesExpr::restrict(a, n as usize)
                    }
                    _ => unreachable!("keyword list"),
                };
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(ref s) => {
                let head = match atom_from_ident(s) {
                    Some(a) => SpeciesExpr::Atom(a),
                    None => SpeciesExpr::Ref(s.clone()),
                };
                self.bump();
                Ok(head)
            }
            _ => self.error(format!("expected an expression, found {}", self.describe())),
        }
    }
}

/// Parses a single expression.
pub fn parse_expr(src: &str) -> Result<SpeciesExpr, SpeciesError> {
    let mut p = Parser { tokens: tokenize(src)?, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return p.error(format!("unexpected {} after expression", p.describe()));
    }
    Ok(e)
}

/// Parses `name = expr;` definitions followed by an optional expression.
/// The final `;` of the input may be omitted.
pub fn parse_program(src: &str) -> Result<(Environment, Option<SpeciesExpr>), SpeciesError> {
    let mut p = Parser { tokens: tokenize(src)?, pos: 0 };
    let mut env = Environment::new();
    let mut tail = None;
    while p.peek().tok != Tok::Eof {
        if let (Tok::Ident(name), Tok::Sym('=')) = (p.peek().tok.clone(), p.peek_at(1).clone()) {
            let at = p.peek().clone();
            p.bump();
            p.bump();
            let e = p.expr()?;
            if p.peek().tok != Tok::Eof {
                p.expect(';')?;
            }
            env.define(&name, e).map_err(|err| SpeciesError::Parse {
                line: at.line,
                col: at.col,
                message: err.to_string(),
            })?;
            continue;
        }
        if tail.is_some() {
            return p.error(format!("unexpected {} after the final expression", p.describe()));
        }
        tail = Some(p.expr()?);
        p.eat(';');
    }
    Ok((env, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_postfix() {
        let e = parse_expr("X + E*L'^2").unwrap();
        let expected = SpeciesExpr::sum(
            SpeciesExpr::atom(Atom::X),
            SpeciesExpr::product(
                SpeciesExpr::atom(Atom::E),
                SpeciesExpr::power(SpeciesExpr::derivative(SpeciesExpr::atom(Atom::L)), 2),
            ),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn keywords_and_composition() {
        let e = parse_expr("restrict(cart(E_2, set(C)), 2) . A(X)").unwrap();
        assert_eq!(e.to_string(), "(restrict(cart(E_2, set(C)), 2) * A(X))");
        assert_eq!(parse_expr("E_plus").unwrap(), SpeciesExpr::atom(Atom::EPlus));
    }

    #[test]
    fn program_with_definitions() {
        let (env, tail) = parse_program("A = X*E(A);\n# comment\na = A + E_2(A) - A^2;\na").unwrap();
        assert_eq!(env.names().collect::<Vec<_>>(), vec!["A", "a"]);
        assert_eq!(tail, Some(SpeciesExpr::name("a")));
    }

    #[test]
    fn errors_carry_position() {
        match parse_expr("X +\n  * E") {
            Err(SpeciesError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("E(X"), Err(SpeciesError::Parse { line: 1, col: 4, .. })));
        assert!(matches!(parse_program("E = X;"), Err(SpeciesError::Parse { .. })));
        assert!(matches!(parse_expr("X $"), Err(SpeciesError::Parse { col: 3, .. })));
    }

    #[test]
    fn display_round_trips() {
        for src in ["point(A)' - conn(S)", "(E - E_2)(H) + E'(X)", "inv(One - X) + 3 * restrict(E, 4)", "Der(E_3(X))"] {
            let e = parse_expr(src).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }
}
