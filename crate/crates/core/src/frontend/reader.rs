//! S-expression reader with source positions.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Datum {
    Sym(String),
    Num(i64),
    Bool(bool),
    /// A list, possibly improper: `(a b . c)` has tail `Some(c)`.
    List(Vec<Sexp>, Option<Box<Sexp>>),
    /// `#( ... )`, used for set literals.
    Vector(Vec<Sexp>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sexp {
    pub datum: Datum,
    pub pos: Pos,
}

impl Sexp {
    pub fn sym(&self) -> Option<&str> {
        match &self.datum {
            Datum::Sym(s) => Some(s),
            _ => None,
        }
    }

    /// Elements of a proper list.
    pub fn list(&self) -> Option<&[Sexp]> {
        match &self.datum {
            Datum::List(items, None) => Some(items),
            _ => None,
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.datum {
            Datum::Sym(s) => f.write_str(s),
            Datum::Num(n) => write!(f, "{n}"),
            Datum::Bool(true) => f.write_str("#t"),
            Datum::Bool(false) => f.write_str("#f"),
            Datum::List(items, tail) => {
                f.write_str("(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    it.fmt(f)?;
                }
                if let Some(t) = tail {
                    write!(f, " . {t}")?;
                }
                f.write_str(")")
            }
            Datum::Vector(items) => {
                f.write_str("#(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    it.fmt(f)?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {msg}")]
pub struct ReadError {
    pub pos: Pos,
    pub msg: String,
    /// True when the input ended inside an unfinished form.
    pub incomplete: bool,
}

struct Reader<'a> {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | '\'' | '`' | ',' | ';' | '"')
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Self {
        Reader {
            chars: src.chars().collect(),
            i: 0,
            line: 1,
            col: 1,
            _src: src,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c == '#' && self.chars.get(self.i + 1) == Some(&'|') {
                self.bump();
                self.bump();
                while self.peek().is_some() {
                    if self.peek() == Some('|') && self.chars.get(self.i + 1) == Some(&'#') {
                        self.bump();
                        self.bump();
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn err<T>(&self, pos: Pos, msg: impl Into<String>) -> Result<T, ReadError> {
        Err(ReadError {
            pos,
            msg: msg.into(),
            incomplete: false,
        })
    }

    fn eof<T>(&self, pos: Pos, msg: impl Into<String>) -> Result<T, ReadError> {
        Err(ReadError {
            pos,
            msg: msg.into(),
            incomplete: true,
        })
    }

    fn read(&mut self) -> Result<Option<Sexp>, ReadError> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let datum = match c {
            '(' | '[' => {
                self.bump();
                let close = if c == '(' { ')' } else { ']' };
                self.read_list(pos, close)?
            }
            ')' | ']' => return self.err(pos, format!("unexpected `{c}`")),
            '\'' | '`' | ',' => {
                self.bump();
                let name = match c {
                    '\'' => "quote",
                    '`' => "quasiquote",
                    _ => "unquote",
                };
                let Some(inner) = self.read()? else {
                    return self.eof(pos, format!("expected a form after `{c}`"));
                };
                Datum::List(
                    vec![
                        Sexp {
                            datum: Datum::Sym(name.into()),
                            pos,
                        },
                        inner,
                    ],
                    None,
                )
            }
            '"' => return self.err(pos, "strings are not supported"),
            '#' if self.chars.get(self.i + 1) == Some(&'(') => {
                self.bump();
                self.bump();
                match self.read_list(pos, ')')? {
                    Datum::List(items, None) => Datum::Vector(items),
                    _ => return self.err(pos, "dotted vector literal"),
                }
            }
            _ => self.read_atom(pos)?,
        };
        Ok(Some(Sexp { datum, pos }))
    }

    fn read_list(&mut self, open: Pos, close: char) -> Result<Datum, ReadError> {
        let mut items = Vec::new();
        loop {
            self.skip_trivia();
            let pos = self.pos();
            match self.peek() {
                None => return self.eof(open, "unclosed `(`"),
                Some(c) if c == close => {
                    self.bump();
                    return Ok(Datum::List(items, None));
                }
                Some(c @ (')' | ']')) => {
                    return self.err(pos, format!("mismatched `{c}`"));
                }
                Some('.') if self.chars.get(self.i + 1).is_none_or(|c| is_delimiter(*c)) => {
                    self.bump();
                    if items.is_empty() {
                        return self.err(pos, "`.` needs a head");
                    }
                    let Some(tail) = self.read()? else {
                        return self.eof(open, "unclosed `(`");
                    };
                    self.skip_trivia();
                    match self.bump() {
                        Some(c) if c == close => {}
                        None => return self.eof(open, "unclosed `(`"),
                        Some(_) => return self.err(self.pos(), "expected `)` after dotted tail"),
                    }
                    return Ok(Datum::List(items, Some(Box::new(tail))));
                }
                Some(_) => {
                    let item = self.read()?.expect("not at end");
                    items.push(item);
                }
            }
        }
    }

    fn read_atom(&mut self, pos: Pos) -> Result<Datum, ReadError> {
        let mut text = String::new();
        while let Some(c) = self.peek() {
            if is_delimiter(c) {
                break;
            }
            text.push(c);
            self.bump();
        }
        match text.as_str() {
            "#t" | "#true" => return Ok(Datum::Bool(true)),
            "#f" | "#false" => return Ok(Datum::Bool(false)),
            _ => {}
        }
        if text.starts_with('#') {
            return self.err(pos, format!("unknown syntax `{text}`"));
        }
        let digits = text.strip_prefix(['-', '+']).unwrap_or(&text);
        if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
            return match text.parse::<i64>() {
                Ok(n) => Ok(Datum::Num(n)),
                Err(_) => self.err(pos, format!("integer out of range `{text}`")),
            };
        }
        Ok(Datum::Sym(text))
    }
}

/// Read every form in `src`.
pub fn read_all(src: &str) -> Result<Vec<Sexp>, ReadError> {
    let mut r = Reader::new(src);
    let mut out = Vec::new();
    while let Some(s) = r.read()? {
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(src: &str) -> Sexp {
        let mut v = read_all(src).unwrap();
        assert_eq!(v.len(), 1);
        v.pop().unwrap()
    }

    #[test]
    fn atoms_and_lists() {
        assert_eq!(one("42").datum, Datum::Num(42));
        assert_eq!(one("-7").datum, Datum::Num(-7));
        assert_eq!(one("->").datum, Datum::Sym("->".into()));
        assert_eq!(one("λ").datum, Datum::Sym("λ".into()));
        assert_eq!(one("#f").datum, Datum::Bool(false));
        assert_eq!(one("(a b . c)").to_string(), "(a b . c)");
        assert_eq!(one("[a b]").to_string(), "(a b)");
    }

    #[test]
    fn quote_family_expands() {
        assert_eq!(one("'x").to_string(), "(quote x)");
        assert_eq!(one("`(a ,b)").to_string(), "(quasiquote (a (unquote b)))");
    }

    #[test]
    fn set_literals_read_as_vectors() {
        assert_eq!(one("#(set (1 2) x)").to_string(), "#(set (1 2) x)");
        assert!(matches!(one("#(set)").datum, Datum::Vector(ref v) if v.len() == 1));
    }

    #[test]
    fn comments_and_positions() {
        let v = read_all("; header\n  (a)\n#| block |# b").unwrap();
        assert_eq!(v[0].pos, Pos { line: 2, col: 3 });
        assert_eq!(v[1].pos, Pos { line: 3, col: 13 });
    }

    #[test]
    fn errors_carry_positions() {
        let e = read_all("(a\n  (b)").unwrap_err();
        assert!(e.incomplete);
        assert_eq!(e.pos, Pos { line: 1, col: 1 });
        let e = read_all("a )").unwrap_err();
        assert!(!e.incomplete);
        assert_eq!(e.to_string(), "1:3: unexpected `)`");
    }
}
