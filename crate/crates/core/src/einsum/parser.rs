use super::{EinsumError, FactorRef, IndexLabel, IndexSpec, Statement, Term};
use crate::tensor::Variance;

/// Parses an index expression into a [`Statement`]. Only syntax is checked.
pub fn parse(text: &str) -> Result<Statement, EinsumError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let stmt = p.statement()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected character {c:?}")));
    }
    Ok(stmt)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic()
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric()
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> EinsumError {
        EinsumError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn statement(&mut self) -> Result<Statement, EinsumError> {
        self.skip_ws();
        let start = self.pos;
        // A leading `name indices =` is the target.
        if self.peek().is_some_and(is_name_start) {
            let head = self.factor(true)?;
            self.skip_ws();
            if self.peek() == Some('=') {
                self.pos += 1;
                let terms = self.expr()?;
                return Ok(Statement {
                    target: Some(head),
                    terms,
                });
            }
        }
        self.pos = start;
        let terms = self.expr()?;
        Ok(Statement { target: None, terms })
    }

    fn expr(&mut self) -> Result<Vec<Term>, EinsumError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1.0
            }
            Some('+') => {
                self.pos += 1;
                1.0
            }
            _ => 1.0,
        };
        loop {
            let mut term = self.term()?;
            term.coefficient *= sign;
            terms.push(term);
            self.skip_ws();
            sign = match self.peek() {
                Some('+') => 1.0,
                Some('-') => -1.0,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term, EinsumError> {
        self.skip_ws();
        let mut coefficient = 1.0;
        if self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            coefficient = self.number()?;
            self.skip_ws();
            if self.peek() != Some('*') {
                return Err(self.error("expected '*' after coefficient"));
            }
            self.pos += 1;
        }
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if is_name_start(c) => factors.push(self.factor(false)?),
                _ => break,
            }
        }
        if factors.is_empty() {
            return Err(self.error("expected a factor"));
        }
        Ok(Term { coefficient, factors })
    }

    fn number(&mut self) -> Result<f64, EinsumError> {
        let start = self.pos;
        let digits = |p: &mut Parser| {
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
        };
        digits(self);
        if self.peek() == Some('.') {
            self.pos += 1;
            digits(self);
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                digits(self);
            } else {
                self.pos = save;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<f64>().map_err(|_| EinsumError::Syntax {
            position: start,
            message: format!("invalid number {text:?}"),
        })
    }

    /// `allow_bare` admits a name without index groups (only valid as a
    /// scalar target).
    fn factor(&mut self, allow_bare: bool) -> Result<FactorRef, EinsumError> {
        let position = self.pos;
        let mut name = String::new();
        while let Some(c) = self.peek().filter(|&c| is_name_char(c)) {
            name.push(c);
            self.pos += 1;
        }
        let mut indices = Vec::new();
        loop {
            let variance = match self.peek() {
                Some('_') => Variance::Down,
                Some('^') => Variance::Up,
                _ => break,
            };
            self.pos += 1;
            self.group(variance, &mut indices)?;
        }
        if indices.is_empty() && !allow_bare {
            return Err(EinsumError::Syntax {
                position,
                message: format!("factor `{name}` has no indices"),
            });
        }
        Ok(FactorRef {
            name,
            indices,
            position,
        })
    }

    fn group(&mut self, variance: Variance, out: &mut Vec<IndexSpec>) -> Result<(), EinsumError> {
        if self.peek() == Some('{') {
            self.pos += 1;
            let before = out.len();
            loop {
                match self.peek() {
                    Some('}') => {
                        if out.len() == before {
                            return Err(self.error("empty index group"));
                        }
                        self.pos += 1;
                        return Ok(());
                    }
                    None => return Err(self.error("unterminated index group")),
                    Some(c) if !c.is_alphanumeric() => return Err(self.error("expected '}'")),
                    Some(_) => out.push(self.index(variance)?),
                }
            }
        }
        out.push(self.index(variance)?);
        Ok(())
    }

    fn index(&mut self, variance: Variance) -> Result<IndexSpec, EinsumError> {
        let Some(c) = self.peek() else {
            return Err(self.error("expected an index"));
        };
        let label = match c {
            'a'..='z' => IndexLabel::Letter(c),
            '1'..='9' => IndexLabel::Fixed(c as usize - '0' as usize),
            _ => {
                return Err(EinsumError::BadIndex {
                    position: self.pos,
                    found: c,
                })
            }
        };
        self.pos += 1;
        Ok(IndexSpec { label, variance })
    }
}
