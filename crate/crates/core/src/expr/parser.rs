//! Parser for the information-expression DSL.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)* ['>=' '0']  |  '0' ['>=' '0']
//! term     := [rational ['*']] atom
//! atom     := 'H' '(' set ['|' set] ')' | 'I' '(' set ';' set ['|' set] ')'
//! set      := name (',' name)*
//! rational := int ['/' int]
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::subset::SubsetMask;

/// A single information quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `H(of | given)`; `given` may be empty.
    Entropy { of: SubsetMask, given: SubsetMask },
    /// `I(left; right | given)`; `given` may be empty.
    Mutual {
        left: SubsetMask,
        right: SubsetMask,
        given: SubsetMask,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub atom: Atom,
}

/// Parsed, uncanonicalized expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoTermAst {
    pub arity: usize,
    pub terms: Vec<Term>,
    /// Whether the text ended in `>= 0`.
    pub inequality: bool,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a [String],
}

/// Parses `text` against the declared variable names.
pub fn parse_expression(text: &str, var_names: &[String]) -> Result<InfoTermAst> {
    if var_names.is_empty() || var_names.len() > crate::subset::MAX_ARITY {
        return Err(Error::ArityOutOfRange(var_names.len()));
    }
    let mut p = Parser {
        src: text,
        pos: 0,
        names: var_names,
    };
    p.expression()
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected `{c}`, found `{found}`")),
                None => self.err(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn expression(&mut self) -> Result<InfoTermAst> {
        let arity = self.names.len();
        let mut terms = Vec::new();
        let mut sign = BigRational::one();
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        // The literal zero stands for the empty expression.
        if self.at_lone_zero() {
            self.pos += 1;
            let inequality = self.tail()?;
            return Ok(InfoTermAst {
                arity,
                terms,
                inequality,
            });
        }
        loop {
            let mut term = self.term()?;
            term.coeff *= &sign;
            terms.push(term);
            if self.eat('+') {
                sign = BigRational::one();
            } else if self.peek() == Some('-') {
                self.pos += 1;
                sign = -BigRational::one();
            } else {
                break;
            }
        }
        let inequality = self.tail()?;
        Ok(InfoTermAst {
            arity,
            terms,
            inequality,
        })
    }

    /// `0` not followed by more digits, `/`, `*` or an atom.
    fn at_lone_zero(&mut self) -> bool {
        if self.peek() != Some('0') {
            return false;
        }
        let rest = self.src[self.pos + 1..].trim_start();
        rest.is_empty() || rest.starts_with(">=")
    }

    fn tail(&mut self) -> Result<bool> {
        self.skip_ws();
        if self.pos == self.src.len() {
            return Ok(false);
        }
        if self.src[self.pos..].starts_with(">=") {
            self.pos += 2;
            self.skip_ws();
            if self.peek() == Some('0') {
                self.pos += 1;
                self.skip_ws();
                if self.pos == self.src.len() {
                    return Ok(true);
                }
            }
            return self.err("expected `0` to end `>= 0`");
        }
        let c = self.peek_raw().unwrap();
        self.err(format!("unexpected `{c}`"))
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = BigRational::one();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.rational()?;
            self.eat('*');
        }
        let atom = self.atom()?;
        Ok(Term { coeff, atom })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        if self.eat('/') {
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek() {
            Some('H') => {
                self.pos += 1;
                self.expect('(')?;
                let of = self.set()?;
                let given = if self.eat('|') { self.set()? } else { SubsetMask::EMPTY };
                self.expect(')')?;
                Ok(Atom::Entropy { of, given })
            }
            Some('I') => {
                self.pos += 1;
                self.expect('(')?;
                let left = self.set()?;
                self.expect(';')?;
                let right = self.set()?;
                let given = if self.eat('|') { self.set()? } else { SubsetMask::EMPTY };
                self.expect(')')?;
                Ok(Atom::Mutual { left, right, given })
            }
            Some(c) => self.err(format!("expected `H(` or `I(`, found `{c}`")),
            None => self.err("expected a term, found end of input"),
        }
    }

    fn set(&mut self) -> Result<SubsetMask> {
        let mut mask = SubsetMask::EMPTY;
        loop {
            mask = mask | self.name()?;
            if !self.eat(',') {
                return Ok(mask);
            }
        }
    }

    fn name(&mut self) -> Result<SubsetMask> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_alphanumeric() || c == '_' || c == '\'') {
            self.pos += self.peek_raw().unwrap().len_utf8();
        }
        if start == self.pos {
            return self.err("expected a variable name");
        }
        let name = &self.src[start..self.pos];
        match self.names.iter().position(|n| n == name) {
            Some(i) => Ok(SubsetMask::singleton(i)),
            None => {
                self.pos = start;
                Err(Error::Parse {
                    position: start,
                    message: format!("unknown variable `{name}`"),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::default_names;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn single_mutual_information() {
        let ast = parse_expression("I(A;B)", &default_names(2)).unwrap();
        assert_eq!(ast.terms.len(), 1);
        assert_eq!(
            ast.terms[0].atom,
            Atom::Mutual {
                left: SubsetMask::new(1),
                right: SubsetMask::new(2),
                given: SubsetMask::EMPTY
            }
        );
    }

    #[test]
    fn box_has_four_terms() {
        let ast = parse_expression("I(C;D|A) + I(C;D|B) + I(A;B) - I(C;D)", &default_names(4)).unwrap();
        assert_eq!(ast.terms.len(), 4);
        assert_eq!(ast.terms[3].coeff, rat(-1, 1));
    }

    #[test]
    fn rational_scalars() {
        let ast = parse_expression("2 H(C|A,B) - 1/3 I(A;B|C)", &default_names(3)).unwrap();
        assert_eq!(ast.terms[0].coeff, rat(2, 1));
        assert_eq!(ast.terms[1].coeff, rat(-1, 3));
        assert_eq!(
            ast.terms[0].atom,
            Atom::Entropy {
                of: SubsetMask::new(4),
                given: SubsetMask::new(3)
            }
        );
    }

    #[test]
    fn tail_and_zero_literal() {
        let names = default_names(2);
        assert!(parse_expression("-H(A) + 3*H(B) >= 0", &names).unwrap().inequality);
        let zero = parse_expression(" 0 >= 0", &names).unwrap();
        assert!(zero.terms.is_empty() && zero.inequality);
        assert!(parse_expression("0 H(A)", &names).unwrap().terms[0].coeff.is_zero());
    }

    #[test]
    fn errors_report_positions() {
        let names = default_names(2);
        match parse_expression("H(A) + H(Q)", &names) {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 9);
                assert!(message.contains("unknown variable"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_expression("H(A", &names),
            Err(Error::Parse { position: 3, .. })
        ));
        assert!(parse_expression("I(A)", &names).is_err());
        assert!(parse_expression("H(A) >= 1", &names).is_err());
        assert!(parse_expression("1/0 H(A)", &names).is_err());
        assert!(parse_expression("", &names).is_err());
    }
}
