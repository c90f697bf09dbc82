//! A small arithmetic expression language for scalars and algebra elements
//! in recipes: integers, fractions, named generators, `+ - * / ^` and
//! parentheses. Example: `"t*s + 2/3"`.

use crate::error::{Error, Result};
use crate::field::{Algebra, Field};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidInput(format!("cannot parse '{}': {msg} at position {}", self.src, self.pos))
    }

    fn peek(&mut self) -> Option<char> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some('-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some('/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                // implicit multiplication such as "2t" or "(t+1)(s)"
                Some(c) if c.is_ascii_alphabetic() || c == '(' => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.peek();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e = digits.parse::<u32>().map_err(|_| self.err("expected exponent"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                digits.parse::<i64>().map(Expr::Int).map_err(|_| self.err("integer too large"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Var(self.chars[start..self.pos].iter().collect()))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src, chars: src.chars().collect(), pos: 0 };
        let e = p.sum()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Evaluates in the field itself; division is field division.
    pub fn eval_field<F: Field>(&self, f: &F, var: &dyn Fn(&str) -> Option<F::Elem>) -> Result<F::Elem> {
        Ok(match self {
            Expr::Int(n) => f.from_i64(*n),
            Expr::Var(name) => {
                var(name).ok_or_else(|| Error::InvalidInput(format!("unknown symbol '{name}'")))?
            }
            Expr::Neg(a) => f.neg(&a.eval_field(f, var)?),
            Expr::Add(a, b) => f.add(&a.eval_field(f, var)?, &b.eval_field(f, var)?),
            Expr::Sub(a, b) => f.sub(&a.eval_field(f, var)?, &b.eval_field(f, var)?),
            Expr::Mul(a, b) => f.mul(&a.eval_field(f, var)?, &b.eval_field(f, var)?),
            Expr::Div(a, b) => {
                let d = b.eval_field(f, var)?;
                f.div(&a.eval_field(f, var)?, &d)
                    .ok_or_else(|| Error::InvalidInput("division by zero".into()))?
            }
            Expr::Pow(a, e) => f.pow(&a.eval_field(f, var)?, *e as u64),
        })
    }

    /// Evaluates in an F-algebra. Numeric subexpressions (no symbols) are
    /// evaluated in F, so divisions must have a numeric divisor.
    pub fn eval_algebra<F: Field, R: Algebra<F>>(
        &self,
        f: &F,
        r: &R,
        var: &dyn Fn(&str) -> Option<R::Elem>,
    ) -> Result<R::Elem> {
        if !self.has_symbols() {
            return Ok(r.embed(&self.eval_field(f, &|_| None)?));
        }
        Ok(match self {
            Expr::Int(n) => r.from_i64(*n),
            Expr::Var(name) => {
                var(name).ok_or_else(|| Error::InvalidInput(format!("unknown symbol '{name}'")))?
            }
            Expr::Neg(a) => r.neg(&a.eval_algebra(f, r, var)?),
            Expr::Add(a, b) => r.add(&a.eval_algebra(f, r, var)?, &b.eval_algebra(f, r, var)?),
            Expr::Sub(a, b) => r.sub(&a.eval_algebra(f, r, var)?, &b.eval_algebra(f, r, var)?),
            Expr::Mul(a, b) => r.mul(&a.eval_algebra(f, r, var)?, &b.eval_algebra(f, r, var)?),
            Expr::Div(a, b) => {
                if b.has_symbols() {
                    return Err(Error::InvalidInput("division by a non-scalar expression".into()));
                }
                let d = b.eval_field(f, &|_| None)?;
                let di = f.inv(&d).ok_or_else(|| Error::InvalidInput("division by zero".into()))?;
                r.scale(&di, &a.eval_algebra(f, r, var)?)
            }
            Expr::Pow(a, e) => r.pow(&a.eval_algebra(f, r, var)?, *e as u64),
        })
    }

    pub fn has_symbols(&self) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Var(_) => true,
            Expr::Neg(a) | Expr::Pow(a, _) => a.has_symbols(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.has_symbols() || b.has_symbols()
            }
        }
    }

    /// Coefficients (low degree first) of a univariate polynomial in `var`.
    pub fn univariate<F: Field>(&self, f: &F, var: &str) -> Result<Vec<F::Elem>> {
        use crate::field::upoly;
        let field_sym = |_: &str| None;
        Ok(match self {
            Expr::Int(_) => vec![self.eval_field(f, &field_sym)?],
            Expr::Var(name) if name == var => vec![f.zero(), f.one()],
            Expr::Var(name) => {
                // a generator of the base field, e.g. "a" in GF(4)
                vec![f.elem_from_json(&serde_json::Value::String(name.clone()))?]
            }
            Expr::Neg(a) => upoly::scale(f, &f.from_i64(-1), &a.univariate(f, var)?),
            Expr::Add(a, b) => upoly::add(f, &a.univariate(f, var)?, &b.univariate(f, var)?),
            Expr::Sub(a, b) => upoly::sub(f, &a.univariate(f, var)?, &b.univariate(f, var)?),
            Expr::Mul(a, b) => upoly::mul(f, &a.univariate(f, var)?, &b.univariate(f, var)?),
            Expr::Div(a, b) => {
                let d = b.univariate(f, var)?;
                if d.len() != 1 {
                    return Err(Error::InvalidInput("division by a non-constant polynomial".into()));
                }
                let di = f.inv(&d[0]).ok_or_else(|| Error::InvalidInput("division by zero".into()))?;
                upoly::scale(f, &di, &a.univariate(f, var)?)
            }
            Expr::Pow(a, e) => {
                let base = a.univariate(f, var)?;
                let mut acc = vec![f.one()];
                for _ in 0..*e {
                    acc = upoly::mul(f, &acc, &base);
                }
                acc
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};

    #[test]
    fn parses_fractions() {
        let q = Rationals;
        let v = Expr::parse("-3/4 + 2^3").unwrap().eval_field(&q, &|_| None).unwrap();
        assert_eq!(v, q.from_ratio(29, 4).unwrap());
    }

    #[test]
    fn univariate_polynomial() {
        let f = FiniteField::prime(2).unwrap();
        let c = Expr::parse("x^3+x+1").unwrap().univariate(&f, "x").unwrap();
        assert_eq!(c, vec![1, 1, 0, 1]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Expr::parse("1 + * 2").is_err());
        assert!(Expr::parse("(1 + 2").is_err());
    }
}
