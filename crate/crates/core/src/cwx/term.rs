//! Parser for the term syntax `rel(2->1, join(1,2, un(v(1,0), v(2,1))))`.

use super::{CwExpr, Label};
use crate::error::{Error, Result};
use crate::graph::VertexId;

pub(super) fn parse(s: &str) -> Result<CwExpr> {
    let mut p = Parser { src: s.as_bytes(), at: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.at != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    at: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Expr(format!("{msg} at byte {}", self.at))
    }

    fn skip_ws(&mut self) {
        while self.at < self.src.len() && self.src[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.at..].starts_with(tok.as_bytes()) {
            self.at += tok.len();
            Ok(())
        } else {
            Err(self.err(&format!("expected {tok:?}")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.src.len() && self.src[self.at].is_ascii_digit() {
            self.at += 1;
        }
        std::str::from_utf8(&self.src[start..self.at])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.src.len() && self.src[self.at].is_ascii_alphabetic() {
            self.at += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.at]).expect("ascii letters"))
    }

    fn label(&mut self) -> Result<Label> {
        let l = self.number()?;
        if l == 0 {
            return Err(self.err("labels are positive"));
        }
        Ok(l)
    }

    fn expr(&mut self) -> Result<CwExpr> {
        let head = self.ident()?.to_string();
        self.eat("(")?;
        let e = match head.as_str() {
            "v" => {
                let l = self.label()?;
                self.eat(",")?;
                CwExpr::v(l, VertexId(self.number()?))
            }
            "un" => {
                let a = self.expr()?;
                self.eat(",")?;
                CwExpr::union(a, self.expr()?)
            }
            "join" => {
                let i = self.label()?;
                self.eat(",")?;
                let j = self.label()?;
                self.eat(",")?;
                self.expr()?.join(i, j)
            }
            "rel" => {
                let i = self.label()?;
                self.eat("->")?;
                let j = self.label()?;
                self.eat(",")?;
                self.expr()?.relabel(i, j)
            }
            _ => return Err(self.err(&format!("unknown operation {head:?}"))),
        };
        self.eat(")")?;
        Ok(e)
    }
}
