//! ASCII notation for objects and blocks.
//!
//! ```text
//! expr  := term ("+" term)* | "0"
//! term  := schur twist? shift?
//! schur := "O" | "S{k}Uv" | "S{k}U" | "Sigma{a,b}Uv"
//! twist := "(" [c]H [±[d]h] ")" | "(" [d]h ")"
//! shift := "[" k "]"
//! ```
//!
//! Blocks use the same twist syntax after a name such as `A^{2}_{1}`, `B{0}`,
//! `F'{1}`, `H'`, `Stair{2}` or `Cell{a,b}`.

use crate::collections::{Block, BlockId};
use crate::error::{Error, Result};
use crate::flagx::{EObject, ETerm};
use crate::weights::Weight;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{s}'")))
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        let digits = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits {
            return Err(self.err("expected integer"));
        }
        let v = self.src[start..end].parse::<i64>().map_err(|e| self.err(e.to_string()))?;
        self.pos = end;
        Ok(v)
    }

    fn braced_int(&mut self) -> Result<i64> {
        self.expect("{")?;
        let v = self.int()?;
        self.expect("}")?;
        Ok(v)
    }

    fn braced_nat(&mut self) -> Result<u32> {
        let at = self.pos;
        let v = self.braced_int()?;
        u32::try_from(v).map_err(|_| Error::Parse { pos: at, msg: format!("expected nonnegative index, got {v}") })
    }

    /// A signed coefficient followed by `sym`; the coefficient may be omitted.
    fn coef(&mut self, sym: char) -> Result<Option<i64>> {
        self.skip_ws();
        let save = self.pos;
        let mut sign = 1;
        if self.eat("-") {
            sign = -1;
        } else {
            self.eat("+");
        }
        self.skip_ws();
        let mag = if self.rest().starts_with(|c: char| c.is_ascii_digit()) { self.int()? } else { 1 };
        if self.rest().starts_with(sym) {
            self.pos += sym.len_utf8();
            Ok(Some(sign * mag))
        } else {
            self.pos = save;
            Ok(None)
        }
    }

    /// `(cH±dh)`; returns `(big, small)`.
    fn twist(&mut self) -> Result<(i64, i64)> {
        if self.peek() != Some('(') {
            return Ok((0, 0));
        }
        self.expect("(")?;
        let mut big = 0;
        let mut small = 0;
        let mut any = false;
        loop {
            if self.peek() == Some(')') {
                break;
            }
            if let Some(c) = self.coef('H')? {
                big += c;
            } else if let Some(d) = self.coef('h')? {
                small += d;
            } else {
                return Err(self.err("expected a multiple of H or h"));
            }
            any = true;
        }
        if !any {
            return Err(self.err("empty twist"));
        }
        self.expect(")")?;
        Ok((big, small))
    }

    fn shift(&mut self) -> Result<i64> {
        if self.peek() != Some('[') {
            return Ok(0);
        }
        self.expect("[")?;
        let v = self.int()?;
        self.expect("]")?;
        Ok(v)
    }

    fn schur(&mut self) -> Result<Weight> {
        let at = self.pos;
        if self.eat("Sigma") {
            self.expect("{")?;
            let a = self.int()?;
            self.expect(",")?;
            let b = self.int()?;
            self.expect("}")?;
            self.expect("Uv")?;
            return Weight::new(a, b).map_err(|e| match e {
                Error::WeightOrder { .. } => e,
                _ => Error::Parse { pos: at, msg: e.to_string() },
            });
        }
        if self.eat("S") {
            let k = self.braced_nat()?;
            if self.eat("Uv") {
                return Ok(Weight::sym(k));
            }
            self.expect("U")?;
            return Ok(Weight::sym_dual(k));
        }
        if self.eat("O") {
            return Ok(Weight::line(0));
        }
        Err(self.err("expected O, S{k}Uv, S{k}U or Sigma{a,b}Uv"))
    }

    fn term(&mut self) -> Result<ETerm> {
        let w = self.schur()?;
        let (big, small) = self.twist()?;
        let shift = self.shift()?;
        Ok(ETerm { weight: w.det_twist(big), twist_h: small, shift })
    }

    fn object(&mut self) -> Result<EObject> {
        if self.eat("0") {
            return Ok(EObject::zero());
        }
        let mut obj = EObject::zero();
        loop {
            obj.add_term(self.term()?, 1);
            if !self.eat("+") {
                break;
            }
        }
        Ok(obj)
    }

    fn block(&mut self) -> Result<Block> {
        self.skip_ws();
        let id = if self.eat("Stair") {
            BlockId::Stair(self.braced_nat()?)
        } else if self.eat("Cell") {
            self.expect("{")?;
            let a = self.int()?;
            self.expect(",")?;
            let b = self.int()?;
            self.expect("}")?;
            BlockId::Cell(a, b)
        } else if self.rest().starts_with("S{") {
            self.expect("S")?;
            let k = self.braced_nat()?;
            self.expect("Uv")?;
            BlockId::Sym(k)
        } else if self.eat("A") {
            let up = if self.eat("^") { Some(self.braced_nat()?) } else { None };
            let low = if self.eat("_") { Some(self.braced_nat()?) } else { None };
            match (up, low) {
                (None, None) => BlockId::A,
                (Some(u), None) => BlockId::AUp(u),
                (None, Some(l)) => BlockId::ALow(l),
                (Some(u), Some(l)) => BlockId::AUpLow(u, l),
            }
        } else if self.eat("B") {
            BlockId::B(self.braced_nat()?)
        } else if self.eat("C") {
            BlockId::C(self.braced_nat()?)
        } else if self.eat("E") {
            BlockId::E(self.braced_nat()?)
        } else if self.eat("F'") {
            BlockId::FPrime(self.braced_nat()?)
        } else if self.eat("F") {
            BlockId::F(self.braced_nat()?)
        } else if self.eat("H'") {
            BlockId::HPrime
        } else if self.eat("H") {
            BlockId::H
        } else if self.eat("O") {
            BlockId::Cell(0, 0)
        } else {
            return Err(self.err("expected a block name"));
        };
        let (big, small) = self.twist()?;
        Ok(Block::tw(id, big, small))
    }
}

pub fn parse_object(text: &str) -> Result<EObject> {
    let mut c = Cursor::new(text);
    let obj = c.object()?;
    if !c.at_end() {
        return Err(c.err("trailing input"));
    }
    Ok(obj)
}

pub fn parse_block(text: &str) -> Result<Block> {
    let mut c = Cursor::new(text);
    let b = c.block()?;
    if !c.at_end() {
        return Err(c.err("trailing input"));
    }
    Ok(b)
}

/// Comma-separated blocks; an empty string is the empty list.
pub fn parse_block_list(text: &str) -> Result<Vec<Block>> {
    let mut c = Cursor::new(text);
    let mut out = Vec::new();
    if c.at_end() {
        return Ok(out);
    }
    loop {
        out.push(c.block()?);
        if !c.eat(",") {
            break;
        }
    }
    if !c.at_end() {
        return Err(c.err("trailing input"));
    }
    Ok(out)
}

/// Parse a Grassmannian bundle: an expression with no `h` twists and no shifts.
pub fn parse_gr(text: &str) -> Result<crate::weights::GrSum> {
    let obj = parse_object(text)?;
    let mut out = crate::weights::GrSum::zero();
    for (t, m) in obj.iter() {
        if t.twist_h != 0 {
            return Err(Error::Parse { pos: 0, msg: "h-twists are not defined on Gr(2,N)".into() });
        }
        out.add_term(t.weight, t.shift, m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn folding_rule() {
        let o = parse_object("S{2}Uv(1H-1h)").unwrap();
        assert_eq!(o, EObject::bundle(Weight::new(3, 1).unwrap(), -1));
        assert_eq!(parse_object("O(-1h)").unwrap(), EObject::line(-1, 0));
        assert_eq!(parse_object("O(H-h)").unwrap(), EObject::line(-1, 1));
        assert_eq!(parse_object("S{3}U").unwrap(), EObject::bundle(Weight::sym_dual(3), 0));
        assert_eq!(parse_object("Sigma{-2,-2}Uv").unwrap(), EObject::bundle(Weight::line(-2), 0));
    }

    #[test]
    fn weight_violation() {
        assert_eq!(parse_object("Sigma{0,1}Uv"), Err(Error::WeightOrder { a: 0, b: 1 }));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_object("S{2}Uv(1H-1x)") {
            Err(Error::Parse { pos, .. }) => assert!(pos >= 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_object("Q"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_object("O O"), Err(Error::Parse { .. })));
    }

    #[test]
    fn sums_and_shifts() {
        let o = parse_object("O + S{1}Uv(-1h)[2]").unwrap();
        let expect = EObject::line(0, 0).plus(&EObject::sym(1, 0, -1).shift(2));
        assert_eq!(o, expect);
        assert_eq!(parse_object("0").unwrap(), EObject::zero());
    }

    #[test]
    fn blocks() {
        assert_eq!(parse_block("A^{2}(1H-1h)").unwrap(), Block::tw(BlockId::AUp(2), 1, -1));
        assert_eq!(parse_block("A_{1}(-1h)").unwrap(), Block::tw(BlockId::ALow(1), 0, -1));
        assert_eq!(parse_block("A^{2}_{1}").unwrap(), Block::new(BlockId::AUpLow(2, 1)));
        assert_eq!(parse_block("F'{0}").unwrap(), Block::new(BlockId::FPrime(0)));
        assert_eq!(parse_block("H'").unwrap(), Block::new(BlockId::HPrime));
        assert_eq!(parse_block("Cell{-1,2}").unwrap(), Block::new(BlockId::Cell(-1, 2)));
        let list = parse_block_list("B{0}, S{1}Uv(1H-1h), Cell{0,1}").unwrap();
        assert_eq!(list.len(), 3);
        assert!(parse_block_list("").unwrap().is_empty());
        for b in list {
            assert_eq!(parse_block(&b.to_script()).unwrap(), b);
        }
    }

    fn term_strategy() -> impl Strategy<Value = EObject> {
        (0u32..6, -5i64..5, -5i64..5, -2i64..3).prop_map(|(k, c, d, s)| EObject::sym(k, c, d).shift(s))
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(terms in proptest::collection::vec(term_strategy(), 1..4)) {
            let obj = terms.iter().fold(EObject::zero(), |acc, t| acc.plus(t));
            prop_assert_eq!(parse_object(&obj.to_expr()).unwrap(), obj);
        }
    }
}
