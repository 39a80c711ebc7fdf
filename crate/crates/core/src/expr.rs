//! Textual expression language for describing coefficient modules, used by
//! the command-line interface and the test battery.  The grammar:
//!
//! ```text
//! expr   := "Triv"
//!         | "Sym(" int "," int ")"
//!         | "Fun(" kind "," int ")"
//!         | "Coset(" kind "," int ";" matrix { "," matrix } ")"
//!         | "dual(" expr ")" | "plus(" expr ")"
//!         | "tensor(" expr "," expr ")" | "sum(" expr "," expr ")"
//! kind   := "SL2" | "GL2"
//! matrix := "[[" int "," int "],[" int "," int "]]"
//! ```
//!
//! Whitespace is permitted anywhere between tokens; the canonical printer
//! emits none.

use std::fmt;

use crate::group::GroupKind;
use crate::module::{GammaModule, ModuleError};
use crate::ring::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleExpr {
    Triv,
    Sym { k: u32, j: i64 },
    Fun { kind: GroupKind, n: u64 },
    Coset { kind: GroupKind, n: u64, gens: Vec<[i64; 4]> },
    Dual(Box<ModuleExpr>),
    Plus(Box<ModuleExpr>),
    Tensor(Box<ModuleExpr>, Box<ModuleExpr>),
    Sum(Box<ModuleExpr>, Box<ModuleExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ExprError {}

impl ModuleExpr {
    pub fn parse(text: &str) -> Result<ModuleExpr, ExprError> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input after expression"));
        }
        Ok(e)
    }

    /// Canonical textual form: no whitespace, matrices printed verbatim.
    pub fn canonical(&self) -> String {
        match self {
            ModuleExpr::Triv => "Triv".to_string(),
            ModuleExpr::Sym { k, j } => format!("Sym({},{})", k, j),
            ModuleExpr::Fun { kind, n } => format!("Fun({},{})", kind.label(), n),
            ModuleExpr::Coset { kind, n, gens } => {
                let gs: Vec<String> = gens
                    .iter()
                    .map(|g| format!("[[{},{}],[{},{}]]", g[0], g[1], g[2], g[3]))
                    .collect();
                format!("Coset({},{};{})", kind.label(), n, gs.join(","))
            }
            ModuleExpr::Dual(e) => format!("dual({})", e.canonical()),
            ModuleExpr::Plus(e) => format!("plus({})", e.canonical()),
            ModuleExpr::Tensor(a, b) => format!("tensor({},{})", a.canonical(), b.canonical()),
            ModuleExpr::Sum(a, b) => format!("sum({},{})", a.canonical(), b.canonical()),
        }
    }

    /// Build the module this expression describes over the given ring.
    pub fn eval(&self, ring: RingSpec) -> Result<GammaModule, ModuleError> {
        match self {
            ModuleExpr::Triv => Ok(GammaModule::trivial(ring)),
            ModuleExpr::Sym { k, j } => GammaModule::sym_power(ring, *k, *j),
            ModuleExpr::Fun { kind, n } => GammaModule::functions(ring, *kind, *n),
            ModuleExpr::Coset { kind, n, gens } => {
                GammaModule::coset_functions(ring, *kind, *n, gens)
            }
            ModuleExpr::Dual(e) => Ok(GammaModule::dual(&e.eval(ring)?)),
            ModuleExpr::Plus(e) => Ok(GammaModule::plus_part(&e.eval(ring)?)),
            ModuleExpr::Tensor(a, b) => GammaModule::tensor(&a.eval(ring)?, &b.eval(ring)?),
            ModuleExpr::Sum(a, b) => GammaModule::direct_sum(&a.eval(ring)?, &b.eval(ring)?),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExprError {
        ExprError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> Result<(), ExprError> {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", token)))
        }
    }

    fn peek_keyword(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.bytes.len() && (self.bytes[end].is_ascii_alphanumeric()) {
            end += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..end]).into_owned()
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        if end < self.bytes.len() && self.bytes[end] == b'-' {
            end += 1;
        }
        let digits_start = end;
        while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits_start {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..end]).unwrap();
        let v: i64 = text
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        self.pos = end;
        Ok(v)
    }

    fn kind(&mut self) -> Result<GroupKind, ExprError> {
        let kw = self.peek_keyword();
        match kw.as_str() {
            "SL2" => {
                self.pos += 3;
                Ok(GroupKind::SL2)
            }
            "GL2" => {
                self.pos += 3;
                Ok(GroupKind::GL2)
            }
            _ => Err(self.err("expected group kind SL2 or GL2")),
        }
    }

    fn matrix(&mut self) -> Result<[i64; 4], ExprError> {
        self.eat("[")?;
        self.eat("[")?;
        let a = self.int()?;
        self.eat(",")?;
        let b = self.int()?;
        self.eat("]")?;
        self.eat(",")?;
        self.eat("[")?;
        let c = self.int()?;
        self.eat(",")?;
        let d = self.int()?;
        self.eat("]")?;
        self.eat("]")?;
        Ok([a, b, c, d])
    }

    fn expr(&mut self) -> Result<ModuleExpr, ExprError> {
        let kw = self.peek_keyword();
        match kw.as_str() {
            "Triv" => {
                self.pos += 4;
                Ok(ModuleExpr::Triv)
            }
            "Sym" => {
                self.pos += 3;
                self.eat("(")?;
                let k = self.int()?;
                if !(0..=i64::from(u32::MAX)).contains(&k) {
                    return Err(self.err("symmetric power degree must be non-negative"));
                }
                self.eat(",")?;
                let j = self.int()?;
                self.eat(")")?;
                Ok(ModuleExpr::Sym { k: k as u32, j })
            }
            "Fun" => {
                self.pos += 3;
                self.eat("(")?;
                let kind = self.kind()?;
                self.eat(",")?;
                let n = self.level()?;
                self.eat(")")?;
                Ok(ModuleExpr::Fun { kind, n })
            }
            "Coset" => {
                self.pos += 5;
                self.eat("(")?;
                let kind = self.kind()?;
                self.eat(",")?;
                let n = self.level()?;
                self.eat(";")?;
                let mut gens = vec![self.matrix()?];
                loop {
                    self.skip_ws();
                    if self.bytes.get(self.pos) == Some(&b',') {
                        self.pos += 1;
                        gens.push(self.matrix()?);
                    } else {
                        break;
                    }
                }
                self.eat(")")?;
                Ok(ModuleExpr::Coset { kind, n, gens })
            }
            "dual" => {
                self.pos += 4;
                self.eat("(")?;
                let e = self.expr()?;
                self.eat(")")?;
                Ok(ModuleExpr::Dual(Box::new(e)))
            }
            "plus" => {
                self.pos += 4;
                self.eat("(")?;
                let e = self.expr()?;
                self.eat(")")?;
                Ok(ModuleExpr::Plus(Box::new(e)))
            }
            "tensor" => {
                self.pos += 6;
                self.eat("(")?;
                let a = self.expr()?;
                self.eat(",")?;
                let b = self.expr()?;
                self.eat(")")?;
                Ok(ModuleExpr::Tensor(Box::new(a), Box::new(b)))
            }
            "sum" => {
                self.pos += 3;
                self.eat("(")?;
                let a = self.expr()?;
                self.eat(",")?;
                let b = self.expr()?;
                self.eat(")")?;
                Ok(ModuleExpr::Sum(Box::new(a), Box::new(b)))
            }
            _ => Err(self.err(
                "expected one of Triv, Sym, Fun, Coset, dual, plus, tensor, sum",
            )),
        }
    }

    fn level(&mut self) -> Result<u64, ExprError> {
        let n = self.int()?;
        if n < 0 {
            return Err(self.err("level must be non-negative"));
        }
        Ok(n as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings_round_trip() {
        let cases = [
            "Triv",
            "Sym(2,0)",
            "Sym(12,-3)",
            "Fun(SL2,5)",
            "Fun(GL2,12)",
            "Coset(SL2,4;[[0,1],[3,0]])",
            "Coset(GL2,8;[[1,4],[0,1]],[[1,0],[4,1]])",
            "dual(Sym(4,0))",
            "plus(Fun(SL2,3))",
            "tensor(Fun(SL2,5),Sym(2,0))",
            "sum(dual(Sym(3,0)),plus(tensor(Triv,Fun(GL2,2))))",
        ];
        for c in cases {
            let e = ModuleExpr::parse(c).unwrap_or_else(|err| panic!("{}: {}", c, err));
            assert_eq!(e.canonical(), c);
        }
    }

    #[test]
    fn whitespace_is_tolerated_but_not_printed() {
        let e = ModuleExpr::parse(" tensor( Sym( 2 , 0 ) , dual( Fun( SL2 , 3 ) ) ) ").unwrap();
        assert_eq!(e.canonical(), "tensor(Sym(2,0),dual(Fun(SL2,3)))");
    }

    #[test]
    fn errors_carry_positions() {
        let err = ModuleExpr::parse("Sym(2").unwrap_err();
        assert_eq!(err.pos, 5);
        let err = ModuleExpr::parse("Foo").unwrap_err();
        assert_eq!(err.pos, 0);
        let err = ModuleExpr::parse("Triv)").unwrap_err();
        assert_eq!(err.pos, 4);
        assert!(err.to_string().contains("trailing"));
        let err = ModuleExpr::parse("Sym(2,)").unwrap_err();
        assert_eq!(err.pos, 6);
    }

    #[test]
    fn eval_builds_modules_with_expected_ranks() {
        let q = RingSpec::Q;
        let cases = [
            ("Triv", 1usize),
            ("Sym(6,0)", 7),
            ("tensor(Sym(1,0),Sym(1,0))", 4),
            ("plus(Sym(3,0))", 0),
            ("sum(Sym(1,0),Sym(2,0))", 5),
            ("Coset(SL2,4;[[0,1],[3,0]])", 12),
            ("dual(Fun(SL2,2))", 6),
        ];
        for (text, rank) in cases {
            let m = ModuleExpr::parse(text).unwrap().eval(q).unwrap();
            assert_eq!(m.rank(), rank, "{}", text);
            assert!(m.verify_presentation(), "{}", text);
        }
    }

    #[test]
    fn eval_labels_match_canonical_text_for_reduced_generators() {
        let text = "Coset(SL2,4;[[0,1],[3,0]])";
        let m = ModuleExpr::parse(text).unwrap().eval(RingSpec::Q).unwrap();
        assert_eq!(m.label(), text);
    }

    #[test]
    fn eval_propagates_construction_errors() {
        let e = ModuleExpr::parse("Fun(SL2,40)").unwrap();
        assert!(e.eval(RingSpec::Q).is_err());
    }
}
