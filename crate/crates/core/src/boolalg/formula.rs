use std::fmt;
use std::sync::Arc;

use super::{Algebra, AlgebraError, Element};
use crate::syntax::{lex, Cursor, ParseError, Tok};

/// Propositional formula over the atoms of an algebra, by atom index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(usize),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    /// Truth value at the point of the powerset model holding only atom `point`.
    pub fn holds_at(&self, point: usize) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(i) => *i == point,
            Formula::Not(f) => !f.holds_at(point),
            Formula::And(l, r) => l.holds_at(point) && r.holds_at(point),
            Formula::Or(l, r) => l.holds_at(point) || r.holds_at(point),
            Formula::Implies(l, r) => !l.holds_at(point) || r.holds_at(point),
            Formula::Iff(l, r) => l.holds_at(point) == r.holds_at(point),
        }
    }

    /// Mask of the points where the formula holds.
    pub fn truth_table(&self, atoms: usize) -> u64 {
        (0..atoms)
            .filter(|&p| self.holds_at(p))
            .fold(0, |acc, p| acc | (1 << p))
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Disjunction of the atoms in `mask`, in atom order.
    pub fn dnf_of_mask(mask: u64) -> Formula {
        let mut atoms = (0..64).filter(|i| mask & (1u64 << i) != 0);
        let Some(first) = atoms.next() else {
            return Formula::False;
        };
        atoms.fold(Formula::Atom(first), |acc, i| {
            Formula::Or(Arc::new(acc), Arc::new(Formula::Atom(i)))
        })
    }

    pub fn display<'a>(&'a self, algebra: &'a Algebra) -> impl fmt::Display + 'a {
        FormulaDisplay {
            formula: self,
            algebra,
        }
    }
}

struct FormulaDisplay<'a> {
    formula: &'a Formula,
    algebra: &'a Algebra,
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(fm: &Formula, alg: &Algebra, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let bin = |f: &mut fmt::Formatter<'_>, l: &Formula, op: &str, r: &Formula| {
                f.write_str("(")?;
                go(l, alg, f)?;
                write!(f, " {op} ")?;
                go(r, alg, f)?;
                f.write_str(")")
            };
            match fm {
                Formula::True => f.write_str("true"),
                Formula::False => f.write_str("false"),
                Formula::Atom(i) => f.write_str(&alg.atoms()[*i]),
                Formula::Not(inner) => {
                    f.write_str("!")?;
                    go(inner, alg, f)
                }
                Formula::And(l, r) => bin(f, l, "&", r),
                Formula::Or(l, r) => bin(f, l, "|", r),
                Formula::Implies(l, r) => bin(f, l, "->", r),
                Formula::Iff(l, r) => bin(f, l, "<->", r),
            }
        }
        go(self.formula, self.algebra, f)
    }
}

/// Parses `text` as a formula over the atoms of `algebra`.
///
/// Precedence, tightest first: `!`, `&`, `|`, `->` (right associative), `<->`
/// (left associative). `true`, `false` and parentheses are also accepted.
pub fn parse_formula(text: &str, algebra: &Algebra) -> Result<Element, AlgebraError> {
    let tokens = lex(text)?;
    let mut cursor = Cursor::new(&tokens);
    let formula = parse_formula_tokens(&mut cursor, algebra)?;
    if !cursor.at_eof() {
        let tok = cursor.peek();
        return Err(ParseError::new(tok.pos, format!("unexpected {} after formula", tok.tok)).into());
    }
    Ok(Element::from_parsed(algebra, formula))
}

/// Parses one formula from `cursor`, stopping at the first token that cannot
/// continue it.
pub fn parse_formula_tokens(
    cursor: &mut Cursor<'_>,
    algebra: &Algebra,
) -> Result<Formula, AlgebraError> {
    FormulaParser { cursor, algebra }.iff()
}

struct FormulaParser<'c, 't, 'a> {
    cursor: &'c mut Cursor<'t>,
    algebra: &'a Algebra,
}

impl FormulaParser<'_, '_, '_> {
    fn iff(&mut self) -> Result<Formula, AlgebraError> {
        let mut lhs = self.imp()?;
        while self.cursor.eat(&Tok::DoubleArrow) {
            let rhs = self.imp()?;
            lhs = Formula::Iff(Arc::new(lhs), Arc::new(rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, AlgebraError> {
        let lhs = self.or()?;
        if self.cursor.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            return Ok(Formula::Implies(Arc::new(lhs), Arc::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, AlgebraError> {
        let mut lhs = self.and()?;
        while self.cursor.eat(&Tok::Pipe) {
            let rhs = self.and()?;
            lhs = Formula::Or(Arc::new(lhs), Arc::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, AlgebraError> {
        let mut lhs = self.not()?;
        while self.cursor.eat(&Tok::Amp) {
            let rhs = self.not()?;
            lhs = Formula::And(Arc::new(lhs), Arc::new(rhs));
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Formula, AlgebraError> {
        let tok = self.cursor.advance();
        match &tok.tok {
            Tok::Bang => Ok(Formula::Not(Arc::new(self.not()?))),
            Tok::LParen => {
                let inner = self.iff()?;
                self.cursor.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "true" => Ok(Formula::True),
            Tok::Ident(name) if name == "false" => Ok(Formula::False),
            Tok::Ident(name) => match self.algebra.atom_index(name) {
                Some(i) => Ok(Formula::Atom(i)),
                None => Err(AlgebraError::UnknownAtom {
                    name: name.clone(),
                    pos: tok.pos,
                }),
            },
            other => Err(ParseError::new(tok.pos, format!("expected a formula, found {other}")).into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::Backend;

    fn xy() -> Algebra {
        Algebra::bitset(&["x", "y"]).unwrap()
    }

    // Oracle: evaluate a formula at every single-atom point by hand.
    fn table(alg: &Algebra, f: impl Fn(&dyn Fn(&str) -> bool) -> bool) -> u64 {
        let mut mask = 0;
        for p in 0..alg.atom_count() {
            let at = |name: &str| alg.atoms()[p] == name;
            if f(&at) {
                mask |= 1 << p;
            }
        }
        mask
    }

    #[test]
    fn spec_examples() {
        let alg = xy();
        assert!(alg.parse("true").unwrap().is_top());
        assert_eq!(alg.parse("x | y").unwrap().bits(), 0b11);
        let expected = table(&alg, |at: &dyn Fn(&str) -> bool| !(at("x") && at("y")));
        assert_eq!(expected, 0b11);
        assert_eq!(alg.parse("!(x & y)").unwrap().bits(), expected);
    }

    #[test]
    fn precedence_and_associativity() {
        let alg = Algebra::bitset(&["a", "b", "c"]).unwrap();
        // & binds tighter than |
        assert_eq!(alg.parse("a | b & c").unwrap(), alg.parse("a | (b & c)").unwrap());
        // -> is right associative: a -> b -> c == a -> (b -> c)
        assert_eq!(
            alg.parse("a -> b -> c").unwrap(),
            alg.parse("a -> (b -> c)").unwrap()
        );
        assert_ne!(
            alg.parse("a -> b -> c").unwrap(),
            alg.parse("(a -> b) -> c").unwrap()
        );
        // <-> is loosest
        assert_eq!(
            alg.parse("a -> b <-> c").unwrap(),
            alg.parse("(a -> b) <-> c").unwrap()
        );
        assert_eq!(alg.parse("!a & b").unwrap(), alg.parse("(!a) & b").unwrap());
        let hand = table(&alg, |at: &dyn Fn(&str) -> bool| (at("a") || at("b")) == !at("c"));
        assert_eq!(alg.parse("a | b <-> !c").unwrap().bits(), hand);
    }

    #[test]
    fn errors_carry_positions() {
        let alg = xy();
        match alg.parse("x & (y | z)") {
            Err(AlgebraError::UnknownAtom { name, pos }) => {
                assert_eq!(name, "z");
                assert_eq!((pos.line, pos.column), (1, 10));
            }
            other => panic!("unexpected {other:?}"),
        }
        match alg.parse("x &") {
            Err(AlgebraError::Parse(e)) => assert_eq!(e.pos.column, 4),
            other => panic!("unexpected {other:?}"),
        }
        match alg.parse("x y") {
            Err(AlgebraError::Parse(e)) => assert_eq!(e.pos.column, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(alg.parse("(x"), Err(AlgebraError::Parse(_))));
    }

    #[test]
    fn formula_backend_keeps_the_parsed_tree() {
        let alg = Algebra::new(["x", "y"], Backend::Formula).unwrap();
        let e = alg.parse("x -> y").unwrap();
        assert_eq!(e.formula().unwrap().display(&alg).to_string(), "(x -> y)");
        assert_eq!(e.bits(), 0b10);
    }

    #[test]
    fn dnf_round_trips_through_the_parser() {
        let alg = Algebra::numbered(3, Backend::Bitset).unwrap();
        for e in alg.elements() {
            assert_eq!(alg.parse(&e.to_dnf()).unwrap(), e);
        }
    }
}
