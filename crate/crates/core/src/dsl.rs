//! The contract specification language read by `agc eval` and `agc check`.
//!
//! ```text
//! universe x y;
//! contract Goal { assume: true; guarantee: x; }
//! contract Part { assume: x; guarantee: true; }
//! let Missing = quotient(Goal, Part);
//! check refines(compose(Missing, Part), Goal);
//! print Missing;
//! ```
//!
//! A file declares one universe, then bindings, then queries. Names must be
//! defined before use and may not be rebound.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::actions::{act_left, act_right};
use crate::boolalg::{parse_formula_tokens, Algebra, AlgebraError, Backend, Element, DEFAULT_ATOM_CAP};
use crate::contract::{Contract, ContractOp};
use crate::report::Witness;
use crate::syntax::{lex, Cursor, ParseError, Position, Tok};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{pos}: `{name}` is already defined at {first}")]
    DuplicateName {
        name: String,
        pos: Position,
        first: Position,
    },
    #[error("{pos}: unknown name `{name}`")]
    UnknownName { name: String, pos: Position },
    #[error("{pos}: unknown atom `{name}`")]
    UnknownAtom { name: String, pos: Position },
    #[error("{pos}: invalid universe: {source}")]
    Universe { source: AlgebraError, pos: Position },
}

impl DslError {
    pub fn position(&self) -> Position {
        match self {
            DslError::Parse(e) => e.pos,
            DslError::DuplicateName { pos, .. }
            | DslError::UnknownName { pos, .. }
            | DslError::UnknownAtom { pos, .. }
            | DslError::Universe { pos, .. } => *pos,
        }
    }

    fn from_formula(err: AlgebraError, at: Position) -> DslError {
        match err {
            AlgebraError::UnknownAtom { name, pos } => DslError::UnknownAtom { name, pos },
            AlgebraError::Parse(e) => DslError::Parse(e),
            other => DslError::Parse(ParseError::new(at, other.to_string())),
        }
    }
}

/// A contract-valued expression. Names are resolved to binding indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name { name: String, index: usize },
    Top,
    Bottom,
    Identity,
    Binary {
        op: ContractOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Recip(Box<Expr>),
    ScaleLeft(Element, Box<Expr>),
    ScaleRight(Box<Expr>, Element),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name { name, .. } => f.write_str(name),
            Expr::Top => f.write_str("Top"),
            Expr::Bottom => f.write_str("Bottom"),
            Expr::Identity => f.write_str("Identity"),
            Expr::Binary { op, lhs, rhs } => write!(f, "{}({lhs}, {rhs})", op.surface_name()),
            Expr::Recip(c) => write!(f, "recip({c})"),
            Expr::ScaleLeft(b, c) => write!(f, "scale_left({}, {c})", b.to_dnf()),
            Expr::ScaleRight(c, b) => write!(f, "scale_right({c}, {})", b.to_dnf()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BindingValue {
    /// A `contract { ... }` block, kept as written.
    Literal { assume: Element, guarantee: Element },
    Expr(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub pos: Position,
    pub value: BindingValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryKind {
    CheckRefines,
    CheckEqual,
    AssertCanonical,
    Print,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub kind: QueryKind,
    pub operands: Vec<Expr>,
    pub pos: Position,
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ops = &self.operands;
        match self.kind {
            QueryKind::CheckRefines => write!(f, "check refines({}, {})", ops[0], ops[1]),
            QueryKind::CheckEqual => write!(f, "check equal({}, {})", ops[0], ops[1]),
            QueryKind::AssertCanonical => write!(f, "check canonical({})", ops[0]),
            QueryKind::Print => write!(f, "print {}", ops[0]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub universe: Algebra,
    pub bindings: Vec<Binding>,
    pub queries: Vec<Query>,
}

pub fn parse_spec(text: &str) -> Result<SpecFile, DslError> {
    parse_spec_with_cap(text, DEFAULT_ATOM_CAP)
}

/// Parses a specification whose universe may hold up to `cap` atoms.
pub fn parse_spec_with_cap(text: &str, cap: usize) -> Result<SpecFile, DslError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        cursor: Cursor::new(&tokens),
        algebra: None,
        bindings: Vec::new(),
    };
    parser.file(cap)
}

/// Parses the canonical rendering `contract(assume = <formula>, guarantee = <formula>)`.
/// The pair is canonicalized.
pub fn parse_contract(text: &str, algebra: &Algebra) -> Result<Contract, DslError> {
    let tokens = lex(text)?;
    let mut cursor = Cursor::new(&tokens);
    keyword(&mut cursor, "contract")?;
    cursor.expect(&Tok::LParen)?;
    keyword(&mut cursor, "assume")?;
    cursor.expect(&Tok::Equals)?;
    let assume = formula(&mut cursor, algebra)?;
    cursor.expect(&Tok::Comma)?;
    keyword(&mut cursor, "guarantee")?;
    cursor.expect(&Tok::Equals)?;
    let guarantee = formula(&mut cursor, algebra)?;
    cursor.expect(&Tok::RParen)?;
    expect_eof(&cursor)?;
    Ok(Contract::new(assume, guarantee).expect("both sides parsed over one algebra"))
}

fn keyword(cursor: &mut Cursor<'_>, word: &str) -> Result<Position, DslError> {
    let next = cursor.peek();
    match &next.tok {
        Tok::Ident(name) if name == word => {
            cursor.advance();
            Ok(next.pos)
        }
        other => Err(ParseError::new(next.pos, format!("expected `{word}`, found {other}")).into()),
    }
}

fn formula(cursor: &mut Cursor<'_>, algebra: &Algebra) -> Result<Element, DslError> {
    let at = cursor.peek().pos;
    parse_formula_tokens(cursor, algebra)
        .map(|f| Element::from_parsed(algebra, f))
        .map_err(|e| DslError::from_formula(e, at))
}

fn expect_eof(cursor: &Cursor<'_>) -> Result<(), DslError> {
    let next = cursor.peek();
    if next.tok == Tok::Eof {
        Ok(())
    } else {
        Err(ParseError::new(next.pos, format!("expected end of input, found {}", next.tok)).into())
    }
}

const RESERVED: [&str; 9] = [
    "Top", "Bottom", "Identity", "universe", "contract", "let", "check", "print", "recip",
];

struct Parser<'t> {
    cursor: Cursor<'t>,
    algebra: Option<Algebra>,
    bindings: Vec<Binding>,
}

impl Parser<'_> {
    fn algebra(&self) -> &Algebra {
        self.algebra.as_ref().expect("universe parsed first")
    }

    fn file(&mut self, cap: usize) -> Result<SpecFile, DslError> {
        self.universe(cap)?;
        while self.at_word("contract") || self.at_word("let") {
            self.binding()?;
        }
        let mut queries = Vec::new();
        while !self.cursor.at_eof() {
            queries.push(self.query()?);
        }
        Ok(SpecFile {
            universe: self.algebra().clone(),
            bindings: std::mem::take(&mut self.bindings),
            queries,
        })
    }

    fn formula(&mut self) -> Result<Element, DslError> {
        let algebra = self.algebra().clone();
        formula(&mut self.cursor, &algebra)
    }

    fn at_word(&self, word: &str) -> bool {
        matches!(&self.cursor.peek().tok, Tok::Ident(name) if name == word)
    }

    fn universe(&mut self, cap: usize) -> Result<(), DslError> {
        let pos = keyword(&mut self.cursor, "universe")?;
        let mut atoms: Vec<(&str, Position)> = Vec::new();
        while let Tok::Ident(_) = self.cursor.peek().tok {
            let (name, at) = self.cursor.expect_ident("an atom")?;
            if let Some((_, first)) = atoms.iter().find(|(n, _)| *n == name) {
                return Err(DslError::DuplicateName {
                    name: name.to_owned(),
                    pos: at,
                    first: *first,
                });
            }
            atoms.push((name, at));
        }
        if atoms.is_empty() {
            let next = self.cursor.peek();
            return Err(ParseError::new(next.pos, format!("expected an atom, found {}", next.tok)).into());
        }
        self.cursor.expect(&Tok::Semi)?;
        let algebra = Algebra::with_cap(atoms.iter().map(|(n, _)| *n), Backend::Bitset, cap)
            .map_err(|source| DslError::Universe { source, pos })?;
        self.algebra = Some(algebra);
        Ok(())
    }

    fn declare(&self, name: &str, pos: Position) -> Result<(), DslError> {
        if RESERVED.contains(&name) || ContractOp::from_surface_name(name).is_some() || name.starts_with("scale_") {
            return Err(ParseError::new(pos, format!("`{name}` is reserved")).into());
        }
        if let Some(first) = self.bindings.iter().find(|b| b.name == name) {
            return Err(DslError::DuplicateName {
                name: name.to_owned(),
                pos,
                first: first.pos,
            });
        }
        Ok(())
    }

    fn binding(&mut self) -> Result<(), DslError> {
        let value;
        let (name, pos);
        if self.at_word("contract") {
            self.cursor.advance();
            (name, pos) = self.cursor.expect_ident("a contract name")?;
            self.declare(name, pos)?;
            self.cursor.expect(&Tok::LBrace)?;
            keyword(&mut self.cursor, "assume")?;
            self.cursor.expect(&Tok::Colon)?;
            let assume = self.formula()?;
            self.cursor.expect(&Tok::Semi)?;
            keyword(&mut self.cursor, "guarantee")?;
            self.cursor.expect(&Tok::Colon)?;
            let guarantee = self.formula()?;
            self.cursor.expect(&Tok::Semi)?;
            self.cursor.expect(&Tok::RBrace)?;
            value = BindingValue::Literal { assume, guarantee };
        } else {
            keyword(&mut self.cursor, "let")?;
            (name, pos) = self.cursor.expect_ident("a name")?;
            self.declare(name, pos)?;
            self.cursor.expect(&Tok::Equals)?;
            value = BindingValue::Expr(self.expr()?);
            self.cursor.expect(&Tok::Semi)?;
        }
        self.bindings.push(Binding {
            name: name.to_owned(),
            pos,
            value,
        });
        Ok(())
    }

    fn query(&mut self) -> Result<Query, DslError> {
        let pos = self.cursor.peek().pos;
        let (kind, operands) = if self.at_word("print") {
            self.cursor.advance();
            (QueryKind::Print, vec![self.expr()?])
        } else if self.at_word("check") {
            self.cursor.advance();
            let (pred, at) = self.cursor.expect_ident("`refines`, `equal` or `canonical`")?;
            let kind = match pred {
                "refines" => QueryKind::CheckRefines,
                "equal" => QueryKind::CheckEqual,
                "canonical" => QueryKind::AssertCanonical,
                other => {
                    return Err(ParseError::new(
                        at,
                        format!("unknown check `{other}` (expected refines, equal or canonical)"),
                    )
                    .into())
                }
            };
            self.cursor.expect(&Tok::LParen)?;
            let mut operands = vec![self.expr()?];
            if kind != QueryKind::AssertCanonical {
                self.cursor.expect(&Tok::Comma)?;
                operands.push(self.expr()?);
            }
            self.cursor.expect(&Tok::RParen)?;
            (kind, operands)
        } else {
            let next = self.cursor.peek();
            let msg = if self.at_word("contract") || self.at_word("let") {
                "bindings must come before queries".to_owned()
            } else {
                format!("expected `contract`, `let`, `check` or `print`, found {}", next.tok)
            };
            return Err(ParseError::new(next.pos, msg).into());
        };
        self.cursor.expect(&Tok::Semi)?;
        Ok(Query { kind, operands, pos })
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let (name, pos) = self.cursor.expect_ident("a contract expression")?;
        match name {
            "Top" => return Ok(Expr::Top),
            "Bottom" => return Ok(Expr::Bottom),
            "Identity" => return Ok(Expr::Identity),
            _ => {}
        }
        if self.cursor.peek().tok != Tok::LParen {
            return match self.bindings.iter().position(|b| b.name == name) {
                Some(index) => Ok(Expr::Name {
                    name: name.to_owned(),
                    index,
                }),
                None => Err(DslError::UnknownName {
                    name: name.to_owned(),
                    pos,
                }),
            };
        }
        self.cursor.advance();
        let expr = if let Some(op) = ContractOp::from_surface_name(name) {
            let lhs = self.expr()?;
            self.cursor.expect(&Tok::Comma)?;
            let rhs = self.expr()?;
            Expr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            }
        } else {
            match name {
                "recip" => Expr::Recip(Box::new(self.expr()?)),
                "scale_left" => {
                    let b = self.formula()?;
                    self.cursor.expect(&Tok::Comma)?;
                    Expr::ScaleLeft(b, Box::new(self.expr()?))
                }
                "scale_right" => {
                    let c = self.expr()?;
                    self.cursor.expect(&Tok::Comma)?;
                    let b = self.formula()?;
                    Expr::ScaleRight(Box::new(c), b)
                }
                other => {
                    return Err(ParseError::new(pos, format!("unknown operation `{other}`")).into());
                }
            }
        };
        self.cursor.expect(&Tok::RParen)?;
        Ok(expr)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub name: String,
    pub text: String,
    pub value: Contract,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryOutcome {
    pub query: String,
    pub kind: QueryKind,
    /// `None` for `print`.
    pub holds: Option<bool>,
    pub text: Option<String>,
    pub value: Option<Contract>,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub universe: Vec<String>,
    pub ok: bool,
    pub bindings: Vec<BoundValue>,
    pub queries: Vec<QueryOutcome>,
}

impl Evaluation {
    pub fn to_text(&self) -> String {
        let mut out = format!("universe {}\n", self.universe.join(" "));
        for b in &self.bindings {
            out.push_str(&format!("{} = {}\n", b.name, b.text));
        }
        for q in &self.queries {
            out.push_str(&q.to_text());
            out.push('\n');
        }
        out
    }

    /// The check outcomes only, one line each, followed by a summary.
    pub fn check_summary(&self) -> String {
        let mut out = String::new();
        let checks: Vec<&QueryOutcome> = self.queries.iter().filter(|q| q.holds.is_some()).collect();
        for q in &checks {
            out.push_str(&q.to_text());
            out.push('\n');
        }
        let held = checks.iter().filter(|q| q.holds == Some(true)).count();
        out.push_str(&format!("{held} of {} checks hold\n", checks.len()));
        out
    }
}

impl QueryOutcome {
    pub fn to_text(&self) -> String {
        match self.holds {
            None => format!("{} = {}", self.query, self.text.as_deref().unwrap_or("")),
            Some(true) => format!("{}: holds", self.query),
            Some(false) => {
                let parts: Vec<String> = self
                    .witness
                    .iter()
                    .flat_map(|w| w.entries())
                    .map(|(k, v)| format!("{k} = {v}"))
                    .collect();
                format!("{}: FAILS ({})", self.query, parts.join(", "))
            }
        }
    }
}

/// Evaluates every binding in order, then every query.
pub fn eval(spec: &SpecFile) -> Evaluation {
    let alg = &spec.universe;
    let mut values: Vec<Contract> = Vec::with_capacity(spec.bindings.len());
    for b in &spec.bindings {
        let c = match &b.value {
            BindingValue::Literal { assume, guarantee } => {
                Contract::new(assume.clone(), guarantee.clone()).expect(SINGLE_UNIVERSE)
            }
            BindingValue::Expr(e) => eval_expr(e, alg, &values),
        };
        values.push(c);
    }

    let queries: Vec<QueryOutcome> = spec
        .queries
        .iter()
        .map(|q| run_query(q, spec, &values))
        .collect();
    Evaluation {
        universe: alg.atoms().to_vec(),
        ok: queries.iter().all(|q| q.holds != Some(false)),
        bindings: spec
            .bindings
            .iter()
            .zip(&values)
            .map(|(b, c)| BoundValue {
                name: b.name.clone(),
                text: c.render(),
                value: c.clone(),
            })
            .collect(),
        queries,
    }
}

const SINGLE_UNIVERSE: &str = "every value in a file lives in its universe";

pub fn eval_expr(expr: &Expr, alg: &Algebra, values: &[Contract]) -> Contract {
    match expr {
        Expr::Name { index, .. } => values[*index].clone(),
        Expr::Top => Contract::one(alg),
        Expr::Bottom => Contract::zero(alg),
        Expr::Identity => Contract::identity(alg),
        Expr::Binary { op, lhs, rhs } => {
            let l = eval_expr(lhs, alg, values);
            let r = eval_expr(rhs, alg, values);
            op.apply(&l, &r).expect(SINGLE_UNIVERSE)
        }
        Expr::Recip(c) => eval_expr(c, alg, values).reciprocal(),
        Expr::ScaleLeft(b, c) => act_left(b, &eval_expr(c, alg, values)).expect(SINGLE_UNIVERSE),
        Expr::ScaleRight(c, b) => act_right(&eval_expr(c, alg, values), b).expect(SINGLE_UNIVERSE),
    }
}

fn run_query(q: &Query, spec: &SpecFile, values: &[Contract]) -> QueryOutcome {
    let alg = &spec.universe;
    let vals: Vec<Contract> = q.operands.iter().map(|e| eval_expr(e, alg, values)).collect();
    let mut outcome = QueryOutcome {
        query: q.to_string(),
        kind: q.kind,
        holds: None,
        text: None,
        value: None,
        witness: None,
    };
    match q.kind {
        QueryKind::Print => {
            outcome.text = Some(vals[0].render());
            outcome.value = Some(vals[0].clone());
        }
        QueryKind::CheckRefines => {
            let (lhs, rhs) = (&vals[0], &vals[1]);
            let extra_g = lhs.guarantee().meet(&rhs.guarantee().complement()).expect(SINGLE_UNIVERSE);
            let missing_a = rhs.assume().meet(&lhs.assume().complement()).expect(SINGLE_UNIVERSE);
            let holds = extra_g.is_bottom() && missing_a.is_bottom();
            outcome.holds = Some(holds);
            if !holds {
                let mut w = Witness::new().contract("lhs", lhs).contract("rhs", rhs);
                if !extra_g.is_bottom() {
                    w = w.element("guarantee outside rhs", &extra_g);
                }
                if !missing_a.is_bottom() {
                    w = w.element("assumption missing from lhs", &missing_a);
                }
                outcome.witness = Some(w);
            }
        }
        QueryKind::CheckEqual => {
            let holds = vals[0] == vals[1];
            outcome.holds = Some(holds);
            if !holds {
                outcome.witness = Some(Witness::new().contract("lhs", &vals[0]).contract("rhs", &vals[1]));
            }
        }
        QueryKind::AssertCanonical => {
            let (a, g) = written_pair(&q.operands[0], spec, &vals[0]);
            let cover = a.join(&g).expect(SINGLE_UNIVERSE);
            let holds = cover.is_top();
            outcome.holds = Some(holds);
            if !holds {
                outcome.witness = Some(
                    Witness::new()
                        .element("assume", &a)
                        .element("guarantee", &g)
                        .element("uncovered", &cover.complement()),
                );
            }
        }
    }
    outcome
}

/// The pair as the user wrote it when `expr` names a `contract` block;
/// otherwise the computed canonical pair.
fn written_pair(expr: &Expr, spec: &SpecFile, value: &Contract) -> (Element, Element) {
    if let Expr::Name { index, .. } = expr {
        if let BindingValue::Literal { assume, guarantee } = &spec.bindings[*index].value {
            return (assume.clone(), guarantee.clone());
        }
    }
    (value.assume().clone(), value.guarantee().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Evaluation {
        eval(&parse_spec(text).unwrap())
    }

    #[test]
    fn minimal_file_has_one_binding() {
        let spec = parse_spec("universe x; contract C { assume: true; guarantee: x; }").unwrap();
        assert_eq!(spec.bindings.len(), 1);
        assert!(spec.queries.is_empty());
    }

    #[test]
    fn quotient_binding_matches_the_library() {
        let ev = run(
            "universe x y;
             contract Goal { assume: true; guarantee: x; }
             contract Part { assume: x; guarantee: true; }
             let D = quotient(Goal, Part);",
        );
        let alg = Algebra::bitset(&["x", "y"]).unwrap();
        let goal = Contract::new(alg.top(), alg.atom("x").unwrap()).unwrap();
        let part = Contract::new(alg.atom("x").unwrap(), alg.top()).unwrap();
        assert_eq!(ev.bindings[2].value, goal.quotient(&part).unwrap());
    }

    #[test]
    fn forward_reference_is_reported_where_it_occurs() {
        let err = parse_spec("universe x;\nlet A = conj(B, Top);\ncontract B { assume: x; guarantee: x; }").unwrap_err();
        assert!(matches!(&err, DslError::UnknownName { name, .. } if name == "B"));
        assert_eq!((err.position().line, err.position().column), (2, 14));
    }

    #[test]
    fn duplicate_and_unknown_atom_errors() {
        let err = parse_spec("universe x;\ncontract A { assume: x; guarantee: x; }\nlet A = Top;").unwrap_err();
        assert!(matches!(err, DslError::DuplicateName { first, .. } if first.line == 2));
        let err = parse_spec("universe x;\ncontract A { assume: z; guarantee: x; }").unwrap_err();
        assert!(matches!(&err, DslError::UnknownAtom { name, pos } if name == "z" && pos.column == 22));
    }

    #[test]
    fn checks_hold_or_carry_witnesses() {
        let ev = run(
            "universe x y;
             contract C1 { assume: true; guarantee: x; }
             contract C2 { assume: true; guarantee: y; }
             contract Raw { assume: x; guarantee: false; }
             check refines(compose(C1, C2), Top);
             check equal(quotient(C1, Identity), C1);
             check refines(Top, C1);
             check canonical(Raw);
             check canonical(Bottom);",
        );
        let holds: Vec<_> = ev.queries.iter().map(|q| q.holds).collect();
        assert_eq!(holds, vec![Some(true), Some(true), Some(false), Some(false), Some(true)]);
        let w = ev.queries[2].witness.as_ref().unwrap();
        assert_eq!(w.get("guarantee outside rhs"), Some("{y}"));
        assert_eq!(ev.queries[3].witness.as_ref().unwrap().get("uncovered"), Some("{y}"));
        assert!(!ev.ok);
    }

    #[test]
    fn actions_and_reciprocal_are_available() {
        let ev = run(
            "universe x y;
             contract C { assume: x; guarantee: y; }
             print scale_left(y, C);
             print scale_right(C, x);
             print recip(C);",
        );
        let texts: Vec<_> = ev.queries.iter().map(|q| q.text.clone().unwrap()).collect();
        assert_eq!(texts[0], "contract(assume = false, guarantee = x | y)");
        assert_eq!(texts[1], "contract(assume = x | y, guarantee = false)");
        assert_eq!(texts[2], "contract(assume = y, guarantee = x)");
        assert_eq!(ev.queries[2].query, "print recip(C)");
    }

    #[test]
    fn rendering_parses_back() {
        let alg = Algebra::bitset(&["p", "q"]).unwrap();
        for c in crate::contract::all_contracts(&alg) {
            assert_eq!(parse_contract(&c.render(), &alg).unwrap(), c);
        }
    }

    #[test]
    fn bindings_after_queries_are_rejected() {
        let err = parse_spec("universe x;\nprint Top;\nlet A = Top;").unwrap_err();
        assert_eq!(err.position().line, 3);
        assert!(err.to_string().contains("before queries"));
    }
}
