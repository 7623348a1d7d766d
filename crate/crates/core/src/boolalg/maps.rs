//! Tabulated maps between finite Boolean algebras, validated at construction.

use std::fmt;

use thiserror::Error;

use super::{Algebra, AlgebraError, Backend, Element};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("table has {found} entries, source carrier has {expected}")]
    WrongSize { expected: u64, found: usize },
    #[error("table entry {mask:#x} is outside the target algebra")]
    OutOfRange { mask: u64 },
    #[error("map violates `{law}` at {witness}")]
    LawViolated { law: &'static str, witness: String },
    #[error("malformed map file, line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A total function from the carrier of `source` to the carrier of `target`,
/// stored as one target mask per source mask.
#[derive(Clone, PartialEq, Eq)]
pub struct Tabulation {
    source: Algebra,
    target: Algebra,
    table: Vec<u64>,
}

impl fmt::Debug for Tabulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tabulation")
            .field("source", &self.source.atoms())
            .field("target", &self.target.atoms())
            .field("table", &self.table)
            .finish()
    }
}

impl Tabulation {
    pub fn new(source: &Algebra, target: &Algebra, table: Vec<u64>) -> Result<Self, MapError> {
        if table.len() as u64 != source.carrier_size() {
            return Err(MapError::WrongSize {
                expected: source.carrier_size(),
                found: table.len(),
            });
        }
        if let Some(&mask) = table.iter().find(|m| **m & !target.full_mask() != 0) {
            return Err(MapError::OutOfRange { mask });
        }
        Ok(Tabulation {
            source: source.clone(),
            target: target.clone(),
            table,
        })
    }

    pub fn from_fn(source: &Algebra, target: &Algebra, f: impl Fn(u64) -> u64) -> Result<Self, MapError> {
        Self::new(source, target, (0..source.carrier_size()).map(f).collect())
    }

    pub fn identity(algebra: &Algebra) -> Self {
        Self::from_fn(algebra, algebra, |m| m).expect("identity is in range")
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn apply_mask(&self, mask: u64) -> u64 {
        self.table[mask as usize]
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        if x.algebra() != &self.source {
            return Err(AlgebraError::MixedAlgebra);
        }
        Ok(self.target.element_of(self.apply_mask(x.bits())))
    }

    fn pairs(&self) -> impl Iterator<Item = (u64, u64)> {
        let n = self.source.carrier_size();
        (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
    }

    fn witness(&self, masks: &[u64]) -> String {
        let shown: Vec<String> = masks
            .iter()
            .map(|m| format!("{{{}}}", self.source.render_mask(*m)))
            .collect();
        shown.join(", ")
    }

    fn first_violation(&self, law: &'static str, bad: Option<Vec<u64>>) -> Result<(), MapError> {
        match bad {
            Some(masks) => Err(MapError::LawViolated {
                law,
                witness: self.witness(&masks),
            }),
            None => Ok(()),
        }
    }

    fn check_monotone(&self) -> Result<(), MapError> {
        let bad = self
            .pairs()
            .find(|&(x, y)| x & !y == 0 && self.apply_mask(x) & !self.apply_mask(y) != 0)
            .map(|(x, y)| vec![x, y]);
        self.first_violation("x <= y implies f(x) <= f(y)", bad)
    }

    fn check_join(&self) -> Result<(), MapError> {
        let bad = self
            .pairs()
            .find(|&(x, y)| self.apply_mask(x | y) != self.apply_mask(x) | self.apply_mask(y))
            .map(|(x, y)| vec![x, y]);
        self.first_violation("f(x | y) = f(x) | f(y)", bad)
    }

    fn check_meet(&self) -> Result<(), MapError> {
        let bad = self
            .pairs()
            .find(|&(x, y)| self.apply_mask(x & y) != self.apply_mask(x) & self.apply_mask(y))
            .map(|(x, y)| vec![x, y]);
        self.first_violation("f(x & y) = f(x) & f(y)", bad)
    }

    fn check_top(&self) -> Result<(), MapError> {
        let ok = self.apply_mask(self.source.full_mask()) == self.target.full_mask();
        self.first_violation("f(true) = true", (!ok).then(|| vec![self.source.full_mask()]))
    }

    fn check_bottom(&self) -> Result<(), MapError> {
        let ok = self.apply_mask(0) == 0;
        self.first_violation("f(false) = false", (!ok).then(|| vec![0]))
    }

    fn check_complement(&self) -> Result<(), MapError> {
        let sf = self.source.full_mask();
        let tf = self.target.full_mask();
        let bad = (0..self.source.carrier_size())
            .find(|&x| self.apply_mask(!x & sf) != !self.apply_mask(x) & tf)
            .map(|x| vec![x]);
        self.first_violation("f(!x) = !f(x)", bad)
    }

    /// Map file text: a `source:` and a `target:` header naming the atoms,
    /// then one `<source-mask> -> <target-mask>` line per carrier element.
    pub fn render(&self) -> String {
        let mut out = format!(
            "source: {}\ntarget: {}\n",
            self.source.atoms().join(" "),
            self.target.atoms().join(" ")
        );
        for (x, y) in self.table.iter().enumerate() {
            out.push_str(&format!("{x} -> {y}\n"));
        }
        out
    }

    /// Parses the map file format written by [`Tabulation::render`]. Masks may
    /// be decimal or `0x` hex; blank lines and `#` comments are ignored; rows
    /// may come in any order but every source element must appear once.
    pub fn parse(text: &str) -> Result<Self, MapError> {
        let mut source = None;
        let mut target = None;
        let mut rows: Vec<(usize, u64, u64)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |message: String| MapError::Format {
                line: line_no,
                message,
            };
            if let Some(rest) = line.strip_prefix("source:") {
                let atoms: Vec<&str> = rest.split_whitespace().collect();
                source = Some(Algebra::new(atoms, Backend::Bitset).map_err(|e| fail(e.to_string()))?);
            } else if let Some(rest) = line.strip_prefix("target:") {
                let atoms: Vec<&str> = rest.split_whitespace().collect();
                target = Some(Algebra::new(atoms, Backend::Bitset).map_err(|e| fail(e.to_string()))?);
            } else {
                let (lhs, rhs) = line
                    .split_once("->")
                    .ok_or_else(|| fail(format!("expected `<mask> -> <mask>`, found `{line}`")))?;
                let x = parse_mask(lhs.trim()).ok_or_else(|| fail(format!("bad mask `{}`", lhs.trim())))?;
                let y = parse_mask(rhs.trim()).ok_or_else(|| fail(format!("bad mask `{}`", rhs.trim())))?;
                rows.push((line_no, x, y));
            }
        }
        let source = source.ok_or(MapError::Format {
            line: 0,
            message: "missing `source:` header".into(),
        })?;
        let target = target.ok_or(MapError::Format {
            line: 0,
            message: "missing `target:` header".into(),
        })?;
        let mut table: Vec<Option<u64>> = vec![None; source.carrier_size() as usize];
        for (line, x, y) in rows {
            let slot = table.get_mut(x as usize).ok_or(MapError::Format {
                line,
                message: format!("source mask {x} outside the source algebra"),
            })?;
            if slot.replace(y).is_some() {
                return Err(MapError::Format {
                    line,
                    message: format!("source mask {x} listed twice"),
                });
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(x, y)| {
                y.ok_or(MapError::Format {
                    line: 0,
                    message: format!("no row for source mask {x}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Tabulation::new(&source, &target, table)
    }
}

fn parse_mask(text: &str) -> Option<u64> {
    match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => text.parse().ok(),
    }
}

/// A Boolean-algebra homomorphism: preserves bottom, top, meet, join and complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraHom(Tabulation);

impl AlgebraHom {
    pub fn new(table: Tabulation) -> Result<Self, MapError> {
        table.check_bottom()?;
        table.check_top()?;
        table.check_meet()?;
        table.check_join()?;
        table.check_complement()?;
        Ok(AlgebraHom(table))
    }

    pub fn identity(algebra: &Algebra) -> Self {
        AlgebraHom(Tabulation::identity(algebra))
    }

    /// The homomorphism sending each source atom to the union of the target
    /// atoms mapped onto it: `f(x) = { t : image[t] in x }`. `image[t]`
    /// names the source atom whose singleton covers target atom `t`.
    pub fn from_atom_assignment(source: &Algebra, target: &Algebra, image: &[usize]) -> Result<Self, MapError> {
        if image.len() != target.atom_count() || image.iter().any(|&s| s >= source.atom_count()) {
            return Err(MapError::WrongSize {
                expected: target.atom_count() as u64,
                found: image.len(),
            });
        }
        let table = Tabulation::from_fn(source, target, |x| {
            image
                .iter()
                .enumerate()
                .filter(|(_, &s)| x & (1 << s) != 0)
                .fold(0, |acc, (t, _)| acc | (1 << t))
        })?;
        Self::new(table)
    }

    pub fn tabulation(&self) -> &Tabulation {
        &self.0
    }

    pub fn source(&self) -> &Algebra {
        self.0.source()
    }

    pub fn target(&self) -> &Algebra {
        self.0.target()
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        self.0.apply(x)
    }
}

/// A tabulated map with its order-theoretic properties computed up front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    table: Tabulation,
    monotone: bool,
    join_preserving: bool,
    top_preserving: bool,
}

impl MonotoneMap {
    pub fn new(table: Tabulation) -> Self {
        MonotoneMap {
            monotone: table.check_monotone().is_ok(),
            join_preserving: table.check_join().is_ok(),
            top_preserving: table.check_top().is_ok(),
            table,
        }
    }

    pub fn monotone(&self) -> bool {
        self.monotone
    }

    pub fn join_preserving(&self) -> bool {
        self.join_preserving
    }

    pub fn top_preserving(&self) -> bool {
        self.top_preserving
    }

    /// The first failed property among monotone, join-preserving and
    /// top-preserving, as a `MapError` naming a witness.
    pub fn violation(&self) -> Option<(&'static str, MapError)> {
        [
            ("monotone", self.table.check_monotone()),
            ("join_preserving", self.table.check_join()),
            ("top_preserving", self.table.check_top()),
        ]
        .into_iter()
        .find_map(|(flag, r)| r.err().map(|e| (flag, e)))
    }

    pub fn tabulation(&self) -> &Tabulation {
        &self.table
    }

    pub fn source(&self) -> &Algebra {
        self.table.source()
    }

    pub fn target(&self) -> &Algebra {
        self.table.target()
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        self.table.apply(x)
    }

    /// The upper adjoint `x -> join { y : self(y) <= x }`, tabulated. It is a
    /// right adjoint exactly when `self` preserves joins and bottom.
    pub fn upper_adjoint(&self) -> Tabulation {
        let src = self.source().clone();
        let tgt = self.target().clone();
        Tabulation::from_fn(&tgt, &src, |x| {
            (0..src.carrier_size())
                .filter(|&y| self.table.apply_mask(y) & !x == 0)
                .fold(0, |acc, y| acc | y)
        })
        .expect("joins stay inside the source algebra")
    }
}

/// A morphism of the meet monoids `(B, &, true) -> (B', &, true)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetMorphism(Tabulation);

impl MeetMorphism {
    pub fn new(table: Tabulation) -> Result<Self, MapError> {
        table.check_top()?;
        table.check_meet()?;
        Ok(MeetMorphism(table))
    }

    pub fn identity(algebra: &Algebra) -> Self {
        MeetMorphism(Tabulation::identity(algebra))
    }

    pub fn constant_top(source: &Algebra, target: &Algebra) -> Self {
        let full = target.full_mask();
        MeetMorphism(Tabulation::from_fn(source, target, |_| full).expect("top is in range"))
    }

    /// `x -> { t : required[t] is a subset of x }`. Every meet morphism between
    /// finite powerset algebras has this shape.
    pub fn from_requirements(source: &Algebra, target: &Algebra, required: &[u64]) -> Result<Self, MapError> {
        if required.len() != target.atom_count() {
            return Err(MapError::WrongSize {
                expected: target.atom_count() as u64,
                found: required.len(),
            });
        }
        let table = Tabulation::from_fn(source, target, |x| {
            required
                .iter()
                .enumerate()
                .filter(|(_, &r)| r & !x == 0)
                .fold(0, |acc, (t, _)| acc | (1 << t))
        })?;
        Self::new(table)
    }

    pub fn tabulation(&self) -> &Tabulation {
        &self.0
    }

    pub fn source(&self) -> &Algebra {
        self.0.source()
    }

    pub fn target(&self) -> &Algebra {
        self.0.target()
    }

    pub fn apply_mask(&self, mask: u64) -> u64 {
        self.0.apply_mask(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Algebra {
        Algebra::bitset(&["x", "y"]).unwrap()
    }

    fn one() -> Algebra {
        Algebra::bitset(&["z"]).unwrap()
    }

    #[test]
    fn hom_construction_rejects_with_witness() {
        // constant top: fails bottom preservation
        let t = Tabulation::from_fn(&two(), &two(), |_| 3).unwrap();
        match AlgebraHom::new(t) {
            Err(MapError::LawViolated { law, witness }) => {
                assert_eq!(law, "f(false) = false");
                assert_eq!(witness, "{false}");
            }
            other => panic!("{other:?}"),
        }
        // collapse x,y onto z preserves joins but not meets
        let t = Tabulation::from_fn(&two(), &one(), |m| u64::from(m != 0)).unwrap();
        match AlgebraHom::new(t) {
            Err(MapError::LawViolated { law, .. }) => assert_eq!(law, "f(x & y) = f(x) & f(y)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn swap_is_a_hom_and_projections_are_homs() {
        let swap = AlgebraHom::from_atom_assignment(&two(), &two(), &[1, 0]).unwrap();
        assert_eq!(swap.tabulation().table(), &[0, 2, 1, 3]);
        let proj_x = AlgebraHom::from_atom_assignment(&two(), &one(), &[0]).unwrap();
        assert_eq!(proj_x.tabulation().table(), &[0, 1, 0, 1]);
    }

    #[test]
    fn monotone_flags() {
        let collapse = MonotoneMap::new(Tabulation::from_fn(&two(), &one(), |m| u64::from(m != 0)).unwrap());
        assert!(collapse.monotone() && collapse.join_preserving() && collapse.top_preserving());
        assert!(collapse.violation().is_none());
        assert_eq!(collapse.upper_adjoint().table(), &[0, 3]);

        let not_join = MonotoneMap::new(Tabulation::from_fn(&two(), &one(), |m| u64::from(m == 3)).unwrap());
        assert!(not_join.monotone());
        assert!(!not_join.join_preserving());
        assert_eq!(not_join.violation().unwrap().0, "join_preserving");

        let antitone = MonotoneMap::new(Tabulation::from_fn(&one(), &one(), |m| 1 - m).unwrap());
        assert!(!antitone.monotone());
        assert!(!antitone.top_preserving());
    }

    #[test]
    fn meet_morphisms_from_requirements_are_exactly_the_meet_morphisms() {
        // enumerate all 16 maps on the 1-atom algebra and all 4^4 on 2 atoms
        let alg = two();
        let mut valid = 0;
        for code in 0..256u64 {
            let table: Vec<u64> = (0..4).map(|i| (code >> (2 * i)) & 3).collect();
            if MeetMorphism::new(Tabulation::new(&alg, &alg, table).unwrap()).is_ok() {
                valid += 1;
            }
        }
        let mut generated = std::collections::BTreeSet::new();
        for r0 in 0..4 {
            for r1 in 0..4 {
                let m = MeetMorphism::from_requirements(&alg, &alg, &[r0, r1]).unwrap();
                generated.insert(m.tabulation().table().to_vec());
            }
        }
        assert_eq!(generated.len(), valid);
    }

    #[test]
    fn map_file_round_trip_and_errors() {
        let t = Tabulation::from_fn(&two(), &one(), |m| u64::from(m != 0)).unwrap();
        let text = t.render();
        assert_eq!(text, "source: x y\ntarget: z\n0 -> 0\n1 -> 1\n2 -> 1\n3 -> 1\n");
        assert_eq!(Tabulation::parse(&text).unwrap(), t);
        let hex = "# collapse\nsource: x y\ntarget: z\n0x3 -> 1\n0 -> 0\n2 -> 0x1\n1 -> 1\n";
        assert_eq!(Tabulation::parse(hex).unwrap(), t);

        assert!(matches!(
            Tabulation::parse("source: x\ntarget: z\n0 -> 0\n"),
            Err(MapError::Format { line: 0, .. })
        ));
        assert!(matches!(
            Tabulation::parse("source: x\ntarget: z\n0 -> 0\n0 -> 1\n1 -> 1"),
            Err(MapError::Format { line: 4, .. })
        ));
        assert!(matches!(
            Tabulation::parse("source: x\ntarget: z\n0 => 0\n"),
            Err(MapError::Format { line: 3, .. })
        ));
        assert!(matches!(
            Tabulation::parse("source: x\ntarget: z\n0 -> 0\n1 -> 2\n"),
            Err(MapError::OutOfRange { mask: 2 })
        ));
    }
}
