use std::collections::HashSet;
use std::fmt;

use super::letters::LetterSet;
use super::word::{FreeWord, TraceElement};
use crate::graph::UGraph;
use crate::{Error, Result};

/// Letters are stored as `u8`.
pub const MAX_GENERATORS: usize = 256;

/// Default cap on the number of elements any sphere enumeration may hold.
pub const DEFAULT_MAX_SPHERE: usize = 10_000_000;

/// Generators plus the set of commuting generator pairs.
///
/// The order of `generators` is the order used for lexicographic normal
/// forms. The sphere limit travels with the presentation so that every
/// exponential path downstream shares one guard.
#[derive(Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    commute: Vec<Vec<bool>>,
    /// `dependent[a]` holds `a` itself and every generator not commuting with `a`.
    dependent: Vec<LetterSet>,
    max_sphere: usize,
}

impl Presentation {
    /// Builds a presentation from generator names and commuting index pairs.
    pub fn new<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
        commute: &[(usize, usize)],
    ) -> Result<Self> {
        let names: Vec<String> = generators.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::invalid("a presentation needs at least one generator"));
        }
        if names.len() > MAX_GENERATORS {
            return Err(Error::invalid(format!(
                "{} generators exceed the supported maximum of {MAX_GENERATORS}",
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name == "1" || name.chars().any(|c| c.is_whitespace() || "()^.,#:".contains(c)) {
                return Err(Error::invalid(format!("invalid generator name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::invalid(format!("duplicate generator {name:?}")));
            }
        }
        let n = names.len();
        let mut table = vec![vec![false; n]; n];
        for &(a, b) in commute {
            if a >= n || b >= n {
                return Err(Error::UnknownGenerator { index: a.max(b), rank: n });
            }
            if a == b {
                return Err(Error::invalid(format!("generator {:?} cannot commute with itself", names[a])));
            }
            table[a][b] = true;
            table[b][a] = true;
        }
        let dependent = (0..n)
            .map(|a| (0..n).filter(|&b| !table[a][b]).map(|b| b as u8).collect())
            .collect();
        Ok(Presentation { names, commute: table, dependent, max_sphere: DEFAULT_MAX_SPHERE })
    }

    /// Same as [`Presentation::new`] with commuting pairs given by name.
    pub fn from_names(generators: &[&str], commute: &[(&str, &str)]) -> Result<Self> {
        let idx = |s: &str| {
            generators
                .iter()
                .position(|g| *g == s)
                .ok_or_else(|| Error::UnknownName(s.to_string()))
        };
        let pairs = commute
            .iter()
            .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(generators.iter().copied(), &pairs)
    }

    /// The free monoid on `n` generators named `g0, g1, …`.
    pub fn free(n: usize) -> Result<Self> {
        Presentation::new((0..n).map(|i| format!("g{i}")), &[])
    }

    /// The right-angled Artin monoid of a graph: vertices become generators,
    /// edges become commuting pairs.
    pub fn from_graph(g: &UGraph) -> Result<Self> {
        Presentation::new(g.vertices().iter().cloned(), &g.edges())
    }

    /// Parses the line-oriented presentation format:
    ///
    /// ```text
    /// # comment
    /// generators: x y z
    /// commute: x z
    /// ```
    ///
    /// `commute` may appear any number of times and carries one or more
    /// pairs per line. Commas count as whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut pairs: Vec<(usize, String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, format!("expected `key: value`, found {line:?}")))?;
            let tokens: Vec<&str> = value.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
            match key.trim() {
                "generators" => {
                    if generators.is_some() {
                        return Err(Error::parse(line_no, "generators declared twice"));
                    }
                    if tokens.is_empty() {
                        return Err(Error::parse(line_no, "empty generator list"));
                    }
                    let mut seen = HashSet::new();
                    for t in &tokens {
                        if !seen.insert(*t) {
                            return Err(Error::parse(line_no, format!("duplicate generator {t:?}")));
                        }
                    }
                    generators = Some(tokens.iter().map(|s| s.to_string()).collect());
                }
                "commute" => {
                    if tokens.is_empty() || !tokens.len().is_multiple_of(2) {
                        return Err(Error::parse(line_no, "commute expects pairs of generator names"));
                    }
                    for pair in tokens.chunks(2) {
                        pairs.push((line_no, pair[0].to_string(), pair[1].to_string()));
                    }
                }
                other => return Err(Error::parse(line_no, format!("unknown key {other:?}"))),
            }
        }
        let names = generators.ok_or_else(|| Error::parse(0, "missing `generators:` line"))?;
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (line_no, a, b) in pairs {
            let find = |s: &str| {
                names
                    .iter()
                    .position(|g| g == s)
                    .ok_or_else(|| Error::parse(line_no, format!("unknown generator {s:?}")))
            };
            let (ia, ib) = (find(&a)?, find(&b)?);
            if ia == ib {
                return Err(Error::parse(line_no, format!("generator {a:?} paired with itself")));
            }
            idx_pairs.push((ia, ib));
        }
        Presentation::new(names, &idx_pairs).map_err(|e| match e {
            Error::Invalid(msg) => Error::parse(0, msg),
            other => other,
        })
    }

    /// Renders the presentation back into the text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("generators: {}\n", self.names.join(" "));
        for (a, b) in self.edges() {
            out.push_str(&format!("commute: {} {}\n", self.names[a], self.names[b]));
        }
        out
    }

    pub fn with_max_sphere(mut self, limit: usize) -> Self {
        self.max_sphere = limit;
        self
    }

    pub fn max_sphere(&self) -> usize {
        self.max_sphere
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: u8) -> &str {
        &self.names[g as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    /// True iff `a != b` and `{a, b}` is a commuting pair.
    #[inline]
    pub fn commutes(&self, a: u8, b: u8) -> bool {
        self.commute[a as usize][b as usize]
    }

    /// Generators that do not commute with `a`, including `a` itself.
    #[inline]
    pub fn dependent(&self, a: u8) -> &LetterSet {
        &self.dependent[a as usize]
    }

    /// Commuting pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.commute[a][b])
            .collect()
    }

    pub fn is_free(&self) -> bool {
        self.edges().is_empty()
    }

    /// The commutation graph.
    pub fn graph(&self) -> UGraph {
        UGraph::new(self.names.clone(), &self.edges()).expect("presentation edges are valid")
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> {
        (0..self.rank()).map(|g| g as u8)
    }

    /// The single-letter element for generator `g`.
    pub fn generator(&self, g: u8) -> TraceElement {
        TraceElement::from_normal(vec![g])
    }

    pub(crate) fn check_letters(&self, letters: &[u8]) -> Result<()> {
        match letters.iter().find(|&&l| l as usize >= self.rank()) {
            Some(&l) => Err(Error::UnknownGenerator { index: l as usize, rank: self.rank() }),
            None => Ok(()),
        }
    }

    /// Splits a space-free string into generator letters by greedy longest
    /// match. `1` and the empty string denote the identity; `.` may separate
    /// letters explicitly.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(FreeWord::new(Vec::new()));
        }
        let mut letters = Vec::new();
        for chunk in text.split('.') {
            let mut rest = chunk;
            while !rest.is_empty() {
                let best = self
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_str()))
                    .max_by_key(|(_, n)| n.len());
                match best {
                    Some((i, n)) => {
                        letters.push(i as u8);
                        rest = &rest[n.len()..];
                    }
                    None => return Err(Error::UnknownName(rest.to_string())),
                }
            }
        }
        Ok(FreeWord::new(letters))
    }

    /// Parses a word and returns its normal form.
    pub fn parse_element(&self, text: &str) -> Result<TraceElement> {
        let w = self.parse_word(text)?;
        self.normal_form(&w)
    }

    /// Renders letters by name: concatenated when every name is a single
    /// character, otherwise joined by `.`; the empty word is `1`.
    pub fn format_letters(&self, letters: &[u8]) -> String {
        if letters.is_empty() {
            return "1".into();
        }
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) { "" } else { "." };
        letters.iter().map(|&l| self.names[l as usize].as_str()).collect::<Vec<_>>().join(sep)
    }

    pub fn format(&self, e: &TraceElement) -> String {
        self.format_letters(e.letters())
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|&(a, b)| format!("{}{}={}{}", self.names[a], self.names[b], self.names[b], self.names[a]))
            .collect();
        write!(f, "<{} | {}>", self.names.join(","), edges.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text_format() {
        let p = Presentation::parse("# trace monoid\ngenerators: x y z\ncommute: x z\n").unwrap();
        assert_eq!(p.rank(), 3);
        assert!(p.commutes(0, 2) && p.commutes(2, 0));
        assert!(!p.commutes(0, 1));
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn rejects_malformed_text() {
        assert!(matches!(Presentation::parse("generators: x x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Presentation::parse("generators: x y\nrelations: x y"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Presentation::parse("generators: x y\ncommute: x w"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Presentation::parse("generators: x y\ncommute: x x"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Presentation::parse("generators: x y\ncommute: x"), Err(Error::Parse { line: 2, .. })));
        assert!(Presentation::parse("commute: x y").is_err());
        let c4 = Presentation::parse("generators: a b c d\ncommute: a b, b c, c d, d a\n").unwrap();
        assert_eq!(c4.edges().len(), 4);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(Presentation::new(["x", "y"], &[(0, 0)]).is_err());
        assert!(matches!(Presentation::new(["x", "y"], &[(0, 2)]), Err(Error::UnknownGenerator { .. })));
        assert!(Presentation::new(["x", "x"], &[]).is_err());
    }

    #[test]
    fn word_parsing_uses_longest_match() {
        let p = Presentation::new(["a", "ab", "b"], &[]).unwrap();
        assert_eq!(p.parse_word("abb").unwrap().letters(), &[1, 2]);
        assert_eq!(p.parse_word("a.b.b").unwrap().letters(), &[0, 2, 2]);
        assert!(p.parse_word("c").is_err());
        assert!(p.parse_word("1").unwrap().is_empty());
        assert_eq!(p.format_letters(&[1, 2]), "ab.b");
    }
}
