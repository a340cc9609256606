use crate::monoid::{LetterSet, Presentation, TraceElement};
use crate::{Error, Result};

/// An eventually periodic word `preamble · period^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryWord {
    preamble: Vec<u8>,
    period: Vec<u8>,
}

impl BoundaryWord {
    pub fn new(preamble: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::invalid("a boundary word needs a nonempty period"));
        }
        Ok(BoundaryWord { preamble, period })
    }

    /// `period^∞`.
    pub fn periodic(period: Vec<u8>) -> Result<Self> {
        BoundaryWord::new(Vec::new(), period)
    }

    /// Parses `PREAMBLE(PERIOD)^inf`, for instance `x(xz)^inf` or `(y)^inf`.
    /// Without parentheses the exponent applies to the last generator, so
    /// `yx^inf` is `y(x)^inf`.
    pub fn parse(p: &Presentation, text: &str) -> Result<Self> {
        let text = text.trim();
        let body = text
            .strip_suffix("^inf")
            .ok_or_else(|| Error::invalid(format!("boundary word {text:?} must end in `^inf`")))?;
        let Some(body) = body.strip_suffix(')') else {
            let mut letters = p.parse_word(body)?.into_letters();
            let last = letters.pop().ok_or_else(|| Error::invalid(format!("boundary word {text:?} has no period")))?;
            return BoundaryWord::new(letters, vec![last]);
        };
        let (pre, per) = body
            .split_once('(')
            .ok_or_else(|| Error::invalid(format!("boundary word {text:?} lacks `(`")))?;
        if per.contains('(') || per.contains(')') || pre.contains(')') {
            return Err(Error::invalid(format!("unbalanced parentheses in {text:?}")));
        }
        let preamble = if pre.is_empty() { Vec::new() } else { p.parse_word(pre)?.into_letters() };
        let period = p.parse_word(per)?.into_letters();
        BoundaryWord::new(preamble, period)
    }

    pub fn format(&self, p: &Presentation) -> String {
        let pre = if self.preamble.is_empty() { String::new() } else { p.format_letters(&self.preamble) };
        format!("{pre}({})^inf", p.format_letters(&self.period))
    }

    pub fn preamble(&self) -> &[u8] {
        &self.preamble
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// Total description length `|preamble| + |period|`.
    pub fn description_len(&self) -> usize {
        self.preamble.len() + self.period.len()
    }

    /// The `i`-th letter (0-based) of the infinite word.
    #[inline]
    pub fn letter(&self, i: usize) -> u8 {
        if i < self.preamble.len() {
            self.preamble[i]
        } else {
            self.period[(i - self.preamble.len()) % self.period.len()]
        }
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> Vec<u8> {
        (0..k).map(|i| self.letter(i)).collect()
    }

    pub fn period_letters(&self) -> LetterSet {
        self.period.iter().copied().collect()
    }

    /// `f(k)`: the monoid element of the first `k` letters.
    pub fn prefix_element(&self, p: &Presentation, k: usize) -> TraceElement {
        p.normal_form(&self.prefix(k).into()).expect("boundary word letters are validated")
    }

    pub(crate) fn check(&self, p: &Presentation) -> Result<()> {
        p.check_letters(&self.preamble)?;
        p.check_letters(&self.period)
    }
}
