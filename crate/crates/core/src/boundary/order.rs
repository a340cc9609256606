//! The order between decreasing sequences: `f ⪯ g` iff for every `n` some
//! `f(k)` lies below `g(n)`, i.e. `g(n)` left-divides `f(k)`.
//!
//! For eventually periodic words over a commutation graph this is decided
//! two ways. Letter stripping simulates, for each `n`, the removal of the
//! letters of `g(n)` from the front of `f` and yields the witnesses `k_n` or
//! a concrete obstruction. Projection onto every pair of non-commuting
//! letters (and every single letter) turns prefix tests into word
//! comparisons, which for eventually periodic words need only finitely many
//! letters; it locates the first failing `n`, if any, over the whole
//! infinite sequence.

use num_integer::Integer;

use super::word::BoundaryWord;
use crate::monoid::{LetterSet, Presentation};

/// Default multiplier `c` in the search bound `K(n) = n·(|u|+|v|)·c`.
pub const DEFAULT_SEARCH_FACTOR: usize = 4;

/// Why some `g(n)` can never left-divide any `f(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `letter` is needed but no longer occurs in what remains of `f`:
    /// its preamble supply is exhausted and the period lacks it.
    LetterCount { letter: u8 },
    /// `blocker`, which does not commute with `letter`, sits in front of
    /// every remaining occurrence of `letter` in `f`.
    Dependence { letter: u8, blocker: u8, position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    /// The first `n` for which `g(n)` divides no `f(k)`.
    pub n: usize,
    pub obstruction: Obstruction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeqWitness {
    /// `witnesses[n-1] = k_n`, the least `k` with `g(n)` left-dividing `f(k)`.
    pub witnesses: Vec<usize>,
    /// `(P, D)` with `k_{n+P} = k_n + D` across the observed range past the
    /// preamble of `g`, when such a pattern exists.
    pub period: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Witnesses(LeqWitness),
    Refuted(Refutation),
    /// The inner certificate concerns the comparison with arguments swapped.
    Converse(Box<Certificate>),
    /// Certificates for `(f, g)` and for `(g, f)`.
    Both(Box<Certificate>, Box<Certificate>),
}

impl Certificate {
    /// One line per fact, with generator names from `p`.
    pub fn describe(&self, p: &Presentation) -> Vec<String> {
        match self {
            Certificate::Witnesses(w) => {
                let ks: Vec<String> = w.witnesses.iter().map(|k| k.to_string()).collect();
                let period = match w.period {
                    Some((step, shift)) => format!("period: k(n+{step}) = k(n)+{shift}"),
                    None => "period: none observed".to_string(),
                };
                vec![format!("witnesses: {}", ks.join(" ")), period]
            }
            Certificate::Refuted(r) => vec![match r.obstruction {
                Obstruction::LetterCount { letter } => {
                    format!("refuted at n={}: letter {} runs out", r.n, p.name(letter))
                }
                Obstruction::Dependence { letter, blocker, position } => format!(
                    "refuted at n={}: letter {} is blocked by {} at position {}",
                    r.n,
                    p.name(letter),
                    p.name(blocker),
                    position
                ),
            }],
            Certificate::Converse(c) => c.describe(p).into_iter().map(|l| format!("converse {l}")).collect(),
            Certificate::Both(a, b) => {
                let mut out: Vec<String> = a.describe(p).into_iter().map(|l| format!("forward {l}")).collect();
                out.extend(b.describe(p).into_iter().map(|l| format!("converse {l}")));
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriState {
    True(Certificate),
    False(Certificate),
    Unknown { horizon: usize },
}

impl TriState {
    pub fn is_true(&self) -> bool {
        matches!(self, TriState::True(_))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, TriState::False(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TriState::Unknown { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            TriState::True(_) => "TRUE",
            TriState::False(_) => "FALSE",
            TriState::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            TriState::True(c) | TriState::False(c) => Some(c),
            TriState::Unknown { .. } => None,
        }
    }

    /// Conjunction where `converse` answers the swapped comparison.
    /// False dominates, then Unknown.
    fn and_converse(self, converse: TriState) -> TriState {
        match (self, converse) {
            (TriState::False(c), _) => TriState::False(c),
            (_, TriState::False(c)) => TriState::False(Certificate::Converse(Box::new(c))),
            (TriState::Unknown { horizon }, _) | (_, TriState::Unknown { horizon }) => TriState::Unknown { horizon },
            (TriState::True(a), TriState::True(b)) => TriState::True(Certificate::Both(Box::new(a), Box::new(b))),
        }
    }

    /// Disjunction where `converse` answers the swapped comparison.
    /// True dominates, then Unknown.
    fn or_converse(self, converse: TriState) -> TriState {
        match (self, converse) {
            (TriState::True(c), _) => TriState::True(c),
            (_, TriState::True(c)) => TriState::True(Certificate::Converse(Box::new(c))),
            (TriState::Unknown { horizon }, _) | (_, TriState::Unknown { horizon }) => TriState::Unknown { horizon },
            (TriState::False(a), TriState::False(b)) => TriState::False(Certificate::Both(Box::new(a), Box::new(b))),
        }
    }
}

/// Removes letters from the front of an infinite eventually periodic word.
struct FrontStripper<'a> {
    p: &'a Presentation,
    f: &'a BoundaryWord,
    period_letters: LetterSet,
    removed: Vec<bool>,
    front: usize,
}

enum StripStep {
    Found(usize),
    Failed(Obstruction),
    OutOfBound,
}

impl<'a> FrontStripper<'a> {
    fn new(p: &'a Presentation, f: &'a BoundaryWord) -> Self {
        FrontStripper { p, f, period_letters: f.period_letters(), removed: Vec::new(), front: 0 }
    }

    fn is_removed(&self, i: usize) -> bool {
        self.removed.get(i).copied().unwrap_or(false)
    }

    fn strip(&mut self, c: u8, bound: usize) -> StripStep {
        let dep = self.p.dependent(c);
        let pre = self.f.preamble().len();
        let mut i = self.front;
        loop {
            if i >= bound {
                return StripStep::OutOfBound;
            }
            if !self.is_removed(i) {
                if i >= pre && !self.period_letters.contains(c) {
                    return StripStep::Failed(Obstruction::LetterCount { letter: c });
                }
                let l = self.f.letter(i);
                if l == c {
                    if self.removed.len() <= i {
                        self.removed.resize(i + 1, false);
                    }
                    self.removed[i] = true;
                    while self.is_removed(self.front) {
                        self.front += 1;
                    }
                    return StripStep::Found(i);
                }
                if dep.contains(l) {
                    return StripStep::Failed(Obstruction::Dependence { letter: c, blocker: l, position: i });
                }
            }
            i += 1;
        }
    }
}

/// A projected eventually periodic word; `period` empty means finite.
struct Projected {
    preamble: Vec<u8>,
    period: Vec<u8>,
}

impl Projected {
    fn of(w: &BoundaryWord, keep: &LetterSet) -> Self {
        let pick = |s: &[u8]| s.iter().copied().filter(|l| keep.contains(*l)).collect::<Vec<_>>();
        Projected { preamble: pick(w.preamble()), period: pick(w.period()) }
    }

    fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    fn get(&self, i: usize) -> Option<u8> {
        if i < self.preamble.len() {
            Some(self.preamble[i])
        } else if self.is_finite() {
            None
        } else {
            Some(self.period[(i - self.preamble.len()) % self.period.len()])
        }
    }

    /// First index at which some finite prefix of `self` stops being a
    /// prefix of `other`.
    fn first_mismatch(&self, other: &Projected) -> Option<usize> {
        let checked = match (self.is_finite(), other.is_finite()) {
            (true, _) => self.preamble.len(),
            (false, true) => other.preamble.len() + 1,
            (false, false) => {
                self.preamble.len().max(other.preamble.len()) + self.period.len().lcm(&other.period.len())
            }
        };
        (0..checked).find(|&i| self.get(i) != other.get(i))
    }
}

/// Position (0-based) of the `m`-th letter of `w` lying in `keep`.
fn nth_kept_position(w: &BoundaryWord, keep: &LetterSet, m: usize) -> usize {
    let mut count = 0;
    let mut i = 0;
    loop {
        if keep.contains(w.letter(i)) {
            if count == m {
                return i;
            }
            count += 1;
        }
        i += 1;
    }
}

/// The least `n` with `g(n)` dividing no `f(k)`, or `None` when every
/// `g(n)` divides some `f(k)`.
fn first_failure(p: &Presentation, f: &BoundaryWord, g: &BoundaryWord) -> Option<usize> {
    let mut best: Option<usize> = None;
    for a in p.generators() {
        for b in p.generators().filter(|&b| b >= a && !p.commutes(a, b)) {
            let keep: LetterSet = [a, b].into_iter().collect();
            let pg = Projected::of(g, &keep);
            let pf = Projected::of(f, &keep);
            if let Some(m) = pg.first_mismatch(&pf) {
                let n = nth_kept_position(g, &keep, m) + 1;
                best = Some(best.map_or(n, |b: usize| b.min(n)));
            }
        }
    }
    best
}

fn detect_period(witnesses: &[usize], start: usize) -> Option<(usize, usize)> {
    let tail = witnesses.get(start..)?;
    (1..=tail.len() / 2).find_map(|step| {
        let d = tail[step].checked_sub(tail[0])?;
        tail.windows(step + 1).all(|w| w[step].checked_sub(w[0]) == Some(d)).then_some((step, d))
    })
}

/// `leq_bounded` with the default search factor.
pub fn leq_bounded(p: &Presentation, f: &BoundaryWord, g: &BoundaryWord, horizon: usize) -> TriState {
    leq_bounded_with(p, f, g, horizon, DEFAULT_SEARCH_FACTOR)
}

/// Decides `f ⪯ g`.
///
/// For `n ≤ horizon` the witness `k_n` is searched up to
/// `K(n) = n·(|u|+|v|)·search_factor` letters of `f`; exceeding the bound
/// gives `Unknown`. A `False` answer carries the first failing `n` (which may
/// lie beyond the horizon) with its obstruction. A `True` answer carries the
/// witnesses for `n ≤ horizon` and holds for every `n`.
pub fn leq_bounded_with(
    p: &Presentation,
    f: &BoundaryWord,
    g: &BoundaryWord,
    horizon: usize,
    search_factor: usize,
) -> TriState {
    debug_assert!(f.check(p).is_ok() && g.check(p).is_ok());
    let horizon = horizon.max(1);
    let failure = first_failure(p, f, g);
    let last = match failure {
        Some(n) => n.max(horizon),
        None => horizon,
    };
    let mut stripper = FrontStripper::new(p, f);
    let mut witnesses = Vec::with_capacity(horizon);
    let mut k = 0;
    for n in 1..=last {
        let bound = if n <= horizon { n * f.description_len() * search_factor } else { usize::MAX };
        match stripper.strip(g.letter(n - 1), bound) {
            StripStep::Found(pos) => {
                k = k.max(pos + 1);
                if n <= horizon {
                    witnesses.push(k);
                }
            }
            StripStep::Failed(obstruction) => {
                debug_assert_eq!(failure, Some(n));
                return TriState::False(Certificate::Refuted(Refutation { n, obstruction }));
            }
            StripStep::OutOfBound => return TriState::Unknown { horizon },
        }
    }
    debug_assert!(failure.is_none(), "projection refuted n={failure:?} but stripping succeeded");
    let period = detect_period(&witnesses, g.preamble().len());
    TriState::True(Certificate::Witnesses(LeqWitness { witnesses, period }))
}

/// Both `f ⪯ g` and `g ⪯ f`.
pub fn approx_equiv(p: &Presentation, f: &BoundaryWord, g: &BoundaryWord, horizon: usize) -> TriState {
    leq_bounded(p, f, g, horizon).and_converse(leq_bounded(p, g, f, horizon))
}

/// One step of the `~` relation: `f ⪯ g` or `g ⪯ f`. The full relation is
/// its transitive closure, which is not computed here.
pub fn tilde_related(p: &Presentation, f: &BoundaryWord, g: &BoundaryWord, horizon: usize) -> TriState {
    leq_bounded(p, f, g, horizon).or_converse(leq_bounded(p, g, f, horizon))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Presentation {
        Presentation::from_names(&["x", "y", "z"], &[("x", "z")]).unwrap()
    }

    fn bw(p: &Presentation, s: &str) -> BoundaryWord {
        BoundaryWord::parse(p, s).unwrap()
    }

    #[test]
    fn rem_example_order() {
        let p = xyz();
        let (f1, f2, f3) = (bw(&p, "(xz)^inf"), bw(&p, "(x)^inf"), bw(&p, "(z)^inf"));
        match leq_bounded(&p, &f1, &f2, 5) {
            TriState::True(Certificate::Witnesses(w)) => {
                assert_eq!(w.witnesses, vec![1, 3, 5, 7, 9]);
                assert_eq!(w.period, Some((1, 2)));
            }
            other => panic!("{other:?}"),
        }
        match leq_bounded(&p, &f1, &f3, 5) {
            TriState::True(Certificate::Witnesses(w)) => {
                assert_eq!(w.witnesses, vec![2, 4, 6, 8, 10]);
                assert_eq!(w.period, Some((1, 2)));
            }
            other => panic!("{other:?}"),
        }
        assert!(tilde_related(&p, &f1, &f2, 5).is_true());
        assert!(tilde_related(&p, &f1, &f3, 5).is_true());
        let lines = leq_bounded(&p, &f1, &f2, 5).certificate().unwrap().describe(&p);
        assert_eq!(lines, ["witnesses: 1 3 5 7 9", "period: k(n+1) = k(n)+2"]);
    }

    #[test]
    fn free_refutation_by_letter_count() {
        let f2 = Presentation::from_names(&["x", "y"], &[]).unwrap();
        let (x, y) = (bw(&f2, "(x)^inf"), bw(&f2, "(y)^inf"));
        let r = leq_bounded(&f2, &x, &y, 5);
        assert_eq!(
            r,
            TriState::False(Certificate::Refuted(Refutation { n: 1, obstruction: Obstruction::LetterCount { letter: 1 } }))
        );
        assert!(approx_equiv(&f2, &x, &y, 5).is_false());
        assert_eq!(r.certificate().unwrap().describe(&f2), ["refuted at n=1: letter y runs out"]);
        assert!(tilde_related(&f2, &x, &y, 5).is_false());
    }

    #[test]
    fn approx_equiv_examples() {
        let p = xyz();
        let x = bw(&p, "(x)^inf");
        assert!(approx_equiv(&p, &x, &x, 5).is_true());
        match approx_equiv(&p, &bw(&p, "(xz)^inf"), &x, 5) {
            TriState::False(Certificate::Converse(c)) => assert_eq!(
                *c,
                Certificate::Refuted(Refutation { n: 2, obstruction: Obstruction::LetterCount { letter: 2 } })
            ),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dependence_obstruction() {
        let p = xyz();
        // every z of (yz)^inf has a y in front of it, and y does not commute with z
        let r = leq_bounded(&p, &bw(&p, "(yz)^inf"), &bw(&p, "(z)^inf"), 3);
        assert_eq!(
            r,
            TriState::False(Certificate::Refuted(Refutation {
                n: 1,
                obstruction: Obstruction::Dependence { letter: 2, blocker: 1, position: 0 }
            }))
        );
    }

    #[test]
    fn failure_beyond_horizon_is_found() {
        let f2 = Presentation::from_names(&["x", "y"], &[]).unwrap();
        let r = leq_bounded(&f2, &bw(&f2, "(x)^inf"), &bw(&f2, "xxxxxx(y)^inf"), 2);
        match r {
            TriState::False(Certificate::Refuted(Refutation { n, .. })) => assert_eq!(n, 7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_search_factor_is_unknown() {
        let p = xyz();
        let x = bw(&p, "(x)^inf");
        assert_eq!(leq_bounded_with(&p, &x, &x, 4, 0), TriState::Unknown { horizon: 4 });
    }

    #[test]
    fn witnesses_are_genuine() {
        let p = xyz();
        let f = bw(&p, "y(zxx)^inf");
        let g = bw(&p, "y(xz)^inf");
        if let TriState::True(Certificate::Witnesses(w)) = leq_bounded(&p, &f, &g, 8) {
            for (i, &k) in w.witnesses.iter().enumerate() {
                let n = i + 1;
                assert!(p.left_divides(&g.prefix_element(&p, n), &f.prefix_element(&p, k)));
                assert!(!p.left_divides(&g.prefix_element(&p, n), &f.prefix_element(&p, k - 1)));
            }
        } else {
            panic!("expected True");
        }
    }
}
