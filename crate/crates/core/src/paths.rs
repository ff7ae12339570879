//! Dyck and alternating Motzkin paths: validation, lazy enumeration, and the
//! altitude statistics R (rises), V (vertices) and L (even-step levels).
//!
//! Step positions are 1-indexed whenever they are reported or checked for
//! parity; internally `steps[j]` is step `j + 1`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::GammaPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Rise,
    Fall,
    Level,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Rise => 1,
            Step::Fall => -1,
            Step::Level => 0,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::Rise => 'U',
            Step::Fall => 'D',
            Step::Level => 'L',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c {
            'U' => Some(Step::Rise),
            'D' => Some(Step::Fall),
            'L' => Some(Step::Level),
            _ => None,
        }
    }

    /// The step seen when the path is read right to left.
    pub fn mirrored(self) -> Step {
        match self {
            Step::Rise => Step::Fall,
            Step::Fall => Step::Rise,
            Step::Level => Step::Level,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathKind {
    Dyck,
    #[serde(rename = "altmotzkin")]
    AltMotzkin,
}

impl PathKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PathKind::Dyck => "dyck",
            PathKind::AltMotzkin => "altmotzkin",
        }
    }

    fn alphabet(self) -> &'static [Step] {
        match self {
            PathKind::Dyck => &[Step::Rise, Step::Fall],
            PathKind::AltMotzkin => &[Step::Level, Step::Rise, Step::Fall],
        }
    }

    /// Whether `step` may be taken as step number `position` (1-indexed)
    /// starting from `altitude`.
    fn allows(self, step: Step, position: usize, altitude: usize) -> bool {
        match (self, step) {
            (PathKind::Dyck, Step::Level) => false,
            (PathKind::Dyck, Step::Rise) => true,
            (PathKind::Dyck, Step::Fall) => altitude > 0,
            (PathKind::AltMotzkin, Step::Level) => true,
            (PathKind::AltMotzkin, Step::Rise) => position.is_multiple_of(2),
            (PathKind::AltMotzkin, Step::Fall) => position % 2 == 1 && altitude > 0,
        }
    }

    /// Whether a prefix ending at `altitude` after `done` of `len` steps can
    /// still be completed.
    fn completable(self, altitude: usize, done: usize, len: usize) -> bool {
        let left = len - done;
        match self {
            PathKind::Dyck => altitude <= left,
            // falls need odd positions, and done+1..=len holds (len-done)/2 of them
            PathKind::AltMotzkin => altitude <= left / 2,
        }
    }
}

impl fmt::Display for PathKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PathKind {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dyck" => Ok(PathKind::Dyck),
            "altmotzkin" | "alt-motzkin" | "am" => Ok(PathKind::AltMotzkin),
            _ => Err(PathError::UnknownKind(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("invalid character {ch:?} at step {position} (expected U, D or L)")]
    InvalidChar { ch: char, position: usize },
    #[error("path length {len} is odd")]
    OddLength { len: usize },
    #[error("altitude goes negative at step {position}")]
    NegativeAltitude { position: usize },
    #[error("path ends at altitude {altitude}, not 0")]
    NonzeroEnd { altitude: i64 },
    #[error("{step:?} at step {position} violates alternation (rises on even steps, falls on odd steps)")]
    Alternation { step: Step, position: usize },
    #[error("level step at step {position} in a Dyck path")]
    LevelInDyck { position: usize },
    #[error("unknown path kind {0:?} (expected dyck or altmotzkin)")]
    UnknownKind(String),
}

/// A validated Dyck or alternating Motzkin path.
///
/// Equality and hashing look only at the step sequence.
#[derive(Debug, Clone)]
pub struct Path {
    steps: Vec<Step>,
    kind: PathKind,
}

impl PartialEq for Path {
    fn eq(&self, other: &Self) -> bool {
        self.steps == other.steps
    }
}

impl Eq for Path {}

impl Hash for Path {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.steps.hash(state);
    }
}

impl Path {
    pub fn new(steps: Vec<Step>, kind: PathKind) -> Result<Self, PathError> {
        validate(&steps, kind)?;
        Ok(Path { steps, kind })
    }

    pub fn parse(text: &str, kind: PathKind) -> Result<Self, PathError> {
        let steps = text
            .trim()
            .chars()
            .enumerate()
            .map(|(j, ch)| Step::from_char(ch).ok_or(PathError::InvalidChar { ch, position: j + 1 }))
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(steps, kind)
    }

    /// The empty path (`k = 0`).
    pub fn empty(kind: PathKind) -> Self {
        Path { steps: Vec::new(), kind }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Half the length.
    pub fn k(&self) -> usize {
        self.steps.len() / 2
    }

    /// Step number `position` (1-indexed).
    pub fn step(&self, position: usize) -> Option<Step> {
        position.checked_sub(1).and_then(|j| self.steps.get(j).copied())
    }

    /// Altitude of every vertex, `len + 1` entries.
    pub fn altitudes(&self) -> Vec<usize> {
        altitudes(&self.steps)
    }

    pub fn rise_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Rise).count()
    }

    pub fn render(&self) -> String {
        self.steps.iter().map(|s| s.as_char()).collect()
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Vertex altitudes of a step sequence that never goes below zero.
pub(crate) fn altitudes(steps: &[Step]) -> Vec<usize> {
    let mut out = Vec::with_capacity(steps.len() + 1);
    let mut a = 0usize;
    out.push(a);
    for s in steps {
        a = match s {
            Step::Rise => a + 1,
            Step::Fall => a - 1,
            Step::Level => a,
        };
        out.push(a);
    }
    out
}

pub(crate) fn validate(steps: &[Step], kind: PathKind) -> Result<(), PathError> {
    if steps.len() % 2 == 1 {
        return Err(PathError::OddLength { len: steps.len() });
    }
    let mut a: i64 = 0;
    for (j, &s) in steps.iter().enumerate() {
        let position = j + 1;
        match (kind, s) {
            (PathKind::Dyck, Step::Level) => return Err(PathError::LevelInDyck { position }),
            (PathKind::AltMotzkin, Step::Rise) if position % 2 == 1 => {
                return Err(PathError::Alternation { step: s, position })
            }
            (PathKind::AltMotzkin, Step::Fall) if position % 2 == 0 => {
                return Err(PathError::Alternation { step: s, position })
            }
            _ => {}
        }
        a += s.delta();
        if a < 0 {
            return Err(PathError::NegativeAltitude { position });
        }
    }
    if a != 0 {
        return Err(PathError::NonzeroEnd { altitude: a });
    }
    Ok(())
}

/// Parses the line-oriented text format: one path per line, blank lines skipped.
pub fn parse_lines(text: &str, kind: PathKind) -> Result<Vec<Path>, (usize, PathError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| Path::parse(l, kind).map_err(|e| (n + 1, e)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

/// Lazy backtracking enumeration of all paths of one kind and length,
/// optionally restricted to a fixed prefix.
///
/// Paths come out in lexicographic order of the kind's step alphabet
/// (`U < D` for Dyck, `L < U < D` for alternating Motzkin).
#[derive(Debug, Clone)]
pub struct PathIter {
    kind: PathKind,
    len: usize,
    fixed: usize,
    steps: Vec<Step>,
    alts: Vec<usize>,
    state: IterState,
}

impl PathIter {
    pub fn new(kind: PathKind, k: usize) -> Self {
        Self::with_prefix(kind, k, &[])
    }

    /// Enumerates only the paths starting with `prefix`; yields nothing if the
    /// prefix cannot be completed.
    pub fn with_prefix(kind: PathKind, k: usize, prefix: &[Step]) -> Self {
        let len = 2 * k;
        let mut it = PathIter {
            kind,
            len,
            fixed: prefix.len(),
            steps: Vec::with_capacity(len),
            alts: vec![0; len + 1],
            state: IterState::Fresh,
        };
        if prefix.len() > len {
            it.state = IterState::Done;
            return it;
        }
        for (j, &s) in prefix.iter().enumerate() {
            let a = it.alts[j];
            if !kind.allows(s, j + 1, a) {
                it.state = IterState::Done;
                return it;
            }
            let next = (a as i64 + s.delta()) as usize;
            if !kind.completable(next, j + 1, len) {
                it.state = IterState::Done;
                return it;
            }
            it.steps.push(s);
            it.alts[j + 1] = next;
        }
        it
    }

    fn try_set(&mut self, j: usize, s: Step) -> bool {
        let a = self.alts[j];
        if !self.kind.allows(s, j + 1, a) {
            return false;
        }
        let next = (a as i64 + s.delta()) as usize;
        if !self.kind.completable(next, j + 1, self.len) {
            return false;
        }
        self.steps.truncate(j);
        self.steps.push(s);
        self.alts[j + 1] = next;
        true
    }

    /// Extends the current prefix with the smallest completion.
    fn fill(&mut self) {
        while self.steps.len() < self.len {
            let j = self.steps.len();
            let placed = self.kind.alphabet().iter().any(|&s| self.try_set(j, s));
            debug_assert!(placed, "completable prefix had no extension");
        }
    }

    fn advance(&mut self) -> bool {
        for j in (self.fixed..self.len).rev() {
            let current = self.steps[j];
            let alphabet = self.kind.alphabet();
            let at = alphabet.iter().position(|&s| s == current).unwrap_or(alphabet.len());
            for &s in &alphabet[at + 1..] {
                if self.try_set(j, s) {
                    self.fill();
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for PathIter {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.fill();
                self.state = IterState::Running;
            }
            IterState::Running => {
                if !self.advance() {
                    self.state = IterState::Done;
                    return None;
                }
            }
        }
        Some(Path {
            steps: self.steps.clone(),
            kind: self.kind,
        })
    }
}

impl std::iter::FusedIterator for PathIter {}

pub fn enumerate(kind: PathKind, k: usize) -> PathIter {
    PathIter::new(kind, k)
}

/// All Dyck paths of length `2k`.
pub fn enumerate_dyck(k: usize) -> PathIter {
    PathIter::new(PathKind::Dyck, k)
}

/// All alternating Motzkin paths of length `2k`.
pub fn enumerate_alt_motzkin(k: usize) -> PathIter {
    PathIter::new(PathKind::AltMotzkin, k)
}

/// Every completable prefix of length `depth` (capped at `2k`), in
/// enumeration order. The prefix streams partition the full enumeration.
pub fn prefixes(kind: PathKind, k: usize, depth: usize) -> Vec<Vec<Step>> {
    let len = 2 * k;
    let depth = depth.min(len);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(depth);
    fn rec(kind: PathKind, len: usize, depth: usize, alt: usize, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if cur.len() == depth {
            out.push(cur.clone());
            return;
        }
        let j = cur.len();
        for &s in kind.alphabet() {
            if !kind.allows(s, j + 1, alt) {
                continue;
            }
            let next = (alt as i64 + s.delta()) as usize;
            if kind.completable(next, j + 1, len) {
                cur.push(s);
                rec(kind, len, depth, next, cur, out);
                cur.pop();
            }
        }
    }
    rec(kind, len, depth, 0, &mut cur, &mut out);
    out
}

/// Folds over every path of one kind and length, splitting the work by path
/// prefix across the rayon pool. `merge` must be associative and commutative.
pub fn par_fold<A, I, F, M>(kind: PathKind, k: usize, identity: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &Path) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    prefixes(kind, k, 8)
        .into_par_iter()
        .map(|prefix| PathIter::with_prefix(kind, k, &prefix).fold(identity(), |acc, p| fold(acc, &p)))
        .reduce(&identity, &merge)
}

/// Rise-by-altitude, vertex-by-altitude and even-level-by-altitude vectors.
///
/// `rises` and `even_levels` have `k` entries and `vertices` has `k + 1`,
/// trailing zeros included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AltitudeStats {
    #[serde(rename = "R")]
    pub rises: Vec<u64>,
    #[serde(rename = "V")]
    pub vertices: Vec<u64>,
    #[serde(rename = "L")]
    pub even_levels: Vec<u64>,
    #[serde(rename = "r")]
    pub rise_count: u64,
}

pub fn stats(p: &Path) -> AltitudeStats {
    let k = p.k();
    let mut rises = vec![0u64; k];
    let mut vertices = vec![0u64; k + 1];
    let mut even_levels = vec![0u64; k];
    let mut a = 0usize;
    vertices[0] += 1;
    for (j, s) in p.steps.iter().enumerate() {
        match s {
            Step::Rise => {
                rises[a] += 1;
                a += 1;
            }
            Step::Fall => a -= 1,
            Step::Level => {
                if (j + 1) % 2 == 0 {
                    even_levels[a] += 1;
                }
            }
        }
        vertices[a] += 1;
    }
    AltitudeStats {
        rises,
        vertices,
        even_levels,
        rise_count: p.rise_count() as u64,
    }
}

/// Level steps at one altitude, split by step parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelParity {
    pub altitude: usize,
    pub total: u64,
    pub even: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelParityError {
    #[error("level parity applies to alternating Motzkin paths only")]
    NotAltMotzkin,
    #[error("altitude {}: {} level steps, {} on even steps", .0.altitude, .0.total, .0.even)]
    Violation(LevelParity),
}

/// Checks that at every altitude the number of level steps is even and
/// exactly half of them sit on even-numbered steps. Reports altitudes `0..k`.
pub fn check_level_parity(p: &Path) -> Result<Vec<LevelParity>, LevelParityError> {
    if p.kind != PathKind::AltMotzkin {
        return Err(LevelParityError::NotAltMotzkin);
    }
    let alts = p.altitudes();
    let mut report: Vec<LevelParity> = (0..p.k())
        .map(|altitude| LevelParity { altitude, total: 0, even: 0 })
        .collect();
    for (j, s) in p.steps.iter().enumerate() {
        if *s == Step::Level {
            let entry = &mut report[alts[j]];
            entry.total += 1;
            if (j + 1) % 2 == 0 {
                entry.even += 1;
            }
        }
    }
    match report.iter().find(|e| e.total % 2 == 1 || 2 * e.even != e.total) {
        Some(bad) => Err(LevelParityError::Violation(*bad)),
        None => Ok(report),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// Every path counts once.
    Uniform,
    /// A path with `r` rises has weight `γ^r`.
    Gamma,
}

/// Weighted sums of the statistic vectors over all paths, each entry a
/// polynomial in γ; dividing by `normalizer` gives the expectation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectationVectors {
    #[serde(rename = "R")]
    pub rises: Vec<GammaPoly>,
    #[serde(rename = "V")]
    pub vertices: Vec<GammaPoly>,
    #[serde(rename = "L")]
    pub even_levels: Vec<GammaPoly>,
    pub normalizer: GammaPoly,
}

/// Expectations evaluated at a specific γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVectors {
    pub rises: Vec<BigRational>,
    pub vertices: Vec<BigRational>,
    pub even_levels: Vec<BigRational>,
}

impl ExpectationVectors {
    pub fn at(&self, gamma: &BigRational) -> RationalVectors {
        let z = self.normalizer.eval(gamma);
        let f = |v: &[GammaPoly]| v.iter().map(|p| p.eval(gamma) / &z).collect::<Vec<_>>();
        RationalVectors {
            rises: f(&self.rises),
            vertices: f(&self.vertices),
            even_levels: f(&self.even_levels),
        }
    }
}

pub fn expectation_vectors(k: usize, kind: PathKind, weighting: Weighting) -> ExpectationVectors {
    let zero = || ExpectationVectors {
        rises: vec![GammaPoly::zero(); k],
        vertices: vec![GammaPoly::zero(); k + 1],
        even_levels: vec![GammaPoly::zero(); k],
        normalizer: GammaPoly::zero(),
    };
    par_fold(
        kind,
        k,
        zero,
        |mut acc, p| {
            let s = stats(p);
            let w = match weighting {
                Weighting::Uniform => GammaPoly::one(),
                Weighting::Gamma => GammaPoly::monomial(1, s.rise_count as usize),
            };
            let add = |dst: &mut [GammaPoly], src: &[u64]| {
                for (d, &c) in dst.iter_mut().zip(src) {
                    if c != 0 {
                        *d += &w.scale(&BigInt::from(c));
                    }
                }
            };
            add(&mut acc.rises, &s.rises);
            add(&mut acc.vertices, &s.vertices);
            add(&mut acc.even_levels, &s.even_levels);
            acc.normalizer += &w;
            acc
        },
        |mut a, b| {
            for (x, y) in a.rises.iter_mut().zip(&b.rises) {
                *x += y;
            }
            for (x, y) in a.vertices.iter_mut().zip(&b.vertices) {
                *x += y;
            }
            for (x, y) in a.even_levels.iter_mut().zip(&b.even_levels) {
                *x += y;
            }
            a.normalizer += &b.normalizer;
            a
        },
    )
}

/// One row of the stats CSV export.
#[derive(Debug, Clone, Serialize)]
pub struct StatsRow {
    pub kind: PathKind,
    pub k: usize,
    pub path: String,
    #[serde(rename = "R")]
    pub rises: String,
    #[serde(rename = "V")]
    pub vertices: String,
    #[serde(rename = "L")]
    pub even_levels: String,
    pub r: u64,
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

impl StatsRow {
    pub fn new(p: &Path) -> Self {
        let s = stats(p);
        StatsRow {
            kind: p.kind,
            k: p.k(),
            path: p.render(),
            rises: join(&s.rises),
            vertices: join(&s.vertices),
            even_levels: join(&s.even_levels),
            r: s.rise_count,
        }
    }
}

/// Writes `kind,k,path,R,V,L,r` rows; vector entries are `;`-separated.
pub fn write_stats_csv<W: std::io::Write, I: IntoIterator<Item = Path>>(out: W, paths: I) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for p in paths {
        w.serialize(StatsRow::new(&p))?;
    }
    w.flush()?;
    Ok(())
}
