//! The four reversible constructions gluing two paths of length `2k` into one
//! path of (roughly) double length with a prescribed middle altitude.
//!
//! | construction | inputs                  | marks                              | output                      | middle |
//! |--------------|-------------------------|------------------------------------|-----------------------------|--------|
//! | A            | two Dyck paths          | rise from `i` / fall to `i`        | Dyck, length `4k`           | `2i+2` |
//! | B            | two Dyck paths          | vertex at `i` / vertex at `i`      | Dyck, length `4k+2`         | `2i+1` |
//! | C            | two alt. Motzkin paths  | rise from `i` / fall to `i`        | alt. Motzkin, length `4k`   | `2i+2` |
//! | D            | two alt. Motzkin paths  | even level at `i` / odd level at `i` | alt. Motzkin, length `4k` | `2i+1` |
//!
//! Every construction lifts the left path so that it ends at the middle
//! altitude, and applies the mirror image of the same lift to the right path
//! (reverse it, swap rises and falls, lift, mirror back). Marks are step
//! positions counted from 1, except for B where they are vertex indices
//! `0..=2k`.
//!
//! The closing fall of a rise is its matching fall: the first later step that
//! returns the path to the rise's starting altitude.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::paths::{self, enumerate, Path, PathError, PathKind, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Construction {
    A,
    B,
    C,
    D,
}

impl Construction {
    pub const ALL: [Construction; 4] = [Construction::A, Construction::B, Construction::C, Construction::D];

    pub fn kind(self) -> PathKind {
        match self {
            Construction::A | Construction::B => PathKind::Dyck,
            Construction::C | Construction::D => PathKind::AltMotzkin,
        }
    }

    /// Output length for inputs of length `2k`.
    pub fn output_len(self, k: usize) -> usize {
        match self {
            Construction::B => 4 * k + 2,
            _ => 4 * k,
        }
    }

    /// Largest admissible altitude `i` for inputs of length `2k`.
    fn max_altitude(self, k: usize) -> Option<usize> {
        match self {
            Construction::B => Some(k),
            _ => k.checked_sub(1),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Construction {
    type Err = BijectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Construction::A),
            "B" => Ok(Construction::B),
            "C" => Ok(Construction::C),
            "D" => Ok(Construction::D),
            _ => Err(BijectionError::UnknownConstruction(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("unknown construction {0:?} (expected A, B, C or D)")]
    UnknownConstruction(String),
    #[error("construction {construction} takes {expected} paths")]
    WrongKind { construction: Construction, expected: PathKind },
    #[error("p1 has length {left} but p2 has length {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("altitude i = {i} out of range for construction {construction} at k = {k}")]
    AltitudeOutOfRange { construction: Construction, i: usize, k: usize },
    #[error("{which} = {position}: {reason}")]
    InvalidMark { which: &'static str, position: usize, reason: String },
    #[error("path is not in the image of construction {construction}: {reason}")]
    NotInImage { construction: Construction, reason: String },
    #[error("invalid path: {0}")]
    Path(#[from] PathError),
    #[error("internal invariant violated: {0}")]
    Broken(String),
}

/// Input of a construction: two paths of equal length, an altitude and two marks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFiveTuple", into = "RawFiveTuple")]
pub struct FiveTuple {
    pub construction: Construction,
    pub p1: Path,
    pub p2: Path,
    pub i: usize,
    pub mark1: usize,
    pub mark2: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiveTuple {
    construction: Construction,
    p1: String,
    p2: String,
    i: usize,
    mark1: usize,
    mark2: usize,
}

impl TryFrom<RawFiveTuple> for FiveTuple {
    type Error = BijectionError;

    fn try_from(raw: RawFiveTuple) -> Result<Self, Self::Error> {
        let kind = raw.construction.kind();
        let t = FiveTuple {
            construction: raw.construction,
            p1: Path::parse(&raw.p1, kind)?,
            p2: Path::parse(&raw.p2, kind)?,
            i: raw.i,
            mark1: raw.mark1,
            mark2: raw.mark2,
        };
        t.validate()?;
        Ok(t)
    }
}

impl From<FiveTuple> for RawFiveTuple {
    fn from(t: FiveTuple) -> Self {
        RawFiveTuple {
            construction: t.construction,
            p1: t.p1.render(),
            p2: t.p2.render(),
            i: t.i,
            mark1: t.mark1,
            mark2: t.mark2,
        }
    }
}

fn bad_mark(which: &'static str, position: usize, reason: impl Into<String>) -> BijectionError {
    BijectionError::InvalidMark { which, position, reason: reason.into() }
}

impl FiveTuple {
    pub fn k(&self) -> usize {
        self.p1.k()
    }

    /// Checks every invariant of the tuple for its construction.
    pub fn validate(&self) -> Result<(), BijectionError> {
        let c = self.construction;
        let kind = c.kind();
        if self.p1.kind() != kind || self.p2.kind() != kind {
            return Err(BijectionError::WrongKind { construction: c, expected: kind });
        }
        if self.p1.len() != self.p2.len() {
            return Err(BijectionError::LengthMismatch { left: self.p1.len(), right: self.p2.len() });
        }
        let k = self.k();
        let i = self.i;
        if c.max_altitude(k).is_none_or(|m| i > m) {
            return Err(BijectionError::AltitudeOutOfRange { construction: c, i, k });
        }
        let a1 = self.p1.altitudes();
        let a2 = self.p2.altitudes();
        let n = self.p1.len();
        let step_at = |p: &Path, which, pos: usize| -> Result<Step, BijectionError> {
            p.step(pos)
                .ok_or_else(|| bad_mark(which, pos, format!("step positions run from 1 to {n}")))
        };
        match c {
            Construction::A | Construction::C => {
                if step_at(&self.p1, "mark1", self.mark1)? != Step::Rise || a1[self.mark1 - 1] != i {
                    return Err(bad_mark("mark1", self.mark1, format!("not a rise from altitude {i} in p1")));
                }
                if step_at(&self.p2, "mark2", self.mark2)? != Step::Fall || a2[self.mark2] != i {
                    return Err(bad_mark(
                        "mark2",
                        self.mark2,
                        format!("not a fall from altitude {} to {i} in p2", i + 1),
                    ));
                }
            }
            Construction::B => {
                for (which, v, a) in [("mark1", self.mark1, &a1), ("mark2", self.mark2, &a2)] {
                    if v > n {
                        return Err(bad_mark(which, v, format!("vertex indices run from 0 to {n}")));
                    }
                    if a[v] != i {
                        return Err(bad_mark(which, v, format!("vertex is at altitude {}, not {i}", a[v])));
                    }
                }
            }
            Construction::D => {
                if step_at(&self.p1, "mark1", self.mark1)? != Step::Level
                    || a1[self.mark1 - 1] != i
                    || !self.mark1.is_multiple_of(2)
                {
                    return Err(bad_mark(
                        "mark1",
                        self.mark1,
                        format!("not a level step at altitude {i} on an even step of p1"),
                    ));
                }
                if step_at(&self.p2, "mark2", self.mark2)? != Step::Level
                    || a2[self.mark2 - 1] != i
                    || self.mark2 % 2 != 1
                {
                    return Err(bad_mark(
                        "mark2",
                        self.mark2,
                        format!("not a level step at altitude {i} on an odd step of p2"),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Output of a construction together with its altitude after the first half.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MidPath {
    pub path: Path,
    pub middle_altitude: usize,
}

impl serde::Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

fn mirror(steps: &[Step]) -> Vec<Step> {
    steps.iter().rev().map(|s| s.mirrored()).collect()
}

// ---- scans over a step sequence and its vertex altitudes ----

fn last_rise_from(steps: &[Step], alts: &[usize], altitude: usize) -> Option<usize> {
    (0..steps.len()).rev().find(|&j| steps[j] == Step::Rise && alts[j] == altitude)
}

fn nearest_rise_left(steps: &[Step], alts: &[usize], before: usize, altitude: usize) -> Option<usize> {
    (0..before).rev().find(|&j| steps[j] == Step::Rise && alts[j] == altitude)
}

fn matching_fall(steps: &[Step], alts: &[usize], rise: usize) -> Option<usize> {
    (rise + 1..steps.len()).find(|&j| steps[j] == Step::Fall && alts[j + 1] == alts[rise])
}

fn matching_rise(steps: &[Step], alts: &[usize], fall: usize) -> Option<usize> {
    (0..fall).rev().find(|&j| steps[j] == Step::Rise && alts[j] == alts[fall + 1])
}

fn nearest_even_level_right(steps: &[Step], alts: &[usize], after: usize, altitude: usize) -> Option<usize> {
    (after + 1..steps.len()).find(|&j| steps[j] == Step::Level && alts[j] == altitude && (j + 1) % 2 == 0)
}

fn nearest_level_left(steps: &[Step], alts: &[usize], before: usize, altitude: usize) -> Option<usize> {
    (0..before).rev().find(|&j| steps[j] == Step::Level && alts[j] == altitude)
}

fn broken(what: impl Into<String>) -> BijectionError {
    BijectionError::Broken(what.into())
}

/// Rises from altitudes `top-1, top-2, ..., 0`, each the nearest one to the
/// left of the previous (the first strictly left of `start`).
fn chain_below(steps: &[Step], alts: &[usize], start: usize, top: usize) -> Result<Vec<usize>, BijectionError> {
    let mut out = Vec::with_capacity(top);
    let mut cur = start;
    for a in (0..top).rev() {
        cur = nearest_rise_left(steps, alts, cur, a)
            .ok_or_else(|| broken(format!("no rise from altitude {a} left of step {}", cur + 1)))?;
        out.push(cur);
    }
    Ok(out)
}

fn closing_falls(steps: &[Step], alts: &[usize], rises: &[usize]) -> Result<Vec<usize>, BijectionError> {
    rises
        .iter()
        .map(|&r| matching_fall(steps, alts, r).ok_or_else(|| broken(format!("rise at step {} never closes", r + 1))))
        .collect()
}

/// Pairs each closing fall with the nearest even-numbered level step to its
/// right at the altitude the fall lands on.
fn level_partners(steps: &[Step], alts: &[usize], falls: &[usize]) -> Result<Vec<usize>, BijectionError> {
    falls
        .iter()
        .map(|&f| {
            nearest_even_level_right(steps, alts, f, alts[f + 1]).ok_or_else(|| {
                broken(format!("no even level step at altitude {} right of step {}", alts[f + 1], f + 1))
            })
        })
        .collect()
}

// ---- left-half lifts and their inverses (0-indexed positions) ----

/// A: flip the closing falls of the rise at `x` and of the rises below it.
fn lift_rise_flip(steps: &[Step], x: usize) -> Result<Vec<Step>, BijectionError> {
    let alts = paths::altitudes(steps);
    let mut chain = vec![x];
    chain.extend(chain_below(steps, &alts, x, alts[x])?);
    let mut out = steps.to_vec();
    for f in closing_falls(steps, &alts, &chain)? {
        out[f] = Step::Rise;
    }
    Ok(out)
}

fn lower_rise_flip(steps: &[Step], i: usize) -> Result<(Vec<Step>, usize), BijectionError> {
    let alts = paths::altitudes(steps);
    let mut out = steps.to_vec();
    let mut first = None;
    for b in i + 1..=2 * i + 1 {
        let q = last_rise_from(steps, &alts, b).ok_or_else(|| broken(format!("no rise from altitude {b}")))?;
        out[q] = Step::Fall;
        first.get_or_insert(q);
    }
    paths::validate(&out, PathKind::Dyck)?;
    let f = first.expect("i + 1 >= 1 flips");
    let out_alts = paths::altitudes(&out);
    let x = matching_rise(&out, &out_alts, f).ok_or_else(|| broken("recovered fall has no matching rise"))?;
    Ok((out, x))
}

/// B: flip the closing falls of the rises below vertex `v`, then insert a rise at `v`.
fn lift_vertex(steps: &[Step], v: usize) -> Result<Vec<Step>, BijectionError> {
    let alts = paths::altitudes(steps);
    let chain = chain_below(steps, &alts, v, alts[v])?;
    let mut out = steps.to_vec();
    for f in closing_falls(steps, &alts, &chain)? {
        out[f] = Step::Rise;
    }
    out.insert(v, Step::Rise);
    Ok(out)
}

fn lower_vertex(steps: &[Step], i: usize) -> Result<(Vec<Step>, usize), BijectionError> {
    let alts = paths::altitudes(steps);
    let d = last_rise_from(steps, &alts, i).ok_or_else(|| broken(format!("no rise from altitude {i}")))?;
    let mut out = steps.to_vec();
    out.remove(d);
    let cut_alts = paths::altitudes(&out);
    let targets = (i..2 * i)
        .map(|b| last_rise_from(&out, &cut_alts, b).ok_or_else(|| broken(format!("no rise from altitude {b}"))))
        .collect::<Result<Vec<_>, _>>()?;
    for q in targets {
        out[q] = Step::Fall;
    }
    paths::validate(&out, PathKind::Dyck)?;
    Ok((out, d))
}

/// C: move each closing fall onto its level partner, then turn it into a rise.
fn lift_rise_switch(steps: &[Step], x: usize) -> Result<Vec<Step>, BijectionError> {
    let alts = paths::altitudes(steps);
    let mut chain = vec![x];
    chain.extend(chain_below(steps, &alts, x, alts[x])?);
    let falls = closing_falls(steps, &alts, &chain)?;
    let levels = level_partners(steps, &alts, &falls)?;
    let mut out = steps.to_vec();
    for (&f, &q) in falls.iter().zip(&levels) {
        out[f] = Step::Level;
        out[q] = Step::Rise;
    }
    Ok(out)
}

/// Undoes the switch-and-flip for rises from altitudes `lo..=hi`; returns the
/// restored fall for altitude `lo`.
fn unswitch(steps: &[Step], out: &mut [Step], lo: usize, hi: usize) -> Result<Option<usize>, BijectionError> {
    let alts = paths::altitudes(steps);
    let mut first = None;
    for b in lo..=hi {
        let q = last_rise_from(steps, &alts, b).ok_or_else(|| broken(format!("no rise from altitude {b}")))?;
        let f = nearest_level_left(steps, &alts, q, b)
            .ok_or_else(|| broken(format!("no level step at altitude {b} left of step {}", q + 1)))?;
        out[q] = Step::Level;
        out[f] = Step::Fall;
        first.get_or_insert(f);
    }
    Ok(first)
}

fn lower_rise_switch(steps: &[Step], i: usize) -> Result<(Vec<Step>, usize), BijectionError> {
    let mut out = steps.to_vec();
    let f = unswitch(steps, &mut out, i + 1, 2 * i + 1)?.expect("i + 1 >= 1 switches");
    paths::validate(&out, PathKind::AltMotzkin)?;
    let out_alts = paths::altitudes(&out);
    let x = matching_rise(&out, &out_alts, f).ok_or_else(|| broken("recovered fall has no matching rise"))?;
    Ok((out, x))
}

/// D: turn the level step at `y` into a rise, then switch-and-flip the
/// closing falls of the rises below it.
fn lift_level(steps: &[Step], y: usize) -> Result<Vec<Step>, BijectionError> {
    let alts = paths::altitudes(steps);
    let chain = chain_below(steps, &alts, y, alts[y])?;
    let falls = closing_falls(steps, &alts, &chain)?;
    let levels = level_partners(steps, &alts, &falls)?;
    let mut out = steps.to_vec();
    out[y] = Step::Rise;
    for (&f, &q) in falls.iter().zip(&levels) {
        out[f] = Step::Level;
        out[q] = Step::Rise;
    }
    Ok(out)
}

fn lower_level(steps: &[Step], i: usize) -> Result<(Vec<Step>, usize), BijectionError> {
    let alts = paths::altitudes(steps);
    let y = last_rise_from(steps, &alts, i).ok_or_else(|| broken(format!("no rise from altitude {i}")))?;
    let mut out = steps.to_vec();
    if i > 0 {
        unswitch(steps, &mut out, i + 1, 2 * i)?;
    }
    out[y] = Step::Level;
    paths::validate(&out, PathKind::AltMotzkin)?;
    Ok((out, y))
}

fn lift(c: Construction, steps: &[Step], mark: usize) -> Result<Vec<Step>, BijectionError> {
    match c {
        Construction::A => lift_rise_flip(steps, mark),
        Construction::B => lift_vertex(steps, mark),
        Construction::C => lift_rise_switch(steps, mark),
        Construction::D => lift_level(steps, mark),
    }
}

fn lower(c: Construction, steps: &[Step], i: usize) -> Result<(Vec<Step>, usize), BijectionError> {
    match c {
        Construction::A => lower_rise_flip(steps, i),
        Construction::B => lower_vertex(steps, i),
        Construction::C => lower_rise_switch(steps, i),
        Construction::D => lower_level(steps, i),
    }
}

/// Internal mark (0-indexed step, or vertex for B) from the external one.
fn internal_mark(c: Construction, mark: usize) -> usize {
    match c {
        Construction::B => mark,
        _ => mark - 1,
    }
}

fn external_mark(c: Construction, mark: usize) -> usize {
    match c {
        Construction::B => mark,
        _ => mark + 1,
    }
}

/// Position of an internal mark after mirroring a half of length `n`.
fn mirror_mark(c: Construction, mark: usize, n: usize) -> usize {
    match c {
        Construction::B => n - mark,
        _ => n - 1 - mark,
    }
}

/// Applies the construction named in the tuple.
pub fn construct(t: &FiveTuple) -> Result<MidPath, BijectionError> {
    t.validate()?;
    let c = t.construction;
    let n = t.p1.len();
    let left = lift(c, t.p1.steps(), internal_mark(c, t.mark1))?;
    let m2 = mirror_mark(c, internal_mark(c, t.mark2), n);
    let right = mirror(&lift(c, &mirror(t.p2.steps()), m2)?);
    let half = left.len();
    let mut steps = left;
    steps.extend(right);
    let path = Path::new(steps, c.kind()).map_err(|e| broken(format!("construction produced an invalid path: {e}")))?;
    let middle_altitude = path.altitudes()[half];
    Ok(MidPath { path, middle_altitude })
}

pub fn construct_a(t: &FiveTuple) -> Result<MidPath, BijectionError> {
    expect_construction(t, Construction::A)?;
    construct(t)
}

pub fn construct_b(t: &FiveTuple) -> Result<MidPath, BijectionError> {
    expect_construction(t, Construction::B)?;
    construct(t)
}

pub fn construct_c(t: &FiveTuple) -> Result<MidPath, BijectionError> {
    expect_construction(t, Construction::C)?;
    construct(t)
}

pub fn construct_d(t: &FiveTuple) -> Result<MidPath, BijectionError> {
    expect_construction(t, Construction::D)?;
    construct(t)
}

fn expect_construction(t: &FiveTuple, c: Construction) -> Result<(), BijectionError> {
    if t.construction != c {
        return Err(BijectionError::InvalidMark {
            which: "construction",
            position: 0,
            reason: format!("expected construction {c}, got {}", t.construction),
        });
    }
    Ok(())
}

/// Why `p` is outside the image of `c`, or `None` if it is inside.
fn image_defect(c: Construction, p: &Path) -> Option<String> {
    if p.kind() != c.kind() {
        return Some(format!("expected a {} path", c.kind()));
    }
    let len = p.len();
    let (shape_ok, shape) = match c {
        Construction::B => (len % 4 == 2, "length 4k+2"),
        _ => (len.is_multiple_of(4) && len >= 4, "length 4k with k >= 1"),
    };
    if !shape_ok {
        return Some(format!("length {len} is not of the form {shape}"));
    }
    let mid = p.altitudes()[len / 2];
    match c {
        Construction::A | Construction::C if mid == 0 => Some("middle altitude is 0".into()),
        Construction::C if mid % 2 == 1 => Some(format!("middle altitude {mid} is odd")),
        Construction::D if mid.is_multiple_of(2) => Some(format!("middle altitude {mid} is even")),
        _ => None,
    }
}

/// Whether `p` lies in the characterized image of `c`.
pub fn in_image(c: Construction, p: &Path) -> bool {
    image_defect(c, p).is_none()
}

/// Recovers the unique tuple mapping to `p` under construction `c`.
pub fn invert(c: Construction, p: &Path) -> Result<FiveTuple, BijectionError> {
    if let Some(reason) = image_defect(c, p) {
        return Err(BijectionError::NotInImage { construction: c, reason });
    }
    let half = p.len() / 2;
    let mid = p.altitudes()[half];
    let i = match c {
        Construction::A | Construction::C => mid / 2 - 1,
        Construction::B | Construction::D => (mid - 1) / 2,
    };
    let (left, right) = p.steps().split_at(half);
    let (s1, m1) = lower(c, left, i)?;
    let (s2m, m2m) = lower(c, &mirror(right), i)?;
    let s2 = mirror(&s2m);
    let n = s1.len();
    let t = FiveTuple {
        construction: c,
        p1: Path::new(s1, c.kind())?,
        p2: Path::new(s2, c.kind())?,
        i,
        mark1: external_mark(c, m1),
        mark2: external_mark(c, mirror_mark(c, m2m, n)),
    };
    t.validate().map_err(|e| broken(format!("inverse produced an invalid tuple: {e}")))?;
    Ok(t)
}

pub fn invert_a(p: &Path) -> Result<FiveTuple, BijectionError> {
    invert(Construction::A, p)
}

pub fn invert_b(p: &Path) -> Result<FiveTuple, BijectionError> {
    invert(Construction::B, p)
}

pub fn invert_c(p: &Path) -> Result<FiveTuple, BijectionError> {
    invert(Construction::C, p)
}

pub fn invert_d(p: &Path) -> Result<FiveTuple, BijectionError> {
    invert(Construction::D, p)
}

/// Admissible `(mark1, mark2)` candidates for one altitude.
fn marks(c: Construction, p1: &Path, p2: &Path, i: usize) -> (Vec<usize>, Vec<usize>) {
    let a1 = p1.altitudes();
    let a2 = p2.altitudes();
    let positions = |p: &Path, keep: &dyn Fn(usize, Step) -> bool| -> Vec<usize> {
        p.steps()
            .iter()
            .enumerate()
            .filter(|&(j, &s)| keep(j, s))
            .map(|(j, _)| j + 1)
            .collect()
    };
    match c {
        Construction::A | Construction::C => (
            positions(p1, &|j, s| s == Step::Rise && a1[j] == i),
            positions(p2, &|j, s| s == Step::Fall && a2[j + 1] == i),
        ),
        Construction::B => (
            (0..a1.len()).filter(|&v| a1[v] == i).collect(),
            (0..a2.len()).filter(|&v| a2[v] == i).collect(),
        ),
        Construction::D => (
            positions(p1, &|j, s| s == Step::Level && a1[j] == i && (j + 1) % 2 == 0),
            positions(p2, &|j, s| s == Step::Level && a2[j] == i && (j + 1) % 2 == 1),
        ),
    }
}

/// Every valid input tuple of construction `c` with paths of length `2k`.
pub fn inputs(c: Construction, k: usize) -> Vec<FiveTuple> {
    let all: Vec<Path> = enumerate(c.kind(), k).collect();
    let Some(max_i) = c.max_altitude(k) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for p1 in &all {
        for p2 in &all {
            for i in 0..=max_i {
                let (m1s, m2s) = marks(c, p1, p2, i);
                for &mark1 in &m1s {
                    for &mark2 in &m2s {
                        out.push(FiveTuple {
                            construction: c,
                            p1: p1.clone(),
                            p2: p2.clone(),
                            i,
                            mark1,
                            mark2,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Every path in the characterized image of `c` for inputs of length `2k`.
pub fn image(c: Construction, k: usize) -> impl Iterator<Item = Path> {
    let out_k = c.output_len(k) / 2;
    enumerate(c.kind(), out_k).filter(move |p| in_image(c, p))
}
