//! Checkerboard paths on the quadratic lattice.
//!
//! A path is a sequence of light-speed segments, each either `Right`
//! (advancing `r`) or `Left` (advancing `l`). The `j`-th segment on a side
//! spans lattice coordinate `j − 1 → j`, i.e. light-cone length `(2j − 1)ε₀`.
//! A bend contributes `i` times the length of the segment it follows, and the
//! last bend is fixed by the endpoint and excluded from the amplitude.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::AmplitudePolynomial;

/// Default cap on `P + Q` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    Right,
    Left,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Right => 'R',
            Direction::Left => 'L',
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" | "right" | "+" => Ok(Direction::Right),
            "l" | "left" | "-" => Ok(Direction::Left),
            _ => Err(Error::Parse(format!("unknown direction {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    segments: Vec<Direction>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BendRecord {
    /// Direction of the segment just before the bend.
    pub side: Direction,
    pub coord: u32,
    pub counted: bool,
}

impl LatticePath {
    pub fn new(segments: Vec<Direction>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::invalid("a path needs at least one segment"));
        }
        Ok(Self { segments })
    }

    pub fn segments(&self) -> &[Direction] {
        &self.segments
    }

    pub fn start_dir(&self) -> Direction {
        self.segments[0]
    }

    pub fn end_dir(&self) -> Direction {
        *self.segments.last().expect("non-empty")
    }

    pub fn right_segments(&self) -> u32 {
        self.segments.iter().filter(|d| **d == Direction::Right).count() as u32
    }

    pub fn left_segments(&self) -> u32 {
        self.segments.len() as u32 - self.right_segments()
    }

    pub fn len(&self) -> u32 {
        self.segments.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total number of bends `R`.
    pub fn bends(&self) -> u32 {
        self.segments.windows(2).filter(|w| w[0] != w[1]).count() as u32
    }

    /// `R⁺`: bends turning onto a `Right` segment.
    pub fn bends_to_right(&self) -> u32 {
        self.segments
            .windows(2)
            .filter(|w| w[0] == Direction::Left && w[1] == Direction::Right)
            .count() as u32
    }

    /// `R⁻`: bends turning onto a `Left` segment.
    pub fn bends_to_left(&self) -> u32 {
        self.bends() - self.bends_to_right()
    }

    pub fn bend_records(&self) -> Vec<BendRecord> {
        let mut rights = 0u32;
        let mut lefts = 0u32;
        let mut out = Vec::new();
        for w in self.segments.windows(2) {
            let coord = match w[0] {
                Direction::Right => {
                    rights += 1;
                    rights
                }
                Direction::Left => {
                    lefts += 1;
                    lefts
                }
            };
            if w[0] != w[1] {
                out.push(BendRecord {
                    side: w[0],
                    coord,
                    counted: true,
                });
            }
        }
        if let Some(last) = out.last_mut() {
            last.counted = false;
        }
        out
    }

    /// `c · (iε₀)^{R−1}` with `c` the product of `2j − 1` over counted bends.
    pub fn amplitude(&self) -> AmplitudePolynomial {
        let records = self.bend_records();
        let order = records.len().saturating_sub(1) as u32;
        let coeff = records
            .iter()
            .filter(|b| b.counted)
            .fold(BigInt::one(), |acc, b| acc * BigInt::from(2 * b.coord - 1));
        AmplitudePolynomial::monomial(order, coeff)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.segments {
            write!(f, "{}", d.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let segments = s
            .chars()
            .map(|c| match c {
                'R' | 'r' => Ok(Direction::Right),
                'L' | 'l' => Ok(Direction::Left),
                other => Err(Error::Parse(format!("bad path symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePath::new(segments)
    }
}

pub fn bend_records(path: &LatticePath) -> Vec<BendRecord> {
    path.bend_records()
}

pub fn path_amplitude(path: &LatticePath) -> AmplitudePolynomial {
    path.amplitude()
}

/// Lexicographic iterator (`Right < Left`) over all interleavings of `P`
/// rights and `Q` lefts with fixed first and last segment.
#[derive(Debug, Clone)]
pub struct PathIter {
    start: Direction,
    end: Direction,
    middle: Option<Vec<Direction>>,
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        let middle = self.middle.as_mut()?;
        let mut segments = Vec::with_capacity(middle.len() + 2);
        segments.push(self.start);
        segments.extend_from_slice(middle);
        segments.push(self.end);
        if !next_permutation(middle) {
            self.middle = None;
        }
        Some(LatticePath { segments })
    }
}

fn next_permutation(v: &mut [Direction]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every path with `P` right and `Q` left segments that starts in `start`
/// and ends in `end`. Fails when `P + Q` exceeds `cap`.
pub fn enumerate_paths_capped(p: u32, q: u32, start: Direction, end: Direction, cap: u32) -> Result<PathIter> {
    if p == 0 || q == 0 {
        return Err(Error::invalid("P and Q must both be at least 1"));
    }
    let total = p + q;
    if total > cap {
        return Err(Error::ResourceLimit {
            requested: total as u64,
            cap: cap as u64,
        });
    }
    let empty = PathIter {
        start,
        end,
        middle: None,
    };
    let mut rights = p as i64;
    let mut lefts = q as i64;
    for d in [start, end] {
        match d {
            Direction::Right => rights -= 1,
            Direction::Left => lefts -= 1,
        }
    }
    if rights < 0 || lefts < 0 {
        return Ok(empty);
    }
    let mut middle = vec![Direction::Right; rights as usize];
    middle.extend(std::iter::repeat_n(Direction::Left, lefts as usize));
    Ok(PathIter {
        start,
        end,
        middle: Some(middle),
    })
}

pub fn enumerate_paths(p: u32, q: u32, start: Direction, end: Direction) -> Result<PathIter> {
    enumerate_paths_capped(p, q, start, end, DEFAULT_ENUMERATION_CAP)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Ways to split `n` segments into `runs` nonempty runs.
fn compositions(n: u64, runs: u64) -> BigUint {
    match (n, runs) {
        (0, 0) => BigUint::one(),
        (_, 0) | (0, _) => BigUint::zero(),
        _ => binomial(n - 1, runs - 1),
    }
}

/// Number of paths with exactly `R` bends, from run compositions. For
/// `start = Right`, `end = Left` and odd `R` this is
/// `C(P−1, (R−1)/2) · C(Q−1, (R−1)/2)`.
pub fn count_paths(p: u32, q: u32, start: Direction, end: Direction, bends: u32) -> BigUint {
    let runs = bends as u64 + 1;
    let (start_runs, other_runs) = if start == end {
        if bends % 2 == 1 {
            return BigUint::zero();
        }
        (runs.div_ceil(2), runs / 2)
    } else {
        if bends % 2 == 0 {
            return BigUint::zero();
        }
        (runs / 2, runs / 2)
    };
    let (right_runs, left_runs) = match start {
        Direction::Right => (start_runs, other_runs),
        Direction::Left => (other_runs, start_runs),
    };
    compositions(p as u64, right_runs) * compositions(q as u64, left_runs)
}

/// Sum of `path_amplitude` over the full enumeration.
pub fn sector_sum_bruteforce_capped(
    p: u32,
    q: u32,
    start: Direction,
    end: Direction,
    cap: u32,
) -> Result<AmplitudePolynomial> {
    let mut total = AmplitudePolynomial::zero();
    for path in enumerate_paths_capped(p, q, start, end, cap)? {
        total += &path.amplitude();
    }
    Ok(total)
}

pub fn sector_sum_bruteforce(p: u32, q: u32, start: Direction, end: Direction) -> Result<AmplitudePolynomial> {
    sector_sum_bruteforce_capped(p, q, start, end, DEFAULT_ENUMERATION_CAP)
}
