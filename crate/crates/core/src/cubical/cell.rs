use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CubicalError;

/// One coordinate of a cubical cell. Ordered `0 < 1 < *`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Coord {
    Zero,
    One,
    Star,
}

impl Coord {
    pub fn symbol(self) -> char {
        match self {
            Coord::Zero => '0',
            Coord::One => '1',
            Coord::Star => '*',
        }
    }

    pub fn is_star(self) -> bool {
        self == Coord::Star
    }
}

/// A cell of the cube I^N: a word over {0, 1, *}. Its dimension is the number
/// of stars.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Cell {
    word: Vec<Coord>,
}

impl Cell {
    pub fn new(word: Vec<Coord>) -> Self {
        Cell { word }
    }

    /// The unique cell of I^0.
    pub fn point() -> Self {
        Cell { word: Vec::new() }
    }

    /// The top cell `*…*` of I^n.
    pub fn top(n: usize) -> Self {
        Cell {
            word: vec![Coord::Star; n],
        }
    }

    pub fn word(&self) -> &[Coord] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.word.iter().filter(|c| c.is_star()).count()
    }

    pub fn coord(&self, i: usize) -> Coord {
        self.word[i]
    }

    pub fn with(&self, i: usize, c: Coord) -> Cell {
        let mut word = self.word.clone();
        word[i] = c;
        Cell { word }
    }

    /// Concatenation: the product cell `self × other`.
    pub fn product(&self, other: &Cell) -> Cell {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Cell { word }
    }

    pub fn prefixed(&self, c: Coord) -> Cell {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(c);
        word.extend_from_slice(&self.word);
        Cell { word }
    }

    /// Splits into the first `k` coordinates and the rest.
    pub fn split_at(&self, k: usize) -> (Cell, Cell) {
        (
            Cell::new(self.word[..k].to_vec()),
            Cell::new(self.word[k..].to_vec()),
        )
    }

    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.word.len()).filter(|&i| self.word[i].is_star()).collect()
    }

    /// `∂c = Σ_j (−1)^{j−1} (c[i_j:=1] − c[i_j:=0])` over the free positions
    /// `i_1 < … < i_d`.
    pub fn boundary(&self) -> Vec<(Cell, i64)> {
        let mut out = Vec::new();
        for (j, i) in self.free_positions().into_iter().enumerate() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out.push((self.with(i, Coord::One), sign));
            out.push((self.with(i, Coord::Zero), -sign));
        }
        out
    }

    /// Serre diagonal: on I¹, `0 ↦ 0⊗0`, `1 ↦ 1⊗1`, `* ↦ *⊗0 + 1⊗*`, extended
    /// to products with the Koszul sign of the interchange.
    pub fn diagonal(&self) -> Vec<(i64, Cell, Cell)> {
        let mut terms: Vec<(i64, Vec<Coord>, Vec<Coord>)> = vec![(1, Vec::new(), Vec::new())];
        for &c in &self.word {
            let options: &[(Coord, Coord)] = match c {
                Coord::Zero => &[(Coord::Zero, Coord::Zero)],
                Coord::One => &[(Coord::One, Coord::One)],
                Coord::Star => &[(Coord::Star, Coord::Zero), (Coord::One, Coord::Star)],
            };
            let mut next = Vec::with_capacity(terms.len() * options.len());
            for (sign, left, right) in &terms {
                for &(l, r) in options {
                    // moving the earlier right factors past this left factor
                    let right_dim = right.iter().filter(|x| x.is_star()).count();
                    let s = if l.is_star() && right_dim % 2 == 1 { -sign } else { *sign };
                    let mut left = left.clone();
                    let mut right = right.clone();
                    left.push(l);
                    right.push(r);
                    next.push((s, left, right));
                }
            }
            terms = next;
        }
        terms
            .into_iter()
            .map(|(s, l, r)| (s, Cell::new(l), Cell::new(r)))
            .collect()
    }

    /// All faces of this cell, including itself.
    pub fn faces(&self) -> Vec<Cell> {
        let mut out = vec![Vec::new()];
        for &c in &self.word {
            let options: &[Coord] = match c {
                Coord::Star => &[Coord::Zero, Coord::One, Coord::Star],
                Coord::Zero => &[Coord::Zero],
                Coord::One => &[Coord::One],
            };
            out = out
                .into_iter()
                .flat_map(|w: Vec<Coord>| {
                    options.iter().map(move |&o| {
                        let mut w = w.clone();
                        w.push(o);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(Cell::new).collect()
    }

    pub fn is_face_of(&self, other: &Cell) -> bool {
        self.len() == other.len()
            && self
                .word
                .iter()
                .zip(&other.word)
                .all(|(&a, &b)| a == b || b == Coord::Star)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "()");
        }
        for c in &self.word {
            write!(f, "{}", c.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cell({self})")
    }
}

impl FromStr for Cell {
    type Err = CubicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "()" {
            return Ok(Cell::point());
        }
        s.chars()
            .map(|ch| match ch {
                '0' => Ok(Coord::Zero),
                '1' => Ok(Coord::One),
                '*' => Ok(Coord::Star),
                other => Err(CubicalError::BadCellWord(format!("{s} (symbol {other:?})"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Cell::new)
    }
}

impl TryFrom<String> for Cell {
    type Error = CubicalError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Cell> for String {
    fn from(c: Cell) -> String {
        c.to_string()
    }
}
