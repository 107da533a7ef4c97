use std::fmt;
use std::str::FromStr;

/// A path from the root of a term, as 1-based argument indices.
///
/// The empty path is the root position ε, printed as `e`. The derived
/// ordering is lexicographic with prefixes first, which is also the order
/// a pre-order traversal visits positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn new(path: Vec<usize>) -> Position {
        debug_assert!(path.iter().all(|&i| i >= 1), "positions are 1-based");
        Position(path)
    }

    pub fn path(&self) -> &[usize] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, index: usize) -> Position {
        let mut path = self.0.clone();
        path.push(index);
        Position(path)
    }

    pub fn concat(&self, other: &Position) -> Position {
        let mut path = self.0.clone();
        path.extend_from_slice(&other.0);
        Position(path)
    }

    /// `self ≤ other`: self is a prefix of other.
    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `self < other`: self is a proper prefix of other.
    pub fn is_above(&self, other: &Position) -> bool {
        self.0.len() < other.0.len() && self.is_prefix_of(other)
    }

    /// `self > other`.
    pub fn is_below(&self, other: &Position) -> bool {
        other.is_above(self)
    }

    pub fn is_parallel_to(&self, other: &Position) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    /// The remainder of `self` after removing `prefix`, if `prefix ≤ self`.
    pub fn strip_prefix(&self, prefix: &Position) -> Option<Position> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| Position(rest.to_vec()))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid position `{0}`: expected `e` or dot-separated indices starting at 1")]
pub struct PositionParseError(pub String);

impl FromStr for Position {
    type Err = PositionParseError;

    fn from_str(s: &str) -> Result<Position, PositionParseError> {
        if s == "e" || s == "ε" {
            return Ok(Position::root());
        }
        let path = s
            .split('.')
            .map(|part| match part.parse::<usize>() {
                Ok(i) if i >= 1 && !part.starts_with('+') => Ok(i),
                _ => Err(PositionParseError(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Position(path))
    }
}
