use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree`, displayed in 1-based cycle notation.
///
/// Products compose right to left: `(p · q)(x) = p(q(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidParameter("images do not form a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation(inv)
    }

    /// Cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parses cycle notation on points `1..=degree`, e.g. `"(1 2)(3 4 5)"`,
/// `"(1,2,3)"`, `"()"` or the empty string. Cycles are composed right to left.
pub fn parse_cycles(input: &str, degree: usize) -> Result<Permutation> {
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if degree > u8::MAX as usize {
        return Err(err("degree above 255"));
    }
    let mut result = Permutation::identity(degree);
    let mut rest = input.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(err("expected `(`"));
        }
        let close = rest.find(')').ok_or_else(|| err("unclosed cycle"))?;
        let body = &rest[1..close];
        rest = rest[close + 1..].trim_start();
        let mut points = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let p: usize = tok.parse().map_err(|_| err("non-numeric point"))?;
            if p == 0 || p > degree {
                return Err(err("point outside 1..=degree"));
            }
            if points.contains(&(p - 1)) {
                return Err(err("repeated point in a cycle"));
            }
            points.push(p - 1);
        }
        if points.len() < 2 {
            continue;
        }
        let mut images: Vec<u8> = (0..degree as u8).collect();
        for w in 0..points.len() {
            images[points[w]] = points[(w + 1) % points.len()] as u8;
        }
        result = result.compose(&Permutation(images));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = parse_cycles("(3 1 2)(4,5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(parse_cycles("", 3).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = parse_cycles("(1 2)", 3).unwrap();
        let b = parse_cycles("(2 3)", 3).unwrap();
        // apply (2 3) first: 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
        assert_eq!(parse_cycles("(1 2)(2 3)", 3).unwrap(), a.compose(&b));
    }

    #[test]
    fn conjugating_a_three_cycle_by_a_transposition() {
        let t = parse_cycles("(1 2)", 3).unwrap();
        let c = parse_cycles("(1 3 2)", 3).unwrap();
        assert_eq!(t.compose(&c).compose(&t).to_string(), "(1 2 3)");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_cycles("(1 4)", 3).is_err());
        assert!(parse_cycles("(1 1)", 3).is_err());
        assert!(parse_cycles("1 2", 3).is_err());
        assert!(parse_cycles("(1 2", 3).is_err());
        assert!(parse_cycles("(a b)", 3).is_err());
    }

    #[test]
    fn parity() {
        assert!(parse_cycles("(1 2 3)", 3).unwrap().is_even());
        assert!(!parse_cycles("(1 2)", 3).unwrap().is_even());
        assert_eq!(parse_cycles("(1 2 3)", 3).unwrap().inverse().to_string(), "(1 3 2)");
    }
}
