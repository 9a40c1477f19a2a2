use std::fmt;
use std::str::FromStr;

use super::PolyaError;
use crate::cycleindex::Monomial;

/// A permutation of `{1, ..., n}`. Stored 0-based: `images[i]` is the image
/// of point `i + 1`, minus one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images; fails unless they form a bijection of `0..n`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PolyaError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PolyaError::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From disjoint cycles over 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PolyaError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(PolyaError::NotAPermutation(format!("point {p} outside 1..={degree}")));
                }
                if touched[p - 1] {
                    return Err(PolyaError::NotAPermutation(format!("point {p} repeated")));
                }
                touched[p - 1] = true;
                images[p - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` (commas also separate
    /// points); `"()"` is the identity. `degree` must cover every point.
    pub fn parse(s: &str, degree: usize) -> Result<Self, PolyaError> {
        Self::from_cycles(degree, &parse_cycles(s)?)
    }

    /// The largest point mentioned in cycle notation, so callers can infer a degree.
    pub fn max_point(s: &str) -> Result<usize, PolyaError> {
        Ok(parse_cycles(s)?.iter().flatten().copied().max().unwrap_or(0))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles over 0-based points, fixed points included, each
    /// starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    /// `λ_i` = number of `i`-cycles, as `[λ_1, λ_2, ...]` (trailing zeros trimmed).
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.images.len()];
        for c in self.cycles() {
            counts[c.len() - 1] += 1;
        }
        while counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    /// `x_1^{λ_1} x_2^{λ_2} ...`
    pub fn cycle_monomial(&self) -> Monomial {
        Monomial::new(self.cycle_type())
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, j)| i == *j).count()
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>, PolyaError> {
    let bad = || PolyaError::Parse(s.to_string());
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err(bad());
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let points = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation over 1-based points, fixed points omitted.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Parses cycle notation with the degree inferred from the largest point.
impl FromStr for Permutation {
    type Err = PolyaError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, Self::max_point(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse("(1 2 3)(4 5)", 6).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.cycle_type(), vec![1, 1, 1]);
        assert_eq!(p.fixed_points(), 1);
        assert!(Permutation::parse("()", 3).unwrap().is_identity());
        assert_eq!("(2,1)".parse::<Permutation>().unwrap().to_string(), "(1 2)");
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("(1 1)", 3).is_err());
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("(a b)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn compose_and_invert() {
        let a = Permutation::parse("(1 2)", 3).unwrap();
        let b = Permutation::parse("(2 3)", 3).unwrap();
        // a ∘ b sends 2 -> 3 -> 3, 3 -> 2 -> 1, 1 -> 1 -> 2
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
        let c = a.compose(&b);
        assert!(c.compose(&c.inverse()).is_identity());
    }
}
