use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{Permutation, PolyaError};

/// Largest degree accepted by [`PermGroup::symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 8;
/// Closure stops with an error once this many elements have been found.
pub const MAX_GROUP_ORDER: usize = 1_000_000;

/// A permutation group stored as its full, sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Builds a group from an explicit element list, checking identity,
    /// inverses and closure.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self, PolyaError> {
        let set: BTreeSet<Permutation> = elements.into_iter().collect();
        for p in &set {
            if p.degree() != degree {
                return Err(PolyaError::NotClosedUnderDegree { expected: degree, found: p.degree() });
            }
        }
        if !set.contains(&Permutation::identity(degree)) {
            return Err(PolyaError::NotAGroup("identity missing".into()));
        }
        for a in &set {
            if !set.contains(&a.inverse()) {
                return Err(PolyaError::NotAGroup(format!("inverse of {a} missing")));
            }
            for b in &set {
                if !set.contains(&a.compose(b)) {
                    return Err(PolyaError::NotAGroup(format!("{a} ∘ {b} missing")));
                }
            }
        }
        Ok(PermGroup { degree, elements: set.into_iter().collect() })
    }

    /// The subgroup generated by `generators`, by breadth-first products.
    pub fn closure(degree: usize, generators: &[Permutation]) -> Result<Self, PolyaError> {
        for g in generators {
            if g.degree() != degree {
                return Err(PolyaError::NotClosedUnderDegree { expected: degree, found: g.degree() });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    if seen.len() > MAX_GROUP_ORDER {
                        return Err(PolyaError::GroupTooLarge(MAX_GROUP_ORDER));
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(PermGroup { degree, elements })
    }

    /// Parses comma-separated generators in cycle notation, e.g.
    /// `"(1 2), (1 2 3)"`. The degree defaults to the largest point named.
    pub fn from_generator_list(text: &str, degree: Option<usize>) -> Result<Self, PolyaError> {
        let pieces: Vec<&str> = split_generators(text);
        let inferred = pieces.iter().map(|p| Permutation::max_point(p)).collect::<Result<Vec<_>, _>>()?;
        let max = inferred.iter().copied().max().unwrap_or(0);
        let degree = degree.unwrap_or(max);
        if max > degree {
            return Err(PolyaError::NotClosedUnderDegree { expected: degree, found: max });
        }
        let gens = pieces.iter().map(|p| Permutation::parse(p, degree)).collect::<Result<Vec<_>, _>>()?;
        Self::closure(degree, &gens)
    }

    pub fn symmetric(n: usize) -> Result<Self, PolyaError> {
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(PolyaError::DegreeTooLarge { degree: n, max: MAX_SYMMETRIC_DEGREE });
        }
        let mut elements = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            elements.push(Permutation::from_images(current.clone()).expect("lexicographic step keeps a bijection"));
            if !next_permutation(&mut current) {
                break;
            }
        }
        Ok(PermGroup { degree: n, elements })
    }

    /// Rotations of an `n`-gon.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n.max(1))
            .map(|r| Permutation::from_images((0..n).map(|i| (i + r) % n).collect()).unwrap())
            .collect::<BTreeSet<_>>();
        PermGroup { degree: n, elements: elements.into_iter().collect() }
    }

    /// Rotations and reflections of an `n`-gon (order `2n` for `n ≥ 3`; for
    /// smaller `n` coinciding symmetries are identified).
    pub fn dihedral(n: usize) -> Self {
        let mut elements = BTreeSet::new();
        for r in 0..n.max(1) {
            elements.insert(Permutation::from_images((0..n).map(|i| (i + r) % n).collect()).unwrap());
            elements.insert(Permutation::from_images((0..n).map(|i| (r + n - i) % n).collect()).unwrap());
        }
        PermGroup { degree: n, elements: elements.into_iter().collect() }
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup { degree: n, elements: vec![Permutation::identity(n)] }
    }

    /// `symmetric:n`, `cyclic:n`, `dihedral:n` or `trivial:n`.
    pub fn named(spec: &str) -> Result<Self, PolyaError> {
        let (family, n) = spec.split_once(':').ok_or_else(|| PolyaError::Parse(spec.to_string()))?;
        let n: usize = n.trim().parse().map_err(|_| PolyaError::Parse(spec.to_string()))?;
        match family.trim() {
            "symmetric" | "S" => Self::symmetric(n),
            "cyclic" | "C" => Ok(Self::cyclic(n)),
            "dihedral" | "D" => Ok(Self::dihedral(n)),
            "trivial" => Ok(Self::trivial(n)),
            _ => Err(PolyaError::Parse(spec.to_string())),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }
}

fn split_generators(text: &str) -> Vec<&str> {
    // Commas inside parentheses separate points, commas outside separate generators.
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' | ';' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
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
