use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::{CycleIndex, CycleIndexError, Monomial};
use crate::rational::{partitions_as_multiplicities, totient_table, Rational};

/// The basic species with closed-form cycle indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Zero,
    One,
    X,
    /// Sets.
    E,
    /// Sets of exactly `n` elements.
    En(usize),
    /// Nonempty sets.
    EPlus,
    /// Linear orders.
    L,
    /// Nonempty linear orders.
    LPlus,
    /// Cyclic permutations.
    C,
    /// Permutations.
    S,
    /// Derangements.
    Der,
}

impl Atom {
    pub fn name(&self) -> String {
        match self {
            Atom::Zero => "Zero".into(),
            Atom::One => "One".into(),
            Atom::X => "X".into(),
            Atom::E => "E".into(),
            Atom::En(n) => format!("E_{n}"),
            Atom::EPlus => "E_plus".into(),
            Atom::L => "L".into(),
            Atom::LPlus => "L_plus".into(),
            Atom::C => "C".into(),
            Atom::S => "S".into(),
            Atom::Der => "Der".into(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Accepts the names printed by [`Atom::name`], plus `E<n>` / `E_<n>` for
/// `E_n` and `E+` / `L+` for the nonempty variants.
impl FromStr for Atom {
    type Err = CycleIndexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let atom = match s {
            "Zero" | "0" => Atom::Zero,
            "One" | "1" => Atom::One,
            "X" => Atom::X,
            "E" => Atom::E,
            "E_plus" | "E+" | "Eplus" => Atom::EPlus,
            "L" => Atom::L,
            "L_plus" | "L+" | "Lplus" => Atom::LPlus,
            "C" => Atom::C,
            "S" => Atom::S,
            "Der" => Atom::Der,
            _ => {
                let digits = s.strip_prefix("E_").or_else(|| s.strip_prefix('E'));
                match digits.and_then(|d| d.parse::<usize>().ok()) {
                    Some(n) => Atom::En(n),
                    None => return Err(CycleIndexError::UnknownAtom(s.to_string())),
                }
            }
        };
        Ok(atom)
    }
}

/// Cycle index of `atom` truncated to weight `n`.
pub fn atom(atom: Atom, n: usize) -> CycleIndex {
    match atom {
        Atom::Zero => CycleIndex::zero(n),
        Atom::One => CycleIndex::one(n),
        Atom::X => CycleIndex::x1(n),
        Atom::E => sets(n, 0..=n),
        Atom::En(k) => sets(n, k..=k),
        Atom::EPlus => sets(n, 1..=n),
        Atom::L => linear(n, 0),
        Atom::LPlus => linear(n, 1),
        Atom::C => cycles(n),
        Atom::S => permutations(n),
        Atom::Der => {
            let e = sets(n, 0..=n);
            &permutations(n) * &e.invert().expect("Z_E has constant term 1")
        }
    }
}

// Z_E = Σ_m x^m / aut(m): the terms of weight k form Z(S_k).
fn sets(n: usize, weights: std::ops::RangeInclusive<usize>) -> CycleIndex {
    let mut z = CycleIndex::zero(n);
    for k in weights {
        if k > n {
            break;
        }
        for exps in partitions_as_multiplicities(k) {
            let m = Monomial::new(exps);
            let c = Rational::new(BigInt::one(), m.aut());
            z.add_term(m, c);
        }
    }
    z
}

fn linear(n: usize, from: usize) -> CycleIndex {
    CycleIndex::from_terms(n, (from..=n).map(|k| (Monomial::var_pow(1, k as u32), Rational::one())))
}

// Π_k 1/(1 - x_k): every monomial with coefficient 1.
fn permutations(n: usize) -> CycleIndex {
    CycleIndex::from_terms(
        n,
        (0..=n).flat_map(|k| partitions_as_multiplicities(k).into_iter().map(|e| (Monomial::new(e), Rational::one()))),
    )
}

// Σ_k φ(k)/k · log 1/(1 - x_k) = Σ_k Σ_m φ(k)/(k m) x_k^m.
fn cycles(n: usize) -> CycleIndex {
    let phi = totient_table(n.max(1));
    let mut z = CycleIndex::zero(n);
    for k in 1..=n {
        for m in 1..=n / k {
            let c = Rational::new(BigInt::from(phi[k]), BigInt::from(k * m));
            z.add_term(Monomial::var_pow(k, m as u32), c);
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ratio, rat};

    #[test]
    fn linear_orders_to_weight_3() {
        let l = atom(Atom::L, 3);
        let expected = CycleIndex::from_terms(3, (0..=3).map(|k| (Monomial::var_pow(1, k), rat(1))));
        assert_eq!(l, expected);
    }

    #[test]
    fn cycles_to_weight_3() {
        let expected = CycleIndex::from_terms(
            3,
            [
                (Monomial::var(1), rat(1)),
                (Monomial::var_pow(1, 2), ratio(1, 2)),
                (Monomial::var(2), ratio(1, 2)),
                (Monomial::var_pow(1, 3), ratio(1, 3)),
                (Monomial::var(3), ratio(2, 3)),
            ],
        );
        assert_eq!(atom(Atom::C, 3), expected);
    }

    #[test]
    fn zero_atom_and_names() {
        assert!(atom(Atom::Zero, 5).is_zero());
        assert_eq!("E_3".parse::<Atom>().unwrap(), Atom::En(3));
        assert_eq!("E2".parse::<Atom>().unwrap(), Atom::En(2));
        assert_eq!("L_plus".parse::<Atom>().unwrap(), Atom::LPlus);
        assert_eq!("Q".parse::<Atom>(), Err(CycleIndexError::UnknownAtom("Q".into())));
        for a in [Atom::Zero, Atom::E, Atom::En(4), Atom::EPlus, Atom::LPlus, Atom::Der] {
            assert_eq!(a.name().parse::<Atom>().unwrap(), a);
        }
    }

    #[test]
    fn derangement_counts() {
        let d = atom(Atom::Der, 6).egf().egf_counts();
        let expected: Vec<_> = [1, 0, 1, 2, 9, 44, 265].iter().map(|&v| rat(v)).collect();
        assert_eq!(d, expected);
    }

    #[test]
    fn e_n_is_homogeneous() {
        let e3 = atom(Atom::En(3), 6);
        assert!(e3.terms().all(|(m, _)| m.weight() == 3));
        assert_eq!(e3.len(), 3);
    }
}
