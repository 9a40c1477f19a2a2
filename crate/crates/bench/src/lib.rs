//! Workloads shared by the benchmarks.

use zyklus::polya::{pair_group_cycle_index, PairMethod};
use zyklus::species::tree_suite;
use zyklus::{atom, Atom, CycleIndex, DiffOperator, OperatorKind};

/// `Z_E ∘ Z_{E_+}` (set partitions) to weight `n`.
pub fn set_partitions(n: usize) -> CycleIndex {
    atom(Atom::E, n).plethysm(&atom(Atom::EPlus, n)).expect("inner series has no constant term")
}

/// Cycle indices of the six tree families to weight `n`.
pub fn trees(n: usize) -> usize {
    tree_suite(n).expect("tree program compiles").values().map(CycleIndex::len).sum()
}

pub fn pair_group(n: usize, method: PairMethod) -> CycleIndex {
    pair_group_cycle_index(n, method).expect("degree within limits")
}

/// `E_2(D)` applied to `Z_C`, valid to weight `n`.
pub fn hammond_on_cycles(n: usize) -> CycleIndex {
    let op = DiffOperator::make(&OperatorKind::HammondAtom(Atom::En(2)), n, 2);
    op.apply(&atom(Atom::C, n + 2)).expect("input bound covers the operator")
}
