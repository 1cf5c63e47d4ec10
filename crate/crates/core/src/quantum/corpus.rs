//! Named witnesses used in tests and examples.

use nalgebra::DMatrix;

use super::hermitian::{BipartiteHermitian, C64};

/// Swap operator on `C^d ⊗ C^d`.
pub fn flip(d: usize) -> BipartiteHermitian {
    BipartiteHermitian::swap(d)
}

/// Choi's witness on `C^3 ⊗ C^3`: diagonal 1 on `|ii⟩`, 2 on `|i,i+1⟩`,
/// 0 on `|i,i+2⟩`, and -1 between distinct `|ii⟩` and `|jj⟩`.
pub fn choi() -> BipartiteHermitian {
    let mut m = DMatrix::<C64>::zeros(9, 9);
    for i in 0..3 {
        m[(i * 3 + i, i * 3 + i)] = C64::new(1.0, 0.0);
        let j = (i + 1) % 3;
        m[(i * 3 + j, i * 3 + j)] = C64::new(2.0, 0.0);
        for j in 0..3 {
            if i != j {
                m[(i * 3 + i, j * 3 + j)] = C64::new(-1.0, 0.0);
            }
        }
    }
    BipartiteHermitian::from_computed(3, 3, m)
}

/// `I - Σ_ij |ii⟩⟨jj|`, the witness of the reduction map.
pub fn reduction(d: usize) -> BipartiteHermitian {
    BipartiteHermitian::identity(d, d).sub_scaled(d as f64, &BipartiteHermitian::max_entangled(d))
}

/// The 3×3 corpus: `(name, witness)`.
pub fn corpus_3x3() -> Vec<(&'static str, BipartiteHermitian)> {
    vec![("choi", choi()), ("reduction", reduction(3)), ("flip", flip(3))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::seesaw::SearchConfig;
    use crate::quantum::witness::{classify_witness, WitnessClass};

    #[test]
    fn corpus_members_are_witnesses() {
        for (name, w) in corpus_3x3() {
            let r = classify_witness(&w, &SearchConfig::with_seed(0));
            assert_eq!(r.classification, WitnessClass::Witness, "{name}");
        }
    }
}
