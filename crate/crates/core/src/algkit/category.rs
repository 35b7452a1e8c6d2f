use std::sync::Arc;

use super::algebra::Algebra;
use crate::error::Result;
use crate::ffield::{Fe, FiniteField};
use crate::fusion::OrbitCategory;

/// The category algebra: morphisms as basis, `f * g = f . g` when composable and 0 otherwise.
pub fn algebra_from_category(cat: &OrbitCategory, field: Arc<FiniteField>) -> Result<Algebra> {
    let d = cat.morphisms().len();
    let products: Vec<Option<u32>> = (0..d * d).map(|i| cat.compose((i / d) as u32, (i % d) as u32)).collect();
    let mut one = vec![Fe::ZERO; d];
    for obj in 0..cat.num_objects() {
        one[cat.identity(obj) as usize] = Fe::ONE;
    }
    Algebra::from_monomial(field, d, &products, one)
}
