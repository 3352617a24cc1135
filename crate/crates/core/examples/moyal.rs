//! The Moyal–Weyl product: products of polynomials, the commutator expansion
//! {a,b} + ħ²V(a,b), and transport along an equivalence.

use hochlab::hochschild::PolyDiffCochain;
use hochlab::obstruction::vey_planar;
use hochlab::starprod::{
    apply_equivalence, associativity_defect, canonical_theta, commutator_expansion, moyal_weyl, star_multiply,
    EquivalenceSeries,
};
use hochlab::{HbarSeries, MultiIndex, MultiPoly};

fn main() -> hochlab::Result<()> {
    let s = moyal_weyl(&canonical_theta(2)?, 5)?;
    let x3 = MultiPoly::parse("x1^3", 2)?;
    let y3 = MultiPoly::parse("x2^3", 2)?;

    let prod = star_multiply(&s, &HbarSeries::constant(x3.clone(), 5), &HbarSeries::constant(y3.clone(), 5))?;
    for k in 0..=3 {
        println!("x³ * y³ at ħ^{k}: {}", prod.coeff(k));
    }
    let c = commutator_expansion(&s, &x3, &y3)?;
    println!("[x³, y³] at ħ¹: {}", c.coeff(1));
    println!("[x³, y³] at ħ³: {}  (V = {})", c.coeff(3), vey_planar(&x3, &y3)?);

    // T = exp(ħ ∂x²) conjugates Moyal into another associative product
    let dx2 = PolyDiffCochain::words(2, vec![MultiIndex::new(vec![2, 0])]);
    let t = EquivalenceSeries::exp(&HbarSeries::monomial(dx2, 1, 5))?;
    let s2 = apply_equivalence(&t, &s)?;
    println!("transported product is associative: {}", associativity_defect(&s2).is_zero());
    println!("its ħ² term: {}", s2.pi().coeff(2));
    let back = apply_equivalence(&t.inverse(), &s2)?;
    println!("T⁻¹ undoes T: {}", back == s);
    Ok(())
}
