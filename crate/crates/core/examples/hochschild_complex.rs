//! The Hochschild cochain and chain complexes of ℚ[x, y]: ∂² = 0, the bracket,
//! Connes' B and the negative cyclic differential.

use hochlab::exactalg::rational::int;
use hochlab::hochschild::{CyclicChain, HochChain, PolyDiffCochain};
use hochlab::{MultiIndex, MultiPoly};

fn main() -> hochlab::Result<()> {
    let x2 = MultiPoly::parse("x1^2", 2)?;
    let dx = PolyDiffCochain::partial(2, 0).mul_function(&x2);
    let dy = PolyDiffCochain::partial(2, 1);
    let pi = dx.cup(&dy)?;
    println!("Π = x²∂x ∪ ∂y     : {pi}");
    println!("∂Π                : {}", pi.hoch_differential());
    println!("[x²∂x, ∂y]_G      : {}", dx.gerstenhaber_bracket(&dy)?);
    let mu = PolyDiffCochain::mu(2);
    println!("[μ, μ]_G          : {}", mu.gerstenhaber_bracket(&mu)?);

    let p = MultiPoly::parse("x1*x2 + x2^2", 2)?;
    println!("Π(x1, x1·x2)      : {}", pi.apply(&[MultiPoly::var(2, 0), p.clone()])?);

    let c = HochChain::from_tuple(&[p, MultiPoly::var(2, 0), MultiPoly::var(2, 1)])?;
    println!("c                 : {c}");
    println!("b c               : {}", c.chain_boundary());
    println!("B c               : {}", c.connes_b());
    println!("b b c = 0         : {}", c.chain_boundary().chain_boundary().is_zero());
    println!("B B c = 0         : {}", c.connes_b().connes_b().is_zero());
    println!("I_Π c             : {}", c.contraction_i(&pi)?);

    let cyc = CyclicChain::constant(c, 3);
    println!("(b + uB)² c = 0   : {}", cyc.cyclic_differential().cyclic_differential().is_zero());

    let basis = HochChain::basis(vec![MultiIndex::new(vec![1, 0]), MultiIndex::new(vec![0, 1])], int(1));
    println!("b(x ⊗ y)          : {}", basis.chain_boundary());
    Ok(())
}
