//! Star products as Maurer–Cartan elements: the MC defect, the gauge action
//! and twisted differentials, on both sides of the formality story.

use hochlab::dgla::{gauge_action, mc_defect, twist_differential, Dgla, GaugeElement, HochschildDgla, McElement, PolyvectorGla};
use hochlab::hochschild::PolyDiffCochain;
use hochlab::polyvec::PolyVector;
use hochlab::starprod::{canonical_theta, mc_star_correspondence, moyal_weyl, star_of};
use hochlab::{HbarSeries, MultiPoly};

fn main() -> hochlab::Result<()> {
    let h = HochschildDgla { dim: 2 };
    let moyal = moyal_weyl(&canonical_theta(2)?, 3)?;
    let alpha = mc_star_correspondence(&moyal)?;
    println!("MC defect of Moyal vanishes: {}", mc_defect(&h, &alpha)?.is_zero());

    // ξ = ħ x²∂x is not a symmetry of Moyal, so it moves the product
    let xi = PolyDiffCochain::partial(2, 0).mul_function(&MultiPoly::parse("x1^2", 2)?);
    let xi = GaugeElement::new(&h, HbarSeries::monomial(xi, 1, 3))?;
    let moved = gauge_action(&h, &xi, &alpha)?;
    println!("ξ·Π is MC: {}", mc_defect(&h, &moved)?.is_zero());
    let s = star_of(&moved)?;
    println!("ħ² term of the gauged product: {}", s.pi().coeff(2));

    let tw = twist_differential(&h, &alpha)?;
    let f = HbarSeries::monomial(PolyDiffCochain::words(2, vec![]).mul_function(&MultiPoly::parse("x1*x2", 2)?), 0, 3);
    let df = tw.differential(&f)?;
    println!("d_Π(xy) at ħ¹: {}", df.coeff(1));
    println!("d_Π² = 0: {}", tw.differential(&df)?.is_zero());

    let p = PolyvectorGla { dim: 2 };
    let pi = McElement::new(&p, HbarSeries::monomial(PolyVector::parse("x1^2*x2*d1^d2", 2)?, 1, 3))?;
    let tw = twist_differential(&p, &pi)?;
    let g = HbarSeries::monomial(PolyVector::parse("x2*d1", 2)?, 0, 3);
    println!("Lichnerowicz d_π(y∂x) at ħ¹: {}", tw.differential(&g)?.coeff(1));
    Ok(())
}
