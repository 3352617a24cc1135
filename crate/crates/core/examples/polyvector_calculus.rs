//! Polyvector fields and forms on ℚ³: Schouten bracket, contraction, Lie
//! derivative, Cartan's formula and the HKR map.

use hochlab::exactalg::rational::sign;
use hochlab::polyvec::{ExtForm, PolyVector};

fn main() -> hochlab::Result<()> {
    let v = PolyVector::parse("x2*d1 - x1*d2", 3)?;
    let pi = PolyVector::parse("x3*d1^d2 + x1*d2^d3", 3)?;
    println!("v           = {v}");
    println!("π           = {pi}");
    println!("[v, π]      = {}", v.schouten(&pi)?);
    println!("[π, π]      = {}", pi.schouten(&pi)?);
    println!("v ∧ π       = {}", v.wedge(&pi)?);

    let w = ExtForm::parse("x1*dx1^dx2 + dx2^dx3", 3)?;
    println!("ω           = {w}");
    println!("dω          = {}", w.d());
    println!("i_π ω       = {}", w.contraction(&pi)?);
    println!("l_v ω       = {}", w.lie_derivative(&v)?);

    // d i_v − (−1)^{|v|} i_v d = l_v
    let mut cartan = w.contraction(&v)?.d();
    cartan.add_assign_scaled(&w.d().contraction(&v)?, &-sign(v.degree() as i64));
    println!("Cartan holds: {}", cartan == w.lie_derivative(&v)?);

    let h = pi.hkr();
    println!("hkr π       = {h}");
    println!("∂ hkr π = 0 : {}", h.hoch_differential().is_zero());
    Ok(())
}
