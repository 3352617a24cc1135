//! Polynomials over ℚ, derivatives, and an exact linear solve with a refutation.

use hochlab::exactalg::rational::{int, rat};
use hochlab::linsolve::{solve, verify_infeasibility, LinearRow, Outcome};
use hochlab::{MultiIndex, MultiPoly};

fn main() -> hochlab::Result<()> {
    let p = MultiPoly::parse("x1^3*x2^2 - 1/2*x1*x2 + 7", 2)?;
    println!("p            = {p}");
    println!("∂x1 p        = {}", p.partial(0)?);
    println!("∂x1²∂x2 p    = {}", p.derive(&MultiIndex::new(vec![2, 1])));
    println!("p(1, 2)      = {}", p.eval(&[int(1), int(2)]));

    // x + y = 1, x − y = 1/3
    let rows = vec![
        LinearRow::new(vec![(0, int(1)), (1, int(1))], int(1)),
        LinearRow::new(vec![(0, int(1)), (1, int(-1))], rat(1, 3)),
    ];
    if let Outcome::Solved(x) = solve(2, &rows) {
        println!("solution     = ({}, {})", x[0], x[1]);
    }

    // adding 2x = 1 makes the system inconsistent; the combination proves it
    let mut bad = rows.clone();
    bad.push(LinearRow::new(vec![(0, int(2))], int(1)));
    if let Outcome::Infeasible(combo) = solve(2, &bad) {
        let text: Vec<String> = combo.iter().map(|(r, c)| format!("{c}·row{r}")).collect();
        println!("refutation   = {} (re-checked: {})", text.join(" + "), verify_infeasibility(2, &bad, &combo));
    }
    Ok(())
}
