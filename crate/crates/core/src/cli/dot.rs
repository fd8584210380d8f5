use std::fmt::Write;

use crate::geometry::{r_components, GeometryError};
use crate::group::{Ball, EnumConfig};
use crate::order::{OrderOracle, Sign};

/// Undirected DOT graph of `B(1, R)`: nodes in shortlex order with `sign`
/// and `comp` attributes (`comp` is the r-component index of a positive
/// node, -1 otherwise), one edge `g -- g x` per generator `x` (not its
/// inverse) with both ends in the ball.
pub fn export_dot(o: &OrderOracle, radius: usize, r: usize, config: &EnumConfig) -> Result<String, GeometryError> {
    let model = o.model();
    let ball = Ball::enumerate(model, radius, config)?;
    let components = r_components(o, r.min(radius), radius, config)?;
    let mut out = String::new();
    writeln!(out, "graph ball {{").expect("string write");
    writeln!(out, "  // {} on {model}, radius {radius}, width {r}", o.name()).expect("string write");
    for g in ball.elements() {
        let sign = match o.sign(g) {
            Sign::Positive => "pos",
            Sign::Negative => "neg",
            Sign::Identity => "id",
        };
        let comp = components.component_of(g).map_or(-1, |k| k as i64);
        writeln!(out, "  \"{g}\" [sign={sign}, comp={comp}];").expect("string write");
    }
    for g in ball.elements() {
        for x in model.alphabet().letters().filter(|x| !x.is_inverse()) {
            let h = model.mul_letter(g, x);
            if ball.contains(&h) {
                writeln!(out, "  \"{g}\" -- \"{h}\";").expect("string write");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
