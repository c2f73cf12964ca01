//! Characteristic numbers and the nullcobordism verdict for a few closed manifolds.

use slaglab::charclass::{is_nullcobordant, parse_manifold_expr, pontrjagin_numbers, sw_numbers};

fn main() {
    let inputs = [
        "Wu",
        "SU(3)",
        "CP(2)",
        "CP(2) + -CP(2)",
        "CP(2) * CP(2)",
        "SigmaD(3)",
        "RP(4)",
        "S(2) * T(3)",
        "RP(5)",
    ];
    for text in inputs {
        let e = match parse_manifold_expr(text) {
            Ok(e) => e,
            Err(err) => {
                println!("{}", err.caret_diagnostic(text));
                continue;
            }
        };
        let sw = sw_numbers(&e).map_or_else(|err| err.to_string(), |n| n.to_string());
        let p = pontrjagin_numbers(&e).map_or_else(|err| err.to_string(), |n| n.to_string());
        let verdict = is_nullcobordant(&e).map_or_else(|err| err.to_string(), |v| v.to_string());
        println!("{text}\n  SW: {sw}\n  P:  {p}\n  => {verdict}");
    }

    let bad = "CP(2) + S(3)";
    if let Err(err) = parse_manifold_expr(bad) {
        println!("{}", err.caret_diagnostic(bad));
    }
}
