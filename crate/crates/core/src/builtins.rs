//! Named example complexes.

use crate::median::{ComplexError, CubeComplex};

pub const COMPLEX_NAMES: &[&str] = &["EDGE", "SQUARE", "Q3", "PATH3", "TRIPOD", "DOMINO"];

fn build(names: &[&str], edges: &[(&str, &str)]) -> CubeComplex {
    let names = names.iter().map(|s| s.to_string()).collect();
    let edges: Vec<(String, String)> = edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    CubeComplex::new(names, &edges).expect("builtin complexes are median")
}

/// One of [`COMPLEX_NAMES`] (case-insensitive).
pub fn complex(name: &str) -> Result<CubeComplex, ComplexError> {
    Ok(match name.to_ascii_uppercase().as_str() {
        "EDGE" => build(&["0", "1"], &[("0", "1")]),
        "SQUARE" => build(&["00", "01", "11", "10"], &[("00", "01"), ("01", "11"), ("11", "10"), ("10", "00")]),
        "Q3" => {
            let names: Vec<String> = (0..8).map(|v| format!("{v:03b}")).collect();
            let mut edges = Vec::new();
            for v in 0..8usize {
                for bit in 0..3 {
                    let u = v ^ (1 << bit);
                    if v < u {
                        edges.push((v, u));
                    }
                }
            }
            CubeComplex::from_indexed(names, &edges)?
        }
        "PATH3" => build(&["p0", "p1", "p2", "p3"], &[("p0", "p1"), ("p1", "p2"), ("p2", "p3")]),
        "TRIPOD" => build(&["c", "l1", "l2", "l3"], &[("c", "l1"), ("c", "l2"), ("c", "l3")]),
        "DOMINO" => build(
            &["0,0", "1,0", "2,0", "0,1", "1,1", "2,1"],
            &[("0,0", "1,0"), ("1,0", "2,0"), ("0,1", "1,1"), ("1,1", "2,1"), ("0,0", "0,1"), ("1,0", "1,1"), ("2,0", "2,1")],
        ),
        _ => return Err(ComplexError::InvalidParameter(format!("unknown builtin complex {name:?}"))),
    })
}
