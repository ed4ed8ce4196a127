//! Exact arithmetic in a two-level number field tower, with dynamic
//! evaluation when a modulus turns out to be reducible.

use zariski_torsion::exact_fields::{branches, factor_over, FieldError, FieldTower, UniPoly};

fn main() -> Result<(), FieldError> {
    let q = FieldTower::rationals();
    let k = q.extend("w", &UniPoly::from_ints(&q, &[1, 1, 1]))?;
    let w = k.gen();
    println!("w^3 = {}", w.pow(3));
    let a = &k.int(2) + &w;
    println!("1/(2 + w) = {}", a.inv()?);

    // x^3 - 2 stays irreducible over Q(w); x^3 - 1 does not
    for c in [-2, -1] {
        let f = UniPoly::from_ints(&k, &[c, 0, 0, 1]);
        match factor_over(&f)? {
            Some(fs) if fs.len() > 1 => println!("X^3 + ({c}) = {}", fs.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join(" ")),
            _ => println!("X^3 + ({c}) is irreducible over Q(w)"),
        }
    }

    // u^2 = 1 is not a field; branches() splits it and evaluates on each piece
    let r = q.extend("u", &UniPoly::from_ints(&q, &[-1, 0, 1]))?;
    let out = branches(&r, 1, |m| {
        let u = m.apply(&r.gen());
        let d = &u - &m.target().one();
        Ok::<_, FieldError>(if d.is_zero_strict()? { "vanishes".to_string() } else { format!("has inverse {}", d.inv()?) })
    })?;
    for (m, v) in out {
        println!("branch u = {}: u - 1 {v}", m.apply(&r.gen()));
    }
    let big = q.clone().with_budget(4).extend("s", &UniPoly::from_ints(&q, &[-2, 0, 1]))?;
    let err = big.extend("t", &UniPoly::from_ints(&big, &[-3, 0, 0, 1])).unwrap_err();
    println!("degree budget: {err}");
    Ok(())
}
